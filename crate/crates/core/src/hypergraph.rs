//! Hypergraphs, colorings and birth-time assignments.
//!
//! Vertices are dense `0..vertex_count` indices. An edge is identified by its
//! position in the edge list. A [`Hypergraph`] may hold malformed data;
//! [`Hypergraph::validate`] reports what is wrong with it.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    vertex_count: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(vertex_count: usize, edges: Vec<Vec<usize>>) -> Self {
        Hypergraph { vertex_count, edges }
    }

    /// Builds the hypergraph and rejects it if validation finds a violation.
    /// Duplicate edges are only warnings and are accepted.
    pub fn checked(vertex_count: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let h = Hypergraph::new(vertex_count, edges);
        let report = h.validate();
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidHypergraph(v.to_string()));
        }
        Ok(h)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &[usize] {
        &self.edges[index]
    }

    /// For every vertex, the indices of the edges containing it, ascending.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                if v < self.vertex_count {
                    inc[v].push(i);
                }
            }
        }
        inc
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_empty() {
                report.violations.push(Issue::EmptyEdge { edge: i });
                continue;
            }
            for &v in e {
                if v >= self.vertex_count {
                    report.violations.push(Issue::IndexOutOfRange { edge: i, vertex: v });
                }
            }
            let mut sorted = e.clone();
            sorted.sort_unstable();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                report.violations.push(Issue::RepeatedVertex { edge: i, vertex: w[0] });
            }
            match seen.get(&sorted) {
                Some(&first) => report.warnings.push(Issue::DuplicateEdge { edge: i, first }),
                None => {
                    seen.insert(sorted, i);
                }
            }
        }
        report
    }

    /// Common edge size `n >= 2`, if every edge has it. Absent for an empty
    /// edge list since no edge witnesses `n`.
    pub fn uniformity(&self) -> Option<Uniformity> {
        let n = self.edges.first()?.len();
        if n >= 2 && self.edges.iter().all(|e| e.len() == n) {
            Some(Uniformity(n))
        } else {
            None
        }
    }

    pub fn is_proper(&self, coloring: &Coloring) -> Result<ProperCheck> {
        if coloring.len() < self.vertex_count {
            return Err(Error::UncoloredVertex(coloring.len()));
        }
        let monochromatic = self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| {
                let c = coloring.color(e[0]);
                e.iter().all(|&v| coloring.color(v) == c)
            })
            .map(|(i, _)| i)
            .collect();
        Ok(ProperCheck { monochromatic })
    }

    /// Maximum over edges of the number of *other* edges it intersects.
    pub fn max_edge_degree(&self) -> usize {
        let inc = self.incidence();
        let mut stamp = vec![usize::MAX; self.edges.len()];
        let mut best = 0;
        for (i, e) in self.edges.iter().enumerate() {
            let mut deg = 0;
            stamp[i] = i;
            for &v in e {
                for &j in &inc[v] {
                    if stamp[j] != i {
                        stamp[j] = i;
                        deg += 1;
                    }
                }
            }
            best = best.max(deg);
        }
        best
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Hypergraph {
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&v| perm[v]).collect())
            .collect();
        Hypergraph::new(self.vertex_count, edges)
    }

    /// Copy with edge `index` removed.
    pub fn without_edge(&self, index: usize) -> Hypergraph {
        let mut edges = self.edges.clone();
        edges.remove(index);
        Hypergraph::new(self.vertex_count, edges)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Uniformity(usize);

impl Uniformity {
    pub fn n(self) -> usize {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Issue {
    EmptyEdge { edge: usize },
    IndexOutOfRange { edge: usize, vertex: usize },
    RepeatedVertex { edge: usize, vertex: usize },
    DuplicateEdge { edge: usize, first: usize },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::EmptyEdge { edge } => write!(f, "edge {edge}: empty edge"),
            Issue::IndexOutOfRange { edge, vertex } => {
                write!(f, "edge {edge}: vertex {vertex} index out of range")
            }
            Issue::RepeatedVertex { edge, vertex } => {
                write!(f, "edge {edge}: repeated vertex {vertex}")
            }
            Issue::DuplicateEdge { edge, first } => {
                write!(f, "edge {edge}: duplicate edge of edge {first}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Issue>,
    pub warnings: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty() && self.warnings.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperCheck {
    /// Indices of monochromatic edges, ascending.
    pub monochromatic: Vec<usize>,
}

impl ProperCheck {
    pub fn is_proper(&self) -> bool {
        self.monochromatic.is_empty()
    }
}

/// Total map from vertices to colors `1..=r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    r: u32,
    colors: Vec<u32>,
}

impl Coloring {
    pub fn new(r: u32, colors: Vec<u32>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("r must be positive".into()));
        }
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > r) {
            return Err(Error::ColorOutOfRange { vertex, color, r });
        }
        Ok(Coloring { r, colors })
    }

    pub(crate) fn from_raw(r: u32, colors: Vec<u32>) -> Self {
        debug_assert!(colors.iter().all(|&c| (1..=r).contains(&c)));
        Coloring { r, colors }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, vertex: usize) -> u32 {
        self.colors[vertex]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Number of vertices of each color, indexed `0..r` for colors `1..=r`.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.r as usize];
        for &c in &self.colors {
            sizes[c as usize - 1] += 1;
        }
        sizes
    }
}

/// Birth times in `[0, 1]`, one per vertex.
///
/// Vertices are ordered by `(time, index)`, so equal floats are broken by
/// ascending vertex index and the induced order is always a strict total order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BirthTimes {
    times: Vec<f64>,
}

impl BirthTimes {
    pub fn new(times: Vec<f64>) -> Result<Self> {
        if let Some((vertex, &time)) = times
            .iter()
            .enumerate()
            .find(|(_, t)| !(0.0..=1.0).contains(*t))
        {
            return Err(Error::BirthTimeOutOfRange { vertex, time });
        }
        Ok(BirthTimes { times })
    }

    pub(crate) fn from_raw(times: Vec<f64>) -> Self {
        BirthTimes { times }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn time(&self, vertex: usize) -> f64 {
        self.times[vertex]
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn cmp_vertices(&self, u: usize, v: usize) -> Ordering {
        self.times[u].total_cmp(&self.times[v]).then(u.cmp(&v))
    }

    /// Vertices in processing order.
    pub fn order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.times.len()).collect();
        order.sort_unstable_by(|&u, &v| self.cmp_vertices(u, v));
        order
    }

    /// Position of each vertex in [`BirthTimes::order`].
    pub fn ranks(&self) -> Vec<usize> {
        let mut ranks = vec![0; self.times.len()];
        for (pos, v) in self.order().into_iter().enumerate() {
            ranks[v] = pos;
        }
        ranks
    }

    /// Errors unless every vertex of `h` has a time.
    pub fn check_covers(&self, h: &Hypergraph) -> Result<()> {
        if self.times.len() < h.vertex_count() {
            return Err(Error::MissingBirthTime(self.times.len()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Hypergraph {
        Hypergraph::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]])
    }

    #[test]
    fn validate_examples() {
        assert!(Hypergraph::new(3, vec![vec![0, 1, 2]]).validate().is_empty());

        let r = Hypergraph::new(2, vec![vec![0, 5]]).validate();
        assert_eq!(r.violations, vec![Issue::IndexOutOfRange { edge: 0, vertex: 5 }]);
        assert!(r.violations[0].to_string().contains("index out of range"));

        let r = Hypergraph::new(3, vec![vec![0, 1], vec![0, 1]]).validate();
        assert!(r.is_valid());
        assert_eq!(r.warnings, vec![Issue::DuplicateEdge { edge: 1, first: 0 }]);
        assert!(r.warnings[0].to_string().contains("duplicate edge"));
    }

    #[test]
    fn validate_empty_and_repeated() {
        let r = Hypergraph::new(3, vec![vec![], vec![1, 1]]).validate();
        assert_eq!(
            r.violations,
            vec![Issue::EmptyEdge { edge: 0 }, Issue::RepeatedVertex { edge: 1, vertex: 1 }]
        );
        assert!(Hypergraph::checked(3, vec![vec![1, 1]]).is_err());
        // unordered duplicates are still duplicates
        let r = Hypergraph::new(3, vec![vec![0, 2], vec![2, 0]]).validate();
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn empty_hypergraph_is_valid_but_not_uniform() {
        let h = Hypergraph::new(4, vec![]);
        assert!(h.validate().is_empty());
        assert_eq!(h.uniformity(), None);
        assert_eq!(h.max_edge_degree(), 0);
        let c = Coloring::new(2, vec![1; 4]).unwrap();
        assert!(h.is_proper(&c).unwrap().is_proper());
    }

    #[test]
    fn uniformity_examples() {
        let h = Hypergraph::new(4, vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert_eq!(h.uniformity().map(Uniformity::n), Some(3));
        let h = Hypergraph::new(3, vec![vec![0, 1], vec![0, 1, 2]]);
        assert_eq!(h.uniformity(), None);
        let h = Hypergraph::new(3, vec![vec![0], vec![1]]);
        assert_eq!(h.uniformity(), None);
    }

    #[test]
    fn is_proper_examples() {
        let h = Hypergraph::new(3, vec![vec![0, 1, 2]]);
        let ok = h.is_proper(&Coloring::new(2, vec![1, 1, 2]).unwrap()).unwrap();
        assert!(ok.is_proper());
        let bad = h.is_proper(&Coloring::new(2, vec![1, 1, 1]).unwrap()).unwrap();
        assert_eq!(bad.monochromatic, vec![0]);

        let t = triangle();
        let check = t.is_proper(&Coloring::new(2, vec![1, 2, 1]).unwrap()).unwrap();
        assert_eq!(check.monochromatic, vec![2]);
        assert_eq!(t.edge(2), &[0, 2]);
    }

    #[test]
    fn partial_coloring_is_an_error() {
        let h = Hypergraph::new(3, vec![vec![0, 1, 2]]);
        let c = Coloring::new(2, vec![1, 2]).unwrap();
        assert!(matches!(h.is_proper(&c), Err(Error::UncoloredVertex(2))));
        assert!(matches!(
            Coloring::new(2, vec![1, 3]),
            Err(Error::ColorOutOfRange { vertex: 1, color: 3, r: 2 })
        ));
        assert!(Coloring::new(2, vec![0]).is_err());
    }

    #[test]
    fn max_edge_degree_examples() {
        assert_eq!(Hypergraph::new(4, vec![vec![0, 1], vec![2, 3]]).max_edge_degree(), 0);
        assert_eq!(triangle().max_edge_degree(), 2);
        let fano = Hypergraph::new(
            7,
            vec![
                vec![0, 1, 2],
                vec![0, 3, 4],
                vec![0, 5, 6],
                vec![1, 3, 5],
                vec![1, 4, 6],
                vec![2, 3, 6],
                vec![2, 4, 5],
            ],
        );
        // brute force: count intersecting pairs directly
        let brute = (0..7)
            .map(|i| {
                (0..7)
                    .filter(|&j| j != i && fano.edge(i).iter().any(|v| fano.edge(j).contains(v)))
                    .count()
            })
            .max()
            .unwrap();
        assert_eq!(brute, 6);
        assert_eq!(fano.max_edge_degree(), 6);
    }

    #[test]
    fn birth_time_ties_break_by_index() {
        let t = BirthTimes::new(vec![0.5, 0.2, 0.5, 0.2]).unwrap();
        assert_eq!(t.order(), vec![1, 3, 0, 2]);
        assert_eq!(t.ranks(), vec![2, 0, 3, 1]);
        assert!(BirthTimes::new(vec![0.1, 1.5]).is_err());
        assert!(BirthTimes::new(vec![f64::NAN]).is_err());
    }
}
