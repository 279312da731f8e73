//! Conflict structures under a birth-time assignment: first/last vertices,
//! dangerous and conflicting pairs, r-chains, edge lengths and short edges.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{BirthTimes, Hypergraph};

pub const DEFAULT_CHAIN_CEILING: u64 = 10_000_000;

/// Edges `f_1..f_r` where consecutive edges meet in exactly one vertex
/// (`links[i]` joins `edges[i]` and `edges[i + 1]`) and non-consecutive
/// edges are disjoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chain {
    pub edges: Vec<usize>,
    pub links: Vec<usize>,
}

impl Chain {
    pub fn last_edge(&self) -> usize {
        *self.edges.last().expect("chain has at least one edge")
    }

    /// Checks the chain shape against `h` from scratch.
    pub fn is_valid_in(&self, h: &Hypergraph) -> bool {
        if self.edges.is_empty() || self.links.len() + 1 != self.edges.len() {
            return false;
        }
        for i in 0..self.edges.len() {
            for j in i + 1..self.edges.len() {
                let common = intersection(h.edge(self.edges[i]), h.edge(self.edges[j]));
                let ok = if j == i + 1 {
                    common == [self.links[i]]
                } else {
                    common.is_empty()
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Whether the last vertex of every edge but the final one is the first
    /// vertex of the next.
    pub fn is_conflicting(&self, h: &Hypergraph, t: &BirthTimes) -> bool {
        self.edges.windows(2).all(|w| {
            let (_, last) = first_last_unchecked(h.edge(w[0]), t);
            let (first, _) = first_last_unchecked(h.edge(w[1]), t);
            last == first
        })
    }
}

fn intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|v| b.contains(v)).collect()
}

/// The three-way split `B = [0, (1-p)/2)`, `P = [(1-p)/2, (1+p)/2)`,
/// `R = [(1+p)/2, 1]`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalPartition {
    p: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Interval {
    B,
    P,
    R,
}

impl IntervalPartition {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidParameter(format!("interval parameter p must lie in (0, 1), got {p}")));
        }
        Ok(IntervalPartition { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn low(&self) -> f64 {
        (1.0 - self.p) / 2.0
    }

    pub fn high(&self) -> f64 {
        (1.0 + self.p) / 2.0
    }

    pub fn classify(&self, time: f64) -> Interval {
        if time < self.low() {
            Interval::B
        } else if time < self.high() {
            Interval::P
        } else {
            Interval::R
        }
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalCounts {
    pub b: u64,
    pub p: u64,
    pub r: u64,
}

impl IntervalCounts {
    pub fn total(&self) -> u64 {
        self.b + self.p + self.r
    }
}

pub fn first_last(edge: &[usize], t: &BirthTimes) -> Result<(usize, usize)> {
    if edge.is_empty() {
        return Err(Error::EmptyEdge);
    }
    if let Some(&v) = edge.iter().find(|&&v| v >= t.len()) {
        return Err(Error::MissingBirthTime(v));
    }
    Ok(first_last_unchecked(edge, t))
}

fn first_last_unchecked(edge: &[usize], t: &BirthTimes) -> (usize, usize) {
    let mut first = edge[0];
    let mut last = edge[0];
    for &v in &edge[1..] {
        if t.cmp_vertices(v, first).is_lt() {
            first = v;
        }
        if t.cmp_vertices(v, last).is_gt() {
            last = v;
        }
    }
    (first, last)
}

pub fn edge_length(edge: &[usize], t: &BirthTimes) -> Result<f64> {
    let (first, last) = first_last(edge, t)?;
    Ok(t.time(last) - t.time(first))
}

/// Ordered pairs `(e, f)`, `e != f`, sharing exactly one vertex.
pub fn dangerous_pairs(h: &Hypergraph) -> Vec<(usize, usize)> {
    let inc = h.incidence();
    let mut count = vec![0usize; h.edge_count()];
    let mut touched = Vec::new();
    let mut pairs = Vec::new();
    for (e, edge) in h.edges().iter().enumerate() {
        for &v in edge {
            for &f in &inc[v] {
                if f != e {
                    if count[f] == 0 {
                        touched.push(f);
                    }
                    count[f] += 1;
                }
            }
        }
        touched.sort_unstable();
        for &f in &touched {
            if count[f] == 1 {
                pairs.push((e, f));
            }
            count[f] = 0;
        }
        touched.clear();
    }
    pairs
}

fn endpoints(h: &Hypergraph, t: &BirthTimes) -> Vec<(usize, usize)> {
    h.edges().iter().map(|e| first_last_unchecked(e, t)).collect()
}

fn edges_by_first(h: &Hypergraph, ends: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut by_first = vec![Vec::new(); h.vertex_count()];
    for (i, &(first, _)) in ends.iter().enumerate() {
        by_first[first].push(i);
    }
    by_first
}

/// Ordered pairs `(e, f)` where the last vertex of `e` is the first vertex of
/// `f`, sorted by `(e, f)`.
pub fn conflicting_pairs(h: &Hypergraph, t: &BirthTimes) -> Result<Vec<(usize, usize)>> {
    t.check_covers(h)?;
    let ends = endpoints(h, t);
    let by_first = edges_by_first(h, &ends);
    let mut pairs = Vec::new();
    for (e, &(_, last)) in ends.iter().enumerate() {
        for &f in &by_first[last] {
            if f != e {
                pairs.push((e, f));
            }
        }
    }
    Ok(pairs)
}

/// Conflicting pairs attributed to the interval holding the birth time of
/// their common vertex.
pub fn classify_conflicts_by_interval(
    h: &Hypergraph,
    t: &BirthTimes,
    partition: &IntervalPartition,
) -> Result<IntervalCounts> {
    let ends = endpoints(h, t);
    let mut counts = IntervalCounts::default();
    for (e, _) in conflicting_pairs(h, t)? {
        let shared = ends[e].1;
        match partition.classify(t.time(shared)) {
            Interval::B => counts.b += 1,
            Interval::P => counts.p += 1,
            Interval::R => counts.r += 1,
        }
    }
    Ok(counts)
}

/// Edges whose length is below `(1 - p) / r`.
pub fn short_edges(h: &Hypergraph, t: &BirthTimes, r: u32, p: f64) -> Result<Vec<usize>> {
    t.check_covers(h)?;
    let threshold = (1.0 - p) / r as f64;
    let mut short = Vec::new();
    for (i, e) in h.edges().iter().enumerate() {
        if edge_length(e, t)? < threshold {
            short.push(i);
        }
    }
    Ok(short)
}

/// Interval a link vertex `x_i` (1-based `i`) of a conflicting r-chain with
/// no short edge must be born in.
pub fn link_interval(i: usize, r: u32, p: f64) -> (f64, f64) {
    let (i, r) = (i as f64, r as f64);
    ((i - i * p) / r, (i + (r - i) * p) / r)
}

struct ChainSearch<'a, F> {
    h: &'a Hypergraph,
    r: usize,
    ceiling: u64,
    emitted: u64,
    // vertices covered by all chain edges except the current tail
    used: Vec<u32>,
    edges: Vec<usize>,
    links: Vec<usize>,
    visit: F,
}

impl<F: FnMut(&Chain)> ChainSearch<'_, F> {
    fn emit(&mut self) -> Result<()> {
        if self.emitted == self.ceiling {
            return Err(Error::ChainCeilingExceeded { ceiling: self.ceiling });
        }
        self.emitted += 1;
        let chain = Chain {
            edges: self.edges.clone(),
            links: self.links.clone(),
        };
        (self.visit)(&chain);
        Ok(())
    }

    fn admissible(&self, tail: usize, g: usize) -> bool {
        let (tail_edge, next) = (self.h.edge(tail), self.h.edge(g));
        g != tail
            && next.iter().filter(|v| tail_edge.contains(v)).count() == 1
            && next.iter().all(|&v| self.used[v] == 0)
    }

    fn extend(&mut self, candidates: &dyn Fn(&Self, usize) -> Vec<(usize, usize)>) -> Result<()> {
        if self.edges.len() == self.r {
            return self.emit();
        }
        let tail = *self.edges.last().unwrap();
        let next = candidates(self, tail);
        for (g, link) in next {
            if !self.admissible(tail, g) {
                continue;
            }
            for &v in self.h.edge(tail) {
                self.used[v] += 1;
            }
            self.edges.push(g);
            self.links.push(link);
            let res = self.extend(candidates);
            self.edges.pop();
            self.links.pop();
            for &v in self.h.edge(tail) {
                self.used[v] -= 1;
            }
            res?;
        }
        Ok(())
    }

    fn run(&mut self, candidates: &dyn Fn(&Self, usize) -> Vec<(usize, usize)>) -> Result<()> {
        for first in 0..self.h.edge_count() {
            self.edges.push(first);
            let res = self.extend(candidates);
            self.edges.pop();
            res?;
        }
        Ok(())
    }
}

fn check_chain_r(r: u32) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("chains need r >= 2, got {r}")));
    }
    Ok(())
}

/// Calls `visit` on every ordered r-chain of `h`, in order of first edge
/// index. Fails once more than `ceiling` chains would be produced.
pub fn visit_chains(h: &Hypergraph, r: u32, ceiling: u64, visit: impl FnMut(&Chain)) -> Result<u64> {
    check_chain_r(r)?;
    let inc = h.incidence();
    let mut search = ChainSearch {
        h,
        r: r as usize,
        ceiling,
        emitted: 0,
        used: vec![0; h.vertex_count()],
        edges: Vec::with_capacity(r as usize),
        links: Vec::with_capacity(r as usize),
        visit,
    };
    search.run(&|s, tail| {
        s.h.edge(tail)
            .iter()
            .flat_map(|&x| inc[x].iter().map(move |&g| (g, x)))
            .collect()
    })?;
    Ok(search.emitted)
}

pub fn enumerate_chains(h: &Hypergraph, r: u32, ceiling: u64) -> Result<Vec<Chain>> {
    let mut chains = Vec::new();
    visit_chains(h, r, ceiling, |c| chains.push(c.clone()))?;
    Ok(chains)
}

/// The r-chains of `h` that are conflicting under `t`, in the same order as
/// [`enumerate_chains`]. The search only follows last-vertex = first-vertex
/// links, so it never touches non-conflicting chains.
pub fn conflicting_chains(h: &Hypergraph, t: &BirthTimes, r: u32, ceiling: u64) -> Result<Vec<Chain>> {
    check_chain_r(r)?;
    t.check_covers(h)?;
    let ends = endpoints(h, t);
    let by_first = edges_by_first(h, &ends);
    let mut chains = Vec::new();
    let mut search = ChainSearch {
        h,
        r: r as usize,
        ceiling,
        emitted: 0,
        used: vec![0; h.vertex_count()],
        edges: Vec::with_capacity(r as usize),
        links: Vec::with_capacity(r as usize),
        visit: |c: &Chain| chains.push(c.clone()),
    };
    search.run(&|_, tail| {
        let last = ends[tail].1;
        by_first[last].iter().map(|&g| (g, last)).collect()
    })?;
    Ok(chains)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn times(t: &[f64]) -> BirthTimes {
        BirthTimes::new(t.to_vec()).unwrap()
    }

    fn triangle() -> Hypergraph {
        Hypergraph::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]])
    }

    fn fano() -> Hypergraph {
        Hypergraph::new(
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
        )
    }

    fn brute_chains(h: &Hypergraph, r: usize) -> Vec<Vec<usize>> {
        // all sequences of r edge indices, filtered by the definition
        let m = h.edge_count();
        let mut out = Vec::new();
        let total = m.pow(r as u32);
        for code in 0..total {
            let mut seq = Vec::with_capacity(r);
            let mut c = code;
            for _ in 0..r {
                seq.push(c % m);
                c /= m;
            }
            seq.reverse();
            let ok = (0..r).all(|i| {
                (i + 1..r).all(|j| {
                    let k = intersection(h.edge(seq[i]), h.edge(seq[j])).len();
                    if j == i + 1 {
                        k == 1 && seq[i] != seq[j]
                    } else {
                        k == 0
                    }
                })
            });
            if ok {
                out.push(seq);
            }
        }
        out
    }

    #[test]
    fn first_last_examples() {
        assert_eq!(first_last(&[0, 1, 2], &times(&[0.3, 0.1, 0.9])).unwrap(), (1, 2));
        let t = times(&[0.0, 0.0, 0.0, 0.0, 0.0, 0.7]);
        assert_eq!(first_last(&[5], &t).unwrap(), (5, 5));
        assert_eq!(first_last(&[0, 1], &times(&[0.5, 0.5])).unwrap(), (0, 1));
        assert!(matches!(first_last(&[], &t), Err(Error::EmptyEdge)));
    }

    #[test]
    fn dangerous_pair_examples() {
        assert!(dangerous_pairs(&Hypergraph::new(4, vec![vec![0, 1], vec![2, 3]])).is_empty());
        assert_eq!(
            dangerous_pairs(&triangle()),
            vec![(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]
        );
        assert!(dangerous_pairs(&Hypergraph::new(4, vec![vec![0, 1, 2], vec![0, 1, 3]])).is_empty());
    }

    #[test]
    fn conflicting_pair_examples() {
        let h = Hypergraph::new(5, vec![vec![0, 1, 2], vec![2, 3, 4]]);
        let t = times(&[0.1, 0.2, 0.5, 0.6, 0.7]);
        assert_eq!(conflicting_pairs(&h, &t).unwrap(), vec![(0, 1)]);
        let t = times(&[0.1, 0.2, 0.5, 0.3, 0.4]);
        assert!(conflicting_pairs(&h, &t).unwrap().is_empty());
        let disjoint = Hypergraph::new(4, vec![vec![0, 1], vec![2, 3]]);
        assert!(conflicting_pairs(&disjoint, &times(&[0.1, 0.2, 0.3, 0.4])).unwrap().is_empty());
    }

    #[test]
    fn chain_counts_match_brute_force() {
        let single = Hypergraph::new(3, vec![vec![0, 1, 2]]);
        assert!(enumerate_chains(&single, 2, 100).unwrap().is_empty());

        let tri = enumerate_chains(&triangle(), 2, 100).unwrap();
        assert_eq!(tri.len(), 6);
        assert_eq!(brute_chains(&triangle(), 2).len(), 6);

        let fano = fano();
        assert_eq!(enumerate_chains(&fano, 2, 1000).unwrap().len(), 42);
        assert_eq!(brute_chains(&fano, 2).len(), 42);
        // every two Fano lines meet, so no 3-chain has disjoint ends
        assert!(enumerate_chains(&fano, 3, 1000).unwrap().is_empty());

        let h = Hypergraph::new(
            8,
            vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 6], vec![6, 7, 0], vec![1, 3, 5], vec![0, 4, 7]],
        );
        for r in 2..=4 {
            let fast: Vec<Vec<usize>> = enumerate_chains(&h, r, 1_000_000)
                .unwrap()
                .into_iter()
                .map(|c| {
                    assert!(c.is_valid_in(&h));
                    c.edges
                })
                .collect();
            let mut brute = brute_chains(&h, r as usize);
            let mut sorted = fast.clone();
            sorted.sort();
            brute.sort();
            assert_eq!(sorted, brute, "r = {r}");
        }
    }

    #[test]
    fn ceiling_fails_loudly() {
        let err = enumerate_chains(&fano(), 2, 41).unwrap_err();
        assert!(matches!(err, Error::ChainCeilingExceeded { ceiling: 41 }));
        assert_eq!(enumerate_chains(&fano(), 2, 42).unwrap().len(), 42);
    }

    #[test]
    fn conflicting_chain_examples() {
        let disjoint = Hypergraph::new(4, vec![vec![0, 1], vec![2, 3]]);
        let t = times(&[0.1, 0.2, 0.3, 0.4]);
        assert!(conflicting_chains(&disjoint, &t, 2, 100).unwrap().is_empty());

        let path = Hypergraph::new(7, vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 6]]);
        let inc: Vec<f64> = (0..7).map(|i| 0.1 + 0.1 * i as f64).collect();
        let chains = conflicting_chains(&path, &times(&inc), 3, 100).unwrap();
        assert_eq!(chains, vec![Chain { edges: vec![0, 1, 2], links: vec![2, 4] }]);

        // reversed times: (e, f, g) is no longer conflicting, but the
        // ordered chain (g, f, e) is
        let rev: Vec<f64> = inc.iter().rev().copied().collect();
        let chains = conflicting_chains(&path, &times(&rev), 3, 100).unwrap();
        assert_eq!(chains, vec![Chain { edges: vec![2, 1, 0], links: vec![4, 2] }]);
    }

    #[test]
    fn edge_length_examples() {
        let t = times(&[0.1, 0.4, 0.9]);
        assert!((edge_length(&[0, 1, 2], &t).unwrap() - 0.8).abs() < 1e-15);
        assert_eq!(edge_length(&[1], &t).unwrap(), 0.0);
        assert_eq!(edge_length(&[0, 1], &times(&[0.3, 0.3])).unwrap(), 0.0);
        assert!(edge_length(&[], &t).is_err());
    }

    #[test]
    fn short_edge_examples() {
        let h = Hypergraph::new(3, vec![vec![0, 1, 2]]);
        assert_eq!(short_edges(&h, &times(&[0.1, 0.2, 0.3]), 2, 0.5).unwrap(), vec![0]);
        assert!(short_edges(&h, &times(&[0.1, 0.2, 0.4]), 2, 0.5).unwrap().is_empty());
        assert!(short_edges(&h, &times(&[0.1, 0.2, 0.4]), 2, 1.0).unwrap().is_empty());
    }

    #[test]
    fn interval_classification() {
        let part = IntervalPartition::new(0.4).unwrap();
        assert_eq!(part.classify(0.0), Interval::B);
        assert_eq!(part.classify(0.3), Interval::P);
        assert_eq!(part.classify(0.7), Interval::R);
        assert_eq!(part.classify(1.0), Interval::R);
        assert!(IntervalPartition::new(0.0).is_err());
        assert!(IntervalPartition::new(1.0).is_err());

        let h = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2]]);
        let none = classify_conflicts_by_interval(&h, &times(&[0.5, 0.1, 0.6]), &part).unwrap();
        assert_eq!(none, IntervalCounts::default());
        let mid = classify_conflicts_by_interval(&h, &times(&[0.05, 0.5, 0.9]), &part).unwrap();
        assert_eq!(mid, IntervalCounts { b: 0, p: 1, r: 0 });
        let low = classify_conflicts_by_interval(&h, &times(&[0.05, 0.1, 0.9]), &part).unwrap();
        assert_eq!(low, IntervalCounts { b: 1, p: 0, r: 0 });
    }
}
