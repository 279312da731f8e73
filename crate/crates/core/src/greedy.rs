//! The random greedy r-coloring procedure and its variants.
//!
//! Vertices are processed in birth-time order. Each vertex takes the smallest
//! color that does not complete a monochromatic edge; when every color would,
//! it takes color `r` and is recorded as forced.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::conflict::{Interval, IntervalPartition};
use crate::error::{Error, Result};
use crate::hypergraph::{BirthTimes, Coloring, Hypergraph};
use crate::rng;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyTrace {
    pub coloring: Coloring,
    /// Vertices for which every color was blocked, in processing order.
    pub forced_vertices: Vec<usize>,
    pub processing_order: Vec<usize>,
}

impl GreedyTrace {
    pub fn is_proper(&self, h: &Hypergraph) -> bool {
        h.is_proper(&self.coloring).map(|c| c.is_proper()).unwrap_or(false)
    }
}

pub fn sample_birth_times(vertex_count: usize, seed: u64) -> BirthTimes {
    sample_birth_times_with(&mut rng::seeded(seed), vertex_count)
}

pub fn sample_birth_times_with<R: rand::Rng + ?Sized>(rng: &mut R, vertex_count: usize) -> BirthTimes {
    BirthTimes::from_raw((0..vertex_count).map(|_| rng.random::<f64>()).collect())
}

fn check_r(r: u32) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("need r >= 2 colors, got {r}")));
    }
    Ok(())
}

pub fn greedy_color(h: &Hypergraph, t: &BirthTimes, r: u32) -> Result<GreedyTrace> {
    check_r(r)?;
    t.check_covers(h)?;
    let order = t.order();
    let order: Vec<usize> = order.into_iter().filter(|&v| v < h.vertex_count()).collect();
    Ok(GreedyRunner::new(h, r).run(&order, None))
}

pub fn greedy_color_by_permutation(h: &Hypergraph, order: &[usize], r: u32) -> Result<GreedyTrace> {
    check_r(r)?;
    check_permutation(order, h.vertex_count())?;
    Ok(GreedyRunner::new(h, r).run(order, None))
}

pub(crate) fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    if order.len() != n {
        return Err(Error::NotAPermutation(n));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::NotAPermutation(n));
        }
    }
    Ok(())
}

/// Two-phase variant for `r = 2`: vertices born in the low interval of
/// `IntervalPartition::new(p)` are precolored 1, those in the high interval
/// precolored 2, and the greedy rule colors the middle ones in birth order
/// with the precolors fixed.
pub fn two_phase_color(h: &Hypergraph, t: &BirthTimes, r: u32, p: f64) -> Result<GreedyTrace> {
    if r != 2 {
        return Err(Error::Unsupported(format!("two-phase coloring needs r = 2, got {r}")));
    }
    t.check_covers(h)?;
    let partition = IntervalPartition::new(p)?;
    let mut pre = vec![0u32; h.vertex_count()];
    let mut middle = Vec::new();
    for v in t.order().into_iter().filter(|&v| v < h.vertex_count()) {
        match partition.classify(t.time(v)) {
            Interval::B => pre[v] = 1,
            Interval::R => pre[v] = 2,
            Interval::P => middle.push(v),
        }
    }
    let mut trace = GreedyRunner::new(h, 2).run(&middle, Some(&pre));
    trace.processing_order = t.order();
    Ok(trace)
}

/// Uniformly random coloring among those whose class sizes differ by at most
/// one. Colors `1..=(v mod r)` get the larger classes.
pub fn equitable_partition_color(h: &Hypergraph, seed: u64, r: u32) -> Result<Coloring> {
    check_r(r)?;
    Ok(equitable_partition_with(&mut rng::seeded(seed), h.vertex_count(), r))
}

pub(crate) fn equitable_partition_with<R: rand::Rng + ?Sized>(rng: &mut R, n: usize, r: u32) -> Coloring {
    let mut vertices: Vec<usize> = (0..n).collect();
    vertices.shuffle(rng);
    let mut colors = vec![0u32; n];
    for (pos, v) in vertices.into_iter().enumerate() {
        colors[v] = (pos as u32 % r) + 1;
    }
    Coloring::from_raw(r, colors)
}

const NONE: u32 = 0;
const MIXED: u32 = u32::MAX;

/// Reusable greedy engine over one hypergraph.
///
/// Per edge it tracks how many vertices are colored and whether those share
/// a single color, so one vertex step costs the sum of its edge degrees.
pub struct GreedyRunner<'a> {
    h: &'a Hypergraph,
    r: u32,
    incidence: Vec<Vec<usize>>,
    colored: Vec<usize>,
    state: Vec<u32>,
    colors: Vec<u32>,
    blocked: Vec<bool>,
}

impl<'a> GreedyRunner<'a> {
    pub fn new(h: &'a Hypergraph, r: u32) -> Self {
        GreedyRunner {
            h,
            r,
            incidence: h.incidence(),
            colored: vec![0; h.edge_count()],
            state: vec![NONE; h.edge_count()],
            colors: vec![0; h.vertex_count()],
            blocked: vec![false; r as usize + 1],
        }
    }

    fn reset(&mut self, pre: Option<&[u32]>) {
        self.colored.fill(0);
        self.state.fill(NONE);
        match pre {
            Some(pre) => {
                self.colors.copy_from_slice(pre);
                for (v, &c) in pre.iter().enumerate() {
                    if c != 0 {
                        self.mark(v, c);
                    }
                }
            }
            None => self.colors.fill(0),
        }
    }

    fn mark(&mut self, v: usize, c: u32) {
        for &e in &self.incidence[v] {
            self.colored[e] += 1;
            self.state[e] = match self.state[e] {
                NONE => c,
                s if s == c => c,
                _ => MIXED,
            };
        }
    }

    /// Colors `v`; returns whether it was forced.
    fn step(&mut self, v: usize) -> bool {
        let r = self.r as usize;
        let mut all_blocked = false;
        for &e in &self.incidence[v] {
            if self.colored[e] + 1 == self.h.edge(e).len() {
                match self.state[e] {
                    NONE => all_blocked = true,
                    MIXED => {}
                    c => self.blocked[c as usize] = true,
                }
            }
        }
        let choice = if all_blocked {
            None
        } else {
            (1..=r).find(|&j| !self.blocked[j])
        };
        self.blocked.fill(false);
        let (color, forced) = match choice {
            Some(j) => (j as u32, false),
            None => (self.r, true),
        };
        self.colors[v] = color;
        self.mark(v, color);
        forced
    }

    /// Runs the greedy rule over `order`. Vertices with a nonzero entry in
    /// `pre` start colored and must not appear in `order`.
    pub fn run(&mut self, order: &[usize], pre: Option<&[u32]>) -> GreedyTrace {
        self.reset(pre);
        let mut forced_vertices = Vec::new();
        for &v in order {
            if self.step(v) {
                forced_vertices.push(v);
            }
        }
        GreedyTrace {
            coloring: Coloring::from_raw(self.r, self.colors.clone()),
            forced_vertices,
            processing_order: order.to_vec(),
        }
    }

    /// Plain greedy along `order`, stopping at the first forced vertex.
    /// A forced vertex always completes a monochromatic edge of color `r`, so
    /// this returns whether the resulting coloring is proper.
    pub fn succeeds(&mut self, order: &[usize]) -> bool {
        self.reset(None);
        order.iter().all(|&v| !self.step(v))
    }
}
