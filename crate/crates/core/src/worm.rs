//! The lazy Prokofiev-Svistunov chain: worm state, proposal, acceptance, a
//! single step, and a trajectory runner with an observer hook.
//!
//! The chain lives on W = C0 ∪ C2: edge subsets with zero or two odd
//! vertices. A step proposes flipping one edge uv (u uniform on V when the
//! boundary is empty, uniform on the two defects otherwise; v uniform among
//! neighbors of u) and accepts with half the Metropolis ratio, so every
//! self-loop probability is at least 1/2.

use rand::Rng;
use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::graph::{EdgeSubset, Graph};

/// The chain's random number generator: xoshiro256++, seeded from a single
/// 64-bit value (expanded via splitmix64). Identified as "xoshiro256++" in
/// all experiment outputs.
pub type WormRng = rand_xoshiro::Xoshiro256PlusPlus;

/// Generator identifier recorded alongside seeds in experiment outputs.
pub const RNG_ID: &str = "xoshiro256++";

/// Deterministic per-sample stream: mixes `(seed, outer, inner)` into a fresh
/// generator so independent samples are reproducible regardless of execution
/// order.
pub fn sample_rng(seed: u64, outer: u64, inner: u64) -> WormRng {
    let mut z = seed;
    for salt in [outer.wrapping_add(1), inner.wrapping_add(1)] {
        z = z.wrapping_add(salt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
    }
    WormRng::seed_from_u64(z)
}

/// Temperature parameter: x = tanh(beta), kept in (0, 1).
#[derive(Clone, Copy, Debug)]
pub struct ChainParams {
    x: f64,
    inv_x: f64,
    beta: f64,
}

impl ChainParams {
    pub fn from_x(x: f64) -> Result<ChainParams> {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "x must lie in (0,1), got {x}"
            )));
        }
        Ok(ChainParams {
            x,
            inv_x: 1.0 / x,
            beta: x.atanh(),
        })
    }

    pub fn from_beta(beta: f64) -> Result<ChainParams> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "beta must be finite and positive, got {beta}"
            )));
        }
        ChainParams::from_x(beta.tanh())
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Boundary of a worm state: empty (C0) or a defect pair (C2), stored sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Empty,
    Pair(u32, u32),
}

/// An edge subset in W together with its cached boundary and edge count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WormState {
    a: EdgeSubset,
    boundary: Boundary,
    edge_count: usize,
}

impl WormState {
    /// The default initial state: the empty configuration in C0.
    pub fn empty(g: &Graph) -> WormState {
        WormState {
            a: EdgeSubset::empty(g.m()),
            boundary: Boundary::Empty,
            edge_count: 0,
        }
    }

    /// Wraps an edge subset, validating membership in W = C0 ∪ C2.
    pub fn from_subset(g: &Graph, a: EdgeSubset) -> Result<WormState> {
        let b = g.boundary(&a);
        let boundary = match b.len() {
            0 => Boundary::Empty,
            2 => Boundary::Pair(b[0], b[1]),
            k => return Err(Error::NotAWormState(k)),
        };
        let edge_count = a.len();
        Ok(WormState {
            a,
            boundary,
            edge_count,
        })
    }

    pub fn subset(&self) -> &EdgeSubset {
        &self.a
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn in_c0(&self) -> bool {
        matches!(self.boundary, Boundary::Empty)
    }

    pub fn defects(&self) -> Option<(u32, u32)> {
        match self.boundary {
            Boundary::Empty => None,
            Boundary::Pair(a, b) => Some((a, b)),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Recomputes the boundary from scratch and compares with the cache.
    pub fn check_consistency(&self, g: &Graph) -> bool {
        let b = g.boundary(&self.a);
        let expected = match b.len() {
            0 => Boundary::Empty,
            2 => Boundary::Pair(b[0], b[1]),
            _ => return false,
        };
        expected == self.boundary && self.a.len() == self.edge_count
    }

    /// Applies the accepted move A -> A △ uv, updating caches incrementally.
    #[inline]
    fn flip(&mut self, u: u32, v: u32, e: u32) {
        if self.a.contains(e) {
            self.edge_count -= 1;
        } else {
            self.edge_count += 1;
        }
        self.a.flip(e);
        self.boundary = match self.boundary {
            Boundary::Empty => Boundary::Pair(u.min(v), u.max(v)),
            Boundary::Pair(a, b) => {
                let u_in = u == a || u == b;
                let v_in = v == a || v == b;
                match (u_in, v_in) {
                    (true, true) => Boundary::Empty,
                    (true, false) => {
                        let other = if u == a { b } else { a };
                        Boundary::Pair(other.min(v), other.max(v))
                    }
                    (false, true) => {
                        let other = if v == a { b } else { a };
                        Boundary::Pair(other.min(u), other.max(u))
                    }
                    (false, false) => {
                        unreachable!("chain never flips an edge disjoint from both defects")
                    }
                }
            }
        };
    }
}

/// Exact uniform draw from `0..bound` (Lemire's nearly-divisionless method;
/// the modulo runs only on the rare rejection path).
#[inline]
fn uniform_below<R: Rng>(rng: &mut R, bound: u32) -> u32 {
    let mut m = rng.gen::<u32>() as u64 * bound as u64;
    let mut lo = m as u32;
    if lo < bound {
        let t = bound.wrapping_neg() % bound;
        while lo < t {
            m = rng.gen::<u32>() as u64 * bound as u64;
            lo = m as u32;
        }
    }
    (m >> 32) as u32
}

#[inline]
fn draw_u<R: Rng>(g: &Graph, s: &WormState, rng: &mut R) -> u32 {
    match s.boundary {
        Boundary::Empty => uniform_below(rng, g.n() as u32),
        Boundary::Pair(a, b) => {
            if rng.gen::<bool>() {
                a
            } else {
                b
            }
        }
    }
}

/// Draws the proposed move (u, v): u uniform on V in C0, uniform on the two
/// defects in C2; v uniform on the neighbors of u.
#[inline]
pub fn propose<R: Rng>(g: &Graph, s: &WormState, rng: &mut R) -> (u32, u32) {
    let u = draw_u(g, s, rng);
    let deg = g.degree(u);
    let i = if deg == 1 { 0 } else { uniform_below(rng, deg) };
    (u, g.neighbors(u)[i as usize])
}

#[inline]
fn acceptance_inner(g: &Graph, s: &WormState, u: u32, v: u32, e: u32, p: &ChainParams) -> f64 {
    let ratio = if s.a.contains(e) { p.inv_x } else { p.x };
    let r = match s.boundary {
        Boundary::Pair(a, b) if (u == a || u == b) && v != a && v != b => {
            // C2 -> C2 move from a defect
            (g.degree_f64(u) / g.degree_f64(v)) * ratio
        }
        _ => ratio,
    };
    0.5 * r.min(1.0)
}

/// The lazy Metropolis acceptance probability a(A, A △ uv). Always <= 1/2.
pub fn acceptance(g: &Graph, s: &WormState, u: u32, v: u32, p: &ChainParams) -> Result<f64> {
    let e = g.edge_id(u, v).ok_or(Error::NotAnEdge(u, v))?;
    Ok(acceptance_inner(g, s, u, v, e, p))
}

/// One step of the lazy PS chain. Returns whether the proposal was accepted.
///
/// Draws exactly as [`propose`] does (u first, then a uniform neighbor
/// index), but resolves the edge index without a lookup.
#[inline]
pub fn step<R: Rng>(g: &Graph, s: &mut WormState, p: &ChainParams, rng: &mut R) -> bool {
    let u = draw_u(g, s, rng);
    let deg = g.degree(u);
    let i = if deg == 1 { 0 } else { uniform_below(rng, deg) };
    let (v, e) = g.neighbor_at(u, i as usize);
    let a = acceptance_inner(g, s, u, v, e, p);
    if rng.gen::<f64>() < a {
        s.flip(u, v, e);
        true
    } else {
        false
    }
}

/// Observables accumulated over a trajectory. Statistics cover the initial
/// state plus the state after each step, so `samples == steps + 1`.
#[derive(Clone, Debug, Default)]
pub struct RunStats {
    pub steps: u64,
    pub samples: u64,
    pub accepted: u64,
    pub time_in_c0: u64,
    pub sum_edge_count: u64,
    /// Visit counts per defect pair, keyed by (min, max), present only if
    /// requested.
    pub defect_pair_counts: Option<std::collections::HashMap<(u32, u32), u64>>,
}

impl RunStats {
    pub fn c0_fraction(&self) -> f64 {
        self.time_in_c0 as f64 / self.samples as f64
    }

    pub fn mean_edge_count(&self) -> f64 {
        self.sum_edge_count as f64 / self.samples as f64
    }
}

/// Options for [`run`].
#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    /// Track per-pair defect visit counts (hash map update per C2 sample).
    pub track_defect_pairs: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            track_defect_pairs: false,
        }
    }
}

/// Applies `steps` chain steps, invoking `observer(t, state)` on the initial
/// state (t = 0) and after every step.
pub fn run<R: Rng, F: FnMut(u64, &WormState)>(
    g: &Graph,
    s: &mut WormState,
    steps: u64,
    p: &ChainParams,
    rng: &mut R,
    opts: RunOptions,
    mut observer: F,
) -> RunStats {
    let mut stats = RunStats {
        defect_pair_counts: opts.track_defect_pairs.then(Default::default),
        ..Default::default()
    };
    let record = |stats: &mut RunStats, s: &WormState| {
        stats.samples += 1;
        stats.sum_edge_count += s.edge_count as u64;
        match s.boundary {
            Boundary::Empty => stats.time_in_c0 += 1,
            Boundary::Pair(a, b) => {
                if let Some(counts) = stats.defect_pair_counts.as_mut() {
                    *counts.entry((a, b)).or_insert(0) += 1;
                }
            }
        }
    };
    record(&mut stats, s);
    observer(0, s);
    for t in 1..=steps {
        if step(g, s, p, rng) {
            stats.accepted += 1;
        }
        stats.steps += 1;
        record(&mut stats, s);
        observer(t, s);
    }
    stats
}
