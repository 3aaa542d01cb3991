//! Exact brute-force ground truth on small graphs: class weights λ(C_W), the
//! stationary distribution π, exact observables, the explicit transition
//! matrix of the lazy PS chain, total-variation mixing times, and the
//! spectral gap.
//!
//! Enumeration walks all 2^m edge subsets in Gray-code order, maintaining
//! vertex parities incrementally.

use std::collections::HashMap;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeSubset, Graph};
use crate::worm::{acceptance, Boundary, ChainParams, WormState};

/// Hard cap on m for 2^m subset enumeration.
pub const ENUM_EDGE_CAP: usize = 20;
/// Hard cap on m for explicit |W| x |W| transition matrices.
pub const MATRIX_EDGE_CAP: usize = 14;

/// Exact class weights and normalizers obtained by full enumeration.
#[derive(Clone, Debug)]
pub struct ExactDistribution {
    x: f64,
    n: usize,
    m: usize,
    /// λ(C_W) keyed by the vertex-parity bitmask of W (all even W reachable
    /// as boundaries, not just |W| ≤ 4).
    class_lambda: HashMap<u64, f64>,
    lambda_c0: f64,
    /// Λ(W) = n λ(C0) + 2 Σ_uv λ(C_uv): the π normalizer.
    z: f64,
    /// Σ_{|W|=4} λ(C_W).
    lambda_c4_sum: f64,
    /// Σ_{A ⊆ E} x^|A| over all subsets (equals (1+x)^m).
    lambda_total: f64,
}

/// Full 2^m enumeration of edge subsets grouped by boundary class.
pub fn enumerate(g: &Graph, x: f64) -> Result<ExactDistribution> {
    let m = g.m();
    if m > ENUM_EDGE_CAP {
        return Err(Error::ExactCapExceeded {
            m,
            cap: ENUM_EDGE_CAP,
        });
    }
    assert!(g.n() <= 64, "parity masks require n <= 64");
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::InvalidParameter(format!("x must be in (0,1), got {x}")));
    }
    let powers: Vec<f64> = (0..=m).map(|k| x.powi(k as i32)).collect();

    let mut class_lambda: HashMap<u64, f64> = HashMap::new();
    let mut parity = 0u64;
    *class_lambda.entry(0).or_insert(0.0) += powers[0]; // the empty subset
    for s in 1u64..(1u64 << m) {
        // Gray code: subset(s) = subset(s-1) with edge tz(s) flipped
        let e = s.trailing_zeros();
        let (u, v) = g.endpoints(e);
        parity ^= (1u64 << u) | (1u64 << v);
        let count = (s ^ (s >> 1)).count_ones() as usize;
        *class_lambda.entry(parity).or_insert(0.0) += powers[count];
    }

    let lambda_c0 = class_lambda.get(&0).copied().unwrap_or(0.0);
    let mut lambda_c2_sum = 0.0;
    let mut lambda_c4_sum = 0.0;
    let mut lambda_total = 0.0;
    for (&mask, &w) in &class_lambda {
        lambda_total += w;
        match mask.count_ones() {
            2 => lambda_c2_sum += w,
            4 => lambda_c4_sum += w,
            _ => {}
        }
    }
    let n = g.n();
    Ok(ExactDistribution {
        x,
        n,
        m,
        z: n as f64 * lambda_c0 + 2.0 * lambda_c2_sum,
        class_lambda,
        lambda_c0,
        lambda_c4_sum,
        lambda_total,
    })
}

impl ExactDistribution {
    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn lambda_c0(&self) -> f64 {
        self.lambda_c0
    }

    /// λ(C_W) for the class with odd-vertex set W (0 for unrealizable W).
    pub fn lambda_class(&self, w: &[u32]) -> f64 {
        let mask = w.iter().fold(0u64, |acc, &v| acc | 1 << v);
        self.class_lambda.get(&mask).copied().unwrap_or(0.0)
    }

    pub fn lambda_cuv(&self, u: u32, v: u32) -> f64 {
        self.lambda_class(&[u, v])
    }

    /// All class weights, as (sorted odd-vertex set, λ) pairs sorted by W.
    pub fn class_weights(&self) -> Vec<(Vec<u32>, f64)> {
        let mut out: Vec<(Vec<u32>, f64)> = self
            .class_lambda
            .iter()
            .map(|(&mask, &w)| {
                let verts: Vec<u32> = (0..64).filter(|&b| mask >> b & 1 == 1).collect();
                (verts, w)
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// The π normalizer Λ(W).
    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn pi_c0(&self) -> f64 {
        self.n as f64 * self.lambda_c0 / self.z
    }

    pub fn pi_c2(&self) -> f64 {
        1.0 - self.pi_c0()
    }

    pub fn pi_cuv(&self, u: u32, v: u32) -> f64 {
        2.0 * self.lambda_cuv(u, v) / self.z
    }

    /// π of a single configuration with `edge_count` edges and the given
    /// boundary size (0 or 2).
    pub fn pi_state(&self, edge_count: usize, boundary_size: usize) -> f64 {
        self.big_lambda_state(edge_count, boundary_size) / self.z
    }

    /// Unnormalized Λ weight of a configuration in W ∪ C4.
    pub fn big_lambda_state(&self, edge_count: usize, boundary_size: usize) -> f64 {
        let factor = match boundary_size {
            0 => self.n as f64,
            2 => 2.0,
            4 => 1.0,
            k => panic!("Lambda is defined on W ∪ C4, got boundary size {k}"),
        };
        factor * self.x.powi(edge_count as i32)
    }

    /// Λ(W ∪ C4) = Λ(W) + Σ_{|W|=4} λ(C_W).
    pub fn big_lambda_norm(&self) -> f64 {
        self.z + self.lambda_c4_sum
    }

    /// Σ_{A ⊆ E} x^|A|; equals (1+x)^m, which `enumerate` clients use as a
    /// completeness check.
    pub fn lambda_total(&self) -> f64 {
        self.lambda_total
    }
}

/// ⟨σ_u σ_v⟩ = λ(C_uv) / λ(C0), by enumeration.
pub fn exact_two_point(g: &Graph, x: f64, u: u32, v: u32) -> Result<f64> {
    let dist = enumerate(g, x)?;
    Ok(dist.lambda_cuv(u, v) / dist.lambda_c0())
}

/// χ = β / π(C0), by enumeration.
pub fn exact_chi(g: &Graph, x: f64) -> Result<f64> {
    let dist = enumerate(g, x)?;
    let beta = ChainParams::from_x(x)?.beta();
    Ok(beta / dist.pi_c0())
}

/// The exact one-step transition matrix of the lazy PS chain over W,
/// together with the exact stationary vector.
#[derive(Clone, Debug)]
pub struct TransitionMatrix {
    /// State bitmasks (edge subsets), ascending.
    states: Vec<u64>,
    index: HashMap<u64, usize>,
    boundaries: Vec<Boundary>,
    p: DMatrix<f64>,
    pi: Vec<f64>,
    x: f64,
}

/// Builds the exact transition matrix by summing proposal probability times
/// acceptance over every (u, v) from every state of W.
pub fn transition_matrix(g: &Graph, x: f64) -> Result<TransitionMatrix> {
    let m = g.m();
    if m > MATRIX_EDGE_CAP {
        return Err(Error::ExactCapExceeded {
            m,
            cap: MATRIX_EDGE_CAP,
        });
    }
    let dist = enumerate(g, x)?;
    let params = ChainParams::from_x(x)?;

    let mut states = Vec::new();
    let mut boundaries = Vec::new();
    for bits in 0u64..(1u64 << m) {
        let subset = EdgeSubset::from_bits(m, bits);
        let b = g.boundary(&subset);
        match b.len() {
            0 => {
                states.push(bits);
                boundaries.push(Boundary::Empty);
            }
            2 => {
                states.push(bits);
                boundaries.push(Boundary::Pair(b[0], b[1]));
            }
            _ => {}
        }
    }
    let index: HashMap<u64, usize> = states.iter().enumerate().map(|(i, &b)| (b, i)).collect();

    let k = states.len();
    let mut p = DMatrix::zeros(k, k);
    let mut pi = Vec::with_capacity(k);
    for (i, &bits) in states.iter().enumerate() {
        let subset = EdgeSubset::from_bits(m, bits);
        let ws = WormState::from_subset(g, subset).expect("state is in W");
        pi.push(dist.pi_state(ws.edge_count(), if ws.in_c0() { 0 } else { 2 }));

        let proposals: Vec<(u32, f64)> = match boundaries[i] {
            Boundary::Empty => (0..g.n() as u32).map(|u| (u, 1.0 / g.n() as f64)).collect(),
            Boundary::Pair(a, b) => vec![(a, 0.5), (b, 0.5)],
        };
        let mut stay = 1.0;
        for (u, pu) in proposals {
            let pv = pu / g.degree(u) as f64;
            for &v in g.neighbors(u) {
                let e = g.edge_id(u, v).unwrap();
                let acc = acceptance(g, &ws, u, v, &params)?;
                let target = bits ^ (1u64 << e);
                let j = *index
                    .get(&target)
                    .expect("chain moves stay inside W");
                p[(i, j)] += pv * acc;
                stay -= pv * acc;
            }
        }
        p[(i, i)] += stay;
    }

    Ok(TransitionMatrix {
        states,
        index,
        boundaries,
        p,
        pi,
        x,
    })
}

impl TransitionMatrix {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[u64] {
        &self.states
    }

    pub fn boundary_of(&self, i: usize) -> Boundary {
        self.boundaries[i]
    }

    pub fn index_of(&self, bits: u64) -> Option<usize> {
        self.index.get(&bits).copied()
    }

    pub fn prob(&self, i: usize, j: usize) -> f64 {
        self.p[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.p
    }

    pub fn pi(&self, i: usize) -> f64 {
        self.pi[i]
    }

    pub fn pi_vec(&self) -> &[f64] {
        &self.pi
    }

    pub fn pi_min(&self) -> f64 {
        self.pi.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn x(&self) -> f64 {
        self.x
    }
}

/// Exact mixing diagnostics: the total-variation curve, mix(δ) for each
/// requested δ, and the spectral data of the reversible chain.
#[derive(Clone, Debug, Serialize)]
pub struct MixingReport {
    pub deltas: Vec<f64>,
    /// mix(δ) aligned with `deltas`.
    pub mix: Vec<u64>,
    /// d(t) for t = 0, 1, ... (truncated; enough to cover the smallest mix
    /// value or 64 entries, whichever is larger).
    pub tv_curve: Vec<f64>,
    /// Second-largest eigenvalue modulus of the reversible chain.
    pub lambda_star: f64,
    pub spectral_gap: f64,
    pub relaxation_time: f64,
}

fn tv_distance(row_stochastic: &DMatrix<f64>, pi: &[f64]) -> f64 {
    let k = pi.len();
    let mut worst: f64 = 0.0;
    for i in 0..k {
        let mut sum = 0.0;
        for j in 0..k {
            sum += (row_stochastic[(i, j)] - pi[j]).abs();
        }
        worst = worst.max(0.5 * sum);
    }
    worst
}

/// Computes d(t) = max_s ||P^t(s,·) − π||_TV exactly, locating mix(δ) by
/// doubling then binary search (d is nonincreasing for lazy reversible
/// chains), and extracts the spectral gap from the π-symmetrized matrix.
pub fn mixing_report(tm: &TransitionMatrix, deltas: &[f64]) -> Result<MixingReport> {
    assert!(!deltas.is_empty());
    for &d in deltas {
        if !(d > 0.0 && d < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "delta must be in (0,1), got {d}"
            )));
        }
    }
    let pi = &tm.pi;
    let p = &tm.p;
    let delta_min = deltas.iter().copied().fold(f64::INFINITY, f64::min);

    // powers[k] = P^(2^k); grown until d(2^K) <= delta_min
    let mut powers: Vec<DMatrix<f64>> = vec![p.clone()];
    const CAP_LOG2: u32 = 48;
    while tv_distance(powers.last().unwrap(), pi) > delta_min {
        if powers.len() as u32 > CAP_LOG2 {
            return Err(Error::MixingIterationCap(CAP_LOG2));
        }
        let last = powers.last().unwrap();
        powers.push(last * last);
    }

    let pow_t = |t: u64| -> DMatrix<f64> {
        debug_assert!(t >= 1);
        let mut acc: Option<DMatrix<f64>> = None;
        for (k, pw) in powers.iter().enumerate() {
            if t >> k & 1 == 1 {
                acc = Some(match acc {
                    None => pw.clone(),
                    Some(a) => a * pw,
                });
            }
        }
        acc.expect("t >= 1")
    };
    let d_at = |t: u64| -> f64 {
        if t == 0 {
            1.0 - tm.pi_min()
        } else {
            tv_distance(&pow_t(t), pi)
        }
    };

    let t_hi = 1u64 << (powers.len() - 1);
    let mix: Vec<u64> = deltas
        .iter()
        .map(|&delta| {
            if d_at(0) <= delta {
                return 0;
            }
            // invariant: d(hi) <= delta < d(lo)
            let (mut lo, mut hi) = (0u64, t_hi);
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if d_at(mid) <= delta {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            hi
        })
        .collect();

    let curve_len = mix.iter().copied().min().unwrap_or(0).min(256).max(64);
    let mut tv_curve = vec![d_at(0)];
    let mut cur = p.clone();
    for _ in 1..=curve_len {
        tv_curve.push(tv_distance(&cur, pi));
        if *tv_curve.last().unwrap() <= delta_min {
            break;
        }
        cur *= p;
    }

    // reversible symmetrization: S_ij = sqrt(pi_i / pi_j) P_ij
    let k = pi.len();
    let mut sym = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            sym[(i, j)] = (pi[i] / pi[j]).sqrt() * p[(i, j)];
        }
    }
    let sym = (&sym + sym.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut evs: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    evs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let lambda_star = evs
        .iter()
        .skip(1)
        .map(|v| v.abs())
        .fold(0.0f64, f64::max);
    let spectral_gap = 1.0 - lambda_star;

    Ok(MixingReport {
        deltas: deltas.to_vec(),
        mix,
        tv_curve,
        lambda_star,
        spectral_gap,
        relaxation_time: 1.0 / spectral_gap,
    })
}
