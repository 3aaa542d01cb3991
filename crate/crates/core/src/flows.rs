//! Canonical paths from C2 states to C0 states, the η map, the congestion
//! φ(Γ), and numeric verification of the inequality chain behind the
//! mixing-time bound.
//!
//! A path from I to F flips each edge of I△F exactly once: first the defect
//! path A0 (the shortest path between the two odd vertices of I inside
//! (V, I△F), walked from the lower-labeled defect), then the edge-disjoint
//! cycles of the remainder in their canonical order and orientation. Every
//! intermediate state stays in W and every step is a positive-probability
//! transition of the chain.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Cycle, EdgeSubset, Graph};
use crate::measure::theorem1_bound;
use crate::oracle::{enumerate, mixing_report, transition_matrix, TransitionMatrix};
use crate::worm::{Boundary, WormState};

/// Hard cap on m for full C2 x C0 path enumeration.
pub const FLOWS_EDGE_CAP: usize = 12;

/// The canonical path γ_{I,F}: states S_0 = I, ..., S_L = F, consecutive
/// states differing by one edge flip.
#[derive(Clone, Debug)]
pub struct CanonicalPath {
    /// Edge indices flipped, in traversal order; length L = |I△F|.
    pub flips: Vec<u32>,
    /// S_0, ..., S_L.
    pub states: Vec<EdgeSubset>,
    /// Vertex sequence of the defect path A0.
    pub defect_path: Vec<u32>,
    /// The ordered cycle decomposition A1, ..., Ak of I△F \ A0.
    pub cycles: Vec<Cycle>,
}

/// Builds γ_{I,F} for I ∈ C2, F ∈ C0.
pub fn canonical_path(g: &Graph, i_state: &WormState, f_state: &WormState) -> Result<CanonicalPath> {
    let (u_i, v_i) = i_state.defects().ok_or_else(|| {
        Error::InvalidEndpoints("initial state must lie in C2".into())
    })?;
    if !f_state.in_c0() {
        return Err(Error::InvalidEndpoints("final state must lie in C0".into()));
    }
    let diff = i_state.subset().symmetric_difference(f_state.subset());
    let a0_vertices = g.shortest_path(u_i, v_i, &diff)?;
    let mut flips: Vec<u32> = a0_vertices
        .windows(2)
        .map(|w| g.edge_id(w[0], w[1]).expect("path edge exists"))
        .collect();
    let a0_set = EdgeSubset::from_edges(g.m(), flips.iter().copied());
    let cycles = g.decompose_even_subgraph(&diff.difference(&a0_set))?;
    for cycle in &cycles {
        for (u, v) in cycle.oriented_edges() {
            flips.push(g.edge_id(u, v).expect("cycle edge exists"));
        }
    }

    let mut states = Vec::with_capacity(flips.len() + 1);
    states.push(i_state.subset().clone());
    for &e in &flips {
        let mut next = states.last().unwrap().clone();
        next.flip(e);
        states.push(next);
    }
    debug_assert_eq!(states.last().unwrap(), f_state.subset());
    Ok(CanonicalPath {
        flips,
        states,
        defect_path: a0_vertices,
        cycles,
    })
}

impl CanonicalPath {
    pub fn len(&self) -> usize {
        self.flips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flips.is_empty()
    }

    pub fn initial(&self) -> &EdgeSubset {
        self.states.first().unwrap()
    }

    pub fn final_state(&self) -> &EdgeSubset {
        self.states.last().unwrap()
    }

    /// η for the transition (S_t, S_{t+1}): I △ F △ S_t.
    pub fn eta_at(&self, t: usize) -> EdgeSubset {
        eta_config(self.initial(), self.final_state(), &self.states[t])
    }

    /// η for an explicit transition (A, A'), which must lie on this path.
    pub fn eta(&self, a: &EdgeSubset, a_next: &EdgeSubset) -> Result<EdgeSubset> {
        let t = self
            .states
            .windows(2)
            .position(|w| &w[0] == a && &w[1] == a_next)
            .ok_or(Error::TransitionOffPath)?;
        Ok(self.eta_at(t))
    }
}

/// The raw η formula: I △ F △ A.
pub fn eta_config(i: &EdgeSubset, f: &EdgeSubset, a: &EdgeSubset) -> EdgeSubset {
    i.symmetric_difference(f).symmetric_difference(a)
}

#[derive(Clone, Copy, Default)]
struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    fn add(&mut self, v: f64) {
        let y = v - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Load on one transition of the chain's transition graph.
#[derive(Clone, Debug, Serialize)]
pub struct TransitionLoad {
    pub from_bits: u64,
    pub to_bits: u64,
    pub load: f64,
}

/// Congestion data for the canonical path ensemble Γ.
#[derive(Clone, Debug, Serialize)]
pub struct CongestionReport {
    pub x: f64,
    /// L(Γ): the longest path length.
    pub l_max: usize,
    /// max over transitions of Σ π(I)π(F) / (π(A) P(A,A')).
    pub max_load: f64,
    /// φ(Γ) = L(Γ) · max load.
    pub phi: f64,
    /// The proof's closed-form ceiling (1/4x)·Δ(G)·n⁵·m.
    pub phi_bound: f64,
    pub num_paths: usize,
    pub num_loaded_transitions: usize,
    /// Heaviest transitions, descending (capped).
    pub top_loads: Vec<TransitionLoad>,
}

fn worm_states(g: &Graph, tm: &TransitionMatrix) -> Vec<WormState> {
    tm.states()
        .iter()
        .map(|&bits| {
            WormState::from_subset(g, EdgeSubset::from_bits(g.m(), bits)).expect("state in W")
        })
        .collect()
}

/// Builds every γ_{I,F} over C2 × C0 and accumulates per-transition loads
/// with exact π and P (compensated summation, no path storage).
pub fn congestion(g: &Graph, x: f64) -> Result<CongestionReport> {
    let report = congestion_inner(g, x)?.0;
    Ok(report)
}

fn congestion_inner(g: &Graph, x: f64) -> Result<(CongestionReport, TransitionMatrix)> {
    if g.m() > FLOWS_EDGE_CAP {
        return Err(Error::ExactCapExceeded {
            m: g.m(),
            cap: FLOWS_EDGE_CAP,
        });
    }
    let tm = transition_matrix(g, x)?;
    let states = worm_states(g, &tm);
    let c2: Vec<usize> = (0..tm.len())
        .filter(|&i| matches!(tm.boundary_of(i), Boundary::Pair(..)))
        .collect();
    let c0: Vec<usize> = (0..tm.len())
        .filter(|&i| matches!(tm.boundary_of(i), Boundary::Empty))
        .collect();

    let mut loads: HashMap<(usize, usize), Kahan> = HashMap::new();
    let mut l_max = 0usize;
    let mut num_paths = 0usize;
    for &fi in &c0 {
        for &ii in &c2 {
            let path = canonical_path(g, &states[ii], &states[fi])?;
            l_max = l_max.max(path.len());
            num_paths += 1;
            let weight = tm.pi(ii) * tm.pi(fi);
            for t in 0..path.len() {
                let a = tm.index_of(path.states[t].bits()).expect("on-path state in W");
                let b = tm
                    .index_of(path.states[t + 1].bits())
                    .expect("on-path state in W");
                let p = tm.prob(a, b);
                debug_assert!(p > 0.0, "canonical path uses a zero-probability transition");
                loads.entry((a, b)).or_default().add(weight / (tm.pi(a) * p));
            }
        }
    }

    let mut all: Vec<TransitionLoad> = loads
        .iter()
        .map(|(&(a, b), k)| TransitionLoad {
            from_bits: tm.states()[a],
            to_bits: tm.states()[b],
            load: k.sum,
        })
        .collect();
    all.sort_by(|p, q| q.load.partial_cmp(&p.load).unwrap());
    let max_load = all.first().map(|t| t.load).unwrap_or(0.0);
    let n = g.n() as f64;
    let report = CongestionReport {
        x,
        l_max,
        max_load,
        phi: l_max as f64 * max_load,
        phi_bound: (1.0 / (4.0 * x)) * g.max_degree() as f64 * n.powi(5) * g.m() as f64,
        num_paths,
        num_loaded_transitions: all.len(),
        top_loads: {
            all.truncate(32);
            all
        },
    };
    Ok((report, tm))
}

/// Outcome of numerically verifying the full inequality chain of the
/// mixing-time proof on one graph and temperature.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremChainReport {
    pub x: f64,
    pub delta: f64,
    /// Every canonical-path step is a positive-probability transition.
    pub positive_prob_ok: bool,
    /// η lands in W ∪ C4 for every path-edge incidence.
    pub eta_range_ok: bool,
    /// η is injective on P(e) for every transition e.
    pub eta_injective_ok: bool,
    /// Λ(I)Λ(F)/Λ(A) ≤ n·Λ(η_e(I,F)) for every incidence.
    pub lambda_bound_ok: bool,
    pub phi: f64,
    pub phi_bound: f64,
    pub phi_ok: bool,
    /// Exact mix(δ).
    pub mix: u64,
    /// log(1/(π_min δ)) · [2 + 4(ρ + 1/ρ)] · φ(Γ) with ρ = π(C2)/π(C0).
    pub flow_bound_exact: f64,
    /// (log(8/x) − log δ / m) · (6 + 2/(mx)) · m n · φ(Γ).
    pub flow_bound_relaxed: f64,
    pub theorem1: f64,
    pub mix_le_flow_bound: bool,
    pub flow_bounds_ordered: bool,
    pub relaxed_le_theorem1: bool,
    pub mix_le_theorem1: bool,
    /// Human-readable counterexamples for any failed check.
    pub violations: Vec<String>,
    pub passed: bool,
}

/// Checks, with exact quantities: the Λ inequality per incidence, injectivity
/// of η per transition, positivity of every path step, φ(Γ) against its
/// closed-form ceiling, and the ordering mix(δ) ≤ flow bounds ≤ Theorem-1
/// formula. The proven theorem guarantees all of these; a violation reports a
/// counterexample (and signals an implementation bug).
pub fn verify_theorem_chain(g: &Graph, x: f64, delta: f64) -> Result<TheoremChainReport> {
    let (congestion, tm) = congestion_inner(g, x)?;
    let dist = enumerate(g, x)?;
    let states = worm_states(g, &tm);
    let c2: Vec<usize> = (0..tm.len())
        .filter(|&i| matches!(tm.boundary_of(i), Boundary::Pair(..)))
        .collect();
    let c0: Vec<usize> = (0..tm.len())
        .filter(|&i| matches!(tm.boundary_of(i), Boundary::Empty))
        .collect();

    let mut violations = Vec::new();
    let mut positive_prob_ok = true;
    let mut eta_range_ok = true;
    let mut eta_injective_ok = true;
    let mut lambda_bound_ok = true;
    // per transition: eta bits -> (I, F) that produced them
    let mut eta_seen: HashMap<(usize, usize), HashMap<u64, (u64, u64)>> = HashMap::new();
    let n = g.n() as f64;

    let big_lambda = |s: &EdgeSubset| -> Option<f64> {
        let b = g.boundary(s).len();
        (b <= 4 && b % 2 == 0).then(|| dist.big_lambda_state(s.len(), b))
    };

    for &fi in &c0 {
        for &ii in &c2 {
            let path = canonical_path(g, &states[ii], &states[fi])?;
            let lam_i = big_lambda(states[ii].subset()).unwrap();
            let lam_f = big_lambda(states[fi].subset()).unwrap();
            for t in 0..path.len() {
                let a = tm.index_of(path.states[t].bits()).unwrap();
                let b = tm.index_of(path.states[t + 1].bits()).unwrap();
                if tm.prob(a, b) <= 0.0 {
                    positive_prob_ok = false;
                    violations.push(format!(
                        "zero-probability step {:#b} -> {:#b} on path ({:#b}, {:#b})",
                        tm.states()[a],
                        tm.states()[b],
                        tm.states()[ii],
                        tm.states()[fi]
                    ));
                }
                let eta = path.eta_at(t);
                let lam_eta = match big_lambda(&eta) {
                    Some(l) => l,
                    None => {
                        eta_range_ok = false;
                        violations.push(format!(
                            "eta {:#b} outside W ∪ C4 for pair ({:#b}, {:#b})",
                            eta.bits(),
                            tm.states()[ii],
                            tm.states()[fi]
                        ));
                        continue;
                    }
                };
                let lam_a = big_lambda(&path.states[t]).unwrap();
                if lam_i * lam_f / lam_a > n * lam_eta * (1.0 + 1e-9) {
                    lambda_bound_ok = false;
                    violations.push(format!(
                        "Lambda inequality fails at A = {:#b} for pair ({:#b}, {:#b}): {} > {}",
                        path.states[t].bits(),
                        tm.states()[ii],
                        tm.states()[fi],
                        lam_i * lam_f / lam_a,
                        n * lam_eta
                    ));
                }
                let seen = eta_seen.entry((a, b)).or_default();
                if let Some(&(pi, pf)) = seen.get(&eta.bits()) {
                    if (pi, pf) != (tm.states()[ii], tm.states()[fi]) {
                        eta_injective_ok = false;
                        violations.push(format!(
                            "eta collision on transition ({:#b}, {:#b}): pairs ({pi:#b},{pf:#b}) and ({:#b},{:#b})",
                            tm.states()[a],
                            tm.states()[b],
                            tm.states()[ii],
                            tm.states()[fi]
                        ));
                    }
                } else {
                    seen.insert(eta.bits(), (tm.states()[ii], tm.states()[fi]));
                }
            }
        }
    }

    let phi_ok = congestion.phi <= congestion.phi_bound * (1.0 + 1e-9);
    if !phi_ok {
        violations.push(format!(
            "phi = {} exceeds the closed-form bound {}",
            congestion.phi, congestion.phi_bound
        ));
    }

    let mixing = mixing_report(&tm, &[delta])?;
    let mix = mixing.mix[0];
    let rho = dist.pi_c2() / dist.pi_c0();
    let m = g.m() as f64;
    let flow_bound_exact =
        (1.0 / (tm.pi_min() * delta)).ln() * (2.0 + 4.0 * (rho + 1.0 / rho)) * congestion.phi;
    let flow_bound_relaxed =
        ((8.0 / x).ln() - delta.ln() / m) * (6.0 + 2.0 / (m * x)) * m * n * congestion.phi;
    let theorem1 = theorem1_bound(g, x, delta)?;

    let mix_le_flow_bound = (mix as f64) <= flow_bound_exact * (1.0 + 1e-12);
    let flow_bounds_ordered = flow_bound_exact <= flow_bound_relaxed * (1.0 + 1e-12);
    let relaxed_le_theorem1 = flow_bound_relaxed <= theorem1 * (1.0 + 1e-12);
    let mix_le_theorem1 = (mix as f64) <= theorem1;
    for (ok, msg) in [
        (mix_le_flow_bound, "mix(δ) exceeds the exact flow bound"),
        (flow_bounds_ordered, "flow bound lines out of order"),
        (relaxed_le_theorem1, "relaxed flow bound exceeds Theorem 1"),
        (mix_le_theorem1, "mix(δ) exceeds Theorem 1"),
    ] {
        if !ok {
            violations.push(msg.to_string());
        }
    }

    let passed = positive_prob_ok
        && eta_range_ok
        && eta_injective_ok
        && lambda_bound_ok
        && phi_ok
        && mix_le_flow_bound
        && flow_bounds_ordered
        && relaxed_le_theorem1
        && mix_le_theorem1;
    Ok(TheoremChainReport {
        x,
        delta,
        positive_prob_ok,
        eta_range_ok,
        eta_injective_ok,
        lambda_bound_ok,
        phi: congestion.phi,
        phi_bound: congestion.phi_bound,
        phi_ok,
        mix,
        flow_bound_exact,
        flow_bound_relaxed,
        theorem1,
        mix_le_flow_bound,
        flow_bounds_ordered,
        relaxed_le_theorem1,
        mix_le_theorem1,
        violations,
        passed,
    })
}
