//! Subgraph weights, the Theorem-1 run-length formula, estimators for the
//! susceptibility and two-point function, and the median-of-means fpras
//! driver.
//!
//! All logarithms are natural, and every non-integer count or run length is
//! rounded up, so the stated guarantees are never weakened.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeSubset, Graph};
use crate::worm::{sample_rng, step, ChainParams, WormState};

/// λ(A) = x^|A|.
pub fn lambda_weight(a: &EdgeSubset, x: f64) -> f64 {
    x.powi(a.len() as i32)
}

/// The Theorem-1 mixing-time upper bound,
/// ⌈(1/2x)·(ln(8/x) − ln δ / m)·(3 + 1/(mx))·Δ(G)·n⁶·m²⌉,
/// returned as an exact ceiled float (it can exceed u64 on large graphs).
pub fn theorem1_bound(g: &Graph, x: f64, delta: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::InvalidParameter(format!("x must be in (0,1), got {x}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "delta must be in (0,1), got {delta}"
        )));
    }
    let n = g.n() as f64;
    let m = g.m() as f64;
    let dmax = g.max_degree() as f64;
    let raw = (1.0 / (2.0 * x))
        * ((8.0 / x).ln() - delta.ln() / m)
        * (3.0 + 1.0 / (m * x))
        * dmax
        * n.powi(6)
        * m
        * m;
    Ok(raw.ceil())
}

/// A target event for estimation: the cycle space C0, or C_uv for a fixed
/// vertex pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Event {
    CycleSpace,
    DefectPair(u32, u32),
}

impl Event {
    pub fn contains(&self, s: &WormState) -> bool {
        match (*self, s.defects()) {
            (Event::CycleSpace, None) => true,
            (Event::DefectPair(u, v), Some((a, b))) => (u.min(v), u.max(v)) == (a, b),
            _ => false,
        }
    }
}

/// Fully resolved fpras parameters: the witness polynomial S(n), the mixing
/// target δ = ε / (16 S(n)), the Theorem-1 run length, and the repetition
/// counts J = 7⌈ln η⁻¹⌉ + 1 (outer) and I = 20⌈S(n) ε⁻² + 1⌉ (inner).
#[derive(Clone, Debug, Serialize)]
pub struct FprasPlan {
    pub event: Event,
    pub epsilon: f64,
    pub eta: f64,
    /// Witness polynomial: π(event) ≥ 1/S(n).
    pub s_n: f64,
    pub delta: f64,
    /// The Theorem-1 bound for mix(δ), before any integer conversion.
    pub r_bound: f64,
    /// Steps actually run per sample (saturates at u64::MAX).
    pub run_length: u64,
    pub outer_reps: u64,
    pub inner_reps: u64,
}

impl FprasPlan {
    /// Plan for the given event with k = d(u,v) in the C_uv case.
    pub fn new(g: &Graph, p: &ChainParams, event: Event, epsilon: f64, eta: f64) -> Result<FprasPlan> {
        let k = match event {
            Event::CycleSpace => 0,
            Event::DefectPair(u, v) => g.distance(u, v),
        };
        FprasPlan::with_k(g, p, event, epsilon, eta, k)
    }

    /// Plan with an explicit path-length budget k ≥ d(u,v) for C_uv targets.
    pub fn with_k(
        g: &Graph,
        p: &ChainParams,
        event: Event,
        epsilon: f64,
        eta: f64,
        k: u32,
    ) -> Result<FprasPlan> {
        for (name, v) in [("epsilon", epsilon), ("eta", eta)] {
            if !(v > 0.0 && v < 0.25) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must lie in (0, 1/4), got {v}"
                )));
            }
        }
        let n = g.n() as f64;
        let s_n = match event {
            Event::CycleSpace => 2.0 * n + 1.0,
            Event::DefectPair(u, v) => {
                let d = g.distance(u, v);
                if d == u32::MAX {
                    return Err(Error::NoPath(u, v));
                }
                if k < d {
                    return Err(Error::InvalidParameter(format!(
                        "k = {k} is below the graph distance d({u},{v}) = {d}"
                    )));
                }
                n * (n + 1.0) * p.x().powi(-(k as i32)) / 2.0
            }
        };
        let delta = epsilon / (16.0 * s_n);
        let r_bound = theorem1_bound(g, p.x(), delta)?;
        let run_length = if r_bound >= u64::MAX as f64 {
            u64::MAX
        } else {
            r_bound as u64
        };
        let outer_reps = 7 * (1.0 / eta).ln().ceil() as u64 + 1;
        let inner_reps = 20 * (s_n / (epsilon * epsilon) + 1.0).ceil() as u64;
        Ok(FprasPlan {
            event,
            epsilon,
            eta,
            s_n,
            delta,
            r_bound,
            run_length,
            outer_reps,
            inner_reps,
        })
    }

    /// Overrides the per-sample run length (e.g. to cap cost on large graphs;
    /// the approximation guarantee holds whenever the override still exceeds
    /// the exact mixing time at δ).
    pub fn with_run_length(mut self, run_length: u64) -> FprasPlan {
        self.run_length = run_length;
        self
    }
}

/// Runs `samples` independent chains from the empty state for `run_length`
/// steps each and returns the mean of the event indicator at the final state.
/// Per-sample generators derive deterministically from `(seed, 0, i)`.
pub fn estimate_event_probability(
    g: &Graph,
    p: &ChainParams,
    event: Event,
    run_length: u64,
    samples: u64,
    seed: u64,
) -> Result<f64> {
    if samples == 0 {
        return Err(Error::EmptySample);
    }
    let mut hits = 0u64;
    for i in 0..samples {
        let mut rng = sample_rng(seed, 0, i);
        let mut s = WormState::empty(g);
        for _ in 0..run_length {
            step(g, &mut s, p, &mut rng);
        }
        if event.contains(&s) {
            hits += 1;
        }
    }
    Ok(hits as f64 / samples as f64)
}

/// fpras output: the median of the outer-loop sample means.
#[derive(Clone, Debug, Serialize)]
pub struct FprasEstimate {
    pub estimate: f64,
    pub means: Vec<f64>,
}

/// Median-of-means fpras for π(event): J independent sample means of I
/// indicator samples each (fresh chain per sample, run for the plan's run
/// length); outputs the median. Guarantees
/// P[(1−ε)π ≤ Y ≤ (1+ε)π] ≥ 1−η whenever π(event) ≥ 1/S(n).
pub fn fpras(g: &Graph, p: &ChainParams, plan: &FprasPlan, seed: u64) -> Result<FprasEstimate> {
    if plan.inner_reps == 0 || plan.outer_reps == 0 {
        return Err(Error::EmptySample);
    }
    let mut means = Vec::with_capacity(plan.outer_reps as usize);
    for j in 0..plan.outer_reps {
        let mut hits = 0u64;
        for i in 0..plan.inner_reps {
            let mut rng = sample_rng(seed, j, i);
            let mut s = WormState::empty(g);
            for _ in 0..plan.run_length {
                step(g, &mut s, p, &mut rng);
            }
            if plan.event.contains(&s) {
                hits += 1;
            }
        }
        means.push(hits as f64 / plan.inner_reps as f64);
    }
    Ok(FprasEstimate {
        estimate: median(&means),
        means,
    })
}

/// Median: middle order statistic for odd length, average of the two middle
/// order statistics for even length.
pub fn median(xs: &[f64]) -> f64 {
    assert!(!xs.is_empty());
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2]
    } else {
        0.5 * (v[k / 2 - 1] + v[k / 2])
    }
}

/// χ = β / π(C0).
pub fn susceptibility(pi_c0: f64, beta: f64) -> Result<f64> {
    if !(pi_c0 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "pi(C0) must be positive, got {pi_c0}"
        )));
    }
    Ok(beta / pi_c0)
}

/// ⟨σ_u σ_v⟩ = (n/2) π(C_uv) / π(C0), clamped into [0, 1].
pub fn two_point(pi_cuv: f64, pi_c0: f64, n: usize) -> Result<f64> {
    if !(pi_c0 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "pi(C0) must be positive, got {pi_c0}"
        )));
    }
    Ok(((n as f64 / 2.0) * pi_cuv / pi_c0).clamp(0.0, 1.0))
}

/// The sandwich bound for π(C2)/π(C0): ((2/n)·mx/(mx+1), n−1).
pub fn ratio_bounds(g: &Graph, x: f64) -> (f64, f64) {
    let n = g.n() as f64;
    let m = g.m() as f64;
    ((2.0 / n) * (m * x) / (m * x + 1.0), n - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphKind;

    fn k(n: usize) -> Graph {
        Graph::generate(GraphKind::Complete(n)).unwrap()
    }

    #[test]
    fn lambda_weight_powers() {
        let a = EdgeSubset::empty(5);
        assert_eq!(lambda_weight(&a, 0.5), 1.0);
        let a = EdgeSubset::from_edges(5, [0, 2, 4]);
        assert_eq!(lambda_weight(&a, 0.5), 0.125);
        let a = EdgeSubset::from_edges(12, 0..12);
        assert!((lambda_weight(&a, 0.9) - 0.282429536481).abs() < 1e-12);
    }

    #[test]
    fn theorem1_k2() {
        let g = k(2);
        let r = theorem1_bound(&g, 0.5, 0.25).unwrap();
        // (1)·(ln 16 + ln 4)·5·1·64·1 = 1330.85...
        assert_eq!(r, 1331.0);
    }

    #[test]
    fn theorem1_k3_independent_arithmetic() {
        let g = k(3);
        let r = theorem1_bound(&g, 0.5, 0.1).unwrap();
        // independent route: assemble the factors separately
        let bracket = (16f64).ln() - (0.1f64).ln() / 3.0;
        let expected = (bracket * (3.0 + 2.0 / 3.0) * 2.0 * 729.0 * 9.0).ceil();
        assert_eq!(r, expected);
    }

    #[test]
    fn theorem1_monotonicity() {
        let g = k(3);
        let r1 = theorem1_bound(&g, 0.5, 0.25).unwrap();
        let r2 = theorem1_bound(&g, 0.5, 0.1).unwrap();
        assert!(r2 > r1);
        let r3 = theorem1_bound(&g, 0.6, 0.25).unwrap();
        assert!(r3 < r1);
        let bigger = k(4);
        assert!(theorem1_bound(&bigger, 0.5, 0.25).unwrap() > r1);
    }

    #[test]
    fn plan_arithmetic_k2() {
        let g = k(2);
        let p = ChainParams::from_x(0.5).unwrap();
        let plan = FprasPlan::new(&g, &p, Event::CycleSpace, 0.2, 0.2).unwrap();
        assert_eq!(plan.s_n, 5.0);
        assert_eq!(plan.outer_reps, 15); // 7·⌈ln 5⌉ + 1
        assert_eq!(plan.inner_reps, 2520); // 20·⌈5/0.04 + 1⌉
        assert!((plan.delta - 0.2 / 80.0).abs() < 1e-18);
        assert_eq!(plan.r_bound, theorem1_bound(&g, 0.5, plan.delta).unwrap());
        assert!(FprasPlan::new(&g, &p, Event::CycleSpace, 0.3, 0.2).is_err());
    }

    #[test]
    fn plan_two_point_witness() {
        let g = Graph::generate(GraphKind::Path(4)).unwrap();
        let p = ChainParams::from_x(0.5).unwrap();
        let plan = FprasPlan::new(&g, &p, Event::DefectPair(0, 3), 0.2, 0.2).unwrap();
        // S = n(n+1) x^{-k} / 2 with k = 3
        assert!((plan.s_n - 4.0 * 5.0 * 8.0 / 2.0).abs() < 1e-12);
        assert!(FprasPlan::with_k(&g, &p, Event::DefectPair(0, 3), 0.2, 0.2, 2).is_err());
    }

    #[test]
    fn estimate_c0_on_k2() {
        // exact pi(C0) = 2/3 at x = 0.5
        let g = k(2);
        let p = ChainParams::from_x(0.5).unwrap();
        let samples = 40_000;
        let est = estimate_event_probability(&g, &p, Event::CycleSpace, 200, samples, 99).unwrap();
        let exact = 2.0 / 3.0;
        let sigma = (exact * (1.0 - exact) / samples as f64).sqrt();
        assert!((est - exact).abs() < 4.0 * sigma, "est = {est}");
        assert!(matches!(
            estimate_event_probability(&g, &p, Event::CycleSpace, 10, 0, 0),
            Err(Error::EmptySample)
        ));
    }

    #[test]
    fn estimate_cuv_on_k3() {
        // exact pi(C_01) = 2·0.75 / 7.875
        let g = k(3);
        let p = ChainParams::from_x(0.5).unwrap();
        let samples = 40_000;
        let est =
            estimate_event_probability(&g, &p, Event::DefectPair(0, 1), 300, samples, 4).unwrap();
        let exact = 1.5 / 7.875;
        let sigma = (exact * (1.0 - exact) / samples as f64).sqrt();
        assert!((est - exact).abs() < 4.0 * sigma, "est = {est}");
    }

    #[test]
    fn median_order_statistic() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 3.0, 2.0]), 2.5);
        assert_eq!(median(&[7.0]), 7.0);
    }

    #[test]
    fn estimator_formulas() {
        let beta = 0.5f64.atanh();
        assert!((susceptibility(2.0 / 3.0, beta).unwrap() - beta * 1.5).abs() < 1e-15);
        assert!((susceptibility(3.0 / 7.0, beta).unwrap() - beta * 7.0 / 3.0).abs() < 1e-15);
        assert_eq!(susceptibility(1.0, beta).unwrap(), beta);
        assert!(susceptibility(0.0, beta).is_err());

        // K2 at x = 0.5: pi(C_01) = 1/3, pi(C0) = 2/3 -> tanh beta
        assert!((two_point(1.0 / 3.0, 2.0 / 3.0, 2).unwrap() - 0.5).abs() < 1e-15);
        assert!(two_point(0.1, 0.0, 2).is_err());
    }

    #[test]
    fn ratio_bounds_examples() {
        let g2 = k(2);
        let (lo, hi) = ratio_bounds(&g2, 0.5);
        assert!((lo - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(hi, 1.0);
        // actual ratio on K2 is x = 0.5
        assert!(lo <= 0.5 && 0.5 <= hi);

        let g3 = k(3);
        let (lo, hi) = ratio_bounds(&g3, 0.5);
        assert!((lo - 0.4).abs() < 1e-15);
        assert_eq!(hi, 2.0);
        // actual ratio on K3 is 4.5/3.375
        let r = 4.5 / 3.375;
        assert!(lo <= r && r <= hi);
        assert!(lo <= hi);
    }
}
