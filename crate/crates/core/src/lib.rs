//! Worm-algorithm Monte Carlo for the zero-field ferromagnetic Ising model
//! on finite connected graphs.
//!
//! The crate provides:
//!
//! * [`graph`] — immutable labeled graphs, edge subsets, boundaries, and the
//!   deterministic shortest-path and cycle-decomposition orderings;
//! * [`worm`] — the lazy Prokofiev-Svistunov chain (proposal, acceptance,
//!   step, trajectory runner);
//! * [`measure`] — subgraph weights, the mixing-time run-length formula,
//!   susceptibility / two-point estimators, and the median-of-means fpras;
//! * [`oracle`] — exact brute-force ground truth on small graphs (class
//!   weights, stationary distribution, transition matrix, total-variation
//!   mixing times, spectral gap);
//! * [`flows`] — canonical paths, the η map, congestion φ(Γ), and numeric
//!   verification of the mixing-time inequality chain.

pub mod error;
pub mod flows;
pub mod graph;
pub mod measure;
pub mod oracle;
pub mod worm;

pub use error::{Error, Result};
pub use flows::{canonical_path, congestion, verify_theorem_chain, CanonicalPath, CongestionReport, TheoremChainReport};
pub use graph::{Cycle, EdgeSubset, Graph, GraphKind};
pub use measure::{
    estimate_event_probability, fpras, lambda_weight, ratio_bounds, susceptibility,
    theorem1_bound, two_point, Event, FprasEstimate, FprasPlan,
};
pub use oracle::{
    enumerate, exact_chi, exact_two_point, mixing_report, transition_matrix, ExactDistribution,
    MixingReport, TransitionMatrix,
};
pub use worm::{
    acceptance, propose, run, sample_rng, step, Boundary, ChainParams, RunOptions, RunStats,
    WormRng, WormState, RNG_ID,
};
