// shared by several test binaries; each uses a different subset
#![allow(dead_code)]

use statrs::distribution::{ChiSquared, ContinuousCDF};
use worm_ising::{Graph, GraphKind};

/// The small-graph verification suite.
pub fn suite() -> Vec<(&'static str, Graph)> {
    vec![
        ("k2", Graph::generate(GraphKind::Complete(2)).unwrap()),
        ("k3", Graph::generate(GraphKind::Complete(3)).unwrap()),
        ("k4", Graph::generate(GraphKind::Complete(4)).unwrap()),
        ("path4", Graph::generate(GraphKind::Path(4)).unwrap()),
        ("cycle5", Graph::generate(GraphKind::Cycle(5)).unwrap()),
        ("grid2x3", Graph::generate(GraphKind::Grid(2, 3)).unwrap()),
    ]
}

pub const TEMPERATURES: [f64; 3] = [0.1, 0.5, 0.9];

/// Upper-tail p-value of a chi-square statistic.
pub fn chi2_pvalue(stat: f64, dof: f64) -> f64 {
    1.0 - ChiSquared::new(dof).unwrap().cdf(stat)
}
