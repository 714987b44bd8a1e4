//! The γ functional, exact weak saturation numbers and extremal host sequences.

mod flow;
mod ftilde;
mod gamma;
mod wsat;

pub use ftilde::{
    build_f_tilde, host_sequence, replicate_component, ExtremalError, FTilde, HostSequence, LinearFamily,
    DEFAULT_NONEDGE_CAP, MAX_F_TILDE_VERTICES,
};
pub use gamma::{
    gamma_min_brute, gamma_min_brute_capped, gamma_min_ratio, gamma_of_set, m_f, GammaError, GammaMethod,
    GammaResult, DEFAULT_BRUTE_CAP,
};
pub use wsat::{minimum_hosts, wsat_clique_formula, wsat_exact, WsatError, WsatResult, DEFAULT_WSAT_BUDGET};

use crate::graph::Graph;
use crate::rational::{int, ratio, Rational};

/// γ by brute force when small, else by the ratio solver.
pub fn gamma(g: &Graph) -> Result<GammaResult, GammaError> {
    if g.n() <= 14 {
        gamma_min_brute(g)
    } else {
        gamma_min_ratio(g)
    }
}

/// Lower and upper bounds on the weak saturation limit: the lower one is the
/// larger of γ and `δ/2 − 1/(δ+1)`, the upper one `δ − 1`; both floored at 0.
pub fn w_f_bounds(f: &Graph) -> Result<(Rational, Rational), GammaError> {
    let d = f.min_degree() as i64;
    let g = gamma(f)?.value;
    let degree = ratio(d, 2) - ratio(1, d + 1);
    let lower = g.max(degree).max(int(0));
    let upper = int((d - 1).max(0));
    Ok((lower, upper))
}
