//! The analytic expansion condition for random regular graphs.
//!
//! With `L(α, r) = (α^-α (1−α)^-(1−α))^(1/r)` and
//! `R(α, η) = (1−η)^((1−η)α(1−α)) · (1 + (1−α)η/α)^((α+(1−α)η)α/2)
//!          · (1 + αη/(1−α))^(((1−α)+αη)(1−α)/2)`,
//! `L < R` guarantees `i_α ≥ (1−η) r (1−α)` for almost all random `r`-regular
//! graphs. Both sides are compared in the log domain with enclosures.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::interval::{ln, Interval};
use crate::rational::{format_rational, int, parse_rational, ratio, to_f64, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExpanderError {
    #[error("alpha must lie in (0, 1/2], got {0}")]
    AlphaRange(String),
    #[error("eta must lie in [0, 1], got {0}")]
    EtaRange(String),
    #[error("degree must be at least 3, got {0}")]
    DegreeRange(usize),
    #[error("tolerance must be positive")]
    Tolerance,
    #[error("the condition fails for every eta in [0, 1]")]
    Unsatisfiable,
    #[error("r·n = {0} is odd")]
    OddDegreeSum(usize),
    #[error("{n} vertices exceed the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("no nonempty set has at most alpha·n vertices")]
    NoAdmissibleSet,
    #[error("no simple graph after {0} attempts")]
    SamplingExhausted(usize),
}

fn check_alpha(alpha: &Rational) -> Result<(), ExpanderError> {
    if *alpha <= int(0) || *alpha > ratio(1, 2) {
        return Err(ExpanderError::AlphaRange(format_rational(alpha)));
    }
    Ok(())
}

fn check_eta(eta: &Rational) -> Result<(), ExpanderError> {
    if *eta < int(0) || *eta > int(1) {
        return Err(ExpanderError::EtaRange(format_rational(eta)));
    }
    Ok(())
}

/// Enclosure of `ln L(α, r)`.
pub fn ln_lhs(alpha: &Rational, r: usize) -> Result<Interval, ExpanderError> {
    check_alpha(alpha)?;
    if r < 3 {
        return Err(ExpanderError::DegreeRange(r));
    }
    let beta = int(1) - alpha;
    let entropy = ln(alpha).mul_rational(&-alpha.clone()).sub(&ln(&beta).mul_rational(&beta));
    Ok(entropy.mul_rational(&ratio(1, r as i64)))
}

/// Enclosure of `ln R(α, η)`; the first factor is 1 at `η = 1`.
pub fn ln_rhs(alpha: &Rational, eta: &Rational) -> Result<Interval, ExpanderError> {
    check_alpha(alpha)?;
    check_eta(eta)?;
    let one = int(1);
    let beta = &one - alpha;
    let mut acc = Interval::zero();
    if *eta < one {
        let c = (&one - eta) * alpha * &beta;
        acc = acc.add(&ln(&(&one - eta)).mul_rational(&c));
    }
    let c2 = (alpha + &beta * eta) * alpha / int(2);
    acc = acc.add(&ln(&(&one + &beta * eta / alpha)).mul_rational(&c2));
    let c3 = (&beta + alpha * eta) * &beta / int(2);
    acc = acc.add(&ln(&(&one + alpha * eta / &beta)).mul_rational(&c3));
    Ok(acc)
}

pub fn condition_lhs(alpha: &Rational, r: usize) -> Result<Interval, ExpanderError> {
    Ok(ln_lhs(alpha, r)?.exp())
}

pub fn condition_rhs(alpha: &Rational, eta: &Rational) -> Result<Interval, ExpanderError> {
    Ok(ln_rhs(alpha, eta)?.exp())
}

/// Both sides of the condition with their log-domain enclosures.
#[derive(Clone, Debug)]
pub struct ConditionValue {
    pub ln_lhs: Interval,
    pub ln_rhs: Interval,
}

impl ConditionValue {
    pub fn evaluate(alpha: &Rational, r: usize, eta: &Rational) -> Result<Self, ExpanderError> {
        Ok(ConditionValue { ln_lhs: ln_lhs(alpha, r)?, ln_rhs: ln_rhs(alpha, eta)? })
    }

    /// `L < R`, proved by disjoint enclosures.
    pub fn is_satisfied(&self) -> bool {
        self.ln_lhs.certainly_lt(&self.ln_rhs)
    }

    pub fn lhs(&self) -> Interval {
        self.ln_lhs.exp()
    }

    pub fn rhs(&self) -> Interval {
        self.ln_rhs.exp()
    }

    /// Enclosure of `R − L`.
    pub fn margin(&self) -> Interval {
        self.rhs().sub(&self.lhs())
    }
}

#[derive(Clone, Debug)]
pub struct BestEta {
    /// Rigorously satisfies the condition.
    pub eta: Rational,
    /// Fails or is undecided; `eta − eta_below <= tol`.
    pub eta_below: Rational,
    /// `(1 − η) r (1 − α)`, a guaranteed expansion.
    pub expansion: Rational,
}

/// Smallest `η` (within `tol`) for which the condition provably holds.
///
/// `ln R` is convex in `η` with zero slope at `η = 0`, hence increasing on
/// `[0, 1]`, so bisection applies. Undecided midpoints count as failures,
/// which keeps the returned `η` rigorous.
pub fn best_eta(alpha: &Rational, r: usize, tol: &Rational) -> Result<BestEta, ExpanderError> {
    if *tol <= int(0) {
        return Err(ExpanderError::Tolerance);
    }
    let lhs = ln_lhs(alpha, r)?;
    let holds = |eta: &Rational| -> Result<bool, ExpanderError> { Ok(lhs.certainly_lt(&ln_rhs(alpha, eta)?)) };
    let (mut lo, mut hi) = (int(0), int(1));
    if !holds(&hi)? {
        return Err(ExpanderError::Unsatisfiable);
    }
    if holds(&lo)? {
        hi = lo.clone();
    }
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / int(2);
        if holds(&mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let expansion = (int(1) - &hi) * int(r as i64) * (int(1) - alpha);
    Ok(BestEta { eta: hi, eta_below: lo, expansion })
}

/// One table row: for `α ∈ [alpha_lo, alpha_hi]` the expansion is at least `bound`.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub alpha_lo: Rational,
    pub alpha_hi: Rational,
    pub bound: Rational,
}

fn row(lo: &str, hi: &str, b: &str) -> TableRow {
    let p = |s: &str| parse_rational(s).expect("literal");
    TableRow { alpha_lo: p(lo), alpha_hi: p(hi), bound: p(b) }
}

/// The published lower bounds on `i_α` for random 6-regular graphs. The last
/// row's interval is open at 0.
pub fn published_table() -> Vec<TableRow> {
    [
        ("0.481", "0.5", "1.0437"),
        ("0.461", "0.481", "1.0836"),
        ("0.44", "0.461", "1.126"),
        ("0.42", "0.44", "1.171"),
        ("0.4", "0.42", "1.215"),
        ("0.375", "0.4", "1.26"),
        ("0.345", "0.375", "1.317"),
        ("0.31", "0.345", "1.389"),
        ("0.266", "0.31", "1.4756"),
        ("0.21", "0.266", "1.591"),
        ("0.13", "0.21", "1.753"),
        ("0", "0.13", "2.033"),
    ]
    .into_iter()
    .map(|(a, b, c)| row(a, b, c))
    .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub alpha_lo: String,
    pub alpha_hi: String,
    pub published_bound: String,
    /// Guaranteed expansion at `alpha_hi`, exact.
    pub computed: String,
    pub computed_approx: f64,
    pub eta: String,
    /// Computed expansion is at least the bound.
    pub bound_ok: bool,
    /// The bound is at least `2.01 (1 − alpha_lo)`.
    pub target_ok: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub r: usize,
    pub rows: Vec<RowReport>,
    pub all_pass: bool,
}

pub const TABLE_TOL_BITS: u32 = 32;

/// Checks each row at its upper endpoint; expansion only grows as `α` shrinks.
pub fn verify_rows(rows: &[TableRow], r: usize) -> Result<TableReport, ExpanderError> {
    let tol = ratio(1, 1i64 << TABLE_TOL_BITS);
    let reports = rows
        .par_iter()
        .map(|row| {
            let best = best_eta(&row.alpha_hi, r, &tol)?;
            let bound_ok = best.expansion >= row.bound;
            let target_ok = row.bound >= ratio(201, 100) * (int(1) - &row.alpha_lo);
            Ok(RowReport {
                alpha_lo: format_rational(&row.alpha_lo),
                alpha_hi: format_rational(&row.alpha_hi),
                published_bound: format_rational(&row.bound),
                computed: format_rational(&best.expansion),
                computed_approx: to_f64(&best.expansion),
                eta: format_rational(&best.eta),
                bound_ok,
                target_ok,
                pass: bound_ok && target_ok,
            })
        })
        .collect::<Result<Vec<_>, ExpanderError>>()?;
    let all_pass = reports.iter().all(|r| r.pass);
    Ok(TableReport { r, rows: reports, all_pass })
}

pub fn verify_table(r: usize) -> Result<TableReport, ExpanderError> {
    verify_rows(&published_table(), r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lhs_closed_forms() {
        let v = condition_lhs(&ratio(1, 2), 6).unwrap();
        assert!((v.mid_f64() - 2f64.powf(1.0 / 6.0)).abs() < 1e-12);
        assert!((v.mid_f64() - 1.12246).abs() < 1e-5);
        for r in [3, 4, 10] {
            let v = condition_lhs(&ratio(1, 2), r).unwrap();
            assert!((v.mid_f64() - 2f64.powf(1.0 / r as f64)).abs() < 1e-12);
        }
        let tiny = condition_lhs(&ratio(1, 1_000_000_000_000), 6).unwrap();
        assert!((tiny.mid_f64() - 1.0).abs() < 1e-10);
        assert!(condition_lhs(&ratio(3, 4), 6).is_err());
        assert!(condition_lhs(&ratio(1, 2), 2).is_err());
    }

    #[test]
    fn rhs_closed_forms() {
        assert!((condition_rhs(&ratio(1, 3), &int(0)).unwrap().mid_f64() - 1.0).abs() < 1e-15);
        for eta in [ratio(1, 5), ratio(1, 2), ratio(9, 10)] {
            let e = to_f64(&eta);
            let want = (1.0 - e).powf((1.0 - e) / 4.0) * (1.0 + e).powf((1.0 + e) / 4.0);
            let got = condition_rhs(&ratio(1, 2), &eta).unwrap().mid_f64();
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        // η = 1 uses 0^0 = 1 in the first factor.
        assert!(condition_rhs(&ratio(1, 2), &int(1)).is_ok());
        assert!(condition_rhs(&ratio(1, 2), &ratio(3, 2)).is_err());
    }

    #[test]
    fn best_eta_rows() {
        let tol = ratio(1, 1 << 32);
        let half = best_eta(&ratio(1, 2), 6, &tol).unwrap();
        assert!(half.expansion >= parse_rational("1.0437").unwrap());
        assert!(ConditionValue::evaluate(&ratio(1, 2), 6, &half.eta).unwrap().is_satisfied());
        assert!(!ConditionValue::evaluate(&ratio(1, 2), 6, &half.eta_below).unwrap().is_satisfied());
        let low = best_eta(&parse_rational("0.13").unwrap(), 6, &tol).unwrap();
        assert!(low.expansion >= parse_rational("2.033").unwrap());
        let mid = best_eta(&parse_rational("0.3").unwrap(), 6, &tol).unwrap();
        assert!(mid.expansion >= half.expansion);
        let m = ConditionValue::evaluate(&ratio(1, 2), 6, &half.eta).unwrap().margin();
        assert!(m.lo() > int(0));
    }

    #[test]
    fn table_and_negative_control() {
        let rep = verify_table(6).unwrap();
        assert_eq!(rep.rows.len(), 12);
        assert!(rep.all_pass, "{rep:?}");
        let bad = verify_rows(&[row("0.42", "0.44", "1.3")], 6).unwrap();
        assert!(!bad.all_pass);
        assert!(!bad.rows[0].bound_ok);
    }
}
