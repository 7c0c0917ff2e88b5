//! One-dimensional maximization.

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Result of a bracketed scalar maximization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub x: f64,
    pub value: f64,
    pub evaluations: usize,
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `rel_tol` relative to its midpoint.
/// Any evaluation error aborts the search.
pub fn golden_section_maximize<F>(mut f: F, lo: f64, hi: f64, rel_tol: f64) -> Result<Maximum>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain(format!("invalid bracket [{lo}, {hi}]")));
    }
    if !(rel_tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {rel_tol} must be > 0")));
    }
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut evaluations = 2;

    let floor = f64::EPSILON * (hi - lo);
    while (b - a) > rel_tol * (0.5 * (a + b)).abs().max(floor) {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
        evaluations += 1;
        if evaluations > 10_000 {
            break;
        }
    }

    let (x, value) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    Ok(Maximum {
        x,
        value,
        evaluations,
    })
}
