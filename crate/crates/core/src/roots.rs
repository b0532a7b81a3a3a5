//! Safeguarded Newton iteration for monotone scalar equations.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum RootError {
    #[error("no sign change over the bracket (f(lo) = {f_lo}, f(hi) = {f_hi})")]
    NotBracketed { f_lo: f64, f_hi: f64 },
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
}

const MAX_ITERATIONS: usize = 200;

/// Solves `f(t) = 0` for `t` in `[lo, hi]` given values and derivatives of a
/// monotone `f`.
///
/// Newton steps that leave the current bracket are replaced by bisection.
/// Converges when `|f(t)| <= tol` or the bracket collapses to floating point
/// resolution.
pub fn solve_monotone<F, E>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64, E>
where
    F: FnMut(f64) -> Result<(f64, f64), E>,
    E: From<RootError>,
{
    let (mut a, mut b) = (lo, hi);
    let (fa, _) = f(a)?;
    let (fb, _) = f(b)?;
    if fa.abs() <= tol {
        return Ok(a);
    }
    if fb.abs() <= tol {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(RootError::NotBracketed { f_lo: fa, f_hi: fb }.into());
    }
    let rising = fb > fa;
    // start from the secant estimate
    let mut t = a - fa * (b - a) / (fb - fa);
    let mut residual = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        if !(t > a && t < b) {
            t = 0.5 * (a + b);
        }
        let (ft, dft) = f(t)?;
        residual = ft.abs();
        if residual <= tol {
            return Ok(t);
        }
        if (ft > 0.0) == rising {
            b = t;
        } else {
            a = t;
        }
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            return Ok(t);
        }
        let newton = t - ft / dft;
        t = if dft != 0.0 && newton > a && newton < b {
            newton
        } else {
            mid
        };
    }
    Err(RootError::NoConvergence {
        iterations: MAX_ITERATIONS,
        residual,
    }
    .into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(f: impl Fn(f64) -> (f64, f64), lo: f64, hi: f64) -> Result<f64, RootError> {
        solve_monotone(|t| Ok::<_, RootError>(f(t)), lo, hi, 1e-12)
    }

    #[test]
    fn finds_roots_of_monotone_functions() {
        let r = solve(|t| (t.sinh() - 2.0, t.cosh()), -5.0, 5.0).unwrap();
        assert!((r - 2.0f64.asinh()).abs() < 1e-12);
        let r = solve(|t| (-t * t * t - t + 1.0, -3.0 * t * t - 1.0), -3.0, 3.0).unwrap();
        assert!((-r * r * r - r + 1.0).abs() <= 1e-12);
    }

    #[test]
    fn falls_back_to_bisection_with_flat_derivative() {
        // derivative vanishes at 0; Newton alone would stall
        let r = solve(|t| (t * t * t - 1e-3, 3.0 * t * t), -1.0, 1.0).unwrap();
        assert!((r - 0.1).abs() < 1e-9);
    }

    #[test]
    fn rejects_targets_outside_the_bracket() {
        assert!(matches!(
            solve(|t| (t + 10.0, 1.0), 0.0, 1.0),
            Err(RootError::NotBracketed { .. })
        ));
    }
}
