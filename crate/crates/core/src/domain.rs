//! Parameter intervals, validation grids and the grid surrogates used for
//! "nonzero everywhere" preconditions.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::jet::Dual;

/// Points per interval used for every "nonzero on the interval" check.
pub const VALIDATION_GRID: usize = 512;

/// Values with magnitude at or below this count as zero.
pub const TOL_DEGENERATE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("invalid interval [{min}, {max}]")]
pub struct IntervalError {
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    min: f64,
    max: f64,
}

impl Interval {
    pub fn new(min: f64, max: f64) -> Result<Self, IntervalError> {
        if min.is_finite() && max.is_finite() && min < max {
            Ok(Self { min, max })
        } else {
            Err(IntervalError { min, max })
        }
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn len(&self) -> f64 {
        self.max - self.min
    }

    pub fn contains(&self, t: f64) -> bool {
        self.min <= t && t <= self.max
    }

    /// `n` equally spaced points including both endpoints (`n >= 2`).
    pub fn grid(&self, n: usize) -> Vec<f64> {
        assert!(n >= 2, "a grid needs at least two points");
        let step = self.len() / (n - 1) as f64;
        (0..n)
            .map(|k| {
                if k == n - 1 {
                    self.max
                } else {
                    self.min + step * k as f64
                }
            })
            .collect()
    }

    /// `n` cell midpoints, staying away from the endpoints.
    pub fn interior_grid(&self, n: usize) -> Vec<f64> {
        let step = self.len() / n as f64;
        (0..n).map(|k| self.min + step * (k as f64 + 0.5)).collect()
    }

    /// Default base parameter: 0 when it lies in the interval, else the left end.
    pub fn default_origin(&self) -> f64 {
        if self.contains(0.0) {
            0.0
        } else {
            self.min
        }
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = IntervalError;
    fn try_from(v: [f64; 2]) -> Result<Self, Self::Error> {
        Interval::new(v[0], v[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.min, i.max]
    }
}

/// A rectangle `I₁ × I₂` in the `(t1, t2)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub t1: Interval,
    pub t2: Interval,
}

impl Rect {
    pub fn new(t1: Interval, t2: Interval) -> Self {
        Self { t1, t2 }
    }

    pub fn square(min: f64, max: f64) -> Result<Self, IntervalError> {
        let i = Interval::new(min, max)?;
        Ok(Self::new(i, i))
    }

    pub fn contains(&self, t1: f64, t2: f64) -> bool {
        self.t1.contains(t1) && self.t2.contains(t2)
    }

    /// Row-major interior grid (`t1` outer).
    pub fn interior_grid(&self, n: usize) -> Vec<(f64, f64)> {
        let a = self.t1.interior_grid(n);
        let b = self.t2.interior_grid(n);
        a.iter()
            .flat_map(|&x| b.iter().map(move |&y| (x, y)))
            .collect()
    }
}

const REFINE_STEPS: usize = 200;

fn bisect<E>(
    mut value: impl FnMut(f64) -> Result<f64, E>,
    mut lo: f64,
    mut hi: f64,
) -> Result<f64, E> {
    let mut v_lo = value(lo)?;
    for _ in 0..REFINE_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = value(mid)?;
        if v == 0.0 {
            return Ok(mid);
        }
        if (v > 0.0) == (v_lo > 0.0) {
            lo = mid;
            v_lo = v;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Looks for a point of `interval` where `q` vanishes.
///
/// Checks the validation grid first, then refines between neighbours: a sign
/// change of `q` is located by bisection, and a sign change of `q'` with `q`
/// heading towards zero is bisected to the local minimum of `|q|`, which is
/// then tested against `tol`. Returns the first witness found.
pub fn find_zero<E>(
    mut q: impl FnMut(f64) -> Result<Dual, E>,
    interval: &Interval,
    tol: f64,
) -> Result<Option<f64>, E> {
    let ts = interval.grid(VALIDATION_GRID);
    let mut values = Vec::with_capacity(ts.len());
    for &t in &ts {
        let v = q(t)?;
        if v.v.abs() <= tol || !v.v.is_finite() {
            return Ok(Some(t));
        }
        values.push(v);
    }
    for k in 0..ts.len() - 1 {
        let (a, b) = (values[k], values[k + 1]);
        if (a.v > 0.0) != (b.v > 0.0) {
            let t = bisect(|t| q(t).map(|d| d.v), ts[k], ts[k + 1])?;
            return Ok(Some(t));
        }
        // |q| decreasing at the left neighbour and increasing at the right one
        let falling = a.d * a.v.signum() < 0.0;
        let rising = b.d * b.v.signum() > 0.0;
        if falling && rising {
            let c = bisect(|t| q(t).map(|d| d.d), ts[k], ts[k + 1])?;
            if q(c)?.v.abs() <= tol {
                return Ok(Some(c));
            }
        }
    }
    Ok(None)
}

/// Checks `a(t1) ≠ b(t2)` over the product of two sampled grids. When the
/// sampled ranges touch or overlap within `tol`, returns the index pair with
/// the smallest difference as a witness.
pub fn find_crossing(a: &[f64], b: &[f64], tol: f64) -> Option<(usize, usize)> {
    let (a_min, a_max) = min_max(a);
    let (b_min, b_max) = min_max(b);
    if a_min - b_max > tol || b_min - a_max > tol {
        return None;
    }
    let mut best = (0, 0);
    let mut best_v = f64::INFINITY;
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            let d = (x - y).abs();
            if d < best_v {
                best_v = d;
                best = (i, j);
            }
        }
    }
    Some(best)
}

fn min_max(v: &[f64]) -> (f64, f64) {
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(f: impl Fn(f64) -> (f64, f64)) -> impl FnMut(f64) -> Result<Dual, ()> {
        move |t| {
            let (v, d) = f(t);
            Ok(Dual::new(v, d))
        }
    }

    #[test]
    fn grids_hit_endpoints() {
        let i = Interval::new(-1.0, 2.0).unwrap();
        let g = i.grid(4);
        assert_eq!(g, vec![-1.0, 0.0, 1.0, 2.0]);
        assert_eq!(i.interior_grid(3), vec![-0.5, 0.5, 1.5]);
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(0.0, f64::NAN).is_err());
        assert_eq!(i.default_origin(), 0.0);
        assert_eq!(Interval::new(0.2, 2.0).unwrap().default_origin(), 0.2);
    }

    #[test]
    fn tangential_zero_between_grid_points_is_found() {
        let i = Interval::new(-1.0, 1.0).unwrap();
        // 12 t² never reaches 1e-9 on the 512-point grid
        let w = find_zero(q(|t| (12.0 * t * t, 24.0 * t)), &i, TOL_DEGENERATE).unwrap();
        assert!(w.unwrap().abs() < 1e-6);
        let w = find_zero(q(|t| (t - 0.3, 1.0)), &i, TOL_DEGENERATE).unwrap();
        assert!((w.unwrap() - 0.3).abs() < 1e-12);
        let none = find_zero(q(|t| (t * t + 0.1, 2.0 * t)), &i, TOL_DEGENERATE).unwrap();
        assert_eq!(none, None);
    }

    #[test]
    fn product_grid_crossings() {
        assert_eq!(find_crossing(&[1.0, 2.0], &[-1.0, 0.5], 1e-9), None);
        assert_eq!(find_crossing(&[-3.0, -2.0], &[-1.0, 0.5], 1e-9), None);
        assert_eq!(find_crossing(&[0.0, 1.0], &[0.5, 2.0], 1e-9), Some((0, 0)));
        assert_eq!(find_crossing(&[0.0, 1.0], &[0.9, 2.0], 1e-9), Some((1, 0)));
    }

    #[test]
    fn interval_serde_is_a_pair() {
        let i: Interval = serde_json::from_str("[0.5, 2]").unwrap();
        assert_eq!((i.min(), i.max()), (0.5, 2.0));
        assert!(serde_json::from_str::<Interval>("[2, 0.5]").is_err());
        assert_eq!(serde_json::to_string(&i).unwrap(), "[0.5,2.0]");
    }
}
