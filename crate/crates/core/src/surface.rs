//! Minimal Lorentz surfaces `x(t1, t2) = (α1(t1) + α2(t2)) / 2` built from a
//! pair of null curves, their first fundamental form, curvatures and type.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{
    canonical_r31, canonical_r42, weier_point_r31, weier_point_r42, CurveError, NullCurve,
    WeierPointR31, WeierPointR42,
};
use crate::domain::{find_crossing, Interval, Rect, TOL_DEGENERATE, VALIDATION_GRID};
use crate::expr::Expression;
use crate::jet::Dual;
use crate::space::{dot, LVec, Motion};

/// Step of the finite-difference curvature oracle.
pub const ORACLE_STEP: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("F vanishes or changes sign near (t1, t2) = ({t1}, {t2})")]
    DegenerateMetric { t1: f64, t2: f64 },
    #[error("{quantity} vanishes near (t1, t2) = ({t1}, {t2})")]
    CrossCondition {
        quantity: &'static str,
        t1: f64,
        t2: f64,
    },
    #[error("canonical curvature formulas need F < 0, found F = {f} at ({t1}, {t2})")]
    PositiveF { f: f64, t1: f64, t2: f64 },
    #[error("third type data must have g1'h1' > 0 and g2'h2' < 0")]
    ThirdTypeOrder,
    #[error("type by α''² signs disagrees with the sign of K² - κ² at ({t1}, {t2})")]
    TypeMismatch { t1: f64, t2: f64 },
    #[error("F changes sign inside the finite-difference stencil at ({t1}, {t2})")]
    StencilSignChange { t1: f64, t2: f64 },
    #[error("{0}")]
    Denominator(&'static str),
}

pub type Result<T, E = SurfaceError> = std::result::Result<T, E>;

/// Gauss curvature `K` and normal curvature `κ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvaturePair {
    #[serde(rename = "K")]
    pub k: f64,
    pub kappa: f64,
}

impl CurvaturePair {
    pub fn new(k: f64, kappa: f64) -> Self {
        Self { k, kappa }
    }

    /// Sign of `K² - κ²`.
    pub fn discriminant(&self) -> f64 {
        self.k * self.k - self.kappa * self.kappa
    }
}

/// Classification by the signs of `α1''²` and `α2''²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceType {
    First,
    Second,
    Third,
}

impl SurfaceType {
    pub fn from_signs(s1: f64, s2: f64) -> Self {
        match (s1 > 0.0, s2 > 0.0) {
            (true, true) => SurfaceType::First,
            (false, false) => SurfaceType::Second,
            _ => SurfaceType::Third,
        }
    }

    /// Whether `K² - κ²` has the sign this type requires.
    pub fn agrees_with(self, c: &CurvaturePair) -> bool {
        match self {
            SurfaceType::First | SurfaceType::Second => c.discriminant() > 0.0,
            SurfaceType::Third => c.discriminant() < 0.0,
        }
    }
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurfaceType::First => "first",
            SurfaceType::Second => "second",
            SurfaceType::Third => "third",
        })
    }
}

/// A minimal Lorentz surface given by a pair of null curves.
#[derive(Debug, Clone)]
pub struct MinimalSurface<const N: usize> {
    alpha1: NullCurve<N>,
    alpha2: NullCurve<N>,
    domain: Rect,
    f_sign: f64,
}

pub type SurfaceR31 = MinimalSurface<3>;
pub type SurfaceR42 = MinimalSurface<4>;

/// Builds the surface on the rectangle of the curves' intervals, checking
/// that `F` keeps one sign on the product validation grid.
pub fn build_surface<const N: usize>(
    a1: &NullCurve<N>,
    a2: &NullCurve<N>,
) -> Result<MinimalSurface<N>> {
    let domain = Rect::new(a1.interval(), a2.interval());
    let g1 = domain.t1.grid(VALIDATION_GRID);
    let g2 = domain.t2.grid(VALIDATION_GRID);
    let v1 = g1
        .iter()
        .map(|&t| a1.tangent(t))
        .collect::<Result<Vec<_>, _>>()?;
    let v2 = g2
        .iter()
        .map(|&t| a2.tangent(t))
        .collect::<Result<Vec<_>, _>>()?;
    let f_sign = dot(&v1[0], &v2[0]).signum();
    let mut worst: Option<(f64, usize, usize)> = None;
    for (i, x) in v1.iter().enumerate() {
        for (j, y) in v2.iter().enumerate() {
            let f = 0.25 * dot(x, y);
            let bad = f.abs() <= TOL_DEGENERATE || f.signum() != f_sign;
            if bad && worst.is_none_or(|(w, _, _)| f.abs() < w) {
                worst = Some((f.abs(), i, j));
            }
        }
    }
    if let Some((_, i, j)) = worst {
        // the closest-to-zero offending sample marks the degenerate locus
        let (i, j) = nearest_zero(&v1, &v2, i, j);
        return Err(SurfaceError::DegenerateMetric {
            t1: g1[i],
            t2: g2[j],
        });
    }
    Ok(MinimalSurface {
        alpha1: a1.clone(),
        alpha2: a2.clone(),
        domain,
        f_sign,
    })
}

fn nearest_zero<const N: usize>(
    v1: &[LVec<N>],
    v2: &[LVec<N>],
    i: usize,
    j: usize,
) -> (usize, usize) {
    let mut best = (dot(&v1[i], &v2[j]).abs(), i, j);
    for (a, x) in v1.iter().enumerate() {
        for (b, y) in v2.iter().enumerate() {
            let f = dot(x, y).abs();
            if f < best.0 {
                best = (f, a, b);
            }
        }
    }
    (best.1, best.2)
}

impl<const N: usize> MinimalSurface<N> {
    pub fn alpha1(&self) -> &NullCurve<N> {
        &self.alpha1
    }

    pub fn alpha2(&self) -> &NullCurve<N> {
        &self.alpha2
    }

    pub fn domain(&self) -> Rect {
        self.domain
    }

    /// The constant sign of `F` on the domain.
    pub fn f_sign(&self) -> f64 {
        self.f_sign
    }

    pub fn point(&self, t1: f64, t2: f64) -> Result<LVec<N>> {
        Ok(0.5 * (self.alpha1.position(t1)? + self.alpha2.position(t2)?))
    }

    /// Points on a tensor grid, row-major with `t1` outer.
    pub fn points(&self, t1s: &[f64], t2s: &[f64]) -> Result<Vec<LVec<N>>> {
        let p1 = self.alpha1.positions(t1s)?;
        let p2 = self.alpha2.positions(t2s)?;
        Ok(p1
            .iter()
            .flat_map(|a| p2.iter().map(move |b| 0.5 * (a + b)))
            .collect())
    }

    /// `(E, F, G)` with `x_{t1} = α1'/2`, `x_{t2} = α2'/2`.
    pub fn first_form(&self, t1: f64, t2: f64) -> Result<(f64, f64, f64)> {
        let x1 = 0.5 * self.alpha1.tangent(t1)?;
        let x2 = 0.5 * self.alpha2.tangent(t2)?;
        Ok((dot(&x1, &x1), dot(&x1, &x2), dot(&x2, &x2)))
    }

    /// `F = α1'(t1)·α2'(t2) / 4`.
    pub fn first_form_f(&self, t1: f64, t2: f64) -> Result<f64> {
        let a = self.alpha1.tangent(t1)?;
        let b = self.alpha2.tangent(t2)?;
        Ok(0.25 * dot(&a, &b))
    }

    /// `y = (α1 - α2) / 2`, built from `(α1, -α2)`.
    pub fn conjugate(&self) -> MinimalSurface<N> {
        MinimalSurface {
            alpha1: self.alpha1.clone(),
            alpha2: self.alpha2.apply_motion(&Motion::point_reflection()),
            domain: self.domain,
            f_sign: -self.f_sign,
        }
    }

    /// Applies the same motion to both curves.
    pub fn apply_motion(&self, m: &Motion<N>) -> MinimalSurface<N> {
        MinimalSurface {
            alpha1: self.alpha1.apply_motion(m),
            alpha2: self.alpha2.apply_motion(m),
            domain: self.domain,
            f_sign: self.f_sign * m.metric_factor(),
        }
    }

    /// Gauss curvature of the metric `2F dt1 dt2`, `-(1/F) ∂₁∂₂ ln|F|`, by
    /// central differences with one Richardson step.
    pub fn gauss_curvature_oracle(&self, t1: f64, t2: f64) -> Result<f64> {
        let h = ORACLE_STEP;
        let offsets = [-2.0, -1.0, 0.0, 1.0, 2.0];
        let a: Vec<_> = offsets
            .iter()
            .map(|k| self.alpha1.tangent(t1 + k * h))
            .collect::<Result<_, _>>()?;
        let b: Vec<_> = offsets
            .iter()
            .map(|k| self.alpha2.tangent(t2 + k * h))
            .collect::<Result<_, _>>()?;
        let f = |i: usize, j: usize| 0.25 * dot(&a[i], &b[j]);
        let f0 = f(2, 2);
        let mut ln = [[0.0; 5]; 5];
        for (i, row) in ln.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                let fij = f(i, j);
                if fij == 0.0 || fij.signum() != f0.signum() {
                    return Err(SurfaceError::StencilSignChange { t1, t2 });
                }
                *v = fij.abs().ln();
            }
        }
        let mixed = |k: usize, step: f64| {
            (ln[2 + k][2 + k] - ln[2 + k][2 - k] - ln[2 - k][2 + k] + ln[2 - k][2 - k])
                / (4.0 * step * step)
        };
        let d = (4.0 * mixed(1, h) - mixed(2, 2.0 * h)) / 3.0;
        Ok(-d / f0)
    }
}

impl MinimalSurface<4> {
    /// `K`, `κ` from Weierstrass data re-extracted from the two curves.
    pub fn curvatures(&self, t1: f64, t2: f64) -> Result<CurvaturePair> {
        curvatures_r42(
            &weier_point_r42(&self.alpha1, t1)?,
            &weier_point_r42(&self.alpha2, t2)?,
        )
    }

    /// Type from the signs of `α1''²` and `α2''²`.
    pub fn surface_type(&self) -> Result<SurfaceType> {
        Ok(SurfaceType::from_signs(
            self.alpha1.accel_sign()?,
            self.alpha2.accel_sign()?,
        ))
    }
}

impl MinimalSurface<3> {
    pub fn curvatures(&self, t1: f64, t2: f64) -> Result<CurvaturePair> {
        curvature_r31(
            &weier_point_r31(&self.alpha1, t1)?,
            &weier_point_r31(&self.alpha2, t2)?,
        )
    }

    /// The same surface in the hyperplane `x₃ = 0` of R⁴₂.
    pub fn embed(&self) -> MinimalSurface<4> {
        MinimalSurface {
            alpha1: self.alpha1.embed(),
            alpha2: self.alpha2.embed(),
            domain: self.domain,
            f_sign: self.f_sign,
        }
    }
}

fn nonzero(v: f64, what: &'static str) -> Result<f64> {
    if v == 0.0 || !v.is_finite() {
        Err(SurfaceError::Denominator(what))
    } else {
        Ok(v)
    }
}

/// `K, κ = 2/(f1 f2 (g1-g2)(h1-h2)) · (g1'g2'/(g1-g2)² ± h1'h2'/(h1-h2)²)`.
pub fn curvatures_r42(p1: &WeierPointR42, p2: &WeierPointR42) -> Result<CurvaturePair> {
    let dg = nonzero(p1.g.v - p2.g.v, "g1(t1) = g2(t2)")?;
    let dh = nonzero(p1.h.v - p2.h.v, "h1(t1) = h2(t2)")?;
    let ff = nonzero(p1.f.v * p2.f.v, "f1 f2 = 0")?;
    let pre = 2.0 / (ff * dg * dh);
    let a = p1.g.d * p2.g.d / (dg * dg);
    let b = p1.h.d * p2.h.d / (dh * dh);
    Ok(CurvaturePair::new(pre * (a + b), pre * (a - b)))
}

/// `K = 4 g1'g2' / (f1 f2 (g1-g2)⁴)`, `κ = 0`.
pub fn curvature_r31(p1: &WeierPointR31, p2: &WeierPointR31) -> Result<CurvaturePair> {
    let dg = nonzero(p1.g.v - p2.g.v, "g1(t1) = g2(t2)")?;
    let ff = nonzero(p1.f.v * p2.f.v, "f1 f2 = 0")?;
    Ok(CurvaturePair::new(
        4.0 * p1.g.d * p2.g.d / (ff * dg.powi(4)),
        0.0,
    ))
}

fn g_values(e: &Expression, ts: &[f64]) -> Result<Vec<f64>> {
    ts.iter()
        .map(|&t| e.eval(t).map_err(|d| SurfaceError::Curve(d.into())))
        .collect()
}

fn check_cross(
    quantity: &'static str,
    a: &Expression,
    b: &Expression,
    domain: &Rect,
) -> Result<()> {
    let t1 = domain.t1.grid(VALIDATION_GRID);
    let t2 = domain.t2.grid(VALIDATION_GRID);
    match find_crossing(&g_values(a, &t1)?, &g_values(b, &t2)?, TOL_DEGENERATE) {
        Some((i, j)) => Err(SurfaceError::CrossCondition {
            quantity,
            t1: t1[i],
            t2: t2[j],
        }),
        None => Ok(()),
    }
}

/// Canonical data `(g1, h1, g2, h2, ω1, ω2)` of a surface in R⁴₂.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalSurfaceDataR42 {
    pub g1: Expression,
    pub h1: Expression,
    pub g2: Expression,
    pub h2: Expression,
    pub omega1: f64,
    pub omega2: f64,
    pub domain: Rect,
}

impl CanonicalSurfaceDataR42 {
    /// Validates `g_i'h_i' ≠ 0`, `g1 ≠ g2`, `h1 ≠ h2` and the third type order.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        g1: Expression,
        h1: Expression,
        g2: Expression,
        h2: Expression,
        omega1: f64,
        omega2: f64,
        domain: Rect,
    ) -> Result<Self> {
        let data = Self {
            g1,
            h1,
            g2,
            h2,
            omega1,
            omega2,
            domain,
        };
        data.validate()?;
        Ok(data)
    }

    pub fn validate(&self) -> Result<()> {
        let (c1, c2) = self.curves()?;
        let s1 = c1.accel_sign()?;
        let s2 = c2.accel_sign()?;
        if s1 < 0.0 && s2 > 0.0 {
            return Err(SurfaceError::ThirdTypeOrder);
        }
        check_cross("g1(t1) - g2(t2)", &self.g1, &self.g2, &self.domain)?;
        check_cross("h1(t1) - h2(t2)", &self.h1, &self.h2, &self.domain)?;
        Ok(())
    }

    pub fn curves(&self) -> Result<(NullCurve<4>, NullCurve<4>)> {
        Ok((
            canonical_r42(&self.g1, &self.h1, self.omega1, self.domain.t1)?,
            canonical_r42(&self.g2, &self.h2, self.omega2, self.domain.t2)?,
        ))
    }

    pub fn surface(&self) -> Result<MinimalSurface<4>> {
        let (a, b) = self.curves()?;
        build_surface(&a, &b)
    }

    /// `(g_i, h_i)` values and derivatives at `(t1, t2)`.
    fn jets(&self, t1: f64, t2: f64) -> Result<[Dual; 4]> {
        let v = |e: &Expression, t: f64| -> Result<Dual> {
            let j = e.eval_jet2(t).map_err(CurveError::from)?;
            Ok(Dual::new(j.v, j.d1))
        };
        Ok([
            v(&self.g1, t1)?,
            v(&self.h1, t1)?,
            v(&self.g2, t2)?,
            v(&self.h2, t2)?,
        ])
    }

    /// `F = -ω1ω2 (g1-g2)(h1-h2) / (8√|g1'h1'g2'h2'|)`.
    pub fn first_form_f(&self, t1: f64, t2: f64) -> Result<f64> {
        let [g1, h1, g2, h2] = self.jets(t1, t2)?;
        let root = (g1.d * h1.d * g2.d * h2.d).abs().sqrt();
        Ok(-self.omega1 * self.omega2 * (g1.v - g2.v) * (h1.v - h2.v) / (8.0 * root))
    }

    /// Canonical curvature formulas; requires `F < 0` at the point.
    pub fn curvatures(&self, t1: f64, t2: f64) -> Result<CurvaturePair> {
        let f = self.first_form_f(t1, t2)?;
        if f >= 0.0 {
            return Err(SurfaceError::PositiveF { f, t1, t2 });
        }
        let [g1, h1, g2, h2] = self.jets(t1, t2)?;
        let dg = nonzero(g1.v - g2.v, "g1(t1) = g2(t2)")?;
        let dh = nonzero(h1.v - h2.v, "h1(t1) = h2(t2)")?;
        let pre = 8.0 * (g1.d * h1.d * g2.d * h2.d).abs().sqrt() / (dg * dh).abs();
        let a = g1.d * g2.d / (dg * dg);
        let b = h1.d * h2.d / (dh * dh);
        Ok(CurvaturePair::new(pre * (a + b), pre * (a - b)))
    }

    /// General formulas with `f_i = ω_i / (2√|g_i'h_i'|)` (no sign precondition).
    pub fn curvatures_general(&self, t1: f64, t2: f64) -> Result<CurvaturePair> {
        let (p1, p2) = self.weier_points(t1, t2)?;
        curvatures_r42(&p1, &p2)
    }

    pub fn weier_points(&self, t1: f64, t2: f64) -> Result<(WeierPointR42, WeierPointR42)> {
        let [g1, h1, g2, h2] = self.jets(t1, t2)?;
        let f = |g: Dual, h: Dual, w: f64, t: f64| WeierPointR42 {
            t,
            f: Dual::constant(0.5 * w / (g.d * h.d).abs().sqrt()),
            g,
            h,
        };
        Ok((f(g1, h1, self.omega1, t1), f(g2, h2, self.omega2, t2)))
    }

    /// Signs of `g1'h1'` and `g2'h2'`.
    pub fn factor_signs(&self) -> Result<(f64, f64)> {
        let (c1, c2) = self.curves()?;
        Ok((c1.accel_sign()?, c2.accel_sign()?))
    }

    /// Type from the factor signs, cross-checked with the sign of `K² - κ²`
    /// on a 5×5 interior grid.
    pub fn classify(&self) -> Result<SurfaceType> {
        let (s1, s2) = self.factor_signs()?;
        let ty = SurfaceType::from_signs(s1, s2);
        for (t1, t2) in self.domain.interior_grid(5) {
            if !ty.agrees_with(&self.curvatures_general(t1, t2)?) {
                return Err(SurfaceError::TypeMismatch { t1, t2 });
            }
        }
        Ok(ty)
    }
}

/// Type of canonical R⁴₂ data.
pub fn classify_type(data: &CanonicalSurfaceDataR42) -> Result<SurfaceType> {
    data.classify()
}

/// Canonical data `(g1, g2, ω1, ω2)` of a surface in R³₁.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalSurfaceDataR31 {
    pub g1: Expression,
    pub g2: Expression,
    pub omega1: f64,
    pub omega2: f64,
    pub domain: Rect,
}

impl CanonicalSurfaceDataR31 {
    pub fn new(
        g1: Expression,
        g2: Expression,
        omega1: f64,
        omega2: f64,
        domain: Rect,
    ) -> Result<Self> {
        let data = Self {
            g1,
            g2,
            omega1,
            omega2,
            domain,
        };
        data.validate()?;
        Ok(data)
    }

    pub fn validate(&self) -> Result<()> {
        self.curves()?;
        check_cross("g1(t1) - g2(t2)", &self.g1, &self.g2, &self.domain)
    }

    pub fn curves(&self) -> Result<(NullCurve<3>, NullCurve<3>)> {
        Ok((
            canonical_r31(&self.g1, self.omega1, self.domain.t1)?,
            canonical_r31(&self.g2, self.omega2, self.domain.t2)?,
        ))
    }

    pub fn surface(&self) -> Result<MinimalSurface<3>> {
        let (a, b) = self.curves()?;
        build_surface(&a, &b)
    }

    /// `F = -ω1ω2 (g1-g2)² / (8|g1'g2'|)`.
    pub fn first_form_f(&self, t1: f64, t2: f64) -> Result<f64> {
        let (g1, g2) = (self.g1.eval_jet2(t1), self.g2.eval_jet2(t2));
        let (g1, g2) = (g1.map_err(CurveError::from)?, g2.map_err(CurveError::from)?);
        Ok(-self.omega1 * self.omega2 * (g1.v - g2.v).powi(2) / (8.0 * (g1.d1 * g2.d1).abs()))
    }

    /// `K = 16 ω1ω2 |g1'g2'| g1'g2' / (g1-g2)⁴`, `κ = 0`.
    pub fn curvatures(&self, t1: f64, t2: f64) -> Result<CurvaturePair> {
        let (g1, g2) = (derivative_jet(&self.g1, t1)?, derivative_jet(&self.g2, t2)?);
        let dg = nonzero(g1.v - g2.v, "g1(t1) = g2(t2)")?;
        let p = g1.d * g2.d;
        Ok(CurvaturePair::new(
            16.0 * self.omega1 * self.omega2 * p.abs() * p / dg.powi(4),
            0.0,
        ))
    }

    /// General formula with `f_i = ω_i / (2|g_i'|)`.
    pub fn curvatures_general(&self, t1: f64, t2: f64) -> Result<CurvaturePair> {
        let (g1, g2) = (derivative_jet(&self.g1, t1)?, derivative_jet(&self.g2, t2)?);
        let p = |g: Dual, w: f64, t: f64| WeierPointR31 {
            t,
            f: Dual::constant(0.5 * w / g.d.abs()),
            g,
        };
        curvature_r31(&p(g1, self.omega1, t1), &p(g2, self.omega2, t2))
    }

    /// `√|K| = 4|g1'g2'| / (g1-g2)²`.
    pub fn sqrt_abs_k(&self, t1: f64, t2: f64) -> Result<f64> {
        let (g1, g2) = (derivative_jet(&self.g1, t1)?, derivative_jet(&self.g2, t2)?);
        Ok(4.0 * (g1.d * g2.d).abs() / (g1.v - g2.v).powi(2))
    }
}

/// Value and first derivative of an expression.
fn derivative_jet(e: &Expression, t: f64) -> Result<Dual> {
    let j = e.eval_jet2(t).map_err(CurveError::from)?;
    Ok(Dual::new(j.v, j.d1))
}

/// Convenience used by tests and examples: a rectangle from two pairs.
pub fn rect(t1: (f64, f64), t2: (f64, f64)) -> Result<Rect> {
    Ok(Rect::new(
        Interval::new(t1.0, t1.1).map_err(CurveError::from)?,
        Interval::new(t2.0, t2.1).map_err(CurveError::from)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{random_proper_motion_r42, reflection_r42, swap_anti_isometry_r42};

    fn e(s: &str) -> Expression {
        Expression::parse(s, "t").unwrap()
    }

    fn catenoid() -> CanonicalSurfaceDataR42 {
        CanonicalSurfaceDataR42::new(
            e("exp(t)"),
            e("exp(t)"),
            e("-exp(t)"),
            e("exp(-t)"),
            1.0,
            1.0,
            Rect::square(0.2, 2.0).unwrap(),
        )
        .unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn catenoid_values_at_one_one() {
        let d = catenoid();
        let s = d.surface().unwrap();
        let s1 = 1f64.sinh();
        let c1 = 1f64.cosh();
        assert!((s.first_form_f(1.0, 1.0).unwrap() + 0.5 * s1).abs() < 1e-14);
        assert!((s.first_form_f(1.0, 1.0).unwrap() + 0.58760).abs() < 1e-5);
        let k_example = -4.0 * c1 * c1 / (2.0 * s1).powi(3);
        let general = s.curvatures(1.0, 1.0).unwrap();
        assert!(rel(general.k, k_example) < 1e-12);
        assert!((general.k + 0.73351).abs() < 1e-5);
        assert!((general.kappa + 0.11741).abs() < 1e-5);
        let canonical = d.curvatures(1.0, 1.0).unwrap();
        assert!(rel(canonical.k, general.k) < 1e-12);
        assert!(rel(canonical.kappa, general.kappa) < 1e-12);
        let oracle = s.gauss_curvature_oracle(1.0, 1.0).unwrap();
        assert!((oracle - general.k).abs() < 1e-4 * (1.0 + general.k.abs()));
        assert_eq!(d.classify().unwrap(), SurfaceType::First);
    }

    #[test]
    fn catenoid_immersion_matches_closed_form() {
        let s = catenoid().surface().unwrap();
        let x = |t1: f64, t2: f64| {
            LVec::<4>::new(t1.sinh(), t1.cosh() - t2, t2.sinh(), t1 - t2.cosh()) * 0.5
        };
        let offset = s.point(0.2, 0.2).unwrap() - x(0.2, 0.2);
        assert_eq!(s.point(0.2, 0.2).unwrap(), LVec::<4>::zeros());
        for &(a, b) in &[(0.5, 1.5), (2.0, 0.3), (1.0, 1.0)] {
            assert!((s.point(a, b).unwrap() - x(a, b) - offset).amax() < 1e-9);
        }
    }

    #[test]
    fn domain_crossing_the_degenerate_line_is_rejected() {
        let bad = CanonicalSurfaceDataR42 {
            domain: Rect::square(-0.5, 1.0).unwrap(),
            ..catenoid()
        };
        // h1(t1) = h2(t2) on t1 + t2 = 0
        assert!(matches!(
            bad.validate(),
            Err(SurfaceError::CrossCondition { quantity: "h1(t1) - h2(t2)", t1, t2 }) if (t1 + t2).abs() < 0.01
        ));
        let (a, b) = bad.curves().unwrap();
        match build_surface(&a, &b) {
            Err(SurfaceError::DegenerateMetric { t1, t2 }) => assert!((t1 + t2).abs() < 0.01),
            other => panic!("expected degenerate metric, got {other:?}"),
        }
    }

    #[test]
    fn r31_catenoids() {
        let ma = CanonicalSurfaceDataR31::new(
            e("exp(t)"),
            e("-exp(t)"),
            1.0,
            1.0,
            Rect::square(-1.0, 2.0).unwrap(),
        )
        .unwrap();
        assert!((ma.curvatures(0.0, 0.0).unwrap().k + 1.0).abs() < 1e-14);
        let s = ma.surface().unwrap();
        assert!((s.first_form_f(1.0, 1.0).unwrap() + 0.5).abs() < 1e-14);
        let c = s.curvatures(1.0, 1.0).unwrap();
        assert!((c.k + 1.0).abs() < 1e-12);
        assert_eq!(c.kappa, 0.0);
        assert!((s.gauss_curvature_oracle(1.0, 1.0).unwrap() + 1.0).abs() < 1e-5);
        let mb = CanonicalSurfaceDataR31::new(
            e("exp(t)"),
            e("exp(-t)"),
            1.0,
            1.0,
            Rect::square(0.2, 2.0).unwrap(),
        )
        .unwrap();
        let kb = mb.curvatures(1.0, 1.0).unwrap().k;
        let e1 = 1f64.exp();
        assert!(rel(kb, -16.0 / (e1 - 1.0 / e1).powi(4)) < 1e-12);
        assert!((kb + 0.52428).abs() < 1e-4);
        assert!(rel(mb.curvatures_general(1.0, 1.0).unwrap().k, kb) < 1e-12);
        assert!(rel(mb.sqrt_abs_k(1.0, 1.0).unwrap(), kb.abs().sqrt()) < 1e-12);
    }

    #[test]
    fn g_equals_h_gives_zero_normal_curvature() {
        let d = CanonicalSurfaceDataR42::new(
            e("t"),
            e("t"),
            e("t"),
            e("t"),
            1.0,
            1.0,
            rect((2.0, 3.0), (0.0, 1.0)).unwrap(),
        )
        .unwrap();
        assert_eq!(d.curvatures(2.5, 0.5).unwrap().kappa, 0.0);
        assert_eq!(d.curvatures_general(2.5, 0.5).unwrap().kappa, 0.0);
    }

    #[test]
    fn types_follow_the_factor_signs() {
        let second = CanonicalSurfaceDataR42::new(
            e("t"),
            e("-t"),
            e("t"),
            e("-t"),
            1.0,
            1.0,
            rect((2.0, 3.0), (0.0, 1.0)).unwrap(),
        )
        .unwrap();
        assert_eq!(classify_type(&second).unwrap(), SurfaceType::Second);
        let third = CanonicalSurfaceDataR42::new(
            e("t"),
            e("t"),
            e("t"),
            e("-t"),
            1.0,
            1.0,
            rect((2.0, 3.0), (0.0, 1.0)).unwrap(),
        )
        .unwrap();
        assert_eq!(classify_type(&third).unwrap(), SurfaceType::Third);
        let c = third.curvatures_general(2.5, 0.5).unwrap();
        assert!(c.discriminant() < 0.0);
        let swapped = CanonicalSurfaceDataR42::new(
            e("t"),
            e("-t"),
            e("t"),
            e("t"),
            1.0,
            1.0,
            rect((2.0, 3.0), (0.0, 1.0)).unwrap(),
        );
        assert_eq!(swapped, Err(SurfaceError::ThirdTypeOrder));
    }

    #[test]
    fn canonical_formula_requires_negative_f() {
        let d = CanonicalSurfaceDataR42 {
            omega2: -1.0,
            ..catenoid()
        };
        assert!(d.first_form_f(1.0, 1.0).unwrap() > 0.0);
        assert!(matches!(
            d.curvatures(1.0, 1.0),
            Err(SurfaceError::PositiveF { .. })
        ));
        // the general formula has no sign convention
        let g = d.curvatures_general(1.0, 1.0).unwrap();
        let c = catenoid().curvatures(1.0, 1.0).unwrap();
        assert!(rel(g.k, -c.k) < 1e-12);
    }

    #[test]
    fn conjugate_flips_f_and_the_curvatures() {
        let s = catenoid().surface().unwrap();
        let y = s.conjugate();
        let (t1, t2) = (0.7, 1.4);
        assert!((y.first_form_f(t1, t2).unwrap() + s.first_form_f(t1, t2).unwrap()).abs() < 1e-12);
        let c = s.curvatures(t1, t2).unwrap();
        let cy = y.curvatures(t1, t2).unwrap();
        assert!(rel(cy.k, -c.k) < 1e-12 && rel(cy.kappa, -c.kappa) < 1e-12);
        let oracle = y.gauss_curvature_oracle(t1, t2).unwrap();
        assert!((oracle - cy.k).abs() < 1e-4 * (1.0 + cy.k.abs()));
        let back = y.conjugate();
        assert_eq!(back.point(t1, t2).unwrap(), s.point(t1, t2).unwrap());
    }

    #[test]
    fn motions_and_curvatures() {
        let s = catenoid().surface().unwrap();
        let (t1, t2) = (0.9, 1.3);
        let c = s.curvatures(t1, t2).unwrap();
        let proper = s
            .apply_motion(&random_proper_motion_r42(11))
            .curvatures(t1, t2)
            .unwrap();
        assert!(rel(proper.k, c.k) < 1e-8 && rel(proper.kappa, c.kappa) < 1e-8);
        let refl = s
            .apply_motion(&reflection_r42())
            .curvatures(t1, t2)
            .unwrap();
        assert!(rel(refl.k, c.k) < 1e-8 && rel(refl.kappa, -c.kappa) < 1e-8);
        let anti = s
            .apply_motion(&swap_anti_isometry_r42())
            .curvatures(t1, t2)
            .unwrap();
        assert!(rel(anti.k, -c.k) < 1e-8 && rel(anti.kappa, -c.kappa) < 1e-8);
    }

    #[test]
    fn constant_f_has_zero_oracle_curvature() {
        // α1' = (1, 1, 0) and α2' = (1, -1, 0) give F = -1/2
        let a = crate::curve::weier_r31(
            &crate::curve::WeierstrassR31 {
                f: e("1"),
                g: e("0"),
            },
            Interval::new(-1.0, 1.0).unwrap(),
        )
        .unwrap();
        let line = a.apply_motion(&Motion::<3>::point_reflection());
        let s = build_surface(
            &a,
            &line.apply_motion(
                &crate::space::spinor_to_so21(&crate::space::SpinMatrix::new(0.0, 1.0, -1.0, 0.0))
                    .unwrap(),
            ),
        )
        .unwrap();
        assert_eq!(s.gauss_curvature_oracle(0.1, 0.2).unwrap(), 0.0);
    }
}
