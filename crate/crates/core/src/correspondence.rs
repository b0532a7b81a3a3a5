//! Correspondence between minimal Lorentz surfaces of general type in R⁴₂ and
//! ordered pairs of minimal Lorentz surfaces in R³₁.
//!
//! A canonical R⁴₂ surface with data `(g1, h1, g2, h2)` splits into the R³₁
//! surfaces generated by `(g1, g2)` and by `(h1, h2)`; merging reverses this.
//! Split factors always carry `ω = +1`.

use thiserror::Error;

use crate::curve::{canonical_r31, weier_point_r42, CurveError, NullCurve};
use crate::domain::{Interval, Rect};
use crate::expr::Expression;
use crate::surface::{
    CanonicalSurfaceDataR31, CanonicalSurfaceDataR42, CurvaturePair, SurfaceError, SurfaceType,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorrespondenceError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("pair members live on different domains")]
    DomainMismatch,
    #[error("curvature relation needs K_g ≠ 0 and K_h ≠ 0 (K_g = {k_g}, K_h = {k_h})")]
    ZeroCurvature { k_g: f64, k_h: f64 },
    #[error("eta must be +1 or -1, found {0}")]
    InvalidEta(f64),
}

impl From<CurveError> for CorrespondenceError {
    fn from(e: CurveError) -> Self {
        CorrespondenceError::Surface(e.into())
    }
}

pub type Result<T, E = CorrespondenceError> = std::result::Result<T, E>;

/// The ordered pair `(M_g, M_h)` on a shared domain.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfacePair {
    pub m_g: CanonicalSurfaceDataR31,
    pub m_h: CanonicalSurfaceDataR31,
}

impl SurfacePair {
    pub fn new(m_g: CanonicalSurfaceDataR31, m_h: CanonicalSurfaceDataR31) -> Result<Self> {
        if m_g.domain != m_h.domain {
            return Err(CorrespondenceError::DomainMismatch);
        }
        Ok(Self { m_g, m_h })
    }

    pub fn domain(&self) -> Rect {
        self.m_g.domain
    }

    /// `(K_g, K_h)` at a point.
    pub fn gauss_curvatures(&self, t1: f64, t2: f64) -> Result<(f64, f64)> {
        Ok((
            self.m_g.curvatures(t1, t2)?.k,
            self.m_h.curvatures(t1, t2)?.k,
        ))
    }

    /// `√|F_g F_h|`.
    pub fn area_mean(&self, t1: f64, t2: f64) -> Result<f64> {
        let fg = self.m_g.first_form_f(t1, t2)?;
        let fh = self.m_h.first_form_f(t1, t2)?;
        Ok((fg * fh).abs().sqrt())
    }
}

/// The R³₁ curves generated by `g` and by `h`, both with `ω = +1`.
pub fn split_curve(
    g: &Expression,
    h: &Expression,
    interval: Interval,
) -> Result<(NullCurve<3>, NullCurve<3>)> {
    Ok((
        canonical_r31(g, 1.0, interval)?,
        canonical_r31(h, 1.0, interval)?,
    ))
}

/// `(M, p) ↦ ((M_g, p_g), (M_h, p_h))`.
pub fn split_surface(data: &CanonicalSurfaceDataR42) -> Result<SurfacePair> {
    let m_g =
        CanonicalSurfaceDataR31::new(data.g1.clone(), data.g2.clone(), 1.0, 1.0, data.domain)?;
    let m_h =
        CanonicalSurfaceDataR31::new(data.h1.clone(), data.h2.clone(), 1.0, 1.0, data.domain)?;
    SurfacePair::new(m_g, m_h)
}

/// Combines `(M_g, M_h)` into canonical R⁴₂ data with the given `ω`'s.
pub fn merge_surfaces(
    pair: &SurfacePair,
    omega1: f64,
    omega2: f64,
) -> Result<CanonicalSurfaceDataR42> {
    Ok(CanonicalSurfaceDataR42::new(
        pair.m_g.g1.clone(),
        pair.m_h.g1.clone(),
        pair.m_g.g2.clone(),
        pair.m_h.g2.clone(),
        omega1,
        omega2,
        pair.domain(),
    )?)
}

/// The split after an orientation-preserving anti-isometry: `h_i ↦ -h_i`.
pub fn anti_isometry_split(data: &CanonicalSurfaceDataR42) -> Result<SurfacePair> {
    let pair = split_surface(data)?;
    let m_h = CanonicalSurfaceDataR31::new(
        pair.m_h.g1.neg(),
        pair.m_h.g2.neg(),
        1.0,
        1.0,
        pair.domain(),
    )?;
    SurfacePair::new(pair.m_g, m_h)
}

/// `(K, κ)` of the R⁴₂ surface from the Gauss curvatures of its pair.
///
/// First and second type: `K = η ⁴√|K_g K_h| (√|K_g| + √|K_h|)/2` and `κ`
/// with the difference; third type swaps the two.
pub fn curvature_relation(
    k_g: f64,
    k_h: f64,
    surface_type: SurfaceType,
    eta: f64,
) -> Result<CurvaturePair> {
    if eta != 1.0 && eta != -1.0 {
        return Err(CorrespondenceError::InvalidEta(eta));
    }
    if k_g == 0.0 || k_h == 0.0 {
        return Err(CorrespondenceError::ZeroCurvature { k_g, k_h });
    }
    let r = (k_g * k_h).abs().sqrt().sqrt();
    let (sg, sh) = (k_g.abs().sqrt(), k_h.abs().sqrt());
    let plus = eta * r * (sg + sh) / 2.0;
    let minus = eta * r * (sg - sh) / 2.0;
    Ok(match surface_type {
        SurfaceType::First | SurfaceType::Second => CurvaturePair::new(plus, minus),
        SurfaceType::Third => CurvaturePair::new(minus, plus),
    })
}

/// `(K_g, K_h)` of the split pair, computed from Weierstrass data
/// re-extracted from two naturally parametrized null curves in R⁴₂.
pub fn split_curvatures_from_curves(
    c1: &NullCurve<4>,
    c2: &NullCurve<4>,
    t1: f64,
    t2: f64,
) -> Result<(f64, f64)> {
    let p1 = weier_point_r42(c1, t1)?;
    let p2 = weier_point_r42(c2, t2)?;
    let k = |a: crate::jet::Dual, b: crate::jet::Dual| {
        let p = a.d * b.d;
        16.0 * p.abs() * p / (a.v - b.v).powi(4)
    };
    Ok((k(p1.g, p2.g), k(p1.h, p2.h)))
}
