//! Null curves in R³₁ and R⁴₂ generated by Weierstrass-type data.
//!
//! A curve is described by its derivative `α'(t)`, which is built in closed
//! form from expressions `(f, g, h)` (or `(f, g)` in R³₁), optionally composed
//! with a rigid motion and with a reparametrization by a natural parameter.
//! Points `α(t)` are obtained by adaptive quadrature from a base parameter
//! `t0` where `α(t0)` is the base point.

use std::cell::RefCell;
use std::sync::Arc;

use thiserror::Error;

use crate::domain::{find_zero, Interval, IntervalError, TOL_DEGENERATE, VALIDATION_GRID};
use crate::expr::{DomainError, Expression};
use crate::jet::{Dual, Jet2};
use crate::quadrature::{integrate_vec, QuadError, QuadOptions};
use crate::roots::{solve_monotone, RootError};
use crate::space::{dot, LVec, Motion};

/// Tolerance in `s` for inverting the natural-parameter map.
pub const INVERSE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error("{quantity} vanishes at t = {t}")]
    Vanishing { quantity: &'static str, t: f64 },
    #[error("curve is degenerate (α''² = 0) at t = {t}")]
    Degenerate { t: f64 },
    #[error("omega must be +1 or -1, found {0}")]
    InvalidOmega(f64),
    #[error("quadrature failed: {0}")]
    Quadrature(#[from] QuadError),
    #[error("natural parameter inversion failed: {0}")]
    Root(#[from] RootError),
}

pub type Result<T, E = CurveError> = std::result::Result<T, E>;

/// Generating functions of a null curve in R⁴₂.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassR42 {
    pub f: Expression,
    pub g: Expression,
    pub h: Expression,
}

/// Generating functions of a null curve in R³₁.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassR31 {
    pub f: Expression,
    pub g: Expression,
}

/// The closed-form source of `α'`.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    /// `f (gh+1, gh-1, h-g, h+g)`
    R42(WeierstrassR42),
    /// `f (g²+1, g²-1, 2g)`
    R31(WeierstrassR31),
    /// `R42` with `f = ω / (2√|g'h'|)`
    CanonicalR42 {
        g: Expression,
        h: Expression,
        omega: f64,
    },
    /// `R31` with `f = ω / (2|g'|)`
    CanonicalR31 { g: Expression, omega: f64 },
}

impl Generator {
    /// `f` with its derivative and `g`, `h` with two derivatives at `t`.
    fn fgh(&self, t: f64) -> Result<(Dual, Jet2, Jet2)> {
        Ok(match self {
            Generator::R42(d) => (
                d.f.eval_jet2(t)?.to_dual(),
                d.g.eval_jet2(t)?,
                d.h.eval_jet2(t)?,
            ),
            Generator::R31(d) => {
                let g = d.g.eval_jet2(t)?;
                (d.f.eval_jet2(t)?.to_dual(), g, g)
            }
            Generator::CanonicalR42 { g, h, omega } => {
                let (g, h) = (g.eval_jet2(t)?, h.eval_jet2(t)?);
                (canonical_f(g.derivative() * h.derivative(), *omega), g, h)
            }
            Generator::CanonicalR31 { g, omega } => {
                let g = g.eval_jet2(t)?;
                let gp = g.derivative();
                (canonical_f(gp * gp, *omega), g, g)
            }
        })
    }

    /// `α'` in R⁴₂ coordinates with its derivative; R³₁ curves use indices 0, 1, 3.
    fn tangent4(&self, t: f64) -> Result<[Dual; 4]> {
        let (f, g, h) = self.fgh(t)?;
        let (g, h) = (g.to_dual(), h.to_dual());
        let gh = g * h;
        Ok([f * (gh + 1.0), f * (gh + -1.0), f * (h - g), f * (h + g)])
    }

    /// `α''² = 4 f² g' h'` with its derivative.
    fn accel_norm2(&self, t: f64) -> Result<Dual> {
        let (f, g, h) = self.fgh(t)?;
        Ok(f * f * g.derivative() * h.derivative() * 4.0)
    }

    /// `(f, g, h)` at `t` with first derivatives; `h = g` for R³₁ data.
    pub fn weier_point(&self, t: f64) -> Result<WeierPointR42> {
        let (f, g, h) = self.fgh(t)?;
        Ok(WeierPointR42 {
            t,
            f,
            g: g.to_dual(),
            h: h.to_dual(),
        })
    }

    fn embed(&self) -> Generator {
        match self {
            Generator::R31(d) => Generator::R42(WeierstrassR42 {
                f: d.f.clone(),
                g: d.g.clone(),
                h: d.g.clone(),
            }),
            Generator::CanonicalR31 { g, omega } => Generator::CanonicalR42 {
                g: g.clone(),
                h: g.clone(),
                omega: *omega,
            },
            other => other.clone(),
        }
    }
}

/// `ω / (2√|p|)` for `p = g'h'`.
fn canonical_f(p: Dual, omega: f64) -> Dual {
    p.abs().sqrt().recip() * (0.5 * omega)
}

fn check_omega(omega: f64) -> Result<f64> {
    if omega == 1.0 || omega == -1.0 {
        Ok(omega)
    } else {
        Err(CurveError::InvalidOmega(omega))
    }
}

fn select<const N: usize>(v: [Dual; 4]) -> [Dual; N] {
    const { assert!(N == 3 || N == 4) };
    let idx: &[usize] = if N == 3 { &[0, 1, 3] } else { &[0, 1, 2, 3] };
    std::array::from_fn(|i| v[idx[i]])
}

#[derive(Debug)]
struct Generated<const N: usize> {
    generator: Generator,
    interval: Interval,
    t0: f64,
    base: LVec<N>,
}

#[derive(Debug, Clone)]
enum Param<const N: usize> {
    Generated(Arc<Generated<N>>),
    Natural(Arc<NaturalParamMap<N>>),
}

/// A null curve with `α'` known in closed form.
#[derive(Debug, Clone)]
pub struct NullCurve<const N: usize> {
    param: Param<N>,
    motion: Motion<N>,
}

pub type NullCurveR31 = NullCurve<3>;
pub type NullCurveR42 = NullCurve<4>;

/// Tangent and acceleration at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame<const N: usize> {
    pub tangent: LVec<N>,
    pub acceleration: LVec<N>,
}

impl<const N: usize> NullCurve<N> {
    fn generated(generator: Generator, interval: Interval) -> Self {
        Self {
            param: Param::Generated(Arc::new(Generated {
                generator,
                interval,
                t0: interval.default_origin(),
                base: LVec::zeros(),
            })),
            motion: Motion::identity(),
        }
    }

    /// Moves the base parameter to `t0` and the base point to `point`
    /// (given in the curve's own frame before any motion).
    pub fn with_base(self, t0: f64, point: LVec<N>) -> Self {
        match self.param {
            Param::Generated(g) => Self {
                param: Param::Generated(Arc::new(Generated {
                    generator: g.generator.clone(),
                    interval: g.interval,
                    t0,
                    base: point,
                })),
                motion: self.motion,
            },
            natural => Self {
                param: natural,
                motion: self.motion,
            },
        }
    }

    /// The parameter interval (in `s` for a reparametrized curve).
    pub fn interval(&self) -> Interval {
        match &self.param {
            Param::Generated(g) => g.interval,
            Param::Natural(m) => m.s_interval,
        }
    }

    /// Parameter where the base point is attached.
    pub fn t0(&self) -> f64 {
        match &self.param {
            Param::Generated(g) => g.t0,
            Param::Natural(_) => 0.0,
        }
    }

    /// The generating data, when the curve is not reparametrized.
    pub fn generator(&self) -> Option<&Generator> {
        match &self.param {
            Param::Generated(g) => Some(&g.generator),
            Param::Natural(_) => None,
        }
    }

    pub fn natural_map(&self) -> Option<&NaturalParamMap<N>> {
        match &self.param {
            Param::Natural(m) => Some(m),
            Param::Generated(_) => None,
        }
    }

    pub fn motion(&self) -> &Motion<N> {
        &self.motion
    }

    /// Components of `α'` carrying their derivatives (`α''`).
    pub fn tangent_duals(&self, t: f64) -> Result<[Dual; N]> {
        let raw: [Dual; N] = match &self.param {
            Param::Generated(g) => select(g.generator.tangent4(t)?),
            Param::Natural(m) => {
                let u = m.inverse(t)?;
                let inner = m.curve.tangent_duals(u)?;
                let (t1, t2) = m.chain(u)?;
                inner.map(|c| Dual::new(c.v * t1, c.d * t1 * t1 + c.v * t2))
            }
        };
        let m = self.motion.matrix();
        Ok(std::array::from_fn(|i| {
            (0..N).fold(Dual::constant(0.0), |acc, j| acc + raw[j] * m[(i, j)])
        }))
    }

    pub fn frame(&self, t: f64) -> Result<Frame<N>> {
        let d = self.tangent_duals(t)?;
        Ok(Frame {
            tangent: LVec::from_fn(|i, _| d[i].v),
            acceleration: LVec::from_fn(|i, _| d[i].d),
        })
    }

    pub fn tangent(&self, t: f64) -> Result<LVec<N>> {
        self.frame(t).map(|f| f.tangent)
    }

    pub fn acceleration(&self, t: f64) -> Result<LVec<N>> {
        self.frame(t).map(|f| f.acceleration)
    }

    /// `α''(t)²` computed from the acceleration vector.
    pub fn accel_norm2(&self, t: f64) -> Result<f64> {
        let a = self.acceleration(t)?;
        Ok(dot(&a, &a))
    }

    /// `α''²` from the generating data (`4f²g'h'`), with its derivative.
    pub fn accel_norm2_dual(&self, t: f64) -> Result<Dual> {
        let q = match &self.param {
            Param::Generated(g) => g.generator.accel_norm2(t)?,
            Param::Natural(m) => {
                let inner = m.curve.accel_norm2_dual(m.inverse(t)?)?;
                Dual::constant(inner.v.signum())
            }
        };
        Ok(q * self.motion.metric_factor())
    }

    /// `α(t)`, integrating `α'` from `t0`.
    pub fn position(&self, t: f64) -> Result<LVec<N>> {
        Ok(self.positions(&[t])?[0])
    }

    /// Points at several parameters, integrating between consecutive sorted
    /// parameters.
    pub fn positions(&self, ts: &[f64]) -> Result<Vec<LVec<N>>> {
        let raw = match &self.param {
            Param::Generated(g) => g.positions(ts)?,
            Param::Natural(m) => {
                let us = ts
                    .iter()
                    .map(|&s| m.inverse(s))
                    .collect::<Result<Vec<_>>>()?;
                m.curve.positions(&us)?
            }
        };
        Ok(raw.iter().map(|p| self.motion.apply(p)).collect())
    }

    /// `α̂ = A α + b`.
    pub fn apply_motion(&self, m: &Motion<N>) -> Self {
        Self {
            param: self.param.clone(),
            motion: m.compose(&self.motion),
        }
    }

    /// Checks `α''² ≠ 0` on the validation grid with local refinement.
    pub fn nondegeneracy(&self) -> Result<Nondegeneracy> {
        let interval = self.interval();
        let witness = find_zero(|t| self.accel_norm2_dual(t), &interval, TOL_DEGENERATE)?;
        let sign = match witness {
            Some(_) => None,
            None => Some(self.accel_norm2_dual(interval.min())?.v.signum()),
        };
        Ok(Nondegeneracy { witness, sign })
    }

    pub fn is_nondegenerate(&self) -> Result<bool> {
        Ok(self.nondegeneracy()?.witness.is_none())
    }

    /// Sign of `α''²` on the interval, or the degeneracy witness.
    pub fn accel_sign(&self) -> Result<f64> {
        let n = self.nondegeneracy()?;
        match (n.sign, n.witness) {
            (Some(s), _) => Ok(s),
            (None, Some(t)) => Err(CurveError::Degenerate { t }),
            (None, None) => unreachable!("nondegeneracy reports a sign or a witness"),
        }
    }
}

impl<const N: usize> Generated<N> {
    fn positions(&self, ts: &[f64]) -> Result<Vec<LVec<N>>> {
        let mut order: Vec<usize> = (0..ts.len()).collect();
        order.sort_by(|&a, &b| ts[a].total_cmp(&ts[b]));
        let mut out = vec![LVec::<N>::zeros(); ts.len()];
        // integrate outwards from t0 in both directions
        let split = order.partition_point(|&k| ts[k] < self.t0);
        let mut walk = |indices: &mut dyn Iterator<Item = &usize>| -> Result<()> {
            let (mut t, mut p) = (self.t0, self.base);
            for &k in indices {
                p += self.segment(t, ts[k])?;
                t = ts[k];
                out[k] = p;
            }
            Ok(())
        };
        walk(&mut order[split..].iter())?;
        walk(&mut order[..split].iter().rev())?;
        Ok(out)
    }

    fn segment(&self, a: f64, b: f64) -> Result<LVec<N>> {
        let failure: RefCell<Option<CurveError>> = RefCell::new(None);
        let q = integrate_vec(
            |t| match self.generator.tangent4(t) {
                Ok(v) => select::<N>(v).map(|d| d.v),
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    [f64::NAN; N]
                }
            },
            a,
            b,
            &QuadOptions::default(),
        );
        match (q, failure.into_inner()) {
            (Ok(q), _) => Ok(LVec::from_column_slice(&q.value)),
            (Err(_), Some(e)) => Err(e),
            (Err(e), None) => Err(e.into()),
        }
    }
}

/// Result of the nondegeneracy test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nondegeneracy {
    /// A parameter where `α''²` vanishes (within tolerance), if any.
    pub witness: Option<f64>,
    /// Constant sign of `α''²` when nondegenerate.
    pub sign: Option<f64>,
}

/// Null curve in R⁴₂ with `α' = f (gh+1, gh-1, h-g, h+g)`.
pub fn weier_r42(data: &WeierstrassR42, interval: Interval) -> Result<NullCurve<4>> {
    require_nonzero("f", &data.f, &interval)?;
    Ok(NullCurve::generated(Generator::R42(data.clone()), interval))
}

/// Null curve in R³₁ with `α' = f (g²+1, g²-1, 2g)`.
pub fn weier_r31(data: &WeierstrassR31, interval: Interval) -> Result<NullCurve<3>> {
    require_nonzero("f", &data.f, &interval)?;
    Ok(NullCurve::generated(Generator::R31(data.clone()), interval))
}

/// Naturally parametrized null curve in R⁴₂, `f = ω/(2√|g'h'|)`.
pub fn canonical_r42(
    g: &Expression,
    h: &Expression,
    omega: f64,
    interval: Interval,
) -> Result<NullCurve<4>> {
    let omega = check_omega(omega)?;
    let witness = find_zero(
        |t| -> Result<Dual> { Ok(g.eval_jet2(t)?.derivative() * h.eval_jet2(t)?.derivative()) },
        &interval,
        TOL_DEGENERATE,
    )?;
    if let Some(t) = witness {
        return Err(CurveError::Vanishing {
            quantity: "g'h'",
            t,
        });
    }
    Ok(NullCurve::generated(
        Generator::CanonicalR42 {
            g: g.clone(),
            h: h.clone(),
            omega,
        },
        interval,
    ))
}

/// Naturally parametrized null curve in R³₁, `f = ω/(2|g'|)`.
pub fn canonical_r31(g: &Expression, omega: f64, interval: Interval) -> Result<NullCurve<3>> {
    let omega = check_omega(omega)?;
    let witness = find_zero(
        |t| -> Result<Dual> { Ok(g.eval_jet2(t)?.derivative()) },
        &interval,
        TOL_DEGENERATE,
    )?;
    if let Some(t) = witness {
        return Err(CurveError::Vanishing { quantity: "g'", t });
    }
    Ok(NullCurve::generated(
        Generator::CanonicalR31 {
            g: g.clone(),
            omega,
        },
        interval,
    ))
}

fn require_nonzero(quantity: &'static str, e: &Expression, interval: &Interval) -> Result<()> {
    let witness = find_zero(
        |t| -> Result<Dual> { Ok(e.eval_jet2(t)?.to_dual()) },
        interval,
        TOL_DEGENERATE,
    )?;
    match witness {
        Some(t) => Err(CurveError::Vanishing { quantity, t }),
        None => Ok(()),
    }
}

impl NullCurve<3> {
    /// The same curve in the hyperplane `x₃ = 0` of R⁴₂.
    pub fn embed(&self) -> NullCurve<4> {
        let param = match &self.param {
            Param::Generated(g) => Param::Generated(Arc::new(Generated {
                generator: g.generator.embed(),
                interval: g.interval,
                t0: g.t0,
                base: crate::space::embed_r31(&g.base),
            })),
            Param::Natural(m) => Param::Natural(Arc::new(NaturalParamMap {
                curve: m.curve.embed(),
                t0: m.t0,
                sign: m.sign,
                s_interval: m.s_interval,
            })),
        };
        NullCurve {
            param,
            motion: self.motion.embed_r42(),
        }
    }
}

/// Weierstrass data re-extracted from a curve at one parameter value,
/// each with its first derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeierPointR42 {
    pub t: f64,
    pub f: Dual,
    pub g: Dual,
    pub h: Dual,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeierPointR31 {
    pub t: f64,
    pub f: Dual,
    pub g: Dual,
}

impl WeierPointR42 {
    /// The R³₁ data `(f, g)` when `g = h`.
    pub fn to_r31(&self) -> WeierPointR31 {
        WeierPointR31 {
            t: self.t,
            f: self.f,
            g: self.g,
        }
    }
}

impl WeierstrassR42 {
    pub fn point(&self, t: f64) -> Result<WeierPointR42> {
        Generator::R42(self.clone()).weier_point(t)
    }
}

impl WeierstrassR31 {
    pub fn point(&self, t: f64) -> Result<WeierPointR31> {
        Ok(Generator::R31(self.clone()).weier_point(t)?.to_r31())
    }
}

/// `f = (ξ₁-ξ₂)/2`, `g = (ξ₄-ξ₃)/(ξ₁-ξ₂)`, `h = (ξ₄+ξ₃)/(ξ₁-ξ₂)` at `t`.
pub fn weier_point_r42(c: &NullCurve<4>, t: f64) -> Result<WeierPointR42> {
    let [x1, x2, x3, x4] = c.tangent_duals(t)?;
    let d = x1 - x2;
    if d.v.abs() <= TOL_DEGENERATE {
        return Err(CurveError::Vanishing {
            quantity: "ξ1 - ξ2",
            t,
        });
    }
    Ok(WeierPointR42 {
        t,
        f: d * 0.5,
        g: (x4 - x3) / d,
        h: (x4 + x3) / d,
    })
}

/// `f = (ξ₁-ξ₂)/2`, `g = ξ₃/(ξ₁-ξ₂)` at `t`.
pub fn weier_point_r31(c: &NullCurve<3>, t: f64) -> Result<WeierPointR31> {
    let [x1, x2, x3] = c.tangent_duals(t)?;
    let d = x1 - x2;
    if d.v.abs() <= TOL_DEGENERATE {
        return Err(CurveError::Vanishing {
            quantity: "ξ1 - ξ2",
            t,
        });
    }
    Ok(WeierPointR31 {
        t,
        f: d * 0.5,
        g: x3 / d,
    })
}

fn check_xi_gap<const N: usize>(c: &NullCurve<N>) -> Result<Vec<f64>> {
    let interval = c.interval();
    let witness = find_zero(
        |t| {
            let x = c.tangent_duals(t)?;
            Ok::<_, CurveError>(x[0] - x[1])
        },
        &interval,
        TOL_DEGENERATE,
    )?;
    match witness {
        Some(t) => Err(CurveError::Vanishing {
            quantity: "ξ1 - ξ2",
            t,
        }),
        None => Ok(interval.grid(VALIDATION_GRID)),
    }
}

/// Samples of `(f, g, h)` on the validation grid; fails if `ξ₁ - ξ₂` vanishes.
pub fn weier_data_r42(c: &NullCurve<4>) -> Result<Vec<WeierPointR42>> {
    check_xi_gap(c)?
        .into_iter()
        .map(|t| weier_point_r42(c, t))
        .collect()
}

/// Samples of `(f, g)` on the validation grid; fails if `ξ₁ - ξ₂` vanishes.
pub fn weier_data_r31(c: &NullCurve<3>) -> Result<Vec<WeierPointR31>> {
    check_xi_gap(c)?
        .into_iter()
        .map(|t| weier_point_r31(c, t))
        .collect()
}

/// The map `t ↦ s = ±∫_{t0}^t ⁴√|α''²| du` of a nondegenerate curve.
#[derive(Debug)]
pub struct NaturalParamMap<const N: usize> {
    curve: NullCurve<N>,
    t0: f64,
    sign: f64,
    s_interval: Interval,
}

impl<const N: usize> NaturalParamMap<N> {
    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn sign(&self) -> f64 {
        self.sign
    }

    /// Range of `s` over the curve's interval.
    pub fn s_interval(&self) -> Interval {
        self.s_interval
    }

    /// Interval of the original parameter.
    pub fn t_interval(&self) -> Interval {
        self.curve.interval()
    }

    /// The curve being reparametrized.
    pub fn curve(&self) -> &NullCurve<N> {
        &self.curve
    }

    /// `ds/dt = ⁴√|α''²|`, without the orientation sign.
    pub fn speed(&self, t: f64) -> Result<f64> {
        Ok(self.curve.accel_norm2_dual(t)?.v.abs().sqrt().sqrt())
    }

    pub fn forward(&self, t: f64) -> Result<f64> {
        let failure: RefCell<Option<CurveError>> = RefCell::new(None);
        let q = integrate_vec(
            |u| match self.speed(u) {
                Ok(v) => [v],
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    [f64::NAN]
                }
            },
            self.t0,
            t,
            &QuadOptions::default(),
        );
        match (q, failure.into_inner()) {
            (Ok(q), _) => Ok(self.sign * q.value[0]),
            (Err(_), Some(e)) => Err(e),
            (Err(e), None) => Err(e.into()),
        }
    }

    pub fn inverse(&self, s: f64) -> Result<f64> {
        let ti = self.curve.interval();
        solve_monotone(
            |t| Ok::<_, CurveError>((self.forward(t)? - s, self.sign * self.speed(t)?)),
            ti.min(),
            ti.max(),
            INVERSE_TOL,
        )
    }

    /// `dt/ds` and `d²t/ds²` at original parameter `t`.
    fn chain(&self, t: f64) -> Result<(f64, f64)> {
        let q = self.curve.accel_norm2_dual(t)?;
        let phi = q.v.abs().sqrt().sqrt();
        let dphi = 0.25 * q.d * q.v.signum() / (phi * phi * phi);
        Ok((self.sign / phi, -dphi / (phi * phi * phi)))
    }

    /// The curve reparametrized by `s`, with `α(s = 0)` at the original
    /// curve's point `α(t0)`.
    pub fn reparametrized(self) -> NullCurve<N> {
        NullCurve {
            param: Param::Natural(Arc::new(self)),
            motion: Motion::identity(),
        }
    }
}

/// Natural parameter of `c` measured from `t0`, increasing with `t`.
pub fn natural_param<const N: usize>(c: &NullCurve<N>, t0: f64) -> Result<NaturalParamMap<N>> {
    natural_param_signed(c, t0, 1.0)
}

/// As [`natural_param`] with orientation `sign` (the `±` in `t = ±s + c`).
pub fn natural_param_signed<const N: usize>(
    c: &NullCurve<N>,
    t0: f64,
    sign: f64,
) -> Result<NaturalParamMap<N>> {
    let sign = check_omega(sign)?;
    let n = c.nondegeneracy()?;
    if let Some(t) = n.witness {
        return Err(CurveError::Degenerate { t });
    }
    let mut map = NaturalParamMap {
        curve: c.clone(),
        t0,
        sign,
        s_interval: c.interval(),
    };
    let ti = c.interval();
    let (a, b) = (map.forward(ti.min())?, map.forward(ti.max())?);
    map.s_interval = Interval::new(a.min(b), a.max(b))?;
    Ok(map)
}

/// `α(t)` relative to the base point.
pub fn integrate_curve<const N: usize>(c: &NullCurve<N>, t: f64) -> Result<LVec<N>> {
    c.position(t)
}

/// `α̂ = A α + b`.
pub fn apply_motion_to_curve<const N: usize>(c: &NullCurve<N>, m: &Motion<N>) -> NullCurve<N> {
    c.apply_motion(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{dot4, swap_anti_isometry_r42, Vec3L, Vec4L};

    fn e(s: &str) -> Expression {
        Expression::parse(s, "t").unwrap()
    }

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    fn r42(f: &str, g: &str, h: &str, i: Interval) -> NullCurve<4> {
        weier_r42(
            &WeierstrassR42 {
                f: e(f),
                g: e(g),
                h: e(h),
            },
            i,
        )
        .unwrap()
    }

    #[test]
    fn weierstrass_r42_tangent() {
        let c = r42("1", "t", "t", iv(-2.0, 2.0));
        let t = 1.5;
        let v = c.tangent(t).unwrap();
        assert_eq!(v, Vec4L::new(t * t + 1.0, t * t - 1.0, 0.0, 2.0 * t));
        assert_eq!(dot4(&v, &v), 0.0);
        assert!((c.accel_norm2(t).unwrap() - 4.0).abs() < 1e-12);
        assert_eq!(c.accel_norm2_dual(t).unwrap().v, 4.0);
    }

    #[test]
    fn catenoid_gamma1_tangent() {
        let c = r42("0.5*exp(-t)", "exp(t)", "exp(t)", iv(-1.0, 2.0));
        for &t in &[-0.5, 0.0, 1.0, 1.7] {
            let v = c.tangent(t).unwrap();
            let want = Vec4L::new(f64::cosh(t), f64::sinh(t), 0.0, 1.0);
            assert!((v - want).amax() < 1e-14);
            assert!((c.accel_norm2(t).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn re_extracts_catenoid_gamma2_data() {
        let c = canonical_r42(&e("-exp(t)"), &e("exp(-t)"), 1.0, iv(0.2, 2.0)).unwrap();
        let t = 0.7;
        let v = c.tangent(t).unwrap();
        let want = Vec4L::new(0.0, -1.0, f64::cosh(t), -f64::sinh(t));
        assert!((v - want).amax() < 1e-14);
        let p = weier_point_r42(&c, t).unwrap();
        assert!((p.f.v - 0.5).abs() < 1e-14);
        assert!((p.g.v + t.exp()).abs() < 1e-13);
        assert!((p.h.v - (-t).exp()).abs() < 1e-13);
        assert!((p.g.d + t.exp()).abs() < 1e-13);
    }

    #[test]
    fn xi_gap_failure_is_reported() {
        // α' = (1, -1, t, t), then swap the timelike pair and the spacelike pair
        let c = r42("1", "0", "t", iv(-1.0, 1.0));
        let mut m = crate::space::LMat::<4>::zeros();
        m[(0, 2)] = 1.0;
        m[(2, 0)] = 1.0;
        m[(1, 3)] = 1.0;
        m[(3, 1)] = 1.0;
        let swap = Motion::linear(m).unwrap();
        let moved = c.apply_motion(&swap);
        assert!(matches!(
            weier_data_r42(&moved),
            Err(CurveError::Vanishing {
                quantity: "ξ1 - ξ2",
                ..
            })
        ));
        assert!(weier_data_r42(&c).is_ok());
    }

    #[test]
    fn r31_representation_and_embedding() {
        let c = weier_r31(
            &WeierstrassR31 {
                f: e("1"),
                g: e("t"),
            },
            iv(-1.0, 1.0),
        )
        .unwrap();
        let t = 0.4;
        assert_eq!(
            c.tangent(t).unwrap(),
            Vec3L::new(t * t + 1.0, t * t - 1.0, 2.0 * t)
        );
        let four = r42("1", "t", "t", iv(-1.0, 1.0));
        assert_eq!(c.embed().tangent(t).unwrap(), four.tangent(t).unwrap());
        let cat = canonical_r31(&e("exp(t)"), 1.0, iv(-1.0, 1.0)).unwrap();
        let v = cat.tangent(t).unwrap();
        assert!((v - Vec3L::new(t.cosh(), t.sinh(), 1.0)).amax() < 1e-14);
        let p = weier_point_r31(&cat, t).unwrap();
        assert!((p.f.v - 0.5 * (-t).exp()).abs() < 1e-14);
        assert!((p.g.v - t.exp()).abs() < 1e-13);
    }

    #[test]
    fn nondegeneracy_examples() {
        let cubic = r42("1", "t", "t^3", iv(-1.0, 1.0));
        let n = cubic.nondegeneracy().unwrap();
        assert!(n.witness.unwrap().abs() < 1e-4);
        assert!(r42("1", "exp(t)", "exp(t)", iv(-1.0, 1.0))
            .is_nondegenerate()
            .unwrap());
        let neg = r42("1", "t", "-t", iv(-1.0, 1.0));
        assert_eq!(neg.accel_sign().unwrap(), -1.0);
        let flat = weier_r31(
            &WeierstrassR31 {
                f: e("1"),
                g: e("t^2"),
            },
            iv(-1.0, 1.0),
        )
        .unwrap();
        assert!(flat.accel_norm2(0.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn vanishing_generators_are_rejected() {
        let bad = weier_r42(
            &WeierstrassR42 {
                f: e("t"),
                g: e("t"),
                h: e("t"),
            },
            iv(-1.0, 1.0),
        );
        assert!(matches!(
            bad,
            Err(CurveError::Vanishing { quantity: "f", .. })
        ));
        assert!(matches!(
            canonical_r42(&e("t^2"), &e("t"), 1.0, iv(-1.0, 1.0)),
            Err(CurveError::Vanishing {
                quantity: "g'h'",
                ..
            })
        ));
        assert!(matches!(
            canonical_r31(&e("t"), 0.5, iv(0.0, 1.0)),
            Err(CurveError::InvalidOmega(_))
        ));
    }

    #[test]
    fn integration_matches_antiderivative() {
        let c = r42("0.5*exp(-t)", "exp(t)", "exp(t)", iv(-1.0, 2.0));
        let ts = [1.3, -0.8, 0.0, 2.0, 0.4];
        let ps = c.positions(&ts).unwrap();
        for (&t, p) in ts.iter().zip(&ps) {
            let want = Vec4L::new(t.sinh(), t.cosh() - 1.0, 0.0, t);
            assert!((p - want).amax() < 1e-9, "{t}: {p:?}");
        }
        assert_eq!(c.position(0.0).unwrap(), Vec4L::zeros());
        let doubled = r42("exp(-t)", "exp(t)", "exp(t)", iv(-1.0, 2.0));
        let a = c.position(1.1).unwrap();
        let b = doubled.position(1.1).unwrap();
        assert!((b - 2.0 * a).amax() < 1e-9);
    }

    #[test]
    fn natural_parameter_of_constant_acceleration() {
        let c = r42("1", "t", "t", iv(-1.0, 2.0));
        let map = natural_param(&c, 0.0).unwrap();
        for &t in &[-1.0, -0.3, 0.5, 2.0] {
            assert!((map.forward(t).unwrap() - 2f64.sqrt() * t).abs() < 1e-9);
        }
        let s = map.forward(1.3).unwrap();
        assert!((map.inverse(s).unwrap() - 1.3).abs() < 1e-9);
        let nat = map.reparametrized();
        for &s in &[-1.2, 0.0, 0.9, 2.5] {
            assert!((nat.accel_norm2(s).unwrap().abs() - 1.0).abs() < 1e-6);
            let v = nat.tangent(s).unwrap();
            assert!(dot4(&v, &v).abs() < 1e-10);
        }
    }

    #[test]
    fn natural_parameter_of_a_canonical_curve_is_a_shift() {
        let c = canonical_r42(&e("exp(t)"), &e("exp(t)"), 1.0, iv(-1.0, 1.0)).unwrap();
        let map = natural_param(&c, 0.0).unwrap();
        for &t in &[-1.0, 0.25, 1.0] {
            assert!((map.forward(t).unwrap() - t).abs() < 1e-9);
        }
        let back = natural_param_signed(&c, 0.5, -1.0).unwrap();
        // t = -s + 0.5
        assert!((back.forward(0.0).unwrap() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn natural_reparametrization_of_a_general_curve() {
        let c = r42("1 + t^2", "sin(t)", "t + t^3", iv(-1.0, 1.0));
        let nat = natural_param(&c, 0.0).unwrap().reparametrized();
        let si = nat.interval();
        for s in si.interior_grid(7) {
            assert!((nat.accel_norm2(s).unwrap() - 1.0).abs() < 1e-6, "s = {s}");
        }
        // dα/ds = dα/dt · dt/ds, checked against the points by differences
        let s = 0.3;
        let h = 1e-5;
        let ps = nat.positions(&[s - h, s + h]).unwrap();
        let fd = (ps[1] - ps[0]) / (2.0 * h);
        assert!((fd - nat.tangent(s).unwrap()).amax() < 1e-6);
    }

    #[test]
    fn motions_act_on_curves() {
        let c = r42("1 + t^2", "t", "exp(t)", iv(-1.0, 1.0));
        let m = crate::space::random_proper_motion_r42(3);
        let moved = c.apply_motion(&m);
        let t = 0.35;
        assert!((moved.accel_norm2(t).unwrap() - c.accel_norm2(t).unwrap()).abs() < 1e-9);
        let p = moved.position(t).unwrap();
        assert!((p - m.apply(&c.position(t).unwrap())).amax() < 1e-12);
        let anti = c.apply_motion(&swap_anti_isometry_r42());
        assert!((anti.accel_norm2(t).unwrap() + c.accel_norm2(t).unwrap()).abs() < 1e-9);
        assert!((anti.accel_norm2_dual(t).unwrap().v + c.accel_norm2(t).unwrap()).abs() < 1e-9);
        let same = c.apply_motion(&Motion::identity());
        assert_eq!(same.tangent(t).unwrap(), c.tangent(t).unwrap());
    }
}
