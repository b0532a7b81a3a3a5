//! Verification suites and the JSON report produced by `lw verify`.

use std::fmt::Display;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{self, CorpusEntry, SurfaceData};
use crate::correspondence::{curvature_relation, merge_surfaces, split_surface};
use crate::curve::{
    natural_param, weier_point_r31, weier_point_r42, weier_r31, weier_r42, NullCurve,
};
use crate::domain::Rect;
use crate::expr::Expression;
use crate::jet::Dual;
use crate::space::{
    determinant, dot, dot3, mobius_on_weierstrass, motion_for_kind, spinor_to_so21, LMat, LVec,
    Motion, MotionKind, SpinMatrix, Vec3L,
};
use crate::surface::{
    build_surface, CanonicalSurfaceDataR42, CurvaturePair, MinimalSurface, SurfaceError,
    SurfaceType,
};

/// Denominator floor for relative errors.
pub const REL_FLOOR: f64 = 1e-9;

/// Label attached to the catenoid κ closed-form discrepancy.
pub const INCONSISTENCY: &str = "reference-internal inconsistency";

/// How a check compares its error against the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    /// `|a - b|`
    Absolute,
    /// `|a - b| / max(|b|, REL_FLOOR)`
    Relative,
    /// `|a - b| / (1 + |b|)`
    Scaled,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub identity: String,
    pub grid: String,
    pub points: usize,
    pub max_abs_error: f64,
    pub max_rel_error: f64,
    pub max_scaled_error: f64,
    pub metric: Metric,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Finding {
    pub name: String,
    pub classification: String,
    pub description: String,
    pub point: [f64; 2],
    pub formula_value: f64,
    pub closed_form_value: f64,
    pub grid: String,
    pub max_rel_discrepancy: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub corpus: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance_override: Option<f64>,
    pub checks: Vec<Check>,
    pub findings: Vec<Finding>,
    pub passed: bool,
}

impl Report {
    pub fn new(
        corpus: &str,
        opts: &VerifyOptions,
        checks: Vec<Check>,
        findings: Vec<Finding>,
    ) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Report {
            corpus: corpus.to_string(),
            seed: opts.seed,
            tolerance_override: opts.tolerance,
            checks,
            findings,
            passed,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Replaces every check's default tolerance.
    pub tolerance: Option<f64>,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            tolerance: None,
            seed: 1,
        }
    }
}

/// Built-in corpora accepted by [`verify_corpus`].
pub const CORPORA: [&str; 4] = ["example", "paper-example", "standard", "empty"];

/// One compared value: `actual` against `expected`, with `scale` the
/// magnitude used for relative errors.
#[derive(Debug, Clone, Copy)]
struct Sample {
    diff: f64,
    scale: f64,
}

impl Sample {
    fn eq(actual: f64, expected: f64) -> Self {
        Sample {
            diff: (actual - expected).abs(),
            scale: expected.abs(),
        }
    }

    fn residual(value: f64, scale: f64) -> Self {
        Sample {
            diff: value.abs(),
            scale,
        }
    }
}

#[derive(Debug, Default)]
struct Acc {
    points: usize,
    abs: f64,
    rel: f64,
    scaled: f64,
}

impl Acc {
    fn push(&mut self, s: Sample) {
        let d = if s.diff.is_nan() {
            f64::INFINITY
        } else {
            s.diff
        };
        self.abs = self.abs.max(d);
        self.rel = self.rel.max(d / s.scale.max(REL_FLOOR));
        self.scaled = self.scaled.max(d / (1.0 + s.scale));
    }
}

/// Declares a check and evaluates it.
struct Spec<'a> {
    name: String,
    identity: &'a str,
    grid: String,
    metric: Metric,
    tolerance: f64,
}

impl Spec<'_> {
    fn run<T, F>(self, opts: &VerifyOptions, points: &[T], f: F) -> Check
    where
        T: Sync,
        F: Fn(&T) -> Result<Vec<Sample>, String> + Sync,
    {
        let results: Vec<_> = points.par_iter().map(&f).collect();
        let mut acc = Acc {
            points: points.len(),
            ..Acc::default()
        };
        let mut error = None;
        for r in results {
            match r {
                Ok(samples) => samples.into_iter().for_each(|s| acc.push(s)),
                Err(e) => {
                    error.get_or_insert(e);
                }
            }
        }
        self.finish(opts, acc, error)
    }

    fn fail(self, opts: &VerifyOptions, error: impl Display) -> Check {
        self.finish(opts, Acc::default(), Some(error.to_string()))
    }

    fn finish(self, opts: &VerifyOptions, acc: Acc, error: Option<String>) -> Check {
        let tolerance = opts.tolerance.unwrap_or(self.tolerance);
        let value = match self.metric {
            Metric::Absolute => acc.abs,
            Metric::Relative => acc.rel,
            Metric::Scaled => acc.scaled,
        };
        Check {
            name: self.name,
            identity: self.identity.to_string(),
            grid: self.grid,
            points: acc.points,
            max_abs_error: acc.abs,
            max_rel_error: acc.rel,
            max_scaled_error: acc.scaled,
            metric: self.metric,
            tolerance,
            passed: error.is_none() && value <= tolerance,
            error,
        }
    }
}

fn spec<'a>(
    subject: &str,
    id: &str,
    identity: &'a str,
    grid: String,
    metric: Metric,
    tol: f64,
) -> Spec<'a> {
    Spec {
        name: format!("{subject}/{id}"),
        identity,
        grid,
        metric,
        tolerance: tol,
    }
}

fn err(e: impl Display) -> String {
    e.to_string()
}

fn square_grid(n: usize) -> String {
    format!("{n}x{n}")
}

/// Surfaces of both spaces with the curvature computations checks need.
trait CurvatureSurface: Sync {
    fn curvature_pair(&self, t1: f64, t2: f64) -> Result<CurvaturePair, SurfaceError>;
    fn oracle(&self, t1: f64, t2: f64) -> Result<f64, SurfaceError>;
}

impl CurvatureSurface for MinimalSurface<4> {
    fn curvature_pair(&self, t1: f64, t2: f64) -> Result<CurvaturePair, SurfaceError> {
        self.curvatures(t1, t2)
    }
    fn oracle(&self, t1: f64, t2: f64) -> Result<f64, SurfaceError> {
        self.gauss_curvature_oracle(t1, t2)
    }
}

impl CurvatureSurface for MinimalSurface<3> {
    fn curvature_pair(&self, t1: f64, t2: f64) -> Result<CurvaturePair, SurfaceError> {
        self.curvatures(t1, t2)
    }
    fn oracle(&self, t1: f64, t2: f64) -> Result<f64, SurfaceError> {
        self.gauss_curvature_oracle(t1, t2)
    }
}

/// Grid for curve-level checks.
pub const CURVE_POINTS: usize = 200;
/// Interior grid side for the curvature oracle.
pub const ORACLE_GRID: usize = 10;
/// Interior grid side for the correspondence checks.
pub const RELATION_GRID: usize = 5;

fn null_condition<const N: usize>(
    subject: &str,
    curves: &[&NullCurve<N>],
    opts: &VerifyOptions,
) -> Check {
    let pts: Vec<(usize, f64)> = curves
        .iter()
        .enumerate()
        .flat_map(|(i, c)| {
            c.interval()
                .grid(CURVE_POINTS)
                .into_iter()
                .map(move |t| (i, t))
        })
        .collect();
    spec(
        subject,
        "null-condition",
        "dot(α′, α′) = 0",
        format!("{}x{CURVE_POINTS}", curves.len()),
        Metric::Scaled,
        1e-10,
    )
    .run(opts, &pts, |&(i, t)| {
        let v = curves[i].tangent(t).map_err(err)?;
        Ok(vec![Sample::residual(dot(&v, &v), v.norm_squared())])
    })
}

fn jet_samples(a: Dual, b: Dual) -> [Sample; 2] {
    [Sample::eq(a.v, b.v), Sample::eq(a.d, b.d)]
}

fn eval_dual(e: &Expression, t: f64) -> Result<Dual, String> {
    let j = e.eval_jet2(t).map_err(err)?;
    Ok(Dual::new(j.v, j.d1))
}

/// Expected `(f, g, h)` at `t`, `h = g` in R³₁.
type DataFn<'a> = dyn Fn(f64) -> Result<[Dual; 3], String> + Sync + 'a;

fn round_trip_r42(
    subject: &str,
    curves: [(&NullCurve<4>, &DataFn); 2],
    opts: &VerifyOptions,
) -> Check {
    let pts: Vec<(usize, f64)> = (0..2)
        .flat_map(|i| {
            curves[i]
                .0
                .interval()
                .grid(CURVE_POINTS)
                .into_iter()
                .map(move |t| (i, t))
        })
        .collect();
    spec(
        subject,
        "round-trip",
        "weier_data(weier_curve(f, g, h)) = (f, g, h)",
        format!("2x{CURVE_POINTS}"),
        Metric::Scaled,
        1e-10,
    )
    .run(opts, &pts, |&(i, t)| {
        let (c, data) = curves[i];
        let p = weier_point_r42(c, t).map_err(err)?;
        let [f, g, h] = data(t)?;
        Ok([
            jet_samples(p.f, f),
            jet_samples(p.g, g),
            jet_samples(p.h, h),
        ]
        .concat())
    })
}

fn round_trip_r31(
    subject: &str,
    curves: [(&NullCurve<3>, &DataFn); 2],
    opts: &VerifyOptions,
) -> Check {
    let pts: Vec<(usize, f64)> = (0..2)
        .flat_map(|i| {
            curves[i]
                .0
                .interval()
                .grid(CURVE_POINTS)
                .into_iter()
                .map(move |t| (i, t))
        })
        .collect();
    spec(
        subject,
        "round-trip",
        "weier_data(weier_curve(f, g)) = (f, g)",
        format!("2x{CURVE_POINTS}"),
        Metric::Scaled,
        1e-10,
    )
    .run(opts, &pts, |&(i, t)| {
        let (c, data) = curves[i];
        let p = weier_point_r31(c, t).map_err(err)?;
        let [f, g, _] = data(t)?;
        Ok([jet_samples(p.f, f), jet_samples(p.g, g)].concat())
    })
}

/// Canonical R⁴₂ data `(f, g, h)` with `f = ω/(2√|g′h′|)`.
fn canonical_r42_expected<'a>(
    g: &'a Expression,
    h: &'a Expression,
    omega: f64,
) -> impl Fn(f64) -> Result<[Dual; 3], String> + Sync + 'a {
    move |t| {
        let (gj, hj) = (g.eval_jet2(t).map_err(err)?, h.eval_jet2(t).map_err(err)?);
        let p = gj.d1 * hj.d1;
        let dp = gj.d2 * hj.d1 + gj.d1 * hj.d2;
        let f = 0.5 * omega / p.abs().sqrt();
        Ok([
            Dual::new(f, -0.5 * f * dp / p),
            Dual::new(gj.v, gj.d1),
            Dual::new(hj.v, hj.d1),
        ])
    }
}

/// Canonical R³₁ data `(f, g, g)` with `f = ω/(2|g′|)`.
fn canonical_r31_expected(
    g: &Expression,
    omega: f64,
) -> impl Fn(f64) -> Result<[Dual; 3], String> + Sync + '_ {
    move |t| {
        let j = g.eval_jet2(t).map_err(err)?;
        let f = 0.5 * omega / j.d1.abs();
        let g = Dual::new(j.v, j.d1);
        Ok([Dual::new(f, -f * j.d2 / j.d1), g, g])
    }
}

fn oracle_check(
    subject: &str,
    surface: &dyn CurvatureSurface,
    canonical: Option<&(dyn Fn(f64, f64) -> Result<CurvaturePair, SurfaceError> + Sync)>,
    domain: Rect,
    opts: &VerifyOptions,
) -> Check {
    let pts = domain.interior_grid(ORACLE_GRID);
    spec(
        subject,
        "curvature-oracle",
        "K = -(1/F) ∂₁∂₂ ln|F|",
        square_grid(ORACLE_GRID),
        Metric::Scaled,
        1e-4,
    )
    .run(opts, &pts, |&(t1, t2)| {
        let oracle = surface.oracle(t1, t2).map_err(err)?;
        let mut v = vec![Sample::eq(
            surface.curvature_pair(t1, t2).map_err(err)?.k,
            oracle,
        )];
        if let Some(c) = canonical {
            v.push(Sample::eq(c(t1, t2).map_err(err)?.k, oracle));
        }
        Ok(v)
    })
}

fn kappa_zero(subject: &str, surface: &MinimalSurface<3>, opts: &VerifyOptions) -> Check {
    let pts = surface.domain().interior_grid(ORACLE_GRID);
    spec(
        subject,
        "kappa-zero",
        "κ = 0 in R³₁",
        square_grid(ORACLE_GRID),
        Metric::Absolute,
        0.0,
    )
    .run(opts, &pts, |&(t1, t2)| {
        let c = surface.curvatures(t1, t2).map_err(err)?;
        Ok(vec![Sample::residual(c.kappa, 0.0)])
    })
}

fn canonical_r42_checks(
    subject: &str,
    data: &CanonicalSurfaceDataR42,
    opts: &VerifyOptions,
) -> Vec<Check> {
    let mut out = Vec::new();
    let (c1, c2, surface) = match data.curves().and_then(|(a, b)| {
        let s = build_surface(&a, &b)?;
        Ok((a, b, s))
    }) {
        Ok(v) => v,
        Err(e) => {
            let s = spec(
                subject,
                "build",
                "surface data is valid",
                String::new(),
                Metric::Absolute,
                0.0,
            );
            return vec![s.fail(opts, e)];
        }
    };
    out.push(null_condition(subject, &[&c1, &c2], opts));

    let e1 = canonical_r42_expected(&data.g1, &data.h1, data.omega1);
    let e2 = canonical_r42_expected(&data.g2, &data.h2, data.omega2);
    out.push(round_trip_r42(subject, [(&c1, &e1), (&c2, &e2)], opts));

    let canonical = |t1: f64, t2: f64| data.curvatures(t1, t2);
    out.push(oracle_check(
        subject,
        &surface,
        Some(&canonical),
        data.domain,
        opts,
    ));

    let grid = data.domain.interior_grid(ORACLE_GRID);
    out.push(
        spec(
            subject,
            "canonical-vs-general",
            "canonical (K, κ) = general (K, κ) with f = ω/(2√|g′h′|)",
            square_grid(ORACLE_GRID),
            Metric::Relative,
            1e-8,
        )
        .run(opts, &grid, |&(t1, t2)| {
            let a = data.curvatures(t1, t2).map_err(err)?;
            let b = surface.curvatures(t1, t2).map_err(err)?;
            Ok(vec![Sample::eq(a.k, b.k), Sample::eq(a.kappa, b.kappa)])
        }),
    );

    out.extend(correspondence_checks(subject, data, &surface, opts));
    out
}

fn correspondence_checks(
    subject: &str,
    data: &CanonicalSurfaceDataR42,
    surface: &MinimalSurface<4>,
    opts: &VerifyOptions,
) -> Vec<Check> {
    let grid_name = square_grid(RELATION_GRID);
    let pts = data.domain.interior_grid(RELATION_GRID);
    let mut out = Vec::new();
    let pair = match split_surface(data) {
        Ok(p) => p,
        Err(e) => {
            let s = spec(
                subject,
                "split",
                "split_surface succeeds",
                grid_name,
                Metric::Absolute,
                0.0,
            );
            return vec![s.fail(opts, e)];
        }
    };
    let ty = match surface.surface_type() {
        Ok(t) => t,
        Err(e) => {
            let s = spec(
                subject,
                "type",
                "surface type",
                grid_name,
                Metric::Absolute,
                0.0,
            );
            return vec![s.fail(opts, e)];
        }
    };
    let (sg, sh) = match (pair.m_g.surface(), pair.m_h.surface()) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            let s = spec(
                subject,
                "split",
                "split factors build",
                grid_name,
                Metric::Absolute,
                0.0,
            );
            return vec![s.fail(opts, e)];
        }
    };

    out.push(
        spec(
            subject,
            "type-sign",
            "type from α″² signs agrees with the sign of K² − κ²",
            grid_name.clone(),
            Metric::Absolute,
            0.0,
        )
        .run(opts, &pts, |&(t1, t2)| {
            let c = surface.curvatures(t1, t2).map_err(err)?;
            Ok(vec![Sample::residual(
                if ty.agrees_with(&c) { 0.0 } else { 1.0 },
                1.0,
            )])
        }),
    );

    out.push(
        spec(
            subject,
            "curvature-relation",
            match ty {
                SurfaceType::Third => "(κ, K) = η ⁴√|K_g K_h| (√|K_g| ± √|K_h|)/2",
                _ => "(K, κ) = η ⁴√|K_g K_h| (√|K_g| ± √|K_h|)/2",
            },
            grid_name.clone(),
            Metric::Relative,
            1e-6,
        )
        .run(opts, &pts, |&(t1, t2)| {
            let c = surface.curvatures(t1, t2).map_err(err)?;
            let k_g = sg.curvatures(t1, t2).map_err(err)?.k;
            let k_h = sh.curvatures(t1, t2).map_err(err)?.k;
            let eta = match ty {
                SurfaceType::Third => c.kappa.signum(),
                _ => c.k.signum(),
            };
            let r = curvature_relation(k_g, k_h, ty, eta).map_err(err)?;
            Ok(vec![Sample::eq(r.k, c.k), Sample::eq(r.kappa, c.kappa)])
        }),
    );

    out.push(
        spec(
            subject,
            "area-relation",
            "|F| = √|F_g F_h|",
            grid_name.clone(),
            Metric::Absolute,
            1e-8,
        )
        .run(opts, &pts, |&(t1, t2)| {
            let f = surface.first_form_f(t1, t2).map_err(err)?;
            let fg = sg.first_form_f(t1, t2).map_err(err)?;
            let fh = sh.first_form_f(t1, t2).map_err(err)?;
            Ok(vec![Sample::eq(f.abs(), (fg * fh).abs().sqrt())])
        }),
    );

    out.push(
        spec(
            subject,
            "sqrt-gauss-g",
            "√|K_g| = 4|g1′g2′|/(g1 − g2)²",
            grid_name.clone(),
            Metric::Absolute,
            1e-8,
        )
        .run(opts, &pts, |&(t1, t2)| {
            let k_g = sg.curvatures(t1, t2).map_err(err)?.k;
            let closed = pair.m_g.sqrt_abs_k(t1, t2).map_err(err)?;
            Ok(vec![Sample::eq(k_g.abs().sqrt(), closed)])
        }),
    );

    let merged = merge_surfaces(&pair, data.omega1, data.omega2);
    let resplit = merged.as_ref().ok().map(split_surface);
    let ok = match (&merged, &resplit) {
        (Ok(m), Some(Ok(p))) => m == data && *p == pair,
        _ => false,
    };
    out.push(
        spec(
            subject,
            "split-merge",
            "merge∘split = id, split∘merge = id",
            "expressions".into(),
            Metric::Absolute,
            0.0,
        )
        .run(opts, &[()], |_| {
            Ok(vec![Sample::residual(if ok { 0.0 } else { 1.0 }, 1.0)])
        }),
    );
    out
}

fn r31_checks(
    subject: &str,
    surface: &MinimalSurface<3>,
    canonical: Option<&crate::surface::CanonicalSurfaceDataR31>,
    data: [&DataFn; 2],
    opts: &VerifyOptions,
) -> Vec<Check> {
    let (a, b) = (surface.alpha1(), surface.alpha2());
    let mut out = vec![
        null_condition(subject, &[a, b], opts),
        round_trip_r31(subject, [(a, data[0]), (b, data[1])], opts),
    ];
    let k = canonical.map(|c| move |t1: f64, t2: f64| c.curvatures(t1, t2));
    let k_dyn = k
        .as_ref()
        .map(|f| f as &(dyn Fn(f64, f64) -> Result<CurvaturePair, SurfaceError> + Sync));
    out.push(oracle_check(
        subject,
        surface,
        k_dyn,
        surface.domain(),
        opts,
    ));
    out.push(kappa_zero(subject, surface, opts));
    out
}

/// Every check applicable to one surface.
pub fn surface_checks(subject: &str, data: &SurfaceData, opts: &VerifyOptions) -> Vec<Check> {
    let build_failure = |e: &dyn Display| {
        vec![spec(
            subject,
            "build",
            "surface data is valid",
            String::new(),
            Metric::Absolute,
            0.0,
        )
        .fail(opts, e)]
    };
    match data {
        SurfaceData::CanonicalR42(d) => canonical_r42_checks(subject, d, opts),
        SurfaceData::CanonicalR31(d) => {
            let surface = match d.surface() {
                Ok(s) => s,
                Err(e) => return build_failure(&e),
            };
            let e1 = canonical_r31_expected(&d.g1, d.omega1);
            let e2 = canonical_r31_expected(&d.g2, d.omega2);
            r31_checks(subject, &surface, Some(d), [&e1, &e2], opts)
        }
        SurfaceData::GeneralR42 {
            first,
            second,
            domain,
        } => {
            let built = weier_r42(first, domain.t1)
                .and_then(|a| Ok((a, weier_r42(second, domain.t2)?)))
                .map_err(SurfaceError::from)
                .and_then(|(a, b)| Ok((build_surface(&a, &b)?, a, b)));
            let (surface, a, b) = match built {
                Ok(v) => v,
                Err(e) => return build_failure(&e),
            };
            let expected = |w: &crate::curve::WeierstrassR42| {
                let w = w.clone();
                move |t: f64| -> Result<[Dual; 3], String> {
                    Ok([
                        eval_dual(&w.f, t)?,
                        eval_dual(&w.g, t)?,
                        eval_dual(&w.h, t)?,
                    ])
                }
            };
            let (e1, e2) = (expected(first), expected(second));
            vec![
                null_condition(subject, &[&a, &b], opts),
                round_trip_r42(subject, [(&a, &e1), (&b, &e2)], opts),
                oracle_check(subject, &surface, None, *domain, opts),
            ]
        }
        SurfaceData::GeneralR31 {
            first,
            second,
            domain,
        } => {
            let built = weier_r31(first, domain.t1)
                .and_then(|a| Ok((a, weier_r31(second, domain.t2)?)))
                .map_err(SurfaceError::from)
                .and_then(|(a, b)| build_surface(&a, &b));
            let surface = match built {
                Ok(v) => v,
                Err(e) => return build_failure(&e),
            };
            let expected = |w: &crate::curve::WeierstrassR31| {
                let w = w.clone();
                move |t: f64| -> Result<[Dual; 3], String> {
                    let g = eval_dual(&w.g, t)?;
                    Ok([eval_dual(&w.f, t)?, g, g])
                }
            };
            let (e1, e2) = (expected(first), expected(second));
            r31_checks(subject, &surface, None, [&e1, &e2], opts)
        }
    }
}

/// `x(t1, t2) = ½(sinh t1, cosh t1 − t2, sinh t2, t1 − cosh t2)`.
pub fn catenoid_position(t1: f64, t2: f64) -> LVec<4> {
    0.5 * LVec::<4>::new(t1.sinh(), t1.cosh() - t2, t2.sinh(), t1 - t2.cosh())
}

/// `K = −4 cosh t1 cosh t2 / (sinh t1 + sinh t2)³`.
pub fn catenoid_gauss(t1: f64, t2: f64) -> f64 {
    -4.0 * t1.cosh() * t2.cosh() / (t1.sinh() + t2.sinh()).powi(3)
}

/// The κ closed form quoted alongside the catenoid; it does not match the
/// curvature formulas.
pub fn catenoid_kappa_closed_form(t1: f64, t2: f64) -> f64 {
    (4.0 - 4.0 * t1.cosh() * t2.cosh()) / (t1.sinh() + t2.sinh()).powi(3)
}

/// Side of the grid used for the catenoid closed-form checks.
pub const CATENOID_GRID: usize = 20;

/// Closed-form checks on the merged catenoid plus the κ finding.
pub fn catenoid_checks(opts: &VerifyOptions) -> (Vec<Check>, Vec<Finding>) {
    let subject = "catenoid-merged";
    let data = corpus::catenoid_merged();
    let built = data
        .surface()
        .map(|s| (s, split_surface(&data).map_err(|e| e.to_string())));
    let (surface, pair) = match built {
        Ok((s, Ok(p))) => (s, p),
        Ok((_, Err(e))) => {
            let s = spec(
                subject,
                "split",
                "split_surface succeeds",
                String::new(),
                Metric::Absolute,
                0.0,
            );
            return (vec![s.fail(opts, e)], vec![]);
        }
        Err(e) => {
            let s = spec(
                subject,
                "build",
                "surface data is valid",
                String::new(),
                Metric::Absolute,
                0.0,
            );
            return (vec![s.fail(opts, e)], vec![]);
        }
    };
    let ts1 = data.domain.t1.grid(CATENOID_GRID);
    let ts2 = data.domain.t2.grid(CATENOID_GRID);
    let mut checks = Vec::new();

    let position = match surface.points(&ts1, &ts2) {
        Ok(points) => {
            let pairs: Vec<_> = ts1
                .iter()
                .flat_map(|&a| ts2.iter().map(move |&b| (a, b)))
                .collect();
            let offset = points[0] - catenoid_position(pairs[0].0, pairs[0].1);
            let idx: Vec<usize> = (0..points.len()).collect();
            spec(
                subject,
                "position-closed-form",
                "x = ½(sinh t1, cosh t1 − t2, sinh t2, t1 − cosh t2) + const",
                square_grid(CATENOID_GRID),
                Metric::Absolute,
                1e-8,
            )
            .run(opts, &idx, |&i| {
                let (t1, t2) = pairs[i];
                let d = points[i] - catenoid_position(t1, t2) - offset;
                Ok(d.iter().map(|x| Sample::residual(*x, 0.0)).collect())
            })
        }
        Err(e) => spec(
            subject,
            "position-closed-form",
            "",
            String::new(),
            Metric::Absolute,
            1e-8,
        )
        .fail(opts, e),
    };
    checks.push(position);

    let pts = data.domain.interior_grid(CATENOID_GRID);
    checks.push(
        spec(
            subject,
            "gauss-closed-form",
            "K = −4 cosh t1 cosh t2 / (sinh t1 + sinh t2)³",
            square_grid(CATENOID_GRID),
            Metric::Relative,
            1e-6,
        )
        .run(opts, &pts, |&(t1, t2)| {
            let expected = catenoid_gauss(t1, t2);
            let general = surface.curvatures(t1, t2).map_err(err)?;
            let canonical = data.curvatures(t1, t2).map_err(err)?;
            Ok(vec![
                Sample::eq(general.k, expected),
                Sample::eq(canonical.k, expected),
            ])
        }),
    );

    let (sg, sh) = match (pair.m_g.surface(), pair.m_h.surface()) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            let s = spec(
                subject,
                "split",
                "split factors build",
                String::new(),
                Metric::Absolute,
                0.0,
            );
            checks.push(s.fail(opts, e));
            return (checks, vec![]);
        }
    };
    let kappas = |t1: f64, t2: f64| -> Result<[f64; 3], String> {
        let general = surface.curvatures(t1, t2).map_err(err)?;
        let canonical = data.curvatures(t1, t2).map_err(err)?;
        let k_g = sg.curvatures(t1, t2).map_err(err)?.k;
        let k_h = sh.curvatures(t1, t2).map_err(err)?.k;
        let relation =
            curvature_relation(k_g, k_h, SurfaceType::First, general.k.signum()).map_err(err)?;
        Ok([general.kappa, canonical.kappa, relation.kappa])
    };
    checks.push(
        spec(
            subject,
            "kappa-agreement",
            "general κ = canonical κ = relation κ",
            square_grid(CATENOID_GRID),
            Metric::Relative,
            1e-6,
        )
        .run(opts, &pts, |&(t1, t2)| {
            let [a, b, c] = kappas(t1, t2)?;
            Ok(vec![Sample::eq(b, a), Sample::eq(c, a)])
        }),
    );

    let mut findings = Vec::new();
    let at = kappas(1.0, 1.0);
    let discrepancy: Result<f64, String> = pts.iter().try_fold(0.0f64, |m, &(t1, t2)| {
        let [a, ..] = kappas(t1, t2)?;
        let closed = catenoid_kappa_closed_form(t1, t2);
        Ok(m.max((closed - a).abs() / a.abs().max(REL_FLOOR)))
    });
    if let (Ok([formula, ..]), Ok(max_rel)) = (at, discrepancy) {
        findings.push(Finding {
            name: format!("{subject}/kappa-closed-form"),
            classification: INCONSISTENCY.to_string(),
            description: "the closed form κ = (4 − 4 cosh t1 cosh t2)/(sinh t1 + sinh t2)³ \
                          stated for this surface disagrees with the general, canonical and \
                          pair-relation κ, which agree with each other and with the K closed \
                          form; the formulas are kept as ground truth"
                .to_string(),
            point: [1.0, 1.0],
            formula_value: formula,
            closed_form_value: catenoid_kappa_closed_form(1.0, 1.0),
            grid: square_grid(CATENOID_GRID),
            max_rel_discrepancy: max_rel,
        });
    }
    (checks, findings)
}

/// Number of random matrices in the spinor suite.
pub const SPINOR_SAMPLES: usize = 100;

fn random_vec3(rng: &mut ChaCha8Rng) -> Vec3L {
    Vec3L::from_fn(|_, _| rng.gen_range(-1.0..1.0))
}

fn identity_deviation(m: &LMat<3>) -> f64 {
    (m - LMat::<3>::identity()).amax()
}

/// Multiplicativity, metric preservation, kernel and Möbius/curve consistency.
pub fn spinor_checks(opts: &VerifyOptions) -> Vec<Check> {
    let subject = "spinor";
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let grid = SPINOR_SAMPLES.to_string();
    let pairs: Vec<(SpinMatrix, SpinMatrix, Vec3L, Vec3L)> = (0..SPINOR_SAMPLES)
        .map(|k| {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            let a = SpinMatrix::random(&mut rng, s);
            let b = SpinMatrix::random(&mut rng, if k % 4 < 2 { 1.0 } else { -1.0 });
            (a, b, random_vec3(&mut rng), random_vec3(&mut rng))
        })
        .collect();
    let mut out = Vec::new();
    out.push(
        spec(
            subject,
            "multiplicativity",
            "Λ(B1 B2) = Λ(B1) Λ(B2)",
            grid.clone(),
            Metric::Scaled,
            1e-10,
        )
        .run(opts, &pairs, |(a, b, _, _)| {
            let ab = spinor_to_so21(&a.mul(b)).map_err(err)?;
            let la = spinor_to_so21(a).map_err(err)?;
            let lb = spinor_to_so21(b).map_err(err)?;
            let prod = la.matrix() * lb.matrix();
            Ok(ab
                .matrix()
                .iter()
                .zip(prod.iter())
                .map(|(x, y)| Sample::eq(*x, *y))
                .collect())
        }),
    );
    out.push(
        spec(
            subject,
            "metric",
            "⟨Λv, Λw⟩ = ⟨v, w⟩",
            grid.clone(),
            Metric::Scaled,
            1e-9,
        )
        .run(opts, &pairs, |(a, _, v, w)| {
            let l = spinor_to_so21(a).map_err(err)?;
            let lv = l.matrix() * v;
            let lw = l.matrix() * w;
            Ok(vec![Sample::eq(dot3(&lv, &lw), dot3(v, w))])
        }),
    );
    out.push(
        spec(
            subject,
            "kernel",
            "Λ(B) = I iff B = ±I",
            grid.clone(),
            Metric::Absolute,
            0.0,
        )
        .run(opts, &pairs, |(a, _, _, _)| {
            let mut v = Vec::new();
            for k in [SpinMatrix::IDENTITY, SpinMatrix::IDENTITY.neg()] {
                let dev = identity_deviation(spinor_to_so21(&k).map_err(err)?.matrix());
                v.push(Sample::residual(if dev <= 1e-12 { 0.0 } else { 1.0 }, 1.0));
            }
            let off = (a.a - 1.0)
                .abs()
                .max(a.b.abs())
                .max(a.c.abs())
                .max((a.d - 1.0).abs())
                .min(
                    (a.a + 1.0)
                        .abs()
                        .max(a.b.abs())
                        .max(a.c.abs())
                        .max((a.d + 1.0).abs()),
                );
            let dev = identity_deviation(spinor_to_so21(a).map_err(err)?.matrix());
            let wrong = off > 1e-6 && dev <= 1e-12;
            v.push(Sample::residual(if wrong { 1.0 } else { 0.0 }, 1.0));
            Ok(v)
        }),
    );
    out.push(mobius_check(opts, &mut rng));
    out
}

/// Points at which tangents are compared in the Möbius/curve check.
const MOBIUS_POINTS: usize = 50;

fn mobius_check(opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Check {
    let interval = corpus::random_interval();
    let ts = interval.grid(MOBIUS_POINTS);
    let mut cases = Vec::with_capacity(SPINOR_SAMPLES);
    while cases.len() < SPINOR_SAMPLES {
        let kind = MotionKind::ALL[cases.len() % 4];
        let b = SpinMatrix::random(rng, kind.required_det());
        let data = corpus::random_weierstrass_r31(rng, false);
        let clear = ts.iter().all(|&t| {
            data.g
                .eval(t)
                .map(|g| (b.c * g + b.d).abs() > 0.2)
                .unwrap_or(false)
        });
        if clear {
            cases.push((b, kind, data));
        }
    }
    spec(
        "spinor",
        "mobius-curve",
        "curve of (f̂, ĝ) = motion of the curve of (f, g), up to a constant",
        format!("{SPINOR_SAMPLES}x{MOBIUS_POINTS}"),
        Metric::Scaled,
        1e-8,
    )
    .run(opts, &cases, |(b, kind, data)| {
        let (f_hat, g_hat) = mobius_on_weierstrass(&data.f, &data.g, b, *kind).map_err(err)?;
        let moved = crate::curve::WeierstrassR31 { f: f_hat, g: g_hat };
        let c = weier_r31(data, interval).map_err(err)?;
        let c_hat = weier_r31(&moved, interval).map_err(err)?;
        let m = motion_for_kind(b, *kind).map_err(err)?;
        let mut v = Vec::new();
        for &t in &ts {
            let expected = m.apply_linear(&c.tangent(t).map_err(err)?);
            let actual = c_hat.tangent(t).map_err(err)?;
            v.extend((0..3).map(|i| Sample::eq(actual[i], expected[i])));
        }
        Ok(v)
    })
}

/// Number of random data sets per space in the null-condition suite.
pub const RANDOM_NULL_SETS: usize = 50;
/// Number of random nondegenerate curves per space in the natural-parameter suite.
pub const RANDOM_NATURAL_SETS: usize = 20;

/// Null condition on random Weierstrass data in both spaces.
pub fn random_null_checks(opts: &VerifyOptions) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(1));
    let interval = corpus::random_interval();
    let r42: Vec<_> = (0..RANDOM_NULL_SETS)
        .map(|_| corpus::random_weierstrass_r42(&mut rng, false))
        .collect();
    let r31: Vec<_> = (0..RANDOM_NULL_SETS)
        .map(|_| corpus::random_weierstrass_r31(&mut rng, false))
        .collect();
    let ts = interval.grid(CURVE_POINTS);
    let grid = format!("{RANDOM_NULL_SETS}x{CURVE_POINTS}");
    vec![
        spec(
            "random-r42",
            "null-condition",
            "dot(α′, α′) = 0",
            grid.clone(),
            Metric::Scaled,
            1e-10,
        )
        .run(opts, &r42, |d| {
            let c = weier_r42(d, interval).map_err(err)?;
            null_samples(&c, &ts)
        }),
        spec(
            "random-r31",
            "null-condition",
            "dot(α′, α′) = 0",
            grid,
            Metric::Scaled,
            1e-10,
        )
        .run(opts, &r31, |d| {
            let c = weier_r31(d, interval).map_err(err)?;
            null_samples(&c, &ts)
        }),
    ]
}

fn null_samples<const N: usize>(c: &NullCurve<N>, ts: &[f64]) -> Result<Vec<Sample>, String> {
    ts.iter()
        .map(|&t| {
            let v = c.tangent(t).map_err(err)?;
            Ok(Sample::residual(dot(&v, &v), v.norm_squared()))
        })
        .collect()
}

/// `|α″²| = 1` after natural reparametrization of random nondegenerate curves.
pub fn natural_param_checks(opts: &VerifyOptions, sets: usize, points: usize) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(2));
    let interval = corpus::random_interval();
    let r42: Vec<_> = (0..sets)
        .map(|_| corpus::random_weierstrass_r42(&mut rng, true))
        .collect();
    let r31: Vec<_> = (0..sets)
        .map(|_| corpus::random_weierstrass_r31(&mut rng, true))
        .collect();
    let grid = format!("{sets}x{points}");
    let identity = "|α″²| = 1 in the natural parameter";
    vec![
        spec(
            "random-r42",
            "natural-parameter",
            identity,
            grid.clone(),
            Metric::Absolute,
            1e-6,
        )
        .run(opts, &r42, |d| {
            let c = weier_r42(d, interval).map_err(err)?;
            natural_samples(&c, points)
        }),
        spec(
            "random-r31",
            "natural-parameter",
            identity,
            grid,
            Metric::Absolute,
            1e-6,
        )
        .run(opts, &r31, |d| {
            let c = weier_r31(d, interval).map_err(err)?;
            natural_samples(&c, points)
        }),
    ]
}

fn natural_samples<const N: usize>(c: &NullCurve<N>, points: usize) -> Result<Vec<Sample>, String> {
    let map = natural_param(c, c.interval().default_origin()).map_err(err)?;
    let s = map.s_interval();
    let nc = map.reparametrized();
    s.grid(points)
        .into_iter()
        .map(|s| Ok(Sample::eq(nc.accel_norm2(s).map_err(err)?.abs(), 1.0)))
        .collect()
}

/// `(K, κ) ↦ (ε K, ε det(A) κ)` under a motion with metric factor `ε`.
pub fn motion_checks_r42(
    subject: &str,
    surface: &MinimalSurface<4>,
    m: &Motion<4>,
    opts: &VerifyOptions,
) -> Check {
    let moved = surface.apply_motion(m);
    let eps = m.metric_factor();
    let det = determinant(m.matrix()).signum();
    let pts = surface.domain().interior_grid(RELATION_GRID);
    spec(
        subject,
        "motion",
        "moved (K, κ) = (ε K, ε det(A) κ)",
        square_grid(RELATION_GRID),
        Metric::Scaled,
        1e-8,
    )
    .run(opts, &pts, |&(t1, t2)| {
        let a = surface.curvatures(t1, t2).map_err(err)?;
        let b = moved.curvatures(t1, t2).map_err(err)?;
        Ok(vec![
            Sample::eq(b.k, eps * a.k),
            Sample::eq(b.kappa, eps * det * a.kappa),
        ])
    })
}

/// Gauss curvature is preserved by motions of R³₁.
pub fn motion_checks_r31(
    subject: &str,
    surface: &MinimalSurface<3>,
    m: &Motion<3>,
    opts: &VerifyOptions,
) -> Check {
    let moved = surface.apply_motion(m);
    let pts = surface.domain().interior_grid(RELATION_GRID);
    spec(
        subject,
        "motion",
        "moved K = K",
        square_grid(RELATION_GRID),
        Metric::Scaled,
        1e-8,
    )
    .run(opts, &pts, |&(t1, t2)| {
        let a = surface.curvatures(t1, t2).map_err(err)?;
        let b = moved.curvatures(t1, t2).map_err(err)?;
        Ok(vec![Sample::eq(b.k, a.k)])
    })
}

/// Runs every suite on a list of surfaces.
pub fn verify_entries(
    name: &str,
    entries: &[CorpusEntry],
    extra: bool,
    opts: &VerifyOptions,
) -> Report {
    let mut checks = Vec::new();
    let mut findings = Vec::new();
    for e in entries {
        checks.extend(surface_checks(e.name, &e.data, opts));
    }
    if extra {
        let (c, f) = catenoid_checks(opts);
        checks.extend(c);
        findings.extend(f);
        checks.extend(spinor_checks(opts));
    }
    Report::new(name, opts, checks, findings)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("unknown corpus `{0}` (expected one of: example, standard, empty)")]
pub struct UnknownCorpus(pub String);

/// Runs a built-in corpus.
pub fn verify_corpus(name: &str, opts: &VerifyOptions) -> Result<Report, UnknownCorpus> {
    Ok(match name {
        "example" | "paper-example" => verify_entries(name, &corpus::example_corpus(), true, opts),
        "standard" => {
            let mut r = verify_entries(name, &corpus::standard_corpus(), true, opts);
            r.checks.extend(random_null_checks(opts));
            r.checks.extend(natural_param_checks(opts, 5, 50));
            Report::new(name, opts, r.checks, r.findings)
        }
        "empty" => Report::new(name, opts, vec![], vec![]),
        other => return Err(UnknownCorpus(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_corpus_passes_with_finding() {
        let r = verify_corpus("example", &VerifyOptions::default()).unwrap();
        let failed: Vec<_> = r
            .failures()
            .map(|c| (&c.name, &c.error, c.max_scaled_error))
            .collect();
        assert!(r.passed, "{failed:?}");
        assert_eq!(r.findings.len(), 1);
        let f = &r.findings[0];
        assert_eq!(f.classification, INCONSISTENCY);
        assert!(
            (f.formula_value + 0.11741).abs() < 1e-5,
            "{}",
            f.formula_value
        );
        assert!((f.closed_form_value + 0.42546).abs() < 1e-5);
    }

    #[test]
    fn empty_and_tight() {
        let r = verify_corpus("empty", &VerifyOptions::default()).unwrap();
        assert!(r.checks.is_empty() && r.passed);
        let tight = VerifyOptions {
            tolerance: Some(1e-14),
            seed: 1,
        };
        let r = verify_corpus("example", &tight).unwrap();
        assert!(!r.passed);
        assert!(verify_corpus("nope", &tight).is_err());
    }
}
