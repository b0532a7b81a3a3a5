//! Named test surfaces and random Weierstrass data.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::curve::{weier_r31, weier_r42, WeierstrassR31, WeierstrassR42};
use crate::domain::{Interval, Rect};
use crate::expr::Expression;
use crate::surface::{
    build_surface, CanonicalSurfaceDataR31, CanonicalSurfaceDataR42, MinimalSurface, SurfaceError,
};

/// Surface data in one of the supported representations.
#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceData {
    CanonicalR42(CanonicalSurfaceDataR42),
    CanonicalR31(CanonicalSurfaceDataR31),
    GeneralR42 {
        first: WeierstrassR42,
        second: WeierstrassR42,
        domain: Rect,
    },
    GeneralR31 {
        first: WeierstrassR31,
        second: WeierstrassR31,
        domain: Rect,
    },
}

/// A surface built from [`SurfaceData`].
#[derive(Debug, Clone)]
pub enum BuiltSurface {
    R42(MinimalSurface<4>),
    R31(MinimalSurface<3>),
}

impl SurfaceData {
    pub fn domain(&self) -> Rect {
        match self {
            SurfaceData::CanonicalR42(d) => d.domain,
            SurfaceData::CanonicalR31(d) => d.domain,
            SurfaceData::GeneralR42 { domain, .. } | SurfaceData::GeneralR31 { domain, .. } => {
                *domain
            }
        }
    }

    pub fn build(&self) -> Result<BuiltSurface, SurfaceError> {
        Ok(match self {
            SurfaceData::CanonicalR42(d) => BuiltSurface::R42(d.surface()?),
            SurfaceData::CanonicalR31(d) => BuiltSurface::R31(d.surface()?),
            SurfaceData::GeneralR42 {
                first,
                second,
                domain,
            } => BuiltSurface::R42(build_surface(
                &weier_r42(first, domain.t1)?,
                &weier_r42(second, domain.t2)?,
            )?),
            SurfaceData::GeneralR31 {
                first,
                second,
                domain,
            } => BuiltSurface::R31(build_surface(
                &weier_r31(first, domain.t1)?,
                &weier_r31(second, domain.t2)?,
            )?),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub data: SurfaceData,
}

fn e(s: &str) -> Expression {
    Expression::parse(s, "t").expect("corpus expressions parse")
}

fn rect(a: (f64, f64), b: (f64, f64)) -> Rect {
    Rect::new(
        Interval::new(a.0, a.1).expect("corpus interval"),
        Interval::new(b.0, b.1).expect("corpus interval"),
    )
}

#[allow(clippy::too_many_arguments)]
fn r42(
    g1: &str,
    h1: &str,
    g2: &str,
    h2: &str,
    omega2: f64,
    d1: (f64, f64),
    d2: (f64, f64),
) -> SurfaceData {
    SurfaceData::CanonicalR42(
        CanonicalSurfaceDataR42::new(e(g1), e(h1), e(g2), e(h2), 1.0, omega2, rect(d1, d2))
            .expect("corpus data is valid"),
    )
}

fn r31(g1: &str, g2: &str, d1: (f64, f64), d2: (f64, f64)) -> SurfaceData {
    SurfaceData::CanonicalR31(
        CanonicalSurfaceDataR31::new(e(g1), e(g2), 1.0, 1.0, rect(d1, d2))
            .expect("corpus data is valid"),
    )
}

/// The merged catenoid in R⁴₂ on `[0.2, 2]²`.
pub fn catenoid_merged() -> CanonicalSurfaceDataR42 {
    match r42(
        "exp(t)",
        "exp(t)",
        "-exp(t)",
        "exp(-t)",
        1.0,
        (0.2, 2.0),
        (0.2, 2.0),
    ) {
        SurfaceData::CanonicalR42(d) => d,
        _ => unreachable!(),
    }
}

/// Lorentz hyperbolic catenoid of the first kind, `g1 = e^t`, `g2 = -e^t`.
pub fn catenoid_a() -> CanonicalSurfaceDataR31 {
    match r31("exp(t)", "-exp(t)", (0.2, 2.0), (0.2, 2.0)) {
        SurfaceData::CanonicalR31(d) => d,
        _ => unreachable!(),
    }
}

/// Lorentz hyperbolic catenoid of the second kind, `g1 = e^t`, `g2 = e^-t`.
pub fn catenoid_b() -> CanonicalSurfaceDataR31 {
    match r31("exp(t)", "exp(-t)", (0.2, 2.0), (0.2, 2.0)) {
        SurfaceData::CanonicalR31(d) => d,
        _ => unreachable!(),
    }
}

/// The worked catenoid example: the R⁴₂ surface and its two R³₁ factors.
pub fn example_corpus() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry {
            name: "catenoid-merged",
            data: SurfaceData::CanonicalR42(catenoid_merged()),
        },
        CorpusEntry {
            name: "catenoid-a",
            data: SurfaceData::CanonicalR31(catenoid_a()),
        },
        CorpusEntry {
            name: "catenoid-b",
            data: SurfaceData::CanonicalR31(catenoid_b()),
        },
    ]
}

/// Surfaces of every type in both spaces, canonical and general.
pub fn standard_corpus() -> Vec<CorpusEntry> {
    let mut v = example_corpus();
    v.extend([
        CorpusEntry {
            name: "first-exp",
            data: r42("t", "exp(t)", "t", "0.5*t", 1.0, (1.0, 2.0), (-1.0, 0.0)),
        },
        CorpusEntry {
            name: "first-diagonal",
            data: r42("t", "t", "t", "t", 1.0, (2.0, 3.0), (0.0, 1.0)),
        },
        CorpusEntry {
            name: "second-linear",
            data: r42("t", "-t", "t", "-t", -1.0, (2.0, 3.0), (0.0, 1.0)),
        },
        CorpusEntry {
            name: "second-exp",
            data: r42(
                "exp(t)",
                "-t - 2",
                "t",
                "-exp(t)",
                -1.0,
                (0.0, 1.0),
                (-2.0, -1.0),
            ),
        },
        CorpusEntry {
            name: "third-linear",
            data: r42("t", "t", "t", "-t", 1.0, (2.0, 3.0), (0.0, 1.0)),
        },
        CorpusEntry {
            name: "third-exp",
            data: r42("exp(t)", "t", "-t", "t", -1.0, (0.0, 1.0), (1.5, 2.5)),
        },
        CorpusEntry {
            name: "r31-cubic",
            data: r31("t^3 + t", "-exp(t)", (0.1, 1.0), (0.0, 1.0)),
        },
        CorpusEntry {
            name: "general-r42",
            data: SurfaceData::GeneralR42 {
                first: WeierstrassR42 {
                    f: e("1 + t^2"),
                    g: e("t"),
                    h: e("exp(t)"),
                },
                second: WeierstrassR42 {
                    f: e("0.5"),
                    g: e("-t - 0.5"),
                    h: e("sin(t)"),
                },
                domain: rect((1.0, 2.0), (-1.0, 0.0)),
            },
        },
        CorpusEntry {
            name: "general-r31",
            data: SurfaceData::GeneralR31 {
                first: WeierstrassR31 {
                    f: e("exp(t)"),
                    g: e("t^2 + 1"),
                },
                second: WeierstrassR31 {
                    f: e("2 + cos(t)"),
                    g: e("sinh(t)"),
                },
                domain: rect((0.5, 1.5), (-1.0, 0.5)),
            },
        },
    ]);
    v
}

fn coef<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let v: f64 = rng.gen_range(lo..hi);
    let s = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    (s * v * 1000.0).round() / 1000.0
}

fn parse(s: String) -> Expression {
    Expression::parse(&s, "t").expect("generated expressions parse")
}

/// A function with nonvanishing derivative on `[-1, 1]`.
pub fn random_monotone<R: Rng>(rng: &mut R) -> Expression {
    let a = coef(rng, 0.5, 2.0);
    let b = coef(rng, 0.3, 1.5);
    let c = coef(rng, 0.5, 2.0).abs();
    let forms = [
        format!("{a}*t + {b}"),
        format!("{a}*exp({b}*t)"),
        format!("{a}*sinh(t) + {b}"),
        format!("{a}*(t^3 + {c}*t)"),
        format!("{a}*tanh(t) + {b}"),
    ];
    parse(forms.choose(rng).expect("nonempty").clone())
}

/// A function without zeros on `[-1, 1]`.
pub fn random_nonvanishing<R: Rng>(rng: &mut R) -> Expression {
    let a = coef(rng, 0.5, 2.0);
    let b = coef(rng, 0.3, 1.5);
    let c = coef(rng, 0.2, 2.0).abs();
    let forms = [
        format!("{a}"),
        format!("{a}*exp({b}*t)"),
        format!("{a}*(1 + {c}*t^2)"),
        format!("{a}*(2 + sin({b}*t))"),
    ];
    parse(forms.choose(rng).expect("nonempty").clone())
}

/// Any smooth function on `[-1, 1]`, possibly with critical points.
pub fn random_smooth<R: Rng>(rng: &mut R) -> Expression {
    if rng.gen_bool(0.5) {
        return random_monotone(rng);
    }
    let a = coef(rng, 0.5, 2.0);
    let b = coef(rng, 0.3, 2.0);
    let c = coef(rng, 0.0, 1.0);
    let forms = [
        format!("{a}*cos({b}*t) + {c}"),
        format!("{a}*t^2 + {b}*t"),
        format!("{a}*sin({b}*t)*exp({c}*t)"),
    ];
    parse(forms.choose(rng).expect("nonempty").clone())
}

/// The interval random data is generated for.
pub fn random_interval() -> Interval {
    Interval::new(-1.0, 1.0).expect("static interval")
}

/// Random R⁴₂ data; nondegenerate when `nondegenerate` is set.
pub fn random_weierstrass_r42<R: Rng>(rng: &mut R, nondegenerate: bool) -> WeierstrassR42 {
    let f = random_nonvanishing(rng);
    let (g, h) = if nondegenerate {
        (random_monotone(rng), random_monotone(rng))
    } else {
        (random_smooth(rng), random_smooth(rng))
    };
    WeierstrassR42 { f, g, h }
}

/// Random R³₁ data; nondegenerate when `nondegenerate` is set.
pub fn random_weierstrass_r31<R: Rng>(rng: &mut R, nondegenerate: bool) -> WeierstrassR31 {
    let f = random_nonvanishing(rng);
    let g = if nondegenerate {
        random_monotone(rng)
    } else {
        random_smooth(rng)
    };
    WeierstrassR31 { f, g }
}
