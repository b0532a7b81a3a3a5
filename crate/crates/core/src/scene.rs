//! JSON scene files and the built-in scenes.
//!
//! A scene names a space, a representation and one (curve) or two (surface)
//! sets of generating expressions:
//!
//! ```json
//! {
//!   "name": "catenoid-merged",
//!   "space": "R42",
//!   "representation": "canonical",
//!   "curves": [
//!     { "g": "exp(t)", "h": "exp(t)", "omega": 1, "interval": [0.2, 2] },
//!     { "g": "-exp(t)", "h": "exp(-t)", "omega": 1, "interval": [0.2, 2] }
//!   ],
//!   "grid": [10, 10]
//! }
//! ```
//!
//! Validation errors carry a JSON pointer to the offending value.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::SurfaceData;
use crate::curve::{
    canonical_r31, canonical_r42, weier_r31, weier_r42, NullCurve, WeierstrassR31, WeierstrassR42,
};
use crate::domain::{Interval, Rect};
use crate::expr::Expression;
use crate::space::{LMat, LVec, Motion};
use crate::surface::{CanonicalSurfaceDataR31, CanonicalSurfaceDataR42};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pointer}: {message}")]
pub struct SceneError {
    /// JSON pointer into the scene document, `""` for the root.
    pub pointer: String,
    pub message: String,
}

impl SceneError {
    pub fn new(pointer: impl Into<String>, message: impl fmt::Display) -> Self {
        Self {
            pointer: pointer.into(),
            message: message.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Space {
    R42,
    R31,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::R42 => "R42",
            Space::R31 => "R31",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    /// `(g, h)` or `g` with `f` fixed by the natural parameter.
    Canonical,
    /// Free `(f, g, h)` or `(f, g)`.
    General,
}

/// Which coordinate is dropped when projecting R⁴₂ to 3D.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Projection {
    Drop1,
    Drop2,
    #[default]
    Drop3,
    Drop4,
}

impl Projection {
    pub fn dropped(self) -> usize {
        match self {
            Projection::Drop1 => 0,
            Projection::Drop2 => 1,
            Projection::Drop3 => 2,
            Projection::Drop4 => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Obj,
    Csv,
    Json,
}

/// Generating data of one curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    pub g: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    pub interval: Interval,
}

/// `n` or `[n, m]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridSpec {
    Square(usize),
    Rect([usize; 2]),
}

impl GridSpec {
    pub fn dims(self) -> (usize, usize) {
        match self {
            GridSpec::Square(n) => (n, n),
            GridSpec::Rect([n, m]) => (n, m),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projection: Option<Projection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    #[serde(default = "default_name")]
    pub name: String,
    pub space: Space,
    pub representation: Representation,
    #[serde(default = "default_variable")]
    pub variable: String,
    pub curves: Vec<CurveSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "is_default_output")]
    pub output: OutputSpec,
}

fn default_name() -> String {
    "scene".into()
}

fn default_variable() -> String {
    "t".into()
}

fn is_default_output(o: &OutputSpec) -> bool {
    *o == OutputSpec::default()
}

/// A scene's curve, in its space.
#[derive(Debug, Clone)]
pub enum SceneCurve {
    R42(NullCurve<4>),
    R31(NullCurve<3>),
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

impl Scene {
    /// Parses and validates a scene document.
    pub fn from_json(src: &str) -> Result<Self, SceneError> {
        let de = &mut serde_json::Deserializer::from_str(src);
        let scene: Scene = serde_path_to_error::deserialize(de)
            .map_err(|e| SceneError::new(pointer_of(e.path()), e.inner()))?;
        scene.validate()?;
        Ok(scene)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenes serialize")
    }

    /// Checks field presence, expression syntax, ω values and resolution.
    pub fn validate(&self) -> Result<(), SceneError> {
        if self.curves.is_empty() || self.curves.len() > 2 {
            return Err(SceneError::new("/curves", "expected one or two curves"));
        }
        if let Some(g) = self.grid {
            let (n, m) = g.dims();
            if n < 2 || m < 2 {
                return Err(SceneError::new("/grid", "resolution must be at least 2"));
            }
        }
        for i in 0..self.curves.len() {
            self.curve_expressions(i)?;
        }
        Ok(())
    }

    fn parse_field(
        &self,
        i: usize,
        field: &str,
        src: Option<&String>,
    ) -> Result<Expression, SceneError> {
        let pointer = format!("/curves/{i}/{field}");
        let src = src.ok_or_else(|| SceneError::new(&pointer, "missing field"))?;
        Expression::parse(src, &self.variable).map_err(|e| SceneError::new(&pointer, e))
    }

    fn forbid(&self, i: usize, field: &str, present: bool) -> Result<(), SceneError> {
        if present {
            let why = format!(
                "not used by {} {} scenes",
                self.representation_name(),
                self.space
            );
            return Err(SceneError::new(format!("/curves/{i}/{field}"), why));
        }
        Ok(())
    }

    fn representation_name(&self) -> &'static str {
        match self.representation {
            Representation::Canonical => "canonical",
            Representation::General => "general",
        }
    }

    /// `(f, g, h, ω)` of curve `i`; absent entries are `None`.
    #[allow(clippy::type_complexity)]
    fn curve_expressions(
        &self,
        i: usize,
    ) -> Result<(Option<Expression>, Expression, Option<Expression>, f64), SceneError> {
        let c = &self.curves[i];
        let g = self.parse_field(i, "g", Some(&c.g))?;
        let h = match self.space {
            Space::R42 => Some(self.parse_field(i, "h", c.h.as_ref())?),
            Space::R31 => {
                self.forbid(i, "h", c.h.is_some())?;
                None
            }
        };
        let (f, omega) = match self.representation {
            Representation::General => {
                self.forbid(i, "omega", c.omega.is_some())?;
                (Some(self.parse_field(i, "f", c.f.as_ref())?), 1.0)
            }
            Representation::Canonical => {
                self.forbid(i, "f", c.f.is_some())?;
                let omega = c.omega.unwrap_or(1.0);
                if omega != 1.0 && omega != -1.0 {
                    return Err(SceneError::new(
                        format!("/curves/{i}/omega"),
                        "omega must be 1 or -1",
                    ));
                }
                (None, omega)
            }
        };
        Ok((f, g, h, omega))
    }

    pub fn grid_dims(&self) -> Option<(usize, usize)> {
        self.grid.map(GridSpec::dims)
    }

    /// The curve `i` of the scene.
    pub fn curve(&self, i: usize) -> Result<SceneCurve, SceneError> {
        let (f, g, h, omega) = self.curve_expressions(i)?;
        let interval = self.curves[i].interval;
        let pointer = format!("/curves/{i}");
        let curve = match (self.space, self.representation) {
            (Space::R42, Representation::Canonical) => {
                canonical_r42(&g, h.as_ref().expect("validated"), omega, interval)
                    .map(SceneCurve::R42)
            }
            (Space::R31, Representation::Canonical) => {
                canonical_r31(&g, omega, interval).map(SceneCurve::R31)
            }
            (Space::R42, Representation::General) => {
                let data = WeierstrassR42 {
                    f: f.expect("validated"),
                    g,
                    h: h.expect("validated"),
                };
                weier_r42(&data, interval).map(SceneCurve::R42)
            }
            (Space::R31, Representation::General) => {
                let data = WeierstrassR31 {
                    f: f.expect("validated"),
                    g,
                };
                weier_r31(&data, interval).map(SceneCurve::R31)
            }
        };
        curve.map_err(|e| SceneError::new(pointer, e))
    }

    /// Surface data from a two-curve scene; canonical data is validated.
    pub fn surface_data(&self) -> Result<SurfaceData, SceneError> {
        if self.curves.len() != 2 {
            return Err(SceneError::new(
                "/curves",
                "a surface scene needs exactly two curves",
            ));
        }
        let (f1, g1, h1, w1) = self.curve_expressions(0)?;
        let (f2, g2, h2, w2) = self.curve_expressions(1)?;
        let domain = Rect::new(self.curves[0].interval, self.curves[1].interval);
        let wrap = |e: &dyn fmt::Display| SceneError::new("/curves", e);
        Ok(match (self.space, self.representation) {
            (Space::R42, Representation::Canonical) => SurfaceData::CanonicalR42(
                CanonicalSurfaceDataR42::new(
                    g1,
                    h1.expect("validated"),
                    g2,
                    h2.expect("validated"),
                    w1,
                    w2,
                    domain,
                )
                .map_err(|e| wrap(&e))?,
            ),
            (Space::R31, Representation::Canonical) => SurfaceData::CanonicalR31(
                CanonicalSurfaceDataR31::new(g1, g2, w1, w2, domain).map_err(|e| wrap(&e))?,
            ),
            (Space::R42, Representation::General) => SurfaceData::GeneralR42 {
                first: WeierstrassR42 {
                    f: f1.expect("validated"),
                    g: g1,
                    h: h1.expect("validated"),
                },
                second: WeierstrassR42 {
                    f: f2.expect("validated"),
                    g: g2,
                    h: h2.expect("validated"),
                },
                domain,
            },
            (Space::R31, Representation::General) => SurfaceData::GeneralR31 {
                first: WeierstrassR31 {
                    f: f1.expect("validated"),
                    g: g1,
                },
                second: WeierstrassR31 {
                    f: f2.expect("validated"),
                    g: g2,
                },
                domain,
            },
        })
    }

    /// A surface scene reproducing `data`.
    pub fn from_surface(name: &str, data: &SurfaceData, grid: Option<GridSpec>) -> Scene {
        let s = |e: &Expression| e.to_string();
        let canonical = |g: &Expression, h: Option<&Expression>, omega: f64, interval| CurveSpec {
            f: None,
            g: s(g),
            h: h.map(s),
            omega: Some(omega),
            interval,
        };
        let general =
            |f: &Expression, g: &Expression, h: Option<&Expression>, interval| CurveSpec {
                f: Some(s(f)),
                g: s(g),
                h: h.map(s),
                omega: None,
                interval,
            };
        let (space, representation, curves) = match data {
            SurfaceData::CanonicalR42(d) => (
                Space::R42,
                Representation::Canonical,
                vec![
                    canonical(&d.g1, Some(&d.h1), d.omega1, d.domain.t1),
                    canonical(&d.g2, Some(&d.h2), d.omega2, d.domain.t2),
                ],
            ),
            SurfaceData::CanonicalR31(d) => (
                Space::R31,
                Representation::Canonical,
                vec![
                    canonical(&d.g1, None, d.omega1, d.domain.t1),
                    canonical(&d.g2, None, d.omega2, d.domain.t2),
                ],
            ),
            SurfaceData::GeneralR42 {
                first,
                second,
                domain,
            } => (
                Space::R42,
                Representation::General,
                vec![
                    general(&first.f, &first.g, Some(&first.h), domain.t1),
                    general(&second.f, &second.g, Some(&second.h), domain.t2),
                ],
            ),
            SurfaceData::GeneralR31 {
                first,
                second,
                domain,
            } => (
                Space::R31,
                Representation::General,
                vec![
                    general(&first.f, &first.g, None, domain.t1),
                    general(&second.f, &second.g, None, domain.t2),
                ],
            ),
        };
        Scene {
            name: name.to_string(),
            space,
            representation,
            variable: "t".into(),
            curves,
            grid,
            output: OutputSpec::default(),
        }
    }
}

/// `{"space": "R31" | "R42", "matrix": [[...]], "translation": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MotionSpec {
    pub space: Space,
    pub matrix: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translation: Option<Vec<f64>>,
}

impl MotionSpec {
    pub fn from_json(src: &str) -> Result<Self, SceneError> {
        let de = &mut serde_json::Deserializer::from_str(src);
        serde_path_to_error::deserialize(de)
            .map_err(|e| SceneError::new(pointer_of(e.path()), e.inner()))
    }

    /// The motion in `N` dimensions; `N` must match the declared space.
    pub fn motion<const N: usize>(&self) -> Result<Motion<N>, SceneError> {
        let expected = match self.space {
            Space::R31 => 3,
            Space::R42 => 4,
        };
        if expected != N {
            return Err(SceneError::new(
                "/space",
                format!("expected a motion of R{}", if N == 3 { "31" } else { "42" }),
            ));
        }
        if self.matrix.len() != N {
            return Err(SceneError::new("/matrix", format!("expected {N} rows")));
        }
        let mut m = LMat::<N>::zeros();
        for (i, row) in self.matrix.iter().enumerate() {
            if row.len() != N {
                return Err(SceneError::new(
                    format!("/matrix/{i}"),
                    format!("expected {N} entries"),
                ));
            }
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        let t = match &self.translation {
            None => LVec::<N>::zeros(),
            Some(v) if v.len() == N => LVec::<N>::from_column_slice(v),
            Some(_) => {
                return Err(SceneError::new(
                    "/translation",
                    format!("expected {N} entries"),
                ))
            }
        };
        Motion::new(m, t).map_err(|e| SceneError::new("/matrix", e))
    }
}

/// Names accepted by [`builtin`].
pub const BUILTIN_SCENES: [&str; 4] = [
    "catenoid-gamma1",
    "catenoid-merged",
    "catenoid-a",
    "catenoid-b",
];

const CATENOID_GAMMA1: &str = r#"{
  "name": "catenoid-gamma1",
  "space": "R42",
  "representation": "canonical",
  "curves": [
    { "g": "exp(t)", "h": "exp(t)", "omega": 1, "interval": [-2, 2] }
  ],
  "grid": 41
}"#;

const CATENOID_MERGED: &str = r#"{
  "name": "catenoid-merged",
  "space": "R42",
  "representation": "canonical",
  "curves": [
    { "g": "exp(t)", "h": "exp(t)", "omega": 1, "interval": [0.2, 2] },
    { "g": "-exp(t)", "h": "exp(-t)", "omega": 1, "interval": [0.2, 2] }
  ],
  "grid": [10, 10]
}"#;

const CATENOID_A: &str = r#"{
  "name": "catenoid-a",
  "space": "R31",
  "representation": "canonical",
  "curves": [
    { "g": "exp(t)", "omega": 1, "interval": [0.2, 2] },
    { "g": "-exp(t)", "omega": 1, "interval": [0.2, 2] }
  ],
  "grid": [10, 10]
}"#;

const CATENOID_B: &str = r#"{
  "name": "catenoid-b",
  "space": "R31",
  "representation": "canonical",
  "curves": [
    { "g": "exp(t)", "omega": 1, "interval": [0.2, 2] },
    { "g": "exp(-t)", "omega": 1, "interval": [0.2, 2] }
  ],
  "grid": [10, 10]
}"#;

/// Source text of a built-in scene.
pub fn builtin_source(name: &str) -> Option<&'static str> {
    Some(match name {
        "catenoid-gamma1" => CATENOID_GAMMA1,
        "catenoid-merged" => CATENOID_MERGED,
        "catenoid-a" => CATENOID_A,
        "catenoid-b" => CATENOID_B,
        _ => return None,
    })
}

pub fn builtin(name: &str) -> Option<Scene> {
    builtin_source(name).map(|s| Scene::from_json(s).expect("built-in scenes are valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_parse() {
        for name in BUILTIN_SCENES {
            let s = builtin(name).unwrap();
            assert_eq!(s.name, name);
        }
        assert!(builtin("nope").is_none());
    }

    #[test]
    fn errors_carry_pointers() {
        let src = CATENOID_MERGED.replace("\"-exp(t)\"", "\"-exp(t\"");
        let e = Scene::from_json(&src).unwrap_err();
        assert_eq!(e.pointer, "/curves/1/g");

        let src = CATENOID_MERGED.replacen("[0.2, 2]", "[2, 0.2]", 1);
        let e = Scene::from_json(&src).unwrap_err();
        assert_eq!(e.pointer, "/curves/0/interval");

        let src = CATENOID_MERGED.replace(
            "\"omega\": 1, \"interval\": [0.2, 2] },\n    { \"g\": \"-exp(t)\", \"h\": \"exp(-t)\"",
            "\"omega\": 1, \"interval\": [0.2, 2] },\n    { \"g\": \"-exp(t)\"",
        );
        let e = Scene::from_json(&src).unwrap_err();
        assert_eq!(e.pointer, "/curves/1/h");

        let src = CATENOID_MERGED.replace("[10, 10]", "[1, 10]");
        assert_eq!(Scene::from_json(&src).unwrap_err().pointer, "/grid");

        let src = CATENOID_MERGED.replace("\"space\"", "\"spaec\"");
        assert!(Scene::from_json(&src).is_err());
    }

    #[test]
    fn surface_round_trip() {
        let s = builtin("catenoid-merged").unwrap();
        let d = s.surface_data().unwrap();
        let back = Scene::from_surface("catenoid-merged", &d, s.grid);
        assert_eq!(back.surface_data().unwrap(), d);
        let reparsed = Scene::from_json(&back.to_json()).unwrap();
        assert_eq!(reparsed.surface_data().unwrap(), d);
    }

    #[test]
    fn motion_specs() {
        let m = MotionSpec::from_json(
            r#"{"space":"R42","matrix":[[0,1,0,0],[1,0,0,0],[0,0,0,1],[0,0,1,0]]}"#,
        )
        .unwrap()
        .motion::<4>()
        .unwrap();
        assert!(m.anti_isometry());
        let bad =
            MotionSpec::from_json(r#"{"space":"R31","matrix":[[2,0,0],[0,1,0],[0,0,1]]}"#).unwrap();
        assert_eq!(bad.motion::<3>().unwrap_err().pointer, "/matrix");
        assert_eq!(bad.motion::<4>().unwrap_err().pointer, "/space");
        let e = MotionSpec::from_json(r#"{"space":"R31","matrix":[[1,0,0]],"translation":"x"}"#)
            .unwrap_err();
        assert_eq!(e.pointer, "/translation");
    }

    #[test]
    fn crossing_domain_reports_witness() {
        let src = CATENOID_MERGED.replace("[0.2, 2]", "[-1, 1]");
        let e = Scene::from_json(&src).unwrap().surface_data().unwrap_err();
        assert_eq!(e.pointer, "/curves");
        assert!(e.message.contains("h1(t1) - h2(t2)"), "{}", e.message);
    }
}
