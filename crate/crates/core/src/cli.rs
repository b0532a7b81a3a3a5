//! The `lw` command line: scene files in, tables, meshes, scenes and
//! verification reports out.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or scene error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::corpus::{BuiltSurface, SurfaceData};
use crate::correspondence::{merge_surfaces, split_surface, SurfacePair};
use crate::curve::{natural_param, NullCurve};
use crate::scene::{self, Format, MotionSpec, Projection, Scene, SceneCurve, SceneError};
use crate::space::{embed_r31, LVec};
use crate::surface::{MinimalSurface, SurfaceType};
use crate::verify::{self, Report, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Default number of curve samples.
pub const DEFAULT_CURVE_GRID: usize = 101;
/// Default surface grid side.
pub const DEFAULT_SURFACE_GRID: usize = 20;

#[derive(Debug, Parser)]
#[command(
    name = "lw",
    version,
    about = "Null curves and minimal Lorentz surfaces in R³₁ and R⁴₂"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a null curve: t, α, α′, α″², s.
    Curve(CurveArgs),
    /// Sample a surface: OBJ mesh and/or table of t1, t2, x, F, K, κ, type.
    Surface(SurfaceArgs),
    /// Split a canonical R⁴₂ surface scene into its two R³₁ surface scenes.
    Split(SplitArgs),
    /// Merge two canonical R³₁ surface scenes (g pair, then h pair).
    Merge(MergeArgs),
    /// Run the verification suites on a scene or a built-in corpus.
    Verify(VerifyArgs),
    /// Print a built-in scene.
    Scene {
        /// One of catenoid-gamma1, catenoid-merged, catenoid-a, catenoid-b.
        name: String,
    },
}

/// `N` or `NxM`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridArg(pub usize, pub usize);

fn parse_grid(s: &str) -> Result<GridArg, String> {
    let num = |p: &str| {
        p.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad grid size `{p}`: {e}"))
    };
    let g = match s.split_once(['x', 'X']) {
        Some((a, b)) => GridArg(num(a)?, num(b)?),
        None => {
            let n = num(s)?;
            GridArg(n, n)
        }
    };
    if g.0 < 2 || g.1 < 2 {
        return Err("grid resolution must be at least 2".into());
    }
    Ok(g)
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// Scene file, or a built-in scene name.
    #[arg(long)]
    pub scene: String,
    /// Output directory; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Number of samples.
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<GridArg>,
    /// csv or json.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    /// Scene file, or a built-in scene name.
    #[arg(long)]
    pub scene: String,
    /// Output directory; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// `N` or `NxM` samples in (t1, t2).
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<GridArg>,
    /// Coordinate dropped in the OBJ mesh.
    #[arg(long, value_enum)]
    pub projection: Option<Projection>,
    /// obj, csv or json; with --out and no format both OBJ and CSV are written.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Replaces every check's tolerance.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

impl ReportArgs {
    fn options(&self) -> VerifyOptions {
        VerifyOptions {
            tolerance: self.tolerance,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Args)]
pub struct SplitArgs {
    /// Scene file, or a built-in scene name.
    #[arg(long)]
    pub scene: String,
    /// Output directory; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct MergeArgs {
    /// The g scene, then the h scene.
    #[arg(long, num_args = 1, required = true)]
    pub scene: Vec<String>,
    /// Output directory; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Sign ω1 of the merged first curve.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub omega1: f64,
    /// Sign ω2 of the merged second curve.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub omega2: f64,
    /// Name of the merged scene.
    #[arg(long, default_value = "merged")]
    pub name: String,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Scene file, or a built-in scene name.
    #[arg(long, conflicts_with = "corpus")]
    pub scene: Option<String>,
    /// example (alias paper-example), standard or empty.
    #[arg(long)]
    pub corpus: Option<String>,
    /// MotionSpec file; adds a curvature check on the moved surface.
    #[arg(long, requires = "scene")]
    pub motion: Option<PathBuf>,
    /// Directory for report.json; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{source_name}: {error}")]
    Scene {
        source_name: String,
        error: SceneError,
    },
    #[error("{path}: {error}")]
    Io {
        path: PathBuf,
        error: std::io::Error,
    },
    #[error("{0}")]
    Compute(String),
    /// Verification ran and at least one check failed.
    #[error("verification failed: {0}")]
    Verify(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify(_) => EXIT_VERIFY,
            _ => EXIT_USAGE,
        }
    }
}

type Result<T, E = CliError> = std::result::Result<T, E>;

fn compute(e: impl std::fmt::Display) -> CliError {
    CliError::Compute(e.to_string())
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    // commands write into a buffer so the pool closure stays `Send`
    let mut buf = Vec::new();
    let result = with_pool(|| dispatch(&cli.command, &mut buf));
    let _ = stdout.write_all(&buf);
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "lw: {e}");
            e.exit_code()
        }
    }
}

/// Runs `f` on a pool capped by `LW_THREADS` when set.
fn with_pool<F: FnOnce() -> Result<()> + Send>(f: F) -> Result<()> {
    let Ok(v) = std::env::var("LW_THREADS") else {
        return f();
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "LW_THREADS must be a positive integer, found `{v}`"
        ))
    })?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    pool.install(f)
}

pub fn dispatch(cmd: &Command, stdout: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Curve(a) => cmd_curve(a, stdout),
        Command::Surface(a) => cmd_surface(a, stdout),
        Command::Split(a) => cmd_split(a, stdout),
        Command::Merge(a) => cmd_merge(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdout),
        Command::Scene { name } => {
            let src = scene::builtin_source(name).ok_or_else(|| unknown_builtin(name))?;
            write_out(stdout, src)?;
            write_out(stdout, "\n")
        }
    }
}

fn unknown_builtin(name: &str) -> CliError {
    CliError::Usage(format!(
        "no scene file or built-in scene named `{name}` (built-ins: {})",
        scene::BUILTIN_SCENES.join(", ")
    ))
}

fn write_out(w: &mut dyn Write, s: &str) -> Result<()> {
    w.write_all(s.as_bytes()).map_err(|error| CliError::Io {
        path: "<stdout>".into(),
        error,
    })
}

/// Loads a scene from a file path, `builtin:NAME`, or a bare built-in name.
pub fn load_scene(arg: &str) -> Result<Scene> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return scene::builtin(name).ok_or_else(|| unknown_builtin(name));
    }
    let path = Path::new(arg);
    if path.is_file() {
        let src = std::fs::read_to_string(path).map_err(|error| CliError::Io {
            path: path.into(),
            error,
        })?;
        return Scene::from_json(&src).map_err(|error| CliError::Scene {
            source_name: arg.into(),
            error,
        });
    }
    scene::builtin(arg).ok_or_else(|| unknown_builtin(arg))
}

fn scene_err(scene: &Scene, error: SceneError) -> CliError {
    CliError::Scene {
        source_name: scene.name.clone(),
        error,
    }
}

fn write_file(dir: &Path, file: &str, contents: &str, stdout: &mut dyn Write) -> Result<()> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |error| CliError::Io { path, error }
    };
    std::fs::create_dir_all(dir).map_err(io(dir))?;
    let path = dir.join(file);
    std::fs::write(&path, contents).map_err(io(&path))?;
    write_out(stdout, &format!("{}\n", path.display()))
}

fn fmt_row(out: &mut String, values: impl IntoIterator<Item = String>) {
    let row: Vec<String> = values.into_iter().collect();
    out.push_str(&row.join(","));
    out.push('\n');
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveRow {
    pub t: f64,
    pub x: Vec<f64>,
    pub dx: Vec<f64>,
    pub accel_norm2: f64,
    pub s: Option<f64>,
}

fn curve_rows<const N: usize>(c: &NullCurve<N>, ts: &[f64]) -> Result<Vec<CurveRow>> {
    let positions = c.positions(ts).map_err(compute)?;
    let map = if c.is_nondegenerate().map_err(compute)? {
        Some(natural_param(c, c.t0()).map_err(compute)?)
    } else {
        None
    };
    ts.par_iter()
        .zip(positions.par_iter())
        .map(|(&t, x)| {
            let dx = c.tangent(t).map_err(compute)?;
            Ok(CurveRow {
                t,
                x: x.iter().copied().collect(),
                dx: dx.iter().copied().collect(),
                accel_norm2: c.accel_norm2(t).map_err(compute)?,
                s: map
                    .as_ref()
                    .map(|m| m.forward(t))
                    .transpose()
                    .map_err(compute)?,
            })
        })
        .collect()
}

/// CSV table of a curve.
pub fn curve_csv(rows: &[CurveRow]) -> String {
    let n = rows.first().map_or(0, |r| r.x.len());
    let mut out = String::new();
    let mut header = vec!["t".to_string()];
    header.extend((1..=n).map(|i| format!("x{i}")));
    header.extend((1..=n).map(|i| format!("dx{i}")));
    header.extend(["accel_norm2".into(), "s".into()]);
    fmt_row(&mut out, header);
    for r in rows {
        let mut v = vec![r.t.to_string()];
        v.extend(r.x.iter().map(f64::to_string));
        v.extend(r.dx.iter().map(f64::to_string));
        v.push(r.accel_norm2.to_string());
        v.push(r.s.map(|s| s.to_string()).unwrap_or_default());
        fmt_row(&mut out, v);
    }
    out
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

pub fn cmd_curve(a: &CurveArgs, stdout: &mut dyn Write) -> Result<()> {
    let scene = load_scene(&a.scene)?;
    if scene.curves.len() != 1 {
        return Err(scene_err(
            &scene,
            SceneError::new("/curves", "a curve scene needs exactly one curve"),
        ));
    }
    let n = match a.grid {
        Some(GridArg(n, m)) if n != m => {
            return Err(CliError::Usage("curve grids take a single size N".into()));
        }
        Some(GridArg(n, _)) => n,
        None => scene.grid_dims().map_or(DEFAULT_CURVE_GRID, |d| d.0),
    };
    let curve = scene.curve(0).map_err(|e| scene_err(&scene, e))?;
    let rows = match &curve {
        SceneCurve::R42(c) => curve_rows(c, &c.interval().grid(n))?,
        SceneCurve::R31(c) => curve_rows(c, &c.interval().grid(n))?,
    };
    let format = a.format.or(scene.output.format).unwrap_or(Format::Csv);
    let (text, ext) = match format {
        Format::Csv => (curve_csv(&rows), "csv"),
        Format::Json => (
            to_json(&json!({ "name": scene.name, "space": scene.space, "rows": rows })),
            "json",
        ),
        Format::Obj => return Err(CliError::Usage("curves export csv or json".into())),
    };
    match &a.out {
        Some(dir) => write_file(dir, &format!("{}.{ext}", scene.name), &text, stdout),
        None => write_out(stdout, &text),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SurfaceRow {
    pub t1: f64,
    pub t2: f64,
    pub x: Vec<f64>,
    #[serde(rename = "F")]
    pub f: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub kappa: f64,
    #[serde(rename = "type")]
    pub surface_type: Option<SurfaceType>,
}

/// Sampled surface on a tensor grid, rows with `t1` outer.
#[derive(Debug, Clone, Serialize)]
pub struct SurfaceTable {
    pub name: String,
    pub dims: [usize; 2],
    pub rows: Vec<SurfaceRow>,
}

trait TableSurface: Sync {
    fn sample(&self, t1s: &[f64], t2s: &[f64]) -> Result<Vec<Vec<f64>>>;
    fn values(&self, t1: f64, t2: f64) -> Result<(f64, f64, f64)>;
    fn kind(&self) -> Option<SurfaceType>;
}

fn surface_kind<const N: usize>(s: &MinimalSurface<N>) -> Option<SurfaceType> {
    let a = s.alpha1().accel_sign().ok()?;
    let b = s.alpha2().accel_sign().ok()?;
    Some(SurfaceType::from_signs(a, b))
}

fn vecs<const N: usize>(v: Vec<LVec<N>>) -> Vec<Vec<f64>> {
    v.into_iter().map(|p| p.iter().copied().collect()).collect()
}

impl TableSurface for MinimalSurface<4> {
    fn sample(&self, t1s: &[f64], t2s: &[f64]) -> Result<Vec<Vec<f64>>> {
        Ok(vecs(self.points(t1s, t2s).map_err(compute)?))
    }
    fn values(&self, t1: f64, t2: f64) -> Result<(f64, f64, f64)> {
        let c = self.curvatures(t1, t2).map_err(compute)?;
        Ok((self.first_form_f(t1, t2).map_err(compute)?, c.k, c.kappa))
    }
    fn kind(&self) -> Option<SurfaceType> {
        surface_kind(self)
    }
}

impl TableSurface for MinimalSurface<3> {
    fn sample(&self, t1s: &[f64], t2s: &[f64]) -> Result<Vec<Vec<f64>>> {
        Ok(vecs(self.points(t1s, t2s).map_err(compute)?))
    }
    fn values(&self, t1: f64, t2: f64) -> Result<(f64, f64, f64)> {
        let c = self.curvatures(t1, t2).map_err(compute)?;
        Ok((self.first_form_f(t1, t2).map_err(compute)?, c.k, c.kappa))
    }
    fn kind(&self) -> Option<SurfaceType> {
        surface_kind(self)
    }
}

fn table_of(name: &str, s: &dyn TableSurface, t1s: &[f64], t2s: &[f64]) -> Result<SurfaceTable> {
    let points = s.sample(t1s, t2s)?;
    let kind = s.kind();
    let params: Vec<(f64, f64)> = t1s
        .iter()
        .flat_map(|&a| t2s.iter().map(move |&b| (a, b)))
        .collect();
    let rows = params
        .par_iter()
        .zip(points.into_par_iter())
        .map(|(&(t1, t2), x)| {
            let (f, k, kappa) = s.values(t1, t2)?;
            Ok(SurfaceRow {
                t1,
                t2,
                x,
                f,
                k,
                kappa,
                surface_type: kind,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SurfaceTable {
        name: name.to_string(),
        dims: [t1s.len(), t2s.len()],
        rows,
    })
}

/// Samples a surface on an `n × m` grid including the domain corners.
pub fn surface_table(name: &str, data: &SurfaceData, n: usize, m: usize) -> Result<SurfaceTable> {
    let domain = data.domain();
    let (t1s, t2s) = (domain.t1.grid(n), domain.t2.grid(m));
    match data.build().map_err(compute)? {
        BuiltSurface::R42(s) => table_of(name, &s, &t1s, &t2s),
        BuiltSurface::R31(s) => table_of(name, &s, &t1s, &t2s),
    }
}

pub fn surface_csv(table: &SurfaceTable) -> String {
    let n = table.rows.first().map_or(0, |r| r.x.len());
    let mut out = String::new();
    let mut header = vec!["t1".to_string(), "t2".to_string()];
    header.extend((1..=n).map(|i| format!("x{i}")));
    header.extend(["F", "K", "kappa", "type"].map(String::from));
    fmt_row(&mut out, header);
    for r in &table.rows {
        let mut v = vec![r.t1.to_string(), r.t2.to_string()];
        v.extend(r.x.iter().map(f64::to_string));
        v.extend([r.f, r.k, r.kappa].map(|x| x.to_string()));
        v.push(r.surface_type.map(|t| t.to_string()).unwrap_or_default());
        fmt_row(&mut out, v);
    }
    out
}

/// Wavefront OBJ: one vertex per sample, two triangles per grid cell.
pub fn surface_obj(table: &SurfaceTable, projection: Projection) -> String {
    let [n, m] = table.dims;
    let mut out = format!("# {} {}x{}\n", table.name, n, m);
    for r in &table.rows {
        let x4: Vec<f64> = if r.x.len() == 3 {
            embed_r31(&LVec::<3>::from_column_slice(&r.x))
                .iter()
                .copied()
                .collect()
        } else {
            r.x.clone()
        };
        let kept: Vec<String> = (0..4)
            .filter(|&i| i != projection.dropped())
            .map(|i| x4[i].to_string())
            .collect();
        let _ = writeln!(out, "v {}", kept.join(" "));
    }
    for i in 0..n - 1 {
        for j in 0..m - 1 {
            let a = i * m + j + 1;
            let (b, c, d) = (a + m, a + 1, a + m + 1);
            let _ = writeln!(out, "f {a} {b} {d}");
            let _ = writeln!(out, "f {a} {d} {c}");
        }
    }
    out
}

pub fn cmd_surface(a: &SurfaceArgs, stdout: &mut dyn Write) -> Result<()> {
    let scene = load_scene(&a.scene)?;
    let data = scene.surface_data().map_err(|e| scene_err(&scene, e))?;
    let (n, m) = match a.grid {
        Some(GridArg(n, m)) => (n, m),
        None => scene
            .grid_dims()
            .unwrap_or((DEFAULT_SURFACE_GRID, DEFAULT_SURFACE_GRID)),
    };
    let table = surface_table(&scene.name, &data, n, m)?;
    let projection = a.projection.or(scene.output.projection).unwrap_or_default();
    let render = |f: Format| match f {
        Format::Obj => (surface_obj(&table, projection), "obj"),
        Format::Csv => (surface_csv(&table), "csv"),
        Format::Json => (to_json(&table), "json"),
    };
    let format = a.format.or(scene.output.format);
    match &a.out {
        Some(dir) => {
            let formats = format.map_or(vec![Format::Obj, Format::Csv], |f| vec![f]);
            for f in formats {
                let (text, ext) = render(f);
                write_file(dir, &format!("{}.{ext}", scene.name), &text, stdout)?;
            }
            Ok(())
        }
        None => write_out(stdout, &render(format.unwrap_or(Format::Csv)).0),
    }
}

fn finish_report(report: &Report) -> Result<()> {
    if report.passed {
        Ok(())
    } else {
        let names: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        Err(CliError::Verify(names.join(", ")))
    }
}

pub fn cmd_split(a: &SplitArgs, stdout: &mut dyn Write) -> Result<()> {
    let scene = load_scene(&a.scene)?;
    let data = match scene.surface_data().map_err(|e| scene_err(&scene, e))? {
        SurfaceData::CanonicalR42(d) => d,
        _ => {
            let e = SceneError::new(
                "/representation",
                "split needs a canonical R42 surface scene",
            );
            return Err(scene_err(&scene, e));
        }
    };
    let pair = split_surface(&data).map_err(compute)?;
    let g = Scene::from_surface(
        &format!("{}-g", scene.name),
        &SurfaceData::CanonicalR31(pair.m_g),
        scene.grid,
    );
    let h = Scene::from_surface(
        &format!("{}-h", scene.name),
        &SurfaceData::CanonicalR31(pair.m_h),
        scene.grid,
    );
    let opts = a.report.options();
    let checks = verify::surface_checks(&scene.name, &SurfaceData::CanonicalR42(data), &opts);
    let report = Report::new(&scene.name, &opts, checks, vec![]);
    match &a.out {
        Some(dir) => {
            write_file(
                dir,
                &format!("{}.json", g.name),
                &format!("{}\n", g.to_json()),
                stdout,
            )?;
            write_file(
                dir,
                &format!("{}.json", h.name),
                &format!("{}\n", h.to_json()),
                stdout,
            )?;
            write_file(
                dir,
                &format!("{}-split-report.json", scene.name),
                &to_json(&report),
                stdout,
            )?;
        }
        None => write_out(
            stdout,
            &to_json(&json!({ "m_g": g, "m_h": h, "report": report })),
        )?,
    }
    finish_report(&report)
}

pub fn cmd_merge(a: &MergeArgs, stdout: &mut dyn Write) -> Result<()> {
    if a.scene.len() != 2 {
        return Err(CliError::Usage(
            "merge takes exactly two --scene arguments (g, then h)".into(),
        ));
    }
    let mut members = Vec::new();
    for arg in &a.scene {
        let scene = load_scene(arg)?;
        match scene.surface_data().map_err(|e| scene_err(&scene, e))? {
            SurfaceData::CanonicalR31(d) => members.push(d),
            _ => {
                let e = SceneError::new(
                    "/representation",
                    "merge needs canonical R31 surface scenes",
                );
                return Err(scene_err(&scene, e));
            }
        }
    }
    let m_h = members.pop().expect("two members");
    let m_g = members.pop().expect("two members");
    let pair = SurfacePair::new(m_g, m_h).map_err(|e| CliError::Usage(e.to_string()))?;
    let merged = merge_surfaces(&pair, a.omega1, a.omega2).map_err(compute)?;
    let data = SurfaceData::CanonicalR42(merged);
    let grid = load_scene(&a.scene[0])?.grid;
    let out_scene = Scene::from_surface(&a.name, &data, grid);
    let opts = a.report.options();
    let report = Report::new(
        &a.name,
        &opts,
        verify::surface_checks(&a.name, &data, &opts),
        vec![],
    );
    match &a.out {
        Some(dir) => {
            write_file(
                dir,
                &format!("{}.json", a.name),
                &format!("{}\n", out_scene.to_json()),
                stdout,
            )?;
            write_file(
                dir,
                &format!("{}-merge-report.json", a.name),
                &to_json(&report),
                stdout,
            )?;
        }
        None => write_out(
            stdout,
            &to_json(&json!({ "merged": out_scene, "report": report })),
        )?,
    }
    finish_report(&report)
}

fn load_motion(path: &Path) -> Result<MotionSpec> {
    let src = std::fs::read_to_string(path).map_err(|error| CliError::Io {
        path: path.into(),
        error,
    })?;
    MotionSpec::from_json(&src).map_err(|error| CliError::Scene {
        source_name: path.display().to_string(),
        error,
    })
}

pub fn cmd_verify(a: &VerifyArgs, stdout: &mut dyn Write) -> Result<()> {
    let opts = a.report.options();
    let report = match (&a.scene, &a.corpus) {
        (Some(arg), None) => {
            let scene = load_scene(arg)?;
            let data = scene.surface_data().map_err(|e| scene_err(&scene, e))?;
            let mut checks = verify::surface_checks(&scene.name, &data, &opts);
            if let Some(path) = &a.motion {
                let spec = load_motion(path)?;
                let bad = |error| CliError::Scene {
                    source_name: path.display().to_string(),
                    error,
                };
                let check = match data.build().map_err(compute)? {
                    BuiltSurface::R42(s) => verify::motion_checks_r42(
                        &scene.name,
                        &s,
                        &spec.motion::<4>().map_err(bad)?,
                        &opts,
                    ),
                    BuiltSurface::R31(s) => verify::motion_checks_r31(
                        &scene.name,
                        &s,
                        &spec.motion::<3>().map_err(bad)?,
                        &opts,
                    ),
                };
                checks.push(check);
            }
            Report::new(&scene.name, &opts, checks, vec![])
        }
        (None, Some(name)) => {
            verify::verify_corpus(name, &opts).map_err(|e| CliError::Usage(e.to_string()))?
        }
        _ => return Err(CliError::Usage("verify needs --scene or --corpus".into())),
    };
    let text = to_json(&report);
    match &a.out {
        Some(dir) => write_file(dir, "report.json", &text, stdout)?,
        None => write_out(stdout, &text)?,
    }
    finish_report(&report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("lw").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("7").unwrap(), GridArg(7, 7));
        assert_eq!(parse_grid("3x5").unwrap(), GridArg(3, 5));
        assert!(parse_grid("1").is_err());
        assert!(parse_grid("ax2").is_err());
    }

    #[test]
    fn curve_rows_count() {
        let (code, out, _) = run_args(&["curve", "--scene", "catenoid-gamma1", "--grid", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 3);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["curve"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["curve", "--scene", "nope"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["verify"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }
}
