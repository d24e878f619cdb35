//! Argument parsing and command dispatch.

use std::collections::{BTreeSet, VecDeque};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use stabscan::drivers::{driver_by_name, CategoryModel, DriverError, Heart, ObjectId, TiltDir};
use stabscan::lattice::support_infimum;
use stabscan::orbit::disk_report;
use stabscan::scalar::round6;
use stabscan::scanner::scan;
use stabscan::lattice::phase::lift_after;
use stabscan::slicing::{degenerate_limit, make_point_in_window, make_point_near, mass_of, Point, SlicingError};
use stabscan::walks::{estimate_type, thurston_map_a2, thurston_region_check, ThurstonError, WalkConfig, WalkError, DEFAULT_BUDGET};
use stabscan::Charge;

use crate::config::{Config, IpChoice};
use crate::render::{render_svg, Style};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_DRIVER: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

/// Hearts searched when locating a charge.
const LOCATE_DEPTH: u32 = 12;

#[derive(Parser, Debug)]
#[command(name = "stabscan", version, about = "Walls, chambers and boundary strata of rank-two stability spaces")]
pub struct Cli {
    /// JSON file with defaults for the flags below.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Inner product on the lattice.
    #[arg(long, global = true, value_enum)]
    pub ip: Option<IpChoice>,
    /// Phase window (w, w + 1] for the simples of the located heart.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub window: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Point report: chamber, phases, masses, support infimum.
    Analyze {
        driver: String,
        #[arg(long, allow_hyphen_values = true)]
        charge: String,
        /// Simple sent to zero mass; repeatable.
        #[arg(long)]
        massless: Vec<String>,
        /// Object whose mass and HN factors to report, e.g. `e` or `O(2)[1]`; repeatable.
        #[arg(long)]
        object: Vec<String>,
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Atlas JSON.
    Chambers {
        driver: String,
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Boundary points and excluded classes.
    Boundary {
        driver: String,
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Orbit-closure report for a point.
    Orbit {
        driver: String,
        #[arg(long, allow_hyphen_values = true)]
        charge: String,
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Monte-Carlo return probabilities on the Speiser graph.
    Walk {
        driver: String,
        #[arg(long)]
        depth: Option<u32>,
        /// Explicit depth ladder; defaults to depth-4, depth-2, depth.
        #[arg(long, value_delimiter = ',')]
        depths: Vec<u32>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_steps: Option<u64>,
        /// Also write (depth, return_prob, stderr) rows here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// A2 mass vector [m(s) : m(e) : m(t)].
    Thurston {
        #[arg(long, allow_hyphen_values = true)]
        charge: String,
        #[arg(long)]
        massless: Vec<String>,
    },
    /// SVG picture of the atlas.
    Render {
        driver: String,
        #[arg(long)]
        depth: Option<u32>,
        #[arg(long, value_enum)]
        style: Option<Style>,
        #[arg(long)]
        force_poincare: bool,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Precondition(String),
    Driver(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Precondition(_) => EXIT_PRECONDITION,
            CliError::Driver(_) => EXIT_DRIVER,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Precondition(m) | CliError::Driver(m) => m,
        }
    }
}

impl From<DriverError> for CliError {
    fn from(e: DriverError) -> Self {
        match e {
            DriverError::UnknownDriver(_) => CliError::Usage(e.to_string()),
            e => CliError::Driver(e.to_string()),
        }
    }
}

impl From<SlicingError> for CliError {
    fn from(e: SlicingError) -> Self {
        match e {
            SlicingError::Driver(d) => d.into(),
            e => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<WalkError> for CliError {
    fn from(e: WalkError) -> Self {
        match e {
            WalkError::Driver(d) => d.into(),
            e => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<ThurstonError> for CliError {
    fn from(e: ThurstonError) -> Self {
        match e {
            ThurstonError::Slicing(s) => s.into(),
            e => CliError::Precondition(e.to_string()),
        }
    }
}

fn precondition(e: impl std::fmt::Display) -> CliError {
    CliError::Precondition(e.to_string())
}

/// Parses `z1,z2`, each written like `-1+2i`.
pub fn parse_charge(s: &str) -> Result<Charge<f64>, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b] = parts[..] else {
        return Err(CliError::Usage(format!("charge must be z1,z2, got {s:?}")));
    };
    let p = |x: &str| x.parse::<Complex64>().map_err(|_| CliError::Usage(format!("bad complex number {x:?}")));
    Ok(Charge::new(p(a)?, p(b)?))
}

/// Parses `name` or `name[shift]`.
pub fn parse_object(s: &str) -> Result<ObjectId, CliError> {
    let s = s.trim();
    if let Some(body) = s.strip_suffix(']') {
        if let Some((name, shift)) = body.rsplit_once('[') {
            let shift = shift.parse().map_err(|_| CliError::Usage(format!("bad shift in {s:?}")))?;
            return Ok(ObjectId::new(name, shift));
        }
    }
    Ok(ObjectId::new(s, 0))
}

/// Point on `h` with one simple in `(w, w + 1]` and the other less than one
/// away from it.
fn anchored(d: &dyn CategoryModel, h: &Heart, z: &Charge<f64>, w: f64) -> Option<Point> {
    (0..2).find_map(|i| {
        let v = z.eval(h.classes[i]);
        if v.norm() == 0.0 {
            return None;
        }
        let p = lift_after(v, w);
        (p <= w + 1.0).then(|| make_point_near(d, h, z, [p, p]).ok()).flatten()
    })
}

/// Breadth-first search over tilts for a heart carrying `z`: the first
/// heart with both simple phases in `(w, w + 1]`, or failing that one
/// simple there and the other within distance one.
pub fn locate(d: &dyn CategoryModel, z: &Charge<f64>, w: f64) -> Result<Point, CliError> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([(d.seed_heart(), 0u32)]);
    let mut first_err = None;
    while let Some((h, dist)) = queue.pop_front() {
        if !seen.insert(h.to_string()) {
            continue;
        }
        match make_point_in_window(d, &h, z, w).or_else(|e| anchored(d, &h, z, w).ok_or(e)) {
            Ok(p) => return Ok(p),
            Err(e @ (SlicingError::ChargeOnWall(..) | SlicingError::DegenerateCharge(_))) => return Err(e.into()),
            Err(SlicingError::Driver(e)) if !matches!(e, DriverError::Untracked(_)) => return Err(e.into()),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
        if dist < LOCATE_DEPTH {
            for at in 0..2 {
                for dir in [TiltDir::Forward, TiltDir::Backward] {
                    if let Ok(t) = d.tilt(&h, at, dir) {
                        queue.push_back((t, dist + 1));
                    }
                }
            }
        }
    }
    Err(first_err.map_or_else(|| CliError::Precondition("no heart found".into()), Into::into))
}

fn heart_names(h: &Heart) -> [&str; 2] {
    [h.simples[0].name.as_str(), h.simples[1].name.as_str()]
}

fn point_report(d: &dyn CategoryModel, p: &Point, ip: &stabscan::InnerProduct) -> serde_json::Value {
    let mut v = p.to_json();
    let masses: serde_json::Map<String, serde_json::Value> =
        p.phases.iter().map(|e| (e.id.to_string(), serde_json::json!(round6(e.mass)))).collect();
    v["masses"] = masses.into();
    v["support_infimum"] = serde_json::json!(round6(support_infimum(&p.massive_stables(), ip)));
    v["heart_simples"] = serde_json::json!(heart_names(&p.heart));
    v["driver_finite_type"] = serde_json::json!(d.finite_type());
    v
}

struct Ctx {
    cfg: Config,
    ip: IpChoice,
    window: f64,
}

impl Ctx {
    fn depth(&self, flag: Option<u32>, fallback: u32) -> u32 {
        flag.or(self.cfg.depth).unwrap_or(fallback)
    }
}

fn budget() -> Result<u64, CliError> {
    match std::env::var("STABSCAN_BUDGET") {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("STABSCAN_BUDGET must be an integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn dump(out: &mut dyn Write, v: &serde_json::Value) -> Result<(), CliError> {
    let s = serde_json::to_string_pretty(v).map_err(precondition)?;
    writeln!(out, "{s}").map_err(precondition)
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p).map_err(precondition)?,
        None => Config::default(),
    };
    let ctx = Ctx { ip: cli.ip.or(cfg.ip).unwrap_or_default(), window: cli.window.or(cfg.window).unwrap_or(0.0), cfg };
    let ip = ctx.ip.build();
    match cli.command {
        Command::Analyze { driver, charge, massless, object, depth } => {
            let d = driver_by_name(&driver, ctx.depth(depth, 8))?;
            let mut p = locate(d.as_ref(), &parse_charge(&charge)?, ctx.window)?;
            if !massless.is_empty() {
                let dying: Vec<&str> = massless.iter().map(String::as_str).collect();
                p = degenerate_limit(d.as_ref(), &p, &dying)?;
            }
            let mut v = point_report(d.as_ref(), &p, &ip);
            if !object.is_empty() {
                let mut objs = serde_json::Map::new();
                for name in &object {
                    let x = parse_object(name)?;
                    let hn = d.hn_factors(&x, &p.cell)?;
                    let mass = mass_of(d.as_ref(), &p, &x)?;
                    let hn: Vec<_> = hn.iter().map(|(y, k)| serde_json::json!([y.to_string(), k])).collect();
                    objs.insert(x.to_string(), serde_json::json!({"mass": round6(mass), "hn": hn}));
                }
                v["objects"] = objs.into();
            }
            dump(out, &v)
        }
        Command::Chambers { driver, depth } => {
            let depth = ctx.depth(depth, 3);
            let d = driver_by_name(&driver, depth)?;
            dump(out, &scan(d.as_ref(), depth)?.to_json())
        }
        Command::Boundary { driver, depth } => {
            let depth = ctx.depth(depth, 3);
            let d = driver_by_name(&driver, depth)?;
            let a = scan(d.as_ref(), depth)?;
            dump(
                out,
                &serde_json::json!({
                    "driver": a.driver,
                    "depth": depth,
                    "boundary": a.boundary,
                    "excluded": a.excluded,
                }),
            )
        }
        Command::Orbit { driver, charge, depth } => {
            let d = driver_by_name(&driver, ctx.depth(depth, 8))?;
            let p = locate(d.as_ref(), &parse_charge(&charge)?, ctx.window)?;
            let mut v = disk_report(d.as_ref(), &p).to_json();
            v["point"] = p.to_json();
            dump(out, &v)
        }
        Command::Walk { driver, depth, depths, trials, seed, max_steps, csv } => {
            let depth = ctx.depth(depth, 8);
            let d = driver_by_name(&driver, depth)?;
            let ladder: Vec<u32> = if !depths.is_empty() {
                depths
            } else if let Some(l) = ctx.cfg.depths.clone() {
                l
            } else {
                [depth.saturating_sub(4), depth.saturating_sub(2), depth].into_iter().filter(|&x| x > 0).collect()
            };
            let defaults = WalkConfig::default();
            let wc = WalkConfig {
                depth,
                trials: trials.or(ctx.cfg.trials).unwrap_or(defaults.trials),
                max_steps: max_steps.or(ctx.cfg.max_steps).unwrap_or(defaults.max_steps),
                seed: seed.or(ctx.cfg.seed).unwrap_or(defaults.seed),
                budget: budget()?,
            };
            let report = estimate_type(d.as_ref(), &ip, &ladder, &wc)?;
            if let Some(path) = csv {
                std::fs::write(&path, report.to_csv()).map_err(precondition)?;
            }
            dump(out, &report.to_json())
        }
        Command::Thurston { charge, massless } => {
            let d = driver_by_name("a2", 0)?;
            let mut p = locate(d.as_ref(), &parse_charge(&charge)?, ctx.window)?;
            if !massless.is_empty() {
                let dying: Vec<&str> = massless.iter().map(String::as_str).collect();
                p = degenerate_limit(d.as_ref(), &p, &dying)?;
            }
            let v = thurston_map_a2(&p)?;
            dump(
                out,
                &serde_json::json!({
                    "chamber": p.chamber,
                    "mass_vector": v.0.map(round6),
                    "in_region": thurston_region_check(&v),
                }),
            )
        }
        Command::Render { driver, depth, style, force_poincare, output } => {
            let depth = ctx.depth(depth, 4);
            let d = driver_by_name(&driver, depth)?;
            let mut spec = ctx.cfg.render.clone().unwrap_or_default();
            if let Some(s) = style {
                spec.style = s;
            }
            spec.force_poincare |= force_poincare;
            let svg = render_svg(&scan(d.as_ref(), depth)?, &spec).map_err(precondition)?;
            match output {
                Some(path) => std::fs::write(&path, svg).map_err(precondition),
                None => out.write_all(svg.as_bytes()).map_err(precondition),
            }
        }
    }
}

/// Runs the tool on `argv` and returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "stabscan: {}", e.message());
            if e.code() == EXIT_USAGE {
                let _ = writeln!(err, "drivers: {}", stabscan::drivers::DRIVER_NAMES.join(", "));
            }
            e.code()
        }
    }
}
