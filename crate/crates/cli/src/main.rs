use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use biharm_core::biharmonic::solve_dirichlet;
use biharm_core::io::{parse_map, BoundarySpec};
use biharm_core::kernels::Kernel;
use biharm_core::render::{render_map, RenderConfig};
use biharm_core::schwarz::{bloch_seminorm, lambda_at_zero, lambda_bound, schwarz_check, BLOCH_MAX_RADIUS};
use biharm_core::univalence::corpus::{example1_map, example2_map, example3_map, EXAMPLE3_TERMS};
use biharm_core::univalence::oracle::{injectivity_oracle, OracleConfig};
use biharm_core::univalence::radius::{jacobian_radius, RadiusConfig};
use biharm_core::univalence::{check_univalence, CheckConfig};
use biharm_core::verify::{run_suite, Suite, SuiteOptions, DEFAULT_NODES, DEFAULT_SEED};
use biharm_core::{Biharmonic, Complex64, Error, Grid, Quadrature};

const EXIT_CHECK: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

#[derive(Parser)]
#[command(name = "biharm", version, about = "Biharmonic mappings of the unit disk")]
struct Cli {
    /// Boundary quadrature nodes.
    #[arg(long, global = true, default_value_t = DEFAULT_NODES)]
    nodes: usize,
    /// Seed for the random generators.
    #[arg(long, global = true, env = "BIHARM_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct MapSource {
    /// Map-spec JSON file.
    #[arg(long, conflicts_with = "example")]
    map: Option<PathBuf>,
    /// Built-in map: `example1:ALPHA`, `example2:N` or `example3`.
    #[arg(long)]
    example: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a disk kernel.
    Kernel {
        /// One of G, Gamma, P, Hc, Fk.
        #[arg(long)]
        kind: String,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        zeta: Complex64,
    },
    /// Solve the clamped Dirichlet problem at the given points.
    SolveDirichlet {
        /// Boundary-data JSON file.
        #[arg(long, conflicts_with_all = ["map", "example"])]
        data: Option<PathBuf>,
        #[command(flatten)]
        source: MapSource,
        /// Evaluation points `re,im`; repeatable.
        #[arg(long = "at", value_parser = parse_complex, allow_hyphen_values = true, required = true)]
        at: Vec<Complex64>,
    },
    /// Series criterion and injectivity oracle.
    CheckUnivalence {
        #[command(flatten)]
        source: MapSource,
        #[arg(long, default_value_t = 0.995)]
        rmax: f64,
        #[arg(long, default_value_t = 128)]
        nr: usize,
        #[arg(long, default_value_t = 256)]
        ntheta: usize,
    },
    /// Sense-preservation or injectivity radius.
    Radius {
        #[command(flatten)]
        source: MapSource,
        #[arg(long, value_enum, default_value_t = RadiusMode::Jacobian)]
        mode: RadiusMode,
        /// Radius tolerance.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Biharmonic Schwarz bound, derivative bound and Bloch seminorm.
    SchwarzVerify {
        #[command(flatten)]
        source: MapSource,
        /// Grid size `nr,ntheta`.
        #[arg(long, default_value = "64,128", value_parser = parse_grid)]
        grid: (usize, usize),
    },
    /// SVG image of a polar grid under the map.
    Render {
        #[command(flatten)]
        source: MapSource,
        #[arg(long, default_value_t = 0.98)]
        rmax: f64,
        #[arg(long, default_value_t = 8)]
        circles: usize,
        #[arg(long, default_value_t = 24)]
        rays: usize,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Run a verification suite.
    Verify {
        /// kernels, dirichlet, maxprinciple, univalence, radii, schwarz, derivatives or all.
        suite: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RadiusMode {
    Jacobian,
    Injectivity,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected re,im, got {s:?}"))?;
    let re: f64 = re.trim().parse().map_err(|e| format!("{re:?}: {e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("{im:?}: {e}"))?;
    biharm_core::grid::point(re, im).map_err(|e| e.to_string())
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected nr,ntheta, got {s:?}"))?;
    Ok((
        a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?,
        b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?,
    ))
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(|e| anyhow!(Error::Config(format!("{e:#}"))))
}

fn example(name: &str) -> biharm_core::Result<Biharmonic> {
    let (base, arg) = match name.split_once(':') {
        Some((b, a)) => (b, Some(a)),
        None => (name, None),
    };
    let bad = |what: &str| Error::Config(format!("bad example argument {what:?}"));
    match (base, arg) {
        ("example1", Some(a)) => Ok(example1_map(a.parse::<f64>().map_err(|_| bad(a))?)),
        ("example2", Some(n)) => example2_map(n.parse::<usize>().map_err(|_| bad(n))?),
        ("example3", None) => Ok(example3_map(EXAMPLE3_TERMS)),
        ("example3", Some(n)) => Ok(example3_map(n.parse::<usize>().map_err(|_| bad(n))?)),
        _ => Err(Error::Config(format!(
            "unknown example {name:?}; use example1:ALPHA, example2:N or example3"
        ))),
    }
}

impl MapSource {
    fn load(&self) -> anyhow::Result<Biharmonic> {
        match (&self.map, &self.example) {
            (Some(path), None) => Ok(parse_map(&read(path)?)?),
            (None, Some(name)) => Ok(example(name)?),
            _ => Err(anyhow!(Error::Config("give exactly one of --map or --example".into()))),
        }
    }
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

/// Primary output plus whether every check passed.
struct Outcome {
    text: String,
    pass: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, pass: true }
    }

    fn json(value: &impl serde::Serialize, pass: bool) -> anyhow::Result<Self> {
        Ok(Self {
            text: serde_json::to_string_pretty(value)? + "\n",
            pass,
        })
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Kernel { kind, z, zeta } => {
            let k: Kernel = kind.parse()?;
            let v = k.eval(*z, *zeta)?;
            if cli.json {
                Outcome::json(&json!({"kernel": k.to_string(), "z": pair(*z), "zeta": pair(*zeta), "value": v}), true)
            } else {
                Ok(Outcome::ok(format!("{v:.17e}\n")))
            }
        }
        Command::SolveDirichlet { data, source, at } => {
            let (quad, data) = match data {
                Some(path) => {
                    let data = BoundarySpec::parse(&read(path)?)?.to_data()?;
                    (Quadrature::new(data.len())?, data)
                }
                None => {
                    let quad = Quadrature::new(cli.nodes)?;
                    let data = source.load()?.boundary_trace(&quad)?;
                    (quad, data)
                }
            };
            let values = at
                .iter()
                .map(|&z| solve_dirichlet(&quad, &data, z))
                .collect::<biharm_core::Result<Vec<_>>>()?;
            if cli.json {
                let rows: Vec<_> = at
                    .iter()
                    .zip(&values)
                    .map(|(z, u)| json!({"z": pair(*z), "u": pair(*u)}))
                    .collect();
                Outcome::json(&json!({"N": quad.len(), "values": rows}), true)
            } else {
                let text = at
                    .iter()
                    .zip(&values)
                    .map(|(z, u)| format!("{} {} {:.17e} {:.17e}\n", z.re, z.im, u.re, u.im))
                    .collect();
                Ok(Outcome::ok(text))
            }
        }
        Command::CheckUnivalence { source, rmax, nr, ntheta } => {
            let u = source.load()?;
            let cfg = CheckConfig {
                r_max: *rmax,
                n_r: *nr,
                n_theta: *ntheta,
                ..CheckConfig::default()
            };
            let report = check_univalence(&u, &cfg)?;
            let pass = report.oracle_injective;
            Outcome::json(&report, pass)
        }
        Command::Radius { source, mode, tol } => {
            let u = source.load()?;
            match mode {
                RadiusMode::Jacobian => {
                    let cfg = RadiusConfig {
                        tol: *tol,
                        r_max: RadiusConfig::<f64>::default().r_max.min(u.radius_limit()),
                        ..RadiusConfig::default()
                    };
                    let res = jacobian_radius(&u, &cfg)?;
                    let value = json!({
                        "mode": "jacobian",
                        "radius": res.radius,
                        "certified": res.certified,
                        "degenerate": res.degenerate,
                        "grid": {"circles": res.circles_scanned, "n_theta": res.n_theta, "r_min": cfg.r_min, "r_max": cfg.r_max, "tol": cfg.tol},
                    });
                    emit_radius(cli, value, res.radius, !res.degenerate)
                }
                RadiusMode::Injectivity => {
                    let (radius, probes) = injectivity_radius(&u, *tol)?;
                    let value = json!({
                        "mode": "injectivity",
                        "radius": radius,
                        "grid": {"n_r": RADIUS_ORACLE_GRID.0, "n_theta": RADIUS_ORACLE_GRID.1, "r_max": INJECTIVITY_R_MAX, "probes": probes},
                    });
                    emit_radius(cli, value, radius, true)
                }
            }
        }
        Command::SchwarzVerify { source, grid } => {
            let u = source.load()?;
            let r = u.radius_limit().min(BLOCH_MAX_RADIUS);
            let g = Grid::uniform(grid.0, r, grid.1)?;
            let report = schwarz_check(&u, &g)?;
            let lambda = lambda_at_zero(&u).ok();
            let bloch = bloch_seminorm(&u, &g)?;
            let lambda_ok = lambda.is_none_or(|l| l <= lambda_bound::<f64>() + 1e-12);
            let pass = report.pass && lambda_ok;
            let value = json!({
                "bound": report,
                "lambda_at_zero": lambda,
                "lambda_bound": lambda_bound::<f64>(),
                "bloch_seminorm": bloch,
            });
            Outcome::json(&value, pass)
        }
        Command::Render { source, rmax, circles, rays, samples } => {
            let u = source.load()?;
            let cfg = RenderConfig {
                n_circles: *circles,
                n_rays: *rays,
                samples_per_curve: *samples,
                r_max: *rmax,
                ..RenderConfig::default()
            };
            Ok(Outcome::ok(render_map(&u, &cfg)?))
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let opts = SuiteOptions {
                seed: cli.seed,
                nodes: cli.nodes,
            };
            let report = run_suite(suite, &opts)?;
            let pass = report.passed;
            Outcome::json(&report, pass)
        }
    }
}

fn emit_radius(cli: &Cli, value: serde_json::Value, radius: f64, pass: bool) -> anyhow::Result<Outcome> {
    if cli.json {
        Outcome::json(&value, pass)
    } else {
        Ok(Outcome {
            text: format!("{radius:.9}\n"),
            pass,
        })
    }
}

const INJECTIVITY_R_MAX: f64 = 0.995;
const RADIUS_ORACLE_GRID: (usize, usize) = (64, 128);

/// Bisection on the oracle radius; injectivity on a disk implies it on smaller disks.
fn injectivity_radius(u: &Biharmonic, tol: f64) -> biharm_core::Result<(f64, usize)> {
    let top = INJECTIVITY_R_MAX.min(u.radius_limit());
    let injective = |r: f64| -> biharm_core::Result<bool> {
        Ok(injectivity_oracle(u, &OracleConfig::new(r, RADIUS_ORACLE_GRID.0, RADIUS_ORACLE_GRID.1))?.injective)
    };
    let mut probes = 1;
    if injective(top)? {
        return Ok((top, probes));
    }
    let (mut lo, mut hi) = (0.0, top);
    while hi - lo > tol.max(1e-4) {
        let mid = 0.5 * (lo + hi);
        probes += 1;
        if injective(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, probes))
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Domain(_)) | Some(Error::Singular(_)) => EXIT_DOMAIN,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &outcome.text).with_context(|| format!("writing {}", path.display())),
                None => {
                    print!("{}", outcome.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(EXIT_USAGE);
            }
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
