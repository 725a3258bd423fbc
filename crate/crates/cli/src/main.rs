mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use curvelab_core::flecnode::{count_flecnodal_directions, flecnodal_directions, salmon_flecnode};
use curvelab_core::hilbert::acc_explore;
use curvelab_core::incidence::{
    census, contagion_demo, dichotomy_demo, doubly_ruled_audit, sample_surface, DichotomyConfig,
};
use curvelab_core::reduce::degree_reduce;
use curvelab_core::{Error, Field, Fp, Rational, RootFinding};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use config::Config;

/// Directions are listed only below this count.
const DIRECTION_LIST_MAX: u128 = 64;

#[derive(Parser)]
#[command(
    name = "curvelab",
    version,
    about = "Exact incidence computations for curves in three-space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Prime modulus of the base field; 0 selects the rationals.
    #[arg(long, global = true, default_value_t = 65537)]
    field_prime: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Subcommand)]
enum Command {
    /// Rich points of a curve configuration.
    Census,
    /// Randomized degree reduction.
    Reduce,
    /// Flecnodal directions at points of a surface, optionally the
    /// flecnode polynomial.
    Flecnode,
    /// Stabilization of an ascending chain of ideals.
    Acc,
    /// Lines through sampled points of a plane or quadric.
    DoublyRuled,
    /// Rich points versus a low-degree surface.
    Dichotomy,
    /// Flecnodal contagion along curves of a surface.
    Demo,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

enum Failure {
    Input(String),
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Io(_) => 1,
            Failure::Core(Error::WorkLimit(_) | Error::NotIsolated(_)) => 3,
            Failure::Core(Error::TheoremViolation(_)) => 1,
            Failure::Core(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Input(s) | Failure::Io(s) => s.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

struct Output {
    json: Value,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    conforming: bool,
}

impl Output {
    fn new(json: Value, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        Output {
            json,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
            conforming: true,
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn required<T>(v: Option<T>, what: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Input(format!("configuration needs `{what}`")))
}

fn point_cells<F: Field>(z: &[F; 3]) -> Vec<String> {
    z.iter().map(|c| c.to_string()).collect()
}

fn run<F: RootFinding>(
    cmd: Command,
    cfg: &Config,
    ctx: &F::Ctx,
    seed: u64,
) -> Result<Output, Failure> {
    match cmd {
        Command::Census => {
            let conf = cfg.configuration::<F>(ctx, seed)?;
            let rep = census(&conf.curves, cfg.a)?;
            let rows = rep
                .rich_points
                .iter()
                .map(|rp| {
                    let mut row = point_cells(&rp.point);
                    row.push(rp.curves.len().to_string());
                    row.push(
                        rp.curves
                            .iter()
                            .map(|i| i.to_string())
                            .collect::<Vec<_>>()
                            .join(";"),
                    );
                    row
                })
                .collect();
            let json = json!({
                "name": conf.name,
                "modulus": conf.modulus,
                "provenance": conf.provenance,
                "census": rep,
            });
            Ok(Output::new(
                json,
                &["x1", "x2", "x3", "incidences", "curves"],
                rows,
            ))
        }
        Command::Reduce => {
            let conf = cfg.configuration::<F>(ctx, seed)?;
            let a = required(cfg.a, "A")?;
            let res = degree_reduce(&conf.curves, a, &cfg.reduction(seed))?;
            let rows = res
                .log
                .iter()
                .map(|l| {
                    vec![
                        l.level.to_string(),
                        l.curves.to_string(),
                        l.a.to_string(),
                        l.p.to_string(),
                        l.attempts.to_string(),
                        l.sampled.to_string(),
                        l.interpolation_degree.to_string(),
                        l.contained.to_string(),
                        l.base_case.to_string(),
                        l.fallback.to_string(),
                    ]
                })
                .collect();
            let conforming = res.conforming;
            let mut out = Output::new(
                json!({ "name": conf.name, "n": conf.len(), "A": a, "reduction": res }),
                &[
                    "level",
                    "curves",
                    "a",
                    "p",
                    "attempts",
                    "sampled",
                    "degree",
                    "contained",
                    "base_case",
                    "fallback",
                ],
                rows,
            );
            out.conforming = conforming;
            Ok(out)
        }
        Command::Flecnode => {
            let t = required(cfg.surface::<F>(ctx)?, "surface")?;
            let r = cfg.r.unwrap_or(3);
            let mut points = cfg.points::<F>(ctx)?;
            if points.is_empty() {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                points = sample_surface(&t, cfg.samples.unwrap_or(10), &mut rng)?;
            }
            let salmon = if cfg.salmon {
                Some(salmon_flecnode(&t)?)
            } else {
                None
            };
            let mut reports = Vec::new();
            let mut rows = Vec::new();
            for z in &points {
                let count = count_flecnodal_directions(&t, z, r)?;
                let directions = if count <= DIRECTION_LIST_MAX {
                    Some(flecnodal_directions(&t, z, r)?)
                } else {
                    None
                };
                let flec_zero = match &salmon {
                    Some(s) => Some(s.poly.eval(z)?.is_zero()),
                    None => None,
                };
                let mut row = point_cells(z);
                row.push(count.to_string());
                row.push(flec_zero.map(|b| b.to_string()).unwrap_or_default());
                rows.push(row);
                reports.push(json!({ "point": z, "count": count, "directions": directions, "flec_vanishes": flec_zero }));
            }
            let json = json!({ "surface": t, "r": r, "points": reports, "salmon": salmon });
            Ok(Output::new(
                json,
                &["x1", "x2", "x3", "directions", "flec_vanishes"],
                rows,
            ))
        }
        Command::Acc => {
            let ideals = cfg.ideals::<F>(ctx)?;
            if ideals.is_empty() {
                return Err(Failure::Input("configuration needs `ideals`".into()));
            }
            let rep = acc_explore(&ideals)?;
            let rows = rep
                .ell_tuples
                .iter()
                .enumerate()
                .map(|(j, ell)| {
                    vec![
                        (j + 1).to_string(),
                        ell.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(" "),
                    ]
                })
                .collect();
            Ok(Output::new(to_json(&rep), &["partial_sum", "ell"], rows))
        }
        Command::DoublyRuled => {
            let t = required(cfg.surface::<F>(ctx)?, "surface")?;
            let rep = doubly_ruled_audit(
                &t,
                cfg.samples.unwrap_or(20),
                cfg.family_size.unwrap_or(5),
                seed,
            )?;
            let rows = rep
                .samples
                .iter()
                .map(|w| {
                    let mut row = point_cells(&w.point);
                    row.push(w.regular.to_string());
                    row.push(w.lines.to_string());
                    row
                })
                .collect();
            Ok(Output::new(
                to_json(&rep),
                &["x1", "x2", "x3", "regular", "lines"],
                rows,
            ))
        }
        Command::Dichotomy => {
            let conf = cfg.configuration::<F>(ctx, seed)?;
            let a = required(cfg.a, "A")?;
            let defaults = DichotomyConfig::default();
            let dc = DichotomyConfig {
                c2: cfg.c2.unwrap_or(defaults.c2),
                reduction: cfg.reduction(seed),
                max_seeds: cfg.max_seeds.unwrap_or(defaults.max_seeds),
            };
            let rep = dichotomy_demo(&conf.curves, a, &dc)?;
            let conforming = rep
                .reduction
                .as_ref()
                .and_then(|r| r.conforming)
                .unwrap_or(true);
            let row = vec![
                to_json(&rep.verdict)
                    .as_str()
                    .unwrap_or_default()
                    .to_string(),
                rep.n.to_string(),
                rep.a.to_string(),
                rep.rich_count.to_string(),
                rep.bound.to_string(),
                rep.surface
                    .as_ref()
                    .map(|s| s.poly.to_string())
                    .unwrap_or_default(),
                rep.surface
                    .as_ref()
                    .map(|s| s.contained.len().to_string())
                    .unwrap_or_default(),
            ];
            let mut out = Output::new(
                json!({ "name": conf.name, "dichotomy": rep }),
                &[
                    "verdict",
                    "n",
                    "A",
                    "rich_points",
                    "bound",
                    "surface",
                    "contained",
                ],
                vec![row],
            );
            out.conforming = conforming;
            Ok(out)
        }
        Command::Demo => {
            let t = required(cfg.surface::<F>(ctx)?, "surface")?;
            let conf = cfg.configuration::<F>(ctx, seed)?;
            let rep = contagion_demo(
                &t,
                &conf.curves,
                cfg.count.unwrap_or(2),
                cfg.r.unwrap_or(3),
                cfg.samples.unwrap_or(20),
                seed,
            )?;
            let rows = rep
                .curves
                .iter()
                .map(|c| {
                    vec![
                        c.curve.to_string(),
                        format!("{}/{}", c.forcing_held, c.forcing_points),
                        format!("{}/{}", c.further_held, c.further_points),
                        c.contagion_achieved.to_string(),
                    ]
                })
                .collect();
            Ok(Output::new(
                to_json(&rep),
                &["curve", "forcing", "further", "contagion"],
                rows,
            ))
        }
    }
}

fn render(out: &Output, format: Format) -> Result<Vec<u8>, Failure> {
    match format {
        Format::Json => {
            let mut s =
                serde_json::to_vec_pretty(&out.json).map_err(|e| Failure::Io(e.to_string()))?;
            s.push(b'\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&out.header)
                .map_err(|e| Failure::Io(e.to_string()))?;
            for row in &out.rows {
                w.write_record(row)
                    .map_err(|e| Failure::Io(e.to_string()))?;
            }
            w.into_inner().map_err(|e| Failure::Io(e.to_string()))
        }
    }
}

fn execute(cli: &Cli) -> Result<bool, Failure> {
    let cfg = Config::load(cli.config.as_deref()).map_err(Failure::Input)?;
    let out = if cli.field_prime == 0 {
        run::<Rational>(cli.command, &cfg, &(), cli.seed)?
    } else {
        let p = Fp::checked_modulus(cli.field_prime)?;
        run::<Fp>(cli.command, &cfg, &p, cli.seed)?
    };
    let bytes = render(&out, cli.format)?;
    match &cli.out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|e| Failure::Io(e.to_string()))?,
    }
    Ok(out.conforming)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("curvelab: probabilistic step fell back to a non-conforming result");
            ExitCode::from(4)
        }
        Err(f) => {
            eprintln!("curvelab: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
