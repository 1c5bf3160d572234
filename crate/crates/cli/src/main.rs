use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use loopidx::charring::{irreducible_character, parse_rat, weyl_dimension, ComplexPoly, Window, WindowedMultiplicity};
use loopidx::jetcalc::{fixed_point_residual, flow_jacobian_det, solve_fixed_point, VectorFieldSeries, MAX_ORDER};
use loopidx::locindex::{assemble_fixed_point_index, pair_with_character, FixedPointData, Mode};
use loopidx::models::{coadjoint_toy_index, coadjoint_toy_via_localization, verlinde_report, VerlindeParams};
use loopidx::poisson::poisson_check;
use loopidx::rootsys::{RootDatum, WeightVec};
use loopidx::selftest::run_selftest;
use loopidx::tlevel::tlevel_report;
use loopidx::Error;

#[derive(Parser, Debug)]
#[command(name = "loopidx", version, about = "Fixed-point index computations for loop group spaces")]
struct Cli {
    /// Group and levels, e.g. `A1*2` or `A1*2+A2*3`.
    #[arg(long, global = true, default_value = "A1*1")]
    group: String,
    /// Truncation order in t.
    #[arg(long, global = true, default_value_t = 6)]
    order: usize,
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Weight window `a:b,c:d,…`, one range per coordinate.
    #[arg(long, global = true)]
    window: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cartan matrix, positive roots and inner products.
    Roots,
    /// Order, regular elements and regular orbits of T_l.
    Tlevel,
    /// Irreducible character of a dominant weight.
    Char {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Fixed-point jet of the deformed flow through a base point.
    JetSolve {
        #[arg(long)]
        field: PathBuf,
        /// Base point in coroot coordinates, e.g. `1/4,0.3`.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Both sides of the deformed Poisson summation identity.
    PoissonCheck {
        #[arg(long)]
        field: PathBuf,
        #[arg(long)]
        test: PathBuf,
    },
    /// Assembled fixed-point index as a distribution of jets.
    Index {
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        field: PathBuf,
        /// Optional character to pair the distribution with.
        #[arg(long)]
        test: Option<PathBuf>,
    },
    /// Verlinde number of a simple group.
    Verlinde {
        #[arg(long)]
        level: i64,
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        oracle: bool,
    },
    /// Windowed index of the coadjoint-orbit toy model, computed two ways.
    ToyIndex {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Seeded property sweep over every module.
    Selftest,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// What a command produced, and whether its checks passed.
enum Output {
    Json(Value, bool),
    Table(WindowedMultiplicity<i64>, Value, bool),
}

struct Failure {
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let dbg = format!("{e:?}");
        let kind = dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string();
        Failure { kind, message: e.to_string() }
    }
}

fn failure(kind: &str, message: impl Into<String>) -> Failure {
    Failure { kind: kind.into(), message: message.into() }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| failure("Io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| failure("Parse", format!("{}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn parse_ints(s: &str) -> Result<WeightVec, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map(WeightVec)
        .map_err(|_| failure("Parse", format!("bad integer vector `{s}`")))
}

fn parse_point(s: &str) -> Result<Vec<num_complex::Complex64>, Failure> {
    s.split(',')
        .map(|x| {
            let x = x.trim();
            parse_rat(x)
                .map(|r| num_traits::ToPrimitive::to_f64(&r).unwrap_or(f64::NAN))
                .or_else(|| x.parse::<f64>().ok())
                .map(|r| num_complex::Complex64::new(r, 0.0))
                .ok_or_else(|| failure("Parse", format!("bad coordinate `{x}`")))
        })
        .collect()
}

fn read_field(path: &Path, d: &RootDatum) -> Result<VectorFieldSeries, Failure> {
    Ok(read_json::<VectorFieldSeries>(path)?.with_rank(d.rank)?)
}

fn read_test(path: &Path, d: &RootDatum) -> Result<ComplexPoly, Failure> {
    let f: ComplexPoly = read_json(path)?;
    if let Some(w) = f.support().next() {
        d.check_dim(w.rank())?;
    }
    Ok(f)
}

fn window_for(cli: &Cli, rank: usize, default_radius: i64) -> Result<Window, Failure> {
    let w = match &cli.window {
        Some(s) => s.parse::<Window>()?,
        None => Window::symmetric(rank, default_radius),
    };
    if w.rank() != rank {
        return Err(Error::Dimension { expected: rank, got: w.rank() }.into());
    }
    Ok(w)
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    if cli.order > MAX_ORDER {
        return Err(failure("Unsupported", format!("order {} above the maximum {MAX_ORDER}", cli.order)));
    }
    if cli.tol.is_nan() || cli.tol <= 0.0 {
        return Err(failure("Unsupported", "tolerance must be positive"));
    }
    if let Command::Verlinde { level, genus, oracle } = &cli.command {
        let p = VerlindeParams::from_group(&cli.group, *level, *genus)?;
        let r = verlinde_report(&p, *oracle)?;
        let ok = r.deviation.is_none_or(|x| x <= cli.tol.max(1e-6));
        return Ok(Output::Json(to_value(&r), ok));
    }
    if let Command::Selftest = &cli.command {
        let r = run_selftest(cli.seed)?;
        return Ok(Output::Json(to_value(&r), r.passed));
    }

    let d = RootDatum::from_str_spec(&cli.group)?;
    let n = cli.order;
    Ok(match &cli.command {
        Command::Roots => Output::Json(
            json!({
                "rank": d.rank,
                "cartan": d.cartan,
                "positive_roots": d.positive_roots,
                "rho": d.rho,
                "dual_coxeter": d.dual_coxeter,
                "weyl_order": d.weyl_order.to_string(),
                "basic_gram": d.basic_gram,
                "gram": d.gram,
            }),
            true,
        ),
        Command::Tlevel => Output::Json(to_value(&tlevel_report(&d)?), true),
        Command::Char { lambda } => {
            let lam = parse_ints(lambda)?;
            d.check_dim(lam.rank())?;
            let chi = irreducible_character::<i64>(&lam, &d)?;
            let dim = weyl_dimension(&lam, &d);
            let ok = dim == chi.sum_of_coefficients().into();
            if cli.format == Format::Csv || cli.window.is_some() {
                let win = window_for(cli, d.rank, 0)?;
                let meta = json!({"dimension": dim.to_string()});
                Output::Table(WindowedMultiplicity::from_poly(&chi, win), meta, ok)
            } else {
                Output::Json(json!({"lambda": lam, "dimension": dim.to_string(), "character": chi}), ok)
            }
        }
        Command::JetSolve { field, point } => {
            let v = read_field(field, &d)?;
            let xi = match point {
                Some(s) => parse_point(s)?,
                None => vec![num_complex::Complex64::new(0.0, 0.0); d.rank],
            };
            d.check_dim(xi.len())?;
            let jet = solve_fixed_point(&v, &xi, &d, n)?;
            let residual = fixed_point_residual(&v, &jet, &d)?;
            let det = flow_jacobian_det(&v, &jet, &d)?;
            Output::Json(json!({"jet": jet, "residual": residual, "jacobian_det": det}), residual <= cli.tol)
        }
        Command::PoissonCheck { field, test } => {
            let v = read_field(field, &d)?;
            let f = read_test(test, &d)?;
            let r = poisson_check(&v, &f, &d, n, cli.tol)?;
            Output::Json(to_value(&r), r.passed)
        }
        Command::Index { mode, data, field, test } => {
            let data: FixedPointData = read_json(data)?;
            let v = read_field(field, &d)?;
            let dist = assemble_fixed_point_index(&data, &v, &d, n, *mode)?;
            let mut out = json!({"distribution": dist});
            if let Some(test) = test {
                out["pairing"] = to_value(&pair_with_character(&dist, &read_test(test, &d)?));
            }
            Output::Json(out, true)
        }
        Command::ToyIndex { lambda } => {
            let lam = parse_ints(lambda)?;
            d.check_dim(lam.rank())?;
            let win = window_for(cli, d.rank, 6)?;
            let direct = coadjoint_toy_index(&d, &lam, &win)?;
            let local = coadjoint_toy_via_localization(&d, &lam, &win)?;
            let agree = direct == local;
            if cli.format == Format::Csv {
                Output::Table(direct, json!({"paths_agree": agree}), agree)
            } else {
                let values: Vec<Value> = direct
                    .nonzero()
                    .map(|(w, c)| json!({"w": w, "value": c}))
                    .collect();
                Output::Json(json!({"window": win, "multiplicity": values, "paths_agree": agree}), agree)
            }
        }
        Command::Verlinde { .. } | Command::Selftest => unreachable!("handled above"),
    })
}

fn meta(cli: &Cli) -> Value {
    json!({
        "group": cli.group,
        "N": cli.order,
        "tol": cli.tol,
        "seed": cli.seed,
        "version": env!("CARGO_PKG_VERSION"),
    })
}

fn csv(table: &WindowedMultiplicity<i64>) -> String {
    let rank = table.window().rank();
    let mut s: String = (0..rank).map(|i| format!("w{i},")).collect();
    s.push_str("value\n");
    for (w, c) in table.iter() {
        for x in &w.0 {
            s.push_str(&format!("{x},"));
        }
        s.push_str(&format!("{c}\n"));
    }
    s
}

/// Writes a line to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{s}");
}

fn configure_threads() {
    if let Some(n) = std::env::var("LOOPIDX_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = json!({"error": {"kind": "Usage", "message": e.to_string().trim()}});
            emit(&serde_json::to_string_pretty(&err).expect("json"));
            return ExitCode::from(2);
        }
    };
    configure_threads();
    match run(&cli) {
        Ok(Output::Json(result, ok)) => {
            let out = json!({"meta": meta(&cli), "result": result});
            emit(&serde_json::to_string_pretty(&out).expect("json"));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(Output::Table(table, extra, ok)) => {
            if cli.format == Format::Csv {
                emit(csv(&table).trim_end());
            } else {
                let values: Vec<Value> = table.nonzero().map(|(w, c)| json!({"w": w, "value": c})).collect();
                let out = json!({"meta": meta(&cli), "result": {"window": table.window(), "values": values, "info": extra}});
                emit(&serde_json::to_string_pretty(&out).expect("json"));
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            let out = json!({"meta": meta(&cli), "error": {"kind": f.kind, "message": f.message}});
            emit(&serde_json::to_string_pretty(&out).expect("json"));
            ExitCode::from(2)
        }
    }
}
