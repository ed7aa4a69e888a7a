use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hypcurve::commands::{self, exit, parse_complex, read_json, CmdResult, PetalInput};
use hypcurve::formats::{OpcheckInput, PetalSpecJson};
use hypcurve::{Config, Failure, Format};
use hypcurve_core::C64;

#[derive(Parser)]
#[command(name = "hypcurve", version, about = "Curves cut out by pairs of finite Blaschke products, petals and operator checks")]
struct Cli {
    /// Numerical tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for every random choice (shears, retries).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Angular grid size for operator sweeps.
    #[arg(long, global = true, default_value_t = 721)]
    grid: usize,
    #[arg(long, global = true, value_enum, default_value_t = Out::Json)]
    out: Out,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Out {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve f(λ) = f(μ), g(λ) = g(μ) for a pair file {"f": ..., "g": ...}.
    Intersect { file: PathBuf },
    /// Holize a petal. Kinds: neil, crossing, triple, cusp2, two-crossings,
    /// plus the fixtures nodal-cubic and a3.
    Petal {
        kind: Option<String>,
        /// Petal spec file, or a previous petal output.
        #[arg(long, conflicts_with = "kind")]
        spec: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        alpha: Option<C64>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        a1: Option<C64>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        a2: Option<C64>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        a3: Option<C64>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        b1: Option<C64>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        b2: Option<C64>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        c: Option<C64>,
        /// Cusp2 by modulus; the phase is the one the construction realizes.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "c")]
        cmod: Option<f64>,
    },
    /// Pick problem {"nodes": [...], "targets": [...]}.
    Pick { file: PathBuf },
    /// Spectral-set test for {"t1", "t2"} or the radius lemma for {"a", "b"}.
    Opcheck { file: PathBuf },
    /// Wold-type decomposition of a unitary pair {"t1", "t2"}.
    Wold {
        file: PathBuf,
        /// Report block residuals for non-unitary data instead of refusing.
        #[arg(long)]
        defect: bool,
    },
    /// Masses of the extreme Herglotz measure on the given atoms (radians).
    NeilExtreme {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        atoms: Vec<f64>,
    },
}

fn petal_spec(kind: &str, params: &[(&str, Option<C64>)]) -> PetalSpecJson {
    let mut spec = PetalSpecJson { kind: kind.to_string(), params: Default::default() };
    for (name, v) in params {
        if let Some(z) = v {
            spec.params.insert(name.to_string(), [z.re, z.im]);
        }
    }
    if hypcurve::formats::canonical_kind(kind) == Some("cusp1") && !spec.params.contains_key("alpha") {
        spec.params.insert("alpha".into(), [0.0, 0.0]);
    }
    spec
}

fn run(cli: Cli) -> CmdResult {
    let cfg = Config {
        tol: cli.tol,
        seed: cli.seed,
        grid: cli.grid,
        format: match cli.out {
            Out::Json => Format::Json,
            Out::Csv => Format::Csv,
        },
    };
    match cli.cmd {
        Cmd::Intersect { file } => commands::intersect(&read_json(&file)?, &cfg),
        Cmd::Petal { kind, spec, alpha, a1, a2, a3, b1, b2, c, cmod } => {
            if let Some(path) = spec {
                return commands::petal(&read_json::<PetalInput>(&path)?.spec(), &cfg);
            }
            let kind = kind.ok_or_else(|| Failure::input("petal needs a kind or --spec"))?;
            match kind.as_str() {
                "nodal-cubic" | "nodal_cubic" | "a3" => commands::fixture(&kind, &cfg),
                "cusp2" if cmod.is_some() => commands::petal_cusp2_modulus(cmod.unwrap_or_default(), &cfg),
                _ => {
                    let params =
                        [("alpha", alpha), ("a1", a1), ("a2", a2), ("a3", a3), ("b1", b1), ("b2", b2), ("c", c)];
                    commands::petal(&petal_spec(&kind, &params), &cfg)
                }
            }
        }
        Cmd::Pick { file } => commands::pick(&read_json(&file)?, &cfg),
        Cmd::Opcheck { file } => commands::opcheck(&read_json::<OpcheckInput>(&file)?, &cfg),
        Cmd::Wold { file, defect } => commands::wold(&read_json(&file)?, defect, &cfg),
        Cmd::NeilExtreme { atoms } => commands::neil_extreme(&atoms, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::INPUT } else { exit::OK });
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(exit::NUMERIC);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
