//! Command runners. Each returns the text for stdout together with the exit
//! code, so the binary stays a thin shell and the runners can be tested
//! in-process.

use std::path::Path;

use hypcurve_core::intersection::{solve_pair, SolveOptions};
use hypcurve_core::operators::{
    herglotz_masses, lemma_lhs, lemma_rhs, numerical_radius, spectral_set_test, wold_decompose, wold_defect,
    OperatorPair,
};
use hypcurve_core::petals::{
    a3_connection, a3_fixture, cusp2_holization, nodal_cubic_fixture, nodal_cubic_residual, Holization, PetalKind,
    PetalSpec, CUSP2_BOUND,
};
use hypcurve_core::{interpolation, Error, C64};
use serde::{Deserialize, Serialize};

use crate::formats::*;

pub mod exit {
    pub const OK: u8 = 0;
    pub const NUMERIC: u8 = 1;
    pub const DEGENERATE: u8 = 2;
    pub const INPUT: u8 = 3;
    pub const UNSUPPORTED: u8 = 4;
    pub const INFEASIBLE: u8 = 5;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Config {
    pub tol: f64,
    pub seed: u64,
    pub grid: usize,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Config { tol: 1e-9, seed: 0, grid: 721, format: Format::Json }
    }
}

impl Config {
    pub fn validate(&self) -> Result<(), Failure> {
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(Failure::input(format!("--tol must be positive, got {}", self.tol)));
        }
        if self.grid < 64 {
            return Err(Failure::input(format!("--grid must be at least 64, got {}", self.grid)));
        }
        Ok(())
    }
}

/// A successful run: text for stdout and the exit code (nonzero for
/// reports that are also verdicts, such as a degenerate pair).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: exit::OK }
    }
}

/// A failed run: message for stderr and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: exit::INPUT, message: message.into() }
    }

    fn unsupported(message: impl Into<String>) -> Self {
        Failure { code: exit::UNSUPPORTED, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Numeric { .. } | Error::Consistency(_) | Error::TheoryViolation(_) => exit::NUMERIC,
            Error::DegenerateInput(_) | Error::Domain(_) | Error::Precondition(_) => exit::INPUT,
            Error::OutOfRange { .. } | Error::Unsupported(_) => exit::UNSUPPORTED,
            Error::Infeasible(_) | Error::Singular(_) => exit::INFEASIBLE,
        };
        let message = match &e {
            Error::OutOfRange { value, bound } => {
                format!("|c| = {value} is below the cusp bound {bound:.4}: the arc construction needs |c| >= 0.297")
            }
            _ => e.to_string(),
        };
        Failure { code, message }
    }
}

pub type CmdResult = Result<Output, Failure>;

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    parse_json(&text).map_err(|f| Failure::input(format!("{}: {}", path.display(), f.message)))
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::input(format!("malformed JSON: {e}")))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

fn json_only(cfg: &Config, cmd: &str) -> Result<(), Failure> {
    match cfg.format {
        Format::Json => Ok(()),
        Format::Csv => Err(Failure::unsupported(format!("csv output is only available for intersect, not {cmd}"))),
    }
}

/// `re` or `re,im`.
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| format!("not a number: {t:?}"));
    match parts.as_slice() {
        [re] => Ok(C64::new(num(re)?, 0.0)),
        [re, im] => Ok(C64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected re or re,im, got {s:?}")),
    }
}

pub fn intersect(pair: &PairJson, cfg: &Config) -> CmdResult {
    cfg.validate()?;
    let pair = pair.to_core()?;
    let opts = SolveOptions { tol: cfg.tol, seed: cfg.seed, ..SolveOptions::default() };
    let rep = solve_pair(&pair, &opts)?;
    let json = ReportJson::from(&rep);
    let text = match cfg.format {
        Format::Json => to_json(&json),
        Format::Csv => points_csv(&json)?,
    };
    let code = if rep.degenerate { exit::DEGENERATE } else { exit::OK };
    Ok(Output { text, code })
}

pub fn points_csv(rep: &ReportJson) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure { code: exit::NUMERIC, message: e.to_string() };
    w.write_record(["re_lambda", "im_lambda", "re_mu", "im_mu", "region", "multiplicity"]).map_err(io)?;
    for p in &rep.points {
        w.write_record([
            p.lambda[0].to_string(),
            p.lambda[1].to_string(),
            p.mu[0].to_string(),
            p.mu[1].to_string(),
            p.region.clone(),
            p.multiplicity.to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure { code: exit::NUMERIC, message: e.to_string() })?;
    Ok(String::from_utf8(bytes).expect("csv of ascii fields"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationJson {
    /// One row per component, one entry per functional.
    pub residuals: Vec<Vec<f64>>,
    pub identification_residual: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PetalJson {
    pub spec: PetalSpecJson,
    pub codimension: usize,
    pub holization: Vec<RationalJson>,
    pub identified: Vec<Vec<Cx>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub realized_c: Option<Cx>,
    pub verification: VerificationJson,
}

/// A `petal` input file: a bare spec or a previous `petal` output.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum PetalInput {
    Output { spec: PetalSpecJson },
    Spec(PetalSpecJson),
}

impl PetalInput {
    pub fn spec(self) -> PetalSpecJson {
        match self {
            PetalInput::Output { spec } | PetalInput::Spec(spec) => spec,
        }
    }
}

fn verification(h: &Holization, spec: &PetalSpec, tol: f64) -> Result<VerificationJson, Failure> {
    let members = h.verify(spec.connection(), tol)?;
    let identification_residual = h.identification_residual()?;
    Ok(VerificationJson {
        holds: members.iter().all(|m| m.holds) && identification_residual <= tol,
        residuals: members.into_iter().map(|m| m.residuals).collect(),
        identification_residual,
    })
}

fn petal_json(h: &Holization, spec: &PetalSpec, realized_c: Option<C64>, cfg: &Config) -> CmdResult {
    let verification = verification(h, spec, cfg.tol)?;
    let json = PetalJson {
        spec: spec.kind().into(),
        codimension: spec.codimension(),
        holization: holization_components(h),
        identified: h.identified().iter().map(|s| s.iter().copied().map(from_c).collect()).collect(),
        realized_c: realized_c.map(from_c),
        verification,
    };
    let code = if json.verification.holds { exit::OK } else { exit::NUMERIC };
    Ok(Output { text: to_json(&json), code })
}

/// Holization of the petal `spec`, verified against its connection.
pub fn petal(spec: &PetalSpecJson, cfg: &Config) -> CmdResult {
    cfg.validate()?;
    json_only(cfg, "petal")?;
    let spec = PetalSpec::new(spec.to_kind()?)?;
    let h = spec.holize()?;
    let realized = match spec.kind() {
        PetalKind::Cusp2 { c } => Some(c),
        _ => None,
    };
    petal_json(&h, &spec, realized, cfg)
}

/// The arc construction for `|c| = cmod`, reported with the phase of `c`
/// that the arc realizes.
pub fn petal_cusp2_modulus(cmod: f64, cfg: &Config) -> CmdResult {
    cfg.validate()?;
    json_only(cfg, "petal")?;
    if !(cmod >= CUSP2_BOUND) {
        return Err(Error::OutOfRange { value: cmod, bound: CUSP2_BOUND }.into());
    }
    let (h, c) = cusp2_holization(cmod)?;
    let spec = PetalSpec::new(PetalKind::Cusp2 { c })?;
    petal_json(&h, &spec, Some(c), cfg)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureJson {
    pub fixture: String,
    pub holization: Vec<RationalJson>,
    pub identified: Vec<Vec<Cx>>,
    /// Largest relation residual on a sample of the disk.
    pub curve_residual: f64,
    pub membership_residuals: Vec<Vec<f64>>,
    pub identification_residual: f64,
}

/// The two worked fixtures: `nodal_cubic` and `a3`.
pub fn fixture(name: &str, cfg: &Config) -> CmdResult {
    cfg.validate()?;
    json_only(cfg, "petal")?;
    let (h, curve_residual, membership_residuals) = match name {
        "nodal_cubic" | "nodal-cubic" => {
            let h = nodal_cubic_fixture();
            let mut worst: f64 = 0.0;
            for z in hypcurve_core::petals::default_grid() {
                let v = h.eval(z)?;
                worst = worst.max(nodal_cubic_residual(v[0], v[1]).norm());
            }
            (h, worst, Vec::new())
        }
        "a3" => {
            let h = a3_fixture();
            let members = h.verify(&a3_connection(), cfg.tol)?;
            (h, 0.0, members.into_iter().map(|m| m.residuals).collect())
        }
        _ => return Err(Failure::unsupported(format!("unknown petal kind {name:?}"))),
    };
    let json = FixtureJson {
        fixture: name.replace('-', "_"),
        holization: holization_components(&h),
        identified: h.identified().iter().map(|s| s.iter().copied().map(from_c).collect()).collect(),
        curve_residual,
        membership_residuals,
        identification_residual: h.identification_residual()?,
    };
    Ok(Output::ok(to_json(&json)))
}

/// Exit 0 with a solvable verdict, 5 with an infeasible one.
pub fn pick(problem: &PickJson, cfg: &Config) -> CmdResult {
    cfg.validate()?;
    json_only(cfg, "pick")?;
    let p = problem.to_core()?;
    let v = interpolation::solvable(&p, interpolation::PSD_TOL.max(cfg.tol));
    let code = if v.solvable { exit::OK } else { exit::INFEASIBLE };
    Ok(Output { text: to_json(&VerdictJson::from(&v)), code })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpcheckJson {
    pub spectral: SpectralJson,
    pub numerical_radius_t1: f64,
    pub numerical_radius_t2: f64,
}

pub fn opcheck(input: &OpcheckInput, cfg: &Config) -> CmdResult {
    cfg.validate()?;
    json_only(cfg, "opcheck")?;
    match input {
        OpcheckInput::Pair(p) => {
            let t = OperatorPair::new(matrix_to_core(&p.t1)?, matrix_to_core(&p.t2)?)?;
            let s = spectral_set_test(&t, cfg.grid, cfg.tol);
            let json = OpcheckJson {
                spectral: (&s).into(),
                numerical_radius_t1: numerical_radius(t.t1(), cfg.grid),
                numerical_radius_t2: numerical_radius(t.t2(), cfg.grid),
            };
            Ok(Output::ok(to_json(&json)))
        }
        OpcheckInput::Lemma(l) => {
            let (a, b) = (matrix_to_core(&l.a)?, matrix_to_core(&l.b)?);
            if a.nrows() != b.nrows() {
                return Err(Failure::input("A and B must have the same size"));
            }
            let (lhs, lhs_sup) = lemma_lhs(&a, &b, cfg.grid, cfg.tol);
            let json = match lemma_rhs(&a, &b, cfg.grid, cfg.tol) {
                Ok((rhs, w)) => LemmaReportJson {
                    lhs,
                    lhs_sup,
                    rhs: Some(rhs),
                    rhs_radius: Some(w),
                    agree: Some(lhs == rhs),
                    note: None,
                },
                Err(Error::Domain(msg)) => {
                    LemmaReportJson { lhs, lhs_sup, rhs: None, rhs_radius: None, agree: None, note: Some(msg) }
                }
                Err(e) => return Err(e.into()),
            };
            Ok(Output::ok(to_json(&json)))
        }
    }
}

/// Unitary pairs only, unless `defect` asks for the block residuals of
/// arbitrary data.
pub fn wold(input: &OperatorPairJson, defect: bool, cfg: &Config) -> CmdResult {
    cfg.validate()?;
    json_only(cfg, "wold")?;
    let (t1, t2) = (matrix_to_core(&input.t1)?, matrix_to_core(&input.t2)?);
    let w = if defect {
        wold_defect(&t1, &t2)?
    } else {
        match wold_decompose(&OperatorPair::new(t1, t2)?) {
            Err(Error::Unsupported(msg)) => {
                return Err(Failure::unsupported(format!("{msg}; pass --defect for a residual report")))
            }
            r => r?,
        }
    };
    Ok(Output::ok(to_json(&WoldJson::from(&w))))
}

pub fn neil_extreme(atoms: &[f64], cfg: &Config) -> CmdResult {
    cfg.validate()?;
    json_only(cfg, "neil-extreme")?;
    let m = herglotz_masses(atoms)?;
    let json = HerglotzJson {
        atoms: m.atoms().to_vec(),
        masses: m.masses().to_vec(),
        first_moment: from_c(m.first_moment()),
    };
    Ok(Output::ok(to_json(&json)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(f: &[Cx], g: &[Cx]) -> PairJson {
        PairJson {
            f: BlaschkeJson { unimodular: [1.0, 0.0], zeros: f.to_vec() },
            g: BlaschkeJson { unimodular: [1.0, 0.0], zeros: g.to_vec() },
        }
    }

    #[test]
    fn square_and_cube_give_codim_one() {
        let out = intersect(&pair(&[[0.0, 0.0]; 2], &[[0.0, 0.0]; 3]), &Config::default()).unwrap();
        assert_eq!(out.code, exit::OK);
        let rep: ReportJson = serde_json::from_str(&out.text).unwrap();
        assert_eq!(rep.codim, MaybeInfinite::Finite(1));
        assert_eq!(rep.n, MaybeInfinite::Finite(2.0));
        assert_eq!(rep.points.len(), 1);
        assert_eq!(rep.points[0].multiplicity, 2);
    }

    #[test]
    fn degenerate_pair_exits_two() {
        let out = intersect(&pair(&[[0.0, 0.0]; 2], &[[0.0, 0.0]; 4]), &Config::default()).unwrap();
        assert_eq!(out.code, exit::DEGENERATE);
        assert!(out.text.contains("\"codim\": \"infinite\""));
    }

    #[test]
    fn csv_has_header_and_one_row() {
        let cfg = Config { format: Format::Csv, ..Config::default() };
        let out = intersect(&pair(&[[0.0, 0.0]; 2], &[[0.0, 0.0]; 3]), &cfg).unwrap();
        let lines: Vec<&str> = out.text.lines().collect();
        assert_eq!(lines[0], "re_lambda,im_lambda,re_mu,im_mu,region,multiplicity");
        assert_eq!(lines.len(), 2);
        assert!(lines[1].ends_with(",DD,2"));
    }

    #[test]
    fn cusp2_below_bound_quotes_it() {
        let f = petal_cusp2_modulus(0.1, &Config::default()).unwrap_err();
        assert_eq!(f.code, exit::UNSUPPORTED);
        assert!(f.message.contains("0.297"));
    }

    #[test]
    fn error_classes_map_to_exit_codes() {
        let code = |e: Error| Failure::from(e).code;
        assert_eq!(code(Error::Domain(String::new())), exit::INPUT);
        assert_eq!(code(Error::Infeasible(String::new())), exit::INFEASIBLE);
        assert_eq!(code(Error::Unsupported(String::new())), exit::UNSUPPORTED);
        assert_eq!(code(Error::Consistency(String::new())), exit::NUMERIC);
    }

    #[test]
    fn config_bounds() {
        assert!(Config { tol: 0.0, ..Config::default() }.validate().is_err());
        assert!(Config { grid: 63, ..Config::default() }.validate().is_err());
        assert!(Config::default().validate().is_ok());
    }

    #[test]
    fn complex_arguments() {
        assert_eq!(parse_complex("0.5").unwrap(), C64::new(0.5, 0.0));
        assert_eq!(parse_complex("-0.5, 0.25").unwrap(), C64::new(-0.5, 0.25));
        assert!(parse_complex("a,b").is_err());
        assert!(parse_complex("1,2,3").is_err());
    }
}
