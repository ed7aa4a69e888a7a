//! Serde types for everything the CLI reads or writes.
//!
//! Complex numbers are `[re, im]` pairs and matrices are row-major nested
//! arrays of them. Conversions into core types validate; conversions out are
//! infallible.

use std::collections::BTreeMap;

use hypcurve_core::blaschke::BlaschkeProduct;
use hypcurve_core::interpolation::{PickProblem, PickVerdict};
use hypcurve_core::intersection::{BlaschkePair, Codim, IntersectionReport};
use hypcurve_core::linalg::CMat;
use hypcurve_core::operators::{SpectralReport, WoldDecomposition, WoldDefects};
use hypcurve_core::petals::{Holization, PetalKind, RationalFn};
use hypcurve_core::poly::UniPoly;
use hypcurve_core::{Error, Result, C64};
use serde::{Deserialize, Serialize};

pub type Cx = [f64; 2];

pub fn to_c(c: Cx) -> C64 {
    C64::new(c[0], c[1])
}

pub fn from_c(z: C64) -> Cx {
    [z.re, z.im]
}

fn one() -> Cx {
    [1.0, 0.0]
}

/// Marker serialized as the string `"infinite"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Infinite {
    #[serde(rename = "infinite")]
    Infinite,
}

/// A number, or `"infinite"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MaybeInfinite<T> {
    Finite(T),
    Infinite(Infinite),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeJson {
    #[serde(default = "one")]
    pub unimodular: Cx,
    pub zeros: Vec<Cx>,
}

impl BlaschkeJson {
    pub fn to_core(&self) -> Result<BlaschkeProduct> {
        BlaschkeProduct::new(self.zeros.iter().copied().map(to_c).collect(), to_c(self.unimodular))
    }
}

impl From<&BlaschkeProduct> for BlaschkeJson {
    fn from(f: &BlaschkeProduct) -> Self {
        BlaschkeJson { unimodular: from_c(f.unimodular()), zeros: f.zeros().iter().copied().map(from_c).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairJson {
    pub f: BlaschkeJson,
    pub g: BlaschkeJson,
}

impl PairJson {
    pub fn to_core(&self) -> Result<BlaschkePair> {
        BlaschkePair::new(self.f.to_core()?, self.g.to_core()?)
    }
}

impl From<&BlaschkePair> for PairJson {
    fn from(p: &BlaschkePair) -> Self {
        PairJson { f: (&p.f).into(), g: (&p.g).into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointJson {
    pub lambda: Cx,
    pub mu: Cx,
    pub region: String,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportJson {
    pub points: Vec<PointJson>,
    #[serde(rename = "N")]
    pub n: MaybeInfinite<f64>,
    pub r: usize,
    pub codim: MaybeInfinite<usize>,
    pub degenerate: bool,
}

impl From<&IntersectionReport> for ReportJson {
    fn from(rep: &IntersectionReport) -> Self {
        let points = rep
            .points
            .iter()
            .map(|p| PointJson {
                lambda: from_c(p.lambda),
                mu: from_c(p.mu),
                region: p.region.label().to_string(),
                multiplicity: p.multiplicity,
            })
            .collect();
        let n = if rep.count.is_finite() {
            MaybeInfinite::Finite(rep.count)
        } else {
            MaybeInfinite::Infinite(Infinite::Infinite)
        };
        let codim = match rep.codim {
            Codim::Finite(c) => MaybeInfinite::Finite(c),
            Codim::Infinite => MaybeInfinite::Infinite(Infinite::Infinite),
        };
        ReportJson { points, n, r: rep.r, codim, degenerate: rep.degenerate }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniPolyJson {
    pub coeffs: Vec<Cx>,
}

impl From<&UniPoly> for UniPolyJson {
    fn from(p: &UniPoly) -> Self {
        UniPolyJson { coeffs: p.coeffs().iter().copied().map(from_c).collect() }
    }
}

impl From<&UniPolyJson> for UniPoly {
    fn from(p: &UniPolyJson) -> Self {
        UniPoly::new(p.coeffs.iter().copied().map(to_c).collect())
    }
}

/// Rows are indexed by the power of `z`, entries within a row by the power
/// of `w`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BiPolyJson {
    pub coeffs: Vec<Vec<Cx>>,
}

impl From<&hypcurve_core::poly::BiPoly> for BiPolyJson {
    fn from(p: &hypcurve_core::poly::BiPoly) -> Self {
        BiPolyJson { coeffs: p.rows().iter().map(|r| r.iter().copied().map(from_c).collect()).collect() }
    }
}

impl From<&BiPolyJson> for hypcurve_core::poly::BiPoly {
    fn from(p: &BiPolyJson) -> Self {
        hypcurve_core::poly::BiPoly::new(
            p.coeffs.iter().map(|r| r.iter().copied().map(to_c).collect()).collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: UniPolyJson,
    pub den: UniPolyJson,
}

impl From<&RationalFn> for RationalJson {
    fn from(f: &RationalFn) -> Self {
        RationalJson { num: f.num().into(), den: f.den().into() }
    }
}

impl RationalJson {
    pub fn to_core(&self) -> Result<RationalFn> {
        RationalFn::new((&self.num).into(), (&self.den).into())
    }
}

pub fn holization_components(h: &Holization) -> Vec<RationalJson> {
    h.components().iter().map(Into::into).collect()
}

/// Petal kinds by name with their complex parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PetalSpecJson {
    pub kind: String,
    pub params: BTreeMap<String, Cx>,
}

/// Accepted spellings of each kind; the first is canonical.
const KIND_NAMES: [(&str, &[&str]); 5] = [
    ("cusp1", &["neil"]),
    ("single_crossing", &["crossing", "single-crossing"]),
    ("triple_point", &["triple", "triple-point"]),
    ("cusp2", &[]),
    ("two_crossings", &["two-crossings"]),
];

pub fn canonical_kind(name: &str) -> Option<&'static str> {
    KIND_NAMES.iter().find(|(k, alias)| *k == name || alias.contains(&name)).map(|(k, _)| *k)
}

fn param_names(kind: &str) -> &'static [&'static str] {
    match kind {
        "cusp1" => &["alpha"],
        "single_crossing" => &["a1", "a2"],
        "triple_point" => &["a1", "a2", "a3"],
        "cusp2" => &["c"],
        _ => &["a1", "a2", "b1", "b2"],
    }
}

impl PetalSpecJson {
    /// Unknown kinds are `Unsupported`; missing or extra parameters are
    /// `DegenerateInput`.
    pub fn to_kind(&self) -> Result<PetalKind> {
        let kind = canonical_kind(&self.kind)
            .ok_or_else(|| Error::Unsupported(format!("unknown petal kind {:?}", self.kind)))?;
        let names = param_names(kind);
        if let Some(extra) = self.params.keys().find(|k| !names.contains(&k.as_str())) {
            return Err(Error::DegenerateInput(format!("{kind} takes no parameter {extra:?}")));
        }
        let get = |name: &str| -> Result<C64> {
            self.params
                .get(name)
                .copied()
                .map(to_c)
                .ok_or_else(|| Error::DegenerateInput(format!("{kind} needs parameter {name:?}")))
        };
        Ok(match kind {
            "cusp1" => PetalKind::Cusp1 { alpha: get("alpha")? },
            "single_crossing" => PetalKind::SingleCrossing { a1: get("a1")?, a2: get("a2")? },
            "triple_point" => PetalKind::TriplePoint { a1: get("a1")?, a2: get("a2")?, a3: get("a3")? },
            "cusp2" => PetalKind::Cusp2 { c: get("c")? },
            _ => PetalKind::TwoCrossings { a1: get("a1")?, a2: get("a2")?, b1: get("b1")?, b2: get("b2")? },
        })
    }
}

impl From<PetalKind> for PetalSpecJson {
    fn from(kind: PetalKind) -> Self {
        let params: Vec<(&str, C64)> = match kind {
            PetalKind::Cusp1 { alpha } => vec![("alpha", alpha)],
            PetalKind::SingleCrossing { a1, a2 } => vec![("a1", a1), ("a2", a2)],
            PetalKind::TriplePoint { a1, a2, a3 } => vec![("a1", a1), ("a2", a2), ("a3", a3)],
            PetalKind::Cusp2 { c } => vec![("c", c)],
            PetalKind::TwoCrossings { a1, a2, b1, b2 } => vec![("a1", a1), ("a2", a2), ("b1", b1), ("b2", b2)],
        };
        PetalSpecJson {
            kind: kind.name().to_string(),
            params: params.into_iter().map(|(k, v)| (k.to_string(), from_c(v))).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PickJson {
    pub nodes: Vec<Cx>,
    pub targets: Vec<Cx>,
}

impl PickJson {
    pub fn to_core(&self) -> Result<PickProblem> {
        PickProblem::new(
            self.nodes.iter().copied().map(to_c).collect(),
            self.targets.iter().copied().map(to_c).collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictJson {
    pub solvable: bool,
    pub min_eigenvalue: f64,
    pub marginal: bool,
}

impl From<&PickVerdict> for VerdictJson {
    fn from(v: &PickVerdict) -> Self {
        VerdictJson { solvable: v.solvable, min_eigenvalue: v.min_eigenvalue, marginal: v.marginal }
    }
}

pub type MatrixJson = Vec<Vec<Cx>>;

pub fn matrix_to_core(m: &MatrixJson) -> Result<CMat> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if rows == 0 || cols != rows || m.iter().any(|r| r.len() != cols) {
        return Err(Error::DegenerateInput(format!("expected a nonempty square matrix, got {rows} rows")));
    }
    Ok(CMat::from_fn(rows, cols, |i, j| to_c(m[i][j])))
}

pub fn matrix_from_core(m: &CMat) -> MatrixJson {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| from_c(m[(i, j)])).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorPairJson {
    pub t1: MatrixJson,
    pub t2: MatrixJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaJson {
    pub a: MatrixJson,
    pub b: MatrixJson,
}

/// Input of `opcheck`: a commuting pair for the spectral-set test, or a
/// pair `(A, B)` for the numerical-radius lemma.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OpcheckInput {
    Pair(OperatorPairJson),
    Lemma(LemmaJson),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralJson {
    pub sup_norm: f64,
    pub theta: f64,
    pub holds: bool,
    pub marginal: bool,
}

impl From<&SpectralReport> for SpectralJson {
    fn from(s: &SpectralReport) -> Self {
        SpectralJson { sup_norm: s.sup_norm, theta: s.theta, holds: s.holds, marginal: s.marginal }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReportJson {
    pub lhs: bool,
    pub lhs_sup: f64,
    /// `None` when `I - A*A - B*B` is not positive semidefinite.
    pub rhs: Option<bool>,
    pub rhs_radius: Option<f64>,
    pub agree: Option<bool>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WoldDefectsJson {
    pub orthogonality: f64,
    pub reconstruction: f64,
    pub e_identity: f64,
    pub w_plus_e_plus: f64,
    pub w_minus_e_minus: f64,
    pub isometry: f64,
    pub relation: f64,
}

impl From<&WoldDefects> for WoldDefectsJson {
    fn from(d: &WoldDefects) -> Self {
        WoldDefectsJson {
            orthogonality: d.orthogonality,
            reconstruction: d.reconstruction,
            e_identity: d.e_identity,
            w_plus_e_plus: d.w_plus_e_plus,
            w_minus_e_minus: d.w_minus_e_minus,
            isometry: d.isometry,
            relation: d.relation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WoldJson {
    pub dim_plus: usize,
    pub dim_minus: usize,
    pub dim_k: usize,
    pub defects: WoldDefectsJson,
    pub w_plus: MatrixJson,
    pub w_minus: MatrixJson,
}

impl From<&WoldDecomposition> for WoldJson {
    fn from(w: &WoldDecomposition) -> Self {
        let (dim_plus, dim_minus, dim_k) = w.dims();
        WoldJson {
            dim_plus,
            dim_minus,
            dim_k,
            defects: (&w.defects).into(),
            w_plus: matrix_from_core(&w.w_plus),
            w_minus: matrix_from_core(&w.w_minus),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HerglotzJson {
    pub atoms: Vec<f64>,
    pub masses: Vec<f64>,
    pub first_moment: Cx,
}
