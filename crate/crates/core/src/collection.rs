//! Pairwise certification of candidate exceptional collections on `Y`.
//!
//! For an ordered pair `(E_i, E_j)` the bundle `dual(E_i) ⊗ E_j` computes
//! `RHom(E_i, E_j)`. A Teleman pass kills its higher cohomology, after which
//! the Euler characteristic is the dimension of `Hom`. The criterion is
//! one-sided, so a failed certificate yields `undetermined`, never a disproof.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bundle::{BundleError, BundleExpr};
use crate::chow::{ch_of, chi, ChowElement, ChowError};
use crate::quiver::HnType;
use crate::rational::{int, Q};
use crate::strata::{teleman_certify_on, unstable_strata, ModuliContext, StrataError, StratumData};

pub const FULLNESS_NOTICE: &str =
    "fullness is not checked: certificates cover exceptionality and semiorthogonality only";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CollectionError {
    #[error("collection has no objects")]
    Empty,
    #[error("object {index} ({label}): {source}")]
    Object { index: usize, label: String, source: BundleError },
    #[error("malformed collection: {0}")]
    Format(String),
    #[error("unknown built-in collection {0:?}")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Strata(#[from] StrataError),
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error("identity failed: {0}")]
    IdentityFailure(String),
    #[error("ledger check failed: {0}")]
    LedgerFailure(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollectionObject {
    pub label: String,
    pub expr: BundleExpr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollectionSpec {
    objects: Vec<CollectionObject>,
}

#[derive(Deserialize)]
struct RawSpec {
    objects: Vec<RawObject>,
}

#[derive(Deserialize)]
struct RawObject {
    label: Option<String>,
    expr: String,
}

impl CollectionSpec {
    pub fn new(objects: Vec<CollectionObject>) -> Result<Self, CollectionError> {
        if objects.is_empty() {
            return Err(CollectionError::Empty);
        }
        for (index, o) in objects.iter().enumerate() {
            o.expr
                .rank()
                .map_err(|source| CollectionError::Object { index, label: o.label.clone(), source })?;
        }
        Ok(Self { objects })
    }

    /// Objects given as `(label, expression)` text pairs.
    pub fn from_pairs(pairs: &[(&str, &str)]) -> Result<Self, CollectionError> {
        let objects = pairs
            .iter()
            .enumerate()
            .map(|(index, (label, text))| {
                BundleExpr::parse(text)
                    .map(|expr| CollectionObject { label: label.to_string(), expr })
                    .map_err(|source| CollectionError::Object { index, label: label.to_string(), source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(objects)
    }

    /// `{"objects": [{"label": "O", "expr": "O(0)"}, ...]}`; labels default to the expression.
    pub fn from_json(text: &str) -> Result<Self, CollectionError> {
        let raw: RawSpec = serde_json::from_str(text).map_err(|e| CollectionError::Format(e.to_string()))?;
        let pairs: Vec<(String, String)> =
            raw.objects.into_iter().map(|o| (o.label.unwrap_or_else(|| o.expr.clone()), o.expr)).collect();
        let borrowed: Vec<(&str, &str)> = pairs.iter().map(|(l, e)| (l.as_str(), e.as_str())).collect();
        Self::from_pairs(&borrowed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "objects": self.objects.iter().map(|o| json!({"label": o.label, "expr": o.expr.to_string()})).collect::<Vec<_>>(),
        })
    }

    pub fn objects(&self) -> &[CollectionObject] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ExceptionalCertified,
    StrongExtCertified,
    OrthogonalityCertified,
    Undetermined,
}

impl Verdict {
    pub fn decide(i: usize, j: usize, chi: i64, teleman_pass: bool) -> Self {
        use std::cmp::Ordering::*;
        match (i.cmp(&j), teleman_pass) {
            (Equal, true) if chi == 1 => Verdict::ExceptionalCertified,
            (Less, true) if chi >= 0 => Verdict::StrongExtCertified,
            (Greater, true) if chi == 0 => Verdict::OrthogonalityCertified,
            _ => Verdict::Undetermined,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ExceptionalCertified => "exceptional-certified",
            Verdict::StrongExtCertified => "strong-ext-certified",
            Verdict::OrthogonalityCertified => "orthogonality-certified",
            Verdict::Undetermined => "undetermined",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The stratum with the smallest margin when the certificate fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blocker {
    pub hn_type: HnType,
    pub margin: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairStatus {
    pub i: usize,
    pub j: usize,
    pub chi: i64,
    pub teleman_pass: bool,
    pub verdict: Verdict,
    pub blocker: Option<Blocker>,
}

impl PairStatus {
    /// `dim Hom(E_i, E_j)` when the pair is certified in the forward direction.
    pub fn hom_dim(&self) -> Option<i64> {
        matches!(self.verdict, Verdict::ExceptionalCertified | Verdict::StrongExtCertified).then_some(self.chi)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "i": self.i,
            "j": self.j,
            "chi": self.chi,
            "teleman_pass": self.teleman_pass,
            "verdict": self.verdict,
            "hom_dim": self.hom_dim(),
            "blocking_stratum": self.blocker.as_ref().map(|b| json!({"hn_type": b.hn_type, "margin": b.margin})),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationMatrix {
    pub labels: Vec<String>,
    /// `entries[i][j]` describes `RHom(E_i, E_j)`.
    pub entries: Vec<Vec<PairStatus>>,
}

impl VerificationMatrix {
    pub fn pairs(&self) -> impl Iterator<Item = &PairStatus> {
        self.entries.iter().flatten()
    }

    pub fn undetermined(&self) -> Vec<(usize, usize)> {
        self.pairs().filter(|p| p.verdict == Verdict::Undetermined).map(|p| (p.i, p.j)).collect()
    }

    /// The K-theoretic shadow of exceptionality: `chi = 1` on the diagonal and
    /// `chi = 0` below it.
    pub fn chi_consistent(&self) -> bool {
        self.pairs().all(|p| match p.i.cmp(&p.j) {
            std::cmp::Ordering::Equal => p.chi == 1,
            std::cmp::Ordering::Greater => p.chi == 0,
            std::cmp::Ordering::Less => true,
        })
    }

    /// Every object exceptional and every forward pair concentrated in degree 0.
    pub fn forward_certified(&self) -> bool {
        self.pairs().filter(|p| p.i <= p.j).all(|p| p.verdict != Verdict::Undetermined)
    }

    pub fn summary(&self) -> serde_json::Value {
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for p in self.pairs() {
            *counts.entry(p.verdict.as_str()).or_default() += 1;
        }
        json!({
            "objects": self.labels.len(),
            "verdict_counts": counts,
            "undetermined": self.undetermined().iter().map(|(i, j)| json!([i, j])).collect::<Vec<_>>(),
            "chi_consistent": self.chi_consistent(),
            "forward_certified": self.forward_certified(),
            "fullness": FULLNESS_NOTICE,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "labels": self.labels,
            "matrix": self.entries.iter().map(|row| row.iter().map(PairStatus::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "summary": self.summary(),
        })
    }
}

/// `chi(E, F) = chi(dual(E) ⊗ F)`.
pub fn euler_pairing(e: &BundleExpr, f: &BundleExpr) -> Result<i64, ChowError> {
    chi(&BundleExpr::tensor(BundleExpr::dual(e.clone()), f.clone()))
}

pub fn verify_collection(spec: &CollectionSpec) -> Result<VerificationMatrix, CollectionError> {
    let ctx = ModuliContext::kronecker_2_3();
    let strata = unstable_strata(&ctx).map_err(StrataError::from)?;
    verify_collection_on(spec, &ctx, &strata)
}

/// [`verify_collection`] with an explicit context and precomputed strata.
pub fn verify_collection_on(
    spec: &CollectionSpec,
    ctx: &ModuliContext,
    strata: &[StratumData],
) -> Result<VerificationMatrix, CollectionError> {
    let chs = spec.objects.iter().map(|o| ch_of(&o.expr)).collect::<Result<Vec<_>, _>>()?;
    let mut entries = Vec::with_capacity(spec.len());
    for (i, a) in spec.objects.iter().enumerate() {
        let mut row = Vec::with_capacity(spec.len());
        for (j, b) in spec.objects.iter().enumerate() {
            let hom = BundleExpr::tensor(BundleExpr::dual(a.expr.clone()), b.expr.clone());
            let report = teleman_certify_on(&hom, ctx, strata)?;
            let chi = crate::chow::euler_pairing_classes(&chs[i], &chs[j])?;
            let blocker = report
                .worst()
                .and_then(|r| r.margin.map(|margin| Blocker { hn_type: r.hn_type.clone(), margin }));
            row.push(PairStatus {
                i,
                j,
                chi,
                teleman_pass: report.pass,
                verdict: Verdict::decide(i, j, chi, report.pass),
                blocker,
            });
        }
        entries.push(row);
    }
    Ok(VerificationMatrix { labels: spec.objects.iter().map(|o| o.label.clone()).collect(), entries })
}

const O0: (&str, &str) = ("O", "O(0)");
const U2D: (&str, &str) = ("U2*", "dual(U2)");
const U1D: (&str, &str) = ("U1*", "dual(U1)");

/// `O, U2*, U1*, U2(1)` twisted by `n`.
fn block_a(n: i64) -> Vec<(String, String)> {
    let twist = |label: &str, expr: &str, k: i64| -> (String, String) {
        match k {
            0 => (label.to_string(), expr.to_string()),
            _ => (format!("{label}({k})"), format!("twist({expr},{k})")),
        }
    };
    vec![
        (if n == 0 { "O".into() } else { format!("O({n})") }, format!("O({n})")),
        twist(U2D.0, U2D.1, n),
        twist(U1D.0, U1D.1, n),
        twist("U2", "U2", n + 1),
    ]
}

fn twisted(label: &str, expr: &str, n: i64) -> (String, String) {
    match n {
        0 => (label.to_string(), expr.to_string()),
        _ if label.starts_with('O') => (format!("O({n})"), format!("O({n})")),
        _ => (format!("{label}({n})"), format!("twist({expr},{n})")),
    }
}

fn sl_u1_dual(n: i64) -> (String, String) {
    twisted("sl(U1*)", "sl(dual(U1))", n)
}

fn concat(parts: Vec<Vec<(String, String)>>) -> Vec<(String, String)> {
    parts.into_iter().flatten().collect()
}

pub const BUILTIN_NAMES: [&str; 8] = ["1exc", "2exc-a", "2exc-b", "2exc-c", "3exc-a", "3exc-b", "4exc", "5exc"];

/// Label/expression pairs of a built-in collection.
pub fn builtin_pairs(name: &str) -> Result<Vec<(String, String)>, CollectionError> {
    let one = |l: &str, e: &str| vec![(l.to_string(), e.to_string())];
    Ok(match name {
        "1exc" => concat(vec![one("sl(U1)", "sl(U1)"), block_a(0), block_a(1), block_a(2)]),
        "2exc-a" => concat(vec![block_a(0), vec![sl_u1_dual(1)], block_a(1), block_a(2)]),
        "2exc-b" => concat(vec![block_a(0), block_a(1), vec![sl_u1_dual(2)], block_a(2)]),
        "2exc-c" => concat(vec![block_a(0), block_a(1), block_a(2), vec![sl_u1_dual(3)]]),
        "3exc-a" => concat(vec![
            block_a(0),
            vec![twisted("O", "O(0)", 1), sl_u1_dual(1), twisted(U2D.0, U2D.1, 1), twisted(U1D.0, U1D.1, 1)],
            one("U2(2)", "twist(U2,2)"),
            block_a(2),
        ]),
        "3exc-b" => concat(vec![
            block_a(0),
            block_a(1),
            vec![twisted("O", "O(0)", 2), sl_u1_dual(2), twisted(U2D.0, U2D.1, 2), twisted(U1D.0, U1D.1, 2)],
            one("U2(3)", "twist(U2,3)"),
        ]),
        "4exc" => concat(vec![
            vec![O0, U2D, U1D].into_iter().map(|(l, e)| (l.to_string(), e.to_string())).collect(),
            vec![twisted("O", "O(0)", 1), twisted(U2D.0, U2D.1, 1), twisted(U1D.0, U1D.1, 1)],
            one("U2(2)", "twist(U2,2)"),
            vec![sl_u1_dual(2), twisted("O", "O(0)", 2)],
            one("U1*⊗U2(2)", "twist(tensor(dual(U1),U2),2)"),
            vec![twisted(U2D.0, U2D.1, 2), twisted(U1D.0, U1D.1, 2)],
            one("U2(3)", "twist(U2,3)"),
        ]),
        "5exc" => concat(vec![
            block_a(0),
            one("U1*⊗U2*", "tensor(dual(U1),dual(U2))"),
            vec![twisted("O", "O(0)", 1), sl_u1_dual(1), twisted(U2D.0, U2D.1, 1), twisted(U1D.0, U1D.1, 1)],
            one("U2(2)", "twist(U2,2)"),
            vec![twisted("O", "O(0)", 2), twisted(U1D.0, U1D.1, 2)],
            one("U2(3)", "twist(U2,3)"),
        ]),
        _ => return Err(CollectionError::UnknownBuiltin(name.to_string())),
    })
}

pub fn builtin(name: &str) -> Result<CollectionSpec, CollectionError> {
    let pairs = builtin_pairs(name)?;
    let borrowed: Vec<(&str, &str)> = pairs.iter().map(|(l, e)| (l.as_str(), e.as_str())).collect();
    CollectionSpec::from_pairs(&borrowed)
}

/// One side of a linear relation: `sum coefficient * ch(expression)`.
fn combination(terms: &[(i64, &str)]) -> Result<ChowElement, CollectionError> {
    let mut out = ChowElement::zero();
    for &(c, text) in terms {
        let e = BundleExpr::parse(text).map_err(ChowError::from)?;
        out = &out + &ch_of(&e)?.scale(&int(c));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub lhs: ChowElement,
    pub rhs: ChowElement,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(IdentityCheck::holds)
    }

    /// Fails with the name of the first identity that does not hold.
    pub fn ensure(&self) -> Result<(), CollectionError> {
        match self.checks.iter().find(|c| !c.holds()) {
            Some(c) => Err(CollectionError::IdentityFailure(c.name.to_string())),
            None => Ok(()),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "pass": self.pass(),
            "identities": self.checks.iter().map(|c| json!({
                "name": c.name,
                "holds": c.holds(),
                "difference": (&c.lhs - &c.rhs).to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

const SL1: &str = "twist(sl(dual(U1)),1)";

/// Linear relations between Chern characters of the collection's building blocks.
pub fn check_ch_identities() -> Result<IdentityReport, CollectionError> {
    let sl_shift = IdentityCheck {
        name: "sl-shift",
        lhs: combination(&[(1, "sl(dual(U1))")])?,
        rhs: combination(&[(1, SL1), (3, "dual(U2)"), (-3, "twist(U2,1)")])?,
    };
    let mixed_tensor_lhs = combination(&[(1, "twist(tensor(dual(U1),U2),1)")])?;
    let mixed_tensor = IdentityCheck {
        name: "mixed-tensor",
        lhs: mixed_tensor_lhs.clone(),
        rhs: combination(&[
            (-1, "U2"),
            (3, "sl(dual(U1))"),
            (6, "O(0)"),
            (-6, "dual(U2)"),
            (-9, "dual(U1)"),
            (9, "twist(U2,1)"),
            (3, "O(1)"),
        ])?,
    };
    let mixed_rhs = combination(&[(-1, "U2"), (6, "O(0)"), (3, "dual(U2)"), (-9, "dual(U1)"), (3, SL1), (3, "O(1)")])?;
    let mixed_tensor_shifted = IdentityCheck { name: "mixed-tensor-shifted", lhs: mixed_tensor_lhs, rhs: mixed_rhs.clone() };
    let explicit = combination(&[
        (-1, "twist(U2,1)"),
        (6, "O(1)"),
        (3, "twist(dual(U2),1)"),
        (-9, "twist(dual(U1),1)"),
        (3, "twist(sl(dual(U1)),2)"),
        (3, "O(2)"),
    ])?;
    let twisted = IdentityCheck {
        name: "mixed-tensor-twisted",
        lhs: combination(&[(1, "twist(tensor(dual(U1),U2),2)")])?,
        rhs: explicit.clone(),
    };
    // Not a fifth relation: the twisted one is the shifted one times ch(O(1)).
    let twist_consistency =
        IdentityCheck { name: "twist-consistency", lhs: &mixed_rhs * &ch_of(&BundleExpr::O(1))?, rhs: explicit };
    Ok(IdentityReport { checks: vec![sl_shift, mixed_tensor, mixed_tensor_shifted, twisted, twist_consistency] })
}

/// Chern characters along the left mutation of `U1*⊗U2(2)` through the second block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationLedger {
    pub l6: ChowElement,
    pub l5: ChowElement,
    pub l4: ChowElement,
    pub l3: ChowElement,
    pub l2: ChowElement,
}

impl MutationLedger {
    pub fn build() -> Result<Self, CollectionError> {
        let ch = |text: &str| -> Result<ChowElement, CollectionError> { combination(&[(1, text)]) };
        let l6 = ch("twist(U2,1)")?;
        let l5 = &ch("O(1)")?.scale(&int(6)) - &l6;
        let l4 = &l5 + &ch("twist(dual(U2),1)")?.scale(&int(3));
        let l3 = &ch("twist(dual(U1),1)")?.scale(&int(9)) - &l4;
        let l2 = &ch("twist(tensor(dual(U1),U1),2)")?.scale(&int(3)) - &ch("twist(tensor(dual(U1),U2),2)")?;
        Ok(Self { l6, l5, l4, l3, l2 })
    }

    pub fn named(&self) -> [(&'static str, &ChowElement); 5] {
        [("L6[-3]", &self.l6), ("L5[-2]", &self.l5), ("L4[-2]", &self.l4), ("L3[-1]", &self.l3), ("L2[-1]", &self.l2)]
    }

    pub fn rank(x: &ChowElement) -> Q {
        x.coords()[0].clone()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerReport {
    pub ledger: MutationLedger,
    /// `(name, holds)` for every bookkeeping assertion.
    pub checks: Vec<(&'static str, bool)>,
}

impl LedgerReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn ensure(&self) -> Result<(), CollectionError> {
        match self.checks.iter().find(|(_, ok)| !ok) {
            Some((name, _)) => Err(CollectionError::LedgerFailure(name.to_string())),
            None => Ok(()),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let classes: serde_json::Map<String, serde_json::Value> = self
            .ledger
            .named()
            .iter()
            .map(|(name, x)| (name.to_string(), json!({"rank": crate::rational::render(&MutationLedger::rank(x)), "ch": x.to_json()})))
            .collect();
        json!({
            "pass": self.pass(),
            "classes": classes,
            "checks": self.checks.iter().map(|(name, ok)| json!({"name": name, "holds": ok})).collect::<Vec<_>>(),
        })
    }
}

pub fn mutation_ledger_check() -> Result<LedgerReport, CollectionError> {
    let ledger = MutationLedger::build()?;
    let rank = |x: &ChowElement| MutationLedger::rank(x);
    let expected_c1 = &ChowElement::c1().scale(&int(6)) - &ledger.l6.graded(1);
    let checks = vec![
        ("rank L5[-2] = 3", rank(&ledger.l5) == int(3)),
        ("rank L4[-2] = 12", rank(&ledger.l4) == int(12)),
        ("rank L3[-1] = 6", rank(&ledger.l3) == int(6)),
        ("rank L2[-1] = 6", rank(&ledger.l2) == int(6)),
        ("ch1 L5[-2] = 6c1 - ch1 U2(1)", ledger.l5.graded(1) == expected_c1),
        ("ch L3[-1] = ch L2[-1]", ledger.l3 == ledger.l2),
    ];
    Ok(LedgerReport { ledger, checks })
}
