//! Hesselink strata of the unstable locus and Teleman vanishing certificates.
//!
//! Each HN type determines a one-parameter subgroup `lambda` acting on vertex `i`
//! with weight `N * mu(d^s)` on the `s`-th subquotient. A bundle `V` on the moduli
//! space has `H^{>0} = 0` when on every unstable stratum the largest
//! `lambda`-weight of `V` on the fixed locus is strictly below `eta_lambda`, the
//! weight of the determinant of the conormal bundle.

use num_integer::Integer;
use serde::Serialize;
use serde_json::json;

use crate::bundle::{BundleError, BundleExpr, LeafWeights};
use crate::quiver::{enumerate_hn_types, hn_stratum_codim, slope, DimVector, HnType, Quiver, QuiverError, StabilityParameter};
use crate::rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StrataError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error("descent violation: {expr} has central weights {weights:?}, expected all zero")]
    DescentViolation { expr: String, weights: Vec<i64> },
    #[error("bundle expressions need a two-vertex quiver, found {0} vertices")]
    UnsupportedQuiver(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WeightBlock {
    pub weight: i64,
    pub multiplicity: u32,
}

/// One-parameter subgroup of `prod_i GL(d_i)`, as weight blocks per vertex in
/// strictly decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct OnePs {
    blocks: Vec<Vec<WeightBlock>>,
}

impl OnePs {
    pub fn new(blocks: Vec<Vec<WeightBlock>>) -> Self {
        OnePs { blocks }
    }

    /// The central subgroup, weight 1 on every vertex.
    pub fn central(d: &DimVector) -> Self {
        OnePs {
            blocks: d
                .entries()
                .iter()
                .map(|&m| if m == 0 { vec![] } else { vec![WeightBlock { weight: 1, multiplicity: m }] })
                .collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<WeightBlock>] {
        &self.blocks
    }

    pub fn scaled(&self, k: i64) -> Self {
        OnePs {
            blocks: self
                .blocks
                .iter()
                .map(|v| v.iter().map(|b| WeightBlock { weight: b.weight * k, ..*b }).collect())
                .collect(),
        }
    }

    /// Sum of the weights at vertex `i`, with multiplicity.
    pub fn trace(&self, i: usize) -> i64 {
        self.blocks[i].iter().map(|b| b.weight * i64::from(b.multiplicity)).sum()
    }

    /// Weights at vertex `i`, expanded by multiplicity.
    pub fn expanded(&self, i: usize) -> Vec<i64> {
        self.blocks[i]
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.weight, b.multiplicity as usize))
            .collect()
    }
}

/// Weights `N * mu(d^s)` with `N` the least common denominator of the slopes.
pub fn one_ps_from_hn(tau: &HnType, theta: &StabilityParameter) -> Result<OnePs, QuiverError> {
    let slopes = tau.parts().iter().map(|p| slope(theta, p)).collect::<Result<Vec<_>, _>>()?;
    let n = slopes.iter().fold(num_bigint::BigInt::from(1), |acc, s| acc.lcm(s.denom()));
    let weights: Vec<i64> = slopes
        .iter()
        .map(|s| rational::to_i64(&(s * rational::Q::from_integer(n.clone()))).expect("integral weight"))
        .collect();
    let vertices = tau.parts()[0].len();
    let blocks = (0..vertices)
        .map(|i| {
            tau.parts()
                .iter()
                .zip(&weights)
                .filter(|(p, _)| p.entries()[i] > 0)
                .map(|(p, &weight)| WeightBlock { weight, multiplicity: p.entries()[i] })
                .collect()
        })
        .collect();
    Ok(OnePs { blocks })
}

/// Negative weight data of `lambda` on `R_d` and on the Lie algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NegativePart {
    /// Sum of the negative weights on `R_d`, with multiplicity.
    pub rep_weight: i64,
    /// Sum of the negative weights on the Lie algebra, with multiplicity.
    pub lie_weight: i64,
    pub rep_directions: i64,
    pub lie_directions: i64,
}

pub fn negative_part(q: &Quiver, s: &OnePs) -> NegativePart {
    let mut out = NegativePart { rep_weight: 0, lie_weight: 0, rep_directions: 0, lie_directions: 0 };
    let visit = |from: &[WeightBlock], to: &[WeightBlock], weight: &mut i64, count: &mut i64| {
        for a in from {
            for b in to {
                let diff = b.weight - a.weight;
                if diff < 0 {
                    let m = i64::from(a.multiplicity) * i64::from(b.multiplicity);
                    *weight += diff * m;
                    *count += m;
                }
            }
        }
    };
    for &(i, j) in q.arrows() {
        visit(&s.blocks[i], &s.blocks[j], &mut out.rep_weight, &mut out.rep_directions);
    }
    for v in &s.blocks {
        visit(v, v, &mut out.lie_weight, &mut out.lie_directions);
    }
    out
}

/// `eta_lambda`: the weight of `det` of the conormal bundle to the stratum.
pub fn eta(q: &Quiver, s: &OnePs) -> i64 {
    let n = negative_part(q, s);
    n.lie_weight - n.rep_weight
}

/// `sum_j a_j tr(lambda_j)`, added to every weight of the universal bundles.
pub fn shift(s: &OnePs, twist: &[i64]) -> i64 {
    twist.iter().enumerate().map(|(j, a)| a * s.trace(j)).sum()
}

/// Weights of the universal bundles `U_i` on the fixed locus of `s`.
pub fn universal_weights(s: &OnePs, twist: &[i64]) -> Vec<Vec<i64>> {
    let c = shift(s, twist);
    (0..s.blocks.len()).map(|i| s.expanded(i).into_iter().map(|w| w + c).collect()).collect()
}

/// Quiver, dimension vector and stability data of a moduli space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliContext {
    pub quiver: Quiver,
    pub d: DimVector,
    pub stability: StabilityParameter,
}

impl ModuliContext {
    /// The 3-Kronecker quiver, d = (2,3), theta = (3,-2), a = (1,-1).
    pub fn kronecker_2_3() -> Self {
        ModuliContext {
            quiver: Quiver::kronecker(3),
            d: DimVector::new(vec![2, 3]),
            stability: StabilityParameter::kronecker_2_3(),
        }
    }

    fn leaf_weights(&self, s: &OnePs) -> Result<LeafWeights, StrataError> {
        if self.quiver.vertex_count() != 2 {
            return Err(StrataError::UnsupportedQuiver(self.quiver.vertex_count()));
        }
        let mut w = universal_weights(s, &self.stability.twist);
        let u2 = w.pop().expect("two vertices");
        let u1 = w.pop().expect("two vertices");
        Ok(LeafWeights { u1, u2 })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumData {
    pub hn_type: HnType,
    pub one_ps: OnePs,
    pub eta: i64,
    pub shift: i64,
    pub codim: i64,
}

impl StratumData {
    pub fn new(ctx: &ModuliContext, hn_type: HnType) -> Result<Self, QuiverError> {
        let one_ps = one_ps_from_hn(&hn_type, &ctx.stability)?;
        Ok(StratumData {
            eta: eta(&ctx.quiver, &one_ps),
            shift: shift(&one_ps, &ctx.stability.twist),
            codim: hn_stratum_codim(&ctx.quiver, &hn_type)?,
            one_ps,
            hn_type,
        })
    }

    pub fn universal_weights(&self, twist: &[i64]) -> Vec<Vec<i64>> {
        universal_weights(&self.one_ps, twist)
    }
}

/// Data of every unstable stratum, in HN type order.
pub fn unstable_strata(ctx: &ModuliContext) -> Result<Vec<StratumData>, QuiverError> {
    enumerate_hn_types(&ctx.quiver, &ctx.d, &ctx.stability)?
        .into_iter()
        .filter(|t| !t.is_trivial())
        .map(|t| StratumData::new(ctx, t))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TelemanRecord {
    pub hn_type: HnType,
    pub eta: i64,
    /// `None` for the zero bundle.
    pub max_weight: Option<i64>,
    pub margin: Option<i64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TelemanReport {
    pub records: Vec<TelemanRecord>,
    pub pass: bool,
}

impl TelemanReport {
    /// The failing record with the smallest margin, if any.
    pub fn worst(&self) -> Option<&TelemanRecord> {
        self.records.iter().filter(|r| !r.pass).min_by_key(|r| r.margin)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "pass": self.pass,
            "strata": self.records.iter().map(|r| json!({
                "hn_type": r.hn_type,
                "eta": r.eta,
                "max_weight": r.max_weight,
                "margin": r.margin,
                "pass": r.pass,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Certifies `H^{>0}(Y, expr) = 0` when every unstable stratum passes.
/// A failure means only that this criterion is inconclusive.
pub fn teleman_certify(expr: &BundleExpr, ctx: &ModuliContext) -> Result<TelemanReport, StrataError> {
    let strata = unstable_strata(ctx)?;
    teleman_certify_on(expr, ctx, &strata)
}

/// [`teleman_certify`] against precomputed strata.
pub fn teleman_certify_on(
    expr: &BundleExpr,
    ctx: &ModuliContext,
    strata: &[StratumData],
) -> Result<TelemanReport, StrataError> {
    check_descent(expr, ctx)?;
    let mut records = Vec::with_capacity(strata.len());
    for s in strata {
        let weights = expr.weights(&ctx.leaf_weights(&s.one_ps)?)?;
        let max_weight = weights.first().copied();
        let margin = max_weight.map(|m| s.eta - m);
        records.push(TelemanRecord {
            hn_type: s.hn_type.clone(),
            eta: s.eta,
            max_weight,
            margin,
            pass: margin.is_none_or(|m| m >= 1),
        });
    }
    let pass = records.iter().all(|r| r.pass);
    Ok(TelemanReport { records, pass })
}

/// The scalar subgroup must act trivially for `expr` to live on the quotient.
pub fn check_descent(expr: &BundleExpr, ctx: &ModuliContext) -> Result<(), StrataError> {
    let weights = expr.weights(&ctx.leaf_weights(&OnePs::central(&ctx.d))?)?;
    if weights.iter().any(|&w| w != 0) {
        return Err(StrataError::DescentViolation { expr: expr.to_string(), weights });
    }
    Ok(())
}
