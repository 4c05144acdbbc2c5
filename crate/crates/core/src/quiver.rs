//! Quiver combinatorics: dimension vectors, slopes, the Euler form, existence of
//! semistable representations and Harder–Narasimhan types.
//!
//! Existence of semistables is decided by counting. Over a finite field with `t`
//! elements every representation has a unique HN filtration, so
//!
//! ```text
//! |R_d| / |GL_d| = sum over HN types (d^1, ..., d^l) of
//!                  t^(-sum_{k<l} <d^l, d^k>) * prod_k |R_{d^k}^sst| / |GL_{d^k}|
//! ```
//!
//! Solving for the trivial type gives the semistable count of `d` as a rational
//! function of `t`. The semistable locus is a dense open subset of an affine space
//! whenever it is nonempty, so it is nonempty exactly when that function is not zero.

use std::collections::HashMap;
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::poly::{RationalFunction, UniPoly};
use crate::rational::{self, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("undefined slope: the dimension vector is zero")]
    UndefinedSlope,
    #[error("length mismatch: expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("a quiver needs at least one vertex")]
    NoVertices,
    #[error("arrow {tail}->{head} leaves the vertex range 0..{vertex_count}")]
    VertexOutOfRange { tail: usize, head: usize, vertex_count: usize },
    #[error("the quiver has an oriented cycle")]
    Cyclic,
    #[error("theta . d = {0}; the stability parameter must satisfy theta . d = 0")]
    ThetaNotNormalized(i64),
    #[error("not a Harder-Narasimhan type: {0}")]
    NotHnType(String),
    #[error("cannot parse quiver: {0}")]
    Parse(String),
}

/// Finite acyclic quiver with vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: usize,
    arrows: Vec<[usize; 2]>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<(usize, usize)>) -> Result<Self, QuiverError> {
        if vertex_count == 0 {
            return Err(QuiverError::NoVertices);
        }
        for &(source, target) in &arrows {
            if source >= vertex_count || target >= vertex_count {
                return Err(QuiverError::VertexOutOfRange { tail: source, head: target, vertex_count });
            }
        }
        let q = Quiver { vertex_count, arrows };
        if !q.is_acyclic() {
            return Err(QuiverError::Cyclic);
        }
        Ok(q)
    }

    /// `m` parallel arrows `0 -> 1`.
    pub fn kronecker(m: usize) -> Self {
        Quiver { vertex_count: 2, arrows: vec![(0, 1); m] }
    }

    /// Accepts the shorthand `kronecker:m` or `{"vertices": n, "arrows": [[i,j],...]}`.
    pub fn parse(text: &str) -> Result<Self, QuiverError> {
        let text = text.trim();
        if let Some(m) = text.strip_prefix("kronecker:") {
            let m: usize = m
                .trim()
                .parse()
                .map_err(|_| QuiverError::Parse(format!("bad arrow count in {text:?}")))?;
            return Ok(Self::kronecker(m));
        }
        let json: QuiverJson =
            serde_json::from_str(text).map_err(|e| QuiverError::Parse(e.to_string()))?;
        Self::new(json.vertices, json.arrows.into_iter().map(|[i, j]| (i, j)).collect())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(QuiverJson {
            vertices: self.vertex_count,
            arrows: self.arrows.iter().map(|&(i, j)| [i, j]).collect(),
        })
        .expect("quiver serialises")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    fn is_acyclic(&self) -> bool {
        // Kahn's algorithm
        let mut indegree = vec![0usize; self.vertex_count];
        for &(_, t) in &self.arrows {
            indegree[t] += 1;
        }
        let mut ready: Vec<usize> = (0..self.vertex_count).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for &(s, t) in &self.arrows {
                if s == v {
                    indegree[t] -= 1;
                    if indegree[t] == 0 {
                        ready.push(t);
                    }
                }
            }
        }
        seen == self.vertex_count
    }

    fn check_len(&self, len: usize) -> Result<(), QuiverError> {
        if len != self.vertex_count {
            return Err(QuiverError::LengthMismatch { expected: self.vertex_count, found: len });
        }
        Ok(())
    }

    /// Dimension of the representation space `R_d`.
    pub fn rep_space_dim(&self, d: &DimVector) -> i64 {
        self.arrows.iter().map(|&(i, j)| d.get(i) * d.get(j)).sum()
    }
}

/// Non-negative integer vector indexed by the vertices of a quiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(Vec<u32>);

impl DimVector {
    pub fn new(entries: Vec<u32>) -> Self {
        DimVector(entries)
    }

    /// Parses a comma separated list such as `2,3`.
    pub fn parse(text: &str) -> Result<Self, QuiverError> {
        text.split(',')
            .map(|s| s.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map(DimVector)
            .map_err(|_| QuiverError::Parse(format!("bad dimension vector {text:?}")))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> i64 {
        i64::from(self.0[i])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().map(|&x| i64::from(x)).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` if it stays non-negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }

    /// Every `e` with `0 <= e <= self` entrywise, zero included, in lexicographic order.
    pub fn subvectors(&self) -> Vec<DimVector> {
        let mut out = vec![Vec::new()];
        for &bound in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=bound).map(move |x| {
                        let mut v = prefix.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(DimVector).collect()
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Stability parameter `theta` together with the twist vector `a` used to
/// normalise universal bundles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityParameter {
    pub theta: Vec<i64>,
    pub twist: Vec<i64>,
}

impl StabilityParameter {
    pub fn new(theta: Vec<i64>, twist: Vec<i64>) -> Self {
        StabilityParameter { theta, twist }
    }

    /// A parameter with the zero twist, for computations that never descend bundles.
    pub fn untwisted(theta: Vec<i64>) -> Self {
        let n = theta.len();
        StabilityParameter { theta, twist: vec![0; n] }
    }

    /// theta = (3,-2), a = (1,-1): the parameters of the (2,3) moduli space.
    pub fn kronecker_2_3() -> Self {
        StabilityParameter { theta: vec![3, -2], twist: vec![1, -1] }
    }

    pub fn theta_dot(&self, e: &DimVector) -> i64 {
        self.theta.iter().zip(e.entries()).map(|(t, &x)| t * i64::from(x)).sum()
    }

    pub fn twist_dot(&self, e: &DimVector) -> i64 {
        self.twist.iter().zip(e.entries()).map(|(a, &x)| a * i64::from(x)).sum()
    }
}

/// Parses a comma separated integer list such as `3,-2`.
pub fn parse_int_list(text: &str) -> Result<Vec<i64>, QuiverError> {
    text.split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| QuiverError::Parse(format!("bad integer list {text:?}")))
}

/// `mu(e) = (theta . e) / (sum e_i)`.
pub fn slope(theta: &StabilityParameter, e: &DimVector) -> Result<Q, QuiverError> {
    if theta.theta.len() != e.len() {
        return Err(QuiverError::LengthMismatch { expected: theta.theta.len(), found: e.len() });
    }
    if e.is_zero() {
        return Err(QuiverError::UndefinedSlope);
    }
    Ok(rational::frac(theta.theta_dot(e), e.total()))
}

/// `<d,e> = sum_i d_i e_i - sum_{a: i->j} d_i e_j`.
pub fn euler_form(q: &Quiver, d: &DimVector, e: &DimVector) -> Result<i64, QuiverError> {
    q.check_len(d.len())?;
    q.check_len(e.len())?;
    let diagonal: i64 = (0..q.vertex_count).map(|i| d.get(i) * e.get(i)).sum();
    let arrows: i64 = q.arrows.iter().map(|&(i, j)| d.get(i) * e.get(j)).sum();
    Ok(diagonal - arrows)
}

/// Harder–Narasimhan type: dimension vectors of the subquotients of the HN
/// filtration, in order of strictly decreasing slope.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HnType {
    parts: Vec<DimVector>,
}

impl HnType {
    /// Validates the parts against `d` and `theta`.
    pub fn new(
        q: &Quiver,
        d: &DimVector,
        theta: &StabilityParameter,
        parts: Vec<DimVector>,
    ) -> Result<Self, QuiverError> {
        if parts.is_empty() {
            return Err(QuiverError::NotHnType("no parts".into()));
        }
        let mut sum = DimVector(vec![0; d.len()]);
        for p in &parts {
            q.check_len(p.len())?;
            sum = sum.add(p);
        }
        if &sum != d {
            return Err(QuiverError::NotHnType(format!("parts sum to {sum}, not {d}")));
        }
        let slopes = parts.iter().map(|p| slope(theta, p)).collect::<Result<Vec<_>, _>>()?;
        if slopes.windows(2).any(|w| w[0] <= w[1]) {
            return Err(QuiverError::NotHnType("slopes do not strictly decrease".into()));
        }
        let mut counter = SemistableCounter::new(q, theta);
        if let Some(p) = parts.iter().find(|p| !counter.has_semistable(p)) {
            return Err(QuiverError::NotHnType(format!("{p} has no semistable representation")));
        }
        Ok(HnType { parts })
    }

    pub(crate) fn from_parts(parts: Vec<DimVector>) -> Self {
        HnType { parts }
    }

    pub fn parts(&self) -> &[DimVector] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The open stratum of semistable points.
    pub fn is_trivial(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn total(&self) -> DimVector {
        let n = self.parts[0].len();
        self.parts.iter().fold(DimVector(vec![0; n]), |acc, p| acc.add(p))
    }
}

impl fmt::Display for HnType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Ordered decompositions of `d` into nonzero parts of strictly decreasing slope.
fn decreasing_decompositions(d: &DimVector, theta: &StabilityParameter) -> Vec<Vec<DimVector>> {
    fn go(rest: &DimVector, upper: Option<&Q>, theta: &StabilityParameter, out: &mut Vec<Vec<DimVector>>, prefix: &mut Vec<DimVector>) {
        for e in rest.subvectors() {
            if e.is_zero() {
                continue;
            }
            let mu = slope(theta, &e).expect("nonzero part");
            if upper.is_some_and(|u| mu >= *u) {
                continue;
            }
            prefix.push(e.clone());
            if &e == rest {
                out.push(prefix.clone());
            } else {
                let remaining = rest.checked_sub(&e).expect("subvector");
                go(&remaining, Some(&mu), theta, out, prefix);
            }
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(d, None, theta, &mut out, &mut Vec::new());
    out
}

/// Memoised semistable counts `|R_e^sst| / |GL_e|` as rational functions of the
/// field size `t`.
pub struct SemistableCounter<'a> {
    quiver: &'a Quiver,
    theta: &'a StabilityParameter,
    memo: HashMap<DimVector, RationalFunction>,
}

impl<'a> SemistableCounter<'a> {
    pub fn new(quiver: &'a Quiver, theta: &'a StabilityParameter) -> Self {
        SemistableCounter { quiver, theta, memo: HashMap::new() }
    }

    /// `|R_e| / |GL_e|` over the field with `t` elements.
    fn total_count(&self, e: &DimVector) -> RationalFunction {
        let mut group = UniPoly::one();
        for i in 0..e.len() {
            let n = e.entries()[i] as usize;
            for k in 0..n {
                let factor = &UniPoly::monomial(Q::one(), n) - &UniPoly::monomial(Q::one(), k);
                group = &group * &factor;
            }
        }
        let space = UniPoly::monomial(Q::one(), self.quiver.rep_space_dim(e) as usize);
        RationalFunction::new(space, group)
    }

    pub fn count(&mut self, e: &DimVector) -> RationalFunction {
        if let Some(f) = self.memo.get(e) {
            return f.clone();
        }
        let mut f = self.total_count(e);
        for parts in decreasing_decompositions(e, self.theta) {
            if parts.len() < 2 {
                continue;
            }
            let mut exponent = 0i64;
            for k in 0..parts.len() {
                for l in k + 1..parts.len() {
                    exponent -= euler_form(self.quiver, &parts[l], &parts[k]).expect("lengths checked");
                }
            }
            let mut term = RationalFunction::power_of_t(exponent);
            for p in &parts {
                term = term.mul(&self.count(p));
                if term.is_zero() {
                    break;
                }
            }
            f = f.sub(&term);
        }
        self.memo.insert(e.clone(), f.clone());
        f
    }

    pub fn has_semistable(&mut self, e: &DimVector) -> bool {
        !self.count(e).is_zero()
    }
}

/// The semistable count `|R_e^sst(F_t)| / |GL_e(F_t)|` as a rational function of `t`.
pub fn semistable_count(
    q: &Quiver,
    e: &DimVector,
    theta: &StabilityParameter,
) -> Result<RationalFunction, QuiverError> {
    q.check_len(e.len())?;
    slope(theta, e)?;
    Ok(SemistableCounter::new(q, theta).count(e))
}

/// Whether some `theta`-semistable representation of dimension `e` exists.
pub fn has_semistable(q: &Quiver, e: &DimVector, theta: &StabilityParameter) -> Result<bool, QuiverError> {
    Ok(!semistable_count(q, e, theta)?.is_zero())
}

/// All HN types of `d`, the trivial one included when `d` has semistables,
/// sorted lexicographically on the flattened parts.
pub fn enumerate_hn_types(
    q: &Quiver,
    d: &DimVector,
    theta: &StabilityParameter,
) -> Result<Vec<HnType>, QuiverError> {
    q.check_len(d.len())?;
    if theta.theta.len() != d.len() {
        return Err(QuiverError::LengthMismatch { expected: d.len(), found: theta.theta.len() });
    }
    let dot = theta.theta_dot(d);
    if dot != 0 {
        return Err(QuiverError::ThetaNotNormalized(dot));
    }
    if d.is_zero() {
        return Ok(Vec::new());
    }
    let mut counter = SemistableCounter::new(q, theta);
    let mut types: Vec<HnType> = decreasing_decompositions(d, theta)
        .into_iter()
        .filter(|parts| parts.iter().all(|p| counter.has_semistable(p)))
        .map(HnType::from_parts)
        .collect();
    types.sort_by_key(|t| t.parts.iter().flat_map(|p| p.0.clone()).collect::<Vec<_>>());
    Ok(types)
}

/// Codimension of the stratum `S_tau` in `R_d`: `-sum_{k<l} <d^k, d^l>`.
pub fn hn_stratum_codim(q: &Quiver, tau: &HnType) -> Result<i64, QuiverError> {
    let mut codim = 0;
    for k in 0..tau.parts.len() {
        for l in k + 1..tau.parts.len() {
            codim -= euler_form(q, &tau.parts[k], &tau.parts[l])?;
        }
    }
    Ok(codim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use num_traits::Zero;

    fn dv(v: &[u32]) -> DimVector {
        DimVector::new(v.to_vec())
    }

    fn a2() -> Quiver {
        Quiver::new(2, vec![(0, 1)]).unwrap()
    }

    #[test]
    fn slopes() {
        let th = StabilityParameter::kronecker_2_3();
        assert_eq!(slope(&th, &dv(&[2, 3])).unwrap(), Q::zero());
        assert_eq!(slope(&th, &dv(&[1, 1])).unwrap(), frac(1, 2));
        assert_eq!(slope(&th, &dv(&[0, 1])).unwrap(), frac(-2, 1));
        assert_eq!(slope(&th, &dv(&[0, 0])), Err(QuiverError::UndefinedSlope));
    }

    #[test]
    fn euler_form_values() {
        let k3 = Quiver::kronecker(3);
        let d = dv(&[2, 3]);
        assert_eq!(euler_form(&k3, &d, &d).unwrap(), -5);
        assert_eq!(1 - euler_form(&k3, &d, &d).unwrap(), 6);
        assert_eq!(euler_form(&k3, &dv(&[1, 0]), &dv(&[0, 1])).unwrap(), -3);
        assert_eq!(euler_form(&k3, &d, &dv(&[0, 0])).unwrap(), 0);
        assert!(matches!(
            euler_form(&k3, &dv(&[1, 2, 3]), &d),
            Err(QuiverError::LengthMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn quiver_validation() {
        assert_eq!(Quiver::new(2, vec![(0, 1), (1, 0)]), Err(QuiverError::Cyclic));
        assert_eq!(Quiver::new(1, vec![(0, 0)]), Err(QuiverError::Cyclic));
        assert!(matches!(Quiver::new(2, vec![(0, 2)]), Err(QuiverError::VertexOutOfRange { .. })));
        assert_eq!(Quiver::new(0, vec![]), Err(QuiverError::NoVertices));
        let q = Quiver::parse(r#"{"vertices": 3, "arrows": [[0,1],[1,2],[1,2]]}"#).unwrap();
        assert_eq!(q.arrows().len(), 3);
        assert_eq!(Quiver::parse("kronecker:3").unwrap(), Quiver::kronecker(3));
        assert_eq!(Quiver::parse(&Quiver::kronecker(4).to_json().to_string()).unwrap(), Quiver::kronecker(4));
        assert!(Quiver::parse("kronecker:x").is_err());
    }

    #[test]
    fn semistable_existence() {
        let k3 = Quiver::kronecker(3);
        let th = StabilityParameter::kronecker_2_3();
        assert!(has_semistable(&k3, &dv(&[2, 3]), &th).unwrap());
        assert!(has_semistable(&k3, &dv(&[1, 2]), &th).unwrap());
        let th_a2 = StabilityParameter::untwisted(vec![1, -2]);
        assert!(!has_semistable(&a2(), &dv(&[2, 1]), &th_a2).unwrap());
        assert!(has_semistable(&a2(), &dv(&[1, 1]), &th_a2).unwrap());
        assert_eq!(has_semistable(&k3, &dv(&[0, 0]), &th), Err(QuiverError::UndefinedSlope));
    }

    #[test]
    fn kronecker_hn_types() {
        let k3 = Quiver::kronecker(3);
        let th = StabilityParameter::kronecker_2_3();
        let types = enumerate_hn_types(&k3, &dv(&[2, 3]), &th).unwrap();
        assert_eq!(types.len(), 8);
        assert_eq!(types.iter().filter(|t| t.is_trivial()).count(), 1);
        let single = enumerate_hn_types(&k3, &dv(&[1, 0]), &StabilityParameter::untwisted(vec![0, 7])).unwrap();
        assert_eq!(single.len(), 1);
        assert!(single[0].is_trivial());
    }

    #[test]
    fn rejects_unnormalised_theta() {
        let k3 = Quiver::kronecker(3);
        let th = StabilityParameter::untwisted(vec![1, 0]);
        assert_eq!(enumerate_hn_types(&k3, &dv(&[2, 3]), &th), Err(QuiverError::ThetaNotNormalized(2)));
    }

    #[test]
    fn a2_types_have_no_trivial_entry() {
        let th = StabilityParameter::untwisted(vec![1, -2]);
        let types = enumerate_hn_types(&a2(), &dv(&[2, 1]), &th).unwrap();
        assert!(types.iter().all(|t| !t.is_trivial()));
        let listed: Vec<Vec<DimVector>> = types.iter().map(|t| t.parts().to_vec()).collect();
        assert_eq!(
            listed,
            vec![
                vec![dv(&[1, 0]), dv(&[1, 1])],
                vec![dv(&[2, 0]), dv(&[0, 1])],
            ]
        );
    }

    #[test]
    fn codimensions() {
        let k3 = Quiver::kronecker(3);
        let th = StabilityParameter::kronecker_2_3();
        let d = dv(&[2, 3]);
        let t = HnType::new(&k3, &d, &th, vec![dv(&[1, 1]), dv(&[1, 2])]).unwrap();
        assert_eq!(hn_stratum_codim(&k3, &t).unwrap(), 3);
        let t = HnType::new(&k3, &d, &th, vec![dv(&[2, 0]), dv(&[0, 3])]).unwrap();
        assert_eq!(hn_stratum_codim(&k3, &t).unwrap(), 18);
        let t = HnType::new(&k3, &d, &th, vec![d.clone()]).unwrap();
        assert_eq!(hn_stratum_codim(&k3, &t).unwrap(), 0);
    }

    #[test]
    fn hn_type_validation() {
        let k3 = Quiver::kronecker(3);
        let th = StabilityParameter::kronecker_2_3();
        let d = dv(&[2, 3]);
        assert!(HnType::new(&k3, &d, &th, vec![dv(&[1, 2]), dv(&[1, 1])]).is_err());
        assert!(HnType::new(&k3, &d, &th, vec![dv(&[1, 1]), dv(&[1, 1])]).is_err());
        assert!(HnType::new(&k3, &d, &th, vec![]).is_err());
    }
}
