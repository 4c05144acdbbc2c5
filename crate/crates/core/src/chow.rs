//! The rational Chow ring of the (2,3) moduli space of the 3-Kronecker quiver.
//!
//! Generators are `c_i = c_i(U2*)` and `d_2 = c_2(U1*)`, with `c_1(U1*) = c_1`.
//! The ring has rank 1,1,3,3,3,1,1 in degrees 0..6 and the point class is `c3^2`.
//! Every monomial of degree at most 6 is stored once as basis coordinates;
//! multiplication is bilinear lookup in that table.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::bundle::{BundleError, BundleExpr};
use crate::rational::{self, frac, int, Q};

pub const BASIS_LEN: usize = 13;

pub const BASIS_LABELS: [&str; BASIS_LEN] = [
    "[Y]", "c1", "c1^2", "c2", "d2", "c1c2", "c1d2", "c3", "c2^2", "c2d2", "d2^2", "c2c3", "c3^2",
];

pub const BASIS_DEGREES: [u32; BASIS_LEN] = [0, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4, 5, 6];

/// Exponents of `(c1, c2, c3, d2)`.
type Monomial = [u32; 4];

const BASIS_MONOMIALS: [Monomial; BASIS_LEN] = [
    [0, 0, 0, 0],
    [1, 0, 0, 0],
    [2, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 0, 1],
    [1, 1, 0, 0],
    [1, 0, 0, 1],
    [0, 0, 1, 0],
    [0, 2, 0, 0],
    [0, 1, 0, 1],
    [0, 0, 0, 2],
    [0, 1, 1, 0],
    [0, 0, 2, 0],
];

const TOP: usize = 6;

fn degree(m: &Monomial) -> u32 {
    m[0] + 2 * m[1] + 3 * m[2] + 2 * m[3]
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChowError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error("ring inconsistency: Euler characteristic {0} is not an integer")]
    RingInconsistency(String),
    #[error("exp needs a class without degree zero part")]
    NotNilpotent,
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
}

/// Element of the rational Chow ring in the fixed basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChowElement {
    coords: Vec<Q>,
}

impl ChowElement {
    pub fn zero() -> Self {
        ChowElement { coords: vec![Q::zero(); BASIS_LEN] }
    }

    pub fn one() -> Self {
        Self::scalar(Q::one())
    }

    pub fn scalar(c: Q) -> Self {
        let mut x = Self::zero();
        x.coords[0] = c;
        x
    }

    pub fn basis(i: usize) -> Self {
        let mut x = Self::zero();
        x.coords[i] = Q::one();
        x
    }

    /// Panics unless `coords` has one entry per basis class.
    pub fn from_coords(coords: Vec<Q>) -> Self {
        assert_eq!(coords.len(), BASIS_LEN, "wrong number of coordinates");
        ChowElement { coords }
    }

    pub fn from_ratios(coords: &[(i64, i64)]) -> Self {
        Self::from_coords(coords.iter().map(|&(n, d)| frac(n, d)).collect())
    }

    pub fn c1() -> Self {
        Self::basis(1)
    }
    pub fn c2() -> Self {
        Self::basis(3)
    }
    pub fn d2() -> Self {
        Self::basis(4)
    }
    pub fn c3() -> Self {
        Self::basis(7)
    }

    /// `c1^a c2^b c3^c d2^e` in basis coordinates.
    pub fn monomial(a: u32, b: u32, c: u32, e: u32) -> Self {
        reduce(&[a, b, c, e])
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn coord(&self, label: &str) -> Option<&Q> {
        BASIS_LABELS.iter().position(|l| *l == label).map(|i| &self.coords[i])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Degree `k` component.
    pub fn graded(&self, k: u32) -> Self {
        self.map_graded(|deg, c| if deg == k { c.clone() } else { Q::zero() })
    }

    fn map_graded(&self, f: impl Fn(u32, &Q) -> Q) -> Self {
        ChowElement {
            coords: self.coords.iter().zip(BASIS_DEGREES).map(|(c, deg)| f(deg, c)).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.map_graded(|_, x| x * c)
    }

    /// Coefficient of the point class.
    pub fn integral(&self) -> Q {
        self.coords[BASIS_LEN - 1].clone()
    }

    /// Class of the dual bundle: negates odd degrees.
    pub fn dual(&self) -> Self {
        self.adams(-1)
    }

    /// Adams operation on Chern characters: scales degree `k` by `n^k`.
    pub fn adams(&self, n: i64) -> Self {
        let n = int(n);
        self.map_graded(|deg, c| c * num_traits::pow(n.clone(), deg as usize))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `exp(x)` for `x` without constant term.
    pub fn exp(&self) -> Result<Self, ChowError> {
        if !self.coords[0].is_zero() {
            return Err(ChowError::NotNilpotent);
        }
        let mut total = Self::one();
        let mut term = Self::one();
        for k in 1..=TOP as i64 {
            term = (&term * self).scale(&frac(1, k));
            total = &total + &term;
        }
        Ok(total)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = BASIS_LABELS
            .iter()
            .zip(&self.coords)
            .map(|(l, c)| (l.to_string(), serde_json::Value::String(rational::render(c))))
            .collect();
        serde_json::Value::Object(map)
    }

    /// Inverse of [`ChowElement::to_json`]; missing labels read as zero.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, ChowError> {
        let mut x = Self::zero();
        let map = value.as_object().ok_or_else(|| ChowError::UnknownLabel(value.to_string()))?;
        for (k, v) in map {
            let i = BASIS_LABELS.iter().position(|l| l == k).ok_or_else(|| ChowError::UnknownLabel(k.clone()))?;
            let parsed = match v {
                serde_json::Value::String(s) => rational::parse(s),
                serde_json::Value::Number(n) => n.as_i64().map(int),
                _ => None,
            };
            x.coords[i] = parsed.ok_or_else(|| ChowError::UnknownLabel(format!("{k}: {v}")))?;
        }
        Ok(x)
    }

    /// Parses a polynomial in `c1, c2, c3, d1, d2` using `+ - * ^` and parentheses.
    /// Juxtaposition multiplies, `d1` means `c1` and `[Y]` is the unit.
    pub fn parse(text: &str) -> Result<Self, ChowError> {
        let mut p = PolyParser { text, pos: 0 };
        let x = p.sum()?;
        p.skip_ws();
        if p.pos < text.len() {
            return Err(p.error("trailing input"));
        }
        Ok(x)
    }
}

impl fmt::Display for ChowElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, label) in self.coords.iter().zip(BASIS_LABELS) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            if label == "[Y]" {
                write!(f, "{a}")?;
            } else {
                write!(f, "{}{label}", rational::coefficient_prefix(&a))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &ChowElement {
    type Output = ChowElement;
    fn add(self, rhs: &ChowElement) -> ChowElement {
        ChowElement { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ChowElement {
    type Output = ChowElement;
    fn sub(self, rhs: &ChowElement) -> ChowElement {
        ChowElement { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &ChowElement {
    type Output = ChowElement;
    fn neg(self) -> ChowElement {
        self.scale(&int(-1))
    }
}

impl Mul for &ChowElement {
    type Output = ChowElement;
    fn mul(self, rhs: &ChowElement) -> ChowElement {
        let table = product_table();
        let mut out = ChowElement::zero();
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                if let Some(p) = &table[i][j] {
                    let ab = a * b;
                    for (k, c) in p.iter().enumerate() {
                        if !c.is_zero() {
                            out.coords[k] += &ab * c;
                        }
                    }
                }
            }
        }
        out
    }
}

pub fn chow_mul(x: &ChowElement, y: &ChowElement) -> ChowElement {
    x * y
}

pub fn integral(x: &ChowElement) -> Q {
    x.integral()
}

/// Relations expressing the non-basis monomials of degree 3 and 4.
fn low_degree_relations() -> Vec<(Monomial, Vec<(usize, Q)>)> {
    vec![
        ([3, 0, 0, 0], vec![(6, int(4)), (7, int(-3))]),
        ([4, 0, 0, 0], vec![(8, int(-3)), (9, int(9)), (10, int(3))]),
        ([2, 1, 0, 0], vec![(10, int(3)), (9, int(1))]),
        ([2, 0, 0, 1], vec![(10, int(3))]),
        ([1, 0, 1, 0], vec![(8, int(1)), (9, int(-3)), (10, int(3))]),
    ]
}

/// Degree 5 monomials as multiples of `c2c3`.
const DEGREE_FIVE: [(Monomial, i64, i64); 9] = [
    ([0, 1, 1, 0], 1, 1),
    ([0, 0, 1, 1], 2, 3),
    ([2, 0, 1, 0], 5, 3),
    ([5, 0, 0, 0], 19, 1),
    ([3, 1, 0, 0], 9, 1),
    ([3, 0, 0, 1], 6, 1),
    ([1, 2, 0, 0], 14, 3),
    ([1, 0, 0, 2], 2, 1),
    ([1, 1, 0, 1], 3, 1),
];

/// Top intersection numbers.
const DEGREE_SIX: [(Monomial, i64); 14] = [
    ([6, 0, 0, 0], 57),
    ([4, 1, 0, 0], 27),
    ([4, 0, 0, 1], 18),
    ([3, 0, 1, 0], 5),
    ([2, 2, 0, 0], 14),
    ([2, 0, 0, 2], 6),
    ([2, 1, 0, 1], 9),
    ([1, 0, 1, 1], 2),
    ([1, 1, 1, 0], 3),
    ([0, 3, 0, 0], 9),
    ([0, 2, 0, 1], 5),
    ([0, 1, 0, 2], 3),
    ([0, 0, 2, 0], 1),
    ([0, 0, 0, 3], 2),
];

fn reduction_table() -> &'static HashMap<Monomial, Vec<Q>> {
    static TABLE: OnceLock<HashMap<Monomial, Vec<Q>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let unit = |i: usize, c: Q| {
            let mut v = vec![Q::zero(); BASIS_LEN];
            v[i] = c;
            v
        };
        let mut t = HashMap::new();
        for (i, m) in BASIS_MONOMIALS.iter().enumerate() {
            t.insert(*m, unit(i, Q::one()));
        }
        for (m, terms) in low_degree_relations() {
            let mut v = vec![Q::zero(); BASIS_LEN];
            for (i, c) in terms {
                v[i] += c;
            }
            t.insert(m, v);
        }
        for (m, n, d) in DEGREE_FIVE {
            t.insert(m, unit(11, frac(n, d)));
        }
        for (m, n) in DEGREE_SIX {
            t.insert(m, unit(12, int(n)));
        }
        t
    })
}

fn reduce(m: &Monomial) -> ChowElement {
    if degree(m) as usize > TOP {
        return ChowElement::zero();
    }
    let coords = reduction_table()
        .get(m)
        .unwrap_or_else(|| panic!("monomial {m:?} missing from the reduction table"))
        .clone();
    ChowElement { coords }
}

fn product_table() -> &'static Vec<Vec<Option<Vec<Q>>>> {
    static TABLE: OnceLock<Vec<Vec<Option<Vec<Q>>>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..BASIS_LEN)
            .map(|i| {
                (0..BASIS_LEN)
                    .map(|j| {
                        let m: Monomial = std::array::from_fn(|k| BASIS_MONOMIALS[i][k] + BASIS_MONOMIALS[j][k]);
                        (degree(&m) as usize <= TOP).then(|| reduce(&m).coords)
                    })
                    .collect()
            })
            .collect()
    })
}

/// `sum_k coefficient_k * c1^a c2^b c3^c d2^e`.
fn polynomial(terms: &[(Q, Monomial)]) -> ChowElement {
    terms.iter().fold(ChowElement::zero(), |acc, (c, m)| &acc + &reduce(m).scale(c))
}

pub fn todd_y() -> ChowElement {
    polynomial(&[
        (int(1), [0, 0, 0, 0]),
        (frac(3, 2), [1, 0, 0, 0]),
        (int(1), [2, 0, 0, 0]),
        (frac(5, 12), [0, 0, 0, 1]),
        (frac(3, 8), [3, 0, 0, 0]),
        (frac(5, 8), [1, 0, 0, 1]),
        (frac(-1, 4), [0, 2, 0, 0]),
        (frac(3, 4), [0, 1, 0, 1]),
        (frac(553, 360), [0, 0, 0, 2]),
        (frac(77, 60), [0, 1, 1, 0]),
        (int(1), [0, 0, 2, 0]),
    ])
}

/// Total Chern class of the tangent bundle.
pub fn tangent_chern() -> ChowElement {
    polynomial(&[
        (int(1), [0, 0, 0, 0]),
        (int(3), [1, 0, 0, 0]),
        (int(3), [2, 0, 0, 0]),
        (int(5), [0, 0, 0, 1]),
        (int(-9), [0, 0, 1, 0]),
        (int(16), [1, 0, 0, 1]),
        (int(4), [0, 0, 0, 2]),
        (int(27), [0, 1, 0, 1]),
        (int(-9), [0, 2, 0, 0]),
        (int(17), [0, 1, 1, 0]),
        (int(13), [0, 0, 2, 0]),
    ])
}

pub fn ch_u2() -> ChowElement {
    ChowElement::from_ratios(&[
        (3, 1), (-1, 1), (1, 2), (-1, 1), (0, 1), (1, 2), (-2, 3), (0, 1),
        (1, 8), (-7, 24), (1, 8), (-1, 180), (0, 1),
    ])
}

pub fn ch_u1_dual() -> ChowElement {
    ChowElement::from_ratios(&[
        (2, 1), (1, 1), (1, 2), (0, 1), (-1, 1), (0, 1), (1, 6), (-1, 2),
        (-1, 8), (3, 8), (-7, 24), (-1, 120), (-1, 720),
    ])
}

/// Chern character of a bundle expression.
pub fn ch_of(e: &BundleExpr) -> Result<ChowElement, ChowError> {
    use BundleExpr::*;
    Ok(match e {
        U1 => ch_u1_dual().dual(),
        U2 => ch_u2(),
        O(n) => ChowElement::c1().scale(&int(*n)).exp()?,
        Dual(e) => ch_of(e)?.dual(),
        Tensor(e, f) => &ch_of(e)? * &ch_of(f)?,
        Sum(e, f) => &ch_of(e)? + &ch_of(f)?,
        Det(e) => ch_of(e)?.graded(1).exp()?,
        Sl(e) => {
            e.rank()?;
            let x = ch_of(e)?;
            &(&x * &x.dual()) - &ChowElement::one()
        }
        Sym2(e) => {
            let x = ch_of(e)?;
            (&(&x * &x) + &x.adams(2)).scale(&frac(1, 2))
        }
        Wedge2(e) => {
            let x = ch_of(e)?;
            (&(&x * &x) - &x.adams(2)).scale(&frac(1, 2))
        }
    })
}

/// `integral of x * todd`, which must be an integer for a class of a bundle.
pub fn chi_of_class(x: &ChowElement) -> Result<i64, ChowError> {
    let value = (x * &todd_y()).integral();
    rational::to_i64(&value).ok_or_else(|| ChowError::RingInconsistency(rational::render(&value)))
}

pub fn chi(e: &BundleExpr) -> Result<i64, ChowError> {
    chi_of_class(&ch_of(e)?)
}

/// `chi(E, F) = sum (-1)^i dim Ext^i(E, F)`.
pub fn euler_pairing_classes(e: &ChowElement, f: &ChowElement) -> Result<i64, ChowError> {
    chi_of_class(&(&e.dual() * f))
}

struct PolyParser<'a> {
    text: &'a str,
    pos: usize,
}

impl PolyParser<'_> {
    fn error(&self, message: &str) -> ChowError {
        ChowError::Syntax { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.as_bytes().get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<ChowElement, ChowError> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.product()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<ChowElement, ChowError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'c' | b'd' | b'(' | b'[') => acc = &acc * &self.power()?,
                Some(b) if b.is_ascii_digit() => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<ChowElement, ChowError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.digits()?;
            let k: u32 = k.parse().map_err(|_| self.error("exponent out of range"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Result<&str, ChowError> {
        let start = self.pos;
        let len = self.text[start..].find(|c: char| !c.is_ascii_digit()).unwrap_or(self.text.len() - start);
        if len == 0 {
            return Err(self.error("expected digits"));
        }
        self.pos += len;
        Ok(&self.text[start..start + len])
    }

    fn atom(&mut self) -> Result<ChowElement, ChowError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.power()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let x = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(x)
            }
            Some(b'[') => {
                if self.text[self.pos..].starts_with("[Y]") {
                    self.pos += 3;
                    Ok(ChowElement::one())
                } else {
                    Err(self.error("expected [Y]"))
                }
            }
            Some(b) if b.is_ascii_digit() => {
                let n = self.digits()?.to_string();
                let mut value = rational::parse(&n).expect("digits");
                if self.text[self.pos..].starts_with('/') {
                    self.pos += 1;
                    let d = self.digits()?.to_string();
                    value = rational::parse(&format!("{n}/{d}")).ok_or_else(|| self.error("zero denominator"))?;
                }
                Ok(ChowElement::scalar(value))
            }
            Some(b'c' | b'd') => {
                let start = self.pos;
                let name = self.text.get(start..start + 2).unwrap_or("");
                let x = match name {
                    "c1" | "d1" => ChowElement::c1(),
                    "c2" => ChowElement::c2(),
                    "c3" => ChowElement::c3(),
                    "d2" => ChowElement::d2(),
                    _ => return Err(self.error("unknown generator")),
                };
                self.pos += 2;
                Ok(x)
            }
            _ => Err(self.error("expected a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> ChowElement {
        ChowElement::parse(text).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(&ChowElement::c1() * &p("c1^2"), p("4c1d2 - 3c3"));
        assert_eq!(&ChowElement::c1() * &p("c2c3"), p("3c3^2"));
        let x = p("2 - c1 + 1/3 c2d2 + 7c3^2");
        assert_eq!(&ChowElement::one() * &x, x);
        assert!((&p("c3") * &p("c2^2")).is_zero());
    }

    #[test]
    fn integrals() {
        assert_eq!(ChowElement::c1().pow(6).integral(), int(57));
        assert_eq!((&ChowElement::c3() * &ChowElement::c3()).integral(), int(1));
        assert_eq!(p("c1 + c2d2 + c2c3").integral(), int(0));
    }

    #[test]
    fn todd_and_tangent() {
        let t = todd_y();
        assert_eq!(t.coords()[0], int(1));
        assert_eq!(t.integral(), int(1));
        assert_eq!(t.graded(3), p("17/8 c1d2 - 9/8 c3"));
        let c = tangent_chern();
        assert_eq!(c.graded(1), p("3c1"));
        assert_eq!(c.integral(), int(13));
        assert_eq!(BASIS_LEN, 13);
    }

    #[test]
    fn chern_characters() {
        assert_eq!(ch_of(&BundleExpr::O(1)).unwrap().coord("c1d2"), Some(&frac(2, 3)));
        assert_eq!(ch_of(&BundleExpr::O(1)).unwrap().coord("c3"), Some(&frac(-1, 2)));
        let u2 = BundleExpr::U2;
        assert_eq!(ch_of(&BundleExpr::dual(BundleExpr::dual(u2.clone()))).unwrap(), ch_u2());
        assert_eq!(ch_of(&BundleExpr::O(0)).unwrap(), ChowElement::one());
    }

    #[test]
    fn euler_characteristics() {
        let e = |t: &str| chi(&BundleExpr::parse(t).unwrap()).unwrap();
        assert_eq!(e("O(0)"), 1);
        assert_eq!(e("dual(U2)"), 6);
        assert_eq!(e("dual(U1)"), 8);
        assert_eq!(e("tensor(U2,dual(U1))"), 3);
        assert_eq!(e("tensor(dual(U2),dual(U2))"), 39);
        assert_eq!(e("tensor(dual(U2),dual(U1))"), 48);
        assert_eq!(e("tensor(sl(U1),sl(U1))"), 1);
        assert_eq!(e("O(-3)"), 1);
    }

    #[test]
    fn parser() {
        assert_eq!(p("d1"), ChowElement::c1());
        assert_eq!(p("c1*c2"), p("c1c2"));
        assert_eq!(p("(c1 + c2)^2"), &(&p("c1^2") + &p("2c1c2")) + &p("c2^2"));
        assert_eq!(p("-c1 - -c1"), ChowElement::zero());
        assert_eq!(p("[Y]"), ChowElement::one());
        assert!(matches!(ChowElement::parse("c4"), Err(ChowError::Syntax { position: 0, .. })));
        assert!(matches!(ChowElement::parse("c1 +"), Err(ChowError::Syntax { position: 4, .. })));
        assert!(matches!(ChowElement::parse("(c1"), Err(ChowError::Syntax { .. })));
    }

    #[test]
    fn display_and_json_round_trip() {
        let x = p("3 - c1 + 1/2 c1^2 - 2/3 c1d2 - 1/180 c2c3");
        assert_eq!(x.to_string(), "3 - c1 + (1/2)c1^2 - (2/3)c1d2 - (1/180)c2c3");
        assert_eq!(p(&x.to_string()), x);
        assert_eq!(ChowElement::from_json(&x.to_json()).unwrap(), x);
        assert_eq!(ChowElement::zero().to_string(), "0");
    }
}
