//! Points of the moduli space as 2x3 matrices of linear forms in `W = <x,y,z>`.
//!
//! A matrix `r` with rows `(A,B,C)` and `(D,E,F)` spans a 3-dimensional space of
//! quadrics `H_r` through its maximal minors, and a 2-dimensional space of
//! syzygies in `S^2W ⊗ W` which is identified with an abelian plane in `sl_3`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg;
use crate::poly::UniPoly;
use crate::rational::{self, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("expected 2 rows of 3 entries, found {0}")]
    Shape(String),
    #[error("the matrix is not stable")]
    NotStable,
    #[error("syzygy tensor lies outside the sl3 dictionary")]
    OutsideDictionary,
    #[error("(0,0,0) is not a point of the projective plane")]
    ZeroPoint,
    #[error("({0}) is a blown-up point; use the exceptional curve parametrisation")]
    BaseLocus(String),
    #[error("exceptional curve index {0} is not 0, 1 or 2")]
    BadIndex(usize),
}

const VARS: [&str; 3] = ["x", "y", "z"];

/// Element of `W`: coefficients of `x, y, z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm(pub [Q; 3]);

impl LinearForm {
    pub fn zero() -> Self {
        LinearForm(std::array::from_fn(|_| Q::zero()))
    }

    pub fn var(i: usize) -> Self {
        let mut f = Self::zero();
        f.0[i] = Q::one();
        f
    }

    pub fn x() -> Self {
        Self::var(0)
    }
    pub fn y() -> Self {
        Self::var(1)
    }
    pub fn z() -> Self {
        Self::var(2)
    }

    pub fn scale(&self, c: &Q) -> Self {
        LinearForm(std::array::from_fn(|i| &self.0[i] * c))
    }

    pub fn add(&self, other: &Self) -> Self {
        LinearForm(std::array::from_fn(|i| &self.0[i] + &other.0[i]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Quadric {
        let mut q = Quadric::zero();
        for i in 0..3 {
            for j in 0..3 {
                q.0[quadric_index(i, j)] += &self.0[i] * &other.0[j];
            }
        }
        q
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.0.iter().zip(VARS))
    }
}

/// Monomials of `S^2W` in the order x^2, y^2, z^2, xy, xz, yz.
pub const QUADRIC_MONOMIALS: [&str; 6] = ["x^2", "y^2", "z^2", "xy", "xz", "yz"];

fn quadric_index(i: usize, j: usize) -> usize {
    match (i.min(j), i.max(j)) {
        (a, b) if a == b => a,
        (0, 1) => 3,
        (0, 2) => 4,
        _ => 5,
    }
}

/// Exponent vector of a quadric monomial.
fn quadric_exponents(m: usize) -> [usize; 3] {
    [[2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [1, 0, 1], [0, 1, 1]][m]
}

/// Element of `S^2W` over the monomials of [`QUADRIC_MONOMIALS`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quadric(pub [Q; 6]);

impl Quadric {
    pub fn zero() -> Self {
        Quadric(std::array::from_fn(|_| Q::zero()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Quadric(std::array::from_fn(|i| &self.0[i] - &other.0[i]))
    }

    pub fn scale(&self, c: &Q) -> Self {
        Quadric(std::array::from_fn(|i| &self.0[i] * c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for Quadric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.0.iter().zip(QUADRIC_MONOMIALS))
    }
}

fn write_terms<'a>(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (&'a Q, &'a str)>) -> fmt::Result {
    let mut first = true;
    for (c, name) in terms {
        if c.is_zero() {
            continue;
        }
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
        }
        first = false;
        write!(f, "{}{name}", rational::coefficient_prefix(&c.abs()))?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// The three maximal minors `(BF-CE, AF-CD, AE-BD)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricSpace(pub [Quadric; 3]);

impl QuadricSpace {
    pub fn rank(&self) -> usize {
        linalg::rank(&self.rows())
    }

    pub fn is_independent(&self) -> bool {
        self.rank() == 3
    }

    fn rows(&self) -> Vec<Vec<Q>> {
        self.0.iter().map(|q| q.0.to_vec()).collect()
    }

    /// Whether both families span the same subspace of `S^2W`.
    pub fn same_span(&self, other: &[Quadric]) -> bool {
        let theirs: Vec<Vec<Q>> = other.iter().map(|q| q.0.to_vec()).collect();
        linalg::same_span(&self.rows(), &theirs)
    }

    /// Plücker coordinates: the 3x3 minors of the coefficient matrix, columns in
    /// lexicographic order.
    pub fn plucker(&self) -> Vec<Q> {
        let m = self.rows();
        let mut out = Vec::with_capacity(20);
        for i in 0..6 {
            for j in i + 1..6 {
                for k in j + 1..6 {
                    out.push(det3(&[
                        [m[0][i].clone(), m[0][j].clone(), m[0][k].clone()],
                        [m[1][i].clone(), m[1][j].clone(), m[1][k].clone()],
                        [m[2][i].clone(), m[2][j].clone(), m[2][k].clone()],
                    ]));
                }
            }
        }
        out
    }
}

fn det3(m: &[[Q; 3]; 3]) -> Q {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// 2x3 matrix of linear forms, rows `(A,B,C)` and `(D,E,F)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearFormMatrix {
    pub rows: [[LinearForm; 3]; 2],
}

impl LinearFormMatrix {
    pub fn new(rows: [[LinearForm; 3]; 2]) -> Self {
        LinearFormMatrix { rows }
    }

    /// Parses `"x,y,0;0,y,z"`: rows split by `;`, entries by `,`, each entry a
    /// linear form such as `2x - 1/3 z`.
    pub fn parse(text: &str) -> Result<Self, RepError> {
        let rows: Vec<&str> = text.split(';').collect();
        if rows.len() != 2 {
            return Err(RepError::Shape(format!("{} rows", rows.len())));
        }
        let mut offset = 0;
        let mut parsed = Vec::with_capacity(2);
        for row in rows {
            let entries: Vec<&str> = row.split(',').collect();
            if entries.len() != 3 {
                return Err(RepError::Shape(format!("a row with {} entries", entries.len())));
            }
            let mut forms = Vec::with_capacity(3);
            for e in entries {
                forms.push(parse_linear_form(e, offset)?);
                offset += e.len() + 1;
            }
            parsed.push(<[LinearForm; 3]>::try_from(forms).expect("three entries"));
        }
        let [r0, r1] = <[[LinearForm; 3]; 2]>::try_from(parsed).expect("two rows");
        Ok(LinearFormMatrix { rows: [r0, r1] })
    }

    pub fn entry(&self, row: usize, col: usize) -> &LinearForm {
        &self.rows[row][col]
    }

    /// `g * r * h` for `g` in `GL_2` and `h` in `GL_3`.
    pub fn transform(&self, g: &[[Q; 2]; 2], h: &[[Q; 3]; 3]) -> Self {
        let left: [[LinearForm; 3]; 2] = std::array::from_fn(|i| {
            std::array::from_fn(|j| self.rows[0][j].scale(&g[i][0]).add(&self.rows[1][j].scale(&g[i][1])))
        });
        let rows = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..3).fold(LinearForm::zero(), |acc, k| acc.add(&left[i][k].scale(&h[k][j])))
            })
        });
        LinearFormMatrix { rows }
    }
}

impl fmt::Display for LinearFormMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: &[LinearForm; 3]| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{};{}", row(&self.rows[0]), row(&self.rows[1]))
    }
}

fn parse_linear_form(text: &str, offset: usize) -> Result<LinearForm, RepError> {
    let err = |pos: usize, message: &str| RepError::Syntax { position: offset + pos, message: message.to_string() };
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut out = LinearForm::zero();
    let mut any = false;
    let skip = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    loop {
        skip(&mut pos);
        if pos == bytes.len() {
            break;
        }
        let mut sign = Q::one();
        if any || bytes[pos] == b'-' || bytes[pos] == b'+' {
            match bytes[pos] {
                b'+' => pos += 1,
                b'-' => {
                    sign = -sign;
                    pos += 1;
                }
                _ => return Err(err(pos, "expected '+' or '-'")),
            }
            skip(&mut pos);
        }
        let start = pos;
        let parenthesised = bytes.get(pos) == Some(&b'(');
        if parenthesised {
            pos += 1;
        }
        while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'/') {
            pos += 1;
        }
        let coeff = if pos > start {
            let digits = &text[start + usize::from(parenthesised)..pos];
            rational::parse(digits).ok_or_else(|| err(start, "bad coefficient"))?
        } else {
            Q::one()
        };
        if parenthesised {
            if bytes.get(pos) != Some(&b')') {
                return Err(err(pos, "expected ')'"));
            }
            pos += 1;
        }
        skip(&mut pos);
        if pos < bytes.len() && bytes[pos] == b'*' {
            pos += 1;
            skip(&mut pos);
        }
        match bytes.get(pos) {
            Some(b'x') | Some(b'y') | Some(b'z') => {
                let i = (bytes[pos] - b'x') as usize;
                out.0[i] += sign * coeff;
                pos += 1;
            }
            _ if pos > start && coeff.is_zero() => {}
            _ if pos > start => return Err(err(start, "constant term in a linear form")),
            _ => return Err(err(pos, "expected a coefficient or one of x, y, z")),
        }
        any = true;
    }
    if !any {
        return Err(err(0, "empty entry"));
    }
    Ok(out)
}

pub fn minors(r: &LinearFormMatrix) -> QuadricSpace {
    let [a, b, c] = &r.rows[0];
    let [d, e, f] = &r.rows[1];
    QuadricSpace([b.mul(f).sub(&c.mul(e)), a.mul(f).sub(&c.mul(d)), a.mul(e).sub(&b.mul(d))])
}

/// Stability: the adjoint map `W* ⊗ C^2 -> C^3` is onto, and for every nonzero
/// `v` in `C^2` the combination `v1 * row1 + v2 * row2` has coefficient matrix of
/// rank at least 2.
pub fn is_stable(r: &LinearFormMatrix) -> bool {
    // images of xi ⊗ e_j for xi in the dual basis
    let images: Vec<Vec<Q>> = (0..2)
        .flat_map(|j| (0..3).map(move |xi| (0..3).map(|col| r.rows[j][col].0[xi].clone()).collect()))
        .collect();
    if linalg::rank(&images) < 3 {
        return false;
    }
    // entries of M(v) with v = (t, 1): t * row1 + row2
    let m: Vec<Vec<UniPoly>> = (0..3)
        .map(|xi| {
            (0..3)
                .map(|col| UniPoly::new(vec![r.rows[1][col].0[xi].clone(), r.rows[0][col].0[xi].clone()]))
                .collect()
        })
        .collect();
    let mut two_minors = Vec::with_capacity(9);
    for (r1, r2) in [(0, 1), (0, 2), (1, 2)] {
        for (c1, c2) in [(0, 1), (0, 2), (1, 2)] {
            two_minors.push(&(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1]));
        }
    }
    // v = (1, 0) is a common zero iff every t^2 coefficient vanishes
    if two_minors.iter().all(|p| p.coeff(2).is_zero()) {
        return false;
    }
    let g = two_minors.iter().fold(UniPoly::zero(), |acc, p| acc.gcd(p));
    g.degree() == Some(0)
}

/// Element of `S^2W ⊗ W`, indexed by quadric monomial then linear variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymTensor(pub [[Q; 3]; 6]);

impl SymTensor {
    pub fn zero() -> Self {
        SymTensor(std::array::from_fn(|_| std::array::from_fn(|_| Q::zero())))
    }

    fn add_product(&mut self, q: &Quadric, l: &LinearForm, sign: &Q) {
        for (m, qc) in q.0.iter().enumerate() {
            for (k, lc) in l.0.iter().enumerate() {
                self.0[m][k] += qc * lc * sign;
            }
        }
    }

    fn term(m: usize, k: usize, c: i64) -> Self {
        let mut t = Self::zero();
        t.0[m][k] = rational::int(c);
        t
    }

    fn flat(&self) -> Vec<Q> {
        self.0.iter().flatten().cloned().collect()
    }

    pub fn scale(&self, c: &Q) -> Self {
        SymTensor(std::array::from_fn(|m| std::array::from_fn(|k| &self.0[m][k] * c)))
    }

    /// Image under multiplication `S^2W ⊗ W -> S^3W`, keyed by exponent vectors.
    pub fn multiply_out(&self) -> Vec<([usize; 3], Q)> {
        let mut out: Vec<([usize; 3], Q)> = Vec::new();
        for (m, row) in self.0.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut e = quadric_exponents(m);
                e[k] += 1;
                match out.iter_mut().find(|(f, _)| *f == e) {
                    Some((_, acc)) => *acc += c,
                    None => out.push((e, c.clone())),
                }
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        out.sort();
        out
    }

    pub fn in_kernel(&self) -> bool {
        self.multiply_out().is_empty()
    }
}

impl fmt::Display for SymTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> =
            QUADRIC_MONOMIALS.iter().flat_map(|q| VARS.iter().map(move |v| format!("{q}⊗{v}"))).collect();
        let coeffs = self.flat();
        write_terms(f, coeffs.iter().zip(names.iter().map(String::as_str)))
    }
}

/// Traceless 3x3 matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sl3Element(pub [[Q; 3]; 3]);

impl Sl3Element {
    pub fn zero() -> Self {
        Sl3Element(std::array::from_fn(|_| std::array::from_fn(|_| Q::zero())))
    }

    /// Matrix unit `E_ij` with 1-based indices; not traceless when `i == j`.
    pub fn unit(i: usize, j: usize) -> Self {
        let mut m = Self::zero();
        m.0[i - 1][j - 1] = Q::one();
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        Sl3Element(std::array::from_fn(|i| std::array::from_fn(|j| &self.0[i][j] + &other.0[i][j])))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Sl3Element(std::array::from_fn(|i| std::array::from_fn(|j| &self.0[i][j] - &other.0[i][j])))
    }

    pub fn scale(&self, c: &Q) -> Self {
        Sl3Element(std::array::from_fn(|i| std::array::from_fn(|j| &self.0[i][j] * c)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Sl3Element(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).map(|k| &self.0[i][k] * &other.0[k][j]).sum())
        }))
    }

    pub fn trace(&self) -> Q {
        (0..3).map(|i| self.0[i][i].clone()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Zero::is_zero)
    }

    pub fn rows_rendered(&self) -> Vec<Vec<String>> {
        self.0.iter().map(|r| r.iter().map(rational::render).collect()).collect()
    }
}

/// The identification `S^{2,1}W ≅ sl_3` on a basis.
fn dictionary() -> Vec<(Sl3Element, SymTensor)> {
    let (x, y, z) = (0, 1, 2);
    let (xx, yy, zz, xy, xz, yz) = (0, 1, 2, 3, 4, 5);
    let t = |terms: &[(usize, usize, i64)]| {
        terms.iter().fold(SymTensor::zero(), |mut acc, &(m, k, c)| {
            acc.0[m][k] += &SymTensor::term(m, k, c).0[m][k];
            acc
        })
    };
    let e = Sl3Element::unit;
    vec![
        (e(1, 3), t(&[(xx, y, 1), (xy, x, -1)])),
        (e(1, 2), t(&[(xx, z, -1), (xz, x, 1)])),
        (e(2, 3), t(&[(yy, x, -1), (xy, y, 1)])),
        (e(3, 1), t(&[(zz, y, -1), (yz, z, 1)])),
        (e(2, 1), t(&[(yy, z, 1), (yz, y, -1)])),
        (e(3, 2), t(&[(zz, x, 1), (xz, z, -1)])),
        (e(2, 2).sub(&e(1, 1)), t(&[(yz, x, 1), (xz, y, 1), (xy, z, -2)])),
        (e(3, 3).sub(&e(2, 2)), t(&[(xz, y, 1), (xy, z, 1), (yz, x, -2)])),
    ]
}

/// Writes a kernel tensor in the `sl_3` basis.
pub fn tensor_to_sl3(t: &SymTensor) -> Result<Sl3Element, RepError> {
    let dict = dictionary();
    let columns: Vec<Vec<Q>> = dict.iter().map(|(_, d)| d.flat()).collect();
    let coeffs = linalg::solve_columns(&columns, &t.flat()).ok_or(RepError::OutsideDictionary)?;
    Ok(dict
        .iter()
        .zip(&coeffs)
        .fold(Sl3Element::zero(), |acc, ((m, _), c)| acc.add(&m.scale(c))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyzygyPair {
    pub tensors: [SymTensor; 2],
    /// Set when the source matrix is unstable and the pair may degenerate.
    pub degenerate: bool,
}

/// `s1 = m1⊗A - m2⊗B + m3⊗C`, `s2 = m1⊗D - m2⊗E + m3⊗F` with `m` the minors.
pub fn syzygies(r: &LinearFormMatrix) -> SyzygyPair {
    let m = minors(r);
    let signs = [Q::one(), -Q::one(), Q::one()];
    let tensors = std::array::from_fn(|row| {
        let mut t = SymTensor::zero();
        for ((q, l), sign) in m.0.iter().zip(&r.rows[row]).zip(&signs) {
            t.add_product(q, l, sign);
        }
        t
    });
    SyzygyPair { tensors, degenerate: !is_stable(r) }
}

/// The abelian plane of a stable matrix as a pair of `sl_3` elements.
pub fn to_sl3_plane(r: &LinearFormMatrix) -> Result<[Sl3Element; 2], RepError> {
    let pair = syzygies(r);
    if pair.degenerate {
        return Err(RepError::NotStable);
    }
    Ok([tensor_to_sl3(&pair.tensors[0])?, tensor_to_sl3(&pair.tensors[1])?])
}

pub fn commutes(pair: &[Sl3Element; 2]) -> bool {
    pair[0].mul(&pair[1]) == pair[1].mul(&pair[0])
}

fn matrix_from(rows: [[LinearForm; 3]; 2]) -> LinearFormMatrix {
    LinearFormMatrix::new(rows)
}

/// `(x, y, z ; ay, bz, cx)` for a point of the plane away from the blown-up points.
pub fn blp2_point(a: &Q, b: &Q, c: &Q) -> Result<LinearFormMatrix, RepError> {
    let zeros = [a, b, c].iter().filter(|v| v.is_zero()).count();
    if zeros == 3 {
        return Err(RepError::ZeroPoint);
    }
    if zeros == 2 {
        return Err(RepError::BaseLocus(format!("{a},{b},{c}")));
    }
    let (x, y, z) = (LinearForm::x(), LinearForm::y(), LinearForm::z());
    Ok(matrix_from([[x.clone(), y.clone(), z.clone()], [y.scale(a), z.scale(b), x.scale(c)]]))
}

/// Point `[s:t]` of the exceptional curve over the `index`-th coordinate point.
pub fn blp2_exceptional(index: usize, s: &Q, t: &Q) -> Result<LinearFormMatrix, RepError> {
    if s.is_zero() && t.is_zero() {
        return Err(RepError::ZeroPoint);
    }
    let (x, y, z) = (LinearForm::x(), LinearForm::y(), LinearForm::z());
    let zero = LinearForm::zero();
    Ok(match index {
        0 => matrix_from([[zero, y.clone(), z.clone()], [y, z.scale(s), x.scale(t)]]),
        1 => matrix_from([[x.clone(), zero, z.clone()], [y.scale(s), z, x.scale(t)]]),
        2 => matrix_from([[x.clone(), y.clone(), zero], [y.scale(s), z.scale(t), x]]),
        other => return Err(RepError::BadIndex(other)),
    })
}

/// Representatives of the five orbits of `GL(W)`, from the open orbit down,
/// paired with the spaces of quadrics they define.
pub fn orbit_representatives() -> Vec<(&'static str, LinearFormMatrix)> {
    [
        ("<xy,xz,yz>", "x,y,0;0,y,z"),
        ("<x^2,xy,yz>", "x,z,0;0,x,y"),
        ("<x^2,xy,y^2-xz>", "x,y,z;0,x,y"),
        ("<x^2,xy,xz>", "x,0,z;0,x,y"),
        ("<x^2,xy,y^2>", "x,y,0;0,x,y"),
    ]
    .into_iter()
    .map(|(label, m)| (label, LinearFormMatrix::parse(m).expect("valid representative")))
    .collect()
}
