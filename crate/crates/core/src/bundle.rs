//! Tensor expressions in the universal bundles `U1`, `U2` and the line bundles `O(n)`.
//!
//! Expressions are trees with no normal form. Two trees are compared through their
//! semantics: torus weights on a fixed locus here, Chern characters in [`crate::chow`].

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BundleError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown identifier {name:?} at position {position}")]
    UnknownIdentifier { position: usize, name: String },
    #[error("sl of a rank zero bundle")]
    SlOfRankZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BundleExpr {
    U1,
    U2,
    /// `O(1) = det(dual(U1))`.
    O(i64),
    Dual(Box<BundleExpr>),
    Tensor(Box<BundleExpr>, Box<BundleExpr>),
    Sum(Box<BundleExpr>, Box<BundleExpr>),
    Det(Box<BundleExpr>),
    Sl(Box<BundleExpr>),
    Sym2(Box<BundleExpr>),
    Wedge2(Box<BundleExpr>),
}

use BundleExpr::*;

impl BundleExpr {
    pub fn dual(e: BundleExpr) -> Self {
        Dual(Box::new(e))
    }

    pub fn tensor(e: BundleExpr, f: BundleExpr) -> Self {
        Tensor(Box::new(e), Box::new(f))
    }

    pub fn sum(e: BundleExpr, f: BundleExpr) -> Self {
        Sum(Box::new(e), Box::new(f))
    }

    pub fn det(e: BundleExpr) -> Self {
        Det(Box::new(e))
    }

    pub fn sl(e: BundleExpr) -> Self {
        Sl(Box::new(e))
    }

    pub fn sym2(e: BundleExpr) -> Self {
        Sym2(Box::new(e))
    }

    pub fn wedge2(e: BundleExpr) -> Self {
        Wedge2(Box::new(e))
    }

    /// `e ⊗ O(n)`; the identity when `n = 0`.
    pub fn twist(e: BundleExpr, n: i64) -> Self {
        if n == 0 {
            e
        } else {
            Self::tensor(e, O(n))
        }
    }

    pub fn parse(text: &str) -> Result<Self, BundleError> {
        let mut p = Parser { text, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < text.len() {
            return Err(p.error("trailing input"));
        }
        e.rank()?;
        Ok(e)
    }

    /// Rank, failing on `sl` of a rank zero bundle.
    pub fn rank(&self) -> Result<u64, BundleError> {
        Ok(match self {
            U1 => 2,
            U2 => 3,
            O(_) | Det(_) => {
                if let Det(e) = self {
                    e.rank()?;
                }
                1
            }
            Dual(e) => e.rank()?,
            Tensor(e, f) => e.rank()? * f.rank()?,
            Sum(e, f) => e.rank()? + f.rank()?,
            Sl(e) => match e.rank()? {
                0 => return Err(BundleError::SlOfRankZero),
                r => r * r - 1,
            },
            Sym2(e) => {
                let r = e.rank()?;
                r * (r + 1) / 2
            }
            Wedge2(e) => {
                let r = e.rank()?;
                r * r.saturating_sub(1) / 2
            }
        })
    }

    /// Multiset of torus weights, sorted in decreasing order.
    pub fn weights(&self, base: &LeafWeights) -> Result<Vec<i64>, BundleError> {
        let mut w = self.weights_unsorted(base)?;
        w.sort_unstable_by(|a, b| b.cmp(a));
        Ok(w)
    }

    fn weights_unsorted(&self, base: &LeafWeights) -> Result<Vec<i64>, BundleError> {
        Ok(match self {
            U1 => base.u1.clone(),
            U2 => base.u2.clone(),
            O(n) => vec![-n * base.u1.iter().sum::<i64>()],
            Dual(e) => e.weights_unsorted(base)?.into_iter().map(|w| -w).collect(),
            Tensor(e, f) => {
                let (a, b) = (e.weights_unsorted(base)?, f.weights_unsorted(base)?);
                a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect()
            }
            Sum(e, f) => {
                let mut a = e.weights_unsorted(base)?;
                a.extend(f.weights_unsorted(base)?);
                a
            }
            Det(e) => vec![e.weights_unsorted(base)?.iter().sum()],
            Sl(e) => {
                let a = e.weights_unsorted(base)?;
                if a.is_empty() {
                    return Err(BundleError::SlOfRankZero);
                }
                let mut out = vec![0; a.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in a.iter().enumerate() {
                        if i != j {
                            out.push(x - y);
                        }
                    }
                }
                out
            }
            Sym2(e) => pairs(&e.weights_unsorted(base)?, true),
            Wedge2(e) => pairs(&e.weights_unsorted(base)?, false),
        })
    }
}

fn pairs(a: &[i64], diagonal: bool) -> Vec<i64> {
    let mut out = Vec::new();
    for i in 0..a.len() {
        let start = if diagonal { i } else { i + 1 };
        for j in start..a.len() {
            out.push(a[i] + a[j]);
        }
    }
    out
}

/// Weights of `U1` and `U2` at a fixed point, twist included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafWeights {
    pub u1: Vec<i64>,
    pub u2: Vec<i64>,
}

/// Returns the multiset of weights of `e`; see [`BundleExpr::weights`].
pub fn weights_of(e: &BundleExpr, base: &LeafWeights) -> Result<Vec<i64>, BundleError> {
    e.weights(base)
}

pub fn rank_of(e: &BundleExpr) -> Result<u64, BundleError> {
    e.rank()
}

pub fn parse_expr(text: &str) -> Result<BundleExpr, BundleError> {
    BundleExpr::parse(text)
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            U1 => write!(f, "U1"),
            U2 => write!(f, "U2"),
            O(n) => write!(f, "O({n})"),
            Dual(e) => write!(f, "dual({e})"),
            Tensor(e, g) => write!(f, "tensor({e},{g})"),
            Sum(e, g) => write!(f, "sum({e},{g})"),
            Det(e) => write!(f, "det({e})"),
            Sl(e) => write!(f, "sl({e})"),
            Sym2(e) => write!(f, "sym2({e})"),
            Wedge2(e) => write!(f, "wedge2({e})"),
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> BundleError {
        BundleError::Syntax { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.text[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), BundleError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected {c:?}")))
        }
    }

    fn ident(&mut self) -> (usize, &str) {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..]
            .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
            .unwrap_or(self.text.len() - start);
        self.pos += len;
        (start, &self.text[start..start + len])
    }

    fn int(&mut self) -> Result<i64, BundleError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let sign = usize::from(rest.starts_with(['-', '+']));
        let digits = rest[sign..].find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len() - sign);
        if digits == 0 {
            return Err(self.error("expected an integer"));
        }
        self.pos += sign + digits;
        rest[..sign + digits].parse().map_err(|_| BundleError::Syntax {
            position: start,
            message: "integer out of range".into(),
        })
    }

    fn expr(&mut self) -> Result<BundleExpr, BundleError> {
        let (start, name) = self.ident();
        match name {
            "" => Err(self.error("expected an expression")),
            "U1" => Ok(U1),
            "U2" => Ok(U2),
            "O" => {
                self.expect('(')?;
                let n = self.int()?;
                self.expect(')')?;
                Ok(O(n))
            }
            "dual" | "det" | "sl" | "sym2" | "wedge2" => {
                let name = name.to_string();
                self.expect('(')?;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(match name.as_str() {
                    "dual" => BundleExpr::dual(e),
                    "det" => BundleExpr::det(e),
                    "sl" => BundleExpr::sl(e),
                    "sym2" => BundleExpr::sym2(e),
                    _ => BundleExpr::wedge2(e),
                })
            }
            "tensor" | "sum" => {
                let tensor = name == "tensor";
                self.expect('(')?;
                let mut acc = self.expr()?;
                self.expect(',')?;
                loop {
                    let next = self.expr()?;
                    acc = if tensor { BundleExpr::tensor(acc, next) } else { BundleExpr::sum(acc, next) };
                    if self.peek() == Some(',') {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                self.expect(')')?;
                Ok(acc)
            }
            "twist" => {
                self.expect('(')?;
                let e = self.expr()?;
                self.expect(',')?;
                let n = self.int()?;
                self.expect(')')?;
                Ok(BundleExpr::tensor(e, O(n)))
            }
            other => Err(BundleError::UnknownIdentifier { position: start, name: other.to_string() }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stratum1() -> LeafWeights {
        LeafWeights { u1: vec![5, 0], u2: vec![5, 0, 0] }
    }

    #[test]
    fn parses_constructors() {
        assert_eq!(parse_expr("tensor(dual(U1),U2)").unwrap(), BundleExpr::tensor(BundleExpr::dual(U1), U2));
        assert_eq!(parse_expr("sl(U1)").unwrap(), BundleExpr::sl(U1));
        assert_eq!(parse_expr("twist(U2,1)").unwrap(), BundleExpr::tensor(U2, O(1)));
        assert_eq!(parse_expr(" O( -3 ) ").unwrap(), O(-3));
        assert_eq!(
            parse_expr("tensor(U1,U2,O(1))").unwrap(),
            BundleExpr::tensor(BundleExpr::tensor(U1, U2), O(1))
        );
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(
            parse_expr("tensor(U1,U3)"),
            Err(BundleError::UnknownIdentifier { position: 10, name: "U3".into() })
        );
        assert!(matches!(parse_expr("dual(U1"), Err(BundleError::Syntax { position: 7, .. })));
        assert!(matches!(parse_expr("U1 U2"), Err(BundleError::Syntax { position: 3, .. })));
        assert!(matches!(parse_expr("O(x)"), Err(BundleError::Syntax { position: 2, .. })));
        assert!(matches!(parse_expr(""), Err(BundleError::Syntax { .. })));
        assert_eq!(parse_expr("sl(sl(O(1)))"), Err(BundleError::SlOfRankZero));
    }

    #[test]
    fn display_round_trips() {
        for text in ["tensor(dual(U1),U2)", "sl(U1)", "sum(O(-2),wedge2(sym2(U2)))", "det(U2)"] {
            assert_eq!(parse_expr(text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn ranks() {
        assert_eq!(parse_expr("sl(U1)").unwrap().rank().unwrap(), 3);
        assert_eq!(parse_expr("tensor(dual(U1),U2)").unwrap().rank().unwrap(), 6);
        assert_eq!(parse_expr("wedge2(U2)").unwrap().rank().unwrap(), 3);
        assert_eq!(parse_expr("sym2(U2)").unwrap().rank().unwrap(), 6);
        assert_eq!(parse_expr("sl(O(4))").unwrap().rank().unwrap(), 0);
    }

    #[test]
    fn weights_on_a_stratum() {
        let b = stratum1();
        assert_eq!(parse_expr("sl(U1)").unwrap().weights(&b).unwrap(), vec![5, 0, -5]);
        assert_eq!(
            parse_expr("tensor(dual(U1),dual(U1))").unwrap().weights(&b).unwrap(),
            vec![0, -5, -5, -10]
        );
        assert_eq!(O(0).weights(&b).unwrap(), vec![0]);
        assert_eq!(O(-3).weights(&b).unwrap(), vec![15]);
        assert_eq!(parse_expr("det(dual(U1))").unwrap().weights(&b).unwrap(), O(1).weights(&b).unwrap());
    }
}
