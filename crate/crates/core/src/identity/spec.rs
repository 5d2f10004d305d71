//! Declarative identity descriptions.

use std::fmt;

use num_rational::Ratio;

use crate::series::Sign;

/// `c1 * j + c0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LinExpr {
    pub c1: i64,
    pub c0: i64,
}

impl LinExpr {
    pub const fn new(c1: i64, c0: i64) -> LinExpr {
        LinExpr { c1, c0 }
    }

    pub const fn constant(c0: i64) -> LinExpr {
        LinExpr { c1: 0, c0 }
    }

    pub fn eval(&self, j: i64) -> i64 {
        self.c1 * j + self.c0
    }
}

/// `c2 * j^2 + c1 * j + c0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct QuadExpr {
    pub c2: i64,
    pub c1: i64,
    pub c0: i64,
}

impl QuadExpr {
    pub const fn new(c2: i64, c1: i64, c0: i64) -> QuadExpr {
        QuadExpr { c2, c1, c0 }
    }

    pub fn eval(&self, j: i64) -> i64 {
        (self.c2 * j + self.c1) * j + self.c0
    }

    /// Either strictly quadratic with positive leading term, or linear with
    /// positive slope: the condition under which a sum over `j` terminates at
    /// every truncation order.
    pub fn grows(&self) -> bool {
        self.c2 > 0 || (self.c2 == 0 && self.c1 > 0)
    }

    /// Smallest `j >= start` from which the expression is strictly increasing.
    pub fn increasing_from(&self, start: i64) -> i64 {
        if self.c2 > 0 {
            // value(j+1) - value(j) = c2 (2j + 1) + c1 > 0  <=>  j > -(c1 + c2) / (2 c2)
            let mut j = start;
            while self.c2 * (2 * j + 1) + self.c1 <= 0 {
                j += 1;
            }
            j
        } else {
            start
        }
    }
}

impl fmt::Display for LinExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &[self.c0, self.c1])
    }
}

impl fmt::Display for QuadExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &[self.c0, self.c1, self.c2])
    }
}

/// Canonical text of `sum coeffs[d] * j^d`, highest degree first, e.g.
/// `2*j^2+2*j`, `j+1`, `-j`, `0`.
fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: &[i64]) -> fmt::Result {
    let mut first = true;
    for d in (0..coeffs.len()).rev() {
        let c = coeffs[d];
        if c == 0 {
            continue;
        }
        if c < 0 {
            write!(f, "-")?;
        } else if !first {
            write!(f, "+")?;
        }
        first = false;
        let mag = c.unsigned_abs();
        match d {
            0 => write!(f, "{mag}")?,
            _ => {
                if mag != 1 {
                    write!(f, "{mag}*")?;
                }
                write!(f, "j")?;
                if d == 2 {
                    write!(f, "^2")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Position {
    Numerator,
    Denominator,
}

/// `(sign * a^e * q^base; q^step)_length` with `e = 1` iff `carries_a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PochFactorSpec {
    pub sign: Sign,
    pub base: LinExpr,
    pub step: u32,
    pub length: LinExpr,
    pub position: Position,
    pub carries_a: bool,
}

impl PochFactorSpec {
    /// `(q^base; q^step)_length` without `a`.
    pub const fn new(sign: Sign, base: LinExpr, step: u32, length: LinExpr, position: Position) -> Self {
        PochFactorSpec { sign, base, step, length, position, carries_a: false }
    }

    pub const fn num(sign: Sign, base: LinExpr, step: u32, length: LinExpr) -> Self {
        PochFactorSpec::new(sign, base, step, length, Position::Numerator)
    }

    pub const fn den(sign: Sign, base: LinExpr, step: u32, length: LinExpr) -> Self {
        PochFactorSpec::new(sign, base, step, length, Position::Denominator)
    }

    pub const fn with_a(mut self) -> Self {
        self.carries_a = true;
        self
    }
}

/// `scale * sum_{j >= start} a^(a_power(j)) q^(lead(j)) * prod factors`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SumSideSpec {
    pub start: u32,
    pub lead: QuadExpr,
    pub scale: Ratio<i64>,
    pub factors: Vec<PochFactorSpec>,
    pub a_power: Option<LinExpr>,
}

impl SumSideSpec {
    pub fn new(lead: QuadExpr, factors: Vec<PochFactorSpec>) -> SumSideSpec {
        SumSideSpec { start: 0, lead, scale: Ratio::from_integer(1), factors, a_power: None }
    }

    pub fn is_bivariate(&self) -> bool {
        self.a_power.is_some() || self.factors.iter().any(|f| f.carries_a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProductAtom {
    /// `(sign q^exp; q^step)_inf`
    PochInf {
        sign: Sign,
        exp: u32,
        step: u32,
    },
    /// `Q(q^w, q^x)`
    Quintuple {
        w: u32,
        x: u32,
    },
    /// `prod 1/(1 - q^k)` over `k mod modulus` in `residues` (written in `1..=modulus`)
    Residues {
        modulus: u32,
        residues: Vec<u32>,
    },
    Monomial(u32),
    Constant(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductFactor {
    pub atom: ProductAtom,
    pub inverted: bool,
}

impl ProductFactor {
    pub fn num(atom: ProductAtom) -> ProductFactor {
        ProductFactor { atom, inverted: false }
    }

    pub fn den(atom: ProductAtom) -> ProductFactor {
        ProductFactor { atom, inverted: true }
    }
}

/// An ordered product of atoms. `shift = d` means the left side at `n` is
/// compared with this side at `n - d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ProductSideSpec {
    pub factors: Vec<ProductFactor>,
    pub shift: u32,
}

impl ProductSideSpec {
    pub fn new(factors: Vec<ProductFactor>) -> ProductSideSpec {
        ProductSideSpec { factors, shift: 0 }
    }
}

/// A "sum side = product side" identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdentitySpec {
    pub name: String,
    pub lhs: SumSideSpec,
    pub rhs: ProductSideSpec,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_display() {
        assert_eq!(QuadExpr::new(2, 2, 0).to_string(), "2*j^2+2*j");
        assert_eq!(QuadExpr::new(1, 0, 0).to_string(), "j^2");
        assert_eq!(QuadExpr::new(1, -3, 4).to_string(), "j^2-3*j+4");
        assert_eq!(QuadExpr::new(0, 0, 0).to_string(), "0");
        assert_eq!(LinExpr::new(1, 2).to_string(), "j+2");
        assert_eq!(LinExpr::new(-1, 0).to_string(), "-j");
        assert_eq!(LinExpr::constant(3).to_string(), "3");
    }

    #[test]
    fn increasing_from() {
        let q = QuadExpr::new(1, -10, 30);
        assert_eq!(q.increasing_from(0), 5);
        assert!(q.eval(5) < q.eval(6));
        assert!(q.eval(4) >= q.eval(5));
        assert_eq!(QuadExpr::new(2, 4, 0).increasing_from(0), 0);
        assert_eq!(QuadExpr::new(0, 1, 0).increasing_from(3), 3);
    }
}
