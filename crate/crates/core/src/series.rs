//! Truncated univariate power series in `q` with exact rational coefficients.
//!
//! A `Series` of order `N` stores the coefficients of `q^0 ..= q^N` and stands
//! for its value modulo `q^(N+1)`. Every operation is exact on those
//! coefficients. Binary operations demand equal orders.

use std::fmt;

use serde::Serialize;

use crate::coeff::Coeff;
use crate::error::{SeriesError, SeriesResult};

/// Sign of a monomial `±q^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_coeff(self) -> Coeff {
        match self {
            Sign::Plus => Coeff::one(),
            Sign::Minus => -Coeff::one(),
        }
    }
}

/// `coeffs[n]` is the coefficient of `q^n`; the order is `coeffs.len() - 1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Series {
    coeffs: Vec<Coeff>,
}

impl Series {
    /// Builds a series of order `order` from leading coefficients. Missing
    /// coefficients are zero; coefficients beyond `order` are dropped.
    pub fn new(mut coeffs: Vec<Coeff>, order: i64) -> SeriesResult<Series> {
        if order < 0 {
            return Err(SeriesError::NegativeOrder(order));
        }
        let len = order as usize + 1;
        coeffs.resize(len, Coeff::zero());
        Ok(Series { coeffs })
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Series {
        let mut v: Vec<Coeff> = coeffs.iter().take(order + 1).map(|&c| Coeff::from(c)).collect();
        v.resize(order + 1, Coeff::zero());
        Series { coeffs: v }
    }

    pub fn zero(order: usize) -> Series {
        Series { coeffs: vec![Coeff::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Series {
        Series::constant(Coeff::one(), order)
    }

    pub fn constant(c: Coeff, order: usize) -> Series {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * q^k`, or zero when `k > order`.
    pub fn monomial(c: Coeff, k: usize, order: usize) -> Series {
        let mut s = Series::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Coeff> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> SeriesResult<&Coeff> {
        self.coeffs.get(n).ok_or(SeriesError::OutOfRange { index: n, order: self.order() })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coeff::is_zero)
    }

    /// Index of the lowest non-zero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Lowers the order to `m`, keeping the prefix.
    pub fn truncate(&self, m: usize) -> SeriesResult<Series> {
        if m > self.order() {
            return Err(SeriesError::OutOfRange { index: m, order: self.order() });
        }
        Ok(Series { coeffs: self.coeffs[..=m].to_vec() })
    }

    fn check_order(&self, other: &Series) -> SeriesResult<()> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> SeriesResult<Series> {
        self.check_order(other)?;
        Ok(Series { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Series) -> SeriesResult<Series> {
        self.check_order(other)?;
        Ok(Series { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn neg(&self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Coeff) -> Series {
        Series { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Series) {
        debug_assert_eq!(self.order(), other.order());
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Series) -> SeriesResult<Series> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![Coeff::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Ok(Series { coeffs: out })
    }

    /// The reciprocal `r` with `self * r = 1` at this order.
    pub fn recip(&self) -> SeriesResult<Series> {
        let inv0 = self.coeffs[0].recip().ok_or(SeriesError::NotInvertible)?;
        let n = self.order();
        let mut r: Vec<Coeff> = Vec::with_capacity(n + 1);
        r.push(inv0.clone());
        for m in 1..=n {
            let mut acc = Coeff::zero();
            for k in 1..=m {
                let s = &self.coeffs[k];
                if !s.is_zero() {
                    acc += &(s * &r[m - k]);
                }
            }
            r.push(-(acc * &inv0));
        }
        Ok(Series { coeffs: r })
    }

    /// Multiplies by `q^k`; terms pushed past the order are dropped.
    pub fn shift(&self, k: usize) -> Series {
        let n = self.order();
        let mut out = vec![Coeff::zero(); n + 1];
        if k <= n {
            out[k..].clone_from_slice(&self.coeffs[..=n - k]);
        }
        Series { coeffs: out }
    }

    /// In place: multiplies by `(1 - sign * q^k)`.
    pub fn mul_factor(&mut self, sign: Sign, k: usize) {
        let n = self.order();
        if k == 0 {
            match sign {
                Sign::Plus => self.coeffs.iter_mut().for_each(|c| *c = Coeff::zero()),
                Sign::Minus => {
                    let two = Coeff::from(2);
                    self.coeffs.iter_mut().for_each(|c| *c = &*c * &two);
                }
            }
            return;
        }
        for m in (k..=n).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(m);
            let prev = &lo[m - k];
            if prev.is_zero() {
                continue;
            }
            match sign {
                Sign::Plus => hi[0] -= prev,
                Sign::Minus => hi[0] += prev,
            }
        }
    }

    /// In place: divides by `(1 - sign * q^k)`. Fails only for `1 - q^0`.
    pub fn div_factor(&mut self, sign: Sign, k: usize) -> SeriesResult<()> {
        let n = self.order();
        if k == 0 {
            return match sign {
                Sign::Plus => Err(SeriesError::NotInvertible),
                Sign::Minus => {
                    let half = Coeff::ratio(1, 2);
                    self.coeffs.iter_mut().for_each(|c| *c = &*c * &half);
                    Ok(())
                }
            };
        }
        for m in k..=n {
            let (lo, hi) = self.coeffs.split_at_mut(m);
            let prev = &lo[m - k];
            if prev.is_zero() {
                continue;
            }
            match sign {
                Sign::Plus => hi[0] += prev,
                Sign::Minus => hi[0] -= prev,
            }
        }
        Ok(())
    }

    /// `(index, coeff)` of the first coefficient that is not an integer.
    pub fn first_non_integer(&self) -> Option<(usize, &Coeff)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_integer())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{}](", self.order())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{mag}*q^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &Series) -> Vec<i128> {
        s.coeffs().iter().map(|c| c.to_i128().unwrap()).collect()
    }

    #[test]
    fn make_zero_fills_and_truncates() {
        let s = Series::new(vec![Coeff::one()], 3).unwrap();
        assert_eq!(ints(&s), vec![1, 0, 0, 0]);
        let s = Series::new(vec![Coeff::zero(), Coeff::one()], 2).unwrap();
        assert_eq!(ints(&s), vec![0, 1, 0]);
        let s = Series::new(vec![Coeff::one(); 3], 1).unwrap();
        assert_eq!(ints(&s), vec![1, 1]);
        assert_eq!(Series::new(vec![], -1), Err(SeriesError::NegativeOrder(-1)));
    }

    #[test]
    fn add_examples() {
        let a = Series::from_ints(&[1, 1], 3);
        let b = Series::from_ints(&[1, -1], 3);
        assert_eq!(a.add(&b).unwrap(), Series::from_ints(&[2], 3));
        assert_eq!(a.add(&Series::zero(3)).unwrap(), a);
        let q = Series::from_ints(&[0, 1], 3);
        let q2 = Series::from_ints(&[0, 0, 1], 3);
        assert_eq!(q.add(&q2).unwrap(), Series::from_ints(&[0, 1, 1], 3));
        assert!(matches!(a.add(&Series::zero(2)), Err(SeriesError::OrderMismatch { left: 3, right: 2 })));
    }

    #[test]
    fn mul_examples() {
        let n = 6;
        let one_minus_q = Series::from_ints(&[1, -1], n);
        let geo = Series::from_ints(&vec![1; n + 1], n);
        assert_eq!(one_minus_q.mul(&geo).unwrap(), Series::one(n));
        assert_eq!(geo.mul(&Series::one(n)).unwrap(), geo);
        let a = Series::from_ints(&[1, 1], 2);
        assert_eq!(ints(&a.mul(&a).unwrap()), vec![1, 2, 1]);
        assert!(a.mul(&Series::one(3)).is_err());
    }

    #[test]
    fn recip_examples() {
        let s = Series::from_ints(&[1, -1], 5);
        assert_eq!(ints(&s.recip().unwrap()), vec![1; 6]);
        let two = Series::from_ints(&[2], 3);
        assert_eq!(two.recip().unwrap(), Series::constant(Coeff::ratio(1, 2), 3));
        let fib = Series::from_ints(&[1, -1, -1], 4);
        let r = fib.recip().unwrap();
        assert_eq!(ints(&r), vec![1, 1, 2, 3, 5]);
        assert_eq!(fib.mul(&r).unwrap(), Series::one(4));
        assert_eq!(Series::from_ints(&[0, 1], 3).recip(), Err(SeriesError::NotInvertible));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(ints(&Series::one(3).shift(2)), vec![0, 0, 1, 0]);
        let s = Series::from_ints(&[1, 2, 3], 3);
        assert_eq!(s.shift(0), s);
        assert_eq!(ints(&Series::from_ints(&[1, 1], 3).shift(3)), vec![0, 0, 0, 1]);
        assert!(Series::one(3).shift(9).is_zero());
    }

    #[test]
    fn coeff_and_truncate() {
        let s = Series::from_ints(&[1, 3], 4);
        assert_eq!(s.coeff(1).unwrap(), &Coeff::from(3));
        assert!(matches!(s.coeff(5), Err(SeriesError::OutOfRange { index: 5, order: 4 })));
        assert_eq!(s.truncate(4).unwrap(), s);
        assert_eq!(s.truncate(1).unwrap(), Series::from_ints(&[1, 3], 1));
        assert!(s.truncate(7).is_err());
    }

    #[test]
    fn factor_ops_match_generic_ops() {
        let n = 12;
        let s = Series::from_ints(&[3, -1, 4, 1, -5, 9, 2, -6], n);
        for (sign, k) in [(Sign::Plus, 1), (Sign::Minus, 3), (Sign::Plus, 5), (Sign::Minus, 0)] {
            let mut binom = Series::one(n);
            let c = -sign.as_coeff();
            if k == 0 {
                binom = Series::constant(Coeff::one() + c, n);
            } else {
                binom = binom.add(&Series::monomial(c, k, n)).unwrap();
            }
            let mut m = s.clone();
            m.mul_factor(sign, k);
            assert_eq!(m, s.mul(&binom).unwrap());
            let mut d = s.clone();
            d.div_factor(sign, k).unwrap();
            assert_eq!(d, s.mul(&binom.recip().unwrap()).unwrap());
        }
        let mut z = s.clone();
        assert_eq!(z.div_factor(Sign::Plus, 0), Err(SeriesError::NotInvertible));
    }

    #[test]
    fn display() {
        let s = Series::from_ints(&[1, -1, 0, 2], 3);
        assert_eq!(s.to_string(), "1 - q + 2*q^3 + O(q^4)");
        assert_eq!(Series::zero(1).to_string(), "0 + O(q^2)");
    }
}
