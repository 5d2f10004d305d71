//! Truncated bivariate series in `a` and `q`.
//!
//! Row `l` of a `BiSeries` of order `N` is the `Series` (order `N`) multiplying
//! `a^l`, for `l = 0..=N`. Dropping a-degrees above `N` never disturbs a
//! coefficient with a-degree at most `N`, because a-exponents only add under
//! multiplication. When every `a` in the modelled object carries at least one
//! `q` (see [`BiSeries::check_a_carries_q`]), nothing with q-degree at most `N`
//! is lost either.

use std::fmt;

use crate::coeff::Coeff;
use crate::error::{SeriesError, SeriesResult};
use crate::series::{Series, Sign};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiSeries {
    rows: Vec<Series>,
}

impl BiSeries {
    pub fn zero(order: usize) -> BiSeries {
        BiSeries { rows: vec![Series::zero(order); order + 1] }
    }

    pub fn one(order: usize) -> BiSeries {
        BiSeries::from_series(&Series::one(order))
    }

    /// Embeds a series free of `a` as row 0.
    pub fn from_series(s: &Series) -> BiSeries {
        let mut out = BiSeries::zero(s.order());
        out.rows[0] = s.clone();
        out
    }

    /// `c * a^l * q^n`, or zero if either exponent exceeds the order.
    pub fn monomial(c: Coeff, l: usize, n: usize, order: usize) -> BiSeries {
        let mut out = BiSeries::zero(order);
        if l <= order {
            out.rows[l] = Series::monomial(c, n, order);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Series] {
        &self.rows
    }

    pub fn row(&self, l: usize) -> SeriesResult<&Series> {
        self.rows.get(l).ok_or(SeriesError::OutOfRange { index: l, order: self.order() })
    }

    /// Coefficient of `a^l q^n`.
    pub fn coeff(&self, l: usize, n: usize) -> SeriesResult<&Coeff> {
        self.row(l)?.coeff(n)
    }

    /// The univariate series obtained by setting `a = 1`.
    pub fn eval_a1(&self) -> Series {
        let mut out = Series::zero(self.order());
        for r in &self.rows {
            out.add_assign_unchecked(r);
        }
        out
    }

    fn check_order(&self, other: &BiSeries) -> SeriesResult<()> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn add(&self, other: &BiSeries) -> SeriesResult<BiSeries> {
        self.check_order(other)?;
        let rows = self.rows.iter().zip(&other.rows).map(|(x, y)| x.add(y)).collect::<SeriesResult<Vec<_>>>()?;
        Ok(BiSeries { rows })
    }

    pub fn sub(&self, other: &BiSeries) -> SeriesResult<BiSeries> {
        self.check_order(other)?;
        let rows = self.rows.iter().zip(&other.rows).map(|(x, y)| x.sub(y)).collect::<SeriesResult<Vec<_>>>()?;
        Ok(BiSeries { rows })
    }

    pub fn scale(&self, c: &Coeff) -> BiSeries {
        BiSeries { rows: self.rows.iter().map(|r| r.scale(c)).collect() }
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &BiSeries) {
        for (x, y) in self.rows.iter_mut().zip(&other.rows) {
            x.add_assign_unchecked(y);
        }
    }

    /// Product with a-degrees adding; rows past the order are discarded.
    pub fn mul(&self, other: &BiSeries) -> SeriesResult<BiSeries> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = BiSeries::zero(n);
        for (i, x) in self.rows.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.rows[..=n - i].iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let p = x.mul(y)?;
                out.rows[i + j].add_assign_unchecked(&p);
            }
        }
        Ok(out)
    }

    /// Reciprocal, solved row by row as a power series in `a` whose
    /// coefficients are series in `q`.
    pub fn recip(&self) -> SeriesResult<BiSeries> {
        let n = self.order();
        let r0 = self.rows[0].recip()?;
        let mut rows = vec![r0.clone()];
        for l in 1..=n {
            let mut acc = Series::zero(n);
            for i in 1..=l {
                if self.rows[i].is_zero() {
                    continue;
                }
                acc.add_assign_unchecked(&self.rows[i].mul(&rows[l - i])?);
            }
            rows.push(acc.mul(&r0)?.neg());
        }
        Ok(BiSeries { rows })
    }

    /// Multiplies by `q^k`.
    pub fn shift_q(&self, k: usize) -> BiSeries {
        BiSeries { rows: self.rows.iter().map(|r| r.shift(k)).collect() }
    }

    /// Multiplies by `a^e`.
    pub fn shift_a(&self, e: usize) -> BiSeries {
        let n = self.order();
        let mut out = BiSeries::zero(n);
        for l in e..=n {
            out.rows[l] = self.rows[l - e].clone();
        }
        out
    }

    /// Replaces `a` by `a q^k`: row `l` is multiplied by `q^(k l)`.
    pub fn subst_aq(&self, k: usize) -> BiSeries {
        BiSeries { rows: self.rows.iter().enumerate().map(|(l, r)| r.shift(k.saturating_mul(l))).collect() }
    }

    /// In place: multiplies by `(1 - sign * a^e * q^k)`.
    pub fn mul_factor(&mut self, sign: Sign, e: usize, k: usize) {
        let n = self.order();
        if e == 0 {
            self.rows.iter_mut().for_each(|r| r.mul_factor(sign, k));
            return;
        }
        for l in (e..=n).rev() {
            let shifted = self.rows[l - e].shift(k);
            match sign {
                Sign::Plus => self.rows[l] = self.rows[l].sub(&shifted).expect("equal orders"),
                Sign::Minus => self.rows[l].add_assign_unchecked(&shifted),
            }
        }
    }

    /// In place: divides by `(1 - sign * a^e * q^k)`. Fails only for `1 - q^0`.
    pub fn div_factor(&mut self, sign: Sign, e: usize, k: usize) -> SeriesResult<()> {
        let n = self.order();
        if e == 0 {
            for r in &mut self.rows {
                r.div_factor(sign, k)?;
            }
            return Ok(());
        }
        for l in e..=n {
            let shifted = self.rows[l - e].shift(k);
            match sign {
                Sign::Plus => self.rows[l].add_assign_unchecked(&shifted),
                Sign::Minus => self.rows[l] = self.rows[l].sub(&shifted).expect("equal orders"),
            }
        }
        Ok(())
    }

    /// Multiplies by the polynomial `sum c * a^e * q^k` over `terms`.
    pub fn mul_poly(&self, terms: &[(usize, usize, Coeff)]) -> BiSeries {
        let n = self.order();
        let mut out = BiSeries::zero(n);
        for (e, k, c) in terms {
            if *e > n {
                continue;
            }
            let part = self.shift_a(*e).shift_q(*k).scale(c);
            out.add_assign_unchecked(&part);
        }
        out
    }

    /// Checks that row `l` has no coefficient below `q^l`, i.e. every power
    /// of `a` travels with at least as many powers of `q`. Returns the first
    /// offending `(l, n)`.
    pub fn check_a_carries_q(&self) -> Result<(), (usize, usize)> {
        for (l, r) in self.rows.iter().enumerate() {
            if let Some(v) = r.valuation() {
                if v < l {
                    return Err((l, v));
                }
            }
        }
        Ok(())
    }

    /// First `(l, n)` where the two series differ.
    pub fn first_difference(&self, other: &BiSeries) -> Option<(usize, usize)> {
        for (l, (x, y)) in self.rows.iter().zip(&other.rows).enumerate() {
            for (n, (c, d)) in x.coeffs().iter().zip(y.coeffs()).enumerate() {
                if c != d {
                    return Some((l, n));
                }
            }
        }
        None
    }
}

impl fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BiSeries[{}] {{", self.order())?;
        for (l, r) in self.rows.iter().enumerate() {
            if !r.is_zero() {
                writeln!(f, "  a^{l}: {r:?}")?;
            }
        }
        write!(f, "}}")
    }
}
