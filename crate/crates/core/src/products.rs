//! q-Pochhammer symbols, residue-class products and the quintuple product,
//! all expanded as truncated series.
//!
//! Infinite products are expanded factor by factor and stop at the first
//! factor whose exponent exceeds the order: every later factor is
//! `1 + O(q^(N+1))`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::biseries::BiSeries;
use crate::error::{SeriesError, SeriesResult};
use crate::series::{Series, Sign};

/// The monomial `±q^exp`, used as a Pochhammer argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QMonomial {
    pub sign: Sign,
    pub exp: u32,
}

impl QMonomial {
    pub fn q(exp: u32) -> QMonomial {
        QMonomial { sign: Sign::Plus, exp }
    }

    pub fn minus_q(exp: u32) -> QMonomial {
        QMonomial { sign: Sign::Minus, exp }
    }
}

impl fmt::Display for QMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.sign == Sign::Minus { "-" } else { "" };
        if self.exp == 0 {
            write!(f, "{sign}1")
        } else {
            write!(f, "{sign}q^{}", self.exp)
        }
    }
}

fn check_step(t: u32) -> SeriesResult<()> {
    if t == 0 {
        return Err(SeriesError::InvalidProduct("Pochhammer base must be q^t with t >= 1".into()));
    }
    Ok(())
}

/// Multiplies (or divides, when `inverse`) `s` in place by the finite product
/// `prod_{k < len} (1 - a q^(t k))`.
pub fn apply_poch_finite(s: &mut Series, a: QMonomial, t: u32, len: usize, inverse: bool) -> SeriesResult<()> {
    check_step(t)?;
    let n = s.order();
    for k in 0..len {
        let e = a.exp as usize + t as usize * k;
        if e > n {
            break;
        }
        if inverse {
            s.div_factor(a.sign, e)?;
        } else {
            s.mul_factor(a.sign, e);
        }
    }
    Ok(())
}

fn check_inf_arg(a: QMonomial) -> SeriesResult<()> {
    if a.exp == 0 && a.sign == Sign::Plus {
        return Err(SeriesError::InvalidProduct("(1; q^t)_inf vanishes identically".into()));
    }
    Ok(())
}

/// In-place multiplication (or division) by `(a; q^t)_inf`.
pub fn apply_poch_inf(s: &mut Series, a: QMonomial, t: u32, inverse: bool) -> SeriesResult<()> {
    check_step(t)?;
    check_inf_arg(a)?;
    let n = s.order();
    let len = if (a.exp as usize) > n { 0 } else { (n - a.exp as usize) / t as usize + 1 };
    apply_poch_finite(s, a, t, len, inverse)
}

/// `(a; q^t)_len = prod_{k=0}^{len-1} (1 - a q^(t k))` at order `n`.
pub fn poch_finite(a: QMonomial, t: u32, len: usize, n: usize) -> SeriesResult<Series> {
    let mut s = Series::one(n);
    apply_poch_finite(&mut s, a, t, len, false)?;
    Ok(s)
}

/// `(a; q^t)_inf` at order `n`. Rejects `a = 1`.
pub fn poch_inf(a: QMonomial, t: u32, n: usize) -> SeriesResult<Series> {
    let mut s = Series::one(n);
    apply_poch_inf(&mut s, a, t, false)?;
    Ok(s)
}

/// Validates a residue set modulo `m`; residues are written in `1..=m`.
pub fn residue_set(m: u32, residues: &[u32]) -> SeriesResult<BTreeSet<u32>> {
    if m == 0 {
        return Err(SeriesError::InvalidProduct("modulus must be positive".into()));
    }
    if residues.is_empty() {
        return Err(SeriesError::InvalidProduct("empty residue set".into()));
    }
    let mut set = BTreeSet::new();
    for &r in residues {
        if r == 0 || r > m {
            return Err(SeriesError::InvalidProduct(format!("residue {r} out of range 1..={m}")));
        }
        set.insert(r % m);
    }
    Ok(set)
}

/// In-place multiplication (or division) by `prod 1/(1 - q^k)` over
/// `k >= 1` with `k mod m` in `residues`.
pub fn apply_residue_product(s: &mut Series, m: u32, residues: &[u32], inverse: bool) -> SeriesResult<()> {
    let set = residue_set(m, residues)?;
    for k in 1..=s.order() {
        if set.contains(&((k % m as usize) as u32)) {
            if inverse {
                s.mul_factor(Sign::Plus, k);
            } else {
                s.div_factor(Sign::Plus, k)?;
            }
        }
    }
    Ok(())
}

/// Generating function for partitions into parts whose residue mod `m` lies
/// in `residues`.
pub fn residue_product(m: u32, residues: &[u32], n: usize) -> SeriesResult<Series> {
    let mut s = Series::one(n);
    apply_residue_product(&mut s, m, residues, false)?;
    Ok(s)
}

/// The five Pochhammer factors of the quintuple product `Q(q^w, q^x)` as
/// `(argument, base step)` pairs.
pub fn quintuple_factors(w: u32, x: u32) -> SeriesResult<[(QMonomial, u32); 5]> {
    if w == 0 || x == 0 || w <= 2 * x {
        return Err(SeriesError::InvalidProduct(format!("Q(q^{w}, q^{x}) needs w > 2x > 0")));
    }
    Ok([
        (QMonomial::minus_q(w - x), w),
        (QMonomial::minus_q(x), w),
        (QMonomial::q(w), w),
        (QMonomial::q(w - 2 * x), 2 * w),
        (QMonomial::q(w + 2 * x), 2 * w),
    ])
}

/// In-place multiplication (or division) by `Q(q^w, q^x)`.
pub fn apply_quintuple(s: &mut Series, w: u32, x: u32, inverse: bool) -> SeriesResult<()> {
    for (a, t) in quintuple_factors(w, x)? {
        apply_poch_inf(s, a, t, inverse)?;
    }
    Ok(())
}

/// `Q(q^w, q^x) = (-q^(w-x), -q^x, q^w; q^w)_inf (q^(w-2x), q^(w+2x); q^(2w))_inf`.
pub fn quintuple_q(w: u32, x: u32, n: usize) -> SeriesResult<Series> {
    let mut s = Series::one(n);
    apply_quintuple(&mut s, w, x, false)?;
    Ok(s)
}

/// The two-term triple-product side of the quintuple product identity,
/// `(q^(w+3x), q^(2w-3x), q^(3w); q^(3w))_inf + q^x (q^(w-3x), q^(2w+3x), q^(3w); q^(3w))_inf`.
/// Requires `w > 3x` so that every exponent is positive.
pub fn quintuple_rhs(w: u32, x: u32, n: usize) -> SeriesResult<Series> {
    if x == 0 || w <= 3 * x {
        return Err(SeriesError::InvalidProduct(format!(
            "triple-product form of Q(q^{w}, q^{x}) needs w > 3x > 0; use the combination route"
        )));
    }
    let step = 3 * w;
    let triple = |args: [u32; 3]| -> SeriesResult<Series> {
        let mut s = Series::one(n);
        for e in args {
            apply_poch_inf(&mut s, QMonomial::q(e), step, false)?;
        }
        Ok(s)
    };
    let first = triple([w + 3 * x, 2 * w - 3 * x, 3 * w])?;
    let second = triple([w - 3 * x, 2 * w + 3 * x, 3 * w])?.shift(x as usize);
    first.add(&second)
}

/// `prod_{k=0}^{len-1} (1 - sign a^e q^(s + t k))` with `e = 1` when
/// `carries_a`, else `e = 0`.
pub fn bi_poch_finite(carries_a: bool, sign: Sign, s: u32, t: u32, len: usize, n: usize) -> SeriesResult<BiSeries> {
    let mut u = BiSeries::one(n);
    apply_bi_poch_finite(&mut u, carries_a, sign, s, t, len, false)?;
    Ok(u)
}

#[allow(clippy::too_many_arguments)]
pub fn apply_bi_poch_finite(
    u: &mut BiSeries,
    carries_a: bool,
    sign: Sign,
    s: u32,
    t: u32,
    len: usize,
    inverse: bool,
) -> SeriesResult<()> {
    check_step(t)?;
    let n = u.order();
    let e = usize::from(carries_a);
    for k in 0..len {
        let qe = s as usize + t as usize * k;
        if qe > n {
            break;
        }
        if inverse {
            u.div_factor(sign, e, qe)?;
        } else {
            u.mul_factor(sign, e, qe);
        }
    }
    Ok(())
}

/// `1 / (a q^s; q^t)_inf`. The coefficient of `a^l q^n` for `s = t = 1` is
/// the number of partitions of `n` into exactly `l` parts.
pub fn bi_poch_inf_recip(s: u32, t: u32, n: usize) -> SeriesResult<BiSeries> {
    if s == 0 {
        return Err(SeriesError::InvalidProduct("1/(a; q^t)_inf: every a must carry a power of q".into()));
    }
    check_step(t)?;
    let len = if s as usize > n { 0 } else { (n - s as usize) / t as usize + 1 };
    let mut u = BiSeries::one(n);
    apply_bi_poch_finite(&mut u, true, Sign::Plus, s, t, len, true)?;
    Ok(u)
}
