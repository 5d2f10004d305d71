//! Evaluation of sum and product sides to truncated series.

use num_traits::Zero;
use thiserror::Error;

use crate::biseries::BiSeries;
use crate::coeff::Coeff;
use crate::error::SeriesError;
use crate::identity::spec::{
    PochFactorSpec, Position, ProductAtom, ProductFactor, ProductSideSpec, QuadExpr, SumSideSpec,
};
use crate::products::{self, QMonomial};
use crate::series::{Series, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("invalid {clause}: {message}")]
    Invalid { clause: String, message: String },
    #[error("unknown name {0:?}")]
    UnknownName(String),
}

impl EngineError {
    pub(crate) fn invalid(clause: impl Into<String>, message: impl Into<String>) -> EngineError {
        EngineError::Invalid { clause: clause.into(), message: message.into() }
    }
}

pub type EngineResult<T> = Result<T, EngineError>;

/// A side evaluated to a series; bivariate when the sum carries `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SideValue {
    Uni(Series),
    Bi(BiSeries),
}

impl SideValue {
    pub fn into_uni(self) -> Option<Series> {
        match self {
            SideValue::Uni(s) => Some(s),
            SideValue::Bi(_) => None,
        }
    }

    pub fn into_bi(self) -> BiSeries {
        match self {
            SideValue::Uni(s) => BiSeries::from_series(&s),
            SideValue::Bi(b) => b,
        }
    }
}

fn factor_clause(i: usize, f: &PochFactorSpec) -> String {
    let pos = match f.position {
        Position::Numerator => "numerator",
        Position::Denominator => "denominator",
    };
    format!("{pos} Pochhammer #{} (base q^({}), step {}, length {})", i + 1, f.base, f.step, f.length)
}

/// Static checks of the sum-side invariants: the lead grows and is
/// non-negative, every base and length is non-negative for all `j >= start`,
/// every denominator factor is a unit for all `j >= start`.
pub fn validate_sum_side(spec: &SumSideSpec) -> EngineResult<()> {
    let start = spec.start as i64;
    let lead = spec.lead;
    if !lead.grows() {
        return Err(EngineError::invalid(
            format!("lead exponent q^({lead})"),
            "needs a positive j^2 coefficient, or a zero j^2 coefficient and a positive j coefficient",
        ));
    }
    let turn = lead.increasing_from(start);
    if let Some(j) = (start..=turn).find(|&j| lead.eval(j) < 0) {
        return Err(EngineError::invalid(
            format!("lead exponent q^({lead})"),
            format!("negative exponent {} at j = {j}", lead.eval(j)),
        ));
    }
    if *spec.scale.denom() == 0 || spec.scale.is_zero() {
        return Err(EngineError::invalid("scale", "must be a non-zero rational"));
    }
    if let Some(a) = spec.a_power {
        if a.c1 < 0 || a.eval(start) < 0 {
            return Err(EngineError::invalid(format!("a-power a^({a})"), "must be non-negative for all j"));
        }
    }
    for (i, f) in spec.factors.iter().enumerate() {
        let clause = || factor_clause(i, f);
        if f.step == 0 {
            return Err(EngineError::invalid(clause(), "step must be positive"));
        }
        for (what, e) in [("base", f.base), ("length", f.length)] {
            if e.c1 < 0 || e.eval(start) < 0 {
                return Err(EngineError::invalid(clause(), format!("{what} {e} is negative for some j >= {start}")));
            }
        }
        if f.position == Position::Denominator && f.sign == Sign::Plus && !f.carries_a {
            // the factor 1 - q^base vanishes at q = 0 whenever base(j) = 0 and length(j) >= 1
            let zero_at = if f.base.c1 == 0 {
                (f.base.c0 == 0)
                    .then(|| {
                        if f.length.eval(start) >= 1 {
                            Some(start)
                        } else if f.length.c1 > 0 {
                            Some(start + (1 - f.length.eval(start) + f.length.c1 - 1) / f.length.c1)
                        } else {
                            None
                        }
                    })
                    .flatten()
            } else if f.base.c0 <= 0 && (-f.base.c0) % f.base.c1 == 0 {
                let j = -f.base.c0 / f.base.c1;
                (j >= start && f.length.eval(j) >= 1).then_some(j)
            } else {
                None
            };
            if let Some(j) = zero_at {
                return Err(EngineError::invalid(clause(), format!("denominator factor (1 - q^0) at j = {j}")));
            }
        }
    }
    Ok(())
}

fn term_exponents(spec: &SumSideSpec, j: i64, f: &PochFactorSpec) -> EngineResult<(u32, usize)> {
    let base = f.base.eval(j);
    let len = f.length.eval(j);
    if base < 0 || len < 0 {
        return Err(EngineError::invalid(
            format!("Pochhammer (base q^({}), length {})", f.base, f.length),
            format!("negative value at j = {j} (start {})", spec.start),
        ));
    }
    let base = u32::try_from(base).map_err(|_| EngineError::invalid("Pochhammer base", "exponent too large"))?;
    Ok((base, len as usize))
}

fn scale_coeff(spec: &SumSideSpec) -> Coeff {
    Coeff::ratio(*spec.scale.numer(), *spec.scale.denom())
}

/// Iterates the summation index until the lead exceeds `n` on the increasing
/// branch, calling `term` for every `j` whose lead is at most `n`.
fn for_each_j(
    lead: QuadExpr,
    start: u32,
    n: usize,
    mut term: impl FnMut(i64, usize) -> EngineResult<()>,
) -> EngineResult<()> {
    let turn = lead.increasing_from(start as i64);
    let mut j = start as i64;
    loop {
        let l = lead.eval(j);
        if l > n as i64 {
            if j >= turn {
                return Ok(());
            }
        } else {
            if l < 0 {
                return Err(EngineError::invalid(format!("lead exponent q^({lead})"), format!("negative at j = {j}")));
            }
            term(j, l as usize)?;
        }
        j += 1;
    }
}

/// Univariate evaluation; fails if the spec involves `a`.
pub fn eval_sum_series(spec: &SumSideSpec, n: usize) -> EngineResult<Series> {
    if spec.is_bivariate() {
        return Err(EngineError::invalid("sum side", "involves the variable a; use the bivariate evaluator"));
    }
    if !spec.lead.grows() {
        return Err(EngineError::invalid(format!("lead exponent q^({})", spec.lead), "sum does not terminate"));
    }
    let scale = scale_coeff(spec);
    let mut total = Series::zero(n);
    for_each_j(spec.lead, spec.start, n, |j, lead| {
        let mut t = Series::monomial(scale.clone(), lead, n);
        for f in &spec.factors {
            if t.is_zero() {
                break;
            }
            let (base, len) = term_exponents(spec, j, f)?;
            let a = QMonomial { sign: f.sign, exp: base };
            products::apply_poch_finite(&mut t, a, f.step, len, f.position == Position::Denominator).map_err(|e| {
                match e {
                    SeriesError::NotInvertible => EngineError::invalid(
                        format!("denominator (q^({}); q^{})_({})", f.base, f.step, f.length),
                        format!("zero constant term at j = {j}"),
                    ),
                    other => other.into(),
                }
            })?;
        }
        total.add_assign_unchecked(&t);
        Ok(())
    })?;
    Ok(total)
}

/// Bivariate evaluation at q-order `n` (a-degree also capped at `n`).
pub fn eval_sum_biseries(spec: &SumSideSpec, n: usize) -> EngineResult<BiSeries> {
    if !spec.lead.grows() {
        return Err(EngineError::invalid(format!("lead exponent q^({})", spec.lead), "sum does not terminate"));
    }
    let scale = scale_coeff(spec);
    let mut total = BiSeries::zero(n);
    for_each_j(spec.lead, spec.start, n, |j, lead| {
        let e = match spec.a_power {
            Some(p) => {
                let e = p.eval(j);
                if e < 0 {
                    return Err(EngineError::invalid(format!("a-power a^({p})"), format!("negative at j = {j}")));
                }
                e as usize
            }
            None => 0,
        };
        let mut t = BiSeries::monomial(scale.clone(), e, lead, n);
        for f in &spec.factors {
            let (base, len) = term_exponents(spec, j, f)?;
            products::apply_bi_poch_finite(
                &mut t,
                f.carries_a,
                f.sign,
                base,
                f.step,
                len,
                f.position == Position::Denominator,
            )
            .map_err(|e| match e {
                SeriesError::NotInvertible => EngineError::invalid(
                    format!("denominator (q^({}); q^{})_({})", f.base, f.step, f.length),
                    format!("zero constant term at j = {j}"),
                ),
                other => other.into(),
            })?;
        }
        total.add_assign_unchecked(&t);
        Ok(())
    })?;
    Ok(total)
}

/// Evaluates a sum side, bivariate when it carries `a`.
pub fn eval_sum_side(spec: &SumSideSpec, n: usize) -> EngineResult<SideValue> {
    if spec.is_bivariate() {
        eval_sum_biseries(spec, n).map(SideValue::Bi)
    } else {
        eval_sum_series(spec, n).map(SideValue::Uni)
    }
}

fn atom_clause(f: &ProductFactor) -> String {
    match &f.atom {
        ProductAtom::PochInf { sign, exp, step } => {
            format!("pochinf({}; q^{step})", QMonomial { sign: *sign, exp: *exp })
        }
        ProductAtom::Quintuple { w, x } => format!("Q(q^{w}, q^{x})"),
        ProductAtom::Residues { modulus, residues } => format!("resprod({modulus}; {residues:?})"),
        ProductAtom::Monomial(k) => format!("q^{k}"),
        ProductAtom::Constant(c) => format!("constant {c}"),
    }
}

/// Static checks of the product-side atoms.
pub fn validate_product_side(spec: &ProductSideSpec) -> EngineResult<()> {
    for f in &spec.factors {
        let clause = || atom_clause(f);
        match &f.atom {
            ProductAtom::PochInf { sign, exp, step } => {
                if *step == 0 {
                    return Err(EngineError::invalid(clause(), "step must be positive"));
                }
                if *exp == 0 && *sign == Sign::Plus {
                    return Err(EngineError::invalid(clause(), "(1; q^t)_inf vanishes identically"));
                }
            }
            ProductAtom::Quintuple { w, x } => {
                products::quintuple_factors(*w, *x).map_err(|e| EngineError::invalid(clause(), e.to_string()))?;
            }
            ProductAtom::Residues { modulus, residues } => {
                products::residue_set(*modulus, residues).map_err(|e| EngineError::invalid(clause(), e.to_string()))?;
            }
            ProductAtom::Monomial(k) => {
                if f.inverted && *k > 0 {
                    return Err(EngineError::invalid(clause(), "dividing by q^k leaves the power-series ring"));
                }
            }
            ProductAtom::Constant(c) => {
                if *c == 0 {
                    return Err(EngineError::invalid(clause(), "constant factor must be non-zero"));
                }
            }
        }
    }
    Ok(())
}

/// Ordered product of the atoms at order `n`. The shift is not applied here.
pub fn eval_product_side(spec: &ProductSideSpec, n: usize) -> EngineResult<Series> {
    validate_product_side(spec)?;
    let mut s = Series::one(n);
    for f in &spec.factors {
        match &f.atom {
            ProductAtom::PochInf { sign, exp, step } => {
                products::apply_poch_inf(&mut s, QMonomial { sign: *sign, exp: *exp }, *step, f.inverted)?
            }
            ProductAtom::Quintuple { w, x } => products::apply_quintuple(&mut s, *w, *x, f.inverted)?,
            ProductAtom::Residues { modulus, residues } => {
                products::apply_residue_product(&mut s, *modulus, residues, f.inverted)?
            }
            ProductAtom::Monomial(k) => s = s.shift(*k as usize),
            ProductAtom::Constant(c) => {
                let c = Coeff::from(*c);
                s = if f.inverted { s.scale(&c.recip().expect("validated non-zero")) } else { s.scale(&c) };
            }
        }
    }
    Ok(s)
}
