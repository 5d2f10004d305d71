//! Coefficientwise verification and its report records.

use std::time::Instant;

use serde::Serialize;

use crate::coeff::Coeff;
use crate::identity::eval::{
    eval_product_side, eval_sum_series, validate_product_side, validate_sum_side, EngineResult,
};
use crate::identity::registry::find_builtin;
use crate::identity::spec::IdentitySpec;
use crate::products;
use crate::series::Series;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// First disagreeing coefficient. `l` is the a-degree for bivariate checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    pub lhs: Coeff,
    pub rhs: Coeff,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub order: usize,
    pub status: Status,
    pub mismatch: Option<Mismatch>,
    pub millis: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub(crate) fn error(name: &str, order: usize, started: Instant, detail: String) -> VerificationReport {
        VerificationReport {
            name: name.to_string(),
            order,
            status: Status::Error,
            mismatch: None,
            millis: started.elapsed().as_millis() as u64,
            detail: Some(detail),
        }
    }

    /// One JSON object on a single line.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Compares `lhs[n]` with `rhs[n - shift]` (zero for `n < shift`) for every
/// `n`, and requires every compared coefficient to be an integer.
pub fn compare_series(name: &str, lhs: &Series, rhs: &Series, shift: usize, started: Instant) -> VerificationReport {
    let order = lhs.order();
    let zero = Coeff::zero();
    let mut status = Status::Pass;
    let mut mismatch = None;
    let mut detail = None;
    for n in 0..=order {
        let l = &lhs.coeffs()[n];
        let r = if n >= shift { &rhs.coeffs()[n - shift] } else { &zero };
        if l != r || !l.is_integer() || !r.is_integer() {
            if l == r {
                detail = Some(format!("non-integer coefficient {l} at q^{n}"));
            }
            status = Status::Fail;
            mismatch = Some(Mismatch { n, l: None, lhs: l.clone(), rhs: r.clone() });
            break;
        }
    }
    VerificationReport {
        name: name.to_string(),
        order,
        status,
        mismatch,
        millis: started.elapsed().as_millis() as u64,
        detail,
    }
}

fn eval_both(spec: &IdentitySpec, n: usize) -> EngineResult<(Series, Series)> {
    validate_sum_side(&spec.lhs)?;
    validate_product_side(&spec.rhs)?;
    Ok((eval_sum_series(&spec.lhs, n)?, eval_product_side(&spec.rhs, n)?))
}

/// Verifies a univariate identity to order `n`. Evaluation problems are
/// reported with status `error`, never raised.
pub fn verify_identity(spec: &IdentitySpec, n: usize) -> VerificationReport {
    let started = Instant::now();
    match eval_both(spec, n) {
        Ok((lhs, rhs)) => compare_series(&spec.name, &lhs, &rhs, spec.rhs.shift as usize, started),
        Err(e) => VerificationReport::error(&spec.name, n, started, e.to_string()),
    }
}

/// The two halves of the relation `slater124 + q * slater125 = new36`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CombinationReport {
    pub sum_side: VerificationReport,
    pub product_side: VerificationReport,
}

impl CombinationReport {
    pub fn passed(&self) -> bool {
        self.sum_side.passed() && self.product_side.passed()
    }
}

fn combination_sides(n: usize, side: impl Fn(&IdentitySpec) -> EngineResult<Series>) -> EngineResult<(Series, Series)> {
    let spec = |name: &str| find_builtin(name).expect("registry identity").spec;
    let s124 = side(&spec("slater124"))?;
    let s125 = side(&spec("slater125"))?;
    let new = side(&spec("new36"))?;
    debug_assert_eq!(new.order(), n);
    Ok((s124.add(&s125.shift(1))?, new))
}

/// Checks `slater124 + q * slater125 = new36` separately on the sum
/// sides and on the product sides.
pub fn verify_combination(n: usize) -> CombinationReport {
    let started = Instant::now();
    let sum_side = match combination_sides(n, |s| eval_sum_series(&s.lhs, n)) {
        Ok((l, r)) => compare_series("new36-chain-sum", &l, &r, 0, started),
        Err(e) => VerificationReport::error("new36-chain-sum", n, started, e.to_string()),
    };
    let started = Instant::now();
    let product_side = match combination_sides(n, |s| eval_product_side(&s.rhs, n)) {
        Ok((l, r)) => compare_series("new36-chain-product", &l, &r, 0, started),
        Err(e) => VerificationReport::error("new36-chain-product", n, started, e.to_string()),
    };
    CombinationReport { sum_side, product_side }
}

/// The bare quintuple combination `Q(q^18, q^5) + q Q(q^18, q^7) = Q(q^18, q)`.
pub fn verify_quintuple_combination(n: usize) -> VerificationReport {
    let started = Instant::now();
    let name = "quintuple-combination";
    let sides = || -> EngineResult<(Series, Series)> {
        let l = products::quintuple_q(18, 5, n)?.add(&products::quintuple_q(18, 7, n)?.shift(1))?;
        Ok((l, products::quintuple_q(18, 1, n)?))
    };
    match sides() {
        Ok((l, r)) => compare_series(name, &l, &r, 0, started),
        Err(e) => VerificationReport::error(name, n, started, e.to_string()),
    }
}

/// `Q(q^w, q^x)` against its two-term triple-product form.
pub fn verify_quintuple_instance(w: u32, x: u32, n: usize) -> VerificationReport {
    let started = Instant::now();
    let name = format!("quintuple-{w}-{x}");
    let sides = || -> EngineResult<(Series, Series)> {
        Ok((products::quintuple_q(w, x, n)?, products::quintuple_rhs(w, x, n)?))
    };
    match sides() {
        Ok((l, r)) => compare_series(&name, &l, &r, 0, started),
        Err(e) => VerificationReport::error(&name, n, started, e.to_string()),
    }
}
