//! The bivariate (`a`-generalized) identities and q-difference relations.
//!
//! These are built in code rather than described by specs: their product
//! sides are sums with half-integer quadratic exponents and alternating signs,
//! or infinite products of trinomials.

use std::time::Instant;

use crate::biseries::BiSeries;
use crate::coeff::Coeff;
use crate::identity::eval::{eval_sum_biseries, EngineError, EngineResult};
use crate::identity::registry::find_builtin;
use crate::identity::spec::{LinExpr, PochFactorSpec, QuadExpr, SumSideSpec};
use crate::identity::verify::{compare_series, Mismatch, Status, VerificationReport};
use crate::products;
use crate::series::Sign::Plus;

/// Names accepted by [`verify_bivariate_relation`], in listing order.
pub const BIVARIATE_RELATIONS: [&str; 6] = ["arr1", "arr2", "f1-qde", "f2-qde", "aram12", "aslater110"];

/// The univariate identity each a-generalization reduces to at `a = 1`.
pub const SPECIALIZATIONS: [(&str, &str); 4] =
    [("arr1", "rr1"), ("arr2", "rr2"), ("aram12", "ram12"), ("aslater110", "slater110")];

pub fn relation_label(name: &str) -> Option<&'static str> {
    Some(match name {
        "arr1" => "a-generalization F2(a,q) of RR1",
        "arr2" => "a-generalization F1(a,q) of RR2",
        "f1-qde" => "q-difference equation F1(a,q) = F2(aq,q)",
        "f2-qde" => "q-difference equation F2(a,q) = F1(a,q) + aq F1(aq,q)",
        "aram12" => "a-generalization of ram12, counts s(l,n)",
        "aslater110" => "a-generalization of slater110, counts t(l,n)",
        _ => return None,
    })
}

const J: LinExpr = LinExpr::new(1, 0);

/// `F1(a,q) = sum a^j q^(j^2+j) / (q;q)_j`
pub fn f1_sum() -> SumSideSpec {
    let mut s = SumSideSpec::new(QuadExpr::new(1, 1, 0), vec![PochFactorSpec::den(Plus, LinExpr::constant(1), 1, J)]);
    s.a_power = Some(J);
    s
}

/// `F2(a,q) = sum a^j q^(j^2) / (q;q)_j`
pub fn f2_sum() -> SumSideSpec {
    let mut s = SumSideSpec::new(QuadExpr::new(1, 0, 0), vec![PochFactorSpec::den(Plus, LinExpr::constant(1), 1, J)]);
    s.a_power = Some(J);
    s
}

/// `sum a^j q^(j^2) (q^3;q^6)_j / ((q;q^2)_j (aq;q^2)_j (q^4;q^4)_j)`
pub fn aram12_sum() -> SumSideSpec {
    let mut s = SumSideSpec::new(
        QuadExpr::new(1, 0, 0),
        vec![
            PochFactorSpec::num(Plus, LinExpr::constant(3), 6, J),
            PochFactorSpec::den(Plus, LinExpr::constant(1), 2, J),
            PochFactorSpec::den(Plus, LinExpr::constant(1), 2, J).with_a(),
            PochFactorSpec::den(Plus, LinExpr::constant(4), 4, J),
        ],
    );
    s.a_power = Some(J);
    s
}

/// `sum a^j q^(j^2+2j) (q^3;q^6)_j / ((q;q^2)_j (aq;q^2)_(j+1) (q^4;q^4)_j)`
pub fn aslater110_sum() -> SumSideSpec {
    let mut s = SumSideSpec::new(
        QuadExpr::new(1, 2, 0),
        vec![
            PochFactorSpec::num(Plus, LinExpr::constant(3), 6, J),
            PochFactorSpec::den(Plus, LinExpr::constant(1), 2, J),
            PochFactorSpec::den(Plus, LinExpr::constant(1), 2, LinExpr::new(1, 1)).with_a(),
            PochFactorSpec::den(Plus, LinExpr::constant(4), 4, J),
        ],
    );
    s.a_power = Some(J);
    s
}

/// In place: divides by `(aq; q)_inf`.
fn divide_by_aq_q_inf(u: &mut BiSeries) -> EngineResult<()> {
    let n = u.order();
    products::apply_bi_poch_finite(u, true, Plus, 1, 1, n, true)?;
    Ok(())
}

fn sign_of_parity(j: usize) -> Coeff {
    if j.is_multiple_of(2) {
        Coeff::one()
    } else {
        -Coeff::one()
    }
}

/// `1/(aq;q)_inf * sum_j (-1)^j a^(2j) q^(j(5j+3)/2) (aq;q)_j (1 - a q^(2j+1)) / (q;q)_j`,
/// which is the `arr1` product side with `a` replaced by `aq`.
pub fn arr2_product(n: usize) -> EngineResult<BiSeries> {
    arr2_product_with_base(1, n)
}

/// `base` is the q-exponent of the Pochhammer `(a q^base; q)_j`; only
/// `base = 1` gives an identity.
fn arr2_product_with_base(base: u32, n: usize) -> EngineResult<BiSeries> {
    let mut total = BiSeries::zero(n);
    for j in 0.. {
        let lead = j * (5 * j + 3) / 2;
        if lead > n {
            break;
        }
        let mut t = BiSeries::monomial(sign_of_parity(j), 2 * j, lead, n);
        products::apply_bi_poch_finite(&mut t, true, Plus, base, 1, j, false)?;
        t.mul_factor(Plus, 1, 2 * j + 1);
        products::apply_bi_poch_finite(&mut t, false, Plus, 1, 1, j, true)?;
        total.add_assign_unchecked(&t);
    }
    divide_by_aq_q_inf(&mut total)?;
    Ok(total)
}

/// `1/(aq;q)_inf * sum_j (-1)^j a^(2j) q^(j(5j-1)/2) (a;q)_j (1 - a q^(2j)) / ((1-a) (q;q)_j)`,
/// with `(a;q)_j / (1-a)` taken as `(aq;q)_(j-1)` for `j >= 1` and the whole
/// `j = 0` term as `1`.
pub fn arr1_product(n: usize) -> EngineResult<BiSeries> {
    let mut total = BiSeries::one(n);
    for j in 1.. {
        let lead = j * (5 * j - 1) / 2;
        if lead > n {
            break;
        }
        let mut t = BiSeries::monomial(sign_of_parity(j), 2 * j, lead, n);
        products::apply_bi_poch_finite(&mut t, true, Plus, 1, 1, j - 1, false)?;
        t.mul_factor(Plus, 1, 2 * j);
        products::apply_bi_poch_finite(&mut t, false, Plus, 1, 1, j, true)?;
        total.add_assign_unchecked(&t);
    }
    divide_by_aq_q_inf(&mut total)?;
    Ok(total)
}

/// `prod_{j >= 1} (1 + a q^(4j - offset) + a^2 q^(8j - 2 offset)) / (1 - a q^(2j-1))`
fn trinomial_product(offset: usize, n: usize) -> EngineResult<BiSeries> {
    let mut u = products::bi_poch_inf_recip(1, 2, n)?;
    for j in 1.. {
        let e = 4 * j - offset;
        if e > n {
            break;
        }
        u = u.mul_poly(&[(0, 0, Coeff::one()), (1, e, Coeff::one()), (2, 2 * e, Coeff::one())]);
    }
    Ok(u)
}

/// `prod (1 + a q^(4j-2) + a^2 q^(8j-4)) / (1 - a q^(2j-1))`; coefficient of
/// `a^l q^n` is `s(l, n)`.
pub fn aram12_product(n: usize) -> EngineResult<BiSeries> {
    trinomial_product(2, n)
}

/// `prod (1 + a q^(4j) + a^2 q^(8j)) / (1 - a q^(2j-1))`; coefficient of
/// `a^l q^n` is `t(l, n)`.
pub fn aslater110_product(n: usize) -> EngineResult<BiSeries> {
    trinomial_product(0, n)
}

/// Both sides of a bivariate relation at q-order `n`.
pub fn relation_sides(name: &str, n: usize) -> EngineResult<(BiSeries, BiSeries)> {
    Ok(match name {
        "arr1" => (eval_sum_biseries(&f2_sum(), n)?, arr1_product(n)?),
        "arr2" => (eval_sum_biseries(&f1_sum(), n)?, arr2_product(n)?),
        "f1-qde" => (eval_sum_biseries(&f1_sum(), n)?, eval_sum_biseries(&f2_sum(), n)?.subst_aq(1)),
        "f2-qde" => {
            let f1 = eval_sum_biseries(&f1_sum(), n)?;
            let rhs = f1.add(&f1.subst_aq(1).shift_a(1).shift_q(1))?;
            (eval_sum_biseries(&f2_sum(), n)?, rhs)
        }
        "aram12" => (eval_sum_biseries(&aram12_sum(), n)?, aram12_product(n)?),
        "aslater110" => (eval_sum_biseries(&aslater110_sum(), n)?, aslater110_product(n)?),
        other => return Err(EngineError::UnknownName(other.to_string())),
    })
}

fn compare_bi(name: &str, lhs: &BiSeries, rhs: &BiSeries, started: Instant) -> VerificationReport {
    let order = lhs.order();
    let mut report = VerificationReport {
        name: name.to_string(),
        order,
        status: Status::Pass,
        mismatch: None,
        millis: 0,
        detail: None,
    };
    let bad_integer = lhs
        .rows()
        .iter()
        .chain(rhs.rows())
        .enumerate()
        .find_map(|(i, r)| r.first_non_integer().map(|(n, c)| (i % (order + 1), n, c.clone())));
    if let Some((l, n)) = lhs.first_difference(rhs) {
        report.status = Status::Fail;
        report.mismatch = Some(Mismatch {
            n,
            l: Some(l),
            lhs: lhs.coeff(l, n).expect("in range").clone(),
            rhs: rhs.coeff(l, n).expect("in range").clone(),
        });
    } else if let Some((l, n, c)) = bad_integer {
        report.status = Status::Fail;
        report.detail = Some(format!("non-integer coefficient {c} at a^{l} q^{n}"));
    } else if let Err((l, n)) = lhs.check_a_carries_q() {
        report.status = Status::Fail;
        report.detail = Some(format!("a^{l} appears with only q^{n}: a-degree truncation is unsound"));
    }
    report.millis = started.elapsed().as_millis() as u64;
    report
}

/// Builds both sides as bivariate series and compares every `(l, n)`
/// coefficient. Unknown names are the only error.
pub fn verify_bivariate_relation(name: &str, n: usize) -> EngineResult<VerificationReport> {
    if !BIVARIATE_RELATIONS.contains(&name) {
        return Err(EngineError::UnknownName(name.to_string()));
    }
    let started = Instant::now();
    Ok(match relation_sides(name, n) {
        Ok((lhs, rhs)) => compare_bi(name, &lhs, &rhs, started),
        Err(e) => VerificationReport::error(name, n, started, e.to_string()),
    })
}

/// Setting `a = 1` in both sides of an a-generalization must reproduce the
/// corresponding univariate identity's sides: checks the sum sides, then the
/// product sides.
pub fn verify_specialization(name: &str, n: usize) -> EngineResult<[VerificationReport; 2]> {
    let started = Instant::now();
    if !SPECIALIZATIONS.iter().any(|(b, _)| *b == name) {
        return Err(EngineError::UnknownName(name.to_string()));
    }
    let (blhs, brhs) = relation_sides(name, n)?;
    specialize(name, &blhs, &brhs, started)
}

fn specialize(name: &str, blhs: &BiSeries, brhs: &BiSeries, started: Instant) -> EngineResult<[VerificationReport; 2]> {
    let &(_, uni) =
        SPECIALIZATIONS.iter().find(|(b, _)| *b == name).ok_or_else(|| EngineError::UnknownName(name.to_string()))?;
    let spec = find_builtin(uni).expect("registry identity").spec;
    let n = blhs.order();
    let ulhs = crate::identity::eval::eval_sum_series(&spec.lhs, n)?;
    let urhs = crate::identity::eval::eval_product_side(&spec.rhs, n)?;
    Ok([
        compare_series(&format!("{name}@a=1 sum vs {uni}"), &blhs.eval_a1(), &ulhs, 0, started),
        compare_series(&format!("{name}@a=1 product vs {uni}"), &brhs.eval_a1(), &urhs, 0, started),
    ])
}

/// The relation itself followed by its `a = 1` specialization checks, if it
/// has any, sharing one evaluation of the bivariate sides.
pub fn verify_relation_family(name: &str, n: usize) -> EngineResult<Vec<VerificationReport>> {
    if !BIVARIATE_RELATIONS.contains(&name) {
        return Err(EngineError::UnknownName(name.to_string()));
    }
    let started = Instant::now();
    let (lhs, rhs) = match relation_sides(name, n) {
        Ok(sides) => sides,
        Err(e) => return Ok(vec![VerificationReport::error(name, n, started, e.to_string())]),
    };
    let mut out = vec![compare_bi(name, &lhs, &rhs, started)];
    if SPECIALIZATIONS.iter().any(|(b, _)| *b == name) {
        let started = Instant::now();
        match specialize(name, &lhs, &rhs, started) {
            Ok(pair) => out.extend(pair),
            Err(e) => out.push(VerificationReport::error(&format!("{name}@a=1"), n, started, e.to_string())),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_share_sides() {
        let names = |v: Vec<VerificationReport>| v.into_iter().map(|r| (r.name, r.status)).collect::<Vec<_>>();
        assert_eq!(names(verify_relation_family("f1-qde", 12).unwrap()), [("f1-qde".to_string(), Status::Pass)]);
        let fam = verify_relation_family("arr1", 12).unwrap();
        assert_eq!(fam.len(), 3);
        assert!(fam.iter().all(VerificationReport::passed));
        let spec = verify_specialization("arr1", 12).unwrap();
        assert_eq!(names(fam[1..].to_vec()), names(spec.to_vec()));
    }

    #[test]
    fn all_relations_hold_at_low_order() {
        for name in BIVARIATE_RELATIONS {
            let r = verify_bivariate_relation(name, 30).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn unknown_relation() {
        assert!(matches!(verify_bivariate_relation("nope", 5), Err(EngineError::UnknownName(_))));
    }

    #[test]
    fn specializations_hold() {
        for (b, _) in SPECIALIZATIONS {
            for r in verify_specialization(b, 30).unwrap() {
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn f1_from_f2_by_substitution() {
        let n = 20;
        let f2 = eval_sum_biseries(&f2_sum(), n).unwrap();
        assert_eq!(f2.subst_aq(1), eval_sum_biseries(&f1_sum(), n).unwrap());
    }

    #[test]
    fn aram12_spot_coefficient() {
        let rhs = aram12_product(6).unwrap();
        assert_eq!(rhs.coeff(1, 2).unwrap(), &Coeff::one());
        let t = aslater110_product(6).unwrap();
        assert_eq!(t.coeff(1, 2).unwrap(), &Coeff::zero());
    }

    #[test]
    fn arr2_needs_aq_pochhammer() {
        // with (a;q)_j in place of (aq;q)_j the j = 1 term leaves +a^3 q^4
        let n = 12;
        let lhs = eval_sum_biseries(&f1_sum(), n).unwrap();
        let unshifted = arr2_product_with_base(0, n).unwrap();
        assert_eq!(lhs.first_difference(&unshifted), Some((3, 4)));
        assert_eq!(unshifted.coeff(3, 4).unwrap(), &Coeff::one());
        assert_eq!(lhs.first_difference(&arr2_product(n).unwrap()), None);
    }

    #[test]
    fn broken_product_is_detected() {
        let n = 20;
        let lhs = eval_sum_biseries(&f1_sum(), n).unwrap();
        let rhs = arr1_product(n).unwrap();
        let r = compare_bi("swapped", &lhs, &rhs, Instant::now());
        assert_eq!(r.status, Status::Fail);
        assert!(r.mismatch.unwrap().l.is_some());
    }
}
