//! Partition theorems checked three ways: a brute-force count of the
//! combinatorial side, a count of the product side, and the coefficients of
//! the identity's two series.

use serde::Serialize;

use super::counting::{count_andrews_lewis_9, count_gap2, count_residues, count_s, count_t};
use super::signed::{count_signed, SignedClass, Variant};
use super::LabError;
use crate::coeff::Coeff;
use crate::identity::bivariate::relation_sides;
use crate::identity::eval::{eval_product_side, eval_sum_series};
use crate::identity::registry::find_builtin;
use crate::identity::Status;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Lhs {
    /// Parts differing by at least 2, all at least the given minimum.
    Gap2(u32),
    Signed(SignedClass),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rhs {
    Residues(u32, &'static [u32]),
    AndrewsLewis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Univariate {
        identity: &'static str,
        lhs: Lhs,
        rhs: Rhs,
    },
    /// Length-graded counts read off a bivariate relation.
    Graded {
        relation: &'static str,
        even_residue: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Theorem {
    pub name: &'static str,
    pub label: &'static str,
    kind: Kind,
}

impl Theorem {
    /// Shift between series index and partition weight.
    pub fn shift(&self) -> u32 {
        match self.kind {
            Kind::Univariate { lhs: Lhs::Signed(c), .. } => c.shift(),
            _ => 0,
        }
    }

    pub fn signed_class(&self) -> Option<SignedClass> {
        match self.kind {
            Kind::Univariate { lhs: Lhs::Signed(c), .. } => Some(c),
            _ => None,
        }
    }
}

const fn signed(name: &'static str, label: &'static str, class: SignedClass, rhs: Rhs) -> Theorem {
    let identity = match class {
        SignedClass::Ram36 => "ram36",
        SignedClass::Sl124 => "slater124",
        SignedClass::Sl125 => "slater125",
        SignedClass::New36 => "new36",
        SignedClass::M18_1 => "m18-1",
        SignedClass::M18_2 => "m18-2",
        SignedClass::M18_3 => "m18-3",
        SignedClass::M18_4 => "m18-4",
    };
    Theorem { name, label, kind: Kind::Univariate { identity, lhs: Lhs::Signed(class), rhs } }
}

/// Every theorem, in listing order.
pub fn theorems() -> Vec<Theorem> {
    use Rhs::Residues;
    use SignedClass::*;
    vec![
        Theorem {
            name: "rr1-comb",
            label: "gap-2 partitions equal parts 1, 4 (mod 5)",
            kind: Kind::Univariate { identity: "rr1", lhs: Lhs::Gap2(1), rhs: Residues(5, &[1, 4]) },
        },
        Theorem {
            name: "rr2-comb",
            label: "gap-2 partitions with parts > 1 equal parts 2, 3 (mod 5)",
            kind: Kind::Univariate { identity: "rr2", lhs: Lhs::Gap2(2), rhs: Residues(5, &[2, 3]) },
        },
        signed(
            "ram36-comb",
            "signed partitions vs parts 2,3,4,8,10,14,15,16 (mod 18)",
            Ram36,
            Residues(18, &[2, 3, 4, 8, 10, 14, 15, 16]),
        ),
        signed(
            "sl124-comb",
            "signed partitions vs parts 2,4,5,6,12,13,14,16 (mod 18)",
            Sl124,
            Residues(18, &[2, 4, 5, 6, 12, 13, 14, 16]),
        ),
        signed(
            "sl125-comb",
            "signed partitions of n+1 vs parts 2,6,7,8,10,11,12,16 (mod 18)",
            Sl125,
            Residues(18, &[2, 6, 7, 8, 10, 11, 12, 16]),
        ),
        signed(
            "new36-comb",
            "signed partitions of n+1 vs parts 1,4,6,8,10,12,14,17 (mod 18)",
            New36,
            Residues(18, &[1, 4, 6, 8, 10, 12, 14, 17]),
        ),
        signed(
            "m18-1-comb",
            "signed partitions vs parts 2,3,4,5,6,12,13,14,15,16 (mod 18)",
            M18_1,
            Residues(18, &[2, 3, 4, 5, 6, 12, 13, 14, 15, 16]),
        ),
        signed(
            "m18-2-comb",
            "signed partitions vs parts 1,3,4,6,8,10,12,14,15,17 (mod 18)",
            M18_2,
            Residues(18, &[1, 3, 4, 6, 8, 10, 12, 14, 15, 17]),
        ),
        signed("m18-3-comb", "signed partitions of n+1 vs the Andrews-Lewis modulus 9 count", M18_3, Rhs::AndrewsLewis),
        signed(
            "m18-4-comb",
            "signed partitions of n+2 vs parts 2,3,6,7,8,10,11,12,15,16 (mod 18)",
            M18_4,
            Residues(18, &[2, 3, 6, 7, 8, 10, 11, 12, 15, 16]),
        ),
        Theorem {
            name: "aram12-comb",
            label: "s(l, n) is the coefficient of a^l q^n",
            kind: Kind::Graded { relation: "aram12", even_residue: 2 },
        },
        Theorem {
            name: "aslater110-comb",
            label: "t(l, n) is the coefficient of a^l q^n",
            kind: Kind::Graded { relation: "aslater110", even_residue: 0 },
        },
    ]
}

pub fn find_theorem(name: &str) -> Option<Theorem> {
    theorems().into_iter().find(|t| t.name == name)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckRow {
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    pub lhs_count: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_count: Option<u128>,
    pub sum_coeff: Coeff,
    pub product_coeff: Coeff,
}

impl CrosscheckRow {
    /// All available quantities agree.
    pub fn agrees(&self) -> bool {
        let c = Coeff::from(self.lhs_count);
        self.rhs_count.is_none_or(|r| r == self.lhs_count) && self.sum_coeff == c && self.product_coeff == c
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub theorem: String,
    pub variant: Variant,
    pub n_max: u32,
    pub status: Status,
    /// Index into `rows` of the first disagreement.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<usize>,
    pub rows: Vec<CrosscheckRow>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Runs one theorem for every `n <= n_max` (and every `l <= n` for the graded
/// ones). `variant` only matters for classes with an as-stated reading.
pub fn crosscheck(name: &str, n_max: u32, variant: Variant) -> Result<CrosscheckReport, LabError> {
    let theorem = find_theorem(name).ok_or_else(|| LabError::UnknownTheorem(name.to_string()))?;
    let order = n_max as usize;
    let rows = match theorem.kind {
        Kind::Univariate { identity, lhs, rhs } => {
            let spec = find_builtin(identity).expect("theorem names a registry identity").spec;
            let sum = eval_sum_series(&spec.lhs, order)?;
            let product = eval_product_side(&spec.rhs, order)?;
            let mut rows = Vec::with_capacity(order + 1);
            for n in 0..=n_max {
                let lhs_count = match lhs {
                    Lhs::Gap2(min) => count_gap2(n, min)? as u128,
                    Lhs::Signed(class) => count_signed(class, variant, n + class.shift()) as u128,
                };
                let rhs_count = match rhs {
                    Rhs::Residues(m, r) => count_residues(n, m, r)?,
                    Rhs::AndrewsLewis => count_andrews_lewis_9(n) as u128,
                };
                rows.push(CrosscheckRow {
                    n,
                    l: None,
                    lhs_count,
                    rhs_count: Some(rhs_count),
                    sum_coeff: sum.coeffs()[n as usize].clone(),
                    product_coeff: product.coeffs()[n as usize].clone(),
                });
            }
            rows
        }
        Kind::Graded { relation, even_residue } => {
            let (sum, product) = relation_sides(relation, order)?;
            let mut rows = Vec::new();
            for n in 0..=n_max {
                for l in 0..=n {
                    let count = if even_residue == 2 { count_s(l, n) } else { count_t(l, n) };
                    rows.push(CrosscheckRow {
                        n,
                        l: Some(l),
                        lhs_count: count as u128,
                        rhs_count: None,
                        sum_coeff: sum.coeff(l as usize, n as usize).expect("in range").clone(),
                        product_coeff: product.coeff(l as usize, n as usize).expect("in range").clone(),
                    });
                }
            }
            rows
        }
    };
    let first_failure = rows.iter().position(|r| !r.agrees());
    Ok(CrosscheckReport {
        theorem: theorem.name.to_string(),
        variant,
        n_max,
        status: if first_failure.is_some() { Status::Fail } else { Status::Pass },
        first_failure,
        rows,
    })
}
