//! The built-in identities.

use crate::identity::spec::{
    IdentitySpec, LinExpr, PochFactorSpec, ProductAtom, ProductFactor, ProductSideSpec, QuadExpr, SumSideSpec,
};
use crate::series::Sign::{Minus, Plus};

/// A registry identity with a short description of where it comes from.
#[derive(Debug, Clone)]
pub struct BuiltinIdentity {
    pub spec: IdentitySpec,
    pub label: &'static str,
}

const J: LinExpr = LinExpr::new(1, 0);

const fn c(k: i64) -> LinExpr {
    LinExpr::constant(k)
}

const fn lin(c1: i64, c0: i64) -> LinExpr {
    LinExpr::new(c1, c0)
}

fn sum(lead: QuadExpr, factors: Vec<PochFactorSpec>) -> SumSideSpec {
    SumSideSpec::new(lead, factors)
}

fn resprod(modulus: u32, residues: &[u32]) -> ProductSideSpec {
    ProductSideSpec::new(vec![ProductFactor::num(ProductAtom::Residues { modulus, residues: residues.to_vec() })])
}

/// `Q(q^18, q^x) / (q^2; q^2)_inf`
fn mod36_product(x: u32) -> ProductSideSpec {
    ProductSideSpec::new(vec![
        ProductFactor::num(ProductAtom::Quintuple { w: 18, x }),
        ProductFactor::den(ProductAtom::PochInf { sign: Plus, exp: 2, step: 2 }),
    ])
}

/// `(q^a, q^b, q^9; q^9)_inf (q^c, q^d; q^18)_inf / (q; q)_inf`
fn mod18_product(a: u32, b: u32, c: u32, d: u32) -> ProductSideSpec {
    let pinf = |exp, step| ProductAtom::PochInf { sign: Plus, exp, step };
    ProductSideSpec::new(vec![
        ProductFactor::num(pinf(a, 9)),
        ProductFactor::num(pinf(b, 9)),
        ProductFactor::num(pinf(9, 9)),
        ProductFactor::num(pinf(c, 18)),
        ProductFactor::num(pinf(d, 18)),
        ProductFactor::den(pinf(1, 1)),
    ])
}

/// Numerator `(q^3; q^6)_j` shared by the mod-12 and mod-36 sums.
fn q3_q6() -> PochFactorSpec {
    PochFactorSpec::num(Plus, c(3), 6, J)
}

fn identity(name: &str, lhs: SumSideSpec, rhs: ProductSideSpec, label: &'static str) -> BuiltinIdentity {
    BuiltinIdentity { spec: IdentitySpec { name: name.to_string(), lhs, rhs }, label }
}

/// Every univariate built-in identity, in a fixed order.
pub fn builtin_identities() -> Vec<BuiltinIdentity> {
    let q_q = PochFactorSpec::den(Plus, c(1), 1, J);
    vec![
        identity(
            "rr1",
            sum(QuadExpr::new(1, 0, 0), vec![q_q]),
            resprod(5, &[1, 4]),
            "first Rogers-Ramanujan identity, modulus 5",
        ),
        identity(
            "rr2",
            sum(QuadExpr::new(1, 1, 0), vec![q_q]),
            resprod(5, &[2, 3]),
            "second Rogers-Ramanujan identity, modulus 5",
        ),
        identity(
            "ram12",
            sum(
                QuadExpr::new(1, 0, 0),
                vec![
                    q3_q6(),
                    PochFactorSpec::den(Plus, c(1), 2, J),
                    PochFactorSpec::den(Plus, c(1), 2, J),
                    PochFactorSpec::den(Plus, c(4), 4, J),
                ],
            ),
            resprod(12, &[1, 2, 3, 5, 7, 9, 10, 11]),
            "from Ramanujan's lost notebook, modulus 12",
        ),
        identity(
            "slater110",
            sum(
                QuadExpr::new(1, 2, 0),
                vec![
                    q3_q6(),
                    PochFactorSpec::den(Plus, c(1), 2, J),
                    PochFactorSpec::den(Plus, c(1), 2, lin(1, 1)),
                    PochFactorSpec::den(Plus, c(4), 4, J),
                ],
            ),
            resprod(12, &[1, 3, 4, 5, 7, 8, 9, 11]),
            "Slater list entry 110, modulus 12",
        ),
        identity(
            "slater125",
            sum(
                QuadExpr::new(2, 4, 0),
                vec![q3_q6(), PochFactorSpec::den(Plus, c(2), 2, lin(2, 1)), PochFactorSpec::den(Plus, c(1), 2, J)],
            ),
            mod36_product(7),
            "Slater list entry 125, modulus 36 family",
        ),
        identity(
            "slater124",
            sum(
                QuadExpr::new(2, 2, 0),
                vec![q3_q6(), PochFactorSpec::den(Plus, c(2), 2, lin(2, 1)), PochFactorSpec::den(Plus, c(1), 2, J)],
            ),
            mod36_product(5),
            "Slater list entry 124, modulus 36 family",
        ),
        identity(
            "ram36",
            sum(
                QuadExpr::new(2, 0, 0),
                vec![q3_q6(), PochFactorSpec::den(Plus, c(2), 2, lin(2, 0)), PochFactorSpec::den(Plus, c(1), 2, J)],
            ),
            mod36_product(3),
            "from Ramanujan's lost notebook, modulus 36 family",
        ),
        identity(
            "new36",
            sum(
                QuadExpr::new(2, 2, 0),
                vec![
                    q3_q6(),
                    PochFactorSpec::den(Plus, c(2), 2, lin(2, 0)),
                    PochFactorSpec::den(Plus, c(1), 2, lin(1, 1)),
                ],
            ),
            mod36_product(1),
            "completes the modulus 36 family",
        ),
        identity(
            "m18-1",
            sum(
                QuadExpr::new(1, 1, 0),
                vec![
                    PochFactorSpec::num(Minus, c(0), 3, J),
                    PochFactorSpec::den(Minus, c(0), 1, J),
                    PochFactorSpec::den(Plus, c(1), 1, lin(2, 0)),
                ],
            ),
            mod18_product(1, 8, 7, 11),
            "modulus 18, product (q,q^8,q^9;q^9)(q^7,q^11;q^18)/(q;q)",
        ),
        identity(
            "m18-2",
            sum(
                QuadExpr::new(1, 0, 0),
                vec![
                    PochFactorSpec::num(Minus, c(0), 3, J),
                    PochFactorSpec::den(Minus, c(0), 1, J),
                    PochFactorSpec::den(Plus, c(1), 1, lin(2, 0)),
                ],
            ),
            mod18_product(2, 7, 5, 13),
            "modulus 18, product (q^2,q^7,q^9;q^9)(q^5,q^13;q^18)/(q;q)",
        ),
        identity(
            "m18-3",
            sum(
                QuadExpr::new(1, 1, 0),
                vec![
                    PochFactorSpec::num(Minus, c(3), 3, J),
                    PochFactorSpec::den(Minus, c(1), 1, J),
                    PochFactorSpec::den(Plus, c(1), 1, lin(2, 1)),
                ],
            ),
            mod18_product(3, 6, 3, 15),
            "modulus 18, product (q^3,q^6,q^9;q^9)(q^3,q^15;q^18)/(q;q)",
        ),
        identity(
            "m18-4",
            sum(
                QuadExpr::new(1, 2, 0),
                vec![
                    PochFactorSpec::num(Minus, c(3), 3, J),
                    PochFactorSpec::den(Plus, c(2), 2, J),
                    PochFactorSpec::den(Plus, lin(1, 2), 1, lin(1, 1)),
                ],
            ),
            mod18_product(4, 5, 1, 17),
            "modulus 18, product (q^4,q^5,q^9;q^9)(q,q^17;q^18)/(q;q)",
        ),
    ]
}

/// The specs of [`builtin_identities`].
pub fn builtin_registry() -> Vec<IdentitySpec> {
    builtin_identities().into_iter().map(|b| b.spec).collect()
}

pub fn find_builtin(name: &str) -> Option<BuiltinIdentity> {
    builtin_identities().into_iter().find(|b| b.spec.name == name)
}
