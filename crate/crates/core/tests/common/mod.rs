#![allow(dead_code)]

use num_rational::Ratio;
use proptest::prelude::*;
use qrsl_core::identity::{
    validate_product_side, validate_sum_side, IdentitySpec, LinExpr, PochFactorSpec, Position, ProductAtom,
    ProductFactor, ProductSideSpec, QuadExpr, SumSideSpec,
};
use qrsl_core::idl::{parse_idl, print_identity, tokenize, TokenKind};
use qrsl_core::Sign;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

fn lead() -> impl Strategy<Value = QuadExpr> {
    prop_oneof![
        (1i64..4, 0i64..6, 0i64..5).prop_map(|(a, b, c)| QuadExpr::new(a, b, c)),
        (1i64..4, 0i64..5).prop_map(|(b, c)| QuadExpr::new(0, b, c)),
    ]
}

fn poch_factor() -> impl Strategy<Value = PochFactorSpec> {
    (sign(), 0i64..3, 1i64..6, 1u32..7, 0i64..3, 0i64..3, any::<bool>()).prop_map(|(s, b1, b0, step, l1, l0, den)| {
        let pos = if den { Position::Denominator } else { Position::Numerator };
        PochFactorSpec::new(s, LinExpr::new(b1, b0), step, LinExpr::new(l1, l0), pos)
    })
}

fn product_factor() -> impl Strategy<Value = ProductFactor> {
    let atom = prop_oneof![
        (sign(), 1u32..12, 1u32..12).prop_map(|(sign, exp, step)| ProductAtom::PochInf { sign, exp, step }),
        (1u32..6, 1u32..10).prop_map(|(x, d)| ProductAtom::Quintuple { w: 2 * x + d, x }),
        (1u32..20)
            .prop_flat_map(|m| (Just(m), proptest::collection::vec(1..=m, 1..5)))
            .prop_map(|(modulus, residues)| ProductAtom::Residues { modulus, residues }),
        (0u32..6).prop_map(ProductAtom::Monomial),
        (2i64..9).prop_map(ProductAtom::Constant),
    ];
    (atom, any::<bool>()).prop_map(|(atom, inv)| {
        let inverted = inv && !matches!(atom, ProductAtom::Monomial(_));
        ProductFactor { atom, inverted }
    })
}

/// Valid univariate specs in the shapes the text format can express.
pub fn valid_spec() -> impl Strategy<Value = IdentitySpec> {
    (
        "[a-zA-Z][a-zA-Z0-9_-]{0,10}",
        0u32..3,
        lead(),
        (1i64..6, 1i64..6),
        proptest::collection::vec(poch_factor(), 0..5),
        proptest::collection::vec(product_factor(), 0..5),
        0u32..4,
    )
        .prop_map(|(name, start, lead, (n, d), factors, pf, shift)| {
            let mut lhs = SumSideSpec::new(lead, factors);
            lhs.start = start;
            lhs.scale = Ratio::new(n, d);
            let mut rhs = ProductSideSpec::new(pf);
            rhs.shift = shift;
            IdentitySpec { name, lhs, rhs }
        })
        .prop_filter("valid spec", |s| validate_sum_side(&s.lhs).is_ok() && validate_product_side(&s.rhs).is_ok())
}

/// Corrupts exactly one token of the canonical text of `spec` and returns
/// the re-parsed result. Draws that do not parse, fail validation, or leave
/// the spec unchanged are discarded and redrawn.
pub fn mutate_one_token(spec: &IdentitySpec, rng: &mut ChaCha8Rng) -> (IdentitySpec, String) {
    let text = print_identity(spec).expect("builtins print");
    let tokens = tokenize(&text).expect("canonical text lexes");
    // the name sits between `identity` and `:`
    let body_start = tokens.iter().position(|t| t.text == ":").expect("colon") + 1;
    loop {
        let t = &tokens[rng.gen_range(body_start..tokens.len())];
        let replacement = match (t.kind, t.text.as_str()) {
            (TokenKind::Integer, v) => {
                let v: i64 = v.parse().unwrap();
                match rng.gen_range(0..3) {
                    0 => v + 1,
                    1 => v + 2,
                    _ => v - 1,
                }
                .to_string()
            }
            (_, "*") => "/".into(),
            (_, "/") => "*".into(),
            (_, "+") => "-".into(),
            (_, "-") => {
                if rng.gen_bool(0.5) {
                    "+".into()
                } else {
                    String::new()
                }
            }
            _ => continue,
        };
        if replacement.starts_with('-') && t.kind == TokenKind::Integer {
            continue;
        }
        let mutated = format!("{}{}{}", &text[..t.start], replacement, &text[t.end..]);
        if let Ok(mut specs) = parse_idl(&mutated) {
            let m = specs.pop().expect("one identity");
            if m != *spec {
                let what = format!("{:?} -> {:?} at column {}", t.text, replacement, t.column);
                return (m, what);
            }
        }
    }
}

/// Each case marks the first offending token with `⟦`; the marker is removed
/// before parsing and its position is the expected error position.
pub const MALFORMED: &[&str] = &[
    "identity rr1 ⟦sum(j>=0) q^(j^2) == 1",
    "identity ⟦: sum(j>=0) q^(j) == 1",
    "identity a : sum(⟦k>=0) q^(k) == 1",
    "identity a : sum(j⟦=0) q^(j) == 1",
    "identity a : sum(j>=0) q^(j^⟦3) == 1",
    "identity a : sum(j>=0) q^(j⟦*j) == 1",
    "identity a : sum(j>=0) q^(j) == ⟦poch(q^1; q^1; j)",
    "identity a : sum(j>=0) q^(j) == resprod(5; 1,4\n⟦",
    "identity a : sum(j>=0) q^(j) == Q(q^18, ⟦-q^1)",
    "identity a : sum(j>=0) q^(j) / poch(q^1; ⟦q^0; j) == 1",
    "identity a : sum(j>=0) q^(j) / poch(q^1; q^1; ⟦j^2) == 1",
    "identity a : sum(j>=0) q^(j) * poch(⟦2; q^1; j) == 1",
    "identity a : sum(j>=0) q^(j) == 1 ⟦& 2",
    "identity a : sum(j>=0) q^(j) == pochinf(q^(⟦j); q^1)",
    "identity a : sum(j>=0) q^(j) / ⟦0 == 1",
    "identity a : sum(j>=0) q^(j) == 1 ⟦sum",
    "identity a : sum(j>=0) q^(j) == ⟦== 1",
    "# header\n\nidentity a : sum(j>=0) q^(j) ⟦= 1",
    "identity a : sum(j>=0) q^(j) == 1\nidentity b : sum(j>=0) q^(j) == q^⟦(1)",
    "identity a : sum(j>=0) q^(j) == 1\nidentity ⟦a : sum(j>=0) q^(j) == 1",
    "identity a : sum(j>=0) q^(j) == ⟦99999999",
    "identity a : sum(j>=0) q^(j) == ⟦é",
    "⟦sum(j>=0) q^(j) == 1",
    "identity a : sum(j>=0) ⟦)",
    "identity a : sum(j>=0) q^(j) == 1 shift ⟦-1",
    // admissibility failures point at the offending clause
    "identity bad : sum(j>=0) ⟦q^(-j) == 1",
    "identity a : sum(j>=0) q^(j) / ⟦poch(q^(j); q^1; 1) == 1",
    "identity a : sum(j>=0) q^(j) == ⟦Q(q^4, q^2)",
    "identity a : sum(j>=0) q^(j) == 1 * ⟦resprod(5; 0)",
    "identity a : sum(j>=0) q^(j) == 1 / ⟦q^2",
    "identity a : sum(j>=0) q^(j) == ⟦pochinf(1; q^2)",
    "identity a : sum(j>=0) q^(j) * ⟦poch(q^1; q^1; j-1) == 1",
];

pub fn position_of_marker(text: &str) -> (usize, usize) {
    let before = &text[..text.find('⟦').expect("marker")];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().unwrap().chars().count() + 1;
    (line, col)
}
