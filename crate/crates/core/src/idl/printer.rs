//! Canonical text for identity specs.

use std::fmt::Write;

use thiserror::Error;

use crate::identity::spec::{IdentitySpec, LinExpr, PochFactorSpec, Position, ProductAtom, ProductFactor};
use crate::series::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrintError {
    #[error("identity {0}: bivariate specs have no text form")]
    Bivariate(String),
    #[error("identity {name}: {what} has no text form")]
    Unprintable { name: String, what: String },
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn qmono(sign: Sign, e: LinExpr) -> String {
    let sign = if sign == Sign::Minus { "-" } else { "" };
    match (e.c1, e.c0) {
        (0, 0) => format!("{sign}1"),
        (0, k) if k > 0 => format!("{sign}q^{k}"),
        _ => format!("{sign}q^({e})"),
    }
}

fn poch(f: &PochFactorSpec) -> String {
    format!("poch({}; q^{}; {})", qmono(f.sign, f.base), f.step, f.length)
}

fn atom(name: &str, a: &ProductAtom) -> Result<String, PrintError> {
    Ok(match a {
        ProductAtom::PochInf { sign, exp, step } => {
            format!("pochinf({}; q^{step})", qmono(*sign, LinExpr::constant(*exp as i64)))
        }
        ProductAtom::Quintuple { w, x } => format!("Q(q^{w}, q^{x})"),
        ProductAtom::Residues { modulus, residues } => {
            let rs: Vec<String> = residues.iter().map(u32::to_string).collect();
            format!("resprod({modulus}; {})", rs.join(","))
        }
        ProductAtom::Monomial(k) => format!("q^{k}"),
        ProductAtom::Constant(c) if *c > 0 => c.to_string(),
        ProductAtom::Constant(c) => {
            return Err(PrintError::Unprintable { name: name.to_string(), what: format!("constant factor {c}") })
        }
    })
}

/// One identity on one line, without a trailing newline. Factors equal to
/// `1` are dropped, since the text form cannot tell them from the empty
/// product.
pub fn print_identity(spec: &IdentitySpec) -> Result<String, PrintError> {
    let name = spec.name.as_str();
    if spec.lhs.is_bivariate() {
        return Err(PrintError::Bivariate(name.to_string()));
    }
    if !valid_name(name) {
        return Err(PrintError::Unprintable { name: name.to_string(), what: "the name".into() });
    }
    let (num, den) = (*spec.lhs.scale.numer(), *spec.lhs.scale.denom());
    if num <= 0 || den <= 0 {
        return Err(PrintError::Unprintable { name: name.to_string(), what: format!("scale {}", spec.lhs.scale) });
    }
    let mut out = String::new();
    write!(out, "identity {name} : sum(j>={}) q^({})", spec.lhs.start, spec.lhs.lead).expect("string write");
    if num != 1 {
        write!(out, " * {num}").expect("string write");
    }
    if den != 1 {
        write!(out, " / {den}").expect("string write");
    }
    for f in &spec.lhs.factors {
        let op = if f.position == Position::Denominator { '/' } else { '*' };
        write!(out, " {op} {}", poch(f)).expect("string write");
    }
    out.push_str(" ==");
    let factors: Vec<&ProductFactor> = spec.rhs.factors.iter().filter(|f| f.atom != ProductAtom::Constant(1)).collect();
    match factors.first() {
        None => out.push_str(" 1"),
        Some(f) if f.inverted => out.push_str(" 1"),
        Some(_) => {}
    }
    for (i, f) in factors.iter().enumerate() {
        let text = atom(name, &f.atom)?;
        match (i, f.inverted) {
            (0, false) => write!(out, " {text}"),
            (_, true) => write!(out, " / {text}"),
            (_, false) => write!(out, " * {text}"),
        }
        .expect("string write");
    }
    if spec.rhs.shift != 0 {
        write!(out, " shift {}", spec.rhs.shift).expect("string write");
    }
    Ok(out)
}

/// The canonical document: one identity per block, blocks separated by a
/// blank line. The empty list prints as the empty document.
pub fn print_idl(specs: &[IdentitySpec]) -> Result<String, PrintError> {
    let blocks = specs.iter().map(print_identity).collect::<Result<Vec<_>, _>>()?;
    Ok(blocks.iter().map(|b| format!("{b}\n")).collect::<Vec<_>>().join("\n"))
}
