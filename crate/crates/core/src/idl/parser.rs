//! Recursive-descent parser. Every parsed identity is validated before it is
//! returned.

use std::collections::BTreeSet;

use num_rational::Ratio;
use num_traits::{CheckedDiv, CheckedMul};

use super::lexer::{tokenize, Token, TokenKind, MAX_LITERAL};
use super::ParseError;
use crate::identity::spec::{
    IdentitySpec, LinExpr, PochFactorSpec, Position, ProductAtom, ProductFactor, ProductSideSpec, QuadExpr, SumSideSpec,
};
use crate::identity::{validate_product_side, validate_sum_side, EngineError};
use crate::series::Sign;

type PResult<T> = Result<T, ParseError>;

/// Parses a whole document.
pub fn parse_idl(text: &str) -> PResult<Vec<IdentitySpec>> {
    let tokens = tokenize(text)?;
    let eof = end_position(text);
    let mut p = Parser { tokens, pos: 0, eof };
    let mut specs = Vec::new();
    let mut names = BTreeSet::new();
    while p.peek().is_some() {
        let (spec, name_tok) = p.identity()?;
        if !names.insert(spec.name.clone()) {
            return Err(ParseError::at(&name_tok, format!("duplicate identity name {}", spec.name), Vec::new()));
        }
        specs.push(spec);
    }
    Ok(specs)
}

/// A lone side, as accepted by `expand`: either a `sum(j>=..) ...` term or a
/// product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Sum(SumSideSpec),
    Product(ProductSideSpec),
}

pub fn parse_expr(text: &str) -> PResult<Expr> {
    let tokens = tokenize(text)?;
    let eof = end_position(text);
    let mut p = Parser { tokens, pos: 0, eof };
    let expr = if p.peek_is("sum") {
        let (lhs, lead, factors) = p.sum()?;
        let spec = IdentitySpec { name: "expr".into(), lhs, rhs: ProductSideSpec::default() };
        validate(&spec, &Located { lead, factors, atoms: Vec::new() })?;
        Expr::Sum(spec.lhs)
    } else {
        let (rhs, atoms) = p.product()?;
        validate_atoms("expr", &rhs, &atoms)?;
        Expr::Product(rhs)
    };
    if p.peek().is_some() {
        return Err(p.unexpected(vec![format!("{:?}", "*"), format!("{:?}", "/"), "end of input".into()]));
    }
    Ok(expr)
}

fn end_position(text: &str) -> (usize, usize) {
    let line = text.matches('\n').count() + 1;
    let col = text.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    eof: (usize, usize),
}

/// Where each validated piece came from, for error positions.
struct Located {
    lead: Token,
    factors: Vec<Token>,
    atoms: Vec<Token>,
}

fn quote(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| format!("{s:?}")).collect()
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_is(&self, text: &str) -> bool {
        self.peek().is_some_and(|t| t.is(text))
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn error_here(&self, message: impl Into<String>, expected: Vec<String>) -> ParseError {
        match self.peek() {
            Some(t) => ParseError::at(t, message, expected),
            None => ParseError::new(message, self.eof.0, self.eof.1, expected),
        }
    }

    fn unexpected(&self, expected: Vec<String>) -> ParseError {
        let found = self.peek().map_or("end of input".to_string(), Token::describe);
        self.error_here(format!("unexpected {found}"), expected)
    }

    fn expect(&mut self, text: &str) -> PResult<Token> {
        if self.peek_is(text) {
            Ok(self.next().expect("peeked"))
        } else {
            Err(self.unexpected(quote(&[text])))
        }
    }

    fn int(&mut self) -> PResult<(i64, Token)> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Integer => {
                let t = self.next().expect("peeked");
                let v = t.text.parse().expect("lexer checked the literal");
                Ok((v, t))
            }
            _ => Err(self.unexpected(vec!["integer".into()])),
        }
    }

    fn identity(&mut self) -> PResult<(IdentitySpec, Token)> {
        self.expect("identity")?;
        let name_tok = self.name()?;
        self.expect(":")?;
        let (lhs, lead, factors) = self.sum()?;
        self.expect("==")?;
        let (mut rhs, atoms) = self.product()?;
        if self.peek_is("shift") {
            self.next();
            rhs.shift = self.int()?.0 as u32;
        }
        if self.peek().is_some() && !self.peek_is("identity") {
            let mut expected = quote(&["*", "/"]);
            if rhs.shift == 0 {
                expected.push(format!("{:?}", "shift"));
            }
            expected.extend(quote(&["identity"]));
            expected.push("end of input".into());
            return Err(self.unexpected(expected));
        }
        let spec = IdentitySpec { name: name_tok.text.clone(), lhs, rhs };
        validate(&spec, &Located { lead, factors, atoms })?;
        Ok((spec, name_tok))
    }

    /// `[A-Za-z][A-Za-z0-9_-]*`, glued from adjacent tokens.
    fn name(&mut self) -> PResult<Token> {
        let mut tok = match self.peek() {
            Some(t) if t.text.starts_with(|c: char| c.is_ascii_alphabetic()) => self.next().expect("peeked"),
            _ => return Err(self.unexpected(vec!["identity name".into()])),
        };
        while let Some(t) = self.peek() {
            let glues = t.start == tok.end && (t.kind != TokenKind::Symbol || t.text == "-");
            if !glues {
                break;
            }
            let t = self.next().expect("peeked");
            tok.text.push_str(&t.text);
            tok.end = t.end;
        }
        tok.kind = TokenKind::Ident;
        Ok(tok)
    }

    fn sum(&mut self) -> PResult<(SumSideSpec, Token, Vec<Token>)> {
        let sum_tok = self.expect("sum")?;
        self.expect("(")?;
        self.expect("j")?;
        self.expect(">=")?;
        let (start, _) = self.int()?;
        self.expect(")")?;
        let mut spec = SumSideSpec::new(QuadExpr::default(), Vec::new());
        spec.start = start as u32;
        let mut lead_tok: Option<Token> = None;
        let mut factor_toks = Vec::new();
        let mut inverted = false;
        loop {
            let Some(tok) = self.peek().cloned() else {
                return Err(self.unexpected(quote(&["q", "poch"]).into_iter().chain(["integer".into()]).collect()));
            };
            if tok.is("q") {
                self.next();
                self.expect("^")?;
                self.expect("(")?;
                let e = self.poly(2)?;
                self.expect(")")?;
                let sign = if inverted { -1 } else { 1 };
                let lead = spec.lead;
                let sum = [lead.c2 + sign * e[2], lead.c1 + sign * e[1], lead.c0 + sign * e[0]];
                if sum.iter().any(|c| c.abs() > MAX_LITERAL) {
                    return Err(ParseError::at(
                        &tok,
                        format!("exponent coefficients exceed {MAX_LITERAL}"),
                        Vec::new(),
                    ));
                }
                spec.lead = QuadExpr::new(sum[0], sum[1], sum[2]);
                lead_tok.get_or_insert(tok);
            } else if tok.is("poch") {
                self.next();
                self.expect("(")?;
                let (sign, base, _) = self.qmono(true)?;
                self.expect(";")?;
                let step = self.step()?;
                self.expect(";")?;
                let len = self.poly(1)?;
                self.expect(")")?;
                let position = if inverted { Position::Denominator } else { Position::Numerator };
                spec.factors.push(PochFactorSpec::new(sign, base, step, LinExpr::new(len[1], len[0]), position));
                factor_toks.push(tok);
            } else if tok.kind == TokenKind::Integer {
                let (v, _) = self.int()?;
                let k = Ratio::from_integer(v);
                let scaled = if inverted {
                    if v == 0 {
                        return Err(ParseError::at(&tok, "division by zero", Vec::new()));
                    }
                    spec.scale.checked_div(&k)
                } else {
                    spec.scale.checked_mul(&k)
                };
                spec.scale = scaled.ok_or_else(|| ParseError::at(&tok, "scale factor overflows", Vec::new()))?;
            } else {
                let mut expected = quote(&["q", "poch"]);
                expected.push("integer".into());
                return Err(self.unexpected(expected));
            }
            if self.peek_is("*") {
                inverted = false;
            } else if self.peek_is("/") {
                inverted = true;
            } else {
                break;
            }
            self.next();
        }
        Ok((spec, lead_tok.unwrap_or(sum_tok), factor_toks))
    }

    fn product(&mut self) -> PResult<(ProductSideSpec, Vec<Token>)> {
        let mut spec = ProductSideSpec::default();
        let mut toks = Vec::new();
        let mut inverted = false;
        loop {
            let Some(tok) = self.peek().cloned() else {
                return Err(self.unexpected(atom_starts()));
            };
            let atom = if tok.is("pochinf") {
                self.next();
                self.expect("(")?;
                let (sign, e, etok) = self.qmono(false)?;
                self.expect(";")?;
                let step = self.step()?;
                self.expect(")")?;
                ProductAtom::PochInf { sign, exp: constant_exp(&e, &etok)?, step }
            } else if tok.is("Q") {
                self.next();
                self.expect("(")?;
                let w = self.plain_power()?;
                self.expect(",")?;
                let x = self.plain_power()?;
                self.expect(")")?;
                ProductAtom::Quintuple { w, x }
            } else if tok.is("resprod") {
                self.next();
                self.expect("(")?;
                let (modulus, _) = self.int()?;
                self.expect(";")?;
                let mut residues = vec![self.int()?.0 as u32];
                while self.peek_is(",") {
                    self.next();
                    residues.push(self.int()?.0 as u32);
                }
                self.expect(")")?;
                ProductAtom::Residues { modulus: modulus as u32, residues }
            } else if tok.is("q") {
                self.next();
                self.expect("^")?;
                ProductAtom::Monomial(self.int()?.0 as u32)
            } else if tok.kind == TokenKind::Integer {
                ProductAtom::Constant(self.int()?.0)
            } else {
                return Err(self.unexpected(atom_starts()));
            };
            // a bare 1 is the empty product
            if atom != ProductAtom::Constant(1) {
                spec.factors.push(ProductFactor { atom, inverted });
                toks.push(tok);
            }
            if self.peek_is("*") {
                inverted = false;
            } else if self.peek_is("/") {
                inverted = true;
            } else {
                break;
            }
            self.next();
        }
        Ok((spec, toks))
    }

    /// `[-] q^INT | [-] q^(lin) | [-] 1`; the token returned is the first one.
    fn qmono(&mut self, allow_j: bool) -> PResult<(Sign, LinExpr, Token)> {
        let first = match self.peek() {
            Some(t) => t.clone(),
            None => return Err(self.unexpected(quote(&["q", "1", "-"]))),
        };
        let sign = if self.peek_is("-") {
            self.next();
            Sign::Minus
        } else {
            Sign::Plus
        };
        if self.peek_is("q") {
            self.next();
            self.expect("^")?;
            if self.peek_is("(") {
                self.next();
                let at = self.peek().cloned();
                let e = self.poly(1)?;
                self.expect(")")?;
                if !allow_j && e[1] != 0 {
                    let at = at.expect("poly consumed a token");
                    return Err(ParseError::at(&at, "exponent must be a constant here", Vec::new()));
                }
                Ok((sign, LinExpr::new(e[1], e[0]), first))
            } else if self.peek().is_some_and(|t| t.kind == TokenKind::Integer) {
                Ok((sign, LinExpr::constant(self.int()?.0), first))
            } else {
                Err(self.unexpected(vec!["integer".into(), format!("{:?}", "(")]))
            }
        } else if self.peek().is_some_and(|t| t.kind == TokenKind::Integer) {
            let (v, t) = self.int()?;
            if v != 1 {
                return Err(ParseError::at(&t, "only 1 (that is, q^0) may stand for a monomial", Vec::new()));
            }
            Ok((sign, LinExpr::constant(0), first))
        } else {
            let mut expected = quote(&["q", "1"]);
            if sign == Sign::Plus {
                expected.push(format!("{:?}", "-"));
            }
            Err(self.unexpected(expected))
        }
    }

    /// The step `q^k` with `k > 0`.
    fn step(&mut self) -> PResult<u32> {
        let (sign, e, tok) = self.qmono(false)?;
        if sign == Sign::Minus || e.c0 <= 0 {
            return Err(ParseError::at(&tok, "step must be q^k with k > 0", Vec::new()));
        }
        Ok(e.c0 as u32)
    }

    /// `q^k` with `k >= 0` and no sign.
    fn plain_power(&mut self) -> PResult<u32> {
        let (sign, e, tok) = self.qmono(false)?;
        if sign == Sign::Minus {
            return Err(ParseError::at(&tok, "argument must be an unsigned power of q", Vec::new()));
        }
        constant_exp(&e, &tok)
    }

    /// An integer polynomial in `j` of degree at most `max_degree`, returned
    /// as `[c0, c1, c2]`.
    fn poly(&mut self, max_degree: usize) -> PResult<[i64; 3]> {
        let mut coeffs = [0i64; 3];
        let mut sign = 1;
        if self.peek_is("-") {
            self.next();
            sign = -1;
        } else if self.peek_is("+") {
            self.next();
        }
        loop {
            let (c, deg, at) = if self.peek().is_some_and(|t| t.kind == TokenKind::Integer) {
                let (c, t) = self.int()?;
                if self.peek_is("*") {
                    self.next();
                    let j = self.expect("j")?;
                    (c, self.j_power()?, j)
                } else {
                    (c, 0, t)
                }
            } else if self.peek_is("j") {
                let j = self.next().expect("peeked");
                (1, self.j_power()?, j)
            } else {
                return Err(self.unexpected(vec!["integer".into(), format!("{:?}", "j")]));
            };
            if deg > max_degree {
                return Err(ParseError::at(
                    &at,
                    format!("degree {deg} term in an expression of degree at most {max_degree}"),
                    Vec::new(),
                ));
            }
            coeffs[deg] += sign * c;
            if coeffs[deg].abs() > MAX_LITERAL {
                return Err(ParseError::at(&at, format!("coefficient exceeds {MAX_LITERAL}"), Vec::new()));
            }
            if self.peek_is("+") {
                sign = 1;
            } else if self.peek_is("-") {
                sign = -1;
            } else {
                break;
            }
            self.next();
        }
        Ok(coeffs)
    }

    /// After `j`: an optional `^1` or `^2`.
    fn j_power(&mut self) -> PResult<usize> {
        if !self.peek_is("^") {
            return Ok(1);
        }
        self.next();
        let (e, t) = self.int()?;
        match e {
            1 | 2 => Ok(e as usize),
            _ => Err(ParseError::at(&t, "powers of j are limited to 1 and 2", Vec::new())),
        }
    }
}

fn atom_starts() -> Vec<String> {
    let mut v = quote(&["pochinf", "Q", "resprod", "q"]);
    v.push("integer".into());
    v
}

fn constant_exp(e: &LinExpr, tok: &Token) -> PResult<u32> {
    if e.c1 != 0 || e.c0 < 0 {
        return Err(ParseError::at(tok, "exponent must be a non-negative constant", Vec::new()));
    }
    Ok(e.c0 as u32)
}

fn validation_error(tok: &Token, name: &str, err: EngineError) -> ParseError {
    let mut e = ParseError::at(tok, format!("identity {name}: {err}"), Vec::new());
    e.validation = true;
    e
}

/// Runs the engine's validators, locating the first offending clause.
fn validate(spec: &IdentitySpec, at: &Located) -> PResult<()> {
    let mut prefix = spec.lhs.clone();
    prefix.factors.clear();
    validate_sum_side(&prefix).map_err(|e| validation_error(&at.lead, &spec.name, e))?;
    for (f, tok) in spec.lhs.factors.iter().zip(&at.factors) {
        prefix.factors.push(*f);
        validate_sum_side(&prefix).map_err(|e| validation_error(tok, &spec.name, e))?;
    }
    validate_atoms(&spec.name, &spec.rhs, &at.atoms)
}

fn validate_atoms(name: &str, rhs: &ProductSideSpec, atoms: &[Token]) -> PResult<()> {
    for (f, tok) in rhs.factors.iter().zip(atoms) {
        let single = ProductSideSpec::new(vec![f.clone()]);
        validate_product_side(&single).map_err(|e| validation_error(tok, name, e))?;
    }
    Ok(())
}
