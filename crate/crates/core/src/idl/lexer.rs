//! Tokens of the identity-description language.

use serde::Serialize;

use super::ParseError;

/// Integer literals above this are rejected, which keeps every later
/// exponent computation far from overflow.
pub const MAX_LITERAL: i64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TokenKind {
    Ident,
    Integer,
    Symbol,
    Keyword,
}

const KEYWORDS: [&str; 9] = ["identity", "sum", "poch", "pochinf", "Q", "resprod", "q", "j", "shift"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    /// 1-based.
    pub line: usize,
    /// 1-based, counted in characters.
    pub column: usize,
    /// Character offsets `[start, end)` into the source.
    #[serde(skip)]
    pub start: usize,
    #[serde(skip)]
    pub end: usize,
}

impl Token {
    pub fn is(&self, text: &str) -> bool {
        self.text == text && self.kind != TokenKind::Integer
    }

    pub fn describe(&self) -> String {
        match self.kind {
            TokenKind::Integer => format!("integer {}", self.text),
            _ => format!("{:?}", self.text),
        }
    }
}

/// Splits `text` into tokens, dropping whitespace and `#` comments.
pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (start, tline, tcol) = (i, line, col);
        let kind = if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        } else if c == ' ' || c == '\t' || c == '\r' {
            i += 1;
            col += 1;
            continue;
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
                col += 1;
            }
            continue;
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            TokenKind::Ident
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            TokenKind::Integer
        } else if (c == '=' || c == '>') && chars.get(i + 1) == Some(&'=') {
            i += 2;
            TokenKind::Symbol
        } else if "():;,*/+-^".contains(c) {
            i += 1;
            TokenKind::Symbol
        } else {
            let shown = if c.is_ascii_graphic() { format!("{c:?}") } else { format!("U+{:04X}", c as u32) };
            return Err(ParseError::new(format!("unexpected character {shown}"), tline, tcol, Vec::new()));
        };
        let text: String = chars[start..i].iter().collect();
        col += i - start;
        let kind =
            if kind == TokenKind::Ident && KEYWORDS.contains(&text.as_str()) { TokenKind::Keyword } else { kind };
        if kind == TokenKind::Integer {
            let digits = text.trim_start_matches('0');
            let ok = digits.len() <= 7 && text.parse::<i64>().is_ok_and(|v| v <= MAX_LITERAL);
            if !ok {
                return Err(ParseError::new(
                    format!("integer literal {text} exceeds {MAX_LITERAL}"),
                    tline,
                    tcol,
                    Vec::new(),
                ));
            }
        }
        tokens.push(Token { kind, text, line: tline, column: tcol, start, end: i });
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(s: &str) -> Vec<String> {
        tokenize(s).unwrap().into_iter().map(|t| t.text).collect()
    }

    #[test]
    fn splits_symbols_and_words() {
        assert_eq!(texts("sum(j>=0) q^(j^2)"), ["sum", "(", "j", ">=", "0", ")", "q", "^", "(", "j", "^", "2", ")"]);
        assert_eq!(texts("a==b # note\n c"), ["a", "==", "b", "c"]);
    }

    #[test]
    fn positions_are_one_based() {
        let t = tokenize("identity x\n  : 12").unwrap();
        assert_eq!((t[0].line, t[0].column), (1, 1));
        assert_eq!((t[1].line, t[1].column), (1, 10));
        assert_eq!((t[2].line, t[2].column), (2, 3));
        assert_eq!((t[3].line, t[3].column, t[3].kind), (2, 5, TokenKind::Integer));
        assert_eq!(t[0].kind, TokenKind::Keyword);
        assert_eq!(t[1].kind, TokenKind::Ident);
    }

    #[test]
    fn rejects_stray_characters() {
        let e = tokenize("sum = 1").unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        let e = tokenize("ab\n é").unwrap_err();
        assert_eq!((e.line, e.column), (2, 2));
        assert!(e.message.contains("U+00E9"));
    }

    #[test]
    fn rejects_huge_literals() {
        assert!(tokenize("1000000").is_ok());
        let e = tokenize("  99999999999999999999999").unwrap_err();
        assert_eq!(e.column, 3);
        assert!(tokenize("1000001").is_err());
        assert!(tokenize("000000000001").is_ok());
    }
}
