//! Recursive-descent parser for sums of monomials.
//!
//! ```text
//! poly   := term ('+' term)*
//! term   := factor ('*'? factor)*
//! factor := var ('^' uint)? | uint
//! var    := [A-Za-z][A-Za-z0-9]*
//! ```
//!
//! A bare integer factor is a coefficient and must be 1.

use std::collections::BTreeMap;

use super::{InvertiblePolynomial, PolyError, MAX_EXPONENT};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Var(String),
    Uint(String),
    Plus,
    Star,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => {
                out.push((start, Token::Plus));
                i += 1;
            }
            b'*' => {
                out.push((start, Token::Star));
                i += 1;
            }
            b'^' => {
                out.push((start, Token::Caret));
                i += 1;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Token::Uint(text[start..i].to_string())));
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Token::Var(text[start..i].to_string())));
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(PolyError::Syntax {
                    pos: start,
                    msg: format!("unexpected character {ch:?}"),
                });
            }
        }
    }
    Ok(out)
}

fn parse_exponent(digits: &str) -> Result<u32, PolyError> {
    let value: u64 = digits.parse().unwrap_or(u64::MAX);
    if value > MAX_EXPONENT as u64 {
        return Err(PolyError::ExponentTooLarge(value));
    }
    Ok(value as u32)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn error(&self, msg: &str) -> PolyError {
        PolyError::Syntax {
            pos: self.offset(),
            msg: msg.to_string(),
        }
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn poly(&mut self) -> Result<Vec<Vec<(String, u32)>>, PolyError> {
        let mut terms = vec![self.term()?];
        while let Some(Token::Plus) = self.peek() {
            self.bump();
            terms.push(self.term()?);
        }
        if self.peek().is_some() {
            return Err(self.error("expected '+' or end of input"));
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<Vec<(String, u32)>, PolyError> {
        let mut factors = Vec::new();
        self.factor(&mut factors)?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    self.factor(&mut factors)?;
                }
                Some(Token::Var(_)) | Some(Token::Uint(_)) => self.factor(&mut factors)?,
                _ => break,
            }
        }
        Ok(factors)
    }

    fn factor(&mut self, factors: &mut Vec<(String, u32)>) -> Result<(), PolyError> {
        match self.bump() {
            Some(Token::Var(name)) => {
                let mut exp = 1;
                if let Some(Token::Caret) = self.peek() {
                    self.bump();
                    match self.bump() {
                        Some(Token::Uint(d)) => exp = parse_exponent(&d)?,
                        _ => {
                            self.pos -= 1;
                            return Err(self.error("expected an unsigned integer exponent"));
                        }
                    }
                }
                factors.push((name, exp));
                Ok(())
            }
            Some(Token::Uint(d)) => {
                if d.trim_start_matches('0') != "1" {
                    return Err(PolyError::CoefficientNotOne(d));
                }
                Ok(())
            }
            _ => {
                self.pos -= 1;
                Err(self.error("expected a variable"))
            }
        }
    }
}

/// Column order for the parsed variable names.
///
/// Names `z0..zN` covering a full index range keep their numeric position,
/// so `z4*z2^10` lands in columns 4 and 2 regardless of where it appears.
/// Any other naming is ordered by first appearance.
fn column_order(first_seen: &[String]) -> Vec<String> {
    let indices: Option<Vec<usize>> = first_seen
        .iter()
        .map(|name| {
            let digits = name.strip_prefix('z')?;
            if digits.is_empty() || (digits.len() > 1 && digits.starts_with('0')) {
                return None;
            }
            digits.parse().ok()
        })
        .collect();
    if let Some(mut idx) = indices {
        idx.sort_unstable();
        if idx.iter().enumerate().all(|(i, &k)| i == k) {
            return (0..idx.len()).map(|i| format!("z{i}")).collect();
        }
    }
    first_seen.to_vec()
}

pub(super) fn parse(text: &str) -> Result<InvertiblePolynomial, PolyError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(PolyError::Empty);
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let terms = parser.poly()?;

    let mut first_seen: Vec<String> = Vec::new();
    for (name, _) in terms.iter().flatten() {
        if !first_seen.contains(name) {
            first_seen.push(name.clone());
        }
    }
    let names = column_order(&first_seen);
    let column: BTreeMap<&str, usize> = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();

    let mut matrix = Vec::with_capacity(terms.len());
    for term in &terms {
        let mut row = vec![0u32; names.len()];
        for (name, e) in term {
            let slot = &mut row[column[name.as_str()]];
            let total = *slot as u64 + *e as u64;
            if total > MAX_EXPONENT as u64 {
                return Err(PolyError::ExponentTooLarge(total));
            }
            *slot = total as u32;
        }
        matrix.push(row);
    }
    InvertiblePolynomial::with_names(matrix, names)
}
