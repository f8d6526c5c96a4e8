//! Parser for class expressions in the divisors `H1, H2, E1, E2`.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := [rational] ('*'? factor)*        (at least one piece)
//! factor   := symbol ('^' uint)? | '(' expr ')'
//! rational := uint ['/' uint]
//! ```
//!
//! Implicit multiplication of adjacent symbols is rejected: `H1H2` lexes as a
//! single unknown identifier, so factors must be separated by `*` or
//! whitespace. Parenthesized sums are distributed, so the result is always a
//! flat sum of monomial terms with rational coefficients.

use crate::linalg::{rat_int, Rat};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// The four divisor symbols, in coefficient order.
pub const SYMBOLS: [&str; 4] = ["H1", "H2", "E1", "E2"];

/// A single monomial term `coeff * H1^a * H2^b * E1^c * E2^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprTerm {
    pub coeff: Rat,
    /// Exponents in the order `[H1, H2, E1, E2]`.
    pub exponents: [u32; 4],
}

impl ExprTerm {
    /// Total degree of the monomial (ignoring the coefficient).
    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

/// A parsed expression: a sum of monomial terms. Like terms are combined,
/// but terms whose coefficients cancel to zero are kept (with coefficient
/// zero) so that the degree of the written expression is not lost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassExpr {
    pub terms: Vec<ExprTerm>,
}

/// Parse failure with a 1-based column position.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

fn err<T>(column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        column,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(s) => write!(f, "`{s}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let col = i + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((Tok::Plus, col));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, col));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, col));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, col));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, col));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, col));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((Tok::Int(input[start..i].to_string()), col));
            }
            c if c.is_ascii_alphabetic() => {
                // Maximal munch: `H1H2` becomes one identifier, which is then
                // rejected as an unknown symbol rather than silently read as
                // a product.
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphanumeric() {
                    i += 1;
                }
                toks.push((Tok::Ident(input[start..i].to_string()), col));
            }
            other => return err(col, format!("unexpected character `{other}`")),
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|&(_, c)| c)
            .unwrap_or(self.end_column)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_uint(&mut self, what: &str) -> Result<u32, ParseError> {
        let col = self.column();
        match self.bump() {
            Some(Tok::Int(s)) => s.parse::<u32>().map_err(|_| ParseError {
                column: col,
                message: format!("{what} `{s}` is too large"),
            }),
            Some(t) => err(col, format!("expected {what}, found {t}")),
            None => err(col, format!("expected {what}, found end of input")),
        }
    }

    // expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Vec<ExprTerm>, ParseError> {
        let mut negative = match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            _ => false,
        };
        let mut terms = Vec::new();
        loop {
            let term = self.term(negative)?;
            terms.extend(term);
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    negative = false;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    negative = true;
                }
                _ => return Ok(terms),
            }
        }
    }

    // term := [rational] ('*'? factor)*
    fn term(&mut self, negative: bool) -> Result<Vec<ExprTerm>, ParseError> {
        let has_coeff = matches!(self.peek(), Some(Tok::Int(_)));
        let mut coeff = if has_coeff {
            self.rational()?
        } else {
            rat_int(1)
        };
        if negative {
            coeff = -coeff;
        }
        let mut product = vec![ExprTerm {
            coeff,
            exponents: [0; 4],
        }];
        let mut saw_factor = false;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let f = self.factor()?;
                    product = mul_sums(&product, &f, self.column())?;
                    saw_factor = true;
                }
                Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    product = mul_sums(&product, &f, self.column())?;
                    saw_factor = true;
                }
                _ => break,
            }
        }
        if !saw_factor && !has_coeff {
            return match self.peek() {
                Some(t) => err(self.column(), format!("expected a term, found {t}")),
                None => err(self.column(), "expected a term, found end of input"),
            };
        }
        Ok(product)
    }

    // rational := uint ['/' uint]
    fn rational(&mut self) -> Result<Rat, ParseError> {
        let col = self.column();
        let numer = match self.bump() {
            Some(Tok::Int(s)) => s,
            _ => return err(col, "expected a number"),
        };
        let numer: BigInt = numer.parse().expect("lexed integer");
        if matches!(self.peek(), Some(Tok::Slash)) {
            self.bump();
            let dcol = self.column();
            let denom = match self.bump() {
                Some(Tok::Int(s)) => s.parse::<BigInt>().expect("lexed integer"),
                Some(t) => return err(dcol, format!("expected a denominator, found {t}")),
                None => return err(dcol, "expected a denominator, found end of input"),
            };
            if denom.is_zero() {
                return err(dcol, "zero denominator");
            }
            Ok(Rat::new(numer, denom))
        } else {
            Ok(Rat::from_integer(numer))
        }
    }

    // factor := symbol ('^' uint)? | '(' expr ')'
    fn factor(&mut self) -> Result<Vec<ExprTerm>, ParseError> {
        let col = self.column();
        match self.bump() {
            Some(Tok::Ident(name)) => {
                let Some(index) = SYMBOLS.iter().position(|&s| s == name) else {
                    return err(col, format!("unknown symbol `{name}`"));
                };
                let exponent = if matches!(self.peek(), Some(Tok::Caret)) {
                    self.bump();
                    self.expect_uint("an exponent")?
                } else {
                    1
                };
                let mut exponents = [0u32; 4];
                exponents[index] = exponent;
                Ok(vec![ExprTerm {
                    coeff: rat_int(1),
                    exponents,
                }])
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let col = self.column();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    Some(t) => err(col, format!("expected `)`, found {t}")),
                    None => err(col, "unbalanced parenthesis: expected `)`"),
                }
            }
            Some(t) => err(col, format!("expected a symbol or `(`, found {t}")),
            None => err(col, "expected a symbol or `(`, found end of input"),
        }
    }
}

fn mul_sums(a: &[ExprTerm], b: &[ExprTerm], column: usize) -> Result<Vec<ExprTerm>, ParseError> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            let mut exponents = [0u32; 4];
            for (k, e) in exponents.iter_mut().enumerate() {
                *e = x.exponents[k]
                    .checked_add(y.exponents[k])
                    .ok_or_else(|| ParseError {
                        column,
                        message: "exponent overflow".to_string(),
                    })?;
            }
            out.push(ExprTerm {
                coeff: &x.coeff * &y.coeff,
                exponents,
            });
        }
    }
    Ok(out)
}

/// Combine like terms, keeping zero-coefficient entries as degree witnesses.
fn collect(terms: Vec<ExprTerm>) -> Vec<ExprTerm> {
    let mut map: BTreeMap<[u32; 4], Rat> = BTreeMap::new();
    for t in terms {
        *map.entry(t.exponents).or_insert_with(Rat::zero) += t.coeff;
    }
    map.into_iter()
        .map(|(exponents, coeff)| ExprTerm { coeff, exponents })
        .collect()
}

/// Parse a class expression into a flat sum of monomial terms.
pub fn parse_class_expression(input: &str) -> Result<ClassExpr, ParseError> {
    let toks = lex(input)?;
    if toks.is_empty() {
        return err(1, "empty expression");
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end_column: input.len() + 1,
    };
    let terms = p.expr()?;
    if p.pos < p.toks.len() {
        let (t, c) = &p.toks[p.pos];
        return err(*c, format!("unexpected {t}"));
    }
    Ok(ClassExpr {
        terms: collect(terms),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn term(coeff: i64, exponents: [u32; 4]) -> ExprTerm {
        ExprTerm {
            coeff: rat_int(coeff),
            exponents,
        }
    }

    #[test]
    fn tau_distributes_over_the_product() {
        let e = parse_class_expression("(H1+H2)*E1*E2").unwrap();
        assert_eq!(e.terms, vec![term(1, [0, 1, 1, 1]), term(1, [1, 0, 1, 1])]);
    }

    #[test]
    fn coefficients_and_exponents() {
        let e = parse_class_expression("2*H1^3 - 1/2 H1 H2^2").unwrap();
        assert_eq!(
            e.terms,
            vec![
                ExprTerm {
                    coeff: rat(-1, 2),
                    exponents: [1, 2, 0, 0]
                },
                term(2, [3, 0, 0, 0]),
            ]
        );
    }

    #[test]
    fn leading_minus_and_like_term_cancellation() {
        let e = parse_class_expression("-H1^3").unwrap();
        assert_eq!(e.terms, vec![term(-1, [3, 0, 0, 0])]);
        // Cancelled terms stay as degree witnesses with coefficient zero.
        let z = parse_class_expression("H1*E1 - H1*E1").unwrap();
        assert_eq!(z.terms, vec![term(0, [1, 0, 1, 0])]);
    }

    #[test]
    fn implicit_multiplication_of_symbols_is_rejected() {
        let e = parse_class_expression("H1H2").unwrap_err();
        assert_eq!(e.column, 1);
        assert!(e.message.contains("unknown symbol `H1H2`"), "{e}");
    }

    #[test]
    fn unknown_symbol_reports_position() {
        let e = parse_class_expression("H1 + H3").unwrap_err();
        assert_eq!(e.column, 6);
        assert!(e.message.contains("unknown symbol `H3`"), "{e}");
    }

    #[test]
    fn malformed_exponent_reports_position() {
        let e = parse_class_expression("H1^").unwrap_err();
        assert_eq!(e.column, 4);
        let e = parse_class_expression("H1^x").unwrap_err();
        assert_eq!(e.column, 4);
        let e = parse_class_expression("H1^99999999999").unwrap_err();
        assert_eq!(e.column, 4);
        assert!(e.message.contains("too large"), "{e}");
    }

    #[test]
    fn unbalanced_parentheses_report_position() {
        let e = parse_class_expression("(H1+H2").unwrap_err();
        assert_eq!(e.column, 7);
        assert!(e.message.contains("unbalanced"), "{e}");
        let e = parse_class_expression("H1)").unwrap_err();
        assert_eq!(e.column, 3);
    }

    #[test]
    fn numbers_may_only_lead_a_term() {
        let e = parse_class_expression("H1*2").unwrap_err();
        assert_eq!(e.column, 4);
        assert!(e.message.contains("expected a symbol"), "{e}");
    }

    #[test]
    fn zero_denominator_is_rejected() {
        let e = parse_class_expression("1/0 H1").unwrap_err();
        assert_eq!(e.column, 3);
        assert!(e.message.contains("zero denominator"), "{e}");
    }

    #[test]
    fn bare_rational_parses_as_degree_zero() {
        let e = parse_class_expression("3/4").unwrap();
        assert_eq!(
            e.terms,
            vec![ExprTerm {
                coeff: rat(3, 4),
                exponents: [0; 4]
            }]
        );
    }

    #[test]
    fn empty_and_garbage_inputs() {
        assert!(parse_class_expression("").is_err());
        assert!(parse_class_expression("  ").is_err());
        let e = parse_class_expression("H1 + + H2").unwrap_err();
        assert_eq!(e.column, 6);
        let e = parse_class_expression("H1 $ H2").unwrap_err();
        assert_eq!(e.column, 4);
    }
}
