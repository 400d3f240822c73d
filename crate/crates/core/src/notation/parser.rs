//! Recursive-descent parser for terms and ordinals.
//!
//! ```text
//! expr     := operand (arrow_op operand)*      all arrow_ops equal, right-assoc
//! arrow_op := '^'+ | '^' '[' expr ']'
//! operand  := NUM | '(' expr ')' | 'A' '[' NUM ']' | 'AO' '[' ord ']'
//!           | 'f' '[' ord ']' '(' expr ')' | 'iter' '[' ord ',' NUM ']' '(' expr ')'
//! ord      := ord_prod ('+' ord_prod)*
//! ord_prod := ord_pow ('*' NUM)*
//! ord_pow  := 'w' ('^' ord_pow)? | NUM | '(' ord ')'
//! ```

use num_bigint::BigUint;

use super::lexer::{tokenize, Tok, Token};
use super::ParseError;
use crate::ordinals::Ordinal;
use crate::stack::guarded;
use crate::terms::Term;

/// Nesting limit for parentheses, brackets and chained exponents.
pub const MAX_NESTING: usize = 256;

const OPERAND_START: &[&str] = &["number", "`(`", "`f[`", "`iter[`", "`A[`", "`AO[`"];
const ORD_START: &[&str] = &["number", "`w`", "`(`"];

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.expr()?;
    p.expect_eof(&["an arrow operator", "end of input"])?;
    Ok(t)
}

pub fn parse_ordinal(src: &str) -> Result<Ordinal, ParseError> {
    let mut p = Parser::new(src)?;
    let o = p.ord()?;
    p.expect_eof(&["`+`", "`*`", "end of input"])?;
    Ok(o)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Parser, ParseError> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
            depth: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].offset
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError::new(
            self.offset(),
            expected.iter().map(|s| s.to_string()).collect(),
            self.peek().describe(),
        )
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&tok.describe()]))
        }
    }

    fn expect_eof(&self, expected: &[&str]) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn expect_num(&mut self) -> Result<BigUint, ParseError> {
        match self.peek() {
            Tok::Num(_) => match self.bump() {
                Tok::Num(n) => Ok(n),
                _ => unreachable!(),
            },
            _ => Err(self.error(&["number"])),
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(ParseError::with_message(
                self.offset(),
                format!("nesting deeper than {MAX_NESTING} levels"),
            ));
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    fn expr(&mut self) -> Result<Term, ParseError> {
        guarded(|| self.expr_inner())
    }

    fn expr_inner(&mut self) -> Result<Term, ParseError> {
        self.enter()?;
        let mut operands = vec![self.operand()?];
        let mut ops: Vec<(Term, usize)> = Vec::new();
        while let Some(op) = self.arrow_op()? {
            ops.push(op);
            operands.push(self.operand()?);
        }
        if let Some((first, _)) = ops.first() {
            if let Some((_, at)) = ops.iter().skip(1).find(|(k, _)| k != first) {
                return Err(ParseError::with_message(
                    *at,
                    "mixed arrow counts in one chain; add parentheses".into(),
                ));
            }
        }
        let mut acc = operands.pop().expect("at least one operand");
        while let Some(lhs) = operands.pop() {
            let (arrows, _) = ops.pop().expect("one operator per extra operand");
            acc = Term::arrow(lhs, arrows, acc);
        }
        self.leave();
        Ok(acc)
    }

    fn arrow_op(&mut self) -> Result<Option<(Term, usize)>, ParseError> {
        let at = self.offset();
        let Tok::Carets(run) = *self.peek() else {
            return Ok(None);
        };
        self.bump();
        if run == 1 && *self.peek() == Tok::LBracket {
            self.bump();
            let count = self.expr()?;
            self.expect(Tok::RBracket)?;
            return Ok(Some((count, at)));
        }
        Ok(Some((Term::lit(run as u64), at)))
    }

    fn operand(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Num(_) => Ok(Term::Lit(self.expect_num()?)),
            Tok::LParen => {
                self.bump();
                let t = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(name) => match name.as_str() {
                "f" => {
                    self.bump();
                    let index = self.bracketed_ord()?;
                    let arg = self.parenthesized()?;
                    Ok(Term::fgh(index, arg))
                }
                "iter" => {
                    self.bump();
                    self.expect(Tok::LBracket)?;
                    let index = self.ord()?;
                    self.expect(Tok::Comma)?;
                    let count = self.expect_num()?;
                    self.expect(Tok::RBracket)?;
                    let arg = self.parenthesized()?;
                    Ok(Term::iter(index, count, arg))
                }
                "A" => {
                    self.bump();
                    self.expect(Tok::LBracket)?;
                    let n = self.expect_num()?;
                    self.expect(Tok::RBracket)?;
                    Ok(Term::Aur(n))
                }
                "AO" => {
                    self.bump();
                    Ok(Term::AurOrd(self.bracketed_ord()?))
                }
                _ => Err(self.error(OPERAND_START)),
            },
            _ => Err(self.error(OPERAND_START)),
        }
    }

    fn bracketed_ord(&mut self) -> Result<Ordinal, ParseError> {
        self.expect(Tok::LBracket)?;
        let o = self.ord()?;
        self.expect(Tok::RBracket)?;
        Ok(o)
    }

    fn parenthesized(&mut self) -> Result<Term, ParseError> {
        self.expect(Tok::LParen)?;
        let t = self.expr()?;
        self.expect(Tok::RParen)?;
        Ok(t)
    }

    fn ord(&mut self) -> Result<Ordinal, ParseError> {
        guarded(|| self.ord_inner())
    }

    fn ord_inner(&mut self) -> Result<Ordinal, ParseError> {
        self.enter()?;
        let mut acc = self.ord_prod()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let rhs = self.ord_prod()?;
            acc = &acc + &rhs;
        }
        self.leave();
        Ok(acc)
    }

    fn ord_prod(&mut self) -> Result<Ordinal, ParseError> {
        let mut acc = self.ord_pow()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let n = self.expect_num()?;
            acc = acc.mul_nat(&n);
        }
        Ok(acc)
    }

    fn ord_pow(&mut self) -> Result<Ordinal, ParseError> {
        match self.peek().clone() {
            Tok::Num(_) => Ok(Ordinal::from_nat(self.expect_num()?)),
            Tok::LParen => {
                self.bump();
                let o = self.ord()?;
                self.expect(Tok::RParen)?;
                Ok(o)
            }
            Tok::Ident(name) if name == "w" => {
                self.bump();
                match *self.peek() {
                    Tok::Carets(1) => {
                        self.bump();
                        self.enter()?;
                        let e = self.ord_pow()?;
                        self.leave();
                        Ok(Ordinal::omega_pow(e))
                    }
                    Tok::Carets(_) => Err(self.error(&["`^`"])),
                    _ => Ok(Ordinal::omega()),
                }
            }
            _ => Err(self.error(ORD_START)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::Nat;

    fn a(b: u64, k: u64, h: u64) -> Term {
        Term::arrow(Term::lit(b), Term::lit(k), Term::lit(h))
    }

    #[test]
    fn triple_caret_is_three_arrows() {
        assert_eq!(parse_term("10^^^10").unwrap(), a(10, 3, 10));
    }

    #[test]
    fn bracketed_arrow_count() {
        let t = parse_term("10 ^[A[1]] 10").unwrap();
        assert_eq!(
            t,
            Term::arrow(Term::lit(10u32), Term::aur(1u32), Term::lit(10u32))
        );
    }

    #[test]
    fn right_associative_chain() {
        let t = parse_term("2^2^3").unwrap();
        assert_eq!(t, Term::arrow(Term::lit(2u32), Term::lit(1u32), a(2, 1, 3)));
    }

    #[test]
    fn mixed_counts_need_parentheses() {
        let e = parse_term("2^^2^3").unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(e.to_string().contains("mixed arrow counts"));
        assert!(parse_term("2^^(2^3)").is_ok());
        // a bracketed 3 and a caret run of 3 are the same operator
        assert!(parse_term("2^[3]2^^^2").is_ok());
    }

    #[test]
    fn split_caret_run_is_a_syntax_error() {
        let e = parse_term("10^^ ^10").unwrap_err();
        assert_eq!(e.offset, 5);
        assert!(e.expected.iter().any(|x| x == "number"));
    }

    #[test]
    fn hierarchy_forms() {
        assert_eq!(
            parse_term("f[w+1](3)").unwrap(),
            Term::fgh(&Ordinal::omega() + &Ordinal::one(), Term::lit(3u32))
        );
        assert_eq!(
            parse_term("iter[2,4](1)").unwrap(),
            Term::iter(Ordinal::from(2), 4u32, Term::lit(1u32))
        );
        assert_eq!(
            parse_term("AO[w*2]").unwrap(),
            Term::AurOrd(Ordinal::omega().mul_nat(&Nat::from(2u32)))
        );
        assert_eq!(parse_term("A[0]").unwrap(), Term::aur(0u32));
    }

    #[test]
    fn ordinal_examples() {
        assert_eq!(parse_ordinal("w").unwrap(), Ordinal::omega());
        assert_eq!(
            parse_ordinal("w+w").unwrap(),
            Ordinal::omega().mul_nat(&Nat::from(2u32))
        );
        let o = parse_ordinal("w^(w+1)*3 + 5").unwrap();
        let lead = &o.terms()[0];
        assert_eq!(lead.exponent, &Ordinal::omega() + &Ordinal::one());
        assert_eq!(lead.coeff, Nat::from(3u32));
        assert_eq!(o.to_string(), "w^(w+1)*3+5");
        assert_eq!(parse_ordinal("1+w").unwrap(), Ordinal::omega());
        assert_eq!(parse_ordinal("w^w^2").unwrap().to_string(), "w^(w^2)");
    }

    #[test]
    fn ordinal_rejects_other_bases_and_epsilon() {
        assert!(parse_ordinal("2^w").is_err());
        assert!(parse_ordinal("e0").is_err());
        assert!(parse_ordinal("w^^2").is_err());
    }

    #[test]
    fn nesting_limit() {
        let deep = format!(
            "{}1{}",
            "(".repeat(MAX_NESTING + 5),
            ")".repeat(MAX_NESTING + 5)
        );
        assert!(parse_term(&deep)
            .unwrap_err()
            .to_string()
            .contains("nesting"));
    }

    #[test]
    fn trailing_garbage_is_rejected() {
        let e = parse_term("10^^^10 5").unwrap_err();
        assert_eq!(e.offset, 8);
    }
}
