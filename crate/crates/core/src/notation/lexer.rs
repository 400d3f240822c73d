use num_bigint::BigUint;

use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Num(BigUint),
    /// A maximal run of `^` / `↑` characters.
    Carets(usize),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Plus,
    Star,
    Comma,
    Ident(String),
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Carets(k) => format!("`{}`", "^".repeat(*k)),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Star => "`*`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub offset: usize,
}

fn is_caret(c: char) -> bool {
    c == '^' || c == '↑'
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(offset, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut end = offset;
            while let Some(&(i, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = i + 1;
                chars.next();
            }
            let n = BigUint::parse_bytes(&src.as_bytes()[offset..end], 10)
                .expect("a nonempty run of ASCII digits");
            Tok::Num(n)
        } else if is_caret(c) {
            let mut run = 0;
            while chars.peek().is_some_and(|&(_, d)| is_caret(d)) {
                run += 1;
                chars.next();
            }
            Tok::Carets(run)
        } else if c.is_ascii_alphabetic() {
            let mut end = offset;
            while let Some(&(i, d)) = chars.peek() {
                if !d.is_ascii_alphabetic() {
                    break;
                }
                end = i + 1;
                chars.next();
            }
            Tok::Ident(src[offset..end].to_string())
        } else {
            chars.next();
            match c {
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '+' => Tok::Plus,
                '*' => Tok::Star,
                ',' => Tok::Comma,
                other => {
                    return Err(ParseError::new(
                        offset,
                        vec!["a token".into()],
                        format!("character {other:?}"),
                    ))
                }
            }
        };
        out.push(Token { tok, offset });
    }
    out.push(Token {
        tok: Tok::Eof,
        offset: src.len(),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn caret_runs_break_on_whitespace() {
        assert_eq!(
            kinds("10^^ ^10"),
            vec![
                Tok::Num(10u32.into()),
                Tok::Carets(2),
                Tok::Carets(1),
                Tok::Num(10u32.into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn unicode_arrow_is_a_caret() {
        assert_eq!(kinds("3↑↑3")[1], Tok::Carets(2));
        assert_eq!(kinds("3↑^3")[1], Tok::Carets(2));
    }

    #[test]
    fn offsets_are_bytes() {
        let toks = tokenize("↑ 7").unwrap();
        assert_eq!(toks[1].offset, 4);
    }

    #[test]
    fn stray_character_is_reported() {
        let e = tokenize("2 # 3").unwrap_err();
        assert_eq!(e.offset, 2);
    }
}
