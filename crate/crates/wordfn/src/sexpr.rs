//! A small s-expression reader. Atoms are maximal runs of characters other
//! than whitespace and parentheses; `;` starts a comment running to the end
//! of the line.

use std::fmt;

use crate::error::{parse_err, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

impl Sexp {
    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a) => Some(a),
            Sexp::List(_) => None,
        }
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(a) => f.write_str(a),
            Sexp::List(items) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, PartialEq)]
enum Token<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn tokenize(text: &str) -> Vec<(usize, Token<'_>)> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            '(' => {
                tokens.push((i, Token::Open));
                chars.next();
            }
            ')' => {
                tokens.push((i, Token::Close));
                chars.next();
            }
            ';' => {
                while chars.next_if(|&(_, c)| c != '\n').is_some() {}
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            _ => {
                let mut end = i;
                while let Some((j, c)) = chars.next_if(|&(_, c)| !c.is_whitespace() && c != '(' && c != ')') {
                    end = j + c.len_utf8();
                }
                tokens.push((i, Token::Atom(&text[i..end])));
            }
        }
    }
    tokens
}

/// Reads exactly one expression.
pub fn parse(text: &str) -> Result<Sexp> {
    let tokens = tokenize(text);
    let mut pos = 0;
    let expr = read(&tokens, &mut pos)?;
    if let Some((offset, _)) = tokens.get(pos) {
        return Err(parse_err(format!("trailing input at byte {offset}")));
    }
    Ok(expr)
}

fn read(tokens: &[(usize, Token<'_>)], pos: &mut usize) -> Result<Sexp> {
    let Some((offset, token)) = tokens.get(*pos) else {
        return Err(parse_err("unexpected end of input"));
    };
    *pos += 1;
    match token {
        Token::Atom(a) => Ok(Sexp::Atom(a.to_string())),
        Token::Close => Err(parse_err(format!("unbalanced ')' at byte {offset}"))),
        Token::Open => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos) {
                    None => return Err(parse_err(format!("unclosed '(' at byte {offset}"))),
                    Some((_, Token::Close)) => {
                        *pos += 1;
                        return Ok(Sexp::List(items));
                    }
                    Some(_) => items.push(read(tokens, pos)?),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_lists() {
        let e = parse("(forall x ; comment\n (k 1/2))").unwrap();
        assert_eq!(e.to_string(), "(forall x (k 1/2))");
        assert_eq!(parse("  atom ").unwrap(), Sexp::Atom("atom".into()));
        assert_eq!(parse("()").unwrap(), Sexp::List(vec![]));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse("(a (b)").is_err());
        assert!(parse("a)").is_err());
        assert!(parse("a b").is_err());
        assert!(parse("").is_err());
    }
}
