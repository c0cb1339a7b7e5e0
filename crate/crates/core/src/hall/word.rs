//! Words over `t`, `a_i`, `c_i` and their textual syntax.
//!
//! ```text
//! word := term+ | "1"
//! term := gen ('^' int)?
//! gen  := 't' | 'a' ('_' int)? | 'c' '_' int
//! ```
//!
//! Terms are separated by whitespace (a `·` or `*` also works); a bare `a`
//! is `a_0`, and indices may be wrapped in braces (`a_{-3}`).

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    T,
    A(i64),
    C(i64),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::T => write!(f, "t"),
            Generator::A(i) => write!(f, "a_{i}"),
            Generator::C(i) => write!(f, "c_{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    pub tokens: Vec<(Generator, i64)>,
}

impl Word {
    pub fn new(tokens: Vec<(Generator, i64)>) -> Result<Self> {
        if tokens.iter().any(|(_, e)| *e == 0) {
            return Err(Error::pre("word exponents must be non-zero"));
        }
        Ok(Word { tokens })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Reversed word with negated exponents.
    pub fn inverse(&self) -> Word {
        Word { tokens: self.tokens.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    /// Total absolute exponent, i.e. the length over `{t, a_0}` when the
    /// word only uses those letters.
    pub fn letter_count(&self) -> u64 {
        self.tokens.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tokens.is_empty() {
            return write!(f, "1");
        }
        for (k, (g, e)) in self.tokens.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl Lexer<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax { position: self.pos, message: message.into() }
    }

    fn skip_separators(&mut self) -> bool {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_whitespace() || c == '·' || c == '*') {
            self.bump();
        }
        self.pos > start
    }

    fn int(&mut self) -> Result<i64> {
        let braced = self.peek() == Some('{');
        if braced {
            self.bump();
        }
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.bump();
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        let text = &self.src[start..self.pos];
        let v = text.parse::<i64>().map_err(|_| Error::Syntax {
            position: start,
            message: format!("expected an integer, found {text:?}"),
        })?;
        if braced {
            if self.peek() != Some('}') {
                return Err(self.err("expected '}'"));
            }
            self.bump();
        }
        Ok(v)
    }

    fn term(&mut self) -> Result<(Generator, i64)> {
        let start = self.pos;
        let gen = match self.bump() {
            Some('t') => Generator::T,
            Some('a') => {
                if self.peek() == Some('_') {
                    self.bump();
                    Generator::A(self.int()?)
                } else {
                    Generator::A(0)
                }
            }
            Some('c') => {
                if self.peek() != Some('_') {
                    return Err(self.err("c needs an index, as in c_1"));
                }
                self.bump();
                Generator::C(self.int()?)
            }
            Some(c) => {
                return Err(Error::Syntax { position: start, message: format!("unexpected {c:?}") })
            }
            None => return Err(self.err("unexpected end of input")),
        };
        let mut exp = 1;
        if self.peek() == Some('^') {
            self.bump();
            let at = self.pos;
            exp = self.int()?;
            if exp == 0 {
                return Err(Error::Syntax { position: at, message: "zero exponent".into() });
            }
        }
        Ok((gen, exp))
    }
}

pub fn parse_word(text: &str) -> Result<Word> {
    let mut lx = Lexer { src: text, pos: 0 };
    lx.skip_separators();
    if lx.src[lx.pos..].trim_end() == "1" {
        return Ok(Word::default());
    }
    if lx.peek().is_none() {
        return Err(lx.err("empty word (write 1 for the identity)"));
    }
    let mut tokens = Vec::new();
    loop {
        tokens.push(lx.term()?);
        let had_sep = lx.skip_separators();
        if lx.peek().is_none() {
            break;
        }
        if !had_sep {
            return Err(lx.err("terms must be separated by whitespace"));
        }
    }
    Ok(Word { tokens })
}

impl std::str::FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    #[test]
    fn parses_examples() {
        assert_eq!(parse_word("t a t^-1").unwrap().tokens, vec![(T, 1), (A(0), 1), (T, -1)]);
        assert_eq!(parse_word("a_3^-2 c_1^5").unwrap().tokens, vec![(A(3), -2), (C(1), 5)]);
        assert_eq!(parse_word("a_{-3}·c_2").unwrap().tokens, vec![(A(-3), 1), (C(2), 1)]);
        assert!(parse_word("1").unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_input() {
        for (text, pos) in [("t^0", 2), ("x", 0), ("c", 1), ("a_", 2), ("ta", 1), ("", 0), ("a^", 2)] {
            match parse_word(text) {
                Err(Error::Syntax { position, .. }) => assert_eq!(position, pos, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn display_round_trips() {
        for text in ["t a_0 t^-1", "a_3^-2 c_1^5", "1", "c_-4^7 t^3"] {
            let w = parse_word(text).unwrap();
            assert_eq!(parse_word(&w.to_string()).unwrap(), w);
        }
    }

    #[test]
    fn inverse_reverses() {
        let w = parse_word("t a_2^3").unwrap();
        assert_eq!(w.inverse().to_string(), "a_2^-3 t^-1");
        assert_eq!(w.letter_count(), 4);
    }
}
