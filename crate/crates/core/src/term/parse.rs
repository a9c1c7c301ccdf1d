use super::Term;
use crate::error::{Error, Result};
use crate::signature::Signature;

/// Deepest application nesting accepted by [`parse_term`].
pub const MAX_NESTING: usize = 512;

const ALIASES: [char; 6] = ['x', 'y', 'z', 'u', 'v', 'w'];

/// Resolves a variable token: `x<k>` with `k >= 1`, or one of the aliases `x y z u v w`.
pub(crate) fn variable_index(token: &str) -> Option<u32> {
    let mut chars = token.chars();
    let first = chars.next()?;
    let rest = chars.as_str();
    if rest.is_empty() {
        return ALIASES
            .iter()
            .position(|&a| a == first)
            .map(|p| p as u32 + 1);
    }
    if first != 'x' || !rest.bytes().all(|b| b.is_ascii_digit()) || rest.starts_with('0') {
        return None;
    }
    rest.parse::<u32>().ok().filter(|&k| k >= 1)
}

/// Canonical printed name of a variable.
pub fn variable_name(index: u32) -> String {
    format!("x{index}")
}

/// Parses `term := var | name '(' term {',' term} ')'` against `sig`.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        sig,
    };
    let term = parser.term(0)?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(term)
}

/// Canonical text of a term: numbered variables, no spaces.
pub fn render_term(term: &Term, sig: &Signature) -> String {
    term.display(sig).to_string()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    sig: &'a Signature,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::syntax(1, format!("{message} at column {}", self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", byte as char)))
        }
    }

    fn identifier(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos || self.src[start].is_ascii_digit() {
            self.pos = start;
            return Err(self.error("expected a symbol or variable"));
        }
        // identifier bytes are ASCII
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn term(&mut self, nesting: usize) -> Result<Term> {
        if nesting > MAX_NESTING {
            return Err(self.error("term nested too deeply"));
        }
        let name = self.identifier()?.to_string();
        if self.peek() != Some(b'(') {
            return variable_index(&name)
                .map(Term::Var)
                .ok_or(Error::UnknownVariable(name));
        }
        let symbol = self
            .sig
            .lookup(&name)
            .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
        self.expect(b'(')?;
        let mut children = vec![self.term(nesting + 1)?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            children.push(self.term(nesting + 1)?);
        }
        self.expect(b')')?;
        let expected = self.sig.arity(symbol);
        if children.len() != expected {
            return Err(Error::ArityMismatch {
                symbol: name,
                expected,
                found: children.len(),
            });
        }
        Ok(Term::app(symbol, children))
    }
}
