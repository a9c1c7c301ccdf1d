use std::borrow::Borrow;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signature::{strip_comment, Signature, SymbolId};
use crate::term::Term;

/// Longest word [`bracketings`] expands by default.
pub const MAX_BRACKETING_LEN: usize = 6;

/// A semigroup word: a non-empty sequence of variable indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        if letters.contains(&0) {
            return Err(Error::UnknownVariable("x0".into()));
        }
        Ok(Word(letters))
    }

    pub(crate) fn from_letters_unchecked(letters: Vec<u32>) -> Self {
        debug_assert!(!letters.is_empty() && !letters.contains(&0));
        Word(letters)
    }

    /// `x_from x_{from+1} ... x_{from+len-1}`.
    pub fn run(from: u32, len: usize) -> Self {
        assert!(from >= 1 && len >= 1);
        Word((from..from + len as u32).collect())
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn varset(&self) -> BTreeSet<u32> {
        self.0.iter().copied().collect()
    }

    pub fn varcount(&self) -> usize {
        self.varset().len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

impl TryFrom<Vec<u32>> for Word {
    type Error = Error;

    fn try_from(letters: Vec<u32>) -> Result<Self> {
        Word::new(letters)
    }
}

impl From<Word> for Vec<u32> {
    fn from(w: Word) -> Self {
        w.0
    }
}

impl Borrow<[u32]> for Word {
    fn borrow(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.0 {
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

/// A word identity `lhs ≈ rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Identity {
    pub lhs: Word,
    pub rhs: Word,
}

impl Identity {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Identity { lhs, rhs }
    }

    pub fn swapped(&self) -> Identity {
        Identity::new(self.rhs.clone(), self.lhs.clone())
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        let mut vars = self.lhs.varset();
        vars.extend(self.rhs.letters());
        vars
    }

    /// Orientation-independent key, the smaller side first.
    pub fn normalized(&self) -> Identity {
        if self.lhs <= self.rhs {
            self.clone()
        } else {
            self.swapped()
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// A finite set of word identities; associativity is implicit in the words.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    axioms: Vec<Identity>,
}

impl Presentation {
    /// Keeps the first occurrence of each axiom up to swapping sides.
    pub fn new(axioms: impl IntoIterator<Item = Identity>) -> Self {
        let mut seen = BTreeSet::new();
        let axioms = axioms
            .into_iter()
            .filter(|a| seen.insert(a.normalized()))
            .collect();
        Presentation { axioms }
    }

    pub fn axioms(&self) -> &[Identity] {
        &self.axioms
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }
}

impl fmt::Display for Presentation {
    /// The presentation file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.axioms {
            writeln!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Parses a word: juxtaposed aliases (`xyz`), `x<k>` tokens (`x1 x2`, `x1x2`), or a mix.
///
/// A token may carry a power, `x^2` or `x3^2`.
pub fn parse_word(text: &str) -> Result<Word> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut letters = Vec::new();
    let bad = |pos: usize, msg: &str| Error::syntax(1, format!("{msg} at column {}", pos + 1));
    while pos < bytes.len() {
        let c = bytes[pos];
        if c.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let var = match c {
            b'x' if bytes.get(pos + 1).is_some_and(u8::is_ascii_digit) => {
                let start = pos + 1;
                pos = start;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits = &text[start..pos];
                match digits.parse::<u32>() {
                    Ok(k) if k >= 1 && !digits.starts_with('0') => k,
                    _ => return Err(Error::UnknownVariable(format!("x{digits}"))),
                }
            }
            b'x' | b'y' | b'z' | b'u' | b'v' | b'w' => {
                pos += 1;
                match c {
                    b'x' => 1,
                    b'y' => 2,
                    b'z' => 3,
                    b'u' => 4,
                    b'v' => 5,
                    _ => 6,
                }
            }
            _ => {
                let token: String = text[pos..].chars().take(1).collect();
                return Err(Error::UnknownVariable(token));
            }
        };
        let mut power = 1usize;
        if bytes.get(pos) == Some(&b'^') {
            pos += 1;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            power = text[start..pos]
                .parse()
                .ok()
                .filter(|&p| (1..=64).contains(&p))
                .ok_or_else(|| bad(start, "expected a power between 1 and 64"))?;
        }
        letters.extend(std::iter::repeat_n(var, power));
        if letters.len() > 4096 {
            return Err(bad(pos, "word too long"));
        }
    }
    Word::new(letters)
}

/// Parses `<word> = <word>` (`≈` is accepted for `=`).
pub fn parse_identity(text: &str) -> Result<Identity> {
    let (lhs, rhs) = text
        .split_once('=')
        .or_else(|| text.split_once('≈'))
        .ok_or_else(|| Error::syntax(1, "expected `<word> = <word>`"))?;
    Ok(Identity::new(parse_word(lhs)?, parse_word(rhs)?))
}

/// Parses the presentation file format: one identity per line, `#` comments.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut axioms = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let identity = parse_identity(line).map_err(|e| match e {
            Error::Syntax { message, .. } => Error::syntax(lineno + 1, message),
            other => other,
        })?;
        axioms.push(identity);
    }
    Ok(Presentation::new(axioms))
}

/// The leaves of a type-(2) term, left to right.
pub fn term_to_word(t: &Term, sig: &Signature) -> Result<Word> {
    if !sig.is_semigroup() {
        return Err(Error::NotSemigroupSignature);
    }
    t.check(sig)?;
    Word::new(t.leaves())
}

/// Every binary bracketing of `w`, left-heavy splits first.
pub fn bracketings(w: &Word, max_len: usize) -> Result<Vec<Term>> {
    if w.len() > max_len {
        return Err(Error::CapExceeded {
            what: "bracketing expansion",
            needed: w.len() as u128,
            cap: max_len as u128,
        });
    }
    Ok(bracket(w.letters()))
}

fn bracket(letters: &[u32]) -> Vec<Term> {
    if letters.len() == 1 {
        return vec![Term::Var(letters[0])];
    }
    let mut out = Vec::new();
    for split in (1..letters.len()).rev() {
        let left = bracket(&letters[..split]);
        let right = bracket(&letters[split..]);
        for l in &left {
            for r in &right {
                out.push(Term::app(SymbolId(0), vec![l.clone(), r.clone()]));
            }
        }
    }
    out
}

/// The left comb `(((x1 x2) x3) ...)`.
pub fn left_comb(w: &Word) -> Term {
    let mut letters = w.letters().iter().map(|&v| Term::Var(v));
    let first = letters.next().expect("non-empty word");
    letters.fold(first, |acc, v| Term::app(SymbolId(0), vec![acc, v]))
}

/// The right comb `(x1 (x2 (x3 ...)))`.
pub fn right_comb(w: &Word) -> Term {
    let mut letters = w.letters().iter().rev().map(|&v| Term::Var(v));
    let last = letters.next().expect("non-empty word");
    letters.fold(last, |acc, v| Term::app(SymbolId(0), vec![v, acc]))
}
