//! Operation symbols and their arities (the type of an algebra).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a symbol inside its [`Signature`], in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

/// An ordered list of operation symbols, each with arity at least one.
///
/// Cloning is cheap: the symbol table is shared.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    symbols: Arc<[Symbol]>,
}

impl Signature {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut out: Vec<Symbol> = Vec::new();
        for (name, arity) in symbols {
            let name = name.into();
            if arity == 0 {
                return Err(Error::NonPositiveArity(name));
            }
            if !is_identifier(&name) {
                return Err(Error::syntax(0, format!("invalid symbol name `{name}`")));
            }
            if out.iter().any(|s| s.name == name) {
                return Err(Error::DuplicateSymbol(name));
            }
            out.push(Symbol { name, arity });
        }
        Ok(Signature {
            symbols: out.into(),
        })
    }

    /// The type `(2)`: one binary symbol `f`. Semigroup terms live here.
    pub fn semigroup() -> Self {
        Signature::new([("f", 2)]).expect("valid signature")
    }

    /// The type `(n)`: one `n`-ary symbol `f`.
    pub fn single(arity: usize) -> Result<Self> {
        Signature::new([("f", arity)])
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn ids(&self) -> impl Iterator<Item = SymbolId> {
        (0..self.symbols.len()).map(SymbolId)
    }

    pub fn symbol(&self, id: SymbolId) -> &Symbol {
        &self.symbols[id.0]
    }

    pub fn get(&self, id: SymbolId) -> Option<&Symbol> {
        self.symbols.get(id.0)
    }

    pub fn arity(&self, id: SymbolId) -> usize {
        self.symbols[id.0].arity
    }

    pub fn name(&self, id: SymbolId) -> &str {
        &self.symbols[id.0].name
    }

    pub fn lookup(&self, name: &str) -> Option<SymbolId> {
        self.symbols
            .iter()
            .position(|s| s.name == name)
            .map(SymbolId)
    }

    pub fn max_arity(&self) -> usize {
        self.symbols.iter().map(|s| s.arity).max().unwrap_or(0)
    }

    /// True for the type `(2)`, i.e. a single binary symbol.
    pub fn is_semigroup(&self) -> bool {
        self.symbols.len() == 1 && self.symbols[0].arity == 2
    }

    /// Groups symbol ids by arity, ascending arity, declaration order inside a class.
    pub fn arity_classes(&self) -> Vec<(usize, Vec<SymbolId>)> {
        let mut classes: Vec<(usize, Vec<SymbolId>)> = Vec::new();
        for id in self.ids() {
            let arity = self.arity(id);
            match classes.iter_mut().find(|(a, _)| *a == arity) {
                Some((_, members)) => members.push(id),
                None => classes.push((arity, vec![id])),
            }
        }
        classes.sort_by_key(|(a, _)| *a);
        classes
    }
}

impl fmt::Display for Signature {
    /// Renders in the signature file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.symbols.iter() {
            writeln!(f, "{} {}", s.name, s.arity)?;
        }
        Ok(())
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Strips a trailing `#` comment and surrounding whitespace.
pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => line[..pos].trim(),
        None => line.trim(),
    }
}

/// Parses the signature file format: one `<name> <arity>` per line, `#` comments.
pub fn parse_signature(text: &str) -> Result<Signature> {
    let mut entries = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let lineno = lineno + 1;
        let mut parts = line.split_whitespace();
        let (name, arity) = match (parts.next(), parts.next(), parts.next()) {
            (Some(name), Some(arity), None) => (name, arity),
            _ => return Err(Error::syntax(lineno, "expected `<name> <arity>`")),
        };
        if !is_identifier(name) {
            return Err(Error::syntax(
                lineno,
                format!("invalid symbol name `{name}`"),
            ));
        }
        let arity: i64 = arity
            .parse()
            .map_err(|_| Error::syntax(lineno, format!("invalid arity `{arity}`")))?;
        if arity <= 0 {
            return Err(Error::NonPositiveArity(name.to_string()));
        }
        let arity = usize::try_from(arity).map_err(|_| Error::syntax(lineno, "arity too large"))?;
        entries.push((name.to_string(), arity));
    }
    Signature::new(entries)
}
