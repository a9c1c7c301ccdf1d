//! Terms over a signature, their metrics, and superposition.

mod enumerate;
mod parse;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::signature::{Signature, SymbolId};

pub use enumerate::{count_terms, enumerate_terms, enumerate_terms_capped, DEFAULT_TERM_CAP};
pub use parse::{parse_term, render_term, variable_name, MAX_NESTING};

/// A term: a variable `x_i` (`i >= 1`) or an application of a symbol.
///
/// Children are shared, so cloning a term is cheap. Equality is syntactic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(u32),
    App(SymbolId, Arc<[Term]>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermMetrics {
    pub depth: usize,
    /// Number of variable occurrences.
    pub length: usize,
    pub varset: BTreeSet<u32>,
    pub varcount: usize,
}

impl Term {
    pub fn var(index: u32) -> Term {
        assert!(index >= 1, "variables are numbered from 1");
        Term::Var(index)
    }

    pub fn app(symbol: SymbolId, children: impl Into<Arc<[Term]>>) -> Term {
        Term::App(symbol, children.into())
    }

    /// `f(x1, ..., xn)` for the symbol `f`.
    pub fn generic(sig: &Signature, symbol: SymbolId) -> Term {
        let n = sig.arity(symbol) as u32;
        Term::app(symbol, (1..=n).map(Term::Var).collect::<Vec<_>>())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn head(&self) -> Option<SymbolId> {
        match self {
            Term::Var(_) => None,
            Term::App(f, _) => Some(*f),
        }
    }

    pub fn children(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(_, cs) => cs,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, cs) => 1 + cs.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn length(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, cs) => cs.iter().map(Term::length).sum(),
        }
    }

    pub fn varset(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<u32>) {
        match self {
            Term::Var(i) => {
                out.insert(*i);
            }
            Term::App(_, cs) => cs.iter().for_each(|c| c.collect_vars(out)),
        }
    }

    pub fn max_var(&self) -> u32 {
        match self {
            Term::Var(i) => *i,
            Term::App(_, cs) => cs.iter().map(Term::max_var).max().unwrap_or(0),
        }
    }

    /// Number of operation symbol occurrences.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, cs) => 1 + cs.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn metrics(&self) -> TermMetrics {
        let varset = self.varset();
        TermMetrics {
            depth: self.depth(),
            length: self.length(),
            varcount: varset.len(),
            varset,
        }
    }

    /// Variables from left to right, with repetitions.
    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.length());
        self.push_leaves(&mut out);
        out
    }

    fn push_leaves(&self, out: &mut Vec<u32>) {
        match self {
            Term::Var(i) => out.push(*i),
            Term::App(_, cs) => cs.iter().for_each(|c| c.push_leaves(out)),
        }
    }

    /// Checks that every symbol exists in `sig` and is applied to the right number of arguments.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        match self {
            Term::Var(0) => Err(Error::UnknownVariable("x0".into())),
            Term::Var(_) => Ok(()),
            Term::App(f, cs) => {
                let symbol = sig
                    .get(*f)
                    .ok_or_else(|| Error::UnknownSymbol(format!("#{}", f.0)))?;
                if symbol.arity != cs.len() {
                    return Err(Error::ArityMismatch {
                        symbol: symbol.name.clone(),
                        expected: symbol.arity,
                        found: cs.len(),
                    });
                }
                cs.iter().try_for_each(|c| c.check(sig))
            }
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> DisplayTerm<'a> {
        DisplayTerm { term: self, sig }
    }
}

/// Simultaneous substitution `x_i -> args[i-1]` into `s`.
///
/// Every variable of `s` must be at most `args.len()`.
pub fn superpose(s: &Term, args: &[Term]) -> Result<Term> {
    let max = s.max_var() as usize;
    if max > args.len() {
        return Err(Error::VariableOutOfRange {
            index: max as u32,
            bound: args.len(),
        });
    }
    Ok(superpose_unchecked(s, args))
}

pub(crate) fn superpose_unchecked(s: &Term, args: &[Term]) -> Term {
    match s {
        Term::Var(i) => args[*i as usize - 1].clone(),
        Term::App(f, cs) => Term::App(
            *f,
            cs.iter().map(|c| superpose_unchecked(c, args)).collect(),
        ),
    }
}

pub struct DisplayTerm<'a> {
    term: &'a Term,
    sig: &'a Signature,
}

impl fmt::Display for DisplayTerm<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.term {
            Term::Var(i) => write!(f, "x{i}"),
            Term::App(sym, cs) => {
                write!(f, "{}(", self.sig.name(*sym))?;
                for (k, c) in cs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", c.display(self.sig))?;
                }
                f.write_str(")")
            }
        }
    }
}
