//! Hypersubstitutions, their extensions to terms, and the monoid `(Hyp, ∘_h, ε)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::signature::{strip_comment, Signature, SymbolId};
use crate::term::{self, enumerate_terms, parse_term, Term};

/// A map sending each `n`-ary symbol to a term over `x1..xn`.
///
/// Images may be bare variables (projections).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypersubstitution {
    sig: Signature,
    images: Vec<Term>,
}

impl Hypersubstitution {
    /// Builds from images listed in symbol order.
    pub fn new(sig: &Signature, images: Vec<Term>) -> Result<Self> {
        if images.len() < sig.len() {
            return Err(Error::MissingImage(
                sig.name(SymbolId(images.len())).to_string(),
            ));
        }
        if images.len() > sig.len() {
            return Err(Error::UnknownSymbol(format!("#{}", sig.len())));
        }
        for (id, image) in sig.ids().zip(&images) {
            image.check(sig)?;
            let arity = sig.arity(id);
            let max = image.max_var();
            if max as usize > arity {
                return Err(Error::VariableOutOfRange {
                    index: max,
                    bound: arity,
                });
            }
        }
        Ok(Hypersubstitution {
            sig: sig.clone(),
            images,
        })
    }

    /// Builds from `(symbol, image)` pairs in any order; every symbol exactly once.
    pub fn from_pairs(
        sig: &Signature,
        pairs: impl IntoIterator<Item = (SymbolId, Term)>,
    ) -> Result<Self> {
        let mut slots: Vec<Option<Term>> = vec![None; sig.len()];
        for (id, image) in pairs {
            let name = sig
                .get(id)
                .ok_or_else(|| Error::UnknownSymbol(format!("#{}", id.0)))?
                .name
                .clone();
            if slots[id.0].replace(image).is_some() {
                return Err(Error::DuplicateImage(name));
            }
        }
        let images = slots
            .into_iter()
            .enumerate()
            .map(|(i, slot)| slot.ok_or_else(|| Error::MissingImage(sig.name(SymbolId(i)).into())))
            .collect::<Result<Vec<_>>>()?;
        Hypersubstitution::new(sig, images)
    }

    /// `ε`: every symbol maps to `f(x1, ..., xn)`.
    pub fn identity(sig: &Signature) -> Self {
        Hypersubstitution {
            sig: sig.clone(),
            images: sig.ids().map(|id| Term::generic(sig, id)).collect(),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn image(&self, symbol: SymbolId) -> &Term {
        &self.images[symbol.0]
    }

    pub fn images(&self) -> &[Term] {
        &self.images
    }

    /// Largest depth among the images.
    pub fn image_depth(&self) -> usize {
        self.images.iter().map(Term::depth).max().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.sig
            .ids()
            .all(|id| self.images[id.0] == Term::generic(&self.sig, id))
    }

    /// The extension `σ̂`: variables are fixed, `f(t1..tn)` becomes `σ(f)` with `xi := σ̂(ti)`.
    pub fn extend(&self, t: &Term) -> Term {
        match t {
            Term::Var(_) => t.clone(),
            Term::App(f, cs) => {
                let args: Vec<Term> = cs.iter().map(|c| self.extend(c)).collect();
                term::superpose_unchecked(&self.images[f.0], &args)
            }
        }
    }

    /// `self ∘_h other`, i.e. `f ↦ self̂(other(f))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch);
        }
        Ok(Hypersubstitution {
            sig: self.sig.clone(),
            images: other.images.iter().map(|img| self.extend(img)).collect(),
        })
    }

    pub fn display(&self) -> DisplayHyp<'_> {
        DisplayHyp(self)
    }
}

/// Syntactic equality of images on every symbol.
pub fn hyp_equal(a: &Hypersubstitution, b: &Hypersubstitution) -> Result<bool> {
    if a.sig != b.sig {
        return Err(Error::SignatureMismatch);
    }
    Ok(a.images == b.images)
}

/// Every hypersubstitution whose images have depth at most `max_image_depth`.
///
/// Symbols vary like an odometer with the last symbol fastest; each symbol's images
/// follow [`enumerate_terms`] order.
pub fn enumerate_hypersubstitutions(
    sig: &Signature,
    max_image_depth: usize,
    cap: u128,
) -> Result<Vec<Hypersubstitution>> {
    let mut pools = Vec::with_capacity(sig.len());
    let mut needed: u128 = 1;
    for id in sig.ids() {
        let arity = sig.arity(id);
        let count = term::count_terms(sig, max_image_depth, arity);
        needed = needed.saturating_mul(count);
        if needed > cap {
            return Err(Error::CapExceeded {
                what: "hypersubstitution enumeration",
                needed,
                cap,
            });
        }
        pools.push(enumerate_terms(sig, max_image_depth, arity)?);
    }
    let mut out = Vec::with_capacity(needed as usize);
    for images in
        itertools::Itertools::multi_cartesian_product(pools.iter().map(|p| p.iter().cloned()))
    {
        out.push(Hypersubstitution {
            sig: sig.clone(),
            images,
        });
    }
    if sig.is_empty() {
        out.push(Hypersubstitution::identity(sig));
    }
    Ok(out)
}

pub struct DisplayHyp<'a>(&'a Hypersubstitution);

impl fmt::Display for DisplayHyp<'_> {
    /// The hypersubstitution file format, one `<symbol> -> <term>` line per symbol.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = self.0;
        for id in h.sig.ids() {
            writeln!(
                f,
                "{} -> {}",
                h.sig.name(id),
                h.images[id.0].display(&h.sig)
            )?;
        }
        Ok(())
    }
}

/// Parses `<symbol> -> <term>` lines (with `#` comments) against `sig`.
pub fn parse_hypersubstitution(text: &str, sig: &Signature) -> Result<Hypersubstitution> {
    let mut pairs = Vec::new();
    let mut seen = vec![false; sig.len()];
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let lineno = lineno + 1;
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| Error::syntax(lineno, "expected `<symbol> -> <term>`"))?;
        let name = lhs.trim();
        let id = sig
            .lookup(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        if std::mem::replace(&mut seen[id.0], true) {
            return Err(Error::DuplicateImage(name.to_string()));
        }
        let image = parse_term(rhs, sig).map_err(|e| match e {
            Error::Syntax { message, .. } => Error::syntax(lineno, message),
            other => other,
        })?;
        pairs.push((id, image));
    }
    Hypersubstitution::from_pairs(sig, pairs)
}
