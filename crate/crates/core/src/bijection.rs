//! Hypersubstitutions whose extension is a bijection on all terms.
//!
//! Such a hypersubstitution sends every symbol `f_i` to `h(f_i)(x_{p(1)}, ..., x_{p(n_i)})`
//! for an arity-preserving bijection `h` of the symbols and a permutation `p` per symbol.
//! Membership is decided syntactically by [`bij_certificate`]; [`oracle_bijectivity_bounded`]
//! cross-checks it by brute force on a finite term universe.

use std::collections::{HashMap, HashSet};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hyp::Hypersubstitution;
use crate::signature::{Signature, SymbolId};
use crate::term::{count_terms, enumerate_terms_capped, Term, DEFAULT_TERM_CAP};

/// A permutation of `{1..n}`, stored 0-based: `self.0[k]` is the image of `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// From 0-based images; `None` unless every value in `0..n` occurs once.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 0-based image of a 0-based point.
    pub fn apply(&self, k: usize) -> usize {
        self.0[k]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (k, &v) in self.0.iter().enumerate() {
            inv[v] = k;
        }
        Permutation(inv)
    }

    /// `(self ∘ other)(k) = self(other(k))`.
    pub fn then_after(&self, other: &Self) -> Self {
        Permutation(other.0.iter().map(|&k| self.0[k]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &v)| k == v)
    }

    /// All permutations of `{1..n}` in lexicographic order of their image lists.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (0..n).permutations(n).map(Permutation)
    }
}

impl fmt::Display for Permutation {
    /// 1-based image list, e.g. `[2,1]` for the transposition.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str("]")
    }
}

/// Witness of bijectivity: `σ(f_i) = h[i](x_{p[i](1)}, ..., x_{p[i](n_i)})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BijCertificate {
    pub h: Vec<SymbolId>,
    pub p: Vec<Permutation>,
}

impl BijCertificate {
    pub fn to_hypersubstitution(&self, sig: &Signature) -> Result<Hypersubstitution> {
        let images = sig
            .ids()
            .map(|id| {
                let args: Vec<Term> = self.p[id.0]
                    .images()
                    .iter()
                    .map(|&k| Term::Var(k as u32 + 1))
                    .collect();
                Term::app(self.h[id.0], args)
            })
            .collect();
        Hypersubstitution::new(sig, images)
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> DisplayCertificate<'a> {
        DisplayCertificate { cert: self, sig }
    }
}

pub struct DisplayCertificate<'a> {
    cert: &'a BijCertificate,
    sig: &'a Signature,
}

impl fmt::Display for DisplayCertificate<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for id in self.sig.ids() {
            writeln!(
                f,
                "h({}) = {}  p({}) = {}",
                self.sig.name(id),
                self.sig.name(self.cert.h[id.0]),
                self.sig.name(id),
                self.cert.p[id.0]
            )?;
        }
        Ok(())
    }
}

/// The certificate of `σ`, present exactly when `σ̂` is a bijection.
pub fn bij_certificate(sigma: &Hypersubstitution) -> Option<BijCertificate> {
    let sig = sigma.signature();
    let mut h = Vec::with_capacity(sig.len());
    let mut p = Vec::with_capacity(sig.len());
    let mut used = vec![false; sig.len()];
    for id in sig.ids() {
        let (head, children) = match sigma.image(id) {
            Term::App(head, children) => (*head, children),
            Term::Var(_) => return None,
        };
        if sig.arity(head) != sig.arity(id) || std::mem::replace(&mut used[head.0], true) {
            return None;
        }
        let positions = children
            .iter()
            .map(|c| match c {
                Term::Var(k) => Some(*k as usize - 1),
                Term::App(..) => None,
            })
            .collect::<Option<Vec<_>>>()?;
        h.push(head);
        p.push(Permutation::from_images(positions)?);
    }
    Some(BijCertificate { h, p })
}

/// The inverse in `Hyp`: `σ'(h(f_i)) = f_i(x_{p(i)⁻¹(1)}, ..., x_{p(i)⁻¹(n_i)})`.
pub fn invert(sigma: &Hypersubstitution) -> Result<Hypersubstitution> {
    let cert = bij_certificate(sigma).ok_or(Error::NotBijective)?;
    let sig = sigma.signature();
    let pairs = sig.ids().map(|id| {
        let inv = cert.p[id.0].inverse();
        let args: Vec<Term> = inv
            .images()
            .iter()
            .map(|&k| Term::Var(k as u32 + 1))
            .collect();
        (cert.h[id.0], Term::app(id, args))
    });
    Hypersubstitution::from_pairs(sig, pairs)
}

/// `|Bij(τ)|`: product of class-size factorials and per-symbol arity factorials (saturating).
pub fn count_bijective(sig: &Signature) -> u128 {
    let fact = |n: usize| (1..=n as u128).fold(1u128, |acc, k| acc.saturating_mul(k));
    let classes = sig.arity_classes().iter().fold(1u128, |acc, (_, members)| {
        acc.saturating_mul(fact(members.len()))
    });
    sig.symbols()
        .iter()
        .fold(classes, |acc, s| acc.saturating_mul(fact(s.arity)))
}

pub const DEFAULT_BIJ_CAP: u128 = 1_000_000;

/// Every bijective hypersubstitution of `sig`.
///
/// Symbol bijections `h` vary slowest (each arity class permuted lexicographically,
/// smaller arities first), then the per-symbol permutations like an odometer with the
/// last symbol fastest.
pub fn enumerate_bijective(sig: &Signature, cap: u128) -> Result<Vec<Hypersubstitution>> {
    let needed = count_bijective(sig);
    if needed > cap {
        return Err(Error::CapExceeded {
            what: "bijective hypersubstitution enumeration",
            needed,
            cap,
        });
    }
    let classes = sig.arity_classes();
    let class_perms: Vec<Vec<Vec<SymbolId>>> = classes
        .iter()
        .map(|(_, members)| {
            members
                .iter()
                .copied()
                .permutations(members.len())
                .collect()
        })
        .collect();
    let symbol_perms: Vec<Vec<Permutation>> = sig
        .symbols()
        .iter()
        .map(|s| Permutation::all(s.arity).collect())
        .collect();

    let mut out = Vec::with_capacity(needed as usize);
    for choice in product(&class_perms) {
        let mut h = vec![SymbolId(0); sig.len()];
        for ((_, members), image) in classes.iter().zip(&choice) {
            for (from, to) in members.iter().zip(image.iter()) {
                h[from.0] = *to;
            }
        }
        for p in product(&symbol_perms) {
            let cert = BijCertificate {
                h: h.clone(),
                p: p.into_iter().cloned().collect(),
            };
            out.push(cert.to_hypersubstitution(sig)?);
        }
    }
    Ok(out)
}

/// Cartesian product with the last factor varying fastest; one empty tuple for no factors.
fn product<T>(factors: &[Vec<T>]) -> Vec<Vec<&T>> {
    let mut acc: Vec<Vec<&T>> = vec![Vec::new()];
    for factor in factors {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                factor.iter().map(move |item| {
                    let mut next = prefix.clone();
                    next.push(item);
                    next
                })
            })
            .collect();
    }
    acc
}

/// Outcome of the brute-force bijectivity check on a finite term universe.
///
/// Violations are proofs of non-bijectivity; consistency is not a proof of bijectivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    ConsistentWithBijective,
    /// Two distinct terms of the universe with the same image.
    InjectivityViolated {
        first: Term,
        second: Term,
        image: Term,
    },
    /// A term of depth at most `max_depth - D` (D = largest image depth) that is the
    /// image of no term in the universe.
    SurjectivityGapWithinBound {
        missing: Term,
    },
}

impl OracleVerdict {
    pub fn is_violation(&self) -> bool {
        !matches!(self, OracleVerdict::ConsistentWithBijective)
    }
}

pub fn oracle_bijectivity_bounded(
    sigma: &Hypersubstitution,
    max_depth: usize,
    max_var: usize,
) -> Result<OracleVerdict> {
    oracle_bijectivity_capped(sigma, max_depth, max_var, DEFAULT_TERM_CAP)
}

/// Applies `σ̂` to every term of `enumerate_terms(max_depth, max_var)`.
///
/// Reports the first collision in universe order, otherwise the first term of depth
/// `<= max_depth - D` without a preimage, otherwise consistency.
pub fn oracle_bijectivity_capped(
    sigma: &Hypersubstitution,
    max_depth: usize,
    max_var: usize,
    cap: u128,
) -> Result<OracleVerdict> {
    let sig = sigma.signature();
    let universe = enumerate_terms_capped(sig, max_depth, max_var, cap)?;
    let mut preimage: HashMap<Term, usize> = HashMap::with_capacity(universe.len());
    for (i, term) in universe.iter().enumerate() {
        let image = sigma.extend(term);
        if let Some(&j) = preimage.get(&image) {
            return Ok(OracleVerdict::InjectivityViolated {
                first: universe[j].clone(),
                second: universe[i].clone(),
                image,
            });
        }
        preimage.insert(image, i);
    }
    let images: HashSet<&Term> = preimage.keys().collect();
    if let Some(depth_bound) = max_depth.checked_sub(sigma.image_depth()) {
        let bound_len = count_terms(sig, depth_bound, max_var) as usize;
        // the universe is ordered by depth, so its prefix is the smaller universe
        if let Some(missing) = universe[..bound_len].iter().find(|t| !images.contains(t)) {
            return Ok(OracleVerdict::SurjectivityGapWithinBound {
                missing: missing.clone(),
            });
        }
    }
    Ok(OracleVerdict::ConsistentWithBijective)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyp::{enumerate_hypersubstitutions, parse_hypersubstitution};
    use crate::signature::parse_signature;
    use crate::term::{enumerate_terms, parse_term};

    fn hyp(sig: &Signature, text: &str) -> Hypersubstitution {
        parse_hypersubstitution(text, sig).unwrap()
    }

    #[test]
    fn permutation_basics() {
        let p = Permutation::from_images(vec![1, 2, 0]).unwrap();
        assert_eq!(p.to_string(), "[2,3,1]");
        assert!(p.then_after(&p.inverse()).is_identity());
        assert!(p.inverse().then_after(&p).is_identity());
        assert!(Permutation::from_images(vec![0, 0]).is_none());
        assert!(Permutation::from_images(vec![2, 0]).is_none());
        let all: Vec<String> = Permutation::all(3).map(|p| p.to_string()).collect();
        assert_eq!(
            all,
            ["[1,2,3]", "[1,3,2]", "[2,1,3]", "[2,3,1]", "[3,1,2]", "[3,2,1]"]
        );
    }

    #[test]
    fn certificate_of_dual() {
        let sig = Signature::semigroup();
        let cert = bij_certificate(&hyp(&sig, "f -> f(x2,x1)")).unwrap();
        assert_eq!(cert.h, vec![SymbolId(0)]);
        assert_eq!(cert.p, vec![Permutation::from_images(vec![1, 0]).unwrap()]);
    }

    #[test]
    fn no_certificate_for_projection_or_repeats() {
        let sig = Signature::semigroup();
        assert!(bij_certificate(&hyp(&sig, "f -> x1")).is_none());
        assert!(bij_certificate(&hyp(&sig, "f -> f(x1,x1)")).is_none());
        assert!(bij_certificate(&hyp(&sig, "f -> f(f(x1,x2),x1)")).is_none());
        let sig22 = parse_signature("f 2\ng 2").unwrap();
        assert!(bij_certificate(&hyp(&sig22, "f -> g(x1,x2)\ng -> g(x2,x1)")).is_none());
        let sig23 = parse_signature("f 2\ng 3").unwrap();
        assert!(bij_certificate(&hyp(&sig23, "f -> f(x1,x2)\ng -> f(x1,x2)")).is_none());
    }

    #[test]
    fn certificate_of_sigma7() {
        let sig = parse_signature("f 2\ng 2").unwrap();
        let cert = bij_certificate(&hyp(&sig, "f -> g(x2,x1)\ng -> f(x1,x2)")).unwrap();
        assert_eq!(cert.h, vec![SymbolId(1), SymbolId(0)]);
        assert_eq!(cert.p[0].to_string(), "[2,1]");
        assert!(cert.p[1].is_identity());
    }

    #[test]
    fn inverse_examples() {
        let sig = Signature::semigroup();
        let e = Hypersubstitution::identity(&sig);
        assert_eq!(invert(&e).unwrap(), e);
        let d = hyp(&sig, "f -> f(x2,x1)");
        assert_eq!(invert(&d).unwrap(), d);
        assert_eq!(invert(&hyp(&sig, "f -> x2")), Err(Error::NotBijective));

        let sig3 = Signature::single(3).unwrap();
        let cycle = hyp(&sig3, "f -> f(x2,x3,x1)");
        let inv = invert(&cycle).unwrap();
        assert_eq!(inv, hyp(&sig3, "f -> f(x3,x1,x2)"));
        let e3 = Hypersubstitution::identity(&sig3);
        assert_eq!(inv.compose(&cycle).unwrap(), e3);
        assert_eq!(cycle.compose(&inv).unwrap(), e3);
    }

    #[test]
    fn enumeration_of_binary_type() {
        let sig = Signature::semigroup();
        let all = enumerate_bijective(&sig, DEFAULT_BIJ_CAP).unwrap();
        assert_eq!(
            all,
            vec![
                Hypersubstitution::identity(&sig),
                hyp(&sig, "f -> f(x2,x1)")
            ]
        );
    }

    #[test]
    fn enumeration_of_two_binary_symbols_follows_table_order() {
        let sig = parse_signature("f 2\ng 2").unwrap();
        let table = [
            "f -> f(x1,x2)\ng -> g(x1,x2)",
            "f -> f(x1,x2)\ng -> g(x2,x1)",
            "f -> f(x2,x1)\ng -> g(x1,x2)",
            "f -> f(x2,x1)\ng -> g(x2,x1)",
            "f -> g(x1,x2)\ng -> f(x1,x2)",
            "f -> g(x1,x2)\ng -> f(x2,x1)",
            "f -> g(x2,x1)\ng -> f(x1,x2)",
            "f -> g(x2,x1)\ng -> f(x2,x1)",
        ];
        let expected: Vec<_> = table.iter().map(|t| hyp(&sig, t)).collect();
        assert_eq!(
            enumerate_bijective(&sig, DEFAULT_BIJ_CAP).unwrap(),
            expected
        );
    }

    #[test]
    fn enumeration_counts() {
        let sig3 = Signature::single(3).unwrap();
        assert_eq!(
            enumerate_bijective(&sig3, DEFAULT_BIJ_CAP).unwrap().len(),
            6
        );
        let mixed = parse_signature("f 2\ng 3\nh 2").unwrap();
        // 2! classes of arity 2, 1! of arity 3, times 2!*3!*2!
        assert_eq!(count_bijective(&mixed), 2 * 2 * 6 * 2);
        assert_eq!(
            enumerate_bijective(&mixed, DEFAULT_BIJ_CAP).unwrap().len(),
            48
        );
        assert!(matches!(
            enumerate_bijective(&Signature::single(12).unwrap(), 1000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn certified_maps_permute_finite_universes() {
        for src in ["f 2", "f 2\ng 2", "f 3"] {
            let sig = parse_signature(src).unwrap();
            let depth = if src == "f 2" { 3 } else { 2 };
            for sigma in enumerate_bijective(&sig, DEFAULT_BIJ_CAP).unwrap() {
                let universe = enumerate_terms(&sig, depth, 3).unwrap();
                let members: HashSet<&Term> = universe.iter().collect();
                let mut images = HashSet::new();
                for t in &universe {
                    let image = sigma.extend(t);
                    assert_eq!(image.depth(), t.depth());
                    assert_eq!(image.length(), t.length());
                    assert_eq!(image.varset(), t.varset());
                    assert!(members.contains(&image));
                    images.insert(image);
                }
                assert_eq!(images.len(), universe.len());
            }
        }
    }

    #[test]
    fn inverse_law_and_closure() {
        for src in ["f 2", "f 3", "f 2\ng 2", "f 1\ng 2\nh 2"] {
            let sig = parse_signature(src).unwrap();
            let e = Hypersubstitution::identity(&sig);
            let all = enumerate_bijective(&sig, DEFAULT_BIJ_CAP).unwrap();
            for a in &all {
                let inv = invert(a).unwrap();
                assert_eq!(inv.compose(a).unwrap(), e);
                assert_eq!(a.compose(&inv).unwrap(), e);
                for b in &all {
                    assert!(bij_certificate(&a.compose(b).unwrap()).is_some());
                }
            }
        }
    }

    #[test]
    fn oracle_accepts_dual() {
        let sig = Signature::semigroup();
        let d = hyp(&sig, "f -> f(x2,x1)");
        assert_eq!(
            oracle_bijectivity_bounded(&d, 3, 3).unwrap(),
            OracleVerdict::ConsistentWithBijective
        );
    }

    #[test]
    fn oracle_finds_collisions() {
        let sig = Signature::semigroup();
        let t = |s: &str| parse_term(s, &sig).unwrap();
        let diag = hyp(&sig, "f -> f(x1,x1)");
        assert_eq!(
            oracle_bijectivity_bounded(&diag, 2, 2).unwrap(),
            OracleVerdict::InjectivityViolated {
                first: t("f(x1,x1)"),
                second: t("f(x1,x2)"),
                image: t("f(x1,x1)"),
            }
        );
        let proj = hyp(&sig, "f -> x1");
        assert_eq!(
            oracle_bijectivity_bounded(&proj, 2, 2).unwrap(),
            OracleVerdict::InjectivityViolated {
                first: t("x1"),
                second: t("f(x1,x1)"),
                image: t("x1"),
            }
        );
    }

    #[test]
    fn oracle_finds_surjectivity_gap() {
        let sig = Signature::semigroup();
        // injective but nothing maps onto f(x1,x1)
        let nested = hyp(&sig, "f -> f(f(x1,x2),x2)");
        assert_eq!(
            oracle_bijectivity_bounded(&nested, 3, 2).unwrap(),
            OracleVerdict::SurjectivityGapWithinBound {
                missing: parse_term("f(x1,x1)", &sig).unwrap()
            }
        );
    }

    #[test]
    fn small_scale_completeness_for_binary_type() {
        let sig = Signature::semigroup();
        for sigma in enumerate_hypersubstitutions(&sig, 2, 1000).unwrap() {
            if bij_certificate(&sigma).is_some() {
                let verdict = oracle_bijectivity_bounded(&sigma, 3, 3).unwrap();
                assert_eq!(verdict, OracleVerdict::ConsistentWithBijective);
                continue;
            }
            let verdict = [(1, 2), (2, 2), (3, 2), (4, 2)]
                .iter()
                .map(|&(d, v)| oracle_bijectivity_bounded(&sigma, d, v).unwrap())
                .find(OracleVerdict::is_violation);
            assert!(verdict.is_some(), "{}", sigma.display());
        }
    }
}
