//! Term maps attached to hypersubstitutions: the extension, `fa`/`sa`, and `γ_n`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hyp::Hypersubstitution;
use crate::signature::{Signature, SymbolId};
use crate::term::{superpose_unchecked, Term};

/// Which term map to derive from a hypersubstitution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RhoKind {
    /// `σ̂`.
    Extension,
    /// Applies `σ` at the root and every second level below it.
    Fa,
    /// Keeps the root and applies `σ` from the first level down, alternating.
    Sa,
    /// Keeps the top `n` levels and applies `σ̂` below them.
    Gamma(usize),
}

impl fmt::Display for RhoKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RhoKind::Extension => f.write_str("ext"),
            RhoKind::Fa => f.write_str("fa"),
            RhoKind::Sa => f.write_str("sa"),
            RhoKind::Gamma(n) => write!(f, "gamma:{n}"),
        }
    }
}

impl FromStr for RhoKind {
    type Err = Error;

    /// Accepts `ext`, `fa`, `sa`, and `gamma:<n>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ext" => Ok(RhoKind::Extension),
            "fa" => Ok(RhoKind::Fa),
            "sa" => Ok(RhoKind::Sa),
            _ => s
                .strip_prefix("gamma:")
                .and_then(|n| n.parse().ok())
                .map(RhoKind::Gamma)
                .ok_or_else(|| {
                    Error::syntax(1, format!("unknown mapping `{s}` (ext|fa|sa|gamma:<n>)"))
                }),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Parity {
    Fa,
    Sa,
}

impl Parity {
    fn flip(self) -> Self {
        match self {
            Parity::Fa => Parity::Sa,
            Parity::Sa => Parity::Fa,
        }
    }
}

/// `σ^ρ(t)` for the chosen kind. Every kind fixes variables.
pub fn apply_rho(kind: RhoKind, sigma: &Hypersubstitution, t: &Term) -> Term {
    match kind {
        RhoKind::Extension => sigma.extend(t),
        RhoKind::Fa => alternate(sigma, t, Parity::Fa),
        RhoKind::Sa => alternate(sigma, t, Parity::Sa),
        RhoKind::Gamma(n) => gamma(sigma, t, n),
    }
}

// fa(f(ts)) = S(σ(f), sa(ts)); sa(f(ts)) = f(fa(ts))
fn alternate(sigma: &Hypersubstitution, t: &Term, parity: Parity) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::App(f, cs) => {
            let children: Vec<Term> = cs
                .iter()
                .map(|c| alternate(sigma, c, parity.flip()))
                .collect();
            match parity {
                Parity::Fa => superpose_unchecked(sigma.image(*f), &children),
                Parity::Sa => Term::app(*f, children),
            }
        }
    }
}

fn gamma(sigma: &Hypersubstitution, t: &Term, n: usize) -> Term {
    if n == 0 {
        return sigma.extend(t);
    }
    match t {
        Term::Var(_) => t.clone(),
        Term::App(f, cs) => Term::app(
            *f,
            cs.iter()
                .map(|c| gamma(sigma, c, n - 1))
                .collect::<Vec<_>>(),
        ),
    }
}

/// Padding variable used by [`generate_f`] when none is given: `x4`, above `x, y, z`.
pub const DEFAULT_PADDING: u32 = 4;

/// Associativity nested `m` levels deep, over the type `(2)`.
///
/// `F_0 = { f(f(x,y),z) ≈ f(x,f(y,z)) }` and `F_{m+1}` pads every member of `F_m` with
/// `w` on the right (`f(s,w) ≈ f(t,w)`) and then on the left (`f(w,s) ≈ f(w,t)`).
/// Right-padded members come first, so `|F_m| = 2^m`.
pub fn generate_f(m: usize, padding: u32, cap: usize) -> Result<Vec<(Term, Term)>> {
    let needed = 1u128.checked_shl(m as u32).unwrap_or(u128::MAX);
    if needed > cap as u128 {
        return Err(Error::CapExceeded {
            what: "F-family generation",
            needed,
            cap: cap as u128,
        });
    }
    let f = SymbolId(0);
    let bin = |a: Term, b: Term| Term::app(f, vec![a, b]);
    let (x, y, z, w) = (Term::Var(1), Term::Var(2), Term::Var(3), Term::Var(padding));
    let mut family = vec![(bin(bin(x.clone(), y.clone()), z.clone()), bin(x, bin(y, z)))];
    for _ in 0..m {
        let right = family
            .iter()
            .map(|(s, t)| (bin(s.clone(), w.clone()), bin(t.clone(), w.clone())));
        let left = family
            .iter()
            .map(|(s, t)| (bin(w.clone(), s.clone()), bin(w.clone(), t.clone())));
        family = right.chain(left).collect();
    }
    Ok(family)
}

/// Checks `(σ1 ∘_h σ2)^{γn}(t) = σ1^{γn}(σ2^{γn}(t))` on every sample term.
pub fn check_gamma_homomorphism(
    sigma1: &Hypersubstitution,
    sigma2: &Hypersubstitution,
    n: usize,
    sample: &[Term],
) -> Result<bool> {
    let composed = sigma1.compose(sigma2)?;
    let kind = RhoKind::Gamma(n);
    Ok(sample.iter().all(|t| {
        apply_rho(kind, &composed, t) == apply_rho(kind, sigma1, &apply_rho(kind, sigma2, t))
    }))
}

/// `t_0 = f(x1..xn)`, `t_{p+1} = f(t_p, x2, ..., xn)`: separates `σ1^{γp}` from `σ2^{γp}`
/// whenever `σ1(f) ≠ σ2(f)`.
pub fn separating_term(sig: &Signature, symbol: SymbolId, p: usize) -> Term {
    let mut t = Term::generic(sig, symbol);
    for _ in 0..p {
        let mut children = t.children().to_vec();
        children[0] = t.clone();
        t = Term::app(symbol, children);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyp::{enumerate_hypersubstitutions, parse_hypersubstitution};
    use crate::term::{enumerate_terms, parse_term};

    fn sig() -> Signature {
        Signature::semigroup()
    }

    fn t(s: &str) -> Term {
        parse_term(s, &sig()).unwrap()
    }

    fn hyp(text: &str) -> Hypersubstitution {
        parse_hypersubstitution(text, &sig()).unwrap()
    }

    #[test]
    fn parses_kinds() {
        for (text, kind) in [
            ("ext", RhoKind::Extension),
            ("fa", RhoKind::Fa),
            ("sa", RhoKind::Sa),
            ("gamma:3", RhoKind::Gamma(3)),
        ] {
            assert_eq!(text.parse::<RhoKind>().unwrap(), kind);
            assert_eq!(kind.to_string(), text);
        }
        assert!("gamma:".parse::<RhoKind>().is_err());
        assert!("gamma:-1".parse::<RhoKind>().is_err());
        assert!("hat".parse::<RhoKind>().is_err());
    }

    #[test]
    fn sa_of_dual() {
        let d = hyp("f -> f(x2,x1)");
        assert_eq!(
            apply_rho(RhoKind::Sa, &d, &t("f(f(x,y),z)")),
            t("f(f(y,x),z)")
        );
        assert_eq!(
            apply_rho(RhoKind::Sa, &d, &t("f(x,f(y,z))")),
            t("f(x,f(z,y))")
        );
    }

    #[test]
    fn fa_of_dual_and_projection() {
        let d = hyp("f -> f(x2,x1)");
        assert_eq!(
            apply_rho(RhoKind::Fa, &d, &t("f(f(x,y),z)")),
            t("f(z,f(x,y))")
        );
        assert_eq!(
            apply_rho(RhoKind::Fa, &d, &t("f(x,f(y,z))")),
            t("f(f(y,z),x)")
        );
        let px = hyp("f -> x1");
        assert_eq!(apply_rho(RhoKind::Fa, &px, &t("f(f(x,y),z)")), t("f(x,y)"));
        assert_eq!(apply_rho(RhoKind::Fa, &px, &t("f(x,f(y,z))")), t("x"));
    }

    #[test]
    fn gamma_one_of_projection() {
        let px = hyp("f -> x1");
        assert_eq!(
            apply_rho(RhoKind::Gamma(1), &px, &t("f(f(x,y),z)")),
            t("f(x,z)")
        );
        assert_eq!(
            apply_rho(RhoKind::Gamma(1), &px, &t("f(x,f(y,z))")),
            t("f(x,y)")
        );
    }

    #[test]
    fn family_sizes_and_shape() {
        let f0 = generate_f(0, DEFAULT_PADDING, 1 << 20).unwrap();
        assert_eq!(f0, vec![(t("f(f(x,y),z)"), t("f(x,f(y,z))"))]);
        let f1 = generate_f(1, DEFAULT_PADDING, 1 << 20).unwrap();
        assert_eq!(
            f1,
            vec![
                (t("f(f(f(x,y),z),u)"), t("f(f(x,f(y,z)),u)")),
                (t("f(u,f(f(x,y),z))"), t("f(u,f(x,f(y,z)))")),
            ]
        );
        assert_eq!(generate_f(3, DEFAULT_PADDING, 1 << 20).unwrap().len(), 8);
        assert!(generate_f(30, DEFAULT_PADDING, 1 << 20).is_err());
    }

    #[test]
    fn gamma_zero_is_extension_and_everything_fixes_variables() {
        let terms = enumerate_terms(&sig(), 3, 3).unwrap();
        for h in enumerate_hypersubstitutions(&sig(), 1, 100).unwrap() {
            for term in terms.iter().step_by(3) {
                assert_eq!(apply_rho(RhoKind::Gamma(0), &h, term), h.extend(term));
            }
            for kind in [
                RhoKind::Extension,
                RhoKind::Fa,
                RhoKind::Sa,
                RhoKind::Gamma(2),
            ] {
                assert_eq!(apply_rho(kind, &h, &Term::Var(5)), Term::Var(5));
            }
        }
    }

    #[test]
    fn identity_is_fixed_by_gamma() {
        let e = Hypersubstitution::identity(&sig());
        for term in enumerate_terms(&sig(), 3, 2).unwrap() {
            for n in 0..=4 {
                assert_eq!(apply_rho(RhoKind::Gamma(n), &e, &term), term);
            }
        }
    }

    #[test]
    fn shallow_terms_are_fixed_by_gamma() {
        let terms = enumerate_terms(&sig(), 3, 2).unwrap();
        for h in enumerate_hypersubstitutions(&sig(), 1, 100).unwrap() {
            for term in &terms {
                for n in term.depth()..=4 {
                    assert_eq!(apply_rho(RhoKind::Gamma(n), &h, term), *term);
                }
            }
        }
    }

    #[test]
    fn dual_alternations_are_involutions() {
        let d = hyp("f -> f(x2,x1)");
        for term in enumerate_terms(&sig(), 3, 2).unwrap() {
            for kind in [RhoKind::Fa, RhoKind::Sa] {
                let once = apply_rho(kind, &d, &term);
                assert_eq!(apply_rho(kind, &d, &once), term);
                assert_eq!(once.length(), term.length());
                assert_eq!(once.varset(), term.varset());
            }
        }
    }

    #[test]
    fn gamma_homomorphism_examples() {
        let terms = enumerate_terms(&sig(), 3, 3).unwrap();
        let d = hyp("f -> f(x2,x1)");
        let px = hyp("f -> x1");
        for h1 in enumerate_hypersubstitutions(&sig(), 1, 100).unwrap() {
            assert!(check_gamma_homomorphism(&h1, &d, 0, &terms).unwrap());
        }
        assert!(check_gamma_homomorphism(&d, &px, 2, &terms).unwrap());
        assert!(check_gamma_homomorphism(&px, &d, 2, &terms).unwrap());
    }

    #[test]
    fn swapped_composition_is_detected() {
        // d ∘ x2 ≠ x2 ∘ d: the wrong order must fail on some term
        let d = hyp("f -> f(x2,x1)");
        let ff = hyp("f -> f(x1,f(x1,x2))");
        let terms = enumerate_terms(&sig(), 3, 3).unwrap();
        let wrong = ff.compose(&d).unwrap();
        let right = d.compose(&ff).unwrap();
        assert_ne!(wrong, right);
        let kind = RhoKind::Gamma(1);
        let distinguishing = terms.iter().find(|term| {
            apply_rho(kind, &wrong, term) != apply_rho(kind, &d, &apply_rho(kind, &ff, term))
        });
        assert!(distinguishing.is_some());
        assert!(check_gamma_homomorphism(&d, &ff, 1, &terms).unwrap());
    }

    #[test]
    fn separating_terms_distinguish_gamma_images() {
        let all = enumerate_hypersubstitutions(&sig(), 1, 100).unwrap();
        assert_eq!(
            separating_term(&sig(), SymbolId(0), 2),
            t("f(f(f(x1,x2),x2),x2)")
        );
        for n in 0..=3 {
            let witness = separating_term(&sig(), SymbolId(0), n);
            for a in &all {
                for b in &all {
                    if a != b {
                        let kind = RhoKind::Gamma(n);
                        assert_ne!(apply_rho(kind, a, &witness), apply_rho(kind, b, &witness));
                    }
                }
            }
        }
    }
}
