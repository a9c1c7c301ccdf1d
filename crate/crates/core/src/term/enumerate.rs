use super::Term;
use crate::error::{Error, Result};
use crate::signature::Signature;

/// Largest universe [`enumerate_terms`] will materialize.
pub const DEFAULT_TERM_CAP: u128 = 5_000_000;

/// Number of terms over `x1..x{max_var}` with depth at most `max_depth` (saturating).
pub fn count_terms(sig: &Signature, max_depth: usize, max_var: usize) -> u128 {
    let vars = max_var as u128;
    let mut total = vars;
    for _ in 0..max_depth {
        let mut next = vars;
        for s in sig.symbols() {
            let arity = u32::try_from(s.arity).unwrap_or(u32::MAX);
            next = next.saturating_add(total.saturating_pow(arity));
        }
        total = next;
    }
    total
}

pub fn enumerate_terms(sig: &Signature, max_depth: usize, max_var: usize) -> Result<Vec<Term>> {
    enumerate_terms_capped(sig, max_depth, max_var, DEFAULT_TERM_CAP)
}

/// All terms over `x1..x{max_var}` of depth at most `max_depth`.
///
/// Ordered by depth, then symbol index, then children lexicographically by their
/// position in this same order.
pub fn enumerate_terms_capped(
    sig: &Signature,
    max_depth: usize,
    max_var: usize,
    cap: u128,
) -> Result<Vec<Term>> {
    let needed = count_terms(sig, max_depth, max_var);
    if needed > cap {
        return Err(Error::CapExceeded {
            what: "term enumeration",
            needed,
            cap,
        });
    }
    if max_var == 0 {
        return Ok(Vec::new());
    }
    let mut all: Vec<Term> = (1..=max_var as u32).map(Term::Var).collect();
    all.reserve(needed as usize - all.len());
    // all[prev_start..prev_end] are exactly the terms of depth d-1
    let mut prev_start = 0;
    for _ in 0..max_depth {
        let prev_end = all.len();
        for id in sig.ids() {
            let arity = sig.arity(id);
            let mut idx = vec![0usize; arity];
            'tuples: loop {
                if idx.iter().any(|&i| i >= prev_start) {
                    let children: Vec<Term> = idx.iter().map(|&i| all[i].clone()).collect();
                    all.push(Term::app(id, children));
                }
                // odometer, last position fastest
                let mut pos = arity;
                while pos > 0 {
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < prev_end {
                        continue 'tuples;
                    }
                    idx[pos] = 0;
                }
                break;
            }
        }
        prev_start = prev_end;
    }
    debug_assert_eq!(all.len() as u128, needed);
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::parse_signature;
    use std::collections::HashSet;

    /// Independent count: sum over exact depths of terms with at least one child at depth d-1.
    fn recurrence_count(arities: &[u32], max_depth: usize, vars: u128) -> u128 {
        let mut upto = vec![vars];
        for d in 1..=max_depth {
            let below = upto[d - 1];
            let below2 = if d >= 2 { upto[d - 2] } else { 0 };
            let exact: u128 = arities.iter().map(|&a| below.pow(a) - below2.pow(a)).sum();
            upto.push(below + exact);
        }
        upto[max_depth]
    }

    #[test]
    fn depth_zero_is_variables() {
        let sig = Signature::semigroup();
        assert_eq!(
            enumerate_terms(&sig, 0, 2).unwrap(),
            vec![Term::Var(1), Term::Var(2)]
        );
    }

    #[test]
    fn depth_one_binary_two_vars() {
        let sig = Signature::semigroup();
        let terms = enumerate_terms(&sig, 1, 2).unwrap();
        assert_eq!(terms.len(), 6);
        let text: Vec<String> = terms.iter().map(|t| t.display(&sig).to_string()).collect();
        assert_eq!(
            text,
            ["x1", "x2", "f(x1,x1)", "f(x1,x2)", "f(x2,x1)", "f(x2,x2)"]
        );
    }

    #[test]
    fn depth_two_one_var_matches_recurrence() {
        let sig = Signature::semigroup();
        let terms = enumerate_terms(&sig, 2, 1).unwrap();
        // x; f(x,x); then pairs over {x, f(x,x)} with at least one f(x,x)
        assert_eq!(terms.len(), 5);
        assert_eq!(terms.len() as u128, recurrence_count(&[2], 2, 1));
    }

    #[test]
    fn counts_match_recurrence_and_are_distinct() {
        let cases = [
            ("f 2", vec![2u32]),
            ("f 2\ng 1", vec![2, 1]),
            ("h 3", vec![3]),
        ];
        for (src, arities) in cases {
            let sig = parse_signature(src).unwrap();
            for depth in 0..=3 {
                for vars in 1..=2 {
                    if count_terms(&sig, depth, vars) > 100_000 {
                        continue;
                    }
                    let terms = enumerate_terms(&sig, depth, vars).unwrap();
                    assert_eq!(
                        terms.len() as u128,
                        recurrence_count(&arities, depth, vars as u128)
                    );
                    let unique: HashSet<_> = terms.iter().collect();
                    assert_eq!(unique.len(), terms.len());
                    assert!(terms
                        .iter()
                        .all(|t| t.depth() <= depth && t.max_var() as usize <= vars));
                    assert!(terms.windows(2).all(|w| w[0].depth() <= w[1].depth()));
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let sig = Signature::semigroup();
        assert!(matches!(
            enumerate_terms_capped(&sig, 3, 3, 1000),
            Err(Error::CapExceeded { needed: 21612, .. })
        ));
        assert_eq!(count_terms(&sig, 3, 3), 21612);
        assert_eq!(count_terms(&sig, 40, 3), u128::MAX);
    }
}
