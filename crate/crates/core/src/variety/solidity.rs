//! ρ-solidity checks and the classification criteria for semigroup varieties.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::derive::search;
use super::lab::Lab;
use super::verdict::{BudgetUsage, Status, Verdict};
use super::word::{
    bracketings, left_comb, right_comb, term_to_word, Identity, Word, MAX_BRACKETING_LEN,
};
use crate::error::{Error, Result};
use crate::hyp::Hypersubstitution;
use crate::rho::{apply_rho, RhoKind};
use crate::signature::Signature;
use crate::term::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolidityStatus {
    Supported,
    Violated,
    Inconclusive,
}

/// A ρ-image of a sample identity refuted in a finite model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Compact `f -> term` rendering of the offending hypersubstitution.
    pub hypersubstitution: String,
    pub source: Identity,
    pub lhs_term: String,
    pub rhs_term: String,
    /// The flattened image identity.
    pub identity: Identity,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolidityReport {
    pub status: SolidityStatus,
    /// Bracketing pairs examined.
    pub checked: usize,
    /// Distinct non-trivial image identities decided.
    pub decided: usize,
    pub violation: Option<Violation>,
    /// Image identities left Unknown.
    pub unknown: Vec<Identity>,
    /// Some side was too long for full bracketing and only the two combs were used.
    pub partial_bracketings: bool,
    pub budget_used: BudgetUsage,
}

fn side_terms(w: &Word, partial: &mut bool) -> Vec<Term> {
    match bracketings(w, MAX_BRACKETING_LEN) {
        Ok(terms) => terms,
        Err(_) => {
            *partial = true;
            vec![left_comb(w), right_comb(w)]
        }
    }
}

fn compact(h: &Hypersubstitution) -> String {
    let sig = h.signature();
    sig.ids()
        .map(|id| format!("{} -> {}", sig.name(id), h.image(id).display(sig)))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Applies `kind` for every `σ ∈ hyps` to every bracketing pair of every identity in
/// `sample` (with associativity always added first) and decides each flattened image.
///
/// Stops at the first Disproved image.
pub fn check_rho_solidity(
    lab: &Lab,
    kind: RhoKind,
    hyps: &[Hypersubstitution],
    sample: &[Identity],
) -> Result<SolidityReport> {
    let sig = Signature::semigroup();
    if hyps.iter().any(|h| !h.signature().is_semigroup()) {
        return Err(Error::NotSemigroupSignature);
    }
    let assoc = Identity::new(Word::run(1, 3), Word::run(1, 3));
    let mut identities = vec![assoc];
    identities.extend(sample.iter().cloned());

    let mut report = SolidityReport {
        status: SolidityStatus::Supported,
        checked: 0,
        decided: 0,
        violation: None,
        unknown: Vec::new(),
        partial_bracketings: false,
        budget_used: BudgetUsage {
            max_order: lab.max_order(),
            ..BudgetUsage::default()
        },
    };
    let mut cache: HashMap<Identity, Status> = HashMap::new();
    for source in &identities {
        let lhs_terms = side_terms(&source.lhs, &mut report.partial_bracketings);
        let rhs_terms = side_terms(&source.rhs, &mut report.partial_bracketings);
        for h in hyps {
            for l in &lhs_terms {
                let l_image = term_to_word(&apply_rho(kind, h, l), &sig)?;
                for r in &rhs_terms {
                    report.checked += 1;
                    let r_image = term_to_word(&apply_rho(kind, h, r), &sig)?;
                    let image = Identity::new(l_image.clone(), r_image);
                    if image.is_trivial() {
                        continue;
                    }
                    let key = image.normalized();
                    if cache.contains_key(&key) {
                        continue;
                    }
                    let verdict = lab.decide(&image);
                    report.decided += 1;
                    report.budget_used.nodes += verdict.budget_used.nodes;
                    report.budget_used.models_checked += verdict.budget_used.models_checked;
                    let status = verdict.status();
                    cache.insert(key, status);
                    match status {
                        Status::Proved => {}
                        Status::Unknown => {
                            report.status = SolidityStatus::Inconclusive;
                            report.unknown.push(image);
                        }
                        Status::Disproved => {
                            report.status = SolidityStatus::Violated;
                            report.violation = Some(Violation {
                                hypersubstitution: compact(h),
                                source: source.clone(),
                                lhs_term: l.display(&sig).to_string(),
                                rhs_term: r.display(&sig).to_string(),
                                identity: image,
                                verdict,
                            });
                            return Ok(report);
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The goal `x1…x_{n+1} ≈ x_{n+2}…x_{2n+2}` whose membership characterizes γ_n-solidity.
pub fn gamma_goal(n: usize) -> Identity {
    Identity::new(Word::run(1, n + 1), Word::run(n as u32 + 2, n + 1))
}

/// Proved means γ_n-solid, Disproved means not γ_n-solid.
pub fn classify_gamma_solid(lab: &Lab, n: usize) -> Result<Verdict> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "γ_n classification needs n ≥ 1".into(),
        ));
    }
    Ok(lab.decide(&gamma_goal(n)))
}

/// Outcome of the search for an identity triggering condition (ii).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Trigger {
    Found(Identity),
    /// Every axiom has the same letters with the same multiplicities on both sides, so
    /// no derivable identity can trigger.
    Absent,
    /// Neither found nor ruled out within the budget.
    Unsettled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CriteriaConclusion {
    Supported,
    NotSupported,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriteriaReport {
    /// `xyz ≈ zxy`.
    pub condition_i: Verdict,
    pub trigger: Trigger,
    /// Axioms examined for the trigger, in both orientations.
    pub scanned: Vec<Identity>,
    /// Words visited by the bounded closure search for the trigger.
    pub closure_nodes: usize,
    /// Decided only when the trigger is found or unsettled.
    pub condition_ii: Option<Verdict>,
    pub conclusion: CriteriaConclusion,
}

fn is_linear_of(w: &Word, k: usize) -> bool {
    w.len() == k && w.varcount() == k
}

fn triggers(s: &Word, t: &Word, k: usize) -> bool {
    is_linear_of(s, k) && (t.len() != k || t.varcount() != k || t.varset() != s.varset())
}

fn content_preserving(a: &Identity) -> bool {
    let mut l = a.lhs.letters().to_vec();
    let mut r = a.rhs.letters().to_vec();
    l.sort_unstable();
    r.sort_unstable();
    l == r
}

fn criteria(lab: &Lab, k: usize, goal_ii: Identity) -> CriteriaReport {
    let condition_i = lab.decide(&Identity::new(
        Word::run(1, 3),
        Word::new(vec![3, 1, 2]).expect("non-empty"),
    ));
    let mut scanned = Vec::new();
    let mut trigger = None;
    for a in lab.presentation().axioms() {
        for oriented in [a.clone(), a.swapped()] {
            scanned.push(oriented.clone());
            if trigger.is_none() && triggers(&oriented.lhs, &oriented.rhs, k) {
                trigger = Some(Trigger::Found(oriented));
            }
        }
    }
    let mut closure_nodes = 0;
    let trigger = trigger.unwrap_or_else(|| {
        if lab.presentation().axioms().iter().all(content_preserving) {
            return Trigger::Absent;
        }
        let start = Word::run(1, k);
        let alphabet: Vec<u32> = (1..=k as u32 + 1).collect();
        let result = search(
            lab.presentation().axioms(),
            &start,
            lab.budget(),
            &alphabet,
            |w| {
                w.len() != k || {
                    let mut sorted = w.to_vec();
                    sorted.sort_unstable();
                    sorted != start.letters()
                }
            },
        );
        closure_nodes = result.nodes;
        match result.found {
            Some(d) => Trigger::Found(Identity::new(start, d.end().clone())),
            None => Trigger::Unsettled,
        }
    });
    let condition_ii = match trigger {
        Trigger::Absent => None,
        _ => Some(lab.decide(&goal_ii)),
    };
    let ii = condition_ii.as_ref().map(Verdict::status);
    let conclusion = match (condition_i.status(), &trigger, ii) {
        (Status::Disproved, _, _) => CriteriaConclusion::NotSupported,
        (_, Trigger::Found(_), Some(Status::Disproved)) => CriteriaConclusion::NotSupported,
        (Status::Proved, Trigger::Absent, _) => CriteriaConclusion::Supported,
        (Status::Proved, _, Some(Status::Proved)) => CriteriaConclusion::Supported,
        _ => CriteriaConclusion::Inconclusive,
    };
    CriteriaReport {
        condition_i,
        trigger,
        scanned,
        closure_nodes,
        condition_ii,
        conclusion,
    }
}

/// Condition (i) `xyz ≈ zxy`; condition (ii) triggered by a linear length-3 side, then `xyz ≈ xzy`.
pub fn check_bij2_sa_criteria(lab: &Lab) -> CriteriaReport {
    criteria(
        lab,
        3,
        Identity::new(
            Word::run(1, 3),
            Word::new(vec![1, 3, 2]).expect("non-empty"),
        ),
    )
}

/// Condition (i) `xyz ≈ zxy`; condition (ii) triggered by a linear length-2 side, then `xy ≈ yx`.
pub fn check_bij2_fa_criteria(lab: &Lab) -> CriteriaReport {
    criteria(
        lab,
        2,
        Identity::new(Word::run(1, 2), Word::new(vec![2, 1]).expect("non-empty")),
    )
}
