//! Semigroup words and presentations, bounded derivation, finite counter-models, and
//! ρ-solidity checks over the type `(2)`.

mod derive;
mod lab;
mod semigroup;
mod solidity;
mod verdict;
mod word;

pub use derive::{Budget, CANDIDATES_PER_NODE};
pub use lab::{decide, derive, refute, Lab, DEFAULT_MAX_ORDER};
pub use semigroup::{enumerate_finite_semigroups, FiniteSemigroup, MAX_MODEL_ORDER};
pub use solidity::{
    check_bij2_fa_criteria, check_bij2_sa_criteria, check_rho_solidity, classify_gamma_solid,
    gamma_goal, CriteriaConclusion, CriteriaReport, SolidityReport, SolidityStatus, Trigger,
    Violation,
};
pub use verdict::{
    BudgetUsage, CounterModel, Derivation, Exhaustion, Outcome, Status, Step, Verdict,
};
pub use word::{
    bracketings, left_comb, parse_identity, parse_presentation, parse_word, right_comb,
    term_to_word, Identity, Presentation, Word, MAX_BRACKETING_LEN,
};
