//! Term algebra of an arbitrary type, hypersubstitutions and their bijective submonoid,
//! the `fa`/`sa`/`γ_n` term maps, and a bounded equational lab for semigroup varieties.

pub mod bijection;
pub mod error;
pub mod hyp;
pub mod rho;
pub mod signature;
pub mod term;
pub mod variety;

pub use bijection::{
    bij_certificate, enumerate_bijective, invert, oracle_bijectivity_bounded, BijCertificate,
    OracleVerdict, Permutation,
};
pub use error::{Error, Result};
pub use hyp::{hyp_equal, parse_hypersubstitution, Hypersubstitution};
pub use rho::{apply_rho, check_gamma_homomorphism, generate_f, RhoKind};
pub use signature::{parse_signature, Signature, SymbolId};
pub use term::{enumerate_terms, parse_term, render_term, superpose, Term, TermMetrics};
pub use variety::{
    check_rho_solidity, classify_gamma_solid, decide, derive, enumerate_finite_semigroups,
    parse_identity, parse_presentation, parse_word, refute, term_to_word, Budget, FiniteSemigroup,
    Identity, Lab, Presentation, Status, Verdict, Word,
};
