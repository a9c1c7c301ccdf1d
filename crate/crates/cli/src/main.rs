use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

/// Terms, hypersubstitutions, and bounded membership checks for semigroup varieties.
#[derive(Debug, Parser)]
#[command(name = "hyperterm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SigArg {
    /// Signature file (`<name> <arity>` per line); defaults to the type (2) with symbol `f`.
    #[arg(long)]
    sig: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Distinct words the derivation search may visit.
    #[arg(long, default_value_t = 200_000)]
    pub budget_nodes: usize,
    /// Longest intermediate word in a derivation.
    #[arg(long, default_value_t = 8)]
    pub max_word_len: usize,
    /// Longest word substituted for one axiom variable.
    #[arg(long, default_value_t = 3)]
    pub max_subst_len: usize,
    /// Largest finite model order used for refutation (at most 4).
    #[arg(long, default_value_t = 4)]
    pub max_order: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply a term map derived from a hypersubstitution to a term.
    Apply {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long)]
        hyp: PathBuf,
        /// `ext`, `fa`, `sa`, or `gamma:<n>`.
        #[arg(long, default_value = "ext")]
        rho: String,
        term: String,
    },
    /// Compose hypersubstitutions: `--hyp A --hyp B` prints `A ∘_h B`.
    Compose {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long, required = true, num_args = 1)]
        hyp: Vec<PathBuf>,
    },
    /// Print the Bij certificate of a hypersubstitution, if any.
    Bij {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long)]
        hyp: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// List every bijective hypersubstitution of the signature.
    BijEnum {
        #[command(flatten)]
        sig: SigArg,
    },
    /// Print the inverse of a bijective hypersubstitution.
    Invert {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long)]
        hyp: PathBuf,
    },
    /// Membership and solidity queries against a semigroup presentation.
    Variety {
        /// Presentation file (`<word> = <word>` per line).
        #[arg(long)]
        pres: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Structured output.
        #[arg(long, global = true)]
        json: bool,
        #[command(subcommand)]
        query: VarietyQuery,
    },
    /// List all terms of bounded depth over `x1..x<vars>`.
    EnumTerms {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        vars: usize,
        /// Only print the count.
        #[arg(long)]
        count: bool,
    },
    /// List all labeled finite semigroups up to an order.
    EnumModels {
        #[arg(long, default_value_t = 2)]
        max_order: usize,
        /// Only print the count per order.
        #[arg(long)]
        count: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum VarietyQuery {
    /// Decide an identity such as `xyz = zxy`.
    Decide { identity: String },
    /// Decide γ_n-solidity.
    GammaSolid { n: usize },
    /// Check the Bij(2)-sa criteria.
    SaCriteria,
    /// Check the Bij(2)-fa criteria.
    FaCriteria,
    /// Check ρ-solidity for the given hypersubstitution files, sampling the axioms.
    RhoSolid {
        /// `ext`, `fa`, `sa`, or `gamma:<n>`.
        rho: String,
        /// Hypersubstitution files; all images of depth at most `--image-depth` when empty.
        hyps: Vec<PathBuf>,
        #[arg(long, default_value_t = 1)]
        image_depth: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                commands::EXIT_INPUT
            } else {
                0
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Apply {
            sig,
            hyp,
            rho,
            term,
        } => commands::apply(sig.sig.as_deref(), &hyp, &rho, &term),
        Command::Compose { sig, hyp } => commands::compose(sig.sig.as_deref(), &hyp),
        Command::Bij { sig, hyp, json } => commands::bij(sig.sig.as_deref(), &hyp, json),
        Command::BijEnum { sig } => commands::bij_enum(sig.sig.as_deref()),
        Command::Invert { sig, hyp } => commands::invert(sig.sig.as_deref(), &hyp),
        Command::Variety {
            pres,
            budget,
            json,
            query,
        } => commands::variety(&pres, &budget, json, &query),
        Command::EnumTerms {
            sig,
            depth,
            vars,
            count,
        } => commands::enum_terms(sig.sig.as_deref(), depth, vars, count),
        Command::EnumModels { max_order, count } => commands::enum_models(max_order, count),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::EXIT_INPUT)
        }
    }
}
