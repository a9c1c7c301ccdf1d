use std::fmt;

use serde::{Deserialize, Serialize};

use super::semigroup::FiniteSemigroup;
use super::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Proved,
    Disproved,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Proved => "Proved",
            Status::Disproved => "Disproved",
            Status::Unknown => "Unknown",
        })
    }
}

/// One rewrite: axiom `axiom` (0-based, sides swapped when `reversed`) applied to the
/// factor starting at `position`, producing `result`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub axiom: usize,
    pub reversed: bool,
    pub position: usize,
    pub result: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub start: Word,
    pub steps: Vec<Step>,
}

impl Derivation {
    pub fn end(&self) -> &Word {
        self.steps.last().map_or(&self.start, |s| &s.result)
    }
}

/// A finite model of the presentation with an assignment separating the two sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterModel {
    pub model: FiniteSemigroup,
    /// `(variable index, element)` pairs.
    pub assignment: Vec<(u32, usize)>,
    pub lhs_value: usize,
    pub rhs_value: usize,
}

/// Which limits cut the search short.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exhaustion {
    pub node_limit_hit: bool,
    pub length_limit_hit: bool,
    pub models_searched: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "witness")]
pub enum Outcome {
    Proved(Derivation),
    Disproved(CounterModel),
    Unknown(Exhaustion),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetUsage {
    /// Distinct words reached by the derivation search.
    pub nodes: usize,
    /// Finite models checked against the goal.
    pub models_checked: usize,
    pub max_order: usize,
}

/// Three-valued membership result with its witness and the budget it consumed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    #[serde(flatten)]
    pub outcome: Outcome,
    pub budget_used: BudgetUsage,
}

impl Verdict {
    pub fn status(&self) -> Status {
        match self.outcome {
            Outcome::Proved(_) => Status::Proved,
            Outcome::Disproved(_) => Status::Disproved,
            Outcome::Unknown(_) => Status::Unknown,
        }
    }

    pub fn derivation(&self) -> Option<&Derivation> {
        match &self.outcome {
            Outcome::Proved(d) => Some(d),
            _ => None,
        }
    }

    pub fn counter_model(&self) -> Option<&CounterModel> {
        match &self.outcome {
            Outcome::Disproved(c) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    /// Status line followed by an indented witness trace.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.status())?;
        match &self.outcome {
            Outcome::Proved(d) => {
                writeln!(f, "  {}", d.start)?;
                for s in &d.steps {
                    let dir = if s.reversed { "<-" } else { "->" };
                    writeln!(
                        f,
                        "  = {}    [axiom {} {dir} at {}]",
                        s.result,
                        s.axiom + 1,
                        s.position
                    )?;
                }
            }
            Outcome::Disproved(c) => {
                writeln!(f, "  model of order {}: {}", c.model.order(), c.model)?;
                let assignment: Vec<String> = c
                    .assignment
                    .iter()
                    .map(|(v, e)| format!("x{v}={e}"))
                    .collect();
                writeln!(f, "  assignment: {}", assignment.join(" "))?;
                writeln!(f, "  lhs = {}, rhs = {}", c.lhs_value, c.rhs_value)?;
            }
            Outcome::Unknown(e) => {
                writeln!(
                    f,
                    "  node limit hit: {}, length limit hit: {}, models searched: {}",
                    e.node_limit_hit, e.length_limit_hit, e.models_searched
                )?;
            }
        }
        let u = &self.budget_used;
        writeln!(
            f,
            "  budget used: {} nodes, {} models (max order {})",
            u.nodes, u.models_checked, u.max_order
        )
    }
}
