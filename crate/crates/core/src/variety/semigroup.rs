use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::word::{Identity, Word};
use crate::error::{Error, Result};

/// Largest order [`enumerate_finite_semigroups`] accepts.
pub const MAX_MODEL_ORDER: usize = 4;

/// A multiplication table on `{0..order-1}`, associative by construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TableRepr", into = "TableRepr")]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    order: usize,
    table: Vec<Vec<usize>>,
}

impl TryFrom<TableRepr> for FiniteSemigroup {
    type Error = Error;

    fn try_from(repr: TableRepr) -> Result<Self> {
        if repr.table.len() != repr.order || repr.table.iter().any(|r| r.len() != repr.order) {
            return Err(Error::InvalidTable(format!(
                "expected {0} rows of {0} entries",
                repr.order
            )));
        }
        FiniteSemigroup::new(repr.order, repr.table.into_iter().flatten().collect())
    }
}

impl From<FiniteSemigroup> for TableRepr {
    fn from(s: FiniteSemigroup) -> Self {
        TableRepr {
            order: s.order,
            table: s.rows(),
        }
    }
}

impl FiniteSemigroup {
    /// Row-major table; rejects out-of-range entries and non-associative tables.
    pub fn new(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 || order > u8::MAX as usize {
            return Err(Error::InvalidTable(format!("unsupported order {order}")));
        }
        if table.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, got {}",
                order * order,
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&e| e >= order) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range")));
        }
        let s = FiniteSemigroup {
            order,
            table: table.into_iter().map(|e| e as u8).collect(),
        };
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if s.mul(s.mul(a, b), c) != s.mul(a, s.mul(b, c)) {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(|r| r.iter().map(|&e| e as usize).collect())
            .collect()
    }

    /// `a·b = a`.
    pub fn left_zero(order: usize) -> Self {
        Self::new(order, (0..order * order).map(|i| i / order).collect()).expect("associative")
    }

    /// `a·b = b`.
    pub fn right_zero(order: usize) -> Self {
        Self::new(order, (0..order * order).map(|i| i % order).collect()).expect("associative")
    }

    /// Every product is `0`.
    pub fn null(order: usize) -> Self {
        Self::new(order, vec![0; order * order]).expect("associative")
    }

    /// Value of `w` under `assignment`, where `assignment(v)` is the element for `x_v`.
    pub fn eval(&self, w: &Word, assignment: impl Fn(u32) -> usize) -> usize {
        let mut letters = w.letters().iter();
        let first = assignment(*letters.next().expect("non-empty word"));
        letters.fold(first, |acc, &v| self.mul(acc, assignment(v)))
    }

    /// The first assignment (last variable fastest) falsifying `identity`, if any.
    pub fn falsifying_assignment(&self, identity: &Identity) -> Option<Vec<(u32, usize)>> {
        let vars: Vec<u32> = identity.variables().into_iter().collect();
        let max_var = vars.last().copied().unwrap_or(0) as usize;
        let mut values = vec![0usize; vars.len()];
        let mut slot = vec![0usize; max_var + 1];
        loop {
            for (v, &val) in vars.iter().zip(&values) {
                slot[*v as usize] = val;
            }
            let lookup = |v: u32| slot[v as usize];
            if self.eval(&identity.lhs, lookup) != self.eval(&identity.rhs, lookup) {
                return Some(vars.iter().copied().zip(values.iter().copied()).collect());
            }
            let mut pos = values.len();
            loop {
                if pos == 0 {
                    return None;
                }
                pos -= 1;
                values[pos] += 1;
                if values[pos] < self.order {
                    break;
                }
                values[pos] = 0;
            }
        }
    }

    pub fn satisfies(&self, identity: &Identity) -> bool {
        self.falsifying_assignment(identity).is_none()
    }
}

impl fmt::Display for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

/// Every associative labeled table of order `1..=max_order`, ascending order, each order
/// in lexicographic row-major table order.
pub fn enumerate_finite_semigroups(max_order: usize) -> Result<Vec<FiniteSemigroup>> {
    if max_order > MAX_MODEL_ORDER {
        return Err(Error::CapExceeded {
            what: "finite semigroup enumeration (order)",
            needed: max_order as u128,
            cap: MAX_MODEL_ORDER as u128,
        });
    }
    let mut out = Vec::new();
    for order in 1..=max_order {
        let mut table = vec![None; order * order];
        fill(order, &mut table, 0, &mut out);
    }
    Ok(out)
}

fn fill(order: usize, table: &mut [Option<u8>], cell: usize, out: &mut Vec<FiniteSemigroup>) {
    if cell == table.len() {
        out.push(FiniteSemigroup {
            order,
            table: table.iter().map(|e| e.expect("filled")).collect(),
        });
        return;
    }
    for value in 0..order as u8 {
        table[cell] = Some(value);
        if consistent(order, table) {
            fill(order, table, cell + 1, out);
        }
    }
    table[cell] = None;
}

/// No fully defined associativity triple is violated.
fn consistent(order: usize, table: &[Option<u8>]) -> bool {
    let get = |a: usize, b: usize| table[a * order + b].map(usize::from);
    for a in 0..order {
        for b in 0..order {
            let Some(ab) = get(a, b) else { continue };
            for c in 0..order {
                let (Some(left), Some(bc)) = (get(ab, c), get(b, c)) else {
                    continue;
                };
                if let Some(right) = get(a, bc) {
                    if left != right {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// All semigroups up to [`MAX_MODEL_ORDER`], computed once.
pub(crate) fn catalog(max_order: usize) -> &'static [FiniteSemigroup] {
    static CATALOG: OnceLock<Vec<FiniteSemigroup>> = OnceLock::new();
    let all =
        CATALOG.get_or_init(|| enumerate_finite_semigroups(MAX_MODEL_ORDER).expect("within cap"));
    let end = all.partition_point(|s| s.order <= max_order.min(MAX_MODEL_ORDER));
    &all[..end]
}
