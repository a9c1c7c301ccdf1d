use std::sync::OnceLock;

use super::derive::{search, Budget};
use super::semigroup::{catalog, FiniteSemigroup, MAX_MODEL_ORDER};
use super::verdict::{BudgetUsage, CounterModel, Exhaustion, Outcome, Verdict};
use super::word::{Identity, Presentation};

/// Default largest model order tried by [`refute`].
pub const DEFAULT_MAX_ORDER: usize = MAX_MODEL_ORDER;

/// A presentation together with its search limits and a cache of its finite models.
#[derive(Debug)]
pub struct Lab {
    pres: Presentation,
    budget: Budget,
    max_order: usize,
    models: OnceLock<Vec<&'static FiniteSemigroup>>,
}

impl Lab {
    /// `max_order` is clamped to [`MAX_MODEL_ORDER`].
    pub fn new(pres: Presentation, budget: Budget, max_order: usize) -> Self {
        Lab {
            pres,
            budget,
            max_order: max_order.min(MAX_MODEL_ORDER),
            models: OnceLock::new(),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    /// Every enumerated semigroup of order at most `max_order` satisfying all axioms.
    pub fn models(&self) -> &[&'static FiniteSemigroup] {
        self.models.get_or_init(|| {
            catalog(self.max_order)
                .iter()
                .filter(|m| self.pres.axioms().iter().all(|a| m.satisfies(a)))
                .collect()
        })
    }

    /// Proved with a rewrite trace, or Unknown.
    pub fn derive(&self, goal: &Identity) -> Verdict {
        if goal.lhs.len().max(goal.rhs.len()) > self.budget.max_word_len {
            return Verdict {
                outcome: Outcome::Unknown(Exhaustion {
                    length_limit_hit: true,
                    ..Exhaustion::default()
                }),
                budget_used: self.usage(0, 0),
            };
        }
        let alphabet: Vec<u32> = goal.variables().into_iter().collect();
        let target = goal.rhs.letters();
        let result = search(self.pres.axioms(), &goal.lhs, self.budget, &alphabet, |w| {
            w == target
        });
        let budget_used = self.usage(result.nodes, 0);
        let outcome = match result.found {
            Some(d) => Outcome::Proved(d),
            None => Outcome::Unknown(result.exhaustion),
        };
        Verdict {
            outcome,
            budget_used,
        }
    }

    /// Disproved by the first model (ascending order, then table order) and assignment
    /// falsifying `goal`, or Unknown.
    pub fn refute(&self, goal: &Identity) -> Verdict {
        let mut checked = 0;
        for model in self.models() {
            checked += 1;
            if let Some(assignment) = model.falsifying_assignment(goal) {
                let lookup = |v: u32| assignment.iter().find(|(u, _)| *u == v).map_or(0, |p| p.1);
                let counter = CounterModel {
                    model: (*model).clone(),
                    lhs_value: model.eval(&goal.lhs, lookup),
                    rhs_value: model.eval(&goal.rhs, lookup),
                    assignment,
                };
                return Verdict {
                    outcome: Outcome::Disproved(counter),
                    budget_used: self.usage(0, checked),
                };
            }
        }
        Verdict {
            outcome: Outcome::Unknown(Exhaustion {
                models_searched: true,
                ..Exhaustion::default()
            }),
            budget_used: self.usage(0, checked),
        }
    }

    /// [`Lab::derive`], then [`Lab::refute`] when the derivation is inconclusive.
    pub fn decide(&self, goal: &Identity) -> Verdict {
        let derived = self.derive(goal);
        let Outcome::Unknown(ref exhausted) = derived.outcome else {
            return derived;
        };
        let refuted = self.refute(goal);
        let budget_used = self.usage(
            derived.budget_used.nodes,
            refuted.budget_used.models_checked,
        );
        let outcome = match refuted.outcome {
            Outcome::Unknown(e) => Outcome::Unknown(Exhaustion {
                models_searched: e.models_searched,
                ..exhausted.clone()
            }),
            other => other,
        };
        Verdict {
            outcome,
            budget_used,
        }
    }

    fn usage(&self, nodes: usize, models_checked: usize) -> BudgetUsage {
        BudgetUsage {
            nodes,
            models_checked,
            max_order: self.max_order,
        }
    }
}

pub fn derive(pres: &Presentation, goal: &Identity, budget: Budget) -> Verdict {
    Lab::new(pres.clone(), budget, 0).derive(goal)
}

pub fn refute(pres: &Presentation, goal: &Identity, max_order: usize) -> Verdict {
    Lab::new(pres.clone(), Budget::default(), max_order).refute(goal)
}

pub fn decide(pres: &Presentation, goal: &Identity, budget: Budget, max_order: usize) -> Verdict {
    Lab::new(pres.clone(), budget, max_order).decide(goal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::verdict::Status;
    use crate::variety::word::{parse_identity, parse_presentation};
    use proptest::prelude::*;

    fn pres(text: &str) -> Presentation {
        parse_presentation(text).unwrap()
    }

    fn id(text: &str) -> Identity {
        parse_identity(text).unwrap()
    }

    fn lab(text: &str) -> Lab {
        Lab::new(pres(text), Budget::default(), DEFAULT_MAX_ORDER)
    }

    /// Replays a derivation, checking each step is an instance of the cited axiom.
    fn replay(p: &Presentation, goal: &Identity, v: &Verdict) {
        let d = v.derivation().unwrap();
        assert_eq!(d.start, goal.lhs);
        assert_eq!(d.end(), &goal.rhs);
        let mut current = d.start.clone();
        for step in &d.steps {
            let a = &p.axioms()[step.axiom];
            let ax = if step.reversed {
                a.swapped()
            } else {
                a.clone()
            };
            // the rewrite is sound iff every model of the axiom sees equal values
            let local = Presentation::new([ax]);
            let l = Lab::new(local, Budget::default(), 3);
            assert_eq!(
                l.refute(&Identity::new(current.clone(), step.result.clone()))
                    .status(),
                Status::Unknown
            );
            current = step.result.clone();
        }
    }

    #[test]
    fn zero_semigroups_derive_xz_xy() {
        let l = lab("xy = zu");
        let goal = id("xz = xy");
        let v = l.derive(&goal);
        assert_eq!(v.status(), Status::Proved);
        assert_eq!(v.derivation().unwrap().steps.len(), 1);
        replay(l.presentation(), &goal, &v);
    }

    #[test]
    fn cyclic_law_reaches_xzy() {
        let l = lab("xyz = zxy");
        let goal = id("yxz = xzy");
        let v = l.derive(&goal);
        assert!(v.derivation().unwrap().steps.len() <= 2);
        replay(l.presentation(), &goal, &v);
    }

    #[test]
    fn reflexivity_is_immediate() {
        for p in ["", "x = y", "x^2 = x"] {
            let v = lab(p).derive(&id("xyx = xyx"));
            assert_eq!(v.derivation().unwrap().steps.len(), 0);
        }
    }

    #[test]
    fn bands_are_not_commutative() {
        let v = lab("x^2 = x").decide(&id("xy = yx"));
        let c = v.counter_model().unwrap();
        assert_eq!(c.model, FiniteSemigroup::left_zero(2));
        assert_ne!(c.lhs_value, c.rhs_value);
    }

    #[test]
    fn null_semigroup_refutes_x_equals_y() {
        let v = refute(&pres("xy = zu"), &id("x = y"), 4);
        assert_eq!(v.counter_model().unwrap().model, FiniteSemigroup::null(2));
    }

    #[test]
    fn trivial_variety_cannot_be_refuted() {
        let v = refute(&pres("x = y"), &id("xy = yx"), 4);
        assert_eq!(v.status(), Status::Unknown);
        assert_eq!(v.budget_used.models_checked, 1);
    }

    #[test]
    fn cyclic_law_commutativity_baseline() {
        let v = lab("xyz = zxy").decide(&id("xy = yx"));
        assert_eq!(v.status(), Status::Disproved);
        let c = v.counter_model().unwrap();
        assert!(c.model.satisfies(&id("xyz = zxy")));
        assert_eq!(c.model.order(), 4);
    }

    #[test]
    fn zero_semigroup_collapse_trace() {
        let p = pres("xz = xy\nyz = xz");
        let goal = parse_identity("x2 x3 = x1 x4").unwrap();
        let v = decide(&p, &goal, Budget::default(), 4);
        assert_eq!(v.status(), Status::Proved);
        let results: Vec<String> = v
            .derivation()
            .unwrap()
            .steps
            .iter()
            .map(|s| s.result.to_string())
            .collect();
        assert_eq!(results, ["x2x4", "x1x4"]);
        replay(&p, &goal, &v);
    }

    #[test]
    fn tiny_budget_is_unknown_not_wrong() {
        let budget = Budget {
            max_nodes: 2,
            ..Budget::default()
        };
        let v = derive(&pres("xyz = zxy"), &id("yxz = xzy"), budget);
        assert_ne!(v.status(), Status::Disproved);
    }

    fn regression_presentations() -> Vec<Presentation> {
        [
            "x = y",
            "xy = zu",
            "x^2 = x",
            "xy = yx",
            "xy = x",
            "xyz = zxy",
            "xyz = uvw",
            "",
        ]
        .iter()
        .map(|s| pres(s))
        .collect()
    }

    fn regression_goals() -> Vec<Identity> {
        [
            "xz = xy",
            "yxz = xzy",
            "xy = yx",
            "x = y",
            "xyz = zxy",
            "xyz = xzy",
            "xy = zu",
            "xyz = uvw",
            "x^2 = x",
            "xy = x",
            "xy = y",
            "xyx = x",
            "x^3 = x",
            "xyx = yxy",
        ]
        .iter()
        .map(|s| id(s))
        .collect()
    }

    #[test]
    fn derive_is_sound_for_order_three_models() {
        let small = catalog(3);
        for p in regression_presentations() {
            let models: Vec<_> = small
                .iter()
                .filter(|m| p.axioms().iter().all(|a| m.satisfies(a)))
                .collect();
            for goal in regression_goals() {
                let v = derive(&p, &goal, Budget::default());
                if v.status() == Status::Proved {
                    assert!(models.iter().all(|m| m.satisfies(&goal)), "{p} |- {goal}");
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn verdicts_never_conflict_across_budgets(
            p in 0usize..8,
            g in 0usize..14,
            nodes in 1usize..2_000,
            len in 3usize..8,
        ) {
            let p = &regression_presentations()[p];
            let goal = &regression_goals()[g];
            let small = Budget { max_nodes: nodes, max_word_len: len, max_subst_len: 2 };
            let a = decide(p, goal, small, 3).status();
            let b = decide(p, goal, Budget::default(), 4).status();
            prop_assert!(!(a == Status::Proved && b == Status::Disproved));
            prop_assert!(!(a == Status::Disproved && b == Status::Proved));
        }
    }
}
