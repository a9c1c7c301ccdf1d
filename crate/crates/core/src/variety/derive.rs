//! Bounded breadth-first rewriting with the axioms of a presentation.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::verdict::{Derivation, Exhaustion, Step};
use super::word::{Identity, Word};

/// Rewrite candidates a search may build per allowed node, on average.
pub const CANDIDATES_PER_NODE: usize = 64;

/// Limits for [`super::Lab::derive`].
///
/// The search also stops after building `max_nodes * CANDIDATES_PER_NODE` candidate
/// words, which bounds the work spent on axioms with many unbound variables; hitting
/// either limit is reported as `node_limit_hit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// No intermediate word may be longer.
    pub max_word_len: usize,
    /// Longest word substituted for a single axiom variable.
    pub max_subst_len: usize,
    /// Distinct words visited before giving up.
    pub max_nodes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_word_len: 8,
            max_subst_len: 3,
            max_nodes: 200_000,
        }
    }
}

/// An axiom with a chosen orientation.
struct Rule {
    axiom: usize,
    reversed: bool,
    lhs: Vec<u32>,
    rhs: Vec<u32>,
    /// Variables of `rhs` that do not occur in `lhs`, each with its multiplicity in `rhs`.
    unbound: Vec<(u32, usize)>,
    max_var: usize,
}

fn rules(axioms: &[Identity]) -> Vec<Rule> {
    let mut out = Vec::new();
    for (i, a) in axioms.iter().enumerate() {
        if a.is_trivial() {
            continue;
        }
        for reversed in [false, true] {
            let (l, r) = if reversed {
                (&a.rhs, &a.lhs)
            } else {
                (&a.lhs, &a.rhs)
            };
            let bound = l.varset();
            let unbound = r
                .varset()
                .into_iter()
                .filter(|v| !bound.contains(v))
                .map(|v| (v, r.letters().iter().filter(|&&x| x == v).count()))
                .collect();
            out.push(Rule {
                axiom: i,
                reversed,
                lhs: l.letters().to_vec(),
                rhs: r.letters().to_vec(),
                unbound,
                max_var: a.variables().last().copied().unwrap_or(0) as usize,
            });
        }
    }
    out
}

pub(crate) struct SearchResult {
    pub found: Option<Derivation>,
    pub nodes: usize,
    pub exhaustion: Exhaustion,
}

struct Node {
    word: Word,
    parent: usize,
    step: Option<(usize, bool, usize)>,
}

struct Searcher<'a, F> {
    rules: &'a [Rule],
    budget: Budget,
    /// Candidate instantiations for unbound variables, shortest first.
    fresh: Vec<Vec<u32>>,
    nodes: Vec<Node>,
    seen: HashSet<Word>,
    is_target: F,
    found: Option<usize>,
    stop: bool,
    exhaustion: Exhaustion,
    buf: Vec<u32>,
    /// Rewrites already emitted from the node being expanded.
    emitted: HashSet<EmitKey>,
    candidates_left: usize,
}

/// Breadth-first search from `start` for a word satisfying `is_target`.
///
/// A single step replaces a factor matching one side of an axiom (variables bound to
/// consecutive blocks of at most `max_subst_len` letters) by the other side. Variables
/// that occur only on the replacement side range over words of at most `max_subst_len`
/// letters from `alphabet`.
pub(crate) fn search(
    axioms: &[Identity],
    start: &Word,
    budget: Budget,
    alphabet: &[u32],
    is_target: impl FnMut(&[u32]) -> bool,
) -> SearchResult {
    let rules = rules(axioms);
    let mut searcher = Searcher {
        rules: &rules,
        budget,
        fresh: fresh_words(alphabet, budget.max_subst_len),
        nodes: vec![Node {
            word: start.clone(),
            parent: 0,
            step: None,
        }],
        seen: HashSet::from([start.clone()]),
        is_target,
        found: None,
        stop: false,
        exhaustion: Exhaustion::default(),
        buf: Vec::new(),
        emitted: HashSet::new(),
        candidates_left: budget.max_nodes.saturating_mul(CANDIDATES_PER_NODE),
    };
    if (searcher.is_target)(start.letters()) {
        searcher.found = Some(0);
    } else if budget.max_nodes <= 1 {
        searcher.exhaustion.node_limit_hit = true;
    } else {
        let mut cursor = 0;
        while cursor < searcher.nodes.len() && !searcher.stop {
            searcher.expand(cursor);
            cursor += 1;
        }
    }
    let found = searcher.found.map(|i| searcher.trace(i));
    SearchResult {
        found,
        nodes: searcher.nodes.len(),
        exhaustion: searcher.exhaustion,
    }
}

fn fresh_words(alphabet: &[u32], max_len: usize) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = Vec::new();
    let mut layer: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |&v| {
                    let mut next = w.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

type Bindings = Vec<Option<(usize, usize)>>;

/// Rule index, factor start and end, and the spans bound to the replacement's variables.
type EmitKey = (usize, usize, usize, Vec<(usize, usize)>);

impl<F: FnMut(&[u32]) -> bool> Searcher<'_, F> {
    fn expand(&mut self, index: usize) {
        let subject = self.nodes[index].word.clone();
        let subject = subject.letters();
        let rules = self.rules;
        self.emitted.clear();
        for (r, rule) in rules.iter().enumerate() {
            let mut bind: Bindings = vec![None; rule.max_var + 1];
            for start in 0..subject.len() {
                if self.stop {
                    return;
                }
                self.match_from(r, 0, subject, start, start, &mut bind, index);
            }
        }
    }

    /// Matches `rule.lhs[k..]` against `subject[pos..]`, emitting each complete match.
    #[allow(clippy::too_many_arguments)]
    fn match_from(
        &mut self,
        r: usize,
        k: usize,
        subject: &[u32],
        start: usize,
        pos: usize,
        bind: &mut Bindings,
        parent: usize,
    ) {
        if self.stop {
            return;
        }
        let rule = &self.rules[r];
        if k == rule.lhs.len() {
            self.emit(r, subject, start, pos, bind, parent);
            return;
        }
        let v = rule.lhs[k] as usize;
        let remaining = rule.lhs.len() - k - 1;
        if let Some((s, e)) = bind[v] {
            let len = e - s;
            if pos + len <= subject.len() && subject[pos..pos + len] == subject[s..e] {
                self.match_from(r, k + 1, subject, start, pos + len, bind, parent);
            }
            return;
        }
        for len in 1..=self.budget.max_subst_len {
            if pos + len + remaining > subject.len() {
                break;
            }
            bind[v] = Some((pos, pos + len));
            self.match_from(r, k + 1, subject, start, pos + len, bind, parent);
        }
        bind[v] = None;
    }

    fn emit(
        &mut self,
        r: usize,
        subject: &[u32],
        start: usize,
        end: usize,
        bind: &Bindings,
        parent: usize,
    ) {
        let rule = &self.rules[r];
        let spans = rule.rhs.iter().filter_map(|&v| bind[v as usize]).collect();
        if !self.emitted.insert((r, start, end, spans)) {
            return;
        }
        let fixed: usize = subject.len() - (end - start)
            + rule
                .rhs
                .iter()
                .filter_map(|&v| bind[v as usize].map(|(s, e)| e - s))
                .sum::<usize>();
        let mut choice = vec![0usize; rule.unbound.len()];
        self.assign(r, 0, fixed, &mut choice, subject, start, end, bind, parent);
    }

    #[allow(clippy::too_many_arguments)]
    fn assign(
        &mut self,
        r: usize,
        k: usize,
        len_so_far: usize,
        choice: &mut Vec<usize>,
        subject: &[u32],
        start: usize,
        end: usize,
        bind: &Bindings,
        parent: usize,
    ) {
        if self.stop {
            return;
        }
        let rules = self.rules;
        let rule = &rules[r];
        if k == rule.unbound.len() {
            if len_so_far > self.budget.max_word_len {
                self.exhaustion.length_limit_hit = true;
                return;
            }
            self.buf.clear();
            self.buf.extend_from_slice(&subject[..start]);
            for &v in &rule.rhs {
                match bind[v as usize] {
                    Some((s, e)) => self.buf.extend_from_slice(&subject[s..e]),
                    None => {
                        let slot = rule
                            .unbound
                            .iter()
                            .position(|&(u, _)| u == v)
                            .expect("unbound");
                        self.buf.extend_from_slice(&self.fresh[choice[slot]]);
                    }
                }
            }
            self.buf.extend_from_slice(&subject[end..]);
            self.offer(parent, rule.axiom, rule.reversed, start);
            return;
        }
        let multiplicity = rule.unbound[k].1;
        for i in 0..self.fresh.len() {
            let len = len_so_far + multiplicity * self.fresh[i].len();
            if len > self.budget.max_word_len {
                self.exhaustion.length_limit_hit = true;
                break;
            }
            choice[k] = i;
            self.assign(r, k + 1, len, choice, subject, start, end, bind, parent);
            if self.stop {
                return;
            }
        }
    }

    fn offer(&mut self, parent: usize, axiom: usize, reversed: bool, position: usize) {
        if self.candidates_left == 0 {
            self.exhaustion.node_limit_hit = true;
            self.stop = true;
            return;
        }
        self.candidates_left -= 1;
        if self.seen.contains(self.buf.as_slice()) {
            return;
        }
        let word = Word::from_letters_unchecked(self.buf.clone());
        self.seen.insert(word.clone());
        let hit = (self.is_target)(&self.buf);
        self.nodes.push(Node {
            word,
            parent,
            step: Some((axiom, reversed, position)),
        });
        if hit {
            self.found = Some(self.nodes.len() - 1);
            self.stop = true;
        } else if self.nodes.len() >= self.budget.max_nodes {
            self.exhaustion.node_limit_hit = true;
            self.stop = true;
        }
    }

    fn trace(&self, mut index: usize) -> Derivation {
        let mut steps = Vec::new();
        while let Some((axiom, reversed, position)) = self.nodes[index].step {
            steps.push(Step {
                axiom,
                reversed,
                position,
                result: self.nodes[index].word.clone(),
            });
            index = self.nodes[index].parent;
        }
        steps.reverse();
        Derivation {
            start: self.nodes[index].word.clone(),
            steps,
        }
    }
}
