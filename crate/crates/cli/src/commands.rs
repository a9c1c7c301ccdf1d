use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use hyperterm::bijection::{
    bij_certificate, enumerate_bijective, invert as invert_hyp, DEFAULT_BIJ_CAP,
};
use hyperterm::hyp::{enumerate_hypersubstitutions, parse_hypersubstitution, Hypersubstitution};
use hyperterm::rho::{apply_rho, RhoKind};
use hyperterm::signature::{parse_signature, Signature};
use hyperterm::term::{enumerate_terms_capped, parse_term, DEFAULT_TERM_CAP};
use hyperterm::variety::{
    check_bij2_fa_criteria, check_bij2_sa_criteria, check_rho_solidity, classify_gamma_solid,
    enumerate_finite_semigroups, gamma_goal, parse_identity, parse_presentation, term_to_word,
    Budget, CriteriaConclusion, CriteriaReport, Lab, SolidityReport, SolidityStatus, Status,
    Trigger, Verdict,
};
use serde::Serialize;

use crate::{BudgetArgs, VarietyQuery};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_UNKNOWN: u8 = 2;
pub const EXIT_INPUT: u8 = 3;

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            code: EXIT_OK,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_sig(path: Option<&Path>) -> Result<Signature> {
    match path {
        None => Ok(Signature::semigroup()),
        Some(p) => parse_signature(&read(p)?).with_context(|| format!("in {}", p.display())),
    }
}

fn load_hyp(path: &Path, sig: &Signature) -> Result<Hypersubstitution> {
    parse_hypersubstitution(&read(path)?, sig).with_context(|| format!("in {}", path.display()))
}

pub fn apply(sig: Option<&Path>, hyp: &Path, rho: &str, term: &str) -> Result<Output> {
    let sig = load_sig(sig)?;
    let sigma = load_hyp(hyp, &sig)?;
    let kind: RhoKind = rho.parse()?;
    let t = parse_term(term, &sig).context("in term")?;
    let image = apply_rho(kind, &sigma, &t);
    let mut text = format!("{}\n", image.display(&sig));
    if sig.is_semigroup() {
        writeln!(text, "word {}", term_to_word(&image, &sig)?)?;
    }
    Ok(Output::ok(text))
}

pub fn compose(sig: Option<&Path>, hyps: &[PathBuf]) -> Result<Output> {
    let sig = load_sig(sig)?;
    let mut acc = Hypersubstitution::identity(&sig);
    for path in hyps {
        acc = acc.compose(&load_hyp(path, &sig)?)?;
    }
    Ok(Output::ok(acc.display().to_string()))
}

#[derive(Serialize)]
struct CertificateJson {
    bijective: bool,
    h: Vec<String>,
    p: Vec<Vec<usize>>,
}

pub fn bij(sig: Option<&Path>, hyp: &Path, json: bool) -> Result<Output> {
    let sig = load_sig(sig)?;
    let sigma = load_hyp(hyp, &sig)?;
    let cert = bij_certificate(&sigma);
    let code = if cert.is_some() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    let text = if json {
        let body = match &cert {
            Some(c) => CertificateJson {
                bijective: true,
                h: c.h.iter().map(|&id| sig.name(id).to_string()).collect(),
                p: c.p
                    .iter()
                    .map(|p| p.images().iter().map(|k| k + 1).collect())
                    .collect(),
            },
            None => CertificateJson {
                bijective: false,
                h: Vec::new(),
                p: Vec::new(),
            },
        };
        format!("{}\n", serde_json::to_string(&body)?)
    } else {
        match &cert {
            Some(c) => format!("bijective\n{}", c.display(&sig)),
            None => "not bijective\n".to_string(),
        }
    };
    Ok(Output { text, code })
}

pub fn bij_enum(sig: Option<&Path>) -> Result<Output> {
    let sig = load_sig(sig)?;
    let all = enumerate_bijective(&sig, DEFAULT_BIJ_CAP)?;
    let mut text = String::new();
    for (i, sigma) in all.iter().enumerate() {
        let images: Vec<String> = sig
            .ids()
            .map(|id| format!("{} -> {}", sig.name(id), sigma.image(id).display(&sig)))
            .collect();
        writeln!(text, "σ{}: {}", i + 1, images.join("; "))?;
    }
    writeln!(text, "count {}", all.len())?;
    Ok(Output::ok(text))
}

pub fn invert(sig: Option<&Path>, hyp: &Path) -> Result<Output> {
    let sig = load_sig(sig)?;
    let sigma = load_hyp(hyp, &sig)?;
    match invert_hyp(&sigma) {
        Ok(inverse) => Ok(Output::ok(inverse.display().to_string())),
        Err(e) => Ok(Output {
            text: format!("{e}\n"),
            code: EXIT_NEGATIVE,
        }),
    }
}

pub fn enum_terms(sig: Option<&Path>, depth: usize, vars: usize, count: bool) -> Result<Output> {
    let sig = load_sig(sig)?;
    let terms = enumerate_terms_capped(&sig, depth, vars, DEFAULT_TERM_CAP)?;
    let mut text = String::new();
    if !count {
        for t in &terms {
            writeln!(text, "{}", t.display(&sig))?;
        }
    }
    writeln!(text, "count {}", terms.len())?;
    Ok(Output::ok(text))
}

pub fn enum_models(max_order: usize, count: bool) -> Result<Output> {
    let models = enumerate_finite_semigroups(max_order)?;
    let mut text = String::new();
    for order in 1..=max_order {
        let of_order: Vec<_> = models.iter().filter(|m| m.order() == order).collect();
        if !count {
            for m in &of_order {
                writeln!(text, "{m}")?;
            }
        }
        writeln!(text, "order {order}: {}", of_order.len())?;
    }
    Ok(Output::ok(text))
}

fn verdict_code(status: Status) -> u8 {
    match status {
        Status::Proved => EXIT_OK,
        Status::Disproved => EXIT_NEGATIVE,
        Status::Unknown => EXIT_UNKNOWN,
    }
}

fn solidity_code(status: SolidityStatus) -> u8 {
    match status {
        SolidityStatus::Supported => EXIT_OK,
        SolidityStatus::Violated => EXIT_NEGATIVE,
        SolidityStatus::Inconclusive => EXIT_UNKNOWN,
    }
}

fn criteria_code(conclusion: CriteriaConclusion) -> u8 {
    match conclusion {
        CriteriaConclusion::Supported => EXIT_OK,
        CriteriaConclusion::NotSupported => EXIT_NEGATIVE,
        CriteriaConclusion::Inconclusive => EXIT_UNKNOWN,
    }
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}

fn render_criteria(r: &CriteriaReport) -> Result<String> {
    let mut text = format!("{:?}\n", r.conclusion);
    write!(
        text,
        "condition (i): {}",
        indent(&r.condition_i.to_string()).trim_start()
    )?;
    match &r.trigger {
        Trigger::Found(id) => writeln!(text, "trigger: found {id}")?,
        Trigger::Absent => writeln!(
            text,
            "trigger: absent (every axiom preserves letter content)"
        )?,
        Trigger::Unsettled => writeln!(text, "trigger: unsettled")?,
    }
    let scanned: Vec<String> = r.scanned.iter().map(ToString::to_string).collect();
    writeln!(
        text,
        "scanned: {}",
        if scanned.is_empty() {
            "(none)".into()
        } else {
            scanned.join(", ")
        }
    )?;
    writeln!(text, "closure nodes: {}", r.closure_nodes)?;
    match &r.condition_ii {
        Some(v) => write!(
            text,
            "condition (ii): {}",
            indent(&v.to_string()).trim_start()
        )?,
        None => writeln!(text, "condition (ii): not triggered")?,
    }
    Ok(text)
}

fn render_solidity(kind: RhoKind, r: &SolidityReport) -> Result<String> {
    let mut text = format!("{:?}\n", r.status);
    writeln!(
        text,
        "mapping {kind}: {} bracketing pairs, {} identities decided",
        r.checked, r.decided
    )?;
    if r.partial_bracketings {
        writeln!(
            text,
            "sides longer than the bracketing cap used only the two combs"
        )?;
    }
    if let Some(v) = &r.violation {
        writeln!(text, "hypersubstitution: {}", v.hypersubstitution)?;
        writeln!(
            text,
            "source: {}  ({} vs {})",
            v.source, v.lhs_term, v.rhs_term
        )?;
        write!(text, "image: {} is {}", v.identity, v.verdict)?;
    }
    for id in &r.unknown {
        writeln!(text, "unknown: {id}")?;
    }
    let u = &r.budget_used;
    writeln!(
        text,
        "budget used: {} nodes, {} models (max order {})",
        u.nodes, u.models_checked, u.max_order
    )?;
    Ok(text)
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(format!("{}\n", serde_json::to_string(value)?))
}

fn verdict_output(v: &Verdict, as_json: bool, header: String) -> Result<Output> {
    let text = if as_json {
        json(v)?
    } else {
        format!("{header}{v}")
    };
    Ok(Output {
        text,
        code: verdict_code(v.status()),
    })
}

pub fn variety(
    pres: &Path,
    budget: &BudgetArgs,
    as_json: bool,
    query: &VarietyQuery,
) -> Result<Output> {
    if budget.budget_nodes == 0 || budget.max_word_len == 0 || budget.max_subst_len == 0 {
        bail!("budgets must be positive");
    }
    let presentation =
        parse_presentation(&read(pres)?).with_context(|| format!("in {}", pres.display()))?;
    let lab = Lab::new(
        presentation,
        Budget {
            max_word_len: budget.max_word_len,
            max_subst_len: budget.max_subst_len,
            max_nodes: budget.budget_nodes,
        },
        budget.max_order,
    );
    match query {
        VarietyQuery::Decide { identity } => {
            let goal = parse_identity(identity).context("in identity")?;
            verdict_output(&lab.decide(&goal), as_json, format!("goal {goal}\n"))
        }
        VarietyQuery::GammaSolid { n } => {
            let v = classify_gamma_solid(&lab, *n)?;
            verdict_output(&v, as_json, format!("gamma:{n} goal {}\n", gamma_goal(*n)))
        }
        VarietyQuery::SaCriteria | VarietyQuery::FaCriteria => {
            let r = match query {
                VarietyQuery::SaCriteria => check_bij2_sa_criteria(&lab),
                _ => check_bij2_fa_criteria(&lab),
            };
            let text = if as_json {
                json(&r)?
            } else {
                render_criteria(&r)?
            };
            Ok(Output {
                text,
                code: criteria_code(r.conclusion),
            })
        }
        VarietyQuery::RhoSolid {
            rho,
            hyps,
            image_depth,
        } => {
            let kind: RhoKind = rho.parse()?;
            let sig = Signature::semigroup();
            let hyps = if hyps.is_empty() {
                enumerate_hypersubstitutions(&sig, *image_depth, DEFAULT_TERM_CAP)?
            } else {
                hyps.iter()
                    .map(|p| load_hyp(p, &sig))
                    .collect::<Result<_>>()?
            };
            let r = check_rho_solidity(&lab, kind, &hyps, lab.presentation().axioms())?;
            let text = if as_json {
                json(&r)?
            } else {
                render_solidity(kind, &r)?
            };
            Ok(Output {
                text,
                code: solidity_code(r.status),
            })
        }
    }
}
