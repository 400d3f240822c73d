//! Independent re-validation of certificates.

use std::fmt;

use super::certificate::Certificate;
use super::rules::{apply, Evaluator, Fact};
use crate::engine::Budget;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    /// A step term or a conclusion term is not well formed.
    MalformedTerm,
    /// A premise index is missing or not earlier than its step.
    Premise,
    /// The rule does not apply to the step's terms and premises.
    SideCondition,
    /// The recorded bindings differ from the recomputed ones.
    Binding,
    /// The rule does not justify the recorded relation.
    Relation,
    /// The last step does not match the conclusion.
    Conclusion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckFailure {
    /// Offending step, or `None` for a problem with the conclusion.
    pub step: Option<usize>,
    pub kind: FailureKind,
    pub message: String,
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.step {
            Some(i) => write!(f, "step {i}: {:?}: {}", self.kind, self.message),
            None => write!(f, "conclusion: {:?}: {}", self.kind, self.message),
        }
    }
}

impl std::error::Error for CheckFailure {}

/// Checks `c` with the default budget for `R-EXACT` evaluations.
pub fn check_certificate(c: &Certificate) -> Result<(), CheckFailure> {
    check_certificate_with(c, &Budget::default())
}

pub fn check_certificate_with(c: &Certificate, budget: &Budget) -> Result<(), CheckFailure> {
    let fail = |step, kind, message: String| CheckFailure {
        step,
        kind,
        message,
    };
    let concl = &c.conclusion;
    for t in [&concl.lhs, &concl.rhs] {
        let report = t.validate();
        if !report.is_valid() {
            return Err(fail(None, FailureKind::MalformedTerm, report.to_string()));
        }
    }

    let mut evals = Evaluator::new(*budget);
    for (i, step) in c.steps.iter().enumerate() {
        for t in [&step.lhs, &step.rhs] {
            let report = t.validate();
            if !report.is_valid() {
                return Err(fail(
                    Some(i),
                    FailureKind::MalformedTerm,
                    report.to_string(),
                ));
            }
        }
        if let Some(&bad) = step.premises.iter().find(|&&p| p >= i) {
            return Err(fail(
                Some(i),
                FailureKind::Premise,
                format!("premise {bad} does not precede step {i}"),
            ));
        }
        let facts: Vec<Fact> = step.premises.iter().map(|&p| c.steps[p].fact()).collect();
        let (derived, bindings) = apply(step.rule, &step.lhs, &step.rhs, &facts, &mut evals)
            .map_err(|m| {
                fail(
                    Some(i),
                    FailureKind::SideCondition,
                    format!("{}: {m}", step.rule),
                )
            })?;
        if bindings != step.bindings {
            return Err(fail(
                Some(i),
                FailureKind::Binding,
                format!("{}: expected bindings {bindings:?}", step.rule),
            ));
        }
        if !derived.implies(step.relation) {
            return Err(fail(
                Some(i),
                FailureKind::Relation,
                format!("{} establishes {derived}, not {}", step.rule, step.relation),
            ));
        }
    }

    match c.steps.last() {
        None => {
            if concl.lhs == concl.rhs && crate::dominance::Rel::Eq.implies(concl.relation) {
                Ok(())
            } else {
                Err(fail(
                    None,
                    FailureKind::Conclusion,
                    "a certificate without steps can only conclude t = t".into(),
                ))
            }
        }
        Some(last) => {
            if last.lhs == concl.lhs && last.rhs == concl.rhs && last.relation == concl.relation {
                Ok(())
            } else {
                Err(fail(
                    None,
                    FailureKind::Conclusion,
                    "the final step does not state the conclusion".into(),
                ))
            }
        }
    }
}
