//! Small-step rewriting and budgeted exact evaluation.
//!
//! Rules, applied at the leftmost-innermost redex whose scrutinised positions
//! (arrow count, height, `f` argument) are literals:
//!
//! | rule | rewrite |
//! |------|---------|
//! | K1   | `a↑b → a^b` (contracted with exact arithmetic) |
//! | K2   | `a↑^k 1 → a` |
//! | K3   | `a↑^k 0 → 1` for k ≥ 2 |
//! | K4   | `a↑^k b → a↑^(k-1) (a↑^k (b-1))` for k, b ≥ 2 |
//! | F0   | `f_0(n) → n+1` |
//! | FS   | `f_(α+1)(n) → iter[α, n+1](n)` |
//! | FL   | `f_λ(n) → f_(λ[n])(n)` |
//! | I0   | `iter[α, 0](n) → n` |
//! | I+   | `iter[α, c](n) → f_α(iter[α, c-1](n))` |
//! | A1   | `A[1] → 10↑↑↑10` |
//! | A+   | `A[n+1] → 10 ↑^(A[n]) 10` |
//! | AO0  | `AO[0] → 10↑↑10` |
//! | AO+  | `AO[α+1] → 10 ↑^(AO[α]) 10` |
//!
//! `AO[λ]` for limit `λ` has no rule; it is stuck.

mod arith;
mod machine;

use std::fmt;

use crate::terms::{Nat, Term};
use machine::{Halt, Machine};

pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;
pub const DEFAULT_MAX_BITS: u64 = 1 << 20;

/// Limits for one evaluation: rewrite steps, and the bit length of any
/// natural produced along the way. The bit limit also caps the
/// [weight](crate::ordinals::Ordinal::weight) of ordinal indices produced by
/// the `FL` rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_steps: u64,
    pub max_bits: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("budget fields must be at least 1 (max_steps = {max_steps}, max_bits = {max_bits})")]
pub struct BudgetError {
    pub max_steps: u64,
    pub max_bits: u64,
}

impl Budget {
    pub fn new(max_steps: u64, max_bits: u64) -> Result<Budget, BudgetError> {
        if max_steps == 0 || max_bits == 0 {
            return Err(BudgetError {
                max_steps,
                max_bits,
            });
        }
        Ok(Budget {
            max_steps,
            max_bits,
        })
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_steps: DEFAULT_MAX_STEPS,
            max_bits: DEFAULT_MAX_BITS,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    K1,
    K2,
    K3,
    K4,
    F0,
    FS,
    FL,
    I0,
    ISucc,
    A1,
    ASucc,
    AO0,
    AOSucc,
}

impl Rule {
    pub const ALL: [Rule; 13] = [
        Rule::K1,
        Rule::K2,
        Rule::K3,
        Rule::K4,
        Rule::F0,
        Rule::FS,
        Rule::FL,
        Rule::I0,
        Rule::ISucc,
        Rule::A1,
        Rule::ASucc,
        Rule::AO0,
        Rule::AOSucc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::K1 => "K1",
            Rule::K2 => "K2",
            Rule::K3 => "K3",
            Rule::K4 => "K4",
            Rule::F0 => "F0",
            Rule::FS => "FS",
            Rule::FL => "FL",
            Rule::I0 => "I0",
            Rule::ISucc => "I+",
            Rule::A1 => "A1",
            Rule::ASucc => "A+",
            Rule::AO0 => "AO0",
            Rule::AOSucc => "AO+",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OverflowReason {
    StepLimit,
    MagnitudeLimit,
    /// Evaluating a non-literal arrow count ran out of budget.
    SymbolicArrowCount,
}

/// Why no rule applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StuckReason {
    /// `AO[λ]` for a limit ordinal `λ`.
    SymbolicLimit,
    /// An arrow count evaluated to zero.
    ZeroArrowCount,
    /// `A[0]`.
    InvalidAurellionIndex,
    /// The next contraction would exceed the bit cap.
    MagnitudeLimit,
}

macro_rules! reason_names {
    ($ty:ty { $($variant:ident),* }) => {
        impl $ty {
            pub fn name(self) -> &'static str {
                match self { $(Self::$variant => stringify!($variant)),* }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
    };
}

reason_names!(OverflowReason {
    StepLimit,
    MagnitudeLimit,
    SymbolicArrowCount
});
reason_names!(StuckReason {
    SymbolicLimit,
    ZeroArrowCount,
    InvalidAurellionIndex,
    MagnitudeLimit
});

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepResult {
    Rewritten { term: Term, rule: Rule },
    AlreadyValue,
    Stuck(StuckReason),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalOutcome {
    Exact(Nat),
    /// The budget ran out; `residual` is the term reached after `steps_used` rewrites.
    Overflow {
        residual: Term,
        reason: OverflowReason,
        steps_used: u64,
    },
    /// A term no rule applies to was reached.
    Stuck {
        residual: Term,
        reason: StuckReason,
        steps_used: u64,
    },
}

impl EvalOutcome {
    pub fn exact(&self) -> Option<&Nat> {
        match self {
            EvalOutcome::Exact(n) => Some(n),
            _ => None,
        }
    }

    pub fn steps_used(&self) -> Option<u64> {
        match self {
            EvalOutcome::Exact(_) => None,
            EvalOutcome::Overflow { steps_used, .. } | EvalOutcome::Stuck { steps_used, .. } => {
                Some(*steps_used)
            }
        }
    }
}

/// One rewrite with the default bit cap.
pub fn step(t: &Term) -> StepResult {
    step_with(t, &Budget::default())
}

pub fn step_with(t: &Term, budget: &Budget) -> StepResult {
    if t.is_lit() {
        return StepResult::AlreadyValue;
    }
    let single = Budget {
        max_steps: 1,
        ..*budget
    };
    let mut machine = Machine::new(t, &single);
    let mut fired = None;
    let halt = machine.run(Some(1), &mut |rule, _| fired = Some(rule));
    if let Some(rule) = fired {
        return StepResult::Rewritten {
            term: machine.current_term(),
            rule,
        };
    }
    match halt {
        Halt::Stuck(reason) => StepResult::Stuck(reason),
        Halt::Overflow { .. } => StepResult::Stuck(StuckReason::MagnitudeLimit),
        Halt::Value(_) | Halt::Paused => {
            unreachable!("a non-literal needs a rule to become a value")
        }
    }
}

/// Evaluates `t` to a natural under `budget`.
///
/// Deterministic in `(t, budget)`. Each rule costs one step; overflow while
/// an arrow count is being evaluated reports [`OverflowReason::SymbolicArrowCount`].
pub fn eval(t: &Term, budget: &Budget) -> EvalOutcome {
    let mut machine = Machine::new(t, budget);
    let halt = machine.run(None, &mut |_, _| {});
    let steps_used = machine.steps();
    match halt {
        Halt::Value(n) => EvalOutcome::Exact(n),
        Halt::Overflow {
            reason,
            in_arrow_count,
        } => EvalOutcome::Overflow {
            residual: machine.current_term(),
            reason: if in_arrow_count {
                OverflowReason::SymbolicArrowCount
            } else {
                reason
            },
            steps_used,
        },
        Halt::Stuck(reason) => EvalOutcome::Stuck {
            residual: machine.current_term(),
            reason,
            steps_used,
        },
        Halt::Paused => unreachable!("eval never pauses"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub rule: Rule,
    pub term: Term,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceEnd {
    Value(Nat),
    Stuck(StuckReason),
    MagnitudeLimit,
    /// The step limit was reached first.
    Truncated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub entries: Vec<TraceEntry>,
    pub end: TraceEnd,
}

impl Trace {
    /// `#i [rule] term` lines, numbered from 1.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, e) in self.entries.iter().enumerate() {
            out.push_str(&format!("#{} [{}] {}\n", i + 1, e.rule, e.term));
        }
        out
    }
}

/// The first `max_steps` rewrites from `t`, with the default bit cap.
pub fn trace(t: &Term, max_steps: u64) -> Trace {
    trace_with(
        t,
        &Budget {
            max_steps,
            ..Budget::default()
        },
    )
}

pub fn trace_with(t: &Term, budget: &Budget) -> Trace {
    let mut machine = Machine::new(t, budget);
    let mut entries = Vec::new();
    let halt = machine.run(None, &mut |rule, m| {
        entries.push(TraceEntry {
            rule,
            term: m.current_term(),
        })
    });
    let end = match halt {
        Halt::Value(n) => TraceEnd::Value(n),
        Halt::Stuck(r) => TraceEnd::Stuck(r),
        Halt::Overflow {
            reason: OverflowReason::StepLimit,
            ..
        } => TraceEnd::Truncated,
        Halt::Overflow { .. } => TraceEnd::MagnitudeLimit,
        Halt::Paused => unreachable!("trace never pauses"),
    };
    Trace { entries, end }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_term;
    use crate::ordinals::Ordinal;

    fn a(b: u64, k: u64, h: u64) -> Term {
        Term::arrow(Term::lit(b), Term::lit(k), Term::lit(h))
    }

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn exact(s: &str) -> Nat {
        match eval(&p(s), &Budget::default()) {
            EvalOutcome::Exact(n) => n,
            other => panic!("{s}: {other:?}"),
        }
    }

    #[test]
    fn step_k4() {
        let r = step(&a(3, 2, 3));
        assert_eq!(
            r,
            StepResult::Rewritten {
                term: Term::arrow(Term::lit(3u32), Term::lit(1u32), a(3, 2, 2)),
                rule: Rule::K4
            }
        );
    }

    #[test]
    fn step_k2_and_k3() {
        assert_eq!(
            step(&a(7, 4, 1)),
            StepResult::Rewritten {
                term: Term::lit(7u32),
                rule: Rule::K2
            }
        );
        assert_eq!(
            step(&a(7, 4, 0)),
            StepResult::Rewritten {
                term: Term::lit(1u32),
                rule: Rule::K3
            }
        );
    }

    #[test]
    fn step_unfolds_aurellion() {
        assert_eq!(
            step(&Term::aur(2u32)),
            StepResult::Rewritten {
                term: Term::arrow(Term::lit(10u32), Term::aur(1u32), Term::lit(10u32)),
                rule: Rule::ASucc
            }
        );
        assert_eq!(
            step(&Term::aur_ord(Ordinal::zero())),
            StepResult::Rewritten {
                term: a(10, 2, 10),
                rule: Rule::AO0
            }
        );
    }

    #[test]
    fn step_on_values_and_stuck_terms() {
        assert_eq!(step(&Term::lit(4u32)), StepResult::AlreadyValue);
        assert_eq!(
            step(&Term::aur_ord(Ordinal::omega())),
            StepResult::Stuck(StuckReason::SymbolicLimit)
        );
        assert_eq!(
            step(&p("2^[0^1]3")),
            StepResult::Rewritten {
                term: Term::arrow(Term::lit(2u32), Term::lit(0u32), Term::lit(3u32)),
                rule: Rule::K1
            }
        );
        assert_eq!(
            step(&Term::arrow(
                Term::lit(2u32),
                Term::lit(0u32),
                Term::lit(3u32)
            )),
            StepResult::Stuck(StuckReason::ZeroArrowCount)
        );
    }

    #[test]
    fn eval_examples() {
        assert_eq!(exact("5^[7]0"), Nat::from(1u32));
        assert_eq!(exact("2^^^3"), Nat::from(65536u32));
        assert_eq!(exact("3^^3"), Nat::from(7_625_597_484_987u64));
        assert_eq!(exact("2^2^3"), Nat::from(256u32));
    }

    #[test]
    fn ten_triple_arrow_ten_overflows_on_magnitude() {
        match eval(&p("10^^^10"), &Budget::default()) {
            EvalOutcome::Overflow { reason, .. } => {
                assert_eq!(reason, OverflowReason::MagnitudeLimit)
            }
            other => panic!("{other:?}"),
        }
        match eval(&Term::aur(1u32), &Budget::default()) {
            EvalOutcome::Overflow { reason, .. } => {
                assert_eq!(reason, OverflowReason::MagnitudeLimit)
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn symbolic_arrow_count_overflow() {
        match eval(&Term::aur(2u32), &Budget::default()) {
            EvalOutcome::Overflow {
                reason, residual, ..
            } => {
                assert_eq!(reason, OverflowReason::SymbolicArrowCount);
                assert!(residual.validate().is_valid());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn step_limit_residual_is_reachable() {
        let budget = Budget::new(4, DEFAULT_MAX_BITS).unwrap();
        let t = a(3, 2, 3);
        let out = eval(&t, &budget);
        let EvalOutcome::Overflow {
            residual,
            reason,
            steps_used,
        } = out
        else {
            panic!("expected overflow")
        };
        assert_eq!(reason, OverflowReason::StepLimit);
        assert_eq!(steps_used, 4);
        let mut cur = t;
        for _ in 0..4 {
            match step(&cur) {
                StepResult::Rewritten { term, .. } => cur = term,
                other => panic!("{other:?}"),
            }
        }
        assert_eq!(cur, residual);
    }

    #[test]
    fn fgh_small_values() {
        assert_eq!(exact("f[0](7)"), Nat::from(8u32));
        assert_eq!(exact("f[1](5)"), Nat::from(11u32));
        assert_eq!(exact("f[2](2)"), Nat::from(23u32));
        assert_eq!(exact("f[3](1)"), Nat::from(2047u32));
        // f_ω(2) = f_2(2)
        assert_eq!(exact("f[w](2)"), Nat::from(23u32));
        assert_eq!(exact("iter[1,2](1)"), Nat::from(7u32));
    }

    #[test]
    fn stuck_outcomes() {
        match eval(&p("10^[AO[w]]10"), &Budget::default()) {
            EvalOutcome::Stuck {
                reason, residual, ..
            } => {
                assert_eq!(reason, StuckReason::SymbolicLimit);
                assert_eq!(residual, p("10^[AO[w]]10"));
            }
            other => panic!("{other:?}"),
        }
        // the count 2^0 evaluates to 1 before the outer node fires
        assert_eq!(exact("3^[2^0]3"), Nat::from(27u32));
    }

    #[test]
    fn trace_examples() {
        let t = trace(&a(2, 2, 2), 10);
        assert_eq!(t.entries.last().unwrap().term, Term::lit(4u32));
        assert_eq!(t.end, TraceEnd::Value(Nat::from(4u32)));

        let t = trace(&p("f[1](5)"), 50);
        assert_eq!(t.entries.last().unwrap().term, Term::lit(11u32));

        let t = trace(&Term::aur(1u32), 1);
        assert_eq!(
            t.entries,
            vec![TraceEntry {
                rule: Rule::A1,
                term: a(10, 3, 10)
            }]
        );
        assert_eq!(t.end, TraceEnd::Truncated);
        assert_eq!(t.to_text(), "#1 [A1] 10^^^10\n");
    }

    #[test]
    fn budget_rejects_zero() {
        assert!(Budget::new(0, 1).is_err());
        assert!(Budget::new(1, 0).is_err());
        assert_eq!(Budget::default().max_bits, 1 << 20);
    }

    #[test]
    fn oversized_input_literal_is_a_magnitude_overflow() {
        let budget = Budget::new(10, 8).unwrap();
        match eval(&Term::lit(1000u32), &budget) {
            EvalOutcome::Overflow {
                reason, steps_used, ..
            } => {
                assert_eq!(reason, OverflowReason::MagnitudeLimit);
                assert_eq!(steps_used, 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn very_long_k4_chain_stays_off_the_stack() {
        let budget = Budget::new(300_000, DEFAULT_MAX_BITS).unwrap();
        let out = eval(&a(1, 2, 1_000_000), &budget);
        let EvalOutcome::Overflow { residual, .. } = out else {
            panic!("expected overflow")
        };
        assert!(residual.measure().depth > 100_000);
        let text = residual.to_string();
        assert!(text.starts_with("1^1^1^"));
        let _ = serde_json::to_string(&residual).unwrap();
    }
}
