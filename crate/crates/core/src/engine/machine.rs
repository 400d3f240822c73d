//! Abstract machine behind `step`, `eval` and `trace`.
//!
//! The machine holds the term as a focus plus a stack of evaluation
//! contexts, so one rewrite costs O(1) regardless of how deep the current
//! term is. [`Machine::current_term`] rebuilds the tree the rewriting
//! semantics talks about.
//!
//! Strategy: children are evaluated left to right (base, arrows, height; the
//! argument of `f` and `iter`), and a rule fires at a node once its
//! scrutinised children are literals. This is leftmost-innermost.

use std::sync::Arc;

use num_traits::{One, Zero};

use super::arith::bounded_pow;
use super::{Budget, OverflowReason, Rule, StuckReason};
use crate::ordinals::{Ordinal, OrdinalClass};
use crate::terms::{Nat, Term};

enum Frame {
    ArrowBase {
        arrows: Arc<Term>,
        height: Arc<Term>,
    },
    ArrowArrows {
        base: Arc<Term>,
        height: Arc<Term>,
    },
    ArrowHeight {
        base: Arc<Term>,
        arrows: Arc<Term>,
    },
    FghArg {
        index: Ordinal,
    },
    IterArg {
        index: Ordinal,
        count: Nat,
    },
}

impl Frame {
    fn wrap(&self, hole: Arc<Term>) -> Term {
        match self {
            Frame::ArrowBase { arrows, height } => Term::Arrow {
                base: hole,
                arrows: arrows.clone(),
                height: height.clone(),
            },
            Frame::ArrowArrows { base, height } => Term::Arrow {
                base: base.clone(),
                arrows: hole,
                height: height.clone(),
            },
            Frame::ArrowHeight { base, arrows } => Term::Arrow {
                base: base.clone(),
                arrows: arrows.clone(),
                height: hole,
            },
            Frame::FghArg { index } => Term::Fgh {
                index: index.clone(),
                arg: hole,
            },
            Frame::IterArg { index, count } => Term::Iter {
                index: index.clone(),
                count: count.clone(),
                arg: hole,
            },
        }
    }
}

enum Focus {
    /// A subterm still to be taken apart.
    Eval(Arc<Term>),
    /// A literal being returned to the innermost frame.
    Value(Arc<Term>),
}

pub(crate) enum Halt {
    Value(Nat),
    Overflow {
        reason: OverflowReason,
        in_arrow_count: bool,
    },
    Stuck(StuckReason),
    /// The caller's pause point was reached before the next rule.
    Paused,
}

pub(crate) struct Machine<'b> {
    budget: &'b Budget,
    frames: Vec<Frame>,
    focus: Focus,
    steps: u64,
    /// Number of `ArrowArrows` frames on the stack.
    arrow_ctx: usize,
}

fn nat_of(t: &Arc<Term>) -> &Nat {
    t.as_lit().expect("machine values are literals")
}

fn lit(n: Nat) -> Arc<Term> {
    Arc::new(Term::Lit(n))
}

fn ten() -> Term {
    Term::lit(10u32)
}

impl<'b> Machine<'b> {
    pub(crate) fn new(t: &Term, budget: &'b Budget) -> Machine<'b> {
        Machine {
            budget,
            frames: Vec::new(),
            focus: Focus::Eval(Arc::new(t.clone())),
            steps: 0,
            arrow_ctx: 0,
        }
    }

    pub(crate) fn steps(&self) -> u64 {
        self.steps
    }

    pub(crate) fn current_term(&self) -> Term {
        let mut acc = match &self.focus {
            Focus::Eval(t) | Focus::Value(t) => t.clone(),
        };
        for frame in self.frames.iter().rev() {
            acc = Arc::new(frame.wrap(acc));
        }
        Arc::try_unwrap(acc).unwrap_or_else(|shared| (*shared).clone())
    }

    fn fits(&self, n: &Nat) -> bool {
        n.bits() <= self.budget.max_bits
    }

    fn overflow(&self, reason: OverflowReason) -> Halt {
        Halt::Overflow {
            reason,
            in_arrow_count: self.arrow_ctx > 0,
        }
    }

    /// Checks the pause point and the step budget before a rule fires.
    fn gate(&self, pause_at: Option<u64>) -> Result<(), Halt> {
        if pause_at == Some(self.steps) {
            return Err(Halt::Paused);
        }
        if self.steps >= self.budget.max_steps {
            return Err(self.overflow(OverflowReason::StepLimit));
        }
        Ok(())
    }

    fn fire(&mut self, rule: Rule, focus: Focus, observe: &mut dyn FnMut(Rule, &Machine)) {
        self.focus = focus;
        self.steps += 1;
        observe(rule, self);
    }

    pub(crate) fn run(
        &mut self,
        pause_at: Option<u64>,
        observe: &mut dyn FnMut(Rule, &Machine),
    ) -> Halt {
        match self.run_inner(pause_at, observe) {
            Ok(never) => match never {},
            Err(halt) => halt,
        }
    }

    fn run_inner(
        &mut self,
        pause_at: Option<u64>,
        observe: &mut dyn FnMut(Rule, &Machine),
    ) -> Result<std::convert::Infallible, Halt> {
        loop {
            match &self.focus {
                Focus::Eval(t) => {
                    let t = t.clone();
                    self.descend(&t, pause_at, observe)?;
                }
                Focus::Value(v) => {
                    let v = v.clone();
                    self.ascend(v, pause_at, observe)?;
                }
            }
        }
    }

    fn descend(
        &mut self,
        t: &Arc<Term>,
        pause_at: Option<u64>,
        observe: &mut dyn FnMut(Rule, &Machine),
    ) -> Result<(), Halt> {
        match &**t {
            Term::Lit(n) => {
                if !self.fits(n) {
                    return Err(self.overflow(OverflowReason::MagnitudeLimit));
                }
                self.focus = Focus::Value(t.clone());
            }
            Term::Arrow {
                base,
                arrows,
                height,
            } => {
                self.frames.push(Frame::ArrowBase {
                    arrows: arrows.clone(),
                    height: height.clone(),
                });
                self.focus = Focus::Eval(base.clone());
            }
            Term::Fgh { index, arg } => {
                self.frames.push(Frame::FghArg {
                    index: index.clone(),
                });
                self.focus = Focus::Eval(arg.clone());
            }
            Term::Iter { index, count, arg } => {
                self.frames.push(Frame::IterArg {
                    index: index.clone(),
                    count: count.clone(),
                });
                self.focus = Focus::Eval(arg.clone());
            }
            Term::Aur(n) => {
                if n.is_zero() {
                    return Err(Halt::Stuck(StuckReason::InvalidAurellionIndex));
                }
                self.gate(pause_at)?;
                let (rule, next) = if n.is_one() {
                    (Rule::A1, Term::arrow(ten(), Term::lit(3u32), ten()))
                } else {
                    (Rule::ASucc, Term::arrow(ten(), Term::Aur(n - 1u32), ten()))
                };
                self.fire(rule, Focus::Eval(Arc::new(next)), observe);
            }
            Term::AurOrd(alpha) => {
                let (rule, next) = match alpha.classify() {
                    OrdinalClass::Zero => (Rule::AO0, Term::arrow(ten(), Term::lit(2u32), ten())),
                    OrdinalClass::Successor(pred) => {
                        (Rule::AOSucc, Term::arrow(ten(), Term::AurOrd(pred), ten()))
                    }
                    OrdinalClass::Limit => return Err(Halt::Stuck(StuckReason::SymbolicLimit)),
                };
                self.gate(pause_at)?;
                self.fire(rule, Focus::Eval(Arc::new(next)), observe);
            }
        }
        Ok(())
    }

    fn ascend(
        &mut self,
        v: Arc<Term>,
        pause_at: Option<u64>,
        observe: &mut dyn FnMut(Rule, &Machine),
    ) -> Result<(), Halt> {
        let Some(frame) = self.frames.last() else {
            return Err(Halt::Value(nat_of(&v).clone()));
        };
        match frame {
            Frame::ArrowBase { arrows, height } => {
                let (arrows, height) = (arrows.clone(), height.clone());
                self.frames.pop();
                self.frames.push(Frame::ArrowArrows { base: v, height });
                self.arrow_ctx += 1;
                self.focus = Focus::Eval(arrows);
            }
            Frame::ArrowArrows { base, height } => {
                if nat_of(&v).is_zero() {
                    return Err(Halt::Stuck(StuckReason::ZeroArrowCount));
                }
                let (base, height) = (base.clone(), height.clone());
                self.frames.pop();
                self.arrow_ctx -= 1;
                self.frames.push(Frame::ArrowHeight { base, arrows: v });
                self.focus = Focus::Eval(height);
            }
            Frame::ArrowHeight { base, arrows } => {
                let (base, arrows) = (base.clone(), arrows.clone());
                self.gate(pause_at)?;
                let (a, k, b) = (nat_of(&base), nat_of(&arrows), nat_of(&v));
                if k.is_one() {
                    let Some(r) = bounded_pow(a, b, self.budget.max_bits) else {
                        return Err(self.overflow(OverflowReason::MagnitudeLimit));
                    };
                    self.frames.pop();
                    self.fire(Rule::K1, Focus::Value(lit(r)), observe);
                } else if b.is_one() {
                    self.frames.pop();
                    self.fire(Rule::K2, Focus::Value(base), observe);
                } else if b.is_zero() {
                    self.frames.pop();
                    self.fire(Rule::K3, Focus::Value(lit(Nat::one())), observe);
                } else {
                    // a↑^k b  →  a↑^(k-1) (a↑^k (b-1)); the inner node is the next redex
                    let lowered = lit(k - 1u32);
                    let shorter = lit(b - 1u32);
                    *self.frames.last_mut().expect("frame present") = Frame::ArrowHeight {
                        base: base.clone(),
                        arrows: lowered,
                    };
                    self.frames.push(Frame::ArrowHeight { base, arrows });
                    self.fire(Rule::K4, Focus::Value(shorter), observe);
                }
            }
            Frame::FghArg { index } => {
                let index = index.clone();
                self.gate(pause_at)?;
                let n = nat_of(&v);
                match index.classify() {
                    OrdinalClass::Zero => {
                        let r = n + 1u32;
                        if !self.fits(&r) {
                            return Err(self.overflow(OverflowReason::MagnitudeLimit));
                        }
                        self.frames.pop();
                        self.fire(Rule::F0, Focus::Value(lit(r)), observe);
                    }
                    OrdinalClass::Successor(pred) => {
                        let count = n + 1u32;
                        if !self.fits(&count) {
                            return Err(self.overflow(OverflowReason::MagnitudeLimit));
                        }
                        *self.frames.last_mut().expect("frame present") =
                            Frame::IterArg { index: pred, count };
                        self.fire(Rule::FS, Focus::Value(v), observe);
                    }
                    OrdinalClass::Limit => {
                        let next = index.fundamental(n).expect("classified as limit");
                        if next.weight() > self.budget.max_bits {
                            return Err(self.overflow(OverflowReason::MagnitudeLimit));
                        }
                        *self.frames.last_mut().expect("frame present") =
                            Frame::FghArg { index: next };
                        self.fire(Rule::FL, Focus::Value(v), observe);
                    }
                }
            }
            Frame::IterArg { index, count } => {
                let (index, count) = (index.clone(), count.clone());
                self.gate(pause_at)?;
                if count.is_zero() {
                    self.frames.pop();
                    self.fire(Rule::I0, Focus::Value(v), observe);
                } else {
                    *self.frames.last_mut().expect("frame present") = Frame::FghArg {
                        index: index.clone(),
                    };
                    self.frames.push(Frame::IterArg {
                        index,
                        count: count - 1u32,
                    });
                    self.fire(Rule::ISucc, Focus::Value(v), observe);
                }
            }
        }
        Ok(())
    }
}
