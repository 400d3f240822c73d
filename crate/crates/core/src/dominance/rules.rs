//! The rule set, shared by the prover and the checker.
//!
//! | rule | shape | side conditions |
//! |------|-------|-----------------|
//! | `R-EXACT` | `s ? t` | both evaluate exactly under the checking budget |
//! | `R-NORM` | `s = t` | equal after unfolding every literal-index `A`/`AO` node |
//! | `R-HEIGHT` | `a↑^k x ? a↑^k y` from `x ? y` | `a` literal ≥ 2, `k` positive |
//! | `R-BASE` | `x↑^k h ? y↑^k h` from `x ? y` | `h` literal ≥ 1, `k`, `x`, `y` positive |
//! | `R-ARROWS-NONSTRICT` | `a↑^x h ≤ a↑^y h` from `x ? y` (weakened) | `a`, `h` literals ≥ 2, `x`, `y` positive |
//! | `R-ARROWS-STRICT` | `a↑^x h ? a↑^y h` from `x ? y` | as above, and `a ≥ 3` or `h ≥ 3` |
//! | `R-MAJOR` | `a↑^k b > a`, `a↑^k b > b` | `a`, `b` literals ≥ 2, `k` positive |
//! | `R-LEMMA1` | `A[n] ≥ 10↑^(n+2)10` | `=` at `n = 1`, `>` for `n ≥ 2` |
//! | `R-TRANS` | `s ? u` from `s ? t`, `t ? u` | the relations compose |
//!
//! "Positive" is a syntactic guarantee that the term denotes a natural ≥ 1;
//! every side of a congruence or bound rule must also be well defined (no
//! arrow count that could be 0, no `AO` with an infinite index).

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Rel;
use crate::engine::{eval, Budget, EvalOutcome};
use crate::ordinals::OrdinalClass;
use crate::stack::guarded;
use crate::terms::{Nat, Term};

pub type Bindings = BTreeMap<String, String>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RuleId {
    #[serde(rename = "R-EXACT")]
    Exact,
    #[serde(rename = "R-NORM")]
    Norm,
    #[serde(rename = "R-HEIGHT")]
    Height,
    #[serde(rename = "R-BASE")]
    Base,
    #[serde(rename = "R-ARROWS-NONSTRICT")]
    ArrowsNonstrict,
    #[serde(rename = "R-ARROWS-STRICT")]
    ArrowsStrict,
    #[serde(rename = "R-MAJOR")]
    Major,
    #[serde(rename = "R-LEMMA1")]
    Lemma1,
    #[serde(rename = "R-TRANS")]
    Trans,
}

impl RuleId {
    pub fn name(self) -> &'static str {
        match self {
            RuleId::Exact => "R-EXACT",
            RuleId::Norm => "R-NORM",
            RuleId::Height => "R-HEIGHT",
            RuleId::Base => "R-BASE",
            RuleId::ArrowsNonstrict => "R-ARROWS-NONSTRICT",
            RuleId::ArrowsStrict => "R-ARROWS-STRICT",
            RuleId::Major => "R-MAJOR",
            RuleId::Lemma1 => "R-LEMMA1",
            RuleId::Trans => "R-TRANS",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            RuleId::Exact | RuleId::Norm | RuleId::Major | RuleId::Lemma1 => 0,
            RuleId::Height | RuleId::Base | RuleId::ArrowsNonstrict | RuleId::ArrowsStrict => 1,
            RuleId::Trans => 2,
        }
    }
}

impl std::fmt::Display for RuleId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A premise as seen by a rule.
#[derive(Clone, Copy)]
pub(crate) struct Fact<'a> {
    pub lhs: &'a Term,
    pub rhs: &'a Term,
    pub rel: Rel,
}

/// Memoised evaluation under one budget.
pub(crate) struct Evaluator {
    budget: Budget,
    memo: HashMap<Term, EvalOutcome>,
}

impl Evaluator {
    pub(crate) fn new(budget: Budget) -> Evaluator {
        Evaluator {
            budget,
            memo: HashMap::new(),
        }
    }

    pub(crate) fn exact(&mut self, t: &Term) -> Option<Nat> {
        if let Some(n) = t.as_lit() {
            return (n.bits() <= self.budget.max_bits).then(|| n.clone());
        }
        let budget = self.budget;
        self.memo
            .entry(t.clone())
            .or_insert_with(|| eval(t, &budget))
            .exact()
            .cloned()
    }
}

pub(crate) fn lit_at_least(t: &Term, min: u32) -> Option<&Nat> {
    t.as_lit().filter(|n| **n >= Nat::from(min))
}

/// One rewrite of a literal-index `A`/`AO` node; `None` for anything else.
pub(crate) fn unfold_one(t: &Term) -> Option<Term> {
    let ten = || Term::lit(10u32);
    match t {
        Term::Aur(n) if n.is_one() => Some(Term::arrow(ten(), Term::lit(3u32), ten())),
        Term::Aur(n) if !n.is_zero() => Some(Term::arrow(ten(), Term::Aur(n - 1u32), ten())),
        Term::AurOrd(alpha) => match alpha.classify() {
            OrdinalClass::Zero => Some(Term::arrow(ten(), Term::lit(2u32), ten())),
            OrdinalClass::Successor(pred) => Some(Term::arrow(ten(), Term::AurOrd(pred), ten())),
            OrdinalClass::Limit => None,
        },
        _ => None,
    }
}

/// Structural equality after unfolding literal-index `A`/`AO` nodes, done
/// lazily so that `A[n]` against a shallow term costs only that term's size.
pub(crate) fn norm_eq(a: &Term, b: &Term) -> bool {
    let mut pending: Vec<(Term, Term)> = vec![(a.clone(), b.clone())];
    while let Some((x, y)) = pending.pop() {
        match (&x, &y) {
            (Term::Lit(m), Term::Lit(n)) => {
                if m != n {
                    return false;
                }
            }
            (Term::Aur(m), Term::Aur(n)) => {
                if m != n {
                    return false;
                }
            }
            (Term::AurOrd(m), Term::AurOrd(n)) => {
                if m != n {
                    return false;
                }
            }
            _ if unfold_one(&x).is_some() => {
                pending.push((unfold_one(&x).expect("checked"), y));
            }
            _ if unfold_one(&y).is_some() => {
                pending.push((x.clone(), unfold_one(&y).expect("checked")));
            }
            (
                Term::Arrow {
                    base: b1,
                    arrows: k1,
                    height: h1,
                },
                Term::Arrow {
                    base: b2,
                    arrows: k2,
                    height: h2,
                },
            ) => {
                pending.push(((**b1).clone(), (**b2).clone()));
                pending.push(((**k1).clone(), (**k2).clone()));
                pending.push(((**h1).clone(), (**h2).clone()));
            }
            (Term::Fgh { index: i1, arg: a1 }, Term::Fgh { index: i2, arg: a2 }) => {
                if i1 != i2 {
                    return false;
                }
                pending.push(((**a1).clone(), (**a2).clone()));
            }
            (
                Term::Iter {
                    index: i1,
                    count: c1,
                    arg: a1,
                },
                Term::Iter {
                    index: i2,
                    count: c2,
                    arg: a2,
                },
            ) => {
                if i1 != i2 || c1 != c2 {
                    return false;
                }
                pending.push(((**a1).clone(), (**a2).clone()));
            }
            _ => return false,
        }
    }
    true
}

/// Every arrow count is provably ≥ 1, every `A` index is ≥ 1 and every `AO`
/// index is finite, so the term denotes a natural.
pub(crate) fn defined(t: &Term) -> bool {
    guarded(|| match t {
        Term::Lit(_) => true,
        Term::Arrow {
            base,
            arrows,
            height,
        } => positive(arrows) && defined(base) && defined(height),
        Term::Fgh { arg, .. } | Term::Iter { arg, .. } => defined(arg),
        Term::Aur(n) => !n.is_zero(),
        Term::AurOrd(alpha) => alpha.as_finite().is_some(),
    })
}

/// `t` is defined and denotes a natural ≥ 1.
pub(crate) fn positive(t: &Term) -> bool {
    guarded(|| match t {
        Term::Lit(n) => !n.is_zero(),
        Term::Arrow {
            base,
            arrows,
            height,
        } => {
            positive(arrows)
                && defined(height)
                && (positive(base) || (height.as_lit().is_some_and(Zero::is_zero) && defined(base)))
        }
        // f_α(n) > n and iter[α, c](n) ≥ n, with equality only at c = 0
        Term::Fgh { arg, .. } => defined(arg),
        Term::Iter { count, arg, .. } => {
            if count.is_zero() {
                positive(arg)
            } else {
                defined(arg)
            }
        }
        Term::Aur(_) | Term::AurOrd(_) => defined(t),
    })
}

fn arrow_parts(t: &Term) -> Option<(&Term, &Term, &Term)> {
    match t {
        Term::Arrow {
            base,
            arrows,
            height,
        } => Some((base, arrows, height)),
        _ => None,
    }
}

fn binding(pairs: &[(&str, &Nat)]) -> Bindings {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn require(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn premise_matches(p: &Fact, lhs: &Term, rhs: &Term, what: &str) -> Result<(), String> {
    require(
        p.lhs == lhs && p.rhs == rhs,
        &format!("premise must relate the two {what} positions"),
    )
}

/// The strongest relation `rule` establishes between `lhs` and `rhs` given
/// `premises`, with the bindings a certificate step must record.
pub(crate) fn apply(
    rule: RuleId,
    lhs: &Term,
    rhs: &Term,
    premises: &[Fact],
    evals: &mut Evaluator,
) -> Result<(Rel, Bindings), String> {
    if premises.len() != rule.arity() {
        return Err(format!(
            "{rule} takes {} premise(s), got {}",
            rule.arity(),
            premises.len()
        ));
    }
    match rule {
        RuleId::Exact => {
            let x = evals
                .exact(lhs)
                .ok_or("left side does not evaluate exactly within the budget")?;
            let y = evals
                .exact(rhs)
                .ok_or("right side does not evaluate exactly within the budget")?;
            let rel = Rel::from(x.cmp(&y));
            Ok((rel, binding(&[("lhs_value", &x), ("rhs_value", &y)])))
        }
        RuleId::Norm => {
            require(norm_eq(lhs, rhs), "sides differ after unfolding")?;
            Ok((Rel::Eq, Bindings::new()))
        }
        RuleId::Height => {
            let (b1, k1, h1) = arrow_parts(lhs).ok_or("left side is not an arrow")?;
            let (b2, k2, h2) = arrow_parts(rhs).ok_or("right side is not an arrow")?;
            require(b1 == b2 && k1 == k2, "bases and arrow counts must coincide")?;
            let a = lit_at_least(b1, 2).ok_or("base must be a literal >= 2")?;
            require(positive(k1), "arrow count must be provably positive")?;
            require(defined(h1) && defined(h2), "heights must be defined")?;
            let p = &premises[0];
            premise_matches(p, h1, h2, "height")?;
            Ok((p.rel, binding(&[("base", a)])))
        }
        RuleId::Base => {
            let (b1, k1, h1) = arrow_parts(lhs).ok_or("left side is not an arrow")?;
            let (b2, k2, h2) = arrow_parts(rhs).ok_or("right side is not an arrow")?;
            require(
                k1 == k2 && h1 == h2,
                "arrow counts and heights must coincide",
            )?;
            let h = lit_at_least(h1, 1).ok_or("height must be a literal >= 1")?;
            require(positive(k1), "arrow count must be provably positive")?;
            require(
                positive(b1) && positive(b2),
                "bases must be provably positive",
            )?;
            let p = &premises[0];
            premise_matches(p, b1, b2, "base")?;
            Ok((p.rel, binding(&[("height", h)])))
        }
        RuleId::ArrowsNonstrict | RuleId::ArrowsStrict => {
            let (b1, k1, h1) = arrow_parts(lhs).ok_or("left side is not an arrow")?;
            let (b2, k2, h2) = arrow_parts(rhs).ok_or("right side is not an arrow")?;
            require(b1 == b2 && h1 == h2, "bases and heights must coincide")?;
            let a = lit_at_least(b1, 2).ok_or("base must be a literal >= 2")?;
            let h = lit_at_least(h1, 2).ok_or("height must be a literal >= 2")?;
            require(
                positive(k1) && positive(k2),
                "arrow counts must be provably positive",
            )?;
            let p = &premises[0];
            premise_matches(p, k1, k2, "arrow-count")?;
            let rel = if rule == RuleId::ArrowsStrict {
                let three = Nat::from(3u32);
                require(
                    *a >= three || *h >= three,
                    "strict arrow monotonicity needs base >= 3 or height >= 3",
                )?;
                p.rel
            } else {
                p.rel.weaken()
            };
            Ok((rel, binding(&[("base", a), ("height", h)])))
        }
        RuleId::Major => {
            let (arrow, other, rel) = match (arrow_parts(lhs), arrow_parts(rhs)) {
                (Some(parts), _) if rhs == parts.0 || rhs == parts.2 => (parts, rhs, Rel::Gt),
                (_, Some(parts)) if lhs == parts.0 || lhs == parts.2 => (parts, lhs, Rel::Lt),
                _ => return Err("one side must be the base or height of the other".into()),
            };
            let (b, k, h) = arrow;
            let a = lit_at_least(b, 2).ok_or("base must be a literal >= 2")?;
            let hv = lit_at_least(h, 2).ok_or("height must be a literal >= 2")?;
            require(positive(k), "arrow count must be provably positive")?;
            debug_assert!(other.is_lit());
            Ok((rel, binding(&[("base", a), ("height", hv)])))
        }
        RuleId::Lemma1 => {
            let (n, other, flip) = match (lhs, rhs) {
                (Term::Aur(n), other) => (n, other, false),
                (other, Term::Aur(n)) => (n, other, true),
                _ => return Err("one side must be an A[n] node".into()),
            };
            require(!n.is_zero(), "index must be >= 1")?;
            let expected = Term::arrow(Term::lit(10u32), Term::Lit(n + 2u32), Term::lit(10u32));
            require(*other == expected, "other side must be 10^[n+2]10")?;
            let rel = if n.is_one() { Rel::Eq } else { Rel::Gt };
            Ok((
                if flip { rel.converse() } else { rel },
                binding(&[("n", n)]),
            ))
        }
        RuleId::Trans => {
            let (p, q) = (&premises[0], &premises[1]);
            require(p.rhs == q.lhs, "premises do not share a middle term")?;
            require(
                p.lhs == lhs && q.rhs == rhs,
                "conclusion must join the outer terms of the premises",
            )?;
            let rel = p
                .rel
                .compose(q.rel)
                .ok_or("premise relations point in opposite directions")?;
            Ok((rel, Bindings::new()))
        }
    }
}
