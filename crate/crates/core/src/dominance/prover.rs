//! Derivation search behind [`compare`].
//!
//! Strategies, tried in this order for every goal `l ? r`:
//!
//! 1. `R-EXACT` when both sides evaluate within the budget;
//! 2. `R-NORM`;
//! 3. for an `A`/`AO` side, the lemma bound and one-level unfolding;
//! 4. congruence on two arrows, changing height, base and arrow count one at a
//!    time in each of three orders;
//! 5. `R-MAJOR` on either side, followed by a subgoal on the base or height;
//! 6. lowering an arrow count to 1 and comparing the resulting power.
//!
//! The first decisive (`<`, `=`, `>`) result wins. Goals are memoised and the
//! number of goals is capped.

use std::collections::{HashMap, HashSet};

use super::certificate::{Certificate, Conclusion, Step};
use super::checker::check_certificate_with;
use super::rules::{apply, lit_at_least, norm_eq, positive, unfold_one, Evaluator, Fact, RuleId};
use super::{Rel, Relation, Verdict};
use crate::engine::Budget;
use crate::terms::Term;

/// Certificate steps under construction.
pub(crate) struct Builder {
    pub steps: Vec<Step>,
    evals: Evaluator,
}

/// A derived fact: its relation and the index of the step concluding it.
pub(crate) type Derived = (Rel, usize);

impl Builder {
    pub(crate) fn new(budget: Budget) -> Builder {
        Builder {
            steps: Vec::new(),
            evals: Evaluator::new(budget),
        }
    }

    pub(crate) fn push(
        &mut self,
        rule: RuleId,
        lhs: Term,
        rhs: Term,
        premises: Vec<usize>,
    ) -> Result<Derived, String> {
        let facts: Vec<Fact> = premises.iter().map(|&i| self.steps[i].fact()).collect();
        let (rel, bindings) = apply(rule, &lhs, &rhs, &facts, &mut self.evals)?;
        self.steps.push(Step {
            rule,
            lhs,
            rhs,
            relation: rel,
            premises,
            bindings,
        });
        Ok((rel, self.steps.len() - 1))
    }

    pub(crate) fn trans(&mut self, first: usize, second: usize) -> Result<Derived, String> {
        let lhs = self.steps[first].lhs.clone();
        let rhs = self.steps[second].rhs.clone();
        self.push(RuleId::Trans, lhs, rhs, vec![first, second])
    }

    /// The steps `root` depends on, renumbered, with `root` last.
    pub(crate) fn extract(&self, root: usize) -> Vec<Step> {
        let mut keep = vec![false; root + 1];
        let mut pending = vec![root];
        while let Some(i) = pending.pop() {
            if !keep[i] {
                keep[i] = true;
                pending.extend(self.steps[i].premises.iter().copied());
            }
        }
        let mut renumber = vec![usize::MAX; root + 1];
        let mut out = Vec::new();
        for i in 0..=root {
            if keep[i] {
                renumber[i] = out.len();
                let mut s = self.steps[i].clone();
                s.premises = s.premises.iter().map(|&p| renumber[p]).collect();
                out.push(s);
            }
        }
        out
    }

    fn exact(&mut self, t: &Term) -> bool {
        self.evals.exact(t).is_some()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompareOptions {
    /// Budget for every evaluation, in the search and in the final check.
    pub budget: Budget,
    /// Maximum number of goals the search visits.
    pub max_search: u64,
}

impl CompareOptions {
    pub fn new(budget: Budget) -> CompareOptions {
        CompareOptions {
            budget,
            max_search: budget.max_steps,
        }
    }
}

/// Decides `lhs ? rhs`, returning `Unknown` when no derivation is found.
pub fn compare(lhs: &Term, rhs: &Term, budget: &Budget) -> Verdict {
    compare_with(lhs, rhs, &CompareOptions::new(*budget))
}

pub fn compare_with(lhs: &Term, rhs: &Term, opts: &CompareOptions) -> Verdict {
    if !lhs.validate().is_valid() || !rhs.validate().is_valid() {
        return Verdict::unknown();
    }
    let mut prover = Prover {
        b: Builder::new(opts.budget),
        max_goals: opts.max_search,
        goals: 0,
        memo: HashMap::new(),
        active: HashSet::new(),
    };
    let Some((rel, root)) = prover.prove(lhs, rhs) else {
        return Verdict::unknown();
    };
    let relation = match rel {
        Rel::Lt => Relation::Less,
        Rel::Eq => Relation::Equal,
        Rel::Gt => Relation::Greater,
        Rel::Le | Rel::Ge => return Verdict::unknown(),
    };
    let certificate = Certificate {
        conclusion: Conclusion {
            lhs: lhs.clone(),
            rhs: rhs.clone(),
            relation: rel,
        },
        steps: prover.b.extract(root),
    };
    if check_certificate_with(&certificate, &opts.budget).is_err() {
        return Verdict::unknown();
    }
    Verdict {
        relation,
        certificate: Some(certificate),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Component {
    Height,
    Base,
    Arrows,
}

const ORDERS: [[Component; 3]; 3] = [
    [Component::Height, Component::Base, Component::Arrows],
    [Component::Arrows, Component::Base, Component::Height],
    [Component::Base, Component::Arrows, Component::Height],
];

struct Prover {
    b: Builder,
    max_goals: u64,
    goals: u64,
    memo: HashMap<(Term, Term), Option<Derived>>,
    active: HashSet<(Term, Term)>,
}

/// Keeps the first decisive candidate, or else the first non-strict one.
struct Best(Option<Derived>);

impl Best {
    /// Returns true once a decisive result is held.
    fn offer(&mut self, candidate: Option<Derived>) -> bool {
        if let Some(c) = candidate {
            if c.0.is_decisive() {
                self.0 = Some(c);
                return true;
            }
            self.0.get_or_insert(c);
        }
        false
    }
}

fn arrow(t: &Term) -> Option<(&Term, &Term, &Term)> {
    match t {
        Term::Arrow {
            base,
            arrows,
            height,
        } => Some((base, arrows, height)),
        _ => None,
    }
}

fn unfoldable(t: &Term) -> bool {
    matches!(t, Term::Aur(_) | Term::AurOrd(_))
}

/// Contains an `AO` node whose index is infinite, so it never reaches a value.
fn has_limit(t: &Term) -> bool {
    let mut pending = vec![t];
    while let Some(x) = pending.pop() {
        if let Term::AurOrd(alpha) = x {
            if alpha.as_finite().is_none() {
                return true;
            }
        }
        pending.extend(x.children().into_iter().map(|(_, c)| c));
    }
    false
}

fn replace(t: &Term, c: Component, with: &Term) -> Term {
    let (b, k, h) = arrow(t).expect("an arrow");
    let (b, k, h) = match c {
        Component::Base => (with, k, h),
        Component::Arrows => (b, with, h),
        Component::Height => (b, k, with),
    };
    Term::arrow(b.clone(), k.clone(), h.clone())
}

fn component(t: &Term, c: Component) -> &Term {
    let (b, k, h) = arrow(t).expect("an arrow");
    match c {
        Component::Base => b,
        Component::Arrows => k,
        Component::Height => h,
    }
}

impl Prover {
    fn prove(&mut self, l: &Term, r: &Term) -> Option<Derived> {
        let key = (l.clone(), r.clone());
        if let Some(hit) = self.memo.get(&key) {
            return *hit;
        }
        if self.goals >= self.max_goals || self.active.contains(&key) {
            return None;
        }
        self.goals += 1;
        self.active.insert(key.clone());
        let result = crate::stack::guarded(|| self.search(l, r));
        self.active.remove(&key);
        self.memo.insert(key, result);
        result
    }

    fn search(&mut self, l: &Term, r: &Term) -> Option<Derived> {
        if self.b.exact(l) && self.b.exact(r) {
            return self
                .b
                .push(RuleId::Exact, l.clone(), r.clone(), vec![])
                .ok();
        }
        if norm_eq(l, r) {
            return self.b.push(RuleId::Norm, l.clone(), r.clone(), vec![]).ok();
        }
        // symbolic limits have no value to bound
        if has_limit(l) || has_limit(r) {
            return None;
        }

        let mut best = Best(None);
        if unfoldable(l) || unfoldable(r) {
            self.aurellion(l, r, &mut best);
            return best.0;
        }
        if arrow(l).is_some() && arrow(r).is_some() {
            for order in ORDERS {
                let c = self.congruence(l, r, &order);
                if best.offer(c) {
                    return best.0;
                }
            }
        }
        if self.major(l, r, &mut best) || self.floor(l, r, &mut best) {
            return best.0;
        }
        best.0
    }

    fn aurellion(&mut self, l: &Term, r: &Term, best: &mut Best) {
        // A[n] ≥ 10↑^(n+2)10, then bound the arrow term
        if let (Term::Aur(n), false) = (l, unfoldable(r)) {
            let lower = Term::arrow(Term::lit(10u32), Term::Lit(n + 2u32), Term::lit(10u32));
            if let Some((rel, s)) = self.prove(&lower, r) {
                if rel.is_upper() {
                    if let Ok((_, lem)) = self.b.push(RuleId::Lemma1, l.clone(), lower, vec![]) {
                        if best.offer(self.b.trans(lem, s).ok()) {
                            return;
                        }
                    }
                }
            }
        }
        if let (false, Term::Aur(n)) = (unfoldable(l), r) {
            let lower = Term::arrow(Term::lit(10u32), Term::Lit(n + 2u32), Term::lit(10u32));
            if let Some((rel, s)) = self.prove(l, &lower) {
                if rel.is_lower() {
                    if let Ok((_, lem)) = self.b.push(RuleId::Lemma1, lower, r.clone(), vec![]) {
                        if best.offer(self.b.trans(s, lem).ok()) {
                            return;
                        }
                    }
                }
            }
        }
        if let Some(l1) = unfold_one(l) {
            if let Some((_, s)) = self.prove(&l1, r) {
                if let Ok((_, e)) = self.b.push(RuleId::Norm, l.clone(), l1, vec![]) {
                    best.offer(self.b.trans(e, s).ok());
                }
            }
        } else if let Some(r1) = unfold_one(r) {
            if let Some((_, s)) = self.prove(l, &r1) {
                if let Ok((_, e)) = self.b.push(RuleId::Norm, r1, r.clone(), vec![]) {
                    best.offer(self.b.trans(s, e).ok());
                }
            }
        }
    }

    /// Whether the rule for `c` can fire on `cur` at all, before searching for its premise.
    fn link_applies(cur: &Term, target: &Term, c: Component) -> bool {
        let (b, k, h) = arrow(cur).expect("an arrow");
        match c {
            Component::Height => lit_at_least(b, 2).is_some() && positive(k),
            Component::Base => {
                lit_at_least(h, 1).is_some()
                    && positive(k)
                    && positive(b)
                    && positive(component(target, Component::Base))
            }
            Component::Arrows => {
                lit_at_least(b, 2).is_some()
                    && lit_at_least(h, 2).is_some()
                    && positive(k)
                    && positive(component(target, Component::Arrows))
            }
        }
    }

    fn congruence(&mut self, l: &Term, r: &Term, order: &[Component; 3]) -> Option<Derived> {
        let mut cur = l.clone();
        let mut chain: Option<Derived> = None;
        for &c in order {
            let want = component(r, c);
            if component(&cur, c) == want {
                continue;
            }
            let next = replace(&cur, c, want);
            if !Self::link_applies(&cur, &next, c) {
                return None;
            }
            let (_, premise) = self.prove(component(&cur, c), want)?;
            let rule = match c {
                Component::Height => RuleId::Height,
                Component::Base => RuleId::Base,
                Component::Arrows => {
                    let three = crate::terms::Nat::from(3u32);
                    let strict = lit_at_least(component(&cur, Component::Base), 3).is_some()
                        || component(&cur, Component::Height)
                            .as_lit()
                            .is_some_and(|h| *h >= three);
                    if strict {
                        RuleId::ArrowsStrict
                    } else {
                        RuleId::ArrowsNonstrict
                    }
                }
            };
            let link = self
                .b
                .push(rule, cur.clone(), next.clone(), vec![premise])
                .ok()?;
            chain = Some(match chain {
                None => link,
                Some((rel, prev)) => {
                    rel.compose(link.0)?;
                    self.b.trans(prev, link.1).ok()?
                }
            });
            cur = next;
        }
        chain
    }

    /// `R-MAJOR`: an arrow exceeds its base and height.
    fn major(&mut self, l: &Term, r: &Term, best: &mut Best) -> bool {
        for (side_is_left, t) in [(true, l), (false, r)] {
            let Some((b, k, h)) = arrow(t) else { continue };
            if lit_at_least(b, 2).is_none() || lit_at_least(h, 2).is_none() || !positive(k) {
                continue;
            }
            let parts: Vec<&Term> = if b == h { vec![h] } else { vec![h, b] };
            for part in parts {
                let found = if side_is_left {
                    match self.prove(part, r) {
                        Some((rel, s)) if rel.is_upper() => self
                            .b
                            .push(RuleId::Major, l.clone(), part.clone(), vec![])
                            .ok()
                            .and_then(|(_, m)| self.b.trans(m, s).ok()),
                        _ => None,
                    }
                } else {
                    match self.prove(l, part) {
                        Some((rel, s)) if rel.is_lower() => self
                            .b
                            .push(RuleId::Major, part.clone(), r.clone(), vec![])
                            .ok()
                            .and_then(|(_, m)| self.b.trans(s, m).ok()),
                        _ => None,
                    }
                };
                if best.offer(found) {
                    return true;
                }
            }
        }
        false
    }

    /// `a↑^k b ≥ a↑b` for a literal `a, b ≥ 2`, then compare the power.
    fn floor(&mut self, l: &Term, r: &Term, best: &mut Best) -> bool {
        let one = Term::lit(1u32);
        for (side_is_left, t) in [(true, l), (false, r)] {
            let Some((b, k, h)) = arrow(t) else { continue };
            if *k == one || lit_at_least(b, 2).is_none() || lit_at_least(h, 2).is_none() {
                continue;
            }
            let power = Term::arrow(b.clone(), one.clone(), h.clone());
            let found = if side_is_left {
                match (self.prove(l, &power), self.prove(&power, r)) {
                    (Some((r1, s1)), Some((r2, s2))) if r1.is_upper() && r2.is_upper() => {
                        self.b.trans(s1, s2).ok()
                    }
                    _ => None,
                }
            } else {
                match (self.prove(l, &power), self.prove(&power, r)) {
                    (Some((r1, s1)), Some((r2, s2))) if r1.is_lower() && r2.is_lower() => {
                        self.b.trans(s1, s2).ok()
                    }
                    _ => None,
                }
            };
            if best.offer(found) {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dominance::check_certificate;
    use crate::notation::parse_term;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn rel(l: &str, r: &str) -> Relation {
        let v = compare(&p(l), &p(r), &Budget::default());
        if let Some(c) = &v.certificate {
            check_certificate(c).unwrap();
        }
        v.relation
    }

    #[test]
    fn exact_and_norm() {
        assert_eq!(rel("A[1]", "10^^^10"), Relation::Equal);
        assert_eq!(rel("2^[9]2", "2^[3]2"), Relation::Equal);
        assert_eq!(rel("2^^3", "3^^2"), Relation::Less);
        assert_eq!(rel("AO[w]", "AO[w]"), Relation::Equal);
    }

    #[test]
    fn aurellion_ordering() {
        assert_eq!(rel("A[2]", "A[1]"), Relation::Greater);
        assert_eq!(rel("A[1]", "A[2]"), Relation::Less);
        assert_eq!(rel("A[5]", "A[3]"), Relation::Greater);
        assert_eq!(rel("A[3]", "10^[5]10"), Relation::Greater);
        assert_eq!(rel("A[40]", "10^[42]10"), Relation::Greater);
        assert_eq!(rel("A[1]", "5"), Relation::Greater);
        assert_eq!(rel("AO[3]", "AO[1]"), Relation::Greater);
    }

    #[test]
    fn symbolic_arrows() {
        assert_eq!(rel("10^^^11", "10^^^10"), Relation::Greater);
        assert_eq!(rel("10^^^10", "10^^^^10"), Relation::Less);
        assert_eq!(rel("10^^^10", "9^^^10"), Relation::Greater);
        assert_eq!(rel("10^^^10", "10"), Relation::Greater);
        assert_eq!(rel("10^^^10", "10^^^^11"), Relation::Less);
    }

    #[test]
    fn unknowns() {
        assert_eq!(rel("f[w](3)", "A[1]"), Relation::Unknown);
        assert_eq!(rel("AO[w]", "AO[w+1]"), Relation::Unknown);
        assert_eq!(rel("2^[0]2", "1"), Relation::Unknown);
    }
}
