//! Certificates for `A[n] ≥ 10↑^(n+2)10` by induction on `n`.
//!
//! Base: `A[1] = 10↑↑↑10` by unfolding. Link `k → k+1`, given
//! `A[k] ≥ 10↑^(k+2)10`:
//!
//! 1. `10↑^(k+2)10 > k+3`, either as `> 10 > k+3` (major term, then exact
//!    arithmetic) or, once `k+3 ≥ 10`, as `≥ 10↑10 > k+3` (strict arrow
//!    monotonicity from `k+2 > 1`, then exact arithmetic);
//! 2. hence `A[k] > k+3`;
//! 3. `10↑^(A[k])10 > 10↑^(k+3)10` by strict arrow monotonicity;
//! 4. `A[k+1] = 10↑^(A[k])10` by unfolding, and transitivity.

use num_traits::{ToPrimitive, Zero};

use super::certificate::{Certificate, Conclusion};
use super::prover::{Builder, Derived};
use super::rules::RuleId;
use crate::engine::Budget;
use crate::terms::{Nat, Term};

/// Largest `n` accepted; each link adds a handful of steps.
pub const MAX_LEMMA1_INDEX: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LemmaError {
    #[error("the lemma starts at n = 1")]
    ZeroIndex,
    #[error("n = {0} exceeds the supported maximum {MAX_LEMMA1_INDEX}")]
    TooLarge(Nat),
    #[error("internal: could not build link {link}: {reason}")]
    Construction { link: u64, reason: String },
}

fn ten_arrow(k: impl Into<Nat>) -> Term {
    Term::arrow(Term::lit(10u32), Term::Lit(k.into()), Term::lit(10u32))
}

/// The certificate of `A[n] ? 10↑^(n+2)10`: `Equal` at `n = 1`, `Greater` after.
pub fn lemma1_certificate(n: &Nat) -> Result<Certificate, LemmaError> {
    if n.is_zero() {
        return Err(LemmaError::ZeroIndex);
    }
    let n = n
        .to_u64()
        .filter(|&v| v <= MAX_LEMMA1_INDEX)
        .ok_or_else(|| LemmaError::TooLarge(n.clone()))?;
    let mut b = Builder::new(Budget::default());
    let build = |link: u64| move |reason: String| LemmaError::Construction { link, reason };

    let (_, mut hyp) = b
        .push(RuleId::Norm, Term::aur(1u32), ten_arrow(3u32), vec![])
        .map_err(build(1))?;
    for k in 1..n {
        hyp = link(&mut b, k, hyp).map_err(build(k + 1))?.1;
    }
    let last = b.steps[hyp].clone();
    Ok(Certificate {
        conclusion: Conclusion {
            lhs: last.lhs,
            rhs: last.rhs,
            relation: last.relation,
        },
        steps: b.steps,
    })
}

/// From `A[k] ? 10↑^(k+2)10` at step `hyp` to `A[k+1] > 10↑^(k+3)10`.
fn link(b: &mut Builder, k: u64, hyp: usize) -> Result<Derived, String> {
    let bound = ten_arrow(k + 2);
    let small = Term::lit(k + 3);
    let (_, aux) = if k + 3 < 10 {
        let (_, major) = b.push(RuleId::Major, bound, Term::lit(10u32), vec![])?;
        let (_, exact) = b.push(RuleId::Exact, Term::lit(10u32), small.clone(), vec![])?;
        b.trans(major, exact)?
    } else {
        let (_, count) = b.push(RuleId::Exact, Term::lit(k + 2), Term::lit(1u32), vec![])?;
        let (_, lower) = b.push(RuleId::ArrowsStrict, bound, ten_arrow(1u32), vec![count])?;
        let (_, exact) = b.push(RuleId::Exact, ten_arrow(1u32), small.clone(), vec![])?;
        b.trans(lower, exact)?
    };
    let (_, above) = b.trans(hyp, aux)?;
    let (_, raised) = b.push(
        RuleId::ArrowsStrict,
        Term::arrow(Term::lit(10u32), Term::aur(k), Term::lit(10u32)),
        ten_arrow(k + 3),
        vec![above],
    )?;
    let (_, unfold) = b.push(
        RuleId::Norm,
        Term::aur(k + 1),
        Term::arrow(Term::lit(10u32), Term::aur(k), Term::lit(10u32)),
        vec![],
    )?;
    b.trans(unfold, raised)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dominance::{check_certificate, Rel};

    #[test]
    fn base_case_is_one_equal_step() {
        let c = lemma1_certificate(&Nat::from(1u32)).unwrap();
        assert_eq!(c.steps.len(), 1);
        assert_eq!(c.conclusion.relation, Rel::Eq);
        check_certificate(&c).unwrap();
    }

    #[test]
    fn links_are_strict_and_valid() {
        for n in [2u32, 3, 7, 8, 20] {
            let c = lemma1_certificate(&Nat::from(n)).unwrap();
            assert_eq!(c.conclusion.relation, Rel::Gt);
            assert_eq!(c.conclusion.lhs, Term::aur(n));
            assert_eq!(c.conclusion.rhs, ten_arrow(n + 2));
            check_certificate(&c).unwrap();
        }
    }

    #[test]
    fn rejects_zero_and_oversized() {
        assert_eq!(lemma1_certificate(&Nat::zero()), Err(LemmaError::ZeroIndex));
        assert!(matches!(
            lemma1_certificate(&Nat::from(MAX_LEMMA1_INDEX + 1)),
            Err(LemmaError::TooLarge(_))
        ));
    }
}
