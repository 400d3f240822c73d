//! Named constructors for the Aurellion families and the fast-growing hierarchy.
//!
//! The finite family is `A[1] = b ↑^s h`, `A[n+1] = b ↑^(A[n]) h` with
//! `(b, s, h) = (10, 3, 10)` by default. The ordinal family starts one arrow
//! lower, `AO[0] = 10 ↑↑ 10`, and takes successors the same way. At a limit
//! `λ` only the approximants `AO[λ[n]]` are constructed.

use num_traits::{ToPrimitive, Zero};

use crate::ordinals::{CnfTerm, Ordinal, OrdinalClass};
use crate::terms::{Nat, Term};

/// Largest number of arrow layers a constructor will materialise.
pub const MAX_UNFOLD: u64 = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub base: Nat,
    pub seed_arrows: Nat,
    pub seed_height: Nat,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HierarchyError {
    #[error("family parameters need base >= 2, seed_arrows >= 1, seed_height >= 2")]
    InvalidParams,
    #[error("the finite family starts at index 1")]
    ZeroIndex,
    #[error("index {0} needs more than {MAX_UNFOLD} nested arrow nodes")]
    TooLarge(Nat),
    #[error("{0} is not a limit ordinal")]
    NotLimit(Ordinal),
    #[error("index {0} reaches a limit ordinal, which only the default ordinal family can keep symbolic")]
    LimitWithCustomParams(Ordinal),
}

impl FamilyParams {
    pub fn new(
        base: impl Into<Nat>,
        seed_arrows: impl Into<Nat>,
        seed_height: impl Into<Nat>,
    ) -> Result<FamilyParams, HierarchyError> {
        let p = FamilyParams {
            base: base.into(),
            seed_arrows: seed_arrows.into(),
            seed_height: seed_height.into(),
        };
        let two = Nat::from(2u32);
        if p.base < two || p.seed_arrows.is_zero() || p.seed_height < two {
            return Err(HierarchyError::InvalidParams);
        }
        Ok(p)
    }

    /// `(10, 2, 10)`: the seed of the ordinal-indexed family.
    pub fn ordinal_default() -> FamilyParams {
        FamilyParams::new(10u32, 2u32, 10u32).expect("valid")
    }

    fn seed(&self) -> Term {
        Term::arrow(
            Term::Lit(self.base.clone()),
            Term::Lit(self.seed_arrows.clone()),
            Term::Lit(self.seed_height.clone()),
        )
    }

    fn wrap(&self, inner: Term, layers: u64) -> Term {
        (0..layers).fold(inner, |acc, _| {
            Term::arrow(
                Term::Lit(self.base.clone()),
                acc,
                Term::Lit(self.seed_height.clone()),
            )
        })
    }
}

impl Default for FamilyParams {
    /// `(10, 3, 10)`.
    fn default() -> FamilyParams {
        FamilyParams::new(10u32, 3u32, 10u32).expect("valid")
    }
}

/// The fully unfolded `A[n]`: `n` nested arrow nodes with the seed innermost.
pub fn aurellion_term(n: &Nat, params: &FamilyParams) -> Result<Term, HierarchyError> {
    if n.is_zero() {
        return Err(HierarchyError::ZeroIndex);
    }
    let layers = n
        .to_u64()
        .filter(|&l| l <= MAX_UNFOLD)
        .ok_or_else(|| HierarchyError::TooLarge(n.clone()))?;
    Ok(params.wrap(params.seed(), layers - 1))
}

/// Splits `α` into its limit part and trailing finite part.
fn split_finite(alpha: &Ordinal) -> (Ordinal, Nat) {
    let terms = alpha.terms();
    match terms.last() {
        Some(last) if last.exponent.is_zero() => {
            let head: Vec<CnfTerm> = terms[..terms.len() - 1].to_vec();
            (
                Ordinal::try_from_terms(head).expect("a prefix of a CNF is a CNF"),
                last.coeff.clone(),
            )
        }
        _ => (alpha.clone(), Nat::zero()),
    }
}

/// `AO[α]` unfolded through its successor chain.
///
/// Zero becomes `10↑↑10`; a limit ordinal at the bottom of the chain is kept as
/// an `AO` node. Chains longer than [`MAX_UNFOLD`] keep the remainder symbolic.
pub fn aurellion_ordinal_term(alpha: &Ordinal) -> Term {
    let params = FamilyParams::ordinal_default();
    let (limit, finite) = split_finite(alpha);
    let cap = Nat::from(MAX_UNFOLD);
    if finite > cap {
        let rest = &finite - &cap;
        let core = Term::AurOrd(&limit + &Ordinal::from_nat(rest));
        return params.wrap(core, MAX_UNFOLD);
    }
    let layers = finite.to_u64().expect("at most MAX_UNFOLD");
    if limit.is_zero() {
        params.wrap(params.seed(), layers)
    } else {
        params.wrap(Term::AurOrd(limit), layers)
    }
}

/// As [`aurellion_ordinal_term`] for another seed. Only finite indices are
/// accepted, since `AO` nodes denote the default family.
pub fn aurellion_ordinal_term_with(
    alpha: &Ordinal,
    params: &FamilyParams,
) -> Result<Term, HierarchyError> {
    if *params == FamilyParams::ordinal_default() {
        return Ok(aurellion_ordinal_term(alpha));
    }
    let Some(n) = alpha.as_finite() else {
        return Err(HierarchyError::LimitWithCustomParams(alpha.clone()));
    };
    let layers = n
        .to_u64()
        .filter(|&l| l <= MAX_UNFOLD)
        .ok_or_else(|| HierarchyError::TooLarge(n.clone()))?;
    Ok(params.wrap(params.seed(), layers))
}

/// The `n`-th approximant `AO[λ[n]]` of a limit index.
pub fn expand_limit(lambda: &Ordinal, n: &Nat) -> Result<Term, HierarchyError> {
    expand_limit_with(lambda, n, &FamilyParams::ordinal_default())
}

pub fn expand_limit_with(
    lambda: &Ordinal,
    n: &Nat,
    params: &FamilyParams,
) -> Result<Term, HierarchyError> {
    if lambda.classify() != OrdinalClass::Limit {
        return Err(HierarchyError::NotLimit(lambda.clone()));
    }
    let member = lambda.fundamental(n).expect("classified as limit");
    aurellion_ordinal_term_with(&member, params)
}

pub fn fgh_term(alpha: &Ordinal, n: &Nat) -> Term {
    Term::fgh(alpha.clone(), Term::Lit(n.clone()))
}
