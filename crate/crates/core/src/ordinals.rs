//! Ordinals below ε₀ in Cantor normal form.
//!
//! An [`Ordinal`] is a strictly decreasing sum `ω^e₁·c₁ + … + ω^eₖ·cₖ` whose
//! exponents are themselves ordinals of the same kind. Fundamental sequences
//! follow the Wainer assignment:
//!
//! * `(γ + ω^(α+1))[n] = γ + ω^α·n`
//! * `(γ + ω^λ)[n] = γ + ω^(λ[n])` for limit `λ`
//! * `(γ + ω^α·(c+1))[n] = γ + ω^α·c + (ω^α)[n]`

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Add;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::terms::Nat;

/// Summands are shared, so cloning is O(1).
#[derive(Clone, Debug, Default, Eq)]
pub struct Ordinal {
    terms: Arc<[CnfTerm]>,
    weight: u64,
}

impl PartialEq for Ordinal {
    fn eq(&self, other: &Ordinal) -> bool {
        Arc::ptr_eq(&self.terms, &other.terms) || self.terms == other.terms
    }
}

impl Hash for Ordinal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

/// One summand `ω^exponent · coeff`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CnfTerm {
    pub exponent: Ordinal,
    pub coeff: Nat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrdinalClass {
    Zero,
    Successor(Ordinal),
    Limit,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrdinalError {
    #[error("{0} is not a limit ordinal")]
    NotLimit(Ordinal),
    #[error("summands are not in strict Cantor normal form")]
    NotCnf,
}

impl Ordinal {
    pub fn zero() -> Ordinal {
        Ordinal::new(Vec::new())
    }

    pub fn one() -> Ordinal {
        Ordinal::from_nat(1u32)
    }

    pub fn omega() -> Ordinal {
        Ordinal::omega_pow(Ordinal::one())
    }

    pub fn from_nat(n: impl Into<Nat>) -> Ordinal {
        let n = n.into();
        if n.is_zero() {
            return Ordinal::zero();
        }
        Ordinal::new(vec![CnfTerm {
            exponent: Ordinal::zero(),
            coeff: n,
        }])
    }

    /// `ω^exponent`.
    pub fn omega_pow(exponent: Ordinal) -> Ordinal {
        Ordinal::new(vec![CnfTerm {
            exponent,
            coeff: Nat::one(),
        }])
    }

    /// Builds an ordinal from summands, rejecting anything that is not strict
    /// CNF (descending exponents, positive coefficients).
    pub fn try_from_terms(terms: Vec<CnfTerm>) -> Result<Ordinal, OrdinalError> {
        let ord = Ordinal::new(terms);
        if ord.is_cnf() {
            Ok(ord)
        } else {
            Err(OrdinalError::NotCnf)
        }
    }

    #[cfg(test)]
    pub(crate) fn from_terms_unchecked(terms: Vec<CnfTerm>) -> Ordinal {
        Ordinal::new(terms)
    }

    fn new(terms: Vec<CnfTerm>) -> Ordinal {
        let weight = terms.iter().fold(0u64, |acc, t| {
            acc.saturating_add(t.coeff.bits().max(1))
                .saturating_add(t.exponent.weight)
        });
        Ordinal {
            terms: terms.into(),
            weight,
        }
    }

    /// Total bit length of all coefficients, nested exponents included; a
    /// size measure for the written-out normal form.
    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn terms(&self) -> &[CnfTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a natural, when the ordinal is finite.
    pub fn as_finite(&self) -> Option<Nat> {
        match &self.terms[..] {
            [] => Some(Nat::zero()),
            [t] if t.exponent.is_zero() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    pub fn is_cnf(&self) -> bool {
        self.terms
            .iter()
            .all(|t| !t.coeff.is_zero() && t.exponent.is_cnf())
            && self
                .terms
                .windows(2)
                .all(|w| ord_compare(&w[0].exponent, &w[1].exponent) == Ordering::Greater)
    }

    pub fn classify(&self) -> OrdinalClass {
        match self.terms.last() {
            None => OrdinalClass::Zero,
            Some(last) if last.exponent.is_zero() => {
                let mut pred = self.terms.to_vec();
                let tail = pred.last_mut().expect("nonempty");
                tail.coeff -= 1u32;
                if tail.coeff.is_zero() {
                    pred.pop();
                }
                OrdinalClass::Successor(Ordinal::new(pred))
            }
            Some(_) => OrdinalClass::Limit,
        }
    }

    pub fn is_limit(&self) -> bool {
        self.classify() == OrdinalClass::Limit
    }

    /// `self · n` for a natural `n` on the right.
    pub fn mul_nat(&self, n: &Nat) -> Ordinal {
        if n.is_zero() || self.is_zero() {
            return Ordinal::zero();
        }
        let mut terms = self.terms.to_vec();
        terms[0].coeff *= n;
        Ordinal::new(terms)
    }

    /// The `n`-th element `λ[n]` of the fundamental sequence of a limit ordinal.
    pub fn fundamental(&self, n: &Nat) -> Result<Ordinal, OrdinalError> {
        if !self.is_limit() {
            return Err(OrdinalError::NotLimit(self.clone()));
        }
        let mut terms = self.terms.to_vec();
        let last = terms.pop().expect("limit ordinals are nonzero");
        if last.coeff > Nat::one() {
            terms.push(CnfTerm {
                exponent: last.exponent.clone(),
                coeff: &last.coeff - 1u32,
            });
        }
        match last.exponent.classify() {
            OrdinalClass::Zero => unreachable!("a trailing ω^0 term makes a successor"),
            OrdinalClass::Successor(pred) => {
                if !n.is_zero() {
                    terms.push(CnfTerm {
                        exponent: pred,
                        coeff: n.clone(),
                    });
                }
            }
            OrdinalClass::Limit => terms.push(CnfTerm {
                exponent: last.exponent.fundamental(n)?,
                coeff: Nat::one(),
            }),
        }
        Ok(Ordinal::new(terms))
    }
}

/// Lexicographic comparison of the CNF summand lists.
pub fn ord_compare(a: &Ordinal, b: &Ordinal) -> Ordering {
    if Arc::ptr_eq(&a.terms, &b.terms) {
        return Ordering::Equal;
    }
    for (x, y) in a.terms.iter().zip(b.terms.iter()) {
        let o = ord_compare(&x.exponent, &y.exponent).then_with(|| x.coeff.cmp(&y.coeff));
        if o != Ordering::Equal {
            return o;
        }
    }
    a.terms.len().cmp(&b.terms.len())
}

/// Ordinal addition; summands of `a` below the leading exponent of `b` are absorbed.
pub fn ord_add(a: &Ordinal, b: &Ordinal) -> Ordinal {
    let Some(lead) = b.terms.first() else {
        return a.clone();
    };
    let mut terms: Vec<CnfTerm> = a
        .terms
        .iter()
        .take_while(|t| ord_compare(&t.exponent, &lead.exponent) == Ordering::Greater)
        .cloned()
        .collect();
    let carried = a
        .terms
        .get(terms.len())
        .filter(|t| t.exponent == lead.exponent)
        .map(|t| &t.coeff);
    terms.push(CnfTerm {
        exponent: lead.exponent.clone(),
        coeff: carried.map_or_else(|| lead.coeff.clone(), |c| c + &lead.coeff),
    });
    terms.extend(b.terms[1..].iter().cloned());
    Ordinal::new(terms)
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Ordinal) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Ordinal) -> Ordering {
        ord_compare(self, other)
    }
}

impl Add for &Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: &Ordinal) -> Ordinal {
        ord_add(self, rhs)
    }
}

impl Add for Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: Ordinal) -> Ordinal {
        ord_add(&self, &rhs)
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Ordinal {
        Ordinal::from_nat(BigUint::from(n))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coeff)?;
                continue;
            }
            if t.exponent == Ordinal::one() {
                f.write_str("w")?;
            } else if t.exponent.as_finite().is_some() || t.exponent == Ordinal::omega() {
                write!(f, "w^{}", t.exponent)?;
            } else {
                write!(f, "w^({})", t.exponent)?;
            }
            if !t.coeff.is_one() {
                write!(f, "*{}", t.coeff)?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Ordinal {
    type Err = crate::notation::ParseError;

    fn from_str(s: &str) -> Result<Ordinal, Self::Err> {
        crate::notation::parse_ordinal(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> Ordinal {
        Ordinal::omega()
    }

    fn n(k: u64) -> Ordinal {
        Ordinal::from(k)
    }

    fn wpow(e: Ordinal) -> Ordinal {
        Ordinal::omega_pow(e)
    }

    fn nat(k: u64) -> Nat {
        Nat::from(k)
    }

    #[test]
    fn compare_examples() {
        assert_eq!(ord_compare(&n(0), &n(0)), Ordering::Equal);
        let w2_3 = &w().mul_nat(&nat(2)) + &n(3);
        assert_eq!(ord_compare(&w2_3, &wpow(n(2))), Ordering::Less);
        let w3_w = &wpow(n(3)) + &w();
        assert_eq!(ord_compare(&wpow(w()), &w3_w), Ordering::Greater);
    }

    #[test]
    fn add_examples() {
        assert_eq!(&n(1) + &w(), w());
        let w1 = &w() + &n(1);
        assert_eq!(w1.terms().len(), 2);
        assert_eq!(&w() + &w(), w().mul_nat(&nat(2)));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(n(0).classify(), OrdinalClass::Zero);
        assert_eq!(
            (&w() + &n(3)).classify(),
            OrdinalClass::Successor(&w() + &n(2))
        );
        assert_eq!(wpow(n(2)).classify(), OrdinalClass::Limit);
    }

    #[test]
    fn fundamental_examples() {
        assert_eq!(w().fundamental(&nat(7)).unwrap(), n(7));
        assert_eq!(wpow(w()).fundamental(&nat(2)).unwrap(), wpow(n(2)));
        assert_eq!(
            wpow(n(2)).fundamental(&nat(3)).unwrap(),
            w().mul_nat(&nat(3))
        );
        assert_eq!(
            w().mul_nat(&nat(2)).fundamental(&nat(3)).unwrap(),
            &w() + &n(3)
        );
        assert_eq!(w().fundamental(&nat(0)).unwrap(), n(0));
    }

    #[test]
    fn fundamental_rejects_non_limits() {
        assert!(matches!(
            n(0).fundamental(&nat(1)),
            Err(OrdinalError::NotLimit(_))
        ));
        assert!(matches!(
            (&w() + &n(1)).fundamental(&nat(1)),
            Err(OrdinalError::NotLimit(_))
        ));
    }

    #[test]
    fn cnf_check() {
        let bad = Ordinal::from_terms_unchecked(vec![
            CnfTerm {
                exponent: n(0),
                coeff: nat(1),
            },
            CnfTerm {
                exponent: n(1),
                coeff: nat(1),
            },
        ]);
        assert!(!bad.is_cnf());
        assert!(Ordinal::try_from_terms(bad.terms().to_vec()).is_err());
        let zero_coeff = vec![CnfTerm {
            exponent: n(1),
            coeff: nat(0),
        }];
        assert!(Ordinal::try_from_terms(zero_coeff).is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(n(0).to_string(), "0");
        assert_eq!((&w() + &n(1)).to_string(), "w+1");
        assert_eq!(w().mul_nat(&nat(2)).to_string(), "w*2");
        assert_eq!(wpow(w()).to_string(), "w^w");
        let e = &w() + &n(1);
        let big = &wpow(e).mul_nat(&nat(3)) + &n(5);
        assert_eq!(big.to_string(), "w^(w+1)*3+5");
        assert_eq!(wpow(wpow(n(2))).to_string(), "w^(w^2)");
    }
}
