//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use std::cmp::Ordering;

use aurellion::ordinals::{ord_compare, CnfTerm, Ordinal};
use aurellion::{Nat, Term};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

pub const BIT_CAP: u64 = 1 << 20;

/// `a↑^k b` by the four defining equations, or `None` once the value needs
/// more than `BIT_CAP` bits.
pub fn arrow_oracle(a: u64, k: u64, b: u64) -> Option<Nat> {
    assert!(k >= 1);
    if k == 1 {
        if a <= 1 || b == 0 {
            return Some(if b == 0 { Nat::one() } else { Nat::from(a) });
        }
        let bits = b as f64 * (a as f64).log2();
        if bits > BIT_CAP as f64 + 1.0 {
            return None;
        }
        let v = Nat::from(a).pow(b as u32);
        return (v.bits() <= BIT_CAP).then_some(v);
    }
    if b == 0 {
        return Some(Nat::one());
    }
    if b == 1 {
        return Some(Nat::from(a));
    }
    // a ≥ 2, k ≥ 2 and b > 64 is far beyond the cap; stops the recursion early
    if a >= 2 && b > 64 {
        return None;
    }
    let inner = arrow_oracle(a, k, b - 1)?;
    let inner = inner.to_u64()?;
    arrow_oracle(a, k - 1, inner)
}

/// `f_k(n)` for finite `k` by plain iteration of the defining clauses.
pub fn fgh_oracle(k: u32, n: &Nat) -> Nat {
    if k == 0 {
        return n + 1u32;
    }
    let times = n.to_u64().expect("small argument");
    let mut x = n.clone();
    for _ in 0..=times {
        x = fgh_oracle(k - 1, &x);
    }
    x
}

pub fn nat(v: u64) -> Nat {
    Nat::from(v)
}

pub fn lit(v: u64) -> Term {
    Term::lit(v)
}

pub fn arrow(a: u64, k: u64, b: u64) -> Term {
    Term::arrow(lit(a), lit(k), lit(b))
}

pub fn random_nat<R: Rng>(rng: &mut R) -> Nat {
    match rng.gen_range(0..10) {
        0..=5 => nat(rng.gen_range(0..12)),
        6..=7 => nat(rng.gen_range(0..1000)),
        8 => nat(rng.gen()),
        _ => {
            let digits: String = (0..rng.gen_range(20..40))
                .map(|i| {
                    let d = rng.gen_range(if i == 0 { 1 } else { 0 }..10u8);
                    (b'0' + d) as char
                })
                .collect();
            Nat::parse_bytes(digits.as_bytes(), 10).unwrap()
        }
    }
}

/// A random ordinal below ε₀ in CNF, with exponents nested up to `depth`.
pub fn random_ordinal<R: Rng>(rng: &mut R, depth: u32) -> Ordinal {
    let count = rng.gen_range(0..4);
    let mut exps: Vec<Ordinal> = (0..count)
        .map(|_| {
            if depth == 0 || rng.gen_bool(0.4) {
                Ordinal::from_nat(nat(rng.gen_range(0..4)))
            } else {
                random_ordinal(rng, depth - 1)
            }
        })
        .collect();
    exps.sort_by(|a, b| ord_compare(b, a));
    exps.dedup();
    let terms = exps
        .into_iter()
        .map(|exponent| CnfTerm {
            exponent,
            coeff: if rng.gen_bool(0.1) {
                random_nat(rng) + 1u32
            } else {
                nat(rng.gen_range(1..5))
            },
        })
        .collect();
    Ordinal::try_from_terms(terms).expect("sorted and deduplicated")
}

/// A random limit ordinal.
pub fn random_limit<R: Rng>(rng: &mut R, depth: u32) -> Ordinal {
    loop {
        let mut o = random_ordinal(rng, depth);
        if o.is_zero() {
            continue;
        }
        if o.as_finite().is_some() {
            o = Ordinal::omega_pow(o);
        }
        // dropping a trailing finite summand lands on a limit
        let terms = o.terms();
        if terms.last().is_some_and(|t| t.exponent.is_zero()) {
            let head = terms[..terms.len() - 1].to_vec();
            o = Ordinal::try_from_terms(head).unwrap();
        }
        if o.is_limit() {
            return o;
        }
    }
}

/// A random term of every constructor, including ill-formed ones.
pub fn random_term<R: Rng>(rng: &mut R, depth: u32) -> Term {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    let pick = if leaf {
        [0, 4, 5][rng.gen_range(0..3)]
    } else {
        rng.gen_range(0..6)
    };
    match pick {
        0 => Term::Lit(random_nat(rng)),
        1 => {
            let arrows = if rng.gen_bool(0.6) {
                lit(rng.gen_range(0..8))
            } else {
                random_term(rng, depth - 1)
            };
            Term::arrow(
                random_term(rng, depth - 1),
                arrows,
                random_term(rng, depth - 1),
            )
        }
        2 => Term::fgh(random_ordinal(rng, 2), random_term(rng, depth - 1)),
        3 => Term::iter(
            random_ordinal(rng, 2),
            random_nat(rng),
            random_term(rng, depth - 1),
        ),
        4 => Term::Aur(random_nat(rng)),
        _ => Term::AurOrd(random_ordinal(rng, 2)),
    }
}

pub fn ordinal_lt(a: &Ordinal, b: &Ordinal) -> bool {
    ord_compare(a, b) == Ordering::Less
}

/// Checks the CNF invariant from the outside: descending exponents, positive coefficients.
pub fn is_cnf(o: &Ordinal) -> bool {
    o.terms()
        .iter()
        .all(|t| !t.coeff.is_zero() && is_cnf(&t.exponent))
        && o.terms()
            .windows(2)
            .all(|w| ord_compare(&w[0].exponent, &w[1].exponent) == Ordering::Greater)
}
