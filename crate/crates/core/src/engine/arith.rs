use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::terms::Nat;

/// log₂ of a nonzero natural, accurate to f64 precision.
fn log2(n: &Nat) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return (n.to_u64().expect("fits in 64 bits") as f64).log2();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_u64().expect("64 leading bits");
    (top as f64).log2() + shift as f64
}

/// `a^b`, or `None` when the result would need more than `max_bits` bits.
///
/// The size is estimated as `b·log₂ a` first and the power is only computed
/// when the estimate does not already rule it out.
pub(crate) fn bounded_pow(a: &Nat, b: &Nat, max_bits: u64) -> Option<Nat> {
    if b.is_zero() {
        return Some(Nat::one());
    }
    if a.is_zero() || a.is_one() {
        return Some(a.clone());
    }
    // a ≥ 2, so the result has more than b bits
    let exp = b.to_u64().filter(|&e| e <= max_bits)?;
    let estimate = exp as f64 * log2(a);
    // exact bit length is floor(estimate) + 1; leave room for rounding
    if estimate * (1.0 - 1e-9) > max_bits as f64 {
        return None;
    }
    let r: Nat = Pow::pow(a, exp);
    (r.bits() <= max_bits).then_some(r)
}
