mod common;

use aurellion::notation::{parse_ordinal, parse_term, print_ordinal, print_term};
use aurellion::Term;
use common::{random_ordinal, random_term};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn term(seed: u64, depth: u32) -> Term {
    random_term(&mut ChaCha8Rng::seed_from_u64(seed), depth)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn text_round_trip(seed in any::<u64>(), depth in 0u32..6) {
        let t = term(seed, depth);
        let text = print_term(&t);
        let back = parse_term(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(print_term(&back), text);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), depth in 0u32..6) {
        let t = term(seed, depth);
        let json = serde_json::to_string(&t).unwrap();
        let back: Term = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn ordinal_text_round_trip(seed in any::<u64>()) {
        let o = random_ordinal(&mut ChaCha8Rng::seed_from_u64(seed), 3);
        prop_assert_eq!(parse_ordinal(&print_ordinal(&o)).unwrap(), o);
    }

    #[test]
    fn parser_never_panics(src in "[0-9^\\[\\]()fAOiterw+*,. ]{0,40}") {
        let _ = parse_term(&src);
    }
}

#[test]
fn whitespace_is_insignificant() {
    let a = parse_term("3 ^^ ( 2 ^ 3 )").unwrap();
    let b = parse_term("3^^(2^3)").unwrap();
    assert_eq!(a, b);
}

#[test]
fn errors_carry_offsets() {
    let e = parse_term("3^^").unwrap_err();
    assert!(e.offset <= 3, "{e:?}");
    assert!(parse_term("").is_err());
    assert!(parse_term("3^^2)").is_err());
}
