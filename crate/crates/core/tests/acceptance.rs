//! One pass/fail line per acceptance criterion, each under its runtime limit.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use aurellion::dominance::{check_certificate, compare, lemma1_certificate, Rel, Relation};
use aurellion::engine::{eval, Budget};
use aurellion::notation::{parse_term, print_term};
use aurellion::{cli, Nat, Ordinal, Term};
use common::{arrow, arrow_oracle, fgh_oracle, lit, nat, ordinal_lt, random_limit, random_term};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn arrow_suite() -> Result<String, String> {
    let budget = Budget::default();
    let mut exact = 0;
    for a in 2..=4 {
        for k in 1..=3 {
            for b in 0..=4 {
                let Some(want) = arrow_oracle(a, k, b) else {
                    continue;
                };
                let got = eval(&arrow(a, k, b), &budget);
                ensure(got.exact() == Some(&want), || {
                    format!("{a}^[{k}]{b}: {got:?}")
                })?;
                exact += 1;
            }
        }
    }
    let tower = eval(&arrow(2, 2, 4), &budget);
    ensure(tower.exact() == Some(&nat(65536)), || "2^^4".into())?;
    let three = eval(&arrow(3, 2, 3), &budget);
    ensure(three.exact() == Some(&nat(7625597484987)), || "3^^3".into())?;
    Ok(format!("{exact} evaluable cases match"))
}

fn fgh_suite() -> Result<String, String> {
    let budget = Budget::default();
    let f = |k: u64, n: u64| eval(&Term::fgh(Ordinal::from(k), lit(n)), &budget);
    for n in 0..=1000u64 {
        ensure(f(0, n).exact() == Some(&nat(n + 1)), || format!("f0({n})"))?;
        ensure(f(1, n).exact() == Some(&nat(2 * n + 1)), || {
            format!("f1({n})")
        })?;
    }
    for n in 0..=10u64 {
        let closed = (Nat::one() << (n + 1)) * (n + 1) - 1u32;
        ensure(fgh_oracle(2, &nat(n)) == closed, || {
            format!("oracle f2({n})")
        })?;
        ensure(f(2, n).exact() == Some(&closed), || format!("f2({n})"))?;
    }
    ensure(fgh_oracle(3, &nat(1)) == nat(2047), || {
        "oracle f3(1)".into()
    })?;
    ensure(f(3, 1).exact() == Some(&nat(2047)), || "f3(1)".into())?;
    Ok("f0, f1 to 1000; f2 to 10; f3(1) = 2047".into())
}

fn lemma1_suite() -> Result<String, String> {
    for n in 1..=64u64 {
        let c = lemma1_certificate(&nat(n)).map_err(|e| format!("n = {n}: {e}"))?;
        check_certificate(&c).map_err(|e| format!("n = {n}: {e}"))?;
        let want = if n == 1 { Rel::Eq } else { Rel::Gt };
        ensure(c.conclusion.relation == want, || {
            format!("n = {n}: concluded {:?}", c.conclusion.relation)
        })?;
    }
    Ok("64 certificates validate".into())
}

fn soundness_suite() -> Result<String, String> {
    let mut items = Vec::new();
    for a in 2..=4 {
        for k in 1..=3 {
            for b in 0..=4 {
                if let Some(v) = arrow_oracle(a, k, b) {
                    items.push((arrow(a, k, b), v));
                }
            }
        }
    }
    let budget = Budget::default();
    let (mut decided, mut pairs) = (0, 0);
    for (s, x) in &items {
        for (t, y) in &items {
            pairs += 1;
            let v = compare(s, t, &budget);
            let want = match x.cmp(y) {
                std::cmp::Ordering::Less => Relation::Less,
                std::cmp::Ordering::Equal => Relation::Equal,
                std::cmp::Ordering::Greater => Relation::Greater,
            };
            if v.relation == Relation::Unknown {
                continue;
            }
            ensure(v.relation == want, || {
                format!("{s} vs {t}: {:?}", v.relation)
            })?;
            let cert = v
                .certificate
                .ok_or_else(|| format!("{s} vs {t}: no certificate"))?;
            check_certificate(&cert).map_err(|e| format!("{s} vs {t}: {e}"))?;
            decided += 1;
        }
    }
    let v = compare(&arrow(2, 9, 2), &arrow(2, 3, 2), &budget);
    ensure(v.relation == Relation::Equal, || {
        format!("2^[9]2 vs 2^^^2: {:?}", v.relation)
    })?;
    Ok(format!(
        "{decided}/{pairs} decided, 0 disagreements; 2^[9]2 = 2^^^2"
    ))
}

fn ordinal_suite() -> Result<String, String> {
    let w = Ordinal::omega();
    for n in 0..=32u64 {
        ensure(w.fundamental(&nat(n)) == Ok(Ordinal::from(n)), || {
            format!("w[{n}]")
        })?;
    }
    let ww = Ordinal::omega_pow(w.clone());
    ensure(
        ww.fundamental(&nat(2)) == Ok(Ordinal::omega_pow(Ordinal::from(2))),
        || "(w^w)[2]".into(),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xa11ce);
    for _ in 0..200 {
        let lambda = random_limit(&mut rng, 3);
        let mut prev: Option<Ordinal> = None;
        for n in 0..=32u64 {
            let x = lambda.fundamental(&nat(n)).map_err(|e| e.to_string())?;
            ensure(ordinal_lt(&x, &lambda), || {
                format!("{lambda}[{n}] = {x} not below")
            })?;
            if let Some(p) = &prev {
                ensure(ordinal_lt(p, &x), || {
                    format!("{lambda}[{n}] not increasing")
                })?;
            }
            prev = Some(x);
        }
    }
    Ok("w[n] = n, (w^w)[2] = w^2, 200 limits x 33 members".into())
}

fn round_trip_suite() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..10_000 {
        let depth = rng.gen_range(0..6);
        let t = random_term(&mut rng, depth);
        let text = print_term(&t);
        let back = parse_term(&text).map_err(|e| format!("#{i} {text}: {e}"))?;
        ensure(back == t, || format!("#{i} {text} reparsed differently"))?;
    }
    Ok("10000 terms".into())
}

const FUZZ_ATOMS: &[&str] = &[
    "3",
    "0",
    "10",
    "A[2]",
    "AO[w]",
    "AO[w+2]",
    "f[2](3)",
    "f[w](2)",
    "iter[1,3](2)",
    "w",
    "w^w",
    "^",
    "^^",
    "^[",
    "]",
    "(",
    ")",
    "[",
    "+",
    "*",
    "-",
    " ",
    "x",
    "\u{3c9}",
    "999999999999",
];

fn fuzz_string(rng: &mut ChaCha8Rng) -> String {
    match rng.gen_range(0..4) {
        0 => {
            let depth = rng.gen_range(0..4);
            print_term(&random_term(rng, depth))
        }
        1 => (0..rng.gen_range(0..24))
            .map(|_| char::from(rng.gen_range(0x20u8..0x7f)))
            .collect(),
        _ => (0..rng.gen_range(1..8))
            .map(|_| FUZZ_ATOMS[rng.gen_range(0..FUZZ_ATOMS.len())])
            .collect(),
    }
}

fn fuzz_args(rng: &mut ChaCha8Rng) -> (Vec<String>, Vec<u8>) {
    let mut args = vec!["aurellion".to_string()];
    if rng.gen_bool(0.3) {
        args.push("--json".into());
    }
    args.extend([
        "--max-steps".into(),
        rng.gen_range(1..=5_000u64).to_string(),
        "--max-bits".into(),
        rng.gen_range(1..1u64 << 16).to_string(),
    ]);
    let commands: &[&[&str]] = &[
        &["parse", "_"],
        &["eval", "_"],
        &["eval", "--full", "_"],
        &["trace", "--steps", "#", "_"],
        &["compare", "_", "_"],
        &["compare", "--cert", "_", "_"],
        &["cert", "lemma1", "#"],
        &["cert", "check", "-"],
        &["hier", "aur", "#"],
        &["hier", "ord", "_"],
        &["hier", "limit", "_", "#"],
        &["hier", "fgh", "_", "#"],
        &["_"],
        &["eval", "-"],
    ];
    for part in commands[rng.gen_range(0..commands.len())] {
        args.push(match *part {
            "_" => fuzz_string(rng),
            "#" => rng.gen_range(0..40u64).to_string(),
            other => other.to_string(),
        });
    }
    let stdin = if rng.gen_bool(0.5) {
        let c = lemma1_certificate(&nat(rng.gen_range(1..5)))
            .unwrap()
            .to_json();
        let mut bytes = c.into_bytes();
        let digits: Vec<usize> = (0..bytes.len())
            .filter(|&i| bytes[i].is_ascii_digit())
            .collect();
        for _ in 0..rng.gen_range(0..3) {
            let i = digits[rng.gen_range(0..digits.len())];
            bytes[i] = b'0' + rng.gen_range(0..10);
        }
        if rng.gen_bool(0.2) {
            let i = rng.gen_range(0..bytes.len());
            bytes[i] = rng.gen();
        }
        bytes
    } else {
        fuzz_string(rng).into_bytes()
    };
    (args, stdin)
}

fn fuzz_suite() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xf022);
    let mut seen = [0usize; 5];
    for i in 0..10_000 {
        let (args, stdin) = fuzz_args(&mut rng);
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = catch_unwind(AssertUnwindSafe(|| {
            cli::run(
                args.clone(),
                &mut stdin.as_slice(),
                &mut out,
                &mut err,
                &|_| None,
            )
        }))
        .map_err(|_| format!("#{i} panicked on {args:?}"))?;
        ensure((0..=4).contains(&code), || {
            format!("#{i} exit {code} on {args:?}")
        })?;
        seen[code as usize] += 1;
    }
    Ok(format!("10000 runs, exit codes 0..=4 seen {seen:?}"))
}

fn main() {
    let criteria: [(&str, Check, u64); 7] = [
        ("arrow-recursion oracle suite", arrow_suite, 10),
        ("fast-growing hierarchy suite", fgh_suite, 5),
        ("lemma 1 certificates", lemma1_suite, 5),
        ("dominance soundness", soundness_suite, 60),
        ("ordinal fundamental sequences", ordinal_suite, 5),
        ("parse/print round trip", round_trip_suite, 30),
        ("CLI robustness fuzz", fuzz_suite, 60),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let line = format!("{name}: {:.2}s (limit {limit}s)", elapsed.as_secs_f64());
        match result {
            Ok(detail) if in_time => println!("PASS {line}: {detail}"),
            Ok(detail) => {
                failed += 1;
                println!("FAIL {line}: too slow; {detail}");
            }
            Err(why) => {
                failed += 1;
                println!("FAIL {line}: {why}");
            }
        }
    }
    let _ = std::panic::take_hook();
    println!("{} of 7 criteria passed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
