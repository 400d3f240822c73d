//! Command-line front end.
//!
//! Exit codes: 0 success, 1 input error, 2 overflow or stuck evaluation,
//! 3 unknown comparison, 4 invalid certificate.
//!
//! An expression argument of `-` is read from standard input.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::dominance::{
    check_certificate_with, compare, lemma1_certificate, Certificate, Relation,
};
use crate::engine::{self, Budget, EvalOutcome, TraceEnd, DEFAULT_MAX_BITS, DEFAULT_MAX_STEPS};
use crate::hierarchies::{self, FamilyParams};
use crate::notation::{parse_ordinal, parse_term, ParseError};
use crate::ordinals::Ordinal;
use crate::terms::{Nat, Term};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_OVERFLOW: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;
pub const EXIT_INVALID_CERT: i32 = 4;

pub const ENV_MAX_STEPS: &str = "AURELLION_MAX_STEPS";
pub const ENV_MAX_BITS: &str = "AURELLION_MAX_BITS";

/// Values with at least this many digits are elided unless `--full` is given.
pub const ELIDE_DIGITS: usize = 10_000;
/// Digits kept at each end of an elided value.
pub const ELIDE_KEEP: usize = 20;
/// Residual and trace terms longer than this many characters are elided.
pub const ELIDE_CHARS: usize = 10_000;
const ELIDE_CHARS_KEEP: usize = 200;

#[derive(Parser, Debug)]
#[command(
    name = "aurellion",
    version,
    about = "Exact and symbolic arithmetic on up-arrow, fast-growing and Aurellion terms"
)]
struct Cli {
    /// Rewrite-step limit (default 1000000, or $AURELLION_MAX_STEPS)
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_steps: Option<u64>,
    /// Bit-length limit for intermediate values (default 1048576, or $AURELLION_MAX_BITS)
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_bits: Option<u64>,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and print in canonical form
    Parse { expr: String },
    /// Evaluate exactly under the budget
    Eval {
        expr: String,
        /// Print every digit and the whole residual
        #[arg(long)]
        full: bool,
    },
    /// Print the first rewrite steps
    Trace {
        expr: String,
        #[arg(long, default_value_t = 100)]
        steps: u64,
    },
    /// Decide the order between two terms
    Compare {
        lhs: String,
        rhs: String,
        /// Also print the certificate
        #[arg(long)]
        cert: bool,
    },
    /// Produce or check certificates
    #[command(subcommand)]
    Cert(CertCommand),
    /// Build terms of the named families
    #[command(subcommand)]
    Hier(HierCommand),
}

#[derive(Subcommand, Debug)]
enum CertCommand {
    /// Certificate of A[n] >= 10^[n+2]10
    Lemma1 { n: String },
    /// Validate a cert_v1 file, or `-` for standard input
    Check { file: String },
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long, default_value = "10")]
    base: String,
    #[arg(long, default_value = "3")]
    seed_arrows: String,
    #[arg(long, default_value = "10")]
    seed_height: String,
}

#[derive(Subcommand, Debug)]
enum HierCommand {
    /// Fully unfolded A[n]
    Aur {
        n: String,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// AO[alpha] unfolded through its successor chain
    Ord { alpha: String },
    /// The n-th approximant AO[lambda[n]] of a limit index
    Limit { lambda: String, n: String },
    /// f[alpha](n)
    Fgh { alpha: String, n: String },
}

/// A failure that ends the command with exit code 1.
struct InputError {
    kind: &'static str,
    message: String,
    offset: Option<usize>,
    source: Option<String>,
}

impl InputError {
    fn new(kind: &'static str, message: impl Into<String>) -> InputError {
        InputError {
            kind,
            message: message.into(),
            offset: None,
            source: None,
        }
    }

    fn syntax(e: ParseError, source: &str) -> InputError {
        InputError {
            kind: "syntax",
            message: e.to_string(),
            offset: Some(e.offset),
            source: Some(source.to_string()),
        }
    }
}

struct Ctx<'a> {
    json: bool,
    budget: Budget,
    stdin: &'a mut dyn Read,
    stdin_used: bool,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn read_arg(&mut self, arg: &str) -> Result<String, InputError> {
        if arg != "-" {
            return Ok(arg.to_string());
        }
        if self.stdin_used {
            return Err(InputError::new(
                "usage",
                "standard input can be read only once",
            ));
        }
        self.stdin_used = true;
        let mut bytes = Vec::new();
        self.stdin
            .read_to_end(&mut bytes)
            .map_err(|e| InputError::new("io", format!("reading standard input: {e}")))?;
        String::from_utf8(bytes)
            .map_err(|_| InputError::new("io", "standard input is not valid UTF-8"))
    }

    fn term(&mut self, arg: &str) -> Result<Term, InputError> {
        let src = self.read_arg(arg)?;
        let src = src.trim();
        let t = parse_term(src).map_err(|e| InputError::syntax(e, src))?;
        let report = t.validate();
        if !report.is_valid() {
            return Err(InputError::new("validation", report.to_string()));
        }
        Ok(t)
    }

    fn emit(&mut self, text: &str) {
        let _ = writeln!(self.out, "{text}");
    }

    fn emit_json(&mut self, v: &Value) {
        let _ = writeln!(
            self.out,
            "{}",
            serde_json::to_string(v).expect("values serialize")
        );
    }
}

fn parse_nat(s: &str, what: &str) -> Result<Nat, InputError> {
    let s = s.trim();
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(InputError::new(
            "usage",
            format!("{what} must be a natural number, got {s:?}"),
        ));
    }
    Ok(Nat::parse_bytes(s.as_bytes(), 10).expect("digits"))
}

fn ordinal(s: &str) -> Result<Ordinal, InputError> {
    let s = s.trim();
    parse_ordinal(s).map_err(|e| InputError::syntax(e, s))
}

fn env_budget_value(
    flag: Option<u64>,
    env: &dyn Fn(&str) -> Option<String>,
    var: &str,
    default: u64,
) -> Result<u64, InputError> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match env(var) {
        None => Ok(default),
        Some(s) => match s.trim().parse::<u64>() {
            Ok(v) if v >= 1 => Ok(v),
            _ => Err(InputError::new(
                "usage",
                format!("{var} must be an integer >= 1, got {s:?}"),
            )),
        },
    }
}

/// Runs one command line. `args` includes the program name.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    env: &dyn Fn(&str) -> Option<String>,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_INPUT
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    let json = cli.json;
    let budget =
        env_budget_value(cli.max_steps, env, ENV_MAX_STEPS, DEFAULT_MAX_STEPS).and_then(|steps| {
            let bits = env_budget_value(cli.max_bits, env, ENV_MAX_BITS, DEFAULT_MAX_BITS)?;
            Budget::new(steps, bits).map_err(|e| InputError::new("usage", e.to_string()))
        });
    let mut ctx = Ctx {
        json,
        budget: Budget::default(),
        stdin,
        stdin_used: false,
        out: stdout,
    };
    let result = budget.and_then(|b| {
        ctx.budget = b;
        dispatch(&mut ctx, cli.command)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            report_error(&mut ctx, stderr, &e);
            EXIT_INPUT
        }
    }
}

fn report_error(ctx: &mut Ctx, stderr: &mut dyn Write, e: &InputError) {
    let _ = writeln!(stderr, "error: {}", e.message);
    if let (Some(offset), Some(src)) = (e.offset, &e.source) {
        if !src.contains('\n') && src.len() <= 200 {
            let col = src.get(..offset).map_or(offset, |p| p.chars().count());
            let _ = writeln!(stderr, "  {src}\n  {}^", " ".repeat(col));
        }
    }
    if ctx.json {
        let mut err = json!({"kind": e.kind, "message": e.message});
        if let Some(offset) = e.offset {
            err["offset"] = json!(offset);
        }
        ctx.emit_json(&json!({ "error": err }));
    }
}

fn dispatch(ctx: &mut Ctx, cmd: Command) -> Result<i32, InputError> {
    match cmd {
        Command::Parse { expr } => {
            let t = ctx.term(&expr)?;
            emit_term(ctx, &t);
            Ok(EXIT_OK)
        }
        Command::Eval { expr, full } => {
            let t = ctx.term(&expr)?;
            Ok(cmd_eval(ctx, &t, full))
        }
        Command::Trace { expr, steps } => {
            let t = ctx.term(&expr)?;
            if steps == 0 {
                return Err(InputError::new("usage", "--steps must be at least 1"));
            }
            cmd_trace(ctx, &t, steps);
            Ok(EXIT_OK)
        }
        Command::Compare { lhs, rhs, cert } => {
            let l = ctx.term(&lhs)?;
            let r = ctx.term(&rhs)?;
            Ok(cmd_compare(ctx, &l, &r, cert))
        }
        Command::Cert(CertCommand::Lemma1 { n }) => {
            let n = parse_nat(&n, "n")?;
            let c = lemma1_certificate(&n).map_err(|e| InputError::new("usage", e.to_string()))?;
            ctx.emit(&c.to_json());
            Ok(EXIT_OK)
        }
        Command::Cert(CertCommand::Check { file }) => {
            let text = if file == "-" {
                ctx.read_arg("-")?
            } else {
                std::fs::read_to_string(&file)
                    .map_err(|e| InputError::new("io", format!("reading {file}: {e}")))?
            };
            let c = Certificate::from_json(&text)
                .map_err(|e| InputError::new("certificate", e.to_string()))?;
            Ok(cmd_check(ctx, &c))
        }
        Command::Hier(h) => {
            let t = hier_term(h)?;
            emit_term(ctx, &t);
            Ok(EXIT_OK)
        }
    }
}

fn hier_term(h: HierCommand) -> Result<Term, InputError> {
    let herr = |e: hierarchies::HierarchyError| InputError::new("hierarchy", e.to_string());
    match h {
        HierCommand::Aur { n, family } => {
            let n = parse_nat(&n, "n")?;
            let params = FamilyParams::new(
                parse_nat(&family.base, "--base")?,
                parse_nat(&family.seed_arrows, "--seed-arrows")?,
                parse_nat(&family.seed_height, "--seed-height")?,
            )
            .map_err(herr)?;
            hierarchies::aurellion_term(&n, &params).map_err(herr)
        }
        HierCommand::Ord { alpha } => Ok(hierarchies::aurellion_ordinal_term(&ordinal(&alpha)?)),
        HierCommand::Limit { lambda, n } => {
            hierarchies::expand_limit(&ordinal(&lambda)?, &parse_nat(&n, "n")?).map_err(herr)
        }
        HierCommand::Fgh { alpha, n } => Ok(hierarchies::fgh_term(
            &ordinal(&alpha)?,
            &parse_nat(&n, "n")?,
        )),
    }
}

fn emit_term(ctx: &mut Ctx, t: &Term) {
    if ctx.json {
        ctx.emit_json(&serde_json::to_value(t).expect("terms serialize"));
    } else {
        ctx.emit(&t.to_string());
    }
}

/// Digit count plus leading and trailing digits when the value is long.
fn elide_value(n: &Nat, full: bool) -> (String, Option<(String, String)>, usize) {
    let digits = n.to_string();
    let len = digits.len();
    if full || len < ELIDE_DIGITS {
        return (digits, None, len);
    }
    let lead = digits[..ELIDE_KEEP].to_string();
    let trail = digits[len - ELIDE_KEEP..].to_string();
    (
        format!("[{len} digits] {lead}...{trail}"),
        Some((lead, trail)),
        len,
    )
}

fn elide_text(s: String, full: bool) -> String {
    if full || s.len() <= ELIDE_CHARS {
        return s;
    }
    let mut head = ELIDE_CHARS_KEEP;
    while !s.is_char_boundary(head) {
        head -= 1;
    }
    let mut tail = s.len() - ELIDE_CHARS_KEEP;
    while !s.is_char_boundary(tail) {
        tail += 1;
    }
    format!("{} ... [{} chars] ... {}", &s[..head], s.len(), &s[tail..])
}

/// Term nodes plus the weight of every ordinal index.
fn ast_size(t: &Term) -> u64 {
    let mut stack = vec![t];
    let mut size = 0u64;
    while let Some(t) = stack.pop() {
        size = size.saturating_add(1);
        if let Term::Fgh { index, .. } | Term::Iter { index, .. } | Term::AurOrd(index) = t {
            size = size.saturating_add(index.weight());
        }
        stack.extend(t.children().into_iter().map(|(_, c)| c));
    }
    size
}

fn residual_json(t: &Term, full: bool) -> Value {
    let m = t.measure();
    let mut v = json!({
        "residual_text": elide_text(t.to_string(), full),
        "residual_nodes": m.node_count,
    });
    v["residual"] = if full || ast_size(t) <= ELIDE_CHARS as u64 {
        serde_json::to_value(t).expect("terms serialize")
    } else {
        Value::Null
    };
    v
}

fn cmd_eval(ctx: &mut Ctx, t: &Term, full: bool) -> i32 {
    let outcome = engine::eval(t, &ctx.budget);
    match &outcome {
        EvalOutcome::Exact(n) => {
            let (text, elided, digits) = elide_value(n, full);
            if ctx.json {
                let mut v = json!({"outcome": "exact", "digits": digits});
                match elided {
                    None => v["value"] = json!(text),
                    Some((lead, trail)) => {
                        v["leading"] = json!(lead);
                        v["trailing"] = json!(trail);
                    }
                }
                ctx.emit_json(&v);
            } else {
                ctx.emit(&text);
            }
            EXIT_OK
        }
        EvalOutcome::Overflow {
            residual,
            reason,
            steps_used,
        } => {
            report_unfinished(ctx, "overflow", reason.name(), *steps_used, residual, full);
            EXIT_OVERFLOW
        }
        EvalOutcome::Stuck {
            residual,
            reason,
            steps_used,
        } => {
            report_unfinished(ctx, "stuck", reason.name(), *steps_used, residual, full);
            EXIT_OVERFLOW
        }
    }
}

fn report_unfinished(
    ctx: &mut Ctx,
    outcome: &str,
    reason: &str,
    steps: u64,
    residual: &Term,
    full: bool,
) {
    if ctx.json {
        let mut v = residual_json(residual, full);
        v["outcome"] = json!(outcome);
        v["reason"] = json!(reason);
        v["steps_used"] = json!(steps);
        ctx.emit_json(&v);
    } else {
        ctx.emit(&format!("{outcome}: {reason} after {steps} steps"));
        ctx.emit(&format!(
            "residual: {}",
            elide_text(residual.to_string(), full)
        ));
    }
}

fn cmd_trace(ctx: &mut Ctx, t: &Term, steps: u64) {
    let tr = engine::trace_with(
        t,
        &Budget {
            max_steps: steps,
            ..ctx.budget
        },
    );
    let end = match &tr.end {
        TraceEnd::Value(n) => json!({"kind": "value", "value": n.to_string()}),
        TraceEnd::Stuck(r) => json!({"kind": "stuck", "reason": r.name()}),
        TraceEnd::MagnitudeLimit => json!({"kind": "overflow", "reason": "MagnitudeLimit"}),
        TraceEnd::Truncated => json!({"kind": "truncated"}),
    };
    if ctx.json {
        let entries: Vec<Value> = tr
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| {
                json!({
                    "index": i + 1,
                    "rule": e.rule.name(),
                    "term": serde_json::to_value(&e.term).expect("terms serialize"),
                })
            })
            .collect();
        ctx.emit_json(&json!({"steps": entries, "end": end}));
    } else {
        for (i, e) in tr.entries.iter().enumerate() {
            let line = format!(
                "#{} [{}] {}",
                i + 1,
                e.rule,
                elide_text(e.term.to_string(), false)
            );
            ctx.emit(&line);
        }
        let last = match &tr.end {
            TraceEnd::Value(n) => format!("value: {}", elide_value(n, false).0),
            TraceEnd::Stuck(r) => format!("stuck: {r}"),
            TraceEnd::MagnitudeLimit => "overflow: MagnitudeLimit".to_string(),
            TraceEnd::Truncated => format!("truncated after {} steps", tr.entries.len()),
        };
        ctx.emit(&last);
    }
}

fn cmd_compare(ctx: &mut Ctx, l: &Term, r: &Term, with_cert: bool) -> i32 {
    let v = compare(l, r, &ctx.budget);
    if ctx.json {
        let cert = match (&v.certificate, with_cert) {
            (Some(c), true) => serde_json::to_value(c).expect("certificates serialize"),
            _ => Value::Null,
        };
        ctx.emit_json(&json!({"relation": v.relation.name(), "certificate": cert}));
    } else {
        ctx.emit(v.relation.name());
        if let (Some(c), true) = (&v.certificate, with_cert) {
            ctx.emit(&c.to_json());
        }
    }
    if v.relation == Relation::Unknown {
        EXIT_UNKNOWN
    } else {
        EXIT_OK
    }
}

fn cmd_check(ctx: &mut Ctx, c: &Certificate) -> i32 {
    match check_certificate_with(c, &ctx.budget) {
        Ok(()) => {
            if ctx.json {
                ctx.emit_json(&json!({"valid": true}));
            } else {
                ctx.emit("valid");
            }
            EXIT_OK
        }
        Err(f) => {
            if ctx.json {
                ctx.emit_json(&json!({
                    "valid": false,
                    "step": f.step,
                    "kind": format!("{:?}", f.kind),
                    "message": f.message,
                }));
            } else {
                ctx.emit(&format!("invalid: {f}"));
            }
            EXIT_INVALID_CERT
        }
    }
}
