use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::ordinals::Ordinal;
use crate::stack::guarded;
use crate::terms::Term;

/// Arrow counts up to this many print as repeated carets.
const MAX_CARETS: u64 = 5;

/// Canonical text of a term; reparses to a structurally equal term.
pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, &mut out);
    out
}

pub fn print_ordinal(o: &Ordinal) -> String {
    o.to_string()
}

fn write_term(t: &Term, out: &mut String) {
    guarded(|| match t {
        Term::Lit(n) => {
            let _ = write!(out, "{n}");
        }
        Term::Arrow {
            base,
            arrows,
            height,
        } => {
            if matches!(**base, Term::Arrow { .. }) {
                out.push('(');
                write_term(base, out);
                out.push(')');
            } else {
                write_term(base, out);
            }
            match arrows.as_lit().and_then(ToPrimitive::to_u64) {
                Some(k @ 1..=MAX_CARETS) => out.push_str(&"^".repeat(k as usize)),
                _ => {
                    out.push_str("^[");
                    write_term(arrows, out);
                    out.push(']');
                }
            }
            // a chain continues only under the same operator
            let continues_chain =
                matches!(&**height, Term::Arrow { arrows: inner, .. } if inner == arrows);
            if matches!(**height, Term::Arrow { .. }) && !continues_chain {
                out.push('(');
                write_term(height, out);
                out.push(')');
            } else {
                write_term(height, out);
            }
        }
        Term::Fgh { index, arg } => {
            let _ = write!(out, "f[{index}](");
            write_term(arg, out);
            out.push(')');
        }
        Term::Iter { index, count, arg } => {
            let _ = write!(out, "iter[{index},{count}](");
            write_term(arg, out);
            out.push(')');
        }
        Term::Aur(n) => {
            let _ = write!(out, "A[{n}]");
        }
        Term::AurOrd(alpha) => {
            let _ = write!(out, "AO[{alpha}]");
        }
    })
}
