//! Order relations between terms, with certificates a separate checker re-validates.
//!
//! [`compare`] searches for a derivation built from a fixed rule set (see
//! [`RuleId`]); every decided verdict carries a [`Certificate`] that
//! [`check_certificate`] has accepted. When no derivation is found the verdict
//! is `Unknown`.

mod certificate;
mod checker;
mod lemma1;
mod prover;
mod rules;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use certificate::{Certificate, CertificateError, Conclusion, Step, CERT_FORMAT};
pub use checker::{check_certificate, check_certificate_with, CheckFailure, FailureKind};
pub use lemma1::{lemma1_certificate, LemmaError, MAX_LEMMA1_INDEX};
pub use prover::{compare, compare_with, CompareOptions};
pub use rules::{Bindings, RuleId};

/// Relation concluded by one certificate step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rel {
    #[serde(rename = "Less")]
    Lt,
    #[serde(rename = "LessOrEqual")]
    Le,
    #[serde(rename = "Equal")]
    Eq,
    #[serde(rename = "GreaterOrEqual")]
    Ge,
    #[serde(rename = "Greater")]
    Gt,
}

impl Rel {
    pub fn name(self) -> &'static str {
        match self {
            Rel::Lt => "Less",
            Rel::Le => "LessOrEqual",
            Rel::Eq => "Equal",
            Rel::Ge => "GreaterOrEqual",
            Rel::Gt => "Greater",
        }
    }

    /// The relation with its sides swapped.
    pub fn converse(self) -> Rel {
        match self {
            Rel::Lt => Rel::Gt,
            Rel::Le => Rel::Ge,
            Rel::Eq => Rel::Eq,
            Rel::Ge => Rel::Le,
            Rel::Gt => Rel::Lt,
        }
    }

    pub fn weaken(self) -> Rel {
        match self {
            Rel::Lt => Rel::Le,
            Rel::Gt => Rel::Ge,
            other => other,
        }
    }

    pub fn is_decisive(self) -> bool {
        matches!(self, Rel::Lt | Rel::Eq | Rel::Gt)
    }

    /// Whether `self` holding entails `claimed`.
    pub fn implies(self, claimed: Rel) -> bool {
        self == claimed
            || matches!(
                (self, claimed),
                (Rel::Lt, Rel::Le) | (Rel::Gt, Rel::Ge) | (Rel::Eq, Rel::Le) | (Rel::Eq, Rel::Ge)
            )
    }

    /// `x self y` and `y other z` give `x (result) z`.
    pub fn compose(self, other: Rel) -> Option<Rel> {
        use Rel::*;
        match (self, other) {
            (Eq, r) | (r, Eq) => Some(r),
            (Lt, Lt | Le) | (Le, Lt) => Some(Lt),
            (Le, Le) => Some(Le),
            (Gt, Gt | Ge) | (Ge, Gt) => Some(Gt),
            (Ge, Ge) => Some(Ge),
            _ => None,
        }
    }

    /// Whether `self` is at least as strong as "not below" (`Gt`, `Ge`, `Eq`).
    pub fn is_upper(self) -> bool {
        matches!(self, Rel::Gt | Rel::Ge | Rel::Eq)
    }

    pub fn is_lower(self) -> bool {
        matches!(self, Rel::Lt | Rel::Le | Rel::Eq)
    }
}

impl From<Ordering> for Rel {
    fn from(o: Ordering) -> Rel {
        match o {
            Ordering::Less => Rel::Lt,
            Ordering::Equal => Rel::Eq,
            Ordering::Greater => Rel::Gt,
        }
    }
}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Less,
    Equal,
    Greater,
    Unknown,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Relation::Less => "Less",
            Relation::Equal => "Equal",
            Relation::Greater => "Greater",
            Relation::Unknown => "Unknown",
        }
    }

    pub fn inverse(self) -> Relation {
        match self {
            Relation::Less => Relation::Greater,
            Relation::Greater => Relation::Less,
            other => other,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of [`compare`]. `certificate` is present exactly when the relation is decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub relation: Relation,
    pub certificate: Option<Certificate>,
}

impl Verdict {
    pub fn unknown() -> Verdict {
        Verdict {
            relation: Relation::Unknown,
            certificate: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: [Rel; 5] = [Rel::Lt, Rel::Le, Rel::Eq, Rel::Ge, Rel::Gt];

    fn holds(r: Rel, x: i32, y: i32) -> bool {
        match r {
            Rel::Lt => x < y,
            Rel::Le => x <= y,
            Rel::Eq => x == y,
            Rel::Ge => x >= y,
            Rel::Gt => x > y,
        }
    }

    #[test]
    fn algebra_matches_integers() {
        let range = -2..=2;
        for a in ALL {
            for b in ALL {
                for x in range.clone() {
                    for y in range.clone() {
                        if holds(a, x, y) {
                            assert!(holds(a.converse(), y, x));
                            assert!(holds(a.weaken(), x, y));
                            if a.implies(b) {
                                assert!(holds(b, x, y), "{a:?} implies {b:?}");
                            }
                        }
                        for z in range.clone() {
                            if let Some(c) = a.compose(b) {
                                if holds(a, x, y) && holds(b, y, z) {
                                    assert!(holds(c, x, z), "{a:?};{b:?} => {c:?}");
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn mixed_directions_do_not_compose() {
        assert_eq!(Rel::Lt.compose(Rel::Gt), None);
        assert_eq!(Rel::Le.compose(Rel::Ge), None);
        assert_eq!(Rel::Ge.compose(Rel::Gt), Some(Rel::Gt));
    }
}
