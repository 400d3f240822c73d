//! JSON AST.
//!
//! Terms serialize as objects tagged by `"kind"`:
//!
//! ```json
//! {"kind": "arrow",
//!  "base":   {"kind": "lit", "value": "10"},
//!  "arrows": {"kind": "aur", "n": "1"},
//!  "height": {"kind": "lit", "value": "10"}}
//! ```
//!
//! Naturals are decimal strings. Ordinals are arrays of `[exponent, coeff]`
//! pairs in CNF order, so `0` is `[]`, `1` is `[[[], "1"]]` and `ω` is
//! `[[[[[], "1"]], "1"]]`.

use std::sync::Arc;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, SerializeStruct, SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::ordinals::{CnfTerm, Ordinal};
use crate::stack::guarded;
use crate::terms::{Nat, Term};

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        guarded(|| match self {
            Term::Lit(n) => {
                let mut m = s.serialize_struct("Term", 2)?;
                m.serialize_field("kind", "lit")?;
                m.serialize_field("value", &n.to_string())?;
                m.end()
            }
            Term::Arrow {
                base,
                arrows,
                height,
            } => {
                let mut m = s.serialize_struct("Term", 4)?;
                m.serialize_field("kind", "arrow")?;
                m.serialize_field("base", &**base)?;
                m.serialize_field("arrows", &**arrows)?;
                m.serialize_field("height", &**height)?;
                m.end()
            }
            Term::Fgh { index, arg } => {
                let mut m = s.serialize_struct("Term", 3)?;
                m.serialize_field("kind", "fgh")?;
                m.serialize_field("index", index)?;
                m.serialize_field("arg", &**arg)?;
                m.end()
            }
            Term::Iter { index, count, arg } => {
                let mut m = s.serialize_struct("Term", 4)?;
                m.serialize_field("kind", "iter")?;
                m.serialize_field("index", index)?;
                m.serialize_field("count", &count.to_string())?;
                m.serialize_field("arg", &**arg)?;
                m.end()
            }
            Term::Aur(n) => {
                let mut m = s.serialize_struct("Term", 2)?;
                m.serialize_field("kind", "aur")?;
                m.serialize_field("n", &n.to_string())?;
                m.end()
            }
            Term::AurOrd(alpha) => {
                let mut m = s.serialize_struct("Term", 2)?;
                m.serialize_field("kind", "aurord")?;
                m.serialize_field("index", alpha)?;
                m.end()
            }
        })
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms().len()))?;
        for t in self.terms() {
            seq.serialize_element(&SummandRef(t))?;
        }
        seq.end()
    }
}

struct SummandRef<'a>(&'a CnfTerm);

impl Serialize for SummandRef<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut tup = s.serialize_tuple(2)?;
        tup.serialize_element(&self.0.exponent)?;
        tup.serialize_element(&self.0.coeff.to_string())?;
        tup.end()
    }
}

/// Serde adapter for naturals as decimal strings.
pub mod nat_string {
    use super::*;

    pub fn serialize<S: Serializer>(n: &Nat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Nat, D::Error> {
        let s = String::deserialize(d)?;
        parse_nat(&s).map_err(de::Error::custom)
    }
}

fn parse_nat(s: &str) -> Result<Nat, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("expected a decimal natural, got {s:?}"));
    }
    Ok(Nat::parse_bytes(s.as_bytes(), 10).expect("checked digits"))
}

#[derive(Deserialize)]
struct NatRepr(#[serde(with = "nat_string")] Nat);

#[derive(Deserialize)]
struct OrdinalRepr(Vec<(OrdinalRepr, NatRepr)>);

impl OrdinalRepr {
    fn into_ordinal(self) -> Result<Ordinal, String> {
        let terms = self
            .0
            .into_iter()
            .map(|(e, c)| {
                Ok(CnfTerm {
                    exponent: e.into_ordinal()?,
                    coeff: c.0,
                })
            })
            .collect::<Result<Vec<_>, String>>()?;
        Ordinal::try_from_terms(terms).map_err(|e| e.to_string())
    }
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum TermRepr {
    Lit {
        value: NatRepr,
    },
    Arrow {
        base: Box<TermRepr>,
        arrows: Box<TermRepr>,
        height: Box<TermRepr>,
    },
    Fgh {
        index: OrdinalRepr,
        arg: Box<TermRepr>,
    },
    Iter {
        index: OrdinalRepr,
        count: NatRepr,
        arg: Box<TermRepr>,
    },
    Aur {
        n: NatRepr,
    },
    Aurord {
        index: OrdinalRepr,
    },
}

impl TermRepr {
    fn into_term(self) -> Result<Term, String> {
        Ok(match self {
            TermRepr::Lit { value } => Term::Lit(value.0),
            TermRepr::Arrow {
                base,
                arrows,
                height,
            } => Term::Arrow {
                base: Arc::new(base.into_term()?),
                arrows: Arc::new(arrows.into_term()?),
                height: Arc::new(height.into_term()?),
            },
            TermRepr::Fgh { index, arg } => Term::fgh(index.into_ordinal()?, arg.into_term()?),
            TermRepr::Iter { index, count, arg } => {
                Term::iter(index.into_ordinal()?, count.0, arg.into_term()?)
            }
            TermRepr::Aur { n } => Term::Aur(n.0),
            TermRepr::Aurord { index } => Term::AurOrd(index.into_ordinal()?),
        })
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Term, D::Error> {
        TermRepr::deserialize(d)?
            .into_term()
            .map_err(de::Error::custom)
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Ordinal, D::Error> {
        OrdinalRepr::deserialize(d)?
            .into_ordinal()
            .map_err(de::Error::custom)
    }
}
