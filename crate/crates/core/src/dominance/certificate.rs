//! Certificate data and its `cert_v1` JSON form.
//!
//! ```json
//! {"format": "cert_v1",
//!  "conclusion": {"lhs": TERM, "rhs": TERM, "relation": "Greater"},
//!  "steps": [{"rule": "R-NORM", "lhs": TERM, "rhs": TERM, "relation": "Equal",
//!             "premises": [], "bindings": {}}]}
//! ```
//!
//! Terms use the JSON AST. `premises` index earlier steps.

use serde::{Deserialize, Serialize};

use super::rules::{Bindings, Fact, RuleId};
use super::Rel;
use crate::terms::Term;

pub const CERT_FORMAT: &str = "cert_v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conclusion {
    pub lhs: Term,
    pub rhs: Term,
    pub relation: Rel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: RuleId,
    pub lhs: Term,
    pub rhs: Term,
    pub relation: Rel,
    #[serde(default)]
    pub premises: Vec<usize>,
    #[serde(default)]
    pub bindings: Bindings,
}

impl Step {
    pub(crate) fn fact(&self) -> Fact<'_> {
        Fact {
            lhs: &self.lhs,
            rhs: &self.rhs,
            rel: self.relation,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CertRepr", into = "CertRepr")]
pub struct Certificate {
    pub conclusion: Conclusion,
    pub steps: Vec<Step>,
}

#[derive(Debug, thiserror::Error)]
pub enum CertificateError {
    #[error("malformed certificate JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates always serialize")
    }

    pub fn from_json(text: &str) -> Result<Certificate, CertificateError> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertRepr {
    format: String,
    conclusion: Conclusion,
    steps: Vec<Step>,
}

impl TryFrom<CertRepr> for Certificate {
    type Error = String;

    fn try_from(r: CertRepr) -> Result<Certificate, String> {
        if r.format != CERT_FORMAT {
            return Err(format!(
                "unsupported certificate format {:?}, expected {CERT_FORMAT:?}",
                r.format
            ));
        }
        Ok(Certificate {
            conclusion: r.conclusion,
            steps: r.steps,
        })
    }
}

impl From<Certificate> for CertRepr {
    fn from(c: Certificate) -> CertRepr {
        CertRepr {
            format: CERT_FORMAT.to_string(),
            conclusion: c.conclusion,
            steps: c.steps,
        }
    }
}
