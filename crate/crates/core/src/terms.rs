//! The symbolic term language.
//!
//! A [`Term`] is an immutable tree. Children are reference counted so that
//! rewriting can share unchanged subterms, and every traversal in this module
//! is iterative: evaluation routinely produces residuals nested hundreds of
//! thousands of levels deep.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::mem;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::ordinals::Ordinal;

/// Arbitrary-precision natural number.
pub type Nat = BigUint;

#[derive(Clone, Debug)]
pub enum Term {
    /// A natural-number literal.
    Lit(Nat),
    /// `base ↑^arrows height`. The arrow count is itself a term.
    Arrow {
        base: Arc<Term>,
        arrows: Arc<Term>,
        height: Arc<Term>,
    },
    /// `f_index(arg)` in the fast-growing hierarchy.
    Fgh { index: Ordinal, arg: Arc<Term> },
    /// `f_index` applied `count` times to `arg`.
    Iter {
        index: Ordinal,
        count: Nat,
        arg: Arc<Term>,
    },
    /// `A_n` of the finite-index Aurellion sequence (`A_1 = 10↑↑↑10`).
    Aur(Nat),
    /// `A_alpha` of the ordinal-indexed family (`A_0 = 10↑↑10`).
    AurOrd(Ordinal),
}

impl Term {
    pub fn lit(n: impl Into<Nat>) -> Term {
        Term::Lit(n.into())
    }

    /// Builds `base ↑^arrows height` without simplification.
    pub fn arrow(base: Term, arrows: Term, height: Term) -> Term {
        Term::Arrow {
            base: Arc::new(base),
            arrows: Arc::new(arrows),
            height: Arc::new(height),
        }
    }

    pub fn fgh(index: Ordinal, arg: Term) -> Term {
        Term::Fgh {
            index,
            arg: Arc::new(arg),
        }
    }

    pub fn iter(index: Ordinal, count: impl Into<Nat>, arg: Term) -> Term {
        Term::Iter {
            index,
            count: count.into(),
            arg: Arc::new(arg),
        }
    }

    pub fn aur(n: impl Into<Nat>) -> Term {
        Term::Aur(n.into())
    }

    pub fn aur_ord(alpha: Ordinal) -> Term {
        Term::AurOrd(alpha)
    }

    pub fn as_lit(&self) -> Option<&Nat> {
        match self {
            Term::Lit(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_lit(&self) -> bool {
        matches!(self, Term::Lit(_))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Term::Lit(_) => "lit",
            Term::Arrow { .. } => "arrow",
            Term::Fgh { .. } => "fgh",
            Term::Iter { .. } => "iter",
            Term::Aur(_) => "aur",
            Term::AurOrd(_) => "aurord",
        }
    }

    /// Direct children in base, arrows, height / arg order.
    pub fn children(&self) -> Vec<(PathSeg, &Term)> {
        match self {
            Term::Arrow {
                base,
                arrows,
                height,
            } => vec![
                (PathSeg::Base, &**base),
                (PathSeg::Arrows, &**arrows),
                (PathSeg::Height, &**height),
            ],
            Term::Fgh { arg, .. } | Term::Iter { arg, .. } => vec![(PathSeg::Arg, &**arg)],
            _ => Vec::new(),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    pub fn measure(&self) -> Measure {
        measure(self)
    }

    fn take_children(&mut self, out: &mut Vec<Arc<Term>>) {
        match self {
            Term::Arrow {
                base,
                arrows,
                height,
            } => {
                out.push(mem::replace(base, placeholder()));
                out.push(mem::replace(arrows, placeholder()));
                out.push(mem::replace(height, placeholder()));
            }
            Term::Fgh { arg, .. } | Term::Iter { arg, .. } => {
                out.push(mem::replace(arg, placeholder()));
            }
            _ => {}
        }
    }
}

fn placeholder() -> Arc<Term> {
    static LEAF: OnceLock<Arc<Term>> = OnceLock::new();
    LEAF.get_or_init(|| Arc::new(Term::Lit(Nat::zero())))
        .clone()
}

impl Drop for Term {
    fn drop(&mut self) {
        let mut pending = Vec::new();
        self.take_children(&mut pending);
        while let Some(child) = pending.pop() {
            if let Ok(mut owned) = Arc::try_unwrap(child) {
                owned.take_children(&mut pending);
            }
        }
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        let mut pending: Vec<(&Term, &Term)> = vec![(self, other)];
        while let Some((a, b)) = pending.pop() {
            if std::ptr::eq(a, b) {
                continue;
            }
            match (a, b) {
                (Term::Lit(x), Term::Lit(y)) | (Term::Aur(x), Term::Aur(y)) => {
                    if x != y {
                        return false;
                    }
                }
                (
                    Term::Arrow {
                        base: b1,
                        arrows: k1,
                        height: h1,
                    },
                    Term::Arrow {
                        base: b2,
                        arrows: k2,
                        height: h2,
                    },
                ) => {
                    pending.push((h1, h2));
                    pending.push((k1, k2));
                    pending.push((b1, b2));
                }
                (Term::Fgh { index: i1, arg: a1 }, Term::Fgh { index: i2, arg: a2 }) => {
                    if i1 != i2 {
                        return false;
                    }
                    pending.push((a1, a2));
                }
                (
                    Term::Iter {
                        index: i1,
                        count: c1,
                        arg: a1,
                    },
                    Term::Iter {
                        index: i2,
                        count: c2,
                        arg: a2,
                    },
                ) => {
                    if i1 != i2 || c1 != c2 {
                        return false;
                    }
                    pending.push((a1, a2));
                }
                (Term::AurOrd(x), Term::AurOrd(y)) => {
                    if x != y {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let mut pending: Vec<&Term> = vec![self];
        while let Some(t) = pending.pop() {
            mem::discriminant(t).hash(state);
            match t {
                Term::Lit(n) | Term::Aur(n) => n.hash(state),
                Term::Arrow {
                    base,
                    arrows,
                    height,
                } => {
                    pending.push(height);
                    pending.push(arrows);
                    pending.push(base);
                }
                Term::Fgh { index, arg } => {
                    index.hash(state);
                    pending.push(arg);
                }
                Term::Iter { index, count, arg } => {
                    index.hash(state);
                    count.hash(state);
                    pending.push(arg);
                }
                Term::AurOrd(alpha) => alpha.hash(state),
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::notation::print_term(self))
    }
}

impl std::str::FromStr for Term {
    type Err = crate::notation::ParseError;

    fn from_str(s: &str) -> Result<Term, Self::Err> {
        crate::notation::parse_term(s)
    }
}

/// One edge of a path from the root into a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathSeg {
    Base,
    Arrows,
    Height,
    Arg,
    Index,
}

impl PathSeg {
    pub fn name(self) -> &'static str {
        match self {
            PathSeg::Base => "base",
            PathSeg::Arrows => "arrows",
            PathSeg::Height => "height",
            PathSeg::Arg => "arg",
            PathSeg::Index => "index",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TermPath(pub Vec<PathSeg>);

impl fmt::Display for TermPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for seg in &self.0 {
            write!(f, ".{}", seg.name())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// A literal arrow count of zero.
    ZeroArrowCount,
    /// `A[0]`; the finite family starts at index 1.
    ZeroAurellionIndex,
    /// An ordinal that is not in strict Cantor normal form.
    MalformedOrdinal,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::ZeroArrowCount => "arrow count must be at least 1",
            ViolationKind::ZeroAurellionIndex => "Aurellion index must be at least 1",
            ViolationKind::MalformedOrdinal => "ordinal is not in Cantor normal form",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub path: TermPath,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.kind, self.path)
    }
}

/// Every well-formedness violation found in a term. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub fn validate(t: &Term) -> ValidationReport {
    let mut violations = Vec::new();
    let mut pending: Vec<(&Term, Vec<PathSeg>)> = vec![(t, Vec::new())];
    while let Some((node, path)) = pending.pop() {
        let mut flag = |extra: Option<PathSeg>, kind| {
            let mut p = path.clone();
            p.extend(extra);
            violations.push(Violation {
                path: TermPath(p),
                kind,
            });
        };
        match node {
            Term::Arrow { arrows, .. } => {
                if arrows.as_lit().is_some_and(Zero::is_zero) {
                    flag(Some(PathSeg::Arrows), ViolationKind::ZeroArrowCount);
                }
            }
            Term::Aur(n) if n.is_zero() => flag(None, ViolationKind::ZeroAurellionIndex),
            Term::Fgh { index, .. } | Term::Iter { index, .. } if !index.is_cnf() => {
                flag(Some(PathSeg::Index), ViolationKind::MalformedOrdinal)
            }
            Term::AurOrd(alpha) if !alpha.is_cnf() => {
                flag(Some(PathSeg::Index), ViolationKind::MalformedOrdinal)
            }
            _ => {}
        }
        // reversed so violations come out in left-to-right order
        for (seg, child) in node.children().into_iter().rev() {
            let mut p = path.clone();
            p.push(seg);
            pending.push((child, p));
        }
    }
    ValidationReport { violations }
}

/// Structural size of a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measure {
    /// Nodes on the longest root-to-leaf path.
    pub depth: u64,
    pub node_count: u64,
}

pub fn measure(t: &Term) -> Measure {
    let mut depth = 0;
    let mut node_count = 0;
    let mut pending: Vec<(&Term, u64)> = vec![(t, 1)];
    while let Some((node, d)) = pending.pop() {
        node_count += 1;
        depth = depth.max(d);
        for (_, child) in node.children() {
            pending.push((child, d + 1));
        }
    }
    Measure { depth, node_count }
}
