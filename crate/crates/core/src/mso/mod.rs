//! Classical monadic second-order logic over word structures.
//!
//! Element quantifiers range over the full universe `{0} ∪ [ℓ(w)]`, set
//! quantifiers over its subsets. Use [`stock::pos`] to restrict attention to
//! letter-bearing positions.

mod eval;
pub mod stock;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

pub(crate) use eval::{eval3, Truth3};
pub use eval::satisfies;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MsoFormula {
    True,
    False,
    /// `P_a(x)`.
    Letter(char, String),
    /// `x ≤ y`.
    Leq(String, String),
    /// `x = y`.
    Eq(String, String),
    /// `x ∈ X`.
    In(String, String),
    Not(Box<MsoFormula>),
    And(Box<MsoFormula>, Box<MsoFormula>),
    Or(Box<MsoFormula>, Box<MsoFormula>),
    Implies(Box<MsoFormula>, Box<MsoFormula>),
    Exists(String, Box<MsoFormula>),
    Forall(String, Box<MsoFormula>),
    ExistsSet(String, Box<MsoFormula>),
    ForallSet(String, Box<MsoFormula>),
}

/// Free variables, split by sort.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeVars {
    pub elements: BTreeSet<String>,
    pub sets: BTreeSet<String>,
}

impl FreeVars {
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty() && self.sets.is_empty()
    }

    pub fn extend(&mut self, other: FreeVars) {
        self.elements.extend(other.elements);
        self.sets.extend(other.sets);
    }
}

impl MsoFormula {
    pub fn letter(a: char, x: &str) -> Self {
        MsoFormula::Letter(a, x.to_string())
    }

    pub fn leq(x: &str, y: &str) -> Self {
        MsoFormula::Leq(x.to_string(), y.to_string())
    }

    pub fn eq(x: &str, y: &str) -> Self {
        MsoFormula::Eq(x.to_string(), y.to_string())
    }

    pub fn member(x: &str, set: &str) -> Self {
        MsoFormula::In(x.to_string(), set.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        MsoFormula::Not(Box::new(self))
    }

    pub fn and(self, rhs: MsoFormula) -> Self {
        MsoFormula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: MsoFormula) -> Self {
        MsoFormula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: MsoFormula) -> Self {
        MsoFormula::Implies(Box::new(self), Box::new(rhs))
    }

    pub fn exists(x: &str, body: MsoFormula) -> Self {
        MsoFormula::Exists(x.to_string(), Box::new(body))
    }

    pub fn forall(x: &str, body: MsoFormula) -> Self {
        MsoFormula::Forall(x.to_string(), Box::new(body))
    }

    pub fn exists_set(x: &str, body: MsoFormula) -> Self {
        MsoFormula::ExistsSet(x.to_string(), Box::new(body))
    }

    pub fn forall_set(x: &str, body: MsoFormula) -> Self {
        MsoFormula::ForallSet(x.to_string(), Box::new(body))
    }

    /// Conjunction of a list; the empty conjunction is `True`.
    pub fn all(parts: impl IntoIterator<Item = MsoFormula>) -> Self {
        let mut parts: Vec<_> = parts.into_iter().collect();
        let Some(mut acc) = parts.pop() else {
            return MsoFormula::True;
        };
        while let Some(p) = parts.pop() {
            acc = p.and(acc);
        }
        acc
    }

    /// Disjunction of a list; the empty disjunction is `False`.
    pub fn any(parts: impl IntoIterator<Item = MsoFormula>) -> Self {
        let mut parts: Vec<_> = parts.into_iter().collect();
        let Some(mut acc) = parts.pop() else {
            return MsoFormula::False;
        };
        while let Some(p) = parts.pop() {
            acc = p.or(acc);
        }
        acc
    }

    pub fn free_vars(&self) -> FreeVars {
        let mut out = FreeVars::default();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut FreeVars) {
        let elem = |x: &'a str, bound: &Vec<&'a str>, out: &mut FreeVars| {
            if !bound.contains(&x) {
                out.elements.insert(x.to_string());
            }
        };
        match self {
            MsoFormula::True | MsoFormula::False => {}
            MsoFormula::Letter(_, x) => elem(x, bound, out),
            MsoFormula::Leq(x, y) | MsoFormula::Eq(x, y) => {
                elem(x, bound, out);
                elem(y, bound, out);
            }
            MsoFormula::In(x, set) => {
                elem(x, bound, out);
                if !bound.contains(&set.as_str()) {
                    out.sets.insert(set.clone());
                }
            }
            MsoFormula::Not(a) => a.collect_free(bound, out),
            MsoFormula::And(a, b) | MsoFormula::Or(a, b) | MsoFormula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            MsoFormula::Exists(x, a)
            | MsoFormula::Forall(x, a)
            | MsoFormula::ExistsSet(x, a)
            | MsoFormula::ForallSet(x, a) => {
                bound.push(x);
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name occurring anywhere, free or bound.
    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    pub(crate) fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            MsoFormula::True | MsoFormula::False => {}
            MsoFormula::Letter(_, x) => {
                out.insert(x.clone());
            }
            MsoFormula::Leq(x, y) | MsoFormula::Eq(x, y) | MsoFormula::In(x, y) => {
                out.insert(x.clone());
                out.insert(y.clone());
            }
            MsoFormula::Not(a) => a.collect_names(out),
            MsoFormula::And(a, b) | MsoFormula::Or(a, b) | MsoFormula::Implies(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            MsoFormula::Exists(x, a)
            | MsoFormula::Forall(x, a)
            | MsoFormula::ExistsSet(x, a)
            | MsoFormula::ForallSet(x, a) => {
                out.insert(x.clone());
                a.collect_names(out);
            }
        }
    }

    /// Names bound by a quantifier somewhere in the formula.
    pub fn binders(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        fn go(f: &MsoFormula, out: &mut BTreeSet<String>) {
            match f {
                MsoFormula::Not(a) => go(a, out),
                MsoFormula::And(a, b) | MsoFormula::Or(a, b) | MsoFormula::Implies(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                MsoFormula::Exists(x, a)
                | MsoFormula::Forall(x, a)
                | MsoFormula::ExistsSet(x, a)
                | MsoFormula::ForallSet(x, a) => {
                    out.insert(x.clone());
                    go(a, out);
                }
                _ => {}
            }
        }
        go(self, &mut out);
        out
    }

    /// Rejects binders that reuse the name of an enclosing binder.
    pub fn check_no_shadowing(&self) -> Result<()> {
        fn go<'a>(f: &'a MsoFormula, scope: &mut Vec<&'a str>) -> Result<()> {
            match f {
                MsoFormula::Not(a) => go(a, scope),
                MsoFormula::And(a, b) | MsoFormula::Or(a, b) | MsoFormula::Implies(a, b) => {
                    go(a, scope)?;
                    go(b, scope)
                }
                MsoFormula::Exists(x, a)
                | MsoFormula::Forall(x, a)
                | MsoFormula::ExistsSet(x, a)
                | MsoFormula::ForallSet(x, a) => {
                    if scope.contains(&x.as_str()) {
                        return Err(Error::Shadowing(x.clone()));
                    }
                    scope.push(x);
                    let r = go(a, scope);
                    scope.pop();
                    r
                }
                _ => Ok(()),
            }
        }
        go(self, &mut Vec::new())
    }

    /// Maximal nesting depth of quantifiers.
    pub fn quantifier_rank(&self) -> usize {
        match self {
            MsoFormula::Not(a) => a.quantifier_rank(),
            MsoFormula::And(a, b) | MsoFormula::Or(a, b) | MsoFormula::Implies(a, b) => {
                a.quantifier_rank().max(b.quantifier_rank())
            }
            MsoFormula::Exists(_, a)
            | MsoFormula::Forall(_, a)
            | MsoFormula::ExistsSet(_, a)
            | MsoFormula::ForallSet(_, a) => 1 + a.quantifier_rank(),
            _ => 0,
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            MsoFormula::Not(a)
            | MsoFormula::Exists(_, a)
            | MsoFormula::Forall(_, a)
            | MsoFormula::ExistsSet(_, a)
            | MsoFormula::ForallSet(_, a) => 1 + a.size(),
            MsoFormula::And(a, b) | MsoFormula::Or(a, b) | MsoFormula::Implies(a, b) => {
                1 + a.size() + b.size()
            }
            _ => 1,
        }
    }
}

pub(crate) fn write_chain<'a, T: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    op: &str,
    first: &T,
    mut rest: &'a T,
    split: impl Fn(&'a T) -> Option<(&'a T, &'a T)>,
) -> fmt::Result {
    write!(f, "({op} {first}")?;
    while let Some((l, r)) = split(rest) {
        write!(f, " {l}")?;
        rest = r;
    }
    write!(f, " {rest})")
}

impl fmt::Display for MsoFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MsoFormula::True => f.write_str("true"),
            MsoFormula::False => f.write_str("false"),
            MsoFormula::Letter(a, x) => write!(f, "(P{a} {x})"),
            MsoFormula::Leq(x, y) => write!(f, "(leq {x} {y})"),
            MsoFormula::Eq(x, y) => write!(f, "(eq {x} {y})"),
            MsoFormula::In(x, s) => write!(f, "(in {x} {s})"),
            MsoFormula::Not(a) => write!(f, "(not {a})"),
            MsoFormula::And(a, b) => write_chain(f, "and", &**a, &**b, |t| match t {
                MsoFormula::And(l, r) => Some((&**l, &**r)),
                _ => None,
            }),
            MsoFormula::Or(a, b) => write_chain(f, "or", &**a, &**b, |t| match t {
                MsoFormula::Or(l, r) => Some((&**l, &**r)),
                _ => None,
            }),
            MsoFormula::Implies(a, b) => write!(f, "(imp {a} {b})"),
            MsoFormula::Exists(x, a) => write!(f, "(exists {x} {a})"),
            MsoFormula::Forall(x, a) => write!(f, "(forall {x} {a})"),
            MsoFormula::ExistsSet(x, a) => write!(f, "(existsset {x} {a})"),
            MsoFormula::ForallSet(x, a) => write!(f, "(forallset {x} {a})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    type F = MsoFormula;

    #[test]
    fn rank_examples() {
        assert_eq!(F::letter('1', "x").quantifier_rank(), 0);
        let f = F::exists("x", F::forall("y", F::leq("x", "y")));
        assert_eq!(f.quantifier_rank(), 2);
        let f = F::exists_set(
            "X",
            F::exists("x", F::member("x", "X")).and(F::exists("y", F::letter('1', "y"))),
        );
        assert_eq!(f.quantifier_rank(), 2);
    }

    #[test]
    fn free_variables() {
        let f = F::forall_set("X", F::member("x", "X").implies(F::leq("x", "y")));
        let fv = f.free_vars();
        assert_eq!(fv.elements.into_iter().collect::<Vec<_>>(), ["x", "y"]);
        assert!(fv.sets.is_empty());
    }

    #[test]
    fn shadowing_rejected() {
        let f = F::exists("x", F::forall("x", F::leq("x", "x")));
        assert_eq!(f.check_no_shadowing(), Err(Error::Shadowing("x".into())));
        let ok = F::exists("x", F::True).and(F::exists("x", F::True));
        assert!(ok.check_no_shadowing().is_ok());
    }

    #[test]
    fn display_chains() {
        let f = F::all([F::True, F::False, F::letter('1', "x")]);
        assert_eq!(format!("{f}"), "(and true false (P1 x))");
        let g = F::forall_set("X", F::member("x", "X").implies(F::leq("x", "y")));
        assert_eq!(format!("{g}"), "(forallset X (imp (in x X) (leq x y)))");
    }
}
