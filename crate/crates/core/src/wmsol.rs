//! Weighted MSO over a commutative semiring and its syntactic fragments.
//!
//! Quantifiers range over the letter-bearing positions `1..=ℓ(w)` and their
//! subsets. Disjunction and existential quantification are sums,
//! conjunction and universal quantification are products.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::env::{Binding, Env};
use crate::error::{Error, Result};
use crate::mso::{satisfies, stock, write_chain, FreeVars, MsoFormula};
use crate::semiring::Semiring;
use crate::word::{enumerate_words, word_to_structure, Alphabet, Assignment, PosSet, Word, WordStructure};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WAtom {
    Letter(char, String),
    Leq(String, String),
    In(String, String),
}

impl WAtom {
    fn to_mso(&self) -> MsoFormula {
        match self {
            WAtom::Letter(a, x) => MsoFormula::letter(*a, x),
            WAtom::Leq(x, y) => MsoFormula::leq(x, y),
            WAtom::In(x, s) => MsoFormula::member(x, s),
        }
    }

    fn holds(&self, s: &WordStructure, env: &Env<'_>) -> Result<bool> {
        Ok(match self {
            WAtom::Letter(a, x) => s.has_letter(env.element(x)?, *a),
            WAtom::Leq(x, y) => env.element(x)? <= env.element(y)?,
            WAtom::In(x, set) => {
                let e = env.element(x)?;
                let (members, _) = env.set(set)?;
                e < 64 && members >> e & 1 == 1
            }
        })
    }
}

impl fmt::Display for WAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WAtom::Letter(a, x) => write!(f, "(P{a} {x})"),
            WAtom::Leq(x, y) => write!(f, "(leq {x} {y})"),
            WAtom::In(x, s) => write!(f, "(in {x} {s})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum WmsolFormula<S> {
    Const(S),
    Atom(WAtom),
    /// `¬P_a(x)`, `¬x≤y`, `x∉X`.
    NegAtom(WAtom),
    /// Negation of a compound formula; admitted only over bMSOL.
    Not(Box<WmsolFormula<S>>),
    Or(Box<WmsolFormula<S>>, Box<WmsolFormula<S>>),
    And(Box<WmsolFormula<S>>, Box<WmsolFormula<S>>),
    Exists(String, Box<WmsolFormula<S>>),
    ExistsSet(String, Box<WmsolFormula<S>>),
    Forall(String, Box<WmsolFormula<S>>),
    ForallSet(String, Box<WmsolFormula<S>>),
}

/// Syntactic fragment membership.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FragmentClass {
    pub is_bmsol: bool,
    pub is_step: bool,
    pub is_rmsol: bool,
    pub is_full: bool,
}

impl fmt::Display for FragmentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "bmsol={} step={} rmsol={} wmsol={}",
            self.is_bmsol, self.is_step, self.is_rmsol, self.is_full
        )
    }
}

/// One disjunct `φ_i ∧ k_i` of a step formula.
#[derive(Clone, Debug, PartialEq)]
pub struct StepCase<'a, S> {
    pub guards: Vec<&'a WmsolFormula<S>>,
    pub weight: S,
}

impl<S: Semiring> WmsolFormula<S> {
    pub fn constant(k: S) -> Self {
        WmsolFormula::Const(k)
    }

    pub fn letter(a: char, x: &str) -> Self {
        WmsolFormula::Atom(WAtom::Letter(a, x.to_string()))
    }

    pub fn not_letter(a: char, x: &str) -> Self {
        WmsolFormula::NegAtom(WAtom::Letter(a, x.to_string()))
    }

    pub fn leq(x: &str, y: &str) -> Self {
        WmsolFormula::Atom(WAtom::Leq(x.to_string(), y.to_string()))
    }

    pub fn not_leq(x: &str, y: &str) -> Self {
        WmsolFormula::NegAtom(WAtom::Leq(x.to_string(), y.to_string()))
    }

    pub fn member(x: &str, set: &str) -> Self {
        WmsolFormula::Atom(WAtom::In(x.to_string(), set.to_string()))
    }

    pub fn not_member(x: &str, set: &str) -> Self {
        WmsolFormula::NegAtom(WAtom::In(x.to_string(), set.to_string()))
    }

    /// Negation: complemented atom for atoms, a `Not` node otherwise.
    pub fn negate(self) -> Self {
        match self {
            WmsolFormula::Atom(a) => WmsolFormula::NegAtom(a),
            WmsolFormula::NegAtom(a) => WmsolFormula::Atom(a),
            other => WmsolFormula::Not(Box::new(other)),
        }
    }

    pub fn or(self, rhs: Self) -> Self {
        WmsolFormula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn and(self, rhs: Self) -> Self {
        WmsolFormula::And(Box::new(self), Box::new(rhs))
    }

    pub fn exists(x: &str, body: Self) -> Self {
        WmsolFormula::Exists(x.to_string(), Box::new(body))
    }

    pub fn exists_set(x: &str, body: Self) -> Self {
        WmsolFormula::ExistsSet(x.to_string(), Box::new(body))
    }

    pub fn forall(x: &str, body: Self) -> Self {
        WmsolFormula::Forall(x.to_string(), Box::new(body))
    }

    pub fn forall_set(x: &str, body: Self) -> Self {
        WmsolFormula::ForallSet(x.to_string(), Box::new(body))
    }

    pub fn free_vars(&self) -> FreeVars {
        fn go<'a, S>(f: &'a WmsolFormula<S>, bound: &mut Vec<&'a str>, out: &mut FreeVars) {
            let atom = |a: &'a WAtom, bound: &Vec<&'a str>, out: &mut FreeVars| match a {
                WAtom::Letter(_, x) => {
                    if !bound.contains(&x.as_str()) {
                        out.elements.insert(x.clone());
                    }
                }
                WAtom::Leq(x, y) => {
                    for v in [x, y] {
                        if !bound.contains(&v.as_str()) {
                            out.elements.insert(v.clone());
                        }
                    }
                }
                WAtom::In(x, s) => {
                    if !bound.contains(&x.as_str()) {
                        out.elements.insert(x.clone());
                    }
                    if !bound.contains(&s.as_str()) {
                        out.sets.insert(s.clone());
                    }
                }
            };
            match f {
                WmsolFormula::Const(_) => {}
                WmsolFormula::Atom(a) | WmsolFormula::NegAtom(a) => atom(a, bound, out),
                WmsolFormula::Not(a) => go(a, bound, out),
                WmsolFormula::Or(a, b) | WmsolFormula::And(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                WmsolFormula::Exists(x, a)
                | WmsolFormula::ExistsSet(x, a)
                | WmsolFormula::Forall(x, a)
                | WmsolFormula::ForallSet(x, a) => {
                    bound.push(x);
                    go(a, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = FreeVars::default();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            WmsolFormula::Atom(a) | WmsolFormula::NegAtom(a) => match a {
                WAtom::Letter(_, x) => {
                    out.insert(x.clone());
                }
                WAtom::Leq(x, y) | WAtom::In(x, y) => {
                    out.insert(x.clone());
                    out.insert(y.clone());
                }
            },
            WmsolFormula::Exists(x, _)
            | WmsolFormula::ExistsSet(x, _)
            | WmsolFormula::Forall(x, _)
            | WmsolFormula::ForallSet(x, _) => {
                out.insert(x.clone());
            }
            _ => {}
        });
        out
    }

    fn visit(&self, f: &mut dyn FnMut(&WmsolFormula<S>)) {
        f(self);
        match self {
            WmsolFormula::Not(a)
            | WmsolFormula::Exists(_, a)
            | WmsolFormula::ExistsSet(_, a)
            | WmsolFormula::Forall(_, a)
            | WmsolFormula::ForallSet(_, a) => a.visit(f),
            WmsolFormula::Or(a, b) | WmsolFormula::And(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            _ => {}
        }
    }

    pub fn check_no_shadowing(&self) -> Result<()> {
        fn go<'a, S>(f: &'a WmsolFormula<S>, scope: &mut Vec<&'a str>) -> Result<()> {
            match f {
                WmsolFormula::Not(a) => go(a, scope),
                WmsolFormula::Or(a, b) | WmsolFormula::And(a, b) => {
                    go(a, scope)?;
                    go(b, scope)
                }
                WmsolFormula::Exists(x, a)
                | WmsolFormula::ExistsSet(x, a)
                | WmsolFormula::Forall(x, a)
                | WmsolFormula::ForallSet(x, a) => {
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

    pub fn quantifier_rank(&self) -> usize {
        match self {
            WmsolFormula::Not(a) => a.quantifier_rank(),
            WmsolFormula::Or(a, b) | WmsolFormula::And(a, b) => a.quantifier_rank().max(b.quantifier_rank()),
            WmsolFormula::Exists(_, a)
            | WmsolFormula::ExistsSet(_, a)
            | WmsolFormula::Forall(_, a)
            | WmsolFormula::ForallSet(_, a) => 1 + a.quantifier_rank(),
            _ => 0,
        }
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    /// Checks that compound negation is applied only to bMSOL formulas.
    pub fn validate(&self) -> Result<()> {
        let mut bad = None;
        self.visit(&mut |f| {
            if let WmsolFormula::Not(a) = f {
                if bad.is_none() && !a.is_bmsol() {
                    bad = Some(f.to_string());
                }
            }
        });
        match bad {
            Some(text) => Err(Error::IllegalNegation(text)),
            None => Ok(()),
        }
    }

    /// Membership in the boolean fragment: constants 0/1, atoms and their
    /// negations, `¬`, `∧`, `∀x`, `∀X`. A disjunction whose disjuncts are
    /// syntactically exclusive (one contains a conjunct whose complement
    /// is a conjunct of the other) is also admitted, since its sum never
    /// exceeds one.
    pub fn is_bmsol(&self) -> bool {
        match self {
            WmsolFormula::Const(k) => k.is_zero() || k.is_one(),
            WmsolFormula::Atom(_) | WmsolFormula::NegAtom(_) => true,
            WmsolFormula::Not(a) | WmsolFormula::Forall(_, a) | WmsolFormula::ForallSet(_, a) => a.is_bmsol(),
            WmsolFormula::And(a, b) => a.is_bmsol() && b.is_bmsol(),
            WmsolFormula::Or(a, b) => a.is_bmsol() && b.is_bmsol() && exclusive(a, b),
            WmsolFormula::Exists(..) | WmsolFormula::ExistsSet(..) => false,
        }
    }

    /// Decomposes a step formula `⋁_i (φ_i ∧ k_i)`. A bare bMSOL formula is
    /// the single case `(φ ∧ 1)` and a bare constant `k` is `(TRUE ∧ k)`;
    /// a case may carry several bMSOL conjuncts and several constants.
    pub fn step_cases(&self) -> Option<Vec<StepCase<'_, S>>> {
        let mut disjuncts = Vec::new();
        flatten_or(self, &mut disjuncts);
        let mut cases = Vec::with_capacity(disjuncts.len());
        for d in disjuncts {
            let mut conjuncts = Vec::new();
            flatten_and(d, &mut conjuncts);
            let mut weight = S::one();
            let mut guards = Vec::new();
            for c in conjuncts {
                match c {
                    WmsolFormula::Const(k) => weight = weight.times(k),
                    g if g.is_bmsol() => guards.push(g),
                    _ => return None,
                }
            }
            cases.push(StepCase { guards, weight });
        }
        Some(cases)
    }

    pub fn is_step(&self) -> bool {
        self.step_cases().is_some()
    }

    /// The first subformula violating the RMSOL restrictions, if any.
    pub fn rmsol_violation(&self) -> Option<&WmsolFormula<S>> {
        match self {
            WmsolFormula::Const(_) | WmsolFormula::Atom(_) | WmsolFormula::NegAtom(_) => None,
            WmsolFormula::Not(a) => (!a.is_bmsol()).then_some(self),
            WmsolFormula::Or(a, b) | WmsolFormula::And(a, b) => {
                a.rmsol_violation().or_else(|| b.rmsol_violation())
            }
            WmsolFormula::Exists(_, a) | WmsolFormula::ExistsSet(_, a) => a.rmsol_violation(),
            WmsolFormula::Forall(_, a) => (!a.is_step()).then_some(self),
            WmsolFormula::ForallSet(_, a) => (!a.is_bmsol()).then_some(self),
        }
    }

    pub fn is_rmsol(&self) -> bool {
        self.rmsol_violation().is_none()
    }

    /// The classical reading of a bMSOL formula, with quantifiers
    /// relativized to letter-bearing positions.
    pub fn to_mso(&self) -> Result<MsoFormula> {
        if !self.is_bmsol() {
            return Err(Error::NotBmsol(self.to_string()));
        }
        Ok(self.to_mso_unchecked())
    }

    pub(crate) fn to_mso_unchecked(&self) -> MsoFormula {
        match self {
            WmsolFormula::Const(k) => {
                if k.is_zero() {
                    MsoFormula::False
                } else {
                    MsoFormula::True
                }
            }
            WmsolFormula::Atom(a) => a.to_mso(),
            WmsolFormula::NegAtom(a) => a.to_mso().not(),
            WmsolFormula::Not(a) => a.to_mso_unchecked().not(),
            WmsolFormula::And(a, b) => a.to_mso_unchecked().and(b.to_mso_unchecked()),
            WmsolFormula::Or(a, b) => a.to_mso_unchecked().or(b.to_mso_unchecked()),
            WmsolFormula::Forall(x, a) => MsoFormula::forall(x, stock::pos(x).implies(a.to_mso_unchecked())),
            WmsolFormula::ForallSet(x, a) => {
                MsoFormula::forall_set(x, stock::within_positions(x).implies(a.to_mso_unchecked()))
            }
            WmsolFormula::Exists(x, a) => MsoFormula::exists(x, stock::pos(x).and(a.to_mso_unchecked())),
            WmsolFormula::ExistsSet(x, a) => {
                MsoFormula::exists_set(x, stock::within_positions(x).and(a.to_mso_unchecked()))
            }
        }
    }
}

fn flatten_or<'a, S>(f: &'a WmsolFormula<S>, out: &mut Vec<&'a WmsolFormula<S>>) {
    match f {
        WmsolFormula::Or(a, b) => {
            flatten_or(a, out);
            flatten_or(b, out);
        }
        other => out.push(other),
    }
}

fn flatten_and<'a, S>(f: &'a WmsolFormula<S>, out: &mut Vec<&'a WmsolFormula<S>>) {
    match f {
        WmsolFormula::And(a, b) => {
            flatten_and(a, out);
            flatten_and(b, out);
        }
        other => out.push(other),
    }
}

fn complementary<S: Semiring>(a: &WmsolFormula<S>, b: &WmsolFormula<S>) -> bool {
    match (a, b) {
        (WmsolFormula::Atom(x), WmsolFormula::NegAtom(y)) | (WmsolFormula::NegAtom(x), WmsolFormula::Atom(y)) => x == y,
        (WmsolFormula::Not(x), y) | (y, WmsolFormula::Not(x)) => **x == *y,
        _ => false,
    }
}

/// Syntactic exclusivity of two disjuncts.
fn exclusive<S: Semiring>(a: &WmsolFormula<S>, b: &WmsolFormula<S>) -> bool {
    let (mut la, mut lb) = (Vec::new(), Vec::new());
    flatten_and(a, &mut la);
    flatten_and(b, &mut lb);
    let is_false = |f: &&WmsolFormula<S>| matches!(f, WmsolFormula::Const(k) if k.is_zero());
    if la.iter().any(is_false) || lb.iter().any(is_false) {
        return true;
    }
    la.iter().any(|x| lb.iter().any(|y| complementary(x, y)))
}

pub fn classify<S: Semiring>(phi: &WmsolFormula<S>) -> FragmentClass {
    FragmentClass {
        is_bmsol: phi.is_bmsol(),
        is_step: phi.is_step(),
        is_rmsol: phi.is_rmsol(),
        is_full: phi.validate().is_ok(),
    }
}

impl<S: fmt::Display> fmt::Display for WmsolFormula<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WmsolFormula::Const(k) => write!(f, "(k {k})"),
            WmsolFormula::Atom(a) => write!(f, "{a}"),
            WmsolFormula::NegAtom(a) => write!(f, "(not {a})"),
            WmsolFormula::Not(a) => write!(f, "(not {a})"),
            WmsolFormula::Or(a, b) => write_chain(f, "or", &**a, &**b, |t| match t {
                WmsolFormula::Or(l, r) => Some((&**l, &**r)),
                _ => None,
            }),
            WmsolFormula::And(a, b) => write_chain(f, "and", &**a, &**b, |t| match t {
                WmsolFormula::And(l, r) => Some((&**l, &**r)),
                _ => None,
            }),
            WmsolFormula::Exists(x, a) => write!(f, "(exists {x} {a})"),
            WmsolFormula::ExistsSet(x, a) => write!(f, "(existsset {x} {a})"),
            WmsolFormula::Forall(x, a) => write!(f, "(forall {x} {a})"),
            WmsolFormula::ForallSet(x, a) => write!(f, "(forallset {x} {a})"),
        }
    }
}

/// `WE(φ, w, σ)`.
pub fn we_eval<S: Semiring>(phi: &WmsolFormula<S>, w: &Word, sigma: &Assignment) -> Result<S> {
    let s = word_to_structure(w);
    let mut env = Env::from_assignment(sigma);
    we(&s, &mut env, phi)
}

pub fn we_eval_closed<S: Semiring>(phi: &WmsolFormula<S>, w: &Word) -> Result<S> {
    we_eval(phi, w, &Assignment::new())
}

fn truth<S: Semiring>(b: bool) -> S {
    if b {
        S::one()
    } else {
        S::zero()
    }
}

fn we<'a, S: Semiring>(s: &WordStructure, env: &mut Env<'a>, phi: &'a WmsolFormula<S>) -> Result<S> {
    match phi {
        WmsolFormula::Const(k) => Ok(k.clone()),
        WmsolFormula::Atom(a) => Ok(truth(a.holds(s, env)?)),
        WmsolFormula::NegAtom(a) => Ok(truth(!a.holds(s, env)?)),
        WmsolFormula::Not(a) => Ok(truth(we(s, env, a)?.is_zero())),
        WmsolFormula::Or(a, b) => Ok(we(s, env, a)?.plus(&we(s, env, b)?)),
        WmsolFormula::And(a, b) => {
            let left = we(s, env, a)?;
            if left.is_zero() {
                return Ok(left);
            }
            Ok(left.times(&we(s, env, b)?))
        }
        WmsolFormula::Exists(x, body) | WmsolFormula::Forall(x, body) => {
            let existential = matches!(phi, WmsolFormula::Exists(..));
            let mut acc = if existential { S::zero() } else { S::one() };
            env.push(x, Binding::Elem(0));
            for e in s.positions() {
                env.set_top(Binding::Elem(e));
                let v = match we(s, env, body) {
                    Ok(v) => v,
                    Err(err) => {
                        env.pop();
                        return Err(err);
                    }
                };
                acc = if existential { acc.plus(&v) } else { acc.times(&v) };
            }
            env.pop();
            Ok(acc)
        }
        WmsolFormula::ExistsSet(x, body) | WmsolFormula::ForallSet(x, body) => {
            let existential = matches!(phi, WmsolFormula::ExistsSet(..));
            let mask = s.positions_mask()?;
            let mut acc = if existential { S::zero() } else { S::one() };
            env.push(x, Binding::Set { members: 0, known: u64::MAX });
            for set in PosSet::subsets(mask) {
                env.set_top(Binding::Set { members: set.0, known: u64::MAX });
                let v = match we(s, env, body) {
                    Ok(v) => v,
                    Err(err) => {
                        env.pop();
                        return Err(err);
                    }
                };
                acc = if existential { acc.plus(&v) } else { acc.times(&v) };
            }
            env.pop();
            Ok(acc)
        }
    }
}

/// A disagreement found by [`bmsol_boolean_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct BmsolMismatch<S> {
    pub word: Word,
    pub assignment: Assignment,
    pub weighted: S,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BmsolReport<S> {
    pub cases: usize,
    pub mismatch: Option<BmsolMismatch<S>>,
}

impl<S> BmsolReport<S> {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Checks that a bMSOL formula takes only the values zero and one and that
/// it agrees with classical satisfaction, on every word up to `max_len` and
/// every assignment of its free variables to positions.
pub fn bmsol_boolean_check<S: Semiring>(
    phi: &WmsolFormula<S>,
    alphabet: &Alphabet,
    max_len: usize,
) -> Result<BmsolReport<S>> {
    let classical = phi.to_mso()?;
    let fv = phi.free_vars();
    let fo: Vec<String> = fv.elements.into_iter().collect();
    let so: Vec<String> = fv.sets.into_iter().collect();
    let mut cases = 0;
    for w in enumerate_words(alphabet, max_len) {
        let s = word_to_structure(&w);
        for sigma in Assignment::enumerate(&fo, &so, s.positions_mask()?) {
            cases += 1;
            let weighted = we_eval(phi, &w, &sigma)?;
            let satisfied = satisfies(&s, &sigma, &classical)?;
            let boolean = weighted.is_zero() || weighted.is_one();
            if !boolean || weighted.is_one() != satisfied {
                return Ok(BmsolReport {
                    cases,
                    mismatch: Some(BmsolMismatch { word: w, assignment: sigma, weighted, satisfied }),
                });
            }
        }
    }
    Ok(BmsolReport { cases, mismatch: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{rat, Int, Rat};

    type W = WmsolFormula<Rat>;

    fn k(n: i64) -> W {
        W::constant(rat(n, 1))
    }

    fn value(phi: &W, w: &str) -> Rat {
        we_eval_closed(phi, &Word::binary(w)).unwrap()
    }

    #[test]
    fn square_exponent() {
        let phi = W::forall("x", W::forall("y", k(2)));
        assert_eq!(value(&phi, "101"), rat(512, 1));
        assert_eq!(value(&phi, ""), rat(1, 1));
    }

    #[test]
    fn existential_counts_witnesses() {
        let phi = WmsolFormula::<Int>::exists("x", WmsolFormula::letter('1', "x"));
        assert_eq!(we_eval_closed(&phi, &Word::binary("0110")).unwrap(), Int::from(2));
        assert_eq!(we_eval_closed(&phi, &Word::binary("")).unwrap(), Int::from(0));
    }

    #[test]
    fn constants_and_atoms() {
        assert_eq!(value(&k(7), "0101"), rat(7, 1));
        let phi = W::letter('1', "x").and(k(3));
        let w = Word::binary("01");
        let at = |p| we_eval(&phi, &w, &Assignment::new().with_element("x", p)).unwrap();
        assert_eq!(at(2), rat(3, 1));
        assert_eq!(at(1), rat(0, 1));
    }

    #[test]
    fn classification() {
        let sq = W::forall("x", W::forall("y", k(2)));
        let c = classify(&sq);
        assert!(!c.is_rmsol && !c.is_bmsol && c.is_full);
        assert!(W::forall("y", k(2)).is_rmsol());

        let step = W::forall("x", W::letter('1', "x").and(k(5)).or(W::not_letter('1', "x").and(k(1))));
        assert!(classify(&step).is_rmsol);

        let taut = W::forall_set("X", W::member("x", "X").or(W::not_member("x", "X")));
        let c = classify(&taut);
        assert!(c.is_rmsol && c.is_bmsol);

        let doubled = W::forall_set("X", W::member("x", "X").or(W::member("x", "X")));
        assert!(!doubled.is_rmsol());

        let ex = W::exists("x", W::letter('1', "x"));
        let c = classify(&ex);
        assert!(c.is_rmsol && !c.is_bmsol && !c.is_step);
    }

    #[test]
    fn bool_constants_collapse() {
        let sq = WmsolFormula::<bool>::forall("x", WmsolFormula::forall("y", WmsolFormula::constant(bool::from_u64(2))));
        assert!(sq.is_bmsol());
    }

    #[test]
    fn illegal_negation() {
        let phi = W::exists("x", W::letter('1', "x")).negate();
        assert!(matches!(phi.validate(), Err(Error::IllegalNegation(_))));
        assert!(!classify(&phi).is_full);
    }

    #[test]
    fn bmsol_examples() {
        let alphabet = Alphabet::binary();
        let phi = W::not_letter('1', "x");
        let w = Word::binary("01");
        assert_eq!(we_eval(&phi, &w, &Assignment::new().with_element("x", 1)).unwrap(), rat(1, 1));
        let all_ones = W::forall("x", W::letter('1', "x"));
        assert_eq!(value(&all_ones, "11"), rat(1, 1));
        assert_eq!(value(&all_ones, "10"), rat(0, 1));
        let every_set = W::forall_set("X", W::member("x", "X"));
        let at1 = Assignment::new().with_element("x", 1);
        assert_eq!(we_eval(&every_set, &Word::binary("1"), &at1).unwrap(), rat(0, 1));
        for f in [phi, all_ones, every_set] {
            assert!(bmsol_boolean_check(&f, &alphabet, 3).unwrap().passed(), "{f}");
        }
        let not_b = W::exists("x", W::letter('1', "x"));
        assert!(matches!(bmsol_boolean_check(&not_b, &alphabet, 2), Err(Error::NotBmsol(_))));
    }
}
