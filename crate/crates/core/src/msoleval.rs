//! MSOLEVAL terms: MSO-guarded monomials, products, and sums over
//! MSO-definable families of elements or unary relations.
//!
//! Terms are evaluated over the universe `{0} ∪ [ℓ(w)]` of the word
//! structure. Empty sums are zero and empty products are one.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::env::{Binding, Env};
use crate::error::{Error, Result};
use crate::mso::{eval3, stock, FreeVars, MsoFormula, Truth3};
use crate::names::Fresh;
use crate::semiring::Semiring;
use crate::word::{word_to_structure, Assignment, Word, WordStructure};

/// Base of a standard monomial.
#[derive(Clone, Debug, PartialEq)]
pub enum Base<S> {
    Element(S),
    Indeterminate(String),
}

#[derive(Clone, Debug, PartialEq)]
pub enum EvalTerm<S> {
    Const(S),
    /// `base^{|{v : φ(v)}|}`.
    Monomial {
        base: Base<S>,
        var: String,
        guard: MsoFormula,
    },
    Product(Vec<EvalTerm<S>>),
    /// `Σ_{R̄ : φ(R̄)} body` over tuples of unary relations.
    SetSum {
        vars: Vec<String>,
        guard: MsoFormula,
        body: Box<EvalTerm<S>>,
    },
    /// `Σ_{v : φ(v)} body` over elements.
    ElemSum {
        var: String,
        guard: MsoFormula,
        body: Box<EvalTerm<S>>,
    },
}

impl<S: Semiring> EvalTerm<S> {
    pub fn monomial(base: S, var: &str, guard: MsoFormula) -> Self {
        EvalTerm::Monomial {
            base: Base::Element(base),
            var: var.to_string(),
            guard,
        }
    }

    pub fn indet_monomial(name: &str, var: &str, guard: MsoFormula) -> Self {
        EvalTerm::Monomial {
            base: Base::Indeterminate(name.to_string()),
            var: var.to_string(),
            guard,
        }
    }

    pub fn set_sum(vars: &[&str], guard: MsoFormula, body: EvalTerm<S>) -> Self {
        EvalTerm::SetSum {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            guard,
            body: Box::new(body),
        }
    }

    pub fn elem_sum(var: &str, guard: MsoFormula, body: EvalTerm<S>) -> Self {
        EvalTerm::ElemSum {
            var: var.to_string(),
            guard,
            body: Box::new(body),
        }
    }

    /// Every variable name occurring in the term or its guards.
    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            EvalTerm::Const(_) => {}
            EvalTerm::Monomial { var, guard, .. } => {
                out.insert(var.clone());
                guard.collect_names(out);
            }
            EvalTerm::Product(ts) => ts.iter().for_each(|t| t.collect_names(out)),
            EvalTerm::SetSum { vars, guard, body } => {
                out.extend(vars.iter().cloned());
                guard.collect_names(out);
                body.collect_names(out);
            }
            EvalTerm::ElemSum { var, guard, body } => {
                out.insert(var.clone());
                guard.collect_names(out);
                body.collect_names(out);
            }
        }
    }

    pub fn free_vars(&self) -> FreeVars {
        match self {
            EvalTerm::Const(_) => FreeVars::default(),
            EvalTerm::Monomial { var, guard, .. } => {
                let mut fv = guard.free_vars();
                fv.elements.remove(var);
                fv
            }
            EvalTerm::Product(ts) => {
                let mut fv = FreeVars::default();
                ts.iter().for_each(|t| fv.extend(t.free_vars()));
                fv
            }
            EvalTerm::SetSum { vars, guard, body } => {
                let mut fv = guard.free_vars();
                fv.extend(body.free_vars());
                for v in vars {
                    fv.sets.remove(v);
                }
                fv
            }
            EvalTerm::ElemSum { var, guard, body } => {
                let mut fv = guard.free_vars();
                fv.extend(body.free_vars());
                fv.elements.remove(var);
                fv
            }
        }
    }

    /// Indeterminates used as monomial bases.
    pub fn indeterminates(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| {
            if let EvalTerm::Monomial { base: Base::Indeterminate(x), .. } = t {
                out.insert(x.clone());
            }
        });
        out
    }

    pub fn is_ground(&self) -> bool {
        self.indeterminates().is_empty()
    }

    fn visit(&self, f: &mut dyn FnMut(&EvalTerm<S>)) {
        f(self);
        match self {
            EvalTerm::Product(ts) => ts.iter().for_each(|t| t.visit(f)),
            EvalTerm::SetSum { body, .. } | EvalTerm::ElemSum { body, .. } => body.visit(f),
            _ => {}
        }
    }

    /// Maximal quantifier rank of the guards occurring in the term.
    pub fn quantifier_rank(&self) -> usize {
        let mut rank = 0;
        self.visit(&mut |t| match t {
            EvalTerm::Monomial { guard, .. }
            | EvalTerm::SetSum { guard, .. }
            | EvalTerm::ElemSum { guard, .. } => rank = rank.max(guard.quantifier_rank()),
            _ => {}
        });
        rank
    }

    pub fn size(&self) -> usize {
        match self {
            EvalTerm::Const(_) => 1,
            EvalTerm::Monomial { guard, .. } => 1 + guard.size(),
            EvalTerm::Product(ts) => 1 + ts.iter().map(|t| t.size()).sum::<usize>(),
            EvalTerm::SetSum { guard, body, .. } | EvalTerm::ElemSum { guard, body, .. } => {
                1 + guard.size() + body.size()
            }
        }
    }

    /// Rejects binders (of sums, monomials and guard quantifiers) that reuse
    /// an enclosing binder's name.
    pub fn check_no_shadowing(&self) -> Result<()> {
        fn guard_ok(scope: &[String], bound: &[&String], guard: &MsoFormula) -> Result<()> {
            for name in guard.binders() {
                if scope.contains(&name) || bound.contains(&&name) {
                    return Err(Error::Shadowing(name));
                }
            }
            guard.check_no_shadowing()
        }
        fn go<S: Semiring>(t: &EvalTerm<S>, scope: &mut Vec<String>) -> Result<()> {
            match t {
                EvalTerm::Const(_) => Ok(()),
                EvalTerm::Monomial { var, guard, .. } => {
                    if scope.contains(var) {
                        return Err(Error::Shadowing(var.clone()));
                    }
                    guard_ok(scope, &[var], guard)
                }
                EvalTerm::Product(ts) => ts.iter().try_for_each(|t| go(t, scope)),
                EvalTerm::SetSum { vars, guard, body } => {
                    for (i, v) in vars.iter().enumerate() {
                        if scope.contains(v) || vars[..i].contains(v) {
                            return Err(Error::Shadowing(v.clone()));
                        }
                    }
                    let bound: Vec<&String> = vars.iter().collect();
                    guard_ok(scope, &bound, guard)?;
                    let mark = scope.len();
                    scope.extend(vars.iter().cloned());
                    let r = go(body, scope);
                    scope.truncate(mark);
                    r
                }
                EvalTerm::ElemSum { var, guard, body } => {
                    if scope.contains(var) {
                        return Err(Error::Shadowing(var.clone()));
                    }
                    guard_ok(scope, &[var], guard)?;
                    scope.push(var.clone());
                    let r = go(body, scope);
                    scope.pop();
                    r
                }
            }
        }
        go(self, &mut Vec::new())
    }
}

impl<S: fmt::Display> fmt::Display for Base<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Element(c) => write!(f, "{c}"),
            Base::Indeterminate(x) => write!(f, "(ind {x})"),
        }
    }
}

impl<S: fmt::Display> fmt::Display for EvalTerm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalTerm::Const(c) => write!(f, "(const {c})"),
            EvalTerm::Monomial { base, var, guard } => write!(f, "(mon {base} {var} {guard})"),
            EvalTerm::Product(ts) => {
                f.write_str("(prod")?;
                for t in ts {
                    write!(f, " {t}")?;
                }
                f.write_str(")")
            }
            EvalTerm::SetSum { vars, guard, body } => {
                f.write_str("(sumset (")?;
                for (i, v) in vars.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    f.write_str(v)?;
                }
                write!(f, ") {guard} {body})")
            }
            EvalTerm::ElemSum { var, guard, body } => write!(f, "(sumel {var} {guard} {body})"),
        }
    }
}

/// `E(t, w, σ)`. Indeterminates take their value from `subst`; when absent,
/// polynomial semirings keep them symbolic and other semirings fail.
pub fn eval_term<S: Semiring>(
    t: &EvalTerm<S>,
    w: &Word,
    sigma: &Assignment,
    subst: &BTreeMap<String, S>,
) -> Result<S> {
    let s = word_to_structure(w);
    let mut env = Env::from_assignment(sigma);
    Evaluator { s: &s, subst }.eval(&mut env, t)
}

/// Evaluates a closed term with no indeterminate substitution.
pub fn eval_closed<S: Semiring>(t: &EvalTerm<S>, w: &Word) -> Result<S> {
    eval_term(t, w, &Assignment::new(), &BTreeMap::new())
}

struct Evaluator<'s, S> {
    s: &'s WordStructure,
    subst: &'s BTreeMap<String, S>,
}

impl<S: Semiring> Evaluator<'_, S> {
    fn eval<'a>(&self, env: &mut Env<'a>, t: &'a EvalTerm<S>) -> Result<S> {
        match t {
            EvalTerm::Const(c) => Ok(c.clone()),
            EvalTerm::Monomial { base, var, guard } => {
                let mut count = 0usize;
                env.push(var, Binding::Elem(0));
                for e in self.s.universe() {
                    env.set_top(Binding::Elem(e));
                    match eval3(self.s, env, guard) {
                        Ok(Truth3::True) => count += 1,
                        Ok(_) => {}
                        Err(err) => {
                            env.pop();
                            return Err(err);
                        }
                    }
                }
                env.pop();
                if count == 0 {
                    return Ok(S::one());
                }
                Ok(self.base_value(base)?.pow(count))
            }
            EvalTerm::Product(ts) => {
                let mut acc = S::one();
                for t in ts {
                    acc = acc.times(&self.eval(env, t)?);
                }
                Ok(acc)
            }
            EvalTerm::ElemSum { var, guard, body } => {
                let mut acc = S::zero();
                env.push(var, Binding::Elem(0));
                let mark = env.depth();
                for e in self.s.universe() {
                    env.set_top(Binding::Elem(e));
                    let step = match eval3(self.s, env, guard) {
                        Ok(Truth3::True) => self.eval(env, body).map(Some),
                        Ok(_) => Ok(None),
                        Err(err) => Err(err),
                    };
                    match step {
                        Ok(Some(v)) => acc = acc.plus(&v),
                        Ok(None) => {}
                        Err(err) => {
                            env.truncate(mark - 1);
                            return Err(err);
                        }
                    }
                }
                env.pop();
                Ok(acc)
            }
            EvalTerm::SetSum { vars, guard, body } => {
                let mask = self.s.universe_mask()?;
                let _ = mask;
                let base = env.depth();
                for v in vars {
                    env.push(v, Binding::Set { members: 0, known: 0 });
                }
                let mut members = vec![0u64; vars.len()];
                let mut acc = S::zero();
                let r = self.enumerate_sets(env, base, &mut members, 0, guard, body, &mut acc);
                env.truncate(base);
                r.map(|_| acc)
            }
        }
    }

    fn base_value(&self, base: &Base<S>) -> Result<S> {
        match base {
            Base::Element(c) => Ok(c.clone()),
            Base::Indeterminate(x) => self
                .subst
                .get(x)
                .cloned()
                .or_else(|| S::indeterminate(x))
                .ok_or_else(|| Error::MissingIndeterminate(x.clone())),
        }
    }

    /// Decides membership of element `e` for every summation variable, then
    /// recurses; branches whose guard is already false are pruned.
    #[allow(clippy::too_many_arguments)]
    fn enumerate_sets<'a>(
        &self,
        env: &mut Env<'a>,
        base: usize,
        members: &mut [u64],
        e: usize,
        guard: &'a MsoFormula,
        body: &'a EvalTerm<S>,
        acc: &mut S,
    ) -> Result<()> {
        let n = self.s.universe_size();
        let k = members.len();
        if k == 0 || e == n {
            if k == 0 && eval3(self.s, env, guard)? != Truth3::True {
                return Ok(());
            }
            let v = self.eval(env, body)?;
            *acc = acc.plus(&v);
            return Ok(());
        }
        let known = if e + 1 >= 64 { u64::MAX } else { (1u64 << (e + 1)) - 1 };
        for combo in 0u64..(1 << k) {
            for (i, m) in members.iter_mut().enumerate() {
                if combo >> i & 1 == 1 {
                    *m |= 1 << e;
                } else {
                    *m &= !(1 << e);
                }
                env.set_at(base + i, Binding::Set { members: *m, known });
            }
            let verdict = eval3(self.s, env, guard)?;
            let last = e + 1 == n;
            if verdict == Truth3::False || (last && verdict != Truth3::True) {
                continue;
            }
            self.enumerate_sets(env, base, members, e + 1, guard, body, acc)?;
        }
        for (i, m) in members.iter_mut().enumerate() {
            *m &= !(1 << e);
            env.set_at(base + i, Binding::Set { members: *m, known: known >> 1 });
        }
        Ok(())
    }
}

/// `tv(φ) = Σ_{U : U = A ∧ φ} 1`: one when `φ` holds, zero otherwise.
pub fn tv_term<S: Semiring>(phi: &MsoFormula) -> EvalTerm<S> {
    let mut fresh = Fresh::avoiding(phi.names());
    tv_term_with(phi, &mut fresh)
}

pub(crate) fn tv_term_with<S: Semiring>(phi: &MsoFormula, fresh: &mut Fresh) -> EvalTerm<S> {
    let u = fresh.next("U");
    EvalTerm::set_sum(&[&u], stock::is_universe(&u).and(phi.clone()), EvalTerm::Const(S::one()))
}

/// The constant `c` as a term.
pub fn const_term<S: Semiring>(c: S) -> EvalTerm<S> {
    EvalTerm::Const(c)
}

/// The indeterminate `x` as the monomial `x^{|{v : v = 0}|}`.
pub fn indet_term<S: Semiring>(x: &str) -> EvalTerm<S> {
    EvalTerm::indet_monomial(x, "v", stock::is_zero("v"))
}

/// Pointwise product; nested products are flattened.
pub fn term_product<S: Semiring>(t1: EvalTerm<S>, t2: EvalTerm<S>) -> EvalTerm<S> {
    let mut factors = Vec::new();
    for t in [t1, t2] {
        match t {
            EvalTerm::Product(ts) => factors.extend(ts),
            t => factors.push(t),
        }
    }
    EvalTerm::Product(factors)
}

/// Pointwise sum, written as a sum over the two-element family `{∅, A}`:
/// `Σ_{U : U = ∅ ∨ U = A} ([U = ∅] ? t1 : 1) · ([U = A] ? t2 : 1)`.
pub fn term_sum<S: Semiring>(t1: EvalTerm<S>, t2: EvalTerm<S>) -> EvalTerm<S> {
    let mut names = t1.names();
    names.extend(t2.names());
    let mut fresh = Fresh::avoiding(names);
    term_sum_with(t1, t2, &mut fresh)
}

pub(crate) fn term_sum_with<S: Semiring>(
    t1: EvalTerm<S>,
    t2: EvalTerm<S>,
    fresh: &mut Fresh,
) -> EvalTerm<S> {
    let u = fresh.next("U");
    let left = stock::is_empty_set(&u);
    let right = stock::is_universe(&u);
    let body = EvalTerm::Product(vec![
        restrict(t1, &left, fresh),
        restrict(t2, &right, fresh),
    ]);
    EvalTerm::set_sum(&[&u], left.clone().or(right.clone()), body)
}

/// `t` where `cond` holds and one elsewhere. `cond` must not mention any
/// variable bound inside `t`.
pub(crate) fn restrict<S: Semiring>(t: EvalTerm<S>, cond: &MsoFormula, fresh: &mut Fresh) -> EvalTerm<S> {
    match t {
        EvalTerm::Const(c) => {
            if c.is_one() {
                return EvalTerm::Const(c);
            }
            let v = fresh.next("v");
            EvalTerm::monomial(c, &v, stock::is_zero(&v).and(cond.clone()))
        }
        EvalTerm::Monomial { base, var, guard } => EvalTerm::Monomial {
            base,
            var,
            guard: guard.and(cond.clone()),
        },
        EvalTerm::Product(ts) => EvalTerm::Product(ts.into_iter().map(|t| restrict(t, cond, fresh)).collect()),
        EvalTerm::ElemSum { var, guard, body } => {
            let guard = cond
                .clone()
                .and(guard)
                .or(cond.clone().not().and(stock::is_zero(&var)));
            EvalTerm::ElemSum {
                var,
                guard,
                body: Box::new(restrict(*body, cond, fresh)),
            }
        }
        EvalTerm::SetSum { vars, guard, body } => {
            let empties = MsoFormula::all(vars.iter().map(|v| stock::is_empty_set(v)));
            let guard = cond.clone().and(guard).or(cond.clone().not().and(empties));
            EvalTerm::SetSum {
                vars,
                guard,
                body: Box::new(restrict(*body, cond, fresh)),
            }
        }
    }
}

/// Sum of a list of terms; the empty sum is the constant zero.
pub fn term_sum_all<S: Semiring>(terms: Vec<EvalTerm<S>>) -> EvalTerm<S> {
    let mut names = BTreeSet::new();
    terms.iter().for_each(|t| names.extend(t.names()));
    let mut fresh = Fresh::avoiding(names);
    sum_all_with(terms, &mut fresh)
}

pub(crate) fn sum_all_with<S: Semiring>(terms: Vec<EvalTerm<S>>, fresh: &mut Fresh) -> EvalTerm<S> {
    let mut iter = terms.into_iter();
    let Some(first) = iter.next() else {
        return EvalTerm::Const(S::zero());
    };
    iter.fold(first, |acc, t| term_sum_with(acc, t, fresh))
}

/// Example terms over the binary alphabet.
pub mod examples {
    use super::*;

    /// `♯₁(w) = Σ_{i : P_1(i)} 1`.
    pub fn count_ones<S: Semiring>() -> EvalTerm<S> {
        EvalTerm::elem_sum("i", MsoFormula::letter('1', "i"), EvalTerm::Const(S::one()))
    }

    /// `X^{♯₁(w)} = Π_{i : P_1(i)} X`.
    pub fn x_pow_count_ones<S: Semiring>(x: &str) -> EvalTerm<S> {
        EvalTerm::indet_monomial(x, "i", MsoFormula::letter('1', "i"))
    }

    /// `b₁(w)`: the number of blocks of 1's.
    pub fn blocks_of_ones<S: Semiring>() -> EvalTerm<S> {
        EvalTerm::set_sum(&["B"], stock::block1("B"), EvalTerm::Const(S::one()))
    }

    /// `b₁(w)` via first positions of blocks.
    pub fn blocks_of_ones_by_first<S: Semiring>() -> EvalTerm<S> {
        EvalTerm::elem_sum("v", stock::first_in_block('1', "v"), EvalTerm::Const(S::one()))
    }

    /// Sum over blocks of 1's of `unit ⊗ … ⊗ unit`, one factor per block
    /// element. With `unit` the carrier value 1, this is the block size under
    /// tropical multiplication. Over the max-plus
    /// semiring this is the largest block size; over min-plus the smallest.
    pub fn block_size_extremum<S: Semiring>(unit: S) -> EvalTerm<S> {
        EvalTerm::set_sum(
            &["B"],
            stock::block1("B"),
            EvalTerm::monomial(unit, "v", MsoFormula::member("v", "B")),
        )
    }
}
