//! Translations between RMSOL formulas and MSOLEVAL terms.
//!
//! WMSOL quantifies over the positions `1..=n`, MSOLEVAL over the universe
//! `{0, 1, …, n}`. Going to terms, every quantifier picks up a guard
//! restricting it to positions. Coming back, every variable of the term is
//! split into the case where it denotes (or, for a set, contains) element 0
//! and the case where it does not; the zero cases are resolved statically.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mso::{stock, MsoFormula};
use crate::msoleval::{eval_term, sum_all_with, term_product, tv_term_with, Base, EvalTerm};
use crate::names::Fresh;
use crate::semiring::Semiring;
use crate::wmsol::{classify, we_eval, FragmentClass, WmsolFormula};
use crate::word::{enumerate_words, word_to_structure, Alphabet, Assignment, Word};

/// A translation together with bookkeeping about how it was produced.
#[derive(Clone, Debug, PartialEq)]
pub struct TranslationReport<I, O> {
    pub input: I,
    pub output: O,
    /// Fragment membership of the formula side.
    pub fragment: FragmentClass,
    /// Quantifiers that were restricted to positions, or split on element 0.
    pub guard_insertions: usize,
    /// Monomials emitted for the case split of universal step formulas.
    pub case_monomials: usize,
}

/// Translates an RMSOL formula into an equivalent MSOLEVAL term.
pub fn rmsol_to_msoleval<S: Semiring>(phi: &WmsolFormula<S>) -> Result<EvalTerm<S>> {
    rmsol_to_msoleval_report(phi).map(|r| r.output)
}

pub fn rmsol_to_msoleval_report<S: Semiring>(
    phi: &WmsolFormula<S>,
) -> Result<TranslationReport<WmsolFormula<S>, EvalTerm<S>>> {
    phi.check_no_shadowing()?;
    if let Some(bad) = phi.rmsol_violation() {
        return Err(Error::NotRmsol(bad.to_string()));
    }
    let mut tr = Forward { fresh: Fresh::avoiding(phi.names()), guards: 0, cases: 0 };
    let output = tr.term(phi);
    Ok(TranslationReport {
        input: phi.clone(),
        output,
        fragment: classify(phi),
        guard_insertions: tr.guards,
        case_monomials: tr.cases,
    })
}

struct Forward {
    fresh: Fresh,
    guards: usize,
    cases: usize,
}

impl Forward {
    fn tv<S: Semiring>(&mut self, phi: &MsoFormula) -> EvalTerm<S> {
        tv_term_with(phi, &mut self.fresh)
    }

    fn term<S: Semiring>(&mut self, phi: &WmsolFormula<S>) -> EvalTerm<S> {
        match phi {
            WmsolFormula::Const(k) => EvalTerm::Const(k.clone()),
            WmsolFormula::Atom(_) | WmsolFormula::NegAtom(_) | WmsolFormula::Not(_) => {
                let classical = phi.to_mso_unchecked();
                self.tv(&classical)
            }
            WmsolFormula::Or(a, b) => {
                let (a, b) = (self.term(a), self.term(b));
                sum_all_with(alloc::vec![a, b], &mut self.fresh)
            }
            WmsolFormula::And(a, b) => {
                let (a, b) = (self.term(a), self.term(b));
                term_product(a, b)
            }
            WmsolFormula::Exists(x, body) => {
                self.guards += 1;
                EvalTerm::elem_sum(x, stock::pos(x), self.term(body))
            }
            WmsolFormula::ExistsSet(x, body) => {
                self.guards += 1;
                EvalTerm::set_sum(&[x], stock::within_positions(x), self.term(body))
            }
            WmsolFormula::Forall(x, body) => {
                self.guards += 1;
                self.universal_step(x, body)
            }
            WmsolFormula::ForallSet(..) => {
                self.guards += 1;
                let classical = phi.to_mso_unchecked();
                self.tv(&classical)
            }
        }
    }

    /// `∀x.⋁_i(φ_i ∧ k_i)`: at each position the factor is the sum of the
    /// weights of the cases that hold there. One monomial per set `C` of
    /// cases, guarded by "exactly the cases in `C` hold".
    fn universal_step<S: Semiring>(&mut self, x: &str, body: &WmsolFormula<S>) -> EvalTerm<S> {
        let cases = body.step_cases().expect("checked by rmsol_violation");
        let guards: Vec<MsoFormula> = cases
            .iter()
            .map(|c| MsoFormula::all(c.guards.iter().map(|g| g.to_mso_unchecked())))
            .collect();
        let forced: Vec<bool> = guards.iter().map(|g| *g == MsoFormula::True).collect();
        let mut factors = Vec::new();
        'subsets: for subset in 0u64..1 << cases.len() {
            if (0..cases.len()).any(|i| forced[i] && subset >> i & 1 == 0) {
                continue;
            }
            let mut weight = S::zero();
            let mut parts: Vec<MsoFormula> = Vec::new();
            for (i, (case, guard)) in cases.iter().zip(&guards).enumerate() {
                let part = if subset >> i & 1 == 1 {
                    weight = weight.plus(&case.weight);
                    if forced[i] {
                        continue;
                    }
                    guard.clone()
                } else {
                    negation(guard)
                };
                if parts.contains(&negation(&part)) {
                    // syntactically contradictory guard
                    continue 'subsets;
                }
                if !parts.contains(&part) {
                    parts.push(part);
                }
            }
            if !weight.is_one() {
                self.cases += 1;
                parts.insert(0, stock::pos(x));
                factors.push(EvalTerm::monomial(weight, x, MsoFormula::all(parts)));
            }
        }
        EvalTerm::Product(factors)
    }
}

fn negation(phi: &MsoFormula) -> MsoFormula {
    match phi {
        MsoFormula::Not(a) => (**a).clone(),
        other => other.clone().not(),
    }
}

/// Translates a ground MSOLEVAL term into an equivalent RMSOL formula.
///
/// Free element variables of the term are read as positions and free set
/// variables as sets of positions.
pub fn msoleval_to_rmsol<S: Semiring>(t: &EvalTerm<S>) -> Result<WmsolFormula<S>> {
    msoleval_to_rmsol_report(t).map(|r| r.output)
}

pub fn msoleval_to_rmsol_report<S: Semiring>(
    t: &EvalTerm<S>,
) -> Result<TranslationReport<EvalTerm<S>, WmsolFormula<S>>> {
    if let Some(x) = t.indeterminates().into_iter().next() {
        return Err(Error::NonGround(x));
    }
    t.check_no_shadowing()?;
    let mut tr = Backward { env: BTreeMap::new(), guards: 0 };
    let output = tr.term(t);
    Ok(TranslationReport {
        input: t.clone(),
        fragment: classify(&output),
        output,
        guard_insertions: tr.guards,
        case_monomials: 0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Zero {
    /// The element variable denotes 0, or the set variable contains 0.
    Yes,
    No,
}

struct Backward {
    env: BTreeMap<String, Zero>,
    guards: usize,
}

fn one<S: Semiring>() -> WmsolFormula<S> {
    WmsolFormula::Const(S::one())
}

fn zero<S: Semiring>() -> WmsolFormula<S> {
    WmsolFormula::Const(S::zero())
}

fn truth<S: Semiring>(b: bool) -> WmsolFormula<S> {
    if b {
        one()
    } else {
        zero()
    }
}

fn is_const<S: Semiring>(f: &WmsolFormula<S>, pred: fn(&S) -> bool) -> bool {
    matches!(f, WmsolFormula::Const(k) if pred(k))
}

/// Conjunction with constant folding.
fn and<S: Semiring>(a: WmsolFormula<S>, b: WmsolFormula<S>) -> WmsolFormula<S> {
    if is_const(&a, S::is_zero) || is_const(&b, S::is_one) {
        a
    } else if is_const(&b, S::is_zero) || is_const(&a, S::is_one) {
        b
    } else {
        a.and(b)
    }
}

/// Disjunction with constant folding; the sum of both values.
fn or<S: Semiring>(a: WmsolFormula<S>, b: WmsolFormula<S>) -> WmsolFormula<S> {
    if is_const(&a, S::is_zero) {
        b
    } else if is_const(&b, S::is_zero) {
        a
    } else {
        a.or(b)
    }
}

/// Negation of a bMSOL formula with constant folding.
fn not<S: Semiring>(a: WmsolFormula<S>) -> WmsolFormula<S> {
    match a {
        WmsolFormula::Const(k) => truth(k.is_zero()),
        WmsolFormula::Not(inner) => *inner,
        other => other.negate(),
    }
}

impl Backward {
    fn zero_case(&self, var: &str) -> Zero {
        self.env.get(var).copied().unwrap_or(Zero::No)
    }

    fn with<T>(&mut self, var: &str, case: Zero, f: impl FnOnce(&mut Self) -> T) -> T {
        let saved = self.env.insert(var.to_string(), case);
        let out = f(self);
        match saved {
            Some(prev) => self.env.insert(var.to_string(), prev),
            None => self.env.remove(var),
        };
        out
    }

    fn with_all<T>(&mut self, vars: &[(String, Zero)], f: impl FnOnce(&mut Self) -> T) -> T {
        match vars.split_first() {
            None => f(self),
            Some(((v, case), rest)) => self.with(v, *case, |tr| tr.with_all(rest, f)),
        }
    }

    /// A bMSOL formula equivalent to the guard `phi` under the current zero
    /// cases, with quantifiers split into element 0 and positions.
    fn guard<S: Semiring>(&mut self, phi: &MsoFormula) -> WmsolFormula<S> {
        match phi {
            MsoFormula::True => one(),
            MsoFormula::False => zero(),
            MsoFormula::Letter(a, x) => match self.zero_case(x) {
                Zero::Yes => zero(),
                Zero::No => WmsolFormula::letter(*a, x),
            },
            MsoFormula::Leq(x, y) => match (self.zero_case(x), self.zero_case(y)) {
                (Zero::Yes, _) => one(),
                (Zero::No, Zero::Yes) => zero(),
                (Zero::No, Zero::No) => WmsolFormula::leq(x, y),
            },
            MsoFormula::Eq(x, y) => match (self.zero_case(x), self.zero_case(y)) {
                (Zero::Yes, Zero::Yes) => one(),
                (Zero::No, Zero::No) => WmsolFormula::leq(x, y).and(WmsolFormula::leq(y, x)),
                _ => zero(),
            },
            MsoFormula::In(x, set) => match self.zero_case(x) {
                Zero::Yes => truth(self.zero_case(set) == Zero::Yes),
                Zero::No => WmsolFormula::member(x, set),
            },
            MsoFormula::Not(a) => not(self.guard(a)),
            MsoFormula::And(a, b) => and(self.guard(a), self.guard(b)),
            MsoFormula::Or(a, b) => {
                let (a, b) = (self.guard(a), self.guard(b));
                not(and(not(a), not(b)))
            }
            MsoFormula::Implies(a, b) => {
                let (a, b) = (self.guard(a), self.guard(b));
                not(and(a, not(b)))
            }
            MsoFormula::Forall(x, a) => self.forall_guard(x, a),
            MsoFormula::Exists(x, a) => not(self.forall_guard(x, &a.clone().not())),
            MsoFormula::ForallSet(x, a) => self.forall_set_guard(x, a),
            MsoFormula::ExistsSet(x, a) => not(self.forall_set_guard(x, &a.clone().not())),
        }
    }

    fn forall_guard<S: Semiring>(&mut self, x: &str, body: &MsoFormula) -> WmsolFormula<S> {
        self.guards += 1;
        let at_zero = self.with(x, Zero::Yes, |tr| tr.guard(body));
        if is_const(&at_zero, S::is_zero) {
            return at_zero;
        }
        let at_positions = self.with(x, Zero::No, |tr| tr.guard(body));
        and(at_zero, forall(x, at_positions))
    }

    fn forall_set_guard<S: Semiring>(&mut self, x: &str, body: &MsoFormula) -> WmsolFormula<S> {
        self.guards += 1;
        let without = self.with(x, Zero::No, |tr| tr.guard(body));
        let with = self.with(x, Zero::Yes, |tr| tr.guard(body));
        match and(without, with) {
            c @ WmsolFormula::Const(_) => c,
            both => WmsolFormula::forall_set(x, both),
        }
    }

    fn term<S: Semiring>(&mut self, t: &EvalTerm<S>) -> WmsolFormula<S> {
        match t {
            EvalTerm::Const(k) => WmsolFormula::Const(k.clone()),
            EvalTerm::Monomial { base, var, guard } => {
                let Base::Element(b) = base else {
                    unreachable!("indeterminates are rejected up front")
                };
                if b.is_one() {
                    return one();
                }
                self.guards += 1;
                let at_zero = self.with(var, Zero::Yes, |tr| tr.guard(guard));
                let zero_factor = weighted_switch(at_zero, b);
                let at_positions = self.with(var, Zero::No, |tr| tr.guard(guard));
                let position_factor = match weighted_switch(at_positions, b) {
                    c @ WmsolFormula::Const(_) if c == one() => c,
                    step => forall(var, step),
                };
                and(zero_factor, position_factor)
            }
            EvalTerm::Product(ts) => ts.iter().fold(one(), |acc, t| {
                let f = self.term(t);
                and(acc, f)
            }),
            EvalTerm::ElemSum { var, guard, body } => {
                self.guards += 1;
                let branch = |tr: &mut Self, case| {
                    tr.with(var, case, |tr| {
                        let g = tr.guard(guard);
                        if is_const(&g, S::is_zero) {
                            return g;
                        }
                        let b = tr.term(body);
                        and(g, b)
                    })
                };
                let at_zero = branch(self, Zero::Yes);
                let at_positions = branch(self, Zero::No);
                let at_positions = if is_const(&at_positions, S::is_zero) {
                    at_positions
                } else {
                    WmsolFormula::exists(var, at_positions)
                };
                or(at_zero, at_positions)
            }
            EvalTerm::SetSum { vars, guard, body } => {
                self.guards += 1;
                let mut total = zero();
                for zeros in 0u64..1 << vars.len() {
                    let cases: Vec<(String, Zero)> = vars
                        .iter()
                        .enumerate()
                        .map(|(i, v)| (v.clone(), if zeros >> i & 1 == 1 { Zero::Yes } else { Zero::No }))
                        .collect();
                    let summand = self.with_all(&cases, |tr| {
                        let g = tr.guard(guard);
                        if is_const(&g, S::is_zero) {
                            return g;
                        }
                        let b = tr.term(body);
                        and(g, b)
                    });
                    if is_const(&summand, S::is_zero) {
                        continue;
                    }
                    let summand = vars
                        .iter()
                        .rev()
                        .fold(summand, |acc, v| WmsolFormula::exists_set(v, acc));
                    total = or(total, summand);
                }
                total
            }
        }
    }
}

/// `(φ ∧ b) ∨ ¬φ`: `b` where `φ` holds and one elsewhere.
fn weighted_switch<S: Semiring>(phi: WmsolFormula<S>, b: &S) -> WmsolFormula<S> {
    match phi {
        WmsolFormula::Const(k) if k.is_zero() => one(),
        WmsolFormula::Const(_) => WmsolFormula::Const(b.clone()),
        phi => phi.clone().and(WmsolFormula::Const(b.clone())).or(not(phi)),
    }
}

fn forall<S: Semiring>(x: &str, body: WmsolFormula<S>) -> WmsolFormula<S> {
    WmsolFormula::forall(x, body)
}

/// Input to [`roundtrip_check`].
#[derive(Clone, Debug, PartialEq)]
pub enum Expr<S> {
    Formula(WmsolFormula<S>),
    Term(EvalTerm<S>),
}

/// A word (and assignment) on which a round trip changed the value.
#[derive(Clone, Debug, PartialEq)]
pub struct Discrepancy<S> {
    pub word: Word,
    pub assignment: Assignment,
    pub original: S,
    pub translated: S,
    pub round_trip: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoundtripReport<S> {
    pub translated: Expr<S>,
    pub round_trip: Expr<S>,
    pub words_checked: usize,
    pub cases_checked: usize,
    pub discrepancy: Option<Discrepancy<S>>,
}

impl<S> RoundtripReport<S> {
    pub fn passed(&self) -> bool {
        self.discrepancy.is_none()
    }
}

fn value<S: Semiring>(e: &Expr<S>, w: &Word, sigma: &Assignment) -> Result<S> {
    match e {
        Expr::Formula(phi) => we_eval(phi, w, sigma),
        Expr::Term(t) => eval_term(t, w, sigma, &BTreeMap::new()),
    }
}

/// Translates `x` to the other formalism and back, and compares all three
/// on every word up to `corpus_len` and every assignment of free variables
/// to positions.
pub fn roundtrip_check<S: Semiring>(x: &Expr<S>, alphabet: &Alphabet, corpus_len: usize) -> Result<RoundtripReport<S>> {
    let (translated, round_trip, free) = match x {
        Expr::Formula(phi) => {
            let t = rmsol_to_msoleval(phi)?;
            let back = msoleval_to_rmsol(&t)?;
            (Expr::Term(t), Expr::Formula(back), phi.free_vars())
        }
        Expr::Term(t) => {
            let phi = msoleval_to_rmsol(t)?;
            let back = rmsol_to_msoleval(&phi)?;
            (Expr::Formula(phi), Expr::Term(back), t.free_vars())
        }
    };
    let fo: Vec<String> = free.elements.into_iter().collect();
    let so: Vec<String> = free.sets.into_iter().collect();
    let mut report = RoundtripReport { translated, round_trip, words_checked: 0, cases_checked: 0, discrepancy: None };
    for w in enumerate_words(alphabet, corpus_len) {
        report.words_checked += 1;
        let mask = word_to_structure(&w).positions_mask()?;
        for sigma in Assignment::enumerate(&fo, &so, mask) {
            report.cases_checked += 1;
            let original = value(x, &w, &sigma)?;
            let translated = value(&report.translated, &w, &sigma)?;
            let round_trip = value(&report.round_trip, &w, &sigma)?;
            if translated != original || round_trip != original {
                report.discrepancy = Some(Discrepancy { word: w, assignment: sigma, original, translated, round_trip });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::msoleval::{eval_closed, examples, indet_term};
    use crate::semiring::{rat, Int, MaxPlus, Rat};
    use crate::wmsol::we_eval_closed;

    type W = WmsolFormula<Rat>;

    fn k(n: i64) -> W {
        W::constant(rat(n, 1))
    }

    fn step_five() -> W {
        W::forall("x", W::letter('1', "x").and(k(5)).or(W::not_letter('1', "x").and(k(1))))
    }

    fn agree_forward(phi: &W, len: usize) {
        let t = rmsol_to_msoleval(phi).unwrap();
        t.check_no_shadowing().unwrap();
        for w in enumerate_words(&Alphabet::binary(), len) {
            assert_eq!(eval_closed(&t, &w).unwrap(), we_eval_closed(phi, &w).unwrap(), "{phi} on {w}");
        }
    }

    #[test]
    fn forward_examples() {
        let t = rmsol_to_msoleval(&step_five()).unwrap();
        assert_eq!(eval_closed(&t, &Word::binary("0110")).unwrap(), rat(25, 1));
        assert_eq!(rmsol_to_msoleval(&k(7)).unwrap(), EvalTerm::Const(rat(7, 1)));
        let ex = WmsolFormula::<Int>::exists("x", WmsolFormula::letter('1', "x"));
        let t = rmsol_to_msoleval(&ex).unwrap();
        assert_eq!(eval_closed(&t, &Word::binary("0110")).unwrap(), Int::from(2));
        let taut = W::forall_set("X", W::member("x", "X").or(W::not_member("x", "X")));
        let t = rmsol_to_msoleval(&taut).unwrap();
        let w = Word::binary("01");
        let sigma = Assignment::new().with_element("x", 2);
        assert_eq!(eval_term(&t, &w, &sigma, &BTreeMap::new()).unwrap(), rat(1, 1));
        for phi in [step_five(), k(7), W::exists("x", W::letter('1', "x")).or(k(2))] {
            agree_forward(&phi, 4);
        }
    }

    #[test]
    fn forward_step_with_overlapping_cases() {
        let phi = W::forall("x", W::letter('1', "x").and(k(2)).or(W::leq("x", "x").and(k(3))).or(k(1)));
        agree_forward(&phi, 4);
        let nested = W::exists("y", W::forall("x", W::leq("x", "y").and(k(2)).or(W::not_leq("x", "y"))));
        agree_forward(&nested, 4);
    }

    #[test]
    fn forward_rejects_non_rmsol() {
        let sq = W::forall("x", W::forall("y", k(2)));
        assert!(matches!(rmsol_to_msoleval(&sq), Err(Error::NotRmsol(_))));
        assert!(matches!(we_eval_closed(&sq, &Word::binary("11")), Ok(v) if v == rat(16, 1)));
    }

    fn agree_backward<S: Semiring>(t: &EvalTerm<S>, len: usize) {
        let phi = msoleval_to_rmsol(t).unwrap();
        let class = classify(&phi);
        assert!(class.is_rmsol && class.is_full, "{phi}");
        for w in enumerate_words(&Alphabet::binary(), len) {
            assert_eq!(we_eval_closed(&phi, &w).unwrap(), eval_closed(t, &w).unwrap(), "{phi} on {w}");
        }
    }

    #[test]
    fn backward_examples() {
        let ones = examples::count_ones::<Rat>();
        let phi = msoleval_to_rmsol(&ones).unwrap();
        assert_eq!(we_eval_closed(&phi, &Word::binary("0110")).unwrap(), rat(2, 1));
        agree_backward(&ones, 4);

        let mono = EvalTerm::monomial(rat(5, 1), "x", MsoFormula::letter('1', "x"));
        let phi = msoleval_to_rmsol(&mono).unwrap();
        assert_eq!(
            phi,
            W::forall("x", W::letter('1', "x").and(k(5)).or(W::not_letter('1', "x")))
        );
        assert_eq!(we_eval_closed(&phi, &Word::binary("0110")).unwrap(), rat(25, 1));

        agree_backward(&EvalTerm::Const(rat(1, 1)), 3);
        agree_backward(&examples::blocks_of_ones::<Rat>(), 4);
        agree_backward(&examples::block_size_extremum(MaxPlus::finite(1)), 4);
        agree_backward(&EvalTerm::monomial(rat(3, 1), "v", stock::is_zero("v")), 3);
    }

    #[test]
    fn backward_rejects_indeterminates() {
        let t = indet_term::<Rat>("X");
        assert!(matches!(msoleval_to_rmsol(&t), Err(Error::NonGround(x)) if x == "X"));
    }

    #[test]
    fn roundtrips() {
        let ab = Alphabet::binary();
        let r = roundtrip_check(&Expr::Formula(step_five()), &ab, 4).unwrap();
        assert!(r.passed());
        assert_eq!(r.words_checked, 31);
        assert!(roundtrip_check(&Expr::Formula(k(0)), &ab, 4).unwrap().passed());
        let mb = examples::block_size_extremum(MaxPlus::finite(1));
        assert!(roundtrip_check(&Expr::Term(mb), &ab, 4).unwrap().passed());
    }
}
