//! Seeded random generators for formulas, terms, automata and samples.
//!
//! All generated formulas and terms are closed. `depth` bounds the nesting
//! of connectives, quantifiers and sums above the leaves.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wordfn_core::automata::{Matrix, WeightedAutomaton};
use wordfn_core::mso::MsoFormula;
use wordfn_core::msoleval::EvalTerm;
use wordfn_core::semiring::{rat, Direction, Int, MaxPlus, MinPlus, Nat, Poly, Rat, Semiring, Tropical};
use wordfn_core::wmsol::{WAtom, WmsolFormula};
use wordfn_core::word::{Alphabet, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random elements for law checking.
pub trait Sample: Semiring {
    fn sample(rng: &mut impl Rng) -> Self;
}

impl Sample for bool {
    fn sample(rng: &mut impl Rng) -> Self {
        rng.gen()
    }
}

impl Sample for Nat {
    fn sample(rng: &mut impl Rng) -> Self {
        Nat::from(rng.gen_range(0u32..12))
    }
}

impl Sample for Int {
    fn sample(rng: &mut impl Rng) -> Self {
        Int::from(rng.gen_range(-12i32..12))
    }
}

impl Sample for Rat {
    fn sample(rng: &mut impl Rng) -> Self {
        rat(rng.gen_range(-9..10), rng.gen_range(1..6))
    }
}

impl<D: Direction> Sample for Tropical<D> {
    fn sample(rng: &mut impl Rng) -> Self {
        if rng.gen_ratio(1, 6) {
            Self::infinity()
        } else {
            Self::finite(rng.gen_range(-9i64..10))
        }
    }
}

impl Sample for Poly {
    fn sample(rng: &mut impl Rng) -> Self {
        let mut p = Poly::constant(Nat::from(rng.gen_range(0u32..3)));
        for _ in 0..rng.gen_range(0..3) {
            let mut m = Poly::constant(Nat::from(rng.gen_range(1u32..3)));
            for x in ["X", "Y"] {
                m = m.times(&Poly::var(x).pow(rng.gen_range(0..3)));
            }
            p = p.plus(&m);
        }
        p
    }
}

pub fn samples<S: Sample>(rng: &mut impl Rng, n: usize) -> Vec<S> {
    let mut out = vec![S::zero(), S::one()];
    out.extend((0..n.saturating_sub(2)).map(|_| S::sample(rng)));
    out
}

/// The weight pools used for random formulas, terms and automata.
pub fn rat_pool() -> Vec<Rat> {
    vec![rat(0, 1), rat(1, 1), rat(2, 1), rat(1, 2)]
}

pub fn min_plus_pool() -> Vec<MinPlus> {
    vec![MinPlus::infinity(), MinPlus::finite(0), MinPlus::finite(1), MinPlus::finite(2)]
}

pub fn max_plus_pool() -> Vec<MaxPlus> {
    vec![MaxPlus::infinity(), MaxPlus::finite(0), MaxPlus::finite(1), MaxPlus::finite(2)]
}

pub fn random_word(rng: &mut impl Rng, alphabet: &Alphabet, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let text: String = (0..len).map(|_| *alphabet.letters().choose(rng).expect("nonempty alphabet")).collect();
    Word::new(alphabet, &text).expect("letters come from the alphabet")
}

#[derive(Clone, Debug, Default)]
struct Scope {
    elements: Vec<String>,
    sets: Vec<String>,
}

impl Scope {
    fn with_element(&self, x: &str) -> Scope {
        let mut s = self.clone();
        s.elements.push(x.to_string());
        s
    }

    fn with_set(&self, x: &str) -> Scope {
        let mut s = self.clone();
        s.sets.push(x.to_string());
        s
    }
}

/// Generator state: the weight pool, the alphabet and a name counter.
pub struct Generator<S> {
    pub constants: Vec<S>,
    pub alphabet: Alphabet,
    /// Bound on set variables in scope at once; set quantifiers multiply
    /// evaluation cost by `2^n` each.
    pub max_sets: usize,
    counter: usize,
}

impl<S: Semiring> Generator<S> {
    pub fn new(constants: Vec<S>, alphabet: Alphabet) -> Self {
        assert!(!constants.is_empty(), "empty weight pool");
        Generator { constants, alphabet, max_sets: 2, counter: 0 }
    }

    fn fresh(&mut self, prefix: &str) -> String {
        self.counter += 1;
        format!("{prefix}{}", self.counter)
    }

    fn constant(&self, rng: &mut impl Rng) -> S {
        self.constants.choose(rng).expect("nonempty pool").clone()
    }

    fn letter(&self, rng: &mut impl Rng) -> char {
        *self.alphabet.letters().choose(rng).expect("nonempty alphabet")
    }

    fn watom(&self, rng: &mut impl Rng, scope: &Scope) -> WAtom {
        let x = scope.elements.choose(rng).expect("caller checks").clone();
        match rng.gen_range(0..3) {
            0 => WAtom::Letter(self.letter(rng), x),
            1 => WAtom::Leq(x, scope.elements.choose(rng).expect("nonempty").clone()),
            _ => match scope.sets.choose(rng) {
                Some(set) => WAtom::In(x, set.clone()),
                None => WAtom::Letter(self.letter(rng), x),
            },
        }
    }

    fn literal(&self, rng: &mut impl Rng, scope: &Scope) -> WmsolFormula<S> {
        let a = self.watom(rng, scope);
        if rng.gen_bool(0.5) {
            WmsolFormula::Atom(a)
        } else {
            WmsolFormula::NegAtom(a)
        }
    }

    /// A closed bMSOL formula.
    pub fn bmsol(&mut self, rng: &mut impl Rng, depth: usize) -> WmsolFormula<S> {
        self.bmsol_in(rng, depth, &Scope::default())
    }

    fn bmsol_in(&mut self, rng: &mut impl Rng, depth: usize, scope: &Scope) -> WmsolFormula<S> {
        let has_elements = !scope.elements.is_empty();
        if depth == 0 || (has_elements && rng.gen_ratio(1, 4)) {
            return if has_elements && rng.gen_ratio(5, 6) {
                self.literal(rng, scope)
            } else {
                WmsolFormula::Const(if rng.gen_bool(0.5) { S::one() } else { S::zero() })
            };
        }
        let can_set = scope.sets.len() < self.max_sets;
        let choice = if has_elements { rng.gen_range(0..5) } else { rng.gen_range(2..4) };
        match choice {
            0 => self.bmsol_in(rng, depth - 1, scope).negate(),
            1 => {
                let a = self.bmsol_in(rng, depth - 1, scope);
                a.and(self.bmsol_in(rng, depth - 1, scope))
            }
            3 if can_set => {
                let x = self.fresh("X");
                let body = self.bmsol_in(rng, depth - 1, &scope.with_set(&x));
                WmsolFormula::forall_set(&x, body)
            }
            2 | 3 => {
                let x = self.fresh("x");
                let body = self.bmsol_in(rng, depth - 1, &scope.with_element(&x));
                WmsolFormula::forall(&x, body)
            }
            _ => {
                let l = self.watom(rng, scope);
                let a = self.bmsol_in(rng, depth - 1, scope);
                let b = self.bmsol_in(rng, depth - 1, scope);
                WmsolFormula::Atom(l.clone()).and(a).or(WmsolFormula::NegAtom(l).and(b))
            }
        }
    }

    /// A closed RMSOL formula.
    pub fn rmsol(&mut self, rng: &mut impl Rng, depth: usize) -> WmsolFormula<S> {
        self.rmsol_in(rng, depth, &Scope::default())
    }

    fn rmsol_in(&mut self, rng: &mut impl Rng, depth: usize, scope: &Scope) -> WmsolFormula<S> {
        let has_elements = !scope.elements.is_empty();
        if depth == 0 || rng.gen_ratio(1, 5) {
            return if has_elements && rng.gen_bool(0.5) {
                self.literal(rng, scope)
            } else {
                WmsolFormula::Const(self.constant(rng))
            };
        }
        let can_set = scope.sets.len() < self.max_sets;
        match rng.gen_range(0..8) {
            0 => {
                let a = self.rmsol_in(rng, depth - 1, scope);
                a.or(self.rmsol_in(rng, depth - 1, scope))
            }
            1 => {
                let a = self.rmsol_in(rng, depth - 1, scope);
                a.and(self.rmsol_in(rng, depth - 1, scope))
            }
            2 if can_set => {
                let x = self.fresh("X");
                let body = self.rmsol_in(rng, depth - 1, &scope.with_set(&x));
                WmsolFormula::exists_set(&x, body)
            }
            3 if can_set => {
                let x = self.fresh("X");
                let body = self.bmsol_in(rng, depth - 1, &scope.with_set(&x));
                WmsolFormula::forall_set(&x, body)
            }
            4 if has_elements => self.bmsol_in(rng, depth - 1, scope).negate(),
            5 | 6 => {
                let x = self.fresh("x");
                let body = self.step(rng, depth - 1, &scope.with_element(&x));
                WmsolFormula::forall(&x, body)
            }
            _ => {
                let x = self.fresh("x");
                let body = self.rmsol_in(rng, depth - 1, &scope.with_element(&x));
                WmsolFormula::exists(&x, body)
            }
        }
    }

    /// `⋁_i (φ_i ∧ k_i)` with one to three cases.
    fn step(&mut self, rng: &mut impl Rng, depth: usize, scope: &Scope) -> WmsolFormula<S> {
        let n = rng.gen_range(1..=3);
        let mut cases = Vec::with_capacity(n);
        for _ in 0..n {
            let case = match rng.gen_range(0..4) {
                0 => WmsolFormula::Const(self.constant(rng)),
                1 => self.bmsol_in(rng, depth, scope),
                _ => self.bmsol_in(rng, depth, scope).and(WmsolFormula::Const(self.constant(rng))),
            };
            cases.push(case);
        }
        let last = cases.pop().expect("at least one case");
        cases.into_iter().rev().fold(last, |acc, c| c.or(acc))
    }

    fn mso(&mut self, rng: &mut impl Rng, depth: usize, scope: &Scope) -> MsoFormula {
        let has_elements = !scope.elements.is_empty();
        if depth == 0 || (has_elements && rng.gen_ratio(1, 3)) {
            if !has_elements {
                return if rng.gen_bool(0.5) { MsoFormula::True } else { MsoFormula::False };
            }
            let x = scope.elements.choose(rng).expect("nonempty").clone();
            let y = scope.elements.choose(rng).expect("nonempty").clone();
            return match rng.gen_range(0..5) {
                0 | 1 => MsoFormula::letter(self.letter(rng), &x),
                2 => MsoFormula::leq(&x, &y),
                3 => MsoFormula::eq(&x, &y),
                _ => match scope.sets.choose(rng) {
                    Some(set) => MsoFormula::member(&x, set),
                    None => MsoFormula::letter(self.letter(rng), &x),
                },
            };
        }
        let can_set = scope.sets.len() < self.max_sets;
        match rng.gen_range(0..7) {
            0 => self.mso(rng, depth - 1, scope).not(),
            1 => {
                let a = self.mso(rng, depth - 1, scope);
                a.and(self.mso(rng, depth - 1, scope))
            }
            2 => {
                let a = self.mso(rng, depth - 1, scope);
                a.or(self.mso(rng, depth - 1, scope))
            }
            3 => {
                let a = self.mso(rng, depth - 1, scope);
                a.implies(self.mso(rng, depth - 1, scope))
            }
            4 => {
                let x = self.fresh("y");
                MsoFormula::exists(&x, self.mso(rng, depth - 1, &scope.with_element(&x)))
            }
            5 if can_set && rng.gen_bool(0.3) => {
                let x = self.fresh("Z");
                MsoFormula::exists_set(&x, self.mso(rng, depth - 1, &scope.with_set(&x)))
            }
            _ => {
                let x = self.fresh("y");
                MsoFormula::forall(&x, self.mso(rng, depth - 1, &scope.with_element(&x)))
            }
        }
    }

    /// A closed term without indeterminates.
    pub fn ground_term(&mut self, rng: &mut impl Rng, depth: usize) -> EvalTerm<S> {
        self.term_in(rng, depth, &Scope::default())
    }

    fn term_in(&mut self, rng: &mut impl Rng, depth: usize, scope: &Scope) -> EvalTerm<S> {
        let guard_depth = |rng: &mut dyn rand::RngCore| rng.gen_range(0..=2);
        if depth == 0 || rng.gen_ratio(1, 5) {
            if rng.gen_ratio(1, 3) {
                return EvalTerm::Const(self.constant(rng));
            }
            let v = self.fresh("v");
            let gd = guard_depth(rng);
            let guard = self.mso(rng, gd, &scope.with_element(&v));
            return EvalTerm::monomial(self.constant(rng), &v, guard);
        }
        let free_sets = self.max_sets.saturating_sub(scope.sets.len());
        match rng.gen_range(0..3) {
            0 => {
                let n = rng.gen_range(2..=3);
                EvalTerm::Product((0..n).map(|_| self.term_in(rng, depth - 1, scope)).collect())
            }
            1 if free_sets > 0 => {
                let k = rng.gen_range(1..=free_sets.min(2));
                let vars: Vec<String> = (0..k).map(|_| self.fresh("R")).collect();
                let inner = vars.iter().fold(scope.clone(), |s, v| s.with_set(v));
                let gd = guard_depth(rng);
                let guard = self.mso(rng, gd, &inner);
                let body = self.term_in(rng, depth - 1, &inner);
                let names: Vec<&str> = vars.iter().map(String::as_str).collect();
                EvalTerm::set_sum(&names, guard, body)
            }
            _ => {
                let v = self.fresh("u");
                let inner = scope.with_element(&v);
                let gd = guard_depth(rng);
                let guard = self.mso(rng, gd, &inner);
                let body = self.term_in(rng, depth - 1, &inner);
                EvalTerm::elem_sum(&v, guard, body)
            }
        }
    }

    /// An automaton of size `1..=max_size` with weights from the pool.
    pub fn automaton(&mut self, rng: &mut impl Rng, max_size: usize) -> WeightedAutomaton<S> {
        let r = rng.gen_range(1..=max_size);
        let vector = |rng: &mut _| (0..r).map(|_| self.constant(rng)).collect::<Vec<_>>();
        let alpha = vector(rng);
        let gamma = vector(rng);
        let mu: BTreeMap<char, Matrix<S>> = self
            .alphabet
            .letters()
            .iter()
            .map(|&c| {
                let rows = (0..r).map(|_| (0..r).map(|_| self.constant(rng)).collect()).collect();
                (c, Matrix::from_rows(rows).expect("square"))
            })
            .collect();
        WeightedAutomaton::new(self.alphabet.clone(), alpha, mu, gamma).expect("consistent dimensions")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let mut g1 = Generator::new(rat_pool(), Alphabet::binary());
        let mut g2 = Generator::new(rat_pool(), Alphabet::binary());
        let (mut r1, mut r2) = (rng(7), rng(7));
        for _ in 0..20 {
            assert_eq!(g1.rmsol(&mut r1, 3), g2.rmsol(&mut r2, 3));
            assert_eq!(g1.ground_term(&mut r1, 3), g2.ground_term(&mut r2, 3));
        }
    }

    #[test]
    fn generated_formulas_lie_in_their_fragments() {
        let mut g = Generator::new(min_plus_pool(), Alphabet::binary());
        let mut r = rng(11);
        for _ in 0..200 {
            let b = g.bmsol(&mut r, 3);
            assert!(b.is_bmsol(), "{b}");
            assert!(b.free_vars().elements.is_empty());
            let phi = g.rmsol(&mut r, 3);
            assert!(phi.is_rmsol(), "{phi}");
            phi.check_no_shadowing().unwrap();
            let t = g.ground_term(&mut r, 3);
            assert!(t.is_ground() && t.free_vars().elements.is_empty() && t.free_vars().sets.is_empty(), "{t}");
            t.check_no_shadowing().unwrap();
        }
    }
}
