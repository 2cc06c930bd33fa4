//! Weighted evaluation against a direct recursive evaluator: sums for ∨ and
//! ∃, products for ∧ and ∀, variables ranging over positions 1..=n only.

use std::collections::HashMap;

use proptest::prelude::*;

use wordfn_core::semiring::{rat, MinPlus, Rat, Semiring};
use wordfn_core::wmsol::{classify, we_eval, we_eval_closed, WAtom, WmsolFormula as W};
use wordfn_core::word::{enumerate_words, Alphabet, Assignment, PosSet};

#[derive(Default, Clone)]
struct Env {
    elems: HashMap<String, usize>,
    sets: HashMap<String, u64>,
}

fn atom(a: &WAtom, w: &[char], env: &Env) -> bool {
    match a {
        WAtom::Letter(c, x) => w[env.elems[x] - 1] == *c,
        WAtom::Leq(x, y) => env.elems[x] <= env.elems[y],
        WAtom::In(x, s) => env.sets[s] >> env.elems[x] & 1 == 1,
    }
}

fn bit<S: Semiring>(b: bool) -> S {
    if b { S::one() } else { S::zero() }
}

fn value<S: Semiring>(phi: &W<S>, w: &[char], env: &Env) -> S {
    let n = w.len();
    match phi {
        W::Const(k) => k.clone(),
        W::Atom(a) => bit(atom(a, w, env)),
        W::NegAtom(a) => bit(!atom(a, w, env)),
        W::Not(p) => bit(value(p, w, env) == S::zero()),
        W::Or(p, q) => value(p, w, env).plus(&value(q, w, env)),
        W::And(p, q) => value(p, w, env).times(&value(q, w, env)),
        W::Exists(x, p) | W::Forall(x, p) => {
            let vals = (1..=n).map(|i| {
                let mut e = env.clone();
                e.elems.insert(x.clone(), i);
                value(p, w, &e)
            });
            if matches!(phi, W::Exists(..)) {
                vals.fold(S::zero(), |a, v| a.plus(&v))
            } else {
                vals.fold(S::one(), |a, v| a.times(&v))
            }
        }
        W::ExistsSet(s, p) | W::ForallSet(s, p) => {
            let vals = (0u64..1 << n).map(|m| {
                let mut e = env.clone();
                e.sets.insert(s.clone(), m << 1);
                value(p, w, &e)
            });
            if matches!(phi, W::ExistsSet(..)) {
                vals.fold(S::zero(), |a, v| a.plus(&v))
            } else {
                vals.fold(S::one(), |a, v| a.times(&v))
            }
        }
    }
}

struct Builder<S> {
    bytes: Vec<u8>,
    at: usize,
    fresh: usize,
    constants: Vec<S>,
}

impl<S: Semiring> Builder<S> {
    fn next(&mut self, modulus: usize) -> usize {
        let b = self.bytes[self.at % self.bytes.len()] as usize;
        self.at += 1;
        b % modulus
    }

    fn pick(&mut self, names: &[String]) -> String {
        names[self.next(names.len())].clone()
    }

    fn atom(&mut self, elems: &[String], sets: &[String]) -> W<S> {
        match self.next(4) {
            0 => {
                let i = self.next(self.constants.len());
                W::Const(self.constants[i].clone())
            }
            1 => W::letter(['0', '1'][self.next(2)], &self.pick(elems)),
            2 => W::leq(&self.pick(elems), &self.pick(elems)),
            _ => W::member(&self.pick(elems), &self.pick(sets)),
        }
    }

    fn formula(&mut self, depth: usize, elems: &mut Vec<String>, sets: &mut Vec<String>) -> W<S> {
        let choice = if depth == 0 { 0 } else { self.next(10) };
        match choice {
            0 | 1 => self.atom(elems, sets),
            2 => self.formula(depth - 1, elems, sets).negate(),
            3 => self.formula(depth - 1, elems, sets).and(self.formula(depth - 1, elems, sets)),
            4 => self.formula(depth - 1, elems, sets).or(self.formula(depth - 1, elems, sets)),
            5 | 6 => {
                self.fresh += 1;
                let v = format!("v{}", self.fresh);
                elems.push(v.clone());
                let body = self.formula(depth - 1, elems, sets);
                elems.pop();
                if choice == 5 { W::exists(&v, body) } else { W::forall(&v, body) }
            }
            _ if sets.len() >= 3 => self.atom(elems, sets),
            _ => {
                self.fresh += 1;
                let s = format!("S{}", self.fresh);
                sets.push(s.clone());
                let body = self.formula(depth - 1, elems, sets);
                sets.pop();
                if choice < 9 { W::exists_set(&s, body) } else { W::forall_set(&s, body) }
            }
        }
    }
}

fn check<S: Semiring>(bytes: Vec<u8>, constants: Vec<S>) -> Result<(), TestCaseError> {
    let mut b = Builder { bytes, at: 0, fresh: 0, constants };
    let phi = b.formula(3, &mut vec!["x".into()], &mut vec!["X".into()]);
    for w in enumerate_words(&Alphabet::binary(), 3) {
        let n = w.len();
        for x in 1..=n {
            for m in 0u64..1 << n {
                let sigma = Assignment::new().with_element("x", x).with_set("X", PosSet(m << 1));
                let env = Env {
                    elems: HashMap::from([("x".to_string(), x)]),
                    sets: HashMap::from([("X".to_string(), m << 1)]),
                };
                let got = we_eval(&phi, &w, &sigma).unwrap();
                prop_assert_eq!(&got, &value(&phi, w.letters(), &env), "{} on {} x={} X={:b}", phi, w, x, m << 1);
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn rational_weights_match_direct_evaluation(bytes in prop::collection::vec(any::<u8>(), 1..48)) {
        check(bytes, vec![rat(0, 1), rat(1, 1), rat(2, 1), rat(1, 2)])?;
    }

    #[test]
    fn tropical_weights_match_direct_evaluation(bytes in prop::collection::vec(any::<u8>(), 1..48)) {
        check(bytes, vec![MinPlus::infinity(), MinPlus::finite(0), MinPlus::finite(1), MinPlus::finite(2)])?;
    }
}

#[test]
fn nested_universal_constants_give_square_exponents() {
    let phi = W::forall("x", W::forall("y", W::Const(rat(2, 1))));
    assert!(!classify(&phi).is_rmsol);
    for w in enumerate_words(&Alphabet::binary(), 5) {
        let n = w.len();
        assert_eq!(we_eval_closed(&phi, &w).unwrap(), Semiring::pow(&rat(2, 1), n * n));
    }
}

#[test]
fn existential_constant_counts_positions() {
    let phi: W<Rat> = W::exists("x", W::letter('1', "x"));
    for w in enumerate_words(&Alphabet::binary(), 5) {
        let ones = w.letters().iter().filter(|&&c| c == '1').count();
        assert_eq!(we_eval_closed(&phi, &w).unwrap(), rat(ones as i64, 1));
    }
}
