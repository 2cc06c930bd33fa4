use std::collections::BTreeMap;

use proptest::prelude::*;

use wordfn_core::automata::{
    automaton_to_msoleval, first_disagreement, hankel_ranks, learn_automaton, quotient_closure_check, Matrix,
    WeightedAutomaton,
};
use wordfn_core::linalg::{rank, RowSpace};
use wordfn_core::msoleval::{eval_closed, examples};
use wordfn_core::semiring::{rat, MinPlus, Rat, Semiring};
use wordfn_core::wmsol::{we_eval_closed, WmsolFormula};
use wordfn_core::word::{enumerate_words, Alphabet, Word};
use wordfn_core::Error;

fn build<S: Semiring>(size: usize, values: &[S]) -> WeightedAutomaton<S> {
    let mut it = values.iter().cloned();
    let mut take = |n: usize| -> Vec<S> { (0..n).map(|_| it.next().unwrap()).collect() };
    let alpha = take(size);
    let gamma = take(size);
    let mut mu = BTreeMap::new();
    for c in ['0', '1'] {
        let rows = (0..size).map(|_| take(size)).collect();
        mu.insert(c, Matrix::from_rows(rows).unwrap());
    }
    WeightedAutomaton::new(Alphabet::binary(), alpha, mu, gamma).unwrap()
}

fn automata<S: Semiring + 'static>(
    max_size: usize,
    weight: impl Strategy<Value = S> + Clone + 'static,
) -> impl Strategy<Value = WeightedAutomaton<S>> {
    (1..=max_size).prop_flat_map(move |r| {
        prop::collection::vec(weight.clone(), 2 * r + 2 * r * r).prop_map(move |v| build(r, &v))
    })
}

fn small_rats() -> impl Strategy<Value = Rat> + Clone {
    (-2i64..=2).prop_map(|n| rat(n, 1))
}

fn small_tropical() -> impl Strategy<Value = MinPlus> + Clone {
    prop_oneof![Just(MinPlus::infinity()), (0i64..=3).prop_map(MinPlus::finite)]
}

/// `α · μ(w₁) ⋯ μ(w_n) · γ` by explicit matrix products.
fn matrix_product_value<S: Semiring>(a: &WeightedAutomaton<S>, w: &Word) -> S {
    let r = a.size();
    let mut m: Vec<Vec<S>> = (0..r)
        .map(|i| (0..r).map(|j| if i == j { S::one() } else { S::zero() }).collect())
        .collect();
    for c in w.letters() {
        let t = a.mu(*c).unwrap();
        m = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| (0..r).fold(S::zero(), |acc, k| acc.plus(&m[i][k].times(t.get(k, j)))))
                    .collect()
            })
            .collect();
    }
    let mut total = S::zero();
    for i in 0..r {
        for j in 0..r {
            total = total.plus(&a.alpha()[i].times(&m[i][j]).times(&a.gamma()[j]));
        }
    }
    total
}

/// Rank by Gauss-Jordan elimination with division.
fn gauss_jordan_rank(rows: &[Vec<Rat>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != Rat::zero()) else { continue };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x / &pivot;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != Rat::zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

fn ints(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
    rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect()
}

#[test]
fn frozen_ranks() {
    assert_eq!(rank::<Rat>(&[]), 0);
    assert_eq!(rank(&ints(&[&[0, 0], &[0, 0]])), 0);
    assert_eq!(rank(&ints(&[&[1, 2], &[2, 4]])), 1);
    assert_eq!(rank(&ints(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
    assert_eq!(rank(&ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), 3);
    assert_eq!(rank(&ints(&[&[0, 1], &[1, 0], &[1, 1]])), 2);
    assert_eq!(rank(&[vec![rat(1, 2), rat(1, 3)], vec![rat(3, 1), rat(2, 1)]]), 1);
}

#[test]
fn frozen_hankel_ranks() {
    let ab = Alphabet::binary();
    let ones = |w: &Word| Ok(rat(w.letters().iter().filter(|&&c| c == '1').count() as i64, 1));
    assert_eq!(hankel_ranks(&ones, &ab, 3).unwrap(), vec![0, 2, 2, 2]);
    let sq = WmsolFormula::forall("x", WmsolFormula::forall("y", WmsolFormula::Const(rat(2, 1))));
    let f = |w: &Word| we_eval_closed(&sq, w);
    assert_eq!(hankel_ranks(&f, &ab, 4).unwrap(), vec![1, 2, 3, 4, 5]);
    assert!(matches!(learn_automaton(&f, &ab, 2), Err(Error::RankNotSaturated { .. })));
}

#[test]
fn learned_count_of_ones_is_closed_under_quotients() {
    let ab = Alphabet::binary();
    let t = examples::count_ones::<Rat>();
    let f = |w: &Word| eval_closed(&t, w);
    let a = learn_automaton(&f, &ab, 2).unwrap();
    assert_eq!(a.size(), 2);
    assert_eq!(first_disagreement(&f, &a, &ab, 6).unwrap(), None);
    let report = quotient_closure_check(&a, 4).unwrap();
    assert!(report.stable);
    assert_eq!(report.dimension, 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn run_is_the_matrix_product(a in automata(3, small_rats()), w in "[01]{0,6}") {
        let w = Word::binary(&w);
        prop_assert_eq!(a.run(&w).unwrap(), matrix_product_value(&a, &w));
    }

    #[test]
    fn tropical_run_is_the_matrix_product(a in automata(3, small_tropical()), w in "[01]{0,6}") {
        let w = Word::binary(&w);
        prop_assert_eq!(a.run(&w).unwrap(), matrix_product_value(&a, &w));
    }

    #[test]
    fn left_quotient_identity(a in automata(3, small_rats()), u in "[01]{0,4}", v in "[01]{0,4}") {
        let (u, v) = (Word::binary(&u), Word::binary(&v));
        prop_assert_eq!(a.left_quotient(&u).unwrap().run(&v).unwrap(), a.run(&u.concat(&v)).unwrap());
    }

    #[test]
    fn tropical_left_quotient_identity(a in automata(3, small_tropical()), u in "[01]{0,4}", v in "[01]{0,4}") {
        let (u, v) = (Word::binary(&u), Word::binary(&v));
        prop_assert_eq!(a.left_quotient(&u).unwrap().run(&v).unwrap(), a.run(&u.concat(&v)).unwrap());
    }

    #[test]
    fn hankel_rank_is_bounded_by_size(a in automata(3, small_rats())) {
        let ranks = hankel_ranks(&a, &Alphabet::binary(), 3).unwrap();
        prop_assert!(ranks.iter().all(|&r| r <= a.size()), "{:?} for size {}", ranks, a.size());
        prop_assert!(ranks.windows(2).all(|p| p[0] <= p[1]));
    }

    #[test]
    fn learning_recovers_the_function(a in automata(3, small_rats())) {
        let ab = Alphabet::binary();
        let learned = learn_automaton(&a, &ab, a.size()).unwrap();
        let r = *hankel_ranks(&a, &ab, a.size()).unwrap().last().unwrap();
        prop_assert_eq!(learned.size(), r.max(1));
        prop_assert_eq!(first_disagreement(&a, &learned, &ab, 6).unwrap(), None);
    }

    #[test]
    fn rank_matches_gauss_jordan(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..5)) {
        let m: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect();
        prop_assert_eq!(rank(&m), gauss_jordan_rank(&m));
    }

    #[test]
    fn row_space_coordinates_reconstruct(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..5), probe in prop::collection::vec(-3i64..=3, 3)) {
        let mut space = RowSpace::new();
        let mut basis = Vec::new();
        for r in &rows {
            let v: Vec<Rat> = r.iter().map(|&x| rat(x, 1)).collect();
            if space.insert(&v) {
                basis.push(v);
            }
        }
        prop_assert_eq!(space.dimension(), basis.len());
        prop_assert_eq!(space.dimension(), gauss_jordan_rank(&basis));
        let probe: Vec<Rat> = probe.iter().map(|&x| rat(x, 1)).collect();
        match space.coordinates(&probe) {
            Some(c) => {
                let rebuilt: Vec<Rat> = (0..3)
                    .map(|j| basis.iter().zip(&c).fold(Rat::zero(), |acc, (b, k)| acc + &b[j] * k))
                    .collect();
                prop_assert_eq!(rebuilt, probe);
            }
            None => {
                let mut extended = basis.clone();
                extended.push(probe);
                prop_assert_eq!(gauss_jordan_rank(&extended), basis.len() + 1);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn compiled_term_agrees_with_run(a in automata(2, small_rats())) {
        for w in enumerate_words(&Alphabet::binary(), 4) {
            prop_assert_eq!(eval_closed(&automaton_to_msoleval(&a), &w).unwrap(), a.run(&w).unwrap(), "{}", w);
        }
    }

    #[test]
    fn compiled_tropical_term_agrees_with_run(a in automata(2, small_tropical())) {
        for w in enumerate_words(&Alphabet::binary(), 4) {
            prop_assert_eq!(eval_closed(&automaton_to_msoleval(&a), &w).unwrap(), a.run(&w).unwrap(), "{}", w);
        }
    }
}
