use proptest::prelude::*;

use wordfn::generate::{min_plus_pool, rat_pool, rng, Generator};
use wordfn::parse::{parse_term, parse_wmsol};
use wordfn_core::msoleval::eval_closed;
use wordfn_core::semiring::{MinPlus, Rat, Semiring};
use wordfn_core::translate::{msoleval_to_rmsol, rmsol_to_msoleval, roundtrip_check, Expr};
use wordfn_core::wmsol::{classify, we_eval_closed};
use wordfn_core::word::{enumerate_words, Alphabet};

fn forward<S: Semiring>(pool: Vec<S>, seed: u64) -> Result<(), TestCaseError> {
    let mut g = Generator::new(pool, Alphabet::binary());
    let phi = g.rmsol(&mut rng(seed), 3);
    prop_assert!(classify(&phi).is_rmsol, "{}", phi);
    let t = rmsol_to_msoleval(&phi).unwrap();
    prop_assert!(t.is_ground());
    prop_assert!(t.free_vars().is_empty(), "{}", t);
    prop_assert!(t.check_no_shadowing().is_ok(), "{}", t);
    for w in enumerate_words(&Alphabet::binary(), 3) {
        prop_assert_eq!(we_eval_closed(&phi, &w).unwrap(), eval_closed(&t, &w).unwrap(), "{} on {}", phi, w);
    }
    Ok(())
}

fn backward<S: Semiring>(pool: Vec<S>, seed: u64) -> Result<(), TestCaseError> {
    let mut g = Generator::new(pool, Alphabet::binary());
    let t = g.ground_term(&mut rng(seed), 3);
    let phi = msoleval_to_rmsol(&t).unwrap();
    prop_assert!(classify(&phi).is_rmsol, "{}", phi);
    prop_assert!(phi.free_vars().is_empty());
    prop_assert!(phi.check_no_shadowing().is_ok(), "{}", phi);
    for w in enumerate_words(&Alphabet::binary(), 3) {
        prop_assert_eq!(eval_closed(&t, &w).unwrap(), we_eval_closed(&phi, &w).unwrap(), "{} on {}", t, w);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn forward_translation_preserves_values(seed: u64) {
        forward(rat_pool(), seed)?;
        forward(min_plus_pool(), seed)?;
    }

    #[test]
    fn backward_translation_preserves_values(seed: u64) {
        backward(rat_pool(), seed)?;
        backward(min_plus_pool(), seed)?;
    }

    #[test]
    fn round_trips_pass(seed: u64) {
        let mut g = Generator::new(rat_pool(), Alphabet::binary());
        let mut r = rng(seed);
        let phi = g.rmsol(&mut r, 2);
        let report = roundtrip_check(&Expr::Formula(phi), &Alphabet::binary(), 3).unwrap();
        prop_assert!(report.passed(), "{:?}", report.discrepancy);
        let t = g.ground_term(&mut r, 2);
        let report = roundtrip_check(&Expr::Term(t), &Alphabet::binary(), 3).unwrap();
        prop_assert!(report.passed(), "{:?}", report.discrepancy);
    }

    #[test]
    fn printed_formulas_parse_back(seed: u64) {
        let mut g = Generator::new(min_plus_pool(), Alphabet::binary());
        let phi = g.rmsol(&mut rng(seed), 3);
        prop_assert_eq!(parse_wmsol::<MinPlus>(&phi.to_string()).unwrap(), phi);
    }

    #[test]
    fn printed_terms_parse_back(seed: u64) {
        let mut g = Generator::new(rat_pool(), Alphabet::binary());
        let t = g.ground_term(&mut rng(seed), 3);
        prop_assert_eq!(parse_term::<Rat>(&t.to_string()).unwrap(), t);
    }
}

#[test]
fn generators_are_deterministic() {
    let a = Generator::new(rat_pool(), Alphabet::binary()).rmsol(&mut rng(9), 3);
    let b = Generator::new(rat_pool(), Alphabet::binary()).rmsol(&mut rng(9), 3);
    assert_eq!(a, b);
    let a = Generator::new(rat_pool(), Alphabet::binary()).ground_term(&mut rng(9), 3);
    let b = Generator::new(rat_pool(), Alphabet::binary()).ground_term(&mut rng(9), 3);
    assert_eq!(a, b);
}
