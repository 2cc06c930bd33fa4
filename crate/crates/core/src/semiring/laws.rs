use alloc::vec;
use alloc::vec::Vec;

use super::SemiringSpec;

/// The axioms checked by [`check_semiring_laws`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Law {
    AddAssociative,
    AddCommutative,
    AddIdentity,
    MulAssociative,
    MulCommutative,
    MulIdentity,
    ZeroAnnihilates,
    Distributive,
    AdditiveInverse,
    MultiplicativeInverse,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::AddAssociative => "add-associative",
            Law::AddCommutative => "add-commutative",
            Law::AddIdentity => "add-identity",
            Law::MulAssociative => "mul-associative",
            Law::MulCommutative => "mul-commutative",
            Law::MulIdentity => "mul-identity",
            Law::ZeroAnnihilates => "zero-annihilates",
            Law::Distributive => "distributive",
            Law::AdditiveInverse => "additive-inverse",
            Law::MultiplicativeInverse => "multiplicative-inverse",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LawCheck<T> {
    pub law: Law,
    pub passed: bool,
    /// The first sample tuple violating the law.
    pub witness: Option<Vec<T>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LawReport<T> {
    pub semiring: alloc::string::String,
    pub samples: usize,
    pub checks: Vec<LawCheck<T>>,
}

impl<T> LawReport<T> {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, law: Law) -> Option<&LawCheck<T>> {
        self.checks.iter().find(|c| c.law == law)
    }
}

/// Checks the commutative-semiring axioms over all pairs and triples of
/// `samples`. Violations are reported, never raised.
pub fn check_semiring_laws<T: Clone + PartialEq>(spec: &SemiringSpec<T>, samples: &[T]) -> LawReport<T> {
    let add = spec.add;
    let mul = spec.mul;
    let mut checks = Vec::new();

    let mut unary = |law: Law, holds: &dyn Fn(&T) -> bool| {
        let witness = samples.iter().find(|a| !holds(a)).map(|a| vec![a.clone()]);
        checks.push(LawCheck { law, passed: witness.is_none(), witness });
    };
    unary(Law::AddIdentity, &|a| add(a, &spec.zero) == *a && add(&spec.zero, a) == *a);
    unary(Law::MulIdentity, &|a| mul(a, &spec.one) == *a && mul(&spec.one, a) == *a);
    unary(Law::ZeroAnnihilates, &|a| {
        mul(a, &spec.zero) == spec.zero && mul(&spec.zero, a) == spec.zero
    });
    if spec.is_ring {
        match spec.neg {
            Some(neg) => unary(Law::AdditiveInverse, &|a| add(a, &neg(a)) == spec.zero),
            None => unary(Law::AdditiveInverse, &|_| false),
        }
    }
    if spec.is_field {
        match spec.inv {
            Some(inv) => unary(Law::MultiplicativeInverse, &|a| {
                *a == spec.zero || inv(a).is_some_and(|b| mul(a, &b) == spec.one)
            }),
            None => unary(Law::MultiplicativeInverse, &|_| false),
        }
    }

    let mut binary = |law: Law, holds: &dyn Fn(&T, &T) -> bool| {
        let mut witness = None;
        'outer: for a in samples {
            for b in samples {
                if !holds(a, b) {
                    witness = Some(vec![a.clone(), b.clone()]);
                    break 'outer;
                }
            }
        }
        checks.push(LawCheck { law, passed: witness.is_none(), witness });
    };
    binary(Law::AddCommutative, &|a, b| add(a, b) == add(b, a));
    binary(Law::MulCommutative, &|a, b| mul(a, b) == mul(b, a));

    let mut ternary = |law: Law, holds: &dyn Fn(&T, &T, &T) -> bool| {
        let mut witness = None;
        'outer: for a in samples {
            for b in samples {
                for c in samples {
                    if !holds(a, b, c) {
                        witness = Some(vec![a.clone(), b.clone(), c.clone()]);
                        break 'outer;
                    }
                }
            }
        }
        checks.push(LawCheck { law, passed: witness.is_none(), witness });
    };
    ternary(Law::AddAssociative, &|a, b, c| add(a, &add(b, c)) == add(&add(a, b), c));
    ternary(Law::MulAssociative, &|a, b, c| mul(a, &mul(b, c)) == mul(&mul(a, b), c));
    ternary(Law::Distributive, &|a, b, c| {
        mul(a, &add(b, c)) == add(&mul(a, b), &mul(a, c))
    });

    checks.sort_by_key(|c| c.law);
    LawReport {
        semiring: spec.name.clone(),
        samples: samples.len(),
        checks,
    }
}
