//! Frequently used MSO formulas on word structures.
//!
//! Internal binders are named after the arguments (`_succ_x_y`, …) so that
//! they never capture a variable passed in.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::MsoFormula as F;

fn binder(tag: &str, args: &[&str]) -> String {
    let mut name = format!("_{tag}");
    for a in args {
        name.push('_');
        name.push_str(a);
    }
    name
}

/// `x` is the zero element, i.e. the least element of the universe.
pub fn is_zero(x: &str) -> F {
    let y = binder("min", &[x]);
    F::forall(&y, F::leq(x, &y))
}

/// `x` carries a letter. Equivalent to `⋁_a P_a(x)` on every word
/// structure, but independent of the alphabet.
pub fn pos(x: &str) -> F {
    is_zero(x).not()
}

/// `x` is the greatest element (element 0 on the empty word).
pub fn is_last(x: &str) -> F {
    let y = binder("max", &[x]);
    F::forall(&y, F::leq(&y, x))
}

/// `x < y`.
pub fn less(x: &str, y: &str) -> F {
    F::leq(x, y).and(F::leq(y, x).not())
}

/// `y` is the immediate successor of `x`.
pub fn succ(x: &str, y: &str) -> F {
    let z = binder("succ", &[x, y]);
    less(x, y).and(F::forall(&z, F::leq(&z, x).or(F::leq(y, &z))))
}

/// The predecessor of `v` exists and lies in `set`.
pub fn pred_in(v: &str, set: &str) -> F {
    let u = binder("pred", &[v, set]);
    F::exists(&u, F::member(&u, set).and(succ(&u, v)))
}

/// `x ∈ X` spelled for the truth-value construction: `X` is the whole
/// universe.
pub fn is_universe(set: &str) -> F {
    let y = binder("all", &[set]);
    F::forall(&y, F::member(&y, set))
}

pub fn is_empty_set(set: &str) -> F {
    let y = binder("none", &[set]);
    F::forall(&y, F::member(&y, set).not())
}

/// `sub ⊆ sup`.
pub fn subset(sub: &str, sup: &str) -> F {
    let y = binder("sub", &[sub, sup]);
    F::forall(&y, F::member(&y, sub).implies(F::member(&y, sup)))
}

/// Every element of `set` carries a letter.
pub fn within_positions(set: &str) -> F {
    let y = binder("inpos", &[set]);
    F::forall(&y, F::member(&y, set).implies(pos(&y)))
}

/// `set` is convex in the order.
pub fn interval(set: &str) -> F {
    let x = binder("ivx", &[set]);
    let y = binder("ivy", &[set]);
    let z = binder("ivz", &[set]);
    F::forall(
        &x,
        F::forall(
            &y,
            F::forall(
                &z,
                F::all([
                    F::member(&x, set),
                    F::member(&z, set),
                    F::leq(&x, &y),
                    F::leq(&y, &z),
                ])
                .implies(F::member(&y, set)),
            ),
        ),
    )
}

/// `set` is nonempty.
pub fn nonempty(set: &str) -> F {
    let y = binder("some", &[set]);
    F::exists(&y, F::member(&y, set))
}

/// `set` is a maximal run of consecutive positions labelled `letter`.
pub fn block(letter: char, set: &str) -> F {
    let x = binder("blkx", &[set]);
    let y = binder("blky", &[set]);
    let inside = binder("blkin", &[set]);
    let all_letter = F::forall(&inside, F::member(&inside, set).implies(F::letter(letter, &inside)));
    let maximal = F::forall(
        &x,
        F::forall(
            &y,
            succ(&x, &y).implies(
                F::member(&x, set)
                    .and(F::letter(letter, &y))
                    .implies(F::member(&y, set))
                    .and(
                        F::member(&y, set)
                            .and(F::letter(letter, &x))
                            .implies(F::member(&x, set)),
                    ),
            ),
        ),
    );
    F::all([nonempty(set), all_letter, interval(set), maximal])
}

/// `Block1(B)`: a maximal block of 1's.
pub fn block1(set: &str) -> F {
    block('1', set)
}

/// `v` is the first position of a block of `letter`.
pub fn first_in_block(letter: char, v: &str) -> F {
    let u = binder("fib", &[v]);
    F::letter(letter, v).and(F::exists(&u, succ(&u, v).and(F::letter(letter, &u))).not())
}

/// `(U_1, …, U_r)` is an ordered partition of the universe; blocks may be
/// empty.
pub fn partition(sets: &[&str]) -> F {
    let x = binder("part", sets);
    let covered = F::any(sets.iter().map(|s| F::member(&x, s)));
    let mut disjoint = Vec::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            disjoint.push(F::member(&x, sets[i]).and(F::member(&x, sets[j])).not());
        }
    }
    F::forall(&x, F::all(core::iter::once(covered).chain(disjoint)))
}

/// The relativization `φ^U`: every quantifier is restricted to `U`.
pub fn relativize(phi: &F, set: &str) -> F {
    match phi {
        F::Not(a) => relativize(a, set).not(),
        F::And(a, b) => relativize(a, set).and(relativize(b, set)),
        F::Or(a, b) => relativize(a, set).or(relativize(b, set)),
        F::Implies(a, b) => relativize(a, set).implies(relativize(b, set)),
        F::Exists(x, a) => F::exists(x, F::member(x, set).and(relativize(a, set))),
        F::Forall(x, a) => F::forall(x, F::member(x, set).implies(relativize(a, set))),
        F::ExistsSet(x, a) => F::exists_set(x, subset(x, set).and(relativize(a, set))),
        F::ForallSet(x, a) => F::forall_set(x, subset(x, set).implies(relativize(a, set))),
        atom => atom.clone(),
    }
}

/// The named library with canonical free-variable names.
pub fn stock_formulas() -> Vec<(&'static str, F)> {
    alloc::vec![
        ("Pos(x)", pos("x")),
        ("Zero(x)", is_zero("x")),
        ("Last(x)", is_last("x")),
        ("Succ(x,y)", succ("x", "y")),
        ("Interval(U)", interval("U")),
        ("Block1(B)", block1("B")),
        ("FirstInBlock(v)", first_in_block('1', "v")),
        ("Partition(U1,U2)", partition(&["U1", "U2"])),
        ("Partition(U1,U2,U3)", partition(&["U1", "U2", "U3"])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mso::satisfies;
    use crate::word::{word_to_structure, Assignment, PosSet, Word};

    fn sat(w: &str, sigma: Assignment, phi: &F) -> bool {
        satisfies(&word_to_structure(&Word::binary(w)), &sigma, phi).unwrap()
    }

    #[test]
    fn block_must_be_maximal() {
        let b = block1("B");
        assert!(sat("0110", Assignment::new().with_set("B", PosSet::from_elements([2, 3])), &b));
        assert!(!sat("0110", Assignment::new().with_set("B", PosSet::from_elements([2])), &b));
        assert!(!sat("0110", Assignment::new().with_set("B", PosSet::empty()), &b));
    }

    #[test]
    fn partition_examples() {
        let p = partition(&["U1", "U2"]);
        let sigma = Assignment::new()
            .with_set("U1", PosSet::from_elements([0, 1]))
            .with_set("U2", PosSet::from_elements([2]));
        assert!(sat("01", sigma, &p));
        let sigma = Assignment::new()
            .with_set("U1", PosSet::from_elements([0, 1, 2]))
            .with_set("U2", PosSet::from_elements([2]));
        assert!(!sat("01", sigma, &p));
    }

    #[test]
    fn relativized_existential() {
        let phi = F::exists("x", F::letter('1', "x"));
        let rel = relativize(&phi, "U");
        assert!(!sat("10", Assignment::new().with_set("U", PosSet::from_elements([2])), &rel));
        assert!(sat("10", Assignment::new().with_set("U", PosSet::from_elements([1])), &rel));
    }

    #[test]
    fn order_helpers() {
        let w = "011";
        assert!(sat(w, Assignment::new().with_element("x", 0), &is_zero("x")));
        assert!(!sat(w, Assignment::new().with_element("x", 0), &pos("x")));
        assert!(sat(w, Assignment::new().with_element("x", 3), &is_last("x")));
        assert!(sat("", Assignment::new().with_element("x", 0), &is_last("x")));
        let s = Assignment::new().with_element("x", 1).with_element("y", 2);
        assert!(sat(w, s.clone(), &succ("x", "y")));
        assert!(!sat(w, s, &succ("y", "x")));
        let s = Assignment::new().with_element("x", 1).with_element("y", 3);
        assert!(!sat(w, s, &succ("x", "y")));
    }

    #[test]
    fn stock_formulas_do_not_shadow() {
        for (name, f) in stock_formulas() {
            assert!(f.check_no_shadowing().is_ok(), "{name}");
        }
    }
}
