use super::MsoFormula;
use crate::env::{Binding, Env};
use crate::error::Result;
use crate::word::{Assignment, PosSet, WordStructure};

/// Kleene three-valued truth.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Truth3 {
    False,
    Unknown,
    True,
}

impl Truth3 {
    fn from_bool(b: bool) -> Self {
        if b {
            Truth3::True
        } else {
            Truth3::False
        }
    }

    fn not(self) -> Self {
        match self {
            Truth3::False => Truth3::True,
            Truth3::Unknown => Truth3::Unknown,
            Truth3::True => Truth3::False,
        }
    }
}

/// Classical satisfaction `(w, σ) ⊨ φ`.
pub fn satisfies(s: &WordStructure, sigma: &Assignment, phi: &MsoFormula) -> Result<bool> {
    let mut env = Env::from_assignment(sigma);
    Ok(eval3(s, &mut env, phi)? == Truth3::True)
}

/// Evaluates `phi` where some set bindings may be partially decided.
/// `True`/`False` answers are final for every completion of the partial
/// sets.
pub(crate) fn eval3<'a>(s: &WordStructure, env: &mut Env<'a>, phi: &'a MsoFormula) -> Result<Truth3> {
    use MsoFormula as F;
    Ok(match phi {
        F::True => Truth3::True,
        F::False => Truth3::False,
        F::Letter(a, x) => Truth3::from_bool(s.has_letter(env.element(x)?, *a)),
        F::Leq(x, y) => Truth3::from_bool(env.element(x)? <= env.element(y)?),
        F::Eq(x, y) => Truth3::from_bool(env.element(x)? == env.element(y)?),
        F::In(x, set) => {
            let e = env.element(x)?;
            let (members, known) = env.set(set)?;
            if e >= 64 || known >> e & 1 == 0 {
                Truth3::Unknown
            } else {
                Truth3::from_bool(members >> e & 1 == 1)
            }
        }
        F::Not(a) => eval3(s, env, a)?.not(),
        F::And(a, b) => match eval3(s, env, a)? {
            Truth3::False => Truth3::False,
            Truth3::True => eval3(s, env, b)?,
            Truth3::Unknown => match eval3(s, env, b)? {
                Truth3::False => Truth3::False,
                _ => Truth3::Unknown,
            },
        },
        F::Or(a, b) => match eval3(s, env, a)? {
            Truth3::True => Truth3::True,
            Truth3::False => eval3(s, env, b)?,
            Truth3::Unknown => match eval3(s, env, b)? {
                Truth3::True => Truth3::True,
                _ => Truth3::Unknown,
            },
        },
        F::Implies(a, b) => match eval3(s, env, a)? {
            Truth3::False => Truth3::True,
            Truth3::True => eval3(s, env, b)?,
            Truth3::Unknown => match eval3(s, env, b)? {
                Truth3::True => Truth3::True,
                _ => Truth3::Unknown,
            },
        },
        F::Exists(x, body) => quantify_elements(s, env, x, body, true)?,
        F::Forall(x, body) => quantify_elements(s, env, x, body, false)?,
        F::ExistsSet(x, body) => quantify_sets(s, env, x, body, true)?,
        F::ForallSet(x, body) => quantify_sets(s, env, x, body, false)?,
    })
}

/// Existential quantifiers look for `True`; universal ones for `False`.
fn quantify_elements<'a>(
    s: &WordStructure,
    env: &mut Env<'a>,
    x: &'a str,
    body: &'a MsoFormula,
    existential: bool,
) -> Result<Truth3> {
    let decisive = if existential { Truth3::True } else { Truth3::False };
    let mut unknown = false;
    env.push(x, Binding::Elem(0));
    for e in s.universe() {
        env.set_top(Binding::Elem(e));
        match eval3(s, env, body) {
            Ok(v) if v == decisive => {
                env.pop();
                return Ok(decisive);
            }
            Ok(Truth3::Unknown) => unknown = true,
            Ok(_) => {}
            Err(err) => {
                env.pop();
                return Err(err);
            }
        }
    }
    env.pop();
    Ok(if unknown { Truth3::Unknown } else { decisive.not() })
}

fn quantify_sets<'a>(
    s: &WordStructure,
    env: &mut Env<'a>,
    x: &'a str,
    body: &'a MsoFormula,
    existential: bool,
) -> Result<Truth3> {
    let mask = s.universe_mask()?;
    let decisive = if existential { Truth3::True } else { Truth3::False };
    let mut unknown = false;
    env.push(x, Binding::Set { members: 0, known: u64::MAX });
    for set in PosSet::subsets(mask) {
        env.set_top(Binding::Set { members: set.0, known: u64::MAX });
        match eval3(s, env, body) {
            Ok(v) if v == decisive => {
                env.pop();
                return Ok(decisive);
            }
            Ok(Truth3::Unknown) => unknown = true,
            Ok(_) => {}
            Err(err) => {
                env.pop();
                return Err(err);
            }
        }
    }
    env.pop();
    Ok(if unknown { Truth3::Unknown } else { decisive.not() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::mso::stock;
    use crate::word::{word_to_structure, Word};

    fn sat(w: &str, sigma: &Assignment, phi: &MsoFormula) -> bool {
        satisfies(&word_to_structure(&Word::binary(w)), sigma, phi).unwrap()
    }

    #[test]
    fn existential_letter() {
        let phi = MsoFormula::exists("x", MsoFormula::letter('1', "x"));
        assert!(sat("011", &Assignment::new(), &phi));
        assert!(!sat("000", &Assignment::new(), &phi));
    }

    #[test]
    fn first_in_block() {
        let phi = stock::first_in_block('1', "v");
        assert!(sat("0110", &Assignment::new().with_element("v", 2), &phi));
        assert!(!sat("0110", &Assignment::new().with_element("v", 3), &phi));
    }

    #[test]
    fn unbound_variable_is_an_error() {
        let s = word_to_structure(&Word::binary("01"));
        let phi = MsoFormula::letter('1', "x");
        assert_eq!(
            satisfies(&s, &Assignment::new(), &phi),
            Err(Error::UnboundVariable("x".into()))
        );
    }

    #[test]
    fn partial_sets_yield_unknown() {
        let s = word_to_structure(&Word::binary("01"));
        let phi = MsoFormula::member("x", "X");
        let mut env = Env::default();
        env.push("x", Binding::Elem(1));
        env.push("X", Binding::Set { members: 0, known: 0b01 });
        assert_eq!(eval3(&s, &mut env, &phi).unwrap(), Truth3::Unknown);
        env.pop();
        env.push("X", Binding::Set { members: 0b10, known: 0b11 });
        assert_eq!(eval3(&s, &mut env, &phi).unwrap(), Truth3::True);
    }
}
