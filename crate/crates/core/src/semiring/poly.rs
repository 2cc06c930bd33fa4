use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use super::{parse_nat, Semiring};
use crate::error::{Error, Result};

/// A power product of indeterminates, kept sorted by name with no zero
/// exponents. The empty monomial is the constant `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial(alloc::vec![(name.to_string(), 1)])
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|(_, e)| u64::from(*e)).sum()
    }

    pub fn factors(&self) -> &[(String, u32)] {
        &self.0
    }

    fn mul(&self, rhs: &Monomial) -> Monomial {
        let mut out: Vec<(String, u32)> = Vec::with_capacity(self.0.len() + rhs.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < rhs.0.len() {
            let (a, ea) = &self.0[i];
            let (b, eb) = &rhs.0[j];
            match a.cmp(b) {
                core::cmp::Ordering::Less => {
                    out.push((a.clone(), *ea));
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push((b.clone(), *eb));
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    out.push((a.clone(), ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&rhs.0[j..]);
        Monomial(out)
    }
}

/// Polynomials over a finite set of named indeterminates with natural
/// coefficients. No term with coefficient zero is stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigUint>,
}

impl Poly {
    pub fn constant(c: impl Into<BigUint>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !num_traits::Zero::is_zero(&c) {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(name), <BigUint as num_traits::One>::one());
        Poly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigUint)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigUint {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Indeterminates occurring with a nonzero exponent.
    pub fn indeterminates(&self) -> Vec<&str> {
        let mut names: Vec<&str> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(n, _)| n.as_str()))
            .collect();
        names.sort_unstable();
        names.dedup();
        names
    }

    fn add_term(&mut self, m: Monomial, c: BigUint) {
        if num_traits::Zero::is_zero(&c) {
            return;
        }
        *self.terms.entry(m).or_default() += c;
    }

    fn parse(text: &str) -> Option<Poly> {
        let mut out = Poly::default();
        for term in text.split('+') {
            let mut coeff = <BigUint as num_traits::One>::one();
            let mut mono = Monomial::one();
            for factor in term.split('*') {
                if let Some(n) = parse_nat(factor) {
                    coeff *= n;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((name, exp)) => (name, exp.parse::<u32>().ok()?),
                    None => (factor, 1),
                };
                let mut chars = name.chars();
                let first = chars.next()?;
                if !first.is_ascii_alphabetic() || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return None;
                }
                if exp > 0 {
                    mono = mono.mul(&Monomial(alloc::vec![(name.to_string(), exp)]));
                }
            }
            out.add_term(mono, coeff);
        }
        Some(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| b.cmp(a)));
        for (k, (mono, coeff)) in terms.into_iter().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            let mut first = true;
            if !num_traits::One::is_one(coeff) || mono.0.is_empty() {
                write!(f, "{coeff}")?;
                first = false;
            }
            for (name, exp) in &mono.0 {
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                if *exp == 1 {
                    f.write_str(name)?;
                } else {
                    write!(f, "{name}^{exp}")?;
                }
            }
        }
        Ok(())
    }
}

impl Semiring for Poly {
    const NAME: &'static str = "poly";

    fn zero() -> Self {
        Poly::default()
    }

    fn one() -> Self {
        Poly::constant(1u32)
    }

    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn times(&self, rhs: &Self) -> Self {
        let mut out = Poly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_nat(n: &BigUint) -> Self {
        Poly::constant(n.clone())
    }

    fn indeterminate(name: &str) -> Option<Self> {
        Some(Poly::var(name))
    }

    fn parse_literal(text: &str) -> Option<Self> {
        Poly::parse(text)
    }
}

/// Substitutes target-semiring values for the indeterminates of `p`.
///
/// Coefficients enter the target through the homomorphism from the
/// naturals, so the map commutes with sums and products.
pub fn poly_substitute<T: Semiring>(p: &Poly, assignment: &BTreeMap<String, T>) -> Result<T> {
    let mut acc = T::zero();
    for (mono, coeff) in &p.terms {
        let mut term = T::from_nat(coeff);
        for (name, exp) in &mono.0 {
            let value = assignment
                .get(name)
                .ok_or_else(|| Error::MissingIndeterminate(name.clone()))?;
            term = term.times(&value.pow(*exp as usize));
        }
        acc = acc.plus(&term);
    }
    Ok(acc)
}
