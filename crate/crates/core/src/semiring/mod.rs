//! Commutative semirings with exact arithmetic.
//!
//! Every carrier has decidable structural equality. The shipped instances
//! are the booleans, the naturals, the integers, the rationals, the two
//! tropical semirings over the integers and the polynomial semiring with
//! natural coefficients.

mod laws;
mod poly;
mod tropical;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Num;

pub use laws::{check_semiring_laws, Law, LawCheck, LawReport};
pub use poly::{poly_substitute, Monomial, Poly};
pub use tropical::{Direction, Max, MaxPlus, Min, MinPlus, Tropical, TropicalValue};

pub type Nat = BigUint;
pub type Int = BigInt;
pub type Rat = BigRational;

/// A commutative semiring whose elements are plain values.
pub trait Semiring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Name used on the command line and in file headers.
    const NAME: &'static str;
    const IS_RING: bool = false;
    const IS_FIELD: bool = false;

    fn zero() -> Self;
    fn one() -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Image of `n` under the unique homomorphism from the naturals,
    /// `n ↦ one + … + one`.
    fn from_nat(n: &BigUint) -> Self {
        let mut acc = Self::zero();
        let one = Self::one();
        for i in (0..n.bits()).rev() {
            acc = acc.plus(&acc);
            if n.bit(i) {
                acc = acc.plus(&one);
            }
        }
        acc
    }

    fn from_u64(n: u64) -> Self {
        Self::from_nat(&BigUint::from(n))
    }

    fn pow(&self, mut exp: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.times(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.times(&base);
            }
        }
        acc
    }

    /// Indeterminates are elements only of polynomial semirings.
    fn indeterminate(_name: &str) -> Option<Self> {
        None
    }

    /// Parses a carrier literal. Natural-number literals that are not
    /// carrier syntax fall back to [`Semiring::from_nat`].
    fn parse_literal(text: &str) -> Option<Self>;

    fn spec() -> SemiringSpec<Self> {
        SemiringSpec {
            name: String::from(Self::NAME),
            add: |a, b| a.plus(b),
            mul: |a, b| a.times(b),
            zero: <Self as Semiring>::zero(),
            one: <Self as Semiring>::one(),
            is_ring: Self::IS_RING,
            is_field: Self::IS_FIELD,
            neg: None,
            inv: None,
        }
    }
}

/// Semirings with additive inverses.
pub trait Ring: Semiring {
    fn neg(&self) -> Self;

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.neg())
    }
}

/// Rings in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.times(&r))
    }
}

/// A semiring presented as data: carrier operations plus structure flags.
///
/// Instances come from [`Semiring::spec`], but a spec can also be built by
/// hand, e.g. to exercise [`check_semiring_laws`] on a broken presentation.
#[derive(Clone)]
pub struct SemiringSpec<T> {
    pub name: String,
    pub add: fn(&T, &T) -> T,
    pub mul: fn(&T, &T) -> T,
    pub zero: T,
    pub one: T,
    pub is_ring: bool,
    pub is_field: bool,
    pub neg: Option<fn(&T) -> T>,
    pub inv: Option<fn(&T) -> Option<T>>,
}

impl<T: fmt::Debug> fmt::Debug for SemiringSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SemiringSpec")
            .field("name", &self.name)
            .field("zero", &self.zero)
            .field("one", &self.one)
            .field("is_ring", &self.is_ring)
            .field("is_field", &self.is_field)
            .finish()
    }
}

fn parse_nat(text: &str) -> Option<BigUint> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigUint::from_str_radix(text, 10).ok()
}

fn parse_int(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    parse_nat(digits)?;
    BigInt::from_str_radix(text, 10).ok()
}

impl Semiring for bool {
    const NAME: &'static str = "bool";

    fn zero() -> Self {
        false
    }
    fn one() -> Self {
        true
    }
    fn plus(&self, rhs: &Self) -> Self {
        *self || *rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        *self && *rhs
    }
    fn from_nat(n: &BigUint) -> Self {
        !num_traits::Zero::is_zero(n)
    }
    fn pow(&self, exp: usize) -> Self {
        exp == 0 || *self
    }
    fn parse_literal(text: &str) -> Option<Self> {
        match text {
            "true" => Some(true),
            "false" => Some(false),
            _ => parse_nat(text).map(|n| Self::from_nat(&n)),
        }
    }
}

impl Semiring for BigUint {
    const NAME: &'static str = "nat";

    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn from_nat(n: &BigUint) -> Self {
        n.clone()
    }
    fn parse_literal(text: &str) -> Option<Self> {
        parse_nat(text)
    }
}

impl Semiring for BigInt {
    const NAME: &'static str = "int";
    const IS_RING: bool = true;

    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn from_nat(n: &BigUint) -> Self {
        BigInt::from(n.clone())
    }
    fn parse_literal(text: &str) -> Option<Self> {
        parse_int(text)
    }
    fn spec() -> SemiringSpec<Self> {
        SemiringSpec {
            name: String::from(Self::NAME),
            add: |a, b| a + b,
            mul: |a, b| a * b,
            zero: <Self as Semiring>::zero(),
            one: <Self as Semiring>::one(),
            is_ring: true,
            is_field: false,
            neg: Some(|a| -a),
            inv: None,
        }
    }
}

impl Ring for BigInt {
    fn neg(&self) -> Self {
        -self
    }
}

impl Semiring for BigRational {
    const NAME: &'static str = "rat";
    const IS_RING: bool = true;
    const IS_FIELD: bool = true;

    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn from_nat(n: &BigUint) -> Self {
        BigRational::from_integer(BigInt::from(n.clone()))
    }
    fn parse_literal(text: &str) -> Option<Self> {
        match text.split_once('/') {
            None => parse_int(text).map(BigRational::from_integer),
            Some((num, den)) => {
                let num = parse_int(num)?;
                let den = parse_int(den)?;
                if num_traits::Zero::is_zero(&den) {
                    None
                } else {
                    Some(BigRational::new(num, den))
                }
            }
        }
    }
    fn spec() -> SemiringSpec<Self> {
        SemiringSpec {
            name: String::from(Self::NAME),
            add: |a, b| a + b,
            mul: |a, b| a * b,
            zero: <Self as Semiring>::zero(),
            one: <Self as Semiring>::one(),
            is_ring: true,
            is_field: true,
            neg: Some(|a| -a),
            inv: Some(|a| {
                if num_traits::Zero::is_zero(a) {
                    None
                } else {
                    Some(a.recip())
                }
            }),
        }
    }
}

impl Ring for BigRational {
    fn neg(&self) -> Self {
        -self
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Sum of a sequence of elements; the empty sum is zero.
pub fn sum<'a, S: Semiring>(items: impl IntoIterator<Item = &'a S>) -> S {
    items.into_iter().fold(S::zero(), |acc, x| acc.plus(x))
}

/// Product of a sequence of elements; the empty product is one.
pub fn product<'a, S: Semiring>(items: impl IntoIterator<Item = &'a S>) -> S {
    items.into_iter().fold(S::one(), |acc, x| acc.times(x))
}

/// Convenience constructor for rationals, mostly for tests.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Semiring names accepted on the command line and in file headers.
pub fn known_semiring_names() -> Vec<&'static str> {
    alloc::vec!["bool", "nat", "int", "rat", "trop-min", "trop-max", "poly(X1,...,Xk)"]
}
