use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::marker::PhantomData;

use num_bigint::BigInt;

use super::{parse_int, Semiring, SemiringSpec};

/// Orientation of a tropical semiring: which of two finite values is the sum.
pub trait Direction:
    Clone + Copy + fmt::Debug + PartialEq + Eq + Send + Sync + 'static
{
    const NAME: &'static str;
    /// How the add-neutral infinity is written.
    const INFINITY: &'static str;
    /// Picks the sum of two finite values.
    fn select(a: &BigInt, b: &BigInt) -> bool;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Min;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Max;

impl Direction for Min {
    const NAME: &'static str = "trop-min";
    const INFINITY: &'static str = "inf";
    fn select(a: &BigInt, b: &BigInt) -> bool {
        a <= b
    }
}

impl Direction for Max {
    const NAME: &'static str = "trop-max";
    const INFINITY: &'static str = "-inf";
    fn select(a: &BigInt, b: &BigInt) -> bool {
        a >= b
    }
}

/// A tropical carrier element. `Infinite` is `+∞` in the min semiring and
/// `-∞` in the max semiring, i.e. always the neutral element of addition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TropicalValue {
    Finite(BigInt),
    Infinite,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tropical<D: Direction> {
    pub value: TropicalValue,
    dir: PhantomData<D>,
}

pub type MinPlus = Tropical<Min>;
pub type MaxPlus = Tropical<Max>;

impl<D: Direction> Tropical<D> {
    pub fn finite(n: impl Into<BigInt>) -> Self {
        Tropical {
            value: TropicalValue::Finite(n.into()),
            dir: PhantomData,
        }
    }

    pub fn infinity() -> Self {
        Tropical {
            value: TropicalValue::Infinite,
            dir: PhantomData,
        }
    }

    pub fn magnitude(&self) -> Option<&BigInt> {
        match &self.value {
            TropicalValue::Finite(n) => Some(n),
            TropicalValue::Infinite => None,
        }
    }
}

impl<D: Direction> fmt::Debug for Tropical<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<D: Direction> fmt::Display for Tropical<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            TropicalValue::Finite(n) => write!(f, "{n}"),
            TropicalValue::Infinite => f.write_str(D::INFINITY),
        }
    }
}

impl<D: Direction> PartialOrd for Tropical<D> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (&self.value, &other.value) {
            (TropicalValue::Finite(a), TropicalValue::Finite(b)) => a.partial_cmp(b),
            (TropicalValue::Infinite, TropicalValue::Infinite) => Some(Ordering::Equal),
            _ => None,
        }
    }
}

impl<D: Direction> Semiring for Tropical<D> {
    const NAME: &'static str = D::NAME;

    fn zero() -> Self {
        Self::infinity()
    }

    fn one() -> Self {
        Self::finite(0)
    }

    fn plus(&self, rhs: &Self) -> Self {
        match (&self.value, &rhs.value) {
            (TropicalValue::Infinite, _) => rhs.clone(),
            (_, TropicalValue::Infinite) => self.clone(),
            (TropicalValue::Finite(a), TropicalValue::Finite(b)) => {
                if D::select(a, b) {
                    self.clone()
                } else {
                    rhs.clone()
                }
            }
        }
    }

    fn times(&self, rhs: &Self) -> Self {
        match (&self.value, &rhs.value) {
            (TropicalValue::Finite(a), TropicalValue::Finite(b)) => Self::finite(a + b),
            _ => Self::infinity(),
        }
    }

    fn pow(&self, exp: usize) -> Self {
        match &self.value {
            _ if exp == 0 => Self::one(),
            TropicalValue::Finite(a) => Self::finite(a * BigInt::from(exp)),
            TropicalValue::Infinite => Self::infinity(),
        }
    }

    fn parse_literal(text: &str) -> Option<Self> {
        if text == D::INFINITY {
            return Some(Self::infinity());
        }
        parse_int(text).map(Self::finite)
    }

    fn spec() -> SemiringSpec<Self> {
        SemiringSpec {
            name: String::from(D::NAME),
            add: |a, b| a.plus(b),
            mul: |a, b| a.times(b),
            zero: Self::zero(),
            one: Self::one(),
            is_ring: false,
            is_field: false,
            neg: None,
            inv: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_plus_operations() {
        let inf = MinPlus::infinity();
        assert_eq!(inf.plus(&MinPlus::finite(5)), MinPlus::finite(5));
        assert_eq!(MinPlus::finite(2).times(&MinPlus::finite(3)), MinPlus::finite(5));
        assert_eq!(MinPlus::finite(2).plus(&MinPlus::finite(3)), MinPlus::finite(2));
        assert_eq!(inf.times(&MinPlus::finite(3)), inf);
    }

    #[test]
    fn max_plus_operations() {
        assert_eq!(MaxPlus::finite(2).plus(&MaxPlus::finite(3)), MaxPlus::finite(3));
        assert_eq!(MaxPlus::infinity().plus(&MaxPlus::finite(-7)), MaxPlus::finite(-7));
        assert_eq!(alloc::format!("{}", MaxPlus::infinity()), "-inf");
    }
}
