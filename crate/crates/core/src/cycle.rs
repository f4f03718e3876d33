//! Integral and rational cycles supported on the vertices of a plumbing graph.
//!
//! Both types are dense coefficient vectors indexed by the position of a
//! vertex inside its [`IntersectionForm`](crate::IntersectionForm) (ascending
//! vertex id). They carry no reference to the graph; every operation that
//! mixes two cycles panics on a length mismatch, and the form-level entry
//! points validate lengths before doing anything else.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// An element of the integral lattice `L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle(Vec<BigInt>);

/// An element of `L ⊗ Q`; elements of the dual lattice `L'` live here.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatCycle(Vec<BigRational>);

impl Cycle {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        Cycle(coeffs)
    }

    pub fn zero(n: usize) -> Self {
        Cycle(vec![BigInt::zero(); n])
    }

    /// The base element `E_v` for the vertex at position `i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut c = Self::zero(n);
        c.0[i] = BigInt::from(1);
        c
    }

    /// The reduced cycle `E = Σ_v E_v`.
    pub fn reduced(n: usize) -> Self {
        Cycle(vec![BigInt::from(1); n])
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Cycle(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// `l ≥ 0`.
    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    /// `l > 0`: effective and nonzero.
    pub fn is_positive(&self) -> bool {
        self.is_effective() && !self.is_zero()
    }

    /// Positions with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.0[i].is_zero()).collect()
    }

    /// Componentwise order.
    pub fn leq(&self, other: &Cycle) -> bool {
        assert_eq!(self.len(), other.len(), "cycle length mismatch");
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Cycle) -> Cycle {
        assert_eq!(self.len(), other.len(), "cycle length mismatch");
        Cycle(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.max(b).clone())
                .collect(),
        )
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Cycle) -> Cycle {
        assert_eq!(self.len(), other.len(), "cycle length mismatch");
        Cycle(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.min(b).clone())
                .collect(),
        )
    }

    pub fn to_rat(&self) -> RatCycle {
        RatCycle(
            self.0
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }
}

impl RatCycle {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        RatCycle(coeffs)
    }

    pub fn zero(n: usize) -> Self {
        RatCycle(vec![BigRational::zero(); n])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// The integral cycle with the same coefficients, if there is one.
    pub fn to_cycle(&self) -> Option<Cycle> {
        if self.is_integral() {
            Some(Cycle(self.0.iter().map(|c| c.to_integer()).collect()))
        } else {
            None
        }
    }

    pub fn ceil(&self) -> Cycle {
        Cycle(self.0.iter().map(|c| c.ceil().to_integer()).collect())
    }

    pub fn floor(&self) -> Cycle {
        Cycle(self.0.iter().map(|c| c.floor().to_integer()).collect())
    }

    pub fn leq(&self, other: &RatCycle) -> bool {
        assert_eq!(self.len(), other.len(), "cycle length mismatch");
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()))
    }

    pub fn scale(&self, k: &BigRational) -> RatCycle {
        RatCycle(self.0.iter().map(|c| c * k).collect())
    }
}

impl From<&Cycle> for RatCycle {
    fn from(c: &Cycle) -> Self {
        c.to_rat()
    }
}

impl From<Cycle> for RatCycle {
    fn from(c: Cycle) -> Self {
        c.to_rat()
    }
}

macro_rules! zip_op {
    ($tr:ident, $method:ident, $ty:ident, $op:tt) => {
        impl<'a> $tr<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                assert_eq!(self.len(), rhs.len(), "cycle length mismatch");
                $ty(self.0.iter().zip(&rhs.0).map(|(a, b)| a $op b).collect())
            }
        }
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                &self $op &rhs
            }
        }
    };
}

zip_op!(Add, add, Cycle, +);
zip_op!(Sub, sub, Cycle, -);
zip_op!(Add, add, RatCycle, +);
zip_op!(Sub, sub, RatCycle, -);

impl<'a> Add<&'a Cycle> for &'a RatCycle {
    type Output = RatCycle;
    fn add(self, rhs: &'a Cycle) -> RatCycle {
        assert_eq!(self.len(), rhs.len(), "cycle length mismatch");
        RatCycle(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a + BigRational::from_integer(b.clone()))
                .collect(),
        )
    }
}

impl Neg for &Cycle {
    type Output = Cycle;
    fn neg(self) -> Cycle {
        Cycle(self.0.iter().map(|c| -c).collect())
    }
}

impl Neg for &RatCycle {
    type Output = RatCycle;
    fn neg(self) -> RatCycle {
        RatCycle(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul<&Cycle> for &BigInt {
    type Output = Cycle;
    fn mul(self, rhs: &Cycle) -> Cycle {
        Cycle(rhs.0.iter().map(|c| c * self).collect())
    }
}

impl Mul<&RatCycle> for &BigInt {
    type Output = RatCycle;
    fn mul(self, rhs: &RatCycle) -> RatCycle {
        let k = BigRational::from_integer(self.clone());
        rhs.scale(&k)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for RatCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Componentwise join of a nonempty family.
pub fn join_all<'a, I: IntoIterator<Item = &'a Cycle>>(cycles: I) -> Option<Cycle> {
    let mut it = cycles.into_iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, c| acc.join(c)))
}

/// Componentwise meet of a nonempty family.
pub fn meet_all<'a, I: IntoIterator<Item = &'a Cycle>>(cycles: I) -> Option<Cycle> {
    let mut it = cycles.into_iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, c| acc.meet(c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn join_and_meet_are_componentwise() {
        let a = Cycle::from_i64s(&[1, 4, 0]);
        let b = Cycle::from_i64s(&[2, 3, 0]);
        assert_eq!(a.join(&b), Cycle::from_i64s(&[2, 4, 0]));
        assert_eq!(a.meet(&b), Cycle::from_i64s(&[1, 3, 0]));
        assert!(a.meet(&b).leq(&a));
        assert!(!a.leq(&b));
    }

    #[test]
    fn rational_rounding_and_integrality() {
        let x = RatCycle::new(vec![
            BigRational::new(3.into(), 2.into()),
            BigRational::new((-1).into(), 3.into()),
        ]);
        assert!(!x.is_integral());
        assert_eq!(x.ceil(), Cycle::from_i64s(&[2, 0]));
        assert_eq!(x.floor(), Cycle::from_i64s(&[1, -1]));
        assert_eq!(x.denominator(), BigInt::from(6));
        assert_eq!(
            Cycle::from_i64s(&[2, -5]).to_rat().to_cycle(),
            Some(Cycle::from_i64s(&[2, -5]))
        );
    }

    #[test]
    fn positivity_predicates() {
        assert!(!Cycle::zero(3).is_positive());
        assert!(Cycle::zero(3).is_effective());
        assert!(Cycle::unit(3, 1).is_positive());
        assert!(!Cycle::from_i64s(&[1, -1]).is_effective());
        assert_eq!(Cycle::from_i64s(&[0, 2, 0, 1]).support(), vec![1, 3]);
    }
}
