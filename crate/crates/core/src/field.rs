//! Prime fields GF(p) with exact arithmetic.
//!
//! Every geometric object in the crate is generic over [`Field`]. The only
//! implementor is [`Fp`], parameterised by its prime modulus at compile time;
//! [`Gf2`](crate::Gf2) and [`Gf3`](crate::Gf3) are the instantiations the
//! command-line tool dispatches to.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{Inv, One, Zero};

/// A finite field of prime order.
pub trait Field:
    Copy
    + Eq
    + Ord
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    /// Number of elements `q`.
    const ORDER: u8;

    /// Reduces an integer modulo `q`.
    fn from_int(v: i64) -> Self;

    /// Canonical representative in `0..q`.
    fn value(self) -> u8;

    /// Multiplicative inverse, `None` for zero.
    fn inverse(self) -> Option<Self>;

    /// All field elements in canonical order `0, 1, ..., q-1`.
    fn elements() -> impl Iterator<Item = Self> {
        (0..Self::ORDER).map(|v| Self::from_int(v as i64))
    }
}

pub(crate) const fn is_prime(p: u8) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while (d as u16) * (d as u16) <= p as u16 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of the prime field GF(P).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fp<const P: u8>(u8);

impl<const P: u8> Fp<P> {
    const PRIME: () = assert!(is_prime(P), "field modulus must be prime");

    pub fn new(v: u8) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::PRIME;
        Fp(v % P)
    }
}

impl<const P: u8> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u8> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u8> Add for Fp<P> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let s = self.0 as u16 + rhs.0 as u16;
        Fp((s % P as u16) as u8)
    }
}

impl<const P: u8> Sub for Fp<P> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        let s = self.0 as u16 + P as u16 - rhs.0 as u16;
        Fp((s % P as u16) as u8)
    }
}

impl<const P: u8> Mul for Fp<P> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let s = self.0 as u16 * rhs.0 as u16;
        Fp((s % P as u16) as u8)
    }
}

impl<const P: u8> Neg for Fp<P> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Fp(P - self.0)
        }
    }
}

impl<const P: u8> AddAssign for Fp<P> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u8> SubAssign for Fp<P> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const P: u8> MulAssign for Fp<P> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const P: u8> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u8> One for Fp<P> {
    fn one() -> Self {
        Fp::new(1)
    }
}

impl<const P: u8> Inv for Fp<P> {
    type Output = Option<Self>;
    fn inv(self) -> Option<Self> {
        self.inverse()
    }
}

impl<const P: u8> Field for Fp<P> {
    const ORDER: u8 = P;

    fn from_int(v: i64) -> Self {
        Fp::new(v.rem_euclid(P as i64) as u8)
    }

    #[inline]
    fn value(self) -> u8 {
        self.0
    }

    fn inverse(self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // p < 256, so a linear scan is fine
        (1..P).map(Fp).find(|&b| (self * b).0 == 1)
    }
}
