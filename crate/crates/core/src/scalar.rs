//! Exact scalar fields: arbitrary-precision rationals and prime fields.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact field usable as the coefficient field of `R = k[x_1, ..., x_n]`.
///
/// Every implementation is exact: there is no rounding anywhere, and
/// division by an element that vanishes in the field is reported through
/// [`Field::inv`] returning `None`.
pub trait Field:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// 0 for the rationals, otherwise the prime `p`.
    fn characteristic() -> u64;

    fn from_i64(value: i64) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Image of a rational number, `None` when the denominator vanishes.
    fn from_rational(q: &BigRational) -> Option<Self>;

    /// Serialized form: `"p/q"` with `q > 0` over the rationals, the reduced
    /// residue in `0..p` over a prime field.
    fn to_exact_string(&self) -> String;

    /// Parses an integer `"a"` or a fraction `"a/b"`.
    fn parse(text: &str) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|inv| self.clone() * inv)
    }

    /// Sign used for pretty-printing; only the rationals are ordered.
    fn is_negative(&self) -> bool {
        false
    }

    /// Whether the integer `value` is invertible in the field.
    fn is_unit_integer(value: i64) -> bool {
        !Self::from_i64(value).is_zero()
    }
}

pub type Rational = BigRational;

impl Field for BigRational {
    fn characteristic() -> u64 {
        0
    }

    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }

    fn to_exact_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        match text.split_once('/') {
            Some((num, den)) => {
                let num: BigInt = num.trim().parse().ok()?;
                let den: BigInt = den.trim().parse().ok()?;
                if den.is_zero() {
                    return None;
                }
                Some(BigRational::new(num, den))
            }
            None => Some(BigRational::from_integer(text.parse().ok()?)),
        }
    }
}

const fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Residues modulo the prime `P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const MODULUS_IS_PRIME: () = assert!(is_prime(P), "Fp modulus must be prime");

    pub fn new(value: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::MODULUS_IS_PRIME;
        Fp(value.rem_euclid(P as i64) as u64)
    }

    pub fn residue(self) -> u64 {
        self.0
    }

    fn from_bigint(value: &BigInt) -> Self {
        let r = value.mod_floor(&BigInt::from(P));
        Fp(r.to_u64().expect("residue fits in u64"))
    }

    fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp::new(1)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn characteristic() -> u64 {
        P
    }

    fn from_i64(value: i64) -> Self {
        Fp::new(value)
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        let den = Self::from_bigint(q.denom());
        let num = Self::from_bigint(q.numer());
        den.inv().map(|inv| num * inv)
    }

    fn to_exact_string(&self) -> String {
        self.0.to_string()
    }

    fn parse(text: &str) -> Option<Self> {
        let q = BigRational::parse(text)?;
        Self::from_rational(&q)
    }
}

/// Characteristic admissibility: 0, or a prime.
pub fn is_valid_characteristic(characteristic: u64) -> bool {
    characteristic == 0 || is_prime(characteristic)
}

/// Converts a rational to an `i64` when it is an integer that fits.
pub fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;

    #[test]
    fn rationals_stay_reduced() {
        let a = BigRational::parse("6/-4").unwrap();
        assert_eq!(a.to_exact_string(), "-3/2");
        let b = BigRational::from_i64(3);
        assert_eq!(b.to_exact_string(), "3/1");
        assert_eq!((a * b).to_exact_string(), "-9/2");
    }

    #[test]
    fn rational_division_by_zero_is_refused() {
        let a = BigRational::from_i64(1);
        assert!(a.div(&BigRational::zero()).is_none());
        assert!(BigRational::parse("1/0").is_none());
    }

    #[test]
    fn prime_field_arithmetic() {
        let a = F7::new(3);
        let b = F7::new(5);
        assert_eq!((a + b).residue(), 1);
        assert_eq!((a - b).residue(), 5);
        assert_eq!((a * b).residue(), 1);
        assert_eq!(a.inv().unwrap(), b);
        assert_eq!((-a).residue(), 4);
        assert!(F7::zero().inv().is_none());
    }

    #[test]
    fn reduction_of_rationals() {
        let half = BigRational::parse("1/2").unwrap();
        assert_eq!(F7::from_rational(&half).unwrap().residue(), 4);
        let seventh = BigRational::parse("1/7").unwrap();
        assert!(F7::from_rational(&seventh).is_none());
        assert!(!F7::is_unit_integer(14));
        assert!(F7::is_unit_integer(3));
    }

    #[test]
    fn sign_detection() {
        assert!(Field::is_negative(&BigRational::from_i64(-2)));
        assert!(!Field::is_negative(&BigRational::from_i64(2)));
        assert!(!F7::new(-2).is_negative());
    }

    #[test]
    fn characteristic_validity() {
        assert!(is_valid_characteristic(0));
        assert!(is_valid_characteristic(11));
        assert!(!is_valid_characteristic(9));
        assert!(!is_valid_characteristic(1));
    }
}
