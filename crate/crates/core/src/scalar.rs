//! Exact rational scalars.
//!
//! Almost every coefficient met in these computations is a small integer or a
//! fraction with a factorial denominator, so values are kept as reduced `i64`
//! pairs and promoted to arbitrary precision only when an operation overflows.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact rational number in canonical form (reduced, positive denominator).
#[derive(Clone)]
pub enum Scalar {
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Small(0, 1)
    }

    pub fn one() -> Self {
        Scalar::Small(1, 1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Small(n, 1)
    }

    pub fn sign(s: i32) -> Self {
        Scalar::Small(s as i64, 1)
    }

    /// `n / d`; panics when `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self::from_i128(n as i128, d as i128)
    }

    fn from_i128(n: i128, d: i128) -> Self {
        if n == 0 {
            return Scalar::zero();
        }
        let (mut n, mut d) = if d < 0 { (-n, -d) } else { (n, d) };
        let g = {
            let (mut a, mut b) = (n.unsigned_abs(), d.unsigned_abs());
            while b != 0 {
                let t = a % b;
                a = b;
                b = t;
            }
            a as i128
        };
        n /= g;
        d /= g;
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) if n != i64::MIN => Scalar::Small(n, d),
            _ => Scalar::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Scalar::Small(n, d);
            }
        }
        Scalar::Big(r)
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Scalar::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Scalar::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Scalar::Small(_, d) => *d == 1,
            Scalar::Big(r) => r.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Small(n, _) => *n < 0,
            Scalar::Big(r) => r.is_negative(),
        }
    }

    pub fn recip(&self) -> Self {
        match self {
            Scalar::Small(n, d) => {
                assert!(*n != 0, "division by zero");
                Self::from_i128(*d as i128, *n as i128)
            }
            Scalar::Big(r) => Self::from_big(r.recip()),
        }
    }

    pub fn numer_big(&self) -> BigInt {
        match self {
            Scalar::Small(n, _) => BigInt::from(*n),
            Scalar::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom_big(&self) -> BigInt {
        match self {
            Scalar::Small(_, d) => BigInt::from(*d),
            Scalar::Big(r) => r.denom().clone(),
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(n))
    }

    /// Number of bits in the numerator; used as a pivot-quality measure.
    pub fn numer_bits(&self) -> u64 {
        match self {
            Scalar::Small(n, _) => 64 - n.unsigned_abs().leading_zeros() as u64,
            Scalar::Big(r) => r.numer().bits(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => a == c && b == d,
            _ => self.to_big() == other.to_big(),
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // Canonical form guarantees Small whenever the value fits.
        match self {
            Scalar::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Scalar::Big(r) => {
                1u8.hash(state);
                r.hash(state);
            }
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => {
                if b == d {
                    return Scalar::from_i128(*a as i128 + *c as i128, *b as i128);
                }
                let n = *a as i128 * *d as i128 + *c as i128 * *b as i128;
                let den = *b as i128 * *d as i128;
                Scalar::from_i128(n, den)
            }
            _ => Scalar::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs.clone())
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(p) = a.checked_mul(*c) {
                        if p != i64::MIN {
                            return Scalar::Small(p, 1);
                        }
                    }
                }
                let g1 = gcd_i64(*a, *d).max(1);
                let g2 = gcd_i64(*c, *b).max(1);
                let n = (*a / g1) as i128 * (*c / g2) as i128;
                let den = (*b / g2) as i128 * (*d / g1) as i128;
                Scalar::from_i128(n, den)
            }
            _ => Scalar::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.recip()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Small(n, d) => match n.checked_neg() {
                Some(m) if m != i64::MIN => Scalar::Small(m, d),
                _ => Scalar::from_big(-BigRational::new_raw(BigInt::from(n), BigInt::from(d))),
            },
            Scalar::Big(r) => Scalar::from_big(-r),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<i32> for Scalar {
    fn from(n: i32) -> Self {
        Scalar::from_int(n as i64)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Small(n, 1) => write!(f, "{n}"),
            Scalar::Small(n, d) => write!(f, "{n}/{d}"),
            Scalar::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseScalarError(pub String);

impl FromStr for Scalar {
    type Err = ParseScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Scalar::from_big(BigRational::new(n, d)))
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(Scalar::from_int)
                .ok_or_else(|| serde::de::Error::custom("non-integer JSON number; use a string")),
            other => Err(serde::de::Error::custom(format!("expected rational, got {other}"))),
        }
    }
}

/// Greatest common divisor of two exact integers, as a scalar.
pub fn int_gcd(a: &Scalar, b: &Scalar) -> Scalar {
    debug_assert!(a.is_integer() && b.is_integer());
    match (a, b) {
        (Scalar::Small(x, 1), Scalar::Small(y, 1)) => Scalar::from_int(gcd_i64(*x, *y)),
        _ => Scalar::from_bigint(a.numer_big().gcd(&b.numer_big())),
    }
}

/// `n!` as a scalar.
pub fn factorial(n: usize) -> Scalar {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Scalar::from_bigint(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        assert_eq!(Scalar::ratio(2, -4), Scalar::ratio(-1, 2));
        assert_eq!(Scalar::ratio(0, -7), Scalar::zero());
        assert_eq!("6/8".parse::<Scalar>().unwrap(), Scalar::ratio(3, 4));
        assert!("1/0".parse::<Scalar>().is_err());
    }

    #[test]
    fn overflow_promotes() {
        let big = Scalar::from_int(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq, Scalar::Big(_)));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back, Scalar::Small(..)));
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), Scalar::one());
        assert_eq!(factorial(7), Scalar::from_int(5040));
        assert_eq!(factorial(25).to_string(), "15511210043330985984000000");
    }

    proptest! {
        #[test]
        fn field_laws(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let x = Scalar::ratio(a, b);
            let y = Scalar::ratio(c, d);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(&(&x * &y) / &y, x.clone());
            }
            let bx = x.to_big();
            let by = y.to_big();
            prop_assert_eq!((&x * &y).to_big(), bx.clone() * by.clone());
            prop_assert_eq!((&x + &y).to_big(), bx + by);
        }
    }
}
