//! Exact rational scalars.
//!
//! Values that fit in `i64/i64` stay on a machine-word fast path; any
//! overflow promotes the result to `BigRational`. Both representations are
//! kept normalized (`den > 0`, `gcd(num, den) = 1`), and a value that fits in
//! the small form is always stored small, so structural equality is value
//! equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone)]
enum Repr {
    Small(i64, i64),
    Big(BigRational),
}

/// An exact rational number.
#[derive(Clone)]
pub struct Q(Repr);

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

impl Q {
    pub fn zero() -> Self {
        Q(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Q(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        Q(Repr::Small(n, 1))
    }

    /// `num/den`, normalized. Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::small_or_big(num as i128, den as i128)
    }

    fn small_or_big(num: i128, den: i128) -> Self {
        let (mut n, mut d) = (num, den);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = {
            let (mut a, mut b) = (n.unsigned_abs(), d.unsigned_abs());
            while b != 0 {
                let t = a % b;
                a = b;
                b = t;
            }
            a as i128
        };
        if g > 1 {
            n /= g;
            d /= g;
        }
        if n == 0 {
            return Q::zero();
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Q(Repr::Small(n, d)),
            _ => Q(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational arithmetic keeps values reduced with positive denominators.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Q(Repr::Small(n, d)),
            _ => Q(Repr::Big(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && !self.is_negative()
    }

    /// The value as an `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            Repr::Small(..) => None,
            Repr::Big(r) => {
                if r.is_integer() {
                    r.numer().to_i64()
                } else {
                    None
                }
            }
        }
    }

    pub fn recip(&self) -> Q {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small(n, d) => Self::small_or_big(*d as i128, *n as i128),
            Repr::Big(r) => Q::from_big(r.recip()),
        }
    }

    pub fn abs(&self) -> Q {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn numer_denom_strings(&self) -> (String, String) {
        match &self.0 {
            Repr::Small(n, d) => (n.to_string(), d.to_string()),
            Repr::Big(r) => (r.numer().to_string(), r.denom().to_string()),
        }
    }
}

impl Default for Q {
    fn default() -> Self {
        Q::zero()
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Self {
        Q::from_int(n)
    }
}

impl From<i32> for Q {
    fn from(n: i32) -> Self {
        Q::from_int(n as i64)
    }
}

impl PartialEq for Q {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Q {}

impl Hash for Q {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(r) => {
                1u8.hash(state);
                r.numer().hash(state);
                r.denom().hash(state);
            }
        }
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128))),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        match self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Q(Repr::Small(m, d)),
                None => Q::from_big(-BigRational::new_raw(BigInt::from(n), BigInt::from(d))),
            },
            Repr::Big(r) => Q::from_big(-r),
        }
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        -self.clone()
    }
}

fn add_small(a: i64, b: i64, c: i64, d: i64) -> Option<Q> {
    if b == d {
        return a.checked_add(c).map(|n| Q::small_or_big(n as i128, b as i128));
    }
    let g = gcd_i64(b, d);
    let bd = (b / g) as i128;
    let num = (a as i128) * ((d / g) as i128) + (c as i128) * bd;
    let den = bd * (d as i128);
    Some(Q::small_or_big(num, den))
}

impl<'a> Add<&'a Q> for &'a Q {
    type Output = Q;
    fn add(self, rhs: &Q) -> Q {
        match (&self.0, &rhs.0) {
            (Repr::Small(0, _), _) => rhs.clone(),
            (_, Repr::Small(0, _)) => self.clone(),
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                add_small(*a, *b, *c, *d).unwrap_or_else(|| Q::from_big(self.to_big() + rhs.to_big()))
            }
            _ => Q::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a Q> for &'a Q {
    type Output = Q;
    fn sub(self, rhs: &Q) -> Q {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Q> for &'a Q {
    type Output = Q;
    fn mul(self, rhs: &Q) -> Q {
        match (&self.0, &rhs.0) {
            (Repr::Small(0, _), _) | (_, Repr::Small(0, _)) => Q::zero(),
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                // cross-reduce first so the i128 products stay small
                let g1 = gcd_i64(*a, *d);
                let g2 = gcd_i64(*c, *b);
                let num = ((a / g1) as i128) * ((c / g2) as i128);
                let den = ((b / g2) as i128) * ((d / g1) as i128);
                Q::small_or_big(num, den)
            }
            _ => Q::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl<'a> Div<&'a Q> for &'a Q {
    type Output = Q;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Q) -> Q {
        self * &rhs.recip()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Q> for Q {
            type Output = Q;
            fn $m(self, rhs: Q) -> Q {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Q> for Q {
            type Output = Q;
            fn $m(self, rhs: &Q) -> Q {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Q> for &'a Q {
            type Output = Q;
            fn $m(self, rhs: Q) -> Q {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Q> for Q {
    fn add_assign(&mut self, rhs: &Q) {
        *self = &*self + rhs;
    }
}

impl AddAssign<Q> for Q {
    fn add_assign(&mut self, rhs: Q) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Q> for Q {
    fn sub_assign(&mut self, rhs: &Q) {
        *self = &*self - rhs;
    }
}

impl SubAssign<Q> for Q {
    fn sub_assign(&mut self, rhs: Q) {
        *self = &*self - &rhs;
    }
}

impl MulAssign<&Q> for Q {
    fn mul_assign(&mut self, rhs: &Q) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Q {
    fn sum<I: Iterator<Item = Q>>(iter: I) -> Q {
        iter.fold(Q::zero(), |acc, x| acc + x)
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise, with `q > 0`
/// and `gcd(p, q) = 1`.
impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.numer_denom_strings();
        if d == "1" {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseQError(pub String);

impl FromStr for Q {
    type Err = ParseQError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseQError(s.to_string());
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
        Ok(Q::from_big(BigRational::new(n, d)))
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Zero for Q {
    fn zero() -> Self {
        Q::zero()
    }
    fn is_zero(&self) -> bool {
        Q::is_zero(self)
    }
}

impl One for Q {
    fn one() -> Self {
        Q::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_text() {
        assert_eq!(Q::new(6, -4).to_string(), "-3/2");
        assert_eq!(Q::new(4, 2).to_string(), "2");
        assert_eq!("-1/2".parse::<Q>().unwrap(), Q::new(-1, 2));
        assert_eq!("0".parse::<Q>().unwrap(), Q::zero());
        assert!("1/0".parse::<Q>().is_err());
        assert!("x".parse::<Q>().is_err());
    }

    #[test]
    fn overflow_promotes() {
        let big = Q::from_int(i64::MAX);
        let sum = &big + &big;
        assert_eq!(sum.to_string(), "18446744073709551614");
        let back = &sum - &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(..)));
        let min = Q::from_int(i64::MIN);
        assert_eq!((-min).to_string(), "9223372036854775808");
    }

    proptest! {
        #[test]
        fn field_laws(a in -1000i64..1000, b in 1i64..50, c in -1000i64..1000, d in 1i64..50) {
            let x = Q::new(a, b);
            let y = Q::new(c, d);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(&(&x * &y) / &y, x.clone());
            }
            let s: Q = x.to_string().parse().unwrap();
            prop_assert_eq!(s, x);
        }
    }
}
