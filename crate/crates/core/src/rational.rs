//! Arbitrary-precision rationals with an inline fast path.
//!
//! Almost every coefficient produced by the operator engine has a numerator
//! and denominator that fit comfortably in a machine word, so values are kept
//! as a reduced `i64` pair and only promoted to a boxed [`BigRational`] when an
//! intermediate result overflows. The representation is canonical: a value
//! that fits in the small form is never stored in the big form, so derived
//! equality and hashing agree with numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    /// Reduced fraction, `den > 0`.
    Small { num: i64, den: i64 },
    Big(Box<BigRational>),
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const fn zero() -> Self {
        Rational::Small { num: 0, den: 1 }
    }

    pub const fn one() -> Self {
        Rational::Small { num: 1, den: 1 }
    }

    pub const fn from_int(n: i64) -> Self {
        Rational::Small { num: n, den: 1 }
    }

    /// `num / den`, reduced. Panics when `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        if num == 0 {
            return Rational::zero();
        }
        let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
        if d != 1 {
            let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
            if g > 1 {
                n /= g;
                d /= g;
            }
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(num), Ok(den)) => Rational::Small { num, den },
            _ => Rational::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational arithmetic keeps results reduced with a positive denominator.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(num), Some(den)) => Rational::Small { num, den },
            _ => Rational::Big(Box::new(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small { num, den } => {
                BigRational::new_raw(BigInt::from(*num), BigInt::from(*den))
            }
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small { num: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small { num: 1, den: 1 })
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small { den, .. } => *den == 1,
            Rational::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small { num, .. } => *num < 0,
            Rational::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Rational::Small { num, den } => *num as f64 / *den as f64,
            Rational::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn recip(&self) -> Option<Self> {
        match self {
            Rational::Small { num: 0, .. } => None,
            Rational::Small { num, den } => Some(Self::from_i128(*den as i128, *num as i128)),
            Rational::Big(b) => Some(Self::from_big(b.recip())),
        }
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        other.recip().map(|r| self * &r)
    }

    fn add_impl(&self, other: &Self) -> Self {
        match (self, other) {
            (Rational::Small { num: 0, .. }, _) => other.clone(),
            (_, Rational::Small { num: 0, .. }) => self.clone(),
            (Rational::Small { num: a, den: b }, Rational::Small { num: c, den: d }) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_add(*c) {
                        Some(s) => Rational::from_int(s),
                        None => Self::from_i128(*a as i128 + *c as i128, 1),
                    };
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    return Self::from_i128(a + c, b);
                }
                // i64 inputs keep both products well inside i128.
                Self::from_i128(a * d + c * b, b * d)
            }
            _ => Self::from_big(self.to_big() + other.to_big()),
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        match (self, other) {
            (Rational::Small { num: 0, .. }, _) | (_, Rational::Small { num: 0, .. }) => {
                Rational::zero()
            }
            (Rational::Small { num: a, den: b }, Rational::Small { num: c, den: d }) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_mul(*c) {
                        Some(p) => Rational::from_int(p),
                        None => Self::from_i128(*a as i128 * *c as i128, 1),
                    };
                }
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.to_big() * other.to_big()),
        }
    }

    fn neg_impl(&self) -> Self {
        match self {
            Rational::Small { num, den } => match num.checked_neg() {
                Some(n) => Rational::Small { num: n, den: *den },
                None => Self::from_i128(-(*num as i128), *den as i128),
            },
            Rational::Big(b) => Self::from_big(-(**b).clone()),
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational::from_big(r)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small { num: a, den: b }, Rational::Small { num: c, den: d }) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                self.$imp(rhs)
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$imp(&rhs)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$imp(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Mul, mul, mul_impl);

impl Sub<&Rational> for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        self.add_impl(&rhs.neg_impl())
    }
}

impl Sub<Rational> for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        &self - &rhs
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_impl()
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_impl()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small { num, den: 1 } => write!(f, "{num}"),
            Rational::Small { num, den } => write!(f, "{num}/{den}"),
            Rational::Big(b) => {
                if b.denom().is_one() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `n` or `n/d` with optional sign, arbitrarily many digits.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
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
        let g = n.gcd(&d);
        let (mut n, mut d) = (&n / &g, &d / &g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Ok(Rational::from_big(BigRational::new_raw(n, d)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduces_and_normalizes_sign() {
        assert_eq!(Rational::new(2, -4), Rational::new(-1, 2));
        assert_eq!(Rational::new(0, -7), Rational::zero());
        assert_eq!(Rational::new(6, 3).to_string(), "2");
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from_int(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq, Rational::Big(_)));
        let back = sq.checked_div(&big).unwrap();
        assert_eq!(back, big);
        assert!(matches!(back, Rational::Small { .. }));
        let min = Rational::from_int(i64::MIN);
        assert!(matches!(-&min, Rational::Big(_)));
    }

    #[test]
    fn parses_literals() {
        assert_eq!("3/4".parse::<Rational>().unwrap(), Rational::new(3, 4));
        assert_eq!("-6/8".parse::<Rational>().unwrap(), Rational::new(-3, 4));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        let huge: Rational = "123456789012345678901234567890".parse().unwrap();
        assert!(matches!(huge, Rational::Big(_)));
        assert_eq!(huge.to_string(), "123456789012345678901234567890");
    }

    fn small() -> impl Strategy<Value = Rational> {
        (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Rational::new(n, d))
    }

    proptest! {
        #[test]
        fn agrees_with_bigrational(a in small(), b in small()) {
            prop_assert_eq!((&a + &b).to_big(), a.to_big() + b.to_big());
            prop_assert_eq!((&a * &b).to_big(), a.to_big() * b.to_big());
            prop_assert_eq!((&a - &b).to_big(), a.to_big() - b.to_big());
            prop_assert_eq!(a.cmp(&b), a.to_big().cmp(&b.to_big()));
        }

        #[test]
        fn canonical_after_roundtrip(a in small(), b in small()) {
            let r = &(&a * &b) + &(&a - &b);
            let via_big = Rational::from(r.to_big());
            prop_assert_eq!(r, via_big);
        }
    }
}
