//! Exact rationals with an inline small representation.
//!
//! Values that fit in `i64 / i64` stay inline; anything larger is promoted to a
//! boxed `BigRational`. Big values are demoted back whenever they fit, so the
//! representation is canonical and derived equality is value equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    /// numerator, denominator; denominator > 0 and gcd = 1
    Small(i64, i64),
    Big(Box<BigRational>),
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
    pub const ZERO: Rational = Rational::Small(0, 1);
    pub const ONE: Rational = Rational::Small(1, 1);

    pub fn zero() -> Self {
        Self::ZERO
    }

    pub fn one() -> Self {
        Self::ONE
    }

    pub fn from_int(n: i64) -> Self {
        Rational::Small(n, 1)
    }

    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self::from_i128(n as i128, d as i128)
    }

    fn from_i128(n: i128, d: i128) -> Self {
        let (mut n, mut d) = (n, d);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        if n >= i64::MIN as i128 + 1 && n <= i64::MAX as i128 && d <= i64::MAX as i128 {
            Rational::Small(n as i64, d as i64)
        } else {
            Rational::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d))))
        }
    }

    pub fn from_big(r: BigRational) -> Self {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Rational::Small(n, d);
            }
        }
        Rational::Big(Box::new(r))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(n, _) => *n < 0,
            Rational::Big(b) => b.is_negative(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(n, _) => BigInt::from(*n),
            Rational::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, d) => BigInt::from(*d),
            Rational::Big(b) => b.denom().clone(),
        }
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn inv(&self) -> Rational {
        match self {
            Rational::Small(0, _) => panic!("division by zero"),
            Rational::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Rational::Big(b) => Self::from_big(b.recip()),
        }
    }

    pub fn mul_int(&self, k: i64) -> Rational {
        if k == 0 {
            return Rational::ZERO;
        }
        if k == 1 {
            return self.clone();
        }
        match self {
            Rational::Small(n, d) => Self::from_i128(*n as i128 * k as i128, *d as i128),
            _ => self * &Rational::from_int(k),
        }
    }

    pub fn div(&self, other: &Rational) -> Rational {
        self * &other.inv()
    }

    pub fn pow(&self, e: u32) -> Rational {
        let mut acc = Rational::ONE;
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact k-th root if it exists in ℚ (sign handled for odd k).
    pub fn kth_root(&self, k: u32) -> Option<Rational> {
        if k == 1 {
            return Some(self.clone());
        }
        if self.is_negative() && k % 2 == 0 {
            return None;
        }
        let n = self.numer();
        let d = self.denom();
        let rn = int_kth_root(&n.abs(), k)?;
        let rd = int_kth_root(&d, k)?;
        let r = Rational::from_big(BigRational::new(rn, rd));
        Some(if self.is_negative() { -r } else { r })
    }
}

fn int_kth_root(n: &BigInt, k: u32) -> Option<BigInt> {
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, o: &Rational) -> Rational {
        match (self, o) {
            (Rational::Small(0, _), _) => o.clone(),
            (_, Rational::Small(0, _)) => self.clone(),
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if b == d {
                    Rational::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    match (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
                        (Some(x), Some(y), Some(z)) => match x.checked_add(y) {
                            Some(s) => Rational::from_i128(s, z),
                            None => Rational::from_big(self.to_big() + o.to_big()),
                        },
                        _ => Rational::from_big(self.to_big() + o.to_big()),
                    }
                }
            }
            _ => Rational::from_big(self.to_big() + o.to_big()),
        }
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, o: &Rational) -> Rational {
        self + &(-o.clone())
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, o: &Rational) -> Rational {
        match (self, o) {
            (Rational::Small(0, _), _) | (_, Rational::Small(0, _)) => Rational::ZERO,
            (Rational::Small(1, 1), _) => o.clone(),
            (_, Rational::Small(1, 1)) => self.clone(),
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match (a.checked_mul(c), b.checked_mul(d)) {
                    (Some(x), Some(y)) => Rational::from_i128(x, y),
                    _ => Rational::from_big(self.to_big() * o.to_big()),
                }
            }
            _ => Rational::from_big(self.to_big() * o.to_big()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            Rational::Small(n, d) => Rational::Small(-n, d),
            Rational::Big(b) => Rational::from_big(-*b),
        }
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, o: Rational) -> Rational {
        &self + &o
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, o: Rational) -> Rational {
        &self - &o
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, o: Rational) -> Rational {
        &self * &o
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
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
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

impl FromStr for Rational {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| format!("bad integer '{n}'"))?;
        let d: BigInt = d.parse().map_err(|_| format!("bad integer '{d}'"))?;
        if !d.is_positive() {
            return Err("denominator must be positive".into());
        }
        Ok(Rational::from_big(BigRational::new(n, d)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ops() {
        let a = Rational::new(1, 2);
        let b = Rational::new(1, 3);
        assert_eq!(&a + &b, Rational::new(5, 6));
        assert_eq!(&a * &b, Rational::new(1, 6));
        assert_eq!(&a - &a, Rational::ZERO);
        assert_eq!(a.inv(), Rational::from_int(2));
    }

    #[test]
    fn promotes_and_demotes() {
        let big = Rational::from_int(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq, Rational::Big(_)));
        let back = sq.div(&big);
        assert_eq!(back, big);
        assert!(matches!(back, Rational::Small(..)));
    }

    #[test]
    fn roots() {
        assert_eq!(Rational::new(8, 27).kth_root(3), Some(Rational::new(2, 3)));
        assert_eq!(Rational::new(-8, 1).kth_root(3), Some(Rational::from_int(-2)));
        assert_eq!(Rational::new(2, 1).kth_root(2), None);
        assert_eq!(Rational::new(-4, 1).kth_root(2), None);
    }

    #[test]
    fn parse() {
        assert_eq!("-3/6".parse::<Rational>().unwrap(), Rational::new(-1, 2));
        assert!("1/0".parse::<Rational>().is_err());
    }
}
