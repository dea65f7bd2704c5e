use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::LaError;

/// Exact rational number. Values that fit in `i64/i64` stay on the fast path;
/// anything larger is promoted to a big rational. The representation is
/// canonical, so derived equality and hashing are exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rat {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rat {
    pub fn zero() -> Rat {
        Rat::Small(0, 1)
    }

    pub fn one() -> Rat {
        Rat::Small(1, 1)
    }

    pub fn int(n: i64) -> Rat {
        Rat::Small(n, 1)
    }

    fn from_i128(n: i128, d: i128) -> Rat {
        debug_assert!(d != 0);
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rat::Small(a, b),
            _ => Rat::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    pub fn from_big(r: BigRational) -> Rat {
        if let (Some(a), Some(b)) = (r.numer().to_i64(), r.denom().to_i64()) {
            Rat::Small(a, b)
        } else {
            Rat::Big(Box::new(r))
        }
    }

    pub fn ratio(n: i64, d: i64) -> Option<Rat> {
        if d == 0 {
            None
        } else {
            Some(Rat::from_i128(n as i128, d as i128))
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(a, b) => BigRational::new_raw(BigInt::from(*a), BigInt::from(*b)),
            Rat::Big(r) => (**r).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rat::Small(a, _) => BigInt::from(*a),
            Rat::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rat::Small(_, b) => BigInt::from(*b),
            Rat::Big(r) => r.denom().clone(),
        }
    }

    pub fn add(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_add(*c) {
                        return Rat::Small(s, 1);
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rat::from_i128(a * d + c * b, b * d)
            }
            _ => Rat::from_big(self.to_big() + o.to_big()),
        }
    }

    pub fn neg(&self) -> Rat {
        match self {
            Rat::Small(a, b) => match a.checked_neg() {
                Some(n) => Rat::Small(n, *b),
                None => Rat::from_i128(-(*a as i128), *b as i128),
            },
            Rat::Big(r) => Rat::from_big(-(**r).clone()),
        }
    }

    pub fn sub(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rat::from_i128(a * d - c * b, b * d)
            }
            _ => Rat::from_big(self.to_big() - o.to_big()),
        }
    }

    pub fn mul(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                if *a == 0 || *c == 0 {
                    return Rat::zero();
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                let g1 = a.abs().gcd(&d);
                let g2 = c.abs().gcd(&b);
                let n = (a / g1) * (c / g2);
                let den = (b / g2) * (d / g1);
                match (i64::try_from(n), i64::try_from(den)) {
                    (Ok(x), Ok(y)) => Rat::Small(x, y),
                    _ => Rat::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(den)))),
                }
            }
            _ => Rat::from_big(self.to_big() * o.to_big()),
        }
    }

    pub fn inv(&self) -> Option<Rat> {
        match self {
            Rat::Small(0, _) => None,
            Rat::Small(a, b) => Some(Rat::from_i128(*b as i128, *a as i128)),
            Rat::Big(r) => Some(Rat::from_big(r.recip())),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rat::Small(a, _) => a.signum() as i32,
            Rat::Big(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn parse(s: &str) -> Option<Rat> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::from_big(BigRational::new(n, d)))
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sub(other).signum().cmp(&0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(a, 1) => write!(f, "{a}"),
            Rat::Small(a, b) => write!(f, "{a}/{b}"),
            Rat::Big(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest characteristic accepted, so that products of residues fit in a `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The ground field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, LaError> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(LaError::BadField(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.int(0)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rat::int(n)),
            Field::Prime(p) => Scalar::P(n.rem_euclid(p as i64) as u64, p),
        }
    }

    /// `n/d` in this field; `None` when `d` vanishes in the field.
    pub fn ratio(self, n: i64, d: i64) -> Option<Scalar> {
        self.int(n).div(&self.int(d))
    }

    /// Maps a rational into the field (reduction mod p when prime).
    pub fn from_rat(self, r: &Rat) -> Option<Scalar> {
        match self {
            Field::Rational => Some(Scalar::Q(r.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let n = r.numer().mod_floor(&pb).to_u64()?;
                let d = r.denom().mod_floor(&pb).to_u64()?;
                Scalar::P(n, p).div(&Scalar::P(d, p))
            }
        }
    }

    pub fn parse(self, s: &str) -> Option<Scalar> {
        self.from_rat(&Rat::parse(s)?)
    }

    /// Number of elements when finite.
    pub fn order(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p),
        }
    }

    /// All field elements for finite fields, listed as `0..p`.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        self.order().map(|p| (0..p).map(|v| Scalar::P(v, p)).collect())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// Exact scalar in `Q` or `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rat),
    P(u64, u64),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::P(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::P(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::P(v, _) => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(r) => r.inv().map(Scalar::Q),
            Scalar::P(0, _) => None,
            Scalar::P(v, p) => {
                let mut e = p - 2;
                let mut b = *v;
                let mut acc = 1u64;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * b % p;
                    }
                    b = b * b % p;
                    e >>= 1;
                }
                Some(Scalar::P(acc, *p))
            }
        }
    }

    pub fn div(&self, o: &Scalar) -> Option<Scalar> {
        o.inv().map(|i| self * &i)
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Scalar::Q(r) => Some(r),
            Scalar::P(..) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::P(v, _) => write!(f, "{v}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::P(a, p), Scalar::P(b, q)) if p == q => Scalar::P((a + b) % p, *p),
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.sub(b)),
            (Scalar::P(a, p), Scalar::P(b, q)) if p == q => Scalar::P((a + p - b) % p, *p),
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::P(a, p), Scalar::P(b, q)) if p == q => Scalar::P(a * b % p, *p),
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::P(a, p) => Scalar::P((p - a) % p, *p),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Q(Rat::ratio(n, d).unwrap())
    }

    #[test]
    fn small_arithmetic() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
        assert_eq!(&q(1, 2) * &q(2, 3), q(1, 3));
        assert_eq!(q(-4, 6), q(2, -3));
        assert_eq!(q(3, 4).inv().unwrap(), q(4, 3));
        assert!(q(0, 5).inv().is_none());
        assert_eq!(q(-9, 2).to_string(), "-9/2");
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Scalar::Q(Rat::int(i64::MAX));
        let sq = &big * &big;
        assert!(matches!(sq, Scalar::Q(Rat::Big(_))));
        let back = sq.div(&big).unwrap();
        assert_eq!(back, big);
        assert!(matches!(back, Scalar::Q(Rat::Small(..))));
        let m = Scalar::Q(Rat::int(i64::MIN));
        assert_eq!(-(-m.clone()), m);
    }

    #[test]
    fn prime_field() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.int(3).inv().unwrap(), f.int(5));
        assert_eq!(f.int(-1), f.int(6));
        assert_eq!(f.parse("1/2").unwrap(), f.int(4));
        assert!(f.parse("1/7").is_none());
        assert!(Field::prime(8).is_err());
    }

    #[test]
    fn parse_round_trip() {
        let r = Rat::parse("-4/9").unwrap();
        assert_eq!(r.to_string(), "-4/9");
        assert_eq!(Rat::parse("6/3").unwrap().to_string(), "2");
        let huge = "123456789012345678901234567891/2";
        assert_eq!(Rat::parse(huge).unwrap().to_string(), huge);
    }

    proptest! {
        #[test]
        fn field_laws_match_bigrational(a in -1000i64..1000, b in 1i64..1000, c in -(1i64<<62)..(1i64<<62), d in 1i64..(1i64<<40)) {
            let x = Rat::ratio(a, b).unwrap();
            let y = Rat::ratio(c, d).unwrap();
            prop_assert_eq!(x.add(&y).to_big(), x.to_big() + y.to_big());
            prop_assert_eq!(x.mul(&y).to_big(), x.to_big() * y.to_big());
            prop_assert_eq!(x.sub(&y).to_big(), x.to_big() - y.to_big());
            prop_assert_eq!(Rat::from_big(x.mul(&y).to_big()), x.mul(&y));
        }

        #[test]
        fn prime_inverse(v in 1u64..101) {
            let f = Field::prime(101).unwrap();
            let s = f.int(v as i64);
            prop_assert!((&s * &s.inv().unwrap()).is_one());
        }
    }
}
