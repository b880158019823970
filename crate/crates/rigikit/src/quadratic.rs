//! Exact arithmetic in real quadratic fields Q(√m).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::BigInt;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::Rational;

/// The number `a + b√m` with `m` square-free. Rationals have `b = 0` and `m = 0`.
///
/// Binary operations between numbers with different nonzero radicands panic: every
/// computation in this crate lives in a single field Q(√m).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    a: Rational,
    b: Rational,
    m: u64,
}

/// Splits `n` as `s²·r` with `r` square-free.
fn square_free_split(n: u64) -> (u64, u64) {
    let mut s = 1;
    let mut r = n;
    let mut p = 2;
    while p * p <= r {
        while r.is_multiple_of(p * p) {
            r /= p * p;
            s *= p;
        }
        p += 1;
    }
    (s, r)
}

impl QuadraticNumber {
    pub fn new(a: Rational, b: Rational, m: u64) -> Self {
        if m == 0 || b.is_zero() {
            return QuadraticNumber { a, b: Rational::zero(), m: 0 };
        }
        let (s, r) = square_free_split(m);
        let b = b * Rational::from_integer(BigInt::from(s));
        if r == 1 {
            QuadraticNumber { a: a + b, b: Rational::zero(), m: 0 }
        } else {
            QuadraticNumber { a, b, m: r }
        }
    }

    pub fn rational(a: Rational) -> Self {
        QuadraticNumber { a, b: Rational::zero(), m: 0 }
    }

    pub fn integer(v: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(v)))
    }

    pub fn fraction(p: i64, q: i64) -> Self {
        Self::rational(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// √n for a nonnegative integer n.
    pub fn sqrt(n: u64) -> Self {
        Self::new(Rational::zero(), Rational::one(), n)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    /// Sign decided by comparing a² with b²m; no floating point.
    pub fn sign(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * Rational::from_integer(BigInt::from(self.m));
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.m as f64).sqrt()
    }

    /// Conjugate `a − b√m`.
    pub fn conjugate(&self) -> Self {
        QuadraticNumber { a: self.a.clone(), b: -self.b.clone(), m: self.m }
    }

    /// Field norm a² − b²m.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(BigInt::from(self.m))
    }

    pub fn recip(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "reciprocal of zero");
        QuadraticNumber { a: &self.a / &n, b: -&self.b / &n, m: self.m }
    }

    fn common_m(&self, other: &Self) -> u64 {
        match (self.m, other.m) {
            (0, m) | (m, 0) => m,
            (m1, m2) if m1 == m2 => m1,
            (m1, m2) => panic!("mixed quadratic fields Q(√{m1}) and Q(√{m2})"),
        }
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        let b = self.b.abs();
        let coeff = if b.is_one() { String::new() } else { format!("{b}*") };
        if self.a.is_zero() {
            let lead = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{lead}{coeff}sqrt({})", self.m)
        } else {
            write!(f, "{} {sign} {coeff}sqrt({})", self.a, self.m)
        }
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some((self - other).sign())
    }
}

impl<'a> Add<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let m = self.common_m(rhs);
        QuadraticNumber::new(&self.a + &rhs.a, &self.b + &rhs.b, m)
    }
}

impl<'a> Sub<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let m = self.common_m(rhs);
        QuadraticNumber::new(&self.a - &rhs.a, &self.b - &rhs.b, m)
    }
}

impl<'a> Mul<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let m = self.common_m(rhs);
        let mq = Rational::from_integer(BigInt::from(m));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * mq;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadraticNumber::new(a, b, m)
    }
}

impl<'a> Div<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        self * &rhs.recip()
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Rem for QuadraticNumber {
    type Output = QuadraticNumber;
    /// Division in a field is exact, so the remainder is always zero.
    fn rem(self, _rhs: QuadraticNumber) -> QuadraticNumber {
        QuadraticNumber::zero()
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber { a: -self.a, b: -self.b, m: self.m }
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -self.clone()
    }
}

impl Zero for QuadraticNumber {
    fn zero() -> Self {
        QuadraticNumber::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadraticNumber {
    fn one() -> Self {
        QuadraticNumber::rational(Rational::one())
    }
}

impl Num for QuadraticNumber {
    type FromStrRadixErr = num_rational::ParseRatioError;
    /// Parses a rational literal only.
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        Rational::from_str_radix(s, radix).map(QuadraticNumber::rational)
    }
}

impl From<Rational> for QuadraticNumber {
    fn from(r: Rational) -> Self {
        QuadraticNumber::rational(r)
    }
}
