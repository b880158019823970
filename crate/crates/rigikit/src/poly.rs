//! Univariate polynomials over exact fields, characteristic polynomials and Sturm chains.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::{ExactField, SymMatrix};
use crate::{QuadraticNumber, Rational};

/// Polynomial with coefficients stored lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: ExactField> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn lead(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..len)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                    a - b
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.lead().expect("nonzero").clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return (Self::zero(), self.clone());
        };
        let mut quot = vec![T::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = rem[i + dd].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * dc.clone();
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => {
                let inv = T::one() / l.clone();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Horner evaluation in any field containing the coefficients.
    pub fn eval<U: ExactField + From<T>>(&self, x: &U) -> U {
        self.coeffs
            .iter()
            .rev()
            .fold(U::zero(), |acc, c| acc * x.clone() + U::from(c.clone()))
    }

    /// Square-free factors `(multiplicity, factor)` with `self = const · Π factorᵐ` (Yun).
    pub fn square_free_decomposition(&self) -> Vec<(usize, Self)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let c = fp.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((i, a.clone()));
            }
            b = b.div_rem(&a).0;
            let c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }
}

/// Characteristic polynomial det(xI − M) of an integer matrix by Faddeev–LeVerrier over big integers.
pub fn charpoly(m: &SymMatrix<i64>) -> Poly<Rational> {
    let n = m.dim();
    let a: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| BigInt::from(*m.get(i, j))).collect()).collect();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut mk: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1} I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigInt::zero();
                for l in 0..n {
                    if !a[i][l].is_zero() && !mk[l][j].is_zero() {
                        s += &a[i][l] * &mk[l][j];
                    }
                }
                next[i][j] = s;
            }
            next[i][i] += &c[n - k + 1];
        }
        mk = next;
        // c_{n−k} = −tr(A·M_k) / k
        let mut tr = BigInt::zero();
        for i in 0..n {
            for l in 0..n {
                if !a[i][l].is_zero() {
                    tr += &a[i][l] * &mk[l][i];
                }
            }
        }
        c[n - k] = -tr / BigInt::from(k);
    }
    Poly::new(c.into_iter().map(Rational::from_integer).collect())
}

/// Sturm chain of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<Poly<Rational>>,
}

impl SturmChain {
    pub fn new(p: &Poly<Rational>) -> Self {
        let mut seq = vec![p.clone()];
        let mut next = p.derivative();
        while !next.is_zero() {
            let prev = seq.last().expect("nonempty").clone();
            seq.push(next.clone());
            let (_, r) = prev.div_rem(&next);
            next = r.scale(&-Rational::one());
        }
        SturmChain { seq }
    }

    fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in signs.filter(|&s| s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Sign variations at `x`, zeros dropped.
    pub fn variations_at(&self, x: &QuadraticNumber) -> usize {
        Self::variations(self.seq.iter().map(|p| p.eval(x).sign()))
    }

    pub fn variations_at_pos_infinity(&self) -> usize {
        Self::variations(self.seq.iter().map(|p| p.lead().map_or(Ordering::Equal, |l| l.cmp(&Rational::zero()))))
    }

    /// Distinct roots in the open ray (x, ∞). With zeros dropped, V(x) equals V just right of x,
    /// so a root at x itself is not counted.
    pub fn roots_above(&self, x: &QuadraticNumber) -> usize {
        self.variations_at(x) - self.variations_at_pos_infinity()
    }
}

/// Real-root counter with multiplicities for a polynomial whose roots are all real.
#[derive(Clone, Debug)]
pub struct RootCounter {
    factors: Vec<(usize, Poly<Rational>, SturmChain)>,
    degree: usize,
}

impl RootCounter {
    pub fn new(p: &Poly<Rational>) -> Self {
        let factors = p
            .square_free_decomposition()
            .into_iter()
            .map(|(mult, f)| {
                let chain = SturmChain::new(&f);
                (mult, f, chain)
            })
            .collect();
        RootCounter { factors, degree: p.degree().unwrap_or(0) }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Roots strictly greater than `x`, with multiplicity.
    pub fn count_above(&self, x: &QuadraticNumber) -> usize {
        self.factors.iter().map(|(m, _, s)| m * s.roots_above(x)).sum()
    }

    /// Multiplicity of `x` as a root.
    pub fn count_equal(&self, x: &QuadraticNumber) -> usize {
        self.factors.iter().filter(|(_, f, _)| f.eval(x).is_zero()).map(|(m, _, _)| m).sum()
    }

    /// Roots strictly less than `x`; valid when every root is real.
    pub fn count_below(&self, x: &QuadraticNumber) -> usize {
        self.degree - self.count_above(x) - self.count_equal(x)
    }
}
