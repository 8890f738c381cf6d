use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A commutative monoid of monomials with a printed form.
pub trait Monomial: Ord + Clone + fmt::Debug {
    fn one() -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Printed factors, empty for the unit monomial.
    fn render(&self) -> String;
    /// Print highest monomials first.
    const DESCENDING: bool = false;
}

/// Powers of a single variable `t`.
impl Monomial for u32 {
    fn one() -> Self {
        0
    }
    fn mul(&self, other: &Self) -> Self {
        self + other
    }
    fn render(&self) -> String {
        power("t", *self)
    }
}

/// `u^p v^q`.
impl Monomial for (u32, u32) {
    fn one() -> Self {
        (0, 0)
    }
    fn mul(&self, other: &Self) -> Self {
        (self.0 + other.0, self.1 + other.1)
    }
    fn render(&self) -> String {
        [power("u", self.0), power("v", self.1)].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>().join("*")
    }
}

pub(crate) fn power(var: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

/// Integer polynomial over a monomial monoid; zero coefficients are never
/// stored, so equality is equality of normal forms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<M: Monomial> {
    terms: BTreeMap<M, BigInt>,
}

impl<M: Monomial> Default for Poly<M> {
    fn default() -> Self {
        Poly { terms: BTreeMap::new() }
    }
}

impl<M: Monomial> Poly<M> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(M::one(), c)
    }

    pub fn term(m: M, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&M, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &M) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, m: M, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// The ring morphism sending each monomial `m` to `image(m)`.
    pub fn substitute<N: Monomial>(&self, mut image: impl FnMut(&M) -> Poly<N>) -> Poly<N> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out = &out + &image(m).scale(c);
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }
}

impl Poly<u32> {
    pub fn t() -> Self {
        Self::term(1, 1)
    }

    /// `1 + t^step + t^{2 step} + ... ` with `count` terms.
    pub fn geometric(step: u32, count: u32) -> Self {
        let mut p = Self::zero();
        for i in 0..count {
            p.add_term(i * step, BigInt::one());
        }
        p
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.terms.iter().map(|(e, c)| c * x.pow(*e)).sum()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficients of `t^0 ..= t^deg`.
    pub fn coefficients(&self) -> Vec<BigInt> {
        match self.degree() {
            Some(d) => (0..=d).map(|e| self.coeff(&e)).collect(),
            None => Vec::new(),
        }
    }
}

impl Poly<(u32, u32)> {
    pub fn uv(p: u32, q: u32, c: impl Into<BigInt>) -> Self {
        Self::term((p, q), c)
    }

    /// `E(t, t)`.
    pub fn diagonal(&self) -> Poly<u32> {
        self.substitute(|&(p, q)| Poly::term(p + q, 1))
    }

    /// `E(v, u)`.
    pub fn swap(&self) -> Self {
        self.substitute(|&(p, q)| Poly::term((q, p), 1))
    }
}

impl<M: Monomial> Add for &Poly<M> {
    type Output = Poly<M>;
    fn add(self, rhs: &Poly<M>) -> Poly<M> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<M: Monomial> Neg for &Poly<M> {
    type Output = Poly<M>;
    fn neg(self) -> Poly<M> {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl<M: Monomial> Sub for &Poly<M> {
    type Output = Poly<M>;
    fn sub(self, rhs: &Poly<M>) -> Poly<M> {
        self + &(-rhs)
    }
}

impl<M: Monomial> Mul for &Poly<M> {
    type Output = Poly<M>;
    fn mul(self, rhs: &Poly<M>) -> Poly<M> {
        let mut out = Poly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl<M: Monomial> $tr for Poly<M> {
            type Output = Poly<M>;
            fn $f(self, rhs: Poly<M>) -> Poly<M> {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<M: Monomial> fmt::Display for Poly<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<(&M, &BigInt)> =
            if M::DESCENDING { self.terms.iter().rev().collect() } else { self.terms.iter().collect() };
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let body = m.render();
            let mag = c.abs();
            let text = match (body.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => body,
                (false, false) => format!("{mag}{body}"),
            };
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-{text}")?,
                (0, false) => write!(f, "{text}")?,
                (_, true) => write!(f, " - {text}")?,
                (_, false) => write!(f, " + {text}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printing() {
        let p = &Poly::geometric(2, 3) - &Poly::term(1, 3);
        assert_eq!(p.to_string(), "1 - 3t + t^2 + t^4");
        let e = &Poly::uv(0, 0, 1) + &Poly::uv(1, 1, -2);
        assert_eq!(e.to_string(), "1 - 2u*v");
        assert_eq!(Poly::<u32>::zero().to_string(), "0");
    }

    #[test]
    fn ring_laws() {
        let a = &Poly::t() + &Poly::one();
        let b = &Poly::t() - &Poly::one();
        assert_eq!(&a * &b, &Poly::term(2, 1) - &Poly::one());
        assert_eq!(a.pow(3).coefficients(), vec![1, 3, 3, 1].into_iter().map(BigInt::from).collect::<Vec<_>>());
        assert_eq!(b.eval(&BigInt::from(1)), BigInt::zero());
    }

    #[test]
    fn hodge_specializations() {
        let torus = (&Poly::uv(0, 0, 1) + &Poly::uv(1, 0, 1)) * (&Poly::uv(0, 0, 1) + &Poly::uv(0, 1, 1));
        assert_eq!(torus.diagonal(), (&Poly::one() + &Poly::t()).pow(2));
        assert_eq!(torus.swap(), torus);
    }
}
