//! Rationals localized at the primes dividing `n`, with 2 inverted when `n ≡ 2 mod 4`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::abelian::group::valuation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientRing {
    n: u32,
    primes: Vec<u64>,
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl CoefficientRing {
    pub fn new(n: u32) -> Self {
        let mut primes = prime_divisors(n as u64);
        if n % 4 == 2 {
            primes.retain(|&p| p != 2);
        }
        Self { n, primes }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Primes that stay non-invertible.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    fn coprime(&self, d: &BigInt) -> bool {
        self.primes
            .iter()
            .all(|&p| !d.is_multiple_of(&BigInt::from(p)))
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        self.coprime(q.denom())
    }

    pub fn is_unit(&self, q: &BigRational) -> bool {
        !q.is_zero() && self.coprime(q.denom()) && self.coprime(q.numer())
    }

    /// Whether `a = u·b` for a unit `u`.
    pub fn associates(&self, a: &BigRational, b: &BigRational) -> bool {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => true,
            (false, false) => self.is_unit(&(a / b)),
            _ => false,
        }
    }

    /// The part of a nonzero integer built from the primes of `P`.
    pub fn p_part(&self, d: &BigInt) -> BigInt {
        self.primes
            .iter()
            .map(|&p| BigInt::from(p).pow(valuation(d, p)))
            .fold(BigInt::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn membership() {
        let k = CoefficientRing::new(6);
        assert_eq!(k.primes(), &[3]);
        assert!(k.contains(&q(1, 2)));
        assert!(!k.contains(&q(1, 3)));
        assert!(k.is_unit(&q(5, 2)));
        assert!(!k.is_unit(&q(3, 1)));
        let k = CoefficientRing::new(12);
        assert_eq!(k.primes(), &[2, 3]);
        assert!(!k.contains(&q(1, 2)));
        assert!(k.associates(&q(12, 1), &q(-60, 7)));
        assert_eq!(k.p_part(&BigInt::from(360)), BigInt::from(72));
        assert!(CoefficientRing::new(2).primes().is_empty());
    }
}
