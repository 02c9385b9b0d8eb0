//! Closed forms for `e2, e3, e4, β6, α6` as rational polynomials in `n`.
//!
//! A coefficient is only evaluated when its monomial survives at `n`, so factors such as
//! `1/(n-2)` on `c3^2` never meet a zero denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::chern::{ChernMonomial, ChernPolynomial, RationalChernPolynomial};
use crate::error::{Error, Result};

type Coeff = fn(&BigRational) -> BigRational;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn gcd(a: i64, n: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(a).gcd(&BigInt::from(n)))
}

fn build(n: u32, prefactor: BigRational, terms: &[(&[u32], Coeff)]) -> RationalChernPolynomial {
    let x = q(n as i64);
    let mut p = RationalChernPolynomial::zero(n);
    for (parts, f) in terms {
        let m = ChernMonomial::from_parts(parts.iter().copied());
        if m.largest_part() <= n {
            p.add_term(m, &prefactor * f(&x));
        }
    }
    p
}

pub fn e2(n: u32) -> RationalChernPolynomial {
    let pre = BigRational::one() / gcd(2, n - 1);
    build(n, pre, &[(&[2], |n| q(2) * n), (&[1, 1], |n| -(n - q(1)))])
}

/// `gcd(3,n-1)·gcd(3,n-2)·gcd(4,n-2)`.
pub fn g3(n: u32) -> BigInt {
    let g = |a: i64, b: i64| BigInt::from(a).gcd(&BigInt::from(b));
    let n = n as i64;
    g(3, n - 1) * g(3, n - 2) * g(4, n - 2)
}

pub fn e3(n: u32) -> RationalChernPolynomial {
    let pre = BigRational::new(BigInt::one(), g3(n));
    build(
        n,
        pre,
        &[
            (&[3], |n| q(3) * n * n),
            (&[2, 1], |n| -(q(3) * n * (n - q(2)))),
            (&[1, 1, 1], |n| (n - q(1)) * (n - q(2))),
        ],
    )
}

pub fn e4(n: u32) -> RationalChernPolynomial {
    let pre = BigRational::one() / gcd(3, n);
    build(
        n,
        pre,
        &[
            (&[4], |n| n.clone()),
            (&[3, 1], |n| -(n - q(3))),
            (&[2, 2], |n| {
                -(n * n + n + q(1)) * (n - q(2)) * (n - q(3)) / q(2)
            }),
            (&[2, 1, 1], |n| n * n * (n - q(2)) * (n - q(3)) / q(2)),
            (&[1, 1, 1, 1], |n| {
                -(n * (n - q(1)) * (n - q(2)) * (n - q(3))) / q(8)
            }),
        ],
    )
}

pub fn beta6(n: u32) -> RationalChernPolynomial {
    let g2 = gcd(2, n);
    let pre = gcd(3, n) / (&g2 * &g2);
    build(
        n,
        pre,
        &[
            (&[3, 3], |n| n * n),
            (&[3, 2, 1], |n| -(q(2) * n * (n - q(2)))),
            (&[2, 2, 2], |n| {
                q(8) * n * (n - q(2)) * (n - q(2)) / (q(9) * (n - q(1)))
            }),
            (&[3, 1, 1, 1], |n| q(2) * (n - q(1)) * (n - q(2)) / q(3)),
            (&[2, 2, 1, 1], |n| -((n - q(2)) * (n - q(2))) / q(3)),
        ],
    )
}

pub fn alpha6(n: u32) -> RationalChernPolynomial {
    let pre = BigRational::one() / gcd(2, n - 1);
    build(
        n,
        pre,
        &[
            (&[4, 2], |n| q(2) * n),
            (&[4, 1, 1], |n| -(n - q(1))),
            (&[3, 3], |n| -(q(3) * n * (n - q(3))) / (q(2) * (n - q(2)))),
            (&[3, 2, 1], |n| n - q(3)),
            (&[2, 2, 2], |n| -((n - q(2)) * (n - q(3))) / (q(3) * (n - q(1)))),
        ],
    )
}

/// The integral form of a closed formula that is expected to have integer coefficients.
pub fn integral(name: &str, n: u32, p: &RationalChernPolynomial) -> Result<ChernPolynomial> {
    p.to_integer().ok_or_else(|| {
        Error::verification(n, format!("{name} is integral"), format!("{name} = {p}"))
    })
}

/// The degree-12 element fixed at `n = 5` for the worked relation.
pub const ALPHA6_N5: &str =
    "5c4c2 - 2c4c1^2 - 15c3^2 + 16c3c2c1 + 26c2^3 - 4c3c1^3 - 36c2^2c1^2 + 15c2c1^4 - 2c1^6";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_instances() {
        assert_eq!(integral("e2", 3, &e2(3)).unwrap().to_string(), "3c2 - c1^2");
        assert_eq!(
            integral("e3", 5, &e3(5)).unwrap().to_string(),
            "25c3 - 15c2c1 + 4c1^3"
        );
        assert!(e3(2).is_zero());
        assert!(e4(3).is_zero());
        assert!(alpha6(3).is_zero());
        for n in 2..=64 {
            for p in [e2(n), e3(n), e4(n)] {
                assert!(p.to_integer().is_some(), "n={n}: {p}");
                assert!(p.divergence().is_zero(), "n={n}: {p}");
            }
        }
    }
}
