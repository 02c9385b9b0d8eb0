//! Polynomials in the torus variables `v_1, …, v_n`, used as an independent check on
//! the divergence operator.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::monomial::ChernMonomial;
use super::polynomial::ChernPolynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolynomial {
    n: u32,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl VPolynomial {
    pub fn zero(n: u32) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: u32) -> Self {
        let mut p = Self::zero(n);
        p.add_term(vec![0; n as usize], BigInt::from(1));
        p
    }

    /// The `i`-th elementary symmetric polynomial `σ_i(v_1, …, v_n)`.
    pub fn elementary(n: u32, i: u32) -> Self {
        let mut p = Self::zero(n);
        if i > n {
            return p;
        }
        let mut choose = |mask: u64| {
            if mask.count_ones() == i {
                let e = (0..n).map(|j| ((mask >> j) & 1) as u32).collect();
                p.add_term(e, BigInt::from(1));
            }
        };
        for mask in 0..(1u64 << n) {
            choose(mask);
        }
        p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, value: BigInt) {
        assert_eq!(exponents.len(), self.n as usize, "exponent vector length");
        if value.is_zero() {
            return;
        }
        let sum = self.terms.get(&exponents).cloned().unwrap_or_default() + value;
        if sum.is_zero() {
            self.terms.remove(&exponents);
        } else {
            self.terms.insert(exponents, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }

    /// `Σ_i ∂/∂v_i`.
    pub fn divergence(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            for i in 0..e.len() {
                if e[i] == 0 {
                    continue;
                }
                let mut d = e.clone();
                d[i] -= 1;
                out.add_term(d, c * BigInt::from(e[i]));
            }
        }
        out
    }

    /// Rewrites a symmetric polynomial in the elementary symmetric polynomials by
    /// repeatedly cancelling the lexicographically largest term. `None` if the
    /// polynomial is not symmetric.
    pub fn to_chern(&self) -> Option<ChernPolynomial> {
        let mut rest = self.clone();
        let mut out = ChernPolynomial::zero(self.n);
        while let Some((lead, c)) = rest.terms.iter().next_back() {
            let (lead, c) = (lead.clone(), c.clone());
            if lead.windows(2).any(|w| w[0] < w[1]) {
                return None;
            }
            let mut parts = Vec::new();
            for i in 0..lead.len() {
                let next = lead.get(i + 1).copied().unwrap_or(0);
                parts.extend(std::iter::repeat_n(i as u32 + 1, (lead[i] - next) as usize));
            }
            let m = ChernMonomial::from_parts(parts);
            let expansion = expand_monomial(self.n, &m).scale(&-c.clone());
            rest = rest.add(&expansion);
            out.add_term(m, c);
        }
        Some(out)
    }
}

impl fmt::Display for VPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let sign = if c < &BigInt::zero() { "-" } else { "+" };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = if c < &BigInt::zero() { -c } else { c.clone() };
            let body: String = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("v{}", i + 1)
                    } else {
                        format!("v{}^{k}", i + 1)
                    }
                })
                .collect();
            match (body.is_empty(), mag == BigInt::from(1)) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{body}")?,
                (false, false) => write!(f, "{mag}{body}")?,
            }
        }
        Ok(())
    }
}

fn expand_monomial(n: u32, m: &ChernMonomial) -> VPolynomial {
    let mut out = VPolynomial::one(n);
    for &p in m.parts() {
        out = out.mul(&VPolynomial::elementary(n, p));
    }
    out
}

/// Substitutes `c_i ↦ σ_i(v_1, …, v_n)`.
pub fn expand_in_v(p: &ChernPolynomial) -> VPolynomial {
    let n = p.n();
    let mut out = VPolynomial::zero(n);
    for (m, c) in p.terms() {
        out = out.add(&expand_monomial(n, m).scale(c));
    }
    out
}

/// Divergence computed through the torus: expand, differentiate, re-collect.
pub fn divergence_via_torus(p: &ChernPolynomial) -> Option<ChernPolynomial> {
    expand_in_v(p).divergence().to_chern()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_expansions() {
        let c1 = ChernPolynomial::parse(2, "c1").unwrap();
        assert_eq!(expand_in_v(&c1).to_string(), "v1 + v2");
        let c2 = ChernPolynomial::parse(2, "c2").unwrap();
        assert_eq!(expand_in_v(&c2).to_string(), "v1v2");
        let c2 = ChernPolynomial::parse(3, "c2").unwrap();
        assert_eq!(expand_in_v(&c2).to_string(), "v1v2 + v1v3 + v2v3");
    }

    #[test]
    fn oracle_matches_on_small_monomial() {
        for n in 2..6 {
            let p = ChernPolynomial::parse(n, "c2c1").unwrap();
            assert_eq!(divergence_via_torus(&p).unwrap(), p.divergence());
        }
    }

    #[test]
    fn non_symmetric_rejected() {
        let mut v = VPolynomial::zero(2);
        v.add_term(vec![1, 0], BigInt::from(1));
        assert!(v.to_chern().is_none());
    }
}
