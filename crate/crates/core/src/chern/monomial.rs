use std::cmp::Ordering;
use std::fmt;

/// A monomial `c_{p1} c_{p2} …` stored as its partition, parts in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ChernMonomial {
    parts: Vec<u32>,
}

impl ChernMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// Monomial with the given parts in any order. Zero parts are dropped.
    pub fn from_parts(parts: impl IntoIterator<Item = u32>) -> Self {
        let mut parts: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    /// `c_1^{k_1} c_2^{k_2} …` from the exponent vector `(k_1, k_2, …)`.
    pub fn from_exponents(exponents: &[u32]) -> Self {
        let parts = exponents
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(i as u32 + 1, k as usize));
        Self::from_parts(parts)
    }

    pub fn c(i: u32) -> Self {
        Self::from_parts([i])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Cohomological degree, twice the weight.
    pub fn degree(&self) -> u32 {
        2 * self.weight()
    }

    pub fn largest_part(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.parts.is_empty()
    }

    /// Exponent vector of length `n`; parts above `n` are not representable.
    pub fn exponents(&self, n: u32) -> Vec<u32> {
        let mut e = vec![0; n as usize];
        for &p in &self.parts {
            e[p as usize - 1] += 1;
        }
        e
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn grouped(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, k)) if *q == p => *k += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_parts(self.parts.iter().chain(&other.parts).copied())
    }

    /// Removes one copy of `part` and inserts `replacement` (0 meaning nothing).
    pub(crate) fn replace_one(&self, part: u32, replacement: u32) -> Self {
        let mut parts = self.parts.clone();
        let pos = parts.iter().position(|&p| p == part).expect("part present");
        parts.remove(pos);
        parts.push(replacement);
        Self::from_parts(parts)
    }
}

/// Canonical order: weight, then number of parts ascending, then the partition in
/// descending lexicographic order. In weight 6 this lists c6, c5c1, c4c2, c3^2, …, c1^6.
impl Ord for ChernMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.parts.len().cmp(&other.parts.len()))
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for ChernMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ChernMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "1");
        }
        for (p, k) in self.grouped() {
            if k == 1 {
                write!(f, "c{p}")?;
            } else {
                write!(f, "c{p}^{k}")?;
            }
        }
        Ok(())
    }
}

/// Partitions of `weight` with parts in `min_part..=max_part`, descending parts.
pub fn partitions(weight: u32, min_part: u32, max_part: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, min: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (min..=max.min(rest)).rev() {
            prefix.push(p);
            go(rest - p, min, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(weight, min_part.max(1), max_part, &mut Vec::new(), &mut out);
    out
}

pub fn partition_count(weight: u32, min_part: u32, max_part: u32) -> usize {
    partitions(weight, min_part, max_part).len()
}

/// All monomials of a weight with parts at most `n`, in canonical order.
pub fn basis(n: u32, weight: u32) -> Vec<ChernMonomial> {
    let mut out: Vec<ChernMonomial> = partitions(weight, 1, n)
        .into_iter()
        .map(ChernMonomial::from_parts)
        .collect();
    out.sort();
    out
}
