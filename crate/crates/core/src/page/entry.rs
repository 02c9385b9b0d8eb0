//! `E_3 = E_2` entries, the `d_3` differential and `E_4` entries.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::label::PageLabel;
use crate::abelian::{
    homology_subquotient, FgAbGroup, GroupMap, IntMatrix, Localization, Subquotient,
};
use crate::chern::{self, ChernPolynomial};
use crate::error::{Error, Result};
use crate::kz3::{self, Kz3Generator, Kz3Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Page {
    Finite(u32),
    Infinity,
}

impl fmt::Display for Page {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Page::Finite(r) => write!(f, "{r}"),
            Page::Infinity => write!(f, "inf"),
        }
    }
}

/// A spectral sequence entry: its group and the `E_3` labels it is built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageEntry {
    pub n: u32,
    pub s: u32,
    pub t: u32,
    pub page: Page,
    pub group: FgAbGroup,
    pub basis_labels: Vec<PageLabel>,
}

/// Localization used for entries away from the zeroth column.
pub fn default_localization(s: u32) -> Localization {
    if s == 0 {
        Localization::Integral
    } else {
        Localization::At(2)
    }
}

/// Labels of `E_3^{s,t}`: Chern order major, `K(Z,3)` order minor.
pub fn e3_labels(n: u32, s: u32, t: u32) -> Result<Vec<PageLabel>> {
    if n < 1 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let kz3_basis = kz3::degree_basis(s)?;
    if t % 2 == 1 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for w in chern::basis(n, t / 2) {
        for m in &kz3_basis {
            out.push(PageLabel::new(w.clone(), *m));
        }
    }
    Ok(out)
}

/// `E_3^{s,t}` presented on its labels, with the torsion of each `K(Z,3)` monomial.
pub fn e3_group(n: u32, s: u32, t: u32) -> Result<FgAbGroup> {
    let labels = e3_labels(n, s, t)?;
    let k = labels.len();
    let rows: Vec<Vec<BigInt>> = labels
        .iter()
        .enumerate()
        .filter(|(_, l)| !l.kz3.annihilator().is_zero())
        .map(|(i, l)| {
            let mut row = vec![BigInt::zero(); k];
            row[i] = l.kz3.annihilator();
            row
        })
        .collect();
    FgAbGroup::new(k, IntMatrix::from_rows(rows, k)?)?
        .with_labels(labels.iter().map(|l| l.to_string()).collect())
}

pub fn e3_entry(n: u32, s: u32, t: u32) -> Result<PageEntry> {
    Ok(PageEntry {
        n,
        s,
        t,
        page: Page::Finite(3),
        group: e3_group(n, s, t)?,
        basis_labels: e3_labels(n, s, t)?,
    })
}

/// `d_3 : E_3^{s,t} → E_3^{s+3,t-2}`, `w ⊗ ξ ↦ ∇(w) ⊗ x1·ξ`.
pub fn d3(n: u32, s: u32, t: u32) -> Result<GroupMap> {
    let domain = e3_group(n, s, t)?;
    let source = e3_labels(n, s, t)?;
    if t < 2 || source.is_empty() {
        let codomain = if t < 2 {
            FgAbGroup::trivial()
        } else {
            e3_group(n, s + 3, t - 2)?
        };
        return Ok(GroupMap::zero(domain, codomain));
    }
    let codomain = e3_group(n, s + 3, t - 2)?;
    let target = e3_labels(n, s + 3, t - 2)?;
    let x1 = Kz3Monomial::generator(Kz3Generator::X1);
    let mut m = IntMatrix::zeros(source.len(), target.len());
    for (i, label) in source.iter().enumerate() {
        let xi = label.kz3.mul(&x1)?;
        let ann = xi.annihilator();
        if ann == BigInt::from(1) {
            continue;
        }
        let image = ChernPolynomial::<BigInt>::term(n, label.chern.clone(), BigInt::from(1))
            .divergence();
        for (w, c) in image.terms() {
            let j = target
                .iter()
                .position(|l| l.chern == *w && l.kz3 == xi)
                .expect("divergence stays in the target basis");
            let value = if ann.is_zero() { c.clone() } else { c.mod_floor(&ann) };
            m.set(i, j, value);
        }
    }
    GroupMap::new(domain, codomain, m)
}

/// The incoming `d_3` into `(s,t)`, zero from the trivial group when `s < 3`.
pub fn d3_into(n: u32, s: u32, t: u32) -> Result<GroupMap> {
    if s < 3 {
        return Ok(GroupMap::zero(FgAbGroup::trivial(), e3_group(n, s, t)?));
    }
    d3(n, s - 3, t + 2)
}

/// Cycles and boundaries of `d_3` at `(s,t)` in the `E_3` label coordinates.
pub fn e4_subquotient(n: u32, s: u32, t: u32) -> Result<Subquotient> {
    homology_subquotient(&d3_into(n, s, t)?, &d3(n, s, t)?)
}

/// `E_4^{s,t}`: integral in the zeroth column, 2-local elsewhere.
pub fn e4_entry(n: u32, s: u32, t: u32) -> Result<FgAbGroup> {
    e4_entry_with(n, s, t, default_localization(s))
}

pub fn e4_entry_with(n: u32, s: u32, t: u32, loc: Localization) -> Result<FgAbGroup> {
    let labels: Vec<String> = e3_labels(n, s, t)?.iter().map(|l| l.to_string()).collect();
    Ok(e4_subquotient(n, s, t)?.group(loc, Some(&labels)))
}

pub fn e4_page_entry(n: u32, s: u32, t: u32) -> Result<PageEntry> {
    Ok(PageEntry {
        n,
        s,
        t,
        page: Page::Finite(4),
        group: e4_entry(n, s, t)?,
        basis_labels: e3_labels(n, s, t)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn e3_shapes() {
        let e = e3_entry(6, 0, 12).unwrap();
        assert_eq!(e.group.structure(), (11, vec![]));
        assert_eq!(e.basis_labels[0].to_string(), "c6");
        let e = e3_entry(5, 3, 10).unwrap();
        assert_eq!(e.group.free_rank(), 7);
        assert_eq!(e.basis_labels[0].to_string(), "c5x1");
        let e = e3_entry(4, 6, 8).unwrap();
        assert_eq!(e.group.structure(), (0, vec![b(2); 5]));
        assert_eq!(e.basis_labels[0].to_string(), "c4x1^2");
        assert!(e3_entry(4, 16, 0).is_err());
    }

    #[test]
    fn d3_on_single_classes() {
        for n in 2..8u32 {
            for k in 1..=n.min(6) {
                let map = d3(n, 0, 2 * k).unwrap();
                let src = e3_labels(n, 0, 2 * k).unwrap();
                let dst = e3_labels(n, 3, 2 * k - 2).unwrap();
                let i = src.iter().position(|l| l.to_string() == format!("c{k}")).unwrap();
                let want = if k == 1 { "x1".to_string() } else { format!("c{}x1", k - 1) };
                let j = dst.iter().position(|l| l.to_string() == want).unwrap();
                assert_eq!(map.matrix().get(i, j), &BigInt::from(n - k + 1));
            }
        }
        assert!(d3(4, 3, 0).unwrap().matrix().is_zero());
    }

    #[test]
    fn e4_facts_for_even_n() {
        for n in [6u32, 8, 10, 12] {
            for (s, t) in [(6, 6), (9, 4), (12, 2)] {
                assert!(e4_entry(n, s, t).unwrap().is_trivial(), "({s},{t}) at n={n}");
            }
            let g = e4_entry(n, 6, 8).unwrap();
            assert_eq!(g.structure(), (0, vec![b(2)]));
            assert_eq!(g.labels().unwrap(), &["c2^2x1^2".to_string()]);
            let g = e4_entry(n, 3, 10).unwrap();
            if n % 4 == 0 {
                assert_eq!(g.structure(), (0, vec![b(2)]));
                assert_eq!(g.labels().unwrap(), &["2c4c1x1".to_string()]);
            } else {
                assert!(g.is_trivial());
            }
        }
    }
}
