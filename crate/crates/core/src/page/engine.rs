//! Runs the spectral sequence from `E_4` to `E_∞` for even `n`, 2-locally away from the
//! zeroth column.
//!
//! `E_r^{s,t}` is held as a pair of lattices `B ⊆ Z` in the `E_3` label coordinates,
//! saturated with respect to odd integers when `s > 0`. Since every nonzero entry has
//! even `t`, only odd `r` can carry a nonzero `d_r`, so `E_{r+1} = E_r` for even `r`.
//! A differential between two nonzero entries must be pinned down by the rule table;
//! otherwise the engine reports it as undetermined rather than guessing.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::entry::{d3_into, default_localization, e3_labels, e4_subquotient};
use super::label::{class_bidegree, class_vector, PageLabel};
use super::rules::{RuleKind, RuleTable};
use crate::abelian::lattice::{self, is_sublattice, kernel, saturate_locally};
use crate::abelian::{FgAbGroup, IntMatrix, Localization, Subquotient};
use crate::error::{Error, Result};
use crate::kz3::MAX_DEGREE;

#[derive(Clone, Debug)]
struct State {
    z: IntMatrix,
    b: IntMatrix,
    /// False when only an upper bound was available (the outgoing `d_3` leaves the
    /// presented range).
    exact: bool,
}

#[derive(Clone, Debug)]
struct Differential {
    /// Cycles surviving `d_r`, when the map is fully known.
    kernel: Option<IntMatrix>,
    /// Known images together with the old target boundaries.
    image: IntMatrix,
}

pub struct Engine<'a> {
    n: u32,
    rules: &'a RuleTable,
    labels: RefCell<HashMap<(u32, u32), Vec<PageLabel>>>,
    states: RefCell<HashMap<(u32, u32, u32), State>>,
    differentials: RefCell<HashMap<(u32, u32, u32), Differential>>,
}

fn loc(s: u32) -> Localization {
    default_localization(s)
}

fn sat(m: &IntMatrix, s: u32) -> IntMatrix {
    saturate_locally(m, loc(s))
}

impl State {
    fn is_zero(&self) -> bool {
        lattice::lattice_equal(&self.z, &self.b)
    }

    fn zero(dim: usize) -> Self {
        Self {
            z: IntMatrix::zeros(0, dim),
            b: IntMatrix::zeros(0, dim),
            exact: true,
        }
    }
}

impl<'a> Engine<'a> {
    pub fn new(n: u32, rules: &'a RuleTable) -> Result<Self> {
        if n < 2 || n % 2 == 1 {
            return Err(Error::OutOfRange(format!(
                "the engine runs for even n >= 2, got {n}"
            )));
        }
        Ok(Self {
            n,
            rules,
            labels: RefCell::default(),
            states: RefCell::default(),
            differentials: RefCell::default(),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    fn labels(&self, s: u32, t: u32) -> Result<Vec<PageLabel>> {
        if let Some(l) = self.labels.borrow().get(&(s, t)) {
            return Ok(l.clone());
        }
        let l = e3_labels(self.n, s, t)?;
        self.labels.borrow_mut().insert((s, t), l.clone());
        Ok(l)
    }

    fn e4_state(&self, s: u32, t: u32) -> Result<State> {
        let dim = self.labels(s, t)?.len();
        if dim == 0 {
            return Ok(State::zero(0));
        }
        if t >= 2 && s + 3 > MAX_DEGREE {
            let d_in = d3_into(self.n, s, t)?;
            let b = d_in.matrix().vstack(d_in.codomain().relations())?;
            return Ok(State {
                z: IntMatrix::identity(dim),
                b: sat(&b, s),
                exact: false,
            });
        }
        let sq = e4_subquotient(self.n, s, t)?;
        Ok(State {
            z: sat(sq.cycles(), s),
            b: sat(sq.boundaries(), s),
            exact: true,
        })
    }

    /// `E_r^{s,t}` for odd `r >= 5` (equal to `E_{r-1}`).
    fn state(&self, s: u32, t: u32, r: u32) -> Result<State> {
        if let Some(st) = self.states.borrow().get(&(s, t, r)) {
            return Ok(st.clone());
        }
        let st = if r <= 5 {
            self.e4_state(s, t)?
        } else {
            self.step(s, t, r - 2)?
        };
        self.states.borrow_mut().insert((s, t, r), st.clone());
        Ok(st)
    }

    /// Whether `E_r^{s,t}` vanishes, using the `E_4` bound first.
    fn vanishes(&self, s: u32, t: u32, r: u32) -> Result<bool> {
        if self.labels(s, t)?.is_empty() {
            return Ok(true);
        }
        let e4 = self.e4_state(s, t)?;
        if e4.is_zero() {
            return Ok(true);
        }
        if !e4.exact {
            return Err(Error::OutOfRange(format!(
                "E_4^{{{s},{t}}} needs d_3 beyond degree {MAX_DEGREE}"
            )));
        }
        Ok(self.state(s, t, r)?.is_zero())
    }

    /// `E_{r+2}` from `E_r` through `d_r`.
    fn step(&self, s: u32, t: u32, r: u32) -> Result<State> {
        let mut st = self.state(s, t, r)?;
        if st.is_zero() {
            return Ok(st);
        }
        if r <= t + 1 {
            let (ys, yt) = (s + r, t + 1 - r);
            if !self.vanishes(ys, yt, r)? && !self.never_hit(ys, yt, r, &self.state(ys, yt, r)?)? {
                let d = self.differential(s, t, r)?;
                st.z = d.kernel.ok_or(Error::UndeterminedDifferential {
                    n: self.n,
                    page: r,
                    s,
                    t,
                })?;
            }
        }
        if r <= s {
            let (ws, wt) = (s - r, t + r - 1);
            if !self.never_hit(s, t, r, &st)? && !self.vanishes(ws, wt, r)? {
                let d = self.differential(ws, wt, r)?;
                let b = sat(&d.image, s);
                match d.kernel {
                    Some(_) => st.b = b,
                    None if lattice::lattice_equal(&b, &st.z) => st.b = b,
                    None => {
                        return Err(Error::UndeterminedDifferential {
                            n: self.n,
                            page: r,
                            s: ws,
                            t: wt,
                        })
                    }
                }
            }
        }
        Ok(st)
    }

    /// A never-hit rule whose class generates `E_r^{s,t} ≅ Z/2` rules out incoming images.
    fn never_hit(&self, s: u32, t: u32, r: u32, st: &State) -> Result<bool> {
        let labels = self.labels(s, t)?;
        let group = Subquotient::new(&st.z, &st.b)?.group(loc(s), None);
        if group.structure() != (0, vec![BigInt::from(2)]) {
            return Ok(false);
        }
        for rule in self.rules.rules.iter().filter(|rule| {
            rule.page.contains(r) && rule.n_condition.holds(self.n)
        }) {
            let RuleKind::NeverHit { target } = rule.kind()? else {
                continue;
            };
            if class_bidegree(&target)? != Some((s, t)) {
                continue;
            }
            let v = class_vector(&target, &labels, self.n)?;
            let single = IntMatrix::from_rows(vec![v.clone()], labels.len())?;
            if lattice::contains(&st.z, &v) && !is_sublattice(&sat(&single, s), &st.b) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// `d_r` out of `(s,t)` as far as the rule table determines it.
    fn differential(&self, s: u32, t: u32, r: u32) -> Result<Differential> {
        if let Some(d) = self.differentials.borrow().get(&(s, t, r)) {
            return Ok(d.clone());
        }
        let d = self.compute_differential(s, t, r)?;
        self.differentials.borrow_mut().insert((s, t, r), d.clone());
        Ok(d)
    }

    fn compute_differential(&self, s: u32, t: u32, r: u32) -> Result<Differential> {
        let (ys, yt) = (s + r, t + 1 - r);
        let src = self.state(s, t, r)?;
        let dst = self.state(ys, yt, r)?;
        let x_labels = self.labels(s, t)?;
        let y_labels = self.labels(ys, yt)?;
        let (dx, dy) = (x_labels.len(), y_labels.len());
        let mismatch = |what: String| {
            Error::RuleMismatch(format!("d{r} from ({s},{t}) at n={}: {what}", self.n))
        };

        let mut graph: Vec<Vec<BigInt>> = Vec::new();
        for rule in self.rules.applicable(self.n, r, s, t) {
            match rule.kind()? {
                RuleKind::AllVanish => {
                    return Ok(Differential {
                        kernel: Some(src.z.clone()),
                        image: dst.b.clone(),
                    })
                }
                RuleKind::NeverHit { .. } => {}
                RuleKind::Value { source, target } => {
                    let x = class_vector(&source, &x_labels, self.n)?;
                    if !lattice::contains(&src.z, &x) {
                        return Err(mismatch(format!("{} is not a cycle", rule.source_label)));
                    }
                    let coeff = rule.coeff_formula.eval(self.n)?;
                    let y = if target.is_empty() || coeff.is_zero() {
                        vec![BigInt::zero(); dy]
                    } else {
                        if class_bidegree(&target)? != Some((ys, yt)) {
                            return Err(mismatch(format!(
                                "target {} is not in ({ys},{yt})",
                                rule.target_label
                            )));
                        }
                        class_vector(&target, &y_labels, self.n)?
                            .into_iter()
                            .map(|v| v * &coeff)
                            .collect()
                    };
                    graph.push(x.into_iter().chain(y).collect());
                }
            }
        }
        for row in src.b.row_vecs() {
            graph.push(row.into_iter().chain(std::iter::repeat_n(BigInt::zero(), dy)).collect());
        }
        for row in dst.b.row_vecs() {
            graph.push(std::iter::repeat_n(BigInt::zero(), dx).chain(row).collect());
        }
        let g = sat(&IntMatrix::from_rows(graph, dx + dy)?, ys);
        let x_cols: Vec<usize> = (0..dx).collect();
        let y_cols: Vec<usize> = (dx..dx + dy).collect();
        let gx = g.select_cols(&x_cols);
        let gy = g.select_cols(&y_cols);

        // Elements whose source part vanishes must land in the old boundaries.
        let stray = &kernel(&gx) * &gy;
        if !is_sublattice(&stray, &dst.b) {
            return Err(mismatch("a class that is zero on this page has a nonzero image".into()));
        }
        let image = sat(&gy.vstack(&dst.b)?, ys);
        let determined = is_sublattice(&src.z, &gx);
        let kernel = determined.then(|| sat(&(&kernel(&gy) * &gx), s));
        Ok(Differential { kernel, image })
    }

    /// `E_∞^{s,t}` labelled by canonical representatives.
    pub fn einf(&self, s: u32, t: u32) -> Result<FgAbGroup> {
        let labels = self.labels(s, t)?;
        let names: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
        let st = self.einf_state(s, t)?;
        Ok(Subquotient::new(&st.z, &st.b)?.group(loc(s), Some(&names)))
    }

    fn einf_state(&self, s: u32, t: u32) -> Result<State> {
        let mut r = 5;
        while r <= t + 1 || r <= s {
            r += 2;
        }
        let st = self.state(s, t, r)?;
        if !st.exact && !st.is_zero() {
            return Err(Error::OutOfRange(format!(
                "E_inf^{{{s},{t}}} needs d_3 beyond degree {MAX_DEGREE}"
            )));
        }
        Ok(st)
    }

    /// `E_r^{s,t}` for a finite page `r >= 4`.
    pub fn entry(&self, s: u32, t: u32, r: u32) -> Result<FgAbGroup> {
        if r < 4 {
            return Err(Error::OutOfRange(format!("page {r} is below 4")));
        }
        let r = if r.is_multiple_of(2) { r + 1 } else { r };
        let labels = self.labels(s, t)?;
        let names: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
        let st = self.state(s, t, r)?;
        Ok(Subquotient::new(&st.z, &st.b)?.group(loc(s), Some(&names)))
    }
}

/// `E_∞^{s,t}` with the given rule table.
pub fn einf_entry(n: u32, s: u32, t: u32, rules: &RuleTable) -> Result<FgAbGroup> {
    Engine::new(n, rules)?.einf(s, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_entries() {
        let rules = RuleTable::builtin();
        for n in [2u32, 4, 6, 8, 10, 12, 14, 16] {
            let e = Engine::new(n, &rules).unwrap();
            assert!(e.einf(3, 10).unwrap().is_trivial(), "n={n}");
            let g = e.einf(10, 4).unwrap();
            if n % 4 == 2 {
                assert_eq!(g.labels().unwrap(), &["c1^2y2_1".to_string()]);
            } else {
                assert!(g.is_trivial());
            }
            let g = e.einf(12, 0).unwrap();
            assert_eq!(g.labels().unwrap(), &["x1^4".to_string()]);
            let g = e.einf(13, 0).unwrap();
            assert_eq!(g.labels().unwrap(), &["x1y2_1".to_string()]);
            let g = e.einf(6, 8).unwrap();
            assert_eq!(g.is_trivial(), n % 4 == 2);
            assert!(e.einf(10, 2).unwrap().is_trivial());
        }
    }

    #[test]
    fn odd_n_rejected() {
        let rules = RuleTable::builtin();
        assert!(Engine::new(5, &rules).is_err());
    }

    #[test]
    fn missing_rule_is_reported() {
        let mut rules = RuleTable::builtin();
        rules.rules.retain(|r| r.source_label != "2c4c1x1");
        let e = Engine::new(8, &rules).unwrap();
        assert!(matches!(
            e.einf(3, 10),
            Err(Error::UndeterminedDifferential { page: 7, s: 3, t: 10, .. })
        ));
    }
}
