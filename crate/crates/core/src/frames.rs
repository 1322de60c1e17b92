//! Finite Visser frames `(W, R, S)` and models.
//!
//! `R` must be transitive and conversely well-founded (on a finite carrier:
//! irreflexive and acyclic); `S` must be reflexive and transitive. The
//! interpretability clause is
//!
//! ```text
//! x ⊩ φ ▷ ψ  iff  ∀y (xRy ∧ y ⊩ φ ⇒ ∃z (xRz ∧ ySz ∧ z ⊩ ψ))
//! ```

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::relation::Relation;
use crate::subset::{full_mask, Subset, MAX_POINTS};
use crate::valuation::{valuation_bits, Valuation};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VisserFrame {
    r: Relation,
    s: Relation,
}

impl VisserFrame {
    /// Rejects relations that break the frame conditions; nothing is closed
    /// or repaired.
    pub fn new(r: Relation, s: Relation) -> Result<Self> {
        let size = r.size();
        if size == 0 || size > MAX_POINTS {
            return Err(Error::BadCarrier(size));
        }
        if s.size() != size {
            return Err(Error::InvalidFrame(format!(
                "R is on {size} points but S is on {}",
                s.size()
            )));
        }
        if !r.is_irreflexive() {
            return Err(Error::InvalidFrame("R is not irreflexive".into()));
        }
        if !r.is_transitive() {
            return Err(Error::InvalidFrame("R is not transitive".into()));
        }
        if !r.is_acyclic() {
            return Err(Error::InvalidFrame("R has a cycle".into()));
        }
        if !s.is_reflexive() {
            return Err(Error::InvalidFrame("S is not reflexive".into()));
        }
        if !s.is_transitive() {
            return Err(Error::InvalidFrame("S is not transitive".into()));
        }
        Ok(VisserFrame { r, s })
    }

    pub fn from_pairs(
        size: usize,
        r: impl IntoIterator<Item = (usize, usize)>,
        s: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        VisserFrame::new(Relation::from_pairs(size, r)?, Relation::from_pairs(size, s)?)
    }

    pub fn size(&self) -> usize {
        self.r.size()
    }

    pub fn r(&self) -> &Relation {
        &self.r
    }

    pub fn s(&self) -> &Relation {
        &self.s
    }

    /// The same frame with one extra point related to nothing (S-reflexive only).
    pub fn with_isolated_point(&self) -> Result<VisserFrame> {
        let n = self.size();
        let mut s = self.s.pairs();
        s.push((n, n));
        VisserFrame::from_pairs(n + 1, self.r.pairs(), s)
    }

    pub fn properties(&self) -> FramePropertyReport {
        properties(self)
    }

    pub fn classify(&self) -> BTreeSet<Logic> {
        classify(self)
    }
}

impl fmt::Debug for VisserFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VisserFrame")
            .field("size", &self.size())
            .field("R", &self.r)
            .field("S", &self.s)
            .finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VisserModel {
    pub frame: VisserFrame,
    pub valuation: Valuation,
}

impl VisserModel {
    pub fn new(frame: VisserFrame, valuation: Valuation) -> Result<Self> {
        valuation.check_width(frame.size())?;
        Ok(VisserModel { frame, valuation })
    }

    /// Pointwise forcing, straight from the recursive clauses.
    pub fn forces(&self, x: usize, f: &Formula) -> Result<bool> {
        if x >= self.frame.size() {
            return Err(Error::PointOutOfRange {
                point: x,
                size: self.frame.size(),
            });
        }
        for v in f.variables() {
            self.valuation.get(v)?;
        }
        Ok(self.forces_at(x, f))
    }

    fn forces_at(&self, x: usize, f: &Formula) -> bool {
        let n = self.frame.size();
        let r = &self.frame.r;
        let s = &self.frame.s;
        match f {
            Formula::Var(i) => self
                .valuation
                .get(*i)
                .map(|v| v.contains(x))
                .unwrap_or(false),
            Formula::Top => true,
            Formula::Bot => false,
            Formula::Neg(a) => !self.forces_at(x, a),
            Formula::And(a, b) => self.forces_at(x, a) && self.forces_at(x, b),
            Formula::Or(a, b) => self.forces_at(x, a) || self.forces_at(x, b),
            Formula::Imp(a, b) => !self.forces_at(x, a) || self.forces_at(x, b),
            Formula::Box(a) => (0..n).all(|y| !r.contains(x, y) || self.forces_at(y, a)),
            Formula::Dia(a) => (0..n).any(|y| r.contains(x, y) && self.forces_at(y, a)),
            Formula::Rhd(a, b) => (0..n).all(|y| {
                !(r.contains(x, y) && self.forces_at(y, a))
                    || (0..n).any(|z| r.contains(x, z) && s.contains(y, z) && self.forces_at(z, b))
            }),
        }
    }

    /// `{x | x ⊩ f}` computed point by point.
    pub fn truth_set(&self, f: &Formula) -> Result<Subset> {
        let n = self.frame.size();
        let mut out = Subset::empty(n);
        for x in 0..n {
            if self.forces(x, f)? {
                out = out.with(x);
            }
        }
        Ok(out)
    }
}

/// Whole-carrier truth sets over successor bitmasks. Used by the bounded
/// searches, where the same frame is queried under many valuations.
pub(crate) fn truth_mask(frame: &VisserFrame, f: &Formula, val: &dyn Fn(u32) -> u32) -> u32 {
    let n = frame.size();
    let full = full_mask(n);
    let r = &frame.r;
    let s = &frame.s;
    match f {
        Formula::Var(i) => val(*i),
        Formula::Top => full,
        Formula::Bot => 0,
        Formula::Neg(a) => !truth_mask(frame, a, val) & full,
        Formula::And(a, b) => truth_mask(frame, a, val) & truth_mask(frame, b, val),
        Formula::Or(a, b) => truth_mask(frame, a, val) | truth_mask(frame, b, val),
        Formula::Imp(a, b) => (!truth_mask(frame, a, val) | truth_mask(frame, b, val)) & full,
        Formula::Box(a) => {
            let t = truth_mask(frame, a, val);
            (0..n).fold(0, |acc, x| {
                if r.successor_mask(x) & !t == 0 {
                    acc | 1 << x
                } else {
                    acc
                }
            })
        }
        Formula::Dia(a) => {
            let t = truth_mask(frame, a, val);
            (0..n).fold(0, |acc, x| {
                if r.successor_mask(x) & t != 0 {
                    acc | 1 << x
                } else {
                    acc
                }
            })
        }
        Formula::Rhd(a, b) => {
            let ta = truth_mask(frame, a, val);
            let tb = truth_mask(frame, b, val);
            (0..n).fold(0, |acc, x| {
                let above = r.successor_mask(x);
                let mut pending = above & ta;
                while pending != 0 {
                    let y = pending.trailing_zeros() as usize;
                    pending &= pending - 1;
                    if above & s.successor_mask(y) & tb == 0 {
                        return acc;
                    }
                }
                acc | 1 << x
            })
        }
    }
}

/// First valuation (in enumeration order) and point refuting `f` on the frame.
pub fn frame_countermodel(frame: &VisserFrame, f: &Formula) -> Result<Option<(Valuation, usize)>> {
    let vars: Vec<u32> = f.variables().into_iter().collect();
    let n = frame.size();
    let bits = valuation_bits(vars.len(), n)?;
    let full = full_mask(n);
    for index in 0..1u64 << bits {
        let lookup = |var: u32| -> u32 {
            let i = vars.iter().position(|&v| v == var).unwrap_or(0);
            (index >> (i * n)) as u32 & full
        };
        let truth = truth_mask(frame, f, &lookup);
        if truth != full {
            let point = (!truth & full).trailing_zeros() as usize;
            return Ok(Some((Valuation::decode(&vars, n, index), point)));
        }
    }
    Ok(None)
}

/// Forced at every point under every valuation of the formula's variables.
pub fn is_valid_on_frame(frame: &VisserFrame, f: &Formula) -> Result<bool> {
    Ok(frame_countermodel(frame, f)?.is_none())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FramePropertyReport {
    pub r_transitive: bool,
    pub r_irreflexive: bool,
    pub r_acyclic: bool,
    pub s_reflexive: bool,
    pub s_transitive: bool,
    /// `x S y R z ⇒ x R z`
    pub clm_cond: bool,
    pub r_subset_s: bool,
    /// `x R y S z ⇒ x R z`
    pub ilp_cond: bool,
    /// The composite `x S y R z` relation is acyclic.
    pub ilw_cond: bool,
}

pub fn properties(frame: &VisserFrame) -> FramePropertyReport {
    let r = &frame.r;
    let s = &frame.s;
    let s_then_r = s.then(r);
    let r_then_s = r.then(s);
    FramePropertyReport {
        r_transitive: r.is_transitive(),
        r_irreflexive: r.is_irreflexive(),
        r_acyclic: r.is_acyclic(),
        s_reflexive: s.is_reflexive(),
        s_transitive: s.is_transitive(),
        clm_cond: s_then_r.is_subset_of(r),
        r_subset_s: r.is_subset_of(s),
        ilp_cond: r_then_s.is_subset_of(r),
        // a cycle of S;R rotates into a cycle of R;S and back, so either
        // composite may be tested
        ilw_cond: s_then_r.is_acyclic(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Logic {
    Cl,
    Clm,
    Il,
    Ilp,
    Ilw,
}

impl Logic {
    pub fn name(self) -> &'static str {
        match self {
            Logic::Cl => "CL",
            Logic::Clm => "CLM",
            Logic::Il => "IL",
            Logic::Ilp => "ILP",
            Logic::Ilw => "ILW",
        }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Logics whose sufficient frame condition holds. This reports condition
/// satisfaction only, never that the frame's logic is exactly the named one.
pub fn classify(frame: &VisserFrame) -> BTreeSet<Logic> {
    let p = properties(frame);
    let mut out = BTreeSet::from([Logic::Cl]);
    if p.clm_cond {
        out.insert(Logic::Clm);
    }
    if p.r_subset_s {
        out.insert(Logic::Il);
        if p.ilp_cond {
            out.insert(Logic::Ilp);
        }
        if p.ilw_cond {
            out.insert(Logic::Ilw);
        }
    }
    out
}

/// Every Visser frame on `size ≤ 4` points, R-major in code order.
pub fn all_frames(size: usize) -> Vec<VisserFrame> {
    let orders = crate::topology::strict_orders(size);
    let pre = crate::topology::preorders(size);
    let mut out = Vec::with_capacity(orders.len() * pre.len());
    for r in &orders {
        for s in &pre {
            out.push(VisserFrame {
                r: r.clone(),
                s: s.clone(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, Schema};

    fn id(n: usize) -> Vec<(usize, usize)> {
        (0..n).map(|i| (i, i)).collect()
    }

    fn fork_model() -> VisserModel {
        let mut s = id(3);
        s.push((1, 2));
        let frame = VisserFrame::from_pairs(3, [(0, 1), (0, 2)], s).unwrap();
        let v = Valuation::new()
            .with(0, Subset::from_points(3, [1]).unwrap())
            .with(1, Subset::from_points(3, [2]).unwrap());
        VisserModel::new(frame, v).unwrap()
    }

    #[test]
    fn frame_validation() {
        assert!(matches!(
            VisserFrame::from_pairs(2, [(0, 0)], id(2)),
            Err(Error::InvalidFrame(_))
        ));
        assert!(matches!(
            VisserFrame::from_pairs(3, [(0, 1), (1, 2)], id(3)),
            Err(Error::InvalidFrame(_))
        ));
        assert!(matches!(
            VisserFrame::from_pairs(2, [(0, 1), (1, 0)], id(2)),
            Err(Error::InvalidFrame(_))
        ));
        assert!(matches!(
            VisserFrame::from_pairs(2, [], [(0, 0)]),
            Err(Error::InvalidFrame(_))
        ));
        let mut s = id(3);
        s.extend([(0, 1), (1, 2)]);
        assert!(matches!(
            VisserFrame::from_pairs(3, [], s),
            Err(Error::InvalidFrame(_))
        ));
    }

    #[test]
    fn forces_examples() {
        let m = fork_model();
        assert!(m.forces(0, &Formula::Top).unwrap());
        assert!(m.forces(0, &parse("p0 |> p1").unwrap()).unwrap());
        assert!(!m.forces(0, &parse("p1 |> p0").unwrap()).unwrap());
        assert_eq!(m.forces(0, &parse("p7").unwrap()), Err(Error::UnboundVariable(7)));
        assert!(m.forces(3, &Formula::Top).is_err());
    }

    #[test]
    fn truth_mask_matches_forces() {
        let m = fork_model();
        for text in ["p0 |> p1", "p1 |> p0", "[]p0", "<>p1 & ~p0", "[]F", "<>p0 |> p1 | p0"] {
            let f = parse(text).unwrap();
            let lookup = |v: u32| m.valuation.get(v).unwrap().bits();
            assert_eq!(
                truth_mask(&m.frame, &f, &lookup),
                m.truth_set(&f).unwrap().bits(),
                "{text}"
            );
        }
    }

    #[test]
    fn validity_examples() {
        let j1 = Schema::get("J1").unwrap().instance();
        let j5 = Schema::get("J5").unwrap().instance();
        for frame in all_frames(2) {
            assert!(is_valid_on_frame(&frame, &j1).unwrap());
        }
        let il = VisserFrame::from_pairs(2, [(0, 1)], [(0, 0), (1, 1), (0, 1)]).unwrap();
        assert!(is_valid_on_frame(&il, &j5).unwrap());
        // two points: no successor of 0 satisfies <>p0
        let two = VisserFrame::from_pairs(2, [(0, 1)], id(2)).unwrap();
        assert!(is_valid_on_frame(&two, &j5).unwrap());
        // a 3-chain with S = id refutes it
        let chain = VisserFrame::from_pairs(3, [(0, 1), (1, 2), (0, 2)], id(3)).unwrap();
        let (v, x) = frame_countermodel(&chain, &j5).unwrap().unwrap();
        let m = VisserModel::new(chain, v).unwrap();
        assert!(!m.forces(x, &j5).unwrap());
    }

    #[test]
    fn property_examples() {
        let trivial = VisserFrame::from_pairs(3, [], id(3)).unwrap();
        let p = trivial.properties();
        assert!(
            p.r_transitive && p.r_irreflexive && p.r_acyclic && p.s_reflexive && p.s_transitive
                && p.clm_cond && p.r_subset_s && p.ilp_cond && p.ilw_cond
        );
        let mut s = id(2);
        s.push((1, 0));
        let f = VisserFrame::from_pairs(2, [(0, 1)], s).unwrap();
        assert!(!f.properties().clm_cond);

        let r = Relation::from_pairs(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let chain = VisserFrame::new(r.clone(), r.reflexive_transitive_closure()).unwrap();
        let p = chain.properties();
        assert!(p.r_subset_s && p.ilw_cond);
    }

    #[test]
    fn classify_examples() {
        let trivial = VisserFrame::from_pairs(2, [], id(2)).unwrap();
        assert_eq!(
            trivial.classify(),
            BTreeSet::from([Logic::Cl, Logic::Clm, Logic::Il, Logic::Ilp, Logic::Ilw])
        );
        let chain = VisserFrame::from_pairs(3, [(0, 1), (1, 2), (0, 2)], id(3)).unwrap();
        let c = chain.classify();
        assert!(c.contains(&Logic::Cl) && !c.contains(&Logic::Il));
        for frame in all_frames(3) {
            let closure = frame.r().reflexive_transitive_closure();
            let g = VisserFrame::new(frame.r().clone(), closure).unwrap();
            assert!(g.classify().contains(&Logic::Il));
        }
    }

    #[test]
    fn isolated_point_padding() {
        let m = fork_model();
        let padded = m.frame.with_isolated_point().unwrap();
        assert_eq!(padded.size(), 4);
        assert_eq!(padded.r().pairs(), m.frame.r().pairs());
    }

    #[test]
    fn frame_enumeration() {
        assert_eq!(all_frames(1).len(), 1);
        assert_eq!(all_frames(2).len(), 12);
        assert_eq!(all_frames(3).len(), 19 * 29);
    }
}
