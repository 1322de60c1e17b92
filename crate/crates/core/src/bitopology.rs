//! Bitopological spaces and their semantics.
//!
//! A formula denotes a subset of the carrier: `□` is the co-derived set and
//! `◇` the derived set of `tau0`, and `φ ▷ ψ` is the e-set
//!
//! ```text
//! e(Y, Z) = { x | ∀U ∈ tau1: x ∈ d0(Y ∩ U) ⇒ x ∈ d0(Z ∩ U) }
//! ```

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formula::{Formula, Schema};
use crate::subset::{full_mask, Subset};
use crate::topology::FiniteSpace;
use crate::valuation::{valuation_bits, Valuation};

/// Valuation spaces at least this large are searched in parallel.
const PARALLEL_THRESHOLD: usize = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitopSpace {
    tau0: FiniteSpace,
    tau1: FiniteSpace,
}

/// Verdicts of the four equivalent IL-space conditions on a CL-space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IlClauses {
    /// `◇p ▷ p` is valid.
    pub c1: bool,
    /// `d0(d0(Y) ∩ U) ⊆ d0(Y ∩ U)` for all `Y` and all `U ∈ tau1`.
    pub c2: bool,
    /// `d0(d0(X∖U) ∩ U) = ∅` for all `U ∈ tau1`.
    pub c3: bool,
    /// Each `U ∈ tau1` has some `V ∈ tau0` with `V ⊆ U` and `d0(U∖V) = ∅`.
    pub c4: bool,
}

impl IlClauses {
    pub fn all_agree(&self) -> bool {
        self.c1 == self.c2 && self.c2 == self.c3 && self.c3 == self.c4
    }
}

/// Carrier size above which [`BitopSpace::il_char_clauses`] refuses to run.
pub const IL_CHAR_MAX_POINTS: usize = 8;

impl BitopSpace {
    pub fn new(tau0: FiniteSpace, tau1: FiniteSpace) -> Result<Self> {
        if tau0.size() != tau1.size() {
            return Err(Error::WidthMismatch {
                expected: tau0.size(),
                found: tau1.size(),
            });
        }
        Ok(BitopSpace { tau0, tau1 })
    }

    pub fn size(&self) -> usize {
        self.tau0.size()
    }

    pub fn tau0(&self) -> &FiniteSpace {
        &self.tau0
    }

    pub fn tau1(&self) -> &FiniteSpace {
        &self.tau1
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.size())
    }

    /// The e-set, by direct quantification over the opens of `tau1`.
    pub fn e_set(&self, y: Subset, z: Subset) -> Result<Subset> {
        y.check_width(self.size())?;
        z.check_width(self.size())?;
        let mut out = full_mask(self.size());
        for &u in self.tau1.open_masks() {
            let ante = self.tau0.derived_mask(y.bits() & u);
            let cons = self.tau0.derived_mask(z.bits() & u);
            out &= !ante | cons;
        }
        Ok(Subset::from_bits(self.size(), out))
    }

    /// The e-set via minimal neighbourhoods.
    ///
    /// With `M0(x)`, `M1(y)` the least `tau0`/`tau1` neighbourhoods,
    /// `x ∈ e(Y, Z)` iff every `y ∈ (M0(x) ∩ Y) ∖ {x}` has some
    /// `z ∈ (M0(x) ∩ Z ∩ M1(y)) ∖ {x}`: an open `U` witnessing
    /// `x ∈ d0(Y ∩ U)` through `y` contains `M1(y)`, so `U = M1(y)` is the
    /// hardest case. Agrees with [`BitopSpace::e_set`] on every finite space.
    pub fn e_set_local(&self, y: Subset, z: Subset) -> Result<Subset> {
        y.check_width(self.size())?;
        z.check_width(self.size())?;
        Ok(Subset::from_bits(self.size(), self.e_mask(y.bits(), z.bits())))
    }

    #[inline]
    fn e_mask(&self, y: u32, z: u32) -> u32 {
        let mut out = 0;
        for x in 0..self.size() {
            let around = self.tau0.minimal_mask(x) & !(1 << x);
            let mut pending = around & y;
            let targets = around & z;
            let mut ok = true;
            while pending != 0 {
                let w = pending.trailing_zeros() as usize;
                pending &= pending - 1;
                if targets & self.tau1.minimal_mask(w) == 0 {
                    ok = false;
                    break;
                }
            }
            if ok {
                out |= 1 << x;
            }
        }
        out
    }

    fn eval_mask(&self, f: &Formula, val: &dyn Fn(u32) -> u32) -> u32 {
        let full = full_mask(self.size());
        match f {
            Formula::Var(i) => val(*i),
            Formula::Top => full,
            Formula::Bot => 0,
            Formula::Neg(a) => !self.eval_mask(a, val) & full,
            Formula::And(a, b) => self.eval_mask(a, val) & self.eval_mask(b, val),
            Formula::Or(a, b) => self.eval_mask(a, val) | self.eval_mask(b, val),
            Formula::Imp(a, b) => (!self.eval_mask(a, val) | self.eval_mask(b, val)) & full,
            Formula::Box(a) => self.tau0.co_derived_mask(self.eval_mask(a, val)),
            Formula::Dia(a) => self.tau0.derived_mask(self.eval_mask(a, val)),
            Formula::Rhd(a, b) => self.e_mask(self.eval_mask(a, val), self.eval_mask(b, val)),
        }
    }

    /// Truth set of `f` under `v`.
    pub fn eval(&self, v: &Valuation, f: &Formula) -> Result<Subset> {
        v.check_width(self.size())?;
        let vars = f.variables();
        let mut table = Vec::with_capacity(vars.len());
        for &var in &vars {
            table.push((var, v.get(var)?.bits()));
        }
        let lookup = |var: u32| -> u32 {
            table
                .iter()
                .find(|(k, _)| *k == var)
                .map(|(_, m)| *m)
                .unwrap_or(0)
        };
        Ok(Subset::from_bits(self.size(), self.eval_mask(f, &lookup)))
    }

    /// First valuation (in enumeration order) whose truth set for `f` is not
    /// the whole carrier, with that truth set.
    pub fn falsifying_valuation(&self, f: &Formula) -> Result<Option<(Valuation, Subset)>> {
        let vars: Vec<u32> = f.variables().into_iter().collect();
        let n = self.size();
        let bits = valuation_bits(vars.len(), n)?;
        let full = full_mask(n);
        let total = 1usize << bits;
        let falsified = |index: usize| -> bool {
            let lookup = |var: u32| -> u32 {
                let i = vars.iter().position(|&v| v == var).unwrap_or(0);
                (index >> (i * n)) as u32 & full
            };
            self.eval_mask(f, &lookup) != full
        };
        let found = if total >= PARALLEL_THRESHOLD {
            (0..total).into_par_iter().find_first(|&i| falsified(i))
        } else {
            (0..total).find(|&i| falsified(i))
        };
        match found {
            None => Ok(None),
            Some(index) => {
                let v = Valuation::decode(&vars, n, index as u64);
                let truth = self.eval(&v, f)?;
                Ok(Some((v, truth)))
            }
        }
    }

    /// True iff `f` denotes the whole carrier under every valuation of its
    /// variables.
    pub fn is_valid(&self, f: &Formula) -> Result<bool> {
        Ok(self.falsifying_valuation(f)?.is_none())
    }

    /// A bitopological space is a CL-space iff `tau0` is scattered.
    pub fn is_cl_space(&self) -> bool {
        self.tau0.is_scattered()
    }

    pub fn il_char_clauses(&self) -> Result<IlClauses> {
        if !self.is_cl_space() {
            return Err(Error::NotClSpace);
        }
        let n = self.size();
        if n > IL_CHAR_MAX_POINTS {
            return Err(Error::TooLarge(format!(
                "IL characterization quantifies over 2^{n} subsets (limit {IL_CHAR_MAX_POINTS} points)"
            )));
        }
        let d = |y: u32| self.tau0.derived_mask(y);
        let full = full_mask(n);
        let c1 = self.is_valid(&Schema::get("J5")?.instance())?;
        let c2 = self.tau1.open_masks().iter().all(|&u| {
            (0..=full).all(|y| d(d(y) & u) & !d(y & u) == 0)
        });
        let c3 = self.clause3();
        let c4 = self.tau1.open_masks().iter().all(|&u| {
            self.tau0
                .open_masks()
                .iter()
                .any(|&v| v & !u == 0 && d(u & !v) == 0)
        });
        Ok(IlClauses { c1, c2, c3, c4 })
    }

    fn clause3(&self) -> bool {
        let full = full_mask(self.size());
        let d = |y: u32| self.tau0.derived_mask(y);
        self.tau1
            .open_masks()
            .iter()
            .all(|&u| d(d(!u & full) & u) == 0)
    }

    /// IL-space test for CL-spaces: `d0(d0(X∖U) ∩ U) = ∅` for every `U ∈ tau1`.
    pub fn is_il_space(&self) -> Result<bool> {
        if !self.is_cl_space() {
            return Err(Error::NotClSpace);
        }
        Ok(self.clause3())
    }

    /// `{V ∈ tau0 | ∃U ∈ tau1: V ⊆ U and d0(U∖V) = ∅}`.
    ///
    /// On an IL-space, replacing `tau1` by this topology leaves every e-set
    /// unchanged, and `tau0 ∩ tau1 ⊆ tau2 ⊆ tau0`.
    pub fn tau2(&self) -> Result<FiniteSpace> {
        let n = self.size();
        let opens: Vec<Subset> = self
            .tau0
            .open_masks()
            .iter()
            .copied()
            .filter(|&v| {
                self.tau1
                    .open_masks()
                    .iter()
                    .any(|&u| v & !u == 0 && self.tau0.derived_mask(u & !v) == 0)
            })
            .map(|v| Subset::from_bits(n, v))
            .collect();
        FiniteSpace::from_opens(n, &opens)
            .map_err(|e| Error::Internal(format!("tau2 is not a topology: {e}")))
    }

    /// The same `tau0` with `tau1` replaced.
    pub fn with_tau1(&self, tau1: FiniteSpace) -> Result<BitopSpace> {
        BitopSpace::new(self.tau0.clone(), tau1)
    }
}

/// Every bitopological space on `size ≤ 4` points.
pub fn all_bitop_spaces(size: usize) -> Vec<BitopSpace> {
    let tops = crate::topology::all_topologies(size);
    let mut out = Vec::with_capacity(tops.len() * tops.len());
    for t0 in &tops {
        for t1 in &tops {
            out.push(BitopSpace {
                tau0: t0.clone(),
                tau1: t1.clone(),
            });
        }
    }
    out
}
