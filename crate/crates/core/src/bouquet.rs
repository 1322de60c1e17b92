//! Finite bouquets of CL-spaces glued at a common point.
//!
//! Each component `⟨Xₙ, τ⁰ₙ, τ¹ₙ⟩` contributes `Xₙ ∖ {xₙ}`; all basepoints
//! are identified with a fresh point `x*`. The ultrafilter on the finite
//! index set is principal at `k`, so "a set of indices in 𝒰" reads
//! "contains `k`".

use std::fmt;

use rayon::prelude::*;

use crate::bitopology::BitopSpace;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::subset::{full_mask, Subset, MAX_POINTS};
use crate::topology::FiniteSpace;
use crate::valuation::Valuation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BouquetSpec {
    components: Vec<BitopSpace>,
    basepoints: Vec<usize>,
    punctured_nbhds: Vec<Subset>,
    ultrafilter_index: usize,
}

impl BouquetSpec {
    /// With `punctured_nbhds = None` each `Yₙ` is the minimal `τ⁰ₙ`-open
    /// around the basepoint.
    pub fn new(
        components: Vec<BitopSpace>,
        basepoints: Vec<usize>,
        punctured_nbhds: Option<Vec<Subset>>,
        ultrafilter_index: usize,
    ) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidBouquet("no components".into()));
        }
        if basepoints.len() != components.len() {
            return Err(Error::InvalidBouquet(format!(
                "{} components but {} basepoints",
                components.len(),
                basepoints.len()
            )));
        }
        if ultrafilter_index >= components.len() {
            return Err(Error::InvalidBouquet(format!(
                "ultrafilter index {ultrafilter_index} with {} components",
                components.len()
            )));
        }
        for (n, (c, &x)) in components.iter().zip(&basepoints).enumerate() {
            if !c.tau0().is_scattered() {
                return Err(Error::InvalidBouquet(format!("component {n} is not scattered")));
            }
            if x >= c.size() {
                return Err(Error::InvalidBouquet(format!(
                    "basepoint {x} outside component {n} of size {}",
                    c.size()
                )));
            }
        }
        let nbhds = match punctured_nbhds {
            Some(ys) => ys,
            None => components
                .iter()
                .zip(&basepoints)
                .map(|(c, &x)| c.tau0().punctured_neighborhood(x))
                .collect::<Result<_>>()?,
        };
        if nbhds.len() != components.len() {
            return Err(Error::InvalidBouquet(format!(
                "{} components but {} neighbourhoods",
                components.len(),
                nbhds.len()
            )));
        }
        for (n, ((c, &x), &y)) in components.iter().zip(&basepoints).zip(&nbhds).enumerate() {
            let y = y.check_width(c.size())?;
            if !y.contains(x) || !c.tau0().is_open(y) || !c.tau0().is_open(y.without(x)) {
                return Err(Error::InvalidBouquet(format!(
                    "{y} is not a punctured open neighbourhood of {x} in component {n}"
                )));
            }
        }
        let carrier = 1 + components.iter().map(|c| c.size() - 1).sum::<usize>();
        if carrier > MAX_POINTS {
            return Err(Error::TooLarge(format!(
                "bouquet carrier has {carrier} points, the limit is {MAX_POINTS}"
            )));
        }
        Ok(BouquetSpec {
            components,
            basepoints,
            punctured_nbhds: nbhds,
            ultrafilter_index,
        })
    }

    pub fn components(&self) -> &[BitopSpace] {
        &self.components
    }

    pub fn basepoints(&self) -> &[usize] {
        &self.basepoints
    }

    pub fn punctured_nbhds(&self) -> &[Subset] {
        &self.punctured_nbhds
    }

    pub fn ultrafilter_index(&self) -> usize {
        self.ultrafilter_index
    }
}

/// Where a bouquet point comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BouquetPoint {
    Star,
    Component { index: usize, point: usize },
}

impl fmt::Display for BouquetPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BouquetPoint::Star => f.write_str("*"),
            BouquetPoint::Component { index, point } => write!(f, "{point}@{index}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BouquetSpace {
    pub space: BitopSpace,
    /// Carrier index of `x*` (always the last point).
    pub star: usize,
    pub component_map: Vec<BouquetPoint>,
    spec: BouquetSpec,
    /// `embed[n][p]`: carrier index of point `p` of component `n`; the
    /// basepoint goes to `x*`.
    embed: Vec<Vec<usize>>,
}

pub fn build(spec: &BouquetSpec) -> Result<BouquetSpace> {
    let mut component_map = Vec::new();
    let mut embed = Vec::with_capacity(spec.components.len());
    for (n, c) in spec.components.iter().enumerate() {
        let mut row = Vec::with_capacity(c.size());
        for p in 0..c.size() {
            if p == spec.basepoints[n] {
                row.push(usize::MAX);
            } else {
                row.push(component_map.len());
                component_map.push(BouquetPoint::Component { index: n, point: p });
            }
        }
        embed.push(row);
    }
    let star = component_map.len();
    component_map.push(BouquetPoint::Star);
    for row in &mut embed {
        for i in row.iter_mut().filter(|i| **i == usize::MAX) {
            *i = star;
        }
    }
    let size = component_map.len();

    let k = spec.ultrafilter_index;
    let tau0: Vec<Subset> = (0..=full_mask(size))
        .into_par_iter()
        .filter(|&u| {
            let clause_i = spec.components.iter().enumerate().all(|(n, c)| {
                let y = spec.punctured_nbhds[n].without(spec.basepoints[n]).bits();
                c.tau0().is_open_mask(restrict(&embed, u, n) & y)
            });
            let clause_ii = u >> star & 1 == 0 || {
                let c = &spec.components[k];
                c.tau0().is_open_mask(restrict(&embed, u, k) & spec.punctured_nbhds[k].bits())
            };
            clause_i && clause_ii
        })
        .map(|u| Subset::from_bits(size, u))
        .collect();
    let tau1: Vec<Subset> = (0..=full_mask(size))
        .into_par_iter()
        .filter(|&u| {
            spec.components
                .iter()
                .enumerate()
                .all(|(n, c)| c.tau1().is_open_mask(restrict(&embed, u, n)))
        })
        .map(|u| Subset::from_bits(size, u))
        .collect();
    let tau0 = FiniteSpace::from_opens(size, &tau0)
        .map_err(|e| Error::Internal(format!("bouquet τ⁰: {e}")))?;
    let tau1 = FiniteSpace::from_opens(size, &tau1)
        .map_err(|e| Error::Internal(format!("bouquet τ¹: {e}")))?;
    Ok(BouquetSpace {
        space: BitopSpace::new(tau0, tau1)?,
        star,
        component_map,
        spec: spec.clone(),
        embed,
    })
}

/// `U ↾ Xₙ = ((U ∖ {x*}) ∪ {xₙ if x* ∈ U}) ∩ Xₙ` in component coordinates.
fn restrict(embed: &[Vec<usize>], u: u32, n: usize) -> u32 {
    embed[n]
        .iter()
        .enumerate()
        .fold(0, |acc, (p, &i)| if u >> i & 1 == 1 { acc | 1 << p } else { acc })
}

impl BouquetSpace {
    pub fn spec(&self) -> &BouquetSpec {
        &self.spec
    }

    pub fn size(&self) -> usize {
        self.space.size()
    }

    /// Carrier index of a component point (`x*` for the basepoint).
    pub fn embed(&self, component: usize, point: usize) -> usize {
        self.embed[component][point]
    }

    /// `Y = ⋃ₙ (Yₙ ∖ {xₙ}) ∪ {x*}`.
    pub fn core(&self) -> Subset {
        let mut y = Subset::singleton(self.size(), self.star);
        for (n, yn) in self.spec.punctured_nbhds.iter().enumerate() {
            for p in yn.iter() {
                y = y.with(self.embed[n][p]);
            }
        }
        y
    }

    /// Component valuations glued together; `x* ∈ v(p)` iff `x_k ∈ v_k(p)`.
    pub fn lift_valuation(&self, vals: &[Valuation]) -> Result<Valuation> {
        check_valuations(&self.spec, vals)?;
        let size = self.size();
        let k = self.spec.ultrafilter_index;
        let mut out = Valuation::new();
        for var in vals[0].variables() {
            let mut set = Subset::empty(size);
            for (n, v) in vals.iter().enumerate() {
                let xn = self.spec.basepoints[n];
                for p in v.get(var)?.iter() {
                    if p != xn || n == k {
                        set = set.with(self.embed[n][p]);
                    }
                }
            }
            out.set(var, set);
        }
        Ok(out)
    }

    /// For every `n` and `x ∈ Yₙ ∖ {xₙ}`: `x ∈ v(φ)` iff `x ∈ vₙ(φ)`.
    pub fn truth_lemma_components(&self, vals: &[Valuation], f: &Formula) -> Result<bool> {
        let lifted = self.space.eval(&self.lift_valuation(vals)?, f)?;
        for (n, c) in self.spec.components.iter().enumerate() {
            let local = c.eval(&vals[n], f)?;
            let xn = self.spec.basepoints[n];
            for p in self.spec.punctured_nbhds[n].without(xn).iter() {
                if lifted.contains(self.embed[n][p]) != local.contains(p) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `x* ∈ v(φ)` iff `x_k ∈ v_k(φ)`.
    pub fn truth_lemma_star(&self, vals: &[Valuation], f: &Formula) -> Result<bool> {
        let lifted = self.space.eval(&self.lift_valuation(vals)?, f)?;
        let k = self.spec.ultrafilter_index;
        let local = self.spec.components[k].eval(&vals[k], f)?;
        Ok(lifted.contains(self.star) == local.contains(self.spec.basepoints[k]))
    }

    /// Every subset of `X ∖ Y` is `τ⁰`-open.
    pub fn outside_core_is_discrete(&self) -> bool {
        let outside = self.core().complement().bits();
        // enumerate submasks of `outside`
        let mut u = outside;
        loop {
            if !self.space.tau0().is_open_mask(u) {
                return false;
            }
            if u == 0 {
                return true;
            }
            u = (u - 1) & outside;
        }
    }

    /// Points of `X ∖ Y` are isolated and satisfy `□⊥`.
    pub fn dead_end_check(&self, vals: &[Valuation]) -> Result<bool> {
        let v = self.lift_valuation(vals)?;
        let box_bot = self.space.eval(&v, &Formula::boxed(Formula::Bot))?;
        let size = self.size();
        Ok(self.core().complement().iter().all(|x| {
            self.space.tau0().is_open(Subset::singleton(size, x)) && box_bot.contains(x)
        }))
    }

    /// `None` if `φ` fails in some component, otherwise whether it holds
    /// on the bouquet.
    pub fn preserves_validity(&self, f: &Formula) -> Result<Option<bool>> {
        for c in &self.spec.components {
            if !c.is_valid(f)? {
                return Ok(None);
            }
        }
        Ok(Some(self.space.is_valid(f)?))
    }
}

fn check_valuations(spec: &BouquetSpec, vals: &[Valuation]) -> Result<()> {
    if vals.len() != spec.components.len() {
        return Err(Error::InvalidBouquet(format!(
            "{} components but {} valuations",
            spec.components.len(),
            vals.len()
        )));
    }
    let vars: Vec<u32> = vals[0].variables().collect();
    for (n, v) in vals.iter().enumerate() {
        v.check_width(spec.components[n].size())?;
        if !v.variables().eq(vars.iter().copied()) {
            return Err(Error::InvalidBouquet(format!(
                "valuation {n} binds different variables from valuation 0"
            )));
        }
    }
    Ok(())
}

pub fn lift_valuation(spec: &BouquetSpec, vals: &[Valuation]) -> Result<Valuation> {
    build(spec)?.lift_valuation(vals)
}

pub fn verify_truth_lemma_components(spec: &BouquetSpec, vals: &[Valuation], f: &Formula) -> Result<bool> {
    build(spec)?.truth_lemma_components(vals, f)
}

pub fn verify_truth_lemma_star(spec: &BouquetSpec, vals: &[Valuation], f: &Formula) -> Result<bool> {
    build(spec)?.truth_lemma_star(vals, f)
}

pub fn dead_end_check(spec: &BouquetSpec, vals: &[Valuation]) -> Result<bool> {
    build(spec)?.dead_end_check(vals)
}
