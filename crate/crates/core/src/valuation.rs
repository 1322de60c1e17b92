use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::subset::{full_mask, Subset};

/// Assignment of subsets of the carrier to propositional variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Valuation(BTreeMap<u32, Subset>);

impl Valuation {
    pub fn new() -> Self {
        Valuation(BTreeMap::new())
    }

    pub fn with(mut self, var: u32, value: Subset) -> Self {
        self.0.insert(var, value);
        self
    }

    pub fn set(&mut self, var: u32, value: Subset) {
        self.0.insert(var, value);
    }

    pub fn get(&self, var: u32) -> Result<Subset> {
        self.0.get(&var).copied().ok_or(Error::UnboundVariable(var))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, Subset)> + '_ {
        self.0.iter().map(|(&v, &s)| (v, s))
    }

    pub fn variables(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.keys().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Errors unless every value is a subset of a carrier of `size` points.
    pub fn check_width(&self, size: usize) -> Result<()> {
        self.0.values().try_for_each(|s| s.check_width(size).map(|_| ()))
    }

    /// Decodes the `index`-th valuation of `vars` over `size` points: variable
    /// `vars[i]` reads bits `i·size .. (i+1)·size` of `index`.
    pub(crate) fn decode(vars: &[u32], size: usize, index: u64) -> Valuation {
        let mask = full_mask(size) as u64;
        Valuation(
            vars.iter()
                .enumerate()
                .map(|(i, &v)| {
                    let bits = (index >> (i * size)) & mask;
                    (v, Subset::from_bits(size, bits as u32))
                })
                .collect(),
        )
    }
}

impl FromIterator<(u32, Subset)> for Valuation {
    fn from_iter<I: IntoIterator<Item = (u32, Subset)>>(iter: I) -> Self {
        Valuation(iter.into_iter().collect())
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, s)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "p{v} = {s}")?;
        }
        Ok(())
    }
}

/// Largest number of valuation bits (`variables × points`) any exhaustive
/// check will enumerate.
pub const MAX_VALUATION_BITS: usize = 24;

pub(crate) fn valuation_bits(vars: usize, size: usize) -> Result<usize> {
    let bits = vars * size;
    if bits > MAX_VALUATION_BITS {
        Err(Error::TooLarge(format!(
            "{vars} variables over {size} points need 2^{bits} valuations (limit 2^{MAX_VALUATION_BITS})"
        )))
    } else {
        Ok(bits)
    }
}
