//! Topologies on finite carriers.
//!
//! Every finite topology is Alexandroff, so each point `x` has a smallest
//! open neighbourhood `M(x)`. The space caches these and answers derived-set
//! queries from them: `x ∈ d(Y)` iff `(M(x) ∩ Y) ∖ {x}` is nonempty.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::subset::{full_mask, Subset, MAX_POINTS};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    size: usize,
    /// Sorted, deduplicated open sets as bitmasks.
    opens: Vec<u32>,
    minimal: Vec<u32>,
}

fn check_size(size: usize) -> Result<()> {
    if size == 0 || size > MAX_POINTS {
        Err(Error::BadCarrier(size))
    } else {
        Ok(())
    }
}

/// Opens of the topology whose minimal neighbourhoods are `minimal`:
/// exactly the sets containing `M(x)` for each of their points.
fn opens_from_minimal(size: usize, minimal: &[u32]) -> Vec<u32> {
    (0..=full_mask(size))
        .filter(|&u| {
            let mut rest = u;
            while rest != 0 {
                let x = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if minimal[x] & !u != 0 {
                    return false;
                }
            }
            true
        })
        .collect()
}

impl FiniteSpace {
    fn from_minimal(size: usize, minimal: Vec<u32>) -> Self {
        let opens = opens_from_minimal(size, &minimal);
        FiniteSpace {
            size,
            opens,
            minimal,
        }
    }

    /// Smallest topology containing every generator.
    ///
    /// The basis generated by a finite subbasis is closed under finite
    /// intersection, so the minimal neighbourhood of `x` is the intersection
    /// of the generators containing it, and the opens are the unions of
    /// these.
    pub fn generate(size: usize, generators: &[Subset]) -> Result<Self> {
        check_size(size)?;
        for g in generators {
            g.check_width(size)?;
        }
        let minimal = (0..size)
            .map(|x| {
                generators
                    .iter()
                    .filter(|g| g.contains(x))
                    .fold(full_mask(size), |acc, g| acc & g.bits())
            })
            .collect();
        Ok(Self::from_minimal(size, minimal))
    }

    /// Validates an explicit family of opens.
    pub fn from_opens(size: usize, opens: &[Subset]) -> Result<Self> {
        check_size(size)?;
        let mut family = BTreeSet::new();
        for u in opens {
            family.insert(u.check_width(size)?.bits());
        }
        let full = full_mask(size);
        if !family.contains(&0) {
            return Err(Error::NotATopology("the empty set is missing".into()));
        }
        if !family.contains(&full) {
            return Err(Error::NotATopology("the carrier is missing".into()));
        }
        // Every member contains the minimal neighbourhoods of its points, so
        // the family is a topology iff it is exactly the Alexandroff topology
        // those neighbourhoods generate.
        let minimal: Vec<u32> = (0..size)
            .map(|x| {
                family
                    .iter()
                    .filter(|&&u| u >> x & 1 == 1)
                    .fold(full, |acc, &u| acc & u)
            })
            .collect();
        for (x, &m) in minimal.iter().enumerate() {
            if !family.contains(&m) {
                return Err(Error::NotATopology(format!(
                    "the intersection {} of the opens containing {x} is not open",
                    Subset::from_bits(size, m)
                )));
            }
        }
        if let Some(&u) = opens_from_minimal(size, &minimal)
            .iter()
            .find(|u| !family.contains(u))
        {
            return Err(Error::NotATopology(format!(
                "the union {} of opens is not open",
                Subset::from_bits(size, u)
            )));
        }
        Ok(FiniteSpace {
            size,
            opens: family.into_iter().collect(),
            minimal,
        })
    }

    pub fn discrete(size: usize) -> Result<Self> {
        check_size(size)?;
        Ok(Self::from_minimal(size, (0..size).map(|x| 1 << x).collect()))
    }

    pub fn indiscrete(size: usize) -> Result<Self> {
        check_size(size)?;
        Ok(Self::from_minimal(size, vec![full_mask(size); size]))
    }

    /// The up-set topology: all `R`-upward closed subsets.
    pub fn upsets(relation: &Relation) -> Result<Self> {
        let size = relation.size();
        check_size(size)?;
        let closure = relation.reflexive_transitive_closure();
        let minimal = (0..size).map(|x| closure.successor_mask(x)).collect();
        Ok(Self::from_minimal(size, minimal))
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.size)
    }

    pub fn opens(&self) -> impl Iterator<Item = Subset> + '_ {
        self.opens.iter().map(|&u| Subset::from_bits(self.size, u))
    }

    pub fn open_count(&self) -> usize {
        self.opens.len()
    }

    pub(crate) fn open_masks(&self) -> &[u32] {
        &self.opens
    }

    pub fn is_open(&self, u: Subset) -> bool {
        self.opens.binary_search(&u.bits()).is_ok()
    }

    pub(crate) fn is_open_mask(&self, u: u32) -> bool {
        self.opens.binary_search(&u).is_ok()
    }

    /// `self ⊆ other` as families of opens.
    pub fn is_coarser_than(&self, other: &FiniteSpace) -> bool {
        self.size == other.size && self.opens.iter().all(|&u| other.is_open_mask(u))
    }

    #[inline]
    pub(crate) fn minimal_mask(&self, x: usize) -> u32 {
        self.minimal[x]
    }

    #[inline]
    pub(crate) fn derived_mask(&self, y: u32) -> u32 {
        let mut out = 0;
        for (x, &m) in self.minimal.iter().enumerate() {
            if m & y & !(1 << x) != 0 {
                out |= 1 << x;
            }
        }
        out
    }

    #[inline]
    pub(crate) fn co_derived_mask(&self, y: u32) -> u32 {
        let full = full_mask(self.size);
        !self.derived_mask(!y & full) & full
    }

    /// Points every neighbourhood of which meets `y` outside the point itself.
    pub fn derived_set(&self, y: Subset) -> Result<Subset> {
        y.check_width(self.size)?;
        Ok(Subset::from_bits(self.size, self.derived_mask(y.bits())))
    }

    /// `¬d(¬Y)`.
    pub fn co_derived_set(&self, y: Subset) -> Result<Subset> {
        y.check_width(self.size)?;
        Ok(Subset::from_bits(self.size, self.co_derived_mask(y.bits())))
    }

    /// Intersection of all opens containing `x`.
    pub fn minimal_open(&self, x: usize) -> Result<Subset> {
        self.check_point(x)?;
        Ok(Subset::from_bits(self.size, self.minimal[x]))
    }

    /// `x R y` iff `x ≠ y` and `y` lies in every open containing `x`.
    pub fn specialization_relation(&self) -> Relation {
        Relation::from_successors(
            self.minimal
                .iter()
                .enumerate()
                .map(|(x, &m)| m & !(1 << x))
                .collect(),
        )
    }

    /// Reflexive specialization preorder: `y ∈ M(x)`.
    pub fn specialization_preorder(&self) -> Relation {
        Relation::from_successors(self.minimal.clone())
    }

    /// Every nonempty subset has a point isolated in it. Decided as
    /// acyclicity of the specialization relation.
    pub fn is_scattered(&self) -> bool {
        self.specialization_relation().is_acyclic()
    }

    /// An open neighbourhood `Y` of `x` such that `Y ∖ {x}` is open too.
    /// Returns the minimal neighbourhood of `x`.
    pub fn punctured_neighborhood(&self, x: usize) -> Result<Subset> {
        self.check_point(x)?;
        if !self.is_scattered() {
            return Err(Error::NotScattered);
        }
        let y = self.minimal[x];
        if !self.is_open_mask(y & !(1 << x)) {
            return Err(Error::Internal(format!(
                "punctured minimal neighbourhood of {x} is not open in a scattered space"
            )));
        }
        Ok(Subset::from_bits(self.size, y))
    }

    fn check_point(&self, x: usize) -> Result<()> {
        if x < self.size {
            Ok(())
        } else {
            Err(Error::PointOutOfRange {
                point: x,
                size: self.size,
            })
        }
    }
}

impl std::fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.opens()).finish()
    }
}

/// Smallest topology on `size` points containing `generators`.
pub fn make_topology(size: usize, generators: &[Subset]) -> Result<FiniteSpace> {
    FiniteSpace::generate(size, generators)
}

/// The up-set topology of `relation`; convenience alias of [`FiniteSpace::upsets`].
pub fn upset_topology(relation: &Relation) -> Result<FiniteSpace> {
    FiniteSpace::upsets(relation)
}

/// All preorders on `size` points, in increasing code order.
pub fn preorders(size: usize) -> Vec<Relation> {
    relations_where(size, true, |r| r.is_transitive())
}

/// All strict partial orders (transitive, irreflexive, acyclic) on `size`
/// points, in increasing code order.
pub fn strict_orders(size: usize) -> Vec<Relation> {
    relations_where(size, false, |r| r.is_transitive() && r.is_acyclic())
}

/// Enumerates relations with the diagonal forced on (`reflexive`) or off,
/// over all off-diagonal patterns.
fn relations_where(size: usize, reflexive: bool, keep: impl Fn(&Relation) -> bool) -> Vec<Relation> {
    assert!((1..=5).contains(&size), "relation enumeration supports 1..=5 points");
    let off: Vec<(usize, usize)> = (0..size)
        .flat_map(|i| (0..size).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let diag: u32 = if reflexive {
        (0..size).fold(0, |acc, i| acc | 1 << (i * size + i))
    } else {
        0
    };
    let mut out: Vec<Relation> = (0u32..1 << off.len())
        .map(|pattern| {
            let code = off
                .iter()
                .enumerate()
                .filter(|(b, _)| pattern >> b & 1 == 1)
                .fold(diag, |acc, (_, &(i, j))| acc | 1 << (i * size + j));
            Relation::from_code(size, code)
        })
        .filter(|r| keep(r))
        .collect();
    out.sort_by_key(|r| r.code());
    out
}

/// Every topology on `size` points (one per preorder), `size ≤ 5`.
pub fn all_topologies(size: usize) -> Vec<FiniteSpace> {
    preorders(size)
        .iter()
        .map(|r| FiniteSpace::upsets(r).expect("size checked"))
        .collect()
}
