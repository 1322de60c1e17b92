//! Seeded random objects for property tests, benchmarks and the
//! acceptance harness. All generators draw from a caller-supplied RNG, so
//! a fixed `ChaCha8Rng` seed reproduces every run.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitopology::BitopSpace;
use crate::bouquet::BouquetSpec;
use crate::formula::Formula;
use crate::frames::VisserFrame;
use crate::relation::Relation;
use crate::subset::{full_mask, Subset};
use crate::topology::FiniteSpace;
use crate::valuation::Valuation;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A formula over `p0..p{vars-1}` of depth at most `depth`.
pub fn formula<R: Rng>(rng: &mut R, vars: u32, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..10) {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => Formula::Var(rng.gen_range(0..vars.max(1))),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..9) {
        0 => Formula::neg(formula(rng, vars, d)),
        1 => Formula::and(formula(rng, vars, d), formula(rng, vars, d)),
        2 => Formula::or(formula(rng, vars, d), formula(rng, vars, d)),
        3 => Formula::imp(formula(rng, vars, d), formula(rng, vars, d)),
        4 => Formula::boxed(formula(rng, vars, d)),
        5 => Formula::dia(formula(rng, vars, d)),
        _ => Formula::rhd(formula(rng, vars, d), formula(rng, vars, d)),
    }
}

/// The topology generated by a few random subsets.
pub fn topology<R: Rng>(rng: &mut R, size: usize) -> FiniteSpace {
    let count = rng.gen_range(0..=size + 1);
    let gens: Vec<Subset> = (0..count)
        .map(|_| Subset::from_bits(size, rng.gen::<u32>() & full_mask(size)))
        .collect();
    FiniteSpace::generate(size, &gens).expect("generators share the carrier")
}

/// A random strict order: random forward edges along a shuffled ranking,
/// transitively closed.
pub fn strict_order<R: Rng>(rng: &mut R, size: usize) -> Relation {
    let mut rank: Vec<usize> = (0..size).collect();
    rank.shuffle(rng);
    let density = rng.gen_range(0.0..0.8);
    let mut pairs = Vec::new();
    for i in 0..size {
        for j in i + 1..size {
            if rng.gen_bool(density) {
                pairs.push((rank[i], rank[j]));
            }
        }
    }
    Relation::from_pairs(size, pairs)
        .expect("points are in range")
        .transitive_closure()
}

/// A random preorder: reflexive-transitive closure of random edges.
pub fn preorder<R: Rng>(rng: &mut R, size: usize) -> Relation {
    let density = rng.gen_range(0.0..0.5);
    let mut pairs = Vec::new();
    for i in 0..size {
        for j in 0..size {
            if i != j && rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    Relation::from_pairs(size, pairs)
        .expect("points are in range")
        .reflexive_transitive_closure()
}

/// A scattered topology: up-sets of a random strict order.
pub fn scattered_topology<R: Rng>(rng: &mut R, size: usize) -> FiniteSpace {
    FiniteSpace::upsets(&strict_order(rng, size)).expect("size within bounds")
}

pub fn bitop_space<R: Rng>(rng: &mut R, size: usize) -> BitopSpace {
    BitopSpace::new(topology(rng, size), topology(rng, size)).expect("same carrier")
}

/// Scattered `τ⁰`, arbitrary `τ¹`.
pub fn cl_space<R: Rng>(rng: &mut R, size: usize) -> BitopSpace {
    BitopSpace::new(scattered_topology(rng, size), topology(rng, size)).expect("same carrier")
}

pub fn visser_frame<R: Rng>(rng: &mut R, size: usize) -> VisserFrame {
    let r = strict_order(rng, size);
    let mut s = preorder(rng, size);
    if rng.gen_bool(0.3) {
        s = Relation::from_successors(
            (0..size).map(|x| s.successor_mask(x) | r.successor_mask(x)).collect(),
        )
        .reflexive_transitive_closure();
    }
    VisserFrame::new(r, s).expect("generated relations satisfy the frame conditions")
}

pub fn valuation<R: Rng>(rng: &mut R, vars: u32, size: usize) -> Valuation {
    (0..vars)
        .map(|v| (v, Subset::from_bits(size, rng.gen::<u32>() & full_mask(size))))
        .collect()
}

/// Up to `max_components` CL-spaces of up to `max_points` points, a random
/// basepoint in each, and a random open `Yₙ = M(xₙ) ∪ V` with `xₙ ∉ V`.
pub fn bouquet_spec<R: Rng>(rng: &mut R, max_components: usize, max_points: usize) -> BouquetSpec {
    let count = rng.gen_range(1..=max_components);
    let mut components = Vec::with_capacity(count);
    let mut basepoints = Vec::with_capacity(count);
    let mut nbhds = Vec::with_capacity(count);
    for _ in 0..count {
        let size = rng.gen_range(1..=max_points);
        let c = cl_space(rng, size);
        let x = rng.gen_range(0..size);
        let avoiding: Vec<Subset> = c.tau0().opens().filter(|u| !u.contains(x)).collect();
        let extra = *avoiding.choose(rng).expect("the empty set avoids x");
        let y = c.tau0().minimal_open(x).expect("x in range").union(extra);
        components.push(c);
        basepoints.push(x);
        nbhds.push(y);
    }
    let k = rng.gen_range(0..count);
    BouquetSpec::new(components, basepoints, Some(nbhds), k).expect("generated spec is valid")
}
