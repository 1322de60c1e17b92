//! Brute-force reference implementations. These work only from explicit
//! lists of open sets and the textbook definitions, never from the
//! library's minimal-neighbourhood shortcuts.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use clspace_core::{FiniteSpace, Formula, Relation, Valuation};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Seed from `CLSPACE_SEED`, or the pinned default.
pub fn seed() -> u64 {
    std::env::var("CLSPACE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn full(n: usize) -> u32 {
    ((1u64 << n) - 1) as u32
}

pub fn opens_of(t: &FiniteSpace) -> Vec<u32> {
    t.opens().map(|u| u.bits()).collect()
}

/// `x ∈ d(Y)` iff every open `U ∋ x` meets `Y` outside `x`.
pub fn derived(n: usize, opens: &[u32], y: u32) -> u32 {
    (0..n)
        .filter(|&x| {
            opens
                .iter()
                .filter(|&&u| u >> x & 1 == 1)
                .all(|&u| u & y & !(1 << x) != 0)
        })
        .fold(0, |acc, x| acc | 1 << x)
}

/// Every nonempty subset has a point isolated in it: some open meets the
/// subset in exactly that point.
pub fn scattered(n: usize, opens: &[u32]) -> bool {
    (1..=full(n)).all(|a| opens.iter().any(|&u| (u & a).count_ones() == 1))
}

/// The e-operator straight from its definition.
pub fn e_def(n: usize, opens0: &[u32], opens1: &[u32], y: u32, z: u32) -> u32 {
    (0..n)
        .filter(|&x| {
            opens1.iter().all(|&u| {
                derived(n, opens0, y & u) >> x & 1 == 0 || derived(n, opens0, z & u) >> x & 1 == 1
            })
        })
        .fold(0, |acc, x| acc | 1 << x)
}

pub fn eval(n: usize, opens0: &[u32], opens1: &[u32], val: &BTreeMap<u32, u32>, f: &Formula) -> u32 {
    let go = |g: &Formula| eval(n, opens0, opens1, val, g);
    let all = full(n);
    match f {
        Formula::Var(i) => val[i],
        Formula::Top => all,
        Formula::Bot => 0,
        Formula::Neg(a) => !go(a) & all,
        Formula::And(a, b) => go(a) & go(b),
        Formula::Or(a, b) => go(a) | go(b),
        Formula::Imp(a, b) => (!go(a) | go(b)) & all,
        Formula::Box(a) => !derived(n, opens0, !go(a) & all) & all,
        Formula::Dia(a) => derived(n, opens0, go(a)),
        Formula::Rhd(a, b) => e_def(n, opens0, opens1, go(a), go(b)),
    }
}

pub fn valuation_map(v: &Valuation) -> BTreeMap<u32, u32> {
    v.iter().map(|(i, s)| (i, s.bits())).collect()
}

/// Validity by evaluating under every valuation of the formula's variables.
pub fn valid(n: usize, opens0: &[u32], opens1: &[u32], f: &Formula) -> bool {
    let vars: Vec<u32> = f.variables().into_iter().collect();
    let count = 1u64 << (vars.len() * n);
    (0..count).all(|index| {
        let val: BTreeMap<u32, u32> = vars
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, (index >> (i * n)) as u32 & full(n)))
            .collect();
        eval(n, opens0, opens1, &val, f) == full(n)
    })
}

/// Closes a family under pairwise union and intersection until nothing new
/// appears, starting from the generators plus `∅` and the carrier.
pub fn closure_fixpoint(n: usize, gens: &[u32]) -> BTreeSet<u32> {
    let mut family: BTreeSet<u32> = gens.iter().copied().collect();
    family.insert(0);
    family.insert(full(n));
    loop {
        let current: Vec<u32> = family.iter().copied().collect();
        let mut grown = false;
        for &a in &current {
            for &b in &current {
                grown |= family.insert(a & b);
                grown |= family.insert(a | b);
            }
        }
        if !grown {
            return family;
        }
    }
}

pub fn is_topology(n: usize, family: &BTreeSet<u32>) -> bool {
    family.contains(&0)
        && family.contains(&full(n))
        && family
            .iter()
            .all(|&a| family.iter().all(|&b| family.contains(&(a & b)) && family.contains(&(a | b))))
}

/// Subsets closed upward along `r`.
pub fn upsets(n: usize, r: &Relation) -> BTreeSet<u32> {
    (0..=full(n))
        .filter(|&u| r.pairs().iter().all(|&(x, y)| u >> x & 1 == 0 || u >> y & 1 == 1))
        .collect()
}

/// The four IL-space conditions, each straight from its statement.
pub fn il_clauses(n: usize, opens0: &[u32], opens1: &[u32]) -> [bool; 4] {
    let d = |y: u32| derived(n, opens0, y);
    let j5 = clspace_core::parse("<>p0 |> p0").unwrap();
    let c1 = valid(n, opens0, opens1, &j5);
    let c2 = opens1
        .iter()
        .all(|&u| (0..=full(n)).all(|y| d(d(y) & u) & !d(y & u) == 0));
    let c3 = opens1.iter().all(|&u| d(d(!u & full(n)) & u) == 0);
    let c4 = opens1
        .iter()
        .all(|&u| opens0.iter().any(|&v| v & !u == 0 && d(u & !v) == 0));
    [c1, c2, c3, c4]
}
