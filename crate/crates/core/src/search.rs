//! Bounded search over Visser frames and valuations.
//!
//! Frames are enumerated size by size; within a size, `R` runs over strict
//! orders and `S` over preorders, each ordered by (edge count, code) where
//! the code sets bit `i·n + j` for the pair `(i, j)`. Valuations run in
//! index order with the first variable in the low bits, and points in
//! ascending order. The reported witness is the first one in this order,
//! also when the frame stream is split across threads.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::frames::{properties, truth_mask, VisserFrame, VisserModel};
use crate::relation::Relation;
use crate::subset::{full_mask, Subset};
use crate::topology::{preorders, strict_orders};
use crate::valuation::{valuation_bits, Valuation};

pub const MAX_SEARCH_POINTS: usize = 5;

/// Frames handed to the thread pool at a time.
const BATCH: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrameClass {
    Cl,
    Clm,
    Il,
    Ilp,
    Ilw,
    /// `clm_cond` together with `R ⊆ S`.
    IlmCond,
}

impl FrameClass {
    pub const ALL: [FrameClass; 6] = [
        FrameClass::Cl,
        FrameClass::Clm,
        FrameClass::Il,
        FrameClass::Ilp,
        FrameClass::Ilw,
        FrameClass::IlmCond,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FrameClass::Cl => "CL",
            FrameClass::Clm => "CLM",
            FrameClass::Il => "IL",
            FrameClass::Ilp => "ILP",
            FrameClass::Ilw => "ILW",
            FrameClass::IlmCond => "ILM-cond",
        }
    }

    pub fn admits(self, frame: &VisserFrame) -> bool {
        let p = properties(frame);
        match self {
            FrameClass::Cl => true,
            FrameClass::Clm => p.clm_cond,
            FrameClass::Il => p.r_subset_s,
            FrameClass::Ilp => p.r_subset_s && p.ilp_cond,
            FrameClass::Ilw => p.r_subset_s && p.ilw_cond,
            FrameClass::IlmCond => p.r_subset_s && p.clm_cond,
        }
    }
}

impl fmt::Display for FrameClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FrameClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        FrameClass::ALL
            .into_iter()
            .find(|c| c.name().to_ascii_lowercase() == lower || (lower == "ilm" && *c == FrameClass::IlmCond))
            .ok_or_else(|| Error::UnknownClass(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    ValidUpTo(usize),
    Countermodel,
    Satisfiable,
    UnsatisfiableUpTo(usize),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::ValidUpTo(n) => write!(f, "Valid-up-to-{n}"),
            Verdict::Countermodel => f.write_str("Countermodel"),
            Verdict::Satisfiable => f.write_str("Satisfiable"),
            Verdict::UnsatisfiableUpTo(n) => write!(f, "Unsatisfiable-up-to-{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub model: VisserModel,
    pub point: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// Frames whose valuations were examined, up to and including the
    /// witness frame.
    pub frames_explored: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// `None`: dedup from 4 points on.
    pub dedup: Option<bool>,
}

impl SearchOptions {
    fn dedup_at(&self, n: usize) -> bool {
        self.dedup.unwrap_or(n >= 4)
    }
}

fn check_bound(n: usize) -> Result<()> {
    if (1..=MAX_SEARCH_POINTS).contains(&n) {
        Ok(())
    } else {
        Err(Error::TooLarge(format!(
            "frame search supports 1..={MAX_SEARCH_POINTS} points, got {n}"
        )))
    }
}

fn sorted(mut rels: Vec<Relation>) -> Vec<Relation> {
    rels.sort_by_key(|r| (r.edge_count(), r.code()));
    rels
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("suffix has a larger element");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// The lexicographically least `(R code, S code)` over all relabellings.
pub fn canonical_form(frame: &VisserFrame) -> VisserFrame {
    let best = permutations(frame.size())
        .into_iter()
        .map(|p| (frame.r().permuted(&p), frame.s().permuted(&p)))
        .min_by_key(|(r, s)| (r.code(), s.code()))
        .expect("at least the identity permutation");
    VisserFrame::new(best.0, best.1).expect("relabelling preserves the frame conditions")
}

pub fn are_isomorphic(a: &VisserFrame, b: &VisserFrame) -> bool {
    a.size() == b.size() && canonical_form(a) == canonical_form(b)
}

/// Every frame on `n` points admitted by `class`, in search order. With
/// `dedup` only the canonical representative of each isomorphism class is
/// produced.
pub fn enumerate_frames(
    n: usize,
    class: FrameClass,
    dedup: bool,
) -> Result<impl Iterator<Item = VisserFrame>> {
    check_bound(n)?;
    let perms = permutations(n);
    let rs: Vec<Relation> = sorted(strict_orders(n))
        .into_iter()
        .filter(|r| !dedup || perms.iter().all(|p| r.permuted(p).code() >= r.code()))
        .collect();
    let ss = sorted(preorders(n));
    Ok(rs.into_iter().flat_map(move |r| {
        let autos: Vec<Vec<usize>> = if dedup {
            perms.iter().filter(|p| r.permuted(p) == r).cloned().collect()
        } else {
            Vec::new()
        };
        ss.clone().into_iter().filter_map(move |s| {
            if dedup && autos.iter().any(|p| s.permuted(p).code() < s.code()) {
                return None;
            }
            let frame = VisserFrame::new(r.clone(), s).ok()?;
            class.admits(&frame).then_some(frame)
        })
    }))
}

/// Frames of one size, collapsing `S` when the query cannot see it.
fn frames_for_query(
    n: usize,
    class: FrameClass,
    dedup: bool,
    uses_s: bool,
) -> Result<Box<dyn Iterator<Item = VisserFrame>>> {
    let frames = enumerate_frames(n, class, dedup)?;
    if uses_s {
        return Ok(Box::new(frames));
    }
    let mut last_r: Option<Relation> = None;
    Ok(Box::new(frames.filter(move |f| {
        if last_r.as_ref() == Some(f.r()) {
            false
        } else {
            last_r = Some(f.r().clone());
            true
        }
    })))
}

/// First valuation index and point at which the query hits, in
/// enumeration order.
fn scan_valuations(frame: &VisserFrame, query: &Query<'_>) -> Option<(u64, usize)> {
    let n = frame.size();
    let full = full_mask(n);
    let vars = &query.vars;
    let bits = vars.len() * n;
    for index in 0..1u64 << bits {
        let lookup = |var: u32| -> u32 {
            let i = vars.iter().position(|&v| v == var).unwrap_or(0);
            (index >> (i * n)) as u32 & full
        };
        let points = query.hits(frame, &lookup);
        if points != 0 {
            return Some((index, points.trailing_zeros() as usize));
        }
    }
    None
}

struct Query<'a> {
    formulas: &'a [Formula],
    vars: Vec<u32>,
    uses_s: bool,
    /// Countermodel search looks for a refuting point, satisfaction for a
    /// point forcing every formula.
    refute: bool,
}

impl Query<'_> {
    fn hits(&self, frame: &VisserFrame, val: &dyn Fn(u32) -> u32) -> u32 {
        let full = full_mask(frame.size());
        let truth = self
            .formulas
            .iter()
            .fold(full, |acc, f| if acc == 0 { 0 } else { acc & truth_mask(frame, f, val) });
        if self.refute {
            !truth & full
        } else {
            truth
        }
    }
}

fn run(query: &Query<'_>, class: FrameClass, max_n: usize, opts: &SearchOptions) -> Result<SearchResult> {
    check_bound(max_n)?;
    valuation_bits(query.vars.len(), max_n)?;
    let mut explored = 0u64;
    for n in 1..=max_n {
        let mut frames = frames_for_query(n, class, opts.dedup_at(n), query.uses_s)?;
        loop {
            let batch: Vec<VisserFrame> = frames.by_ref().take(BATCH).collect();
            if batch.is_empty() {
                break;
            }
            let found = batch
                .par_iter()
                .enumerate()
                .find_map_first(|(i, f)| scan_valuations(f, query).map(|w| (i, w)));
            if let Some((i, (index, point))) = found {
                explored += i as u64 + 1;
                let frame = batch[i].clone();
                let valuation = Valuation::decode(&query.vars, n, index);
                let model = VisserModel::new(frame, valuation)?;
                recheck(&model, point, query)?;
                let verdict = if query.refute {
                    Verdict::Countermodel
                } else {
                    Verdict::Satisfiable
                };
                return Ok(SearchResult {
                    verdict,
                    witness: Some(Witness { model, point }),
                    frames_explored: explored,
                });
            }
            explored += batch.len() as u64;
        }
    }
    let verdict = if query.refute {
        Verdict::ValidUpTo(max_n)
    } else {
        Verdict::UnsatisfiableUpTo(max_n)
    };
    Ok(SearchResult {
        verdict,
        witness: None,
        frames_explored: explored,
    })
}

/// Pointwise forcing must agree with the bitmask evaluation that found the
/// witness.
fn recheck(model: &VisserModel, point: usize, query: &Query<'_>) -> Result<()> {
    let mut all = true;
    for f in query.formulas {
        all &= model.forces(point, f)?;
    }
    if all == query.refute {
        return Err(Error::Internal(format!(
            "witness at point {point} failed its re-check"
        )));
    }
    Ok(())
}

pub fn find_countermodel(f: &Formula, class: FrameClass, max_n: usize) -> Result<SearchResult> {
    find_countermodel_with(f, class, max_n, &SearchOptions::default())
}

pub fn find_countermodel_with(
    f: &Formula,
    class: FrameClass,
    max_n: usize,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    let formulas = std::slice::from_ref(f);
    let query = Query {
        formulas,
        vars: f.variables().into_iter().collect(),
        uses_s: f.contains_rhd(),
        refute: true,
    };
    run(&query, class, max_n, opts)
}

pub fn find_model(gamma: &[Formula], class: FrameClass, max_n: usize) -> Result<SearchResult> {
    find_model_with(gamma, class, max_n, &SearchOptions::default())
}

pub fn find_model_with(
    gamma: &[Formula],
    class: FrameClass,
    max_n: usize,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    let vars = gamma
        .iter()
        .flat_map(|f| f.variables())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let query = Query {
        formulas: gamma,
        vars,
        uses_s: gamma.iter().any(Formula::contains_rhd),
        refute: false,
    };
    run(&query, class, max_n, opts)
}

/// The witness model with one extra point that nothing sees and no
/// variable holds at.
pub fn pad_witness(model: &VisserModel) -> Result<VisserModel> {
    let frame = model.frame.with_isolated_point()?;
    let n = frame.size();
    let valuation = model
        .valuation
        .iter()
        .map(|(v, s)| (v, Subset::from_bits(n, s.bits())))
        .collect();
    VisserModel::new(frame, valuation)
}
