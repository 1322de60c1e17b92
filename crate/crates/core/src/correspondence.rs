//! Visser frames and finite bitopological spaces, in both directions.
//!
//! A frame `(W, R, S)` goes to `(W, τ_R, τ_S)` with up-set topologies. A
//! space with scattered `τ⁰` goes back via specialization: `x R y` iff
//! `x ∈ d_{τ⁰}({y})`, and `x S y` iff every `τ¹`-open containing `x`
//! contains `y`. Comparisons are structural, on the same carrier indices.

use crate::bitopology::BitopSpace;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::frames::{is_valid_on_frame, VisserFrame};
use crate::topology::FiniteSpace;

pub fn frame_to_space(frame: &VisserFrame) -> BitopSpace {
    let tau0 = FiniteSpace::upsets(frame.r()).expect("frame carrier is within bounds");
    let tau1 = FiniteSpace::upsets(frame.s()).expect("frame carrier is within bounds");
    BitopSpace::new(tau0, tau1).expect("both topologies share the frame carrier")
}

pub fn space_to_frame(space: &BitopSpace) -> Result<VisserFrame> {
    if !space.tau0().is_scattered() {
        return Err(Error::NotScattered);
    }
    let r = space.tau0().specialization_relation();
    let s = space.tau1().specialization_preorder();
    VisserFrame::new(r, s)
        .map_err(|e| Error::Internal(format!("specialization of a scattered space: {e}")))
}

/// `frame_to_space(space_to_frame(space)) == space`.
pub fn check_roundtrip(space: &BitopSpace) -> Result<bool> {
    let frame = space_to_frame(space)?;
    Ok(frame_to_space(&frame) == *space)
}

/// `space_to_frame(frame_to_space(frame)) == frame`.
pub fn check_frame_roundtrip(frame: &VisserFrame) -> bool {
    space_to_frame(&frame_to_space(frame)).as_ref() == Ok(frame)
}

/// Whether frame validity and space validity give the same verdict on each
/// formula.
pub fn logic_agreement_sample(frame: &VisserFrame, formulas: &[Formula]) -> Result<bool> {
    let space = frame_to_space(frame);
    for f in formulas {
        if is_valid_on_frame(frame, f)? != space.is_valid(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}
