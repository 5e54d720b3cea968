//! Bounded decision procedures.
//!
//! Membership in the logic axiomatized by the `k`-th testability schema is
//! checked semantically: the schema characterizes frames of topwidth at most
//! `n` (the Sperner-minimal `n` for `k`), so a refutation on such a frame is
//! an unconditional non-membership certificate, while exhausting all frames
//! up to the size bound yields only a bounded validity claim — reported as
//! such, never as a theoremhood proof.

use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::kripke::{
    enumerate_frames, frame_validates, holds_in_frame, Countermodel, Frame, Validity,
};
use crate::sperner::min_topwidth_for;

/// Outcome of a bounded membership check.
#[derive(Debug, Clone)]
pub enum Verdict {
    /// No countermodel within the bounds; says nothing beyond them.
    ValidUpToBound {
        max_size: usize,
        topwidth_bound: usize,
        frames_checked: u64,
    },
    /// A re-verified countermodel; the formula is not in the logic.
    Refuted(Countermodel),
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }
}

/// Searches all rooted frames of topwidth at most `min_topwidth_for(k)` with
/// at most `max_size` worlds. The frame population is scanned in parallel;
/// the refutation on the earliest frame in enumeration order wins, and its
/// countermodel is recomputed on the exhaustive path so the reported witness
/// is the deterministic first one.
pub fn check_membership(f: &Formula, k: u64, max_size: usize, budget: &Budget) -> Result<Verdict> {
    let topwidth_bound = min_topwidth_for(k)? as usize;
    let frames = enumerate_frames(max_size, Some(topwidth_bound))?;
    let frames_checked = frames.len() as u64;
    match first_refuted_index(&frames, f, budget)? {
        None => Ok(Verdict::ValidUpToBound {
            max_size,
            topwidth_bound,
            frames_checked,
        }),
        Some(i) => Ok(Verdict::Refuted(pinned_countermodel(
            &frames[i], f, budget,
        )?)),
    }
}

/// Outcome of an equivalidity comparison over a frame population.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Equivalidity {
    /// Every enumerated frame validates both formulas or neither.
    Equivalid { frames_checked: u64 },
    /// A separating frame: it validates one formula and refutes the other.
    Separated {
        frame: Frame,
        valid: Formula,
        refuted: Formula,
        countermodel: Countermodel,
    },
}

impl Equivalidity {
    pub fn is_equivalid(&self) -> bool {
        matches!(self, Equivalidity::Equivalid { .. })
    }
}

/// Compares the frame-validity of `f` and `g` over all rooted frames within
/// the bounds; on disagreement returns the earliest separating frame along
/// with the countermodel for the side that fails there.
pub fn logics_equivalid(
    f: &Formula,
    g: &Formula,
    max_size: usize,
    topwidth: Option<usize>,
    budget: &Budget,
) -> Result<Equivalidity> {
    let frames = enumerate_frames(max_size, topwidth)?;
    let frames_checked = frames.len() as u64;
    let separating = frames
        .par_iter()
        .enumerate()
        .map(|(i, frame)| {
            let vf = frame_validates(frame, f, budget)?;
            let vg = frame_validates(frame, g, budget)?;
            Ok::<_, Error>(if vf == vg { None } else { Some((i, vf)) })
        })
        .try_reduce(
            || None,
            |a, b| {
                Ok(match (a, b) {
                    (Some((x, fx)), Some((y, fy))) => {
                        if x <= y {
                            Some((x, fx))
                        } else {
                            Some((y, fy))
                        }
                    }
                    (x, None) => x,
                    (None, y) => y,
                })
            },
        )?;
    match separating {
        None => Ok(Equivalidity::Equivalid { frames_checked }),
        Some((i, f_holds)) => {
            let frame = frames[i].clone();
            let (valid, refuted) = if f_holds {
                (f.clone(), g.clone())
            } else {
                (g.clone(), f.clone())
            };
            let countermodel = pinned_countermodel(&frame, &refuted, budget)?;
            Ok(Equivalidity::Separated {
                frame,
                valid,
                refuted,
                countermodel,
            })
        }
    }
}

/// Index of the earliest enumerated frame refuting `f`, if any.
fn first_refuted_index(frames: &[Frame], f: &Formula, budget: &Budget) -> Result<Option<usize>> {
    frames
        .par_iter()
        .enumerate()
        .map(|(i, frame)| {
            Ok::<_, Error>(if frame_validates(frame, f, budget)? {
                None
            } else {
                Some(i)
            })
        })
        .try_reduce(
            || None,
            |a, b| {
                Ok(match (a, b) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (x, None) => x,
                    (None, y) => y,
                })
            },
        )
}

/// The deterministic first countermodel on a frame known to refute `f`,
/// re-verified through the forcing oracle before being handed out.
fn pinned_countermodel(frame: &Frame, f: &Formula, budget: &Budget) -> Result<Countermodel> {
    let Validity::Fails(cm) = holds_in_frame(frame, f, budget)? else {
        return Err(Error::InvalidInput(
            "the fast validity route and the exhaustive route disagree".into(),
        ));
    };
    if cm.model().force(cm.world(), f)? {
        return Err(Error::NotCountermodel(
            "refutation failed re-verification".into(),
        ));
    }
    Ok(cm)
}
