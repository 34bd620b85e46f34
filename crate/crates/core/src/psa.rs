//! The three-phase packet scheduling pipeline.
//!
//! 1. [`init_matrix`] grants one frame per node, blocking its two-hop
//!    interference set and leaving every other slot gray.
//! 2. [`minimize_frame_length`] repeatedly merges the two frames with the
//!    most gray slots while they match.
//! 3. [`maximize_throughput`] walks the matrix column by column and merges
//!    each node's initial frame into every frame where that node is still
//!    gray, then turns the leftover gray slots white.

use serde::Serialize;

use crate::error::ScheduleError;
use crate::schedule::{
    match_frames, max_gray_frame, merge, Frame, MatrixJson, ScheduleMatrix, SlotState,
};
use crate::topology::Topology;

/// How frame-length minimization picks the pair to merge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairSearch {
    /// Only the two frames with the most gray slots are tried; the phase
    /// stops as soon as they fail to match.
    #[default]
    TopTwo,
    /// Frames are ranked by gray count (earliest first on ties) and every
    /// pair is tried in rank order before giving up.
    Exhaustive,
}

/// All three phase outputs of one run.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PsaTrace {
    pub initial: ScheduleMatrix,
    pub minimized: ScheduleMatrix,
    pub final_matrix: ScheduleMatrix,
}

#[derive(Debug, Serialize)]
pub struct TraceJson {
    pub initial: MatrixJson,
    pub minimized: MatrixJson,
    #[serde(rename = "final")]
    pub final_matrix: MatrixJson,
}

impl PsaTrace {
    pub fn to_json(&self) -> TraceJson {
        TraceJson {
            initial: self.initial.to_json(),
            minimized: self.minimized.to_json(),
            final_matrix: self.final_matrix.to_json(),
        }
    }

    pub fn to_text(&self) -> String {
        format!(
            "# initial\n{}# minimized\n{}# final\n{}",
            self.initial.to_text(),
            self.minimized.to_text(),
            self.final_matrix.to_text()
        )
    }
}

/// Phase 1: frame `u` reserves node `u`, blocks everything within two hops
/// of it, and leaves the rest gray.
pub fn init_matrix(t: &Topology) -> ScheduleMatrix {
    let n = t.node_count();
    let frames = (0..n)
        .map(|u| {
            let mut frame = Frame::filled(n, SlotState::Gray);
            // The node itself is skipped so it stays black.
            for w in t.interference_indices(u) {
                frame.set(w, SlotState::White);
            }
            frame.set(u, SlotState::Black);
            frame
        })
        .collect();
    ScheduleMatrix::from_frames_unchecked(n, frames)
}

/// Phase 2 with the default top-two pair selection.
pub fn minimize_frame_length(s: &ScheduleMatrix) -> ScheduleMatrix {
    minimize_frame_length_with(s, PairSearch::TopTwo)
}

pub fn minimize_frame_length_with(s: &ScheduleMatrix, search: PairSearch) -> ScheduleMatrix {
    let mut out = s.clone();
    while let Some((a, b)) = select_pair(&out, search) {
        let merged = merge(&out.frames()[a], &out.frames()[b]);
        let frames = out.frames_mut();
        // Remove the later position first so the earlier index stays valid.
        frames.remove(a.max(b));
        frames.remove(a.min(b));
        frames.push(merged);
    }
    out
}

fn select_pair(s: &ScheduleMatrix, search: PairSearch) -> Option<(usize, usize)> {
    let matches = |a: usize, b: usize| {
        match_frames(&s.frames()[a], &s.frames()[b]).expect("frames share the matrix width")
    };
    match search {
        PairSearch::TopTwo => {
            let a = max_gray_frame(s, None)?;
            let b = max_gray_frame(s, Some(a))?;
            matches(a, b).then_some((a, b))
        }
        PairSearch::Exhaustive => {
            let mut ranked: Vec<usize> = (0..s.frame_length())
                .filter(|&i| s.frames()[i].gray_count() > 0)
                .collect();
            // Stable sort keeps earlier frames first among equal counts, which
            // makes the first pair coincide with the top-two selection.
            ranked.sort_by_key(|&i| std::cmp::Reverse(s.frames()[i].gray_count()));
            for (i, &a) in ranked.iter().enumerate() {
                for &b in &ranked[i + 1..] {
                    if matches(a, b) {
                        return Some((a, b));
                    }
                }
            }
            None
        }
    }
}

/// Phase 3: for each node in ascending order and each frame top to bottom,
/// merge the node's initial frame into any frame where the node is still
/// gray and the two match. Remaining gray slots become white.
pub fn maximize_throughput(
    minimized: &ScheduleMatrix,
    initial: &ScheduleMatrix,
) -> Result<ScheduleMatrix, ScheduleError> {
    let n = initial.node_count();
    if minimized.node_count() != n || initial.frame_length() != n {
        return Err(ScheduleError::SizeMismatch {
            matrix: minimized.node_count(),
            topology: n,
        });
    }

    let mut frames = minimized.frames().to_vec();
    for (u, granted) in initial.frames().iter().enumerate() {
        for frame in frames.iter_mut() {
            if frame.get(u) == SlotState::Gray && match_frames(granted, frame)? {
                *frame = merge(granted, frame);
            }
        }
    }
    for frame in frames.iter_mut() {
        for i in 0..n {
            if frame.get(i) == SlotState::Gray {
                frame.set(i, SlotState::White);
            }
        }
    }
    Ok(ScheduleMatrix::from_frames_unchecked(n, frames))
}

/// Runs all three phases with top-two pair selection.
pub fn run_psa(t: &Topology) -> PsaTrace {
    run_psa_with(t, PairSearch::TopTwo)
}

pub fn run_psa_with(t: &Topology, search: PairSearch) -> PsaTrace {
    let initial = init_matrix(t);
    let minimized = minimize_frame_length_with(&initial, search);
    let final_matrix =
        maximize_throughput(&minimized, &initial).expect("phase matrices come from one topology");
    PsaTrace {
        initial,
        minimized,
        final_matrix,
    }
}
