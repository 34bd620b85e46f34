//! Slot states, frames, and scheduling matrices, with the `match` test and
//! `combine` merge that drive frame reduction.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ParseError, ScheduleError};

/// Transmission status of one node in one frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SlotState {
    /// Reserved: the node transmits without collision.
    Black,
    /// Undetermined.
    Gray,
    /// Blocked: a transmission could collide.
    White,
}

impl SlotState {
    pub fn symbol(self) -> char {
        match self {
            SlotState::Black => 'B',
            SlotState::Gray => '.',
            SlotState::White => 'w',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'B' => Some(SlotState::Black),
            '.' => Some(SlotState::Gray),
            'w' => Some(SlotState::White),
            _ => None,
        }
    }
}

/// One TDMA frame: a slot state per node, indexed by 0-based node index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame(Vec<SlotState>);

impl Frame {
    pub fn new(slots: Vec<SlotState>) -> Self {
        Frame(slots)
    }

    pub fn filled(len: usize, state: SlotState) -> Self {
        Frame(vec![state; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn slots(&self) -> &[SlotState] {
        &self.0
    }

    pub fn get(&self, index: usize) -> SlotState {
        self.0[index]
    }

    pub fn set(&mut self, index: usize, state: SlotState) {
        self.0[index] = state;
    }

    pub fn gray_count(&self) -> usize {
        self.count(SlotState::Gray)
    }

    pub fn black_count(&self) -> usize {
        self.count(SlotState::Black)
    }

    fn count(&self, state: SlotState) -> usize {
        self.0.iter().filter(|&&s| s == state).count()
    }

    /// 0-based indices of the nodes reserved in this frame.
    pub fn black_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == SlotState::Black)
            .map(|(i, _)| i)
    }

    /// Parses a row such as `Bw.w`. Whitespace between symbols is ignored.
    pub fn parse_row(row: &str, line: usize) -> Result<Self, ParseError> {
        row.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| SlotState::from_symbol(c).ok_or(ParseError::UnknownSlot { line, symbol: c }))
            .collect::<Result<Vec<_>, _>>()
            .map(Frame)
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl FromIterator<SlotState> for Frame {
    fn from_iter<T: IntoIterator<Item = SlotState>>(iter: T) -> Self {
        Frame(iter.into_iter().collect())
    }
}

fn check_lengths(a: &Frame, b: &Frame) -> Result<(), ScheduleError> {
    if a.len() == b.len() {
        Ok(())
    } else {
        Err(ScheduleError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        })
    }
}

fn slot_matches(a: SlotState, b: SlotState) -> bool {
    use SlotState::*;
    matches!((a, b), (Gray, _) | (Black, Gray) | (White, Gray | White))
}

/// Whether `a` and `b` may be merged: every slot of `a` is gray, or black
/// over a gray slot of `b`, or white over a non-black slot of `b`.
pub fn match_frames(a: &Frame, b: &Frame) -> Result<bool, ScheduleError> {
    check_lengths(a, b)?;
    Ok(a.0.iter().zip(&b.0).all(|(&x, &y)| slot_matches(x, y)))
}

/// Merges two matching frames: each slot takes `b`'s state unless that is
/// gray, in which case it keeps `a`'s.
pub fn combine_frames(a: &Frame, b: &Frame) -> Result<Frame, ScheduleError> {
    if !match_frames(a, b)? {
        return Err(ScheduleError::Unmatched);
    }
    Ok(merge(a, b))
}

pub(crate) fn merge(a: &Frame, b: &Frame) -> Frame {
    debug_assert!(a.0.iter().zip(&b.0).all(|(&x, &y)| slot_matches(x, y)));
    a.0.iter()
        .zip(&b.0)
        .map(|(&x, &y)| if y == SlotState::Gray { x } else { y })
        .collect()
}

pub fn gray_count(f: &Frame) -> usize {
    f.gray_count()
}

/// An ordered list of frames over a fixed node count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScheduleMatrix {
    node_count: usize,
    frames: Vec<Frame>,
}

impl ScheduleMatrix {
    pub fn new(node_count: usize, frames: Vec<Frame>) -> Result<Self, ScheduleError> {
        for f in &frames {
            if f.len() != node_count {
                return Err(ScheduleError::LengthMismatch {
                    left: node_count,
                    right: f.len(),
                });
            }
        }
        Ok(ScheduleMatrix { node_count, frames })
    }

    pub(crate) fn from_frames_unchecked(node_count: usize, frames: Vec<Frame>) -> Self {
        debug_assert!(frames.iter().all(|f| f.len() == node_count));
        ScheduleMatrix { node_count, frames }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Number of frames.
    pub fn frame_length(&self) -> usize {
        self.frames.len()
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    pub(crate) fn frames_mut(&mut self) -> &mut Vec<Frame> {
        &mut self.frames
    }

    pub fn into_frames(self) -> Vec<Frame> {
        self.frames
    }

    pub fn black_count(&self) -> usize {
        self.frames.iter().map(Frame::black_count).sum()
    }

    pub fn gray_count(&self) -> usize {
        self.frames.iter().map(Frame::gray_count).sum()
    }

    /// Black slots per node, indexed by 0-based node index.
    pub fn blacks_per_node(&self) -> Vec<usize> {
        let mut counts = vec![0; self.node_count];
        for f in &self.frames {
            for i in f.black_indices() {
                counts[i] += 1;
            }
        }
        counts
    }

    /// First (row, column) holding a gray slot, 0-based.
    pub fn first_gray(&self) -> Option<(usize, usize)> {
        self.frames.iter().enumerate().find_map(|(r, f)| {
            f.slots()
                .iter()
                .position(|&s| s == SlotState::Gray)
                .map(|c| (r, c))
        })
    }

    /// Text grid: one row per frame, one symbol per node.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in &self.frames {
            out.push_str(&f.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses a text grid. Blank lines and `#` comments are skipped; the
    /// first row fixes the width.
    pub fn parse_text(text: &str) -> Result<Self, ParseError> {
        let mut frames: Vec<Frame> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let frame = Frame::parse_row(content, line)?;
            if let Some(first) = frames.first() {
                if first.len() != frame.len() {
                    return Err(ParseError::RaggedFrame {
                        line,
                        found: frame.len(),
                        expected: first.len(),
                    });
                }
            }
            frames.push(frame);
        }
        let width = frames.first().ok_or(ParseError::NoFrames)?.len();
        Ok(ScheduleMatrix::from_frames_unchecked(width, frames))
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            nodes: self.node_count,
            frames: self
                .frames
                .iter()
                .map(|f| f.slots().iter().map(|s| s.symbol().to_string()).collect())
                .collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self, ParseError> {
        let mut frames = Vec::with_capacity(json.frames.len());
        for (row, symbols) in json.frames.iter().enumerate() {
            let mut slots = Vec::with_capacity(symbols.len());
            for sym in symbols {
                let mut chars = sym.chars();
                let state = match (chars.next(), chars.next()) {
                    (Some(c), None) => SlotState::from_symbol(c),
                    _ => None,
                };
                slots.push(state.ok_or_else(|| {
                    ParseError::Json(format!("frame {}: bad slot symbol {sym:?}", row + 1))
                })?);
            }
            if slots.len() != json.nodes {
                return Err(ParseError::RaggedFrame {
                    line: row + 1,
                    found: slots.len(),
                    expected: json.nodes,
                });
            }
            frames.push(Frame(slots));
        }
        Ok(ScheduleMatrix::from_frames_unchecked(json.nodes, frames))
    }

    /// Accepts either the JSON rendering or the text grid.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        if text.trim_start().starts_with('{') {
            let json: MatrixJson =
                serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
            ScheduleMatrix::from_json(&json)
        } else {
            ScheduleMatrix::parse_text(text)
        }
    }
}

/// JSON form of a matrix: `{"nodes": N, "frames": [["B","w",...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub nodes: usize,
    pub frames: Vec<Vec<String>>,
}

/// Position of the frame with the most gray slots, skipping `excluded`.
///
/// Frames are scanned in order and only a strictly larger count replaces
/// the current pick, so ties go to the earliest frame and frames without
/// any gray slot are never returned.
pub fn max_gray_frame(s: &ScheduleMatrix, excluded: Option<usize>) -> Option<usize> {
    let mut best = None;
    let mut most = 0;
    for (pos, frame) in s.frames().iter().enumerate() {
        if Some(pos) == excluded {
            continue;
        }
        let g = frame.gray_count();
        if g > most {
            most = g;
            best = Some(pos);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use SlotState::*;

    fn f(s: &str) -> Frame {
        Frame::parse_row(s, 1).unwrap()
    }

    /// Clause table written out by hand.
    fn clause_table(a: SlotState, b: SlotState) -> bool {
        let c1 = a == Gray;
        let c2 = a == Black && b == Gray;
        let c3 = a == White && b != Black;
        c1 || c2 || c3
    }

    #[test]
    fn slot_match_table() {
        let all = [Black, Gray, White];
        let mut accepted = Vec::new();
        for a in all {
            for b in all {
                assert_eq!(slot_matches(a, b), clause_table(a, b));
                assert_eq!(slot_matches(a, b), slot_matches(b, a));
                if slot_matches(a, b) {
                    accepted.push((a, b));
                }
            }
        }
        // BB, BW and WB are the only rejected pairs.
        assert_eq!(accepted.len(), 6);
    }

    #[test]
    fn match_examples() {
        assert!(match_frames(&f("B."), &f(".B")).unwrap());
        assert!(!match_frames(&f("Bw"), &f("ww")).unwrap());
        for b in ["BB", "ww", "..", "Bw", "wB", ".w"] {
            assert!(match_frames(&f(".."), &f(b)).unwrap());
        }
        assert_eq!(
            match_frames(&f("B"), &f("B.")),
            Err(ScheduleError::LengthMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn combine_examples() {
        assert_eq!(combine_frames(&f("B."), &f(".B")).unwrap(), f("BB"));
        let b = f("Bw.wB");
        assert_eq!(combine_frames(&f("....."), &b).unwrap(), b);
        assert_eq!(
            combine_frames(&f("Bw"), &f("ww")),
            Err(ScheduleError::Unmatched)
        );
        assert!(matches!(
            combine_frames(&f("B"), &f("..")),
            Err(ScheduleError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn combine_takes_non_gray_side() {
        // Left half decided by `a`, right half by `b`.
        let a = f("B.w.....");
        let b = f("....wwBw");
        assert_eq!(combine_frames(&a, &b).unwrap(), f("B.w.wwBw"));
    }

    #[test]
    fn gray_counts() {
        assert_eq!(gray_count(&f("B.w.")), 2);
        assert_eq!(gray_count(&f("wwww")), 0);
        assert_eq!(gray_count(&Frame::filled(7, Gray)), 7);
    }

    fn matrix(rows: &[&str]) -> ScheduleMatrix {
        ScheduleMatrix::new(rows[0].len(), rows.iter().map(|r| f(r)).collect()).unwrap()
    }

    #[test]
    fn max_gray_tie_breaks_to_earliest() {
        let s = matrix(&["B..ww", "B...w", "B...w"]);
        assert_eq!(max_gray_frame(&s, None), Some(1));
        assert_eq!(max_gray_frame(&s, Some(1)), Some(2));
        assert_eq!(max_gray_frame(&s, Some(0)), Some(1));
        let single = matrix(&["B.."]);
        assert_eq!(max_gray_frame(&single, Some(0)), None);
        let no_gray = matrix(&["Bw", "wB"]);
        assert_eq!(max_gray_frame(&no_gray, None), None);
    }

    #[test]
    fn duplicate_frames_excluded_by_position() {
        let s = matrix(&["B.", "B."]);
        assert_eq!(max_gray_frame(&s, Some(0)), Some(1));
    }

    #[test]
    fn matrix_text_and_json() {
        let s = matrix(&["Bw.", "wBw"]);
        assert_eq!(s.to_text(), "Bw.\nwBw\n");
        assert_eq!(ScheduleMatrix::parse(&s.to_text()).unwrap(), s);
        let json = serde_json::to_string(&s.to_json()).unwrap();
        assert_eq!(json, r#"{"nodes":3,"frames":[["B","w","."],["w","B","w"]]}"#);
        assert_eq!(ScheduleMatrix::parse(&json).unwrap(), s);
    }

    #[test]
    fn matrix_parse_errors() {
        assert_eq!(
            ScheduleMatrix::parse_text("Bw\nBww\n"),
            Err(ParseError::RaggedFrame {
                line: 2,
                found: 3,
                expected: 2
            })
        );
        assert_eq!(
            ScheduleMatrix::parse_text("Bx\n"),
            Err(ParseError::UnknownSlot { line: 1, symbol: 'x' })
        );
        assert_eq!(ScheduleMatrix::parse_text("# empty\n"), Err(ParseError::NoFrames));
        assert!(ScheduleMatrix::parse(r#"{"nodes":2,"frames":[["B"]]}"#).is_err());
        assert!(ScheduleMatrix::parse(r#"{"nodes":1,"frames":[["Q"]]}"#).is_err());
    }

    #[test]
    fn matrix_rejects_wrong_width() {
        assert!(ScheduleMatrix::new(3, vec![f("Bw")]).is_err());
    }

    #[test]
    fn blacks_per_node() {
        let s = matrix(&["BwB", "wBB"]);
        assert_eq!(s.blacks_per_node(), vec![1, 1, 2]);
        assert_eq!(s.black_count(), 4);
    }
}
