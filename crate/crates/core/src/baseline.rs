//! Comparator scheduler: greedy coloring of the square graph, one frame per
//! color class, then each frame is saturated with any node that fits.

use crate::schedule::{Frame, ScheduleMatrix, SlotState};
use crate::topology::Topology;

/// Nodes are colored in descending square-graph degree, ascending id on
/// ties, each taking the smallest color its colored interferers lack.
pub fn greedy_coloring_schedule(t: &Topology) -> ScheduleMatrix {
    let n = t.node_count();
    let square = t.square_graph();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&u| std::cmp::Reverse(square.neighbor_indices(u).len()));

    let mut color = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &u in &order {
        let taken: Vec<usize> = square
            .neighbor_indices(u)
            .iter()
            .map(|&w| color[w])
            .filter(|&c| c != usize::MAX)
            .collect();
        let c = (0..).find(|c| !taken.contains(c)).expect("unbounded range");
        color[u] = c;
        if c == classes.len() {
            classes.push(Vec::new());
        }
        classes[c].push(u);
    }

    let frames = classes
        .into_iter()
        .map(|class| {
            let mut blacks = vec![false; n];
            for u in class {
                blacks[u] = true;
            }
            for u in 0..n {
                if blacks[u] {
                    continue;
                }
                let fits = square.neighbor_indices(u).iter().all(|&w| !blacks[w]);
                if fits {
                    blacks[u] = true;
                }
            }
            blacks
                .into_iter()
                .map(|b| if b { SlotState::Black } else { SlotState::White })
                .collect::<Frame>()
        })
        .collect();
    ScheduleMatrix::from_frames_unchecked(n, frames)
}
