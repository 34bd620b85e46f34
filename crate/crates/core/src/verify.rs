//! Ground truth for schedules: collision checking against the two-hop
//! interference graph, and the exact minimum frame length on small graphs.

use serde::Serialize;

use crate::error::ScheduleError;
use crate::schedule::ScheduleMatrix;
use crate::topology::{NodeId, Topology};

/// Default `node_limit` for [`exact_min_frame_length`].
pub const DEFAULT_ORACLE_NODES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CollisionKind {
    /// The two transmitters are neighbors.
    Direct,
    /// The two transmitters share a neighbor.
    Hidden,
}

/// Two nodes reserved in the same frame although they interfere.
/// Frame and node numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub frame: usize,
    pub nodes: (usize, usize),
    pub kind: CollisionKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    pub uncovered_nodes: Vec<usize>,
}

/// Checks that every frame's black set is independent in the square graph
/// and that every node is black somewhere. All violations are reported.
pub fn verify_schedule(
    t: &Topology,
    s: &ScheduleMatrix,
) -> Result<VerificationReport, ScheduleError> {
    if s.node_count() != t.node_count() {
        return Err(ScheduleError::SizeMismatch {
            matrix: s.node_count(),
            topology: t.node_count(),
        });
    }
    if let Some((frame, node)) = s.first_gray() {
        return Err(ScheduleError::GraySlot {
            frame: frame + 1,
            node: node + 1,
        });
    }

    let square = t.square_graph();
    let mut violations = Vec::new();
    for (fi, frame) in s.frames().iter().enumerate() {
        let blacks: Vec<usize> = frame.black_indices().collect();
        for (i, &a) in blacks.iter().enumerate() {
            for &b in &blacks[i + 1..] {
                let (na, nb) = (NodeId::from_index(a), NodeId::from_index(b));
                if !square.has_edge(na, nb) {
                    continue;
                }
                let kind = if t.has_edge(na, nb) {
                    CollisionKind::Direct
                } else {
                    CollisionKind::Hidden
                };
                violations.push(Violation {
                    frame: fi + 1,
                    nodes: (a + 1, b + 1),
                    kind,
                });
            }
        }
    }

    let uncovered_nodes: Vec<usize> = s
        .blacks_per_node()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == 0)
        .map(|(i, _)| i + 1)
        .collect();

    Ok(VerificationReport {
        valid: violations.is_empty() && uncovered_nodes.is_empty(),
        violations,
        uncovered_nodes,
    })
}

/// Chromatic number of the square graph, i.e. the fewest frames any valid
/// schedule can have. Exhaustive backtracking; refuses graphs above `node_limit`.
pub fn exact_min_frame_length(t: &Topology, node_limit: usize) -> Result<usize, ScheduleError> {
    let n = t.node_count();
    if n > node_limit {
        return Err(ScheduleError::OracleLimit {
            nodes: n,
            limit: node_limit,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let square = t.square_graph();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&u| std::cmp::Reverse(square.neighbor_indices(u).len()));

    let mut search = Colorer {
        square: &square,
        order: &order,
        colors: vec![usize::MAX; n],
        best: n,
    };
    search.extend(0, 0);
    Ok(search.best)
}

struct Colorer<'a> {
    square: &'a Topology,
    order: &'a [usize],
    colors: Vec<usize>,
    best: usize,
}

impl Colorer<'_> {
    fn extend(&mut self, depth: usize, used: usize) {
        if used >= self.best {
            return;
        }
        if depth == self.order.len() {
            self.best = used;
            return;
        }
        let u = self.order[depth];
        // A fresh color is only worth trying if it still beats the best.
        let limit = (used + 1).min(self.best - 1);
        for c in 0..limit {
            let clash = self
                .square
                .neighbor_indices(u)
                .iter()
                .any(|&w| self.colors[w] == c);
            if clash {
                continue;
            }
            self.colors[u] = c;
            self.extend(depth + 1, used.max(c + 1));
            self.colors[u] = usize::MAX;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::Frame;

    fn matrix(rows: &[&str]) -> ScheduleMatrix {
        ScheduleMatrix::new(
            rows[0].len(),
            rows.iter().map(|r| Frame::parse_row(r, 1).unwrap()).collect(),
        )
        .unwrap()
    }

    fn p3() -> Topology {
        Topology::new(3, [(1, 2), (2, 3)]).unwrap()
    }

    /// Smallest k admitting a proper k-coloring, by trying all k^n assignments.
    fn brute_chromatic(t: &Topology) -> usize {
        let n = t.node_count();
        let sq = t.square_graph();
        let edges: Vec<(usize, usize)> = sq
            .edges()
            .into_iter()
            .map(|(a, b)| (a.index(), b.index()))
            .collect();
        for k in 1..=n {
            let total = k.pow(n as u32);
            for code in 0..total {
                let mut c = code;
                let colors: Vec<usize> = (0..n)
                    .map(|_| {
                        let v = c % k;
                        c /= k;
                        v
                    })
                    .collect();
                if edges.iter().all(|&(a, b)| colors[a] != colors[b]) {
                    return k;
                }
            }
        }
        n
    }

    #[test]
    fn p3_identity_is_valid() {
        let report = verify_schedule(&p3(), &matrix(&["Bww", "wBw", "wwB"])).unwrap();
        assert!(report.valid);
    }

    #[test]
    fn p3_direct_collision_and_uncovered() {
        let report = verify_schedule(&p3(), &matrix(&["BBw"])).unwrap();
        assert!(!report.valid);
        assert_eq!(
            report.violations,
            vec![Violation {
                frame: 1,
                nodes: (1, 2),
                kind: CollisionKind::Direct
            }]
        );
        assert_eq!(report.uncovered_nodes, vec![3]);
    }

    #[test]
    fn p3_hidden_collision() {
        let report = verify_schedule(&p3(), &matrix(&["BwB", "wBw"])).unwrap();
        assert!(!report.valid);
        assert_eq!(
            report.violations,
            vec![Violation {
                frame: 1,
                nodes: (1, 3),
                kind: CollisionKind::Hidden
            }]
        );
        assert!(report.uncovered_nodes.is_empty());
    }

    #[test]
    fn reports_every_violation() {
        let k3 = Topology::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        let report = verify_schedule(&k3, &matrix(&["BBB", "BBw"])).unwrap();
        assert_eq!(report.violations.len(), 4);
    }

    #[test]
    fn verify_rejects_bad_input() {
        assert!(matches!(
            verify_schedule(&p3(), &matrix(&["Bw"])),
            Err(ScheduleError::SizeMismatch { .. })
        ));
        assert!(matches!(
            verify_schedule(&p3(), &matrix(&["B.w", "wBw", "wwB"])),
            Err(ScheduleError::GraySlot { frame: 1, node: 2 })
        ));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(exact_min_frame_length(&p3(), 12).unwrap(), 3);
        let c5 = Topology::new(5, (1..=5).map(|i| (i, i % 5 + 1))).unwrap();
        assert_eq!(exact_min_frame_length(&c5, 12).unwrap(), 5);
        assert_eq!(exact_min_frame_length(&Topology::edgeless(9), 12).unwrap(), 1);
        assert_eq!(
            exact_min_frame_length(&Topology::edgeless(13), 12),
            Err(ScheduleError::OracleLimit {
                nodes: 13,
                limit: 12
            })
        );
        assert_eq!(exact_min_frame_length(&Topology::edgeless(13), 13).unwrap(), 1);
    }

    #[test]
    fn oracle_matches_brute_force() {
        let graphs = [
            Topology::new(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]).unwrap(),
            Topology::new(6, [(1, 2), (1, 3), (1, 4), (5, 6)]).unwrap(),
            Topology::new(6, (1..=6).map(|i| (i, i % 6 + 1))).unwrap(),
            Topology::new(5, [(1, 2), (3, 4)]).unwrap(),
            Topology::new(6, [(1, 2), (2, 3), (4, 5), (5, 6), (3, 4)]).unwrap(),
        ];
        for t in &graphs {
            assert_eq!(exact_min_frame_length(t, 12).unwrap(), brute_chromatic(t));
        }
    }
}
