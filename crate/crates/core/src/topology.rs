//! Undirected network graphs and their one- and two-hop neighborhoods.
//!
//! Node ids are 1-based everywhere outside this module. Internally the
//! adjacency is stored per 0-based index.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{ParseError, ScheduleError};

/// A 1-based node identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(usize);

impl NodeId {
    /// Panics if `id` is zero.
    pub fn new(id: usize) -> Self {
        assert!(id >= 1, "node ids are 1-based");
        NodeId(id)
    }

    pub fn from_index(index: usize) -> Self {
        NodeId(index + 1)
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 - 1
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An undirected simple graph on nodes `1..=node_count`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Topology {
    adjacency: Vec<BTreeSet<usize>>,
}

impl Topology {
    /// Builds a topology from 1-based edge pairs. Duplicate edges collapse.
    pub fn new<I>(node_count: usize, edges: I) -> Result<Self, ScheduleError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![BTreeSet::new(); node_count];
        for (u, v) in edges {
            for node in [u, v] {
                if node == 0 || node > node_count {
                    return Err(ScheduleError::NodeOutOfRange { node, node_count });
                }
            }
            if u == v {
                return Err(ScheduleError::SelfLoop { node: u });
            }
            adjacency[u - 1].insert(v - 1);
            adjacency[v - 1].insert(u - 1);
        }
        Ok(Topology { adjacency })
    }

    /// Graph with `node_count` nodes and no links.
    pub fn edgeless(node_count: usize) -> Self {
        Topology {
            adjacency: vec![BTreeSet::new(); node_count],
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.node_count()).map(NodeId::from_index)
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            for &v in nbrs.range(u + 1..) {
                out.push((NodeId::from_index(u), NodeId::from_index(v)));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency
            .get(u.index())
            .is_some_and(|nbrs| nbrs.contains(&v.index()))
    }

    pub fn degree(&self, u: NodeId) -> Result<usize, ScheduleError> {
        self.check(u)?;
        Ok(self.adjacency[u.index()].len())
    }

    fn check(&self, u: NodeId) -> Result<(), ScheduleError> {
        if u.index() < self.node_count() {
            Ok(())
        } else {
            Err(ScheduleError::NodeOutOfRange {
                node: u.get(),
                node_count: self.node_count(),
            })
        }
    }

    /// Direct neighbors of `u`.
    pub fn one_hop(&self, u: NodeId) -> Result<BTreeSet<NodeId>, ScheduleError> {
        self.check(u)?;
        Ok(self.adjacency[u.index()]
            .iter()
            .map(|&v| NodeId::from_index(v))
            .collect())
    }

    /// Every node that would collide with a transmission from `u`: its
    /// neighbors plus the other neighbors of those neighbors. Never contains `u`.
    pub fn two_hop_closed_interference(
        &self,
        u: NodeId,
    ) -> Result<BTreeSet<NodeId>, ScheduleError> {
        self.check(u)?;
        Ok(self
            .interference_indices(u.index())
            .into_iter()
            .map(NodeId::from_index)
            .collect())
    }

    pub(crate) fn interference_indices(&self, u: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &v in &self.adjacency[u] {
            out.insert(v);
            out.extend(self.adjacency[v].iter().copied());
        }
        out.remove(&u);
        out
    }

    /// The square graph: `u` and `w` are linked whenever they are within two hops.
    pub fn square_graph(&self) -> Topology {
        Topology {
            adjacency: (0..self.node_count())
                .map(|u| self.interference_indices(u))
                .collect(),
        }
    }

    pub(crate) fn neighbor_indices(&self, u: usize) -> &BTreeSet<usize> {
        &self.adjacency[u]
    }

    /// Renders the topology in the text file format.
    pub fn to_text(&self) -> String {
        let mut out = format!("nodes {}\n", self.node_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the text file format: `#` comments, a `nodes N` header, then
    /// one `u v` edge per line.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut node_count: Option<usize> = None;
        let mut adjacency: Vec<BTreeSet<usize>> = Vec::new();
        let mut last_line = 0;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let malformed = || ParseError::Malformed {
                line,
                text: content.to_string(),
            };

            let Some(n) = node_count else {
                match tokens.as_slice() {
                    ["nodes", count] => {
                        let n: usize = count.parse().map_err(|_| malformed())?;
                        if n == 0 {
                            return Err(ParseError::EmptyGraph { line });
                        }
                        node_count = Some(n);
                        adjacency = vec![BTreeSet::new(); n];
                        continue;
                    }
                    _ => return Err(ParseError::MissingHeader { line }),
                }
            };

            let [a, b] = tokens.as_slice() else {
                return Err(malformed());
            };
            let u: usize = a.parse().map_err(|_| malformed())?;
            let v: usize = b.parse().map_err(|_| malformed())?;
            for node in [u, v] {
                if node == 0 || node > n {
                    return Err(ParseError::NodeOutOfRange {
                        line,
                        node,
                        node_count: n,
                    });
                }
            }
            if u == v {
                return Err(ParseError::SelfLoop { line, node: u });
            }
            adjacency[u - 1].insert(v - 1);
            adjacency[v - 1].insert(u - 1);
        }

        match node_count {
            Some(_) => Ok(Topology { adjacency }),
            None => Err(ParseError::MissingHeader {
                line: last_line.max(1),
            }),
        }
    }
}

impl FromStr for Topology {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Topology::parse(s)
    }
}
