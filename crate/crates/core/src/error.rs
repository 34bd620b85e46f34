use thiserror::Error;

/// Errors raised while reading topologies and schedule matrices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: missing `nodes N` header")]
    MissingHeader { line: usize },
    #[error("line {line}: malformed line `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: node count must be at least 1")]
    EmptyGraph { line: usize },
    #[error("line {line}: node id {node} out of range 1..={node_count}")]
    NodeOutOfRange {
        line: usize,
        node: usize,
        node_count: usize,
    },
    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: usize },
    #[error("line {line}: unknown slot symbol `{symbol}` (expected B, . or w)")]
    UnknownSlot { line: usize, symbol: char },
    #[error("line {line}: frame has {found} slots, expected {expected}")]
    RaggedFrame {
        line: usize,
        found: usize,
        expected: usize,
    },
    #[error("matrix has no frames")]
    NoFrames,
    #[error("invalid matrix JSON: {0}")]
    Json(String),
}

/// Errors raised by schedule operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error("frame lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("frames do not match; combine() requires a successful match() first")]
    Unmatched,
    #[error("node id {node} out of range 1..={node_count}")]
    NodeOutOfRange { node: usize, node_count: usize },
    #[error("self-loop on node {node}")]
    SelfLoop { node: usize },
    #[error("matrix width {matrix} does not equal topology node count {topology}")]
    SizeMismatch { matrix: usize, topology: usize },
    #[error("gray slot at frame {frame}, node {node}; only final matrices are accepted")]
    GraySlot { frame: usize, node: usize },
    #[error("node {node} has no black slot")]
    UncoveredNode { node: usize },
    #[error("matrix has no frames")]
    EmptyMatrix,
    #[error("graph has {nodes} nodes, above the oracle limit of {limit}")]
    OracleLimit { nodes: usize, limit: usize },
}
