//! Published comparison figures for the three classic broadcast-scheduling
//! benchmarks (15, 30 and 40 nodes). These are constants for side-by-side
//! reporting only; none of these algorithms is implemented here.

use crate::topology::Topology;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Benchmark {
    Bench15,
    Bench30,
    Bench40,
}

impl Benchmark {
    pub const ALL: [Benchmark; 3] = [Benchmark::Bench15, Benchmark::Bench30, Benchmark::Bench40];

    pub fn name(self) -> &'static str {
        match self {
            Benchmark::Bench15 => "bench15",
            Benchmark::Bench30 => "bench30",
            Benchmark::Bench40 => "bench40",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Benchmark::ALL.into_iter().find(|b| b.name() == name)
    }

    pub fn node_count(self) -> usize {
        match self {
            Benchmark::Bench15 => 15,
            Benchmark::Bench30 => 30,
            Benchmark::Bench40 => 40,
        }
    }

    /// Shipped topology, if one exists for this benchmark.
    pub fn fixture(self) -> Option<Topology> {
        match self {
            Benchmark::Bench15 => Some(
                Topology::parse(BENCH15_TOPO).expect("bench15 fixture parses"),
            ),
            Benchmark::Bench30 | Benchmark::Bench40 => None,
        }
    }

    /// Identifies a topology that is exactly one of the shipped fixtures.
    pub fn recognize(t: &Topology) -> Option<Self> {
        Benchmark::ALL
            .into_iter()
            .find(|b| b.fixture().as_ref() == Some(t))
    }

    /// Rows for the earlier algorithms, in table order.
    pub fn reference_rows(self) -> &'static [ReferenceRow] {
        match self {
            Benchmark::Bench15 => &BENCH15_ROWS,
            Benchmark::Bench30 => &BENCH30_ROWS,
            Benchmark::Bench40 => &BENCH40_ROWS,
        }
    }

    /// The published PSA figures for this benchmark.
    pub fn published_psa(self) -> ReferenceRow {
        match self {
            Benchmark::Bench15 => row("PSA", Some(10), Some(26), Some("7.63"), Some("17.33")),
            Benchmark::Bench30 => row("PSA", Some(14), Some(53), Some("10.99"), Some("12.62")),
            Benchmark::Bench40 => row("PSA", Some(11), Some(94), Some("8.39"), Some("21.36")),
        }
    }
}

pub const BENCH15_TOPO: &str = include_str!("../fixtures/bench15.topo");

/// One published row. `None` marks a value the source does not report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferenceRow {
    pub algorithm: &'static str,
    pub frame_length: Option<usize>,
    pub sigma: Option<usize>,
    pub tau: Option<&'static str>,
    pub eta: Option<&'static str>,
}

const fn row(
    algorithm: &'static str,
    frame_length: Option<usize>,
    sigma: Option<usize>,
    tau: Option<&'static str>,
    eta: Option<&'static str>,
) -> ReferenceRow {
    ReferenceRow {
        algorithm,
        frame_length,
        sigma,
        tau,
        eta,
    }
}

const BENCH15_ROWS: [ReferenceRow; 6] = [
    row("TABU", None, Some(20), None, None),
    row("HNN", None, None, Some("6.80"), None),
    row("BSC", Some(8), Some(20), Some("7.00"), Some("16.67")),
    row("MFA", Some(8), Some(18), Some("7.20"), Some("15.00")),
    row("SVC", Some(8), Some(18), Some("7.20"), Some("15.00")),
    row("FSM", Some(8), Some(20), Some("6.84"), Some("16.67")),
];

const BENCH30_ROWS: [ReferenceRow; 6] = [
    row("TABU", None, Some(37), None, None),
    row("HNN", None, None, Some("9.20"), None),
    row("BSC", Some(10), Some(35), Some("9.30"), Some("11.67")),
    row("MFA", Some(9), Some(38), Some("10.67"), Some("10.56")),
    row("SVC", Some(11), Some(37), Some("9.99"), Some("11.21")),
    row("FSM", Some(10), Some(35), Some("9.20"), Some("11.67")),
];

const BENCH40_ROWS: [ReferenceRow; 6] = [
    row("TABU", None, Some(68), None, None),
    row("HNN", None, None, Some("5.80"), None),
    row("BSC", Some(8), Some(77), Some("6.30"), Some("24.06")),
    row("MFA", Some(8), Some(71), Some("6.99"), Some("19.72")),
    row("SVC", Some(8), Some(60), Some("6.76"), Some("18.75")),
    row("FSM", Some(8), Some(64), Some("6.00"), Some("20.00")),
];
