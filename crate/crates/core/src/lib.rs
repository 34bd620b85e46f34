//! Collision-free TDMA broadcast schedules for wireless sensor networks.
//!
//! A network [`Topology`] is turned into a [`ScheduleMatrix`] (one row per
//! frame, one slot per node) by the greedy three-phase pipeline in [`psa`].
//! [`metrics`] scores the result, [`verify`] checks it independently, and
//! [`baseline`] provides a coloring-based comparator.

pub mod baseline;
pub mod cli;
pub mod error;
pub mod metrics;
pub mod psa;
pub mod reference;
pub mod schedule;
pub mod topology;
pub mod verify;

pub use error::{ParseError, ScheduleError};
pub use metrics::MetricsReport;
pub use psa::{run_psa, run_psa_with, PairSearch, PsaTrace};
pub use schedule::{Frame, ScheduleMatrix, SlotState};
pub use topology::{NodeId, Topology};
pub use verify::{verify_schedule, VerificationReport};
