//! Throughput, average delay, and channel utilization of a final schedule.
//!
//! All quantities are exact rationals; [`decimal2`] rounds half-up to two
//! places for display.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::ScheduleError;
use crate::schedule::ScheduleMatrix;

fn ratio(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn reject_gray(s: &ScheduleMatrix) -> Result<(), ScheduleError> {
    match s.first_gray() {
        Some((frame, node)) => Err(ScheduleError::GraySlot {
            frame: frame + 1,
            node: node + 1,
        }),
        None => Ok(()),
    }
}

/// Total black slots.
pub fn throughput(s: &ScheduleMatrix) -> Result<usize, ScheduleError> {
    reject_gray(s)?;
    Ok(s.black_count())
}

/// `|S|/|V|` times the sum over nodes of the reciprocal of each node's
/// black-slot count, in frames.
pub fn average_delay(s: &ScheduleMatrix) -> Result<BigRational, ScheduleError> {
    reject_gray(s)?;
    if s.frame_length() == 0 || s.node_count() == 0 {
        return Err(ScheduleError::EmptyMatrix);
    }
    let mut sum = BigRational::zero();
    for (i, &count) in s.blacks_per_node().iter().enumerate() {
        if count == 0 {
            return Err(ScheduleError::UncoveredNode { node: i + 1 });
        }
        sum += ratio(count).recip();
    }
    Ok(ratio(s.frame_length()) / ratio(s.node_count()) * sum)
}

/// Black slots as a percentage of all matrix cells.
pub fn channel_utilization(s: &ScheduleMatrix) -> Result<BigRational, ScheduleError> {
    reject_gray(s)?;
    utilization_percent(s.frame_length(), s.node_count(), s.black_count())
}

/// `sigma / (frames * nodes) * 100` from the raw counts.
pub fn utilization_percent(
    frames: usize,
    nodes: usize,
    sigma: usize,
) -> Result<BigRational, ScheduleError> {
    if frames == 0 || nodes == 0 {
        return Err(ScheduleError::EmptyMatrix);
    }
    Ok(ratio(sigma) / (ratio(frames) * ratio(nodes)) * ratio(100))
}

/// Renders a nonnegative rational with two decimals, rounding half-up.
pub fn decimal2(value: &BigRational) -> String {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let hundredths = (value * ratio(100) + half).floor().to_integer();
    let whole = &hundredths / BigInt::from(100);
    let frac = (&hundredths % BigInt::from(100))
        .to_u32()
        .expect("remainder below 100");
    format!("{whole}.{frac:02}")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricsReport {
    pub frame_length: usize,
    pub throughput_sigma: usize,
    pub average_delay_tau: BigRational,
    pub channel_utilization_eta: BigRational,
    pub per_node_blacks: Vec<usize>,
}

/// JSON rendering with two-decimal strings for the rational fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricsJson {
    pub frame_length: usize,
    pub throughput: usize,
    pub average_delay: String,
    pub channel_utilization: String,
    pub per_node_blacks: Vec<usize>,
}

impl MetricsReport {
    pub fn compute(s: &ScheduleMatrix) -> Result<Self, ScheduleError> {
        Ok(MetricsReport {
            frame_length: s.frame_length(),
            throughput_sigma: throughput(s)?,
            average_delay_tau: average_delay(s)?,
            channel_utilization_eta: channel_utilization(s)?,
            per_node_blacks: s.blacks_per_node(),
        })
    }

    pub fn tau_f64(&self) -> f64 {
        self.average_delay_tau.to_f64().unwrap_or(f64::NAN)
    }

    pub fn eta_f64(&self) -> f64 {
        self.channel_utilization_eta.to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_json(&self) -> MetricsJson {
        MetricsJson {
            frame_length: self.frame_length,
            throughput: self.throughput_sigma,
            average_delay: decimal2(&self.average_delay_tau),
            channel_utilization: decimal2(&self.channel_utilization_eta),
            per_node_blacks: self.per_node_blacks.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        let blacks: Vec<String> = self.per_node_blacks.iter().map(|b| b.to_string()).collect();
        format!(
            "frame_length {}\nthroughput {}\naverage_delay {}\nchannel_utilization {}\nper_node_blacks {}\n",
            self.frame_length,
            self.throughput_sigma,
            decimal2(&self.average_delay_tau),
            decimal2(&self.channel_utilization_eta),
            blacks.join(" ")
        )
    }
}
