//! Burn-in, measurement and batching plan of a run.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerSchedule {
    pub burn_in_sweeps: u64,
    pub measure_sweeps: u64,
    pub thinning: u64,
    pub batch_count: u64,
    pub master_seed: u64,
    pub chain_count: u64,
}

impl Default for SamplerSchedule {
    fn default() -> Self {
        SamplerSchedule {
            burn_in_sweeps: 20_000,
            measure_sweeps: 100_000,
            thinning: 1,
            batch_count: 100,
            master_seed: 0,
            chain_count: 1,
        }
    }
}

impl SamplerSchedule {
    pub fn validate(&self) -> Result<()> {
        if self.batch_count < 10 {
            return Err(Error::ScheduleInvalid(format!("batch count {} < 10", self.batch_count)));
        }
        if self.thinning == 0 {
            return Err(Error::ScheduleInvalid("thinning must be positive".into()));
        }
        if self.chain_count == 0 {
            return Err(Error::ScheduleInvalid("at least one chain".into()));
        }
        let unit = self.batch_count * self.thinning;
        if self.measure_sweeps == 0 || self.measure_sweeps % unit != 0 {
            return Err(Error::ScheduleInvalid(format!(
                "measure sweeps {} not a positive multiple of batches * thinning = {unit}",
                self.measure_sweeps
            )));
        }
        Ok(())
    }

    /// Retained samples per chain.
    pub fn samples_per_chain(&self) -> usize {
        (self.measure_sweeps / self.thinning) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let ok = SamplerSchedule { measure_sweeps: 1000, thinning: 10, batch_count: 10, ..Default::default() };
        ok.validate().unwrap();
        assert_eq!(ok.samples_per_chain(), 100);
        assert!(SamplerSchedule { batch_count: 9, ..ok }.validate().is_err());
        assert!(SamplerSchedule { measure_sweeps: 1010, ..ok }.validate().is_err());
        assert!(SamplerSchedule { thinning: 0, ..ok }.validate().is_err());
        assert!(SamplerSchedule { chain_count: 0, ..ok }.validate().is_err());
        SamplerSchedule::default().validate().unwrap();
    }
}
