use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::stats::ZTestConfig;

/// Genetic algorithm parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub tournament_size: usize,
    pub elite_count: usize,
    pub pool_size: usize,
    pub rng_seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 50,
            generations: 30,
            crossover_rate: 0.8,
            mutation_rate: 0.1,
            tournament_size: 2,
            elite_count: 2,
            pool_size: 100,
            rng_seed: 42,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.population_size == 0 {
            return fail("population_size must be positive".into());
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return fail(format!(
                "crossover_rate must lie in [0, 1], got {}",
                self.crossover_rate
            ));
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return fail(format!(
                "mutation_rate must lie in [0, 1], got {}",
                self.mutation_rate
            ));
        }
        if self.tournament_size < 2 {
            return fail(format!(
                "tournament_size must be at least 2, got {}",
                self.tournament_size
            ));
        }
        if self.elite_count >= self.population_size {
            return fail(format!(
                "elite_count ({}) must be smaller than population_size ({})",
                self.elite_count, self.population_size
            ));
        }
        if self.pool_size == 0 {
            return fail("pool_size must be positive".into());
        }
        Ok(())
    }
}

/// Everything that parameterises one training run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct PipelineConfig<T> {
    pub bins: usize,
    pub max_len: usize,
    /// Holds `minsup`, which also bounds rule generation.
    pub ztest: ZTestConfig<T>,
    pub ga: GaConfig,
}

impl<T: Scalar> Default for PipelineConfig<T> {
    fn default() -> Self {
        PipelineConfig {
            bins: 3,
            max_len: 4,
            ztest: ZTestConfig::default(),
            ga: GaConfig::default(),
        }
    }
}

impl<T: Scalar> PipelineConfig<T> {
    pub fn minsup(&self) -> T {
        self.ztest.minsup
    }

    pub fn validate(&self) -> Result<()> {
        if self.bins < 2 {
            return Err(Error::Config(format!(
                "bins must be at least 2, got {}",
                self.bins
            )));
        }
        if self.max_len == 0 {
            return Err(Error::Config("max_len must be at least 1".into()));
        }
        self.ztest.validate()?;
        self.ga.validate()
    }
}
