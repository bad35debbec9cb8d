//! Multi-threaded shard driver.

use std::sync::atomic::AtomicU32;

use queencover_core::search::{Driver, EngineOutcome, SearchPlan, ShardResult};
use rayon::prelude::*;

use crate::error::CliError;

pub struct Parallel {
    pool: rayon::ThreadPool,
}

impl Parallel {
    /// `workers == 0` uses one thread per available core.
    pub fn new(workers: usize) -> Result<Parallel, CliError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {workers} workers: {e}")))?;
        Ok(Parallel { pool })
    }

    pub fn workers(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Driver for Parallel {
    fn run(&self, plan: &SearchPlan) -> queencover_core::Result<EngineOutcome> {
        let incumbent = AtomicU32::new(plan.seed());
        let results: Vec<ShardResult> = self
            .pool
            .install(|| (0..plan.shard_count()).into_par_iter().map(|s| plan.run_shard(s, &incumbent)).collect());
        plan.finish(results)
    }
}
