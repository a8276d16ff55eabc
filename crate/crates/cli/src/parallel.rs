//! Monte Carlo across the rayon pool. Chunks are drawn from fixed sample
//! indices and merged in order, so results do not depend on the number of
//! workers.

use gct_core::transform::{chunks, merge_chunks, montecarlo_chunk};
use gct_core::{GrassmannianSpec, RunningStats, Subspace};
use rayon::prelude::*;

pub fn montecarlo<G>(spec: &GrassmannianSpec, seed: u64, n: u64, outputs: usize, g: G) -> Vec<RunningStats>
where
    G: Fn(&Subspace, &mut [f64]) + Sync,
{
    let parts: Vec<Vec<RunningStats>> = chunks(n)
        .into_par_iter()
        .map(|(start, len)| montecarlo_chunk(spec, seed, start, len, outputs, &g))
        .collect();
    merge_chunks(&parts, outputs)
}
