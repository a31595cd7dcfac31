//! Fixtures shared by the benchmarks.

use tessera_core::necklace::cached_necklace;
use tessera_core::oracle::sample_in_tile;
use tessera_core::{Case, ExactPoint};

/// One interior point of every tile of level `c`, in necklace order.
pub fn interior_points(case: Case, c: u64, seed: u64) -> Vec<ExactPoint> {
    let n = cached_necklace(case, c);
    n.beads
        .iter()
        .enumerate()
        .flat_map(|(i, t)| sample_in_tile(case, t, 1, seed.wrapping_add(i as u64)))
        .collect()
}
