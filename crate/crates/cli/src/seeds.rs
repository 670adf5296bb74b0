//! Per-run seed derivation.

/// Derives the seed for run `index` from `master`: one splitmix64 scramble
/// of `master + (index + 1) * golden_gamma`. Runs get well-separated,
/// reproducible streams, and run 0 never collides with the master itself.
pub fn run_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
