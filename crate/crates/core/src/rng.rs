//! Counter-based random numbers.
//!
//! Edge labels and seed streams are pure functions of `(seed, counter)`,
//! so results do not depend on evaluation order or on how work is split
//! across threads.

/// SplitMix64 finalizer; a full-period mixer with good avalanche.
#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stateless PRF value for a `(seed, counter)` pair.
#[inline]
pub fn mix(seed: u64, counter: u64) -> u64 {
    splitmix64(seed ^ splitmix64(counter.wrapping_add(0xA076_1D64_78BD_642F)))
}

/// Uniform in `[0, 1)` with 53 random bits.
#[inline]
pub fn unit_f64(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
}

/// Label of one edge under the standard coupling: uniform in `[0, 1)`,
/// independent across edges, reproducible for a fixed `(seed, index)`.
#[inline]
pub fn edge_label(seed: u64, edge_index: usize) -> f64 {
    unit_f64(mix(seed, edge_index as u64))
}

/// Derived seed for the `i`-th independent replica of a run.
#[inline]
pub fn subseed(seed: u64, replica: u64) -> u64 {
    mix(seed, replica ^ 0x5EED_0000_0000_0000)
}
