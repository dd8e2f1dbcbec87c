//! Counter-based jitter stream.
//!
//! Draw `k` of a texture's stream is the `k`-th output of a SplitMix64
//! generator seeded with the texture seed, so any draw can be computed
//! without replaying the ones before it. Lattice point `(i, j)` of a lattice
//! with `columns` points per row uses draws `2c` (x) and `2c + 1` (y) where
//! `c = j * columns + i`.

const GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix_at(seed: u64, draw: u64) -> u64 {
    let mut z = seed.wrapping_add(draw.wrapping_add(1).wrapping_mul(GAMMA));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Uniform value in `[0, 1)` for a draw index.
pub fn jitter_unit(seed: u64, draw: u64) -> f64 {
    (splitmix_at(seed, draw) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Displacement of lattice point `(i, j)`, each axis uniform in
/// `±randomness * pitch / 2`.
pub fn jitter_offset(seed: u64, columns: u64, i: u64, j: u64, randomness: f64, pitch: f64) -> (f64, f64) {
    if randomness == 0.0 {
        return (0.0, 0.0);
    }
    let c = j * columns + i;
    let amp = randomness * pitch / 2.0;
    let dx = (2.0 * jitter_unit(seed, 2 * c) - 1.0) * amp;
    let dy = (2.0 * jitter_unit(seed, 2 * c + 1) - 1.0) * amp;
    (dx, dy)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_splitmix_outputs() {
        // reference values of SplitMix64 seeded with 1234567
        assert_eq!(splitmix_at(1234567, 0), 6457827717110365317);
        assert_eq!(splitmix_at(1234567, 1), 3203168211198807973);
    }

    #[test]
    fn offsets_stay_in_band() {
        for c in 0..500 {
            let (dx, dy) = jitter_offset(9, 10, c % 10, c / 10, 0.8, 10.0);
            assert!(dx.abs() <= 4.0 && dy.abs() <= 4.0);
        }
    }
}
