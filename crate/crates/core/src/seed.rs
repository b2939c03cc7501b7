//! Per-task seeds derived from one root seed.
//!
//! Task `i` of a run with root seed `r` uses `mix(r ^ mix(i + 1))`, where
//! `mix` is the SplitMix64 finalizer. Nested tasks derive again from their
//! own seed.

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn derive(root: u64, index: u64) -> u64 {
    mix(root ^ mix(index.wrapping_add(1)))
}
