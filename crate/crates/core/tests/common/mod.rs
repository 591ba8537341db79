//! Test-only oracles.

use ghzlab::Bits;

/// Tries every decoder table over `arity` input bits against `keys`.
pub fn brute_force_decoder(keys: &[(u32, bool)], arity: usize) -> bool {
    assert!(arity <= 4, "oracle is exponential in 2^arity");
    (0..1u64 << (1 << arity)).any(|table| {
        keys.iter()
            .all(|&(k, goal)| ((table >> k) & 1 == 1) == goal)
    })
}

/// Bits of `w` selected by `mask`, low positions first.
pub fn pick(world_bits: usize, mask: u32, w: u32) -> Bits {
    (0..world_bits)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| w >> i & 1 == 1)
        .collect()
}
