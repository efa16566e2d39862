use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// What a random stream is used for inside one recursion node.
#[derive(Clone, Copy)]
#[repr(u32)]
pub(crate) enum Purpose {
    Halving = 1,
    Coloring = 2,
}

/// Independent stream for `(seed, node path, purpose, round)`. Node paths
/// are heap indices (root 1, children `2p` and `2p+1`), so every random
/// decision is a pure function of its position in the recursion and runs
/// are reproducible regardless of evaluation order.
pub(crate) fn stream(seed: u64, path: u64, purpose: Purpose, round: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&path.to_le_bytes());
    key[16..24].copy_from_slice(&round.to_le_bytes());
    key[24..28].copy_from_slice(&(purpose as u32).to_le_bytes());
    ChaCha8Rng::from_seed(key)
}
