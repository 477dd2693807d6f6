//! Counter-based random streams.
//!
//! Every random quantity is drawn from a ChaCha8 stream addressed by
//! `(seed, stream, block)`: the seed keys the cipher, the stream id selects
//! one of its 2⁶⁴ independent streams and the block fixes the starting word.
//! Two draws with different addresses never share state, so results do not
//! depend on scheduling or thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// 32-bit words reserved for one block. A row of a sheet at the default
/// resolution uses about 10⁴ words.
const BLOCK_WORDS: u128 = 1 << 40;

/// Generator positioned at the start of block `block` of stream `stream`.
pub fn stream_rng(seed: u64, stream: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.set_word_pos(block as u128 * BLOCK_WORDS);
    rng
}
