//! Brownian sheets on the Lie algebra and their stochastic exponentials in
//! the group.
//!
//! Randomness is addressed by `(seed, stream, block)` through [`stream_rng`];
//! a Monte Carlo replica owns one stream, a sheet row one block.

mod entrance;
mod exponential;
mod gauge;
mod rng;
mod sheet;

pub use entrance::{sample_entrance, uniform_in_alcove, ENVELOPE_FACTOR};
pub use exponential::{
    cartan_to_algebra, exponential_endpoint, mode_parameters, simulate_endpoint, simulate_group_sheet,
    stochastic_exponential, GroupPath, SheetMode,
};
pub use gauge::{constant_loop, gauge_transform, random_group_element, random_smooth_loop};
pub use rng::stream_rng;
pub use sheet::{sample_sheet, SheetGrid};
