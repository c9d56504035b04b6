//! Comparison algorithms sharing the same node bookkeeping and trace format
//! as the paired bidirectional search.

mod astar;
mod bs_star;
mod mm;

pub use astar::astar_search;
pub use bs_star::{bs_star_search, InconsistentHeuristic};
pub use mm::{mm_search, MMParams};
