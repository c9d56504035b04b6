//! Bidirectional heuristic search over implicit state spaces.
//!
//! The centerpiece is a front-to-end bidirectional algorithm that selects
//! whole forward/backward *pairs* of nodes by their joint lower bound and
//! expands both sides, backed by a dual waiting/ready open list that finds
//! the minimum pair without materializing the cross product. Around it:
//!
//! * unidirectional best-first search, bidirectional A* with
//!   trimming/nipping economies, and the meet-in-the-middle family, all
//!   sharing one node-bookkeeping core so expansion counts compare cleanly;
//! * benchmark domains (octile grids with the standard map/scenario
//!   formats, pancake sorting with gap heuristics, sliding tiles with
//!   Manhattan distance, the four-peg tower puzzle with additive pattern
//!   databases, seeded random graphs with distance-scaled heuristics);
//! * an analysis toolkit that materializes the bipartite must-expand graph
//!   of an instance, computes its minimum vertex cover by maximum matching,
//!   and grades search traces against the cover bounds.

pub mod baselines;
pub mod consistency;
pub mod cost;
pub mod dijkstra;
pub mod domains;
mod heap;
mod incumbent;
pub mod mx;
pub mod nbs;
pub mod node;
pub mod open_list;
pub mod space;
pub mod trace;

pub use baselines::{astar_search, bs_star_search, mm_search, InconsistentHeuristic, MMParams};
pub use consistency::{check_consistency, ConsistencyReport, Violation};
pub use cost::{pair_lower_bound, Cost};
pub use dijkstra::{dijkstra, dijkstra_to};
pub use mx::{build_gmx, grade_trace, min_vertex_cover, CoverReport, MustExpandGraph};
pub use nbs::nbs_search;
pub use node::{reconstruct_path, NodeId, NodeTable, SearchNode};
pub use open_list::{DualOpenList, Prepared};
pub use space::{Direction, PerDirection, StateSpace};
pub use trace::{Expansion, SearchLimits, SearchResult, SearchTrace, Termination};
