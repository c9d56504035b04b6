//! Benchmark state spaces: octile grids, pancake sorting, the four-peg
//! tower puzzle, sliding tiles, explicit random graphs, and hand-built
//! fixture instances.

pub mod fixtures;
pub mod grid;
pub mod hanoi;
pub mod pancake;
pub mod random_graph;
pub mod tile;
