//! Four-peg tower puzzle with additive pattern databases.
//!
//! A state assigns each disc a peg (two bits per disc, disc 0 smallest);
//! stack order within a peg is forced by size, so the assignment is the
//! whole state and every assignment is legal. A move takes a peg's top
//! (smallest) disc to any peg whose top is larger. Heuristics sum exact
//! distances of disjoint disc groups in the abstraction where only that
//! group's discs exist; each real move advances exactly one group, so the
//! sum stays admissible and consistent.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::Cost;
use crate::space::StateSpace;

pub const PEGS: u8 = 4;
pub const MAX_DISCS: u8 = 14;

/// Peg assignment per disc, smallest first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HanoiState(pub Vec<u8>);

impl HanoiState {
    pub fn all_on_peg(discs: u8, peg: u8) -> HanoiState {
        assert!(peg < PEGS);
        HanoiState(vec![peg; discs as usize])
    }

    /// Canonical goal: every disc on the last peg.
    pub fn canonical_goal(discs: u8) -> HanoiState {
        HanoiState::all_on_peg(discs, PEGS - 1)
    }

    pub fn random(discs: u8, seed: u64) -> HanoiState {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        HanoiState((0..discs).map(|_| rng.gen_range(0..PEGS)).collect())
    }

    pub fn pack(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &p)| acc | (u32::from(p) << (2 * i)))
    }

    pub fn unpack(discs: u8, state: u32) -> HanoiState {
        HanoiState((0..discs).map(|i| ((state >> (2 * i)) & 0b11) as u8).collect())
    }
}

/// Successors shared by the full space and the abstractions: move each
/// peg's top disc to every peg with a larger top.
fn moves(state: u32, discs: u8) -> Vec<u32> {
    // per peg, the smallest disc on it
    let mut top = [u8::MAX; PEGS as usize];
    for disc in (0..discs).rev() {
        top[((state >> (2 * disc)) & 0b11) as usize] = disc;
    }
    let mut out = Vec::with_capacity(6);
    for from in 0..PEGS as usize {
        let disc = top[from];
        if disc == u8::MAX {
            continue;
        }
        for to in 0..PEGS as usize {
            if to != from && top[to] > disc {
                let cleared = state & !(0b11 << (2 * disc));
                out.push(cleared | ((to as u32) << (2 * disc)));
            }
        }
    }
    out
}

/// One disc group of an additive database: which discs it covers and the
/// exact abstract distances to the anchor.
#[derive(Clone, Debug)]
struct PdbGroup {
    discs: Vec<u8>,
    table: Vec<u16>,
}

impl PdbGroup {
    fn project(&self, state: u32) -> u32 {
        self.discs
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &d)| acc | (((state >> (2 * d)) & 0b11) << (2 * i)))
    }
}

/// Additive pattern database anchored at one state.
#[derive(Clone, Debug)]
pub struct AdditivePdb {
    groups: Vec<PdbGroup>,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum PdbError {
    #[error("partition {0:?} does not sum to {1} discs")]
    BadPartition(Vec<u8>, u8),
    #[error("pattern tables would need {need} entries, over the cap of {cap}")]
    CapExceeded { need: usize, cap: usize },
}

pub const DEFAULT_PDB_CAP: usize = 1 << 26;

/// Build exact per-group distance tables to `anchor`. Groups are carved
/// off the partition sizes from the largest disc down, matching the usual
/// "big discs + top discs" splits.
pub fn build_hanoi_pdb(
    anchor: &HanoiState,
    partition: &[u8],
    cap: usize,
) -> Result<AdditivePdb, PdbError> {
    let discs = anchor.0.len() as u8;
    if partition.iter().map(|&g| g as u32).sum::<u32>() != u32::from(discs)
        || partition.iter().any(|&g| g == 0)
    {
        return Err(PdbError::BadPartition(partition.to_vec(), discs));
    }
    let need: usize = partition.iter().map(|&g| 1usize << (2 * g)).sum();
    if need > cap {
        return Err(PdbError::CapExceeded { need, cap });
    }
    let packed_anchor = anchor.pack();
    let mut groups = Vec::with_capacity(partition.len());
    let mut next = discs;
    for &size in partition {
        let group_discs: Vec<u8> = (next - size..next).collect();
        next -= size;
        groups.push(build_group(packed_anchor, group_discs));
    }
    Ok(AdditivePdb { groups })
}

fn build_group(packed_anchor: u32, group_discs: Vec<u8>) -> PdbGroup {
    let m = group_discs.len() as u8;
    let size = 1usize << (2 * m);
    // abstract anchor: the group's discs relabeled 0..m
    let shell = PdbGroup { discs: group_discs, table: Vec::new() };
    let abstract_anchor = shell.project(packed_anchor);
    let mut table = vec![u16::MAX; size];
    let mut queue = VecDeque::new();
    table[abstract_anchor as usize] = 0;
    queue.push_back(abstract_anchor);
    while let Some(s) = queue.pop_front() {
        let d = table[s as usize];
        for next in moves(s, m) {
            if table[next as usize] == u16::MAX {
                table[next as usize] = d + 1;
                queue.push_back(next);
            }
        }
    }
    debug_assert!(table.iter().all(|&d| d != u16::MAX));
    PdbGroup { discs: shell.discs, table }
}

impl AdditivePdb {
    pub fn estimate(&self, state: u32) -> u32 {
        self.groups
            .iter()
            .map(|g| u32::from(g.table[g.project(state) as usize]))
            .sum()
    }
}

/// One instance: random start, canonical goal, per-instance databases
/// anchored at both endpoints.
#[derive(Clone, Debug)]
pub struct HanoiSpace {
    discs: u8,
    start: u32,
    goal: u32,
    pdb_forward: AdditivePdb,
    pdb_backward: AdditivePdb,
}

impl HanoiSpace {
    pub fn new(start: &HanoiState, partition: &[u8], cap: usize) -> Result<HanoiSpace, PdbError> {
        let discs = start.0.len() as u8;
        assert!((1..=MAX_DISCS).contains(&discs));
        let goal = HanoiState::canonical_goal(discs);
        Ok(HanoiSpace {
            discs,
            start: start.pack(),
            goal: goal.pack(),
            pdb_forward: build_hanoi_pdb(&goal, partition, cap)?,
            pdb_backward: build_hanoi_pdb(start, partition, cap)?,
        })
    }

    pub fn discs(&self) -> u8 {
        self.discs
    }
}

impl StateSpace for HanoiSpace {
    type State = u32;

    fn start(&self) -> u32 {
        self.start
    }

    fn goal(&self) -> u32 {
        self.goal
    }

    fn expand_forward(&self, s: u32) -> Vec<(u32, Cost)> {
        moves(s, self.discs).into_iter().map(|n| (n, Cost::int(1))).collect()
    }

    fn expand_backward(&self, s: u32) -> Vec<(u32, Cost)> {
        self.expand_forward(s) // disc moves are reversible
    }

    fn h_forward(&self, s: u32) -> Option<Cost> {
        Some(Cost::int(self.pdb_forward.estimate(s)))
    }

    fn h_backward(&self, s: u32) -> Option<Cost> {
        Some(Cost::int(self.pdb_backward.estimate(s)))
    }

    fn min_edge_cost(&self) -> Cost {
        Cost::int(1)
    }
}
