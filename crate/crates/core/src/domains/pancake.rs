//! Pancake sorting: prefix reversals at unit cost, with the gap-count
//! heuristic family.
//!
//! A stack of n pancakes is a permutation of 1..=n read top-down; a flip of
//! length i reverses the first i positions. States pack one pancake per
//! nibble, so n is capped at 16.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cost::Cost;
use crate::space::StateSpace;

pub const MAX_PANCAKES: u8 = 16;

/// A stack as the explicit permutation, top first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PancakeStack(pub Vec<u8>);

impl PancakeStack {
    pub fn sorted(n: u8) -> PancakeStack {
        PancakeStack((1..=n).collect())
    }

    pub fn random(n: u8, seed: u64) -> PancakeStack {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v: Vec<u8> = (1..=n).collect();
        v.shuffle(&mut rng);
        PancakeStack(v)
    }

    pub fn is_valid(&self) -> bool {
        let n = self.0.len();
        n >= 2
            && n <= MAX_PANCAKES as usize
            && {
                let mut seen = [false; MAX_PANCAKES as usize + 1];
                self.0.iter().all(|&p| {
                    let ok = (1..=n as u8).contains(&p) && !seen[p as usize];
                    seen[p as usize] = true;
                    ok
                })
            }
    }

    pub fn pack(&self) -> u64 {
        pack(&self.0)
    }
}

fn pack(perm: &[u8]) -> u64 {
    perm.iter()
        .enumerate()
        .fold(0u64, |acc, (i, &p)| acc | (u64::from(p - 1) << (4 * i)))
}

fn unpack(state: u64, n: u8, out: &mut [u8; MAX_PANCAKES as usize]) {
    for i in 0..n as usize {
        out[i] = ((state >> (4 * i)) & 0xF) as u8 + 1;
    }
}

/// Count adjacencies that any flip sequence must break: positions where
/// neighboring pancakes (including the virtual plate below the stack)
/// differ by more than one. Gaps whose smaller pancake is at most `k` are
/// ignored; `k = 0` is the plain gap count.
pub fn gap_h(perm: &[u8], k: u8) -> u32 {
    let n = perm.len();
    let mut gaps = 0u32;
    for i in 0..n {
        let a = perm[i];
        let b = if i + 1 < n { perm[i + 1] } else { n as u8 + 1 }; // the plate
        if a.abs_diff(b) > 1 && a.min(b) > k {
            gaps += 1;
        }
    }
    gaps
}

/// Search space for one instance: sorted goal, flips of length 2..=n.
#[derive(Clone, Debug)]
pub struct PancakeSpace {
    n: u8,
    start: u64,
    goal: u64,
    k: u8,
    /// 1-based position of each pancake in the start stack; relabeling
    /// through it turns distance-to-start into distance-to-sorted, which
    /// the gap count estimates.
    start_positions: [u8; MAX_PANCAKES as usize + 1],
}

impl PancakeSpace {
    pub fn new(start: &PancakeStack, k: u8) -> PancakeSpace {
        assert!(start.is_valid(), "invalid pancake stack");
        let n = start.0.len() as u8;
        assert!(k < n);
        let mut start_positions = [0u8; MAX_PANCAKES as usize + 1];
        for (i, &p) in start.0.iter().enumerate() {
            start_positions[p as usize] = i as u8 + 1;
        }
        PancakeSpace { n, start: start.pack(), goal: PancakeStack::sorted(n).pack(), k, start_positions }
    }

    pub fn pancakes(&self) -> u8 {
        self.n
    }

    fn flips(&self, s: u64) -> Vec<(u64, Cost)> {
        let mut perm = [0u8; MAX_PANCAKES as usize];
        unpack(s, self.n, &mut perm);
        let mut out = Vec::with_capacity(self.n as usize - 1);
        for len in 2..=self.n as usize {
            let mut flipped = perm;
            flipped[..len].reverse();
            out.push((pack(&flipped[..self.n as usize]), Cost::int(1)));
        }
        out
    }
}

impl StateSpace for PancakeSpace {
    type State = u64;

    fn start(&self) -> u64 {
        self.start
    }

    fn goal(&self) -> u64 {
        self.goal
    }

    fn expand_forward(&self, s: u64) -> Vec<(u64, Cost)> {
        self.flips(s)
    }

    fn expand_backward(&self, s: u64) -> Vec<(u64, Cost)> {
        self.flips(s) // a flip is its own inverse
    }

    fn h_forward(&self, s: u64) -> Option<Cost> {
        let mut perm = [0u8; MAX_PANCAKES as usize];
        unpack(s, self.n, &mut perm);
        Some(Cost::int(gap_h(&perm[..self.n as usize], self.k)))
    }

    fn h_backward(&self, s: u64) -> Option<Cost> {
        // relabel so the start stack reads as sorted, then count gaps there
        let mut perm = [0u8; MAX_PANCAKES as usize];
        unpack(s, self.n, &mut perm);
        let mut relabeled = [0u8; MAX_PANCAKES as usize];
        for i in 0..self.n as usize {
            relabeled[i] = self.start_positions[perm[i] as usize];
        }
        Some(Cost::int(gap_h(&relabeled[..self.n as usize], self.k)))
    }

    fn min_edge_cost(&self) -> Cost {
        Cost::int(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consistency::check_consistency;
    use crate::dijkstra::dijkstra;
    use crate::space::Direction;

    #[test]
    fn sorted_stack_has_no_gaps() {
        for k in 0..4 {
            assert_eq!(gap_h(&[1, 2, 3, 4, 5], k), 0);
        }
    }

    #[test]
    fn single_gap_counts_once() {
        // (2,1,3,4): only the 1-3 adjacency gaps, and one flip solves it
        assert_eq!(gap_h(&[2, 1, 3, 4], 0), 1);
        let space = PancakeSpace::new(&PancakeStack(vec![2, 1, 3, 4]), 0);
        let d = dijkstra(&space, space.goal(), Direction::Backward);
        assert_eq!(d[&space.start()], Cost::int(1));
    }

    #[test]
    fn ignoring_small_pancakes_weakens_monotonically() {
        for seed in 0..200 {
            let stack = PancakeStack::random(8, seed);
            for k in 1..8 {
                assert!(gap_h(&stack.0, k) <= gap_h(&stack.0, k - 1), "{stack:?} k={k}");
            }
        }
    }

    #[test]
    fn gap_is_admissible_and_consistent_on_the_full_8_stack_space() {
        let space = PancakeSpace::new(&PancakeStack::random(8, 3), 0);
        let d = dijkstra(&space, space.goal(), Direction::Backward);
        let mut states: Vec<u64> = d.keys().copied().collect();
        states.sort_unstable();
        states.truncate(2000);
        for &s in &states {
            let h = space.h_forward(s).unwrap();
            assert!(h <= d[&s], "inadmissible at {s:#x}");
        }
        let report = check_consistency(&space, states);
        assert!(report.is_clean(), "{:?}", report.violations.first());
    }

    #[test]
    fn backward_heuristic_anchors_at_the_start() {
        let stack = PancakeStack::random(9, 17);
        let space = PancakeSpace::new(&stack, 0);
        assert_eq!(space.h_backward(space.start()), Some(Cost::ZERO));
    }

    #[test]
    fn flip_relation_is_symmetric() {
        let space = PancakeSpace::new(&PancakeStack::random(7, 5), 0);
        let children = space.expand_forward(space.start());
        assert_eq!(children.len(), 6);
        for (child, c) in children {
            assert!(space.expand_backward(child).contains(&(space.start(), c)));
        }
    }

    #[test]
    fn same_seed_same_stack() {
        assert_eq!(PancakeStack::random(10, 4), PancakeStack::random(10, 4));
        assert!(PancakeStack::random(10, 4).is_valid());
    }
}
