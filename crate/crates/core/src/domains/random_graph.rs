//! Explicit directed graphs: hand-built fixtures and seeded random
//! instances with distance-scaled heuristics of controllable strength.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use crate::cost::Cost;
use crate::dijkstra::dijkstra;
use crate::space::{Direction, StateSpace};

/// A small graph held fully in memory. States are dense indices; heuristic
/// tables default to zero everywhere.
#[derive(Clone, Debug)]
pub struct ExplicitGraph {
    start: u32,
    goal: u32,
    forward: Vec<Vec<(u32, Cost)>>,
    backward: Vec<Vec<(u32, Cost)>>,
    h_forward: Option<Vec<Option<Cost>>>,
    h_backward: Option<Vec<Option<Cost>>>,
    min_edge: Cost,
}

pub struct ExplicitGraphBuilder {
    states: u32,
    start: u32,
    goal: u32,
    edges: FxHashMap<(u32, u32), Cost>,
    h_forward: Option<Vec<Option<Cost>>>,
    h_backward: Option<Vec<Option<Cost>>>,
}

impl ExplicitGraph {
    pub fn builder(states: u32, start: u32, goal: u32) -> ExplicitGraphBuilder {
        ExplicitGraphBuilder {
            states,
            start,
            goal,
            edges: FxHashMap::default(),
            h_forward: None,
            h_backward: None,
        }
    }

    pub fn state_count(&self) -> u32 {
        self.forward.len() as u32
    }

    /// Seeded random solvable instance with `alpha`-scaled exact-distance
    /// heuristics: `h(u) = round(alpha · d)` with `alpha` in `[0, 1]`.
    /// Rounding a scaled true distance keeps both admissibility and
    /// consistency on integer edge costs. States the oracle cannot reach
    /// get an infinite estimate.
    pub fn random(states: u32, seed: u64, alpha: f64) -> ExplicitGraph {
        assert!(states >= 2);
        assert!((0.0..=1.0).contains(&alpha));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (start, goal) = (0, states - 1);
        let mut b = ExplicitGraph::builder(states, start, goal);

        // a random spine keeps every instance solvable
        let mut spine: Vec<u32> = (1..states - 1).collect();
        use rand::seq::SliceRandom;
        spine.shuffle(&mut rng);
        spine.truncate(rng.gen_range(1..=(states as usize / 4).max(1)));
        let mut prev = start;
        for s in spine.into_iter().chain([goal]) {
            b = b.edge(prev, s, Cost::int(rng.gen_range(1..=10)));
            prev = s;
        }
        let extra = states as usize * 3;
        for _ in 0..extra {
            let u = rng.gen_range(0..states);
            let v = rng.gen_range(0..states);
            if u != v {
                b = b.edge(u, v, Cost::int(rng.gen_range(1..=10)));
            }
        }
        let bare = b.build();
        bare.with_scaled_oracle_heuristics(alpha)
    }

    /// Attach `round(alpha · true distance)` heuristic tables in both
    /// directions, computed by exact sweeps over this graph.
    pub fn with_scaled_oracle_heuristics(mut self, alpha: f64) -> ExplicitGraph {
        let to_goal = dijkstra(&self, self.goal, Direction::Backward);
        let from_start = dijkstra(&self, self.start, Direction::Forward);
        let scale = |d: Option<&Cost>| -> Option<Cost> {
            let d = d?;
            debug_assert_eq!(d.diagonals(), 0);
            Some(Cost::int((alpha * d.units() as f64).round() as u32))
        };
        let n = self.forward.len() as u32;
        self.h_forward = Some((0..n).map(|s| scale(to_goal.get(&s))).collect());
        self.h_backward = Some((0..n).map(|s| scale(from_start.get(&s))).collect());
        self
    }
}

impl ExplicitGraphBuilder {
    /// Add a directed edge; parallel edges collapse to the cheapest.
    pub fn edge(mut self, from: u32, to: u32, cost: Cost) -> Self {
        assert!(from < self.states && to < self.states);
        self.edges
            .entry((from, to))
            .and_modify(|c| *c = (*c).min(cost))
            .or_insert(cost);
        self
    }

    pub fn heuristics(
        mut self,
        h_forward: Vec<Option<Cost>>,
        h_backward: Vec<Option<Cost>>,
    ) -> Self {
        assert_eq!(h_forward.len(), self.states as usize);
        assert_eq!(h_backward.len(), self.states as usize);
        self.h_forward = Some(h_forward);
        self.h_backward = Some(h_backward);
        self
    }

    pub fn build(self) -> ExplicitGraph {
        let n = self.states as usize;
        let mut forward: Vec<Vec<(u32, Cost)>> = vec![Vec::new(); n];
        let mut backward: Vec<Vec<(u32, Cost)>> = vec![Vec::new(); n];
        let mut min_edge: Option<Cost> = None;
        let mut edges: Vec<((u32, u32), Cost)> = self.edges.into_iter().collect();
        edges.sort_unstable(); // deterministic expansion order
        for ((u, v), c) in edges {
            forward[u as usize].push((v, c));
            backward[v as usize].push((u, c));
            min_edge = Some(min_edge.map_or(c, |m: Cost| m.min(c)));
        }
        ExplicitGraph {
            start: self.start,
            goal: self.goal,
            forward,
            backward,
            h_forward: self.h_forward,
            h_backward: self.h_backward,
            min_edge: min_edge.unwrap_or(Cost::int(1)),
        }
    }
}

impl StateSpace for ExplicitGraph {
    type State = u32;

    fn start(&self) -> u32 {
        self.start
    }

    fn goal(&self) -> u32 {
        self.goal
    }

    fn expand_forward(&self, s: u32) -> Vec<(u32, Cost)> {
        self.forward[s as usize].clone()
    }

    fn expand_backward(&self, s: u32) -> Vec<(u32, Cost)> {
        self.backward[s as usize].clone()
    }

    fn h_forward(&self, s: u32) -> Option<Cost> {
        match &self.h_forward {
            Some(table) => table[s as usize],
            None => Some(Cost::ZERO),
        }
    }

    fn h_backward(&self, s: u32) -> Option<Cost> {
        match &self.h_backward {
            Some(table) => table[s as usize],
            None => Some(Cost::ZERO),
        }
    }

    fn min_edge_cost(&self) -> Cost {
        self.min_edge
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consistency::check_consistency;
    use crate::dijkstra::dijkstra_to;

    #[test]
    fn parallel_edges_collapse_to_cheapest() {
        let g = ExplicitGraph::builder(2, 0, 1)
            .edge(0, 1, Cost::int(5))
            .edge(0, 1, Cost::int(2))
            .edge(0, 1, Cost::int(7))
            .build();
        assert_eq!(g.expand_forward(0), vec![(1, Cost::int(2))]);
        assert_eq!(g.expand_backward(1), vec![(0, Cost::int(2))]);
    }

    #[test]
    fn same_seed_means_same_instance() {
        let a = ExplicitGraph::random(50, 7, 0.5);
        let b = ExplicitGraph::random(50, 7, 0.5);
        for s in 0..50 {
            assert_eq!(a.expand_forward(s), b.expand_forward(s));
            assert_eq!(a.h_forward(s), b.h_forward(s));
        }
    }

    #[test]
    fn random_instances_are_solvable() {
        for seed in 0..20 {
            let g = ExplicitGraph::random(30, seed, 0.3);
            assert!(dijkstra_to(&g, g.start(), g.goal(), Direction::Forward).is_some());
        }
    }

    #[test]
    fn scaled_heuristics_stay_consistent_and_admissible() {
        for (seed, alpha) in [(1u64, 0.0), (2, 0.31), (3, 0.77), (4, 1.0)] {
            let g = ExplicitGraph::random(60, seed, alpha);
            let report = check_consistency(&g, 0..60);
            assert!(report.is_clean(), "seed {seed} alpha {alpha}: {:?}", report.violations.first());
            let d = dijkstra(&g, g.goal(), Direction::Backward);
            for s in 0..60 {
                if let (Some(h), Some(&dist)) = (g.h_forward(s), d.get(&s)) {
                    assert!(h <= dist, "inadmissible at {s}");
                }
            }
        }
    }

    #[test]
    fn expansion_relation_inverts() {
        let g = ExplicitGraph::random(40, 11, 0.5);
        for u in 0..40 {
            for (v, c) in g.expand_forward(u) {
                assert!(g.expand_backward(v).contains(&(u, c)));
            }
            for (p, c) in g.expand_backward(u) {
                assert!(g.expand_forward(p).contains(&(u, c)));
            }
        }
    }
}
