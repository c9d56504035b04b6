//! The must-expand graph: which forward/backward state pairs force an
//! expansion, what the cheapest cover of those pairs costs, and how an
//! actual search trace measures up against it.

pub mod matching;

use std::fmt::Write as _;

use rustc_hash::FxHashMap;

use crate::consistency::check_consistency;
use crate::cost::Cost;
use crate::dijkstra::dijkstra;
use crate::space::{Direction, StateSpace};
use crate::trace::SearchTrace;
use matching::{minimum_vertex_cover, Bipartite};

pub const DEFAULT_STATE_CAP: usize = 100_000;
const EDGE_CAP: usize = 20_000_000;

/// Bipartite graph over forward copies (left) and backward copies (right)
/// of the states. An edge joins `u_F` and `v_B` exactly when the pair bound
/// `max(d_F(u)+h_F(u), d_B(v)+h_B(v), d_F(u)+d_B(v))` stays below the
/// optimal cost: no admissible run can leave both sides unexpanded. Only
/// vertices with at least one incident edge are kept.
#[derive(Clone, Debug)]
pub struct MustExpandGraph<S> {
    pub left: Vec<S>,
    pub right: Vec<S>,
    /// Left-indexed adjacency over right indices.
    pub edges: Vec<Vec<u32>>,
    pub c_star: Cost,
    pub d_forward: FxHashMap<S, Cost>,
    pub d_backward: FxHashMap<S, Cost>,
    left_index: FxHashMap<S, u32>,
    right_index: FxHashMap<S, u32>,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum GmxError {
    #[error("state space has {states} reachable states, over the cap of {cap}")]
    CapExceeded { states: usize, cap: usize },
    #[error("must-expand graph would have more than {cap} edges")]
    TooManyEdges { cap: usize },
    #[error("heuristics are not consistent: {0}")]
    Inconsistent(String),
    #[error("no path from start to goal")]
    Unsolvable,
}

/// Enumerate the space with two exact sweeps and materialize the graph.
/// Requires consistent heuristics (verified here over every reachable
/// forward edge); under consistency every state with a finite optimal g is
/// the end of an optimal path, so the pair predicate reduces to arithmetic
/// over the two distance maps.
pub fn build_gmx<S: StateSpace>(
    space: &S,
    state_cap: usize,
) -> Result<MustExpandGraph<S::State>, GmxError> {
    let d_forward = dijkstra(space, space.start(), Direction::Forward);
    if d_forward.len() > state_cap {
        return Err(GmxError::CapExceeded { states: d_forward.len(), cap: state_cap });
    }
    let d_backward = dijkstra(space, space.goal(), Direction::Backward);
    if d_backward.len() > state_cap {
        return Err(GmxError::CapExceeded { states: d_backward.len(), cap: state_cap });
    }
    let report = check_consistency(space, d_forward.keys().copied());
    if let Some(v) = report.violations.first() {
        return Err(GmxError::Inconsistent(v.to_string()));
    }
    let c_star = *d_forward.get(&space.goal()).ok_or(GmxError::Unsolvable)?;

    // candidate sides: f below the optimum, sorted by distance so each left
    // vertex's neighborhood is a prefix of the right side
    let mut left: Vec<(S::State, Cost)> = d_forward
        .iter()
        .filter_map(|(&u, &d)| {
            let h = space.h_forward(u)?;
            (d + h < c_star).then_some((u, d))
        })
        .collect();
    let mut right: Vec<(S::State, Cost)> = d_backward
        .iter()
        .filter_map(|(&v, &d)| {
            let h = space.h_backward(v)?;
            (d + h < c_star).then_some((v, d))
        })
        .collect();
    left.sort_unstable_by(|a, b| (a.1, a.0).cmp(&(b.1, b.0)));
    right.sort_unstable_by(|a, b| (a.1, a.0).cmp(&(b.1, b.0)));

    let mut edge_total = 0usize;
    let mut edges: Vec<Vec<u32>> = Vec::with_capacity(left.len());
    for &(_, du) in &left {
        let take = right.partition_point(|&(_, dv)| du + dv < c_star);
        edge_total += take;
        if edge_total > EDGE_CAP {
            return Err(GmxError::TooManyEdges { cap: EDGE_CAP });
        }
        edges.push((0..take as u32).collect());
    }

    // drop isolated vertices: left rows with no prefix, right columns past
    // the longest prefix
    let max_take = edges.iter().map(Vec::len).max().unwrap_or(0);
    right.truncate(max_take);
    let keep: Vec<bool> = edges.iter().map(|row| !row.is_empty()).collect();
    let mut kept_left = Vec::with_capacity(left.len());
    let mut kept_edges = Vec::with_capacity(edges.len());
    for ((l, row), keep) in left.into_iter().zip(edges).zip(keep) {
        if keep {
            kept_left.push(l.0);
            kept_edges.push(row);
        }
    }
    let right: Vec<S::State> = right.into_iter().map(|(v, _)| v).collect();

    let left_index = kept_left.iter().enumerate().map(|(i, &s)| (s, i as u32)).collect();
    let right_index = right.iter().enumerate().map(|(i, &s)| (s, i as u32)).collect();
    Ok(MustExpandGraph {
        left: kept_left,
        right,
        edges: kept_edges,
        c_star,
        d_forward,
        d_backward,
        left_index,
        right_index,
    })
}

impl<S: Copy + Eq + std::hash::Hash + std::fmt::Display> MustExpandGraph<S> {
    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn as_bipartite(&self) -> Bipartite {
        Bipartite::new(self.left.len(), self.right.len(), self.edges.clone())
    }

    /// Line-based text form: header, vertex lists, then one edge per line
    /// as left/right indices.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "gmx left {} right {} edges {} c_star {}",
            self.left.len(),
            self.right.len(),
            self.edge_count(),
            self.c_star
        )
        .unwrap();
        for (i, s) in self.left.iter().enumerate() {
            writeln!(out, "l {i} {s}").unwrap();
        }
        for (i, s) in self.right.iter().enumerate() {
            writeln!(out, "r {i} {s}").unwrap();
        }
        for (i, row) in self.edges.iter().enumerate() {
            for &j in row {
                writeln!(out, "e {i} {j}").unwrap();
            }
        }
        out
    }
}

/// A minimum vertex cover of the graph, as state lists per side.
#[derive(Clone, Debug)]
pub struct MinCover<S> {
    pub forward_states: Vec<S>,
    pub backward_states: Vec<S>,
    pub size: usize,
}

/// Minimum vertex cover via maximum matching; the two sizes coincide.
pub fn min_vertex_cover<S: Copy + Eq + std::hash::Hash + std::fmt::Display>(
    g: &MustExpandGraph<S>,
) -> MinCover<S> {
    let cover = minimum_vertex_cover(&g.as_bipartite());
    let forward_states = g
        .left
        .iter()
        .zip(&cover.left_in)
        .filter_map(|(&s, &inside)| inside.then_some(s))
        .collect();
    let backward_states = g
        .right
        .iter()
        .zip(&cover.right_in)
        .filter_map(|(&s, &inside)| inside.then_some(s))
        .collect();
    MinCover { forward_states, backward_states, size: cover.size }
}

/// How a trace measures against the graph: necessary expansions (bound in
/// force strictly below the optimum), whether the expanded states cover
/// every edge, and the ratio against the minimum cover.
#[derive(Clone, Debug)]
pub struct CoverReport {
    pub vc_size: usize,
    pub algorithm_cover_size: u64,
    pub is_cover: bool,
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, thiserror::Error)]
#[error("trace does not belong to this instance: {direction} expansion of unreachable state {state}")]
pub struct GradeMismatch {
    pub direction: Direction,
    pub state: String,
}

pub fn grade_trace<S: Copy + Eq + Ord + std::hash::Hash + std::fmt::Display>(
    trace: &SearchTrace<S>,
    g: &MustExpandGraph<S>,
) -> Result<CoverReport, GradeMismatch> {
    let mut left_covered = vec![false; g.left.len()];
    let mut right_covered = vec![false; g.right.len()];
    for e in &trace.expansions {
        let (d_map, index, covered) = match e.direction {
            Direction::Forward => (&g.d_forward, &g.left_index, &mut left_covered),
            Direction::Backward => (&g.d_backward, &g.right_index, &mut right_covered),
        };
        if !d_map.contains_key(&e.state) {
            return Err(GradeMismatch { direction: e.direction, state: e.state.to_string() });
        }
        if let Some(&i) = index.get(&e.state) {
            covered[i as usize] = true;
        }
    }
    let is_cover = g.edges.iter().enumerate().all(|(u, row)| {
        left_covered[u] || row.iter().all(|&v| right_covered[v as usize])
    });
    let vc_size = min_vertex_cover(g).size;
    let algorithm_cover_size = trace.necessary_expansions(g.c_star);
    let ratio = (vc_size > 0).then(|| algorithm_cover_size as f64 / vc_size as f64);
    Ok(CoverReport { vc_size, algorithm_cover_size, is_cover, ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::fixtures::{fixture_theorem4, TheoremFixture};
    use crate::domains::random_graph::ExplicitGraph;
    use crate::nbs::nbs_search;
    use crate::trace::SearchLimits;

    #[test]
    fn single_edge_instance() {
        let space = ExplicitGraph::builder(2, 0, 1).edge(0, 1, Cost::int(1)).build();
        let g = build_gmx(&space, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(g.c_star, Cost::int(1));
        assert_eq!(g.left, vec![0]);
        assert_eq!(g.right, vec![1]);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(min_vertex_cover(&g).size, 1);
    }

    #[test]
    fn fixture_edges_share_the_goal_vertex() {
        // pairs (s_F, g_B) and (t_F, g_B) are forced; {g_B} covers both
        let space = fixture_theorem4(TheoremFixture::I1);
        let g = build_gmx(&space, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(g.c_star, Cost::int(3));
        let mut pairs: Vec<(u32, u32)> = g
            .edges
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().map(move |&v| (u as u32, v)))
            .map(|(u, v)| (g.left[u as usize], g.right[v as usize]))
            .collect();
        pairs.sort_unstable();
        assert_eq!(pairs, vec![(0, 2), (1, 2)]);
        assert_eq!(min_vertex_cover(&g).size, 1);
    }

    #[test]
    fn brute_force_pair_enumeration_agrees() {
        for seed in 0..30 {
            let space = ExplicitGraph::random(40, seed, 0.5);
            let g = build_gmx(&space, DEFAULT_STATE_CAP).unwrap();
            let mut expected: Vec<(u32, u32)> = Vec::new();
            for (&u, &du) in &g.d_forward {
                for (&v, &dv) in &g.d_backward {
                    let (Some(hu), Some(hv)) = (space.h_forward(u), space.h_backward(v)) else {
                        continue;
                    };
                    let bound = (du + hu).max(dv + hv).max(du + dv);
                    if bound < g.c_star {
                        expected.push((u, v));
                    }
                }
            }
            expected.sort_unstable();
            let mut got: Vec<(u32, u32)> = g
                .edges
                .iter()
                .enumerate()
                .flat_map(|(u, row)| {
                    row.iter().map(move |&v| (u as u32, v))
                })
                .map(|(u, v)| (g.left[u as usize], g.right[v as usize]))
                .collect();
            got.sort_unstable();
            assert_eq!(got, expected, "seed {seed}");
        }
    }

    #[test]
    fn perfect_heuristic_on_a_path_leaves_only_sub_optimal_pairs() {
        // 10-state path, h = exact distance: f equals C* everywhere on the
        // path, so edges exist only where the g-sum stays below C*
        let n = 10u32;
        let mut b = ExplicitGraph::builder(n, 0, n - 1);
        for i in 0..n - 1 {
            b = b.edge(i, i + 1, Cost::int(1));
        }
        let h_f: Vec<_> = (0..n).map(|i| Some(Cost::int(n - 1 - i))).collect();
        let h_b: Vec<_> = (0..n).map(|i| Some(Cost::int(i))).collect();
        let space = b.heuristics(h_f, h_b).build();
        let g = build_gmx(&space, DEFAULT_STATE_CAP).unwrap();
        let c = (n - 1) as usize;
        for (u, row) in g.edges.iter().enumerate() {
            for &v in row {
                let du = g.d_forward[&g.left[u]];
                let dv = g.d_backward[&g.right[v as usize]];
                assert!(du + dv < Cost::int(c as u32));
            }
        }
        assert!(g.edge_count() > 0);
    }

    #[test]
    fn unsolvable_instance_is_rejected() {
        let space = ExplicitGraph::builder(2, 0, 1).build();
        assert!(matches!(build_gmx(&space, DEFAULT_STATE_CAP), Err(GmxError::Unsolvable)));
    }

    #[test]
    fn state_cap_is_enforced() {
        let space = ExplicitGraph::random(50, 3, 0.5);
        assert!(matches!(build_gmx(&space, 10), Err(GmxError::CapExceeded { .. })));
    }

    #[test]
    fn grading_the_fixture_trace() {
        let space = fixture_theorem4(TheoremFixture::I1);
        let g = build_gmx(&space, DEFAULT_STATE_CAP).unwrap();
        let result = nbs_search(&space, SearchLimits::NONE);
        let report = grade_trace(&result.trace, &g).unwrap();
        assert!(report.is_cover);
        assert_eq!(report.vc_size, 1);
        assert_eq!(report.algorithm_cover_size, 2);
        assert_eq!(report.ratio, Some(2.0));
    }

    #[test]
    fn foreign_trace_is_rejected() {
        let space = fixture_theorem4(TheoremFixture::I1);
        let g = build_gmx(&space, DEFAULT_STATE_CAP).unwrap();
        let other = ExplicitGraph::random(30, 9, 0.4);
        let result = nbs_search(&other, SearchLimits::NONE);
        assert!(grade_trace(&result.trace, &g).is_err());
    }

    #[test]
    fn empty_graph_grades_any_trace_as_cover() {
        // single edge with a perfect heuristic: no pair bound falls below C*
        let space = ExplicitGraph::builder(2, 0, 1)
            .edge(0, 1, Cost::int(1))
            .heuristics(
                vec![Some(Cost::int(1)), Some(Cost::ZERO)],
                vec![Some(Cost::ZERO), Some(Cost::int(1))],
            )
            .build();
        let g = build_gmx(&space, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(g.edge_count(), 0);
        let result = nbs_search(&space, SearchLimits::NONE);
        let report = grade_trace(&result.trace, &g).unwrap();
        assert!(report.is_cover);
        assert_eq!(report.vc_size, 0);
        assert_eq!(report.ratio, None);
    }
}
