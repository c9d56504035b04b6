//! Near-optimal bidirectional search: paired expansion driven by the dual
//! waiting/ready open list.
//!
//! Each iteration selects a forward/backward pair whose joint lower bound is
//! minimal over all open pairs (ties toward smaller forward g, then smaller
//! backward g) and expands *both* endpoints. The search stops as soon as the
//! rising bound reaches the incumbent solution cost, or when a frontier
//! empties — at which point the incumbent, if any, is optimal.

use std::time::Instant;

use crate::cost::Cost;
use crate::incumbent::Incumbent;
use crate::node::{NodeId, Offer};
use crate::open_list::{DualOpenList, Prepared};
use crate::space::{Direction, StateSpace};
use crate::trace::{Expansion, SearchLimits, SearchResult, SearchTrace, Termination};

/// Run the paired bidirectional search to optimality.
pub fn nbs_search<S: StateSpace>(space: &S, limits: SearchLimits) -> SearchResult<S::State> {
    let started = Instant::now();
    if space.start() == space.goal() {
        return SearchResult::trivial(space.start());
    }

    let mut open = DualOpenList::new();
    let mut trace = SearchTrace::default();
    let mut incumbent = Incumbent::new();

    open.insert(Direction::Forward, space.start(), Cost::ZERO, || space.h_forward(space.start()), None);
    open.insert(Direction::Backward, space.goal(), Cost::ZERO, || space.h_backward(space.goal()), None);

    let termination = loop {
        if open.prepare_best() == Prepared::Exhausted {
            // One frontier ran dry. Any incumbent can no longer be beaten:
            // every solution crosses the exhausted frontier.
            break match incumbent.cost {
                Some(_) => Termination::Optimal,
                None => Termination::Exhausted,
            };
        }
        if incumbent.proves_optimal(open.lower_bound()) {
            break Termination::Optimal;
        }
        if let Some(term) = limits.exceeded(trace.expanded(), started) {
            break term;
        }
        let (u, v) = open.pop_ready_pair().expect("prepare_best found a pair");
        expand(space, &mut open, Direction::Forward, u, &mut incumbent, &mut trace);
        expand(space, &mut open, Direction::Backward, v, &mut incumbent, &mut trace);
    };

    let (meeting_state, solution_path) = match termination {
        Termination::Optimal => match incumbent.solution(open.tables()) {
            Some((m, p)) => (Some(m), Some(p)),
            None => (None, None),
        },
        _ => (None, None),
    };
    trace.max_open_size = open.max_open_size();
    trace.queue_insertions = open.insertions();
    trace.queue_op_units = open.op_units();
    trace.wall_time = started.elapsed();
    SearchResult {
        cost: if termination == Termination::Optimal { incumbent.cost } else { None },
        meeting_state,
        solution_path,
        termination,
        trace,
    }
}

/// Expand one closed node: generate children, fold collisions with the
/// opposite frontier into the incumbent, and run duplicate detection before
/// admitting children to the waiting queue. A child beating a closed entry
/// reopens it.
pub(crate) fn expand<S: StateSpace>(
    space: &S,
    open: &mut DualOpenList<S::State>,
    d: Direction,
    id: NodeId,
    incumbent: &mut Incumbent<S::State>,
    trace: &mut SearchTrace<S::State>,
) {
    let node = open.node(d, id);
    trace.expansions.push(Expansion {
        direction: d,
        state: node.state,
        g: node.g,
        f: node.f,
        pair_lb: open.lower_bound(),
    });
    for (child, edge_cost) in space.expand(d, node.state) {
        trace.generated += 1;
        let g_child = node.g + edge_cost;
        let offer = open.insert(d, child, g_child, || space.heuristic(d, child), Some(id));
        if matches!(offer, Offer::Reopened(_)) {
            trace.reopened += 1;
        }
        if let Some(new_id) = offer.accepted() {
            // collision with the other frontier's record of this state
            if let Some(opposite_id) = open.table(d.opposite()).current(child) {
                let g_opposite = open.table(d.opposite()).entry(opposite_id).g;
                incumbent.offer(child, d, new_id, opposite_id, g_child + g_opposite);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dijkstra::dijkstra_to;
    use crate::domains::fixtures::{fixture_theorem4, TheoremFixture};
    use crate::domains::random_graph::ExplicitGraph;

    #[test]
    fn three_state_fixture_needs_two_expansions() {
        for which in [TheoremFixture::I1, TheoremFixture::I2] {
            let space = fixture_theorem4(which);
            let result = nbs_search(&space, SearchLimits::NONE);
            assert_eq!(result.cost, Some(Cost::int(3)));
            assert_eq!(result.trace.expanded(), 2, "{which:?}");
            let dirs: Vec<_> = result.trace.expansions.iter().map(|e| (e.direction, e.state)).collect();
            assert_eq!(dirs, vec![(Direction::Forward, 0), (Direction::Backward, 2)]);
            let path = result.solution_path.unwrap();
            assert_eq!(path, vec![0, 2]);
        }
    }

    #[test]
    fn identical_start_and_goal_short_circuits() {
        let space = ExplicitGraph::builder(1, 0, 0).build();
        let result = nbs_search(&space, SearchLimits::NONE);
        assert_eq!(result.cost, Some(Cost::ZERO));
        assert_eq!(result.trace.expanded(), 0);
        assert_eq!(result.solution_path, Some(vec![0]));
    }

    #[test]
    fn disconnected_goal_reports_no_solution() {
        let space = ExplicitGraph::builder(3, 0, 2).edge(0, 1, Cost::int(1)).build();
        let result = nbs_search(&space, SearchLimits::NONE);
        assert_eq!(result.cost, None);
        assert_eq!(result.termination, Termination::Exhausted);
    }

    #[test]
    fn expansion_cap_stops_early() {
        let space = ExplicitGraph::random(120, 5, 0.0);
        let result =
            nbs_search(&space, SearchLimits { max_expansions: Some(6), ..Default::default() });
        assert_eq!(result.termination, Termination::ExpansionCapReached);
        assert_eq!(result.cost, None);
        // caps are checked per iteration, and an iteration expands a pair
        assert!(result.trace.expanded() <= 8);
    }

    #[test]
    fn first_expansion_of_i1_updates_incumbent() {
        // expanding s forward yields t (g=1) and g (g=3); the backward root
        // at g has g=0, so the incumbent becomes 3
        let space = fixture_theorem4(TheoremFixture::I1);
        let mut open = DualOpenList::new();
        let mut incumbent = Incumbent::new();
        let mut trace = SearchTrace::default();
        open.insert(Direction::Forward, 0, Cost::ZERO, || Some(Cost::ZERO), None);
        open.insert(Direction::Backward, 2, Cost::ZERO, || Some(Cost::ZERO), None);
        assert_eq!(open.prepare_best(), crate::open_list::Prepared::Found);
        let (s, _) = open.pop_ready_pair().unwrap();
        expand(&space, &mut open, Direction::Forward, s, &mut incumbent, &mut trace);
        assert_eq!(incumbent.cost, Some(Cost::int(3)));
        assert_eq!(trace.generated, 2);
        assert_eq!(open.table(Direction::Forward).recorded_g(1), Some(Cost::int(1)));
    }

    #[test]
    fn duplicate_child_with_equal_g_is_discarded() {
        // two unit edges into state 2; the second arrival ties on g and drops
        let space = ExplicitGraph::builder(4, 0, 3)
            .edge(0, 1, Cost::int(1))
            .edge(0, 2, Cost::int(1))
            .edge(1, 2, Cost::ZERO)
            .edge(2, 3, Cost::int(1))
            .build();
        let result = nbs_search(&space, SearchLimits::NONE);
        assert_eq!(result.cost, Some(Cost::int(2)));
        assert_eq!(result.trace.reopened, 0);
    }

    #[test]
    fn admissible_inconsistent_heuristic_reopens() {
        // States s=0, a=1, b=2, g=3, x=4. The direct s->b edge (cost 4)
        // reaches b one unit above its true distance 3 (via a), but a's
        // tight heuristic (7 = its true remaining distance) keeps a waiting
        // while b gets paired with the cheap backward node x and closed.
        // When a finally expands, b reopens with g improved by 1.
        let h_f = vec![
            Some(Cost::ZERO),
            Some(Cost::int(7)), // inconsistent: h(a) > c(a,b) + h(b)
            Some(Cost::ZERO),
            Some(Cost::ZERO),
            Some(Cost::ZERO),
        ];
        let space = ExplicitGraph::builder(5, 0, 3)
            .edge(0, 1, Cost::int(1))
            .edge(0, 2, Cost::int(4))
            .edge(1, 2, Cost::int(2))
            .edge(2, 3, Cost::int(5))
            .edge(4, 3, Cost::int(1))
            .heuristics(h_f, vec![Some(Cost::ZERO); 5])
            .build();
        let oracle = dijkstra_to(&space, 0, 3, Direction::Forward).unwrap();
        assert_eq!(oracle, Cost::int(8));
        let result = nbs_search(&space, SearchLimits::NONE);
        assert_eq!(result.cost, Some(oracle));
        assert_eq!(result.trace.reopened, 1);
        let path = result.solution_path.unwrap();
        assert_eq!(path, vec![0, 1, 2, 3]);
    }

    #[test]
    fn pair_lb_is_monotone_and_shared_within_iterations() {
        let space = ExplicitGraph::random(60, 11, 0.7);
        let result = nbs_search(&space, SearchLimits::NONE);
        assert!(result.trace.pair_lb_is_monotone());
        for pair in result.trace.expansions.chunks(2) {
            if let [a, b] = pair {
                assert_eq!(a.pair_lb, b.pair_lb);
                assert_eq!(a.direction, Direction::Forward);
                assert_eq!(b.direction, Direction::Backward);
            }
        }
    }
}
