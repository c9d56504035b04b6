//! Meet-in-the-middle bidirectional search.
//!
//! Each node's priority is `max(f, 2g + ε)`, which caps how deep either
//! frontier can reach: no expanded node ever has `2g + ε` above the optimal
//! cost, so the frontiers meet near the middle. With the heuristic disabled
//! this is plain bidirectional brute-force search. The ε offset, when
//! nonzero, must not exceed the domain's cheapest edge.

use std::cmp::Reverse;
use std::time::Instant;

use crate::cost::Cost;
use crate::heap::CountingHeap;
use crate::incumbent::Incumbent;
use crate::node::{Location, NodeId, NodeTable, Offer};
use crate::space::{Direction, PerDirection, StateSpace};
use crate::trace::{Expansion, SearchLimits, SearchResult, SearchTrace, Termination};

/// Priority-offset and heuristic toggles for the meet-in-the-middle family.
#[derive(Clone, Copy, Debug)]
pub struct MMParams {
    pub epsilon: Cost,
    pub use_heuristic: bool,
}

impl MMParams {
    /// Plain variant: no offset.
    pub fn plain() -> MMParams {
        MMParams { epsilon: Cost::ZERO, use_heuristic: true }
    }

    /// Offset by the domain's cheapest edge, the usual tightening.
    pub fn with_min_edge<S: StateSpace>(space: &S) -> MMParams {
        MMParams { epsilon: space.min_edge_cost(), use_heuristic: true }
    }

    /// Brute-force variant: the heuristic is never evaluated.
    pub fn brute_force() -> MMParams {
        MMParams { epsilon: Cost::ZERO, use_heuristic: false }
    }
}

/// priority, g descending, state, id — min-order.
type PrKey<S> = (Cost, Reverse<Cost>, S, u32);
/// f (or g), state, id — min-order, for the fmin/gmin side heaps.
type MinKey<S> = (Cost, S, u32);

struct DirQueues<S: Copy + Ord> {
    by_priority: CountingHeap<PrKey<S>>,
    by_f: CountingHeap<MinKey<S>>,
    by_g: CountingHeap<MinKey<S>>,
}

impl<S: Copy + Ord> DirQueues<S> {
    fn new() -> Self {
        DirQueues {
            by_priority: CountingHeap::new(),
            by_f: CountingHeap::new(),
            by_g: CountingHeap::new(),
        }
    }
}

pub fn mm_search<S: StateSpace>(
    space: &S,
    params: MMParams,
    limits: SearchLimits,
) -> SearchResult<S::State> {
    assert!(
        params.epsilon.is_zero() || params.epsilon <= space.min_edge_cost(),
        "priority offset {} exceeds the cheapest edge {}",
        params.epsilon,
        space.min_edge_cost()
    );
    let started = Instant::now();
    if space.start() == space.goal() {
        return SearchResult::trivial(space.start());
    }

    let h = |d: Direction, s: <S as StateSpace>::State| -> Option<Cost> {
        if params.use_heuristic {
            space.heuristic(d, s)
        } else {
            Some(Cost::ZERO)
        }
    };
    let priority = |f: Cost, g: Cost| f.max(g.double() + params.epsilon);

    let mut tables = PerDirection::new(
        NodeTable::<S::State>::new(Direction::Forward),
        NodeTable::<S::State>::new(Direction::Backward),
    );
    let mut queues = PerDirection::new(DirQueues::new(), DirQueues::new());
    let mut trace = SearchTrace::default();
    let mut incumbent = Incumbent::new();
    let mut max_open = 0usize;

    for (d, root) in [(Direction::Forward, space.start()), (Direction::Backward, space.goal())] {
        if let Some(id) = tables[d].offer(root, Cost::ZERO, || h(d, root), None).accepted() {
            push_all(&mut queues[d], &tables[d], id, priority);
        }
    }

    let termination = loop {
        let front_f = live_priority_front(&mut queues.forward, &tables.forward);
        let front_b = live_priority_front(&mut queues.backward, &tables.backward);
        let (Some((pr_f, _)), Some((pr_b, _))) = (front_f, front_b) else {
            break match incumbent.cost {
                Some(_) => Termination::Optimal,
                None => Termination::Exhausted,
            };
        };
        if let Some(c) = incumbent.cost {
            let fmin_f = live_min(&mut queues.forward.by_f, &tables.forward);
            let fmin_b = live_min(&mut queues.backward.by_f, &tables.backward);
            let gmin_f = live_min(&mut queues.forward.by_g, &tables.forward);
            let gmin_b = live_min(&mut queues.backward.by_g, &tables.backward);
            let threshold = pr_f
                .max(pr_b)
                .max(fmin_f.expect("open side has an f"))
                .max(fmin_b.expect("open side has an f"))
                .max(gmin_f.expect("open side has a g") + gmin_b.expect("open side has a g") + params.epsilon);
            if c <= threshold {
                break Termination::Optimal;
            }
        }
        if let Some(term) = limits.exceeded(trace.expanded(), started) {
            break term;
        }

        let d = if pr_f <= pr_b { Direction::Forward } else { Direction::Backward };
        let id = front_in(d, front_f, front_b);
        queues[d].by_priority.pop();
        tables[d].set_location(id, Location::Closed);
        let node = tables[d].node(id);
        trace.expansions.push(Expansion {
            direction: d,
            state: node.state,
            g: node.g,
            f: node.f,
            pair_lb: node.f,
        });

        for (child, edge_cost) in space.expand(d, node.state) {
            trace.generated += 1;
            let g_child = node.g + edge_cost;
            let offer = tables[d].offer(child, g_child, || h(d, child), Some(id));
            if matches!(offer, Offer::Reopened(_)) {
                trace.reopened += 1;
            }
            if let Some(child_id) = offer.accepted() {
                push_all(&mut queues[d], &tables[d], child_id, priority);
                max_open =
                    max_open.max(tables.forward.open_count() + tables.backward.open_count());
                if let Some(opposite_id) = tables[d.opposite()].current(child) {
                    let g_opposite = tables[d.opposite()].entry(opposite_id).g;
                    incumbent.offer(child, d, child_id, opposite_id, g_child + g_opposite);
                }
            }
        }
    };

    let (meeting_state, solution_path) = match termination {
        Termination::Optimal => match incumbent.solution(&tables) {
            Some((m, p)) => (Some(m), Some(p)),
            None => (None, None),
        },
        _ => (None, None),
    };
    trace.max_open_size = max_open;
    for q in [&queues.forward, &queues.backward] {
        trace.queue_insertions += q.by_priority.pushes() + q.by_f.pushes() + q.by_g.pushes();
        trace.queue_op_units += q.by_priority.op_units() + q.by_f.op_units() + q.by_g.op_units();
    }
    trace.wall_time = started.elapsed();
    SearchResult {
        cost: if termination == Termination::Optimal { incumbent.cost } else { None },
        meeting_state,
        solution_path,
        termination,
        trace,
    }
}

fn push_all<S: Copy + Eq + Ord + std::hash::Hash + std::fmt::Debug>(
    queues: &mut DirQueues<S>,
    table: &NodeTable<S>,
    id: NodeId,
    priority: impl Fn(Cost, Cost) -> Cost,
) {
    let e = table.entry(id);
    let (state, g, f) = (e.state, e.g, e.f());
    queues.by_priority.push((priority(f, g), Reverse(g), state, id.0));
    queues.by_f.push((f, state, id.0));
    queues.by_g.push((g, state, id.0));
}

fn live_priority_front<S: Copy + Eq + Ord + std::hash::Hash + std::fmt::Debug>(
    queues: &mut DirQueues<S>,
    table: &NodeTable<S>,
) -> Option<(Cost, NodeId)> {
    loop {
        let &(pr, _, _, raw) = queues.by_priority.peek()?;
        let id = NodeId(raw);
        if table.is_current(id) && table.entry(id).location != Location::Closed {
            return Some((pr, id));
        }
        queues.by_priority.pop();
    }
}

fn live_min<S: Copy + Eq + Ord + std::hash::Hash + std::fmt::Debug>(
    heap: &mut CountingHeap<MinKey<S>>,
    table: &NodeTable<S>,
) -> Option<Cost> {
    loop {
        let &(value, _, raw) = heap.peek()?;
        let id = NodeId(raw);
        if table.is_current(id) && table.entry(id).location != Location::Closed {
            return Some(value);
        }
        heap.pop();
    }
}

fn front_in(
    d: Direction,
    front_f: Option<(Cost, NodeId)>,
    front_b: Option<(Cost, NodeId)>,
) -> NodeId {
    match d {
        Direction::Forward => front_f.expect("checked").1,
        Direction::Backward => front_b.expect("checked").1,
    }
}
