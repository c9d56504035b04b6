//! Bidirectional A* with the four classic economies.
//!
//! Two f-ordered searches alternate, always expanding the side with the
//! smaller open list. A node selected for expansion that the opposite
//! search has already closed is *nipped*: closed without expansion, and its
//! children on the opposite open list are *pruned*. Nodes whose f reaches
//! the incumbent are *trimmed* from open at selection and *screened* at
//! generation. Requires consistent heuristics in both directions; a
//! detected reopening (impossible under consistency) aborts the run.

use std::cmp::Reverse;
use std::time::Instant;

use crate::cost::Cost;
use crate::heap::CountingHeap;
use crate::incumbent::Incumbent;
use crate::node::{Location, NodeId, NodeTable, Offer};
use crate::space::{Direction, PerDirection, StateSpace};
use crate::trace::{Expansion, SearchLimits, SearchResult, SearchTrace, Termination};

/// The run observed a g-improvement on a closed state, which proves the
/// supplied heuristics are not consistent.
#[derive(Debug, Clone, thiserror::Error)]
#[error("inconsistent heuristic detected: closed state {state} improved from g={closed_g} to g={improved_g}")]
pub struct InconsistentHeuristic {
    pub state: String,
    pub closed_g: Cost,
    pub improved_g: Cost,
}

type OpenKey<S> = (Cost, Reverse<Cost>, S, u32);

pub fn bs_star_search<S: StateSpace>(
    space: &S,
    limits: SearchLimits,
) -> Result<SearchResult<S::State>, InconsistentHeuristic> {
    let started = Instant::now();
    if space.start() == space.goal() {
        return Ok(SearchResult::trivial(space.start()));
    }

    let mut tables = PerDirection::new(
        NodeTable::<S::State>::new(Direction::Forward),
        NodeTable::<S::State>::new(Direction::Backward),
    );
    let mut open = PerDirection::new(
        CountingHeap::<OpenKey<S::State>>::new(),
        CountingHeap::<OpenKey<S::State>>::new(),
    );
    let mut trace = SearchTrace::default();
    let mut incumbent = Incumbent::new();
    let mut max_open = 0usize;
    let mut last_direction = Direction::Backward; // ties alternate, forward first

    for (d, root) in [(Direction::Forward, space.start()), (Direction::Backward, space.goal())] {
        if let Some(id) = tables[d].offer(root, Cost::ZERO, || space.heuristic(d, root), None).accepted() {
            let f = tables[d].entry(id).f();
            open[d].push((f, Reverse(Cost::ZERO), root, id.0));
        }
    }

    let termination = loop {
        // trim both fronts, then stop if either side has nothing useful left
        let front_f = live_front(&mut open.forward, &mut tables.forward, incumbent.cost);
        let front_b = live_front(&mut open.backward, &mut tables.backward, incumbent.cost);
        if front_f.is_none() || front_b.is_none() {
            break match incumbent.cost {
                Some(_) => Termination::Optimal,
                None => Termination::Exhausted,
            };
        }
        if let Some(term) = limits.exceeded(trace.expanded(), started) {
            break term;
        }

        let d = match tables.forward.open_count().cmp(&tables.backward.open_count()) {
            std::cmp::Ordering::Less => Direction::Forward,
            std::cmp::Ordering::Greater => Direction::Backward,
            std::cmp::Ordering::Equal => last_direction.opposite(),
        };
        last_direction = d;
        let (g, f, id) = match d {
            Direction::Forward => front_f.expect("checked"),
            Direction::Backward => front_b.expect("checked"),
        };
        open[d].pop();
        tables[d].set_location(id, Location::Closed);
        let state = tables[d].entry(id).state;

        // nipping: the opposite search already expanded this state, so any
        // continuation through it is covered by the recorded collision
        if tables[d.opposite()].location_of(state) == Some(Location::Closed) {
            trace.nipped += 1;
            // pruning: opposite open descendants of the nipped state only
            // extend paths through it
            if let Some(opposite_id) = tables[d.opposite()].current(state) {
                for child_state in tables[d.opposite()].open_children_of(opposite_id) {
                    tables[d.opposite()].evict(child_state);
                }
            }
            continue;
        }

        trace.expansions.push(Expansion { direction: d, state, g, f, pair_lb: f });
        for (child, edge_cost) in space.expand(d, state) {
            trace.generated += 1;
            let g_child = g + edge_cost;
            // screening: children that cannot beat the incumbent never enter open
            let h_child = match tables[d].current(child) {
                Some(existing) => {
                    let e = tables[d].entry(existing);
                    if e.g <= g_child {
                        continue;
                    }
                    if e.location == Location::Closed {
                        return Err(InconsistentHeuristic {
                            state: format!("{child}"),
                            closed_g: e.g,
                            improved_g: g_child,
                        });
                    }
                    Some(e.h)
                }
                None => space.heuristic(d, child),
            };
            let Some(h_child) = h_child else { continue };
            if incumbent.cost.is_some_and(|c| g_child + h_child >= c) {
                continue;
            }
            let offer = tables[d].offer(child, g_child, || Some(h_child), Some(id));
            debug_assert!(!matches!(offer, Offer::Reopened(_)));
            if let Some(child_id) = offer.accepted() {
                open[d].push((g_child + h_child, Reverse(g_child), child, child_id.0));
                max_open = max_open.max(tables.forward.open_count() + tables.backward.open_count());
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
    trace.queue_insertions = open.forward.pushes() + open.backward.pushes();
    trace.queue_op_units = open.forward.op_units() + open.backward.op_units();
    trace.wall_time = started.elapsed();
    Ok(SearchResult {
        cost: if termination == Termination::Optimal { incumbent.cost } else { None },
        meeting_state,
        solution_path,
        termination,
        trace,
    })
}

/// Live front as (g, f, id), trimming entries whose f reached the incumbent.
fn live_front<S: Copy + Eq + Ord + std::hash::Hash + std::fmt::Debug>(
    open: &mut CountingHeap<(Cost, Reverse<Cost>, S, u32)>,
    table: &mut NodeTable<S>,
    incumbent: Option<Cost>,
) -> Option<(Cost, Cost, NodeId)> {
    loop {
        let &(f, Reverse(g), state, raw) = open.peek()?;
        let id = NodeId(raw);
        if !table.is_current(id) || table.entry(id).location == Location::Closed {
            open.pop();
            continue;
        }
        if incumbent.is_some_and(|c| f >= c) {
            open.pop();
            table.evict(state);
            continue;
        }
        return Some((g, f, id));
    }
}
