//! Hand-built instances exercising the adversarial corners of pair
//! selection: the mirrored three-state pair on which any fixed first move
//! costs a factor of two, and a scripted open-list trace.

use crate::cost::Cost;
use crate::node::Offer;
use crate::open_list::{DualOpenList, Prepared};
use crate::space::Direction;

use super::random_graph::ExplicitGraph;

/// The mirrored pair of three-state instances (states s=0, t=1, g=2, zero
/// heuristics, optimal cost 3). On `I1` a single backward expansion of g
/// proves optimality while any forward start needs two expansions; `I2`
/// mirrors the trap.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TheoremFixture {
    I1,
    I2,
}

pub fn fixture_theorem4(which: TheoremFixture) -> ExplicitGraph {
    let (st, tg) = match which {
        TheoremFixture::I1 => (Cost::int(1), Cost::int(3)),
        TheoremFixture::I2 => (Cost::int(3), Cost::int(1)),
    };
    ExplicitGraph::builder(3, 0, 2)
        .edge(0, 2, Cost::int(3))
        .edge(0, 1, st)
        .edge(1, 2, tg)
        .build()
}

/// Outcome of [`queue_trace_demo`]: the bound values visited and the pair
/// the open list settled on, as display letters (forward A–C, backward D–F).
#[derive(Clone, Debug)]
pub struct QueueTraceDemo {
    pub bound_history: Vec<Cost>,
    pub selected: Option<(char, char)>,
}

/// Scripted six-node open list: forward waiting holds A(f9 g9), B(f12 g6),
/// C(f13 g2); backward holds D(f9 g7), E(f12 g6), F(f13 g2). Preparing the
/// best pair must raise the bound 0 → 9 → 12 (A and D enter ready first but
/// their g-sum 16 blocks them) and settle on (B, E) with g-sum 12.
pub fn queue_trace_demo() -> QueueTraceDemo {
    let mut open: DualOpenList<u32> = DualOpenList::new();
    let nodes_f = [(0u32, 9u32, 9u32), (1, 12, 6), (2, 13, 2)];
    let nodes_b = [(0u32, 9u32, 7u32), (1, 12, 6), (2, 13, 2)];
    for (d, nodes) in [(Direction::Forward, nodes_f), (Direction::Backward, nodes_b)] {
        for (state, f, g) in nodes {
            let h = Cost::int(f - g);
            let offer = open.insert(d, state, Cost::int(g), || Some(h), None);
            debug_assert!(!matches!(offer, Offer::Discarded));
        }
    }
    let selected = match open.prepare_best() {
        Prepared::Found => open.peek_ready_pair().map(|(u, v)| {
            let u = open.node(Direction::Forward, u).state;
            let v = open.node(Direction::Backward, v).state;
            (letter(Direction::Forward, u), letter(Direction::Backward, v))
        }),
        Prepared::Exhausted => None,
    };
    QueueTraceDemo { bound_history: open.bound_history().to_vec(), selected }
}

fn letter(d: Direction, state: u32) -> char {
    let base = match d {
        Direction::Forward => b'A',
        Direction::Backward => b'D',
    };
    (base + state as u8) as char
}
