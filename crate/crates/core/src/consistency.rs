//! Heuristic sanity scans: edge-wise consistency and anchor admissibility.

use std::fmt::Display;

use crate::cost::Cost;
use crate::space::{Direction, StateSpace};

/// A detected violation. `None` heuristic values print as infinite.
#[derive(Clone, Debug)]
pub enum Violation<S> {
    /// `h(u) > c(u,v) + h(v)` along a real edge, in the named direction.
    Edge {
        direction: Direction,
        from: S,
        to: S,
        edge_cost: Cost,
        h_from: Option<Cost>,
        h_to: Option<Cost>,
    },
    /// `h_forward(goal)` or `h_backward(start)` is nonzero.
    AnchorNonzero { direction: Direction, state: S, h: Option<Cost> },
}

impl<S: Display> Display for Violation<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fn h(v: &Option<Cost>) -> String {
            v.map_or_else(|| "inf".to_owned(), |c| c.to_string())
        }
        match self {
            Violation::Edge { direction, from, to, edge_cost, h_from, h_to } => write!(
                f,
                "{direction} consistency broken on edge {from} -> {to} (cost {edge_cost}): h({from}) = {} > {edge_cost} + h({to}) = {edge_cost} + {}",
                h(h_from),
                h(h_to)
            ),
            Violation::AnchorNonzero { direction, state, h: hv } => {
                write!(f, "{direction} heuristic at anchor {state} is {} (expected 0)", h(hv))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConsistencyReport<S> {
    pub violations: Vec<Violation<S>>,
    pub edges_checked: u64,
}

impl<S> Default for ConsistencyReport<S> {
    fn default() -> Self {
        ConsistencyReport { violations: Vec::new(), edges_checked: 0 }
    }
}

impl<S> ConsistencyReport<S> {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Scan the forward edges out of each sampled state and check both
/// heuristics across them: `h_F(u) ≤ c + h_F(u')` and `h_B(u') ≤ c + h_B(u)`.
/// Also checks the anchors `h_F(goal) = 0` and `h_B(start) = 0`.
///
/// `None` estimates are treated as infinite: an infinite tail bounds
/// everything, an infinite head over a finite tail is a violation.
pub fn check_consistency<S: StateSpace>(
    space: &S,
    states: impl IntoIterator<Item = S::State>,
) -> ConsistencyReport<S::State> {
    let mut report = ConsistencyReport::default();

    let anchors = [
        (Direction::Forward, space.goal(), space.h_forward(space.goal())),
        (Direction::Backward, space.start(), space.h_backward(space.start())),
    ];
    for (direction, state, h) in anchors {
        if h != Some(Cost::ZERO) {
            report.violations.push(Violation::AnchorNonzero { direction, state, h });
        }
    }

    for u in states {
        let hf_u = space.h_forward(u);
        let hb_u = space.h_backward(u);
        for (v, cost) in space.expand_forward(u) {
            report.edges_checked += 1;
            let hf_v = space.h_forward(v);
            let hb_v = space.h_backward(v);
            if exceeds(hf_u, cost, hf_v) {
                report.violations.push(Violation::Edge {
                    direction: Direction::Forward,
                    from: u,
                    to: v,
                    edge_cost: cost,
                    h_from: hf_u,
                    h_to: hf_v,
                });
            }
            if exceeds(hb_v, cost, hb_u) {
                report.violations.push(Violation::Edge {
                    direction: Direction::Backward,
                    from: v,
                    to: u,
                    edge_cost: cost,
                    h_from: hb_v,
                    h_to: hb_u,
                });
            }
        }
    }
    report
}

/// `head > cost + tail`, with `None` as infinity.
fn exceeds(head: Option<Cost>, cost: Cost, tail: Option<Cost>) -> bool {
    match (head, tail) {
        (_, None) => false,
        (None, Some(_)) => true,
        (Some(h), Some(t)) => h > cost + t,
    }
}
