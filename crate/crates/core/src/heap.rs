//! Min-heap with the same basic-operation accounting as the open list:
//! pushes and pops cost ⌈log₂(len + 2)⌉ units, peeks cost one.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

pub(crate) struct CountingHeap<K: Ord> {
    heap: BinaryHeap<Reverse<K>>,
    pushes: u64,
    op_units: u64,
}

impl<K: Ord> CountingHeap<K> {
    pub fn new() -> Self {
        CountingHeap { heap: BinaryHeap::new(), pushes: 0, op_units: 0 }
    }

    pub fn push(&mut self, key: K) {
        self.charge();
        self.pushes += 1;
        self.heap.push(Reverse(key));
    }

    pub fn pop(&mut self) -> Option<K> {
        let popped = self.heap.pop().map(|Reverse(k)| k);
        self.charge();
        popped
    }

    pub fn peek(&mut self) -> Option<&K> {
        self.op_units += 1;
        self.heap.peek().map(|Reverse(k)| k)
    }

    pub fn pushes(&self) -> u64 {
        self.pushes
    }

    pub fn op_units(&self) -> u64 {
        self.op_units
    }

    fn charge(&mut self) {
        self.op_units += u64::from(usize::BITS - (self.heap.len() + 1).leading_zeros());
    }
}
