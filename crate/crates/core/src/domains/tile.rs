//! Sliding-tile puzzles: a W×H board of numbered tiles with one blank,
//! unit-cost slides, and the Manhattan-distance heuristic.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cost::Cost;
use crate::space::StateSpace;

/// A board as explicit cells in reading order; 0 is the blank. Packs into a
/// u64 at one nibble per cell, so boards are capped at 16 cells.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TileBoard {
    pub width: u8,
    pub height: u8,
    pub cells: Vec<u8>,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum TileError {
    #[error("board shape {0}x{1} is not supported")]
    BadShape(u8, u8),
    #[error("cells are not a permutation of 0..{0}")]
    NotAPermutation(u8),
    #[error("boards have different shapes")]
    ShapeMismatch,
    #[error("instance parity makes the goal unreachable")]
    Unsolvable,
}

impl TileBoard {
    pub fn new(width: u8, height: u8, cells: Vec<u8>) -> Result<TileBoard, TileError> {
        let n = width as usize * height as usize;
        if width < 2 || height < 2 || n > 16 {
            return Err(TileError::BadShape(width, height));
        }
        if cells.len() != n {
            return Err(TileError::NotAPermutation(n as u8));
        }
        let mut seen = vec![false; n];
        for &c in &cells {
            if c as usize >= n || seen[c as usize] {
                return Err(TileError::NotAPermutation(n as u8));
            }
            seen[c as usize] = true;
        }
        Ok(TileBoard { width, height, cells })
    }

    /// Canonical goal: blank first, tiles in order.
    pub fn canonical(width: u8, height: u8) -> TileBoard {
        let n = width as usize * height as usize;
        TileBoard::new(width, height, (0..n as u8).collect()).expect("canonical board")
    }

    /// Seeded random board, parity-fixed to be solvable against the
    /// canonical goal by swapping one non-blank pair when needed.
    pub fn random_solvable(width: u8, height: u8, seed: u64) -> TileBoard {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = width as usize * height as usize;
        let mut cells: Vec<u8> = (0..n as u8).collect();
        cells.shuffle(&mut rng);
        let mut board = TileBoard { width, height, cells };
        let goal = TileBoard::canonical(width, height);
        if !board.reaches(&goal) {
            let mut tiles: Vec<usize> =
                (0..n).filter(|&i| board.cells[i] != 0).take(2).collect();
            tiles.sort_unstable();
            board.cells.swap(tiles[0], tiles[1]);
        }
        debug_assert!(board.reaches(&goal));
        board
    }

    pub fn pack(&self) -> u64 {
        self.cells
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &t)| acc | (u64::from(t) << (4 * i)))
    }

    pub fn unpack(width: u8, height: u8, state: u64) -> TileBoard {
        let n = width as usize * height as usize;
        let cells = (0..n).map(|i| ((state >> (4 * i)) & 0xF) as u8).collect();
        TileBoard { width, height, cells }
    }

    fn blank_position(&self) -> usize {
        self.cells.iter().position(|&t| t == 0).expect("boards have a blank")
    }

    /// Solvability: slides preserve permutation parity XOR blank row
    /// parity, so two boards are mutually reachable iff those invariants
    /// match.
    pub fn reaches(&self, other: &TileBoard) -> bool {
        fn invariant(b: &TileBoard) -> bool {
            let mut inversions = 0usize;
            let tiles: Vec<u8> = b.cells.iter().copied().filter(|&t| t != 0).collect();
            for i in 0..tiles.len() {
                for j in i + 1..tiles.len() {
                    if tiles[i] > tiles[j] {
                        inversions += 1;
                    }
                }
            }
            let blank_row = b.blank_position() / b.width as usize;
            if b.width % 2 == 1 {
                inversions % 2 == 0
            } else {
                (inversions + blank_row) % 2 == 0
            }
        }
        self.width == other.width
            && self.height == other.height
            && invariant(self) == invariant(other)
    }
}

/// Sum over non-blank tiles of row and column offsets between the two
/// boards.
pub fn manhattan_h(a: &TileBoard, b: &TileBoard) -> Result<u32, TileError> {
    if a.width != b.width || a.height != b.height {
        return Err(TileError::ShapeMismatch);
    }
    let w = a.width as usize;
    let mut pos_in_b = vec![0usize; a.cells.len()];
    for (i, &t) in b.cells.iter().enumerate() {
        pos_in_b[t as usize] = i;
    }
    let mut total = 0u32;
    for (i, &t) in a.cells.iter().enumerate() {
        if t == 0 {
            continue;
        }
        let j = pos_in_b[t as usize];
        total += ((i / w).abs_diff(j / w) + (i % w).abs_diff(j % w)) as u32;
    }
    Ok(total)
}

/// One instance against the canonical goal (or any chosen goal of the same
/// shape and parity class).
#[derive(Clone, Debug)]
pub struct TileSpace {
    width: u8,
    height: u8,
    start: u64,
    goal: u64,
    /// distance tables: md[tile][cell] against each anchor
    md_to_goal: Vec<Vec<u32>>,
    md_to_start: Vec<Vec<u32>>,
}

impl TileSpace {
    pub fn new(start: TileBoard, goal: TileBoard) -> Result<TileSpace, TileError> {
        if start.width != goal.width || start.height != goal.height {
            return Err(TileError::ShapeMismatch);
        }
        if !start.reaches(&goal) {
            return Err(TileError::Unsolvable);
        }
        let table = |anchor: &TileBoard| -> Vec<Vec<u32>> {
            let n = anchor.cells.len();
            let w = anchor.width as usize;
            let mut pos = vec![0usize; n];
            for (i, &t) in anchor.cells.iter().enumerate() {
                pos[t as usize] = i;
            }
            (0..n)
                .map(|tile| {
                    (0..n)
                        .map(|cell| {
                            let a = pos[tile];
                            ((a / w).abs_diff(cell / w) + (a % w).abs_diff(cell % w)) as u32
                        })
                        .collect()
                })
                .collect()
        };
        Ok(TileSpace {
            width: start.width,
            height: start.height,
            start: start.pack(),
            goal: goal.pack(),
            md_to_goal: table(&goal),
            md_to_start: table(&start),
        })
    }

    pub fn with_canonical_goal(start: TileBoard) -> Result<TileSpace, TileError> {
        let goal = TileBoard::canonical(start.width, start.height);
        TileSpace::new(start, goal)
    }

    pub fn shape(&self) -> (u8, u8) {
        (self.width, self.height)
    }

    fn slides(&self, s: u64) -> Vec<(u64, Cost)> {
        let n = self.width as usize * self.height as usize;
        let mut blank = usize::MAX;
        for i in 0..n {
            if (s >> (4 * i)) & 0xF == 0 {
                blank = i;
                break;
            }
        }
        let w = self.width as usize;
        let (bx, by) = (blank % w, blank / w);
        let mut out = Vec::with_capacity(4);
        let mut push = |from: usize| {
            let tile = (s >> (4 * from)) & 0xF;
            let moved = (s & !(0xF << (4 * from))) | (tile << (4 * blank));
            out.push((moved, Cost::int(1)));
        };
        if bx > 0 {
            push(blank - 1);
        }
        if bx + 1 < w {
            push(blank + 1);
        }
        if by > 0 {
            push(blank - w);
        }
        if by + 1 < self.height as usize {
            push(blank + w);
        }
        out
    }

    fn md(&self, s: u64, table: &[Vec<u32>]) -> u32 {
        let n = self.width as usize * self.height as usize;
        let mut total = 0u32;
        for cell in 0..n {
            let tile = ((s >> (4 * cell)) & 0xF) as usize;
            if tile != 0 {
                total += table[tile][cell];
            }
        }
        total
    }
}

impl StateSpace for TileSpace {
    type State = u64;

    fn start(&self) -> u64 {
        self.start
    }

    fn goal(&self) -> u64 {
        self.goal
    }

    fn expand_forward(&self, s: u64) -> Vec<(u64, Cost)> {
        self.slides(s)
    }

    fn expand_backward(&self, s: u64) -> Vec<(u64, Cost)> {
        self.slides(s) // slides are reversible
    }

    fn h_forward(&self, s: u64) -> Option<Cost> {
        Some(Cost::int(self.md(s, &self.md_to_goal)))
    }

    fn h_backward(&self, s: u64) -> Option<Cost> {
        Some(Cost::int(self.md(s, &self.md_to_start)))
    }

    fn min_edge_cost(&self) -> Cost {
        Cost::int(1)
    }
}
