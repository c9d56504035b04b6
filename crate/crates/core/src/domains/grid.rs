//! Octile grid pathfinding: 8-connected maps with unit cardinal moves and
//! √2 diagonals, the standard benchmark map and scenario file formats, and
//! seeded map generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::Cost;
use crate::space::StateSpace;

const PASSABLE_GLYPHS: [u8; 2] = [b'.', b'G'];
const BLOCKED_GLYPHS: [u8; 4] = [b'@', b'O', b'T', b'W'];

/// A rectangular map of passable/blocked cells. The original glyphs are
/// kept so a parsed map re-emits byte-identically.
#[derive(Clone, Debug)]
pub struct GridMap {
    pub width: u32,
    pub height: u32,
    passable: Vec<bool>,
    glyphs: Vec<u8>,
    type_token: String,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum MapParseError {
    #[error("malformed header: expected `{expected}` around line {line}")]
    MalformedHeader { expected: &'static str, line: usize },
    #[error("row {row} has {got} cells, expected {expected}")]
    RowLengthMismatch { row: usize, got: usize, expected: usize },
    #[error("unknown glyph {glyph:?} at row {row}, column {col}")]
    UnknownGlyph { glyph: char, row: usize, col: usize },
    #[error("map body has {got} rows, expected {expected}")]
    MissingRows { got: usize, expected: usize },
}

impl GridMap {
    /// Parse the standard map format: `type <t>`, `height H`, `width W`,
    /// `map`, then H rows of W glyphs.
    pub fn parse(text: &str) -> Result<GridMap, MapParseError> {
        let mut lines = text.lines().enumerate();
        let mut expect = |prefix: &'static str| -> Result<(usize, String), MapParseError> {
            let (i, line) = lines
                .next()
                .ok_or(MapParseError::MalformedHeader { expected: prefix, line: 0 })?;
            let rest = line
                .strip_prefix(prefix)
                .ok_or(MapParseError::MalformedHeader { expected: prefix, line: i + 1 })?;
            Ok((i, rest.trim().to_owned()))
        };
        let (_, type_token) = expect("type ")?;
        let (hline, height) = expect("height ")?;
        let height: u32 = height
            .parse()
            .map_err(|_| MapParseError::MalformedHeader { expected: "height ", line: hline + 1 })?;
        let (wline, width) = expect("width ")?;
        let width: u32 = width
            .parse()
            .map_err(|_| MapParseError::MalformedHeader { expected: "width ", line: wline + 1 })?;
        let (mline, rest) = lines
            .next()
            .ok_or(MapParseError::MalformedHeader { expected: "map", line: 0 })?;
        if rest.trim_end() != "map" {
            return Err(MapParseError::MalformedHeader { expected: "map", line: mline + 1 });
        }

        let mut passable = Vec::with_capacity((width * height) as usize);
        let mut glyphs = Vec::with_capacity((width * height) as usize);
        let mut rows = 0usize;
        for (_, line) in lines {
            let line = line.trim_end();
            if line.is_empty() && rows == height as usize {
                continue; // trailing blank lines are tolerated
            }
            if rows == height as usize {
                break;
            }
            if line.len() != width as usize {
                return Err(MapParseError::RowLengthMismatch {
                    row: rows,
                    got: line.len(),
                    expected: width as usize,
                });
            }
            for (col, byte) in line.bytes().enumerate() {
                if PASSABLE_GLYPHS.contains(&byte) {
                    passable.push(true);
                } else if BLOCKED_GLYPHS.contains(&byte) {
                    passable.push(false);
                } else {
                    return Err(MapParseError::UnknownGlyph {
                        glyph: byte as char,
                        row: rows,
                        col,
                    });
                }
                glyphs.push(byte);
            }
            rows += 1;
        }
        if rows != height as usize {
            return Err(MapParseError::MissingRows { got: rows, expected: height as usize });
        }
        Ok(GridMap { width, height, passable, glyphs, type_token })
    }

    /// Re-emit the parsed form, byte-identical modulo trailing whitespace.
    pub fn to_map_text(&self) -> String {
        let mut out = format!(
            "type {}\nheight {}\nwidth {}\nmap\n",
            self.type_token, self.height, self.width
        );
        for y in 0..self.height {
            let row = &self.glyphs[(y * self.width) as usize..((y + 1) * self.width) as usize];
            out.push_str(std::str::from_utf8(row).expect("glyphs are ascii"));
            out.push('\n');
        }
        out
    }

    pub fn from_passable(width: u32, height: u32, passable: Vec<bool>) -> GridMap {
        assert_eq!(passable.len(), (width * height) as usize);
        let glyphs = passable.iter().map(|&p| if p { b'.' } else { b'@' }).collect();
        GridMap { width, height, passable, glyphs, type_token: "octile".to_owned() }
    }

    pub fn cell(&self, x: u32, y: u32) -> u32 {
        y * self.width + x
    }

    pub fn coords(&self, cell: u32) -> (u32, u32) {
        (cell % self.width, cell / self.width)
    }

    pub fn is_passable(&self, x: u32, y: u32) -> bool {
        x < self.width && y < self.height && self.passable[self.cell(x, y) as usize]
    }

    pub fn passable_cells(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.width * self.height).filter(|&c| self.passable[c as usize])
    }

    /// Uniform random obstacles at the given density; callers pick the
    /// endpoints themselves.
    pub fn random_field(width: u32, height: u32, obstacle_density: f64, seed: u64) -> GridMap {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let passable = (0..width * height).map(|_| !rng.gen_bool(obstacle_density)).collect();
        GridMap::from_passable(width, height, passable)
    }

    /// Depth-first carved maze on an odd lattice: cells at odd coordinates
    /// are rooms, walls between visited rooms are knocked out. Every open
    /// cell is reachable from every other.
    pub fn maze(width: u32, height: u32, seed: u64) -> GridMap {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut passable = vec![false; (width * height) as usize];
        let cols = (width - 1) / 2;
        let rows = (height - 1) / 2;
        assert!(cols > 0 && rows > 0, "maze needs at least a 3x3 map");
        let room = |cx: u32, cy: u32| (2 * cy + 1) * width + (2 * cx + 1);
        let mut visited = vec![false; (cols * rows) as usize];
        let mut stack = vec![(0u32, 0u32)];
        visited[0] = true;
        passable[room(0, 0) as usize] = true;
        while let Some(&(cx, cy)) = stack.last() {
            let mut neighbors: Vec<(u32, u32)> = Vec::with_capacity(4);
            if cx > 0 && !visited[(cy * cols + cx - 1) as usize] {
                neighbors.push((cx - 1, cy));
            }
            if cx + 1 < cols && !visited[(cy * cols + cx + 1) as usize] {
                neighbors.push((cx + 1, cy));
            }
            if cy > 0 && !visited[((cy - 1) * cols + cx) as usize] {
                neighbors.push((cx, cy - 1));
            }
            if cy + 1 < rows && !visited[((cy + 1) * cols + cx) as usize] {
                neighbors.push((cx, cy + 1));
            }
            match neighbors.as_slice() {
                [] => {
                    stack.pop();
                }
                options => {
                    let &(nx, ny) = &options[rng.gen_range(0..options.len())];
                    visited[(ny * cols + nx) as usize] = true;
                    passable[room(nx, ny) as usize] = true;
                    // knock out the wall between the two rooms
                    let wall = (room(cx, cy) + room(nx, ny)) / 2;
                    passable[wall as usize] = true;
                    stack.push((nx, ny));
                }
            }
        }
        GridMap::from_passable(width, height, passable)
    }
}

/// Octile distance: straight steps cover the axis surplus, diagonals the
/// shared span — `(max−min) + min·√2` as an exact pair.
pub fn octile_h(a: (u32, u32), b: (u32, u32)) -> Cost {
    let dx = a.0.abs_diff(b.0);
    let dy = a.1.abs_diff(b.1);
    Cost::octile(dx.max(dy) - dx.min(dy), dx.min(dy))
}

/// One pathfinding instance on a grid map.
#[derive(Clone, Debug)]
pub struct GridSpace {
    map: GridMap,
    start: u32,
    goal: u32,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum GridInstanceError {
    #[error("endpoint ({0}, {1}) is outside the map or blocked")]
    BadEndpoint(u32, u32),
}

impl GridSpace {
    pub fn new(map: GridMap, start: (u32, u32), goal: (u32, u32)) -> Result<GridSpace, GridInstanceError> {
        for (x, y) in [start, goal] {
            if !map.is_passable(x, y) {
                return Err(GridInstanceError::BadEndpoint(x, y));
            }
        }
        let start = map.cell(start.0, start.1);
        let goal = map.cell(goal.0, goal.1);
        Ok(GridSpace { map, start, goal })
    }

    pub fn map(&self) -> &GridMap {
        &self.map
    }

    /// 8-connected moves; a diagonal is legal only when both flanking
    /// cardinal cells are passable (no corner cutting).
    fn neighbors(&self, cell: u32) -> Vec<(u32, Cost)> {
        let (x, y) = self.map.coords(cell);
        let mut out = Vec::with_capacity(8);
        let cardinal: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
        let open = |dx: i64, dy: i64| {
            let nx = x as i64 + dx;
            let ny = y as i64 + dy;
            nx >= 0 && ny >= 0 && self.map.is_passable(nx as u32, ny as u32)
        };
        for (dx, dy) in cardinal {
            if open(dx, dy) {
                out.push((self.map.cell((x as i64 + dx) as u32, (y as i64 + dy) as u32), Cost::int(1)));
            }
        }
        for (dx, dy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            if open(dx, dy) && open(dx, 0) && open(0, dy) {
                out.push((self.map.cell((x as i64 + dx) as u32, (y as i64 + dy) as u32), Cost::SQRT2));
            }
        }
        out
    }
}

impl StateSpace for GridSpace {
    type State = u32;

    fn start(&self) -> u32 {
        self.start
    }

    fn goal(&self) -> u32 {
        self.goal
    }

    fn expand_forward(&self, s: u32) -> Vec<(u32, Cost)> {
        self.neighbors(s)
    }

    fn expand_backward(&self, s: u32) -> Vec<(u32, Cost)> {
        self.neighbors(s) // grid moves are symmetric
    }

    fn h_forward(&self, s: u32) -> Option<Cost> {
        Some(octile_h(self.map.coords(s), self.map.coords(self.goal)))
    }

    fn h_backward(&self, s: u32) -> Option<Cost> {
        Some(octile_h(self.map.coords(s), self.map.coords(self.start)))
    }

    fn min_edge_cost(&self) -> Cost {
        Cost::int(1)
    }
}

/// One line of a scenario file.
#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioEntry {
    pub bucket: u32,
    pub map_name: String,
    pub width: u32,
    pub height: u32,
    pub start: (u32, u32),
    pub goal: (u32, u32),
    pub optimal: f64,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum ScenParseError {
    #[error("line {line}: expected 9 whitespace-separated fields, got {got}")]
    FieldCount { line: usize, got: usize },
    #[error("line {line}: bad field {field}: {value:?}")]
    BadField { line: usize, field: &'static str, value: String },
}

/// Parse a scenario file: optional `version` header, then per line
/// `bucket map width height sx sy gx gy optimal`.
pub fn parse_scen(text: &str) -> Result<Vec<ScenarioEntry>, ScenParseError> {
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with("version") {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 9 {
            return Err(ScenParseError::FieldCount { line: i + 1, got: fields.len() });
        }
        let num = |idx: usize, name: &'static str| -> Result<u32, ScenParseError> {
            fields[idx].parse().map_err(|_| ScenParseError::BadField {
                line: i + 1,
                field: name,
                value: fields[idx].to_owned(),
            })
        };
        entries.push(ScenarioEntry {
            bucket: num(0, "bucket")?,
            map_name: fields[1].to_owned(),
            width: num(2, "width")?,
            height: num(3, "height")?,
            start: (num(4, "start x")?, num(5, "start y")?),
            goal: (num(6, "goal x")?, num(7, "goal y")?),
            optimal: fields[8].parse().map_err(|_| ScenParseError::BadField {
                line: i + 1,
                field: "optimal",
                value: fields[8].to_owned(),
            })?,
        });
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dijkstra::{dijkstra, dijkstra_to};
    use crate::space::Direction;

    #[test]
    fn tiny_map_parses() {
        let text = "type octile\nheight 2\nwidth 2\nmap\n..\n..\n";
        let map = GridMap::parse(text).unwrap();
        assert_eq!(map.passable_cells().count(), 4);
        assert_eq!(map.to_map_text(), text);
    }

    #[test]
    fn obstacle_blocks_and_routes_around() {
        let text = "type octile\nheight 3\nwidth 3\nmap\n...\n.@.\n...\n";
        let map = GridMap::parse(text).unwrap();
        assert!(!map.is_passable(1, 1));
        let space = GridSpace::new(map, (0, 1), (2, 1)).unwrap();
        let d = dijkstra_to(&space, space.start(), space.goal(), Direction::Forward).unwrap();
        // no corner cutting past the block: four cardinal steps around it
        assert_eq!(d, Cost::int(4));
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(matches!(
            GridMap::parse("height 2\nwidth 2\nmap\n..\n..\n"),
            Err(MapParseError::MalformedHeader { .. })
        ));
        assert!(matches!(
            GridMap::parse("type octile\nheight 2\nwidth 2\nmap\n...\n..\n"),
            Err(MapParseError::RowLengthMismatch { .. })
        ));
        assert!(matches!(
            GridMap::parse("type octile\nheight 2\nwidth 2\nmap\n.x\n..\n"),
            Err(MapParseError::UnknownGlyph { glyph: 'x', .. })
        ));
    }

    #[test]
    fn glyphs_round_trip_exactly() {
        let text = "type octile\nheight 2\nwidth 4\nmap\n.G@T\nOW..\n";
        let map = GridMap::parse(text).unwrap();
        assert_eq!(map.to_map_text(), text);
        assert!(map.is_passable(1, 0)); // G
        assert!(!map.is_passable(3, 0)); // T
        assert!(!map.is_passable(1, 1)); // W
    }

    #[test]
    fn octile_examples() {
        assert_eq!(octile_h((0, 0), (3, 1)), Cost::octile(2, 1));
        assert_eq!(octile_h((5, 5), (5, 5)), Cost::ZERO);
        assert_eq!(octile_h((2, 7), (2, 3)), Cost::int(4));
    }

    #[test]
    fn octile_is_exact_on_an_empty_grid() {
        use rand::{Rng, SeedableRng};
        let map = GridMap::from_passable(32, 32, vec![true; 32 * 32]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let a = (rng.gen_range(0..32), rng.gen_range(0..32));
            let b = (rng.gen_range(0..32), rng.gen_range(0..32));
            let space = GridSpace::new(map.clone(), a, b).unwrap();
            let d = dijkstra_to(&space, space.start(), space.goal(), Direction::Forward).unwrap();
            assert_eq!(d, octile_h(a, b), "{a:?} -> {b:?}");
        }
    }

    #[test]
    fn no_corner_cutting() {
        let text = "type octile\nheight 2\nwidth 2\nmap\n.@\n@.\n";
        let map = GridMap::parse(text).unwrap();
        let space = GridSpace::new(map, (0, 0), (1, 1)).unwrap();
        assert!(space.neighbors(space.start()).is_empty());
    }

    #[test]
    fn maze_is_fully_connected() {
        let map = GridMap::maze(33, 33, 42);
        let open: Vec<u32> = map.passable_cells().collect();
        assert!(!open.is_empty());
        let (sx, sy) = map.coords(open[0]);
        let space = GridSpace::new(map.clone(), (sx, sy), (sx, sy)).unwrap();
        let reach = dijkstra(&space, open[0], Direction::Forward);
        for &c in &open {
            assert!(reach.contains_key(&c), "cell {c} unreachable");
        }
    }

    #[test]
    fn scen_lines_parse() {
        let text = "version 1\n0\tmaps/sample.map\t512\t512\t10\t12\t100\t120\t131.41421356\n";
        let entries = parse_scen(text).unwrap();
        assert_eq!(entries.len(), 1);
        assert_eq!(entries[0].map_name, "maps/sample.map");
        assert_eq!(entries[0].start, (10, 12));
        assert!((entries[0].optimal - 131.41421356).abs() < 1e-9);
        assert!(parse_scen("1 2 3\n").is_err());
    }
}
