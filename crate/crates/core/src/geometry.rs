//! Grid polyomino representation: parsing, the dihedral transform group,
//! canonical forms, topology checks, and the run-length shape string used
//! for persistence.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("shape has no filled cells")]
    EmptyShape,
    #[error("cells are not edge-connected")]
    Disconnected,
    #[error("piece contains a hole")]
    HoleInPiece,
    #[error("unexpected character {0:?} in shape text")]
    BadCharacter(char),
    #[error("malformed run-length shape string: {0}")]
    BadRle(String),
}

/// One grid cell. After normalization the minimum x and y over a shape are 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
}

impl Cell {
    pub fn new(x: i32, y: i32) -> Self {
        Cell { x, y }
    }

    pub fn neighbors(self) -> [Cell; 4] {
        [
            Cell::new(self.x + 1, self.y),
            Cell::new(self.x - 1, self.y),
            Cell::new(self.x, self.y + 1),
            Cell::new(self.x, self.y - 1),
        ]
    }
}

/// One of the 8 members of the square's symmetry group: a quarter-turn count
/// plus an optional reflection applied first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Transform {
    /// Quarter turns, 0..4.
    pub rotation: u8,
    /// Mirror across the vertical axis before rotating.
    pub reflect: bool,
}

impl Transform {
    pub const IDENTITY: Transform = Transform { rotation: 0, reflect: false };

    /// All 8 transforms, identity first, the 4 pure rotations before the
    /// 4 reflected ones.
    pub fn all() -> [Transform; 8] {
        let mut out = [Transform::IDENTITY; 8];
        for (i, t) in out.iter_mut().enumerate() {
            t.rotation = (i as u8) % 4;
            t.reflect = i >= 4;
        }
        out
    }

    /// The 4 pure rotations.
    pub fn rotations() -> [Transform; 4] {
        let mut out = [Transform::IDENTITY; 4];
        for (i, t) in out.iter_mut().enumerate() {
            t.rotation = i as u8;
        }
        out
    }

    pub fn apply(self, c: Cell) -> Cell {
        let mut p = if self.reflect { Cell::new(-c.x, c.y) } else { c };
        for _ in 0..self.rotation {
            // quarter turn: (x, y) -> (-y, x)
            p = Cell::new(-p.y, p.x);
        }
        p
    }

    pub fn compose(self, then: Transform) -> Transform {
        // Composition computed by acting on a frame; the group is small
        // enough that deriving the table from probe points is simplest.
        let probe = [Cell::new(1, 0), Cell::new(0, 1)];
        let image: Vec<Cell> = probe.iter().map(|&c| then.apply(self.apply(c))).collect();
        for t in Transform::all() {
            if probe.iter().map(|&c| t.apply(c)).collect::<Vec<_>>() == image {
                return t;
            }
        }
        unreachable!("transform composition left the group")
    }
}

/// Whether a parsed shape is an input piece (must be hole-free) or a goal
/// shape (holes permitted).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeKind {
    Piece,
    Goal,
}

/// Connectivity and hole census for a cell set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Topology {
    pub connected: bool,
    pub holes: usize,
}

/// An edge-connected set of grid cells, stored normalized (min x = min y = 0)
/// and sorted row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polyomino {
    cells: Vec<Cell>,
    width: u32,
    height: u32,
}

impl Polyomino {
    /// Builds a polyomino from arbitrary cells, translating them so the
    /// minimum coordinates are zero. Rejects empty or disconnected input.
    pub fn from_cells<I: IntoIterator<Item = Cell>>(iter: I) -> Result<Self, GeometryError> {
        let set: HashSet<Cell> = iter.into_iter().collect();
        if set.is_empty() {
            return Err(GeometryError::EmptyShape);
        }
        if !topology_of(&set).connected {
            return Err(GeometryError::Disconnected);
        }
        let min_x = set.iter().map(|c| c.x).min().unwrap();
        let min_y = set.iter().map(|c| c.y).min().unwrap();
        let mut cells: Vec<Cell> = set
            .into_iter()
            .map(|c| Cell::new(c.x - min_x, c.y - min_y))
            .collect();
        cells.sort_by_key(|c| (c.y, c.x));
        let width = cells.iter().map(|c| c.x).max().unwrap() as u32 + 1;
        let height = cells.iter().map(|c| c.y).max().unwrap() as u32 + 1;
        Ok(Polyomino { cells, width, height })
    }

    /// Parses the ASCII shape format: `#` or `X` mark filled cells, `.` or
    /// space empty ones. Pieces must be hole-free; goals may enclose holes.
    pub fn parse_ascii(text: &str, kind: ShapeKind) -> Result<Self, GeometryError> {
        let mut cells = Vec::new();
        for (y, line) in text.lines().enumerate() {
            for (x, ch) in line.chars().enumerate() {
                match ch {
                    '#' | 'X' => cells.push(Cell::new(x as i32, y as i32)),
                    '.' | ' ' => {}
                    '\r' => {}
                    other => return Err(GeometryError::BadCharacter(other)),
                }
            }
        }
        let p = Polyomino::from_cells(cells)?;
        if kind == ShapeKind::Piece && p.has_holes() {
            return Err(GeometryError::HoleInPiece);
        }
        Ok(p)
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn area(&self) -> u32 {
        self.cells.len() as u32
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.binary_search_by_key(&(c.y, c.x), |p| (p.y, p.x)).is_ok()
    }

    pub fn topology(&self) -> Topology {
        topology_of(&self.cells.iter().copied().collect())
    }

    pub fn has_holes(&self) -> bool {
        self.topology().holes > 0
    }

    /// The image under a transform, re-normalized.
    pub fn transformed(&self, t: Transform) -> Polyomino {
        Polyomino::from_cells(self.cells.iter().map(|&c| t.apply(c)))
            .expect("transform preserves connectivity")
    }

    /// Distinct images under all 8 transforms, or the 4 rotations when
    /// reflections are disallowed. Order follows first occurrence in
    /// [`Transform::all`], so it is deterministic.
    pub fn orientations_with(&self, allow_reflect: bool) -> Vec<Polyomino> {
        let transforms: Vec<Transform> = if allow_reflect {
            Transform::all().to_vec()
        } else {
            Transform::rotations().to_vec()
        };
        let mut seen = Vec::new();
        for t in transforms {
            let img = self.transformed(t);
            if !seen.contains(&img) {
                seen.push(img);
            }
        }
        seen
    }

    /// Distinct images under the full 8-member group.
    pub fn orientations(&self) -> Vec<Polyomino> {
        self.orientations_with(true)
    }

    /// The least image under the given transform group, comparing
    /// (height, width, row-major bitstring). Idempotent, and equal for
    /// congruent shapes.
    pub fn canonical_with(&self, allow_reflect: bool) -> Polyomino {
        self.orientations_with(allow_reflect)
            .into_iter()
            .min_by(|a, b| a.canonical_key().cmp(&b.canonical_key()))
            .expect("at least the identity image exists")
    }

    pub fn canonical(&self) -> Polyomino {
        self.canonical_with(true)
    }

    fn canonical_key(&self) -> (u32, u32, Vec<u64>) {
        (self.height, self.width, self.bitstring())
    }

    /// Row-major occupancy bits packed into words, fixed order for a given
    /// (width, height).
    fn bitstring(&self) -> Vec<u64> {
        let n = (self.width * self.height) as usize;
        let mut words = vec![0u64; n.div_ceil(64)];
        for c in &self.cells {
            let idx = (c.y as u32 * self.width + c.x as u32) as usize;
            words[idx / 64] |= 1 << (idx % 64);
        }
        words
    }

    /// Renders the shape in the same ASCII format `parse_ascii` accepts.
    pub fn to_ascii(&self) -> String {
        let mut out = String::new();
        for y in 0..self.height as i32 {
            for x in 0..self.width as i32 {
                out.push(if self.contains(Cell::new(x, y)) { 'X' } else { '.' });
            }
            out.push('\n');
        }
        out
    }

    /// Run-length shape string `"W,H:hexrows"`: each row is ceil(W/4) hex
    /// digits, most significant bit = leftmost cell, rows concatenated.
    pub fn to_rle(&self) -> String {
        let digits_per_row = (self.width as usize).div_ceil(4);
        let mut s = format!("{},{}:", self.width, self.height);
        for y in 0..self.height as i32 {
            let mut row: u64 = 0;
            for x in 0..self.width as i32 {
                if self.contains(Cell::new(x, y)) {
                    row |= 1 << (self.width as i32 - 1 - x);
                }
            }
            s.push_str(&format!("{:0width$x}", row, width = digits_per_row));
        }
        s
    }

    pub fn from_rle(s: &str) -> Result<Self, GeometryError> {
        let bad = |msg: &str| GeometryError::BadRle(msg.to_string());
        let (dims, rows) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let (w, h) = dims.split_once(',').ok_or_else(|| bad("missing ','"))?;
        let width: u32 = w.parse().map_err(|_| bad("bad width"))?;
        let height: u32 = h.parse().map_err(|_| bad("bad height"))?;
        if width == 0 || height == 0 || width > 4096 || height > 4096 {
            return Err(bad("dimensions out of range"));
        }
        let digits_per_row = (width as usize).div_ceil(4);
        if rows.len() != digits_per_row * height as usize {
            return Err(bad("row digit count mismatch"));
        }
        let mut cells = Vec::new();
        for y in 0..height as usize {
            let chunk = &rows[y * digits_per_row..(y + 1) * digits_per_row];
            let row = u64::from_str_radix(chunk, 16).map_err(|_| bad("bad hex digit"))?;
            for x in 0..width {
                if row & (1 << (width - 1 - x)) != 0 {
                    cells.push(Cell::new(x as i32, y as usize as i32));
                }
            }
        }
        Polyomino::from_cells(cells)
    }
}

impl fmt::Display for Polyomino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

/// Flood-fill connectivity plus a bounded-complement hole count for an
/// arbitrary cell set.
pub fn topology_of(cells: &HashSet<Cell>) -> Topology {
    if cells.is_empty() {
        return Topology { connected: false, holes: 0 };
    }
    // Connectivity: flood fill over the set from any cell.
    let start = *cells.iter().next().unwrap();
    let mut seen = HashSet::with_capacity(cells.len());
    seen.insert(start);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for n in c.neighbors() {
            if cells.contains(&n) && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    let connected = seen.len() == cells.len();

    // Holes: flood the complement from a frame one cell outside the bounding
    // box; complement cells inside the box never reached are hole cells.
    let min_x = cells.iter().map(|c| c.x).min().unwrap() - 1;
    let max_x = cells.iter().map(|c| c.x).max().unwrap() + 1;
    let min_y = cells.iter().map(|c| c.y).min().unwrap() - 1;
    let max_y = cells.iter().map(|c| c.y).max().unwrap() + 1;
    let outside_start = Cell::new(min_x, min_y);
    let mut outside = HashSet::new();
    outside.insert(outside_start);
    let mut queue = VecDeque::from([outside_start]);
    while let Some(c) = queue.pop_front() {
        for n in c.neighbors() {
            if n.x < min_x || n.x > max_x || n.y < min_y || n.y > max_y {
                continue;
            }
            if !cells.contains(&n) && outside.insert(n) {
                queue.push_back(n);
            }
        }
    }
    // Count connected components of the unreached complement.
    let mut hole_cells: HashSet<Cell> = HashSet::new();
    for y in min_y..=max_y {
        for x in min_x..=max_x {
            let c = Cell::new(x, y);
            if !cells.contains(&c) && !outside.contains(&c) {
                hole_cells.insert(c);
            }
        }
    }
    let mut holes = 0;
    let mut remaining = hole_cells.clone();
    while let Some(&start) = remaining.iter().next() {
        holes += 1;
        let mut queue = VecDeque::from([start]);
        remaining.remove(&start);
        while let Some(c) = queue.pop_front() {
            for n in c.neighbors() {
                if remaining.remove(&n) {
                    queue.push_back(n);
                }
            }
        }
    }
    Topology { connected, holes }
}

/// Enumerates all free polyominoes (canonical forms under the 8 transforms)
/// with area 1..=`max_area`, grouped by area. Standard boundary growth with
/// canonical dedup.
pub fn free_polyominoes(max_area: u32) -> Vec<Vec<Polyomino>> {
    let mut by_area: Vec<Vec<Polyomino>> = Vec::with_capacity(max_area as usize);
    if max_area == 0 {
        return by_area;
    }
    let mono = Polyomino::from_cells([Cell::new(0, 0)]).unwrap();
    by_area.push(vec![mono]);
    for area in 2..=max_area {
        let mut seen: HashSet<Polyomino> = HashSet::new();
        let mut level = Vec::new();
        for base in &by_area[(area - 2) as usize] {
            let occupied: HashSet<Cell> = base.cells().iter().copied().collect();
            let mut grown: HashSet<Cell> = HashSet::new();
            for c in base.cells() {
                for n in c.neighbors() {
                    if !occupied.contains(&n) {
                        grown.insert(n);
                    }
                }
            }
            for g in grown {
                let mut cells = occupied.clone();
                cells.insert(g);
                let cand = Polyomino::from_cells(cells).unwrap().canonical();
                if seen.insert(cand.clone()) {
                    level.push(cand);
                }
            }
        }
        level.sort();
        by_area.push(level);
    }
    by_area
}

#[cfg(test)]
mod tests {
    use super::*;

    fn piece(text: &str) -> Polyomino {
        Polyomino::parse_ascii(text, ShapeKind::Piece).unwrap()
    }

    #[test]
    fn parse_l_tromino() {
        let p = piece(".X\nXX");
        assert_eq!(p.area(), 3);
        assert_eq!((p.width(), p.height()), (2, 2));
    }

    #[test]
    fn parse_ring_octomino_goal_mode() {
        let text = "XXX\nX.X\nXXX";
        let p = Polyomino::parse_ascii(text, ShapeKind::Goal).unwrap();
        assert_eq!(p.area(), 8);
        assert!(p.has_holes());
        assert_eq!(
            Polyomino::parse_ascii(text, ShapeKind::Piece),
            Err(GeometryError::HoleInPiece)
        );
    }

    #[test]
    fn parse_disconnected() {
        assert_eq!(
            Polyomino::parse_ascii("X.X", ShapeKind::Piece),
            Err(GeometryError::Disconnected)
        );
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            Polyomino::parse_ascii("...", ShapeKind::Piece),
            Err(GeometryError::EmptyShape)
        );
        assert_eq!(
            Polyomino::parse_ascii("X?", ShapeKind::Piece),
            Err(GeometryError::BadCharacter('?'))
        );
    }

    #[test]
    fn orientation_counts() {
        assert_eq!(piece("XX\nXX").orientations().len(), 1);
        assert_eq!(piece("XXXXX").orientations().len(), 2);
        assert_eq!(piece(".XX\nXX.\n.X.").orientations().len(), 8); // F-pentomino
        assert_eq!(piece("XXX\n.X.").orientations().len(), 4);
    }

    #[test]
    fn orientation_count_divides_eight() {
        for p in ["X", "XX", "XXX\n.X.", ".XX\nXX.", "X.\nXX", "XX\nXX"] {
            let n = piece(p).orientations().len();
            assert_eq!(8 % n, 0, "{n} orientations for {p:?}");
        }
    }

    #[test]
    fn canonical_congruence_and_idempotence() {
        let l = piece(".X\nXX");
        for t in Transform::all() {
            assert_eq!(l.transformed(t).canonical(), l.canonical());
            assert_eq!(l.transformed(t).area(), l.area());
        }
        let c = l.canonical();
        assert_eq!(c.canonical(), c);
    }

    #[test]
    fn canonical_distinguishes_shapes() {
        let t5 = piece("XXX\n.X.\n.X.");
        let p5 = piece("XX\nXX\nX.");
        assert_ne!(t5.canonical(), p5.canonical());
    }

    #[test]
    fn transform_group_closure() {
        for a in Transform::all() {
            for b in Transform::all() {
                let c = a.compose(b);
                let probe = Cell::new(2, 5);
                assert_eq!(b.apply(a.apply(probe)), c.apply(probe));
            }
        }
    }

    #[test]
    fn topology_examples() {
        let rect: HashSet<Cell> =
            (0..10).flat_map(|x| (0..2).map(move |y| Cell::new(x, y))).collect();
        assert_eq!(topology_of(&rect), Topology { connected: true, holes: 0 });

        let ring: HashSet<Cell> = Polyomino::parse_ascii("XXX\nX.X\nXXX", ShapeKind::Goal)
            .unwrap()
            .cells()
            .iter()
            .copied()
            .collect();
        assert_eq!(topology_of(&ring), Topology { connected: true, holes: 1 });

        let two: HashSet<Cell> = [
            Cell::new(0, 0),
            Cell::new(1, 0),
            Cell::new(5, 0),
            Cell::new(6, 0),
        ]
        .into_iter()
        .collect();
        assert_eq!(topology_of(&two), Topology { connected: false, holes: 0 });
    }

    #[test]
    fn rle_round_trip() {
        for text in ["X", "XXXXX", ".X\nXX", "XXX\nX.X\nXXX", "XX\nXX\nX."] {
            let p = Polyomino::parse_ascii(text, ShapeKind::Goal).unwrap();
            assert_eq!(Polyomino::from_rle(&p.to_rle()).unwrap(), p);
        }
    }

    #[test]
    fn ascii_round_trip() {
        for text in ["X", ".X\nXX", "XXX\n.X.\n.X."] {
            let p = piece(text);
            assert_eq!(Polyomino::parse_ascii(&p.to_ascii(), ShapeKind::Piece).unwrap(), p);
        }
    }

    #[test]
    fn free_enumeration_counts() {
        // Known free polyomino counts per area.
        let all = free_polyominoes(8);
        let counts: Vec<usize> = all.iter().map(|v| v.len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 12, 35, 108, 369]);
    }
}
