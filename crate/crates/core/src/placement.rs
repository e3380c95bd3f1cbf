//! Placement enumeration: all oriented, translated copies of a piece inside
//! a rectangular bounding box, with covers stored as bitmasks for fast
//! overlap tests.

use serde::{Deserialize, Serialize};

use crate::geometry::{Cell, Polyomino};

/// Default cap on box cells; guards the SAT variable count.
pub const DEFAULT_CELL_LIMIT: u32 = 1024;

/// A rectangular bounding box, `width` columns by `height` rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridBox {
    pub width: u32,
    pub height: u32,
}

impl GridBox {
    pub fn new(width: u32, height: u32) -> Self {
        assert!(width >= 1 && height >= 1, "box sides must be positive");
        GridBox { width, height }
    }

    pub fn cells(&self) -> u32 {
        self.width * self.height
    }

    /// Row-major index of a cell inside the box.
    pub fn index(&self, c: Cell) -> usize {
        debug_assert!(self.contains(c));
        (c.y as u32 * self.width + c.x as u32) as usize
    }

    pub fn cell_at(&self, index: usize) -> Cell {
        Cell::new((index as u32 % self.width) as i32, (index as u32 / self.width) as i32)
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.x >= 0 && c.y >= 0 && (c.x as u32) < self.width && (c.y as u32) < self.height
    }

    pub fn transpose(&self) -> GridBox {
        GridBox { width: self.height, height: self.width }
    }
}

/// Fixed-width bitmask over the cells of one box, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CellMask {
    words: Vec<u64>,
    len: usize,
}

impl CellMask {
    pub fn empty(len: usize) -> Self {
        CellMask { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn set(&mut self, idx: usize) {
        debug_assert!(idx < self.len);
        self.words[idx / 64] |= 1 << (idx % 64);
    }

    pub fn test(&self, idx: usize) -> bool {
        self.words[idx / 64] & (1 << (idx % 64)) != 0
    }

    pub fn overlaps(&self, other: &CellMask) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn count(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn iter_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64).filter(move |b| w & (1 << b) != 0).map(move |b| wi * 64 + b)
        })
    }
}

/// One oriented, translated copy of a piece inside a box.
#[derive(Debug, Clone)]
pub struct Placement {
    /// Index of the piece within its piece set.
    pub piece_id: usize,
    /// Index into the piece's deduplicated orientation list.
    pub orientation_id: usize,
    /// Translation applied to the normalized orientation.
    pub offset: Cell,
    /// Covered box cells as a bitmask.
    pub cover: CellMask,
    /// Covered box cells as absolute coordinates, sorted row-major.
    pub cover_cells: Vec<Cell>,
}

impl Placement {
    pub fn area(&self) -> u32 {
        self.cover_cells.len() as u32
    }
}

/// Enumerates every placement of `piece` (as piece index `piece_id`) inside
/// `grid`, in deterministic order: orientation id first, then row-major
/// offset. Symmetric orientations are deduplicated, so no two placements
/// share a cover. Returns an empty list when the piece does not fit.
pub fn enumerate_placements(
    piece: &Polyomino,
    piece_id: usize,
    grid: GridBox,
    allow_reflect: bool,
) -> Vec<Placement> {
    let mut out = Vec::new();
    for (orientation_id, orient) in piece.orientations_with(allow_reflect).iter().enumerate() {
        if orient.width() > grid.width || orient.height() > grid.height {
            continue;
        }
        for dy in 0..=(grid.height - orient.height()) as i32 {
            for dx in 0..=(grid.width - orient.width()) as i32 {
                let mut cover = CellMask::empty(grid.cells() as usize);
                let mut cover_cells = Vec::with_capacity(orient.area() as usize);
                for c in orient.cells() {
                    let abs = Cell::new(c.x + dx, c.y + dy);
                    cover.set(grid.index(abs));
                    cover_cells.push(abs);
                }
                out.push(Placement {
                    piece_id,
                    orientation_id,
                    offset: Cell::new(dx, dy),
                    cover,
                    cover_cells,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ShapeKind;

    fn piece(text: &str) -> Polyomino {
        Polyomino::parse_ascii(text, ShapeKind::Piece).unwrap()
    }

    #[test]
    fn domino_in_2x2() {
        let p = enumerate_placements(&piece("XX"), 0, GridBox::new(2, 2), true);
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn bar_in_5x5() {
        let p = enumerate_placements(&piece("XXXXX"), 0, GridBox::new(5, 5), true);
        assert_eq!(p.len(), 10);
    }

    #[test]
    fn square_in_3x3() {
        let p = enumerate_placements(&piece("XX\nXX"), 0, GridBox::new(3, 3), true);
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn too_large_piece_gives_empty() {
        let p = enumerate_placements(&piece("XXXXX"), 0, GridBox::new(2, 2), true);
        assert!(p.is_empty());
    }

    #[test]
    fn bar_count_formula() {
        // H*(W-k+1) + W*(H-k+1) placements for a 1xk bar when k <= min(W,H).
        for k in 2..=5u32 {
            let bar = piece(&"X".repeat(k as usize));
            for w in k..=8 {
                for h in k..=8 {
                    let got = enumerate_placements(&bar, 0, GridBox::new(w, h), true).len() as u32;
                    assert_eq!(got, h * (w - k + 1) + w * (h - k + 1), "k={k} w={w} h={h}");
                }
            }
        }
    }

    #[test]
    fn covers_unique_in_bounds_and_sized() {
        let grid = GridBox::new(4, 5);
        for text in ["X.\nXX", "XXX\n.X.", "XX\nXX"] {
            let p = piece(text);
            let placements = enumerate_placements(&p, 0, grid, true);
            let mut seen = std::collections::HashSet::new();
            for pl in &placements {
                assert_eq!(pl.area(), p.area());
                assert!(pl.cover_cells.iter().all(|&c| grid.contains(c)));
                assert!(seen.insert(pl.cover.clone()), "duplicate cover");
            }
        }
    }
}
