//! Puzzle instance model: piece sets, the named-piece catalog, area
//! feasibility arithmetic, and the solution verifier.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{topology_of, Cell, GeometryError, Polyomino, ShapeKind};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("piece set {0:?} is empty")]
    EmptySet(String),
    #[error("piece {index} of set {label:?} has a hole")]
    HoledPiece { label: String, index: usize },
    #[error("instance needs 2 or 3 piece sets, got {0}")]
    BadSetCount(usize),
    #[error("shape logic requires equal set areas, got {0:?}")]
    UnequalAreas(Vec<u32>),
    #[error("unknown piece name {0:?}")]
    UnknownPiece(String),
    #[error("bad shape: {0}")]
    Shape(#[from] GeometryError),
    #[error("bad instance file: {0}")]
    Format(String),
}

/// How pieces may be reused when forming the goal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PuzzleMode {
    /// Every piece of every set is used exactly once.
    ShapeLogic,
    /// Pieces may be copied freely; at least one copy per set overall.
    CommonMultiple,
}

/// A named, non-empty collection of hole-free pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceSet {
    pub label: String,
    pub pieces: Vec<Polyomino>,
}

impl PieceSet {
    pub fn new(label: impl Into<String>, pieces: Vec<Polyomino>) -> Result<Self, InstanceError> {
        let label = label.into();
        if pieces.is_empty() {
            return Err(InstanceError::EmptySet(label));
        }
        for (index, p) in pieces.iter().enumerate() {
            if p.has_holes() {
                return Err(InstanceError::HoledPiece { label, index });
            }
        }
        Ok(PieceSet { label, pieces })
    }

    pub fn total_area(&self) -> u32 {
        self.pieces.iter().map(|p| p.area()).sum()
    }

    /// All areas `1..=limit` expressible as a non-negative combination of
    /// piece areas with at least one copy, ascending. (Unlimited-copy
    /// semantics; for exact-use puzzles the only feasible area is
    /// [`PieceSet::total_area`].)
    pub fn feasible_areas(&self, limit: u32) -> Vec<u32> {
        let mut reachable = vec![false; limit as usize + 1];
        reachable[0] = true;
        for a in 1..=limit {
            for p in &self.pieces {
                let pa = p.area();
                if pa <= a && reachable[(a - pa) as usize] {
                    reachable[a as usize] = true;
                    break;
                }
            }
        }
        (1..=limit).filter(|&a| reachable[a as usize]).collect()
    }
}

/// A full puzzle instance: a mode, 2 or 3 piece sets, and the symmetry
/// convention for placements.
#[derive(Debug, Clone)]
pub struct PuzzleInstance {
    pub mode: PuzzleMode,
    pub sets: Vec<PieceSet>,
    pub allow_reflect: bool,
}

impl PuzzleInstance {
    pub fn new(
        mode: PuzzleMode,
        sets: Vec<PieceSet>,
        allow_reflect: bool,
    ) -> Result<Self, InstanceError> {
        if sets.len() < 2 || sets.len() > 3 {
            return Err(InstanceError::BadSetCount(sets.len()));
        }
        if mode == PuzzleMode::ShapeLogic {
            let areas: Vec<u32> = sets.iter().map(|s| s.total_area()).collect();
            if areas.iter().any(|&a| a != areas[0]) {
                return Err(InstanceError::UnequalAreas(areas));
            }
        }
        Ok(PuzzleInstance { mode, sets, allow_reflect })
    }

    /// Goal areas up to `limit` feasible for every set at once, ascending.
    /// For shape logic this is the single total area (when within limit).
    pub fn feasible_goal_areas(&self, limit: u32) -> Vec<u32> {
        match self.mode {
            PuzzleMode::ShapeLogic => {
                let a = self.sets[0].total_area();
                if a >= 1 && a <= limit {
                    vec![a]
                } else {
                    vec![]
                }
            }
            PuzzleMode::CommonMultiple => {
                let mut common: Option<BTreeSet<u32>> = None;
                for s in &self.sets {
                    let areas: BTreeSet<u32> = s.feasible_areas(limit).into_iter().collect();
                    common = Some(match common {
                        None => areas,
                        Some(c) => c.intersection(&areas).copied().collect(),
                    });
                }
                common.unwrap_or_default().into_iter().collect()
            }
        }
    }

    /// Stable identifier derived from the canonical content; used to key
    /// ledger records so runs can resume.
    pub fn id(&self) -> String {
        let mut text = format!("{:?};reflect={};", self.mode, self.allow_reflect);
        for s in &self.sets {
            text.push_str(&s.label);
            text.push('[');
            for p in &s.pieces {
                text.push_str(&p.canonical().to_rle());
                text.push(';');
            }
            text.push(']');
        }
        // FNV-1a, stable across runs and platforms.
        let mut hash: u64 = 0xcbf29ce484222325;
        for b in text.bytes() {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x100000001b3);
        }
        format!("{hash:016x}")
    }
}

/// One placed piece copy of a solution tiling, in goal coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacedPiece {
    /// Index of the piece within its set.
    pub piece: usize,
    /// Absolute covered cells, sorted row-major.
    pub cells: Vec<Cell>,
}

/// A verified or candidate solution: the goal cell set (normalized) plus one
/// tiling per set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub goal: Vec<Cell>,
    pub tilings: Vec<Vec<PlacedPiece>>,
    pub area: u32,
}

impl Solution {
    pub fn goal_shape(&self) -> Result<Polyomino, GeometryError> {
        Polyomino::from_cells(self.goal.iter().copied())
    }
}

/// A single verifier finding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    Overlap { set: usize, first: usize, second: usize },
    OutsideGoal { set: usize, placement: usize },
    UncoveredCell { set: usize, cell: Cell },
    NotAPiece { set: usize, placement: usize },
    UsageCount { set: usize, piece: usize, used: usize, expected: String },
    AreaMismatch { set: usize, got: u32, expected: u32 },
    Disconnected,
    GoalNotNormalized,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Checks a candidate solution against an instance: per set, placements must
/// be disjoint, cover exactly the goal, each be congruent (under the allowed
/// transform group) to its declared piece, and respect the mode's usage
/// counts; the goal must be connected. Violations are reported, never
/// thrown.
pub fn verify_solution(inst: &PuzzleInstance, sol: &Solution) -> VerifyReport {
    let mut violations = Vec::new();
    let goal: BTreeSet<Cell> = sol.goal.iter().copied().collect();

    let min_x = goal.iter().map(|c| c.x).min().unwrap_or(0);
    let min_y = goal.iter().map(|c| c.y).min().unwrap_or(0);
    if min_x != 0 || min_y != 0 {
        violations.push(Violation::GoalNotNormalized);
    }

    let topo = topology_of(&goal.iter().copied().collect());
    if goal.is_empty() || !topo.connected {
        violations.push(Violation::Disconnected);
    }

    for (set_idx, (set, tiling)) in inst.sets.iter().zip(&sol.tilings).enumerate() {
        // Disjointness and exact cover.
        let mut covered: HashMap<Cell, usize> = HashMap::new();
        for (pl_idx, pl) in tiling.iter().enumerate() {
            for &c in &pl.cells {
                if let Some(&first) = covered.get(&c) {
                    violations.push(Violation::Overlap { set: set_idx, first, second: pl_idx });
                } else {
                    covered.insert(c, pl_idx);
                }
                if !goal.contains(&c) {
                    violations.push(Violation::OutsideGoal { set: set_idx, placement: pl_idx });
                }
            }
        }
        for &c in &goal {
            if !covered.contains_key(&c) {
                violations.push(Violation::UncoveredCell { set: set_idx, cell: c });
            }
        }

        // Congruence of each placed copy to its declared piece.
        let mut usage = vec![0usize; set.pieces.len()];
        for (pl_idx, pl) in tiling.iter().enumerate() {
            let Some(declared) = set.pieces.get(pl.piece) else {
                violations.push(Violation::NotAPiece { set: set_idx, placement: pl_idx });
                continue;
            };
            usage[pl.piece] += 1;
            match Polyomino::from_cells(pl.cells.iter().copied()) {
                Ok(shape)
                    if shape.canonical_with(inst.allow_reflect)
                        == declared.canonical_with(inst.allow_reflect) => {}
                _ => violations.push(Violation::NotAPiece { set: set_idx, placement: pl_idx }),
            }
        }

        // Usage counts per mode.
        match inst.mode {
            PuzzleMode::ShapeLogic => {
                for (piece, &used) in usage.iter().enumerate() {
                    if used != 1 {
                        violations.push(Violation::UsageCount {
                            set: set_idx,
                            piece,
                            used,
                            expected: "exactly 1".into(),
                        });
                    }
                }
            }
            PuzzleMode::CommonMultiple => {
                if tiling.is_empty() {
                    violations.push(Violation::UsageCount {
                        set: set_idx,
                        piece: 0,
                        used: 0,
                        expected: "at least 1 copy overall".into(),
                    });
                }
            }
        }

        let tiled_area: u32 = tiling.iter().map(|p| p.cells.len() as u32).sum();
        if tiled_area != sol.area || sol.area != goal.len() as u32 {
            violations.push(Violation::AreaMismatch {
                set: set_idx,
                got: tiled_area,
                expected: goal.len() as u32,
            });
        }
    }

    if sol.tilings.len() != inst.sets.len() {
        violations.push(Violation::AreaMismatch {
            set: sol.tilings.len(),
            got: 0,
            expected: inst.sets.len() as u32,
        });
    }

    VerifyReport { ok: violations.is_empty(), violations }
}

/// The in-repo catalog of named pieces (tetrominoes I4..T4, pentominoes
/// F5..Z5, plus the small shapes M1, D2, I3, L3), loaded from the ASCII
/// shape files under `shapes/`.
pub fn catalog() -> &'static HashMap<&'static str, Polyomino> {
    static CATALOG: OnceLock<HashMap<&'static str, Polyomino>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let entries: [(&str, &str); 22] = [
            ("M1", include_str!("../shapes/M1.txt")),
            ("D2", include_str!("../shapes/D2.txt")),
            ("I3", include_str!("../shapes/I3.txt")),
            ("L3", include_str!("../shapes/L3.txt")),
            ("I4", include_str!("../shapes/I4.txt")),
            ("L4", include_str!("../shapes/L4.txt")),
            ("N4", include_str!("../shapes/N4.txt")),
            ("Q4", include_str!("../shapes/Q4.txt")),
            ("S4", include_str!("../shapes/S4.txt")),
            ("T4", include_str!("../shapes/T4.txt")),
            ("F5", include_str!("../shapes/F5.txt")),
            ("I5", include_str!("../shapes/I5.txt")),
            ("L5", include_str!("../shapes/L5.txt")),
            ("N5", include_str!("../shapes/N5.txt")),
            ("P5", include_str!("../shapes/P5.txt")),
            ("T5", include_str!("../shapes/T5.txt")),
            ("U5", include_str!("../shapes/U5.txt")),
            ("V5", include_str!("../shapes/V5.txt")),
            ("W5", include_str!("../shapes/W5.txt")),
            ("X5", include_str!("../shapes/X5.txt")),
            ("Y5", include_str!("../shapes/Y5.txt")),
            ("Z5", include_str!("../shapes/Z5.txt")),
        ];
        entries
            .into_iter()
            .map(|(name, text)| {
                (name, Polyomino::parse_ascii(text, ShapeKind::Piece).expect(name))
            })
            .collect()
    })
}

/// Resolves a piece spec: a catalog name, or inline ASCII when the string
/// contains shape characters.
pub fn resolve_piece(spec: &str) -> Result<Polyomino, InstanceError> {
    if let Some(p) = catalog().get(spec.trim()) {
        return Ok(p.clone());
    }
    if spec.contains(['#', 'X', '.', '\n']) {
        return Ok(Polyomino::parse_ascii(spec, ShapeKind::Piece)?);
    }
    Err(InstanceError::UnknownPiece(spec.to_string()))
}

/// On-disk instance file: mode, sets by label or inline shape, symmetry flag
/// and search limits.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub mode: PuzzleMode,
    pub sets: Vec<SetSpec>,
    #[serde(default = "default_true")]
    pub allow_reflect: bool,
    #[serde(default)]
    pub max_area: Option<u32>,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SetSpec {
    pub label: String,
    pub pieces: Vec<String>,
}

impl InstanceFile {
    pub fn parse(json: &str) -> Result<Self, InstanceError> {
        serde_json::from_str(json).map_err(|e| InstanceError::Format(e.to_string()))
    }

    pub fn build(&self) -> Result<PuzzleInstance, InstanceError> {
        let mut sets = Vec::new();
        for spec in &self.sets {
            let pieces = spec
                .pieces
                .iter()
                .map(|s| resolve_piece(s))
                .collect::<Result<Vec<_>, _>>()?;
            sets.push(PieceSet::new(spec.label.clone(), pieces)?);
        }
        PuzzleInstance::new(self.mode, sets, self.allow_reflect)
    }
}
