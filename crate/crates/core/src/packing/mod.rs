//! Square-packing problems attached to rank vectors.
//!
//! The general problem asks whether the `m x m` rank boxes fit, axis-aligned
//! and non-overlapping, into the `d x d` grid. The symmetric problem asks for
//! a placement that extends, by adding transposed twin boxes ("phantoms"), to
//! a formation that is symmetric about the main diagonal.
//!
//! Both solvers are exhaustive backtracking searches; `None` is a certificate
//! of unsolvability. Slot coordinates are 1-based.

mod oracle;
mod render;

pub use oracle::{brute_force_oracle, ORACLE_MAX_DIM};
pub use render::{parse_text, render, render_svg, render_text, RenderFormat};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::catalog::RankVector;
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Placement {
    pub size: usize,
    pub row: usize,
    pub col: usize,
}

impl Placement {
    pub fn new(size: usize, row: usize, col: usize) -> Self {
        Placement { size, row, col }
    }

    pub fn transposed(&self) -> Placement {
        Placement::new(self.size, self.col, self.row)
    }

    /// Whether the box covers a slot `(k, k)`.
    pub fn meets_diagonal(&self) -> bool {
        self.row < self.col + self.size && self.col < self.row + self.size
    }

    pub fn overlaps(&self, other: &Placement) -> bool {
        self.row < other.row + other.size
            && other.row < self.row + self.size
            && self.col < other.col + other.size
            && other.col < self.col + self.size
    }

    pub fn fits(&self, dim: usize) -> bool {
        self.size >= 1
            && self.row >= 1
            && self.col >= 1
            && self.row + self.size - 1 <= dim
            && self.col + self.size - 1 <= dim
    }

    /// Covered slots, row-major.
    pub fn slots(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (self.row..self.row + self.size)
            .flat_map(move |r| (self.col..self.col + self.size).map(move |c| (r, c)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    General,
    Symmetric,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "general" => Ok(Mode::General),
            "symmetric" => Ok(Mode::Symmetric),
            other => Err(Error::Parse(format!("unknown packing mode `{other}`"))),
        }
    }
}

/// Placements in the `d x d` grid. Pads are 1x1 placements listed after the
/// rank boxes; `symmetric_closure` holds the phantom twins.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Formation {
    pub dim: usize,
    #[serde(rename = "boxes")]
    pub placements: Vec<Placement>,
    #[serde(rename = "phantoms", default)]
    pub symmetric_closure: Vec<Placement>,
}

impl Formation {
    pub fn empty(dim: usize) -> Self {
        Formation {
            dim,
            placements: Vec::new(),
            symmetric_closure: Vec::new(),
        }
    }

    /// Phantoms turned into real boxes, appended after the existing ones.
    pub fn materialized(&self) -> Formation {
        let mut placements = self.placements.clone();
        placements.extend(&self.symmetric_closure);
        Formation {
            dim: self.dim,
            placements,
            symmetric_closure: Vec::new(),
        }
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.placements.iter().map(|p| p.size).collect()
    }

    pub fn free_slots(&self) -> usize {
        let used: usize = self
            .placements
            .iter()
            .chain(&self.symmetric_closure)
            .map(|p| p.size * p.size)
            .sum();
        (self.dim * self.dim).saturating_sub(used)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidFormation(pub String);

impl fmt::Display for InvalidFormation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn invalid<T>(msg: String) -> Result<T, InvalidFormation> {
    Err(InvalidFormation(msg))
}

/// Checks the formation invariants on an occupancy grid, independently of
/// any solver bookkeeping.
pub fn validate_formation(f: &Formation, mode: Mode) -> Result<(), InvalidFormation> {
    let d = f.dim;
    let mut owner = vec![usize::MAX; d * d];
    let all: Vec<Placement> = f
        .placements
        .iter()
        .chain(&f.symmetric_closure)
        .copied()
        .collect();
    for (i, p) in all.iter().enumerate() {
        if !p.fits(d) {
            return invalid(format!("{p:?} leaves the {d}x{d} grid"));
        }
        for (r, c) in p.slots() {
            let slot = &mut owner[(r - 1) * d + (c - 1)];
            if *slot != usize::MAX {
                return invalid(format!("{:?} overlaps {p:?} at ({r},{c})", all[*slot]));
            }
            *slot = i;
        }
    }
    match mode {
        Mode::General => {
            if !f.symmetric_closure.is_empty() {
                return invalid("phantoms in a general formation".into());
            }
        }
        Mode::Symmetric => {
            for p in &all {
                if p.meets_diagonal() {
                    if p.row != p.col {
                        return invalid(format!("{p:?} straddles the diagonal off-centre"));
                    }
                    continue;
                }
                let t = p.transposed();
                let owners: Vec<usize> = t
                    .slots()
                    .map(|(r, c)| owner[(r - 1) * d + (c - 1)])
                    .collect();
                let first = owners[0];
                if first == usize::MAX || owners.iter().any(|&o| o != first) || all[first] != t {
                    return invalid(format!("{p:?} has no twin at the transposed position"));
                }
            }
        }
    }
    Ok(())
}

/// Also checks that the real boxes are exactly the ranks of `vec` plus `pad`
/// unit boxes.
pub fn validate_for(
    vec: &RankVector,
    pad: usize,
    f: &Formation,
    mode: Mode,
) -> Result<(), InvalidFormation> {
    if f.dim != vec.dim {
        return invalid(format!(
            "formation is {}x{}, vector is over d={}",
            f.dim, f.dim, vec.dim
        ));
    }
    let mut want = vec.ranks.clone();
    want.extend(std::iter::repeat_n(1, pad));
    want.sort_unstable();
    let mut got = f.sizes();
    got.sort_unstable();
    if want != got {
        return invalid(format!("box sizes {got:?} differ from {want:?}"));
    }
    validate_formation(f, mode)
}

struct Grid {
    dim: usize,
    cells: Vec<bool>,
}

impl Grid {
    fn new(dim: usize) -> Self {
        Grid {
            dim,
            cells: vec![false; dim * dim],
        }
    }

    fn is_free(&self, p: &Placement) -> bool {
        p.slots()
            .all(|(r, c)| !self.cells[(r - 1) * self.dim + (c - 1)])
    }

    fn set(&mut self, p: &Placement, value: bool) {
        for (r, c) in p.slots() {
            self.cells[(r - 1) * self.dim + (c - 1)] = value;
        }
    }

    fn free_slots(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.dim * self.dim)
            .filter(|&i| !self.cells[i])
            .map(|i| (i / self.dim + 1, i % self.dim + 1))
    }
}

fn boxes_fit(vec: &RankVector, pad: usize) -> bool {
    let d = vec.dim;
    vec.ranks.iter().all(|&m| m <= d) && vec.square_sum() + pad <= d * d
}

/// Packing Problem (general): returns a formation with the rank boxes and
/// `pad` unit boxes, or `None` if none exists.
pub fn solve_general(vec: &RankVector, pad: usize) -> Option<Formation> {
    let d = vec.dim;
    if !boxes_fit(vec, pad) {
        return None;
    }
    let boxes = &vec.ranks;
    let mut grid = Grid::new(d);
    let mut placed = Vec::with_capacity(boxes.len());

    fn dfs(boxes: &[usize], grid: &mut Grid, placed: &mut Vec<Placement>) -> bool {
        let i = placed.len();
        if i == boxes.len() {
            return true;
        }
        let m = boxes[i];
        let d = grid.dim;
        let span = d + 1 - m;
        // equal boxes are placed in increasing position order
        let start = match placed.last() {
            Some(prev) if prev.size == m => (prev.row - 1) * span + prev.col,
            _ => 0,
        };
        for idx in start..span * span {
            let p = Placement::new(m, idx / span + 1, idx % span + 1);
            if grid.is_free(&p) {
                grid.set(&p, true);
                placed.push(p);
                if dfs(boxes, grid, placed) {
                    return true;
                }
                placed.pop();
                grid.set(&p, false);
            }
        }
        false
    }

    if !dfs(boxes, &mut grid, &mut placed) {
        return None;
    }
    for p in &placed {
        grid.set(p, true);
    }
    let pads: Vec<Placement> = grid
        .free_slots()
        .take(pad)
        .map(|(r, c)| Placement::new(1, r, c))
        .collect();
    placed.extend(pads);
    Some(Formation {
        dim: d,
        placements: placed,
        symmetric_closure: Vec::new(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum UnitKind {
    Diagonal,
    /// A box below the diagonal plus its transpose; the transpose is a
    /// phantom when `phantom` is set.
    Pair {
        phantom: bool,
    },
}

#[derive(Clone, Copy, Debug)]
struct Unit {
    size: usize,
    kind: UnitKind,
}

impl Unit {
    fn same_class(&self, other: &Unit) -> bool {
        self.size == other.size
            && matches!(
                (self.kind, other.kind),
                (UnitKind::Diagonal, UnitKind::Diagonal)
                    | (UnitKind::Pair { .. }, UnitKind::Pair { .. })
            )
    }

    fn positions(&self, d: usize) -> Vec<Placement> {
        let m = self.size;
        match self.kind {
            UnitKind::Diagonal => (1..=d + 1 - m).map(|k| Placement::new(m, k, k)).collect(),
            UnitKind::Pair { .. } => {
                let mut out = Vec::new();
                for row in 1..=d + 1 - m {
                    for col in 1..=d + 1 - m {
                        if row >= col + m {
                            out.push(Placement::new(m, row, col));
                        }
                    }
                }
                out
            }
        }
    }
}

/// Packing Problem (symmetric): a placement of the rank boxes and `pad` unit
/// boxes whose closure under adding transposed phantoms is a valid symmetric
/// formation. Only placements using the fewest phantoms are searched; any
/// symmetric formation can be pruned to one of those.
pub fn solve_symmetric(vec: &RankVector, pad: usize) -> Option<Formation> {
    let d = vec.dim;
    if !boxes_fit(vec, pad) {
        return None;
    }
    let groups = vec.grouped();
    // `choice[g]` boxes of group `g` go on the diagonal; most-diagonal first
    let mut choice: Vec<usize> = groups.iter().map(|&(_, n)| n).collect();
    loop {
        if let Some(f) = solve_symmetric_split(d, &groups, &choice, pad) {
            return Some(f);
        }
        let mut g = 0;
        loop {
            if g == groups.len() {
                return None;
            }
            if choice[g] > 0 {
                choice[g] -= 1;
                break;
            }
            choice[g] = groups[g].1;
            g += 1;
        }
    }
}

fn solve_symmetric_split(
    d: usize,
    groups: &[(usize, usize)],
    diag: &[usize],
    pad: usize,
) -> Option<Formation> {
    let mut units = Vec::new();
    let mut area = 0;
    for (&(m, count), &a) in groups.iter().zip(diag) {
        let rest = count - a;
        units.extend(std::iter::repeat_n(
            Unit {
                size: m,
                kind: UnitKind::Diagonal,
            },
            a,
        ));
        for k in 0..rest.div_ceil(2) {
            let phantom = rest % 2 == 1 && k + 1 == rest.div_ceil(2);
            units.push(Unit {
                size: m,
                kind: UnitKind::Pair { phantom },
            });
        }
        area += (a + 2 * rest.div_ceil(2)) * m * m;
    }
    if area + pad > d * d {
        return None;
    }

    fn dfs(units: &[Unit], grid: &mut Grid, placed: &mut Vec<Placement>, pad: usize) -> bool {
        let i = placed.len();
        if i == units.len() {
            // the occupied set is symmetric, so unit pads fit iff area allows
            return grid.free_slots().count() >= pad;
        }
        let u = units[i];
        let candidates = u.positions(grid.dim);
        let start = match (i.checked_sub(1).map(|j| units[j]), placed.last()) {
            (Some(prev), Some(last)) if prev.same_class(&u) => candidates
                .iter()
                .position(|p| p == last)
                .map_or(0, |k| k + 1),
            _ => 0,
        };
        for p in &candidates[start..] {
            let twin = p.transposed();
            let pair = !matches!(u.kind, UnitKind::Diagonal);
            if !grid.is_free(p) || (pair && !grid.is_free(&twin)) {
                continue;
            }
            grid.set(p, true);
            if pair {
                grid.set(&twin, true);
            }
            placed.push(*p);
            if dfs(units, grid, placed, pad) {
                return true;
            }
            placed.pop();
            grid.set(p, false);
            if pair {
                grid.set(&twin, false);
            }
        }
        false
    }

    let mut grid = Grid::new(d);
    let mut anchors = Vec::new();
    if !dfs(&units, &mut grid, &mut anchors, pad) {
        return None;
    }

    let mut placements = Vec::new();
    let mut phantoms = Vec::new();
    for (u, p) in units.iter().zip(&anchors) {
        match u.kind {
            UnitKind::Diagonal => placements.push(*p),
            UnitKind::Pair { phantom } => {
                placements.push(*p);
                if phantom {
                    phantoms.push(p.transposed());
                } else {
                    placements.push(p.transposed());
                }
            }
        }
    }
    // pads: free diagonal slots first, then lower slots paired with phantoms
    let mut remaining = pad;
    for k in 1..=d {
        if remaining == 0 {
            break;
        }
        let p = Placement::new(1, k, k);
        if grid.is_free(&p) {
            grid.set(&p, true);
            placements.push(p);
            remaining -= 1;
        }
    }
    let lower: Vec<(usize, usize)> = grid.free_slots().filter(|(r, c)| r > c).collect();
    for (r, c) in lower {
        if remaining == 0 {
            break;
        }
        placements.push(Placement::new(1, r, c));
        remaining -= 1;
        if remaining == 0 {
            phantoms.push(Placement::new(1, c, r));
        } else {
            placements.push(Placement::new(1, c, r));
            remaining -= 1;
        }
    }
    debug_assert_eq!(remaining, 0);
    Some(Formation {
        dim: d,
        placements,
        symmetric_closure: phantoms,
    })
}

pub fn solve(vec: &RankVector, pad: usize, mode: Mode) -> Option<Formation> {
    match mode {
        Mode::General => solve_general(vec, pad),
        Mode::Symmetric => solve_symmetric(vec, pad),
    }
}
