//! Exact cubical models of the approximants `K_n = [0,1]² ∖ U_n`.
//!
//! At resolution `n` the unit square splits into `3ⁿ × 3ⁿ` grid squares.
//! Every gap of level `j ≤ n` has grid-aligned endpoints, so each grid column
//! is either a full stack of squares (over a surviving Cantor interval) or a
//! gap column carrying a single retained bridge edge: the top row of edges
//! for odd levels, the bottom row for even levels. The models are
//! mixed-dimension cell complexes — the bridges are measure-zero edges that a
//! raster would lose.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;
use serde::Serialize;

use crate::space_k::{bridge_height, component_of, ComponentId, PointK};
use crate::ternary::{classify, CantorClass, ExactRational, Parity};
use crate::unionfind::UnionFind;
use crate::Error;

/// Default resolution cap; `3⁷ = 2187` grid columns.
pub const DEFAULT_MAX_LEVEL: u32 = 7;

/// Classification of one grid column of a model.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ColumnKind {
    /// Full stack of squares over a surviving Cantor interval.
    Full,
    /// Column inside a deleted gap; carries only the bridge edge row.
    Gap { level: u32, parity: Parity },
    /// No cells at all (diagnostic inputs only).
    Empty,
}

/// Cell counts of a model.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct CellCounts {
    pub vertices: usize,
    pub edges: usize,
    pub squares: usize,
}

/// An exact mixed-dimension cell complex on the `3ⁿ × 3ⁿ` grid.
///
/// The closure condition holds by construction: every face of a present cell
/// is present.
pub struct CubicalModel {
    level: u32,
    n: usize,
    columns: Vec<ColumnKind>,
    squares: Vec<bool>,  // n * n, index c * n + r
    h_edges: Vec<bool>,  // n * (n+1), index i * (n+1) + j, segment (i,j)-(i+1,j)
    v_edges: Vec<bool>,  // (n+1) * n, index i * n + j, segment (i,j)-(i,j+1)
    vertices: Vec<bool>, // (n+1) * (n+1), index i * (n+1) + j
}

fn grid_size(level: u32) -> usize {
    3usize.pow(level)
}

fn column_kind(level: u32, c: usize) -> ColumnKind {
    let n = grid_size(level);
    let midpoint = ExactRational::from_ratio_unchecked(BigRational::new(
        BigInt::from(2 * c as u64 + 1),
        BigInt::from(2 * n as u64),
    ));
    match classify(&midpoint) {
        CantorClass::InGap(gap) if gap.level() <= level => ColumnKind::Gap {
            level: gap.level(),
            parity: gap.parity(),
        },
        _ => ColumnKind::Full,
    }
}

impl CubicalModel {
    /// Builds `K_n` at the default resolution cap.
    pub fn build_k_n(level: u32) -> Result<Self, Error> {
        Self::build_k_n_capped(level, DEFAULT_MAX_LEVEL)
    }

    /// Builds `K_n` with an explicit resolution cap.
    pub fn build_k_n_capped(level: u32, max_level: u32) -> Result<Self, Error> {
        if level > max_level {
            return Err(Error::ResolutionTooLarge {
                requested: level,
                max: max_level,
            });
        }
        let n = grid_size(level);
        let columns = (0..n).map(|c| column_kind(level, c)).collect();
        Ok(Self::from_column_kinds_unchecked(level, columns))
    }

    /// Assembles a model from per-column kinds; diagnostic inputs may carry
    /// `Empty` columns.
    pub fn from_column_kinds(level: u32, columns: Vec<ColumnKind>) -> Result<Self, Error> {
        if level > DEFAULT_MAX_LEVEL {
            return Err(Error::ResolutionTooLarge {
                requested: level,
                max: DEFAULT_MAX_LEVEL,
            });
        }
        if columns.len() != grid_size(level) {
            return Err(Error::DimensionMismatch {
                expected: grid_size(level),
                got: columns.len(),
            });
        }
        Ok(Self::from_column_kinds_unchecked(level, columns))
    }

    fn from_column_kinds_unchecked(level: u32, columns: Vec<ColumnKind>) -> Self {
        let n = grid_size(level);
        let mut model = CubicalModel {
            level,
            n,
            columns,
            squares: vec![false; n * n],
            h_edges: vec![false; n * (n + 1)],
            v_edges: vec![false; (n + 1) * n],
            vertices: vec![false; (n + 1) * (n + 1)],
        };
        for c in 0..n {
            match model.columns[c] {
                ColumnKind::Full => {
                    for r in 0..n {
                        model.insert_square(c, r);
                    }
                }
                ColumnKind::Gap { parity, .. } => {
                    let j = match parity {
                        Parity::Odd => n,
                        Parity::Even => 0,
                    };
                    model.insert_h_edge(c, j);
                }
                ColumnKind::Empty => {}
            }
        }
        model
    }

    fn insert_square(&mut self, c: usize, r: usize) {
        self.squares[c * self.n + r] = true;
        self.insert_h_edge(c, r);
        self.insert_h_edge(c, r + 1);
        self.insert_v_edge(c, r);
        self.insert_v_edge(c + 1, r);
    }

    fn insert_h_edge(&mut self, i: usize, j: usize) {
        self.h_edges[i * (self.n + 1) + j] = true;
        self.vertices[i * (self.n + 1) + j] = true;
        self.vertices[(i + 1) * (self.n + 1) + j] = true;
    }

    fn insert_v_edge(&mut self, i: usize, j: usize) {
        self.v_edges[i * self.n + j] = true;
        self.vertices[i * (self.n + 1) + j] = true;
        self.vertices[i * (self.n + 1) + j + 1] = true;
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Number of grid columns, `3ⁿ`.
    pub fn grid(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> &[ColumnKind] {
        &self.columns
    }

    pub fn has_square(&self, c: usize, r: usize) -> bool {
        self.squares[c * self.n + r]
    }

    pub fn has_h_edge(&self, i: usize, j: usize) -> bool {
        self.h_edges[i * (self.n + 1) + j]
    }

    pub fn has_v_edge(&self, i: usize, j: usize) -> bool {
        self.v_edges[i * self.n + j]
    }

    pub fn has_vertex(&self, i: usize, j: usize) -> bool {
        self.vertices[i * (self.n + 1) + j]
    }

    pub fn counts(&self) -> CellCounts {
        let on = |v: &Vec<bool>| v.iter().filter(|&&b| b).count();
        CellCounts {
            vertices: on(&self.vertices),
            edges: on(&self.h_edges) + on(&self.v_edges),
            squares: on(&self.squares),
        }
    }

    /// Horizontal edges that are not the face of any present square; these
    /// are exactly the retained bridge edges.
    pub fn free_h_edges(&self) -> Vec<(usize, usize)> {
        let mut free = Vec::new();
        for i in 0..self.n {
            for j in 0..=self.n {
                if !self.has_h_edge(i, j) {
                    continue;
                }
                let below = j > 0 && self.has_square(i, j - 1);
                let above = j < self.n && self.has_square(i, j);
                if !below && !above {
                    free.push((i, j));
                }
            }
        }
        free
    }

    /// Whether the geometric realization contains the point `(x, y)`.
    pub fn contains_point(&self, x: &ExactRational, y: &ExactRational) -> bool {
        for c in self.candidate_columns(x) {
            match self.columns[c] {
                ColumnKind::Full => return true,
                ColumnKind::Gap { parity, .. } => {
                    if *y == bridge_height(parity) {
                        return true;
                    }
                }
                ColumnKind::Empty => {}
            }
        }
        false
    }

    /// Columns whose closed x-interval contains `x` (one, or two on a grid
    /// line).
    fn candidate_columns(&self, x: &ExactRational) -> Vec<usize> {
        use num::ToPrimitive;
        let scaled = x.ratio() * BigInt::from(self.n as u64);
        let floor = scaled.floor().to_integer().to_usize().expect("grid index");
        let idx = floor.min(self.n - 1);
        let mut cols = vec![idx];
        if idx > 0 && scaled.is_integer() && floor == idx {
            cols.push(idx - 1);
        }
        cols
    }

    /// Checks that the realization of `fine` (one level deeper) is contained
    /// in the realization of `self`: the models are nested.
    pub fn contains_subdivided(&self, fine: &CubicalModel) -> bool {
        if fine.level != self.level + 1 {
            return false;
        }
        let n = fine.n;
        let parent_kind = |i: usize| self.columns[i / 3];
        for c in 0..n {
            for r in 0..n {
                if fine.has_square(c, r) && parent_kind(c) != ColumnKind::Full {
                    return false;
                }
            }
        }
        for i in 0..n {
            for j in 0..=n {
                if !fine.has_h_edge(i, j) {
                    continue;
                }
                let ok = match parent_kind(i) {
                    ColumnKind::Full => true,
                    ColumnKind::Gap { parity, .. } => match parity {
                        Parity::Odd => j == n,
                        Parity::Even => j == 0,
                    },
                    ColumnKind::Empty => false,
                };
                if !ok {
                    return false;
                }
            }
        }
        for i in 0..=n {
            for j in 0..n {
                if !fine.has_v_edge(i, j) {
                    continue;
                }
                // A vertical edge needs a full parent column on either side.
                let left_full = i > 0 && parent_kind(i - 1) == ColumnKind::Full;
                let right_full = i < n && parent_kind(i) == ColumnKind::Full;
                if !left_full && !right_full {
                    return false;
                }
            }
        }
        true
    }

    /// Every face of every present cell is present.
    pub fn validate_closure(&self) -> bool {
        let n = self.n;
        for c in 0..n {
            for r in 0..n {
                if self.has_square(c, r)
                    && !(self.has_h_edge(c, r)
                        && self.has_h_edge(c, r + 1)
                        && self.has_v_edge(c, r)
                        && self.has_v_edge(c + 1, r))
                {
                    return false;
                }
            }
        }
        for i in 0..n {
            for j in 0..=n {
                if self.has_h_edge(i, j)
                    && !(self.has_vertex(i, j) && self.has_vertex(i + 1, j))
                {
                    return false;
                }
            }
        }
        for i in 0..=n {
            for j in 0..n {
                if self.has_v_edge(i, j)
                    && !(self.has_vertex(i, j) && self.has_vertex(i, j + 1))
                {
                    return false;
                }
            }
        }
        true
    }
}

/// Betti numbers and Euler characteristic of a model.
///
/// `euler = V − E + F` and, because the complex embeds in the plane so that
/// second homology vanishes, `beta1 = beta0 − euler`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct HomologyReport {
    pub beta0: usize,
    pub beta1: usize,
    pub euler: i64,
    pub cell_counts: CellCounts,
}

/// Connected components by union-find over cells with face adjacency, plus
/// the Euler characteristic from exact cell counts.
pub fn homology(model: &CubicalModel) -> HomologyReport {
    let n = model.grid();
    let v_off = 0usize;
    let h_off = (n + 1) * (n + 1);
    let ve_off = h_off + n * (n + 1);
    let sq_off = ve_off + (n + 1) * n;
    let total = sq_off + n * n;

    let vertex = |i: usize, j: usize| v_off + i * (n + 1) + j;
    let h_edge = |i: usize, j: usize| h_off + i * (n + 1) + j;
    let v_edge = |i: usize, j: usize| ve_off + i * n + j;
    let square = |c: usize, r: usize| sq_off + c * n + r;

    let mut uf = UnionFind::new(total);
    for i in 0..n {
        for j in 0..=n {
            if model.has_h_edge(i, j) {
                uf.union(h_edge(i, j), vertex(i, j));
                uf.union(h_edge(i, j), vertex(i + 1, j));
            }
        }
    }
    for i in 0..=n {
        for j in 0..n {
            if model.has_v_edge(i, j) {
                uf.union(v_edge(i, j), vertex(i, j));
                uf.union(v_edge(i, j), vertex(i, j + 1));
            }
        }
    }
    for c in 0..n {
        for r in 0..n {
            if model.has_square(c, r) {
                uf.union(square(c, r), h_edge(c, r));
                uf.union(square(c, r), h_edge(c, r + 1));
                uf.union(square(c, r), v_edge(c, r));
                uf.union(square(c, r), v_edge(c + 1, r));
            }
        }
    }

    let mut roots = std::collections::HashSet::new();
    for i in 0..=n {
        for j in 0..=n {
            if model.has_vertex(i, j) {
                roots.insert(uf.find(vertex(i, j)));
            }
        }
    }
    // Every cell has vertices in its closure, so vertex roots count all
    // components.
    let beta0 = roots.len();
    let counts = model.counts();
    let euler = counts.vertices as i64 - counts.edges as i64 + counts.squares as i64;
    let beta1_signed = beta0 as i64 - euler;
    debug_assert!(beta1_signed >= 0);
    HomologyReport {
        beta0,
        beta1: beta1_signed.max(0) as usize,
        euler,
        cell_counts: counts,
    }
}

/// A grid trace of `K`: the closed `3⁻ⁿ` cells whose closure meets `K`.
pub struct TraceModel {
    level: u32,
    n: usize,
    cells: Vec<bool>, // n * n, index c * n + r
}

impl TraceModel {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn grid(&self) -> usize {
        self.n
    }

    pub fn has_cell(&self, c: usize, r: usize) -> bool {
        self.cells[c * self.n + r]
    }

    pub fn cell_count(&self) -> usize {
        self.cells.iter().filter(|&&b| b).count()
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(idx, _)| (idx / n, idx % n))
    }
}

/// Connectivity summary of a trace, together with sampled component ids
/// showing that the traced set is connected as a cell complex while `K`
/// itself splits into many path components.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TraceReport {
    pub level: u32,
    pub adjacency: &'static str,
    pub cell_count: usize,
    pub connected: bool,
    pub component_count: usize,
    pub sampled_component_ids: Vec<ComponentId>,
}

/// Cells whose closure meets `K`, with connectivity under face-plus-corner
/// adjacency.
///
/// A cell meets `K` exactly when its closed x-interval meets the Cantor set,
/// or the x-interval sits inside a gap and the cell touches that gap's bridge
/// row. The sampled component ids are taken at the left endpoints of the `2ⁿ`
/// surviving level-`n` Cantor intervals, which all lie in distinct path
/// components.
pub fn trace_of_k(level: u32) -> Result<(TraceModel, TraceReport), Error> {
    trace_of_k_capped(level, DEFAULT_MAX_LEVEL)
}

pub fn trace_of_k_capped(level: u32, max_level: u32) -> Result<(TraceModel, TraceReport), Error> {
    if level > max_level {
        return Err(Error::ResolutionTooLarge {
            requested: level,
            max: max_level,
        });
    }
    let n = grid_size(level);
    let n_big = BigInt::from(n as u64);
    let mut cells = vec![false; n * n];
    for c in 0..n {
        let left = ExactRational::from_ratio_unchecked(BigRational::new(
            BigInt::from(c as u64),
            n_big.clone(),
        ));
        let right = ExactRational::from_ratio_unchecked(BigRational::new(
            BigInt::from(c as u64 + 1),
            n_big.clone(),
        ));
        let strictly_inside = match classify(&left) {
            CantorClass::InGap(gap) if right < *gap.right() => Some(gap.parity()),
            _ => None,
        };
        match strictly_inside {
            None => {
                // The closed x-interval meets the Cantor set: full column.
                for r in 0..n {
                    cells[c * n + r] = true;
                }
            }
            Some(Parity::Odd) => cells[c * n + (n - 1)] = true,
            Some(Parity::Even) => cells[c * n] = true,
        }
    }
    let model = TraceModel { level, n, cells };

    // Face-plus-corner adjacency.
    let mut uf = UnionFind::new(n * n);
    for (c, r) in model.cells() {
        for dc in -1i64..=1 {
            for dr in -1i64..=1 {
                let (nc, nr) = (c as i64 + dc, r as i64 + dr);
                if nc < 0 || nr < 0 || nc >= n as i64 || nr >= n as i64 {
                    continue;
                }
                let (nc, nr) = (nc as usize, nr as usize);
                if model.has_cell(nc, nr) {
                    uf.union(c * n + r, nc * n + nr);
                }
            }
        }
    }
    let mut roots = std::collections::HashSet::new();
    for (c, r) in model.cells() {
        roots.insert(uf.find(c * n + r));
    }

    // Left endpoints of the surviving level-n Cantor intervals.
    let mut ids = std::collections::BTreeSet::new();
    let mut bases = vec![BigRational::from(BigInt::from(0))];
    for depth in 1..=level {
        let third = BigRational::new(BigInt::one(), BigInt::from(3u64).pow(depth));
        bases = bases
            .iter()
            .flat_map(|b| [b.clone(), b + &third + &third])
            .collect();
    }
    for base in bases {
        let p = PointK::new(
            ExactRational::from_ratio_unchecked(base),
            ExactRational::zero(),
        )
        .expect("Cantor points carry full fibers");
        ids.insert(component_of(&p));
    }

    let report = TraceReport {
        level,
        adjacency: "face-plus-corner",
        cell_count: model.cell_count(),
        connected: roots.len() == 1,
        component_count: roots.len(),
        sampled_component_ids: ids.into_iter().collect(),
    };
    Ok((model, report))
}

/// A proven upper bound `3^−(n+1)` for the Hausdorff distance between `K_n`
/// and `K`: every point of `K_n ∖ K` sits over a gap of level `> n`, hence
/// within half that gap's width of a Cantor fiber.
pub fn hausdorff_bound(level: u32) -> ExactRational {
    ExactRational::from_ratio_unchecked(BigRational::new(
        BigInt::one(),
        BigInt::from(3u64).pow(level + 1),
    ))
}

/// Model statistics for reporting: level, cell counts, Betti numbers, Euler
/// characteristic, and the Hausdorff bound.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ApproxReport {
    pub level: u32,
    pub cell_counts: CellCounts,
    pub beta0: usize,
    pub beta1: usize,
    pub euler: i64,
    pub hausdorff_bound: ExactRational,
}

pub fn approx_report(model: &CubicalModel) -> ApproxReport {
    let hom = homology(model);
    ApproxReport {
        level: model.level(),
        cell_counts: hom.cell_counts,
        beta0: hom.beta0,
        beta1: hom.beta1,
        euler: hom.euler,
        hausdorff_bound: hausdorff_bound(model.level()),
    }
}
