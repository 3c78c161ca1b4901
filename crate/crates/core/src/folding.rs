//! The folded-row walk and the folding criteria.
//!
//! Given a tiling and a ternary direction, the walk starts at the origin
//! and repeatedly adds the direction, reducing back into the base shape
//! whenever it leaves it. The triple defines a *folding* when the walk
//! visits every cell of the shape before returning to the origin. Whether
//! that happens depends only on the lattice and the direction; the shape
//! only controls the order in which its cells are visited.

use std::collections::HashMap;

use num_integer::Integer;

use crate::error::Error;
use crate::geometry::{linalg, Lattice, Point, Shape, Tiling};

// ---------------------------------------------------------------------------
// directions
// ---------------------------------------------------------------------------

/// A nonzero ternary direction, canonicalized so its first nonzero entry
/// is +1. A direction and its negation walk the same cells in reverse
/// order, so they are identified.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Direction {
    delta: Vec<i64>,
}

impl Direction {
    /// Canonicalizes `delta`, reporting whether it had to be negated.
    pub fn canonicalize(delta: &[i64]) -> Result<(Self, bool), Error> {
        if delta.iter().any(|&d| !(-1..=1).contains(&d)) {
            return Err(Error::InvalidDirection);
        }
        match delta.iter().find(|&&d| d != 0) {
            None => Err(Error::InvalidDirection),
            Some(1) => Ok((Direction { delta: delta.to_vec() }, false)),
            Some(_) => Ok((Direction { delta: delta.iter().map(|d| -d).collect() }, true)),
        }
    }

    pub fn new(delta: &[i64]) -> Result<Self, Error> {
        Ok(Self::canonicalize(delta)?.0)
    }

    /// Parses a comma-separated direction such as `1,0,-1`.
    pub fn parse(text: &str) -> Result<(Self, bool), Error> {
        let vals: Result<Vec<i64>, _> = text.split(',').map(|t| t.trim().parse()).collect();
        let vals = vals.map_err(|_| Error::Parse(format!("bad direction '{text}'")))?;
        Self::canonicalize(&vals)
    }

    pub fn dim(&self) -> usize {
        self.delta.len()
    }

    pub fn delta(&self) -> &[i64] {
        &self.delta
    }

    /// All (3^D - 1) / 2 canonical directions of dimension `dim`, in
    /// lexicographic order with components ordered -1 < 0 < 1.
    pub fn all(dim: usize) -> Vec<Direction> {
        let mut out = Vec::new();
        let mut cur = vec![-1i64; dim];
        loop {
            if let Some(&first) = cur.iter().find(|&&d| d != 0) {
                if first == 1 {
                    out.push(Direction { delta: cur.clone() });
                }
            }
            let mut i = dim;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < 1 {
                    cur[i] += 1;
                    break;
                }
                cur[i] = -1;
            }
        }
    }
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cells: Vec<String> = self.delta.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", cells.join(","))
    }
}

// ---------------------------------------------------------------------------
// the walk
// ---------------------------------------------------------------------------

/// A successful walk: the shape's cells in visiting order, starting at the
/// origin, plus the inverse map. Positions realize the group isomorphism
/// between the lattice cosets and Z_{|S|}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldedRow {
    order: Vec<Point>,
    index: HashMap<Point, usize>,
}

impl FoldedRow {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[Point] {
        &self.order
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.order[i]
    }

    /// Position of a shape point in the walk.
    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.index.get(p).copied()
    }
}

/// Runs the walk for an arbitrary nonzero ternary `delta` (no
/// canonicalization, so a direction and its negation can be compared).
/// Fails with the cycle length when the walk returns to the origin early.
pub fn walk_with_delta(tiling: &Tiling, delta: &[i64]) -> Result<FoldedRow, Error> {
    if delta.len() != tiling.dim() {
        return Err(Error::DimMismatch { expected: tiling.dim(), got: delta.len() });
    }
    if delta.iter().any(|&d| !(-1..=1).contains(&d)) || delta.iter().all(|&d| d == 0) {
        return Err(Error::InvalidDirection);
    }
    let n = tiling.shape().len();
    let step = Point::new(delta.to_vec());
    let origin = Point::zero(tiling.dim());
    let mut order = Vec::with_capacity(n);
    let mut index = HashMap::with_capacity(n);
    let mut p = origin.clone();
    loop {
        debug_assert!(order.len() < n, "walk revisited a cell before the origin");
        index.insert(p.clone(), order.len());
        order.push(p.clone());
        let mut q = &p + &step;
        if !tiling.shape().contains(&q) {
            q = tiling.representative(&q);
        }
        if q == origin {
            // the walk closes; it is a folding iff every cell was visited
            if order.len() == n {
                return Ok(FoldedRow { order, index });
            }
            return Err(Error::NotAFolding { cycle_length: order.len() });
        }
        p = q;
    }
}

/// The folded-row walk for a canonical direction.
pub fn walk_folded_row(tiling: &Tiling, dir: &Direction) -> Result<FoldedRow, Error> {
    walk_with_delta(tiling, dir.delta())
}

// ---------------------------------------------------------------------------
// folding criteria
// ---------------------------------------------------------------------------

/// Two-dimensional gcd criterion, one condition per canonical direction.
pub fn is_folding_2d(lattice: &Lattice, dir: &Direction) -> Result<bool, Error> {
    if lattice.dim() != 2 || dir.dim() != 2 {
        return Err(Error::DimMismatch { expected: 2, got: lattice.dim().max(dir.dim()) });
    }
    let b = lattice.basis();
    let (v11, v12, v21, v22) = (b[0][0], b[0][1], b[1][0], b[1][1]);
    let g = match dir.delta() {
        [1, 1] => (v22 - v21).gcd(&(v11 - v12)),
        [1, -1] => (v22 + v21).gcd(&(v11 + v12)),
        [1, 0] => v12.gcd(&v22),
        [0, 1] => v11.gcd(&v21),
        _ => unreachable!("canonical 2D directions"),
    };
    Ok(g == 1)
}

/// General criterion: permute coordinates so the +1 entries of the
/// direction come first, then the -1 entries, then the zeros; build the
/// (D-1) x D matrix of combined basis columns and test whether the gcd of
/// its D maximal minors is 1.
pub fn is_folding(lattice: &Lattice, dir: &Direction) -> Result<bool, Error> {
    let d = lattice.dim();
    if dir.dim() != d {
        return Err(Error::DimMismatch { expected: d, got: dir.dim() });
    }
    let delta = dir.delta();
    let mut perm: Vec<usize> = (0..d).filter(|&i| delta[i] == 1).collect();
    let l1 = perm.len();
    perm.extend((0..d).filter(|&i| delta[i] == -1));
    let l2 = perm.len() - l1;
    perm.extend((0..d).filter(|&i| delta[i] == 0));

    let b = lattice.basis();
    // v[j][r] = entry of basis row j in permuted coordinate r
    let v = |j: usize, r: usize| b[j][perm[r]] as i128;
    let mut h = Vec::with_capacity(d - 1);
    for r in 1..d {
        let row: Vec<i128> = (0..d)
            .map(|j| {
                if r < l1 {
                    v(j, r) - v(j, 0)
                } else if r < l1 + l2 {
                    v(j, r) + v(j, 0)
                } else {
                    v(j, r)
                }
            })
            .collect();
        h.push(row);
    }
    let mut g: i128 = 0;
    for skip in 0..d {
        let minor: Vec<Vec<i128>> = h
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        g = g.gcd(&linalg::det(&minor)?);
    }
    Ok(g == 1)
}

// ---------------------------------------------------------------------------
// foldings as values
// ---------------------------------------------------------------------------

/// A tiling, a direction, and the successful walk, bundled so that any
/// grid point can be indexed through the walk homomorphism.
#[derive(Debug, Clone)]
pub struct Folding {
    tiling: Tiling,
    direction: Direction,
    row: FoldedRow,
}

impl Folding {
    pub fn new(tiling: Tiling, direction: Direction) -> Result<Self, Error> {
        let row = walk_folded_row(&tiling, &direction)?;
        Ok(Folding { tiling, direction, row })
    }

    pub fn tiling(&self) -> &Tiling {
        &self.tiling
    }

    pub fn direction(&self) -> &Direction {
        &self.direction
    }

    pub fn row(&self) -> &FoldedRow {
        &self.row
    }

    pub fn len(&self) -> usize {
        self.row.len()
    }

    pub fn is_empty(&self) -> bool {
        self.row.is_empty()
    }

    /// Walk index of an arbitrary grid point: the index of the shape cell
    /// congruent to it. Satisfies
    /// `index(p + q) = index(p) + index(q) (mod |S|)`.
    pub fn grid_index(&self, p: &Point) -> usize {
        self.row
            .index_of(&self.tiling.representative(p))
            .expect("representative is a shape point")
    }
}

// ---------------------------------------------------------------------------
// shape morphing
// ---------------------------------------------------------------------------

/// Moves one cell of a folded shape across a copy boundary: adds `p + d`
/// and removes the cell of the base shape congruent to it. The result is
/// tiled by the same lattice and folds in the same direction.
pub fn morph_shape(folding: &Folding, p: &Point) -> Result<Shape, Error> {
    let tiling = folding.tiling();
    let shape = tiling.shape();
    if !shape.contains(p) {
        return Err(Error::domain(format!("{p} is not a point of the shape")));
    }
    let q = p + &Point::new(folding.direction().delta().to_vec());
    if shape.contains(&q) {
        return Err(Error::domain(format!("{q} is already in the shape")));
    }
    let removed = tiling.representative(&q);
    if removed.is_zero() {
        return Err(Error::domain("morph would remove the origin".to_string()));
    }
    let points = shape
        .points()
        .iter()
        .filter(|&s| *s != removed)
        .cloned()
        .chain(std::iter::once(q))
        .collect();
    Shape::new(shape.dim(), points)
}

// ---------------------------------------------------------------------------
// counting distinct folded-rows
// ---------------------------------------------------------------------------

/// A folded-row read backwards from the origin is the same row walked in
/// the opposite direction; rows are compared up to that reversal.
fn row_class(row: &FoldedRow) -> Vec<Point> {
    let fwd = row.order().to_vec();
    let mut rev = Vec::with_capacity(fwd.len());
    rev.push(fwd[0].clone());
    rev.extend(fwd[1..].iter().rev().cloned());
    fwd.min(rev)
}

/// Number of distinct folded-rows over all canonical directions, where
/// reversed rows count as equal. At most (3^D - 1) / 2.
pub fn count_distinct_folded_rows(tiling: &Tiling) -> usize {
    let mut classes = std::collections::HashSet::new();
    for dir in Direction::all(tiling.dim()) {
        if let Ok(row) = walk_folded_row(tiling, &dir) {
            classes.insert(row_class(&row));
        }
    }
    classes.len()
}
