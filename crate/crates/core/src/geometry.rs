//! Exact integer lattices, finite shapes, residues, and lattice tilings.
//!
//! A [`Lattice`] is the set of integer combinations of its basis rows; it
//! partitions the grid into `volume()` cosets. A [`Shape`] is a finite set
//! of grid points whose designated center is the origin. When the shape
//! picks exactly one point from every coset, lattice translates of the
//! shape partition the grid and the pair forms a [`Tiling`].

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Index, Sub};

use crate::error::Error;

/// Largest supported dimension.
pub const MAX_DIM: usize = 8;
/// Largest supported |det| of a lattice basis.
pub const MAX_VOLUME: i128 = 1 << 31;

// ---------------------------------------------------------------------------
// points
// ---------------------------------------------------------------------------

/// A point of the D-dimensional integer grid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Vec<i64>);

impl Point {
    pub fn new(coords: Vec<i64>) -> Self {
        Point(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Point(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// The point shifted by one unit along `axis`.
    pub fn step(&self, axis: usize, by: i64) -> Point {
        let mut c = self.0.clone();
        c[axis] += by;
        Point(c)
    }
}

impl Index<usize> for Point {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        debug_assert_eq!(self.dim(), rhs.dim());
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        debug_assert_eq!(self.dim(), rhs.dim());
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

// ---------------------------------------------------------------------------
// exact integer linear algebra (pub(crate) helpers)
// ---------------------------------------------------------------------------

pub(crate) mod linalg {
    use crate::error::Error;

    fn overflow() -> Error {
        Error::envelope("integer overflow in exact arithmetic")
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub(crate) fn det(m: &[Vec<i128>]) -> Result<i128, Error> {
        let n = m.len();
        if n == 0 {
            return Ok(1); // empty matrix: the multiplicative identity
        }
        let mut m: Vec<Vec<i128>> = m.to_vec();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if m[k][k] == 0 {
                match (k + 1..n).find(|&r| m[r][k] != 0) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let a = m[i][j].checked_mul(m[k][k]).ok_or_else(overflow)?;
                    let b = m[i][k].checked_mul(m[k][j]).ok_or_else(overflow)?;
                    m[i][j] = a.checked_sub(b).ok_or_else(overflow)? / prev;
                }
                m[i][k] = 0;
            }
            prev = m[k][k];
        }
        Ok(sign * m[n - 1][n - 1])
    }

    /// Row Hermite normal form: upper triangular, positive diagonal,
    /// entries above each pivot reduced into [0, pivot).
    pub(crate) fn hnf_rows(basis: &[Vec<i64>]) -> Result<Vec<Vec<i64>>, Error> {
        let n = basis.len();
        let mut m: Vec<Vec<i128>> = basis
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let sub_row = |m: &mut Vec<Vec<i128>>, dst: usize, src: usize, q: i128| -> Result<(), Error> {
            let src_row = m[src].clone();
            for (d, s) in m[dst].iter_mut().zip(src_row) {
                let t = s.checked_mul(q).ok_or_else(overflow)?;
                *d = d.checked_sub(t).ok_or_else(overflow)?;
            }
            Ok(())
        };
        for col in 0..n {
            loop {
                let mut nz: Vec<usize> = (col..n).filter(|&r| m[r][col] != 0).collect();
                if nz.len() <= 1 {
                    break;
                }
                nz.sort_by_key(|&r| m[r][col].abs());
                let pivot = nz[0];
                for &r in &nz[1..] {
                    let q = m[r][col] / m[pivot][col];
                    sub_row(&mut m, r, pivot, q)?;
                }
            }
            let nz = (col..n).find(|&r| m[r][col] != 0).ok_or(Error::SingularBasis)?;
            m.swap(col, nz);
            if m[col][col] < 0 {
                for v in m[col].iter_mut() {
                    *v = -*v;
                }
            }
        }
        for j in 1..n {
            for i in 0..j {
                let q = m[i][j].div_euclid(m[j][j]);
                if q != 0 {
                    sub_row(&mut m, i, j, q)?;
                }
            }
        }
        m.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| i64::try_from(x).map_err(|_| overflow()))
                    .collect()
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// lattices
// ---------------------------------------------------------------------------

/// A full-rank sublattice of the integer grid, given by basis row vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<i64>>,
    hnf: Vec<Vec<i64>>,
    volume: u64,
}

impl Lattice {
    /// Builds a lattice from basis rows, checking the supported envelope:
    /// 1 <= D <= 8, det != 0, |det| <= 2^31.
    pub fn new(basis: Vec<Vec<i64>>) -> Result<Self, Error> {
        let dim = basis.len();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::envelope(format!("dimension {dim} not in 1..={MAX_DIM}")));
        }
        for row in &basis {
            if row.len() != dim {
                return Err(Error::DimMismatch { expected: dim, got: row.len() });
            }
        }
        let m: Vec<Vec<i128>> = basis
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let d = linalg::det(&m)?;
        if d == 0 {
            return Err(Error::SingularBasis);
        }
        if d.abs() > MAX_VOLUME {
            return Err(Error::envelope(format!("|det| = {} exceeds 2^31", d.abs())));
        }
        let hnf = linalg::hnf_rows(&basis)?;
        Ok(Lattice { dim, basis, hnf, volume: d.unsigned_abs() as u64 })
    }

    /// The lattice generated by `diag(d_1, ..., d_D)`.
    pub fn diagonal(dims: &[i64]) -> Result<Self, Error> {
        let n = dims.len();
        let basis = (0..n)
            .map(|i| (0..n).map(|j| if i == j { dims[i] } else { 0 }).collect())
            .collect();
        Lattice::new(basis)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Hermite normal form of the basis (upper triangular, positive diagonal).
    pub fn hnf(&self) -> &[Vec<i64>] {
        &self.hnf
    }

    /// |det| of the basis; the number of cosets of the lattice in the grid.
    pub fn volume(&self) -> u64 {
        self.volume
    }

    /// Canonical coset label of `p`. Two points get equal residues exactly
    /// when their difference is a lattice vector.
    pub fn residue(&self, p: &Point) -> Result<Residue, Error> {
        if p.dim() != self.dim {
            return Err(Error::DimMismatch { expected: self.dim, got: p.dim() });
        }
        let mut c: Vec<i64> = p.coords().to_vec();
        for i in 0..self.dim {
            let k = c[i].div_euclid(self.hnf[i][i]);
            if k != 0 {
                for (cj, hij) in c[i..].iter_mut().zip(&self.hnf[i][i..]) {
                    *cj -= k * hij;
                }
            }
        }
        Ok(Residue(c))
    }

    /// Membership test: `p` is a lattice point.
    pub fn contains(&self, p: &Point) -> Result<bool, Error> {
        Ok(self.residue(p)?.0.iter().all(|&x| x == 0))
    }

    /// Parses the lattice text format: `dim D` then D rows of D integers.
    /// Lines starting with `#` and blank lines are ignored.
    pub fn from_text(text: &str) -> Result<Self, Error> {
        let mut lines = content_lines(text);
        let dim = parse_dim_line(lines.next())?;
        let mut basis = Vec::with_capacity(dim);
        for line in lines {
            basis.push(parse_ints(line, dim)?);
        }
        if basis.len() != dim {
            return Err(Error::Parse(format!(
                "expected {dim} basis rows, found {}",
                basis.len()
            )));
        }
        Lattice::new(basis)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("dim {}\n", self.dim);
        for row in &self.basis {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Canonical coset label; coordinates lie in `[0, h_ii)` for the HNF
/// diagonal entries `h_ii`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue(Vec<i64>);

impl Residue {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

// ---------------------------------------------------------------------------
// shapes
// ---------------------------------------------------------------------------

/// A finite set of grid points containing the origin (its center).
/// Points are kept sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    dim: usize,
    points: Vec<Point>,
}

impl Shape {
    pub fn new(dim: usize, mut points: Vec<Point>) -> Result<Self, Error> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::envelope(format!("dimension {dim} not in 1..={MAX_DIM}")));
        }
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimMismatch { expected: dim, got: p.dim() });
            }
        }
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0].to_string()));
        }
        if !points.iter().any(|p| p.is_zero()) {
            return Err(Error::MissingOrigin);
        }
        Ok(Shape { dim, points })
    }

    /// The axis-aligned box `[0, dims_1) x ... x [0, dims_D)`.
    pub fn box_shape(dims: &[i64]) -> Result<Self, Error> {
        if dims.iter().any(|&n| n <= 0) {
            return Err(Error::domain("box dimensions must be positive"));
        }
        let mut points = vec![Point::zero(dims.len())];
        for (axis, &n) in dims.iter().enumerate() {
            let prev = std::mem::take(&mut points);
            for p in prev {
                for v in 0..n {
                    points.push(p.step(axis, v));
                }
            }
        }
        Shape::new(dims.len(), points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    /// Componentwise (min, max) over the points.
    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = self.points[0].coords().to_vec();
        let mut hi = lo.clone();
        for p in &self.points {
            for (i, &c) in p.coords().iter().enumerate() {
                lo[i] = lo[i].min(c);
                hi[i] = hi[i].max(c);
            }
        }
        (Point::new(lo), Point::new(hi))
    }

    /// Parses the shape text format: `dim D`, then one point per line as D
    /// integers. `#` comments and blank lines are ignored. An optional
    /// `center x1 .. xD` line marks the center; the shape is translated so
    /// the center lands on the origin. The origin must be a member after
    /// normalization.
    pub fn from_text(text: &str) -> Result<Self, Error> {
        let mut lines = content_lines(text);
        let dim = parse_dim_line(lines.next())?;
        let mut center: Option<Vec<i64>> = None;
        let mut raw: Vec<Vec<i64>> = Vec::new();
        for line in lines {
            if let Some(rest) = line.strip_prefix("center") {
                if center.is_some() {
                    return Err(Error::Parse("multiple center lines".into()));
                }
                center = Some(parse_ints(rest, dim)?);
            } else {
                raw.push(parse_ints(line, dim)?);
            }
        }
        let center = center.unwrap_or_else(|| vec![0; dim]);
        let points = raw
            .into_iter()
            .map(|c| Point::new(c.iter().zip(&center).map(|(a, b)| a - b).collect()))
            .collect();
        Shape::new(dim, points)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("dim {}\n", self.dim);
        for p in &self.points {
            let cells: Vec<String> = p.coords().iter().map(|x| x.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn parse_dim_line(line: Option<&str>) -> Result<usize, Error> {
    let line = line.ok_or_else(|| Error::Parse("empty input".into()))?;
    let rest = line
        .strip_prefix("dim")
        .ok_or_else(|| Error::Parse(format!("expected 'dim D', got '{line}'")))?;
    rest.trim()
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("bad dimension in '{line}'")))
}

fn parse_ints(line: &str, dim: usize) -> Result<Vec<i64>, Error> {
    let vals: Result<Vec<i64>, _> = line.split_whitespace().map(str::parse).collect();
    let vals = vals.map_err(|_| Error::Parse(format!("bad integer in '{line}'")))?;
    if vals.len() != dim {
        return Err(Error::Parse(format!(
            "expected {dim} coordinates, got {} in '{line}'",
            vals.len()
        )));
    }
    Ok(vals)
}

// ---------------------------------------------------------------------------
// tilings
// ---------------------------------------------------------------------------

/// True when lattice translates of the shape partition the grid, i.e. the
/// shape has `volume()` points with pairwise distinct residues.
pub fn is_tiling(lattice: &Lattice, shape: &Shape) -> Result<bool, Error> {
    if lattice.dim() != shape.dim() {
        return Err(Error::DimMismatch { expected: lattice.dim(), got: shape.dim() });
    }
    if shape.len() as u64 != lattice.volume() {
        return Ok(false);
    }
    let mut seen = HashMap::with_capacity(shape.len());
    for p in shape.points() {
        if seen.insert(lattice.residue(p)?, p).is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A verified lattice tiling with a precomputed residue -> shape point
/// table (size = volume), so center lookups are O(1).
#[derive(Debug, Clone)]
pub struct Tiling {
    lattice: Lattice,
    shape: Shape,
    rep: HashMap<Residue, Point>,
}

impl Tiling {
    pub fn new(lattice: Lattice, shape: Shape) -> Result<Self, Error> {
        if lattice.dim() != shape.dim() {
            return Err(Error::DimMismatch { expected: lattice.dim(), got: shape.dim() });
        }
        if shape.len() as u64 != lattice.volume() {
            return Err(Error::NotATiling(format!(
                "|S| = {} but volume = {}",
                shape.len(),
                lattice.volume()
            )));
        }
        let mut rep = HashMap::with_capacity(shape.len());
        for p in shape.points() {
            if let Some(q) = rep.insert(lattice.residue(p)?, p.clone()) {
                return Err(Error::NotATiling(format!(
                    "points {q} and {p} lie in the same coset"
                )));
            }
        }
        Ok(Tiling { lattice, shape, rep })
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// The unique shape point congruent to `p` modulo the lattice.
    pub fn representative(&self, p: &Point) -> Point {
        let r = self.lattice.residue(p).expect("dimension checked at construction");
        self.rep[&r].clone()
    }

    /// The center of the shape copy containing `p`; `p - center_of(p)` is
    /// always a point of the base shape.
    pub fn center_of(&self, p: &Point) -> Point {
        p - &self.representative(p)
    }
}

/// The canonical fundamental domain of a lattice: one representative per
/// coset with coordinates in `[0, h_ii)` from the Hermite normal form.
pub fn fundamental_tile(lattice: &Lattice) -> Shape {
    let dim = lattice.dim();
    let mut points = vec![Point::zero(dim)];
    for i in 0..dim {
        let n = lattice.hnf()[i][i];
        let prev = std::mem::take(&mut points);
        for p in prev {
            for v in 0..n {
                points.push(p.step(i, v));
            }
        }
    }
    Shape::new(dim, points).expect("HNF box is a valid shape")
}

/// A compact fundamental domain grown by breadth-first search from the
/// origin: each grid neighbor is adopted when its coset is still uncovered.
pub fn compact_tile(lattice: &Lattice) -> Shape {
    let dim = lattice.dim();
    let volume = lattice.volume() as usize;
    let origin = Point::zero(dim);
    let mut seen = std::collections::HashSet::with_capacity(volume);
    seen.insert(lattice.residue(&origin).unwrap());
    let mut points = vec![origin.clone()];
    let mut queue = std::collections::VecDeque::from([origin]);
    while let Some(p) = queue.pop_front() {
        if seen.len() == volume {
            break;
        }
        for axis in 0..dim {
            for by in [1, -1] {
                let q = p.step(axis, by);
                if seen.insert(lattice.residue(&q).unwrap()) {
                    points.push(q.clone());
                    queue.push_back(q);
                }
            }
        }
    }
    debug_assert_eq!(points.len(), volume);
    Shape::new(dim, points).expect("BFS tile is a valid shape")
}

/// All sublattices of the grid with the given volume, one per Hermite
/// normal form: upper-triangular bases with positive diagonal product
/// `volume` and above-diagonal entries reduced modulo the pivot below.
pub fn hermite_lattices(dim: usize, volume: i64) -> Vec<Lattice> {
    fn divisor_splits(dim: usize, volume: i64) -> Vec<Vec<i64>> {
        if dim == 1 {
            return vec![vec![volume]];
        }
        let mut out = Vec::new();
        for d in 1..=volume {
            if volume % d == 0 {
                for mut rest in divisor_splits(dim - 1, volume / d) {
                    rest.insert(0, d);
                    out.push(rest);
                }
            }
        }
        out
    }
    let mut out = Vec::new();
    for diag in divisor_splits(dim, volume) {
        // positions above the diagonal, filled by odometer over the moduli
        let slots: Vec<(usize, usize)> =
            (0..dim).flat_map(|i| (i + 1..dim).map(move |j| (i, j))).collect();
        let mut vals = vec![0i64; slots.len()];
        'odometer: loop {
            let mut basis = vec![vec![0i64; dim]; dim];
            for (i, &d) in diag.iter().enumerate() {
                basis[i][i] = d;
            }
            for (&(i, j), &v) in slots.iter().zip(&vals) {
                basis[i][j] = v;
            }
            out.push(Lattice::new(basis).expect("triangular basis within envelope"));
            let mut k = 0;
            loop {
                if k == slots.len() {
                    break 'odometer;
                }
                vals[k] += 1;
                if vals[k] < diag[slots[k].1] {
                    break;
                }
                vals[k] = 0;
                k += 1;
            }
        }
    }
    out
}
