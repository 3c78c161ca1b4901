//! Binary codes correcting a single error or one 2-burst (two positions
//! adjacent along a coordinate axis) in a multidimensional codeword.
//!
//! The parity-check column for position i is [1; A i^T mod 2; the binary
//! expansion of alpha^{index(i)}] over GF(2^m), where A is a d x D matrix
//! with distinct binary columns (d = ceil(log2 D)) and index() is either
//! the row-major position number of a box or the walk index of a folded
//! shape. The parity bit separates singles from bursts, the A block
//! identifies the burst axis, and the field block locates the position.

use std::collections::HashMap;

use crate::error::Error;
use crate::finite_field::Field;
use crate::folding::Folding;
use crate::geometry::Point;

/// Codeword support: a box given by its side lengths, or a folded shape
/// of exactly 2^m - 1 cells.
#[derive(Debug, Clone)]
pub enum CodeGeometry {
    Box(Vec<i64>),
    Folded(Box<Folding>),
}

/// Decoding verdict for a received word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ErrorReport {
    None,
    Single(Point),
    /// Two flipped positions: `first` and `first` stepped by +1 along `axis`.
    Burst2 { first: Point, axis: usize },
    Uncorrectable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedundancyReport {
    pub redundancy: usize,
    pub trivial_bound: usize,
    pub pattern_count: usize,
}

/// Summary of the exhaustive self-check over all correctable patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifySummary {
    pub pattern_count: usize,
    pub distinct_syndromes: usize,
    pub decode_ok: bool,
}

#[derive(Debug, Clone)]
pub struct BurstCode {
    geometry: CodeGeometry,
    field: Field,
    m: u32,
    d: usize,
    dim: usize,
    /// column j of A, packed with bit r = bit r of j
    a_cols: Vec<u64>,
    /// positions ordered by index
    positions: Vec<Point>,
    pos_index: HashMap<Point, usize>,
    /// index offset of a +1 step along each axis, mod 2^m - 1
    strides: Vec<u64>,
    /// parity-check columns packed as bits: bit 0 parity, bits 1..=d the A
    /// block, bits d+1..d+m the field element
    h_cols: Vec<u64>,
    /// reduced row echelon form of H and its pivot columns, for encoding
    rref: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl BurstCode {
    pub fn build(geometry: CodeGeometry, m: u32) -> Result<Self, Error> {
        let field = Field::new(2, m)?;
        let n_field = (1u64 << m) - 1;
        let (positions, strides, dim) = match &geometry {
            CodeGeometry::Box(dims) => {
                if dims.is_empty() || dims.iter().any(|&n| n <= 0) {
                    return Err(Error::domain("box dimensions must be positive".to_string()));
                }
                let dim = dims.len();
                let mut strides = vec![1u64; dim];
                for j in (0..dim - 1).rev() {
                    strides[j] = strides[j + 1] * dims[j + 1] as u64;
                }
                let total = strides[0] * dims[0] as u64;
                if n_field < total {
                    return Err(Error::SizeMismatch {
                        expected: total as usize,
                        got: n_field as usize,
                    });
                }
                let mut positions = vec![Point::zero(dim)];
                for (axis, &n) in dims.iter().enumerate() {
                    let prev = std::mem::take(&mut positions);
                    for p in prev {
                        for v in 0..n {
                            positions.push(p.step(axis, v));
                        }
                    }
                }
                positions.sort_by_key(|p| {
                    (0..dim).map(|j| p[j] as u64 * strides[j]).sum::<u64>()
                });
                (positions, strides, dim)
            }
            CodeGeometry::Folded(folding) => {
                if folding.len() as u64 != n_field {
                    return Err(Error::SizeMismatch {
                        expected: n_field as usize,
                        got: folding.len(),
                    });
                }
                let dim = folding.tiling().dim();
                let strides = (0..dim)
                    .map(|j| folding.grid_index(&Point::zero(dim).step(j, 1)) as u64)
                    .collect();
                (folding.row().order().to_vec(), strides, dim)
            }
        };
        let d = usize::BITS as usize - (dim - 1).leading_zeros() as usize; // ceil(log2 dim)
        let a_cols: Vec<u64> = (0..dim as u64).collect();
        let pos_index: HashMap<Point, usize> =
            positions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let h_cols: Vec<u64> = positions
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let mut col = 1u64; // parity bit
                col |= a_block(&a_cols, p) << 1;
                col |= field.exp(i as u64) << (1 + d);
                col
            })
            .collect();
        let r = 1 + d + m as usize;
        let (rref, pivots) = rref_gf2(&h_cols, r);
        Ok(BurstCode {
            geometry,
            field,
            m,
            d,
            dim,
            a_cols,
            positions,
            pos_index,
            strides,
            h_cols,
            rref,
            pivots,
        })
    }

    pub fn geometry(&self) -> &CodeGeometry {
        &self.geometry
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Number of codeword positions.
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Positions in index order (the serialization order of codewords).
    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    /// Height of the parity-check matrix: m + d + 1.
    pub fn redundancy(&self) -> usize {
        1 + self.d + self.m as usize
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn info_len(&self) -> usize {
        self.len() - self.rank()
    }

    fn in_geometry(&self, p: &Point) -> bool {
        match &self.geometry {
            CodeGeometry::Box(dims) => {
                (0..self.dim).all(|j| 0 <= p[j] && p[j] < dims[j])
            }
            CodeGeometry::Folded(folding) => folding.tiling().shape().contains(p),
        }
    }

    /// Syndrome of a received bit assignment (one bit per position, index
    /// order).
    pub fn syndrome(&self, received: &[u8]) -> Result<u64, Error> {
        if received.len() != self.len() {
            return Err(Error::SizeMismatch { expected: self.len(), got: received.len() });
        }
        Ok(received
            .iter()
            .zip(&self.h_cols)
            .filter(|(&bit, _)| bit & 1 == 1)
            .fold(0, |acc, (_, &col)| acc ^ col))
    }

    /// Systematic encoding: info bits fill the non-pivot positions and the
    /// pivot positions are solved from the reduced parity checks.
    pub fn encode(&self, info: &[u8]) -> Result<Vec<u8>, Error> {
        if info.len() != self.info_len() {
            return Err(Error::SizeMismatch { expected: self.info_len(), got: info.len() });
        }
        let mut word = vec![0u8; self.len()];
        let mut is_pivot = vec![false; self.len()];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let mut it = info.iter();
        for (i, w) in word.iter_mut().enumerate() {
            if !is_pivot[i] {
                *w = *it.next().unwrap() & 1;
            }
        }
        for (row, &pivot_col) in self.rref.iter().zip(&self.pivots) {
            let mut bit = 0u8;
            for (c, w) in word.iter().enumerate() {
                if c != pivot_col && row[c] == 1 {
                    bit ^= w;
                }
            }
            word[pivot_col] = bit;
        }
        debug_assert_eq!(self.syndrome(&word).unwrap(), 0);
        Ok(word)
    }

    pub fn decode(&self, received: &[u8]) -> Result<ErrorReport, Error> {
        Ok(self.decode_syndrome(self.syndrome(received)?))
    }

    /// The decoder proper. Splits the syndrome into the parity bit, the
    /// axis block, and the field element, then locates the error.
    pub fn decode_syndrome(&self, syndrome: u64) -> ErrorReport {
        if syndrome == 0 {
            return ErrorReport::None;
        }
        let s_par = syndrome & 1;
        let s_a = (syndrome >> 1) & ((1 << self.d) - 1);
        let s_f = syndrome >> (1 + self.d);
        let n = (1u64 << self.m) - 1;
        if s_par == 1 {
            // single error: the field element is alpha^{index}
            let Ok(idx) = self.field.dlog(s_f) else {
                return ErrorReport::Uncorrectable;
            };
            if idx as usize >= self.len() {
                return ErrorReport::Uncorrectable;
            }
            let p = &self.positions[idx as usize];
            if a_block(&self.a_cols, p) != s_a {
                return ErrorReport::Uncorrectable;
            }
            return ErrorReport::Single(p.clone());
        }
        // a 2-burst: the A block is the column of the burst axis and the
        // field element is alpha^{index} (1 + alpha^{stride})
        let Some(axis) = self.a_cols.iter().position(|&c| c == s_a) else {
            return ErrorReport::Uncorrectable;
        };
        let Ok(s_f_log) = self.field.dlog(s_f) else {
            return ErrorReport::Uncorrectable;
        };
        let step = self.field.add(1, self.field.exp(self.strides[axis]));
        if step == 0 {
            // the axis stride is 0 mod the field order: no valid pairs
            return ErrorReport::Uncorrectable;
        }
        let step_log = self.field.dlog(step).expect("nonzero");
        let idx = (s_f_log + n - step_log) % n;
        if idx as usize >= self.len() {
            return ErrorReport::Uncorrectable;
        }
        let p = self.positions[idx as usize].clone();
        let q = p.step(axis, 1);
        if !self.in_geometry(&q) {
            return ErrorReport::Uncorrectable;
        }
        ErrorReport::Burst2 { first: p, axis }
    }

    /// Every correctable error pattern: the empty pattern, all singles,
    /// and all axis-adjacent pairs inside the geometry.
    pub fn correctable_patterns(&self) -> Vec<Vec<Point>> {
        let mut out = vec![Vec::new()];
        for p in &self.positions {
            out.push(vec![p.clone()]);
        }
        for p in &self.positions {
            for axis in 0..self.dim {
                let q = p.step(axis, 1);
                if self.in_geometry(&q) {
                    out.push(vec![p.clone(), q]);
                }
            }
        }
        out
    }

    /// redundancy r = m + d + 1 against the information-theoretic floor
    /// ceil(log2(#correctable patterns)); r may exceed it by at most one.
    pub fn redundancy_report(&self) -> Result<RedundancyReport, Error> {
        let count = self.correctable_patterns().len();
        let trivial_bound = usize::BITS as usize - (count - 1).leading_zeros() as usize;
        let r = self.redundancy();
        if r > trivial_bound + 1 {
            return Err(Error::RedundancyBound(format!(
                "r = {r} exceeds trivial bound {trivial_bound} + 1 over {count} patterns"
            )));
        }
        Ok(RedundancyReport { redundancy: r, trivial_bound, pattern_count: count })
    }

    fn pattern_syndrome(&self, pattern: &[Point]) -> u64 {
        pattern
            .iter()
            .map(|p| self.h_cols[self.pos_index[p]])
            .fold(0, |acc, col| acc ^ col)
    }

    /// Exhaustively checks that all correctable patterns have pairwise
    /// distinct syndromes and decode back to themselves.
    pub fn verify_exhaustive(&self) -> Result<VerifySummary, Error> {
        let patterns = self.correctable_patterns();
        let mut seen: HashMap<u64, &Vec<Point>> = HashMap::with_capacity(patterns.len());
        for pattern in &patterns {
            let s = self.pattern_syndrome(pattern);
            if let Some(other) = seen.insert(s, pattern) {
                return Err(Error::domain(format!(
                    "syndrome collision between {pattern:?} and {other:?}"
                )));
            }
        }
        let mut decode_ok = true;
        for pattern in &patterns {
            let report = self.decode_syndrome(self.pattern_syndrome(pattern));
            let ok = match (pattern.len(), &report) {
                (0, ErrorReport::None) => true,
                (1, ErrorReport::Single(p)) => *p == pattern[0],
                (2, ErrorReport::Burst2 { first, axis }) => {
                    let q = first.step(*axis, 1);
                    *first == pattern[0] && q == pattern[1]
                }
                _ => false,
            };
            if !ok {
                decode_ok = false;
            }
        }
        Ok(VerifySummary {
            pattern_count: patterns.len(),
            distinct_syndromes: seen.len(),
            decode_ok,
        })
    }
}

/// The A block of a position: bit r = sum_j A[r][j] p_j mod 2, with
/// column j the binary expansion of j.
fn a_block(a_cols: &[u64], p: &Point) -> u64 {
    let mut out = 0u64;
    for (j, &col) in a_cols.iter().enumerate() {
        if p[j].rem_euclid(2) == 1 {
            out ^= col;
        }
    }
    out
}

/// Reduced row echelon form over GF(2) with leftmost pivots; columns are
/// packed words, one bit per matrix row.
fn rref_gf2(cols: &[u64], rows: usize) -> (Vec<Vec<u8>>, Vec<usize>) {
    let n = cols.len();
    let mut mat: Vec<Vec<u8>> = (0..rows)
        .map(|r| cols.iter().map(|&c| ((c >> r) & 1) as u8).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..n {
        let Some(pivot_row) = (next_row..rows).find(|&r| mat[r][col] == 1) else {
            continue;
        };
        mat.swap(next_row, pivot_row);
        for r in 0..rows {
            if r != next_row && mat[r][col] == 1 {
                let (a, b) = if r < next_row {
                    let (lo, hi) = mat.split_at_mut(next_row);
                    (&mut lo[r], &hi[0])
                } else {
                    let (lo, hi) = mat.split_at_mut(r);
                    (&mut hi[0], &lo[next_row])
                };
                for (x, y) in a.iter_mut().zip(b.iter()) {
                    *x ^= y;
                }
            }
        }
        pivots.push(col);
        next_row += 1;
        if next_row == rows {
            break;
        }
    }
    mat.truncate(pivots.len());
    (mat, pivots)
}
