//! Distinct difference configurations: folding B2 sequences into shapes,
//! periodic extensions, and intersection searches.
//!
//! A dot pattern is a DDC when the difference vectors between its dots
//! are pairwise distinct. Folding a B2 sequence along a folded-row lands
//! the marks on shape cells whose walk indices are the sequence elements;
//! the B2 property transfers to the difference vectors, and the lattice
//! extends the pattern periodically over the whole grid.

use std::collections::HashSet;

use crate::error::Error;
use crate::folding::Folding;
use crate::geometry::{Point, Shape};
use crate::sidon::B2Sequence;

/// Dots placed on a subset of a shape's cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotPattern {
    shape: Shape,
    dots: Vec<Point>,
}

impl DotPattern {
    pub fn new(shape: Shape, mut dots: Vec<Point>) -> Result<Self, Error> {
        dots.sort();
        dots.dedup();
        if let Some(p) = dots.iter().find(|p| !shape.contains(p)) {
            return Err(Error::domain(format!("dot {p} outside the shape")));
        }
        Ok(DotPattern { shape, dots })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dots(&self) -> &[Point] {
        &self.dots
    }

    /// Renders a 2D pattern as rows of '.' and 'X' over the bounding box
    /// (first coordinate = row, ascending), then the coordinate list.
    /// Higher dimensions get the coordinate list only.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if self.shape.dim() == 2 {
            let (lo, hi) = self.shape.bounding_box();
            let dotset: HashSet<&Point> = self.dots.iter().collect();
            for x in lo[0]..=hi[0] {
                for y in lo[1]..=hi[1] {
                    let p = Point::new(vec![x, y]);
                    out.push(if dotset.contains(&p) {
                        'X'
                    } else if self.shape.contains(&p) {
                        '.'
                    } else {
                        ' '
                    });
                }
                out.push('\n');
            }
        }
        for d in &self.dots {
            out.push_str(&d.to_string());
            out.push('\n');
        }
        out
    }
}

/// True iff all ordered difference vectors between distinct dots are
/// pairwise distinct.
pub fn distinct_differences(dots: &[Point]) -> bool {
    let mut seen = HashSet::with_capacity(dots.len() * dots.len());
    for a in dots {
        for b in dots {
            if a != b && !seen.insert(a - b) {
                return false;
            }
        }
    }
    true
}

/// DDC check for a dot pattern.
pub fn verify_ddc(pattern: &DotPattern) -> bool {
    distinct_differences(pattern.dots())
}

/// Marks the cells whose walk index lies in the B2 sequence. The result
/// is always a DDC.
pub fn fold_b2(folding: &Folding, marks: &B2Sequence) -> Result<DotPattern, Error> {
    if marks.modulus() != folding.len() as u64 {
        return Err(Error::SizeMismatch {
            expected: folding.len(),
            got: marks.modulus() as usize,
        });
    }
    let dots = marks
        .elements()
        .iter()
        .map(|&e| folding.row().point(e as usize).clone())
        .collect();
    DotPattern::new(folding.tiling().shape().clone(), dots)
}

/// A lattice-periodic dot set: every translate of the base shape carries
/// the same number of dots and is a DDC.
#[derive(Debug, Clone)]
pub struct InfiniteDdc {
    folding: Folding,
    marks: B2Sequence,
    mark_set: HashSet<u64>,
}

impl InfiniteDdc {
    pub fn new(folding: Folding, marks: B2Sequence) -> Result<Self, Error> {
        if marks.modulus() != folding.len() as u64 {
            return Err(Error::SizeMismatch {
                expected: folding.len(),
                got: marks.modulus() as usize,
            });
        }
        let mark_set = marks.elements().iter().copied().collect();
        Ok(InfiniteDdc { folding, marks, mark_set })
    }

    pub fn folding(&self) -> &Folding {
        &self.folding
    }

    pub fn marks(&self) -> &B2Sequence {
        &self.marks
    }

    pub fn dot_count(&self) -> usize {
        self.marks.len()
    }

    /// Is the grid point dotted? Lattice-periodic by construction.
    pub fn dotted(&self, p: &Point) -> bool {
        self.mark_set.contains(&(self.folding.grid_index(p) as u64))
    }

    /// The dots inside `shape + offset`, translated back to shape
    /// coordinates.
    pub fn dots_in_translate(&self, shape: &Shape, offset: &Point) -> Vec<Point> {
        shape
            .points()
            .iter()
            .filter(|s| self.dotted(&(*s + offset)))
            .cloned()
            .collect()
    }
}

/// Largest intersection of `s` with any translate of `r`, together with a
/// witnessing offset. The scan covers the Minkowski difference of the
/// bounding boxes.
pub fn max_intersection(s: &Shape, r: &Shape) -> Result<(usize, Point), Error> {
    if s.dim() != r.dim() {
        return Err(Error::DimMismatch { expected: s.dim(), got: r.dim() });
    }
    let (slo, shi) = s.bounding_box();
    let (rlo, rhi) = r.bounding_box();
    let dim = s.dim();
    let lo: Vec<i64> = (0..dim).map(|i| slo[i] - rhi[i]).collect();
    let hi: Vec<i64> = (0..dim).map(|i| shi[i] - rlo[i]).collect();
    let mut best = (0usize, Point::zero(dim));
    let mut offset = lo.clone();
    loop {
        let t = Point::new(offset.clone());
        let count = r.points().iter().filter(|p| s.contains(&(*p + &t))).count();
        if count > best.0 {
            best = (count, t);
        }
        let mut i = 0;
        loop {
            if i == dim {
                return Ok(best);
            }
            offset[i] += 1;
            if offset[i] <= hi[i] {
                break;
            }
            offset[i] = lo[i];
            i += 1;
        }
    }
}

/// Scans one fundamental period of translates of `r` over the periodic
/// dot set and returns the offset holding the most dots. Because the
/// pattern is lattice-periodic, this is the global maximum, and it meets
/// the averaging floor ceil(m * delta(S, R) / |S|).
pub fn find_rich_copy(ddc: &InfiniteDdc, r: &Shape) -> Result<(Point, usize), Error> {
    let base = ddc.folding().tiling().shape();
    if base.dim() != r.dim() {
        return Err(Error::DimMismatch { expected: base.dim(), got: r.dim() });
    }
    let mut best: Option<(Point, usize)> = None;
    for offset in base.points() {
        let count = r.points().iter().filter(|p| ddc.dotted(&(*p + offset))).count();
        if best.as_ref().is_none_or(|b| count > b.1) {
            best = Some((offset.clone(), count));
        }
    }
    Ok(best.expect("shapes are nonempty"))
}
