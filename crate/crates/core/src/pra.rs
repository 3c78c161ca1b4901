//! Maximal-length shift-register sequences and their foldings into
//! two-dimensional patterns with the window property.

use std::collections::HashSet;

use num_integer::Integer;

use crate::error::Error;
use crate::finite_field::least_primitive_poly_gf2;
use crate::folding::{Direction, Folding};
use crate::geometry::{is_tiling, Lattice, Point, Shape, Tiling};

/// One period of a maximal-length shift-register sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MSequence {
    k: u32,
    feedback: Vec<u64>,
    bits: Vec<u8>,
}

impl MSequence {
    pub fn register_len(&self) -> u32 {
        self.k
    }

    /// Feedback polynomial coefficients, low-to-high.
    pub fn feedback(&self) -> &[u64] {
        &self.feedback
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn period(&self) -> usize {
        self.bits.len()
    }
}

/// One period of the sequence generated by the least primitive polynomial
/// of degree k, started from the all-ones register.
pub fn m_sequence(k: u32) -> Result<MSequence, Error> {
    let feedback = least_primitive_poly_gf2(k)?;
    let n = (1usize << k) - 1;
    let mut state = vec![1u8; k as usize];
    let mut bits = Vec::with_capacity(n);
    for _ in 0..n {
        bits.push(state[0]);
        let next = (0..k as usize).fold(0u8, |acc, i| acc ^ (feedback[i] as u8 & state[i]));
        state.rotate_left(1);
        *state.last_mut().unwrap() = next;
    }
    Ok(MSequence { k, feedback, bits })
}

/// A binary sequence folded over a shape, extended periodically over the
/// grid through the walk homomorphism.
#[derive(Debug, Clone)]
pub struct BinaryPattern {
    folding: Folding,
    bits: Vec<u8>,
}

impl BinaryPattern {
    pub fn folding(&self) -> &Folding {
        &self.folding
    }

    /// Bit of an arbitrary grid point (lattice-periodic).
    pub fn bit_at(&self, p: &Point) -> u8 {
        self.bits[self.folding.grid_index(p)]
    }

    /// Renders the base shape as rows of 0/1 over its bounding box (first
    /// coordinate = row), blanks outside the shape.
    pub fn render(&self) -> String {
        let shape = self.folding.tiling().shape();
        let (lo, hi) = shape.bounding_box();
        let mut out = String::new();
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                let p = Point::new(vec![x, y]);
                if shape.contains(&p) {
                    out.push(if self.bit_at(&p) == 1 { '1' } else { '0' });
                } else {
                    out.push(' ');
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Writes `seq` along the folded-row: the cell at walk position i gets
/// bit i.
pub fn fold_sequence(folding: Folding, seq: &[u8]) -> Result<BinaryPattern, Error> {
    if seq.len() != folding.len() {
        return Err(Error::SizeMismatch { expected: folding.len(), got: seq.len() });
    }
    Ok(BinaryPattern { folding, bits: seq.iter().map(|&b| b & 1).collect() })
}

/// Does every nonzero k1 x k2 binary matrix appear exactly once (and the
/// zero matrix never) as a window of the periodic extension? Windows are
/// anchored at every cell of the base shape, which covers each coset of
/// the lattice exactly once.
pub fn check_window_property(pattern: &BinaryPattern, k1: u32, k2: u32) -> Result<bool, Error> {
    let shape = pattern.folding.tiling().shape();
    if shape.dim() != 2 {
        return Err(Error::DimMismatch { expected: 2, got: shape.dim() });
    }
    if k1 == 0 || k2 == 0 || k1 * k2 > 20 {
        return Err(Error::envelope(format!("window {k1}x{k2} outside 1..=20 bits")));
    }
    let n = shape.len() as u64;
    if n != (1u64 << (k1 * k2)) - 1 {
        return Ok(false); // the period cannot host every nonzero window once
    }
    let mut seen = HashSet::with_capacity(n as usize);
    for anchor in shape.points() {
        let mut window = 0u64;
        let mut bit = 0;
        for a in 0..k1 as i64 {
            for b in 0..k2 as i64 {
                let p = Point::new(vec![anchor[0] + a, anchor[1] + b]);
                window |= (pattern.bit_at(&p) as u64) << bit;
                bit += 1;
            }
        }
        if window == 0 || !seen.insert(window) {
            return Ok(false);
        }
    }
    Ok(seen.len() as u64 == n)
}

/// Folds the same m-sequence into a shape and into an n1 x n2 box tiled
/// by the same lattice, and reports both window checks; the two answers
/// always agree.
pub fn window_equivalence_experiment(
    lattice: &Lattice,
    shape: &Shape,
    dir: &Direction,
    k1: u32,
    k2: u32,
) -> Result<(bool, bool), Error> {
    if k1 == 0 || k2 == 0 || k1 * k2 > 20 {
        return Err(Error::envelope(format!("window {k1}x{k2} outside 1..=20 bits")));
    }
    let n = (1u64 << (k1 * k2)) - 1;
    let n1 = (1i64 << k1) - 1;
    let n2 = (n / n1 as u64) as i64;
    if n1 as u64 * n2 as u64 != n || n1.gcd(&n2) != 1 || n1 <= 1 || n2 <= 1 {
        return Err(Error::domain(format!(
            "no coprime box split: {n} != {n1} x coprime n2, both > 1"
        )));
    }
    let array = Shape::box_shape(&[n1, n2])?;
    if !is_tiling(lattice, &array)? {
        return Err(Error::NotATiling(format!("lattice does not tile the {n1}x{n2} box")));
    }
    if !is_tiling(lattice, shape)? {
        return Err(Error::NotATiling("lattice does not tile the shape".to_string()));
    }
    let seq = m_sequence(k1 * k2)?;
    let fold_shape = Folding::new(Tiling::new(lattice.clone(), shape.clone())?, dir.clone())?;
    let fold_array = Folding::new(Tiling::new(lattice.clone(), array)?, dir.clone())?;
    let shape_ok = check_window_property(&fold_sequence(fold_shape, seq.bits())?, k1, k2)?;
    let array_ok = check_window_property(&fold_sequence(fold_array, seq.bits())?, k1, k2)?;
    Ok((shape_ok, array_ok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folding::morph_shape;

    fn f1_folding(n1: i64, n2: i64) -> Folding {
        let lattice = Lattice::diagonal(&[n1, n2]).unwrap();
        let shape = Shape::box_shape(&[n1, n2]).unwrap();
        Folding::new(
            Tiling::new(lattice, shape).unwrap(),
            Direction::new(&[1, 1]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn msequence_examples() {
        let s = m_sequence(4).unwrap();
        assert_eq!(s.period(), 15);
        assert_eq!(s.bits().iter().filter(|&&b| b == 1).count(), 8);
        let text: String = s.bits().iter().map(|b| b.to_string()).collect();
        assert_eq!(text, "111100010011010");

        let s = m_sequence(1).unwrap();
        assert_eq!(s.bits(), &[1]);

        assert!(m_sequence(21).is_err());
    }

    #[test]
    fn msequence_1d_window() {
        let s = m_sequence(4).unwrap();
        let bits = s.bits();
        let mut seen = HashSet::new();
        for i in 0..15 {
            let w: Vec<u8> = (0..4).map(|j| bits[(i + j) % 15]).collect();
            assert_ne!(w, vec![0; 4]);
            assert!(seen.insert(w));
        }
        assert_eq!(seen.len(), 15);
    }

    #[test]
    fn fold_reads_back() {
        let s = m_sequence(4).unwrap();
        let f = f1_folding(3, 5);
        let p = fold_sequence(f, s.bits()).unwrap();
        // the pattern read along the folded-row reproduces the sequence
        for (i, &b) in s.bits().iter().enumerate() {
            assert_eq!(p.bit_at(p.folding().row().point(i)), b);
        }
        // constant sequence gives a constant pattern
        let f = f1_folding(3, 5);
        let p = fold_sequence(f, &[1; 15]).unwrap();
        for q in p.folding().tiling().shape().points() {
            assert_eq!(p.bit_at(q), 1);
        }
        // length mismatch
        let f = f1_folding(3, 5);
        assert!(matches!(
            fold_sequence(f, &[0; 11]),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn classic_diagonal_window() {
        let s = m_sequence(4).unwrap();
        let p = fold_sequence(f1_folding(3, 5), s.bits()).unwrap();
        assert!(check_window_property(&p, 2, 2).unwrap());

        // all-zero pattern fails
        let p = fold_sequence(f1_folding(3, 5), &[0; 15]).unwrap();
        assert!(!check_window_property(&p, 2, 2).unwrap());

        // wrong period fails fast
        let p = fold_sequence(f1_folding(3, 5), s.bits()).unwrap();
        assert!(!check_window_property(&p, 2, 3).unwrap());
    }

    #[test]
    fn larger_window() {
        let s = m_sequence(6).unwrap();
        let p = fold_sequence(f1_folding(7, 9), s.bits()).unwrap();
        assert!(check_window_property(&p, 3, 2).unwrap());
    }

    #[test]
    fn equivalence_trivial_and_morphed() {
        let lattice = Lattice::diagonal(&[3, 5]).unwrap();
        let array = Shape::box_shape(&[3, 5]).unwrap();
        let d = Direction::new(&[1, 1]).unwrap();
        let (a, b) =
            window_equivalence_experiment(&lattice, &array, &d, 2, 2).unwrap();
        assert_eq!(a, b);
        assert!(a);

        // one morph step away from the box
        let f = Folding::new(
            Tiling::new(lattice.clone(), array).unwrap(),
            d.clone(),
        )
        .unwrap();
        let morphed = morph_shape(&f, &Point::new(vec![0, 4])).unwrap();
        let (a, b) = window_equivalence_experiment(&lattice, &morphed, &d, 2, 2).unwrap();
        assert_eq!(a, b);
        assert!(a);
    }
}
