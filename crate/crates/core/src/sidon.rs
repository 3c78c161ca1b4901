//! B2 (Sidon) sequences over Z_n and the Bose construction.

use std::collections::HashSet;

use crate::error::Error;
use crate::finite_field::{prime_power, Field};

/// A set of residues mod n whose pairwise differences (equivalently sums)
/// are all distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct B2Sequence {
    n: u64,
    elements: Vec<u64>,
}

impl B2Sequence {
    /// Validates the B2 property at construction.
    pub fn new(n: u64, mut elements: Vec<u64>) -> Result<Self, Error> {
        elements.sort_unstable();
        if !verify_b2(n, &elements)? {
            return Err(Error::domain("differences are not pairwise distinct".to_string()));
        }
        Ok(B2Sequence { n, elements })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements in increasing order.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }
}

/// True iff the m(m-1) ordered differences of distinct elements are
/// pairwise distinct mod n. Errors on duplicates or out-of-range values.
pub fn verify_b2(n: u64, elements: &[u64]) -> Result<bool, Error> {
    if n == 0 {
        return Err(Error::domain("modulus must be positive".to_string()));
    }
    let distinct: HashSet<u64> = elements.iter().copied().collect();
    if distinct.len() != elements.len() {
        return Err(Error::domain("duplicate elements".to_string()));
    }
    if elements.iter().any(|&e| e >= n) {
        return Err(Error::domain(format!("element out of range mod {n}")));
    }
    let mut diffs = HashSet::with_capacity(elements.len() * elements.len());
    for &a in elements {
        for &b in elements {
            if a != b && !diffs.insert((n + a - b) % n) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The Bose construction: for a prime power q, a B2 sequence of size q
/// over Z_{q^2-1}. Working in GF(q^2) with designated generator theta,
/// the elements are the exponents of theta + a over the subfield
/// { x : x^q = x }.
pub fn bose(q: u64) -> Result<B2Sequence, Error> {
    let (p, k) = prime_power(q)?;
    let field = Field::new(p, 2 * k)?;
    let theta = field.generator();
    let mut elements = Vec::with_capacity(q as usize);
    for x in 0..field.size() {
        if field.pow(x, q) != x {
            continue; // not in the subfield of order q
        }
        let shifted = field.add(theta, x);
        assert_ne!(shifted, 0, "theta lies outside the subfield");
        elements.push(field.dlog(shifted)?);
    }
    debug_assert_eq!(elements.len(), q as usize);
    B2Sequence::new(q * q - 1, elements)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_examples() {
        assert!(verify_b2(8, &[0, 1, 3]).unwrap());
        assert!(!verify_b2(8, &[0, 1, 2]).unwrap());
        assert!(verify_b2(17, &[5]).unwrap());
        assert!(matches!(verify_b2(8, &[1, 1]), Err(Error::Domain(_))));
        assert!(matches!(verify_b2(8, &[9]), Err(Error::Domain(_))));
    }

    #[test]
    fn bose_small_cases() {
        let e = bose(2).unwrap();
        assert_eq!(e.modulus(), 3);
        assert_eq!(e.len(), 2);

        // the deterministic field choice pins the q = 3 set exactly
        let e = bose(3).unwrap();
        assert_eq!(e.modulus(), 8);
        assert_eq!(e.elements(), &[1, 6, 7]);
    }

    #[test]
    fn bose_sizes_and_property() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let e = bose(q).unwrap();
            assert_eq!(e.len() as u64, q, "q = {q}");
            assert_eq!(e.modulus(), q * q - 1);
            assert!(verify_b2(e.modulus(), e.elements()).unwrap());
        }
        assert!(matches!(bose(6), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn shift_closure() {
        let e = bose(5).unwrap();
        let n = e.modulus();
        for c in [1u64, 7, 13, 23] {
            let shifted: Vec<u64> = e.elements().iter().map(|&x| (x + c) % n).collect();
            assert!(verify_b2(n, &shifted).unwrap(), "shift by {c}");
        }
    }

    /// Sum-distinctness and difference-distinctness agree on arbitrary
    /// candidate sets.
    fn sums_distinct(n: u64, elements: &[u64]) -> bool {
        let mut sums = HashSet::new();
        for (i, &a) in elements.iter().enumerate() {
            for &b in &elements[i..] {
                if !sums.insert((a + b) % n) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn sums_iff_differences() {
        // all 3-subsets of Z_11
        for a in 0..11u64 {
            for b in a + 1..11 {
                for c in b + 1..11 {
                    let set = [a, b, c];
                    assert_eq!(
                        verify_b2(11, &set).unwrap(),
                        sums_distinct(11, &set),
                        "{set:?}"
                    );
                }
            }
        }
    }
}
