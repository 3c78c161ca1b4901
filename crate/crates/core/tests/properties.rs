//! Randomized invariants across the crate, kept small; the exhaustive
//! corpus checks live in the acceptance suite.

use proptest::prelude::*;

use foldtile::ddc::{distinct_differences, fold_b2};
use foldtile::folding::{walk_with_delta, Direction};
use foldtile::geometry::{compact_tile, fundamental_tile, is_tiling};
use foldtile::sidon::{bose, verify_b2};
use foldtile::{Folding, Lattice, Point, Tiling};

fn lattice_2d() -> impl Strategy<Value = Lattice> {
    (
        prop::array::uniform2(-6i64..=6),
        prop::array::uniform2(-6i64..=6),
    )
        .prop_filter_map("nonsingular, small volume", |(r0, r1)| {
            let det = r0[0] * r1[1] - r0[1] * r1[0];
            if det == 0 || det.abs() > 40 {
                return None;
            }
            Lattice::new(vec![r0.to_vec(), r1.to_vec()]).ok()
        })
}

proptest! {
    /// Equal residues exactly when the difference lies in the lattice.
    #[test]
    fn residue_is_coset_label(l in lattice_2d(), p in prop::array::uniform2(-20i64..=20), q in prop::array::uniform2(-20i64..=20)) {
        let p = Point::new(p.to_vec());
        let q = Point::new(q.to_vec());
        let same = l.residue(&p)? == l.residue(&q)?;
        prop_assert_eq!(same, l.contains(&(&p - &q))?);
    }

    /// Both tile builders produce fundamental domains, and translating a
    /// grid point by a basis row translates its center the same way.
    #[test]
    fn tiles_and_center_translation(l in lattice_2d(), p in prop::array::uniform2(-15i64..=15)) {
        let p = Point::new(p.to_vec());
        for shape in [fundamental_tile(&l), compact_tile(&l)] {
            prop_assert!(is_tiling(&l, &shape)?);
            let t = Tiling::new(l.clone(), shape)?;
            prop_assert!(t.shape().contains(&(&p - &t.center_of(&p))));
            for row in l.basis() {
                let lam = Point::new(row.clone());
                prop_assert_eq!(t.center_of(&(&p + &lam)), &t.center_of(&p) + &lam);
            }
        }
    }

    /// The gcd criterion agrees with the walk, the walk agrees with its
    /// 2D special case, and reversing the direction reverses the row.
    #[test]
    fn criterion_walk_reversal(l in lattice_2d(), dir_idx in 0usize..4) {
        let dir = Direction::all(2).swap_remove(dir_idx);
        let t = Tiling::new(l.clone(), fundamental_tile(&l))?;
        let fwd = walk_with_delta(&t, dir.delta());
        prop_assert_eq!(foldtile::folding::is_folding(&l, &dir)?, fwd.is_ok());
        prop_assert_eq!(foldtile::folding::is_folding_2d(&l, &dir)?, fwd.is_ok());
        if let Ok(fwd) = fwd {
            let neg: Vec<i64> = dir.delta().iter().map(|d| -d).collect();
            let bwd = walk_with_delta(&t, &neg).unwrap();
            let mut rev = vec![fwd.order()[0].clone()];
            rev.extend(fwd.order()[1..].iter().rev().cloned());
            prop_assert_eq!(bwd.order(), &rev[..]);
        }
    }

    /// Walk indices add like residues: index(p + q) = index(p) + index(q).
    #[test]
    fn index_homomorphism(l in lattice_2d(), p in prop::array::uniform2(-12i64..=12), q in prop::array::uniform2(-12i64..=12)) {
        let t = Tiling::new(l.clone(), compact_tile(&l))?;
        let folding = Direction::all(2)
            .into_iter()
            .find_map(|d| Folding::new(t.clone(), d).ok());
        prop_assume!(folding.is_some());
        let f = folding.unwrap();
        let (p, q) = (Point::new(p.to_vec()), Point::new(q.to_vec()));
        let lhs = f.grid_index(&(&p + &q));
        let rhs = (f.grid_index(&p) + f.grid_index(&q)) % f.len();
        prop_assert_eq!(lhs, rhs);
    }

    /// Shifting a B2 sequence preserves the property.
    #[test]
    fn b2_shift_closure(q in prop::sample::select(vec![3u64, 4, 5, 7]), c in 0u64..48) {
        let e = bose(q).unwrap();
        let n = e.modulus();
        let shifted: Vec<u64> = e.elements().iter().map(|&x| (x + c % n) % n).collect();
        prop_assert!(verify_b2(n, &shifted).unwrap());
    }

    /// Any folding of a B2 sequence is a distinct-difference pattern, and
    /// so is every translate of the periodic extension.
    #[test]
    fn folded_b2_is_ddc(l in lattice_2d(), t_off in prop::array::uniform2(-25i64..=25)) {
        let vol = l.volume();
        // marks from the largest prime power with q^2 - 1 <= vol, if the
        // volume happens to be exactly q^2 - 1
        let q = match vol {
            3 => 2u64, 8 => 3, 15 => 4, 24 => 5, 35 => 6, 48 => 7,
            _ => return Ok(()),
        };
        if q == 6 { return Ok(()); }
        let t = Tiling::new(l.clone(), compact_tile(&l))?;
        let Some(f) = Direction::all(2).into_iter().find_map(|d| Folding::new(t.clone(), d).ok()) else {
            return Ok(());
        };
        let marks = bose(q).unwrap();
        let pattern = fold_b2(&f, &marks)?;
        prop_assert!(foldtile::ddc::verify_ddc(&pattern));
        let ddc = foldtile::ddc::InfiniteDdc::new(f, marks)?;
        let offset = Point::new(t_off.to_vec());
        let dots = ddc.dots_in_translate(ddc.folding().tiling().shape(), &offset);
        prop_assert_eq!(dots.len() as u64, q);
        prop_assert!(distinct_differences(&dots));
    }
}
