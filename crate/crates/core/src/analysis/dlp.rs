use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::crt::crt_combine;

/// A recovered discrete logarithm with its per-cycle residues.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DlpSolution {
    pub exponent: u128,
    /// Order of the generator: product of its nontrivial cycle lengths.
    pub modulus: u128,
    /// `(shift mod len, len)` for each nontrivial cycle in canonical order.
    pub residues: Vec<(u128, u128)>,
}

/// Smallest `e < limit` with `p^e == target`, by repeated multiplication.
pub fn dlp_brute_force(p: &Permutation, target: &Permutation, limit: u128) -> Option<u128> {
    if p.degree() != target.degree() {
        return None;
    }
    let mut acc = Permutation::identity(p.degree()).ok()?;
    for e in 0..limit {
        if &acc == target {
            return Some(e);
        }
        acc = acc.compose(p).ok()?;
    }
    None
}

/// Recovers `a` from `target = p^a` by reading off the rotation of each cycle
/// of `p` and combining the shifts with the CRT. Needs pairwise coprime
/// cycle lengths.
pub fn dlp_cycle_attack(p: &Permutation, target: &Permutation) -> Result<DlpSolution> {
    if p.degree() != target.degree() {
        return Err(Error::DegreeMismatch {
            left: p.degree(),
            right: target.degree(),
        });
    }
    let decomposition = p.cycles();
    let n = p.degree();
    let mut cycle_of = vec![0usize; n + 1];
    let mut position = vec![0usize; n + 1];
    for (ci, cycle) in decomposition.cycles().iter().enumerate() {
        for (k, &x) in cycle.iter().enumerate() {
            cycle_of[x] = ci;
            position[x] = k;
        }
    }

    let mut residues = Vec::new();
    for (ci, cycle) in decomposition.cycles().iter().enumerate() {
        let x = cycle[0];
        let y = target.apply(x);
        if cycle_of[y] != ci {
            return Err(Error::NotInSubgroup(format!(
                "target sends {x} to {y}, off the cycle of {x} under the generator"
            )));
        }
        if cycle.len() > 1 {
            residues.push((position[y] as u128, cycle.len() as u128));
        }
    }

    let (exponent, modulus) = crt_combine(&residues).map_err(|e| match e {
        Error::NonCoprimeModuli(a, b) => {
            Error::UnsupportedStructure(format!("cycle lengths {a} and {b} are not coprime"))
        }
        other => other,
    })?;

    if &p.pow(exponent) != target {
        return Err(Error::NotInSubgroup(
            "cycle shifts are inconsistent with a single power".into(),
        ));
    }
    Ok(DlpSolution {
        exponent,
        modulus,
        residues,
    })
}

/// `p^e` computed by rotating each cycle `e mod len` steps. Independent of
/// square-and-multiply, used to cross-check it.
pub fn power_by_rotation(p: &Permutation, e: u128) -> Permutation {
    let mut images = vec![0usize; p.degree()];
    for cycle in p.cycles().cycles() {
        let len = cycle.len();
        let shift = (e % len as u128) as usize;
        for (k, &x) in cycle.iter().enumerate() {
            images[x - 1] = cycle[(k + shift) % len];
        }
    }
    Permutation::from_images(&images).expect("rotation of cycles is a bijection")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupParams;
    use crate::rng::SeededRng;

    #[test]
    fn trivial_targets() {
        let params = GroupParams::new(16).unwrap();
        let p = params.generate_generator(&mut SeededRng::new(1));
        let id = Permutation::identity(381).unwrap();
        assert_eq!(dlp_brute_force(&p, &id, 10), Some(0));
        assert_eq!(dlp_brute_force(&p, &p, 10), Some(1));
        let sol = dlp_cycle_attack(&p, &id).unwrap();
        assert_eq!(sol.exponent, 0);
        assert!(sol.residues.iter().all(|&(r, _)| r == 0));
        assert_eq!(sol.modulus, 32589158477190044730);
        assert_eq!(dlp_cycle_attack(&p, &p).unwrap().exponent, 1);
    }

    #[test]
    fn brute_force_respects_limit() {
        let params = GroupParams::new(2).unwrap();
        let p = params.generate_generator(&mut SeededRng::new(2));
        assert_eq!(dlp_brute_force(&p, &p.pow(5), 5), None);
        assert_eq!(dlp_brute_force(&p, &p.pow(5), 6), Some(5));
        assert_eq!(dlp_brute_force(&p, &Permutation::identity(3).unwrap(), 6), None);
    }

    #[test]
    fn agrees_with_brute_force_on_small_groups() {
        for dim in 1..=4 {
            let params = GroupParams::new(dim).unwrap();
            let omega = params.omega_u128().unwrap();
            for seed in 0..3 {
                let p = params.generate_generator(&mut SeededRng::new(seed));
                for e in 0..omega {
                    let target = p.pow(e);
                    let brute = dlp_brute_force(&p, &target, omega).unwrap();
                    assert_eq!(brute, e);
                    assert_eq!(dlp_cycle_attack(&p, &target).unwrap().exponent, brute);
                }
            }
        }
    }

    #[test]
    fn recovers_random_exponents_at_dim_16() {
        let params = GroupParams::new(16).unwrap();
        let omega = params.omega_u128().unwrap();
        let mut rng = SeededRng::new(3);
        let p = params.generate_generator(&mut rng);
        for _ in 0..200 {
            let a = rng.uniform_below_u128(omega);
            let sol = dlp_cycle_attack(&p, &p.pow(a)).unwrap();
            assert_eq!(sol.exponent, a);
            for &(r, m) in &sol.residues {
                assert_eq!(a % m, r);
            }
        }
    }

    #[test]
    fn rejects_targets_outside_the_subgroup() {
        let params = GroupParams::new(16).unwrap();
        let mut rng = SeededRng::new(4);
        let p = params.generate_generator(&mut rng);
        let stranger = Permutation::random(381, &mut rng).unwrap();
        assert!(matches!(dlp_cycle_attack(&p, &stranger), Err(Error::NotInSubgroup(_))));

        // same cycle sets, but rotations disagree inside one cycle
        let mut images = p.pow(5).images();
        let cycle = p.cycles().cycles().iter().find(|c| c.len() == 53).unwrap().clone();
        images.swap(cycle[0] - 1, cycle[1] - 1);
        let bent = Permutation::from_images(&images).unwrap();
        assert!(matches!(dlp_cycle_attack(&p, &bent), Err(Error::NotInSubgroup(_))));
    }

    #[test]
    fn rejects_repeated_cycle_lengths() {
        let p = Permutation::from_images(&[2, 3, 1, 5, 6, 4]).unwrap();
        assert!(matches!(
            dlp_cycle_attack(&p, &p.pow(2)),
            Err(Error::UnsupportedStructure(_))
        ));
        let q = Permutation::from_images(&[2, 1, 3]).unwrap();
        assert!(matches!(
            dlp_cycle_attack(&p, &q),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn rotation_matches_square_and_multiply() {
        let mut rng = SeededRng::new(5);
        for _ in 0..200 {
            let p = Permutation::random(381, &mut rng).unwrap();
            let e = rng.next_u128() >> rng.uniform_below(128);
            assert_eq!(power_by_rotation(&p, e), p.pow(e));
        }
    }
}
