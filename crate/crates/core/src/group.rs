//! Public parameters and high-order generators.
//!
//! A generator is a random permutation whose cycles have the first `dim`
//! primes as lengths. Distinct primes make the order the primorial, so for
//! `dim = 16` it generates a cyclic subgroup of order
//! 32589158477190044730 inside S_381.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{self, Permutation};
use crate::rng::SeededRng;

/// Dimension of the published parameter set.
pub const DEFAULT_DIM: usize = 16;
/// Largest dimension accepted without the extended constructor.
pub const MAX_DIM: usize = 16;
/// Largest dimension accepted by [`GroupParams::extended`].
pub const MAX_EXTENDED_DIM: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupParams {
    dim: usize,
    primes: Vec<u64>,
    partition_sums: Vec<u64>,
    degree: usize,
    #[serde(serialize_with = "serialize_decimal")]
    omega: BigUint,
}

fn serialize_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl GroupParams {
    /// Parameters for `1 <= dim <= 16`.
    pub fn new(dim: usize) -> Result<Self> {
        Self::build(dim, MAX_DIM)
    }

    /// Same as [`new`](Self::new) but accepts dimensions up to 50. Above 26
    /// the subgroup order no longer fits in 128 bits and the protocols refuse
    /// the parameters.
    pub fn extended(dim: usize) -> Result<Self> {
        Self::build(dim, MAX_EXTENDED_DIM)
    }

    fn build(dim: usize, max: usize) -> Result<Self> {
        if dim == 0 || dim > max {
            return Err(Error::InvalidDimension { dim, max });
        }
        let primes = first_primes(dim);
        let partition_sums: Vec<u64> = primes
            .iter()
            .scan(0, |sum, &p| {
                *sum += p;
                Some(*sum)
            })
            .collect();
        let degree = *partition_sums.last().expect("dim >= 1") as usize;
        let omega = primes.iter().fold(BigUint::from(1u32), |acc, &p| acc * p);
        Ok(Self {
            dim,
            primes,
            partition_sums,
            degree,
            omega,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn partition_sums(&self) -> &[u64] {
        &self.partition_sums
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn omega(&self) -> &BigUint {
        &self.omega
    }

    /// Running primorials `2, 6, 30, ...`, ending with omega.
    pub fn primorials(&self) -> Vec<BigUint> {
        self.primes
            .iter()
            .scan(BigUint::from(1u32), |acc, &p| {
                *acc *= p;
                Some(acc.clone())
            })
            .collect()
    }

    /// Omega as a machine integer; fails for dimensions above 26.
    pub fn omega_u128(&self) -> Result<u128> {
        self.omega
            .to_u128()
            .ok_or_else(|| Error::OrderTooLarge(self.omega.to_string()))
    }

    /// A random generator: the points are shuffled, the prime list is
    /// shuffled, and consecutive blocks of the shuffled points become cycles
    /// of the shuffled lengths.
    pub fn generate_generator(&self, rng: &mut SeededRng) -> Permutation {
        let points = Permutation::random(self.degree, rng).expect("degree >= 2");
        let mut lengths = self.primes.clone();
        perm::shuffle(&mut lengths, rng);

        let points = points.raw();
        let mut images = vec![0u32; self.degree];
        let mut start = 0;
        for len in lengths {
            let block = &points[start..start + len as usize];
            for (k, &x) in block.iter().enumerate() {
                images[x as usize] = block[(k + 1) % block.len()];
            }
            start += len as usize;
        }
        Permutation::from_raw(images)
    }

    /// Checks that `p` has exactly the prescribed prime cycle lengths.
    pub fn validate_generator(&self, p: &Permutation) -> Result<GeneratorCheck> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: p.degree(),
                right: self.degree,
            });
        }
        let mut found: Vec<u64> = p.cycles().lengths().into_iter().map(|l| l as u64).collect();
        found.sort_unstable();
        let mut expected = self.primes.clone();
        expected.sort_unstable();

        let (missing, unexpected) = multiset_difference(&expected, &found);
        Ok(GeneratorCheck {
            valid: missing.is_empty() && unexpected.is_empty(),
            missing,
            unexpected,
        })
    }

    /// Like [`validate_generator`](Self::validate_generator) but turns a
    /// failed check into an error.
    pub fn require_generator(&self, p: &Permutation) -> Result<()> {
        let check = self.validate_generator(p)?;
        if check.valid {
            Ok(())
        } else {
            Err(Error::InvalidGenerator(check.to_string()))
        }
    }
}

/// Outcome of [`GroupParams::validate_generator`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorCheck {
    pub valid: bool,
    /// Prescribed cycle lengths that were not found.
    pub missing: Vec<u64>,
    /// Cycle lengths present that were not prescribed (fixed points count as 1).
    pub unexpected: Vec<u64>,
}

impl std::fmt::Display for GeneratorCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.valid {
            return f.write_str("cycle lengths match the prime list");
        }
        write!(f, "missing cycle lengths {:?}", self.missing)?;
        let mut counts: Vec<(u64, usize)> = Vec::new();
        for &l in &self.unexpected {
            match counts.last_mut() {
                Some((v, c)) if *v == l => *c += 1,
                _ => counts.push((l, 1)),
            }
        }
        let shown: Vec<String> = counts
            .iter()
            .map(|(l, c)| if *c == 1 { l.to_string() } else { format!("{l}x{c}") })
            .collect();
        write!(f, "; unexpected cycle lengths [{}]", shown.join(", "))
    }
}

/// Elements of sorted `a` missing from sorted `b`, and vice versa.
fn multiset_difference(a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let (mut i, mut j) = (0, 0);
    let (mut only_a, mut only_b) = (Vec::new(), Vec::new());
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                only_a.push(*x);
                i += 1;
            }
            (Some(_), Some(y)) => {
                only_b.push(*y);
                j += 1;
            }
            (Some(x), None) => {
                only_a.push(*x);
                i += 1;
            }
            (None, Some(y)) => {
                only_b.push(*y);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    (only_a, only_b)
}

/// First `count` primes by trial division.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while primes.len() < count {
        if primes
            .iter()
            .take_while(|&&p| p * p <= candidate)
            .all(|&p| !candidate.is_multiple_of(p))
        {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_parameter_set() {
        let params = GroupParams::new(16).unwrap();
        assert_eq!(
            params.primes(),
            &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53]
        );
        assert_eq!(
            params.partition_sums(),
            &[2, 5, 10, 17, 28, 41, 58, 77, 100, 129, 160, 197, 238, 281, 328, 381]
        );
        assert_eq!(params.degree(), 381);
        assert_eq!(params.omega_u128().unwrap(), 32589158477190044730);
        let primorials: Vec<String> = params.primorials().iter().map(|x| x.to_string()).collect();
        assert_eq!(
            primorials,
            [
                "2", "6", "30", "210", "2310", "30030", "510510", "9699690", "223092870",
                "6469693230", "200560490130", "7420738134810", "304250263527210",
                "13082761331670030", "614889782588491410", "32589158477190044730",
            ]
        );
    }

    #[test]
    fn small_dimensions() {
        let p1 = GroupParams::new(1).unwrap();
        assert_eq!((p1.primes(), p1.degree(), p1.omega_u128().unwrap()), (&[2u64][..], 2, 2));
        let p3 = GroupParams::new(3).unwrap();
        assert_eq!((p3.primes(), p3.degree(), p3.omega_u128().unwrap()), (&[2u64, 3, 5][..], 10, 30));
    }

    #[test]
    fn dimension_limits() {
        assert_eq!(
            GroupParams::new(0),
            Err(Error::InvalidDimension { dim: 0, max: 16 })
        );
        assert!(GroupParams::new(17).is_err());
        let big = GroupParams::extended(50).unwrap();
        assert_eq!(big.primes()[49], 229);
        assert!(matches!(big.omega_u128(), Err(Error::OrderTooLarge(_))));
        assert!(GroupParams::extended(26).unwrap().omega_u128().is_ok());
        assert!(GroupParams::extended(27).unwrap().omega_u128().is_err());
        assert!(GroupParams::extended(51).is_err());
    }

    #[test]
    fn dim_one_generator_is_the_transposition() {
        let params = GroupParams::new(1).unwrap();
        for seed in 0..10 {
            let g = params.generate_generator(&mut SeededRng::new(seed));
            assert_eq!(g.images(), vec![2, 1]);
        }
    }

    #[test]
    fn dim_two_generators_have_type_2_3() {
        let params = GroupParams::new(2).unwrap();
        for seed in 0..100 {
            let g = params.generate_generator(&mut SeededRng::new(seed));
            assert_eq!(g.cycles().sorted_lengths(), vec![2, 3]);
            assert_eq!(g.order().to_u128(), Some(6));
        }
    }

    #[test]
    fn generators_have_exact_primorial_order() {
        for dim in 1..=16 {
            let params = GroupParams::new(dim).unwrap();
            for seed in 0..5 {
                let g = params.generate_generator(&mut SeededRng::new(seed * 31 + dim as u64));
                assert_eq!(g.order().value(), params.omega());
                assert!(params.validate_generator(&g).unwrap().valid);
                assert!(g.cycles().lengths().iter().all(|&l| l >= 2), "fixed point");
                let omega = params.omega_u128().unwrap();
                assert!(g.pow(omega).is_identity());
                for &l in params.primes() {
                    assert!(!g.pow(omega / l as u128).is_identity());
                }
            }
        }
    }

    #[test]
    fn validate_reports_deviations() {
        let params = GroupParams::new(16).unwrap();
        let check = params
            .validate_generator(&Permutation::identity(381).unwrap())
            .unwrap();
        assert!(!check.valid);
        assert_eq!(check.missing.len(), 16);
        assert_eq!(check.unexpected, vec![1; 381]);
        assert!(check.to_string().contains("1x381"));
        assert!(matches!(
            params.validate_generator(&Permutation::identity(10).unwrap()),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(params.require_generator(&Permutation::identity(381).unwrap()).is_err());
    }

    #[test]
    fn trial_division_primes() {
        assert_eq!(first_primes(10), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(first_primes(0).is_empty());
    }
}
