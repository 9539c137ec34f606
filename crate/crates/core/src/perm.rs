//! Permutations of `{1..n}` stored in one-line notation.
//!
//! Products follow the convention used by the published worked examples:
//! `p.compose(&q)` is the product `p q` with `q` applied first, so
//! `(p q)(i) = p(q(i))`. Use [`Permutation::then`] for the opposite order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// A bijection on `{1..n}`. Points are 1-based at every public boundary and
/// 0-based internally.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 || n > u32::MAX as usize {
            return Err(Error::InvalidDegree(n));
        }
        Ok(Self {
            images: (0..n as u32).collect(),
        })
    }

    /// Builds a permutation from 1-based images, e.g. `[2, 3, 1]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidDegree(0));
        }
        let mut seen = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for (i, &img) in images.iter().enumerate() {
            if img == 0 || img > n {
                return Err(Error::NotAPermutation(format!(
                    "image {img} of point {} is outside 1..={n}",
                    i + 1
                )));
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(Error::NotAPermutation(format!("image {img} repeated")));
            }
            zero_based.push((img - 1) as u32);
        }
        Ok(Self {
            images: zero_based.into_boxed_slice(),
        })
    }

    /// Wraps 0-based images that are already known to form a bijection.
    pub(crate) fn from_raw(images: Vec<u32>) -> Self {
        let p = Self {
            images: images.into_boxed_slice(),
        };
        debug_assert!(p.is_bijection(), "internal permutation lost bijectivity");
        p
    }

    fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        self.images
            .iter()
            .all(|&x| (x as usize) < seen.len() && !std::mem::replace(&mut seen[x as usize], true))
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    /// 1-based one-line notation.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }

    /// The product `self · rhs`: `rhs` is applied first, then `self`.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        self.check_degree(rhs)?;
        let mut out = vec![0; self.degree()];
        compose_into(&self.images, &rhs.images, &mut out);
        Ok(Self::from_raw(out))
    }

    /// Applies `self` first, then `next`.
    pub fn then(&self, next: &Self) -> Result<Self> {
        next.compose(self)
    }

    pub fn inverse(&self) -> Self {
        let mut out = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            out[x as usize] = i as u32;
        }
        Self::from_raw(out)
    }

    /// `self` raised to `exponent` by square-and-multiply, `O(n log e)`.
    pub fn pow(&self, exponent: u128) -> Self {
        let n = self.degree();
        let mut acc: Vec<u32> = (0..n as u32).collect();
        let mut base = self.images.to_vec();
        let mut scratch = vec![0; n];
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                // powers of one element commute, so the product order is irrelevant
                compose_into(&acc, &base, &mut scratch);
                std::mem::swap(&mut acc, &mut scratch);
            }
            e >>= 1;
            if e > 0 {
                compose_into(&base, &base, &mut scratch);
                std::mem::swap(&mut base, &mut scratch);
            }
        }
        Self::from_raw(acc)
    }

    /// Canonical cycle form: each cycle starts at its smallest point and
    /// cycles are sorted by that point. Fixed points are included.
    pub fn cycles(&self) -> CycleDecomposition {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            cycles.push(cycle);
        }
        CycleDecomposition { degree: n, cycles }
    }

    /// Order of the permutation: lcm of its cycle lengths.
    pub fn order(&self) -> GroupOrder {
        let order = self
            .cycles()
            .lengths()
            .into_iter()
            .fold(BigUint::one(), |acc, len| acc.lcm(&BigUint::from(len)));
        GroupOrder(order)
    }

    /// Uniform random permutation via Fisher-Yates (Durstenfeld), iterating
    /// `i` from `n-1` down to 1 and swapping with `j = uniform_below(i+1)`.
    pub fn random(n: usize, rng: &mut SeededRng) -> Result<Self> {
        let mut images = Self::identity(n)?.images.into_vec();
        shuffle(&mut images, rng);
        Ok(Self::from_raw(images))
    }
}

/// In-place Durstenfeld shuffle with the crate's frozen draw order.
pub(crate) fn shuffle<T>(items: &mut [T], rng: &mut SeededRng) {
    for i in (1..items.len()).rev() {
        let j = rng.uniform_below(i as u64 + 1) as usize;
        items.swap(i, j);
    }
}

#[inline]
pub(crate) fn compose_into(left: &[u32], right: &[u32], out: &mut [u32]) {
    for (o, &r) in out.iter_mut().zip(right) {
        *o = left[r as usize];
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &x) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", x + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() <= 16 {
            write!(f, "Permutation[{self}]")
        } else {
            write!(f, "Permutation(degree {})", self.degree())
        }
    }
}

/// Parses one-line notation. Separators may be whitespace or commas and an
/// enclosing pair of braces is ignored, so listings such as `{3, 378, 273}`
/// parse as-is.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let body = trimmed
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .unwrap_or(trimmed);
        let images = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad permutation entry {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(&images)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.images.iter().map(|&x| x + 1))
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(deserializer)?;
        Self::from_images(&images).map_err(serde::de::Error::custom)
    }
}

/// Disjoint cycles of a permutation in canonical form, 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    degree: usize,
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Cycle lengths in canonical cycle order, fixed points included.
    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    /// Lengths sorted ascending, for multiset comparison.
    pub fn sorted_lengths(&self) -> Vec<usize> {
        let mut lengths = self.lengths();
        lengths.sort_unstable();
        lengths
    }

    /// Cycles of length at least two.
    pub fn nontrivial(&self) -> impl Iterator<Item = &[usize]> {
        self.cycles.iter().filter(|c| c.len() > 1).map(Vec::as_slice)
    }

    pub fn to_permutation(&self) -> Permutation {
        let mut images = vec![0u32; self.degree];
        for cycle in &self.cycles {
            for (k, &x) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                images[x - 1] = (next - 1) as u32;
            }
        }
        Permutation::from_raw(images)
    }
}

/// Order of a permutation or subgroup, arbitrary precision.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupOrder(pub BigUint);

impl GroupOrder {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u128(&self) -> Option<u128> {
        self.0.to_u128()
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
