//! Lexicographic Lehmer code (factoradic rank) of permutations.
//!
//! Digit `d_i` counts the later entries smaller than `images[i]`; the rank is
//! `sum d_i * (n-1-i)!`, so the identity ranks 0 and the reversal ranks `n! - 1`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub fn factorial(n: usize) -> BigUint {
    (2..=n as u64).fold(BigUint::from(1u32), |acc, k| acc * k)
}

/// Lehmer digits of `p`, most significant first.
pub fn lehmer_digits(p: &Permutation) -> Vec<usize> {
    let raw = p.raw();
    // Fenwick tree over values not yet seen from the right
    let n = raw.len();
    let mut tree = vec![0usize; n + 1];
    let mut digits = vec![0; n];
    for i in (0..n).rev() {
        let v = raw[i] as usize;
        let mut k = v;
        let mut smaller = 0;
        while k > 0 {
            smaller += tree[k];
            k &= k - 1;
        }
        digits[i] = smaller;
        let mut k = v + 1;
        while k <= n {
            tree[k] += 1;
            k += k & k.wrapping_neg();
        }
    }
    digits
}

/// Lexicographic rank of `p` among all permutations of its degree.
pub fn rank(p: &Permutation) -> BigUint {
    let n = p.degree();
    lehmer_digits(p)
        .into_iter()
        .enumerate()
        .fold(BigUint::zero(), |acc, (i, d)| acc * (n - i) + d)
}

/// Inverse of [`rank`]. Fails when `r >= n!`.
pub fn unrank(n: usize, r: &BigUint) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let out_of_range = || Error::RankOutOfRange {
        rank: r.to_string(),
        degree: n,
    };
    let mut rest = r.clone();
    let mut digits = vec![0usize; n];
    for i in (0..n).rev() {
        let (q, d) = rest.div_rem(&BigUint::from(n - i));
        digits[i] = d.to_usize().expect("digit below radix");
        rest = q;
    }
    if !rest.is_zero() {
        return Err(out_of_range());
    }
    let mut remaining: Vec<usize> = (1..=n).collect();
    let images: Vec<usize> = digits.into_iter().map(|d| remaining.remove(d)).collect();
    Permutation::from_images(&images)
}

/// A message integer mapped onto a permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedMessage {
    pub permutation: Permutation,
    /// Set when the integer is not below the subgroup order; the cipher
    /// still works but the value lies outside `Z_omega`.
    pub exceeds_omega: bool,
}

/// Maps an integer message `m < n!` to a permutation of degree `n`.
pub fn encode_message(degree: usize, message: &BigUint, omega: Option<&BigUint>) -> Result<EncodedMessage> {
    let permutation = unrank(degree, message).map_err(|e| match e {
        Error::RankOutOfRange { rank, degree } => Error::MessageTooLarge {
            message: rank,
            degree,
        },
        other => other,
    })?;
    Ok(EncodedMessage {
        permutation,
        exceeds_omega: omega.is_some_and(|w| message >= w),
    })
}

pub fn decode_message(p: &Permutation) -> BigUint {
    rank(p)
}
