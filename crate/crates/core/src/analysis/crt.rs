use num_integer::Integer;

use crate::error::{Error, Result};
use crate::protocols::mul_mod;

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: u128, m: u128) -> Option<u128> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a % m, m);
    let (mut old_s, mut s) = (1u128, 0u128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        let qs = mul_mod(q, s, m);
        (old_s, s) = (s, (old_s + m - qs) % m);
    }
    (old_r == 1).then_some(old_s)
}

/// Solves `x = r_i (mod m_i)` for pairwise coprime moduli. Returns
/// `(x, M)` with `M` the product of the moduli and `x < M`.
pub fn crt_combine(residues: &[(u128, u128)]) -> Result<(u128, u128)> {
    for (i, &(_, a)) in residues.iter().enumerate() {
        if a == 0 {
            return Err(Error::Parse("modulus 0".into()));
        }
        for &(_, b) in &residues[i + 1..] {
            if a.gcd(&b) != 1 {
                return Err(Error::NonCoprimeModuli(a, b));
            }
        }
    }
    let mut x = 0u128;
    let mut modulus = 1u128;
    for &(r, m) in residues {
        let r = r % m;
        let inv = mod_inverse(modulus % m, m).expect("coprime moduli");
        let diff = (r + m - x % m) % m;
        let k = mul_mod(diff, inv, m);
        let next = modulus
            .checked_mul(m)
            .ok_or_else(|| Error::OrderTooLarge(format!("product of moduli exceeds 128 bits at {m}")))?;
        x += modulus * k;
        modulus = next;
    }
    Ok((x, modulus))
}
