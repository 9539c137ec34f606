use crate::error::Result;
use crate::group::GroupParams;
use crate::perm::Permutation;
use crate::rng::SeededRng;

use super::Exponent;

/// A private exponent and the public token `p^secret`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DhKeyPair {
    pub secret: Exponent,
    pub token: Permutation,
}

/// Samples a secret in `[1, omega - 1]` and computes its token.
pub fn dh_keygen(params: &GroupParams, p: &Permutation, rng: &mut SeededRng) -> Result<DhKeyPair> {
    params.require_generator(p)?;
    let secret = Exponent::sample(params.omega_u128()?, rng);
    Ok(dh_keypair(p, secret))
}

/// Key pair for a chosen secret.
pub fn dh_keypair(p: &Permutation, secret: Exponent) -> DhKeyPair {
    DhKeyPair {
        secret,
        token: p.pow(secret.value()),
    }
}

/// `other_token ^ own_secret`. Both parties obtain `p^(ab)`.
pub fn dh_shared_key(own_secret: Exponent, other_token: &Permutation) -> Permutation {
    other_token.pow(own_secret.value())
}
