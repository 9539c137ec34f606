//! Key exchange and public-key encryption over a cyclic permutation subgroup.

mod dh;
mod elgamal;

pub use dh::{dh_keygen, dh_keypair, dh_shared_key, DhKeyPair};
pub use elgamal::{Ciphertext, DcpPrivateKey, DcpScheme, DpPrivateKey, DpScheme, PublicKey};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::rng::SeededRng;

/// A secret exponent. Arithmetic on exponents is modulo the subgroup order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(pub u128);

impl Exponent {
    /// Uniform in `[1, omega - 1]`. Zero is excluded since it yields the
    /// identity token.
    pub fn sample(omega: u128, rng: &mut SeededRng) -> Self {
        if omega <= 2 {
            return Self(1);
        }
        Self(1 + rng.uniform_below_u128(omega - 1))
    }

    pub fn value(self) -> u128 {
        self.0
    }

    pub fn reduce(self, omega: u128) -> Self {
        Self(self.0 % omega)
    }
}

impl From<u128> for Exponent {
    fn from(v: u128) -> Self {
        Self(v)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        s.trim()
            .parse::<u128>()
            .map(Self)
            .map_err(|_| Error::Parse(format!("bad exponent {s:?}")))
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

/// `a * b mod m` without overflow.
pub fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    match a.checked_mul(b) {
        Some(x) => x % m,
        None => (BigUint::from(a) * b % m).to_u128().expect("reduced below m"),
    }
}
