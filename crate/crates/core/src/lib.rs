//! Permutation-group public-key cryptography over a high-order cyclic
//! subgroup of S_n.
//!
//! A generator `p` has cycles whose lengths are the first `d` primes, so its
//! order is the primorial of those primes (for `d = 16`, a 65-bit order in
//! S_381). On top of that the crate provides a Diffie-Hellman exchange, two
//! ElGamal-style ciphers, Lehmer-code message encoding, and analysis tools
//! that check every published value and recover discrete logarithms from
//! cycle structure.
//!
//! ```
//! use permcrypt::{dh_keygen, dh_shared_key, GroupParams, SeededRng};
//!
//! let params = GroupParams::new(16).unwrap();
//! let mut rng = SeededRng::new(7);
//! let p = params.generate_generator(&mut rng);
//! let alice = dh_keygen(&params, &p, &mut rng).unwrap();
//! let bob = dh_keygen(&params, &p, &mut rng).unwrap();
//! assert_eq!(
//!     dh_shared_key(alice.secret, &bob.token),
//!     dh_shared_key(bob.secret, &alice.token),
//! );
//! ```

pub mod analysis;
pub mod appendix;
pub mod bench;
mod error;
pub mod group;
pub mod keyfile;
pub mod lehmer;
pub mod perm;
pub mod protocols;
pub mod rng;

pub use error::{Error, Result};
pub use group::{GeneratorCheck, GroupParams};
pub use keyfile::{KeyFile, Role};
pub use perm::{CycleDecomposition, GroupOrder, Permutation};
pub use protocols::{
    dh_keygen, dh_keypair, dh_shared_key, Ciphertext, DcpPrivateKey, DcpScheme, DhKeyPair, DpPrivateKey,
    DpScheme, Exponent, PublicKey,
};
pub use rng::SeededRng;
