//! Verification and cryptanalysis tools.
//!
//! The cycle-shift solver recovers discrete logarithms in `<p>` in time
//! linear in the degree, because a power of `p` acts on each cycle as a
//! rotation and the cycle lengths are coprime. This is a property of the
//! prime-cycle construction. It does not solve the double-coset or
//! decomposition problems behind the ElGamal variants when `g` lies outside
//! `<p>`.

mod audit;
mod crt;
mod dlp;

pub use audit::{audit_dh, audit_elgamal, AuditCheck, AuditReport, CheckStatus, DhTranscript, ElGamalTranscript};
pub use crt::{crt_combine, mod_inverse};
pub use dlp::{dlp_brute_force, dlp_cycle_attack, power_by_rotation, DlpSolution};
