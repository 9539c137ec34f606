//! ElGamal-style encryption whose one-way maps are the double coset
//! `x -> p^m x p^n` (DCP) and the decomposition `x -> p^m x q^n` (DP).
//!
//! Ciphertexts are keyed by the sender's long-term private exponents:
//! `y1 = k^m g k^n` and `y2 = msg (k^m pub_B k^n)` with session key
//! `k = p^t`. The receiver recovers `msg = y2 (p^r y1 p^s)^-1` because every
//! power of `p` commutes with `k`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupParams;
use crate::perm::Permutation;
use crate::rng::SeededRng;

use super::Exponent;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PublicKey(pub Permutation);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ciphertext {
    pub y1: Permutation,
    pub y2: Permutation,
}

/// Private exponents `(m, n)`; the key proper is `(p^m, p^n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DcpPrivateKey {
    pub m: Exponent,
    pub n: Exponent,
}

/// Private exponents `(m, n)`; the key proper is `(p^m, q^n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DpPrivateKey {
    pub m: Exponent,
    pub n: Exponent,
}

fn same_degree(expected: usize, p: &Permutation) -> Result<()> {
    if p.degree() != expected {
        return Err(Error::DegreeMismatch {
            left: p.degree(),
            right: expected,
        });
    }
    Ok(())
}

/// `left · mid · right`
fn sandwich(left: &Permutation, mid: &Permutation, right: &Permutation) -> Result<Permutation> {
    left.compose(mid)?.compose(right)
}

/// Public values of the double-coset variant: generator `p` and auxiliary `g`.
#[derive(Debug, Clone)]
pub struct DcpScheme {
    omega: u128,
    p: Permutation,
    g: Permutation,
}

impl DcpScheme {
    pub fn new(params: &GroupParams, p: Permutation, g: Permutation) -> Result<Self> {
        params.require_generator(&p)?;
        same_degree(params.degree(), &g)?;
        Ok(Self {
            omega: params.omega_u128()?,
            p,
            g,
        })
    }

    pub fn generator(&self) -> &Permutation {
        &self.p
    }

    pub fn auxiliary(&self) -> &Permutation {
        &self.g
    }

    pub fn keygen(&self, rng: &mut SeededRng) -> (DcpPrivateKey, PublicKey) {
        let m = Exponent::sample(self.omega, rng);
        let n = Exponent::sample(self.omega, rng);
        let key = DcpPrivateKey { m, n };
        (key, self.public_key(&key))
    }

    /// `p^m g p^n`
    pub fn public_key(&self, key: &DcpPrivateKey) -> PublicKey {
        let pk = sandwich(&self.p.pow(key.m.value()), &self.g, &self.p.pow(key.n.value()))
            .expect("degrees checked at construction");
        PublicKey(pk)
    }

    /// Encrypts with a fresh session exponent `t` drawn from `rng`.
    pub fn encrypt(
        &self,
        receiver: &PublicKey,
        sender: &DcpPrivateKey,
        msg: &Permutation,
        rng: &mut SeededRng,
    ) -> Result<Ciphertext> {
        let t = Exponent::sample(self.omega, rng);
        self.encrypt_with_session(receiver, sender, msg, t)
    }

    pub fn encrypt_with_session(
        &self,
        receiver: &PublicKey,
        sender: &DcpPrivateKey,
        msg: &Permutation,
        t: Exponent,
    ) -> Result<Ciphertext> {
        same_degree(self.p.degree(), &receiver.0)?;
        same_degree(self.p.degree(), msg)?;
        let k = self.p.pow(t.value());
        let km = k.pow(sender.m.value());
        let kn = k.pow(sender.n.value());
        let y1 = sandwich(&km, &self.g, &kn)?;
        let y2 = msg.compose(&sandwich(&km, &receiver.0, &kn)?)?;
        Ok(Ciphertext { y1, y2 })
    }

    /// `y2 (p^r y1 p^s)^-1`
    pub fn decrypt(&self, receiver: &DcpPrivateKey, ct: &Ciphertext) -> Result<Permutation> {
        same_degree(self.p.degree(), &ct.y1)?;
        same_degree(self.p.degree(), &ct.y2)?;
        let mask = sandwich(&self.p.pow(receiver.m.value()), &ct.y1, &self.p.pow(receiver.n.value()))?;
        ct.y2.compose(&mask.inverse())
    }
}

/// Public values of the decomposition variant: generators `p`, `q` and
/// auxiliary `g`.
#[derive(Debug, Clone)]
pub struct DpScheme {
    omega: u128,
    p: Permutation,
    q: Permutation,
    g: Permutation,
}

impl DpScheme {
    pub fn new(params: &GroupParams, p: Permutation, q: Permutation, g: Permutation) -> Result<Self> {
        params.require_generator(&p)?;
        params.require_generator(&q)?;
        same_degree(params.degree(), &g)?;
        Ok(Self {
            omega: params.omega_u128()?,
            p,
            q,
            g,
        })
    }

    pub fn keygen(&self, rng: &mut SeededRng) -> (DpPrivateKey, PublicKey) {
        let m = Exponent::sample(self.omega, rng);
        let n = Exponent::sample(self.omega, rng);
        let key = DpPrivateKey { m, n };
        (key, self.public_key(&key))
    }

    /// `p^m g q^n`
    pub fn public_key(&self, key: &DpPrivateKey) -> PublicKey {
        let pk = sandwich(&self.p.pow(key.m.value()), &self.g, &self.q.pow(key.n.value()))
            .expect("degrees checked at construction");
        PublicKey(pk)
    }

    /// Draws `t` then `u` from `rng`.
    pub fn encrypt(
        &self,
        receiver: &PublicKey,
        sender: &DpPrivateKey,
        msg: &Permutation,
        rng: &mut SeededRng,
    ) -> Result<Ciphertext> {
        let t = Exponent::sample(self.omega, rng);
        let u = Exponent::sample(self.omega, rng);
        self.encrypt_with_session(receiver, sender, msg, t, u)
    }

    pub fn encrypt_with_session(
        &self,
        receiver: &PublicKey,
        sender: &DpPrivateKey,
        msg: &Permutation,
        t: Exponent,
        u: Exponent,
    ) -> Result<Ciphertext> {
        same_degree(self.p.degree(), &receiver.0)?;
        same_degree(self.p.degree(), msg)?;
        let km = self.p.pow(t.value()).pow(sender.m.value());
        let ln = self.q.pow(u.value()).pow(sender.n.value());
        let y1 = sandwich(&km, &self.g, &ln)?;
        let y2 = msg.compose(&sandwich(&km, &receiver.0, &ln)?)?;
        Ok(Ciphertext { y1, y2 })
    }

    /// `y2 (p^r y1 q^s)^-1`
    pub fn decrypt(&self, receiver: &DpPrivateKey, ct: &Ciphertext) -> Result<Permutation> {
        same_degree(self.p.degree(), &ct.y1)?;
        same_degree(self.p.degree(), &ct.y2)?;
        let mask = sandwich(&self.p.pow(receiver.m.value()), &ct.y1, &self.q.pow(receiver.n.value()))?;
        ct.y2.compose(&mask.inverse())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Toy {
        params: GroupParams,
        p: Permutation,
        q: Permutation,
        g: Permutation,
    }

    fn toy(dim: usize, seed: u64) -> Toy {
        let params = GroupParams::new(dim).unwrap();
        let mut rng = SeededRng::new(seed);
        let p = params.generate_generator(&mut rng);
        let q = params.generate_generator(&mut rng);
        let g = Permutation::random(params.degree(), &mut rng).unwrap();
        Toy { params, p, q, g }
    }

    fn key(m: u128, n: u128) -> DcpPrivateKey {
        DcpPrivateKey {
            m: Exponent(m),
            n: Exponent(n),
        }
    }

    #[test]
    fn zero_exponents_publish_g() {
        let t = toy(16, 1);
        let dcp = DcpScheme::new(&t.params, t.p.clone(), t.g.clone()).unwrap();
        assert_eq!(dcp.public_key(&key(0, 0)).0, t.g);
        let dp = DpScheme::new(&t.params, t.p, t.q, t.g.clone()).unwrap();
        let zero = DpPrivateKey { m: Exponent(0), n: Exponent(0) };
        assert_eq!(dp.public_key(&zero).0, t.g);
    }

    #[test]
    fn dcp_public_key_formula_exhaustive_on_order_six() {
        let t = toy(2, 5);
        let dcp = DcpScheme::new(&t.params, t.p.clone(), t.g.clone()).unwrap();
        // independent route: left-to-right chain of the naive powers
        let mut powers = vec![Permutation::identity(5).unwrap()];
        for _ in 1..6 {
            powers.push(powers.last().unwrap().compose(&t.p).unwrap());
        }
        for m in 0..6u128 {
            for n in 0..6u128 {
                let expected = powers[n as usize]
                    .then(&t.g)
                    .unwrap()
                    .then(&powers[m as usize])
                    .unwrap();
                assert_eq!(dcp.public_key(&key(m, n)).0, expected);
            }
        }
    }

    #[test]
    fn dp_public_key_formula_exhaustive_on_order_six() {
        let t = toy(2, 6);
        let dp = DpScheme::new(&t.params, t.p.clone(), t.q.clone(), t.g.clone()).unwrap();
        for m in 0..6u128 {
            for n in 0..6u128 {
                let mut expected = t.g.clone();
                for _ in 0..m {
                    expected = t.p.compose(&expected).unwrap();
                }
                for _ in 0..n {
                    expected = expected.compose(&t.q).unwrap();
                }
                let k = DpPrivateKey { m: Exponent(m), n: Exponent(n) };
                assert_eq!(dp.public_key(&k).0, expected);
            }
        }
    }

    #[test]
    fn dcp_round_trip_exhaustive_on_order_six() {
        let t = toy(2, 9);
        let dcp = DcpScheme::new(&t.params, t.p.clone(), t.g.clone()).unwrap();
        for ma in 0..6 {
            for na in 0..6 {
                for (r, s) in [(0, 0), (1, 5), (4, 2), (3, 3)] {
                    let alice = key(ma, na);
                    let bob = key(r, s);
                    let bob_pub = dcp.public_key(&bob);
                    for t_exp in 0..6 {
                        for e in 0..6 {
                            let msg = t.p.pow(e);
                            let ct = dcp
                                .encrypt_with_session(&bob_pub, &alice, &msg, Exponent(t_exp))
                                .unwrap();
                            assert_eq!(dcp.decrypt(&bob, &ct).unwrap(), msg);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dp_round_trip_exhaustive_on_order_six() {
        let t = toy(2, 10);
        let dp = DpScheme::new(&t.params, t.p.clone(), t.q.clone(), t.g.clone()).unwrap();
        let bob = DpPrivateKey { m: Exponent(5), n: Exponent(2) };
        let bob_pub = dp.public_key(&bob);
        for m in 0..6 {
            for n in 0..6 {
                let alice = DpPrivateKey { m: Exponent(m), n: Exponent(n) };
                for tt in 0..6 {
                    for u in 0..6 {
                        let msg = t.p.pow(tt * u % 6);
                        let ct = dp
                            .encrypt_with_session(&bob_pub, &alice, &msg, Exponent(tt), Exponent(u))
                            .unwrap();
                        assert_eq!(dp.decrypt(&bob, &ct).unwrap(), msg);
                    }
                }
            }
        }
    }

    #[test]
    fn identity_message_exposes_mask() {
        let t = toy(16, 2);
        let dcp = DcpScheme::new(&t.params, t.p.clone(), t.g.clone()).unwrap();
        let mut rng = SeededRng::new(3);
        let (alice, _) = dcp.keygen(&mut rng);
        let (_, bob_pub) = dcp.keygen(&mut rng);
        let te = Exponent(123456789);
        let id = Permutation::identity(381).unwrap();
        let ct = dcp.encrypt_with_session(&bob_pub, &alice, &id, te).unwrap();
        let k = t.p.pow(te.value());
        let mask = k
            .pow(alice.m.value())
            .compose(&bob_pub.0)
            .unwrap()
            .compose(&k.pow(alice.n.value()))
            .unwrap();
        assert_eq!(ct.y2, mask);
    }

    #[test]
    fn step_e_identity_holds_both_ways() {
        let t = toy(16, 4);
        let dcp = DcpScheme::new(&t.params, t.p.clone(), t.g.clone()).unwrap();
        let mut rng = SeededRng::new(4);
        let (alice, _) = dcp.keygen(&mut rng);
        let (bob, bob_pub) = dcp.keygen(&mut rng);
        let te = Exponent::sample(t.params.omega_u128().unwrap(), &mut rng);
        let msg = Permutation::random(381, &mut rng).unwrap();
        let ct = dcp.encrypt_with_session(&bob_pub, &alice, &msg, te).unwrap();
        let k = t.p.pow(te.value());
        let via_sender = sandwich(&k.pow(alice.m.value()), &bob_pub.0, &k.pow(alice.n.value())).unwrap();
        let via_receiver = sandwich(&t.p.pow(bob.m.value()), &ct.y1, &t.p.pow(bob.n.value())).unwrap();
        assert_eq!(via_sender, via_receiver);
    }

    #[test]
    fn degenerate_session_key() {
        let t = toy(16, 5);
        let omega = t.params.omega_u128().unwrap();
        let dcp = DcpScheme::new(&t.params, t.p.clone(), t.g.clone()).unwrap();
        let mut rng = SeededRng::new(5);
        let (alice, _) = dcp.keygen(&mut rng);
        let (bob, bob_pub) = dcp.keygen(&mut rng);
        let msg = Permutation::random(381, &mut rng).unwrap();
        let ct = dcp.encrypt_with_session(&bob_pub, &alice, &msg, Exponent(omega)).unwrap();
        assert_eq!(ct.y1, t.g);
        assert_eq!(dcp.decrypt(&bob, &ct).unwrap(), msg);
    }

    #[test]
    fn dp_with_q_equal_p_matches_dcp() {
        let t = toy(16, 6);
        let dcp = DcpScheme::new(&t.params, t.p.clone(), t.g.clone()).unwrap();
        let dp = DpScheme::new(&t.params, t.p.clone(), t.p.clone(), t.g.clone()).unwrap();
        let mut rng = SeededRng::new(6);
        let (a, _) = dcp.keygen(&mut rng);
        let (b, b_pub) = dcp.keygen(&mut rng);
        let a_dp = DpPrivateKey { m: a.m, n: a.n };
        let b_dp = DpPrivateKey { m: b.m, n: b.n };
        assert_eq!(dp.public_key(&b_dp), b_pub);
        let msg = Permutation::random(381, &mut rng).unwrap();
        let te = Exponent(987654321);
        let ct_dcp = dcp.encrypt_with_session(&b_pub, &a, &msg, te).unwrap();
        let ct_dp = dp.encrypt_with_session(&b_pub, &a_dp, &msg, te, te).unwrap();
        assert_eq!(ct_dcp, ct_dp);
        assert_eq!(dcp.decrypt(&b, &ct_dcp).unwrap(), dp.decrypt(&b_dp, &ct_dp).unwrap());
    }

    #[test]
    fn corrupted_y1_breaks_dp_decryption() {
        let t = toy(16, 7);
        let dp = DpScheme::new(&t.params, t.p.clone(), t.q.clone(), t.g.clone()).unwrap();
        let mut rng = SeededRng::new(7);
        let (a, _) = dp.keygen(&mut rng);
        let (b, b_pub) = dp.keygen(&mut rng);
        for _ in 0..100 {
            let msg = Permutation::random(381, &mut rng).unwrap();
            let ct = dp.encrypt(&b_pub, &a, &msg, &mut rng).unwrap();
            let i = rng.uniform_below(381) as usize;
            let j = (i + 1 + rng.uniform_below(380) as usize) % 381;
            let mut images = ct.y1.images();
            images.swap(i, j);
            let bad = Ciphertext {
                y1: Permutation::from_images(&images).unwrap(),
                y2: ct.y2.clone(),
            };
            assert_ne!(dp.decrypt(&b, &bad).unwrap(), msg);
        }
    }

    #[test]
    fn encryption_is_probabilistic() {
        let t = toy(16, 8);
        let dcp = DcpScheme::new(&t.params, t.p.clone(), t.g.clone()).unwrap();
        let mut rng = SeededRng::new(8);
        let (a, _) = dcp.keygen(&mut rng);
        let (_, b_pub) = dcp.keygen(&mut rng);
        let msg = Permutation::random(381, &mut rng).unwrap();
        for _ in 0..100 {
            let c1 = dcp.encrypt(&b_pub, &a, &msg, &mut rng).unwrap();
            let c2 = dcp.encrypt(&b_pub, &a, &msg, &mut rng).unwrap();
            assert_ne!(c1.y1, c2.y1);
        }
    }

    #[test]
    fn degree_mismatches_are_rejected() {
        let t = toy(16, 9);
        let dcp = DcpScheme::new(&t.params, t.p.clone(), t.g.clone()).unwrap();
        let small = Permutation::identity(10).unwrap();
        let (a, a_pub) = dcp.keygen(&mut SeededRng::new(1));
        assert!(matches!(
            dcp.encrypt_with_session(&a_pub, &a, &small, Exponent(3)),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(matches!(
            dcp.encrypt_with_session(&PublicKey(small.clone()), &a, &t.g, Exponent(3)),
            Err(Error::DegreeMismatch { .. })
        ));
        let ct = Ciphertext { y1: small.clone(), y2: t.g.clone() };
        assert!(dcp.decrypt(&a, &ct).is_err());
        assert!(DcpScheme::new(&t.params, t.p.clone(), small.clone()).is_err());
        assert!(DcpScheme::new(&t.params, t.g.clone(), t.g.clone()).is_err());
    }
}
