use num_bigint::BigUint;
use permcrypt::analysis::{dlp_brute_force, dlp_cycle_attack, power_by_rotation};
use permcrypt::lehmer::{decode_message, encode_message};
use permcrypt::{
    dh_keygen, dh_shared_key, DcpScheme, DpScheme, Exponent, GroupParams, Permutation, SeededRng,
};

const SESSIONS: usize = 1000;

#[test]
fn dh_sessions_agree() {
    let params = GroupParams::new(16).unwrap();
    let mut rng = SeededRng::new(101);
    let p = params.generate_generator(&mut rng);
    for _ in 0..SESSIONS {
        let a = dh_keygen(&params, &p, &mut rng).unwrap();
        let b = dh_keygen(&params, &p, &mut rng).unwrap();
        assert_eq!(dh_shared_key(a.secret, &b.token), dh_shared_key(b.secret, &a.token));
    }
}

#[test]
fn dcp_round_trips() {
    let params = GroupParams::new(16).unwrap();
    let omega = params.omega().clone();
    let mut rng = SeededRng::new(202);
    let p = params.generate_generator(&mut rng);
    let g = Permutation::random(params.degree(), &mut rng).unwrap();
    let scheme = DcpScheme::new(&params, p, g).unwrap();
    let (alice, _) = scheme.keygen(&mut rng);
    let (bob, bob_pub) = scheme.keygen(&mut rng);
    for _ in 0..SESSIONS {
        let m = BigUint::from(rng.uniform_below_u128(params.omega_u128().unwrap()));
        let msg = encode_message(params.degree(), &m, Some(&omega)).unwrap().permutation;
        let ct = scheme.encrypt(&bob_pub, &alice, &msg, &mut rng).unwrap();
        let out = scheme.decrypt(&bob, &ct).unwrap();
        assert_eq!(decode_message(&out), m);
    }
}

#[test]
fn dp_round_trips() {
    let params = GroupParams::new(16).unwrap();
    let mut rng = SeededRng::new(303);
    let p = params.generate_generator(&mut rng);
    let q = params.generate_generator(&mut rng);
    let g = Permutation::random(params.degree(), &mut rng).unwrap();
    let scheme = DpScheme::new(&params, p, q, g).unwrap();
    let (alice, _) = scheme.keygen(&mut rng);
    let (bob, bob_pub) = scheme.keygen(&mut rng);
    for _ in 0..SESSIONS {
        let msg = Permutation::random(params.degree(), &mut rng).unwrap();
        let ct = scheme.encrypt(&bob_pub, &alice, &msg, &mut rng).unwrap();
        assert_eq!(scheme.decrypt(&bob, &ct).unwrap(), msg);
    }
}

#[test]
fn wrong_key_does_not_decrypt() {
    let params = GroupParams::new(16).unwrap();
    let mut rng = SeededRng::new(404);
    let p = params.generate_generator(&mut rng);
    let g = Permutation::random(params.degree(), &mut rng).unwrap();
    let scheme = DcpScheme::new(&params, p, g).unwrap();
    let (alice, _) = scheme.keygen(&mut rng);
    let (_, bob_pub) = scheme.keygen(&mut rng);
    let (eve, _) = scheme.keygen(&mut rng);
    for _ in 0..50 {
        let msg = Permutation::random(params.degree(), &mut rng).unwrap();
        let ct = scheme.encrypt(&bob_pub, &alice, &msg, &mut rng).unwrap();
        assert_ne!(scheme.decrypt(&eve, &ct).unwrap(), msg);
    }
}

#[test]
fn cycle_attack_recovers_every_dh_secret() {
    for dim in [4usize, 8, 16] {
        let params = GroupParams::new(dim).unwrap();
        let omega = params.omega_u128().unwrap();
        let mut rng = SeededRng::new(dim as u64);
        let p = params.generate_generator(&mut rng);
        for _ in 0..200 {
            let e = Exponent::sample(omega, &mut rng).value();
            let token = p.pow(e);
            assert_eq!(power_by_rotation(&p, e), token);
            let sol = dlp_cycle_attack(&p, &token).unwrap();
            assert_eq!((sol.exponent, sol.modulus), (e, omega));
            if omega <= 30030 {
                assert_eq!(dlp_brute_force(&p, &token, omega), Some(e));
            }
        }
    }
}

#[test]
fn same_seed_same_transcript() {
    let run = |seed| {
        let params = GroupParams::new(16).unwrap();
        let mut rng = SeededRng::new(seed);
        let p = params.generate_generator(&mut rng);
        let a = dh_keygen(&params, &p, &mut rng).unwrap();
        let b = dh_keygen(&params, &p, &mut rng).unwrap();
        let key = dh_shared_key(a.secret, &b.token);
        (p, a.token, b.token, key)
    };
    assert_eq!(run(9), run(9));
    assert_ne!(run(9), run(10));
}
