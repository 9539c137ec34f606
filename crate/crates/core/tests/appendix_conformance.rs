use permcrypt::analysis::{audit_dh, audit_elgamal, dlp_cycle_attack, CheckStatus};
use permcrypt::appendix::{self, *};
use permcrypt::{dh_shared_key, DcpPrivateKey, DcpScheme, Exponent, PublicKey};

fn inconsistent_items(report: &permcrypt::analysis::AuditReport) -> Vec<&str> {
    report.inconsistencies().map(|c| c.item.as_str()).collect()
}

#[test]
fn dh_generator_has_published_cycle_type() {
    let params = appendix::params();
    let p = dh_p();
    assert!(params.validate_generator(&p).unwrap().valid);
    let mut lengths = p.cycles().lengths();
    let mut published = DH_CYCLE_LENGTHS.to_vec();
    lengths.sort_unstable();
    published.sort_unstable();
    assert_eq!(lengths, published);
    assert_eq!(p.order().to_u128(), Some(32589158477190044730));
}

#[test]
fn dh_listings_reproduce() {
    let p = dh_p();
    assert_eq!(p.pow(DH_ALICE_POWER), dh_alice_token());
    assert_eq!(p.pow(DH_BOB_POWER), dh_bob_token());
    let alice_key = dh_shared_key(Exponent(DH_ALICE_POWER), &dh_bob_token());
    let bob_key = dh_shared_key(Exponent(DH_BOB_POWER), &dh_alice_token());
    assert_eq!(alice_key, dh_alice_key());
    assert_eq!(bob_key, dh_bob_key());
    assert_eq!(alice_key, bob_key);
}

#[test]
fn dh_audit_is_clean() {
    let report = audit_dh(&appendix::params(), &dh_transcript()).unwrap();
    assert!(report.is_consistent(), "{report}");
}

#[test]
fn dh_tokens_fall_to_the_cycle_attack() {
    let omega = 32589158477190044730u128;
    let a = dlp_cycle_attack(&dh_p(), &dh_alice_token()).unwrap();
    let b = dlp_cycle_attack(&dh_p(), &dh_bob_token()).unwrap();
    assert_eq!((a.exponent, a.modulus), (DH_ALICE_POWER % omega, omega));
    assert_eq!(b.exponent, DH_BOB_POWER % omega);
}

#[test]
fn elgamal_parameters() {
    let params = appendix::params();
    let p = elgamal_p();
    assert!(params.validate_generator(&p).unwrap().valid);
    let mut lengths = p.cycles().lengths();
    let mut published = ELGAMAL_CYCLE_LENGTHS.to_vec();
    lengths.sort_unstable();
    published.sort_unstable();
    assert_eq!(lengths, published);

    let g = elgamal_g();
    let mut aux = g.cycles().nontrivial().map(|c| c.len()).collect::<Vec<_>>();
    aux.sort_unstable();
    let mut published = ELGAMAL_AUX_CYCLE_LENGTHS.to_vec();
    published.sort_unstable();
    assert_eq!(aux, published);
    assert_eq!(g.order().to_u128(), Some(ELGAMAL_AUX_ORDER));
}

#[test]
fn elgamal_public_keys_and_session_key_reproduce() {
    let scheme = DcpScheme::new(&appendix::params(), elgamal_p(), elgamal_g()).unwrap();
    let alice = DcpPrivateKey { m: Exponent(ELGAMAL_M), n: Exponent(ELGAMAL_N) };
    let bob = DcpPrivateKey { m: Exponent(ELGAMAL_R), n: Exponent(ELGAMAL_S) };
    assert_eq!(scheme.public_key(&alice), PublicKey(elgamal_pa()));
    assert_eq!(scheme.public_key(&bob), PublicKey(elgamal_pb()));
    assert_eq!(elgamal_p().pow(ELGAMAL_T), elgamal_k());
}

#[test]
fn published_ciphertext_decrypts_to_the_message() {
    let scheme = DcpScheme::new(&appendix::params(), elgamal_p(), elgamal_g()).unwrap();
    let bob = DcpPrivateKey { m: Exponent(ELGAMAL_R), n: Exponent(ELGAMAL_S) };
    let ct = permcrypt::Ciphertext { y1: elgamal_y1(), y2: elgamal_y2() };
    let recovered = scheme.decrypt(&bob, &ct).unwrap();
    assert_eq!(recovered, elgamal_recovered());
    assert_eq!(recovered, elgamal_msg());
}

#[test]
fn private_listings_are_powers_of_the_auxiliary() {
    // The listings labelled p^m, p^n are g^m, g^n; they lie outside <p>.
    let order = ELGAMAL_AUX_ORDER;
    let g = elgamal_g();
    assert_eq!(g.pow(ELGAMAL_M % order), elgamal_pm());
    assert_eq!(g.pow(ELGAMAL_N % order), elgamal_pn());
    assert_eq!(elgamal_pm(), elgamal_pr());
    assert_eq!(elgamal_pn(), elgamal_ps());
    assert!(dlp_cycle_attack(&elgamal_p(), &elgamal_pm()).is_err());
    assert_ne!(elgamal_p().pow(ELGAMAL_M), elgamal_pm());
}

#[test]
fn elgamal_audit_isolates_the_unreproducible_listings() {
    let mut report = audit_elgamal(&appendix::params(), &elgamal_transcript()).unwrap();
    report.annotate(appendix::source_of);
    let mut bad = inconsistent_items(&report);
    bad.sort_unstable();
    assert_eq!(
        bad,
        [
            "alice private p^m",
            "alice private p^n",
            "bob private p^r",
            "bob private p^s",
            "y1",
            "y2",
        ],
        "{report}"
    );
    for item in ["decryption", "recovered message", "alice public", "bob public", "session key"] {
        assert_eq!(report.check(item).unwrap().status, CheckStatus::Consistent, "{item}");
    }
    assert!(report.checks.iter().all(|c| c.source.is_some()));
}

#[test]
fn ciphertext_is_not_from_the_published_session() {
    let scheme = DcpScheme::new(&appendix::params(), elgamal_p(), elgamal_g()).unwrap();
    let alice = DcpPrivateKey { m: Exponent(ELGAMAL_M), n: Exponent(ELGAMAL_N) };
    let ct = scheme
        .encrypt_with_session(&PublicKey(elgamal_pb()), &alice, &elgamal_msg(), Exponent(ELGAMAL_T))
        .unwrap();
    assert_ne!(ct.y1, elgamal_y1());
    assert_ne!(ct.y2, elgamal_y2());
}
