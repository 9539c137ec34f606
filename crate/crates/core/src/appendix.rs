//! Published worked examples for S_381, embedded as 1-based listings.

use crate::analysis::{DhTranscript, ElGamalTranscript};
use crate::group::GroupParams;
use crate::perm::Permutation;
use crate::protocols::{Ciphertext, DcpPrivateKey, Exponent};

pub const DH_ALICE_POWER: u128 = 16967309044902469564;
pub const DH_BOB_POWER: u128 = 10540455745810519467;
pub const DH_CYCLE_LENGTHS: [usize; 16] = [13, 41, 47, 23, 37, 11, 43, 53, 31, 19, 5, 7, 29, 17, 3, 2];

pub const ELGAMAL_M: u128 = 9427189104773785613;
pub const ELGAMAL_N: u128 = 26477403901985527977;
pub const ELGAMAL_R: u128 = 14090847924998838332;
pub const ELGAMAL_S: u128 = 22570145711539886927;
pub const ELGAMAL_T: u128 = 9700531854857717671;
pub const ELGAMAL_CYCLE_LENGTHS: [usize; 16] = [5, 17, 41, 31, 47, 37, 43, 53, 3, 29, 19, 13, 11, 7, 23, 2];
pub const ELGAMAL_AUX_CYCLE_LENGTHS: [usize; 5] = [248, 93, 6, 29, 4];
pub const ELGAMAL_AUX_ORDER: u128 = 21576;

macro_rules! listing {
    ($name:ident, $file:literal) => {
        pub fn $name() -> Permutation {
            include_str!(concat!("../vectors/", $file))
                .parse()
                .expect(concat!("embedded listing ", $file))
        }
    };
}

listing!(dh_p, "dh_p.txt");
listing!(dh_alice_token, "dh_alice_token.txt");
listing!(dh_bob_token, "dh_bob_token.txt");
listing!(dh_alice_key, "dh_alice_key.txt");
listing!(dh_bob_key, "dh_bob_key.txt");
listing!(elgamal_p, "elgamal_p.txt");
listing!(elgamal_g, "elgamal_g.txt");
listing!(elgamal_pm, "elgamal_pm.txt");
listing!(elgamal_pn, "elgamal_pn.txt");
listing!(elgamal_pr, "elgamal_pr.txt");
listing!(elgamal_ps, "elgamal_ps.txt");
listing!(elgamal_pa, "elgamal_pa.txt");
listing!(elgamal_pb, "elgamal_pb.txt");
listing!(elgamal_k, "elgamal_k.txt");
listing!(elgamal_msg, "elgamal_msg.txt");
listing!(elgamal_y1, "elgamal_y1.txt");
listing!(elgamal_y2, "elgamal_y2.txt");
listing!(elgamal_recovered, "elgamal_recovered.txt");

pub fn params() -> GroupParams {
    GroupParams::new(16).expect("dim 16")
}

pub fn dh_transcript() -> DhTranscript {
    DhTranscript {
        generator: dh_p(),
        alice_secret: Some(Exponent(DH_ALICE_POWER)),
        bob_secret: Some(Exponent(DH_BOB_POWER)),
        alice_token: dh_alice_token(),
        bob_token: dh_bob_token(),
        alice_key: Some(dh_alice_key()),
        bob_key: Some(dh_bob_key()),
    }
}

pub fn elgamal_transcript() -> ElGamalTranscript {
    ElGamalTranscript {
        generator: elgamal_p(),
        auxiliary: elgamal_g(),
        claimed_auxiliary_order: Some(ELGAMAL_AUX_ORDER),
        alice: DcpPrivateKey {
            m: Exponent(ELGAMAL_M),
            n: Exponent(ELGAMAL_N),
        },
        bob: DcpPrivateKey {
            m: Exponent(ELGAMAL_R),
            n: Exponent(ELGAMAL_S),
        },
        session: Exponent(ELGAMAL_T),
        alice_private_listing: Some((elgamal_pm(), elgamal_pn())),
        bob_private_listing: Some((elgamal_pr(), elgamal_ps())),
        alice_public: elgamal_pa(),
        bob_public: elgamal_pb(),
        session_key: Some(elgamal_k()),
        message: elgamal_msg(),
        ciphertext: Ciphertext {
            y1: elgamal_y1(),
            y2: elgamal_y2(),
        },
        recovered: Some(elgamal_recovered()),
    }
}

/// Where each audited item was published.
pub fn source_of(item: &str) -> Option<&'static str> {
    Some(match item {
        "generator" => "Figures 1-2 / 8",
        "alice token" => "Figure 4",
        "bob token" => "Figure 5",
        "alice key" => "Figure 6",
        "bob key" => "Figure 7",
        "shared key agreement" => "Figures 6-7",
        "auxiliary order" => "Figure 8",
        "composition convention" => "Figure 11",
        "alice public" | "bob public" => "Figure 11",
        "alice private p^m" | "alice private p^n" => "Figure 9",
        "bob private p^r" | "bob private p^s" => "Figure 10",
        "session key" => "Figure 11",
        "y1" | "y2" => "Figure 12",
        "decryption" | "recovered message" => "Figure 13",
        _ => return None,
    })
}
