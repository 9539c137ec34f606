//! Recomputes published protocol values and reports which ones agree.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::Result;
use crate::group::GroupParams;
use crate::perm::Permutation;
use crate::protocols::{Ciphertext, DcpPrivateKey, DcpScheme, Exponent, PublicKey};

use super::dlp::dlp_cycle_attack;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Consistent,
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditCheck {
    /// Name of the published value.
    pub item: String,
    /// Where it was published, if known.
    pub source: Option<String>,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub title: String,
    pub checks: Vec<AuditCheck>,
}

impl AuditReport {
    fn new(title: &str) -> Self {
        Self {
            title: title.to_string(),
            checks: Vec::new(),
        }
    }

    fn push(&mut self, item: &str, ok: bool, detail: impl Into<String>) {
        self.checks.push(AuditCheck {
            item: item.to_string(),
            source: None,
            status: if ok {
                CheckStatus::Consistent
            } else {
                CheckStatus::Inconsistent
            },
            detail: detail.into(),
        });
    }

    pub fn is_consistent(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Consistent)
    }

    /// Checks whose published value could not be reproduced.
    pub fn inconsistencies(&self) -> impl Iterator<Item = &AuditCheck> {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Inconsistent)
    }

    pub fn check(&self, item: &str) -> Option<&AuditCheck> {
        self.checks.iter().find(|c| c.item == item)
    }

    /// Attaches a source reference to every check the lookup knows about.
    pub fn annotate(&mut self, source_of: impl Fn(&str) -> Option<&'static str>) {
        for check in &mut self.checks {
            if let Some(src) = source_of(&check.item) {
                check.source = Some(src.to_string());
            }
        }
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "audit: {}", self.title)?;
        for c in &self.checks {
            let mark = match c.status {
                CheckStatus::Consistent => "ok  ",
                CheckStatus::Inconsistent => "FAIL",
            };
            match &c.source {
                Some(src) => writeln!(f, "  [{mark}] {} ({src}): {}", c.item, c.detail)?,
                None => writeln!(f, "  [{mark}] {}: {}", c.item, c.detail)?,
            }
        }
        let bad = self.inconsistencies().count();
        if bad == 0 {
            write!(f, "result: all {} checks consistent", self.checks.len())
        } else {
            let names: Vec<&str> = self.inconsistencies().map(|c| c.item.as_str()).collect();
            write!(
                f,
                "result: {bad} of {} checks inconsistent: {}",
                self.checks.len(),
                names.join(", ")
            )
        }
    }
}

/// Public values of a Diffie-Hellman exchange, plus any secrets disclosed.
#[derive(Debug, Clone)]
pub struct DhTranscript {
    pub generator: Permutation,
    pub alice_secret: Option<Exponent>,
    pub bob_secret: Option<Exponent>,
    pub alice_token: Permutation,
    pub bob_token: Permutation,
    pub alice_key: Option<Permutation>,
    pub bob_key: Option<Permutation>,
}

fn recover_secret(
    report: &mut AuditReport,
    item: &str,
    p: &Permutation,
    token: &Permutation,
    disclosed: Option<Exponent>,
    omega: u128,
) -> Option<u128> {
    match dlp_cycle_attack(p, token) {
        Ok(sol) => {
            let mut detail = format!("in <p>, discrete log {}", sol.exponent);
            let mut ok = true;
            if let Some(s) = disclosed {
                let matches = s.value() % omega == sol.exponent;
                ok &= matches;
                detail.push_str(if matches {
                    ", equals the disclosed secret"
                } else {
                    ", differs from the disclosed secret"
                });
            }
            report.push(item, ok, detail);
            Some(disclosed.map_or(sol.exponent, Exponent::value))
        }
        Err(e) => {
            report.push(item, false, format!("not reproducible: {e}"));
            disclosed.map(Exponent::value)
        }
    }
}

pub fn audit_dh(params: &GroupParams, t: &DhTranscript) -> Result<AuditReport> {
    let omega = params.omega_u128()?;
    let mut report = AuditReport::new("Diffie-Hellman transcript");

    let check = params.validate_generator(&t.generator)?;
    let order = t.generator.order();
    report.push(
        "generator",
        check.valid && order.value() == params.omega(),
        format!("{check}; order {order}"),
    );

    let a = recover_secret(&mut report, "alice token", &t.generator, &t.alice_token, t.alice_secret, omega);
    let b = recover_secret(&mut report, "bob token", &t.generator, &t.bob_token, t.bob_secret, omega);

    let mut key_check = |item: &str, key: &Option<Permutation>, secret: Option<u128>, other_token: &Permutation| {
        let Some(key) = key else { return };
        match secret {
            Some(s) => {
                let ok = &other_token.pow(s) == key;
                report.push(
                    item,
                    ok,
                    if ok { "equals other token ^ own secret" } else { "differs from other token ^ own secret" },
                );
            }
            None => report.push(item, false, "secret unavailable"),
        }
    };
    key_check("alice key", &t.alice_key, a, &t.bob_token);
    key_check("bob key", &t.bob_key, b, &t.alice_token);

    if let (Some(ka), Some(kb)) = (&t.alice_key, &t.bob_key) {
        let same = ka == kb;
        report.push(
            "shared key agreement",
            same,
            if same { "alice key == bob key" } else { "alice key != bob key" },
        );
    }
    Ok(report)
}

/// A published ElGamal (double-coset variant) walk-through.
#[derive(Debug, Clone)]
pub struct ElGamalTranscript {
    pub generator: Permutation,
    pub auxiliary: Permutation,
    pub claimed_auxiliary_order: Option<u128>,
    pub alice: DcpPrivateKey,
    pub bob: DcpPrivateKey,
    pub session: Exponent,
    /// Listings printed as `(p^m, p^n)` for Alice.
    pub alice_private_listing: Option<(Permutation, Permutation)>,
    /// Listings printed as `(p^r, p^s)` for Bob.
    pub bob_private_listing: Option<(Permutation, Permutation)>,
    pub alice_public: Permutation,
    pub bob_public: Permutation,
    pub session_key: Option<Permutation>,
    pub message: Permutation,
    pub ciphertext: Ciphertext,
    pub recovered: Option<Permutation>,
}

/// `a · b · c` in either product convention.
fn triple(a: &Permutation, b: &Permutation, c: &Permutation, right_to_left: bool) -> Result<Permutation> {
    if right_to_left {
        a.compose(b)?.compose(c)
    } else {
        a.then(b)?.then(c)
    }
}

fn describe_private_listing(
    listing: &Permutation,
    symbol: &str,
    exponent: Exponent,
    p: &Permutation,
    g: &Permutation,
) -> (bool, String) {
    if &p.pow(exponent.value()) == listing {
        return (true, format!("equals p^{symbol}"));
    }
    let mut detail = format!("differs from p^{symbol}");
    match dlp_cycle_attack(p, listing) {
        Ok(sol) => detail.push_str(&format!(" (it is p^{})", sol.exponent)),
        Err(_) => detail.push_str("; not in <p>"),
    }
    if &g.pow(exponent.value()) == listing {
        detail.push_str(&format!("; equals g^{symbol}"));
    }
    (false, detail)
}

pub fn audit_elgamal(params: &GroupParams, t: &ElGamalTranscript) -> Result<AuditReport> {
    let omega = params.omega_u128()?;
    let mut report = AuditReport::new("ElGamal (double coset) transcript");
    let (p, g) = (&t.generator, &t.auxiliary);

    let check = params.validate_generator(p)?;
    let order = p.order();
    report.push(
        "generator",
        check.valid && order.value() == params.omega(),
        format!("{check}; order {order}"),
    );

    if let Some(claimed) = t.claimed_auxiliary_order {
        let actual = g.order();
        let ok = actual.to_u128() == Some(claimed);
        report.push(
            "auxiliary order",
            ok,
            format!("cycle lengths {:?}, order {actual}, claimed {claimed}", g.cycles().nontrivial().map(<[usize]>::len).collect::<Vec<_>>()),
        );
    }

    // which product convention reproduces both public keys
    let reproduces = |rtl: bool| -> Result<bool> {
        let pa = triple(&p.pow(t.alice.m.value()), g, &p.pow(t.alice.n.value()), rtl)?;
        let pb = triple(&p.pow(t.bob.m.value()), g, &p.pow(t.bob.n.value()), rtl)?;
        Ok(pa == t.alice_public && pb == t.bob_public)
    };
    let (rtl, ltr) = (reproduces(true)?, reproduces(false)?);
    report.push(
        "composition convention",
        rtl,
        format!(
            "right-to-left (p q)(i) = p(q(i)) {}; left-to-right {}",
            if rtl { "reproduces both public keys" } else { "fails" },
            if ltr { "reproduces both public keys" } else { "fails" },
        ),
    );

    let scheme = DcpScheme::new(params, p.clone(), g.clone())?;
    let pa = scheme.public_key(&t.alice);
    let pb = scheme.public_key(&t.bob);
    report.push(
        "alice public",
        pa.0 == t.alice_public,
        if pa.0 == t.alice_public { "equals p^m g p^n" } else { "differs from p^m g p^n" },
    );
    report.push(
        "bob public",
        pb.0 == t.bob_public,
        if pb.0 == t.bob_public { "equals p^r g p^s" } else { "differs from p^r g p^s" },
    );

    if let Some((pm, pn)) = &t.alice_private_listing {
        let (ok, detail) = describe_private_listing(pm, "m", t.alice.m, p, g);
        report.push("alice private p^m", ok, detail);
        let (ok, detail) = describe_private_listing(pn, "n", t.alice.n, p, g);
        report.push("alice private p^n", ok, detail);
    }
    if let Some((pr, ps)) = &t.bob_private_listing {
        let duplicate = |x: &Permutation, which: usize| {
            t.alice_private_listing
                .as_ref()
                .filter(|(a, b)| if which == 0 { a == x } else { b == x })
                .map(|_| if which == 0 { "; identical to the alice p^m listing" } else { "; identical to the alice p^n listing" })
                .unwrap_or("")
        };
        let (ok, detail) = describe_private_listing(pr, "r", t.bob.m, p, g);
        report.push("bob private p^r", ok, detail + duplicate(pr, 0));
        let (ok, detail) = describe_private_listing(ps, "s", t.bob.n, p, g);
        report.push("bob private p^s", ok, detail + duplicate(ps, 1));
    }

    let k = p.pow(t.session.value());
    if let Some(listed) = &t.session_key {
        let ok = &k == listed;
        let shared = t.session.value().gcd(&omega);
        report.push(
            "session key",
            ok,
            format!(
                "{} p^t; gcd(t, omega) = {shared}, so k has order {}",
                if ok { "equals" } else { "differs from" },
                omega / shared
            ),
        );
    }

    let expected = scheme.encrypt_with_session(&PublicKey(t.bob_public.clone()), &t.alice, &t.message, t.session)?;
    let y1_ok = expected.y1 == t.ciphertext.y1;
    report.push(
        "y1",
        y1_ok,
        if y1_ok {
            "equals k^m g k^n".to_string()
        } else {
            "differs from k^m g k^n for the published m, n and t".to_string()
        },
    );
    let y2_ok = expected.y2 == t.ciphertext.y2;
    report.push(
        "y2",
        y2_ok,
        if y2_ok {
            "equals msg (k^m p_B k^n)".to_string()
        } else {
            "differs from msg (k^m p_B k^n) for the published m, n and t".to_string()
        },
    );

    let decrypted = scheme.decrypt(&t.bob, &t.ciphertext)?;
    let recovered_ok = decrypted == t.message;
    report.push(
        "decryption",
        recovered_ok,
        if recovered_ok {
            "y2 (p^r y1 p^s)^-1 equals the message"
        } else {
            "y2 (p^r y1 p^s)^-1 differs from the message"
        },
    );
    if let Some(listed) = &t.recovered {
        let ok = listed == &decrypted && listed == &t.message;
        report.push(
            "recovered message",
            ok,
            if ok { "equals the decryption and the original message" } else { "does not match" },
        );
    }
    Ok(report)
}
