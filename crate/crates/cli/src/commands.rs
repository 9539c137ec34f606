use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use permcrypt::analysis::{audit_dh, audit_elgamal, dlp_cycle_attack, AuditReport, DlpSolution};
use permcrypt::bench::{self, BenchReport, REFERENCE_SESSION_MS};
use permcrypt::lehmer::{decode_message, encode_message, unrank};
use permcrypt::{
    appendix, dh_keygen, dh_keypair, dh_shared_key, Ciphertext, DcpPrivateKey, DcpScheme, DpPrivateKey,
    DpScheme, Exponent, GroupParams, KeyFile, Permutation, PublicKey, Role, SeededRng,
};
use serde::Serialize;
use serde_json::json;

use crate::args::{BenchOp, Command, DimArgs, Format, GenRole, SchemeArgs, Variant, Vector};
use crate::exit::{CliError, CliResult, ANALYSIS, CANT_CREATE, IO, MISMATCH, NO_INPUT};

pub struct Ctx {
    pub seed: Option<u64>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Ctx {
    fn seed(&self) -> CliResult<u64> {
        if let Some(seed) = self.seed {
            return Ok(seed);
        }
        let mut bytes = [0u8; 8];
        getrandom::fill(&mut bytes).map_err(|e| CliError::new(IO, format!("OS entropy: {e}")))?;
        let seed = u64::from_le_bytes(bytes);
        eprintln!("note: no --seed or PERMPQC_SEED given; using OS entropy seed {seed}");
        Ok(seed)
    }

    fn rng(&self) -> CliResult<SeededRng> {
        Ok(SeededRng::new(self.seed()?))
    }

    fn emit(&self, text: &str) -> CliResult<()> {
        match &self.out {
            Some(path) => write_file(path, text),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn emit_json(&self, value: &impl Serialize) -> CliResult<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.emit(&text)
    }
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::new(CANT_CREATE, format!("{}: {e}", path.display())))
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::new(NO_INPUT, format!("{}: {e}", path.display())))
}

fn read_keyfile(path: &Path, role: Role) -> CliResult<KeyFile> {
    let file: KeyFile = read_file(path)?
        .parse()
        .map_err(|e: permcrypt::Error| CliError::from(e).with_context(path))?;
    file.expect_role(role).map_err(|e| CliError::from(e).with_context(path))?;
    Ok(file)
}

/// A key file of the given role, or a bare listing.
fn read_perm(path: &Path, role: Role, name: &str) -> CliResult<Permutation> {
    let text = read_file(path)?;
    if let Ok(file) = text.parse::<KeyFile>() {
        file.expect_role(role)?;
        return Ok(file.perm(name)?.clone());
    }
    text.parse().map_err(|e: permcrypt::Error| CliError::from(e).with_context(path))
}

fn require<'a>(path: &'a Option<PathBuf>, flag: &str) -> CliResult<&'a Path> {
    path.as_deref()
        .ok_or_else(|| CliError::usage(format!("--{flag} is required")))
}

fn params_of(dim: &DimArgs) -> CliResult<GroupParams> {
    Ok(if dim.extended {
        GroupParams::extended(dim.dim)?
    } else {
        GroupParams::new(dim.dim)?
    })
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn run(command: Command, ctx: &Ctx) -> CliResult<()> {
    match command {
        Command::Params(dim) => params(&dim, ctx),
        Command::Gen {
            role,
            dim,
            scheme,
            public_out,
        } => gen(role, &dim, &scheme, public_out.as_deref(), ctx),
        Command::Dh {
            generator,
            vector,
            seed_a,
            seed_b,
            alice_secret,
            alice_token,
            bob_secret,
            bob_token,
        } => match vector {
            Some(Vector::AppendixDh) => audit(Vector::AppendixDh, ctx),
            Some(other) => Err(CliError::usage(format!("dh cannot replay {other:?}"))),
            None => dh(
                require(&generator, "generator")?,
                [(seed_a, alice_secret, alice_token), (seed_b, bob_secret, bob_token)],
                ctx,
            ),
        },
        Command::Encrypt {
            scheme,
            vector,
            sender,
            receiver,
            message,
            message_int,
        } => match vector {
            Some(Vector::AppendixElgamal) => audit(Vector::AppendixElgamal, ctx),
            Some(other) => Err(CliError::usage(format!("encrypt cannot replay {other:?}"))),
            None => encrypt(
                &scheme,
                require(&sender, "sender")?,
                require(&receiver, "receiver")?,
                message.as_deref(),
                message_int.as_deref(),
                ctx,
            ),
        },
        Command::Decrypt { scheme, key, ciphertext } => decrypt(&scheme, &key, &ciphertext, ctx),
        Command::Rank { perm, file } => rank(perm.as_deref(), file.as_deref(), ctx),
        Command::Unrank { rank, dim, degree } => unrank_cmd(&rank, &dim, degree, ctx),
        Command::Attack {
            generator,
            token,
            vector,
        } => attack(generator.as_deref(), token.as_deref(), vector, ctx),
        Command::Audit { vector } => audit(vector, ctx),
        Command::Bench {
            op,
            iterations,
            dim,
            exponent_bits,
        } => bench_cmd(op, iterations as usize, &dim, exponent_bits, ctx),
    }
}

fn params(dim: &DimArgs, ctx: &Ctx) -> CliResult<()> {
    let params = params_of(dim)?;
    let primorials = params.primorials();
    if ctx.format == Format::Json {
        return ctx.emit_json(&json!({
            "dim": params.dim(),
            "degree": params.degree(),
            "primes": params.primes(),
            "partition_sums": params.partition_sums(),
            "primorials": primorials.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "omega": params.omega().to_string(),
        }));
    }
    ctx.emit(&format!(
        "dim = {}\ndegree = {}\nprimes = {}\npartition_sums = {}\nprimorials = {}\nomega = {}\n",
        params.dim(),
        params.degree(),
        join(params.primes()),
        join(params.partition_sums()),
        join(&primorials),
        params.omega()
    ))
}

/// Protocol context loaded from generator and auxiliary files.
enum Scheme {
    Dcp(DcpScheme),
    Dp(DpScheme),
}

struct Loaded {
    params: GroupParams,
    scheme: Scheme,
}

impl Loaded {
    fn new(args: &SchemeArgs) -> CliResult<Self> {
        let gen_file = read_keyfile(require(&args.generator, "generator")?, Role::Generator)?;
        let aux_file = read_keyfile(require(&args.auxiliary, "auxiliary")?, Role::Auxiliary)?;
        let params = gen_file.params.clone();
        if aux_file.params != params {
            return Err(CliError::new(
                crate::exit::DATA,
                "generator and auxiliary files use different parameters",
            ));
        }
        let p = gen_file.perm("p")?.clone();
        let g = aux_file.perm("g")?.clone();
        let scheme = match args.variant {
            Variant::Dcp => Scheme::Dcp(DcpScheme::new(&params, p, g)?),
            Variant::Dp => {
                let q = gen_file.perm("q").map_err(|_| {
                    CliError::usage("--variant dp needs a generator file with q (gen --variant dp)")
                })?;
                Scheme::Dp(DpScheme::new(&params, p, q.clone(), g)?)
            }
        };
        Ok(Self { params, scheme })
    }

    fn keygen(&self, rng: &mut SeededRng) -> ((Exponent, Exponent), PublicKey) {
        match &self.scheme {
            Scheme::Dcp(s) => {
                let (k, pk) = s.keygen(rng);
                ((k.m, k.n), pk)
            }
            Scheme::Dp(s) => {
                let (k, pk) = s.keygen(rng);
                ((k.m, k.n), pk)
            }
        }
    }

    fn private_key(&self, path: &Path) -> CliResult<(Exponent, Exponent)> {
        let file = read_keyfile(path, Role::ElGamalPrivate)?;
        self.same_params(&file, path)?;
        Ok((file.exponent("m")?, file.exponent("n")?))
    }

    fn same_params(&self, file: &KeyFile, path: &Path) -> CliResult<()> {
        if file.params != self.params {
            return Err(CliError::new(
                crate::exit::DATA,
                format!("{}: parameters differ from the generator file", path.display()),
            ));
        }
        Ok(())
    }
}

fn gen(role: GenRole, dim: &DimArgs, scheme: &SchemeArgs, public_out: Option<&Path>, ctx: &Ctx) -> CliResult<()> {
    match role {
        GenRole::Generator => {
            let params = params_of(dim)?;
            let mut rng = ctx.rng()?;
            let p = params.generate_generator(&mut rng);
            let mut file = KeyFile::new(params.clone(), Role::Generator).with_perm("p", p)?;
            if scheme.variant == Variant::Dp {
                file = file.with_perm("q", params.generate_generator(&mut rng))?;
            }
            ctx.emit(&file.to_string())
        }
        GenRole::Auxiliary => {
            let params = params_of(dim)?;
            let g = Permutation::random(params.degree(), &mut ctx.rng()?)?;
            ctx.emit(&KeyFile::new(params, Role::Auxiliary).with_perm("g", g)?.to_string())
        }
        GenRole::Dh => {
            let gen_file = read_keyfile(require(&scheme.generator, "generator")?, Role::Generator)?;
            let params = gen_file.params.clone();
            let pair = dh_keygen(&params, gen_file.perm("p")?, &mut ctx.rng()?)?;
            let secret = KeyFile::new(params.clone(), Role::DhSecret).with_exponent("secret", pair.secret)?;
            let token = KeyFile::new(params, Role::DhToken).with_perm("token", pair.token)?;
            emit_pair(&secret, &token, public_out, ctx)
        }
        GenRole::Elgamal => {
            let loaded = Loaded::new(scheme)?;
            let ((m, n), public) = loaded.keygen(&mut ctx.rng()?);
            let private = KeyFile::new(loaded.params.clone(), Role::ElGamalPrivate)
                .with_exponent("m", m)?
                .with_exponent("n", n)?;
            let public = KeyFile::new(loaded.params, Role::ElGamalPublic).with_perm("key", public.0)?;
            emit_pair(&private, &public, public_out, ctx)
        }
    }
}

fn emit_pair(private: &KeyFile, public: &KeyFile, public_out: Option<&Path>, ctx: &Ctx) -> CliResult<()> {
    match public_out {
        Some(path) => {
            ctx.emit(&private.to_string())?;
            write_file(path, &public.to_string())
        }
        None if ctx.out.is_some() => Err(CliError::usage("--out needs --public-out for key pairs")),
        None => ctx.emit(&format!("{private}\n{public}")),
    }
}

#[derive(Serialize)]
struct DhTranscript {
    dim: usize,
    alice_secret: Exponent,
    bob_secret: Exponent,
    alice_token: Permutation,
    bob_token: Permutation,
    alice_key: Permutation,
    bob_key: Permutation,
    keys_equal: bool,
}

impl std::fmt::Display for DhTranscript {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "# permcrypt dh transcript")?;
        writeln!(f, "dim = {}", self.dim)?;
        writeln!(f, "alice_secret = {}", self.alice_secret)?;
        writeln!(f, "bob_secret = {}", self.bob_secret)?;
        writeln!(f, "alice_token = {}", self.alice_token)?;
        writeln!(f, "bob_token = {}", self.bob_token)?;
        writeln!(f, "alice_key = {}", self.alice_key)?;
        writeln!(f, "bob_key = {}", self.bob_key)?;
        writeln!(f, "keys_equal = {}", self.keys_equal)
    }
}

type PartySource = (Option<u64>, Option<PathBuf>, Option<PathBuf>);

fn dh(generator: &Path, parties: [PartySource; 2], ctx: &Ctx) -> CliResult<()> {
    let gen_file = read_keyfile(generator, Role::Generator)?;
    let params = gen_file.params.clone();
    let p = gen_file.perm("p")?;
    params.require_generator(p)?;

    let needs_seed = parties.iter().any(|(seed, secret, _)| seed.is_none() && secret.is_none());
    let mut base = if needs_seed { Some(ctx.rng()?) } else { None };

    let mut secrets = Vec::new();
    let mut tokens = Vec::new();
    for (seed, secret_path, token_path) in parties {
        // draw the derived seed even when unused so party B's seed does not
        // depend on how party A was supplied
        let derived = base.as_mut().map(|rng| rng.next_u64());
        let pair = match secret_path {
            Some(path) => {
                let file = read_keyfile(&path, Role::DhSecret)?;
                dh_keypair(p, file.exponent("secret")?)
            }
            None => {
                let seed = seed.or(derived).expect("seed resolved above");
                dh_keygen(&params, p, &mut SeededRng::new(seed))?
            }
        };
        let token = match token_path {
            Some(path) => read_perm(&path, Role::DhToken, "token")?,
            None => pair.token,
        };
        if token.degree() != params.degree() {
            return Err(permcrypt::Error::DegreeMismatch {
                left: token.degree(),
                right: params.degree(),
            }
            .into());
        }
        secrets.push(pair.secret);
        tokens.push(token);
    }

    let alice_key = dh_shared_key(secrets[0], &tokens[1]);
    let bob_key = dh_shared_key(secrets[1], &tokens[0]);
    let keys_equal = alice_key == bob_key;
    let transcript = DhTranscript {
        dim: params.dim(),
        alice_secret: secrets[0],
        bob_secret: secrets[1],
        alice_token: tokens[0].clone(),
        bob_token: tokens[1].clone(),
        alice_key,
        bob_key,
        keys_equal,
    };
    match ctx.format {
        Format::Text => ctx.emit(&transcript.to_string())?,
        Format::Json => ctx.emit_json(&transcript)?,
    }
    if keys_equal {
        Ok(())
    } else {
        Err(CliError::new(MISMATCH, "shared keys differ"))
    }
}

fn encrypt(
    args: &SchemeArgs,
    sender: &Path,
    receiver: &Path,
    message: Option<&Path>,
    message_int: Option<&str>,
    ctx: &Ctx,
) -> CliResult<()> {
    let loaded = Loaded::new(args)?;
    let (m, n) = loaded.private_key(sender)?;
    let receiver_file = read_keyfile(receiver, Role::ElGamalPublic)?;
    loaded.same_params(&receiver_file, receiver)?;
    let receiver_key = PublicKey(receiver_file.perm("key")?.clone());

    let msg = match (message, message_int) {
        (Some(path), _) => {
            let file = read_keyfile(path, Role::Message)?;
            loaded.same_params(&file, path)?;
            file.perm("message")?.clone()
        }
        (None, Some(text)) => {
            let value: BigUint = text
                .trim()
                .parse()
                .map_err(|_| CliError::usage(format!("--message-int {text:?} is not a non-negative integer")))?;
            let encoded = encode_message(loaded.params.degree(), &value, Some(loaded.params.omega()))?;
            if encoded.exceeds_omega {
                eprintln!("warning: message integer is not below omega = {}", loaded.params.omega());
            }
            encoded.permutation
        }
        (None, None) => return Err(CliError::usage("--message or --message-int is required")),
    };

    let mut rng = ctx.rng()?;
    let ct = match &loaded.scheme {
        Scheme::Dcp(s) => s.encrypt(&receiver_key, &DcpPrivateKey { m, n }, &msg, &mut rng)?,
        Scheme::Dp(s) => s.encrypt(&receiver_key, &DpPrivateKey { m, n }, &msg, &mut rng)?,
    };
    let file = KeyFile::new(loaded.params, Role::Ciphertext)
        .with_perm("y1", ct.y1)?
        .with_perm("y2", ct.y2)?;
    ctx.emit(&file.to_string())
}

fn decrypt(args: &SchemeArgs, key: &Path, ciphertext: &Path, ctx: &Ctx) -> CliResult<()> {
    let loaded = Loaded::new(args)?;
    let (m, n) = loaded.private_key(key)?;
    let ct_file = read_keyfile(ciphertext, Role::Ciphertext)?;
    loaded.same_params(&ct_file, ciphertext)?;
    let ct = Ciphertext {
        y1: ct_file.perm("y1")?.clone(),
        y2: ct_file.perm("y2")?.clone(),
    };
    let msg = match &loaded.scheme {
        Scheme::Dcp(s) => s.decrypt(&DcpPrivateKey { m, n }, &ct)?,
        Scheme::Dp(s) => s.decrypt(&DpPrivateKey { m, n }, &ct)?,
    };
    let value = decode_message(&msg);
    let file = KeyFile::new(loaded.params, Role::Message).with_perm("message", msg.clone())?;
    match (&ctx.out, ctx.format) {
        (Some(path), Format::Text) => {
            write_file(path, &file.to_string())?;
            println!("{value}");
            Ok(())
        }
        (None, Format::Text) => ctx.emit(&file.to_string()),
        (_, Format::Json) => ctx.emit_json(&json!({ "message_int": value.to_string(), "message": msg })),
    }
}

fn rank(perm: Option<&str>, file: Option<&Path>, ctx: &Ctx) -> CliResult<()> {
    let p: Permutation = match (perm, file) {
        (Some(text), _) => text.parse()?,
        (None, Some(path)) => read_perm(path, Role::Message, "message")?,
        (None, None) => return Err(CliError::usage("--perm or --file is required")),
    };
    let r = decode_message(&p);
    match ctx.format {
        Format::Text => ctx.emit(&format!("{r}\n")),
        Format::Json => ctx.emit_json(&json!({ "degree": p.degree(), "rank": r.to_string() })),
    }
}

fn unrank_cmd(rank: &str, dim: &DimArgs, degree: Option<usize>, ctx: &Ctx) -> CliResult<()> {
    let r: BigUint = rank
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("rank {rank:?} is not a non-negative integer")))?;
    let (p, params) = match degree {
        Some(n) => (unrank(n, &r)?, None),
        None => {
            let params = params_of(dim)?;
            (unrank(params.degree(), &r)?, Some(params))
        }
    };
    match (ctx.format, params) {
        (Format::Json, _) => ctx.emit_json(&json!({ "rank": r.to_string(), "permutation": p })),
        (Format::Text, Some(params)) if ctx.out.is_some() => {
            ctx.emit(&KeyFile::new(params, Role::Message).with_perm("message", p)?.to_string())
        }
        (Format::Text, _) => ctx.emit(&format!("{p}\n")),
    }
}

fn attack(generator: Option<&Path>, token: Option<&Path>, vector: Option<Vector>, ctx: &Ctx) -> CliResult<()> {
    let targets: Vec<(&str, Permutation, Permutation)> = match vector {
        Some(Vector::AppendixDh) => vec![
            ("alice", appendix::dh_p(), appendix::dh_alice_token()),
            ("bob", appendix::dh_p(), appendix::dh_bob_token()),
        ],
        Some(other) => return Err(CliError::usage(format!("attack cannot replay {other:?}"))),
        None => {
            let gen_file = read_keyfile(
                generator.ok_or_else(|| CliError::usage("--generator is required"))?,
                Role::Generator,
            )?;
            let token = read_perm(
                token.ok_or_else(|| CliError::usage("--token is required"))?,
                Role::DhToken,
                "token",
            )?;
            vec![("token", gen_file.perm("p")?.clone(), token)]
        }
    };
    let mut solutions: Vec<(&str, DlpSolution)> = Vec::new();
    for (label, p, t) in &targets {
        let sol = dlp_cycle_attack(p, t).map_err(|e| CliError::new(ANALYSIS, format!("{label}: {e}")))?;
        solutions.push((label, sol));
    }
    match ctx.format {
        Format::Json => ctx.emit_json(
            &solutions
                .iter()
                .map(|(label, sol)| json!({ "target": label, "exponent": sol.exponent.to_string(), "modulus": sol.modulus.to_string() }))
                .collect::<Vec<_>>(),
        ),
        Format::Text if solutions.len() == 1 => ctx.emit(&format!("{}\n", solutions[0].1.exponent)),
        Format::Text => ctx.emit(
            &solutions
                .iter()
                .map(|(label, sol)| format!("{label} = {}\n", sol.exponent))
                .collect::<String>(),
        ),
    }
}

fn audit(vector: Vector, ctx: &Ctx) -> CliResult<()> {
    let params = appendix::params();
    let mut report: AuditReport = match vector {
        Vector::AppendixDh => audit_dh(&params, &appendix::dh_transcript())?,
        Vector::AppendixElgamal => audit_elgamal(&params, &appendix::elgamal_transcript())?,
    };
    report.annotate(appendix::source_of);
    match ctx.format {
        Format::Text => ctx.emit(&format!("{report}\n"))?,
        Format::Json => ctx.emit_json(&report)?,
    }
    if report.is_consistent() {
        Ok(())
    } else {
        let items: Vec<&str> = report.inconsistencies().map(|c| c.item.as_str()).collect();
        Err(CliError::new(
            MISMATCH,
            format!("published values not reproduced: {}", items.join(", ")),
        ))
    }
}

fn bench_cmd(op: BenchOp, iterations: usize, dim: &DimArgs, bits: u32, ctx: &Ctx) -> CliResult<()> {
    let params = params_of(dim)?;
    let mut rng = ctx.rng()?;
    let note = format!("{}-{}, dim {}", std::env::consts::OS, std::env::consts::ARCH, params.dim());
    let report = match op {
        BenchOp::DhSession => {
            params.omega_u128()?;
            let p = params.generate_generator(&mut rng);
            bench::measure("dh-session", iterations, &note, || {
                let a = dh_keygen(&params, &p, &mut rng).expect("valid generator");
                let b = dh_keygen(&params, &p, &mut rng).expect("valid generator");
                let ka = dh_shared_key(a.secret, &b.token);
                let kb = dh_shared_key(b.secret, &a.token);
                assert_eq!(ka, kb);
            })
        }
        BenchOp::Power => {
            let p = params.generate_generator(&mut rng);
            let top = 1u128 << (bits - 1);
            let mask = if bits == 128 { u128::MAX } else { (1u128 << bits) - 1 };
            let note = format!("{note}, {bits}-bit exponents");
            bench::measure("power", iterations, &note, || {
                let e = (rng.next_u128() & mask) | top;
                std::hint::black_box(p.pow(e));
            })
        }
        BenchOp::Compose => {
            let a = Permutation::random(params.degree(), &mut rng)?;
            let b = Permutation::random(params.degree(), &mut rng)?;
            bench::measure("compose", iterations, &note, || {
                std::hint::black_box(a.compose(&b).expect("same degree"));
            })
        }
    };
    emit_bench(&report, op == BenchOp::DhSession, ctx)
}

fn emit_bench(report: &BenchReport, compare: bool, ctx: &Ctx) -> CliResult<()> {
    let csv = format!("{}\n{}\n", BenchReport::CSV_HEADER, report.csv_row());
    if ctx.format == Format::Json {
        let mut value = serde_json::to_value(report)?;
        if compare {
            value["reference_ms"] = json!(REFERENCE_SESSION_MS);
            value["speedup_vs_reference"] = json!(report.speedup_vs_reference());
        }
        return ctx.emit_json(&value);
    }
    let mut text = format!("{report}\n");
    if compare {
        text.push_str(&format!(
            "reference: {REFERENCE_SESSION_MS} ms per session; measured mean {:.4} ms; {:.1}x faster\n",
            report.mean_ms(),
            report.speedup_vs_reference()
        ));
    }
    match &ctx.out {
        Some(path) => {
            write_file(path, &csv)?;
            print!("{text}");
        }
        None => print!("{text}{csv}"),
    }
    Ok(())
}
