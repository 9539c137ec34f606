use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "permcrypt", version, about = "Permutation-group key exchange and ciphers over S_n")]
pub struct Cli {
    /// RNG seed; falls back to PERMPQC_SEED, then OS entropy.
    #[arg(long, global = true, env = "PERMPQC_SEED")]
    pub seed: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Output file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Dcp,
    Dp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Vector {
    AppendixDh,
    AppendixElgamal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenRole {
    /// High-order generator p (and q for --variant dp).
    Generator,
    /// Random auxiliary permutation g.
    Auxiliary,
    /// Diffie-Hellman secret and token.
    Dh,
    /// ElGamal private and public key.
    Elgamal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchOp {
    DhSession,
    Power,
    Compose,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct DimArgs {
    #[arg(long, default_value_t = 16)]
    pub dim: usize,

    /// Accept dimensions up to 50.
    #[arg(long)]
    pub extended: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SchemeArgs {
    #[arg(long, value_enum, default_value_t = Variant::Dcp)]
    pub variant: Variant,

    /// Generator file (role generator).
    #[arg(long)]
    pub generator: Option<PathBuf>,

    /// Auxiliary file (role auxiliary).
    #[arg(long)]
    pub auxiliary: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the public parameters for a dimension.
    Params(DimArgs),

    /// Generate a generator, auxiliary permutation or key pair.
    Gen {
        #[arg(long, value_enum)]
        role: GenRole,
        #[command(flatten)]
        dim: DimArgs,
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Where to write the public half of a key pair.
        #[arg(long)]
        public_out: Option<PathBuf>,
    },

    /// Run a Diffie-Hellman exchange and check both keys agree.
    Dh {
        #[arg(long)]
        generator: Option<PathBuf>,
        #[arg(long, value_enum)]
        vector: Option<Vector>,
        #[arg(long)]
        seed_a: Option<u64>,
        #[arg(long)]
        seed_b: Option<u64>,
        #[arg(long)]
        alice_secret: Option<PathBuf>,
        #[arg(long)]
        alice_token: Option<PathBuf>,
        #[arg(long)]
        bob_secret: Option<PathBuf>,
        #[arg(long)]
        bob_token: Option<PathBuf>,
    },

    /// Encrypt a message for a receiver's public key.
    Encrypt {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long, value_enum)]
        vector: Option<Vector>,
        /// Sender private key file.
        #[arg(long)]
        sender: Option<PathBuf>,
        /// Receiver public key file.
        #[arg(long)]
        receiver: Option<PathBuf>,
        /// Message file (role message).
        #[arg(long, conflicts_with = "message_int")]
        message: Option<PathBuf>,
        /// Message as a non-negative integer, mapped by Lehmer rank.
        #[arg(long)]
        message_int: Option<String>,
    },

    /// Decrypt a ciphertext file.
    Decrypt {
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Receiver private key file.
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        ciphertext: PathBuf,
    },

    /// Lehmer rank of a permutation.
    Rank {
        /// Permutation listing, 1-based.
        #[arg(long, conflicts_with = "file")]
        perm: Option<String>,
        /// Message key file or bare listing.
        #[arg(long)]
        file: Option<PathBuf>,
    },

    /// Permutation with a given Lehmer rank.
    Unrank {
        rank: String,
        #[command(flatten)]
        dim: DimArgs,
        /// Arbitrary degree; the output is a bare listing.
        #[arg(long)]
        degree: Option<usize>,
    },

    /// Recover a DH secret from its token via cycle structure.
    Attack {
        #[arg(long)]
        generator: Option<PathBuf>,
        #[arg(long)]
        token: Option<PathBuf>,
        #[arg(long, value_enum)]
        vector: Option<Vector>,
    },

    /// Recompute a published transcript and report each value.
    Audit {
        #[arg(long, value_enum)]
        vector: Vector,
    },

    /// Time an operation.
    Bench {
        #[arg(long, value_enum, default_value_t = BenchOp::DhSession)]
        op: BenchOp,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        iterations: u64,
        #[command(flatten)]
        dim: DimArgs,
        /// Exponent size for the power benchmark.
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..=128))]
        exponent_bits: u32,
    },
}
