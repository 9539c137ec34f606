//! Versioned, line-oriented key file format.
//!
//! ```text
//! # permcrypt key file
//! format_version = 1
//! role = dh_token
//! dim = 16
//! degree = 381
//! omega = 32589158477190044730
//! perm token = 162 132 1 269 ...
//! exponent secret = 16967309044902469564
//! ```
//!
//! Permutations are 1-based one-line listings; exponents are decimal.
//! Entries keep their order, so parsing and re-serializing a canonical file
//! reproduces it byte for byte.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::GroupParams;
use crate::perm::Permutation;
use crate::protocols::Exponent;

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "# permcrypt key file";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Generator,
    Auxiliary,
    DhSecret,
    DhToken,
    ElGamalPrivate,
    ElGamalPublic,
    Ciphertext,
    Message,
}

impl Role {
    pub const ALL: [Role; 8] = [
        Role::Generator,
        Role::Auxiliary,
        Role::DhSecret,
        Role::DhToken,
        Role::ElGamalPrivate,
        Role::ElGamalPublic,
        Role::Ciphertext,
        Role::Message,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Role::Generator => "generator",
            Role::Auxiliary => "auxiliary",
            Role::DhSecret => "dh_secret",
            Role::DhToken => "dh_token",
            Role::ElGamalPrivate => "elgamal_private",
            Role::ElGamalPublic => "elgamal_public",
            Role::Ciphertext => "ciphertext",
            Role::Message => "message",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Role::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown role {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Perm(Permutation),
    Exponent(Exponent),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyFile {
    pub params: GroupParams,
    pub role: Role,
    pub entries: Vec<Entry>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl KeyFile {
    pub fn new(params: GroupParams, role: Role) -> Self {
        Self {
            params,
            role,
            entries: Vec::new(),
        }
    }

    pub fn with_perm(mut self, name: &str, p: Permutation) -> Result<Self> {
        if p.degree() != self.params.degree() {
            return Err(Error::DegreeMismatch {
                left: p.degree(),
                right: self.params.degree(),
            });
        }
        self.push(name, Value::Perm(p))?;
        Ok(self)
    }

    pub fn with_exponent(mut self, name: &str, e: Exponent) -> Result<Self> {
        self.push(name, Value::Exponent(e))?;
        Ok(self)
    }

    fn push(&mut self, name: &str, value: Value) -> Result<()> {
        if !valid_name(name) {
            return Err(Error::Parse(format!("invalid entry name {name:?}")));
        }
        if self.entries.iter().any(|e| e.name == name) {
            return Err(Error::Parse(format!("duplicate entry {name:?}")));
        }
        self.entries.push(Entry {
            name: name.to_string(),
            value,
        });
        Ok(())
    }

    pub fn perm(&self, name: &str) -> Result<&Permutation> {
        match self.entries.iter().find(|e| e.name == name).map(|e| &e.value) {
            Some(Value::Perm(p)) => Ok(p),
            _ => Err(Error::Parse(format!(
                "{} file has no permutation {name:?}",
                self.role
            ))),
        }
    }

    pub fn exponent(&self, name: &str) -> Result<Exponent> {
        match self.entries.iter().find(|e| e.name == name).map(|e| &e.value) {
            Some(Value::Exponent(x)) => Ok(*x),
            _ => Err(Error::Parse(format!(
                "{} file has no exponent {name:?}",
                self.role
            ))),
        }
    }

    pub fn expect_role(&self, role: Role) -> Result<&Self> {
        if self.role != role {
            return Err(Error::Parse(format!("expected a {role} file, found {}", self.role)));
        }
        Ok(self)
    }
}

impl fmt::Display for KeyFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{MAGIC}")?;
        writeln!(f, "format_version = {FORMAT_VERSION}")?;
        writeln!(f, "role = {}", self.role)?;
        writeln!(f, "dim = {}", self.params.dim())?;
        writeln!(f, "degree = {}", self.params.degree())?;
        writeln!(f, "omega = {}", self.params.omega())?;
        for entry in &self.entries {
            match &entry.value {
                Value::Perm(p) => writeln!(f, "perm {} = {p}", entry.name)?,
                Value::Exponent(e) => writeln!(f, "exponent {} = {e}", entry.name)?,
            }
        }
        Ok(())
    }
}

impl FromStr for KeyFile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut version = None;
        let mut role = None;
        let mut dim = None;
        let mut degree = None;
        let mut omega = None;
        let mut raw_entries = Vec::new();

        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
            let (key, value) = line.split_once('=').ok_or_else(|| bad("expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            let number = |v: &str| v.parse::<usize>().map_err(|_| bad("expected a number"));
            match key.split_once(' ') {
                None => match key {
                    "format_version" => version = Some(number(value)?),
                    "role" => role = Some(value.parse::<Role>()?),
                    "dim" => dim = Some(number(value)?),
                    "degree" => degree = Some(number(value)?),
                    "omega" => omega = Some(value.to_string()),
                    other => return Err(bad(&format!("unknown key {other:?}"))),
                },
                Some((kind, name)) => {
                    let value = match kind {
                        "perm" => Value::Perm(value.parse()?),
                        "exponent" => Value::Exponent(value.parse()?),
                        other => return Err(bad(&format!("unknown entry kind {other:?}"))),
                    };
                    raw_entries.push((name.trim().to_string(), value));
                }
            }
        }

        let version = version.ok_or_else(|| Error::Parse("missing format_version".into()))?;
        if version != FORMAT_VERSION as usize {
            return Err(Error::Parse(format!("unsupported format_version {version}")));
        }
        let role = role.ok_or_else(|| Error::Parse("missing role".into()))?;
        let dim = dim.ok_or_else(|| Error::Parse("missing dim".into()))?;
        let params = GroupParams::extended(dim)?;
        if degree.is_some_and(|d| d != params.degree()) {
            return Err(Error::Parse(format!(
                "degree {} inconsistent with dim {dim}",
                degree.unwrap()
            )));
        }
        if omega.as_ref().is_some_and(|w| *w != params.omega().to_string()) {
            return Err(Error::Parse(format!("omega inconsistent with dim {dim}")));
        }

        let mut file = KeyFile::new(params, role);
        for (name, value) in raw_entries {
            file = match value {
                Value::Perm(p) => file.with_perm(&name, p)?,
                Value::Exponent(e) => file.with_exponent(&name, e)?,
            };
        }
        Ok(file)
    }
}
