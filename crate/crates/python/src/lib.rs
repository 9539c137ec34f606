//! Python bindings. Permutations are 1-based, as in the Rust text form.

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use permcrypt::analysis::{audit_dh, audit_elgamal, dlp_cycle_attack};
use permcrypt::{appendix, lehmer, Ciphertext, DcpPrivateKey, DpPrivateKey, Exponent, PublicKey};

fn err(e: permcrypt::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(module = "pypermcrypt", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation(permcrypt::Permutation);

#[pymethods]
impl Permutation {
    #[new]
    fn new(images: Vec<usize>) -> PyResult<Self> {
        permcrypt::Permutation::from_images(&images).map(Self).map_err(err)
    }

    #[staticmethod]
    fn identity(n: usize) -> PyResult<Self> {
        permcrypt::Permutation::identity(n).map(Self).map_err(err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(err)
    }

    #[staticmethod]
    fn random(n: usize, rng: &mut SeededRng) -> PyResult<Self> {
        permcrypt::Permutation::random(n, &mut rng.0).map(Self).map_err(err)
    }

    /// Permutation with the given lexicographic rank.
    #[staticmethod]
    fn unrank(n: usize, rank: BigUint) -> PyResult<Self> {
        lehmer::unrank(n, &rank).map(Self).map_err(err)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn images(&self) -> Vec<usize> {
        self.0.images()
    }

    fn apply(&self, point: usize) -> PyResult<usize> {
        if point == 0 || point > self.0.degree() {
            return Err(PyValueError::new_err(format!("point {point} outside 1..={}", self.0.degree())));
        }
        Ok(self.0.apply(point))
    }

    /// `self ∘ other`: apply `other` first.
    fn compose(&self, other: &Self) -> PyResult<Self> {
        self.0.compose(&other.0).map(Self).map_err(err)
    }

    /// Apply `self` first, then `other`.
    fn then(&self, other: &Self) -> PyResult<Self> {
        self.0.then(&other.0).map(Self).map_err(err)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.compose(other)
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    fn pow(&self, exponent: u128) -> Self {
        Self(self.0.pow(exponent))
    }

    fn __pow__(&self, exponent: u128, _modulo: Option<Py<PyAny>>) -> Self {
        self.pow(exponent)
    }

    fn cycles(&self) -> Vec<Vec<usize>> {
        self.0.cycles().cycles().to_vec()
    }

    fn order(&self) -> BigUint {
        self.0.order().0
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    fn rank(&self) -> BigUint {
        lehmer::rank(&self.0)
    }

    fn __len__(&self) -> usize {
        self.0.degree()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation({:?})", self.0.images())
    }
}

#[pyclass(module = "pypermcrypt")]
pub struct SeededRng(permcrypt::SeededRng);

#[pymethods]
impl SeededRng {
    #[new]
    fn new(seed: u64) -> Self {
        Self(permcrypt::SeededRng::new(seed))
    }

    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    fn uniform_below(&mut self, bound: u64) -> PyResult<u64> {
        if bound == 0 {
            return Err(PyValueError::new_err("bound must be positive"));
        }
        Ok(self.0.uniform_below(bound))
    }
}

#[pyclass(module = "pypermcrypt", frozen)]
pub struct GroupParams(permcrypt::GroupParams);

#[pymethods]
impl GroupParams {
    #[new]
    #[pyo3(signature = (dim = 16, extended = false))]
    fn new(dim: usize, extended: bool) -> PyResult<Self> {
        let params = if extended {
            permcrypt::GroupParams::extended(dim)
        } else {
            permcrypt::GroupParams::new(dim)
        };
        params.map(Self).map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    #[getter]
    fn primes(&self) -> Vec<u64> {
        self.0.primes().to_vec()
    }

    #[getter]
    fn partition_sums(&self) -> Vec<u64> {
        self.0.partition_sums().to_vec()
    }

    #[getter]
    fn omega(&self) -> BigUint {
        self.0.omega().clone()
    }

    fn generate_generator(&self, rng: &mut SeededRng) -> Permutation {
        Permutation(self.0.generate_generator(&mut rng.0))
    }

    fn is_generator(&self, p: &Permutation) -> PyResult<bool> {
        self.0.validate_generator(&p.0).map(|c| c.valid).map_err(err)
    }
}

/// Returns `(secret, token)`.
#[pyfunction]
fn dh_keygen(params: &GroupParams, p: &Permutation, rng: &mut SeededRng) -> PyResult<(u128, Permutation)> {
    let pair = permcrypt::dh_keygen(&params.0, &p.0, &mut rng.0).map_err(err)?;
    Ok((pair.secret.value(), Permutation(pair.token)))
}

#[pyfunction]
fn dh_shared_key(secret: u128, other_token: &Permutation) -> Permutation {
    Permutation(permcrypt::dh_shared_key(Exponent(secret), &other_token.0))
}

/// ElGamal over the double coset problem; private keys are `(m, n)` tuples.
#[pyclass(module = "pypermcrypt", frozen)]
pub struct DcpScheme(permcrypt::DcpScheme);

#[pymethods]
impl DcpScheme {
    #[new]
    fn new(params: &GroupParams, p: &Permutation, g: &Permutation) -> PyResult<Self> {
        permcrypt::DcpScheme::new(&params.0, p.0.clone(), g.0.clone()).map(Self).map_err(err)
    }

    /// Returns `((m, n), public_key)`.
    fn keygen(&self, rng: &mut SeededRng) -> ((u128, u128), Permutation) {
        let (k, pk) = self.0.keygen(&mut rng.0);
        ((k.m.value(), k.n.value()), Permutation(pk.0))
    }

    fn public_key(&self, key: (u128, u128)) -> Permutation {
        Permutation(self.0.public_key(&dcp_key(key)).0)
    }

    /// Returns `(y1, y2)`.
    fn encrypt(
        &self,
        receiver: &Permutation,
        sender: (u128, u128),
        msg: &Permutation,
        rng: &mut SeededRng,
    ) -> PyResult<(Permutation, Permutation)> {
        let ct = self
            .0
            .encrypt(&PublicKey(receiver.0.clone()), &dcp_key(sender), &msg.0, &mut rng.0)
            .map_err(err)?;
        Ok((Permutation(ct.y1), Permutation(ct.y2)))
    }

    fn encrypt_with_session(
        &self,
        receiver: &Permutation,
        sender: (u128, u128),
        msg: &Permutation,
        t: u128,
    ) -> PyResult<(Permutation, Permutation)> {
        let ct = self
            .0
            .encrypt_with_session(&PublicKey(receiver.0.clone()), &dcp_key(sender), &msg.0, Exponent(t))
            .map_err(err)?;
        Ok((Permutation(ct.y1), Permutation(ct.y2)))
    }

    fn decrypt(&self, key: (u128, u128), y1: &Permutation, y2: &Permutation) -> PyResult<Permutation> {
        let ct = Ciphertext { y1: y1.0.clone(), y2: y2.0.clone() };
        self.0.decrypt(&dcp_key(key), &ct).map(Permutation).map_err(err)
    }
}

fn dcp_key((m, n): (u128, u128)) -> DcpPrivateKey {
    DcpPrivateKey { m: Exponent(m), n: Exponent(n) }
}

fn dp_key((m, n): (u128, u128)) -> DpPrivateKey {
    DpPrivateKey { m: Exponent(m), n: Exponent(n) }
}

/// ElGamal over the decomposition problem with generators `p`, `q`.
#[pyclass(module = "pypermcrypt", frozen)]
pub struct DpScheme(permcrypt::DpScheme);

#[pymethods]
impl DpScheme {
    #[new]
    fn new(params: &GroupParams, p: &Permutation, q: &Permutation, g: &Permutation) -> PyResult<Self> {
        permcrypt::DpScheme::new(&params.0, p.0.clone(), q.0.clone(), g.0.clone())
            .map(Self)
            .map_err(err)
    }

    fn keygen(&self, rng: &mut SeededRng) -> ((u128, u128), Permutation) {
        let (k, pk) = self.0.keygen(&mut rng.0);
        ((k.m.value(), k.n.value()), Permutation(pk.0))
    }

    fn public_key(&self, key: (u128, u128)) -> Permutation {
        Permutation(self.0.public_key(&dp_key(key)).0)
    }

    fn encrypt(
        &self,
        receiver: &Permutation,
        sender: (u128, u128),
        msg: &Permutation,
        rng: &mut SeededRng,
    ) -> PyResult<(Permutation, Permutation)> {
        let ct = self
            .0
            .encrypt(&PublicKey(receiver.0.clone()), &dp_key(sender), &msg.0, &mut rng.0)
            .map_err(err)?;
        Ok((Permutation(ct.y1), Permutation(ct.y2)))
    }

    fn decrypt(&self, key: (u128, u128), y1: &Permutation, y2: &Permutation) -> PyResult<Permutation> {
        let ct = Ciphertext { y1: y1.0.clone(), y2: y2.0.clone() };
        self.0.decrypt(&dp_key(key), &ct).map(Permutation).map_err(err)
    }
}

#[pyfunction]
fn encode_message(degree: usize, message: BigUint) -> PyResult<Permutation> {
    lehmer::encode_message(degree, &message, None)
        .map(|m| Permutation(m.permutation))
        .map_err(err)
}

#[pyfunction]
fn decode_message(p: &Permutation) -> BigUint {
    lehmer::decode_message(&p.0)
}

/// Exponent `e` with `p^e == target`, from cycle rotations.
#[pyfunction]
fn dlp_attack(p: &Permutation, target: &Permutation) -> PyResult<u128> {
    dlp_cycle_attack(&p.0, &target.0).map(|s| s.exponent).map_err(err)
}

/// Audits an embedded transcript (`"dh"` or `"elgamal"`); returns
/// `(consistent, inconsistent_items, report_text)`.
#[pyfunction]
fn audit_appendix(which: &str) -> PyResult<(bool, Vec<String>, String)> {
    let params = appendix::params();
    let mut report = match which {
        "dh" => audit_dh(&params, &appendix::dh_transcript()),
        "elgamal" => audit_elgamal(&params, &appendix::elgamal_transcript()),
        other => return Err(PyValueError::new_err(format!("unknown transcript {other:?}"))),
    }
    .map_err(err)?;
    report.annotate(appendix::source_of);
    let bad = report.inconsistencies().map(|c| c.item.clone()).collect();
    Ok((report.is_consistent(), bad, report.to_string()))
}

#[pymodule]
fn pypermcrypt(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}

/// Adds every class and function to `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Permutation>()?;
    m.add_class::<SeededRng>()?;
    m.add_class::<GroupParams>()?;
    m.add_class::<DcpScheme>()?;
    m.add_class::<DpScheme>()?;
    m.add_function(wrap_pyfunction!(dh_keygen, m)?)?;
    m.add_function(wrap_pyfunction!(dh_shared_key, m)?)?;
    m.add_function(wrap_pyfunction!(encode_message, m)?)?;
    m.add_function(wrap_pyfunction!(decode_message, m)?)?;
    m.add_function(wrap_pyfunction!(dlp_attack, m)?)?;
    m.add_function(wrap_pyfunction!(audit_appendix, m)?)?;
    Ok(())
}
