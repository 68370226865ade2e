//! Python bindings: algebras, Takiff extensions, Fock spaces and the verifiers.
//!
//! Elements are dicts `{label: scalar}` with scalars as strings (`"1/2+3*i"`) or ints;
//! reports and characters come back as plain Python objects.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;
use serde_json::Value;

use stl_core::charfun::{fock_character, verify_factorization};
use stl_core::exactlin::{Scalar, SparseVector};
use stl_core::fockrep::{build_fock, verify_c_relations, verify_highest_weight, verify_lift_identities, FockModule};
use stl_core::report::Report;
use stl_core::superalg::json::{element_from_value, element_to_value, AlgebraJson};
use stl_core::superalg::{
    build_gl, build_gl_with_parities, centralizer_dim, principal_odd_data, verify_algebra, weyl_vector, Parity,
    RootDatum, SuperAlgebra,
};
use stl_core::takiff::{build_takiff, verify_takiff, TakiffAlgebra};
use stl_core::wfinite::{
    appendix_pairing_check, graded_nilradical, nilchar_from_e, solve_dual_elements, verify_skryabin_conditions, GradedNilradical,
    whittaker_vectors, GelfandGraev, NilCharacter,
};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_value(obj: &Bound<'_, PyAny>) -> PyResult<Value> {
    let json = obj.py().import("json")?;
    let text: String = json.call_method1("dumps", (obj,))?.extract()?;
    serde_json::from_str(&text).map_err(err)
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (v.to_string(),))?.unbind())
}

fn report_to_py(py: Python<'_>, r: &Report) -> PyResult<Py<PyAny>> {
    to_py(py, &serde_json::to_value(r).map_err(err)?)
}

fn scalar(obj: &Bound<'_, PyAny>) -> PyResult<Scalar> {
    if let Ok(n) = obj.extract::<i64>() {
        return Ok(Scalar::from_int(n));
    }
    let s: String = obj.extract()?;
    Scalar::parse(&s).map_err(err)
}

fn element(alg: &SuperAlgebra, obj: &Bound<'_, PyAny>) -> PyResult<SparseVector> {
    element_from_value(alg, &to_value(obj)?).map_err(err)
}

/// A Lie superalgebra given by structure constants, with an optional root datum.
#[pyclass(module = "stl", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct Algebra {
    alg: SuperAlgebra,
    rd: Option<RootDatum>,
}

impl Algebra {
    fn root_datum(&self) -> PyResult<&RootDatum> {
        self.rd.as_ref().ok_or_else(|| err(format!("{} has no root datum", self.alg.name())))
    }
}

#[pymethods]
impl Algebra {
    /// gl(m|n) with the even basis vectors first.
    #[staticmethod]
    fn gl(m: usize, n: usize) -> PyResult<Self> {
        let (alg, rd) = build_gl(m, n).map_err(err)?;
        Ok(Algebra { alg, rd: Some(rd) })
    }

    /// gl with the parities (0/1) of the standard basis vectors given in order.
    #[staticmethod]
    fn gl_with_parities(parities: Vec<u8>) -> PyResult<Self> {
        let p: Vec<Parity> = parities.into_iter().map(Parity::from_bit).collect();
        let (alg, rd) = build_gl_with_parities(&p).map_err(err)?;
        Ok(Algebra { alg, rd: Some(rd) })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let (alg, rd) = AlgebraJson::parse(text).and_then(|j| j.to_algebra()).map_err(err)?;
        Ok(Algebra { alg, rd })
    }

    fn to_json(&self) -> String {
        AlgebraJson::from_algebra(&self.alg, self.rd.as_ref()).to_string_pretty()
    }

    #[getter]
    fn name(&self) -> String {
        self.alg.name().to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.alg.dim()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.alg.labels().to_vec()
    }

    #[getter]
    fn parities(&self) -> Vec<u8> {
        self.alg.parities().iter().map(|p| p.bit()).collect()
    }

    fn bracket(&self, py: Python<'_>, x: &Bound<'_, PyAny>, y: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
        let v = self.alg.bracket(&element(&self.alg, x)?, &element(&self.alg, y)?);
        to_py(py, &element_to_value(&self.alg, &v))
    }

    fn form(&self, x: &Bound<'_, PyAny>, y: &Bound<'_, PyAny>) -> PyResult<String> {
        Ok(self.alg.form_value(&element(&self.alg, x)?, &element(&self.alg, y)?).to_text())
    }

    fn centralizer_dim(&self, x: &Bound<'_, PyAny>) -> PyResult<usize> {
        Ok(centralizer_dim(&self.alg, &element(&self.alg, x)?))
    }

    /// Super-antisymmetry, Jacobi and form checks over all basis triples.
    fn verify(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        report_to_py(py, &verify_algebra(&self.alg))
    }

    /// Principal odd data `{"e", "h", "f", "E", "F"}` for alternating parities.
    fn principal(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let pd = principal_odd_data(&self.alg, self.root_datum()?).map_err(err)?;
        let mut m = serde_json::Map::new();
        for (k, v) in [("E", &pd.big_e), ("F", &pd.big_f), ("e", &pd.e), ("f", &pd.f), ("h", &pd.h)] {
            m.insert(k.into(), element_to_value(&self.alg, v));
        }
        to_py(py, &Value::Object(m))
    }

    fn takiff(&self) -> PyResult<Takiff> {
        let rd = self.root_datum()?.clone();
        let (t, _) = build_takiff(&self.alg, &rd).map_err(err)?;
        Ok(Takiff { t, rd })
    }

    /// `ch M(ρ_c) = ch 𝔉_c · ch M_𝔰(0)` to the given height.
    #[pyo3(signature = (trunc, c = None))]
    fn verify_factorization(&self, py: Python<'_>, trunc: usize, c: Option<&Bound<'_, PyAny>>) -> PyResult<Py<PyAny>> {
        let rd = self.root_datum()?;
        let c = c.map(scalar).transpose()?.unwrap_or_else(Scalar::one);
        let lam = weyl_vector(rd).with_level(c);
        report_to_py(py, &verify_factorization(&self.alg, rd, &lam, trunc).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("Algebra({}, dim={})", self.alg.name(), self.alg.dim())
    }
}

/// The central extension of the Takiff superalgebra of a base algebra.
#[pyclass(module = "stl", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct Takiff {
    t: TakiffAlgebra,
    rd: RootDatum,
}

impl Takiff {
    /// Graded nilradical of the principal odd `h`, with duals solved, and `χ^e`.
    fn principal_setup(&self) -> PyResult<(GradedNilradical, NilCharacter)> {
        let pd = principal_odd_data(self.t.base(), &self.rd).map_err(err)?;
        let g = graded_nilradical(&self.t, &pd.h).map_err(err)?;
        let chi = nilchar_from_e(&self.t, &g, &pd.e).map_err(err)?;
        let xs = solve_dual_elements(&self.t, &g, &pd.e).map_err(err)?;
        Ok((g.with_duals(xs), chi))
    }
}

#[pymethods]
impl Takiff {
    #[getter]
    fn dim(&self) -> usize {
        self.t.total().dim()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.t.total().labels().to_vec()
    }

    fn base(&self) -> Algebra {
        Algebra { alg: self.t.base().clone(), rd: Some(self.rd.clone()) }
    }

    fn total(&self) -> Algebra {
        Algebra { alg: self.t.total().clone(), rd: None }
    }

    fn to_json(&self) -> String {
        self.t.to_json_with(Some(&self.rd)).to_string_pretty()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let j = AlgebraJson::parse(text).map_err(err)?;
        let (t, rd) = TakiffAlgebra::from_json_with_root_datum(&j).map_err(err)?;
        let rd = rd.ok_or_else(|| err("the file records no root datum"))?;
        Ok(Takiff { t, rd })
    }

    /// Algebra axioms on the extension plus the cocycle and decomposition checks.
    fn verify(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let (_, hat) = build_takiff(self.t.base(), &self.rd).map_err(err)?;
        report_to_py(py, &verify_takiff(&self.t, &hat, &self.rd))
    }

    /// `𝔉_c`, or the twist `𝔉_c^η` for `eta = {label: value}` on barred odd positive root vectors.
    #[pyo3(signature = (c, eta = None))]
    fn fock(&self, c: &Bound<'_, PyAny>, eta: Option<&Bound<'_, PyAny>>) -> PyResult<Fock> {
        let eta = match eta {
            None => None,
            Some(d) => {
                let v = element(self.t.total(), d)?;
                let domain: Vec<usize> = self
                    .rd
                    .positive_roots()
                    .filter(|r| r.parity.is_odd())
                    .map(|r| self.t.bar(r.vector()))
                    .collect();
                let values = v.iter().map(|(k, c)| (k, c.clone())).collect();
                Some(NilCharacter::new(self.t.total(), domain, values).map_err(err)?)
            }
        };
        let f = build_fock(&self.t, &self.rd, scalar(c)?, eta).map_err(err)?;
        Ok(Fock { f })
    }

    /// Skryabin conditions for the principal odd `e` and `χ^e`.
    fn skryabin(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let (g, chi) = self.principal_setup()?;
        report_to_py(py, &verify_skryabin_conditions(self.t.total(), &g, &chi).map_err(err)?)
    }

    /// Pairing identities on the Gelfand–Graev module for `χ^e` at level `c`.
    #[pyo3(signature = (max_weight, c = None))]
    fn appendix(&self, py: Python<'_>, max_weight: u64, c: Option<&Bound<'_, PyAny>>) -> PyResult<Py<PyAny>> {
        let c = c.map(scalar).transpose()?.unwrap_or_else(Scalar::one);
        let (g, chi) = self.principal_setup()?;
        let q = GelfandGraev::new(self.t.total(), &g, &chi, Some((self.t.z(), c))).map_err(err)?;
        report_to_py(py, &appendix_pairing_check(&q, &g, &chi, &q.vacuum_vec(), max_weight).map_err(err)?)
    }

    /// Dimensions of the Whittaker spaces for `χ^e` in the Gelfand–Graev module, truncations `0..=trunc`.
    #[pyo3(signature = (trunc, c = None))]
    fn whittaker_dims(&self, trunc: usize, c: Option<&Bound<'_, PyAny>>) -> PyResult<Vec<usize>> {
        let c = c.map(scalar).transpose()?.unwrap_or_else(Scalar::one);
        let (g, chi) = self.principal_setup()?;
        let q = GelfandGraev::new(self.t.total(), &g, &chi, Some((self.t.z(), c))).map_err(err)?;
        Ok((0..=trunc).map(|k| whittaker_vectors(&q, &chi, k).dim()).collect())
    }

    fn __repr__(&self) -> String {
        format!("Takiff({}, dim={})", self.t.base().name(), self.t.total().dim())
    }
}

/// A (possibly twisted) Fock space over a Takiff extension.
#[pyclass(module = "stl", frozen)]
pub struct Fock {
    f: FockModule,
}

#[pymethods]
impl Fock {
    #[getter]
    fn level(&self) -> String {
        self.f.level().to_text()
    }

    #[getter]
    fn clifford_letters(&self) -> usize {
        self.f.clifford_letters()
    }

    /// Weight of the vacuum as strings, level last.
    fn vacuum_weight(&self) -> Vec<String> {
        let w = self.f.weight(&self.f.vacuum());
        w.values.iter().chain([&w.level]).map(Scalar::to_text).collect()
    }

    fn verify_highest_weight(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        report_to_py(py, &verify_highest_weight(&self.f).map_err(err)?)
    }

    /// Module relations of `𝔰̄ + ℂz` and the lift identities on basis vectors up to `max_degree`.
    fn verify_lift(&self, py: Python<'_>, max_degree: usize) -> PyResult<Py<PyAny>> {
        let mut r = Report::new("fock-lift");
        r.absorb(verify_c_relations(&self.f, max_degree));
        r.absorb(verify_lift_identities(&self.f, max_degree));
        report_to_py(py, &r)
    }

    /// Weight census up to the given height, as the JSON character object.
    fn character(&self, py: Python<'_>, trunc: usize) -> PyResult<Py<PyAny>> {
        let ch = fock_character(&self.f, trunc).map_err(err)?;
        to_py(py, &serde_json::from_str(&ch.to_json()).map_err(err)?)
    }

    /// Whittaker vectors for `chi = {label: value}` on the given domain labels, up to `trunc`.
    fn whittaker(&self, py: Python<'_>, domain: Vec<String>, chi: &Bound<'_, PyAny>, trunc: usize) -> PyResult<Py<PyAny>> {
        let g = self.f.takiff().total();
        let dom = domain
            .iter()
            .map(|l| g.index_of(l).ok_or_else(|| err(format!("unknown basis element '{l}'"))))
            .collect::<PyResult<Vec<_>>>()?;
        let v = element(g, chi)?;
        let phi = NilCharacter::new(g, dom, v.iter().map(|(k, c)| (k, c.clone())).collect()).map_err(err)?;
        let ws = whittaker_vectors(&self.f, &phi, trunc);
        let vectors: Vec<Value> = ws
            .vectors
            .iter()
            .map(|v| serde_json::to_value(self.f.vector_to_json(v)).expect("terms serialize"))
            .collect();
        let out = serde_json::json!({
            "truncation": ws.truncation,
            "dim": ws.dim(),
            "previous_dim": ws.previous_dim,
            "stable": ws.stable,
            "full_check": ws.full_check,
            "vectors": vectors,
        });
        to_py(py, &out)
    }
}

/// Runs the command-line front end in-process and returns its exit code.
#[pyfunction]
fn run_cli(args: Vec<String>) -> i32 {
    stl_core::cli::run(std::iter::once("stl".to_string()).chain(args))
}

#[pymodule]
fn stl(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Algebra>()?;
    m.add_class::<Takiff>()?;
    m.add_class::<Fock>()?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
