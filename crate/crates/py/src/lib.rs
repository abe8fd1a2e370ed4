//! Python bindings. Matrices are lists of rows; entries may be ints or
//! "a/b" strings and come back as strings. A field is "Q" or an odd prime.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use maslov_witt_core::cli;
use maslov_witt_core::{maslov, sturm, symplectic, witt};
use maslov_witt_core::{ExactMatrix, FieldDescriptor, FieldElement};

fn err(e: maslov_witt_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field_of(f: &Bound<'_, PyAny>) -> PyResult<FieldDescriptor> {
    if let Ok(s) = f.extract::<String>() {
        return match s.as_str() {
            "Q" | "rationals" => Ok(FieldDescriptor::Rationals),
            _ => Err(PyValueError::new_err(format!("unknown field {s:?}; use \"Q\" or an odd prime"))),
        };
    }
    FieldDescriptor::prime(f.extract::<u64>()?).map_err(err)
}

fn matrix_of(field: FieldDescriptor, rows: &Bound<'_, PyAny>) -> PyResult<ExactMatrix> {
    let rows: Vec<Vec<Bound<'_, PyAny>>> = rows.extract()?;
    let parsed = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| match e.extract::<i64>() {
                    Ok(i) => Ok(FieldElement::from_i64(field, i)),
                    Err(_) => FieldElement::parse(field, &e.extract::<String>()?).map_err(err),
                })
                .collect::<PyResult<Vec<_>>>()
        })
        .collect::<PyResult<Vec<_>>>()?;
    ExactMatrix::from_rows(field, parsed).map_err(err)
}

#[pyclass(frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct Space {
    inner: symplectic::SymplecticSpace,
}

#[pymethods]
impl Space {
    #[new]
    fn new(field: &Bound<'_, PyAny>, g: usize) -> PyResult<Self> {
        Ok(Space { inner: symplectic::SymplecticSpace::new(field_of(field)?, g).map_err(err)? })
    }

    #[getter]
    fn genus(&self) -> usize {
        self.inner.genus()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    fn __repr__(&self) -> String {
        format!("Space({}, g={})", self.inner.field(), self.inner.genus())
    }
}

#[pyclass(frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct WittClass {
    inner: witt::WittClass,
}

#[pymethods]
impl WittClass {
    #[getter]
    fn rank_mod_2(&self) -> u8 {
        self.inner.rank_parity()
    }

    #[getter]
    fn disc(&self) -> String {
        self.inner.disc().to_string()
    }

    #[getter]
    fn signature(&self) -> Option<i64> {
        self.inner.signature()
    }

    /// {p: (rank_mod_2, disc)} for the nonzero second residues.
    #[getter]
    fn residues<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (p, rc) in self.inner.residues() {
            d.set_item(p.to_string(), (rc.rank_parity, rc.disc_representative(p).to_string()))?;
        }
        Ok(d)
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __add__(&self, other: &WittClass) -> PyResult<WittClass> {
        Ok(WittClass { inner: self.inner.add(&other.inner).map_err(err)? })
    }

    fn __neg__(&self) -> WittClass {
        WittClass { inner: self.inner.neg() }
    }

    fn mod_i2(&self) -> WittModI2 {
        WittModI2 { inner: self.inner.mod_i2() }
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyclass(frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct WittModI2 {
    inner: witt::WittModI2,
}

#[pymethods]
impl WittModI2 {
    #[getter]
    fn rank_mod_2(&self) -> u8 {
        self.inner.rank_parity()
    }

    #[getter]
    fn disc(&self) -> String {
        self.inner.disc().to_string()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyclass(frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct Lagrangian {
    inner: symplectic::Lagrangian,
}

#[pymethods]
impl Lagrangian {
    /// Span of the given columns, each of length 2g.
    #[new]
    fn new(space: &Space, columns: &Bound<'_, PyAny>) -> PyResult<Self> {
        let cols = matrix_of(space.inner.field(), columns)?;
        Ok(Lagrangian { inner: symplectic::Lagrangian::new(space.inner, &cols.transpose()).map_err(err)? })
    }

    #[staticmethod]
    fn standard(space: &Space) -> Self {
        Lagrangian { inner: symplectic::Lagrangian::standard(space.inner) }
    }

    #[staticmethod]
    fn dual(space: &Space) -> Self {
        Lagrangian { inner: symplectic::Lagrangian::dual(space.inner) }
    }

    fn basis(&self) -> Vec<Vec<String>> {
        self.inner.basis().row_strings()
    }

    fn transverse(&self, other: &Lagrangian) -> PyResult<bool> {
        symplectic::transverse(&self.inner, &other.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Lagrangian({:?})", self.basis())
    }
}

#[pyclass(frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct SymplecticMap {
    inner: symplectic::SymplecticMap,
}

#[pymethods]
impl SymplecticMap {
    #[new]
    fn new(space: &Space, rows: &Bound<'_, PyAny>) -> PyResult<Self> {
        let m = matrix_of(space.inner.field(), rows)?;
        Ok(SymplecticMap { inner: symplectic::SymplecticMap::new(space.inner, m).map_err(err)? })
    }

    #[staticmethod]
    fn upper(space: &Space, q: &Bound<'_, PyAny>) -> PyResult<Self> {
        let q = matrix_of(space.inner.field(), q)?;
        Ok(SymplecticMap { inner: symplectic::generator_upper(space.inner, &q).map_err(err)? })
    }

    #[staticmethod]
    fn lower(space: &Space, q: &Bound<'_, PyAny>) -> PyResult<Self> {
        let q = matrix_of(space.inner.field(), q)?;
        Ok(SymplecticMap { inner: symplectic::generator_lower(space.inner, &q).map_err(err)? })
    }

    #[staticmethod]
    fn h(space: &Space, x: &Bound<'_, PyAny>) -> PyResult<Self> {
        let x = matrix_of(space.inner.field(), x)?;
        Ok(SymplecticMap { inner: symplectic::generator_h(space.inner, &x).map_err(err)? })
    }

    #[staticmethod]
    fn m(space: &Space, q: &Bound<'_, PyAny>) -> PyResult<Self> {
        let q = matrix_of(space.inner.field(), q)?;
        Ok(SymplecticMap { inner: symplectic::generator_m(space.inner, &q).map_err(err)? })
    }

    fn matrix(&self) -> Vec<Vec<String>> {
        self.inner.matrix().row_strings()
    }

    fn __matmul__(&self, other: &SymplecticMap) -> PyResult<SymplecticMap> {
        Ok(SymplecticMap { inner: self.inner.compose(&other.inner).map_err(err)? })
    }

    fn inverse(&self) -> SymplecticMap {
        SymplecticMap { inner: self.inner.inverse() }
    }

    fn act(&self, l: &Lagrangian) -> PyResult<Lagrangian> {
        Ok(Lagrangian { inner: self.inner.act(&l.inner).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        format!("SymplecticMap({:?})", self.matrix())
    }
}

#[pyclass(frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct SturmWord {
    inner: sturm::SturmWord,
}

#[pymethods]
impl SturmWord {
    #[new]
    fn new(space: &Space, start_parity: u8, letters: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let letters = letters.iter().map(|l| matrix_of(space.inner.field(), l)).collect::<PyResult<Vec<_>>>()?;
        Ok(SturmWord { inner: sturm::SturmWord::new(space.inner, start_parity, letters).map_err(err)? })
    }

    #[getter]
    fn start_parity(&self) -> u8 {
        self.inner.start_parity()
    }

    fn letters(&self) -> Vec<Vec<Vec<String>>> {
        self.inner.letters().iter().map(ExactMatrix::row_strings).collect()
    }

    fn evaluate(&self) -> PyResult<SymplecticMap> {
        Ok(SymplecticMap { inner: self.inner.evaluate().map_err(err)? })
    }

    fn sylvester(&self) -> Vec<Vec<String>> {
        sturm::sylvester_of_sturm(&self.inner).gram().row_strings()
    }

    fn f(&self, m: u8, n: u8) -> PyResult<WittClass> {
        Ok(WittClass { inner: sturm::f_mn(&self.inner, m, n).map_err(err)? })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

/// Witt class of the symmetric matrix `rows`, regularized if degenerate.
#[pyfunction]
fn witt_class(field: &Bound<'_, PyAny>, rows: &Bound<'_, PyAny>) -> PyResult<WittClass> {
    let m = matrix_of(field_of(field)?, rows)?;
    let q = witt::SymmetricForm::new(m).map_err(err)?;
    Ok(WittClass { inner: witt::witt_class(&q) })
}

#[pyfunction]
fn maslov_triple(a: &Lagrangian, b: &Lagrangian, c: &Lagrangian) -> PyResult<WittClass> {
    Ok(WittClass { inner: maslov::maslov_triple(&a.inner, &b.inner, &c.inner).map_err(err)? })
}

/// Maslov index of the path through `nodes`.
#[pyfunction]
fn maslov_of_path(nodes: Vec<Lagrangian>) -> PyResult<WittClass> {
    let p = maslov::LagrangianPath::new(nodes.into_iter().map(|l| l.inner).collect()).map_err(err)?;
    Ok(WittClass { inner: maslov::maslov_of_path(&p).map_err(err)? })
}

#[pyfunction]
fn mu_cocycle(x: &SymplecticMap, y: &SymplecticMap) -> PyResult<WittClass> {
    Ok(WittClass { inner: sturm::mu_cocycle(&x.inner, &y.inner).map_err(err)? })
}

#[pyfunction]
fn phi(m: &SymplecticMap) -> PyResult<WittModI2> {
    Ok(WittModI2 { inner: sturm::phi(&m.inner).map_err(err)? })
}

#[pyfunction]
fn decompose(m: &SymplecticMap) -> PyResult<SturmWord> {
    Ok(SturmWord { inner: sturm::decompose(&m.inner).map_err(err)? })
}

/// Runs a scenario given as JSON text; returns the report as JSON text.
#[pyfunction]
#[pyo3(signature = (text, seed = 0))]
fn run_scenario(text: &str, seed: u64) -> PyResult<String> {
    let sc = cli::parse_scenario(text).map_err(err)?;
    Ok(cli::run(&sc, seed).render())
}

/// Runs a property family; returns (passed, cases).
#[pyfunction]
#[pyo3(signature = (family, cases, seed = 0))]
fn run_props(family: &str, cases: usize, seed: u64) -> PyResult<(usize, usize)> {
    let rep = cli::props::run_family(family, cases, seed).map_err(err)?;
    Ok((rep.passed(), rep.cases))
}

#[pymodule]
fn maslov_witt(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Space>()?;
    m.add_class::<WittClass>()?;
    m.add_class::<WittModI2>()?;
    m.add_class::<Lagrangian>()?;
    m.add_class::<SymplecticMap>()?;
    m.add_class::<SturmWord>()?;
    m.add_function(wrap_pyfunction!(witt_class, m)?)?;
    m.add_function(wrap_pyfunction!(maslov_triple, m)?)?;
    m.add_function(wrap_pyfunction!(maslov_of_path, m)?)?;
    m.add_function(wrap_pyfunction!(mu_cocycle, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(run_props, m)?)?;
    Ok(())
}
