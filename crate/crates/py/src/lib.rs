//! Python bindings. Structured results come back as plain dicts and lists.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use fgx::adversary;
use fgx::bp::{self, TruthTable};
use fgx::editdist::{self, Bounded};
use fgx::matrix::{bits_to_string, BitMatrix};
use fgx::ov;
use fgx::pathcost::{self, CostConstants};
use fgx::reduction::{self, GadgetParams};

fn err(e: fgx::Error) -> PyErr {
    match e {
        fgx::Error::Io(_) | fgx::Error::TooLarge(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(format!("{}: {e}", e.kind())),
    }
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn matrix_rows(m: &BitMatrix) -> Vec<String> {
    (1..=m.rows()).map(|r| bits_to_string(m.row(r))).collect()
}

fn matrix_from_rows(rows: Vec<String>) -> PyResult<BitMatrix> {
    let rows = rows
        .iter()
        .map(|r| fgx::matrix::parse_bits(r))
        .collect::<fgx::Result<Vec<_>>>()
        .map_err(err)?;
    BitMatrix::from_rows(&rows).map_err(err)
}

fn gadget_params(marker_width: Option<usize>, sep_mult: usize) -> GadgetParams {
    GadgetParams { marker_width, sep_mult }
}

/// Layered non-deterministic branching program.
#[pyclass(name = "Nbp", module = "fgx", frozen)]
struct PyNbp(bp::Nbp);

#[pymethods]
impl PyNbp {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        bp::Nbp::parse(text).map(PyNbp).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (n, depth=3, width=2, density=0.5, seed=0))]
    fn random(n: usize, depth: usize, width: usize, density: f64, seed: u64) -> PyResult<Self> {
        bp::random_bp(n, depth, width, density, seed).map(PyNbp).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn depth(&self) -> usize {
        self.0.depth()
    }

    #[getter]
    fn width(&self) -> usize {
        self.0.width()
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    fn evaluate(&self, assignment: Vec<bool>) -> PyResult<bool> {
        self.0.evaluate(&assignment).map_err(err)
    }

    /// Truth table as a bit string, lexicographic with x1 most significant.
    #[pyo3(signature = (budget=1 << 24))]
    fn truth_table(&self, budget: usize) -> PyResult<String> {
        self.0.truth_table(budget).map(|t| t.to_ascii()).map_err(err)
    }

    fn satisfies_halves(&self, a: usize, b: usize) -> bool {
        self.0.satisfies_halves(a, b)
    }

    fn __repr__(&self) -> String {
        format!("Nbp(n={}, depth={}, width={}, size={})", self.0.n(), self.0.depth(), self.0.width(), self.0.size())
    }
}

/// Staircase matrix rows for a truth-table bit string.
#[pyfunction]
fn matrix_encode(tt: &str) -> PyResult<Vec<String>> {
    let tt = TruthTable::from_ascii(tt).map_err(err)?;
    Ok(matrix_rows(bp::matrix_encode(&tt).map_err(err)?.matrix()))
}

fn constants_for(l: usize, q: Option<(i64, i64, i64, i64)>, params: &GadgetParams) -> PyResult<CostConstants> {
    match q {
        Some((q, rho, s_g, t)) => CostConstants::new(q, rho, s_g, t, l).map_err(err),
        None => params.constants(l).map_err(err),
    }
}

/// Minimum path cost at offset `mu`. Without explicit `constants`
/// `(Q, rho, S_G, T)` the reduction's own constants are used.
#[pyfunction]
#[pyo3(signature = (rows, mu, constants=None))]
fn min_path_cost(rows: Vec<String>, mu: i64, constants: Option<(i64, i64, i64, i64)>) -> PyResult<i64> {
    let m = matrix_from_rows(rows)?;
    let c = constants_for(m.cols(), constants, &GadgetParams::default())?;
    pathcost::min_path_cost(&m, mu, &c).map_err(err)
}

/// "one", "zero" or "gap".
#[pyfunction]
#[pyo3(signature = (rows, constants=None))]
fn pp_edit_promise(rows: Vec<String>, constants: Option<(i64, i64, i64, i64)>) -> PyResult<String> {
    let m = matrix_from_rows(rows)?;
    let c = constants_for(m.cols(), constants, &GadgetParams::default())?;
    Ok(pathcost::pp_edit_promise(&m, &c).map_err(err)?.to_string())
}

/// Edit-distance instance built from a program.
#[pyclass(name = "ReductionInstance", module = "fgx", frozen)]
struct PyInstance(reduction::ReductionInstance);

#[pymethods]
impl PyInstance {
    #[new]
    #[pyo3(signature = (bp, marker_width=None, sep_mult=8))]
    fn new(bp: &PyNbp, marker_width: Option<usize>, sep_mult: usize) -> PyResult<Self> {
        reduction::build_instance(&bp.0, &gadget_params(marker_width, sep_mult))
            .map(PyInstance)
            .map_err(err)
    }

    #[getter]
    fn x(&self) -> Vec<u8> {
        self.0.x().as_slice().to_vec()
    }

    #[getter]
    fn y(&self) -> Vec<u8> {
        self.0.y().as_slice().to_vec()
    }

    #[getter]
    fn c_star(&self) -> i64 {
        self.0.c_star()
    }

    fn gadget(&self, a: usize) -> PyResult<Vec<u8>> {
        if a == 0 || a > self.0.l() {
            return Err(PyValueError::new_err(format!("gadget index {a} outside 1..={}", self.0.l())));
        }
        Ok(self.0.gadget(a).as_slice().to_vec())
    }

    fn cogadget(&self, b: usize) -> PyResult<Vec<u8>> {
        if b == 0 || b > self.0.l() {
            return Err(PyValueError::new_err(format!("gadget index {b} outside 1..={}", self.0.l())));
        }
        Ok(self.0.cogadget(b).as_slice().to_vec())
    }

    fn manifest(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.0.manifest())
    }

    /// Edit-distance verdict with its promise class.
    fn decide(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let d = py.detach(|| reduction::decide_via_editdist(&self.0)).map_err(err)?;
        to_py(py, &d)
    }

    /// Minimum coarse-alignment cost; equals `edit_distance(x, y) - 2|x|`.
    /// Small instances only.
    fn coarse_min(&self) -> PyResult<usize> {
        editdist::coarse_min_brute(&self.0).map_err(err)
    }
}

#[pyfunction]
fn edit_distance(py: Python<'_>, a: Vec<u8>, b: Vec<u8>) -> usize {
    py.detach(|| editdist::edit_distance_bitparallel(&a, &b))
}

/// Distance if it is at most `bound`, else None.
#[pyfunction]
fn edit_distance_banded(py: Python<'_>, a: Vec<u8>, b: Vec<u8>, bound: usize) -> Option<usize> {
    match py.detach(|| editdist::edit_distance_banded(&a, &b, bound)) {
        Bounded::Within(d) => Some(d),
        Bounded::Exceeds => None,
    }
}

#[pyfunction]
fn equalize_pad(a: Vec<u8>, b: Vec<u8>) -> PyResult<(Vec<u8>, Vec<u8>)> {
    let (x, y) = reduction::equalize_pad(&a, &b).map_err(err)?;
    Ok((x.as_slice().to_vec(), y.as_slice().to_vec()))
}

/// Orthogonal-vector instance of a DIMACS formula as `(U, V)` bit lists.
#[pyfunction]
fn ov_vectors(dimacs: &str) -> PyResult<(Vec<Vec<bool>>, Vec<Vec<bool>>)> {
    let f = ov::parse_dimacs(dimacs).map_err(err)?;
    let inst = ov::williams_vectors(&f).map_err(err)?;
    Ok((inst.u().to_vec(), inst.v().to_vec()))
}

#[pyfunction]
fn count_orthogonal(dimacs: &str) -> PyResult<u64> {
    let f = ov::parse_dimacs(dimacs).map_err(err)?;
    Ok(ov::count_orthogonal(&ov::williams_vectors(&f).map_err(err)?))
}

#[pyfunction]
fn sat_count(dimacs: &str) -> PyResult<u64> {
    ov::sat_count_brute(&ov::parse_dimacs(dimacs).map_err(err)?).map_err(err)
}

/// Coordinate `clause` of the vector for half-assignment `index` on side "U" or "V".
#[pyfunction]
fn vector_bit(dimacs: &str, side: &str, index: u64, clause: usize) -> PyResult<bool> {
    let f = ov::parse_dimacs(dimacs).map_err(err)?;
    let side: ov::Side = side.parse().map_err(err)?;
    ov::vector_bit(&f, side, index, clause).map_err(err)
}

/// Rows of a random family member; `family` is "X" or "Y".
#[pyfunction]
#[pyo3(signature = (k, t, family, seed=0))]
fn adversary_matrix(k: usize, t: usize, family: &str, seed: u64) -> PyResult<Vec<String>> {
    let m = match family {
        "X" | "x" => adversary::gen_x_matrix(k, t, seed),
        "Y" | "y" => adversary::gen_y_matrix(k, t, seed),
        _ => return Err(PyValueError::new_err(format!("family must be X or Y, got {family}"))),
    }
    .map_err(err)?;
    Ok(matrix_rows(&m.matrix))
}

#[pyfunction]
#[pyo3(signature = (k, t=0, budget=100_000, seed=0))]
fn relation_stats(py: Python<'_>, k: usize, t: usize, budget: u64, seed: u64) -> PyResult<Py<PyAny>> {
    let r = py.detach(|| adversary::relation_stats(k, t, budget, seed)).map_err(err)?;
    to_py(py, &r)
}

#[pyfunction]
fn dyck_check(s: &str, depth_bound: usize) -> PyResult<bool> {
    adversary::dyck_check(s, depth_bound).map_err(err)
}

/// Runs the verification suite and returns one dict per check.
#[pyfunction]
#[pyo3(signature = (n=2, seeds=20, seed=0, align_max_len=4))]
fn verify_all(py: Python<'_>, n: usize, seeds: usize, seed: u64, align_max_len: usize) -> PyResult<Py<PyAny>> {
    let opts = fgx::verify::VerifyOptions {
        n,
        seeds,
        seed,
        align_max_len,
        ..Default::default()
    };
    let checks = py.detach(|| fgx::verify::run_all(&opts)).map_err(err)?;
    to_py(py, &checks)
}

#[pymodule]
#[pyo3(name = "fgx")]
fn fgx_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNbp>()?;
    m.add_class::<PyInstance>()?;
    m.add_function(wrap_pyfunction!(matrix_encode, m)?)?;
    m.add_function(wrap_pyfunction!(min_path_cost, m)?)?;
    m.add_function(wrap_pyfunction!(pp_edit_promise, m)?)?;
    m.add_function(wrap_pyfunction!(edit_distance, m)?)?;
    m.add_function(wrap_pyfunction!(edit_distance_banded, m)?)?;
    m.add_function(wrap_pyfunction!(equalize_pad, m)?)?;
    m.add_function(wrap_pyfunction!(ov_vectors, m)?)?;
    m.add_function(wrap_pyfunction!(count_orthogonal, m)?)?;
    m.add_function(wrap_pyfunction!(sat_count, m)?)?;
    m.add_function(wrap_pyfunction!(vector_bit, m)?)?;
    m.add_function(wrap_pyfunction!(adversary_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(relation_stats, m)?)?;
    m.add_function(wrap_pyfunction!(dyck_check, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    Ok(())
}
