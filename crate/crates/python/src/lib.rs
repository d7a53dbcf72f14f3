//! Python bindings. Values cross the boundary in the library's text formats:
//! field specs, polynomials such as `x^3+a*x+1`, matrices as `1,0; 0,1`
//! and vectors as comma-separated elements.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use skewcodes_core::cli::{format_vector, parse_vector};
use skewcodes_core::codec::{self, EncodeMethod, MeggittMode, SyndromeTable, TABLE_BUDGET};
use skewcodes_core::codes::DISTANCE_BUDGET;
use skewcodes_core::duals;
use skewcodes_core::replicate;
use skewcodes_core::{Automorphism, EmbeddingData, Error, Field, Matrix, ProductTCode, SkewPoly};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Parse(_) | Error::InvalidField(_) => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn ring(field: &str, t: u32) -> Result<(Field, Automorphism), Error> {
    let f = Field::parse_spec(field)?;
    let th = Automorphism::new(&f, t);
    Ok((f, th))
}

/// `(m, q_f)` with `X^m - 1 = f q_f`.
#[pyfunction]
#[pyo3(signature = (field, poly, t = 0))]
fn period(field: &str, poly: &str, t: u32) -> PyResult<(u64, String)> {
    let (_, th) = ring(field, t).map_err(py_err)?;
    let pd = SkewPoly::parse(&th, poly).and_then(|p| p.monic()?.period()).map_err(py_err)?;
    Ok((pd.m, pd.q_f.to_string()))
}

/// The form `B` and its rank for components `polys` and an optional `C`.
#[pyfunction]
#[pyo3(signature = (field, polys, t = 0, c = None))]
fn b_matrix(field: &str, polys: Vec<String>, t: u32, c: Option<&str>) -> PyResult<(String, usize)> {
    let run = || -> Result<(String, usize), Error> {
        let (f, th) = ring(field, t)?;
        let fs = polys.iter().map(|p| SkewPoly::parse(&th, p)).collect::<Result<Vec<_>, _>>()?;
        let n = fs.iter().map(|p| p.degree().unwrap_or(0)).sum();
        let c = match c {
            Some(s) => Matrix::parse(&f, s)?,
            None => Matrix::identity(&f, n),
        };
        let ed = EmbeddingData::new(&fs, &c)?;
        Ok((ed.b().to_text(), ed.rank()))
    };
    run().map_err(py_err)
}

/// `(name, passed, detail)` for each pinned worked example.
#[pyfunction]
fn replicate_all() -> Vec<(String, bool, String)> {
    replicate::run_all().into_iter().map(|c| (c.name.to_string(), c.passed, c.detail)).collect()
}

/// A product code read from a descriptor.
#[pyclass(name = "Code")]
struct PyCode {
    inner: ProductTCode,
}

#[pymethods]
impl PyCode {
    #[new]
    fn new(descriptor: &str) -> PyResult<Self> {
        ProductTCode::parse_descriptor(descriptor).map(|inner| PyCode { inner }).map_err(py_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    fn descriptor(&self) -> String {
        self.inner.to_descriptor()
    }

    fn generator(&self) -> PyResult<String> {
        self.inner.generator_matrix().map(|m| m.to_text()).map_err(py_err)
    }

    fn min_distance(&self) -> PyResult<usize> {
        self.inner.linear_code().and_then(|c| c.min_distance(DISTANCE_BUDGET)).map_err(py_err)
    }

    #[pyo3(signature = (message, method = "poly"))]
    fn encode(&self, message: &str, method: &str) -> PyResult<String> {
        let method = match method {
            "poly" => EncodeMethod::Polynomial,
            "matrix" => EncodeMethod::Matrix,
            other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
        };
        let f = self.inner.field();
        let msg = parse_vector(f, message).map_err(py_err)?;
        codec::encode(&msg, &self.inner, method).map(|v| format_vector(f, &v)).map_err(py_err)
    }

    /// Corrects `received` and returns `(codeword, message)`.
    fn decode(&self, received: &str) -> PyResult<(String, String)> {
        let f = self.inner.field();
        let run = || -> Result<(String, String), Error> {
            let table = SyndromeTable::build(&self.inner, TABLE_BUDGET)?;
            let (cw, _) = codec::meggitt_decode(&parse_vector(f, received)?, &self.inner, &table, MeggittMode::PerComponent)?;
            let msg = codec::decode_plain(&cw, &self.inner)?;
            Ok((format_vector(f, &cw), format_vector(f, &msg)))
        };
        run().map_err(py_err)
    }

    /// Generator of the dual; `kind` is `euclidean`, `quasi` or `hermitian`.
    #[pyo3(signature = (kind = "euclidean"))]
    fn dual(&self, kind: &str) -> PyResult<String> {
        let run = || -> Result<String, Error> {
            let lin = self.inner.linear_code()?;
            let d = match kind {
                "euclidean" => duals::euclidean_dual_product(&self.inner)?.code,
                "quasi" => duals::quasi_euclidean_dual(&lin, &EmbeddingData::for_code(&self.inner)?)?,
                "hermitian" => {
                    let ctx = duals::HermitianContext::new(EmbeddingData::for_code(&self.inner)?)?;
                    duals::hermitian_dual(&self.inner, &ctx)?
                }
                other => return Err(Error::Parse(format!("unknown dual kind {other:?}"))),
            };
            Ok(d.generator().to_text())
        };
        run().map_err(py_err)
    }
}

#[pymodule]
fn skewcodes(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(period, m)?)?;
    m.add_function(wrap_pyfunction!(b_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(replicate_all, m)?)?;
    m.add_class::<PyCode>()?;
    Ok(())
}
