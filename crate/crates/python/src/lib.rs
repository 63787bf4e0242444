//! Python bindings. Results cross the boundary as JSON and come back as
//! plain dicts and lists.

use nucs::nu;
use nucs::oracle::{self, GridSpec, OracleResult, DEFAULT_GRID_POINTS};
use nucs::systems::{
    angular_form, effective_l, energy_closed_form, energy_rootfind, radial_form, spectrum_table,
    AngularCase, QuantumNumbers, SystemParams, UnitSystem, Wavefunction,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn case(name: &str) -> PyResult<AngularCase> {
    match name {
        "i" => Ok(AngularCase::I),
        "ii" => Ok(AngularCase::Ii),
        other => Err(PyValueError::new_err(format!(
            "case must be 'i' or 'ii', got {other:?}"
        ))),
    }
}

fn quantum(n: i64, ntilde: i64, m: i32, which: &str) -> PyResult<QuantumNumbers> {
    let n =
        u32::try_from(n).map_err(|_| err(format!("n must be a non-negative integer, got {n}")))?;
    let nt = u32::try_from(ntilde).map_err(|_| {
        err(format!(
            "ntilde must be a non-negative integer, got {ntilde}"
        ))
    })?;
    Ok(QuantumNumbers::new(n, nt, m).with_case(case(which)?))
}

/// One of the four potentials together with its unit system.
#[pyclass(frozen, module = "nucs_py")]
struct System {
    params: SystemParams,
    units: UnitSystem,
}

impl System {
    fn build(params: SystemParams, hbar: f64, mu: f64, e_charge: f64) -> PyResult<Self> {
        let units = UnitSystem { hbar, mu, e_charge };
        units.validate().map_err(err)?;
        params.validate().map_err(err)?;
        Ok(System { params, units })
    }

    fn grid(points: usize, r_max: Option<f64>) -> GridSpec {
        GridSpec {
            n_points: points,
            r_max,
        }
    }

    fn eigenvalues(result: OracleResult) -> Vec<f64> {
        result.richardson_estimate.unwrap_or(result.eigenvalues)
    }
}

#[pymethods]
impl System {
    #[staticmethod]
    #[pyo3(signature = (z=1.0, b=0.0, c=0.0, *, hbar=1.0, mu=1.0, e_charge=1.0))]
    fn coulomb_ring(z: f64, b: f64, c: f64, hbar: f64, mu: f64, e_charge: f64) -> PyResult<Self> {
        Self::build(SystemParams::CoulombRing { z, b, c }, hbar, mu, e_charge)
    }

    #[staticmethod]
    #[pyo3(signature = (eta, sigma, *, hbar=1.0, mu=1.0, e_charge=1.0))]
    fn hartmann(eta: f64, sigma: f64, hbar: f64, mu: f64, e_charge: f64) -> PyResult<Self> {
        Self::build(SystemParams::Hartmann { eta, sigma }, hbar, mu, e_charge)
    }

    #[staticmethod]
    #[pyo3(signature = (z, flux, g, *, hbar=1.0, mu=1.0, e_charge=1.0))]
    fn ab_monopole(z: f64, flux: f64, g: f64, hbar: f64, mu: f64, e_charge: f64) -> PyResult<Self> {
        Self::build(
            SystemParams::AbMonopole {
                z,
                flux,
                monopole_g: g,
            },
            hbar,
            mu,
            e_charge,
        )
    }

    #[staticmethod]
    #[pyo3(signature = (a, b=0.0, *, hbar=1.0, mu=1.0, e_charge=1.0))]
    fn oscillator(a: f64, b: f64, hbar: f64, mu: f64, e_charge: f64) -> PyResult<Self> {
        Self::build(SystemParams::RingOscillator { a, b }, hbar, mu, e_charge)
    }

    #[getter]
    fn name(&self) -> &'static str {
        self.params.name()
    }

    #[pyo3(signature = (ntilde, m, case="ii"))]
    fn effective_l(&self, ntilde: i64, m: i32, case: &str) -> PyResult<f64> {
        let qn = quantum(0, ntilde, m, case)?;
        effective_l(&self.params, qn.ntilde, m, qn.angular_case, &self.units).map_err(err)
    }

    /// Closed-form level as a dict with `n`, `ntilde`, `m`, `l_eff`, `energy`.
    #[pyo3(signature = (n, ntilde, m, case="ii"))]
    fn energy<'py>(
        &self,
        py: Python<'py>,
        n: i64,
        ntilde: i64,
        m: i32,
        case: &str,
    ) -> PyResult<Bound<'py, PyAny>> {
        let entry = energy_closed_form(&self.params, quantum(n, ntilde, m, case)?, &self.units)
            .map_err(err)?;
        to_py(py, &entry)
    }

    /// The same level found by root-finding the NU quantization condition.
    #[pyo3(signature = (n, ntilde, m, case="ii"))]
    fn energy_rootfind<'py>(
        &self,
        py: Python<'py>,
        n: i64,
        ntilde: i64,
        m: i32,
        case: &str,
    ) -> PyResult<Bound<'py, PyAny>> {
        let entry = energy_rootfind(&self.params, quantum(n, ntilde, m, case)?, &self.units)
            .map_err(err)?;
        to_py(py, &entry)
    }

    /// All levels with `n ≤ n_max`, `ñ ≤ ntilde_max` and `m` in `m_list`,
    /// sorted by energy. Returns `(entries, failures)`.
    #[pyo3(signature = (n_max, ntilde_max, m_list, case="ii"))]
    fn spectrum<'py>(
        &self,
        py: Python<'py>,
        n_max: i64,
        ntilde_max: i64,
        m_list: Vec<i32>,
        case: &str,
    ) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
        let which = self::case(case)?;
        let table = py
            .detach(|| spectrum_table(&self.params, n_max, ntilde_max, &m_list, &self.units, which))
            .map_err(err)?;
        Ok((to_py(py, &table.entries)?, to_py(py, &table.failures)?))
    }

    /// Lowest `count` finite-difference eigenvalues of the radial equation.
    #[pyo3(signature = (l, count, points=DEFAULT_GRID_POINTS, r_max=None, richardson=false))]
    fn radial_oracle(
        &self,
        py: Python<'_>,
        l: f64,
        count: usize,
        points: usize,
        r_max: Option<f64>,
        richardson: bool,
    ) -> PyResult<Vec<f64>> {
        let grid = Self::grid(points, r_max);
        py.detach(|| {
            if richardson {
                oracle::radial_eigen_richardson(&self.params, l, count, grid, &self.units)
            } else {
                oracle::radial_eigen(&self.params, l, count, grid, &self.units)
            }
        })
        .map(Self::eigenvalues)
        .map_err(err)
    }

    /// Lowest `count` finite-difference eigenvalues `l(l+1)` of the polar equation.
    #[pyo3(signature = (m, count, points=DEFAULT_GRID_POINTS, richardson=false))]
    fn angular_oracle(
        &self,
        py: Python<'_>,
        m: i32,
        count: usize,
        points: usize,
        richardson: bool,
    ) -> PyResult<Vec<f64>> {
        let grid = Self::grid(points, None);
        py.detach(|| {
            if richardson {
                oracle::angular_eigen_richardson(&self.params, m, count, grid, &self.units)
            } else {
                oracle::angular_eigen(&self.params, m, count, grid, &self.units)
            }
        })
        .map(Self::eigenvalues)
        .map_err(err)
    }

    /// Normalized eigenfunction sampled at each `(r, theta, phi)` triple.
    #[pyo3(signature = (n, ntilde, m, points, case="ii"))]
    fn wavefunction<'py>(
        &self,
        py: Python<'py>,
        n: i64,
        ntilde: i64,
        m: i32,
        points: Vec<(f64, f64, f64)>,
        case: &str,
    ) -> PyResult<Bound<'py, PyList>> {
        let wf = Wavefunction::new(&self.params, quantum(n, ntilde, m, case)?, &self.units)
            .map_err(err)?;
        let samples: Vec<_> = points.iter().map(|&(r, t, p)| wf.sample(r, t, p)).collect();
        to_py(py, &samples)?
            .cast_into::<PyList>()
            .map_err(Into::into)
    }

    /// Full NU derivation for the radial equation at `(l, energy)`, or for
    /// the polar equation at `(m, l)` when `energy` is omitted.
    #[pyo3(signature = (l, energy=None, m=0))]
    fn trace<'py>(
        &self,
        py: Python<'py>,
        l: f64,
        energy: Option<f64>,
        m: i32,
    ) -> PyResult<Bound<'py, PyAny>> {
        let form = match energy {
            Some(e) => radial_form(&self.params, l, e, &self.units),
            None => angular_form(&self.params, m, l, &self.units),
        }
        .map_err(err)?;
        to_py(py, &nu::trace(&form).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("System({:?})", self.params)
    }
}

#[pymodule]
fn nucs_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<System>()?;
    m.add("DEFAULT_GRID_POINTS", DEFAULT_GRID_POINTS)?;
    Ok(())
}
