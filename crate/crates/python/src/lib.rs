//! Python bindings. Angles are radians throughout; library errors surface as
//! `ValueError`.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use su2limits::majorana::{self, DEFAULT_ORBIT_TOL};
use su2limits::{
    orbits, stokes, su2rot, EtaBranch, EulerAngles, MajoranaConstellation, SpherePoint,
};

fn err(e: su2limits::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Pure N-photon two-mode state; amplitude `n` belongs to `|n, N-n>`.
#[pyclass(name = "TwoModeState", module = "pysu2limits", frozen)]
struct PyState(su2limits::TwoModeState);

#[pymethods]
impl PyState {
    /// Normalizes `amplitudes` (length `n_photons + 1`) and fixes the global
    /// phase.
    #[new]
    fn new(n_photons: usize, amplitudes: Vec<Complex64>) -> PyResult<Self> {
        su2limits::TwoModeState::from_amplitudes(n_photons, &amplitudes)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn from_real(amplitudes: Vec<f64>) -> PyResult<Self> {
        if amplitudes.is_empty() {
            return Err(PyValueError::new_err("empty amplitude list"));
        }
        su2limits::TwoModeState::from_real(amplitudes.len() - 1, &amplitudes)
            .map(Self)
            .map_err(err)
    }

    /// Parses the `N; re,im; ...` text form.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(err)
    }

    #[staticmethod]
    fn coherent(n_photons: usize, theta: f64, phi: f64) -> PyResult<Self> {
        su2limits::TwoModeState::su2_coherent(n_photons, theta, phi)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn noon(n_photons: usize) -> PyResult<Self> {
        su2limits::TwoModeState::noon(n_photons)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (n_photons, plus = true))]
    fn eta(n_photons: usize, plus: bool) -> PyResult<Self> {
        let branch = if plus {
            EtaBranch::Plus
        } else {
            EtaBranch::Minus
        };
        su2limits::TwoModeState::eta(n_photons, branch)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn fock(n_photons: usize, n_r: usize) -> PyResult<Self> {
        su2limits::TwoModeState::fock(n_photons, n_r)
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn n_photons(&self) -> usize {
        self.0.n_photons()
    }

    #[getter]
    fn amplitudes(&self) -> Vec<Complex64> {
        self.0.amplitudes().to_vec()
    }

    fn fidelity(&self, other: &PyState) -> PyResult<f64> {
        self.0.fidelity(&other.0).map_err(err)
    }

    fn stokes_vector(&self) -> PyResult<[f64; 3]> {
        stokes::stokes_vector(&self.0).map_err(err)
    }

    /// 3x3 Stokes covariance matrix as nested lists.
    fn covariance(&self) -> PyResult<[[f64; 3]; 3]> {
        stokes::covariance(&self.0).map(|g| g.gamma).map_err(err)
    }

    /// `(lambdas, axes)`, ascending eigenvalues and their unit eigenvectors.
    fn principal_variances(&self) -> PyResult<([f64; 3], [[f64; 3]; 3])> {
        let pv = stokes::principal_variances(&stokes::covariance(&self.0).map_err(err)?);
        Ok((pv.lambdas, pv.axes))
    }

    fn directional_variance(&self, direction: [f64; 3]) -> PyResult<f64> {
        stokes::directional_variance(&self.0, &direction).map_err(err)
    }

    /// `exp(i alpha s3) exp(i beta s2) exp(i gamma s3)` applied to the state.
    fn rotate(&self, alpha: f64, beta: f64, gamma: f64) -> PyResult<Self> {
        su2rot::apply_rotation(&self.0, &EulerAngles::new(alpha, beta, gamma))
            .map(Self)
            .map_err(err)
    }

    /// Majorana points as `(theta, phi)` pairs.
    fn constellation(&self) -> PyResult<Vec<(f64, f64)>> {
        majorana::to_constellation(&self.0)
            .map(|c| points(&c))
            .map_err(err)
    }

    /// Canonical constellation and the Euler angles that produce it.
    fn canonical_constellation(&self) -> PyResult<(Vec<(f64, f64)>, (f64, f64, f64))> {
        let (c, e) = majorana::canonicalize(&majorana::to_constellation(&self.0).map_err(err)?);
        Ok((points(&c), (e.alpha, e.beta, e.gamma)))
    }

    fn __len__(&self) -> usize {
        self.0.amplitudes().len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("TwoModeState.parse({:?})", self.0.to_string())
    }
}

fn points(c: &MajoranaConstellation) -> Vec<(f64, f64)> {
    c.sorted().points.iter().map(|p| (p.theta, p.phi)).collect()
}

#[pyfunction]
fn from_constellation(points: Vec<(f64, f64)>) -> PyResult<PyState> {
    let c = MajoranaConstellation::new(
        points
            .into_iter()
            .map(|(t, p)| SpherePoint::new(t, p))
            .collect(),
    );
    majorana::from_constellation(&c).map(PyState).map_err(err)
}

/// `("same", (alpha, beta, gamma))`, `("mirror_only", None)` or
/// `("different", None)`.
#[pyfunction]
#[pyo3(signature = (a, b, tol = DEFAULT_ORBIT_TOL))]
fn same_orbit(
    a: &PyState,
    b: &PyState,
    tol: f64,
) -> PyResult<(&'static str, Option<(f64, f64, f64)>)> {
    let relation = majorana::same_orbit(&a.0, &b.0, tol).map_err(err)?;
    let witness = match relation {
        su2limits::OrbitRelation::Same(e) => Some((e.alpha, e.beta, e.gamma)),
        _ => None,
    };
    Ok((relation.label(), witness))
}

/// Rotation matrix acting on Stokes vectors for the given Euler angles.
#[pyfunction]
fn induced_so3(alpha: f64, beta: f64, gamma: f64) -> [[f64; 3]; 3] {
    su2rot::induced_so3(&EulerAngles::new(alpha, beta, gamma))
}

/// Per-inequality `(value, limit, margin, pass)` plus `all_pass`.
#[pyfunction]
fn check_bounds<'py>(
    py: Python<'py>,
    lambdas: [f64; 3],
    n_photons: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let report = stokes::check_bounds(&lambdas, n_photons);
    let out = PyDict::new(py);
    let names = [
        "det_lower",
        "det_upper",
        "minor_lower",
        "minor_upper",
        "trace_lower",
        "trace_upper",
    ];
    for (name, c) in names.iter().zip(report.checks()) {
        out.set_item(*name, (c.value, c.limit, c.margin, c.pass))?;
    }
    out.set_item("all_pass", report.all_pass())?;
    Ok(out)
}

#[pyfunction]
fn orbit_state_n2(theta: f64) -> PyResult<PyState> {
    orbits::orbit_state_n2(theta).map(PyState).map_err(err)
}

#[pyfunction]
fn orbit_state_n3(theta2: f64, theta3: f64, phi3: f64) -> PyResult<PyState> {
    orbits::orbit_state_n3(theta2, theta3, phi3)
        .map(PyState)
        .map_err(err)
}

type SweepRow = (Vec<f64>, [f64; 3], f64);

fn sweep_rows(cloud: &su2limits::VariancePointCloud) -> Vec<SweepRow> {
    cloud
        .samples
        .iter()
        .map(|s| {
            (
                s.params.iter().flatten().copied().collect(),
                s.lambdas,
                s.trace,
            )
        })
        .collect()
}

/// `(params, lambdas, trace)` per grid point. The GIL is released while the
/// sweep runs.
#[pyfunction]
fn sweep_n2(py: Python<'_>, resolution: usize) -> PyResult<Vec<SweepRow>> {
    let cloud = py.detach(|| orbits::sweep_n2(resolution)).map_err(err)?;
    Ok(sweep_rows(&cloud))
}

#[pyfunction]
#[pyo3(signature = (res_theta = 64, res_phi = 32))]
fn sweep_n3(py: Python<'_>, res_theta: usize, res_phi: usize) -> PyResult<Vec<SweepRow>> {
    let cloud = py
        .detach(|| orbits::sweep_n3(res_theta, res_phi))
        .map_err(err)?;
    Ok(sweep_rows(&cloud))
}

#[pymodule]
fn pysu2limits(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyState>()?;
    m.add_function(wrap_pyfunction!(from_constellation, m)?)?;
    m.add_function(wrap_pyfunction!(same_orbit, m)?)?;
    m.add_function(wrap_pyfunction!(induced_so3, m)?)?;
    m.add_function(wrap_pyfunction!(check_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_state_n2, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_state_n3, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_n2, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_n3, m)?)?;
    Ok(())
}
