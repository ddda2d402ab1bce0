//! Python module `ince_wave`.

use ince_core::figures::{self, FigureConfig};
use ince_core::ince;
use ince_core::params::{self, Family, LaserPlasmaConfig, PlasmaSpec};
use ince_core::physics::{self, MassShell, Root, Sign, SpacetimePoint, WaveOptions};
use ince_core::specialfns;
use ince_core::tridiag;
use ince_core::verify::{self, VerifyConfig};
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn family(name: &str) -> PyResult<Family> {
    name.parse().map_err(err)
}

fn mass_shell(name: &str) -> PyResult<MassShell> {
    match name {
        "free" => Ok(MassShell::Free),
        "dressed" => Ok(MassShell::Dressed),
        other => Err(err(format!("mass_shell must be 'free' or 'dressed', got {other:?}"))),
    }
}

#[pyclass(name = "DerivedParams", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDerivedParams(params::DerivedParams);

#[pymethods]
impl PyDerivedParams {
    #[getter]
    fn a(&self) -> f64 {
        self.0.a
    }
    #[getter]
    fn mu0(&self) -> f64 {
        self.0.mu0
    }
    #[getter]
    fn n_m(&self) -> f64 {
        self.0.n_m
    }
    #[getter]
    fn k0(&self) -> f64 {
        self.0.k0
    }
    #[getter]
    fn kp(&self) -> f64 {
        self.0.kp
    }
    #[getter]
    fn n_ph(&self) -> f64 {
        self.0.n_ph
    }
    #[getter]
    fn kappa(&self) -> f64 {
        self.0.kappa
    }
    #[getter]
    fn kappa_star(&self) -> f64 {
        self.0.kappa_star
    }
    #[getter]
    fn eps_a0(&self) -> f64 {
        self.0.eps_a0
    }
    #[getter]
    fn plasmon_energy(&self) -> f64 {
        self.0.plasmon_energy
    }
    #[getter]
    fn electron_density(&self) -> f64 {
        self.0.electron_density
    }
    fn plasma_wavelength_nm(&self) -> f64 {
        self.0.plasma_wavelength_nm()
    }

    /// Parameters from wavenumber scales directly.
    #[staticmethod]
    fn from_scales(k0: f64, n_m: f64, a: f64, kappa: f64) -> PyResult<Self> {
        params::DerivedParams::from_scales(k0, n_m, a, kappa).map(Self).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("DerivedParams(a={}, mu0={:e}, n_m={})", self.0.a, self.0.mu0, self.0.n_m)
    }
}

#[pyfunction]
#[pyo3(signature = (photon_energy, intensity, plasmon_energy=None, electron_density=None))]
fn derive_params(
    photon_energy: f64,
    intensity: f64,
    plasmon_energy: Option<f64>,
    electron_density: Option<f64>,
) -> PyResult<PyDerivedParams> {
    let plasma = match (plasmon_energy, electron_density) {
        (Some(e), None) => PlasmaSpec::PlasmonEnergy(e),
        (None, Some(n)) => PlasmaSpec::ElectronDensity(n),
        _ => return Err(err("give exactly one of plasmon_energy, electron_density")),
    };
    params::derive_params(&LaserPlasmaConfig::new(photon_energy, intensity, plasma))
        .map(PyDerivedParams)
        .map_err(err)
}

#[pyclass(name = "IncePolynomial", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyIncePolynomial(ince::IncePolynomial);

#[pymethods]
impl PyIncePolynomial {
    #[getter]
    fn family(&self) -> &'static str {
        self.0.family.name()
    }
    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }
    #[getter]
    fn k(&self) -> usize {
        self.0.k
    }
    #[getter]
    fn q(&self) -> usize {
        self.0.q()
    }
    #[getter]
    fn a(&self) -> f64 {
        self.0.a
    }
    #[getter]
    fn eta(&self) -> f64 {
        self.0.eta
    }
    #[getter]
    fn coeffs(&self) -> Vec<f64> {
        self.0.coeffs.clone()
    }
    /// Harmonic multiple of z carried by each coefficient.
    fn harmonics(&self) -> Vec<usize> {
        (0..self.0.coeffs.len()).map(|i| self.0.family.harmonic(i)).collect()
    }
    fn evaluate(&self, xi: f64) -> f64 {
        self.0.evaluate(xi)
    }
    /// `(w, dw/dz, d²w/dz²)` at phase ξ.
    fn derivs(&self, xi: f64) -> (f64, f64, f64) {
        let d = self.0.derivs(xi);
        (d.w, d.dw, d.d2w)
    }
    fn ode_residual(&self, xi: f64) -> f64 {
        self.0.ode_residual(xi)
    }
    fn residual_scale(&self) -> f64 {
        self.0.residual_scale()
    }
    fn harmonic_strengths(&self) -> Vec<f64> {
        self.0.harmonic_strengths()
    }
    fn __repr__(&self) -> String {
        format!("IncePolynomial({}, n={}, k={}, a={}, eta={})", self.0.family, self.0.n, self.0.k, self.0.a, self.0.eta)
    }
}

/// All polynomials of degree `n`, ascending in η.
#[pyfunction]
fn solve_family(family_name: &str, n: usize, a: f64) -> PyResult<Vec<PyIncePolynomial>> {
    let sols = ince::solve_family(family(family_name)?, n, a).map_err(err)?;
    Ok(sols.into_iter().map(PyIncePolynomial).collect())
}

/// `(diag, sup, sub)` bands of the family's matrix.
#[pyfunction]
fn build_matrix(family_name: &str, n: usize, a: f64) -> PyResult<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let m = ince::build_matrix(family(family_name)?, n, a).map_err(err)?;
    Ok((m.diag().to_vec(), m.sup().to_vec(), m.sub().to_vec()))
}

/// Eigenpairs `[(value, vector)]` of a tridiagonal matrix given by its bands.
#[pyfunction]
fn eigen_all(diag: Vec<f64>, sup: Vec<f64>, sub: Vec<f64>) -> PyResult<Vec<(f64, Vec<f64>)>> {
    let m = tridiag::Tridiagonal::new(diag, sup, sub).map_err(err)?;
    let pairs = tridiag::eigen_all(&m).map_err(err)?;
    Ok(pairs.into_iter().map(|p| (p.value, p.vector)).collect())
}

/// Number of eigenvalues below `eta`.
#[pyfunction]
fn eigen_count_below(diag: Vec<f64>, sup: Vec<f64>, sub: Vec<f64>, eta: f64) -> PyResult<usize> {
    let m = tridiag::Tridiagonal::new(diag, sup, sub).map_err(err)?;
    tridiag::eigen_count_below(&m, eta).map_err(err)
}

/// Gram matrix `(weighted, unweighted_diag)` of solutions sharing family,
/// degree and coupling.
#[pyfunction]
fn orthogonality_matrix(solutions: Vec<PyRef<'_, PyIncePolynomial>>) -> PyResult<(Vec<Vec<f64>>, Vec<f64>)> {
    let sols: Vec<ince::IncePolynomial> = solutions.iter().map(|s| s.0.clone()).collect();
    let g = ince::orthogonality_matrix(&sols).map_err(err)?;
    Ok((g.weighted, g.unweighted_diag))
}

/// `I_l(x) e^{−x}` for `l = 0..=max_order`.
#[pyfunction]
fn bessel_i_scaled(x: f64, max_order: usize) -> PyResult<Vec<f64>> {
    specialfns::bessel_i_scaled(x, max_order).map(|r| r.values).map_err(err)
}

/// `(log_scale, scaled)` with envelope coefficients `I_l(a/4) = e^{log_scale}·scaled[l]`.
#[pyfunction]
fn envelope_fourier(a: f64, max_order: usize) -> PyResult<(f64, Vec<f64>)> {
    specialfns::envelope_fourier(a, max_order).map(|s| (s.log_scale, s.scaled)).map_err(err)
}

#[pyclass(name = "MomentumState", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMomentumState(physics::MomentumState);

fn root_value(r: Root) -> Complex64 {
    match r {
        Root::Real(v) => Complex64::new(v, 0.0),
        Root::Imaginary(v) => Complex64::new(0.0, v),
    }
}

#[pymethods]
impl PyMomentumState {
    #[getter]
    fn eta(&self) -> f64 {
        self.0.eta
    }
    #[getter]
    fn p_x(&self) -> f64 {
        self.0.p_x
    }
    #[getter]
    fn p_z(&self) -> f64 {
        self.0.p_z
    }
    /// `|p̂|` as a complex number (purely imaginary when evanescent).
    #[getter]
    fn p_hat(&self) -> Complex64 {
        root_value(self.0.p_hat)
    }
    #[getter]
    fn p_xi_ratio(&self) -> Complex64 {
        root_value(self.0.p_xi_ratio)
    }
    #[getter]
    fn evanescent(&self) -> bool {
        self.0.evanescent
    }
    #[getter]
    fn gap_state(&self) -> bool {
        self.0.gap_state
    }
    #[getter]
    fn p0(&self) -> Option<(f64, f64)> {
        self.0.p0.map(|v| (v[0], v[1]))
    }
    #[getter]
    fn p_y(&self) -> Option<(f64, f64)> {
        self.0.p_y.map(|v| (v[0], v[1]))
    }
}

#[pyfunction]
#[pyo3(signature = (solution, params, p_z=0.0, mass_shell="free"))]
fn momentum_spectrum(
    solution: &PyIncePolynomial,
    params: &PyDerivedParams,
    p_z: f64,
    mass_shell: &str,
) -> PyResult<PyMomentumState> {
    let s = &solution.0;
    Ok(PyMomentumState(physics::momentum_spectrum(s.eta, &s.problem(), &params.0, p_z, self::mass_shell(mass_shell)?)))
}

/// Φ at spacetime point `(ct, x, y, x3)` in cm.
#[pyfunction]
#[pyo3(signature = (solution, state, ct, x, y, x3, hat_sign=1, allow_evanescent=false))]
#[allow(clippy::too_many_arguments)]
fn wavefunction(
    solution: &PyIncePolynomial,
    state: &PyMomentumState,
    ct: f64,
    x: f64,
    y: f64,
    x3: f64,
    hat_sign: i32,
    allow_evanescent: bool,
) -> PyResult<Complex64> {
    let opts = WaveOptions {
        hat_sign: if hat_sign < 0 { Sign::Minus } else { Sign::Plus },
        allow_evanescent,
    };
    physics::wavefunction(&solution.0, &state.0, &SpacetimePoint { ct, x, y, x3 }, opts).map_err(err)
}

/// CSV text of each table of figure `id` (1..=6).
#[pyfunction]
#[pyo3(signature = (id, a=14.0, n=20))]
fn figure(id: u8, a: f64, n: usize) -> PyResult<Vec<(String, String)>> {
    let cfg = FigureConfig { a, n, ..Default::default() };
    let tables = figures::figure(id, &cfg).map_err(err)?.map_err(err)?;
    Ok(tables.into_iter().map(|t| (t.name.clone(), t.to_csv())).collect())
}

/// Runs the invariant suites and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (families=None, degrees=None, eta_perturbation=0.0))]
fn run_verify(families: Option<Vec<String>>, degrees: Option<Vec<usize>>, eta_perturbation: f64) -> PyResult<String> {
    let mut cfg = VerifyConfig { eta_perturbation, ..Default::default() };
    if let Some(fs) = families {
        cfg.families = fs.iter().map(|f| family(f)).collect::<PyResult<_>>()?;
    }
    if let Some(ds) = degrees {
        if let Some(&max) = ds.iter().max() {
            cfg.orthogonality_degree = cfg.orthogonality_degree.min(max);
        }
        cfg.degrees = ds;
    }
    serde_json::to_string(&verify::run(&cfg).map_err(err)?).map_err(err)
}

#[pymodule]
fn ince_wave(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", ince_core::VERSION)?;
    m.add("FAMILIES", Family::ALL.map(Family::name).to_vec())?;
    m.add_class::<PyDerivedParams>()?;
    m.add_class::<PyIncePolynomial>()?;
    m.add_class::<PyMomentumState>()?;
    m.add_function(wrap_pyfunction!(derive_params, m)?)?;
    m.add_function(wrap_pyfunction!(solve_family, m)?)?;
    m.add_function(wrap_pyfunction!(build_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(eigen_all, m)?)?;
    m.add_function(wrap_pyfunction!(eigen_count_below, m)?)?;
    m.add_function(wrap_pyfunction!(orthogonality_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_i_scaled, m)?)?;
    m.add_function(wrap_pyfunction!(envelope_fourier, m)?)?;
    m.add_function(wrap_pyfunction!(momentum_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(wavefunction, m)?)?;
    m.add_function(wrap_pyfunction!(figure, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
