//! Stokes operators on the N-photon manifold and the second-order statistics
//! built from them.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::eigen3::{self, SymmetricEigen3};
use crate::fockstate::{require_photons, TwoModeState};
use crate::{Error, Mat3, Result, Vec3};

type CMatrix = DMatrix<Complex64>;

/// Spectral decomposition `s = V diag(values) V^dagger` of a Hermitian Stokes
/// matrix, kept so rotations can be exponentiated without refactoring.
#[derive(Debug, Clone)]
pub(crate) struct HermitianSpectrum {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

/// The four Stokes operator matrices `S_0..S_3` in the `|n, N-n>` basis.
#[derive(Debug, Clone)]
pub struct StokesSet {
    n_photons: usize,
    matrices: [CMatrix; 4],
    spectra: [HermitianSpectrum; 2],
}

impl StokesSet {
    pub fn n_photons(&self) -> usize {
        self.n_photons
    }

    /// `S_mu` for `mu` in `0..=3`.
    pub fn matrix(&self, mu: usize) -> &CMatrix {
        &self.matrices[mu]
    }

    pub fn s0(&self) -> &CMatrix {
        &self.matrices[0]
    }

    pub fn s1(&self) -> &CMatrix {
        &self.matrices[1]
    }

    pub fn s2(&self) -> &CMatrix {
        &self.matrices[2]
    }

    pub fn s3(&self) -> &CMatrix {
        &self.matrices[3]
    }

    /// Eigen-decomposition of `S_1` (`axis = 1`) or `S_2` (`axis = 2`).
    pub(crate) fn spectrum(&self, axis: usize) -> &HermitianSpectrum {
        &self.spectra[axis - 1]
    }
}

/// Builds the Stokes matrices for `N` photons.
///
/// `S_3` is diagonal with entries `2n - N`; `S_1` and `S_2` couple neighbouring
/// number states with magnitude `sqrt((n+1)(N-n))`.
pub fn build_stokes(n_photons: usize) -> Result<StokesSet> {
    require_photons(n_photons, 1)?;
    let dim = n_photons + 1;
    let zero = Complex64::new(0.0, 0.0);
    let mut s0 = CMatrix::from_element(dim, dim, zero);
    let mut s1 = s0.clone();
    let mut s2 = s0.clone();
    let mut s3 = s0.clone();
    for n in 0..dim {
        s0[(n, n)] = Complex64::new(n_photons as f64, 0.0);
        s3[(n, n)] = Complex64::new(2.0 * n as f64 - n_photons as f64, 0.0);
    }
    for n in 0..n_photons {
        let g = (((n + 1) * (n_photons - n)) as f64).sqrt();
        // a_R^dagger a_L raises n; S_1 = a_R^+ a_L + h.c., S_2 = -i a_R^+ a_L + h.c.
        s1[(n + 1, n)] = Complex64::new(g, 0.0);
        s1[(n, n + 1)] = Complex64::new(g, 0.0);
        s2[(n + 1, n)] = Complex64::new(0.0, -g);
        s2[(n, n + 1)] = Complex64::new(0.0, g);
    }
    let spectra = [hermitian_spectrum(&s1), hermitian_spectrum(&s2)];
    Ok(StokesSet {
        n_photons,
        matrices: [s0, s1, s2, s3],
        spectra,
    })
}

fn hermitian_spectrum(m: &CMatrix) -> HermitianSpectrum {
    let eig = m.clone().symmetric_eigen();
    HermitianSpectrum {
        values: eig.eigenvalues.iter().copied().collect(),
        vectors: eig.eigenvectors,
    }
}

/// Shared, memoized Stokes set for `N` photons.
pub fn stokes_set(n_photons: usize) -> Result<Arc<StokesSet>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<StokesSet>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(set) = cache.read().expect("stokes cache poisoned").get(&n_photons) {
        return Ok(Arc::clone(set));
    }
    let built = Arc::new(build_stokes(n_photons)?);
    let mut guard = cache.write().expect("stokes cache poisoned");
    Ok(Arc::clone(guard.entry(n_photons).or_insert(built)))
}

/// `S_k |psi>` for `k = 1, 2, 3`.
fn applied(state: &TwoModeState) -> Result<(Arc<StokesSet>, [DVector<Complex64>; 3])> {
    state.require_analysable()?;
    let set = stokes_set(state.n_photons())?;
    let psi = DVector::from_column_slice(state.amplitudes());
    let images = [1, 2, 3].map(|k| set.matrix(k) * &psi);
    Ok((set, images))
}

/// `<psi| S_k |psi>` for `k = 1, 2, 3`.
pub fn stokes_vector(state: &TwoModeState) -> Result<Vec3> {
    let psi = DVector::from_column_slice(state.amplitudes());
    let (_, images) = applied(state)?;
    Ok(images.map(|v| psi.dotc(&v).re))
}

/// Symmetric 3x3 Stokes covariance matrix in photons^2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CovarianceMatrix {
    pub gamma: Mat3,
}

impl CovarianceMatrix {
    pub fn trace(&self) -> f64 {
        self.gamma[0][0] + self.gamma[1][1] + self.gamma[2][2]
    }

    /// Diagonal entries, i.e. the variances of `S_1`, `S_2`, `S_3`.
    pub fn diagonal(&self) -> Vec3 {
        [self.gamma[0][0], self.gamma[1][1], self.gamma[2][2]]
    }

    /// Row-major flattening used by the JSON reports.
    pub fn row_major(&self) -> [f64; 9] {
        let g = &self.gamma;
        [
            g[0][0], g[0][1], g[0][2], g[1][0], g[1][1], g[1][2], g[2][0], g[2][1], g[2][2],
        ]
    }

    /// `n^T Gamma n`.
    pub fn quadratic_form(&self, n: &Vec3) -> f64 {
        eigen3::dot(n, &eigen3::mat_vec(&self.gamma, n))
    }
}

/// `Gamma_kl = <S_k S_l + S_l S_k>/2 - <S_k><S_l>`.
pub fn covariance(state: &TwoModeState) -> Result<CovarianceMatrix> {
    let psi = DVector::from_column_slice(state.amplitudes());
    let (_, images) = applied(state)?;
    let means = images.each_ref().map(|v| psi.dotc(v).re);
    let mut gamma = [[0.0; 3]; 3];
    for k in 0..3 {
        for l in k..3 {
            // <S_k S_l> = <S_k psi | S_l psi>; its real part is the
            // symmetrized product since S_k, S_l are Hermitian.
            let value = images[k].dotc(&images[l]).re - means[k] * means[l];
            gamma[k][l] = value;
            gamma[l][k] = value;
        }
    }
    Ok(CovarianceMatrix { gamma })
}

/// Eigenvalues of the covariance matrix sorted ascending, with their
/// orthonormal principal axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrincipalVariances {
    pub lambdas: Vec3,
    pub axes: Mat3,
}

impl PrincipalVariances {
    pub fn from_lambdas(lambdas: Vec3) -> Self {
        let mut sorted = lambdas;
        sorted.sort_by(f64::total_cmp);
        Self {
            lambdas: sorted,
            axes: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    pub fn sum(&self) -> f64 {
        self.lambdas.iter().sum()
    }

    /// `sum_k (axis_k . n)^2 lambda_k`.
    pub fn directional(&self, n: &Vec3) -> f64 {
        (0..3)
            .map(|k| eigen3::dot(&self.axes[k], n).powi(2) * self.lambdas[k])
            .sum()
    }

    /// Number of distinct eigenvalues (1, 2 or 3) given an absolute tolerance.
    pub fn distinct_count(&self, tol: f64) -> usize {
        let [l1, l2, l3] = self.lambdas;
        if l3 - l1 <= tol {
            1
        } else if l2 - l1 <= tol || l3 - l2 <= tol {
            2
        } else {
            3
        }
    }
}

pub fn principal_variances(gamma: &CovarianceMatrix) -> PrincipalVariances {
    let SymmetricEigen3 { values, vectors } = eigen3::symmetric_eigen(&gamma.gamma);
    PrincipalVariances {
        lambdas: values,
        axes: vectors,
    }
}

/// Relative tolerance for deciding that two principal variances coincide,
/// scaled by `N(N+2)`.
pub fn degeneracy_tolerance(n_photons: usize) -> f64 {
    let n = n_photons as f64;
    1e-7 * n * (n + 2.0)
}

/// Variance of `S_n = S . n` for a unit direction `n`.
pub fn directional_variance(state: &TwoModeState, n: &Vec3) -> Result<f64> {
    let norm = eigen3::dot(n, n).sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::NonUnitDirection(norm));
    }
    Ok(covariance(state)?.quadratic_form(n))
}

/// Limits of the three rotation-invariant uncertainty relations on the
/// N-photon manifold: determinant, sum of principal minors, and trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UncertaintyBounds {
    pub det_lo: f64,
    pub det_hi: f64,
    pub minor_lo: f64,
    pub minor_hi: f64,
    pub trace_lo: f64,
    pub trace_hi: f64,
}

impl UncertaintyBounds {
    /// Substitutes `<S_0^k (S_0 + 2)^k> = N^k (N+2)^k`, exact on a fixed
    /// photon-number manifold.
    pub fn for_photons(n_photons: usize) -> Self {
        let n = n_photons as f64;
        let casimir = n * (n + 2.0);
        Self {
            det_lo: 0.0,
            det_hi: casimir.powi(3) / 27.0,
            minor_lo: n * n,
            minor_hi: casimir.powi(2) / 3.0,
            trace_lo: 2.0 * n,
            trace_hi: casimir,
        }
    }
}

/// One inequality `lo <= value` or `value <= hi` with its signed margin
/// (positive when satisfied).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck {
    pub value: f64,
    pub limit: f64,
    pub margin: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n_photons: usize,
    pub det_lower: BoundCheck,
    pub det_upper: BoundCheck,
    pub minor_lower: BoundCheck,
    pub minor_upper: BoundCheck,
    pub trace_lower: BoundCheck,
    pub trace_upper: BoundCheck,
}

impl BoundsReport {
    pub fn all_pass(&self) -> bool {
        self.checks().iter().all(|c| c.pass)
    }

    pub fn checks(&self) -> [BoundCheck; 6] {
        [
            self.det_lower,
            self.det_upper,
            self.minor_lower,
            self.minor_upper,
            self.trace_lower,
            self.trace_upper,
        ]
    }
}

/// Evaluates the determinant, principal-minor and trace inequalities for a
/// variance triplet. Margins within `1e-9` of the bound's scale count as
/// passing.
pub fn check_bounds(lambdas: &Vec3, n_photons: usize) -> BoundsReport {
    let b = UncertaintyBounds::for_photons(n_photons);
    let [l1, l2, l3] = *lambdas;
    let det = l1 * l2 * l3;
    let minors = l1 * l2 + l2 * l3 + l3 * l1;
    let trace = l1 + l2 + l3;

    let lower = |value: f64, limit: f64, scale: f64| {
        let margin = value - limit;
        BoundCheck {
            value,
            limit,
            margin,
            pass: margin >= -1e-9 * scale.max(1.0),
        }
    };
    let upper = |value: f64, limit: f64| {
        let margin = limit - value;
        BoundCheck {
            value,
            limit,
            margin,
            pass: margin >= -1e-9 * limit.max(1.0),
        }
    };

    BoundsReport {
        n_photons,
        det_lower: lower(det, b.det_lo, b.det_hi),
        det_upper: upper(det, b.det_hi),
        minor_lower: lower(minors, b.minor_lo, b.minor_hi),
        minor_upper: upper(minors, b.minor_hi),
        trace_lower: lower(trace, b.trace_lo, b.trace_hi),
        trace_upper: upper(trace, b.trace_hi),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockstate::EtaBranch;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn single_photon_is_pauli_in_reversed_order() {
        // In the ordering {|1,0>, |0,1>} (R first) the three operators are the
        // Pauli matrices; the storage order is {|0,1>, |1,0>}.
        let set = build_stokes(1).unwrap();
        let flip = |m: &CMatrix| DMatrix::from_fn(2, 2, |i, j| m[(1 - i, 1 - j)]);
        let sx = DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        let sy = DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]);
        let sz = DMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]);
        assert_eq!(flip(set.s1()), sx);
        assert_eq!(flip(set.s2()), sy);
        assert_eq!(flip(set.s3()), sz);
    }

    #[test]
    fn s3_diagonal_for_two_photons() {
        let set = build_stokes(2).unwrap();
        let diag: Vec<f64> = (0..3).map(|n| set.s3()[(n, n)].re).collect();
        assert_eq!(diag, vec![-2.0, 0.0, 2.0]);
        assert!(build_stokes(0).is_err());
    }

    #[test]
    fn commutators_and_hermiticity() {
        for n in 1..=8 {
            let set = build_stokes(n).unwrap();
            let dim = n + 1;
            let identity = CMatrix::identity(dim, dim) * c(n as f64, 0.0);
            assert_eq!(set.s0(), &identity);
            for mu in 0..4 {
                let m = set.matrix(mu);
                assert!((m - m.adjoint()).camax() < 1e-14);
            }
            for (k, l, m) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
                let (a, b) = (set.matrix(k), set.matrix(l));
                let comm = a * b - b * a;
                let want = set.matrix(m) * c(0.0, 2.0);
                assert!((comm - want).camax() < 1e-12, "N={n} [{k},{l}]");
            }
        }
    }

    #[test]
    fn memo_returns_shared_instance() {
        let a = stokes_set(5).unwrap();
        let b = stokes_set(5).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        let handles: Vec<_> = (0..8)
            .map(|_| std::thread::spawn(|| stokes_set(6).unwrap()))
            .collect();
        let sets: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(sets.windows(2).all(|w| Arc::ptr_eq(&w[0], &w[1])));
    }

    #[test]
    fn stokes_vectors() {
        let eta = TwoModeState::eta(3, EtaBranch::Plus).unwrap();
        let v = stokes_vector(&eta).unwrap();
        assert_close(v[0], 0.0, 1e-12);
        assert_close(v[1], 0.0, 1e-12);
        assert_close(v[2], 2.4495, 1e-3);

        let north = TwoModeState::fock(2, 2).unwrap();
        assert_eq!(stokes_vector(&north).unwrap(), [0.0, 0.0, 2.0]);

        let noon = TwoModeState::noon(3).unwrap();
        assert!(stokes_vector(&noon)
            .unwrap()
            .iter()
            .all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn eta_four_stokes_vector() {
        // N(2 eta^2 - 1) with 2 eta^2 - 1 = sqrt(3)/2
        let v = stokes_vector(&TwoModeState::eta(4, EtaBranch::Plus).unwrap()).unwrap();
        assert_close(v[2], 4.0 * 3f64.sqrt() / 2.0, 1e-12);
    }

    #[test]
    fn covariance_examples() {
        let eta = covariance(&TwoModeState::eta(3, EtaBranch::Plus).unwrap()).unwrap();
        for k in 0..3 {
            for l in 0..3 {
                assert_close(eta.gamma[k][l], if k == l { 3.0 } else { 0.0 }, 1e-9);
            }
        }
        let north = covariance(&TwoModeState::fock(2, 2).unwrap()).unwrap();
        for (got, want) in north.diagonal().iter().zip([2.0, 2.0, 0.0]) {
            assert_close(*got, want, 1e-12);
        }
        let mid = covariance(&TwoModeState::fock(2, 1).unwrap()).unwrap();
        for (got, want) in mid.diagonal().iter().zip([4.0, 4.0, 0.0]) {
            assert_close(*got, want, 1e-12);
        }
        assert_close(mid.gamma[0][1], 0.0, 1e-12);
    }

    #[test]
    fn principal_variances_of_overlapping_orbit_state() {
        let psi = TwoModeState::from_real(3, &[0.0, 0.5704, 0.7914, 0.2199]).unwrap();
        let pv = principal_variances(&covariance(&psi).unwrap());
        for (got, want) in pv.lambdas.iter().zip([1.1637, 1.8990, 5.9373]) {
            assert_close(*got, want, 2e-3);
        }
        let iso = principal_variances(&CovarianceMatrix {
            gamma: [[3.0, 0.0, 0.0], [0.0, 3.0, 0.0], [0.0, 0.0, 3.0]],
        });
        assert_eq!(iso.lambdas, [3.0; 3]);
        let diag = principal_variances(&CovarianceMatrix {
            gamma: [[2.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 0.0]],
        });
        assert_eq!(diag.lambdas, [0.0, 2.0, 2.0]);
    }

    #[test]
    fn directional_variances() {
        let eta = TwoModeState::eta(3, EtaBranch::Plus).unwrap();
        let n = eigen3::normalize([0.3, -1.2, 0.7]);
        assert_close(directional_variance(&eta, &n).unwrap(), 3.0, 1e-9);

        let north = TwoModeState::fock(2, 2).unwrap();
        assert_close(
            directional_variance(&north, &[0.0, 0.0, 1.0]).unwrap(),
            0.0,
            1e-12,
        );
        assert_close(
            directional_variance(&north, &[1.0, 0.0, 0.0]).unwrap(),
            2.0,
            1e-12,
        );
        assert!(matches!(
            directional_variance(&north, &[1.0, 1.0, 0.0]),
            Err(Error::NonUnitDirection(_))
        ));
    }

    #[test]
    fn bounds_examples() {
        assert!(check_bounds(&[0.75, 0.75, 2.5], 2).all_pass());

        let coherent = check_bounds(&[0.0, 2.0, 2.0], 2);
        assert!(coherent.all_pass());
        assert_eq!(coherent.trace_lower.limit, 4.0);
        assert_eq!(coherent.trace_lower.margin, 0.0);

        let too_wide = check_bounds(&[4.0, 4.0, 4.0], 2);
        assert!(!too_wide.trace_upper.pass);
        assert_eq!(too_wide.trace_upper.value, 12.0);
        assert_eq!(too_wide.trace_upper.limit, 8.0);
        assert!(!too_wide.all_pass());
    }

    #[test]
    fn bound_constants() {
        let b = UncertaintyBounds::for_photons(3);
        assert_eq!(b.trace_lo, 6.0);
        assert_eq!(b.trace_hi, 15.0);
        assert_eq!(b.minor_lo, 9.0);
        assert_eq!(b.minor_hi, 75.0);
        assert_eq!(b.det_hi, 125.0);
    }

    #[test]
    fn degenerate_counts() {
        let tol = degeneracy_tolerance(3);
        assert_eq!(
            PrincipalVariances::from_lambdas([3.0, 3.0, 3.0]).distinct_count(tol),
            1
        );
        assert_eq!(
            PrincipalVariances::from_lambdas([0.0, 2.0, 2.0]).distinct_count(tol),
            2
        );
        assert_eq!(
            PrincipalVariances::from_lambdas([1.0, 2.0, 6.0]).distinct_count(tol),
            3
        );
    }
}
