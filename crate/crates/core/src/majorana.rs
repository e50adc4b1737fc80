//! Majorana constellations: the N points on the Poincare sphere whose
//! spinors multiply out to a given N-photon state.
//!
//! A point `(theta, phi)` contributes the factor
//! `cos(theta/2) a_R^+ + exp(i phi) sin(theta/2) a_L^+` and sits at the unit
//! vector `(sin theta cos phi, sin theta sin phi, cos theta)`.

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};
use std::io::{self, Write};

use num_complex::Complex64;
use serde::Serialize;

use crate::eigen3::{cross, dot, mat_mul, mat_vec, normalize, transpose};
use crate::fockstate::{binomial, require_photons, TwoModeState};
use crate::poly;
use crate::su2rot::{euler_from_so3, rot_y, rot_z, EulerAngles};
use crate::textfmt::significant;
use crate::{Error, Mat3, Result, Vec3};

/// Leading amplitudes below this fraction of the coefficient norm count as a
/// vanished degree, i.e. a point at the south pole.
const DEFLATION_TOL: f64 = 1e-12;

/// Default angular tolerance for orbit comparison, radians.
pub const DEFAULT_ORBIT_TOL: f64 = 1e-6;

/// A point on the unit sphere, `theta` in `[0, pi]`, `phi` in `[0, 2 pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpherePoint {
    pub theta: f64,
    pub phi: f64,
}

impl SpherePoint {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self {
            theta,
            phi: reduce_angle(phi),
        }
    }

    pub fn from_vector(v: &Vec3) -> Self {
        let v = normalize(*v);
        let rho = v[0].hypot(v[1]);
        let theta = rho.atan2(v[2]);
        let phi = if rho < 1e-15 { 0.0 } else { v[1].atan2(v[0]) };
        Self::new(theta, phi)
    }

    pub fn to_vector(&self) -> Vec3 {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Angle subtended at the sphere centre.
    pub fn angle_to(&self, other: &Self) -> f64 {
        angle_between(&self.to_vector(), &other.to_vector())
    }

    fn lexicographic(&self, other: &Self) -> Ordering {
        self.theta
            .total_cmp(&other.theta)
            .then(self.phi.total_cmp(&other.phi))
    }
}

fn reduce_angle(phi: f64) -> f64 {
    let r = phi.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

fn angle_between(u: &Vec3, v: &Vec3) -> f64 {
    let c = cross(u, v);
    dot(&c, &c).sqrt().atan2(dot(u, v))
}

/// Multiset of N points on the sphere.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MajoranaConstellation {
    pub points: Vec<SpherePoint>,
}

impl MajoranaConstellation {
    pub fn new(points: Vec<SpherePoint>) -> Self {
        Self { points }
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    /// Points ordered by `(theta, phi)`.
    pub fn sorted(&self) -> Self {
        let mut points = self.points.clone();
        points.sort_by(SpherePoint::lexicographic);
        Self { points }
    }

    pub fn vectors(&self) -> Vec<Vec3> {
        self.points.iter().map(SpherePoint::to_vector).collect()
    }

    /// Applies `r` to every point.
    pub fn rotated(&self, r: &Mat3) -> Self {
        Self {
            points: self
                .points
                .iter()
                .map(|p| SpherePoint::from_vector(&mat_vec(r, &p.to_vector())))
                .collect(),
        }
    }

    /// Reflection `phi -> -phi`.
    pub fn mirrored(&self) -> Self {
        Self {
            points: self
                .points
                .iter()
                .map(|p| SpherePoint::new(p.theta, -p.phi))
                .collect(),
        }
    }

    /// Sorted multiset of the `N(N-1)/2` pairwise central angles.
    pub fn pairwise_angles(&self) -> Vec<f64> {
        pairwise_angles(&self.vectors())
    }

    /// True when the two multisets agree point-by-point within `tol` radians.
    pub fn matches(&self, other: &Self, tol: f64) -> bool {
        multiset_match(&self.vectors(), &other.vectors(), tol)
    }

    /// `theta_rad,phi_rad` CSV, one row per point sorted by `(theta, phi)`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "theta_rad,phi_rad")?;
        for p in &self.sorted().points {
            writeln!(out, "{},{}", significant(p.theta, 9), significant(p.phi, 9))?;
        }
        Ok(())
    }
}

/// Constellation of `state` from the roots of
/// `P(z) = sum_n c_n sqrt(C(N, n)) z^n`. A finite root `z` maps to
/// `w = -z`, `theta = 2 atan|w|`, `phi = arg w`; every vanished leading
/// coefficient is a point at the south pole.
pub fn to_constellation(state: &TwoModeState) -> Result<MajoranaConstellation> {
    state.require_analysable()?;
    let n = state.n_photons();
    let coeffs: Vec<Complex64> = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(k, c)| c * binomial(n, k).sqrt())
        .collect();
    let roots = poly::roots(&coeffs, DEFLATION_TOL);
    let mut points: Vec<SpherePoint> = merge_multiple_roots(&coeffs, roots.finite)
        .into_iter()
        .map(|z| {
            let w = -z;
            SpherePoint::new(
                2.0 * w.norm().atan(),
                if w.norm() == 0.0 { 0.0 } else { w.arg() },
            )
        })
        .collect();
    points.extend(std::iter::repeat_n(
        SpherePoint::new(PI, 0.0),
        roots.at_infinity,
    ));
    Ok(MajoranaConstellation { points })
}

/// Replaces clusters of approximate roots by their centroid when the merged
/// factorization reproduces the polynomial at least as well. The centroid of
/// a perturbed multiple root is well conditioned even though the individual
/// roots only carry `eps^(1/m)` accuracy.
fn merge_multiple_roots(coeffs: &[Complex64], roots: Vec<Complex64>) -> Vec<Complex64> {
    if roots.len() < 2 {
        return roots;
    }
    let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let top = coeffs
        .iter()
        .rposition(|c| c.norm() >= DEFLATION_TOL * norm)
        .expect("nonzero polynomial");
    let lead = coeffs[top];
    let target = &coeffs[..=top];
    let error_of = |candidate: &[Complex64]| {
        let rebuilt = poly::from_roots(candidate, lead);
        let scale = target.iter().map(|c| c.norm()).fold(0.0, f64::max);
        rebuilt
            .iter()
            .zip(target)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
            / scale
    };

    let mut current = roots;
    let mut current_error = error_of(&current);
    let n = current.len();
    // Union-find over "close" roots.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in 0..i {
            let scale = current[i].norm().max(current[j].norm()).max(1.0);
            if (current[i] - current[j]).norm() <= 0.05 * scale {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    for group in groups.into_values().filter(|g| g.len() > 1) {
        // A root of multiplicity m is a simple root of the (m-1)-th derivative,
        // where Newton converges to full precision.
        let centroid = poly::newton_refine(
            &poly::derivative(target, group.len() - 1),
            group.iter().map(|&i| current[i]).sum::<Complex64>() / group.len() as f64,
        );
        let mut candidate = current.clone();
        for &i in &group {
            candidate[i] = centroid;
        }
        let candidate_error = error_of(&candidate);
        if candidate_error <= (10.0 * current_error).max(1e-13) {
            current = candidate;
            current_error = candidate_error;
        }
    }
    current
}

/// Multiplies out the spinor factors of every point and normalizes.
pub fn from_constellation(c: &MajoranaConstellation) -> Result<TwoModeState> {
    let n = c.n_points();
    require_photons(n, 1)?;
    // Coefficients of prod_j (u_j x + v_j) in ascending powers of x, where x
    // stands for a_R^+ and the a_L^+ power is implied.
    let mut product = vec![Complex64::new(1.0, 0.0)];
    for p in &c.points {
        let u = Complex64::new((p.theta / 2.0).cos(), 0.0);
        let v = Complex64::from_polar((p.theta / 2.0).sin(), p.phi);
        let mut next = vec![Complex64::new(0.0, 0.0); product.len() + 1];
        for (k, &a) in product.iter().enumerate() {
            next[k] += a * v;
            next[k + 1] += a * u;
        }
        product = next;
    }
    // (a_R^+)^k (a_L^+)^(N-k) |0,0> = sqrt(k! (N-k)!) |k, N-k>, which up to
    // the common factor sqrt(N!) is 1 / sqrt(C(N, k)).
    let raw: Vec<Complex64> = product
        .iter()
        .enumerate()
        .map(|(k, a)| a / binomial(n, k).sqrt())
        .collect();
    TwoModeState::from_amplitudes(n, &raw)
}

/// Rotates the constellation so one point sits at the north pole and another
/// on the `phi = 0` meridian. Returns the rotated copy (sorted by
/// `(theta, phi)`) and the Euler angles of the polarization transformation
/// that realizes it.
///
/// The pole anchor is the lexicographically largest `(theta, phi)` point. The
/// meridian anchor is the remaining point farthest from it; among equally far
/// candidates the one leaving the smallest sorted list of azimuths wins.
pub fn canonicalize(c: &MajoranaConstellation) -> (MajoranaConstellation, EulerAngles) {
    if c.points.is_empty() {
        return (c.clone(), EulerAngles::identity());
    }
    let sorted = c.sorted();
    let anchor = *sorted.points.last().expect("nonempty");
    // Rz(-phi) brings the anchor onto the meridian, Ry(-theta) onto the pole.
    let tilt = mat_mul(&rot_y(-anchor.theta), &rot_z(-anchor.phi));
    let mut tilted: Vec<SpherePoint> = sorted.rotated(&tilt).points;
    let anchor_index = tilted.len() - 1;
    tilted[anchor_index] = SpherePoint::new(0.0, 0.0);

    let off_axis: Vec<usize> = (0..anchor_index)
        .filter(|&i| tilted[i].theta.sin() > 1e-9)
        .collect();
    let spin = off_axis
        .iter()
        .map(|&i| tilted[i].theta)
        .fold(None, |best: Option<f64>, t| {
            Some(best.map_or(t, |b| b.max(t)))
        })
        .map(|farthest| {
            off_axis
                .iter()
                .filter(|&&i| farthest - tilted[i].theta <= 1e-9)
                .map(|&i| {
                    let azimuth = tilted[i].phi;
                    let mut phis: Vec<f64> = tilted
                        .iter()
                        .map(|p| reduce_angle(p.phi - azimuth))
                        .collect();
                    phis.sort_by(f64::total_cmp);
                    (i, azimuth, phis)
                })
                .min_by(|a, b| {
                    a.2.iter()
                        .zip(&b.2)
                        .map(|(x, y)| x.total_cmp(y))
                        .find(|o| o.is_ne())
                        .unwrap_or(Ordering::Equal)
                })
                .expect("at least one candidate")
        });

    let (points, alpha) = match spin {
        Some((meridian_index, azimuth, _)) => {
            let mut points: Vec<SpherePoint> = tilted
                .iter()
                .map(|p| SpherePoint::new(p.theta, p.phi - azimuth))
                .collect();
            points[anchor_index] = SpherePoint::new(0.0, 0.0);
            points[meridian_index].phi = 0.0;
            (points, azimuth / 2.0)
        }
        None => (tilted, 0.0),
    };
    let euler = EulerAngles::new(alpha, anchor.theta / 2.0, anchor.phi / 2.0);
    (MajoranaConstellation { points }.sorted(), euler)
}

/// Relationship between the SU(2) orbits of two states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum OrbitRelation {
    /// A polarization transformation maps one onto the other; carries one
    /// witnessing set of Euler angles taking the first state to the second.
    Same(EulerAngles),
    /// Only an orientation-reversing isometry relates the constellations.
    MirrorOnly,
    Different,
}

impl OrbitRelation {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Same(_) => "same",
            Self::MirrorOnly => "mirror_only",
            Self::Different => "different",
        }
    }
}

/// Decides whether `a` and `b` lie on the same SU(2) orbit by testing their
/// constellations for rigid congruence within `tol` radians.
pub fn same_orbit(a: &TwoModeState, b: &TwoModeState, tol: f64) -> Result<OrbitRelation> {
    if a.n_photons() != b.n_photons() {
        return Err(Error::PhotonNumberMismatch {
            left: a.n_photons(),
            right: b.n_photons(),
        });
    }
    let ca = to_constellation(a)?;
    let cb = to_constellation(b)?;
    if let Some(r) = find_rotation(&ca.vectors(), &cb.vectors(), tol) {
        return Ok(OrbitRelation::Same(euler_from_so3(&r)));
    }
    if find_rotation(&ca.mirrored().vectors(), &cb.vectors(), tol).is_some() {
        return Ok(OrbitRelation::MirrorOnly);
    }
    Ok(OrbitRelation::Different)
}

fn pairwise_angles(points: &[Vec3]) -> Vec<f64> {
    let mut angles: Vec<f64> = (0..points.len())
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .map(|(i, j)| angle_between(&points[i], &points[j]))
        .collect();
    angles.sort_by(f64::total_cmp);
    angles
}

fn multiset_match(a: &[Vec3], b: &[Vec3], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|p| {
        let best = (0..b.len())
            .filter(|&j| !used[j])
            .map(|j| (j, angle_between(p, &b[j])))
            .min_by(|x, y| x.1.total_cmp(&y.1));
        match best {
            Some((j, angle)) if angle <= tol => {
                used[j] = true;
                true
            }
            _ => false,
        }
    })
}

/// Orthonormal frame with first axis `u` and second axis in the `u, v` plane.
fn frame(u: &Vec3, v: &Vec3) -> Mat3 {
    let e1 = normalize(*u);
    let e2 = normalize([0, 1, 2].map(|i| v[i] - dot(&e1, v) * e1[i]));
    let e3 = cross(&e1, &e2);
    // columns e1, e2, e3
    transpose(&[e1, e2, e3])
}

/// Rotation taking `u` to `v` about their common normal.
fn minimal_rotation(u: &Vec3, v: &Vec3) -> Mat3 {
    let axis = cross(u, v);
    let s = dot(&axis, &axis).sqrt();
    let c = dot(u, v);
    if s < 1e-15 {
        if c > 0.0 {
            return rot_z(0.0);
        }
        // Antipodal: half turn about any axis perpendicular to u.
        let helper = if u[0].abs() < 0.9 {
            [1.0, 0.0, 0.0]
        } else {
            [0.0, 1.0, 0.0]
        };
        let k = normalize(cross(u, &helper));
        return axis_angle(&k, PI);
    }
    axis_angle(&axis.map(|x| x / s), s.atan2(c))
}

fn axis_angle(k: &Vec3, angle: f64) -> Mat3 {
    let (s, c) = angle.sin_cos();
    let t = 1.0 - c;
    [
        [
            c + k[0] * k[0] * t,
            k[0] * k[1] * t - k[2] * s,
            k[0] * k[2] * t + k[1] * s,
        ],
        [
            k[1] * k[0] * t + k[2] * s,
            c + k[1] * k[1] * t,
            k[1] * k[2] * t - k[0] * s,
        ],
        [
            k[2] * k[0] * t - k[1] * s,
            k[2] * k[1] * t + k[0] * s,
            c + k[2] * k[2] * t,
        ],
    ]
}

/// Proper rotation mapping multiset `a` onto `b` within `tol`, if any.
fn find_rotation(a: &[Vec3], b: &[Vec3], tol: f64) -> Option<Mat3> {
    if a.len() != b.len() {
        return None;
    }
    if a.is_empty() {
        return Some(rot_z(0.0));
    }
    let (da, db) = (pairwise_angles(a), pairwise_angles(b));
    if da.iter().zip(&db).any(|(x, y)| (x - y).abs() > tol) {
        return None;
    }
    let check = |r: &Mat3| {
        let mapped: Vec<Vec3> = a.iter().map(|p| mat_vec(r, p)).collect();
        multiset_match(&mapped, b, tol)
    };

    // Anchor pair: the point of `a` most transverse to a[0].
    let (j, transverse) = (1..a.len())
        .map(|j| {
            let c = cross(&a[0], &a[j]);
            (j, dot(&c, &c).sqrt())
        })
        .max_by(|x, y| x.1.total_cmp(&y.1))
        .unwrap_or((0, 0.0));

    if transverse < 1e-6 {
        // Every point lies on the axis through a[0].
        return b
            .iter()
            .map(|bk| minimal_rotation(&a[0], bk))
            .find(|r| check(r));
    }
    let anchor_angle = angle_between(&a[0], &a[j]);
    let fa = frame(&a[0], &a[j]);
    for k in 0..b.len() {
        for l in 0..b.len() {
            if k == l || (angle_between(&b[k], &b[l]) - anchor_angle).abs() > tol {
                continue;
            }
            let fb = frame(&b[k], &b[l]);
            let r = mat_mul(&fb, &transpose(&fa));
            if check(&r) {
                return Some(r);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockstate::EtaBranch;
    use crate::stokes::{covariance, principal_variances};
    use crate::su2rot::apply_rotation;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn coherent_north_pole() {
        let c = to_constellation(&TwoModeState::fock(2, 2).unwrap()).unwrap();
        assert_eq!(c.n_points(), 2);
        assert!(c.points.iter().all(|p| p.theta.abs() < 1e-12));
        let back = from_constellation(&c).unwrap();
        assert!((back.fidelity(&TwoModeState::fock(2, 2).unwrap()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn south_pole_points_come_from_vanished_degree() {
        let c = to_constellation(&TwoModeState::fock(3, 0).unwrap()).unwrap();
        assert!(c.points.iter().all(|p| (p.theta - PI).abs() < 1e-12));
        let mixed = to_constellation(&TwoModeState::fock(3, 1).unwrap())
            .unwrap()
            .sorted();
        let thetas: Vec<f64> = mixed.points.iter().map(|p| p.theta).collect();
        assert_eq!(thetas, vec![0.0, PI, PI]);
    }

    #[test]
    fn noon_three_is_equatorial_triangle() {
        let c = to_constellation(&TwoModeState::noon(3).unwrap()).unwrap();
        for p in &c.points {
            assert!((p.theta - FRAC_PI_2).abs() < 1e-7);
        }
        for angle in c.pairwise_angles() {
            assert!((angle.to_degrees() - 120.0).abs() < 1e-5);
        }
    }

    #[test]
    fn generic_coherent_state_is_a_single_stack() {
        let psi = TwoModeState::su2_coherent(4, 1.1, 2.3).unwrap();
        let c = to_constellation(&psi).unwrap();
        for p in &c.points {
            assert!(
                (p.theta - 1.1).abs() < 1e-9 && (p.phi - 2.3).abs() < 1e-9,
                "{p:?}"
            );
        }
    }

    #[test]
    fn eta_three_canonical_angles() {
        let eta = TwoModeState::eta(3, EtaBranch::Plus).unwrap();
        let (canon, euler) = canonicalize(&to_constellation(&eta).unwrap());
        let pts = &canon.points;
        assert_eq!(pts[0].theta, 0.0);
        assert!((pts[1].theta.to_degrees() - 107.5).abs() < 0.1);
        assert!((pts[2].theta.to_degrees() - 107.5).abs() < 0.1);
        // the two tilted points share theta, so either may sort first
        let mut phis = [pts[1].phi, pts[2].phi];
        phis.sort_by(f64::total_cmp);
        assert_eq!(phis[0], 0.0);
        assert!((phis[1].to_degrees() - 115.47).abs() < 0.05, "{pts:?}");

        // The returned rotation realizes the canonical constellation.
        let rotated = apply_rotation(&eta, &euler).unwrap();
        assert!(to_constellation(&rotated).unwrap().matches(&canon, 1e-7));
    }

    #[test]
    fn noon_two_canonical_form() {
        let c = to_constellation(&TwoModeState::noon(2).unwrap()).unwrap();
        let (canon, euler) = canonicalize(&c);
        assert_eq!(canon.points[0].theta, 0.0);
        assert!(canon.points.iter().any(|p| p.phi == 0.0 && p.theta > 0.0));
        assert!((canon.pairwise_angles()[0] - c.pairwise_angles()[0]).abs() < 1e-12);
        let rotated = apply_rotation(&TwoModeState::noon(2).unwrap(), &euler).unwrap();
        assert!(to_constellation(&rotated).unwrap().matches(&canon, 1e-7));
    }

    #[test]
    fn stacked_points_go_to_the_pole() {
        let c = MajoranaConstellation::new(vec![SpherePoint::new(1.0, 2.0); 2]);
        let (canon, _) = canonicalize(&c);
        assert!(canon.points.iter().all(|p| p.theta.abs() < 1e-12));
    }

    #[test]
    fn biphoton_from_equatorial_pair() {
        let c = MajoranaConstellation::new(vec![
            SpherePoint::new(FRAC_PI_2, 0.0),
            SpherePoint::new(FRAC_PI_2, PI),
        ]);
        let psi = from_constellation(&c).unwrap();
        let mut lambdas = principal_variances(&covariance(&psi).unwrap()).lambdas;
        lambdas.sort_by(f64::total_cmp);
        for (got, want) in lambdas.iter().zip([0.0, 4.0, 4.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn eta_angles_give_isotropic_state() {
        let d = PI / 180.0;
        let c = MajoranaConstellation::new(vec![
            SpherePoint::new(0.0, 0.0),
            SpherePoint::new(107.5 * d, 0.0),
            SpherePoint::new(107.5 * d, 115.47 * d),
        ]);
        let gamma = covariance(&from_constellation(&c).unwrap()).unwrap().gamma;
        for k in 0..3 {
            for l in 0..3 {
                let want = if k == l { 3.0 } else { 0.0 };
                // the published angles are rounded to 0.1 and 0.01 degrees
                assert!((gamma[k][l] - want).abs() < 1e-3, "{gamma:?}");
            }
        }
    }

    #[test]
    fn orbit_relations() {
        let mid = TwoModeState::fock(2, 1).unwrap();
        let noon = TwoModeState::noon(2).unwrap();
        let rel = same_orbit(&mid, &noon, DEFAULT_ORBIT_TOL).unwrap();
        let OrbitRelation::Same(e) = rel else {
            panic!("expected same, got {rel:?}");
        };
        let moved = apply_rotation(&mid, &e).unwrap();
        assert!((moved.fidelity(&noon).unwrap() - 1.0).abs() < 1e-10);

        let eta = TwoModeState::eta(3, EtaBranch::Plus).unwrap();
        let other = TwoModeState::from_real(3, &[0.0, 0.5704, 0.7914, 0.2199]).unwrap();
        assert_eq!(
            same_orbit(&eta, &other, DEFAULT_ORBIT_TOL).unwrap(),
            OrbitRelation::Different
        );
        assert!(same_orbit(&eta, &noon, 1e-6).is_err());
    }

    #[test]
    fn identity_witness_for_equal_states() {
        let psi = TwoModeState::from_real(3, &[0.2, 0.5704, -0.7914, 0.2199]).unwrap();
        let OrbitRelation::Same(e) = same_orbit(&psi, &psi, DEFAULT_ORBIT_TOL).unwrap() else {
            panic!("not same");
        };
        let r = crate::su2rot::induced_so3(&e);
        for i in 0..3 {
            for j in 0..3 {
                assert!((r[i][j] - if i == j { 1.0 } else { 0.0 }).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn chiral_triangle_is_mirror_only() {
        let c = MajoranaConstellation::new(vec![
            SpherePoint::new(0.0, 0.0),
            SpherePoint::new(0.9, 0.0),
            SpherePoint::new(2.0, 1.2),
        ]);
        let a = from_constellation(&c).unwrap();
        let b = from_constellation(&c.mirrored()).unwrap();
        assert_eq!(
            same_orbit(&a, &b, DEFAULT_ORBIT_TOL).unwrap(),
            OrbitRelation::MirrorOnly
        );
    }

    #[test]
    fn csv_is_sorted() {
        let c = MajoranaConstellation::new(vec![
            SpherePoint::new(2.0, 1.0),
            SpherePoint::new(0.5, 3.0),
            SpherePoint::new(0.5, 1.0),
        ]);
        let mut buf = Vec::new();
        c.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "theta_rad,phi_rad\n0.5,1\n0.5,3\n2,1\n");
    }
}
