//! Simultaneous complex root finding (Aberth-Ehrlich iteration).

use num_complex::Complex64;

const MAX_ITERATIONS: usize = 500;

/// Roots of a polynomial together with the number of roots at infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialRoots {
    /// Finite roots, with multiplicity.
    pub finite: Vec<Complex64>,
    /// Degree deficiency of the nominal polynomial: leading coefficients that
    /// vanished (relative to the coefficient norm).
    pub at_infinity: usize,
}

/// Roots of `sum_k coeffs[k] z^k`, where the nominal degree is
/// `coeffs.len() - 1`.
///
/// Leading coefficients below `deflation_tol * ||coeffs||` are dropped and
/// reported as roots at infinity; trailing zero coefficients are removed as
/// exact roots at the origin. The remaining polynomial is solved by
/// Aberth-Ehrlich iteration started from a circle of radius
/// `|c_0 / c_deg|^(1/deg)`.
pub fn roots(coeffs: &[Complex64], deflation_tol: f64) -> PolynomialRoots {
    let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let nominal = coeffs.len().saturating_sub(1);
    if norm == 0.0 {
        return PolynomialRoots {
            finite: Vec::new(),
            at_infinity: nominal,
        };
    }

    let significant = |c: &Complex64| c.norm() >= deflation_tol * norm;
    let top = coeffs
        .iter()
        .rposition(significant)
        .expect("nonzero polynomial");
    let bottom = coeffs
        .iter()
        .position(significant)
        .expect("nonzero polynomial");
    let at_infinity = nominal - top;

    let mut finite = vec![Complex64::new(0.0, 0.0); bottom];
    let reduced = &coeffs[bottom..=top];
    finite.extend(aberth(reduced));
    PolynomialRoots {
        finite,
        at_infinity,
    }
}

/// Aberth-Ehrlich on a polynomial with nonzero constant and leading terms.
fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let degree = coeffs.len() - 1;
    match degree {
        0 => return Vec::new(),
        1 => return vec![-coeffs[0] / coeffs[1]],
        _ => {}
    }
    let lead = coeffs[degree];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let derivative: Vec<Complex64> = monic
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();

    let radius = monic[0].norm().powf(1.0 / degree as f64);
    // Offsetting the start angles by irrational fractions of a turn keeps the
    // initial guesses off any symmetry axis of the root set.
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = std::f64::consts::TAU * (k as f64 + 0.25 * std::f64::consts::SQRT_2)
                / degree as f64
                + 0.5 * std::f64::consts::E;
            Complex64::from_polar(radius, angle)
        })
        .collect();

    let mut converged = vec![false; degree];
    for _ in 0..MAX_ITERATIONS {
        for i in 0..degree {
            if converged[i] {
                continue;
            }
            let (p, scale) = horner_with_scale(&monic, z[i]);
            if p.norm() <= 1e-15 * scale {
                converged[i] = true;
                continue;
            }
            let dp = horner(&derivative, z[i]);
            let ratio = p / dp;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                if step.norm() <= 1e-16 * z[i].norm() {
                    converged[i] = true;
                }
            }
        }
        if converged.iter().all(|&c| c) {
            break;
        }
    }
    // Newton polish for simple roots.
    for zi in z.iter_mut() {
        let p = horner(&monic, *zi);
        let dp = horner(&derivative, *zi);
        let step = p / dp;
        if step.is_finite() && step.norm() < 1e-8 * zi.norm().max(1.0) {
            let candidate = *zi - step;
            if horner(&monic, candidate).norm() <= p.norm() {
                *zi = candidate;
            }
        }
    }
    z
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Value and the rounding scale `sum_k |c_k| |z|^k` used as a backward-error
/// reference.
fn horner_with_scale(coeffs: &[Complex64], z: Complex64) -> (Complex64, f64) {
    let r = z.norm();
    coeffs
        .iter()
        .rev()
        .fold((Complex64::new(0.0, 0.0), 0.0), |(acc, scale), &c| {
            (acc * z + c, scale * r + c.norm())
        })
}

/// Coefficients of the `order`-th derivative.
pub fn derivative(coeffs: &[Complex64], order: usize) -> Vec<Complex64> {
    let mut d = coeffs.to_vec();
    for _ in 0..order {
        d = d
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect();
    }
    d
}

/// Newton iteration from `z`, accepting only steps that do not increase `|P|`.
pub fn newton_refine(coeffs: &[Complex64], mut z: Complex64) -> Complex64 {
    let dp = derivative(coeffs, 1);
    let mut value = horner(coeffs, z).norm();
    for _ in 0..50 {
        let step = horner(coeffs, z) / horner(&dp, z);
        if !step.is_finite() || value == 0.0 {
            break;
        }
        let candidate = z - step;
        let next = horner(coeffs, candidate).norm();
        if next > value {
            break;
        }
        let done = step.norm() <= 1e-16 * candidate.norm().max(1e-300);
        z = candidate;
        value = next;
        if done {
            break;
        }
    }
    z
}

/// Expands `lead * prod_j (z - r_j)` into ascending coefficients.
pub fn from_roots(roots: &[Complex64], lead: Complex64) -> Vec<Complex64> {
    let mut coeffs = vec![lead];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        coeffs = next;
    }
    coeffs
}
