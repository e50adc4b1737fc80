//! Eigen-decomposition of real symmetric 3x3 matrices.
//!
//! The eigenvalues come from the trigonometric solution of the characteristic
//! cubic. When the cubic is close to a repeated root the eigenvectors obtained
//! from cross products of `A - lambda I` rows become ill-conditioned, so those
//! cases (and any case whose residual check fails) go through cyclic Jacobi
//! rotations instead.

use crate::{Mat3, Vec3};

/// `1 - r^2` below this counts as a repeated root of the characteristic cubic.
const DISCRIMINANT_TOL: f64 = 1e-12;

/// Eigenvalues sorted ascending and matching unit eigenvectors, `vectors[k]`
/// belonging to `values[k]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricEigen3 {
    pub values: Vec3,
    pub vectors: Mat3,
}

pub fn symmetric_eigen(a: &Mat3) -> SymmetricEigen3 {
    let a = symmetrize(a);
    let scale = frobenius(&a).max(f64::MIN_POSITIVE);

    let q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
    let mut b = a;
    for (i, row) in b.iter_mut().enumerate() {
        row[i] -= q;
    }
    let p = (frobenius(&b).powi(2) / 6.0).sqrt();
    if p <= 1e-15 * scale {
        // Already a multiple of the identity.
        return SymmetricEigen3 {
            values: [q; 3],
            vectors: identity(),
        };
    }

    let c = b.map(|row| row.map(|x| x / p));
    let r = (det(&c) / 2.0).clamp(-1.0, 1.0);
    if 1.0 - r * r < DISCRIMINANT_TOL {
        return jacobi(&a);
    }

    let phi = r.acos() / 3.0;
    let largest = q + 2.0 * p * phi.cos();
    let smallest = q + 2.0 * p * (phi + 2.0 * std::f64::consts::FRAC_PI_3).cos();
    let middle = 3.0 * q - largest - smallest;

    let v_min = null_vector(&a, smallest);
    let v_max = null_vector(&a, largest);
    let v_mid = normalize(cross(&v_max, &v_min));
    let result = SymmetricEigen3 {
        values: [smallest, middle, largest],
        vectors: [
            canonical_sign(v_min),
            canonical_sign(v_mid),
            canonical_sign(v_max),
        ],
    };

    if residual(&a, &result) > 1e-11 * scale {
        jacobi(&a)
    } else {
        result
    }
}

/// Cyclic Jacobi sweeps; used directly for (near-)degenerate spectra.
pub fn jacobi(a: &Mat3) -> SymmetricEigen3 {
    let mut m = symmetrize(a);
    let mut v = identity();
    let scale = frobenius(&m).max(f64::MIN_POSITIVE);

    for _ in 0..64 {
        let off = (m[0][1].powi(2) + m[0][2].powi(2) + m[1][2].powi(2)).sqrt();
        if off <= 1e-17 * scale {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            if m[p][q] == 0.0 {
                continue;
            }
            let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let t = if theta == 0.0 { 1.0 } else { t };
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            // m <- J^T m J with J the (p,q) Givens rotation
            for k in 0..3 {
                let mkp = m[k][p];
                let mkq = m[k][q];
                m[k][p] = c * mkp - s * mkq;
                m[k][q] = s * mkp + c * mkq;
            }
            for k in 0..3 {
                let mpk = m[p][k];
                let mqk = m[q][k];
                m[p][k] = c * mpk - s * mqk;
                m[q][k] = s * mpk + c * mqk;
            }
            for row in v.iter_mut() {
                let vp = row[p];
                let vq = row[q];
                row[p] = c * vp - s * vq;
                row[q] = s * vp + c * vq;
            }
        }
    }

    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| m[i][i].total_cmp(&m[j][j]));
    let values = order.map(|i| m[i][i]);
    // Columns of v are the eigenvectors.
    let vectors = order.map(|i| canonical_sign([v[0][i], v[1][i], v[2][i]]));
    SymmetricEigen3 { values, vectors }
}

fn null_vector(a: &Mat3, lambda: f64) -> Vec3 {
    let mut m = *a;
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= lambda;
    }
    let candidates = [
        cross(&m[0], &m[1]),
        cross(&m[0], &m[2]),
        cross(&m[1], &m[2]),
    ];
    let best = candidates
        .into_iter()
        .max_by(|x, y| dot(x, x).total_cmp(&dot(y, y)))
        .expect("three candidates");
    normalize(best)
}

fn residual(a: &Mat3, eig: &SymmetricEigen3) -> f64 {
    (0..3)
        .map(|k| {
            let av = mat_vec(a, &eig.vectors[k]);
            (0..3)
                .map(|i| (av[i] - eig.values[k] * eig.vectors[k][i]).powi(2))
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max)
}

/// Flips `v` so that its first non-negligible component is positive.
fn canonical_sign(v: Vec3) -> Vec3 {
    match v.iter().find(|x| x.abs() > 1e-12) {
        Some(&x) if x < 0.0 => v.map(|c| -c),
        _ => v,
    }
}

fn symmetrize(a: &Mat3) -> Mat3 {
    let mut s = *a;
    for i in 0..3 {
        for j in (i + 1)..3 {
            let avg = 0.5 * (a[i][j] + a[j][i]);
            s[i][j] = avg;
            s[j][i] = avg;
        }
    }
    s
}

fn identity() -> Mat3 {
    [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
}

fn frobenius(a: &Mat3) -> f64 {
    a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

fn det(a: &Mat3) -> f64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

pub(crate) fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn normalize(v: Vec3) -> Vec3 {
    let n = dot(&v, &v).sqrt();
    v.map(|x| x / n)
}

pub(crate) fn mat_vec(a: &Mat3, v: &Vec3) -> Vec3 {
    [dot(&a[0], v), dot(&a[1], v), dot(&a[2], v)]
}

pub(crate) fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub(crate) fn transpose(a: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i];
        }
    }
    out
}
