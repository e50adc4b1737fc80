//! Orbit-generating states for N = 2 and N = 3, per-orbit variance polygons,
//! and parameter sweeps that stack those polygons into the permissible
//! variance volume.
//!
//! Every orbit is represented by a constellation with one point pinned at the
//! north pole and a second on the `phi = 0` meridian. The principal variances
//! of each representative, together with all their permutations (reachable by
//! quarter turns about the Stokes axes), are bucketed by variance sum; each
//! bucket's planar convex hull is one slice of the volume.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::io::{self, Write};

use rayon::prelude::*;
use serde::Serialize;

use crate::fockstate::TwoModeState;
use crate::hull::{convex_hull_indices, plane_coords};
use crate::majorana::{from_constellation, MajoranaConstellation, SpherePoint};
use crate::stokes::{covariance, degeneracy_tolerance, principal_variances};
use crate::textfmt::significant;
use crate::{Error, Result, Vec3};

/// Number of trace buckets between `2N` and `N(N+2)`.
pub const TRACE_BUCKETS: usize = 256;

const ANGLE_SLACK: f64 = 1e-12;

/// `a_R^+ (cos(theta/2) a_R^+ + sin(theta/2) a_L^+) |0,0>`, normalized.
pub fn orbit_state_n2(theta: f64) -> Result<TwoModeState> {
    if !(-ANGLE_SLACK..=PI + ANGLE_SLACK).contains(&theta) {
        return Err(Error::OutOfRange {
            name: "theta",
            value: theta,
            lo: 0.0,
            hi: PI,
        });
    }
    from_constellation(&MajoranaConstellation::new(vec![
        SpherePoint::new(0.0, 0.0),
        SpherePoint::new(theta.clamp(0.0, PI), 0.0),
    ]))
}

/// Three-photon orbit representative: points at the north pole,
/// `(theta2, 0)` and `(theta3, phi3)`.
pub fn orbit_state_n3(theta2: f64, theta3: f64, phi3: f64) -> Result<TwoModeState> {
    for (name, value) in [("theta2", theta2), ("theta3", theta3), ("phi3", phi3)] {
        if !value.is_finite() {
            return Err(Error::OutOfRange {
                name,
                value,
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
            });
        }
    }
    from_constellation(&MajoranaConstellation::new(vec![
        SpherePoint::new(0.0, 0.0),
        SpherePoint::new(theta2, 0.0),
        SpherePoint::new(theta3, phi3),
    ]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PolygonKind {
    Point,
    Triangle,
    Hexagon,
}

/// All variance triplets reachable on one orbit: the distinct permutations of
/// the principal variances, counterclockwise about `(1, 1, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariancePolygon {
    pub kind: PolygonKind,
    pub vertices: Vec<Vec3>,
    pub trace: f64,
}

impl VariancePolygon {
    /// Builds the polygon for ascending `lambdas`; eigenvalues closer than
    /// `degeneracy_tol` are treated as equal.
    pub fn from_lambdas(lambdas: &Vec3, degeneracy_tol: f64) -> Self {
        let mut l = *lambdas;
        l.sort_by(f64::total_cmp);
        let trace = l.iter().sum::<f64>();
        let (kind, vertices) = if l[2] - l[0] <= degeneracy_tol {
            let m = trace / 3.0;
            (PolygonKind::Point, vec![[m, m, m]])
        } else if l[1] - l[0] <= degeneracy_tol || l[2] - l[1] <= degeneracy_tol {
            let (single, pair) = if l[1] - l[0] <= degeneracy_tol {
                (l[2], 0.5 * (l[0] + l[1]))
            } else {
                (l[0], 0.5 * (l[1] + l[2]))
            };
            let vertices = (0..3)
                .map(|i| {
                    let mut v = [pair; 3];
                    v[i] = single;
                    v
                })
                .collect();
            (PolygonKind::Triangle, vertices)
        } else {
            (PolygonKind::Hexagon, permutations(&l).to_vec())
        };
        let mut vertices: Vec<Vec3> = vertices;
        vertices.sort_by(|a, b| azimuth(a).total_cmp(&azimuth(b)));
        Self {
            kind,
            vertices,
            trace,
        }
    }
}

fn azimuth(v: &Vec3) -> f64 {
    let p = plane_coords(v);
    p[1].atan2(p[0])
}

fn permutations(l: &Vec3) -> [Vec3; 6] {
    let [a, b, c] = *l;
    [
        [a, b, c],
        [a, c, b],
        [b, a, c],
        [b, c, a],
        [c, a, b],
        [c, b, a],
    ]
}

pub fn variance_polygon(state: &TwoModeState, degeneracy_tol: f64) -> Result<VariancePolygon> {
    let pv = principal_variances(&covariance(state)?);
    Ok(VariancePolygon::from_lambdas(&pv.lambdas, degeneracy_tol))
}

/// True when the principal variances spread by less than `tol`.
pub fn is_uniform(state: &TwoModeState, tol: f64) -> Result<bool> {
    let l = principal_variances(&covariance(state)?).lambdas;
    Ok(l[2] - l[0] < tol)
}

/// One swept orbit: its generating parameters and sorted principal variances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitSample {
    pub params: [Option<f64>; 3],
    pub lambdas: Vec3,
    pub trace: f64,
}

/// Convex hull of every permuted triplet whose trace falls in one bucket.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SliceHull {
    pub trace_lo: f64,
    pub trace_hi: f64,
    /// Hull vertices, counterclockwise about `(1, 1, 1)`.
    pub vertices: Vec<Vec3>,
}

impl SliceHull {
    pub fn trace(&self) -> f64 {
        0.5 * (self.trace_lo + self.trace_hi)
    }
}

/// Aggregated sweep output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariancePointCloud {
    pub n_photons: usize,
    pub samples: Vec<OrbitSample>,
    pub bucket_width: f64,
    /// Keyed by bucket index, `0..TRACE_BUCKETS`.
    pub slice_hulls: BTreeMap<usize, SliceHull>,
}

impl VariancePointCloud {
    /// Groups samples by trace and hulls each group in its plane.
    pub fn from_samples(n_photons: usize, samples: Vec<OrbitSample>) -> Self {
        let n = n_photons as f64;
        let (lo, hi) = (2.0 * n, n * (n + 2.0));
        let bucket_width = (hi - lo) / TRACE_BUCKETS as f64;

        let mut buckets: BTreeMap<usize, Vec<Vec3>> = BTreeMap::new();
        for s in &samples {
            let index = bucket_index(s.trace, lo, bucket_width);
            buckets
                .entry(index)
                .or_default()
                .extend(permutations(&s.lambdas));
        }
        let slice_hulls = buckets
            .into_par_iter()
            .map(|(index, points)| {
                let planar: Vec<_> = points.iter().map(plane_coords).collect();
                let vertices = convex_hull_indices(&planar)
                    .into_iter()
                    .map(|i| points[i])
                    .collect();
                let trace_lo = lo + index as f64 * bucket_width;
                (
                    index,
                    SliceHull {
                        trace_lo,
                        trace_hi: trace_lo + bucket_width,
                        vertices,
                    },
                )
            })
            .collect();
        Self {
            n_photons,
            samples,
            bucket_width,
            slice_hulls,
        }
    }

    pub fn trace_range(&self) -> Option<(f64, f64)> {
        self.samples.iter().map(|s| s.trace).fold(None, |acc, t| {
            Some(acc.map_or((t, t), |(a, b): (f64, f64)| (a.min(t), b.max(t))))
        })
    }

    /// Slice whose trace interval contains `trace`.
    pub fn slice_at(&self, trace: f64) -> Option<&SliceHull> {
        let n = self.n_photons as f64;
        self.slice_hulls
            .get(&bucket_index(trace, 2.0 * n, self.bucket_width))
    }

    /// `param1,param2,param3,lam1,lam2,lam3,trace`, one row per sample in grid
    /// order; unused parameters are blank.
    pub fn write_points_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "param1,param2,param3,lam1,lam2,lam3,trace")?;
        for s in &self.samples {
            let params: Vec<String> = s
                .params
                .iter()
                .map(|p| p.map(|x| significant(x, 9)).unwrap_or_default())
                .collect();
            writeln!(
                out,
                "{},{},{},{},{}",
                params.join(","),
                significant(s.lambdas[0], 9),
                significant(s.lambdas[1], 9),
                significant(s.lambdas[2], 9),
                significant(s.trace, 9)
            )?;
        }
        Ok(())
    }

    /// `trace,vx,vy,vz`, hull vertices counterclockwise per slice; the trace
    /// column holds the bucket centre.
    pub fn write_hulls_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "trace,vx,vy,vz")?;
        for hull in self.slice_hulls.values() {
            let trace = significant(hull.trace(), 9);
            for v in &hull.vertices {
                writeln!(
                    out,
                    "{trace},{},{},{}",
                    significant(v[0], 9),
                    significant(v[1], 9),
                    significant(v[2], 9)
                )?;
            }
        }
        Ok(())
    }
}

fn bucket_index(trace: f64, lo: f64, width: f64) -> usize {
    (((trace - lo) / width).floor().max(0.0) as usize).min(TRACE_BUCKETS - 1)
}

fn sample(state: &TwoModeState, params: [Option<f64>; 3]) -> Result<OrbitSample> {
    let lambdas = principal_variances(&covariance(state)?).lambdas;
    Ok(OrbitSample {
        params,
        lambdas,
        trace: lambdas.iter().sum(),
    })
}

fn grid(resolution: usize, end: f64) -> impl Iterator<Item = f64> + Clone {
    (0..resolution).map(move |i| end * i as f64 / (resolution - 1) as f64)
}

/// Sweeps the N = 2 orbit parameter over a uniform grid of `resolution`
/// points on `[0, pi]`.
pub fn sweep_n2(resolution: usize) -> Result<VariancePointCloud> {
    if resolution < 2 {
        return Err(Error::Resolution(resolution));
    }
    let samples = grid(resolution, PI)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|theta| sample(&orbit_state_n2(theta)?, [Some(theta), None, None]))
        .collect::<Result<Vec<_>>>()?;
    Ok(VariancePointCloud::from_samples(2, samples))
}

/// Range of the third point's azimuth in N = 3 sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhiRange {
    /// `[0, pi]` inclusive; mirror images repeat the same triplets.
    #[default]
    Half,
    /// `[0, 2 pi)`, for orbit-identity studies.
    Full,
}

/// Sweeps `(theta2, theta3)` over `[0, pi]^2` with `res_theta` points each and
/// `phi3` over `[0, pi]` with `res_phi` points.
pub fn sweep_n3(res_theta: usize, res_phi: usize) -> Result<VariancePointCloud> {
    sweep_n3_with(res_theta, res_phi, PhiRange::Half)
}

/// Grid order is `theta2` (outer), `theta3`, `phi3` (inner). Each `theta2`
/// row is computed independently and rows are concatenated in order, so the
/// result does not depend on the number of worker threads.
pub fn sweep_n3_with(
    res_theta: usize,
    res_phi: usize,
    range: PhiRange,
) -> Result<VariancePointCloud> {
    for r in [res_theta, res_phi] {
        if r < 2 {
            return Err(Error::Resolution(r));
        }
    }
    let phis: Vec<f64> = match range {
        PhiRange::Half => grid(res_phi, PI).collect(),
        PhiRange::Full => (0..res_phi)
            .map(|k| TAU * k as f64 / res_phi as f64)
            .collect(),
    };
    let thetas: Vec<f64> = grid(res_theta, PI).collect();
    let rows = thetas
        .par_iter()
        .map(|&theta2| {
            let mut row = Vec::with_capacity(thetas.len() * phis.len());
            for &theta3 in &thetas {
                for &phi3 in &phis {
                    let state = orbit_state_n3(theta2, theta3, phi3)?;
                    row.push(sample(&state, [Some(theta2), Some(theta3), Some(phi3)])?);
                }
            }
            Ok(row)
        })
        .collect::<Result<Vec<Vec<OrbitSample>>>>()?;
    Ok(VariancePointCloud::from_samples(3, rows.concat()))
}

/// Default degeneracy tolerance for `variance_polygon` at `N` photons.
pub fn default_degeneracy_tol(n_photons: usize) -> f64 {
    degeneracy_tolerance(n_photons)
}
