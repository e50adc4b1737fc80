//! Planar convex hulls and the variance-space plane `x + y + z = trace`.

use crate::Vec3;

pub type Point2 = [f64; 2];

const INV_SQRT2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Orthonormal in-plane basis for planes normal to `(1, 1, 1)`; together with
/// `(1, 1, 1)/sqrt(3)` it forms a right-handed frame, so counterclockwise in
/// these coordinates is counterclockwise about `(1, 1, 1)`.
pub const PLANE_E1: Vec3 = [INV_SQRT2, -INV_SQRT2, 0.0];
pub const PLANE_E2: Vec3 = [
    0.408_248_290_463_863_1,
    0.408_248_290_463_863_1,
    -0.816_496_580_927_726_1,
];

/// In-plane coordinates of a variance triplet (its component along
/// `(1, 1, 1)` is dropped).
pub fn plane_coords(v: &Vec3) -> Point2 {
    [
        v[0] * PLANE_E1[0] + v[1] * PLANE_E1[1] + v[2] * PLANE_E1[2],
        v[0] * PLANE_E2[0] + v[1] * PLANE_E2[1] + v[2] * PLANE_E2[2],
    ]
}

/// Point of the plane `x + y + z = trace` with in-plane coordinates `p`.
pub fn from_plane(p: &Point2, trace: f64) -> Vec3 {
    let c = trace / 3.0;
    [0, 1, 2].map(|i| c + p[0] * PLANE_E1[i] + p[1] * PLANE_E2[i])
}

fn turn(o: &Point2, a: &Point2, b: &Point2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Indices of the hull vertices in counterclockwise order, starting from the
/// lowest-leftmost point. Collinear boundary points are dropped.
pub fn convex_hull_indices(points: &[Point2]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| {
        points[i][0]
            .total_cmp(&points[j][0])
            .then(points[i][1].total_cmp(&points[j][1]))
    });
    order.dedup_by(|a, b| points[*a] == points[*b]);
    if order.len() < 3 {
        return order;
    }

    // monotone chain
    let mut lower: Vec<usize> = Vec::new();
    for &i in &order {
        while lower.len() >= 2
            && turn(
                &points[lower[lower.len() - 2]],
                &points[lower[lower.len() - 1]],
                &points[i],
            ) <= 0.0
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in order.iter().rev() {
        while upper.len() >= 2
            && turn(
                &points[upper[upper.len() - 2]],
                &points[upper[upper.len() - 1]],
                &points[i],
            ) <= 0.0
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    convex_hull_indices(points)
        .into_iter()
        .map(|i| points[i])
        .collect()
}

fn segment_distance(p: &Point2, a: &Point2, b: &Point2) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0)
    };
    (p[0] - a[0] - t * dx).hypot(p[1] - a[1] - t * dy)
}

/// Signed distance from `p` to a counterclockwise convex polygon: positive
/// outside, negative inside. Degenerate hulls (a point or a segment) have no
/// interior.
pub fn signed_distance(hull: &[Point2], p: &Point2) -> f64 {
    match hull.len() {
        0 => f64::INFINITY,
        1 => (p[0] - hull[0][0]).hypot(p[1] - hull[0][1]),
        _ => {
            let edges = || (0..hull.len()).map(|i| (&hull[i], &hull[(i + 1) % hull.len()]));
            let distance = edges()
                .map(|(a, b)| segment_distance(p, a, b))
                .fold(f64::INFINITY, f64::min);
            let inside = hull.len() >= 3 && edges().all(|(a, b)| turn(a, b, p) > 0.0);
            if inside {
                -distance
            } else {
                distance
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn square_with_interior_points() {
        let pts = [
            [0.0, 0.0],
            [1.0, 0.0],
            [0.5, 0.5],
            [1.0, 1.0],
            [0.0, 1.0],
            [0.5, 0.0],
        ];
        let hull = convex_hull(&pts);
        assert_eq!(hull, vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
        assert_eq!(signed_distance(&hull, &[0.5, 0.25]), -0.25);
        assert_eq!(signed_distance(&hull, &[2.0, 0.5]), 1.0);
        assert_eq!(signed_distance(&hull, &[1.0, 0.5]), 0.0);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(convex_hull(&[]).is_empty());
        assert_eq!(convex_hull(&[[1.0, 2.0], [1.0, 2.0]]), vec![[1.0, 2.0]]);
        let collinear = convex_hull(&[[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]);
        assert_eq!(collinear, vec![[0.0, 0.0], [2.0, 2.0]]);
        assert!((signed_distance(&collinear, &[1.0, 0.0]) - INV_SQRT2).abs() < 1e-15);
    }

    #[test]
    fn plane_basis_is_orthonormal_and_right_handed() {
        let dot = |a: &Vec3, b: &Vec3| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        assert!((dot(&PLANE_E1, &PLANE_E1) - 1.0).abs() < 1e-15);
        assert!((dot(&PLANE_E2, &PLANE_E2) - 1.0).abs() < 1e-15);
        assert!(dot(&PLANE_E1, &PLANE_E2).abs() < 1e-15);
        let n = crate::eigen3::cross(&PLANE_E1, &PLANE_E2);
        for x in n {
            assert!((x - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        }
        let v = [0.75, 0.75, 2.5];
        let back = from_plane(&plane_coords(&v), 4.0);
        for i in 0..3 {
            assert!((back[i] - v[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn infeasible_triplet_outside_coherent_triangle() {
        // barycentric coordinate -1/4 on the opposite vertex, triangle height
        // sqrt(6): distance sqrt(6)/4
        let tri: Vec<Point2> = [[2.0, 2.0, 0.0], [2.0, 0.0, 2.0], [0.0, 2.0, 2.0]]
            .iter()
            .map(plane_coords)
            .collect();
        let hull = convex_hull(&tri);
        let d = signed_distance(&hull, &plane_coords(&[0.75, 0.75, 2.5]));
        assert!((d - 6f64.sqrt() / 4.0).abs() < 1e-12, "{d}");
    }

    proptest! {
        #[test]
        fn all_points_inside_or_on_hull(pts in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..60)) {
            let pts: Vec<Point2> = pts.into_iter().map(|(x, y)| [x, y]).collect();
            let hull = convex_hull(&pts);
            for p in &pts {
                prop_assert!(signed_distance(&hull, p) <= 1e-9);
            }
            // counterclockwise: every consecutive triple turns left
            if hull.len() >= 3 {
                for i in 0..hull.len() {
                    let (a, b, c) = (&hull[i], &hull[(i + 1) % hull.len()], &hull[(i + 2) % hull.len()]);
                    prop_assert!(turn(a, b, c) > 0.0);
                }
            }
        }
    }
}
