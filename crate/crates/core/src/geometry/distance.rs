//! Signed distance and intersection tests between convex polygons.
//!
//! The signed distance is the Euclidean separation when the polygons are
//! disjoint, zero at contact, and the negative penetration depth (minimal
//! translation to separate) when they overlap. Both branches are exact for
//! polygons: separation is attained at a vertex-edge pair and penetration
//! along an edge normal of one of the two polygons.

use super::{ConvexPolygon, Vec2};

/// Distance from point `p` to the closed segment `[a, b]`.
pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq <= 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len_sq).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// Interval of projections of `poly` onto the unit axis `axis`.
fn project(poly: &ConvexPolygon, axis: Vec2) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in poly.vertices() {
        let d = v.dot(axis);
        lo = lo.min(d);
        hi = hi.max(d);
    }
    (lo, hi)
}

/// Separating-axis sweep over the edge normals of both polygons.
///
/// Returns `(best_gap, min_overlap)`: `best_gap > 0` iff the polygons are
/// disjoint; `min_overlap` is the exact penetration depth when they are not.
fn sat_gaps(p: &ConvexPolygon, q: &ConvexPolygon) -> (f64, f64) {
    let mut best_gap = f64::NEG_INFINITY;
    let mut min_overlap = f64::INFINITY;
    let mut consider = |axis: Vec2| {
        let Some(axis) = axis.normalized() else {
            return;
        };
        let (plo, phi) = project(p, axis);
        let (qlo, qhi) = project(q, axis);
        let gap = (qlo - phi).max(plo - qhi);
        best_gap = best_gap.max(gap);
        let overlap = phi.min(qhi) - plo.max(qlo);
        min_overlap = min_overlap.min(overlap);
    };
    for (a, b) in p.edges() {
        consider((b - a).perp());
    }
    for (a, b) in q.edges() {
        consider((b - a).perp());
    }
    (best_gap, min_overlap)
}

/// Minimal distance between the boundaries of two disjoint polygons.
fn boundary_distance(p: &ConvexPolygon, q: &ConvexPolygon) -> f64 {
    let mut best = f64::INFINITY;
    for v in p.vertices() {
        for (a, b) in q.edges() {
            best = best.min(point_segment_distance(*v, a, b));
        }
    }
    for v in q.vertices() {
        for (a, b) in p.edges() {
            best = best.min(point_segment_distance(*v, a, b));
        }
    }
    best
}

/// Signed distance between two convex polygons: positive separation,
/// zero at contact, negative penetration depth when overlapping.
pub fn signed_distance(p: &ConvexPolygon, q: &ConvexPolygon) -> f64 {
    let (gap, overlap) = sat_gaps(p, q);
    if gap > 0.0 {
        boundary_distance(p, q)
    } else {
        -overlap.max(0.0)
    }
}

/// True iff the closed regions share at least one point.
pub fn intersects(p: &ConvexPolygon, q: &ConvexPolygon) -> bool {
    let (gap, _) = sat_gaps(p, q);
    gap <= 0.0
}

#[cfg(test)]
mod tests {
    use super::super::sample::random_convex_polygon;
    use super::super::{body_polygon, Vec2};
    use super::*;
    use rand::SeedableRng;

    fn unit_square_at(x: f64, y: f64) -> ConvexPolygon {
        body_polygon(Vec2::new(x, y), 0.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn separated_squares() {
        let a = unit_square_at(0.0, 0.0);
        let b = unit_square_at(3.0, 0.0);
        assert!((signed_distance(&a, &b) - 2.0).abs() < 1e-12);
        assert!(!intersects(&a, &b));
    }

    #[test]
    fn identical_squares_penetrate_by_side() {
        let a = unit_square_at(0.0, 0.0);
        let b = unit_square_at(0.0, 0.0);
        assert!((signed_distance(&a, &b) + 1.0).abs() < 1e-12);
        assert!(intersects(&a, &b));
    }

    #[test]
    fn touching_squares() {
        let a = unit_square_at(0.0, 0.0);
        let b = unit_square_at(1.0, 0.0);
        assert!(signed_distance(&a, &b).abs() < 1e-12);
        assert!(intersects(&a, &b));
    }

    #[test]
    fn symmetry_and_translation_invariance() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(11);
        for _ in 0..100 {
            let p = random_convex_polygon(&mut rng, Vec2::new(-1.0, 0.5), 2.0, 8);
            let q = random_convex_polygon(&mut rng, Vec2::new(1.5, -0.5), 2.0, 8);
            let d_pq = signed_distance(&p, &q);
            let d_qp = signed_distance(&q, &p);
            assert!((d_pq - d_qp).abs() < 1e-9);
            let shift = Vec2::new(13.25, -7.5);
            let d_shift = signed_distance(&p.translated(shift), &q.translated(shift));
            assert!((d_pq - d_shift).abs() < 1e-9);
        }
    }

    #[test]
    fn intersects_agrees_with_signed_distance() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(23);
        for _ in 0..100 {
            let p = random_convex_polygon(&mut rng, Vec2::ZERO, 2.5, 7);
            let q = random_convex_polygon(&mut rng, Vec2::new(1.0, 1.0), 2.5, 7);
            let d = signed_distance(&p, &q);
            assert_eq!(intersects(&p, &q), d <= 1e-9, "distance {d}");
        }
    }
}
