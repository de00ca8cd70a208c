//! Convex hulls and random convex polygon generation for tests and tooling.

use rand::Rng;

use super::{ConvexPolygon, Vec2};

/// Andrew's monotone chain. Returns hull vertices in counter-clockwise order.
pub fn convex_hull(points: &[Vec2]) -> Vec<Vec2> {
    let mut pts: Vec<Vec2> = points.to_vec();
    pts.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap().then(a.y.partial_cmp(&b.y).unwrap()));
    pts.dedup_by(|a, b| a.dist(*b) < 1e-12);
    let n = pts.len();
    if n < 3 {
        return pts;
    }
    let mut hull: Vec<Vec2> = Vec::with_capacity(2 * n);
    for &p in pts.iter() {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            if (b - a).cross(p - a) <= 1e-12 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            if (b - a).cross(p - a) <= 1e-12 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Random strictly convex polygon with up to `max_vertices` vertices, drawn
/// as the hull of points sampled in a disc around `center`.
pub fn random_convex_polygon(
    rng: &mut impl Rng,
    center: Vec2,
    radius: f64,
    max_vertices: usize,
) -> ConvexPolygon {
    loop {
        let k = rng.gen_range(3..=max_vertices.max(3));
        let mut pts = Vec::with_capacity(k + 4);
        for _ in 0..(k + 4) {
            let r = radius * rng.gen_range(0.2f64..1.0).sqrt();
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            pts.push(center + Vec2::new(theta.cos(), theta.sin()) * r);
        }
        let hull = convex_hull(&pts);
        if hull.len() >= 3 {
            if let Ok(poly) = ConvexPolygon::new(hull) {
                if poly.len() <= max_vertices.max(3) {
                    return poly;
                }
                // Too many hull vertices: keep a subset.
                let step = poly.len() as f64 / max_vertices as f64;
                let subset: Vec<Vec2> = (0..max_vertices)
                    .map(|i| poly.vertices()[(i as f64 * step) as usize])
                    .collect();
                if let Ok(p) = ConvexPolygon::new(subset) {
                    return p;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn hull_of_square_with_interior_points() {
        let pts = vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(0.5, 0.5),
            Vec2::new(0.25, 0.75),
        ];
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 4);
    }

    #[test]
    fn random_polygons_are_valid() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(3);
        for _ in 0..200 {
            let p = random_convex_polygon(&mut rng, Vec2::new(1.0, -2.0), 3.0, 8);
            assert!(p.len() >= 3);
        }
    }
}
