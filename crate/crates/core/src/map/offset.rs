//! Lateral offset of a node route toward the right side of travel.

use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::map::{NodeId, ParkingMap};

/// When the miter point would sit further than this many offsets from the
/// corner, a bevel join (two points) is used instead.
const MITER_LIMIT: f64 = 3.0;

/// Shifts each route segment perpendicular-right of the travel direction by
/// `offset` meters, joining corners with a clamped miter.
pub fn offset_path(route: &[NodeId], map: &ParkingMap, offset: f64) -> Result<Vec<Vec2>> {
    if route.len() < 2 {
        return Err(Error::InvalidInput(
            "offset_path requires a route with at least 2 nodes".into(),
        ));
    }
    if offset >= map.lane_width {
        return Err(Error::InvalidInput(format!(
            "offset {offset} must be smaller than the lane width {}",
            map.lane_width
        )));
    }
    if offset < 0.0 {
        return Err(Error::InvalidInput("offset must be nonnegative".into()));
    }
    let pts: Vec<Vec2> = route
        .iter()
        .map(|n| {
            map.graph
                .position(*n)
                .ok_or_else(|| Error::InvalidInput(format!("node {n} does not exist")))
        })
        .collect::<Result<_>>()?;
    if offset == 0.0 {
        return Ok(pts);
    }

    // Right-of-travel normal for each segment.
    let mut dirs: Vec<Vec2> = Vec::with_capacity(pts.len() - 1);
    for w in pts.windows(2) {
        let d = (w[1] - w[0])
            .normalized()
            .ok_or_else(|| Error::InvalidInput("route contains a zero-length segment".into()))?;
        dirs.push(d);
    }
    let right = |d: Vec2| -d.perp();

    let mut out = Vec::with_capacity(pts.len());
    out.push(pts[0] + right(dirs[0]) * offset);
    for i in 1..pts.len() - 1 {
        let d_in = dirs[i - 1];
        let d_out = dirs[i];
        let corner = pts[i];
        let cross = d_in.cross(d_out);
        if cross.abs() < 1e-9 {
            // Straight-through or reversal: single offset point.
            out.push(corner + right(d_out) * offset);
            continue;
        }
        // Intersection of the two offset lines.
        let a = corner + right(d_in) * offset;
        let b = corner + right(d_out) * offset;
        let t = (b - a).cross(d_out) / cross;
        let miter = a + d_in * t;
        if miter.dist(corner) <= offset * MITER_LIMIT {
            out.push(miter);
        } else {
            out.push(a);
            out.push(b);
        }
    }
    out.push(*pts.last().unwrap() + right(*dirs.last().unwrap()) * offset);
    Ok(out)
}

/// Polyline length.
pub fn polyline_length(pts: &[Vec2]) -> f64 {
    pts.windows(2).map(|w| w[0].dist(w[1])).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{ParkingMap, WaypointGraph};

    fn line_map(points: &[(f64, f64)], closed_pairs: &[(u32, u32)]) -> ParkingMap {
        let nodes: Vec<(NodeId, Vec2)> = points
            .iter()
            .enumerate()
            .map(|(i, (x, y))| (NodeId(i as u32), Vec2::new(*x, *y)))
            .collect();
        let mut edges = Vec::new();
        for (a, b) in closed_pairs {
            edges.push((NodeId(*a), NodeId(*b)));
            edges.push((NodeId(*b), NodeId(*a)));
        }
        let graph = WaypointGraph::new(nodes, edges).unwrap();
        let entrance = graph.position(NodeId(0)).unwrap();
        ParkingMap::new(vec![], vec![], graph, entrance, NodeId(0), 7.0).unwrap()
    }

    #[test]
    fn eastbound_shifts_south() {
        let map = line_map(&[(0.0, 0.0), (10.0, 0.0), (20.0, 0.0)], &[(0, 1), (1, 2)]);
        let p = offset_path(&[NodeId(0), NodeId(1), NodeId(2)], &map, 1.0).unwrap();
        for v in &p {
            assert!((v.y + 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn northbound_shifts_east() {
        let map = line_map(&[(0.0, 0.0), (0.0, 10.0)], &[(0, 1)]);
        let p = offset_path(&[NodeId(0), NodeId(1)], &map, 1.0).unwrap();
        for v in &p {
            assert!((v.x - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_offset_is_identity() {
        let map = line_map(&[(0.0, 0.0), (10.0, 0.0), (10.0, 10.0)], &[(0, 1), (1, 2)]);
        let p = offset_path(&[NodeId(0), NodeId(1), NodeId(2)], &map, 0.0).unwrap();
        assert_eq!(
            p,
            vec![
                Vec2::new(0.0, 0.0),
                Vec2::new(10.0, 0.0),
                Vec2::new(10.0, 10.0)
            ]
        );
    }

    #[test]
    fn l_shape_miter_has_no_self_intersection() {
        let map = line_map(&[(0.0, 0.0), (10.0, 0.0), (10.0, 10.0)], &[(0, 1), (1, 2)]);
        let route = [NodeId(0), NodeId(1), NodeId(2)];
        let p = offset_path(&route, &map, 1.0).unwrap();
        // Brute-force segment intersection check over non-adjacent pairs.
        let seg_intersect = |a: Vec2, b: Vec2, c: Vec2, d: Vec2| {
            let d1 = (b - a).cross(c - a);
            let d2 = (b - a).cross(d - a);
            let d3 = (d - c).cross(a - c);
            let d4 = (d - c).cross(b - c);
            (d1 * d2 < -1e-12) && (d3 * d4 < -1e-12)
        };
        for i in 0..p.len() - 1 {
            for j in (i + 2)..p.len() - 1 {
                assert!(
                    !seg_intersect(p[i], p[i + 1], p[j], p[j + 1]),
                    "segments {i} and {j} intersect"
                );
            }
        }
        // Length within 5% of the input route.
        let in_len = 20.0;
        let out_len = polyline_length(&p);
        assert!((out_len - in_len).abs() / in_len < 0.05, "length {out_len}");
    }

    #[test]
    fn reversed_straight_route_mirrors_offset() {
        let map = line_map(&[(0.0, 0.0), (10.0, 0.0), (20.0, 0.0)], &[(0, 1), (1, 2)]);
        let fwd = offset_path(&[NodeId(0), NodeId(1), NodeId(2)], &map, 1.25).unwrap();
        let rev = offset_path(&[NodeId(2), NodeId(1), NodeId(0)], &map, 1.25).unwrap();
        for (a, b) in fwd.iter().zip(rev.iter().rev()) {
            // Reflection across the centerline y = 0.
            assert!((a.x - b.x).abs() < 1e-6);
            assert!((a.y + b.y).abs() < 1e-6);
        }
    }

    #[test]
    fn offset_wider_than_lane_rejected() {
        let map = line_map(&[(0.0, 0.0), (10.0, 0.0)], &[(0, 1)]);
        assert!(offset_path(&[NodeId(0), NodeId(1)], &map, 7.0).is_err());
    }
}
