//! Synthetic perpendicular-parking lots used by the bundled scenarios and
//! tests. Aisles run east-west, spots are indexed west to east within each
//! row, and a single entrance sits west of the lot.

use crate::geometry::Vec2;
use crate::map::{AisleSide, NodeId, ParkingMap, ParkingSpot, SpotId, WaypointGraph};

/// Layout parameters for a rectangular multi-aisle lot.
#[derive(Clone, Debug)]
pub struct LotLayout {
    /// Aisle centerline y coordinates, north to south.
    pub aisle_ys: Vec<f64>,
    /// Spot rows as (aisle index, side of that aisle).
    pub rows: Vec<(usize, AisleSide)>,
    pub spots_per_row: usize,
    pub spot_width: f64,
    pub spot_length: f64,
    pub lane_width: f64,
}

impl LotLayout {
    pub fn build(&self) -> ParkingMap {
        let w = self.spot_width;
        let span = w * (self.spots_per_row as f64 - 1.0);
        let west_x = -6.0;
        let east_x = span + 5.4;
        let entrance = Vec2::new(west_x - 6.0, self.aisle_ys[0]);

        let mut nodes: Vec<(NodeId, Vec2)> = Vec::new();
        let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
        let mut next_id = 0u32;
        let mut add_node = |nodes: &mut Vec<(NodeId, Vec2)>, p: Vec2| {
            let id = NodeId(next_id);
            next_id += 1;
            nodes.push((id, p));
            id
        };
        let mut both = |edges: &mut Vec<(NodeId, NodeId)>, a: NodeId, b: NodeId| {
            edges.push((a, b));
            edges.push((b, a));
        };

        let entrance_node = add_node(&mut nodes, entrance);

        // Aisle chains: west end, one node per spot column, east end.
        let mut aisle_nodes: Vec<Vec<NodeId>> = Vec::new();
        for &y in &self.aisle_ys {
            let mut chain = Vec::new();
            chain.push(add_node(&mut nodes, Vec2::new(west_x, y)));
            for k in 0..self.spots_per_row {
                chain.push(add_node(&mut nodes, Vec2::new(w * k as f64, y)));
            }
            chain.push(add_node(&mut nodes, Vec2::new(east_x, y)));
            for pair in chain.windows(2) {
                both(&mut edges, pair[0], pair[1]);
            }
            aisle_nodes.push(chain);
        }

        // North-south connectors at both ends, with intermediate nodes so no
        // edge is much longer than the aisle node pitch.
        for x in [west_x, east_x] {
            let mut prev: Option<NodeId> = None;
            for (a, &y) in self.aisle_ys.iter().enumerate() {
                let here = if x == west_x {
                    aisle_nodes[a][0]
                } else {
                    *aisle_nodes[a].last().unwrap()
                };
                if let Some(p) = prev {
                    let y_prev = self.aisle_ys[a - 1];
                    let mut chain = vec![p];
                    let gap = y_prev - y;
                    let n_mid = (gap.abs() / 6.5).floor() as usize;
                    for m in 1..=n_mid {
                        let ym = y_prev - gap * m as f64 / (n_mid + 1) as f64;
                        chain.push(add_node(&mut nodes, Vec2::new(x, ym)));
                    }
                    chain.push(here);
                    for pair in chain.windows(2) {
                        both(&mut edges, pair[0], pair[1]);
                    }
                }
                prev = Some(here);
            }
        }
        both(&mut edges, entrance_node, aisle_nodes[0][0]);

        let mut spots = Vec::new();
        let mut spot_id = 0u32;
        for &(aisle, side) in &self.rows {
            let y_offset = self.lane_width / 2.0 + self.spot_length / 2.0;
            let y = match side {
                AisleSide::North => self.aisle_ys[aisle] + y_offset,
                AisleSide::South => self.aisle_ys[aisle] - y_offset,
            };
            for k in 0..self.spots_per_row {
                spots.push(ParkingSpot {
                    id: SpotId(spot_id),
                    center: Vec2::new(w * k as f64, y),
                    width: self.spot_width,
                    length: self.spot_length,
                    aisle_side: side,
                    adjacent_aisle_node: aisle_nodes[aisle][k + 1],
                });
                spot_id += 1;
            }
        }

        let graph = WaypointGraph::new(nodes, edges).expect("synthetic graph is valid");
        ParkingMap::new(
            spots,
            vec![],
            graph,
            entrance,
            entrance_node,
            self.lane_width,
        )
        .expect("synthetic lot is valid")
    }
}

/// The bundled lot: three aisles, five rows of nine spots (45 total).
pub fn three_aisle_lot() -> ParkingMap {
    LotLayout {
        aisle_ys: vec![0.0, -18.0, -36.0],
        rows: vec![
            (0, AisleSide::North),
            (0, AisleSide::South),
            (1, AisleSide::North),
            (1, AisleSide::South),
            (2, AisleSide::North),
        ],
        spots_per_row: 9,
        spot_width: 2.7,
        spot_length: 5.5,
        lane_width: 7.0,
    }
    .build()
}

/// A three-row lot with 27 spots, the shape used by the spaced-assignment
/// strategy illustrations.
pub fn three_row_lot() -> ParkingMap {
    LotLayout {
        aisle_ys: vec![0.0, -18.0],
        rows: vec![
            (0, AisleSide::North),
            (0, AisleSide::South),
            (1, AisleSide::North),
        ],
        spots_per_row: 9,
        spot_width: 2.7,
        spot_length: 5.5,
        lane_width: 7.0,
    }
    .build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{nearest_node, route_length_to_spot, shortest_route};

    #[test]
    fn bundled_lot_shape() {
        let map = three_aisle_lot();
        assert_eq!(map.spots.len(), 45);
        // Three aisles: count distinct aisle y values among spot-adjacent nodes.
        let mut ys: Vec<i64> = map
            .spots
            .iter()
            .map(|s| {
                (map.graph.position(s.adjacent_aisle_node).unwrap().y * 1000.0).round() as i64
            })
            .collect();
        ys.sort();
        ys.dedup();
        assert_eq!(ys.len(), 3);
    }

    #[test]
    fn all_spots_reachable_from_entrance() {
        let map = three_aisle_lot();
        for s in &map.spots {
            let r = shortest_route(&map, map.entrance_node, s.adjacent_aisle_node).unwrap();
            assert!(!r.is_empty());
            assert!(route_length_to_spot(&map, s.id).unwrap() >= 0.0);
        }
    }

    #[test]
    fn entrance_node_is_nearest_to_entrance() {
        let map = three_aisle_lot();
        assert_eq!(nearest_node(&map, map.entrance), map.entrance_node);
    }

    #[test]
    fn three_row_lot_shape() {
        let map = three_row_lot();
        assert_eq!(map.spots.len(), 27);
    }
}
