//! Parking lot model: spots, static obstacles, the directed waypoint graph of
//! aisles, routing and the map file format.

mod io;
mod offset;
mod routing;
pub mod synthetic;

pub use io::{load_map, save_map};
pub use offset::offset_path;
pub use routing::{nearest_node, route_length, route_length_to_spot, shortest_route};

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{signed_distance, OrientedBox, Vec2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpotId(pub u32);

impl std::fmt::Display for NodeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::fmt::Display for SpotId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which side of its aisle a spot sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AisleSide {
    /// The spot is north of the aisle serving it.
    North,
    /// The spot is south of the aisle serving it.
    South,
}

/// A perpendicular parking spot. `width` spans along the aisle, `length` is
/// the depth away from it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParkingSpot {
    pub id: SpotId,
    pub center: Vec2,
    pub width: f64,
    pub length: f64,
    pub aisle_side: AisleSide,
    pub adjacent_aisle_node: NodeId,
}

impl ParkingSpot {
    /// Axis-aligned bounding box: the long axis is perpendicular to the aisle.
    pub fn bounding_box(&self) -> OrientedBox {
        OrientedBox::new(self.center, self.width, self.length, FRAC_PI_2)
            .expect("spot dimensions validated on load")
    }
}

/// A vehicle that never moves during the experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StaticObstacle {
    pub center: Vec2,
    pub width: f64,
    pub length: f64,
    pub heading: f64,
}

impl StaticObstacle {
    pub fn bounding_box(&self) -> OrientedBox {
        OrientedBox::new(self.center, self.width, self.length, self.heading)
            .expect("obstacle dimensions validated on load")
    }
}

/// Directed waypoint graph over the aisles. Edge lengths equal the Euclidean
/// distance between their endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct WaypointGraph {
    positions: BTreeMap<NodeId, Vec2>,
    adjacency: BTreeMap<NodeId, Vec<(NodeId, f64)>>,
    reverse: BTreeMap<NodeId, Vec<(NodeId, f64)>>,
}

impl WaypointGraph {
    pub fn new(nodes: Vec<(NodeId, Vec2)>, edges: Vec<(NodeId, NodeId)>) -> Result<Self> {
        let mut positions = BTreeMap::new();
        for (id, p) in nodes {
            if !p.is_finite() {
                return Err(Error::MapValidation(format!(
                    "node {id} has non-finite coordinates"
                )));
            }
            if positions.insert(id, p).is_some() {
                return Err(Error::MapValidation(format!("duplicate node id {id}")));
            }
        }
        let mut adjacency: BTreeMap<NodeId, Vec<(NodeId, f64)>> =
            positions.keys().map(|id| (*id, Vec::new())).collect();
        let mut reverse = adjacency.clone();
        for (from, to) in edges {
            let pf = *positions.get(&from).ok_or_else(|| {
                Error::MapValidation(format!("edge {from} -> {to} references missing node {from}"))
            })?;
            let pt = *positions.get(&to).ok_or_else(|| {
                Error::MapValidation(format!("edge {from} -> {to} references missing node {to}"))
            })?;
            if from == to {
                return Err(Error::MapValidation(format!("self-loop edge at node {from}")));
            }
            let len = pf.dist(pt);
            adjacency.get_mut(&from).unwrap().push((to, len));
            reverse.get_mut(&to).unwrap().push((from, len));
        }
        for nbrs in adjacency.values_mut().chain(reverse.values_mut()) {
            nbrs.sort_by_key(|(id, _)| *id);
            nbrs.dedup_by_key(|(id, _)| *id);
        }
        let g = WaypointGraph {
            positions,
            adjacency,
            reverse,
        };
        g.check_strong_connectivity()?;
        Ok(g)
    }

    fn check_strong_connectivity(&self) -> Result<()> {
        if self.positions.is_empty() {
            return Err(Error::MapValidation("waypoint graph has no nodes".into()));
        }
        let start = *self.positions.keys().next().unwrap();
        for (adj, dir) in [(&self.adjacency, "forward"), (&self.reverse, "reverse")] {
            let mut seen = std::collections::BTreeSet::new();
            let mut stack = vec![start];
            while let Some(n) = stack.pop() {
                if !seen.insert(n) {
                    continue;
                }
                for (m, _) in &adj[&n] {
                    stack.push(*m);
                }
            }
            if seen.len() != self.positions.len() {
                let missing = self.positions.keys().find(|id| !seen.contains(id)).unwrap();
                return Err(Error::MapValidation(format!(
                    "graph is not strongly connected: node {missing} unreachable ({dir})"
                )));
            }
        }
        Ok(())
    }

    pub fn position(&self, id: NodeId) -> Option<Vec2> {
        self.positions.get(&id).copied()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.positions.contains_key(&id)
    }

    pub fn node_count(&self) -> usize {
        self.positions.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, Vec2)> + '_ {
        self.positions.iter().map(|(id, p)| (*id, *p))
    }

    pub fn neighbors(&self, id: NodeId) -> &[(NodeId, f64)] {
        self.adjacency.get(&id).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub(crate) fn reverse_neighbors(&self, id: NodeId) -> &[(NodeId, f64)] {
        self.reverse.get(&id).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        self.adjacency
            .iter()
            .flat_map(|(from, nbrs)| nbrs.iter().map(move |(to, len)| (*from, *to, *len)))
    }
}

/// The full lot: spots, obstacles, aisle graph, entrance and lane width.
#[derive(Clone, Debug)]
pub struct ParkingMap {
    pub spots: Vec<ParkingSpot>,
    pub obstacles: Vec<StaticObstacle>,
    pub graph: WaypointGraph,
    pub entrance: Vec2,
    pub entrance_node: NodeId,
    pub lane_width: f64,
}

impl ParkingMap {
    pub fn new(
        spots: Vec<ParkingSpot>,
        obstacles: Vec<StaticObstacle>,
        graph: WaypointGraph,
        entrance: Vec2,
        entrance_node: NodeId,
        lane_width: f64,
    ) -> Result<Self> {
        let map = ParkingMap {
            spots,
            obstacles,
            graph,
            entrance,
            entrance_node,
            lane_width,
        };
        map.validate()?;
        Ok(map)
    }

    fn validate(&self) -> Result<()> {
        if !(self.lane_width > 0.0) {
            return Err(Error::MapValidation("lane_width must be positive".into()));
        }
        if !self.graph.contains(self.entrance_node) {
            return Err(Error::MapValidation(format!(
                "entrance node {} does not exist",
                self.entrance_node
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for s in &self.spots {
            if !seen.insert(s.id) {
                return Err(Error::MapValidation(format!("duplicate spot id {}", s.id)));
            }
            if !(s.width > 0.0 && s.length > 0.0) {
                return Err(Error::MapValidation(format!(
                    "spot {} has non-positive dimensions",
                    s.id
                )));
            }
            if !self.graph.contains(s.adjacent_aisle_node) {
                return Err(Error::MapValidation(format!(
                    "spot {} references missing aisle node {}",
                    s.id, s.adjacent_aisle_node
                )));
            }
        }
        for o in &self.obstacles {
            if !(o.width > 0.0 && o.length > 0.0) {
                return Err(Error::MapValidation(
                    "obstacle has non-positive dimensions".into(),
                ));
            }
        }
        // Spots may touch but never overlap.
        for i in 0..self.spots.len() {
            for j in (i + 1)..self.spots.len() {
                let a = &self.spots[i];
                let b = &self.spots[j];
                let limit = 0.5 * (a.width.max(a.length) + b.width.max(b.length)) * 1.5;
                if a.center.dist(b.center) > limit {
                    continue;
                }
                let d = signed_distance(&a.bounding_box().polygon(), &b.bounding_box().polygon());
                if d < -1e-9 {
                    return Err(Error::MapValidation(format!(
                        "spots {} and {} overlap by {:.3} m",
                        a.id, b.id, -d
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn spot(&self, id: SpotId) -> Option<&ParkingSpot> {
        self.spots.iter().find(|s| s.id == id)
    }

    /// Default lateral offset used to keep traffic on the right half of an
    /// aisle.
    pub fn default_lane_offset(&self) -> f64 {
        self.lane_width / 4.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_graph() -> WaypointGraph {
        let nodes = vec![
            (NodeId(0), Vec2::new(0.0, 0.0)),
            (NodeId(1), Vec2::new(10.0, 0.0)),
            (NodeId(2), Vec2::new(10.0, 10.0)),
            (NodeId(3), Vec2::new(0.0, 10.0)),
        ];
        let mut edges = Vec::new();
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 0)] {
            edges.push((NodeId(a), NodeId(b)));
            edges.push((NodeId(b), NodeId(a)));
        }
        WaypointGraph::new(nodes, edges).unwrap()
    }

    #[test]
    fn edge_lengths_are_euclidean() {
        let g = square_graph();
        for (from, to, len) in g.edges() {
            let expected = g.position(from).unwrap().dist(g.position(to).unwrap());
            assert!((len - expected).abs() < 1e-6);
        }
    }

    #[test]
    fn missing_node_edge_rejected() {
        let nodes = vec![(NodeId(0), Vec2::ZERO), (NodeId(1), Vec2::new(1.0, 0.0))];
        let edges = vec![(NodeId(0), NodeId(1)), (NodeId(1), NodeId(7))];
        let err = WaypointGraph::new(nodes, edges).unwrap_err();
        assert!(err.to_string().contains('7'), "{err}");
    }

    #[test]
    fn weakly_connected_graph_rejected() {
        let nodes = vec![(NodeId(0), Vec2::ZERO), (NodeId(1), Vec2::new(1.0, 0.0))];
        let edges = vec![(NodeId(0), NodeId(1))];
        assert!(WaypointGraph::new(nodes, edges).is_err());
    }

    #[test]
    fn overlapping_spots_rejected() {
        let g = square_graph();
        let spot = |id: u32, x: f64| ParkingSpot {
            id: SpotId(id),
            center: Vec2::new(x, 5.0),
            width: 2.7,
            length: 5.5,
            aisle_side: AisleSide::North,
            adjacent_aisle_node: NodeId(0),
        };
        let r = ParkingMap::new(
            vec![spot(0, 0.0), spot(1, 1.0)],
            vec![],
            g.clone(),
            Vec2::ZERO,
            NodeId(0),
            7.0,
        );
        assert!(r.is_err());
        // Touching spots are allowed.
        let r = ParkingMap::new(
            vec![spot(0, 0.0), spot(1, 2.7)],
            vec![],
            g,
            Vec2::ZERO,
            NodeId(0),
            7.0,
        );
        assert!(r.is_ok());
    }
}
