//! Route search over the waypoint graph.
//!
//! `shortest_route` runs A* with the straight-line heuristic to find the
//! optimal cost, then canonicalizes the returned node sequence: among all
//! minimum-length routes it picks the lexicographically smallest node-id
//! sequence, which keeps downstream behavior reproducible when costs tie.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};

use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::map::{NodeId, ParkingMap, SpotId, WaypointGraph};

/// Relative tolerance for treating two route costs as equal.
const COST_EPS: f64 = 1e-9;

#[derive(PartialEq)]
struct QueueEntry {
    priority: f64,
    node: NodeId,
}

impl Eq for QueueEntry {}

impl Ord for QueueEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on priority, ties broken by smaller node id.
        other
            .priority
            .partial_cmp(&self.priority)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A* cost from `from` to `to` with the admissible straight-line heuristic.
fn astar_cost(graph: &WaypointGraph, from: NodeId, to: NodeId) -> Option<f64> {
    let goal = graph.position(to)?;
    let mut best: BTreeMap<NodeId, f64> = BTreeMap::new();
    let mut heap = BinaryHeap::new();
    best.insert(from, 0.0);
    heap.push(QueueEntry {
        priority: graph.position(from)?.dist(goal),
        node: from,
    });
    while let Some(QueueEntry { node, priority }) = heap.pop() {
        let g = best[&node];
        if node == to {
            return Some(g);
        }
        // Stale entry.
        if priority > g + graph.position(node).unwrap().dist(goal) + COST_EPS {
            continue;
        }
        for &(next, len) in graph.neighbors(node) {
            let cand = g + len;
            if best.get(&next).is_none_or(|&cur| cand < cur) {
                best.insert(next, cand);
                heap.push(QueueEntry {
                    priority: cand + graph.position(next).unwrap().dist(goal),
                    node: next,
                });
            }
        }
    }
    None
}

/// Cost-to-go map from every node to `to` (Dijkstra on the reversed graph).
fn cost_to_goal(graph: &WaypointGraph, to: NodeId) -> BTreeMap<NodeId, f64> {
    let mut dist: BTreeMap<NodeId, f64> = BTreeMap::new();
    let mut heap = BinaryHeap::new();
    dist.insert(to, 0.0);
    heap.push(QueueEntry {
        priority: 0.0,
        node: to,
    });
    while let Some(QueueEntry { node, priority }) = heap.pop() {
        if priority > dist[&node] + COST_EPS {
            continue;
        }
        for &(prev, len) in graph.reverse_neighbors(node) {
            let cand = dist[&node] + len;
            if dist.get(&prev).is_none_or(|&cur| cand < cur) {
                dist.insert(prev, cand);
                heap.push(QueueEntry {
                    priority: cand,
                    node: prev,
                });
            }
        }
    }
    dist
}

/// Minimum-length route between two nodes; among equal-length routes, the
/// lexicographically smallest node-id sequence.
pub fn shortest_route(map: &ParkingMap, from: NodeId, to: NodeId) -> Result<Vec<NodeId>> {
    let graph = &map.graph;
    for n in [from, to] {
        if !graph.contains(n) {
            return Err(Error::InvalidInput(format!("node {n} does not exist")));
        }
    }
    if from == to {
        return Ok(vec![from]);
    }
    let total = astar_cost(graph, from, to).ok_or(Error::NoRoute {
        from: from.0,
        to: to.0,
    })?;
    let to_goal = cost_to_goal(graph, to);
    debug_assert!((to_goal[&from] - total).abs() <= COST_EPS * total.max(1.0));

    // Greedy walk along the shortest-path DAG, always taking the smallest
    // admissible successor id.
    let mut route = vec![from];
    let mut node = from;
    let mut remaining = total;
    while node != to {
        let tol = COST_EPS * total.max(1.0);
        let next = graph
            .neighbors(node)
            .iter()
            .filter(|(n, len)| {
                to_goal
                    .get(n)
                    .is_some_and(|&ctg| (len + ctg - remaining).abs() <= tol)
            })
            .map(|(n, len)| (*n, *len))
            .next();
        let Some((next, len)) = next else {
            // Numerical dead end; should not happen on validated graphs.
            return Err(Error::NoRoute {
                from: from.0,
                to: to.0,
            });
        };
        remaining -= len;
        route.push(next);
        node = next;
        if route.len() > graph.node_count() + 1 {
            return Err(Error::NoRoute {
                from: from.0,
                to: to.0,
            });
        }
    }
    Ok(route)
}

/// Total length of a node route.
pub fn route_length(map: &ParkingMap, route: &[NodeId]) -> f64 {
    route
        .windows(2)
        .map(|w| {
            let a = map.graph.position(w[0]).unwrap();
            let b = map.graph.position(w[1]).unwrap();
            a.dist(b)
        })
        .sum()
}

/// A* length from the entrance node to the spot's adjacent aisle node.
pub fn route_length_to_spot(map: &ParkingMap, spot: SpotId) -> Result<f64> {
    let s = map
        .spot(spot)
        .ok_or_else(|| Error::InvalidInput(format!("spot {spot} does not exist")))?;
    let route = shortest_route(map, map.entrance_node, s.adjacent_aisle_node)?;
    Ok(route_length(map, &route))
}

/// Node closest to `point`; ties resolved toward the smaller id.
pub fn nearest_node(map: &ParkingMap, point: Vec2) -> NodeId {
    let mut best = None;
    let mut best_d = f64::INFINITY;
    for (id, p) in map.graph.nodes() {
        let d = p.dist_sq(point);
        if d < best_d {
            best_d = d;
            best = Some(id);
        }
    }
    best.expect("graph validated non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{AisleSide, ParkingSpot};

    fn map_with_graph(graph: WaypointGraph) -> ParkingMap {
        let entrance = graph.position(NodeId(0)).unwrap();
        ParkingMap::new(vec![], vec![], graph, entrance, NodeId(0), 7.0).unwrap()
    }

    fn square_map() -> ParkingMap {
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
        map_with_graph(WaypointGraph::new(nodes, edges).unwrap())
    }

    #[test]
    fn trivial_route() {
        let map = square_map();
        let r = shortest_route(&map, NodeId(2), NodeId(2)).unwrap();
        assert_eq!(r, vec![NodeId(2)]);
        assert_eq!(route_length(&map, &r), 0.0);
    }

    #[test]
    fn tie_breaks_to_smaller_intermediate() {
        let map = square_map();
        let r = shortest_route(&map, NodeId(0), NodeId(2)).unwrap();
        assert_eq!(r, vec![NodeId(0), NodeId(1), NodeId(2)]);
    }

    #[test]
    fn nearest_node_cases() {
        let map = square_map();
        assert_eq!(nearest_node(&map, Vec2::new(10.0, 0.0)), NodeId(1));
        // Midpoint tie between nodes 0 and 1 resolves to the smaller id.
        assert_eq!(nearest_node(&map, Vec2::new(5.0, 0.0)), NodeId(0));
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
        for _ in 0..50 {
            let p = Vec2::new(rng.gen_range(-5.0..15.0), rng.gen_range(-5.0..15.0));
            let got = nearest_node(&map, p);
            let want = map
                .graph
                .nodes()
                .min_by(|(_, a), (_, b)| a.dist_sq(p).partial_cmp(&b.dist_sq(p)).unwrap())
                .unwrap()
                .0;
            assert_eq!(map.graph.position(got).unwrap().dist(p), map.graph.position(want).unwrap().dist(p));
        }
    }

    #[test]
    fn spot_route_lengths() {
        let nodes = vec![
            (NodeId(0), Vec2::new(0.0, 0.0)),
            (NodeId(1), Vec2::new(10.0, 0.0)),
        ];
        let edges = vec![(NodeId(0), NodeId(1)), (NodeId(1), NodeId(0))];
        let graph = WaypointGraph::new(nodes, edges).unwrap();
        let spots = vec![
            ParkingSpot {
                id: SpotId(0),
                center: Vec2::new(0.0, 6.0),
                width: 2.7,
                length: 5.5,
                aisle_side: AisleSide::North,
                adjacent_aisle_node: NodeId(0),
            },
            ParkingSpot {
                id: SpotId(1),
                center: Vec2::new(10.0, 6.0),
                width: 2.7,
                length: 5.5,
                aisle_side: AisleSide::North,
                adjacent_aisle_node: NodeId(1),
            },
        ];
        let map = ParkingMap::new(spots, vec![], graph, Vec2::ZERO, NodeId(0), 7.0).unwrap();
        assert_eq!(route_length_to_spot(&map, SpotId(0)).unwrap(), 0.0);
        assert_eq!(route_length_to_spot(&map, SpotId(1)).unwrap(), 10.0);
    }
}
