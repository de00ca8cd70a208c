//! Map file format: a single JSON document with top-level keys `nodes`,
//! `edges`, `spots`, `obstacles`, `entrance` and `lane_width`. Unknown keys
//! are rejected so typos fail loudly. All coordinates are meters.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::map::{
    AisleSide, NodeId, ParkingMap, ParkingSpot, SpotId, StaticObstacle, WaypointGraph,
};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapFile {
    lane_width: f64,
    nodes: Vec<NodeFile>,
    edges: Vec<EdgeFile>,
    spots: Vec<SpotFile>,
    obstacles: Vec<ObstacleFile>,
    entrance: EntranceFile,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeFile {
    id: u32,
    x: f64,
    y: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeFile {
    from: u32,
    to: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpotFile {
    id: u32,
    x: f64,
    y: f64,
    width: f64,
    length: f64,
    aisle_side: AisleSide,
    node: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ObstacleFile {
    x: f64,
    y: f64,
    width: f64,
    length: f64,
    heading: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntranceFile {
    x: f64,
    y: f64,
    node: u32,
}

fn from_file(file: MapFile) -> Result<ParkingMap> {
    let nodes = file
        .nodes
        .iter()
        .map(|n| (NodeId(n.id), Vec2::new(n.x, n.y)))
        .collect();
    let edges = file
        .edges
        .iter()
        .map(|e| (NodeId(e.from), NodeId(e.to)))
        .collect();
    let graph = WaypointGraph::new(nodes, edges)?;
    let spots = file
        .spots
        .iter()
        .map(|s| ParkingSpot {
            id: SpotId(s.id),
            center: Vec2::new(s.x, s.y),
            width: s.width,
            length: s.length,
            aisle_side: s.aisle_side,
            adjacent_aisle_node: NodeId(s.node),
        })
        .collect();
    let obstacles = file
        .obstacles
        .iter()
        .map(|o| StaticObstacle {
            center: Vec2::new(o.x, o.y),
            width: o.width,
            length: o.length,
            heading: o.heading,
        })
        .collect();
    ParkingMap::new(
        spots,
        obstacles,
        graph,
        Vec2::new(file.entrance.x, file.entrance.y),
        NodeId(file.entrance.node),
        file.lane_width,
    )
}

fn to_file(map: &ParkingMap) -> MapFile {
    MapFile {
        lane_width: map.lane_width,
        nodes: map
            .graph
            .nodes()
            .map(|(id, p)| NodeFile {
                id: id.0,
                x: p.x,
                y: p.y,
            })
            .collect(),
        edges: map
            .graph
            .edges()
            .map(|(from, to, _)| EdgeFile {
                from: from.0,
                to: to.0,
            })
            .collect(),
        spots: map
            .spots
            .iter()
            .map(|s| SpotFile {
                id: s.id.0,
                x: s.center.x,
                y: s.center.y,
                width: s.width,
                length: s.length,
                aisle_side: s.aisle_side,
                node: s.adjacent_aisle_node.0,
            })
            .collect(),
        obstacles: map
            .obstacles
            .iter()
            .map(|o| ObstacleFile {
                x: o.center.x,
                y: o.center.y,
                width: o.width,
                length: o.length,
                heading: o.heading,
            })
            .collect(),
        entrance: EntranceFile {
            x: map.entrance.x,
            y: map.entrance.y,
            node: map.entrance_node.0,
        },
    }
}

/// Loads and validates a map file. Errors name the offending entity.
pub fn load_map(path: &Path) -> Result<ParkingMap> {
    let text = std::fs::read_to_string(path)?;
    let file: MapFile = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    from_file(file)
}

/// Serializes a map to the JSON map format.
pub fn save_map(map: &ParkingMap, path: &Path) -> Result<()> {
    let file = to_file(map);
    let text = serde_json::to_string_pretty(&file)?;
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::synthetic;

    #[test]
    fn roundtrip_synthetic_lot() {
        let map = synthetic::three_aisle_lot();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("lot.json");
        save_map(&map, &path).unwrap();
        let loaded = load_map(&path).unwrap();
        assert_eq!(loaded.spots, map.spots);
        assert_eq!(loaded.graph, map.graph);
        assert_eq!(loaded.entrance, map.entrance);
    }

    #[test]
    fn unknown_top_level_key_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(
            &path,
            r#"{"lane_width": 7.0, "nodes": [], "edges": [], "spots": [],
               "obstacles": [], "entrance": {"x": 0, "y": 0, "node": 0},
               "lanewidth_typo": 1}"#,
        )
        .unwrap();
        let err = load_map(&path).unwrap_err();
        assert!(err.to_string().contains("lanewidth_typo"), "{err}");
    }

    #[test]
    fn dangling_edge_named_in_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("dangling.json");
        std::fs::write(
            &path,
            r#"{"lane_width": 7.0,
               "nodes": [{"id": 0, "x": 0, "y": 0}, {"id": 1, "x": 5, "y": 0}],
               "edges": [{"from": 0, "to": 1}, {"from": 1, "to": 0}, {"from": 1, "to": 99}],
               "spots": [], "obstacles": [],
               "entrance": {"x": 0, "y": 0, "node": 0}}"#,
        )
        .unwrap();
        let err = load_map(&path).unwrap_err();
        assert!(err.to_string().contains("99"), "{err}");
    }

    #[test]
    fn empty_spot_list_is_valid() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cruise_only.json");
        std::fs::write(
            &path,
            r#"{"lane_width": 7.0,
               "nodes": [{"id": 0, "x": 0, "y": 0}, {"id": 1, "x": 5, "y": 0}],
               "edges": [{"from": 0, "to": 1}, {"from": 1, "to": 0}],
               "spots": [], "obstacles": [],
               "entrance": {"x": 0, "y": 0, "node": 0}}"#,
        )
        .unwrap();
        let map = load_map(&path).unwrap();
        assert!(map.spots.is_empty());
    }
}
