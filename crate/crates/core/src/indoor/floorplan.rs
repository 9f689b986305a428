//! Floorplan file format.
//!
//! ```json
//! {
//!   "floors":     [{ "level": 0, "bounds": [min_x, min_y, max_x, max_y] }],
//!   "partitions": [{ "id": 1, "floor": 0, "polygon": [[0, 0], [10, 0], [10, 8], [0, 8]] }],
//!   "doors":      [{ "id": 1, "x": 10, "y": 4, "floor": 0, "links": [[1, 2], [2, 1]] }],
//!   "staircases": [{ "partition": 7, "upper_floor": 1, "length": 20 }]
//! }
//! ```
//!
//! Door `links` are directed (from, to) partition pairs. A staircase partition lives on its
//! own `floor` and may carry doors on `upper_floor`; crossing floors inside it costs `length`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::model::{DoorSpec, Entity, Floor, IndoorGraph, ModelError, PartitionSpec, StaircaseSpec};
use crate::geometry::{Location, Rect};
use crate::ids::{DoorId, PartitionId};

#[derive(Debug, Error)]
pub enum FloorplanError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: ModelError,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FloorRecord {
    pub level: i32,
    pub bounds: [f64; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionRecord {
    pub id: u32,
    pub floor: i32,
    pub polygon: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoorRecord {
    pub id: u32,
    pub x: f64,
    pub y: f64,
    pub floor: i32,
    pub links: Vec<[u32; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StaircaseRecord {
    pub partition: u32,
    pub upper_floor: i32,
    pub length: f64,
}

/// In-memory form of the floorplan file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FloorplanFile {
    pub floors: Vec<FloorRecord>,
    pub partitions: Vec<PartitionRecord>,
    pub doors: Vec<DoorRecord>,
    #[serde(default)]
    pub staircases: Vec<StaircaseRecord>,
}

impl FloorplanFile {
    pub fn from_graph(graph: &IndoorGraph) -> Self {
        let floors = graph
            .floors()
            .iter()
            .map(|f| FloorRecord {
                level: f.level,
                bounds: [f.bounds.min_x, f.bounds.min_y, f.bounds.max_x, f.bounds.max_y],
            })
            .collect();
        let partitions = graph
            .partitions()
            .iter()
            .map(|p| PartitionRecord {
                id: p.id.0,
                floor: p.floor,
                polygon: p.polygon.clone(),
            })
            .collect();
        let staircases = graph
            .partitions()
            .iter()
            .filter_map(|p| {
                p.staircase.map(|s| StaircaseRecord {
                    partition: p.id.0,
                    upper_floor: s.upper_floor,
                    length: s.length,
                })
            })
            .collect();
        let doors = graph
            .doors()
            .iter()
            .map(|d| DoorRecord {
                id: d.id.0,
                x: d.location.x,
                y: d.location.y,
                floor: d.location.floor,
                links: d.links.iter().map(|(a, b)| [a.0, b.0]).collect(),
            })
            .collect();
        FloorplanFile {
            floors,
            partitions,
            doors,
            staircases,
        }
    }

    /// Builds the graph; validation failures are reported against `lines` when given.
    fn into_graph(self, lines: Option<&ElementLines>) -> Result<IndoorGraph, FloorplanError> {
        let floors = self
            .floors
            .iter()
            .map(|f| Floor {
                level: f.level,
                bounds: Rect {
                    min_x: f.bounds[0],
                    min_y: f.bounds[1],
                    max_x: f.bounds[2],
                    max_y: f.bounds[3],
                },
            })
            .collect();
        let partitions = self
            .partitions
            .into_iter()
            .map(|p| PartitionSpec {
                id: PartitionId(p.id),
                floor: p.floor,
                polygon: p.polygon,
            })
            .collect();
        let doors = self
            .doors
            .into_iter()
            .map(|d| DoorSpec {
                id: DoorId(d.id),
                location: Location::new(d.x, d.y, d.floor),
                links: d.links.iter().map(|l| (PartitionId(l[0]), PartitionId(l[1]))).collect(),
            })
            .collect();
        let staircases = self
            .staircases
            .into_iter()
            .map(|s| StaircaseSpec {
                partition: PartitionId(s.partition),
                upper_floor: s.upper_floor,
                length: s.length,
            })
            .collect();
        IndoorGraph::build_located(floors, partitions, doors, staircases).map_err(|(entity, source)| {
            let line = match (entity, lines) {
                (Some(e), Some(l)) => l.line_of(e),
                _ => 0,
            };
            FloorplanError::Invalid { line, source }
        })
    }

    pub fn to_json(&self) -> String {
        // One element per line keeps validation errors easy to locate.
        let mut out = String::from("{\n");
        let section = |name: &str, items: Vec<String>, last: bool| {
            let mut s = format!("  \"{name}\": [\n");
            let n = items.len();
            for (i, item) in items.into_iter().enumerate() {
                s.push_str("    ");
                s.push_str(&item);
                s.push_str(if i + 1 < n { ",\n" } else { "\n" });
            }
            s.push_str(if last { "  ]\n" } else { "  ],\n" });
            s
        };
        out.push_str(&section("floors", json_lines(&self.floors), false));
        out.push_str(&section("partitions", json_lines(&self.partitions), false));
        out.push_str(&section("doors", json_lines(&self.doors), false));
        out.push_str(&section("staircases", json_lines(&self.staircases), true));
        out.push_str("}\n");
        out
    }
}

fn json_lines<T: Serialize>(items: &[T]) -> Vec<String> {
    items
        .iter()
        .map(|v| serde_json::to_string(v).expect("floorplan records serialize"))
        .collect()
}

/// Parses and validates a floorplan document.
pub fn parse_floorplan(text: &str) -> Result<IndoorGraph, FloorplanError> {
    let file: FloorplanFile = serde_json::from_str(text).map_err(|e| FloorplanError::Syntax {
        line: e.line(),
        message: e.to_string(),
    })?;
    let lines = ElementLines::scan(text);
    file.into_graph(Some(&lines))
}

pub fn load_floorplan(path: impl AsRef<Path>) -> Result<IndoorGraph, FloorplanError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| FloorplanError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_floorplan(&text)
}

pub fn write_floorplan(graph: &IndoorGraph, path: impl AsRef<Path>) -> Result<(), FloorplanError> {
    let path = path.as_ref();
    std::fs::write(path, FloorplanFile::from_graph(graph).to_json()).map_err(|source| FloorplanError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Start line of every element in the top-level arrays.
#[derive(Debug, Default)]
struct ElementLines {
    floors: Vec<usize>,
    partitions: Vec<usize>,
    doors: Vec<usize>,
    staircases: Vec<usize>,
}

impl ElementLines {
    fn line_of(&self, e: Entity) -> usize {
        let (list, i) = match e {
            Entity::Floor(i) => (&self.floors, i),
            Entity::Partition(i) => (&self.partitions, i),
            Entity::Door(i) => (&self.doors, i),
            Entity::Staircase(i) => (&self.staircases, i),
        };
        list.get(i).copied().unwrap_or(0)
    }

    /// Single pass over already-valid JSON: tracks nesting and the current top-level key.
    fn scan(text: &str) -> Self {
        let mut out = ElementLines::default();
        let mut line = 1;
        let mut depth = 0usize;
        let mut in_string = false;
        let mut escaped = false;
        let mut string_buf = String::new();
        let mut last_string = String::new();
        let mut current_key = String::new();
        for c in text.chars() {
            if c == '\n' {
                line += 1;
            }
            if in_string {
                if escaped {
                    escaped = false;
                } else if c == '\\' {
                    escaped = true;
                } else if c == '"' {
                    in_string = false;
                    last_string = std::mem::take(&mut string_buf);
                } else {
                    string_buf.push(c);
                }
                continue;
            }
            match c {
                '"' => in_string = true,
                ':' if depth == 1 => current_key = last_string.clone(),
                '{' | '[' => {
                    depth += 1;
                    if depth == 3 && c == '{' {
                        let list = match current_key.as_str() {
                            "floors" => Some(&mut out.floors),
                            "partitions" => Some(&mut out.partitions),
                            "doors" => Some(&mut out.doors),
                            "staircases" => Some(&mut out.staircases),
                            _ => None,
                        };
                        if let Some(list) = list {
                            list.push(line);
                        }
                    }
                }
                '}' | ']' => depth = depth.saturating_sub(1),
                _ => {}
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = r#"{
  "floors": [
    {"level": 0, "bounds": [0, 0, 20, 10]}
  ],
  "partitions": [
    {"id": 1, "floor": 0, "polygon": [[0,0],[10,0],[10,10],[0,10]]},
    {"id": 2, "floor": 0, "polygon": [[10,0],[20,0],[20,10],[10,10]]}
  ],
  "doors": [
    {"id": 1, "x": 10, "y": 5, "floor": 0, "links": [[1,2],[2,1]]}
  ]
}"#;

    #[test]
    fn parses_and_round_trips() {
        let g = parse_floorplan(GOOD).unwrap();
        assert_eq!(g.partitions().len(), 2);
        let text = FloorplanFile::from_graph(&g).to_json();
        let again = parse_floorplan(&text).unwrap();
        assert_eq!(FloorplanFile::from_graph(&again), FloorplanFile::from_graph(&g));
    }

    #[test]
    fn validation_error_points_at_offending_line() {
        let bad = GOOD.replace(r#""x": 10, "y": 5"#, r#""x": 4, "y": 5"#);
        match parse_floorplan(&bad) {
            Err(FloorplanError::Invalid { line, source }) => {
                assert_eq!(line, 10);
                assert!(matches!(source, ModelError::DoorOffBoundary { .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
        let bad = GOOD.replace(r#"{"id": 2, "floor": 0"#, r#"{"id": 1, "floor": 0"#);
        match parse_floorplan(&bad) {
            Err(FloorplanError::Invalid { line, .. }) => assert_eq!(line, 7),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_error_has_line() {
        let bad = GOOD.replace("\"links\"", "links");
        assert!(matches!(parse_floorplan(&bad), Err(FloorplanError::Syntax { line: 10, .. })));
    }
}
