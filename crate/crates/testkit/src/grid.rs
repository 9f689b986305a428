use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use icq_core::{IndoorGraph, Location, PartitionId};

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Item(f64, usize);

impl Eq for Item {}

impl Ord for Item {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Indoor distances from one seed, approximated by shortest paths over a fine grid.
///
/// Every partition gets its own grid nodes at pitch `h`; nodes connect to grid neighbours
/// up to `reach` steps away in the same partition, and partitions connect only through
/// door nodes, in the door's directions. Partitions are assumed convex.
pub struct GridDistance<'g> {
    graph: &'g IndoorGraph,
    h: f64,
    reach: i64,
    seed: Location,
    seed_host: PartitionId,
    /// Per partition: grid origin, columns, rows and node index of each cell (or `usize::MAX`).
    cells: HashMap<PartitionId, (f64, f64, i64, i64, Vec<usize>)>,
    locations: Vec<Location>,
    door_nodes: HashMap<icq_core::DoorId, usize>,
    dist: Vec<f64>,
}

impl<'g> GridDistance<'g> {
    pub fn new(graph: &'g IndoorGraph, seed: Location, h: f64, reach: i64) -> Self {
        let seed_host = graph.host(&seed).expect("seed inside the floorplan");
        let mut locations = Vec::new();
        let mut owner = Vec::new();
        let mut cells = HashMap::new();
        for p in graph.partitions() {
            let b = p.bbox;
            let cols = ((b.max_x - b.min_x) / h).floor() as i64 + 1;
            let rows = ((b.max_y - b.min_y) / h).floor() as i64 + 1;
            let mut idx = vec![usize::MAX; (cols * rows) as usize];
            for r in 0..rows {
                for c in 0..cols {
                    let l = Location::new(b.min_x + c as f64 * h, b.min_y + r as f64 * h, p.floor);
                    if p.contains(&l) {
                        idx[(r * cols + c) as usize] = locations.len();
                        locations.push(l);
                        owner.push(p.id);
                    }
                }
            }
            cells.insert(p.id, (b.min_x, b.min_y, cols, rows, idx));
        }
        let mut door_nodes = HashMap::new();
        for d in graph.doors() {
            door_nodes.insert(d.id, locations.len());
            locations.push(d.location);
            owner.push(PartitionId(u32::MAX));
        }
        let seed_node = locations.len();
        locations.push(seed);

        let n = locations.len();
        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        let offsets: Vec<(i64, i64)> = (-reach..=reach)
            .flat_map(|dx| (-reach..=reach).map(move |dy| (dx, dy)))
            .filter(|&(dx, dy)| (dx, dy) != (0, 0) && gcd(dx, dy) == 1)
            .collect();
        for (&v, (_, _, cols, rows, idx)) in &cells {
            for r in 0..*rows {
                for c in 0..*cols {
                    let a = idx[(r * cols + c) as usize];
                    if a == usize::MAX {
                        continue;
                    }
                    for &(dx, dy) in &offsets {
                        let (cc, rr) = (c + dx, r + dy);
                        if cc < 0 || rr < 0 || cc >= *cols || rr >= *rows {
                            continue;
                        }
                        let b = idx[(rr * cols + cc) as usize];
                        if b != usize::MAX {
                            adj[a].push((b, graph.intra_distance(v, &locations[a], &locations[b])));
                        }
                    }
                }
            }
        }
        let radius = reach as f64 * h;
        let near = |v: PartitionId, l: &Location, locations: &[Location]| -> Vec<usize> {
            (0..locations.len())
                .filter(|&i| owner.get(i) == Some(&v))
                .filter(|&i| graph.intra_distance(v, &locations[i], l) <= radius + 1e-9)
                .collect()
        };
        for d in graph.doors() {
            let dn = door_nodes[&d.id];
            for &(from, to) in &d.links {
                for i in near(from, &d.location, &locations) {
                    adj[i].push((dn, graph.intra_distance(from, &locations[i], &d.location)));
                }
                for i in near(to, &d.location, &locations) {
                    adj[dn].push((i, graph.intra_distance(to, &d.location, &locations[i])));
                }
                let p = graph.partition(to).expect("linked partition");
                for &other in &p.door_ids {
                    if other == d.id || !graph.leavable_doors(to).expect("partition").contains(&other) {
                        continue;
                    }
                    let o = graph.door(other).expect("door").location;
                    adj[dn].push((door_nodes[&other], graph.intra_distance(to, &d.location, &o)));
                }
            }
        }
        for i in near(seed_host, &seed, &locations) {
            adj[seed_node].push((i, graph.intra_distance(seed_host, &seed, &locations[i])));
        }
        for &d in graph.leavable_doors(seed_host).expect("seed host") {
            let o = graph.door(d).expect("door").location;
            adj[seed_node].push((door_nodes[&d], graph.intra_distance(seed_host, &seed, &o)));
        }

        let mut dist = vec![f64::INFINITY; n];
        dist[seed_node] = 0.0;
        let mut heap = BinaryHeap::from([Item(0.0, seed_node)]);
        while let Some(Item(du, u)) = heap.pop() {
            if du > dist[u] {
                continue;
            }
            for &(v, w) in &adj[u] {
                if du + w < dist[v] {
                    dist[v] = du + w;
                    heap.push(Item(du + w, v));
                }
            }
        }
        GridDistance {
            graph,
            h,
            reach,
            seed,
            seed_host,
            cells,
            locations,
            door_nodes,
            dist,
        }
    }

    /// Largest error of a grid distance from the true indoor distance.
    pub fn tolerance(&self) -> f64 {
        self.h * std::f64::consts::SQRT_2
    }

    /// Approximate indoor distance from the seed to `l`.
    pub fn distance(&self, l: &Location) -> f64 {
        let Ok(v) = self.graph.host(l) else {
            return f64::INFINITY;
        };
        let mut best = f64::INFINITY;
        if v == self.seed_host {
            best = self.graph.intra_distance(v, &self.seed, l);
        }
        let (x0, y0, cols, rows, idx) = &self.cells[&v];
        let c = ((l.x - x0) / self.h).round() as i64;
        let r = ((l.y - y0) / self.h).round() as i64;
        for rr in (r - self.reach).max(0)..=(r + self.reach).min(rows - 1) {
            for cc in (c - self.reach).max(0)..=(c + self.reach).min(cols - 1) {
                let i = idx[(rr * cols + cc) as usize];
                if i != usize::MAX {
                    best = best.min(self.dist[i] + self.graph.intra_distance(v, &self.locations[i], l));
                }
            }
        }
        let p = self.graph.partition(v).expect("host partition");
        for d in &p.door_ids {
            let door = self.graph.door(*d).expect("door");
            if door.links.iter().any(|&(_, to)| to == v) {
                best = best.min(self.dist[self.door_nodes[d]] + self.graph.intra_distance(v, &door.location, l));
            }
        }
        best
    }
}
