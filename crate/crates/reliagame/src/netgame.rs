//! The network reliability base game: a directed graph with a source and a
//! target, one agent per edge, and coalition value given by s-t
//! connectivity of the surviving edge set.

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::games::{BaseGame, SimpleGame};

/// A directed edge. Parallel edges and self-loops are allowed; self-loops
/// can never affect connectivity.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub label: String,
    pub from: usize,
    pub to: usize,
}

/// A directed graph with designated source and target. Edge order defines
/// the agent indices: edge `i` is agent `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    vertex_names: Vec<String>,
    edges: Vec<Edge>,
    source: usize,
    target: usize,
    // Out-edges per vertex, precomputed once; connectivity queries filter
    // them by the coalition mask.
    out_edges: Vec<Vec<(u32, u32)>>,
}

impl Network {
    /// Build a network from vertex names and labeled edges given as
    /// `(label, from, to)` name triples.
    pub fn new(
        vertex_names: Vec<String>,
        edges: Vec<(String, String, String)>,
        source: &str,
        target: &str,
    ) -> Result<Self> {
        let find = |name: &str| -> Result<usize> {
            vertex_names
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::InvalidGame(format!("undeclared vertex {name:?}")))
        };
        for (i, a) in vertex_names.iter().enumerate() {
            if vertex_names[..i].contains(a) {
                return Err(Error::InvalidGame(format!("duplicate vertex name {a:?}")));
            }
        }
        let source = find(source)?;
        let target = find(target)?;
        let edges = edges
            .into_iter()
            .map(|(label, from, to)| {
                Ok(Edge {
                    label,
                    from: find(&from)?,
                    to: find(&to)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(vertex_names, edges, source, target)
    }

    /// Build from numeric vertex indices, auto-labeling edges `e0..`.
    /// Vertices are named `v0..`; mainly for tests and generated instances.
    pub fn from_indices(
        num_vertices: usize,
        edges: Vec<(usize, usize)>,
        source: usize,
        target: usize,
    ) -> Result<Self> {
        let vertex_names = (0..num_vertices).map(|i| format!("v{i}")).collect();
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(i, (from, to))| Edge {
                label: format!("e{i}"),
                from,
                to,
            })
            .collect();
        Self::from_parts(vertex_names, edges, source, target)
    }

    fn from_parts(
        vertex_names: Vec<String>,
        edges: Vec<Edge>,
        source: usize,
        target: usize,
    ) -> Result<Self> {
        let nv = vertex_names.len();
        if source >= nv || target >= nv {
            return Err(Error::InvalidGame(
                "source/target not a declared vertex".into(),
            ));
        }
        if source == target {
            return Err(Error::InvalidGame("source and target must differ".into()));
        }
        if edges.len() > Coalition::MAX_AGENTS {
            return Err(Error::InvalidGame(format!(
                "{} edges exceed the hard agent cap of {}",
                edges.len(),
                Coalition::MAX_AGENTS
            )));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.from >= nv || e.to >= nv {
                return Err(Error::InvalidGame(format!(
                    "edge #{i} {:?} has an undeclared endpoint",
                    e.label
                )));
            }
            if edges[..i].iter().any(|f| f.label == e.label) {
                return Err(Error::InvalidGame(format!(
                    "duplicate edge label {:?}",
                    e.label
                )));
            }
        }
        let mut out_edges = vec![Vec::new(); nv];
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.from].push((i as u32, e.to as u32));
        }
        Ok(Network {
            vertex_names,
            edges,
            source,
            target,
            out_edges,
        })
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_labels(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.label.clone()).collect()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// s-t connectivity indicator of the edge subset `survivors`: 1 iff the
    /// graph restricted to those edges has a path from source to target.
    pub fn delta(&self, survivors: Coalition) -> bool {
        assert_eq!(
            survivors.capacity(),
            self.edges.len(),
            "coalition capacity mismatch"
        );
        let mask = survivors.mask();
        let mut visited = vec![false; self.vertex_names.len()];
        let mut stack = vec![self.source];
        visited[self.source] = true;
        while let Some(v) = stack.pop() {
            for &(edge, to) in &self.out_edges[v] {
                if mask >> edge & 1 == 0 {
                    continue;
                }
                let to = to as usize;
                if to == self.target {
                    return true;
                }
                if !visited[to] {
                    visited[to] = true;
                    stack.push(to);
                }
            }
        }
        false
    }

    /// Edge indices of a simple s-t path inside `survivors`, if one exists.
    /// Found by breadth-first search, so each vertex appears at most once on
    /// the returned path.
    pub fn witness_path(&self, survivors: Coalition) -> Option<Vec<usize>> {
        assert_eq!(survivors.capacity(), self.edges.len());
        let mask = survivors.mask();
        let nv = self.vertex_names.len();
        let mut parent_edge: Vec<Option<u32>> = vec![None; nv];
        let mut visited = vec![false; nv];
        let mut queue = std::collections::VecDeque::new();
        visited[self.source] = true;
        queue.push_back(self.source);
        'search: while let Some(v) = queue.pop_front() {
            for &(edge, to) in &self.out_edges[v] {
                if mask >> edge & 1 == 0 {
                    continue;
                }
                let to = to as usize;
                if !visited[to] {
                    visited[to] = true;
                    parent_edge[to] = Some(edge);
                    if to == self.target {
                        break 'search;
                    }
                    queue.push_back(to);
                }
            }
        }
        if !visited[self.target] {
            return None;
        }
        let mut path = Vec::new();
        let mut v = self.target;
        while v != self.source {
            let e = parent_edge[v].expect("visited vertex must have a parent edge") as usize;
            path.push(e);
            v = self.edges[e].from;
        }
        path.reverse();
        Some(path)
    }

    /// Whether the target is reachable when every edge is present. A network
    /// where it is not induces the all-zero game, which is accepted; the CLI
    /// surfaces a warning for it.
    pub fn connected_with_all_edges(&self) -> bool {
        self.delta(Coalition::grand(self.num_edges()))
    }

    pub fn into_base_game(self) -> BaseGame {
        BaseGame::Network(self)
    }
}

impl SimpleGame for Network {
    fn num_agents(&self) -> usize {
        self.edges.len()
    }

    fn wins(&self, coalition: Coalition) -> bool {
        self.delta(coalition)
    }

    fn known_monotone(&self) -> bool {
        true
    }
}
