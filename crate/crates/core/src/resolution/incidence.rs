//! The incidence graph Γ and its conjugation quotient Γ̄.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::{RealPlumbingGraph, SelfNode, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    Component,
    Point,
}

/// What a vertex of Γ stands for, by index into the source graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexSource {
    Component(usize),
    Point(usize),
    SelfNode { component: usize, index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaVertex {
    pub label: String,
    pub kind: VertexKind,
    pub source: VertexSource,
}

/// Edge between a component-type vertex and a point-type vertex of Γ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GammaEdge {
    pub component: usize,
    pub point: usize,
}

/// Γ together with the involution induced by conjugation on vertices and edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteGraph {
    pub vertices: Vec<GammaVertex>,
    pub edges: Vec<GammaEdge>,
    vertex_conj: Vec<usize>,
    edge_conj: Vec<usize>,
}

impl BipartiteGraph {
    pub fn vertex_conj(&self, v: usize) -> usize {
        self.vertex_conj[v]
    }

    pub fn edge_conj(&self, e: usize) -> usize {
        self.edge_conj[e]
    }

    /// Two-colourability by breadth-first search, ignoring the vertex kinds.
    pub fn is_two_colorable(&self) -> bool {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.component].push(e.point);
            adj[e.point].push(e.component);
        }
        let mut color: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let c = color[v].unwrap();
                for &w in &adj[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    pub fn is_tree(&self) -> bool {
        let n = self.vertices.len();
        n > 0
            && self.edges.len() + 1 == n
            && count_components(n, self.edges.iter().map(|e| (e.component, e.point))) == 1
    }
}

pub fn incidence_graph(g: &RealPlumbingGraph) -> Result<BipartiteGraph, Vec<Violation>> {
    let violations = g.validate();
    if !violations.is_empty() {
        return Err(violations);
    }
    Ok(build_incidence(g))
}

pub(crate) fn build_incidence(g: &RealPlumbingGraph) -> BipartiteGraph {
    let comp_conj = g.component_conj();
    let point_conj = g.point_conj();
    let n_comp = g.components.len();
    let n_point = g.points.len();

    let mut vertices = Vec::new();
    for (i, c) in g.components.iter().enumerate() {
        vertices.push(GammaVertex {
            label: c.id.clone(),
            kind: VertexKind::Component,
            source: VertexSource::Component(i),
        });
    }
    for (i, p) in g.points.iter().enumerate() {
        vertices.push(GammaVertex {
            label: p.id.clone(),
            kind: VertexKind::Point,
            source: VertexSource::Point(i),
        });
    }
    let mut self_node_vertex: HashMap<(usize, usize), usize> = HashMap::new();
    for (ci, c) in g.components.iter().enumerate() {
        for k in 0..c.self_nodes.len() {
            self_node_vertex.insert((ci, k), vertices.len());
            vertices.push(GammaVertex {
                label: format!("{}/node{}", c.id, k),
                kind: VertexKind::Point,
                source: VertexSource::SelfNode {
                    component: ci,
                    index: k,
                },
            });
        }
    }

    let mut vertex_conj: Vec<usize> = (0..vertices.len()).collect();
    for (i, &j) in comp_conj.iter().enumerate() {
        vertex_conj[i] = j;
    }
    for (i, &j) in point_conj.iter().enumerate() {
        vertex_conj[n_comp + i] = n_comp + j;
    }
    for (&(ci, k), &v) in &self_node_vertex {
        vertex_conj[v] = self_node_vertex[&(comp_conj[ci], k)];
    }

    // Edges of a point, keyed by (component, occurrence number).
    let mut edges = Vec::new();
    let mut edge_key: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (pi, p) in g.points.iter().enumerate() {
        let mut occurrences: HashMap<usize, usize> = HashMap::new();
        for ci in g.branches(p) {
            let occ = occurrences.entry(ci).or_insert(0);
            edge_key.insert((pi, ci, *occ), edges.len());
            *occ += 1;
            edges.push(GammaEdge {
                component: ci,
                point: n_comp + pi,
            });
        }
    }
    let mut edge_conj: Vec<usize> = Vec::with_capacity(edges.len());
    for (pi, p) in g.points.iter().enumerate() {
        let mut occurrences: HashMap<usize, usize> = HashMap::new();
        for ci in g.branches(p) {
            let occ = occurrences.entry(ci).or_insert(0);
            edge_conj.push(edge_key[&(point_conj[pi], comp_conj[ci], *occ)]);
            *occ += 1;
        }
    }
    let mut self_node_edges: Vec<((usize, usize), usize)> =
        self_node_vertex.iter().map(|(&k, &v)| (k, v)).collect();
    self_node_edges.sort_unstable();
    let mut self_edge_base: HashMap<(usize, usize), usize> = HashMap::new();
    for &((ci, k), v) in &self_node_edges {
        self_edge_base.insert((ci, k), edges.len());
        edges.push(GammaEdge {
            component: ci,
            point: v,
        });
        edges.push(GammaEdge {
            component: ci,
            point: v,
        });
    }
    edge_conj.resize(edges.len(), 0);
    for &((ci, k), _) in &self_node_edges {
        let base = self_edge_base[&(ci, k)];
        let image = self_edge_base[&(comp_conj[ci], k)];
        let swapped = comp_conj[ci] == ci && g.components[ci].self_nodes[k] == SelfNode::ConjPair;
        if swapped {
            edge_conj[base] = image + 1;
            edge_conj[base + 1] = image;
        } else {
            edge_conj[base] = image;
            edge_conj[base + 1] = image + 1;
        }
    }
    debug_assert_eq!(vertices.len(), n_comp + n_point + self_node_vertex.len());

    BipartiteGraph {
        vertices,
        edges,
        vertex_conj,
        edge_conj,
    }
}

/// An orbit of Γ's vertices under conjugation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientVertex {
    pub kind: VertexKind,
    /// Indices of the Γ vertices in this orbit.
    pub members: Vec<usize>,
    pub labels: Vec<String>,
}

impl QuotientVertex {
    pub fn orbit_size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientEdge {
    pub component: usize,
    pub point: usize,
    pub orbit_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientGraph {
    pub vertices: Vec<QuotientVertex>,
    pub edges: Vec<QuotientEdge>,
}

impl QuotientGraph {
    pub fn connected_components(&self) -> usize {
        count_components(
            self.vertices.len(),
            self.edges.iter().map(|e| (e.component, e.point)),
        )
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components() == 1
    }

    /// First Betti number of the multigraph.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.connected_components() - self.vertices.len()
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.cycle_rank() == 0
    }

    /// Quotient-vertex index holding the given Γ vertex.
    pub fn orbit_of(&self, gamma_vertex: usize) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| v.members.contains(&gamma_vertex))
    }
}

pub fn quotient_graph(g: &RealPlumbingGraph) -> Result<QuotientGraph, Vec<Violation>> {
    incidence_graph(g).map(|gamma| quotient_of(&gamma))
}

pub(crate) fn quotient_of(gamma: &BipartiteGraph) -> QuotientGraph {
    let mut orbit = vec![usize::MAX; gamma.vertices.len()];
    let mut vertices = Vec::new();
    for v in 0..gamma.vertices.len() {
        if orbit[v] != usize::MAX {
            continue;
        }
        let w = gamma.vertex_conj(v);
        let members = if w == v { vec![v] } else { vec![v, w] };
        for &m in &members {
            orbit[m] = vertices.len();
        }
        vertices.push(QuotientVertex {
            kind: gamma.vertices[v].kind,
            labels: members
                .iter()
                .map(|&m| gamma.vertices[m].label.clone())
                .collect(),
            members,
        });
    }
    let mut seen = vec![false; gamma.edges.len()];
    let mut edges = Vec::new();
    for e in 0..gamma.edges.len() {
        if seen[e] {
            continue;
        }
        let f = gamma.edge_conj(e);
        seen[e] = true;
        seen[f] = true;
        let edge = gamma.edges[e];
        edges.push(QuotientEdge {
            component: orbit[edge.component],
            point: orbit[edge.point],
            orbit_size: if f == e { 1 } else { 2 },
        });
    }
    QuotientGraph { vertices, edges }
}

fn count_components(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut count = n;
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            count -= 1;
        }
    }
    count
}
