//! Oriented graphs and planar complexes: connection matrices, Betti numbers,
//! spanning trees, fundamental cut sets and cycles, dual graphs, homology.

use crate::config::pow_sat;
use crate::error::{invalid, Error, Result};
use crate::gcode::{image_of_matrix, kernel_of_matrix, transpose, GroupCode};
use crate::group::FiniteAbelianGroup;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

/// Compares labels with digit runs taken numerically, so `e2 < e10`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut ai, mut bi) = (a.chars().peekable(), b.chars().peekable());
    loop {
        match (ai.peek().copied(), bi.peek().copied()) {
            (None, None) => return a.cmp(b),
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x.is_ascii_digit() && y.is_ascii_digit() => {
                let mut da = String::new();
                while let Some(c) = ai.peek().copied().filter(char::is_ascii_digit) {
                    da.push(c);
                    ai.next();
                }
                let mut db = String::new();
                while let Some(c) = bi.peek().copied().filter(char::is_ascii_digit) {
                    db.push(c);
                    bi.next();
                }
                let na = da.trim_start_matches('0');
                let nb = db.trim_start_matches('0');
                let ord = na.len().cmp(&nb.len()).then_with(|| na.cmp(nb));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            (Some(x), Some(y)) => {
                if x != y {
                    return x.cmp(&y);
                }
                ai.next();
                bi.next();
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// A graph with labelled vertices and labelled, oriented edges. Multi-edges
/// are allowed, self-loops are not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vindex: HashMap<String, usize>,
    eindex: HashMap<String, usize>,
}

impl OrientedGraph {
    /// `edges` are `(id, tail, head)` triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, S)]) -> Result<Self> {
        let mut vindex = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vindex.insert(v.as_ref().to_string(), i).is_some() {
                return Err(invalid(format!("duplicate vertex label `{}`", v.as_ref())));
            }
        }
        let mut eindex = HashMap::new();
        let mut out = Vec::with_capacity(edges.len());
        for (i, (id, t, h)) in edges.iter().enumerate() {
            let id = id.as_ref();
            if vindex.contains_key(id) {
                return Err(invalid(format!(
                    "label `{id}` used for both a vertex and an edge; labels must be distinct"
                )));
            }
            if eindex.insert(id.to_string(), i).is_some() {
                return Err(invalid(format!("duplicate edge label `{id}`")));
            }
            let tail = *vindex
                .get(t.as_ref())
                .ok_or_else(|| Error::UnknownLabel(t.as_ref().into()))?;
            let head = *vindex
                .get(h.as_ref())
                .ok_or_else(|| Error::UnknownLabel(h.as_ref().into()))?;
            if tail == head {
                return Err(invalid(format!(
                    "no self-loops: edge `{id}` has head = tail = `{}`",
                    t.as_ref()
                )));
            }
            out.push(Edge {
                id: id.to_string(),
                tail,
                head,
            });
        }
        Ok(OrientedGraph {
            vertices: vertices.iter().map(|v| v.as_ref().to_string()).collect(),
            edges: out,
            vindex,
            eindex,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_labels(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.id.clone()).collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, v: &str) -> Result<usize> {
        self.vindex
            .get(v)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(v.into()))
    }

    pub fn edge_index(&self, e: &str) -> Result<usize> {
        self.eindex
            .get(e)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(e.into()))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.tail == v || e.head == v)
            .count()
    }

    /// `|E| x |V|` matrix with `+1` at the head and `-1` at the tail of each edge.
    pub fn connection_matrix(&self) -> Vec<Vec<i64>> {
        self.edges
            .iter()
            .map(|e| {
                let mut row = vec![0; self.vertices.len()];
                row[e.head] = 1;
                row[e.tail] = -1;
                row
            })
            .collect()
    }

    fn component_ids(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.tail, e.head);
        }
        (0..self.vertices.len()).map(|v| uf.find(v)).collect()
    }

    /// `(beta_0, beta_1)`: components and independent cycles.
    pub fn betti(&self) -> (usize, usize) {
        let ids: HashSet<usize> = self.component_ids().into_iter().collect();
        let b0 = ids.len();
        (b0, self.edges.len() + b0 - self.vertices.len())
    }

    pub fn is_connected(&self) -> bool {
        self.betti().0 == 1
    }

    pub fn require_connected(&self) -> Result<()> {
        let (b0, _) = self.betti();
        if b0 != 1 {
            return Err(Error::Disconnected { components: b0 });
        }
        Ok(())
    }

    /// The same graph with edge `id` reversed.
    pub fn with_reversed_edge(&self, id: &str) -> Result<OrientedGraph> {
        let i = self.edge_index(id)?;
        let mut g = self.clone();
        let e = &mut g.edges[i];
        std::mem::swap(&mut e.tail, &mut e.head);
        Ok(g)
    }

    /// Depth-first spanning tree from the first vertex in natural label
    /// order, trying incident edges in natural label order.
    pub fn spanning_tree(&self) -> Result<SpanningTree> {
        self.require_connected()?;
        let n = self.vertices.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| natural_cmp(&self.vertices[a], &self.vertices[b]));
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            incident[e.tail].push(i);
            incident[e.head].push(i);
        }
        for list in &mut incident {
            list.sort_by(|&a, &b| natural_cmp(&self.edges[a].id, &self.edges[b].id));
        }
        let mut visited = vec![false; n];
        let mut tree = Vec::new();
        // Explicit stack of (vertex, next incident position).
        let root = order[0];
        visited[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
            if *pos >= incident[v].len() {
                stack.pop();
                continue;
            }
            let ei = incident[v][*pos];
            *pos += 1;
            let e = &self.edges[ei];
            let u = if e.tail == v { e.head } else { e.tail };
            if !visited[u] {
                visited[u] = true;
                tree.push(ei);
                stack.push((u, 0));
            }
        }
        SpanningTree::from_indices(self, tree)
    }

    /// A user-specified tree, validated.
    pub fn tree_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<SpanningTree> {
        let idx = labels
            .iter()
            .map(|l| {
                self.edge_index(l.as_ref())
                    .map_err(|_| Error::InvalidTree(format!("unknown edge `{}`", l.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        SpanningTree::from_indices(self, idx)
    }

    /// Spanning tree from an optional override list, else the default rule.
    pub fn tree_or_default(&self, over: Option<&[String]>) -> Result<SpanningTree> {
        match over {
            Some(l) => self.tree_from_labels(l),
            None => self.spanning_tree(),
        }
    }

    fn check_tree(&self, t: &SpanningTree) -> Result<()> {
        let fresh = SpanningTree::from_indices(self, t.tree.clone())?;
        if fresh != *t {
            return Err(Error::InvalidTree(
                "tree does not belong to this graph".into(),
            ));
        }
        Ok(())
    }

    /// For each tree edge, the edges crossing the vertex partition obtained
    /// by deleting it from the tree; the tree edge comes first.
    pub fn fundamental_cut_sets(&self, t: &SpanningTree) -> Result<Vec<(String, Vec<String>)>> {
        self.check_tree(t)?;
        let adj = self.tree_adjacency(t);
        let mut out = Vec::new();
        for &te in &t.tree {
            let side = self.reachable_without(&adj, self.edges[te].tail, te);
            let mut cut = vec![self.edges[te].id.clone()];
            for (i, e) in self.edges.iter().enumerate() {
                if i != te && side[e.tail] != side[e.head] {
                    cut.push(e.id.clone());
                }
            }
            out.push((self.edges[te].id.clone(), cut));
        }
        Ok(out)
    }

    /// For each non-tree edge `e`, the closed path `e` followed by the tree
    /// path from `h(e)` back to `t(e)`, as signed edges.
    pub fn fundamental_cycles(&self, t: &SpanningTree) -> Result<Vec<FundamentalCycle>> {
        self.check_tree(t)?;
        let adj = self.tree_adjacency(t);
        let mut out = Vec::new();
        for &ce in &t.cotree {
            let e = &self.edges[ce];
            let mut path = vec![(e.id.clone(), 1i8)];
            for (ei, from) in self.tree_path(&adj, e.head, e.tail) {
                let sign = if self.edges[ei].tail == from { 1 } else { -1 };
                path.push((self.edges[ei].id.clone(), sign));
            }
            out.push(FundamentalCycle {
                edge: e.id.clone(),
                path,
            });
        }
        Ok(out)
    }

    fn tree_adjacency(&self, t: &SpanningTree) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &i in &t.tree {
            let e = &self.edges[i];
            adj[e.tail].push((e.head, i));
            adj[e.head].push((e.tail, i));
        }
        adj
    }

    fn reachable_without(
        &self,
        adj: &[Vec<(usize, usize)>],
        start: usize,
        skip: usize,
    ) -> Vec<bool> {
        let mut seen = vec![false; self.vertices.len()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(u, ei) in &adj[v] {
                if ei != skip && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen
    }

    /// Tree path from `a` to `b` as `(edge, vertex the step leaves from)`.
    fn tree_path(&self, adj: &[Vec<(usize, usize)>], a: usize, b: usize) -> Vec<(usize, usize)> {
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.vertices.len()];
        let mut seen = vec![false; self.vertices.len()];
        seen[a] = true;
        let mut stack = vec![a];
        while let Some(v) = stack.pop() {
            for &(u, ei) in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some((v, ei));
                    stack.push(u);
                }
            }
        }
        let mut steps = Vec::new();
        let mut v = b;
        while v != a {
            let (p, ei) = parent[v].expect("tree spans the graph");
            steps.push((ei, p));
            v = p;
        }
        steps.reverse();
        steps
    }

    /// `Z^0, B^1, Z_1, B_0` over `alphabet`, computed directly from the
    /// connection matrix by kernel enumeration and image generation.
    pub fn cochain_spaces(&self, alphabet: &FiniteAbelianGroup, cap: u64) -> Result<CochainSpaces> {
        let m = self.connection_matrix();
        let mt = transpose(&m);
        let vl = self.vertices.clone();
        let el = self.edge_labels();
        Ok(CochainSpaces {
            z0: kernel_of_matrix(alphabet, &m, vl.clone(), cap)?,
            b1: image_of_matrix(alphabet, &m, el.clone(), cap)?,
            z1: kernel_of_matrix(alphabet, &mt, el, cap)?,
            b0: image_of_matrix(alphabet, &mt, vl, cap)?,
        })
    }

    /// `(dim H^0, dim H_1)` of the graph as a 1-dimensional complex, from
    /// enumerated kernels over `probe`.
    pub fn homology_dimensions(&self, probe: &FiniteAbelianGroup, cap: u64) -> Result<(u32, u32)> {
        let s = self.cochain_spaces(probe, cap)?;
        Ok((
            log_exact(s.z0.size()?, probe)?,
            log_exact(s.z1.size()?, probe)?,
        ))
    }
}

/// `ker d`, `im d`, `ker partial`, `im partial` for one graph and alphabet.
#[derive(Debug, Clone)]
pub struct CochainSpaces {
    pub z0: GroupCode,
    pub b1: GroupCode,
    pub z1: GroupCode,
    pub b0: GroupCode,
}

/// A spanning tree and its complement, as edge indices in edge order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanningTree {
    pub tree: Vec<usize>,
    pub cotree: Vec<usize>,
    pub tree_labels: Vec<String>,
    pub cotree_labels: Vec<String>,
}

impl SpanningTree {
    fn from_indices(g: &OrientedGraph, mut tree: Vec<usize>) -> Result<Self> {
        tree.sort_unstable();
        let n = g.num_vertices();
        if tree.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidTree("edge listed twice".into()));
        }
        if tree.len() + 1 != n {
            return Err(Error::InvalidTree(format!(
                "a spanning tree has |V|-1 = {} edges, got {}",
                n - 1,
                tree.len()
            )));
        }
        let mut uf = UnionFind::new(n);
        for &i in &tree {
            let e = g
                .edges
                .get(i)
                .ok_or_else(|| Error::InvalidTree("edge index out of range".into()))?;
            if !uf.union(e.tail, e.head) {
                return Err(Error::InvalidTree(format!(
                    "edge `{}` closes a cycle",
                    e.id
                )));
            }
        }
        let cotree: Vec<usize> = (0..g.num_edges())
            .filter(|i| tree.binary_search(i).is_err())
            .collect();
        Ok(SpanningTree {
            tree_labels: tree.iter().map(|&i| g.edges[i].id.clone()).collect(),
            cotree_labels: cotree.iter().map(|&i| g.edges[i].id.clone()).collect(),
            tree,
            cotree,
        })
    }
}

/// Fundamental cycle of a non-tree edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalCycle {
    pub edge: String,
    pub path: Vec<(String, i8)>,
}

impl FundamentalCycle {
    /// Representative edge vector: `+-1` on the path's edges, 0 elsewhere.
    pub fn edge_vector(&self, g: &OrientedGraph) -> Vec<i64> {
        let mut v = vec![0; g.num_edges()];
        for (id, s) in &self.path {
            v[g.edge_index(id).expect("cycle edges belong to the graph")] = *s as i64;
        }
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Embedding {
    Plane,
    Sphere,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: String,
    /// `(edge index, sign)` pairs.
    pub boundary: Vec<(usize, i8)>,
}

/// A graph with explicit oriented faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarComplex {
    graph: OrientedGraph,
    faces: Vec<Face>,
    embedding: Embedding,
}

impl PlanarComplex {
    /// `faces` are `(id, [(edge label, sign)])`.
    pub fn new(
        graph: OrientedGraph,
        faces: &[(String, Vec<(String, i8)>)],
        embedding: Embedding,
    ) -> Result<Self> {
        let mut ids: HashSet<&str> = HashSet::new();
        let mut out = Vec::new();
        let m1 = graph.connection_matrix();
        let mut usage: Vec<Vec<i8>> = vec![Vec::new(); graph.num_edges()];
        for (id, boundary) in faces {
            if graph.vindex.contains_key(id) || graph.eindex.contains_key(id) || !ids.insert(id) {
                return Err(invalid(format!(
                    "face label `{id}` must be distinct from all other labels"
                )));
            }
            let mut seen = HashSet::new();
            let mut b = Vec::new();
            let mut closure = vec![0i64; graph.num_vertices()];
            for (e, s) in boundary {
                let ei = graph.edge_index(e)?;
                if *s != 1 && *s != -1 {
                    return Err(invalid(format!(
                        "face `{id}`: sign of `{e}` must be +1 or -1"
                    )));
                }
                if !seen.insert(ei) {
                    return Err(invalid(format!(
                        "edge over-used: `{e}` appears twice in face `{id}`"
                    )));
                }
                for (c, m) in closure.iter_mut().zip(&m1[ei]) {
                    *c += *s as i64 * m;
                }
                usage[ei].push(*s);
                b.push((ei, *s));
            }
            if closure.iter().any(|&c| c != 0) {
                return Err(invalid(format!(
                    "face boundary not closed: face `{id}` has nonzero boundary"
                )));
            }
            out.push(Face {
                id: id.clone(),
                boundary: b,
            });
        }
        for (ei, signs) in usage.iter().enumerate() {
            let e = &graph.edges[ei].id;
            if signs.len() > 2 {
                return Err(invalid(format!(
                    "edge over-used: `{e}` borders {} faces",
                    signs.len()
                )));
            }
            match embedding {
                Embedding::Sphere => {
                    if signs.len() != 2 {
                        return Err(invalid(format!(
                            "sphere: edge `{e}` must border exactly 2 faces, borders {}",
                            signs.len()
                        )));
                    }
                    if signs[0] == signs[1] {
                        return Err(invalid(format!(
                            "sphere: the two faces at edge `{e}` must carry opposite signs"
                        )));
                    }
                }
                Embedding::Plane => {
                    if signs.is_empty() {
                        return Err(invalid(format!(
                            "plane: edge `{e}` must border 1 or 2 faces"
                        )));
                    }
                }
            }
        }
        let (_, b1) = graph.betti();
        let want = match embedding {
            Embedding::Sphere => b1 + 1,
            Embedding::Plane => b1,
        };
        if out.len() != want {
            let rule = match embedding {
                Embedding::Sphere => "sphere face count must be β₁+1",
                Embedding::Plane => "plane face count must be β₁",
            };
            return Err(invalid(format!(
                "{rule}: expected {want}, got {}",
                out.len()
            )));
        }
        Ok(PlanarComplex {
            graph,
            faces: out,
            embedding,
        })
    }

    pub fn graph(&self) -> &OrientedGraph {
        &self.graph
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_labels(&self) -> Vec<String> {
        self.faces.iter().map(|f| f.id.clone()).collect()
    }

    pub fn embedding(&self) -> Embedding {
        self.embedding
    }

    /// `|F| x |E|` matrix of face-boundary signs.
    pub fn second_connection_matrix(&self) -> Vec<Vec<i64>> {
        self.faces
            .iter()
            .map(|f| {
                let mut row = vec![0; self.graph.num_edges()];
                for &(e, s) in &f.boundary {
                    row[e] = s as i64;
                }
                row
            })
            .collect()
    }

    /// The graph on faces with the same edges; its faces are the original vertices.
    pub fn dual_graph(&self) -> Result<PlanarComplex> {
        if self.embedding != Embedding::Sphere {
            return Err(invalid(
                "dual graph requires a sphere embedding, got plane embedding",
            ));
        }
        for (v, label) in self.graph.vertices.iter().enumerate() {
            if self.graph.degree(v) <= 1 {
                return Err(invalid(format!(
                    "dangling vertex `{label}`: dual graph needs no degree-1 vertices"
                )));
            }
        }
        let m2 = self.second_connection_matrix();
        let mut edges = Vec::new();
        for (ei, e) in self.graph.edges.iter().enumerate() {
            let head = (0..self.faces.len())
                .find(|&f| m2[f][ei] == 1)
                .expect("sphere column has a +1");
            let tail = (0..self.faces.len())
                .find(|&f| m2[f][ei] == -1)
                .expect("sphere column has a -1");
            edges.push((
                e.id.clone(),
                self.faces[tail].id.clone(),
                self.faces[head].id.clone(),
            ));
        }
        let dg = OrientedGraph::new(&self.face_labels(), &edges)?;
        let m1 = self.graph.connection_matrix();
        let faces: Vec<(String, Vec<(String, i8)>)> = self
            .graph
            .vertices
            .iter()
            .enumerate()
            .map(|(v, label)| {
                let b = (0..self.graph.num_edges())
                    .filter(|&e| m1[e][v] != 0)
                    .map(|e| (self.graph.edges[e].id.clone(), m1[e][v] as i8))
                    .collect();
                (label.clone(), b)
            })
            .collect();
        PlanarComplex::new(dg, &faces, Embedding::Sphere)
    }

    /// `(dim H_0, dim H_1, dim H_2)` from enumerated quotient sizes over `probe`.
    pub fn homology_dimensions(
        &self,
        probe: &FiniteAbelianGroup,
        cap: u64,
    ) -> Result<(u32, u32, u32)> {
        self.graph.require_connected()?;
        let m1 = self.graph.connection_matrix();
        let m2 = self.second_connection_matrix();
        let m1t = transpose(&m1);
        let m2t = transpose(&m2);
        let vl = self.graph.vertices.clone();
        let el = self.graph.edge_labels();
        let c0 = pow_sat(probe.order(), vl.len());
        let b0 = image_of_matrix(probe, &m1t, vl, cap)?.size()?;
        let z1 = kernel_of_matrix(probe, &m1t, el.clone(), cap)?.size()?;
        let b1 = image_of_matrix(probe, &m2t, el, cap)?.size()?;
        let z2 = kernel_of_matrix(probe, &m2t, self.face_labels(), cap)?.size()?;
        Ok((
            log_exact(c0 / b0, probe)?,
            log_exact(z1 / b1, probe)?,
            log_exact(z2, probe)?,
        ))
    }
}

fn log_exact(size: u128, probe: &FiniteAbelianGroup) -> Result<u32> {
    let q = probe.order() as u128;
    let mut p = 1u128;
    for k in 0..128 {
        if p == size {
            return Ok(k);
        }
        if p > size {
            break;
        }
        p = p.saturating_mul(q);
    }
    Err(invalid(format!(
        "size {size} is not a power of the probe alphabet order {q}"
    )))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// False if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
