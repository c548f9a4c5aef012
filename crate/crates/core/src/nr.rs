//! Normal realizations: constraint graphs of repetition and zero-sum nodes
//! joined by (possibly sign-inverting) internal edges, with labelled
//! half-edges carrying the external variables.

use crate::config::{pow_sat, Limits};
use crate::error::{invalid, Error, Result};
use crate::gcode::{GroupCode, Word};
use crate::group::FiniteAbelianGroup;
use crate::topo::{OrientedGraph, SpanningTree};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NodeKind {
    Repetition,
    ZeroSum,
}

impl NodeKind {
    pub fn dual(self) -> NodeKind {
        match self {
            NodeKind::Repetition => NodeKind::ZeroSum,
            NodeKind::ZeroSum => NodeKind::Repetition,
        }
    }
}

/// What a node port is attached to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Port {
    /// End `end` (0 or 1) of internal edge `edge`.
    Edge {
        edge: usize,
        end: u8,
    },
    Half(usize),
}

/// What a variable stands for in a graph-derived realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Vertex,
    Edge,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub kind: NodeKind,
    pub label: String,
    pub ports: Vec<Port>,
}

/// An internal edge. With `inverting`, end 1 sees the negation of the
/// value seen by end 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InternalEdge {
    pub ends: [usize; 2],
    pub inverting: bool,
    /// Graph edge this variable belongs to, if any.
    pub origin: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfEdge {
    pub label: String,
    pub node: usize,
    pub role: Role,
}

/// Which standard construction a realization came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Construction {
    W01,
    W10,
    Z0,
    B1,
    Z1,
    B0,
    Z0Io,
    B1Io,
    Z1Io,
    B0Io,
    W01Io,
    W10Io,
    Custom,
}

impl Construction {
    pub fn dual(self) -> Construction {
        use Construction::*;
        match self {
            W01 => W10,
            W10 => W01,
            Z0 => B0,
            B0 => Z0,
            B1 => Z1,
            Z1 => B1,
            Z0Io => B0Io,
            B0Io => Z0Io,
            B1Io => Z1Io,
            Z1Io => B1Io,
            W01Io => W10Io,
            W10Io => W01Io,
            Custom => Custom,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalRealization {
    pub alphabet: FiniteAbelianGroup,
    pub nodes: Vec<Node>,
    pub edges: Vec<InternalEdge>,
    pub half_edges: Vec<HalfEdge>,
    pub construction: Construction,
}

impl NormalRealization {
    pub fn new(alphabet: FiniteAbelianGroup) -> Self {
        NormalRealization {
            alphabet,
            nodes: Vec::new(),
            edges: Vec::new(),
            half_edges: Vec::new(),
            construction: Construction::Custom,
        }
    }

    pub fn add_node(&mut self, kind: NodeKind, label: impl Into<String>) -> usize {
        self.nodes.push(Node {
            kind,
            label: label.into(),
            ports: Vec::new(),
        });
        self.nodes.len() - 1
    }

    /// Joins `a` (end 0) and `b` (end 1) with a new internal edge.
    pub fn connect(
        &mut self,
        a: usize,
        b: usize,
        inverting: bool,
        origin: Option<String>,
    ) -> usize {
        let e = self.edges.len();
        self.edges.push(InternalEdge {
            ends: [a, b],
            inverting,
            origin,
        });
        self.nodes[a].ports.push(Port::Edge { edge: e, end: 0 });
        self.nodes[b].ports.push(Port::Edge { edge: e, end: 1 });
        e
    }

    pub fn add_half_edge(&mut self, node: usize, label: impl Into<String>, role: Role) -> usize {
        let h = self.half_edges.len();
        self.half_edges.push(HalfEdge {
            label: label.into(),
            node,
            role,
        });
        self.nodes[node].ports.push(Port::Half(h));
        h
    }

    /// Checks the normal degree restriction and label uniqueness; used after
    /// deserialising.
    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for (n, node) in self.nodes.iter().enumerate() {
            for p in &node.ports {
                if !seen.insert(*p) {
                    return Err(invalid(format!("port {p:?} attached twice")));
                }
                match *p {
                    Port::Edge { edge, end } => {
                        let e = self
                            .edges
                            .get(edge)
                            .ok_or_else(|| invalid("port names a missing edge"))?;
                        if end > 1 || e.ends[end as usize] != n {
                            return Err(invalid(format!(
                                "edge {edge} end {end} does not attach to node {n}"
                            )));
                        }
                    }
                    Port::Half(h) => {
                        let he = self
                            .half_edges
                            .get(h)
                            .ok_or_else(|| invalid("port names a missing half-edge"))?;
                        if he.node != n {
                            return Err(invalid(format!(
                                "half-edge {h} does not attach to node {n}"
                            )));
                        }
                    }
                }
            }
        }
        if seen.len() != 2 * self.edges.len() + self.half_edges.len() {
            return Err(invalid(
                "every edge end and half-edge must attach to exactly one node port",
            ));
        }
        let mut labels = HashSet::new();
        for h in &self.half_edges {
            if !labels.insert(&h.label) {
                return Err(invalid(format!("duplicate half-edge label `{}`", h.label)));
            }
        }
        Ok(())
    }

    pub fn half_edge_labels(&self) -> Vec<String> {
        self.half_edges.iter().map(|h| h.label.clone()).collect()
    }

    pub fn half_edge_index(&self, label: &str) -> Result<usize> {
        self.half_edges
            .iter()
            .position(|h| h.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.into()))
    }

    pub fn degree(&self, node: usize) -> usize {
        self.nodes[node].ports.len()
    }

    /// `|A_E|`: size of the internal state space.
    pub fn state_space_size(&self) -> u128 {
        pow_sat(self.alphabet.order(), self.edges.len())
    }

    /// `|C_V|`: product of the constraint code sizes.
    pub fn constraint_size(&self) -> u128 {
        let q = self.alphabet.order();
        self.nodes.iter().fold(1u128, |acc, n| {
            let d = n.ports.len();
            let size = match n.kind {
                _ if d == 0 => 1,
                NodeKind::Repetition => q as u128,
                NodeKind::ZeroSum => pow_sat(q, d - 1),
            };
            acc.saturating_mul(size)
        })
    }

    /// Swap node kinds and toggle every inverter. Half-edges are unchanged.
    pub fn dualize(&self) -> NormalRealization {
        let mut d = self.clone();
        for n in &mut d.nodes {
            n.kind = n.kind.dual();
        }
        for e in &mut d.edges {
            e.inverting = !e.inverting;
        }
        d.construction = self.construction.dual();
        d
    }

    /// Copy keeping only the selected nodes, edges and half-edges. Edges
    /// and half-edges on dropped nodes are dropped too; port order is kept.
    pub fn filtered(
        &self,
        keep_node: impl Fn(usize, &Node) -> bool,
        keep_edge: impl Fn(usize, &InternalEdge) -> bool,
        keep_half: impl Fn(usize, &HalfEdge) -> bool,
    ) -> NormalRealization {
        let node_ok: Vec<bool> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| keep_node(i, n))
            .collect();
        let edge_ok: Vec<bool> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| keep_edge(i, e) && node_ok[e.ends[0]] && node_ok[e.ends[1]])
            .collect();
        let half_ok: Vec<bool> = self
            .half_edges
            .iter()
            .enumerate()
            .map(|(i, h)| keep_half(i, h) && node_ok[h.node])
            .collect();
        let mut out = NormalRealization::new(self.alphabet.clone());
        out.construction = self.construction;
        let mut node_map = vec![usize::MAX; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            if node_ok[i] {
                node_map[i] = out.nodes.len();
                out.nodes.push(Node {
                    kind: n.kind,
                    label: n.label.clone(),
                    ports: Vec::new(),
                });
            }
        }
        let mut edge_map = vec![usize::MAX; self.edges.len()];
        for (i, e) in self.edges.iter().enumerate() {
            if edge_ok[i] {
                edge_map[i] = out.edges.len();
                out.edges.push(InternalEdge {
                    ends: [node_map[e.ends[0]], node_map[e.ends[1]]],
                    inverting: e.inverting,
                    origin: e.origin.clone(),
                });
            }
        }
        let mut half_map = vec![usize::MAX; self.half_edges.len()];
        for (i, h) in self.half_edges.iter().enumerate() {
            if half_ok[i] {
                half_map[i] = out.half_edges.len();
                out.half_edges.push(HalfEdge {
                    label: h.label.clone(),
                    node: node_map[h.node],
                    role: h.role,
                });
            }
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if !node_ok[i] {
                continue;
            }
            let ports = &mut out.nodes[node_map[i]].ports;
            for p in &n.ports {
                match *p {
                    Port::Edge { edge, end } if edge_ok[edge] => ports.push(Port::Edge {
                        edge: edge_map[edge],
                        end,
                    }),
                    Port::Half(h) if half_ok[h] => ports.push(Port::Half(half_map[h])),
                    _ => {}
                }
            }
        }
        out
    }

    /// Replaces every degree-2 node without half-edges by a direct edge:
    /// a repetition node passes its value through, a zero-sum node negates it.
    pub fn simplify_degree2(&self) -> NormalRealization {
        let mut r = self.clone();
        loop {
            let candidate = (0..r.nodes.len()).find(|&n| {
                let ports = &r.nodes[n].ports;
                ports.len() == 2
                    && ports.iter().all(|p| matches!(p, Port::Edge { .. }))
                    && match (ports[0], ports[1]) {
                        (Port::Edge { edge: a, .. }, Port::Edge { edge: b, .. }) => a != b,
                        _ => false,
                    }
            });
            let Some(n) = candidate else { return r };
            let (Port::Edge { edge: ea, end: xa }, Port::Edge { edge: eb, end: xb }) =
                (r.nodes[n].ports[0], r.nodes[n].ports[1])
            else {
                unreachable!()
            };
            let other_a = r.edges[ea].ends[1 - xa as usize];
            let other_b = r.edges[eb].ends[1 - xb as usize];
            let node_negates = r.nodes[n].kind == NodeKind::ZeroSum;
            let inverting = r.edges[ea].inverting ^ r.edges[eb].inverting ^ node_negates;
            let origin = r.edges[ea]
                .origin
                .clone()
                .or_else(|| r.edges[eb].origin.clone());
            // Reconnect: the port on other_a that held ea now holds a fresh edge.
            let fresh = r.edges.len();
            r.edges.push(InternalEdge {
                ends: [other_a, other_b],
                inverting,
                origin,
            });
            let ea_port = Port::Edge {
                edge: ea,
                end: 1 - xa,
            };
            let eb_port = Port::Edge {
                edge: eb,
                end: 1 - xb,
            };
            for p in r.nodes[other_a].ports.iter_mut() {
                if *p == ea_port {
                    *p = Port::Edge {
                        edge: fresh,
                        end: 0,
                    };
                }
            }
            for p in r.nodes[other_b].ports.iter_mut() {
                if *p == eb_port {
                    *p = Port::Edge {
                        edge: fresh,
                        end: 1,
                    };
                }
            }
            r.nodes[n].ports.clear();
            r = r.filtered(|i, _| i != n, |i, _| i != ea && i != eb, |_, _| true);
        }
    }
}

/// Result of exhaustive behavior enumeration.
#[derive(Debug, Clone)]
pub struct BehaviorSummary {
    pub behavior_size: u128,
    pub external_behavior: GroupCode,
    pub unobservable_size: u128,
    pub total_state_size: u128,
    pub total_constraint_size: u128,
}

impl BehaviorSummary {
    /// `|B| |A_E| / |C_V|`.
    pub fn controllability_degree(&self) -> u128 {
        let num = self.behavior_size * self.total_state_size;
        debug_assert_eq!(num % self.total_constraint_size, 0);
        num / self.total_constraint_size
    }

    pub fn is_observable(&self) -> bool {
        self.unobservable_size == 1
    }

    pub fn is_controllable(&self) -> bool {
        self.controllability_degree() == 1
    }
}

/// Depth-first search over configurations with local propagation: a
/// repetition node forces all its ports once one is known, a zero-sum node
/// forces its last unknown port.
pub(crate) struct Solver<'a> {
    r: &'a NormalRealization,
    /// Per variable (edges first, then half-edges): `(node, negated)` views.
    var_views: Vec<Vec<(usize, bool)>>,
    /// Per node: `(variable, negated)` per port.
    node_vars: Vec<Vec<(usize, bool)>>,
    order: Vec<usize>,
}

impl<'a> Solver<'a> {
    pub(crate) fn new(r: &'a NormalRealization) -> Self {
        let ne = r.edges.len();
        let nv = ne + r.half_edges.len();
        let mut var_views = vec![Vec::new(); nv];
        let mut node_vars = Vec::with_capacity(r.nodes.len());
        for (n, node) in r.nodes.iter().enumerate() {
            let mut vars = Vec::with_capacity(node.ports.len());
            for p in &node.ports {
                let (v, neg) = match *p {
                    Port::Edge { edge, end } => (edge, end == 1 && r.edges[edge].inverting),
                    Port::Half(h) => (ne + h, false),
                };
                vars.push((v, neg));
                var_views[v].push((n, neg));
            }
            node_vars.push(vars);
        }
        // Branch in breadth-first node order so propagation bites early.
        let mut order = Vec::with_capacity(nv);
        let mut var_seen = vec![false; nv];
        let mut node_seen = vec![false; r.nodes.len()];
        for start in 0..r.nodes.len() {
            if node_seen[start] {
                continue;
            }
            node_seen[start] = true;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(n) = queue.pop_front() {
                for &(v, _) in &node_vars[n] {
                    if !var_seen[v] {
                        var_seen[v] = true;
                        order.push(v);
                    }
                    for &(m, _) in &var_views[v] {
                        if !node_seen[m] {
                            node_seen[m] = true;
                            queue.push_back(m);
                        }
                    }
                }
            }
        }
        order.extend((0..nv).filter(|&v| !var_seen[v]));
        Solver {
            r,
            var_views,
            node_vars,
            order,
        }
    }

    pub(crate) fn num_vars(&self) -> usize {
        self.var_views.len()
    }

    /// Calls `emit` for every full configuration consistent with `fixed`
    /// (`(variable, value)` pairs). Stops with `CapExceeded` after `cap` hits.
    pub(crate) fn enumerate(
        &self,
        fixed: &[(usize, usize)],
        cap: u64,
        emit: &mut dyn FnMut(&[usize]),
    ) -> Result<u64> {
        let mut assign: Vec<Option<usize>> = vec![None; self.num_vars()];
        let mut trail = Vec::new();
        for &(v, val) in fixed {
            match assign[v] {
                Some(x) if x != val => return Ok(0),
                Some(_) => {}
                None => {
                    assign[v] = Some(val);
                    trail.push(v);
                }
            }
        }
        let mut queue: Vec<usize> = (0..self.r.nodes.len()).collect();
        if !self.propagate(&mut assign, &mut trail, &mut queue) {
            return Ok(0);
        }
        let mut count = 0u64;
        let mut full = vec![0usize; self.num_vars()];
        self.search(&mut assign, &mut trail, 0, cap, &mut count, &mut full, emit)?;
        Ok(count)
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        &self,
        assign: &mut Vec<Option<usize>>,
        trail: &mut Vec<usize>,
        mut pos: usize,
        cap: u64,
        count: &mut u64,
        full: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[usize]),
    ) -> Result<()> {
        while pos < self.order.len() && assign[self.order[pos]].is_some() {
            pos += 1;
        }
        if pos == self.order.len() {
            *count += 1;
            if *count > cap {
                return Err(Error::CapExceeded {
                    what: "behavior enumeration".into(),
                    needed: *count as u128,
                    cap,
                });
            }
            for (f, a) in full.iter_mut().zip(assign.iter()) {
                *f = a.expect("all assigned");
            }
            emit(full);
            return Ok(());
        }
        let v = self.order[pos];
        for val in 0..self.r.alphabet.order() {
            let mark = trail.len();
            assign[v] = Some(val);
            trail.push(v);
            let mut queue: Vec<usize> = self.var_views[v].iter().map(|&(n, _)| n).collect();
            if self.propagate(assign, trail, &mut queue) {
                self.search(assign, trail, pos + 1, cap, count, full, emit)?;
            }
            for u in trail.drain(mark..) {
                assign[u] = None;
            }
        }
        Ok(())
    }

    /// Applies forced values until fixpoint; false on contradiction.
    fn propagate(
        &self,
        assign: &mut [Option<usize>],
        trail: &mut Vec<usize>,
        queue: &mut Vec<usize>,
    ) -> bool {
        let g = &self.r.alphabet;
        let view = |val: usize, neg: bool| if neg { g.neg(val) } else { val };
        while let Some(n) = queue.pop() {
            let vars = &self.node_vars[n];
            match self.r.nodes[n].kind {
                NodeKind::Repetition => {
                    let Some(common) = vars
                        .iter()
                        .find_map(|&(v, neg)| assign[v].map(|x| view(x, neg)))
                    else {
                        continue;
                    };
                    for &(v, neg) in vars {
                        match assign[v] {
                            Some(x) => {
                                if view(x, neg) != common {
                                    return false;
                                }
                            }
                            None => {
                                assign[v] = Some(view(common, neg));
                                trail.push(v);
                                queue.extend(
                                    self.var_views[v]
                                        .iter()
                                        .map(|&(m, _)| m)
                                        .filter(|&m| m != n),
                                );
                            }
                        }
                    }
                }
                NodeKind::ZeroSum => {
                    let mut sum = 0;
                    let mut unknown = None;
                    let mut n_unknown = 0;
                    for &(v, neg) in vars {
                        match assign[v] {
                            Some(x) => sum = g.add(sum, view(x, neg)),
                            None => {
                                n_unknown += 1;
                                unknown = Some((v, neg));
                            }
                        }
                    }
                    match n_unknown {
                        0 if sum != 0 => return false,
                        1 => {
                            let (v, neg) = unknown.expect("one unknown");
                            assign[v] = Some(view(g.neg(sum), neg));
                            trail.push(v);
                            queue.extend(
                                self.var_views[v]
                                    .iter()
                                    .map(|&(m, _)| m)
                                    .filter(|&m| m != n),
                            );
                        }
                        _ => {}
                    }
                }
            }
        }
        true
    }
}

/// Enumerates the full behavior and reports the structural ledger.
pub fn analyze(r: &NormalRealization, limits: &Limits) -> Result<BehaviorSummary> {
    let solver = Solver::new(r);
    let ne = r.edges.len();
    let mut externals: HashSet<Word> = HashSet::new();
    let mut unobservable = 0u128;
    let total = solver.enumerate(&[], limits.cap, &mut |cfg| {
        let ext = &cfg[ne..];
        if ext.iter().all(|&x| x == 0) {
            unobservable += 1;
        }
        if !externals.contains(ext) {
            externals.insert(ext.to_vec());
        }
    })?;
    let external_behavior = GroupCode::from_words(
        r.alphabet.clone(),
        r.half_edge_labels(),
        externals.into_iter().collect(),
        limits.cap,
    )?;
    let summary = BehaviorSummary {
        behavior_size: total as u128,
        unobservable_size: unobservable,
        total_state_size: r.state_space_size(),
        total_constraint_size: r.constraint_size(),
        external_behavior,
    };
    debug_assert_eq!(
        summary.behavior_size,
        summary.unobservable_size * summary.external_behavior.size()?
    );
    Ok(summary)
}

/// `(is_controllable, |B| |A_E| / |C_V|)`.
pub fn controllability_test(r: &NormalRealization, limits: &Limits) -> Result<(bool, u128)> {
    let s = analyze(r, limits)?;
    let d = s.controllability_degree();
    Ok((d == 1, d))
}

/// Realization of `W01 = {(x, Mx)}`: a repetition node per vertex carrying
/// `x_v`, a zero-sum node per edge carrying `y_e`, with an inverter on the
/// replica from the head vertex.
pub fn build_w01(g: &OrientedGraph, alphabet: &FiniteAbelianGroup) -> Result<NormalRealization> {
    g.require_connected()?;
    let mut r = NormalRealization::new(alphabet.clone());
    r.construction = Construction::W01;
    for v in g.vertices() {
        let n = r.add_node(NodeKind::Repetition, v.clone());
        r.add_half_edge(n, v.clone(), Role::Vertex);
    }
    for e in g.edges() {
        let n = r.add_node(NodeKind::ZeroSum, e.id.clone());
        r.connect(e.tail, n, false, Some(e.id.clone()));
        r.connect(e.head, n, true, Some(e.id.clone()));
        r.add_half_edge(n, e.id.clone(), Role::Edge);
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Space {
    Z0,
    B1,
}

/// `Z0`: zero the edge half-edges and simplify. `B1`: drop the vertex
/// half-edges, keeping the replicas.
pub fn derive_space_realization(
    w01: &NormalRealization,
    which: Space,
) -> Result<NormalRealization> {
    if w01.construction != Construction::W01 {
        return Err(Error::NonStandardInput(format!(
            "expected a W01 realization, got {:?}",
            w01.construction
        )));
    }
    let mut r = match which {
        // A half-edge fixed to 0 on a zero-sum node contributes nothing to its sum.
        Space::Z0 => w01
            .filtered(|_, _| true, |_, _| true, |_, h| h.role != Role::Edge)
            .simplify_degree2(),
        Space::B1 => w01.filtered(|_, _| true, |_, _| true, |_, h| h.role != Role::Vertex),
    };
    r.construction = match which {
        Space::Z0 => Construction::Z0,
        Space::B1 => Construction::B1,
    };
    Ok(r)
}

/// The four cochain/chain space realizations of a graph.
pub fn space_realization(
    g: &OrientedGraph,
    alphabet: &FiniteAbelianGroup,
    which: Construction,
) -> Result<NormalRealization> {
    let w01 = build_w01(g, alphabet)?;
    match which {
        Construction::W01 => Ok(w01),
        Construction::W10 => Ok(w01.dualize()),
        Construction::Z0 => derive_space_realization(&w01, Space::Z0),
        Construction::B1 => derive_space_realization(&w01, Space::B1),
        Construction::B0 => Ok(derive_space_realization(&w01, Space::Z0)?.dualize()),
        Construction::Z1 => Ok(derive_space_realization(&w01, Space::B1)?.dualize()),
        other => Err(Error::NonStandardInput(format!(
            "{other:?} is not a space realization"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IoKind {
    Z0,
    B1,
    Z1,
    B0,
}

/// Observable and controllable I/O realizations of the four spaces.
///
/// * `Z0`: keep only the tree-edge constraints; information set `{base}`.
/// * `B1`: fix the replica of `base` to zero; information set: tree edges.
/// * `Z1`: drop the zero-sum constraint of `base`; information set: co-tree edges.
/// * `B0`: dual of the `Z0` form; information set: all vertices but `base`.
pub fn make_io_realization(
    r: &NormalRealization,
    kind: IoKind,
    tree: &SpanningTree,
    base: &str,
) -> Result<NormalRealization> {
    let expect = match kind {
        IoKind::Z0 => Construction::Z0,
        IoKind::B1 => Construction::B1,
        IoKind::Z1 => Construction::Z1,
        IoKind::B0 => Construction::B0,
    };
    if r.construction != expect {
        return Err(Error::NonStandardInput(format!(
            "{kind:?} I/O form needs a {expect:?} realization, got {:?}",
            r.construction
        )));
    }
    let base_node = || {
        r.nodes
            .iter()
            .position(|n| n.label == base)
            .ok_or_else(|| Error::UnknownLabel(base.to_string()))
    };
    let mut out = match kind {
        IoKind::Z0 => {
            let keep: HashSet<&String> = tree.tree_labels.iter().collect();
            r.filtered(
                |_, _| true,
                |_, e| e.origin.as_ref().is_some_and(|o| keep.contains(o)),
                |_, _| true,
            )
        }
        IoKind::B1 | IoKind::Z1 => {
            let b = base_node()?;
            r.filtered(|i, _| i != b, |_, _| true, |_, _| true)
        }
        IoKind::B0 => make_io_realization(&r.dualize(), IoKind::Z0, tree, base)?.dualize(),
    };
    out.construction = match kind {
        IoKind::Z0 => Construction::Z0Io,
        IoKind::B1 => Construction::B1Io,
        IoKind::Z1 => Construction::Z1Io,
        IoKind::B0 => Construction::B0Io,
    };
    Ok(out)
}

/// Information set of an I/O realization built by `make_io_realization`.
pub fn io_information_set(
    g: &OrientedGraph,
    kind: IoKind,
    tree: &SpanningTree,
    base: &str,
) -> Vec<String> {
    match kind {
        IoKind::Z0 => vec![base.to_string()],
        IoKind::B1 => tree.tree_labels.clone(),
        IoKind::Z1 => tree.cotree_labels.clone(),
        IoKind::B0 => g
            .vertices()
            .iter()
            .filter(|v| *v != base)
            .cloned()
            .collect(),
    }
}

/// I/O realization of `W01` with information set `(x_base, y_T)`, composed
/// from a repetition block generating `x_base 1`, the `B1` I/O block
/// generating `x'` with `x'_base = 0`, and one adder per other vertex
/// forming `x_u = x_base + x'_u`.
pub fn build_w01_io(
    g: &OrientedGraph,
    alphabet: &FiniteAbelianGroup,
    tree: &SpanningTree,
    base: &str,
) -> Result<NormalRealization> {
    let b1 = space_realization(g, alphabet, Construction::B1)?;
    let mut r = make_io_realization(&b1, IoKind::B1, tree, base)?;
    let bi = g.vertex_index(base)?;
    let rep = r.add_node(NodeKind::Repetition, format!("{base}*"));
    r.add_half_edge(rep, base, Role::Vertex);
    for (ui, u) in g.vertices().iter().enumerate() {
        if ui == bi {
            continue;
        }
        let replica = r
            .nodes
            .iter()
            .position(|n| n.label == *u)
            .expect("vertex node survives");
        let adder = r.add_node(NodeKind::ZeroSum, format!("{u}+"));
        r.connect(rep, adder, true, None);
        r.connect(replica, adder, true, None);
        r.add_half_edge(adder, u.clone(), Role::Vertex);
    }
    r.construction = Construction::W01Io;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn z(q: u32) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(q).unwrap()
    }

    #[test]
    fn w01_counts_on_example1() {
        let r = build_w01(&fixtures::example1(), &z(2)).unwrap();
        assert_eq!(
            (r.nodes.len(), r.edges.len(), r.half_edges.len()),
            (11, 12, 11)
        );
        r.validate().unwrap();
    }

    #[test]
    fn single_edge_w01() {
        let g = OrientedGraph::new(&["u", "w"], &[("e", "u", "w")]).unwrap();
        let r = build_w01(&g, &z(3)).unwrap();
        let s = analyze(&r, &Limits::default()).unwrap();
        for w in s.external_behavior.words().unwrap() {
            assert_eq!(w[2], z(3).sub(w[1], w[0]));
        }
        assert_eq!(s.external_behavior.size().unwrap(), 9);
    }

    #[test]
    fn isolated_equality_node() {
        let mut r = NormalRealization::new(z(2));
        let n = r.add_node(NodeKind::Repetition, "eq");
        r.add_half_edge(n, "a", Role::Other);
        r.add_half_edge(n, "b", Role::Other);
        let s = analyze(&r, &Limits::default()).unwrap();
        assert_eq!(
            (s.behavior_size, s.total_constraint_size, s.total_state_size),
            (2, 2, 1)
        );
        assert_eq!(
            controllability_test(&r, &Limits::default()).unwrap(),
            (true, 1)
        );
    }

    #[test]
    fn simplify_keeps_behavior() {
        let mut r = NormalRealization::new(z(3));
        let a = r.add_node(NodeKind::Repetition, "a");
        let m = r.add_node(NodeKind::ZeroSum, "m");
        let b = r.add_node(NodeKind::Repetition, "b");
        r.add_half_edge(a, "x", Role::Other);
        r.add_half_edge(b, "y", Role::Other);
        r.connect(a, m, false, None);
        r.connect(m, b, false, None);
        let before = analyze(&r, &Limits::default()).unwrap();
        let s = r.simplify_degree2();
        assert_eq!(s.nodes.len(), 2);
        assert_eq!(s.edges.len(), 1);
        assert!(s.edges[0].inverting);
        s.validate().unwrap();
        let after = analyze(&s, &Limits::default()).unwrap();
        assert!(after
            .external_behavior
            .same_set(&before.external_behavior)
            .unwrap());
    }

    #[test]
    fn z0_structure_matches_graph() {
        let g = fixtures::example1();
        let r = space_realization(&g, &z(2), Construction::Z0).unwrap();
        assert_eq!(
            (r.nodes.len(), r.edges.len(), r.half_edges.len()),
            (5, 6, 5)
        );
        assert!(r.edges.iter().all(|e| !e.inverting));
        let b1 = space_realization(&g, &z(2), Construction::B1).unwrap();
        assert_eq!(
            (b1.nodes.len(), b1.edges.len(), b1.half_edges.len()),
            (11, 12, 6)
        );
    }

    #[test]
    fn non_standard_input_rejected() {
        let g = fixtures::example1();
        let z0 = space_realization(&g, &z(2), Construction::Z0).unwrap();
        assert!(matches!(
            derive_space_realization(&z0, Space::B1),
            Err(Error::NonStandardInput(_))
        ));
        let t = g.spanning_tree().unwrap();
        assert!(matches!(
            make_io_realization(&z0, IoKind::B1, &t, "v1"),
            Err(Error::NonStandardInput(_))
        ));
    }

    #[test]
    fn serde_round_trip() {
        let r = build_w01(&fixtures::example1(), &z(2)).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: NormalRealization = serde_json::from_str(&s).unwrap();
        back.validate().unwrap();
        assert_eq!(back, r);
    }
}
