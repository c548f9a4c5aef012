//! Normal factor graphs: complex node functions on variables attached to
//! edges (internal, summed over) and half-edges (external, arguments of the
//! partition function). Includes the Fourier dual, the edge replacement
//! construction, and edge-weighted graphs built on normal realizations.

use crate::config::{pow_sat, Limits};
use crate::error::{invalid, Error, Result};
use crate::gcode::odometer;
use crate::group::{transform_table, FiniteAbelianGroup, GroupFunction};
use crate::nr::{NodeKind, NormalRealization, Port, Solver};
use crate::numeric::Scale;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorNode {
    pub label: String,
    /// Values over the port variables, first port most significant.
    pub table: Vec<Complex64>,
    pub ports: Vec<Port>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NfgEdge {
    pub alphabet: FiniteAbelianGroup,
    pub ends: [usize; 2],
    /// End 1 sees the negation of the value seen by end 0.
    pub inverting: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NfgHalfEdge {
    pub label: String,
    pub alphabet: FiniteAbelianGroup,
    pub node: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct NormalFactorGraph {
    pub nodes: Vec<FactorNode>,
    pub edges: Vec<NfgEdge>,
    pub half_edges: Vec<NfgHalfEdge>,
}

impl NormalFactorGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a node; its table must match the ports attached afterwards.
    pub fn add_node(&mut self, label: impl Into<String>, table: Vec<Complex64>) -> usize {
        self.nodes.push(FactorNode {
            label: label.into(),
            table,
            ports: Vec::new(),
        });
        self.nodes.len() - 1
    }

    pub fn connect(
        &mut self,
        a: usize,
        b: usize,
        alphabet: FiniteAbelianGroup,
        inverting: bool,
    ) -> usize {
        let e = self.edges.len();
        self.edges.push(NfgEdge {
            alphabet,
            ends: [a, b],
            inverting,
        });
        self.nodes[a].ports.push(Port::Edge { edge: e, end: 0 });
        self.nodes[b].ports.push(Port::Edge { edge: e, end: 1 });
        e
    }

    pub fn add_half_edge(
        &mut self,
        node: usize,
        label: impl Into<String>,
        alphabet: FiniteAbelianGroup,
    ) -> usize {
        let h = self.half_edges.len();
        self.half_edges.push(NfgHalfEdge {
            label: label.into(),
            alphabet,
            node,
        });
        self.nodes[node].ports.push(Port::Half(h));
        h
    }

    fn port_alphabet(&self, p: Port) -> &FiniteAbelianGroup {
        match p {
            Port::Edge { edge, .. } => &self.edges[edge].alphabet,
            Port::Half(h) => &self.half_edges[h].alphabet,
        }
    }

    pub fn node_alphabets(&self, n: usize) -> Vec<FiniteAbelianGroup> {
        self.nodes[n]
            .ports
            .iter()
            .map(|&p| self.port_alphabet(p).clone())
            .collect()
    }

    /// Checks that every table has one value per port configuration.
    pub fn validate(&self) -> Result<()> {
        for (i, n) in self.nodes.iter().enumerate() {
            let size: usize = n
                .ports
                .iter()
                .map(|&p| self.port_alphabet(p).order())
                .product();
            if n.table.len() != size {
                return Err(Error::ShapeMismatch(format!(
                    "node `{}` ({i}) has {} values for {size} port configurations",
                    n.label,
                    n.table.len()
                )));
            }
        }
        Ok(())
    }

    /// `|A_E|`.
    pub fn internal_size(&self) -> u128 {
        self.edges
            .iter()
            .fold(1u128, |a, e| a.saturating_mul(e.alphabet.order() as u128))
    }

    /// `|A_H|`.
    pub fn external_size(&self) -> u128 {
        self.half_edges
            .iter()
            .fold(1u128, |a, h| a.saturating_mul(h.alphabet.order() as u128))
    }

    /// Table strides and port views, precomputed for evaluation.
    fn plan(&self) -> Vec<Vec<(Port, usize, bool)>> {
        self.nodes
            .iter()
            .map(|n| {
                let mut stride = n.table.len();
                n.ports
                    .iter()
                    .map(|&p| {
                        stride /= self.port_alphabet(p).order();
                        let neg =
                            matches!(p, Port::Edge { edge, end: 1 } if self.edges[edge].inverting);
                        (p, stride, neg)
                    })
                    .collect()
            })
            .collect()
    }

    fn product(&self, plan: &[Vec<(Port, usize, bool)>], s: &[usize], a: &[usize]) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for (n, ports) in self.nodes.iter().zip(plan) {
            let mut idx = 0;
            for &(p, stride, neg) in ports {
                let v = match p {
                    Port::Edge { edge, .. } => {
                        if neg {
                            self.edges[edge].alphabet.neg(s[edge])
                        } else {
                            s[edge]
                        }
                    }
                    Port::Half(h) => a[h],
                };
                idx += v * stride;
            }
            acc *= n.table[idx];
            if acc == Complex64::new(0.0, 0.0) {
                break;
            }
        }
        acc
    }

    /// `Z(a) = sum over internal configurations of the product of node functions`.
    pub fn evaluate(&self, external: &[usize], limits: &Limits) -> Result<Complex64> {
        self.validate()?;
        if external.len() != self.half_edges.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} external values for {} half-edges",
                external.len(),
                self.half_edges.len()
            )));
        }
        let total = self.internal_size();
        limits.check("NFG internal configurations", total)?;
        let plan = self.plan();
        let orders: Vec<usize> = self.edges.iter().map(|e| e.alphabet.order()).collect();
        let decode = |mut k: usize, s: &mut [usize]| {
            for (i, &q) in orders.iter().enumerate().rev() {
                s[i] = k % q;
                k /= q;
            }
        };
        let total = total as usize;
        const CHUNK: usize = 4096;
        let sum = limits
            .install(|| {
                (0..total.div_ceil(CHUNK))
                    .into_par_iter()
                    .map(|c| {
                        let mut s = vec![0; orders.len()];
                        let mut acc = Complex64::new(0.0, 0.0);
                        for k in c * CHUNK..((c + 1) * CHUNK).min(total) {
                            decode(k, &mut s);
                            acc += self.product(&plan, &s, external);
                        }
                        acc
                    })
                    .collect::<Vec<_>>()
            })
            .into_iter()
            .sum();
        Ok(sum)
    }

    /// The partition function at every external assignment, in canonical
    /// order with the first half-edge most significant.
    pub fn evaluate_all(&self, limits: &Limits) -> Result<Vec<Complex64>> {
        limits.check(
            "NFG external x internal configurations",
            self.external_size().saturating_mul(self.internal_size()),
        )?;
        let mut out = Vec::new();
        let mut a = vec![0; self.half_edges.len()];
        let orders: Vec<usize> = self.half_edges.iter().map(|h| h.alphabet.order()).collect();
        loop {
            out.push(self.evaluate(&a, limits)?);
            if !odometer_mixed(&mut a, &orders) {
                break;
            }
        }
        Ok(out)
    }

    pub fn half_edge_alphabets(&self) -> Vec<FiniteAbelianGroup> {
        self.half_edges.iter().map(|h| h.alphabet.clone()).collect()
    }

    /// Every node function Fourier-transformed and every edge given the
    /// opposite sign convention. Its partition function is `|A_E|` times the
    /// Fourier transform of this one.
    pub fn dual_nfg(&self) -> NormalFactorGraph {
        let mut d = self.clone();
        for (i, n) in d.nodes.iter_mut().enumerate() {
            n.table = transform_table(&self.node_alphabets(i), &n.table, false);
        }
        for e in &mut d.edges {
            e.inverting = !e.inverting;
        }
        d
    }

    /// Replaces edge `e` by transform, inverter, transform, and adds a
    /// disconnected constant node `1/|A|`; the partition function is unchanged.
    pub fn replace_edge_with_transforms(&self, e: usize) -> Result<NormalFactorGraph> {
        let edge = self
            .edges
            .get(e)
            .ok_or_else(|| invalid(format!("no edge {e}")))?
            .clone();
        let a = edge.alphabet.clone();
        let q = a.order();
        let mut kernel = Vec::with_capacity(q * q);
        for s in 0..q {
            for t in 0..q {
                kernel.push(a.character(t, s));
            }
        }
        let mut g = self.clone();
        let [x, y] = edge.ends;
        let f1 = g.add_node(format!("F{e}a"), kernel.clone());
        let f2 = g.add_node(format!("F{e}b"), kernel);
        // Edge e now runs x -> f1 without inversion.
        g.edges[e] = NfgEdge {
            alphabet: a.clone(),
            ends: [x, f1],
            inverting: false,
        };
        g.nodes[f1].ports.push(Port::Edge { edge: e, end: 1 });
        let mid = g.edges.len();
        g.edges.push(NfgEdge {
            alphabet: a.clone(),
            ends: [f1, f2],
            inverting: true,
        });
        g.nodes[f1].ports.push(Port::Edge { edge: mid, end: 0 });
        g.nodes[f2].ports.push(Port::Edge { edge: mid, end: 1 });
        let last = g.edges.len();
        g.edges.push(NfgEdge {
            alphabet: a,
            ends: [f2, y],
            inverting: edge.inverting,
        });
        g.nodes[f2].ports.push(Port::Edge { edge: last, end: 0 });
        for p in g.nodes[y].ports.iter_mut() {
            if *p == (Port::Edge { edge: e, end: 1 }) {
                *p = Port::Edge { edge: last, end: 1 };
            }
        }
        g.add_node("1/|A|", vec![Complex64::new(1.0 / q as f64, 0.0)]);
        Ok(g)
    }

    /// The realization read as an NFG: each node becomes the 0/1 indicator
    /// of its repetition or zero-sum code.
    pub fn from_realization(r: &NormalRealization) -> NormalFactorGraph {
        let a = &r.alphabet;
        let mut g = NormalFactorGraph::new();
        for node in &r.nodes {
            let d = node.ports.len();
            g.nodes.push(FactorNode {
                label: node.label.clone(),
                table: indicator_table(a, node.kind, d),
                ports: node.ports.clone(),
            });
        }
        for e in &r.edges {
            g.edges.push(NfgEdge {
                alphabet: a.clone(),
                ends: e.ends,
                inverting: e.inverting,
            });
        }
        for h in &r.half_edges {
            g.half_edges.push(NfgHalfEdge {
                label: h.label.clone(),
                alphabet: a.clone(),
                node: h.node,
            });
        }
        g
    }
}

/// Advances an assignment to variables over `alphabets` in canonical order;
/// false after the last one.
pub fn odometer_values(w: &mut [usize], alphabets: &[FiniteAbelianGroup]) -> bool {
    for i in (0..w.len()).rev() {
        w[i] += 1;
        if w[i] < alphabets[i].order() {
            return true;
        }
        w[i] = 0;
    }
    false
}

/// Advances a mixed-radix counter; false after the last value.
pub(crate) fn odometer_mixed(w: &mut [usize], orders: &[usize]) -> bool {
    for i in (0..w.len()).rev() {
        w[i] += 1;
        if w[i] < orders[i] {
            return true;
        }
        w[i] = 0;
    }
    false
}

/// 0/1 table of the repetition or zero-sum code of length `d` over `a`.
pub fn indicator_table(a: &FiniteAbelianGroup, kind: NodeKind, d: usize) -> Vec<Complex64> {
    let q = a.order();
    let size = q.pow(d as u32);
    let mut table = vec![Complex64::new(0.0, 0.0); size];
    let mut w = vec![0; d];
    for slot in table.iter_mut() {
        let member = match kind {
            NodeKind::Repetition => w.windows(2).all(|p| p[0] == p[1]),
            NodeKind::ZeroSum => w.iter().fold(0, |acc, &x| a.add(acc, x)) == 0,
        };
        if member {
            *slot = Complex64::new(1.0, 0.0);
        }
        odometer(&mut w, q);
    }
    table
}

/// A normal realization with one weight function per half-edge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeWeightedNfg {
    pub base: NormalRealization,
    pub weights: Vec<GroupFunction>,
}

/// A partition-function value with its declared ratio to the reference `Z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionValue {
    pub value: Complex64,
    pub method: String,
    pub declared_scale: Scale,
    /// Number of free variables enumerated, when the method has one.
    pub info_set_size: Option<usize>,
}

impl PartitionValue {
    /// `value / declared_scale`.
    pub fn normalized(&self) -> Complex64 {
        self.value * (self.declared_scale.den as f64) / (self.declared_scale.num as f64)
    }
}

/// How `evaluate_ewnfg` sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    /// Read as a closed NFG and sum over every internal configuration.
    FullEnumeration,
    /// Enumerate the behavior by constraint propagation.
    Behavior,
    /// Enumerate the listed half-edges and propagate the rest.
    InformationSet(Vec<String>),
}

impl EdgeWeightedNfg {
    pub fn new(base: NormalRealization, weights: Vec<GroupFunction>) -> Result<Self> {
        if weights.len() != base.half_edges.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} weights for {} half-edges",
                weights.len(),
                base.half_edges.len()
            )));
        }
        if weights.iter().any(|w| w.domain != base.alphabet) {
            return Err(Error::ShapeMismatch(
                "weight domain differs from the half-edge alphabet".into(),
            ));
        }
        Ok(EdgeWeightedNfg { base, weights })
    }

    /// Closed NFG: indicator nodes plus one weight node per former half-edge.
    pub fn to_nfg(&self) -> NormalFactorGraph {
        let mut g = NormalFactorGraph::from_realization(&self.base);
        let halves = std::mem::take(&mut g.half_edges);
        for (h, he) in halves.into_iter().enumerate() {
            let w = g.add_node(format!("w:{}", he.label), self.weights[h].values.clone());
            let e = g.edges.len();
            g.edges.push(NfgEdge {
                alphabet: he.alphabet,
                ends: [he.node, w],
                inverting: false,
            });
            for p in g.nodes[he.node].ports.iter_mut() {
                if *p == Port::Half(h) {
                    *p = Port::Edge { edge: e, end: 0 };
                }
            }
            g.nodes[w].ports.push(Port::Edge { edge: e, end: 1 });
        }
        g
    }

    /// Dual base with Fourier-transformed weights, and the exact factor
    /// `|A_E| |A_H| / |C_V|` by which its partition function exceeds this one.
    pub fn dual(&self) -> (EdgeWeightedNfg, Scale) {
        let scale = Scale::new(self.base.state_space_size(), 1)
            * Scale::new(
                pow_sat(self.base.alphabet.order(), self.base.half_edges.len()),
                1,
            )
            / Scale::new(self.base.constraint_size(), 1);
        let weights = self
            .weights
            .iter()
            .map(GroupFunction::fourier_transform)
            .collect();
        (
            EdgeWeightedNfg {
                base: self.base.dualize(),
                weights,
            },
            scale,
        )
    }

    fn weight_product(&self, ne: usize, cfg: &[usize]) -> Complex64 {
        self.weights
            .iter()
            .enumerate()
            .map(|(h, w)| w.values[cfg[ne + h]])
            .product()
    }

    /// `|B^u| sum_{a in C} prod_h f_h(a_h)`.
    pub fn evaluate(&self, strategy: &Strategy, limits: &Limits) -> Result<Complex64> {
        match strategy {
            Strategy::FullEnumeration => self.to_nfg().evaluate(&[], limits),
            Strategy::Behavior => {
                let solver = Solver::new(&self.base);
                let ne = self.base.edges.len();
                let mut acc = Complex64::new(0.0, 0.0);
                solver.enumerate(&[], limits.cap, &mut |cfg| {
                    acc += self.weight_product(ne, cfg)
                })?;
                Ok(acc)
            }
            Strategy::InformationSet(labels) => {
                let ne = self.base.edges.len();
                let vars = labels
                    .iter()
                    .map(|l| self.base.half_edge_index(l).map(|h| ne + h))
                    .collect::<Result<Vec<_>>>()?;
                let q = self.base.alphabet.order();
                let words = pow_sat(q, vars.len());
                limits.check("information-set words", words)?;
                let solver = Solver::new(&self.base);
                let partials = limits.install(|| {
                    (0..words as usize)
                        .into_par_iter()
                        .map(|k| {
                            let mut fixed = Vec::with_capacity(vars.len());
                            let mut rest = k;
                            for &v in vars.iter().rev() {
                                fixed.push((v, rest % q));
                                rest /= q;
                            }
                            let mut acc = Complex64::new(0.0, 0.0);
                            solver.enumerate(&fixed, limits.cap, &mut |cfg| {
                                acc += self.weight_product(ne, cfg)
                            })?;
                            Ok(acc)
                        })
                        .collect::<Result<Vec<_>>>()
                })?;
                Ok(partials.into_iter().sum())
            }
        }
    }
}

/// Evaluates with the given strategy and wraps the result.
pub fn evaluate_ewnfg(
    e: &EdgeWeightedNfg,
    strategy: &Strategy,
    method: &str,
    declared_scale: Scale,
    limits: &Limits,
) -> Result<PartitionValue> {
    let value = e.evaluate(strategy, limits)?;
    let info_set_size = match strategy {
        Strategy::InformationSet(l) => Some(l.len()),
        _ => None,
    };
    Ok(PartitionValue {
        value,
        method: method.to_string(),
        declared_scale,
        info_set_size,
    })
}

/// `(dual graph, declared scale)` for an edge-weighted graph.
pub fn dual_ewnfg(e: &EdgeWeightedNfg) -> (EdgeWeightedNfg, Scale) {
    e.dual()
}
