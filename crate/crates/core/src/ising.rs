//! Ising-type models on oriented graphs: weight constructors, the
//! brute-force reference, primal and dual edge-weighted evaluations,
//! external fields, planar four-way representations and importance sampling.

use crate::config::{pow_sat, Limits};
use crate::error::{invalid, Error, Result};
use crate::group::{FiniteAbelianGroup, GroupFunction};
use crate::nfg::{EdgeWeightedNfg, PartitionValue, Strategy};
use crate::nr::{space_realization, Construction, NormalRealization, Role};
use crate::numeric::Scale;
use crate::topo::{Embedding, OrientedGraph, PlanarComplex, SpanningTree};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Boltzmann-type model: one weight function per edge on `y_e = x_head - x_tail`,
/// optionally one per vertex on `x_v`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingTypeModel {
    pub graph: OrientedGraph,
    pub alphabet: FiniteAbelianGroup,
    pub edge_weights: Vec<GroupFunction>,
    pub vertex_weights: Option<Vec<GroupFunction>>,
    /// Recorded for reports only; the weights are what gets evaluated.
    pub beta: Option<f64>,
}

/// `f_e = (e^{beta J_e}, e^{-beta J_e})` over Z2.
pub fn ising_weights(beta: f64, j: &[f64]) -> Result<Vec<GroupFunction>> {
    if beta.is_nan() || beta < 0.0 {
        return Err(invalid(format!(
            "inverse temperature must be >= 0, got {beta}"
        )));
    }
    let z2 = FiniteAbelianGroup::cyclic(2)?;
    j.iter()
        .map(|&je| GroupFunction::from_real(z2.clone(), &[(beta * je).exp(), (-beta * je).exp()]))
        .collect()
}

/// `f_e(0) = e^{beta J_e}`, `f_e(y) = 1` otherwise, over `Z_q`.
pub fn potts_weights(beta: f64, j: &[f64], q: u32) -> Result<Vec<GroupFunction>> {
    if q < 2 {
        return Err(invalid(format!("Potts models need q >= 2, got {q}")));
    }
    if beta.is_nan() || beta < 0.0 {
        return Err(invalid(format!(
            "inverse temperature must be >= 0, got {beta}"
        )));
    }
    let zq = FiniteAbelianGroup::cyclic(q)?;
    j.iter()
        .map(|&je| {
            let mut v = vec![1.0; q as usize];
            v[0] = (beta * je).exp();
            GroupFunction::from_real(zq.clone(), &v)
        })
        .collect()
}

impl IsingTypeModel {
    pub fn new(
        graph: OrientedGraph,
        alphabet: FiniteAbelianGroup,
        edge_weights: Vec<GroupFunction>,
    ) -> Result<Self> {
        if edge_weights.len() != graph.num_edges() {
            return Err(Error::ShapeMismatch(format!(
                "{} edge weights for {} edges",
                edge_weights.len(),
                graph.num_edges()
            )));
        }
        if edge_weights.iter().any(|w| w.domain != alphabet) {
            return Err(Error::ShapeMismatch(
                "edge weight domain differs from the alphabet".into(),
            ));
        }
        Ok(IsingTypeModel {
            graph,
            alphabet,
            edge_weights,
            vertex_weights: None,
            beta: None,
        })
    }

    /// Uniform-coupling Ising model over Z2.
    pub fn ising(graph: OrientedGraph, beta: f64, j: f64) -> Result<Self> {
        let w = ising_weights(beta, &vec![j; graph.num_edges()])?;
        let mut m = Self::new(graph, FiniteAbelianGroup::cyclic(2)?, w)?;
        m.beta = Some(beta);
        Ok(m)
    }

    /// Uniform-coupling Potts model over `Z_q`.
    pub fn potts(graph: OrientedGraph, q: u32, beta: f64, j: f64) -> Result<Self> {
        let w = potts_weights(beta, &vec![j; graph.num_edges()], q)?;
        let mut m = Self::new(graph, FiniteAbelianGroup::cyclic(q)?, w)?;
        m.beta = Some(beta);
        Ok(m)
    }

    pub fn with_field(mut self, vertex_weights: Vec<GroupFunction>) -> Result<Self> {
        if vertex_weights.len() != self.graph.num_vertices() {
            return Err(Error::ShapeMismatch(format!(
                "{} vertex weights for {} vertices",
                vertex_weights.len(),
                self.graph.num_vertices()
            )));
        }
        if vertex_weights.iter().any(|w| w.domain != self.alphabet) {
            return Err(Error::ShapeMismatch(
                "vertex weight domain differs from the alphabet".into(),
            ));
        }
        self.vertex_weights = Some(vertex_weights);
        Ok(self)
    }

    /// Same weights, by edge label, on another graph with the same edge labels.
    pub fn transplant(&self, graph: OrientedGraph) -> Result<Self> {
        let w = graph
            .edges()
            .iter()
            .map(|e| Ok(self.edge_weights[self.graph.edge_index(&e.id)?].clone()))
            .collect::<Result<Vec<_>>>()?;
        let mut m = Self::new(graph, self.alphabet.clone(), w)?;
        m.beta = self.beta;
        Ok(m)
    }

    fn require_no_field(&self, method: &str) -> Result<()> {
        if self.vertex_weights.is_some() {
            return Err(Error::IncompatibleMethod(format!(
                "{method} takes no external field; use a field method"
            )));
        }
        Ok(())
    }

    fn field(&self) -> Result<&[GroupFunction]> {
        self.vertex_weights.as_deref().ok_or(Error::MissingField)
    }

    fn q(&self) -> u128 {
        self.alphabet.order() as u128
    }

    /// Weights for the half-edges of a realization built on this graph:
    /// edge half-edges get `f`, vertex half-edges get `g`.
    fn attach(
        &self,
        r: &NormalRealization,
        f: &[GroupFunction],
        g: Option<&[GroupFunction]>,
    ) -> Result<EdgeWeightedNfg> {
        let weights = r
            .half_edges
            .iter()
            .map(|h| match h.role {
                Role::Edge => Ok(f[self.graph.edge_index(&h.label)?].clone()),
                Role::Vertex => {
                    let g = g.ok_or(Error::MissingField)?;
                    Ok(g[self.graph.vertex_index(&h.label)?].clone())
                }
                Role::Other => Err(invalid(format!("half-edge `{}` has no weight", h.label))),
            })
            .collect::<Result<Vec<_>>>()?;
        EdgeWeightedNfg::new(r.clone(), weights)
    }

    fn transformed_edges(&self) -> Vec<GroupFunction> {
        self.edge_weights
            .iter()
            .map(GroupFunction::fourier_transform)
            .collect()
    }
}

fn value(v: Complex64, method: &str, scale: Scale, info: Option<usize>) -> PartitionValue {
    PartitionValue {
        value: v,
        method: method.to_string(),
        declared_scale: scale,
        info_set_size: info,
    }
}

/// Reference value: direct sum over every vertex configuration.
pub fn partition_exact(m: &IsingTypeModel, limits: &Limits) -> Result<PartitionValue> {
    let a = &m.alphabet;
    let q = a.order();
    let nv = m.graph.num_vertices();
    let total = pow_sat(q, nv);
    limits.check("vertex configurations", total)?;
    let edges: Vec<(usize, usize)> = m.graph.edges().iter().map(|e| (e.tail, e.head)).collect();
    let field = m.vertex_weights.as_deref();
    let term = |k: usize, x: &mut [usize]| -> Complex64 {
        let mut r = k;
        for xi in x.iter_mut().rev() {
            *xi = r % q;
            r /= q;
        }
        let mut p = Complex64::new(1.0, 0.0);
        for (w, &(t, h)) in m.edge_weights.iter().zip(&edges) {
            p *= w.values[a.sub(x[h], x[t])];
        }
        if let Some(g) = field {
            for (gv, &xv) in g.iter().zip(x.iter()) {
                p *= gv.values[xv];
            }
        }
        p
    };
    const CHUNK: usize = 4096;
    let total = total as usize;
    let z: Complex64 = limits
        .install(|| {
            (0..total.div_ceil(CHUNK))
                .into_par_iter()
                .map(|c| {
                    let mut x = vec![0; nv];
                    (c * CHUNK..((c + 1) * CHUNK).min(total))
                        .map(|k| term(k, &mut x))
                        .sum::<Complex64>()
                })
                .collect::<Vec<_>>()
        })
        .into_iter()
        .sum();
    Ok(value(z, "exact", Scale::ONE, None))
}

/// Edge-weighted graph on the cut-space realization, summed over the tree
/// edges. The unobservable factor `|Z^0| = |A|` makes it equal to `Z`.
pub fn partition_primal(
    m: &IsingTypeModel,
    tree: Option<&SpanningTree>,
    limits: &Limits,
) -> Result<PartitionValue> {
    m.require_no_field("primal")?;
    m.graph.require_connected()?;
    let t = resolve_tree(&m.graph, tree)?;
    let r = space_realization(&m.graph, &m.alphabet, Construction::B1)?;
    let e = m.attach(&r, &m.edge_weights, None)?;
    let v = e.evaluate(&Strategy::InformationSet(t.tree_labels.clone()), limits)?;
    Ok(value(v, "primal", Scale::ONE, Some(t.tree_labels.len())))
}

/// Dual of the primal graph: cycle-space realization with transformed
/// weights, summed over the cotree edges; `Z_hat = |A|^{|E|-|V|} Z`.
pub fn partition_dual(
    m: &IsingTypeModel,
    tree: Option<&SpanningTree>,
    limits: &Limits,
) -> Result<PartitionValue> {
    m.require_no_field("dual")?;
    m.graph.require_connected()?;
    let t = resolve_tree(&m.graph, tree)?;
    let r = space_realization(&m.graph, &m.alphabet, Construction::B1)?;
    let (d, scale) = m.attach(&r, &m.edge_weights, None)?.dual();
    let v = d.evaluate(&Strategy::InformationSet(t.cotree_labels.clone()), limits)?;
    Ok(value(v, "dual", scale, Some(t.cotree_labels.len())))
}

fn resolve_tree(g: &OrientedGraph, tree: Option<&SpanningTree>) -> Result<SpanningTree> {
    match tree {
        Some(t) => g.tree_from_labels(&t.tree_labels),
        None => g.spanning_tree(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldMethod {
    PrimalW01,
    DualW10,
    Hybrid,
}

/// Partition function with an external field.
pub fn partition_with_field(
    m: &IsingTypeModel,
    method: FieldMethod,
    tree: Option<&SpanningTree>,
    limits: &Limits,
) -> Result<PartitionValue> {
    let g = m.field()?;
    m.graph.require_connected()?;
    match method {
        FieldMethod::PrimalW01 => {
            let r = space_realization(&m.graph, &m.alphabet, Construction::W01)?;
            let e = m.attach(&r, &m.edge_weights, Some(g))?;
            let info = m.graph.vertices().to_vec();
            let n = info.len();
            let v = e.evaluate(&Strategy::InformationSet(info), limits)?;
            Ok(value(v, "field-primal", Scale::ONE, Some(n)))
        }
        FieldMethod::DualW10 => {
            let r = space_realization(&m.graph, &m.alphabet, Construction::W01)?;
            let (d, scale) = m.attach(&r, &m.edge_weights, Some(g))?.dual();
            let info = m.graph.edge_labels();
            let n = info.len();
            let v = d.evaluate(&Strategy::InformationSet(info), limits)?;
            Ok(value(v, "field-dual", scale, Some(n)))
        }
        FieldMethod::Hybrid => {
            let t = resolve_tree(&m.graph, tree)?;
            let h = hybrid(m, g, &t, 0, limits)?;
            Ok(value(
                h,
                "hybrid",
                Scale::power(m.q(), m.graph.num_edges() as i64),
                Some(1 + t.cotree.len()),
            ))
        }
    }
}

/// Vertex `v` stays primal, the edges go dual, and the other `|V|-1` vertex
/// variables cross over through a Fourier transform:
///
/// `sum_{x' in A^{V-v}} L(x') sum_{y: (yM)_{V-v} = x'} prod_e f_hat_e(y_e)`,
/// `L(x') = sum_a g_v(a) prod_{u != v} g_hat_u(-x'_u) exp(2 pi i <x'_u, a>)`.
///
/// The inner sum runs over the free cotree values; tree values are solved
/// leaf by leaf towards `v`.
fn hybrid(
    m: &IsingTypeModel,
    g: &[GroupFunction],
    t: &SpanningTree,
    v: usize,
    limits: &Limits,
) -> Result<Complex64> {
    let a = &m.alphabet;
    let q = a.order();
    let nv = m.graph.num_vertices();
    let edges = m.graph.edges();
    limits.check("hybrid configurations", pow_sat(q, m.graph.num_edges()))?;
    let g_hat: Vec<GroupFunction> = g.iter().map(GroupFunction::fourier_transform).collect();
    let f_hat = m.transformed_edges();
    // Tree vertices in BFS order from v, with the tree edge to the parent.
    let mut adj = vec![Vec::new(); nv];
    for &ei in &t.tree {
        adj[edges[ei].tail].push((edges[ei].head, ei));
        adj[edges[ei].head].push((edges[ei].tail, ei));
    }
    let mut order = vec![v];
    let mut parent_edge = vec![usize::MAX; nv];
    let mut seen = vec![false; nv];
    seen[v] = true;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        for &(w, ei) in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                parent_edge[w] = ei;
                order.push(w);
            }
        }
        i += 1;
    }
    let others: Vec<usize> = (0..nv).filter(|&u| u != v).collect();
    let cotree = &t.cotree;
    let n_link = others.len();
    let n_free = cotree.len();
    let links = pow_sat(q, n_link) as usize;
    let frees = pow_sat(q, n_free) as usize;
    let decode = |mut k: usize, out: &mut [usize]| {
        for o in out.iter_mut().rev() {
            *o = k % q;
            k /= q;
        }
    };
    let partials: Vec<Complex64> = limits.install(|| {
        (0..links)
            .into_par_iter()
            .map(|k| {
                let mut xl = vec![0; n_link];
                decode(k, &mut xl);
                let mut target = vec![0; nv];
                for (&u, &x) in others.iter().zip(&xl) {
                    target[u] = x;
                }
                let mut left = Complex64::new(0.0, 0.0);
                for av in 0..q {
                    let mut p = g[v].values[av];
                    for &u in &others {
                        p *= g_hat[u].values[a.neg(target[u])] * a.character(target[u], av);
                    }
                    left += p;
                }
                if left == Complex64::new(0.0, 0.0) {
                    return Complex64::new(0.0, 0.0);
                }
                let mut right = Complex64::new(0.0, 0.0);
                let mut free = vec![0; n_free];
                let mut y = vec![0; edges.len()];
                for kf in 0..frees {
                    decode(kf, &mut free);
                    for (&ce, &val) in cotree.iter().zip(&free) {
                        y[ce] = val;
                    }
                    // (yM)_u = sum over edges at u of +y_e (head) or -y_e (tail).
                    let mut acc = vec![0; nv];
                    for &ce in cotree {
                        acc[edges[ce].head] = a.add(acc[edges[ce].head], y[ce]);
                        acc[edges[ce].tail] = a.sub(acc[edges[ce].tail], y[ce]);
                    }
                    for &u in order.iter().skip(1).rev() {
                        let ei = parent_edge[u];
                        let need = a.sub(target[u], acc[u]);
                        let val = if edges[ei].head == u {
                            need
                        } else {
                            a.neg(need)
                        };
                        y[ei] = val;
                        acc[edges[ei].head] = a.add(acc[edges[ei].head], val);
                        acc[edges[ei].tail] = a.sub(acc[edges[ei].tail], val);
                    }
                    right += f_hat
                        .iter()
                        .zip(&y)
                        .map(|(f, &ye)| f.values[ye])
                        .product::<Complex64>();
                }
                left * right
            })
            .collect()
    });
    Ok(partials.into_iter().sum())
}

/// The four representations of `Z(G)` on a sphere complex, in order:
/// cut space on `G` with `f`, cycle space on the dual graph with `f`,
/// cycle space on `G` with `f_hat`, cut space on the dual graph with `f_hat`.
pub fn planar_representations(
    m: &IsingTypeModel,
    k: &PlanarComplex,
    limits: &Limits,
) -> Result<Vec<PartitionValue>> {
    if k.embedding() != Embedding::Sphere {
        return Err(Error::IncompatibleMethod(
            "four-way planar representations need a sphere embedding".into(),
        ));
    }
    if k.graph() != &m.graph {
        return Err(invalid("model graph differs from the complex's graph"));
    }
    let dual = k.dual_graph()?;
    four_way(m, dual.graph(), limits)
}

/// The same four representations for the model moved onto the dual graph.
pub fn planar_representations_on_dual(
    m: &IsingTypeModel,
    k: &PlanarComplex,
    limits: &Limits,
) -> Result<(IsingTypeModel, Vec<PartitionValue>)> {
    planar_representations(m, k, limits)?;
    let dual = k.dual_graph()?;
    let md = m.transplant(dual.graph().clone())?;
    let vals = four_way(&md, &m.graph, limits)?;
    Ok((md, vals))
}

/// `partner` must have cycle space equal to the cut space of `m.graph`, and
/// cut space equal to its cycle space.
fn four_way(
    m: &IsingTypeModel,
    partner: &OrientedGraph,
    limits: &Limits,
) -> Result<Vec<PartitionValue>> {
    m.require_no_field("planar four-way")?;
    let q = m.q();
    let b1 = m.graph.num_edges() as i64 - m.graph.num_vertices() as i64 + 1;
    let f_hat = m.transformed_edges();
    let on = |g: &OrientedGraph,
              which: Construction,
              w: &[GroupFunction],
              name: &str,
              scale: Scale|
     -> Result<PartitionValue> {
        let t = g.spanning_tree()?;
        let info = match which {
            Construction::B1 => t.tree_labels,
            _ => t.cotree_labels,
        };
        let r = space_realization(g, &m.alphabet, which)?;
        let weights = r
            .half_edges
            .iter()
            .map(|h| Ok(w[m.graph.edge_index(&h.label)?].clone()))
            .collect::<Result<Vec<_>>>()?;
        let e = EdgeWeightedNfg::new(r, weights)?;
        let n = info.len();
        let v = e.evaluate(&Strategy::InformationSet(info), limits)?;
        Ok(value(v, name, scale, Some(n)))
    };
    Ok(vec![
        on(
            &m.graph,
            Construction::B1,
            &m.edge_weights,
            "cut space on G, f",
            Scale::ONE,
        )?,
        on(
            partner,
            Construction::Z1,
            &m.edge_weights,
            "cycle space on dual graph, f",
            Scale::new(1, q),
        )?,
        on(
            &m.graph,
            Construction::Z1,
            &f_hat,
            "cycle space on G, f_hat",
            Scale::power(q, b1 - 1),
        )?,
        on(
            partner,
            Construction::B1,
            &f_hat,
            "cut space on dual graph, f_hat",
            Scale::power(q, b1),
        )?,
    ])
}

/// Importance-sampling estimate of `Z / |A|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub num_samples: u64,
    pub seed: u64,
    pub tree_used: SpanningTree,
    pub declared_scale: Scale,
}

impl McEstimate {
    /// Estimate of `Z`.
    pub fn normalized(&self) -> f64 {
        self.estimate / self.declared_scale.to_f64()
    }

    pub fn normalized_std_error(&self) -> f64 {
        self.std_error / self.declared_scale.to_f64()
    }
}

/// Samples per block; block `b` draws from stream `b` of the seeded generator.
pub const MC_BLOCK: u64 = 4096;

/// Draws `y_T` from the product of normalized tree-edge weights, completes it
/// to a cut-space vector through the fundamental cycles, and averages
/// `Z_T prod_{e not in T} f_e(y_e)`.
pub fn importance_sampling(
    m: &IsingTypeModel,
    tree: Option<&SpanningTree>,
    num_samples: u64,
    seed: u64,
    limits: &Limits,
) -> Result<McEstimate> {
    m.require_no_field("importance sampling")?;
    m.graph.require_connected()?;
    if num_samples == 0 {
        return Err(invalid("importance sampling needs at least one sample"));
    }
    if !m
        .edge_weights
        .iter()
        .all(GroupFunction::is_real_nonnegative)
    {
        return Err(invalid(
            "importance sampling needs real nonnegative edge weights",
        ));
    }
    let t = resolve_tree(&m.graph, tree)?;
    let a = &m.alphabet;
    let w: Vec<Vec<f64>> = m
        .edge_weights
        .iter()
        .map(|f| f.values.iter().map(|c| c.re).collect())
        .collect();
    let mut z_tree = 1.0;
    let mut cdfs = Vec::with_capacity(t.tree.len());
    for (&ei, label) in t.tree.iter().zip(&t.tree_labels) {
        let mass: f64 = w[ei].iter().sum();
        if mass <= 0.0 {
            return Err(Error::ZeroMassProposal(label.clone()));
        }
        z_tree *= mass;
        let mut acc = 0.0;
        cdfs.push(
            w[ei]
                .iter()
                .map(|x| {
                    acc += x / mass;
                    acc
                })
                .collect::<Vec<f64>>(),
        );
    }
    // y_c = -sum_{e != c} s_e y_e for each cotree edge c.
    let cycles: Vec<(usize, Vec<(usize, i64)>)> = m
        .graph
        .fundamental_cycles(&t)?
        .into_iter()
        .map(|c| {
            let ci = m.graph.edge_index(&c.edge)?;
            let rest = c
                .path
                .iter()
                .skip(1)
                .map(|(id, s)| Ok((m.graph.edge_index(id)?, *s as i64)))
                .collect::<Result<Vec<_>>>()?;
            Ok((ci, rest))
        })
        .collect::<Result<Vec<_>>>()?;
    let blocks = num_samples.div_ceil(MC_BLOCK);
    let run_block = |b: u64| -> (u64, f64, f64) {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(b);
        let n = MC_BLOCK.min(num_samples - b * MC_BLOCK);
        let mut y = vec![0usize; m.graph.num_edges()];
        let (mut mean, mut m2) = (0.0, 0.0);
        for i in 0..n {
            for (&ei, cdf) in t.tree.iter().zip(&cdfs) {
                let u: f64 = rng.gen();
                y[ei] = cdf.iter().position(|&c| u < c).unwrap_or(cdf.len() - 1);
            }
            let mut val = z_tree;
            for (ci, rest) in &cycles {
                let s = rest
                    .iter()
                    .fold(0, |acc, &(e, s)| a.add(acc, a.scale(s, y[e])));
                y[*ci] = a.neg(s);
                val *= w[*ci][y[*ci]];
            }
            let d = val - mean;
            mean += d / (i + 1) as f64;
            m2 += d * (val - mean);
        }
        (n, mean, m2)
    };
    let parts: Vec<(u64, f64, f64)> =
        limits.install(|| (0..blocks).into_par_iter().map(run_block).collect());
    // Pooled mean and variance, merged in block order.
    let (mut n, mut mean, mut m2) = (0u64, 0.0, 0.0);
    for (nb, mb, m2b) in parts {
        let tot = n + nb;
        let d = mb - mean;
        mean += d * nb as f64 / tot as f64;
        m2 += m2b + d * d * (n as f64) * (nb as f64) / tot as f64;
        n = tot;
    }
    let sd = if n > 1 {
        (m2 / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    Ok(McEstimate {
        estimate: mean,
        std_error: sd / (n as f64).sqrt(),
        num_samples: n,
        seed,
        tree_used: t,
        declared_scale: Scale::new(1, m.q()),
    })
}

/// Chain `x_0, ..., x_N` with both ends held at 0 and weight `f_i` on
/// `x_i - x_{i-1}`; built as a path with delta fields at the ends.
pub fn fixed_boundary_chain(weights: &[GroupFunction], limits: &Limits) -> Result<PartitionValue> {
    let first = weights
        .first()
        .ok_or_else(|| invalid("chain needs at least one edge"))?;
    let a = first.domain.clone();
    let n = weights.len();
    let vs: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
    let es: Vec<(String, String, String)> = (1..=n)
        .map(|i| (format!("e{i}"), vs[i - 1].clone(), vs[i].clone()))
        .collect();
    let g = OrientedGraph::new(&vs, &es)?;
    let mut field = vec![GroupFunction::constant(a.clone(), 1.0); n + 1];
    field[0] = GroupFunction::delta(a.clone());
    field[n] = GroupFunction::delta(a.clone());
    let m = IsingTypeModel::new(g, a, weights.to_vec())?.with_field(field)?;
    let mut v = partition_exact(&m, limits)?;
    v.method = "fixed-boundary chain".into();
    Ok(v)
}

/// `(2 cosh beta J)^N + (2 sinh beta J)^N`.
pub fn ring_closed_form(n: u32, beta: f64, j: f64) -> f64 {
    (2.0 * (beta * j).cosh()).powi(n as i32) + (2.0 * (beta * j).sinh()).powi(n as i32)
}
