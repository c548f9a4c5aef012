//! Reference graphs and complexes used by tests, the verification suites
//! and the CLI.

use crate::group::FiniteAbelianGroup;
use crate::nfg::NormalFactorGraph;
use crate::topo::{Embedding, OrientedGraph, PlanarComplex};
use num_complex::Complex64;
use rand::Rng;

/// Five vertices, six edges, two independent cycles.
pub fn example1() -> OrientedGraph {
    OrientedGraph::new(
        &["v1", "v2", "v3", "v4", "v5"],
        &[
            ("e1", "v1", "v2"),
            ("e2", "v2", "v3"),
            ("e3", "v1", "v5"),
            ("e4", "v2", "v4"),
            ("e5", "v3", "v4"),
            ("e6", "v4", "v5"),
        ],
    )
    .expect("fixture is valid")
}

/// `example1` with `e5` running `v4 -> v3`.
pub fn example1_e5_reversed() -> OrientedGraph {
    example1().with_reversed_edge("e5").expect("e5 exists")
}

fn faces(spec: &[(&str, &[(&str, i8)])]) -> Vec<(String, Vec<(String, i8)>)> {
    spec.iter()
        .map(|(f, b)| {
            (
                f.to_string(),
                b.iter().map(|(e, s)| (e.to_string(), *s)).collect(),
            )
        })
        .collect()
}

/// `example1` with its two bounded faces (clockwise) and, on a sphere, the outer face `f3`.
/// `e5_reversed` selects the orientation of `e5`.
pub fn example1_complex(embedding: Embedding, e5_reversed: bool) -> PlanarComplex {
    let s5: i8 = if e5_reversed { -1 } else { 1 };
    let mut spec: Vec<(&str, Vec<(&str, i8)>)> = vec![
        ("f1", vec![("e1", 1), ("e3", -1), ("e4", 1), ("e6", 1)]),
        ("f2", vec![("e2", 1), ("e4", -1), ("e5", s5)]),
    ];
    if embedding == Embedding::Sphere {
        spec.push((
            "f3",
            vec![("e1", -1), ("e2", -1), ("e3", 1), ("e5", -s5), ("e6", -1)],
        ));
    }
    let spec: Vec<(&str, &[(&str, i8)])> = spec.iter().map(|(f, b)| (*f, b.as_slice())).collect();
    let g = if e5_reversed {
        example1_e5_reversed()
    } else {
        example1()
    };
    PlanarComplex::new(g, &faces(&spec), embedding).expect("fixture is valid")
}

/// Ring `v1 -> v2 -> ... -> vN -> v1` with edges `e1..eN`.
pub fn cycle_graph(n: usize) -> OrientedGraph {
    let vs: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let es: Vec<(String, String, String)> = (1..=n)
        .map(|i| (format!("e{i}"), format!("v{i}"), format!("v{}", i % n + 1)))
        .collect();
    OrientedGraph::new(&vs, &es).expect("ring is valid")
}

/// The ring on a sphere with inner face `fin` and outer face `fout`.
pub fn cycle_complex(n: usize) -> PlanarComplex {
    let inner: Vec<(String, i8)> = (1..=n).map(|i| (format!("e{i}"), 1)).collect();
    let outer = inner.iter().map(|(e, s)| (e.clone(), -s)).collect();
    PlanarComplex::new(
        cycle_graph(n),
        &[("fin".into(), inner), ("fout".into(), outer)],
        Embedding::Sphere,
    )
    .expect("ring complex is valid")
}

/// Path `v1 -> v2 -> ... -> vN`.
pub fn path_graph(n: usize) -> OrientedGraph {
    let vs: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let es: Vec<(String, String, String)> = (1..n)
        .map(|i| (format!("e{i}"), format!("v{i}"), format!("v{}", i + 1)))
        .collect();
    OrientedGraph::new(&vs, &es).expect("path is valid")
}

/// Connected graph with `nv` vertices and `ne >= nv - 1` edges: a random
/// tree plus random extra edges (multi-edges possible), random orientations.
pub fn random_connected_graph<R: Rng>(rng: &mut R, nv: usize, ne: usize) -> OrientedGraph {
    assert!(nv >= 2 && ne + 1 >= nv);
    let vs: Vec<String> = (1..=nv).map(|i| format!("v{i}")).collect();
    let mut pairs = Vec::new();
    for i in 1..nv {
        pairs.push((i, rng.gen_range(0..i)));
    }
    while pairs.len() < ne {
        let a = rng.gen_range(0..nv);
        let b = rng.gen_range(0..nv - 1);
        let b = if b >= a { b + 1 } else { b };
        pairs.push((a, b));
    }
    let es: Vec<(String, String, String)> = pairs
        .into_iter()
        .enumerate()
        .map(|(k, (a, b))| {
            let (t, h) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
            (format!("e{}", k + 1), vs[t].clone(), vs[h].clone())
        })
        .collect();
    OrientedGraph::new(&vs, &es).expect("random graph is valid")
}

/// Small NFG with random complex tables: 1..=4 nodes, up to 4 internal
/// edges and 2 half-edges, each variable over Z2, Z3, Z4 or Z2xZ2.
pub fn random_nfg<R: Rng>(rng: &mut R) -> NormalFactorGraph {
    let groups = ["Z2", "Z3", "Z4", "Z2xZ2"];
    let pick = |rng: &mut R| -> FiniteAbelianGroup {
        groups[rng.gen_range(0..groups.len())]
            .parse()
            .expect("valid group")
    };
    let mut g = NormalFactorGraph::new();
    let nn = rng.gen_range(1..=4);
    for i in 0..nn {
        g.add_node(format!("f{i}"), Vec::new());
    }
    let ne = if nn > 1 { rng.gen_range(0..=4) } else { 0 };
    for _ in 0..ne {
        let a = rng.gen_range(0..nn);
        let b = (a + rng.gen_range(1..nn)) % nn;
        let alphabet = pick(rng);
        let inverting = rng.gen_bool(0.5);
        g.connect(a, b, alphabet, inverting);
    }
    for k in 0..rng.gen_range(0..=2) {
        let n = rng.gen_range(0..nn);
        let alphabet = pick(rng);
        g.add_half_edge(n, format!("a{k}"), alphabet);
    }
    for n in 0..nn {
        let size: usize = g.node_alphabets(n).iter().map(|a| a.order()).product();
        g.nodes[n].table = (0..size)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
    }
    g
}
