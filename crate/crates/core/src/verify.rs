//! Property suites run by `dualnfg verify`. Each property is checked by
//! enumeration against an independent computation.

use crate::config::Limits;
use crate::error::Result;
use crate::fixtures;
use crate::gcode::GroupCode;
use crate::group::{transform_table, FiniteAbelianGroup};
use crate::ising::{
    fixed_boundary_chain, partition_dual, partition_exact, partition_primal, partition_with_field,
    planar_representations, planar_representations_on_dual, ring_closed_form, FieldMethod,
    IsingTypeModel,
};
use crate::nfg::{odometer_values, EdgeWeightedNfg, NormalFactorGraph, Strategy};
use crate::nr::{analyze, space_realization, Construction, NormalRealization};
use crate::numeric::{mixed_error, Scale};
use crate::topo::{Embedding, OrientedGraph};
use crate::GroupFunction;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Duality,
    Nfgdt,
    Scale,
    Planar,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Duality, Suite::Nfgdt, Suite::Scale, Suite::Planar];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Duality => "duality",
            Suite::Nfgdt => "nfgdt",
            Suite::Scale => "scale",
            Suite::Planar => "planar",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub name: String,
    /// The result the property checks, by name.
    pub anchor: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub properties: Vec<PropertyResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }
}

/// How the suites run. `dualize` is the realization dualization under
/// test, so a faulty one can be plugged in.
#[derive(Clone, Copy)]
pub struct VerifyOptions {
    pub limits: Limits,
    pub seed: u64,
    pub nfgdt_instances: usize,
    pub dualize: fn(&NormalRealization) -> NormalRealization,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            limits: Limits::default(),
            seed: 1,
            nfgdt_instances: 120,
            dualize: NormalRealization::dualize,
        }
    }
}

type Outcome = Result<(bool, String, Option<f64>)>;

fn property(name: &str, anchor: &str, f: impl FnOnce() -> Outcome) -> PropertyResult {
    let (passed, detail, max_error) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}"), None),
    };
    PropertyResult {
        name: name.into(),
        anchor: anchor.into(),
        passed,
        detail,
        max_error,
    }
}

pub fn run(suite: Suite, opts: &VerifyOptions) -> SuiteReport {
    let properties = match suite {
        Suite::Duality => duality(opts),
        Suite::Nfgdt => nfgdt(opts),
        Suite::Scale => scale(opts),
        Suite::Planar => planar(opts),
    };
    SuiteReport { suite, properties }
}

pub fn run_all(suites: &[Suite], opts: &VerifyOptions) -> Vec<SuiteReport> {
    suites.iter().map(|&s| run(s, opts)).collect()
}

fn z(q: u32) -> FiniteAbelianGroup {
    FiniteAbelianGroup::cyclic(q).expect("q >= 2")
}

fn test_graphs(seed: u64, n_random: usize) -> Vec<OrientedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![fixtures::example1()];
    let shapes = [(4, 6), (5, 7), (6, 8), (3, 5), (6, 6), (5, 5), (4, 4)];
    for &(nv, ne) in shapes.iter().cycle().take(n_random) {
        out.push(fixtures::random_connected_graph(&mut rng, nv, ne));
    }
    out
}

fn duality(opts: &VerifyOptions) -> Vec<PropertyResult> {
    let lim = &opts.limits;
    // W01 over Z3 enumerates 3^{|V|+|E|} words for the dual code.
    let graphs: Vec<_> = test_graphs(opts.seed, 7)
        .into_iter()
        .filter(|g| g.num_vertices() + g.num_edges() <= 12)
        .collect();
    let constructions = [Construction::Z0, Construction::B1, Construction::W01];
    let mut out = Vec::new();
    out.push(property(
        "NR-duality",
        "dual normal realization realizes the dual code",
        || {
            let mut checked = 0;
            for g in &graphs {
                for a in [z(2), z(3)] {
                    for which in constructions {
                        let r = space_realization(g, &a, which)?;
                        let s = analyze(&r, lim)?;
                        let d = analyze(&(opts.dualize)(&r), lim)?;
                        if !d.external_behavior.same_set(&s.external_behavior.dual()?)? {
                            return Ok((
                                false,
                                format!(
                                    "{which:?} over {a} on a {}-vertex graph",
                                    g.num_vertices()
                                ),
                                None,
                            ));
                        }
                        checked += 1;
                    }
                }
            }
            Ok((true, format!("{checked} realizations"), None))
        },
    ));
    out.push(property(
        "controllability test",
        "dual unobservable size = |B| |A_E| / |C_V|",
        || {
            let mut checked = 0;
            for g in &graphs {
                for a in [z(2), z(3)] {
                    for which in constructions {
                        let r = space_realization(g, &a, which)?;
                        let s = analyze(&r, lim)?;
                        let d = analyze(&(opts.dualize)(&r), lim)?;
                        if d.unobservable_size != s.controllability_degree() {
                            return Ok((
                                false,
                                format!(
                                    "{which:?} over {a}: {} vs {}",
                                    d.unobservable_size,
                                    s.controllability_degree()
                                ),
                                None,
                            ));
                        }
                        checked += 1;
                    }
                }
            }
            Ok((true, format!("{checked} realizations"), None))
        },
    ));
    out.push(property(
        "cochain spaces",
        "Z0 repetition, B0 zero-sum, Z1 = (B1)^perp, B0 = (Z0)^perp, sizes |A|^{|V|-1} and |A|^{beta1}",
        || {
            for g in &graphs {
                for a in [z(2), z(3)] {
                    let s = g.cochain_spaces(&a, lim.cap)?;
                    let q = a.order() as u128;
                    let (_, b1) = g.betti();
                    let rep = GroupCode::repetition_labeled(a.clone(), g.vertices().to_vec())?;
                    let zs = GroupCode::zero_sum_labeled(a.clone(), g.vertices().to_vec())?;
                    let ok = s.z0.same_set(&rep)?
                        && s.b0.same_set(&zs)?
                        && s.z1.same_set(&s.b1.dual()?)?
                        && s.b0.same_set(&s.z0.dual()?)?
                        && s.b1.size()? == q.pow(g.num_vertices() as u32 - 1)
                        && s.z1.size()? == q.pow(b1 as u32);
                    if !ok {
                        return Ok((false, format!("fails over {a} on a {}-vertex graph", g.num_vertices()), None));
                    }
                }
            }
            Ok((true, format!("{} graphs over Z2 and Z3", graphs.len()), None))
        },
    ));
    out.push(property(
        "realized spaces",
        "normal realizations of Z0, B1, Z1, B0 generate the cochain spaces",
        || {
            for g in &graphs {
                let a = z(3);
                let s = g.cochain_spaces(&a, lim.cap)?;
                for (which, code) in [
                    (Construction::Z0, &s.z0),
                    (Construction::B1, &s.b1),
                    (Construction::Z1, &s.z1),
                    (Construction::B0, &s.b0),
                ] {
                    let r = space_realization(g, &a, which)?;
                    if !analyze(&r, lim)?.external_behavior.same_set(code)? {
                        return Ok((false, format!("{which:?}"), None));
                    }
                }
            }
            Ok((true, "over Z3".into(), None))
        },
    ));
    out.push(property(
        "observability/controllability table",
        "example1 over Z2: unobservable (1,2,1,4), uncontrollable (4,1,2,1) for Z0, B1, Z1, B0",
        || {
            let g = fixtures::example1();
            let mut got = Vec::new();
            for which in [
                Construction::Z0,
                Construction::B1,
                Construction::Z1,
                Construction::B0,
            ] {
                let s = analyze(&space_realization(&g, &z(2), which)?, lim)?;
                got.push((s.unobservable_size, s.controllability_degree()));
            }
            let want = vec![(1, 4), (2, 1), (1, 2), (4, 1)];
            Ok((
                got == want,
                format!("(unobservable, uncontrollable) = {got:?}"),
                None,
            ))
        },
    ));
    out
}

fn nfgdt(opts: &VerifyOptions) -> Vec<PropertyResult> {
    let lim = &opts.limits;
    let mut out = Vec::new();
    out.push(property(
        "NFGDT",
        "dual NFG realizes |A_E| times the Fourier transform",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut worst: f64 = 0.0;
            for _ in 0..opts.nfgdt_instances {
                let g = fixtures::random_nfg(&mut rng);
                let ft = transform_table(&g.half_edge_alphabets(), &g.evaluate_all(lim)?, false);
                let scale = g.internal_size() as f64;
                for (d, p) in g.dual_nfg().evaluate_all(lim)?.iter().zip(&ft) {
                    worst = worst.max(mixed_error(*d, p * scale));
                }
            }
            Ok((
                worst < lim.tolerance,
                format!(
                    "{} random NFGs, max relative error {worst:.3e}",
                    opts.nfgdt_instances
                ),
                Some(worst),
            ))
        },
    ));
    out.push(property(
        "NFG biduality",
        "dualizing twice scales by |A_E|^2 |A_H| and negates the external variables",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed + 1);
            let mut worst: f64 = 0.0;
            for _ in 0..40 {
                let g = fixtures::random_nfg(&mut rng);
                let primal = g.evaluate_all(lim)?;
                let twice = g.dual_nfg().dual_nfg().evaluate_all(lim)?;
                let al = g.half_edge_alphabets();
                let scale = (g.internal_size() as f64).powi(2) * g.external_size() as f64;
                let mut a = vec![0; al.len()];
                for t in &twice {
                    let neg = al
                        .iter()
                        .zip(&a)
                        .fold(0, |acc, (x, &v)| acc * x.order() + x.neg(v));
                    worst = worst.max(mixed_error(*t, primal[neg] * scale));
                    odometer_values(&mut a, &al);
                }
            }
            Ok((
                worst < lim.tolerance,
                format!("40 random NFGs, max error {worst:.3e}"),
                Some(worst),
            ))
        },
    ));
    out.push(property(
        "edge replacement",
        "transform, inverter, transform and a 1/|A| constant leave Z unchanged",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed + 2);
            let mut worst: f64 = 0.0;
            let mut n = 0;
            while n < 40 {
                let g = fixtures::random_nfg(&mut rng);
                if g.edges.is_empty() {
                    continue;
                }
                let r = g.replace_edge_with_transforms(rng.gen_range(0..g.edges.len()))?;
                for (x, y) in g.evaluate_all(lim)?.iter().zip(r.evaluate_all(lim)?) {
                    worst = worst.max(mixed_error(*x, y));
                }
                n += 1;
            }
            Ok((
                worst < lim.tolerance,
                format!("40 random NFGs, max error {worst:.3e}"),
                Some(worst),
            ))
        },
    ));
    out.push(property(
        "realization as NFG",
        "indicator NFG of a realization has partition function |B^u| delta_C",
        || {
            let g = fixtures::example1();
            for which in [
                Construction::Z0,
                Construction::B1,
                Construction::Z1,
                Construction::B0,
            ] {
                let r = space_realization(&g, &z(2), which)?;
                let s = analyze(&r, lim)?;
                let nfg = NormalFactorGraph::from_realization(&r);
                let al = nfg.half_edge_alphabets();
                let mut a = vec![0; al.len()];
                for v in nfg.evaluate_all(lim)? {
                    let want = if s.external_behavior.contains(&a)? {
                        s.unobservable_size as f64
                    } else {
                        0.0
                    };
                    if v != Complex64::new(want, 0.0) {
                        return Ok((false, format!("{which:?} at {a:?}: {v} vs {want}"), None));
                    }
                    odometer_values(&mut a, &al);
                }
            }
            Ok((true, "example1 over Z2, four spaces".into(), None))
        },
    ));
    out.push(property(
        "edge-weighted dual",
        "dual edge-weighted NFG equals |A_E| |A_H| / |C_V| times the primal",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed + 3);
            let mut worst: f64 = 0.0;
            for g in test_graphs(opts.seed + 3, 3) {
                for a in [z(2), z(3)] {
                    for which in [Construction::B1, Construction::W01] {
                        let r = space_realization(&g, &a, which)?;
                        let w = (0..r.half_edges.len())
                            .map(|_| {
                                let v = (0..a.order())
                                    .map(|_| {
                                        Complex64::new(
                                            rng.gen_range(-1.0..1.0),
                                            rng.gen_range(-1.0..1.0),
                                        )
                                    })
                                    .collect();
                                GroupFunction::new(a.clone(), v)
                            })
                            .collect::<Result<Vec<_>>>()?;
                        let e = EdgeWeightedNfg::new(r, w)?;
                        let p = e.evaluate(&Strategy::Behavior, lim)?;
                        let (d, s) = e.dual();
                        let dv = d.evaluate(&Strategy::Behavior, lim)?;
                        worst = worst.max(mixed_error(dv, p * s.to_f64()));
                    }
                }
            }
            Ok((
                worst < lim.tolerance,
                format!("max error {worst:.3e}"),
                Some(worst),
            ))
        },
    ));
    out
}

fn scale(opts: &VerifyOptions) -> Vec<PropertyResult> {
    let lim = &opts.limits;
    let graphs = test_graphs(opts.seed + 10, 5);
    let mut out = Vec::new();
    out.push(property(
        "dual scale law",
        "Z_hat = |A|^{|E|-|V|} Z; both normalize to brute force",
        || {
            let mut worst: f64 = 0.0;
            for g in &graphs {
                for beta in [0.0, 0.3, 1.0] {
                    for m in [
                        IsingTypeModel::ising(g.clone(), beta, 1.0)?,
                        IsingTypeModel::potts(g.clone(), 3, beta, 1.0)?,
                    ] {
                        let exact = partition_exact(&m, lim)?.value;
                        let p = partition_primal(&m, None, lim)?;
                        let d = partition_dual(&m, None, lim)?;
                        let q = m.alphabet.order() as u128;
                        let want = Scale::power(q, g.num_edges() as i64 - g.num_vertices() as i64);
                        if d.declared_scale != want {
                            return Ok((
                                false,
                                format!("declared {} vs {want}", d.declared_scale),
                                None,
                            ));
                        }
                        worst = worst
                            .max(mixed_error(
                                d.value / p.value,
                                Complex64::new(want.to_f64(), 0.0),
                            ))
                            .max(mixed_error(p.normalized(), exact))
                            .max(mixed_error(d.normalized(), exact));
                    }
                }
            }
            Ok((
                worst < lim.tolerance,
                format!(
                    "{} graphs, Ising and Potts, max error {worst:.3e}",
                    graphs.len()
                ),
                Some(worst),
            ))
        },
    ));
    out.push(property(
        "all-ones weights",
        "primal gives |A|^{|V|}, dual gives |A|^{|E|}",
        || {
            for g in &graphs {
                let m = IsingTypeModel::ising(g.clone(), 0.0, 1.0)?;
                let p = partition_primal(&m, None, lim)?.value;
                let d = partition_dual(&m, None, lim)?.value;
                if p != Complex64::new(2f64.powi(g.num_vertices() as i32), 0.0)
                    || d != Complex64::new(2f64.powi(g.num_edges() as i32), 0.0)
                {
                    return Ok((false, format!("primal {p}, dual {d}"), None));
                }
            }
            Ok((true, "exact integers".into(), None))
        },
    ));
    out.push(property(
        "single cycle",
        "ring dual sum matches (2 cosh bJ)^N + (2 sinh bJ)^N; fixed-boundary chain = ring / |A|",
        || {
            let mut worst: f64 = 0.0;
            for n in 3..=10u32 {
                let m = IsingTypeModel::ising(fixtures::cycle_graph(n as usize), 0.45, 1.0)?;
                let d = partition_dual(&m, None, lim)?;
                worst = worst.max(mixed_error(
                    d.normalized(),
                    Complex64::new(ring_closed_form(n, 0.45, 1.0), 0.0),
                ));
                let ring = partition_exact(&m, lim)?.value;
                let chain = fixed_boundary_chain(&m.edge_weights, lim)?.value;
                worst = worst.max(mixed_error(chain, ring / 2.0));
            }
            Ok((
                worst < lim.tolerance,
                format!("N = 3..10, max error {worst:.3e}"),
                Some(worst),
            ))
        },
    ));
    out.push(property(
        "external field",
        "W01 primal, W10 dual and hybrid normalize to brute force; information sets |V|, |E|, 1+beta1",
        || {
            let g = fixtures::example1();
            let a = z(2);
            let field = (0..5)
                .map(|v| {
                    let h = 0.2 * (1.0 + 0.5 * v as f64);
                    GroupFunction::from_real(a.clone(), &[h.exp(), (-h).exp()])
                })
                .collect::<Result<Vec<_>>>()?;
            let m = IsingTypeModel::ising(g, 0.4, 1.0)?.with_field(field)?;
            let exact = partition_exact(&m, lim)?.value;
            let mut worst: f64 = 0.0;
            let mut sizes = Vec::new();
            for method in [FieldMethod::PrimalW01, FieldMethod::DualW10, FieldMethod::Hybrid] {
                let v = partition_with_field(&m, method, None, lim)?;
                worst = worst.max(mixed_error(v.normalized(), exact));
                sizes.push(v.info_set_size.unwrap_or(0));
            }
            Ok((
                worst < lim.tolerance && sizes == [5, 6, 3],
                format!("information sets {sizes:?}, max error {worst:.3e}"),
                Some(worst),
            ))
        },
    ));
    out
}

fn planar(opts: &VerifyOptions) -> Vec<PropertyResult> {
    let lim = &opts.limits;
    let mut out = Vec::new();
    out.push(property(
        "dual graph",
        "dual graph connection matrix is the transposed second connection matrix",
        || {
            for k in [
                fixtures::example1_complex(Embedding::Sphere, false),
                fixtures::cycle_complex(3),
            ] {
                let d = k.dual_graph()?;
                let m2 = k.second_connection_matrix();
                let md = d.graph().connection_matrix();
                let ok = (0..md.len()).all(|e| (0..md[e].len()).all(|f| md[e][f] == m2[f][e]));
                if !ok {
                    return Ok((false, "mismatch".into(), None));
                }
            }
            let d = fixtures::example1_complex(Embedding::Sphere, false).dual_graph()?;
            let (b0, b1) = d.graph().betti();
            Ok((
                d.graph().num_vertices() == 3 && b0 == 1 && b1 == 4,
                format!(
                    "example1 dual: {} vertices, beta1 = {b1}",
                    d.graph().num_vertices()
                ),
                None,
            ))
        },
    ));
    out.push(property(
        "sphere homology",
        "H0, H1, H2 of a sphere complex have dimensions 1, 0, 1",
        || {
            let k = fixtures::example1_complex(Embedding::Sphere, true);
            let h = k.homology_dimensions(&z(2), lim.cap)?;
            Ok((h == (1, 0, 1), format!("{h:?}"), None))
        },
    ));
    out.push(property(
        "four-way representations",
        "cut/cycle spaces on G and on the dual graph, with f and f_hat, all normalize to Z",
        || {
            let mut worst: f64 = 0.0;
            let mut ks = vec![
                fixtures::example1_complex(Embedding::Sphere, false),
                fixtures::example1_complex(Embedding::Sphere, true),
            ];
            ks.extend((3..=6).map(fixtures::cycle_complex));
            for k in &ks {
                for m in [
                    IsingTypeModel::ising(k.graph().clone(), 0.3, 1.0)?,
                    IsingTypeModel::potts(k.graph().clone(), 3, 0.7, 1.0)?,
                ] {
                    let exact = partition_exact(&m, lim)?.value;
                    for v in planar_representations(&m, k, lim)? {
                        worst = worst.max(mixed_error(v.normalized(), exact));
                    }
                    let (md, vals) = planar_representations_on_dual(&m, k, lim)?;
                    let exact_d = partition_exact(&md, lim)?.value;
                    for v in vals {
                        worst = worst.max(mixed_error(v.normalized(), exact_d));
                    }
                }
            }
            Ok((
                worst < lim.tolerance,
                format!(
                    "{} complexes, Z(G) and Z(dual), max error {worst:.3e}",
                    ks.len()
                ),
                Some(worst),
            ))
        },
    ));
    out.push(property(
        "four-way dimensions",
        "information sets |E| - beta1 for the f representations and beta1 for the f_hat ones",
        || {
            let k = fixtures::example1_complex(Embedding::Sphere, false);
            let m = IsingTypeModel::ising(k.graph().clone(), 0.3, 1.0)?;
            let sizes: Vec<usize> = planar_representations(&m, &k, lim)?
                .iter()
                .map(|v| v.info_set_size.unwrap_or(0))
                .collect();
            Ok((sizes == [4, 4, 2, 2], format!("{sizes:?}"), None))
        },
    ));
    out
}
