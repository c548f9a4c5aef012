use dualnfg_core::fixtures;
use dualnfg_core::ising::{
    fixed_boundary_chain, importance_sampling, partition_dual, partition_exact, partition_primal,
    partition_with_field, planar_representations, planar_representations_on_dual, ring_closed_form,
};
use dualnfg_core::numeric::close;
use dualnfg_core::{
    Embedding, FieldMethod, FiniteAbelianGroup, GroupFunction, IsingTypeModel, Limits,
    OrientedGraph, Scale,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

fn graphs() -> Vec<OrientedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut out = vec![fixtures::example1()];
    for (nv, ne) in [(4, 6), (5, 7), (6, 8), (3, 5), (6, 6)] {
        out.push(fixtures::random_connected_graph(&mut rng, nv, ne));
    }
    out
}

fn random_weights(rng: &mut ChaCha8Rng, a: &FiniteAbelianGroup, n: usize) -> Vec<GroupFunction> {
    (0..n)
        .map(|_| {
            let v: Vec<f64> = (0..a.order()).map(|_| rng.gen_range(0.1..2.0)).collect();
            GroupFunction::from_real(a.clone(), &v).unwrap()
        })
        .collect()
}

#[test]
fn primal_and_dual_reconcile_with_brute_force() {
    let lim = Limits::default();
    for g in graphs() {
        for beta in [0.0, 0.3, 1.0] {
            for m in [
                IsingTypeModel::ising(g.clone(), beta, 1.0).unwrap(),
                IsingTypeModel::potts(g.clone(), 3, beta, 1.0).unwrap(),
            ] {
                let exact = partition_exact(&m, &lim).unwrap();
                let p = partition_primal(&m, None, &lim).unwrap();
                let d = partition_dual(&m, None, &lim).unwrap();
                let q = m.alphabet.order() as u128;
                let ev = g.num_edges() as i64 - g.num_vertices() as i64;
                assert_eq!(d.declared_scale, Scale::power(q, ev));
                assert!(close(p.normalized(), exact.value, TOL));
                assert!(close(d.normalized(), exact.value, TOL));
                assert!(close(
                    d.value / p.value,
                    Complex64::new(Scale::power(q, ev).to_f64(), 0.0),
                    TOL
                ));
            }
        }
    }
}

#[test]
fn random_weights_over_other_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let lim = Limits::default();
    for a in ["Z4", "Z2xZ2", "Z5"] {
        let a: FiniteAbelianGroup = a.parse().unwrap();
        let g = fixtures::random_connected_graph(&mut rng, 4, 5);
        let w = random_weights(&mut rng, &a, g.num_edges());
        let m = IsingTypeModel::new(g, a, w).unwrap();
        let exact = partition_exact(&m, &lim).unwrap().value;
        assert!(close(
            partition_primal(&m, None, &lim).unwrap().normalized(),
            exact,
            TOL
        ));
        assert!(close(
            partition_dual(&m, None, &lim).unwrap().normalized(),
            exact,
            TOL
        ));
    }
}

#[test]
fn all_ones_weights() {
    let lim = Limits::default();
    for g in graphs() {
        let m = IsingTypeModel::ising(g.clone(), 0.0, 1.0).unwrap();
        let p = partition_primal(&m, None, &lim).unwrap();
        let d = partition_dual(&m, None, &lim).unwrap();
        assert_eq!(
            p.value,
            Complex64::new(2f64.powi(g.num_vertices() as i32), 0.0)
        );
        assert_eq!(
            d.value,
            Complex64::new(2f64.powi(g.num_edges() as i32), 0.0)
        );
    }
}

#[test]
fn strict_constraint_edges() {
    // A delta weight in the primal is a constant weight in the dual and vice versa.
    let lim = Limits::default();
    let g = fixtures::example1();
    let a = FiniteAbelianGroup::cyclic(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut w = random_weights(&mut rng, &a, 6);
    w[2] = GroupFunction::delta(a.clone());
    w[4] = GroupFunction::constant(a.clone(), 1.0);
    let m = IsingTypeModel::new(g, a, w).unwrap();
    let exact = partition_exact(&m, &lim).unwrap().value;
    assert!(close(
        partition_primal(&m, None, &lim).unwrap().normalized(),
        exact,
        TOL
    ));
    assert!(close(
        partition_dual(&m, None, &lim).unwrap().normalized(),
        exact,
        TOL
    ));
}

#[test]
fn single_cycle_closed_form_and_chain() {
    let lim = Limits::default();
    for n in 3..=10u32 {
        let (beta, j) = (0.45, 0.8);
        let m = IsingTypeModel::ising(fixtures::cycle_graph(n as usize), beta, j).unwrap();
        let d = partition_dual(&m, None, &lim).unwrap();
        assert_eq!(d.info_set_size, Some(1));
        let closed = ring_closed_form(n, beta, j);
        assert!(close(d.normalized(), Complex64::new(closed, 0.0), TOL));
    }
    for q in [2, 3] {
        for n in 3..=8 {
            let m = IsingTypeModel::potts(fixtures::cycle_graph(n), q, 0.6, 1.0).unwrap();
            let ring = partition_exact(&m, &lim).unwrap().value;
            let chain = fixed_boundary_chain(&m.edge_weights, &lim).unwrap().value;
            assert!(close(chain, ring / q as f64, TOL));
        }
    }
}

#[test]
fn tree_graph_dual_has_one_term() {
    let lim = Limits::default();
    let m = IsingTypeModel::ising(fixtures::path_graph(5), 0.7, 1.0).unwrap();
    let d = partition_dual(&m, None, &lim).unwrap();
    assert_eq!(d.info_set_size, Some(0));
    assert!(close(
        d.normalized(),
        partition_exact(&m, &lim).unwrap().value,
        TOL
    ));
}

fn field(a: &FiniteAbelianGroup, n: usize, h: f64) -> Vec<GroupFunction> {
    (0..n)
        .map(|v| {
            let s = h * (1.0 + 0.3 * v as f64);
            GroupFunction::from_real(a.clone(), &[s.exp(), (-s).exp()]).unwrap()
        })
        .collect()
}

#[test]
fn field_methods_reconcile() {
    let lim = Limits::default();
    for g in graphs() {
        let a = FiniteAbelianGroup::cyclic(2).unwrap();
        let n = g.num_vertices();
        let m = IsingTypeModel::ising(g.clone(), 0.4, 1.0)
            .unwrap()
            .with_field(field(&a, n, 0.2))
            .unwrap();
        let exact = partition_exact(&m, &lim).unwrap().value;
        let b1 = g.num_edges() - g.num_vertices() + 1;
        for (method, size) in [
            (FieldMethod::PrimalW01, g.num_vertices()),
            (FieldMethod::DualW10, g.num_edges()),
            (FieldMethod::Hybrid, 1 + b1),
        ] {
            let v = partition_with_field(&m, method, None, &lim).unwrap();
            assert!(close(v.normalized(), exact, TOL), "{method:?}");
            assert_eq!(v.info_set_size, Some(size));
        }
    }
}

#[test]
fn field_methods_over_z3_with_complex_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let lim = Limits::default();
    let a = FiniteAbelianGroup::cyclic(3).unwrap();
    let g = fixtures::random_connected_graph(&mut rng, 4, 6);
    let cplx = |rng: &mut ChaCha8Rng| {
        let v = (0..3)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        GroupFunction::new(a.clone(), v).unwrap()
    };
    let w = (0..g.num_edges()).map(|_| cplx(&mut rng)).collect();
    let f = (0..g.num_vertices()).map(|_| cplx(&mut rng)).collect();
    let m = IsingTypeModel::new(g, a.clone(), w)
        .unwrap()
        .with_field(f)
        .unwrap();
    let exact = partition_exact(&m, &lim).unwrap().value;
    for method in [
        FieldMethod::PrimalW01,
        FieldMethod::DualW10,
        FieldMethod::Hybrid,
    ] {
        let v = partition_with_field(&m, method, None, &lim).unwrap();
        assert!(close(v.normalized(), exact, TOL), "{method:?}");
    }
}

#[test]
fn constant_field_reduces_to_no_field() {
    let lim = Limits::default();
    let g = fixtures::example1();
    let m = IsingTypeModel::ising(g, 0.5, 1.0).unwrap();
    let z = partition_exact(&m, &lim).unwrap().value;
    let ones = vec![GroupFunction::constant(m.alphabet.clone(), 1.0); 5];
    let mf = m.with_field(ones).unwrap();
    for method in [
        FieldMethod::PrimalW01,
        FieldMethod::DualW10,
        FieldMethod::Hybrid,
    ] {
        assert!(close(
            partition_with_field(&mf, method, None, &lim)
                .unwrap()
                .normalized(),
            z,
            TOL
        ));
    }
}

#[test]
fn planar_four_way() {
    let lim = Limits::default();
    let mut complexes = vec![
        fixtures::example1_complex(Embedding::Sphere, false),
        fixtures::example1_complex(Embedding::Sphere, true),
    ];
    for n in 3..=6 {
        complexes.push(fixtures::cycle_complex(n));
    }
    for k in complexes {
        for m in [
            IsingTypeModel::ising(k.graph().clone(), 0.3, 1.0).unwrap(),
            IsingTypeModel::potts(k.graph().clone(), 3, 0.7, 1.0).unwrap(),
        ] {
            let exact = partition_exact(&m, &lim).unwrap().value;
            for v in planar_representations(&m, &k, &lim).unwrap() {
                assert!(close(v.normalized(), exact, TOL), "{}", v.method);
            }
            let (md, vals) = planar_representations_on_dual(&m, &k, &lim).unwrap();
            let exact_dual = partition_exact(&md, &lim).unwrap().value;
            for v in vals {
                assert!(
                    close(v.normalized(), exact_dual, TOL),
                    "dual graph: {}",
                    v.method
                );
            }
        }
    }
}

#[test]
fn planar_information_set_sizes() {
    let lim = Limits::default();
    let k = fixtures::example1_complex(Embedding::Sphere, false);
    let m = IsingTypeModel::ising(k.graph().clone(), 0.3, 1.0).unwrap();
    let sizes: Vec<Option<usize>> = planar_representations(&m, &k, &lim)
        .unwrap()
        .iter()
        .map(|v| v.info_set_size)
        .collect();
    assert_eq!(sizes, vec![Some(4), Some(4), Some(2), Some(2)]);
    let plane = fixtures::example1_complex(Embedding::Plane, false);
    assert!(planar_representations(&m, &plane, &lim).is_err());
}

#[test]
fn uniform_weights_give_zero_variance_samples() {
    let m = IsingTypeModel::ising(fixtures::example1(), 0.0, 1.0).unwrap();
    let est = importance_sampling(&m, None, 1000, 9, &Limits::default()).unwrap();
    assert_eq!(est.estimate, 16.0);
    assert_eq!(est.std_error, 0.0);
    assert_eq!(est.normalized(), 32.0);
}

#[test]
fn sampling_is_deterministic_across_thread_counts() {
    let m = IsingTypeModel::ising(fixtures::example1(), 0.4, 1.0).unwrap();
    let one = Limits {
        threads: 1,
        ..Limits::default()
    };
    let four = Limits {
        threads: 4,
        ..Limits::default()
    };
    let a = importance_sampling(&m, None, 20_000, 42, &one).unwrap();
    let b = importance_sampling(&m, None, 20_000, 42, &four).unwrap();
    assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
    assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
    let c = importance_sampling(&m, None, 20_000, 43, &one).unwrap();
    assert_ne!(a.estimate, c.estimate);
}

#[test]
fn sampling_estimate_is_near_exact() {
    let lim = Limits::default();
    let m = IsingTypeModel::ising(fixtures::example1(), 0.4, 1.0).unwrap();
    let exact = partition_exact(&m, &lim).unwrap().value.re;
    let tree = fixtures::example1()
        .tree_from_labels(&["e1", "e2", "e4", "e6"])
        .unwrap();
    let est = importance_sampling(&m, Some(&tree), 50_000, 5, &lim).unwrap();
    assert!((est.normalized() - exact).abs() < 4.0 * est.normalized_std_error());
}
