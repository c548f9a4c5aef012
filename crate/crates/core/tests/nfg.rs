use dualnfg_core::fixtures;
use dualnfg_core::group::transform_table;
use dualnfg_core::nfg::{odometer_values, Strategy};
use dualnfg_core::nr::{io_information_set, make_io_realization, space_realization};
use dualnfg_core::numeric::{close, mixed_error};
use dualnfg_core::{
    analyze, Construction, EdgeWeightedNfg, FiniteAbelianGroup, GroupFunction, IoKind, Limits,
    NormalFactorGraph, Scale,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn z(q: u32) -> FiniteAbelianGroup {
    FiniteAbelianGroup::cyclic(q).unwrap()
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn dual_nfg_realizes_scaled_transform() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let lim = Limits::default();
    let mut worst: f64 = 0.0;
    for _ in 0..150 {
        let g = fixtures::random_nfg(&mut rng);
        let primal = g.evaluate_all(&lim).unwrap();
        let ft = transform_table(&g.half_edge_alphabets(), &primal, false);
        let dual = g.dual_nfg().evaluate_all(&lim).unwrap();
        let scale = g.internal_size() as f64;
        for (d, p) in dual.iter().zip(&ft) {
            worst = worst.max(mixed_error(*d, p * scale));
        }
    }
    assert!(worst < 1e-9, "max error {worst}");
}

#[test]
fn three_node_example() {
    // Chain f0 - f1 - f2 over Z2 with a half-edge at each end.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut g = NormalFactorGraph::new();
    let mut rand_table = |n: usize| -> Vec<Complex64> {
        (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect()
    };
    let a = g.add_node("f0", rand_table(4));
    let b = g.add_node("f1", rand_table(4));
    let d = g.add_node("f2", rand_table(4));
    g.add_half_edge(a, "x", z(2));
    g.connect(a, b, z(2), false);
    g.connect(b, d, z(2), false);
    g.add_half_edge(d, "y", z(2));
    let lim = Limits::default();
    let ft = transform_table(
        &g.half_edge_alphabets(),
        &g.evaluate_all(&lim).unwrap(),
        false,
    );
    for (x, y) in g.dual_nfg().evaluate_all(&lim).unwrap().iter().zip(&ft) {
        assert!(close(*x, y * 4.0, 1e-9));
    }
}

#[test]
fn biduality_scales_by_state_space_squared_and_negates() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let lim = Limits::default();
    for _ in 0..40 {
        let g = fixtures::random_nfg(&mut rng);
        let primal = g.evaluate_all(&lim).unwrap();
        let twice = g.dual_nfg().dual_nfg().evaluate_all(&lim).unwrap();
        let alphabets = g.half_edge_alphabets();
        let scale = (g.internal_size() as f64).powi(2) * g.external_size() as f64;
        let mut a = vec![0; alphabets.len()];
        let mut k = 0;
        loop {
            // Index of -a in canonical order.
            let neg = alphabets
                .iter()
                .zip(&a)
                .fold(0, |acc, (al, &x)| acc * al.order() + al.neg(x));
            assert!(close(twice[k], primal[neg] * scale, 1e-9));
            k += 1;
            if !odometer_values(&mut a, &alphabets) {
                break;
            }
        }
    }
}

#[test]
fn edge_replacement_leaves_partition_function_unchanged() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let lim = Limits::default();
    let mut tested = 0;
    while tested < 40 {
        let g = fixtures::random_nfg(&mut rng);
        if g.edges.is_empty() {
            continue;
        }
        let e = rng.gen_range(0..g.edges.len());
        let r = g.replace_edge_with_transforms(e).unwrap();
        for (x, y) in g
            .evaluate_all(&lim)
            .unwrap()
            .iter()
            .zip(r.evaluate_all(&lim).unwrap())
        {
            assert!(close(*x, y, 1e-9));
        }
        tested += 1;
    }
}

#[test]
fn realization_as_nfg_is_scaled_indicator() {
    let g = fixtures::example1();
    let lim = Limits::default();
    for which in [
        Construction::Z0,
        Construction::B1,
        Construction::Z1,
        Construction::B0,
    ] {
        let r = space_realization(&g, &z(2), which).unwrap();
        let s = analyze(&r, &lim).unwrap();
        let nfg = NormalFactorGraph::from_realization(&r);
        let values = nfg.evaluate_all(&lim).unwrap();
        let mut a = vec![0; r.half_edges.len()];
        let alphabets = nfg.half_edge_alphabets();
        for v in values {
            let expect = if s.external_behavior.contains(&a).unwrap() {
                s.unobservable_size as f64
            } else {
                0.0
            };
            assert_eq!(v, c(expect), "{which:?}");
            odometer_values(&mut a, &alphabets);
        }
    }
}

fn ising(g: &dualnfg_core::OrientedGraph, beta: f64) -> Vec<GroupFunction> {
    let w = GroupFunction::from_real(z(2), &[beta.exp(), (-beta).exp()]).unwrap();
    vec![w; g.num_edges()]
}

#[test]
fn all_ones_weights_count_vertex_configurations() {
    let g = fixtures::example1();
    let t = g.tree_from_labels(&["e1", "e2", "e4", "e6"]).unwrap();
    let lim = Limits::default();
    let b1 = space_realization(&g, &z(2), Construction::B1).unwrap();
    let ones = ising(&g, 0.0);
    let e = EdgeWeightedNfg::new(b1.clone(), ones.clone()).unwrap();
    for s in [Strategy::FullEnumeration, Strategy::Behavior] {
        assert_eq!(e.evaluate(&s, &lim).unwrap(), c(32.0));
    }
    let io = make_io_realization(&b1, IoKind::B1, &t, "v1").unwrap();
    let eio = EdgeWeightedNfg::new(io, ones).unwrap();
    let info = io_information_set(&g, IoKind::B1, &t, "v1");
    assert_eq!(
        eio.evaluate(&Strategy::InformationSet(info), &lim).unwrap(),
        c(16.0)
    );
    let (d, scale) = e.dual();
    assert_eq!(scale, Scale::integer(2));
    assert_eq!(
        d.evaluate(&Strategy::FullEnumeration, &lim).unwrap(),
        c(64.0)
    );
}

#[test]
fn strategies_agree_and_dual_scale_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let lim = Limits::with_cap(1 << 22);
    let mut graphs = vec![fixtures::example1()];
    for (nv, ne) in [(4, 6), (5, 7), (3, 4)] {
        graphs.push(fixtures::random_connected_graph(&mut rng, nv, ne));
    }
    for g in graphs {
        let t = g.spanning_tree().unwrap();
        let b1 = space_realization(&g, &z(2), Construction::B1).unwrap();
        let e = EdgeWeightedNfg::new(b1, ising(&g, 0.4)).unwrap();
        let full = e.evaluate(&Strategy::FullEnumeration, &lim).unwrap();
        let beh = e.evaluate(&Strategy::Behavior, &lim).unwrap();
        let info = e
            .evaluate(&Strategy::InformationSet(t.tree_labels.clone()), &lim)
            .unwrap();
        assert!(close(full, beh, 1e-9) && close(full, info, 1e-9));
        let (d, scale) = e.dual();
        let expect = Scale::power(2, g.num_edges() as i64 - g.num_vertices() as i64);
        assert_eq!(scale, expect);
        let cotree = t.cotree_labels.clone();
        let dual = d.evaluate(&Strategy::InformationSet(cotree), &lim).unwrap();
        assert!(close(dual, full * scale.to_f64(), 1e-9));
        let dual_full = d.evaluate(&Strategy::FullEnumeration, &lim).unwrap();
        assert!(close(dual_full, dual, 1e-9));
    }
}

#[test]
fn complex_weights_over_z3() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let g = fixtures::random_connected_graph(&mut rng, 3, 4);
    let lim = Limits::default();
    let b1 = space_realization(&g, &z(3), Construction::B1).unwrap();
    let weights = (0..g.num_edges())
        .map(|_| {
            let v = (0..3)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            GroupFunction::new(z(3), v).unwrap()
        })
        .collect();
    let e = EdgeWeightedNfg::new(b1, weights).unwrap();
    let z_ = e.evaluate(&Strategy::FullEnumeration, &lim).unwrap();
    let (d, scale) = e.dual();
    let zd = d.evaluate(&Strategy::Behavior, &lim).unwrap();
    assert!(close(zd, z_ * scale.to_f64(), 1e-9));
}

#[test]
fn nfg_json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let g = fixtures::random_nfg(&mut rng);
    let s = serde_json::to_string(&g).unwrap();
    let back: NormalFactorGraph = serde_json::from_str(&s).unwrap();
    assert_eq!(back, g);
}

#[test]
fn cap_is_enforced_on_internal_configurations() {
    let g = fixtures::example1();
    let b1 = space_realization(&g, &z(2), Construction::B1).unwrap();
    let e = EdgeWeightedNfg::new(b1, ising(&g, 0.1)).unwrap();
    let err = e
        .evaluate(&Strategy::FullEnumeration, &Limits::with_cap(1000))
        .unwrap_err();
    assert!(matches!(err, dualnfg_core::Error::CapExceeded { .. }));
}
