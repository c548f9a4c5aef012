use dualnfg_core::fixtures;
use dualnfg_core::gcode::GroupCode;
use dualnfg_core::nr::{
    analyze, build_w01, build_w01_io, controllability_test, io_information_set,
    make_io_realization, space_realization, Construction, IoKind,
};
use dualnfg_core::{FiniteAbelianGroup, Limits, OrientedGraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn z(q: u32) -> FiniteAbelianGroup {
    FiniteAbelianGroup::cyclic(q).unwrap()
}

fn reference_tree(g: &OrientedGraph) -> dualnfg_core::SpanningTree {
    g.tree_from_labels(&["e1", "e2", "e4", "e6"]).unwrap()
}

fn graphs() -> Vec<OrientedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut out = vec![fixtures::example1(), fixtures::cycle_graph(4)];
    for (nv, ne) in [(4, 6), (5, 7), (6, 9), (3, 5), (6, 6)] {
        out.push(fixtures::random_connected_graph(&mut rng, nv, ne));
    }
    out
}

#[test]
fn realized_spaces_equal_matrix_spaces() {
    let lim = Limits::default();
    for g in graphs() {
        for a in [z(2), z(3)] {
            let oracle = g.cochain_spaces(&a, lim.cap).unwrap();
            for (which, code) in [
                (Construction::Z0, &oracle.z0),
                (Construction::B1, &oracle.b1),
                (Construction::Z1, &oracle.z1),
                (Construction::B0, &oracle.b0),
            ] {
                let r = space_realization(&g, &a, which).unwrap();
                let s = analyze(&r, &lim).unwrap();
                assert!(
                    s.external_behavior.same_set(code).unwrap(),
                    "{which:?} over {a}"
                );
            }
            let rep = GroupCode::repetition_labeled(a.clone(), g.vertices().to_vec()).unwrap();
            let zs = GroupCode::zero_sum_labeled(a.clone(), g.vertices().to_vec()).unwrap();
            assert!(oracle.z0.same_set(&rep).unwrap());
            assert!(oracle.b0.same_set(&zs).unwrap());
        }
    }
}

#[test]
fn w01_external_behavior_is_graph_of_m() {
    let g = fixtures::example1();
    let a = z(3);
    let r = build_w01(&g, &a).unwrap();
    let s = analyze(&r, &Limits::default()).unwrap();
    assert_eq!(s.external_behavior.size().unwrap(), 243);
    let m = g.connection_matrix();
    for w in s.external_behavior.words().unwrap() {
        let (x, y) = w.split_at(5);
        assert_eq!(dualnfg_core::gcode::apply_matrix(&a, &m, x), y);
    }
    assert!(s.is_observable());
    assert!(s.is_controllable());
}

#[test]
fn observability_controllability_table() {
    let g = fixtures::example1();
    let lim = Limits::default();
    let expect = [
        (Construction::Z0, 1, 4),
        (Construction::B1, 2, 1),
        (Construction::Z1, 1, 2),
        (Construction::B0, 4, 1),
    ];
    for (which, unobs, uncontrol) in expect {
        let r = space_realization(&g, &z(2), which).unwrap();
        let s = analyze(&r, &lim).unwrap();
        assert_eq!(s.unobservable_size, unobs, "{which:?}");
        assert_eq!(s.controllability_degree(), uncontrol, "{which:?}");
    }
}

#[test]
fn dualization_gives_dual_code_and_swaps_defects() {
    let lim = Limits::default();
    for g in graphs().into_iter().take(4) {
        for a in [z(2), z(3), "Z2xZ2".parse().unwrap()] {
            for which in [Construction::Z0, Construction::B1, Construction::W01] {
                let r = space_realization(&g, &a, which).unwrap();
                let Ok(s) = analyze(&r, &lim) else { continue };
                let d = analyze(&r.dualize(), &lim).unwrap();
                let Ok(dual) = s.external_behavior.dual() else {
                    continue;
                };
                assert!(d.external_behavior.same_set(&dual).unwrap());
                assert_eq!(d.unobservable_size, s.controllability_degree());
                assert_eq!(s.unobservable_size, d.controllability_degree());
            }
        }
    }
}

#[test]
fn io_realizations_are_observable_and_controllable() {
    let g = fixtures::example1();
    let t = reference_tree(&g);
    let lim = Limits::default();
    for a in [z(2), z(3)] {
        for (src, kind) in [
            (Construction::Z0, IoKind::Z0),
            (Construction::B1, IoKind::B1),
            (Construction::Z1, IoKind::Z1),
            (Construction::B0, IoKind::B0),
        ] {
            let r = space_realization(&g, &a, src).unwrap();
            let io = make_io_realization(&r, kind, &t, "v1").unwrap();
            io.validate().unwrap();
            let s = analyze(&r, &lim).unwrap();
            let si = analyze(&io, &lim).unwrap();
            assert!(
                si.external_behavior.same_set(&s.external_behavior).unwrap(),
                "{kind:?}"
            );
            assert!(si.is_observable(), "{kind:?}");
            assert!(si.is_controllable(), "{kind:?}");
            let info = io_information_set(&g, kind, &t, "v1");
            assert!(
                si.external_behavior.is_information_set(&info).unwrap(),
                "{kind:?}"
            );
        }
    }
    let z0 = space_realization(&g, &z(2), Construction::Z0).unwrap();
    assert_eq!(controllability_test(&z0, &lim).unwrap(), (false, 4));
    let b1io = make_io_realization(
        &space_realization(&g, &z(2), Construction::B1).unwrap(),
        IoKind::B1,
        &t,
        "v1",
    )
    .unwrap();
    assert_eq!(controllability_test(&b1io, &lim).unwrap(), (true, 1));
}

#[test]
fn z1_io_works_for_any_removed_constraint() {
    let g = fixtures::example1();
    let t = reference_tree(&g);
    let z1 = space_realization(&g, &z(3), Construction::Z1).unwrap();
    let full = analyze(&z1, &Limits::default()).unwrap();
    for v in g.vertices() {
        let io = make_io_realization(&z1, IoKind::Z1, &t, v).unwrap();
        let s = analyze(&io, &Limits::default()).unwrap();
        assert!(s
            .external_behavior
            .same_set(&full.external_behavior)
            .unwrap());
    }
}

#[test]
fn composed_w01_io_realizes_w01() {
    let g = fixtures::example1();
    let t = reference_tree(&g);
    let lim = Limits::default();
    for a in [z(2), z(3)] {
        let w01 = analyze(&build_w01(&g, &a).unwrap(), &lim).unwrap();
        let io = build_w01_io(&g, &a, &t, "v1").unwrap();
        io.validate().unwrap();
        let s = analyze(&io, &lim).unwrap();
        let reordered = s
            .external_behavior
            .project(w01.external_behavior.labels())
            .unwrap();
        assert!(reordered.same_set(&w01.external_behavior).unwrap());
        assert!(s.is_observable() && s.is_controllable());
        let mut info = vec!["v1".to_string()];
        info.extend(t.tree_labels.iter().cloned());
        assert!(reordered.is_information_set(&info).unwrap());
        let w10 = analyze(&io.dualize(), &lim).unwrap();
        let w10r = w10
            .external_behavior
            .project(w01.external_behavior.labels())
            .unwrap();
        assert!(w10r
            .same_set(&w01.external_behavior.dual().unwrap())
            .unwrap());
    }
}

#[test]
fn w10_is_orthogonal_to_w01() {
    let lim = Limits::default();
    for g in graphs().into_iter().take(4) {
        let a = z(2);
        let w01 = analyze(&build_w01(&g, &a).unwrap(), &lim).unwrap();
        let w10 = analyze(&build_w01(&g, &a).unwrap().dualize(), &lim).unwrap();
        assert!(w10
            .external_behavior
            .same_set(&w01.external_behavior.dual().unwrap())
            .unwrap());
        // W10 = {(-y M, y)}
        let m = g.connection_matrix();
        let nv = g.num_vertices();
        for w in w10.external_behavior.words().unwrap() {
            let (xh, yh) = w.split_at(nv);
            let ym = dualnfg_core::gcode::apply_transpose(&a, &m, yh);
            let neg: Vec<usize> = ym.iter().map(|&v| a.neg(v)).collect();
            assert_eq!(xh, neg.as_slice());
        }
    }
}

#[test]
fn cap_is_enforced_on_behavior() {
    let g = fixtures::example1();
    let r = build_w01(&g, &z(3)).unwrap();
    let err = analyze(&r, &Limits::with_cap(100)).unwrap_err();
    assert!(matches!(err, dualnfg_core::Error::CapExceeded { .. }));
}
