use dualnfg_core::ising::{partition_dual, partition_exact, partition_primal};
use dualnfg_core::{
    fixtures, FiniteAbelianGroup, GroupCode, GroupFunction, IsingTypeModel, Limits, Scale,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn group() -> impl Strategy<Value = FiniteAbelianGroup> {
    prop::sample::select(vec![
        vec![2],
        vec![3],
        vec![5],
        vec![2, 2],
        vec![2, 3],
        vec![4, 2],
    ])
    .prop_map(|o| FiniteAbelianGroup::new(o).unwrap())
}

fn function() -> impl Strategy<Value = GroupFunction> {
    group().prop_flat_map(|g| {
        let n = g.order();
        prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), n).prop_map(move |v| {
            GroupFunction::new(
                g.clone(),
                v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect(),
            )
            .unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_transform_recovers_function(f in function()) {
        let back = f.fourier_transform().inverse_fourier_transform();
        for (a, b) in f.values.iter().zip(&back.values) {
            prop_assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn transform_preserves_energy_up_to_order(f in function()) {
        let n = f.domain.order() as f64;
        let e: f64 = f.values.iter().map(|x| x.norm_sqr()).sum();
        let e_hat: f64 = f.fourier_transform().values.iter().map(|x| x.norm_sqr()).sum();
        prop_assert!((e_hat - n * e).abs() < 1e-9 * (1.0 + n * e));
    }

    #[test]
    fn scale_arithmetic_is_exact(a in 1u128..1000, b in 1u128..1000, c in 1u128..1000) {
        let x = Scale::new(a, b);
        prop_assert_eq!(x * Scale::new(b, a), Scale::ONE);
        prop_assert_eq!(x * Scale::integer(c) / Scale::integer(c), x);
    }

    #[test]
    fn dual_of_dual_is_the_code(g in group(), n in 1usize..4, seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = g.order();
        let gens: Vec<Vec<usize>> = (0..rng.gen_range(0..3)).map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect()).collect();
        let labels = (0..n).map(|i| format!("x{i}")).collect();
        let c = GroupCode::new(g, labels, gens).unwrap();
        let d = c.dual().unwrap();
        prop_assert!(d.dual().unwrap().same_set(&c).unwrap());
        prop_assert_eq!(c.size().unwrap() * d.size().unwrap(), (q as u128).pow(n as u32));
    }

    #[test]
    fn cut_and_cycle_spaces_split_the_edge_space(nv in 2usize..6, extra in 0usize..4, q in 2u32..4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = fixtures::random_connected_graph(&mut rng, nv, nv - 1 + extra);
        let a = FiniteAbelianGroup::cyclic(q).unwrap();
        let s = g.cochain_spaces(&a, 1 << 20).unwrap();
        prop_assert_eq!(s.b1.size().unwrap() * s.z1.size().unwrap(), (q as u128).pow(g.num_edges() as u32));
    }

    #[test]
    fn primal_and_dual_match_brute_force(nv in 2usize..6, extra in 0usize..4, beta in 0.0..1.5f64, j in -1.0..1.0f64, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = fixtures::random_connected_graph(&mut rng, nv, nv - 1 + extra);
        let lim = Limits::default();
        let m = IsingTypeModel::potts(g, 3, beta, j).unwrap();
        let exact = partition_exact(&m, &lim).unwrap().value;
        let p = partition_primal(&m, None, &lim).unwrap().normalized();
        let d = partition_dual(&m, None, &lim).unwrap().normalized();
        prop_assert!((p - exact).norm() < 1e-9 * exact.norm());
        prop_assert!((d - exact).norm() < 1e-9 * exact.norm());
    }
}
