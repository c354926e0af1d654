use pivotlab::cube::enumerate_subcubes;
use pivotlab::gen::{gen_k_matrix, gen_p_matrix, gen_q, gen_random_orientation, PStrategy};
use pivotlab::uso::{reorient, restrict, tabulate, PlcpOracle};
use pivotlab::verify::{
    disjoint_path_count, holt_klee, is_locally_up_uniform, is_two_uniform, is_two_up_uniform,
    is_uso, monotone_paths_everywhere, origin_paths_are_shortest, sign_persistence,
    unique_completion_holds,
};
use pivotlab::{CoordSet, LcpInstance, Orientation, UsoTable};
use proptest::prelude::*;

fn table(n: usize, seed: u64, k: bool) -> UsoTable {
    let m = if k {
        gen_k_matrix(n, seed, 5).unwrap()
    } else {
        gen_p_matrix(n, seed, PStrategy::Gram, 5).unwrap()
    };
    let q = gen_q(&m, seed.wrapping_add(1), 5).unwrap();
    tabulate(&PlcpOracle::new(LcpInstance::new(m, q).unwrap())).unwrap()
}

// one sink per face, counted face by face
fn naive_uso(t: &UsoTable) -> bool {
    enumerate_subcubes(t.dim()).unwrap().all(|c| {
        let face = restrict(t, c).unwrap();
        pivotlab::Vertex::all(c.dim())
            .filter(|&v| face.outmap(v).unwrap().is_sink())
            .count()
            == 1
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn unique_completion_agrees_with_the_axiom(n in 1usize..=4, seed in any::<u64>()) {
        let t = gen_random_orientation(n, seed).unwrap();
        let uso = naive_uso(&t);
        prop_assert_eq!(is_uso(&t).passed(), uso);
        prop_assert_eq!(unique_completion_holds(&t).passed(), uso);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn local_and_two_face_up_uniformity_agree(n in 1usize..=5, seed in any::<u64>(), k in any::<bool>(), flips in any::<u64>()) {
        let t = table(n, seed, k);
        let t = tabulate(&reorient(&t, CoordSet::from_mask(flips & CoordSet::full(n).mask())).unwrap()).unwrap();
        prop_assert_eq!(is_locally_up_uniform(&t).passed(), is_two_up_uniform(&t).passed());
    }

    #[test]
    fn two_uniform_tables_keep_settled_signs(n in 1usize..=5, seed in any::<u64>(), k in any::<bool>()) {
        let t = table(n, seed, k);
        if k {
            prop_assert!(is_two_uniform(&t).passed());
        }
        if is_two_uniform(&t).passed() {
            prop_assert!(sign_persistence(&t).passed());
        }
    }

    #[test]
    fn k_tables_have_short_origin_paths(n in 1usize..=4, seed in any::<u64>()) {
        let t = table(n, seed, true);
        prop_assert!(is_two_up_uniform(&t).passed());
        prop_assert!(origin_paths_are_shortest(&t).unwrap().passed());
        prop_assert!(monotone_paths_everywhere(&t).passed());
    }

    #[test]
    fn plcp_tables_satisfy_holt_klee(n in 1usize..=6, seed in any::<u64>()) {
        let t = table(n, seed, false);
        prop_assert!(holt_klee(&t).unwrap().passed());
        prop_assert_eq!(disjoint_path_count(&t).unwrap(), n);
    }
}

