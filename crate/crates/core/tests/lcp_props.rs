use pivotlab::gen::{gen_k_matrix, gen_p_matrix, gen_q, PStrategy};
use pivotlab::lcp::{is_k_matrix, is_p_matrix, principal_pivot_transform};
use pivotlab::uso::plcp_outmap;
use pivotlab::{CoordSet, LcpInstance, Vertex};
use num_traits::Zero;
use proptest::prelude::*;

fn strategy() -> impl Strategy<Value = PStrategy> {
    prop_oneof![Just(PStrategy::Gram), Just(PStrategy::KPpt)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_basis_of_a_p_matrix_is_invertible(n in 1usize..=6, seed in any::<u64>(), s in strategy()) {
        let m = gen_p_matrix(n, seed, s, 5).unwrap();
        let inst = LcpInstance::new(m, vec![pivotlab::exact::rat(-1); n]).unwrap();
        for v in Vertex::all(n) {
            let b = inst.basis_matrix(v.ones_set()).unwrap();
            prop_assert!(!pivotlab::exact::rat_det(&b).unwrap().is_zero());
        }
    }

    #[test]
    fn ppt_keeps_p_and_is_an_involution(n in 1usize..=5, seed in any::<u64>(), a in any::<u64>()) {
        let m = gen_p_matrix(n, seed, PStrategy::Gram, 5).unwrap();
        let alpha = CoordSet::from_mask(a & ((1 << n) - 1));
        let t = principal_pivot_transform(&m, alpha).unwrap();
        prop_assert!(is_p_matrix(&t).unwrap());
        prop_assert_eq!(principal_pivot_transform(&t, alpha).unwrap(), m);
    }

    #[test]
    fn ppt_relabels_the_orientation(n in 1usize..=5, seed in any::<u64>(), a in any::<u64>()) {
        let m = gen_p_matrix(n, seed, PStrategy::KPpt, 5).unwrap();
        let q = gen_q(&m, seed ^ 0x5555, 5).unwrap();
        let inst = LcpInstance::new(m, q).unwrap();
        let alpha = CoordSet::from_mask(a & ((1 << n) - 1));
        let moved = inst.principal_pivot(alpha).unwrap();
        for v in Vertex::all(n) {
            prop_assert_eq!(
                plcp_outmap(&moved, v).unwrap(),
                plcp_outmap(&inst, v.flip(alpha).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn k_matrices_are_closed_under_principal_submatrices(n in 2usize..=6, seed in any::<u64>(), keep in any::<u64>()) {
        let m = gen_k_matrix(n, seed, 5).unwrap();
        let idx: Vec<usize> = (0..n).filter(|i| keep >> i & 1 == 1).collect();
        prop_assume!(!idx.is_empty());
        prop_assert!(is_k_matrix(&m.select(&idx, &idx)).unwrap());
    }
}
