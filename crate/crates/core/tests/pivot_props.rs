use pivotlab::experiments::all_rules;
use pivotlab::gen::{gen_k_matrix, gen_p_matrix, gen_q, PStrategy};
use pivotlab::pivot::{detect_cycle, run, Limits, PivotRule, RunTrace, Status};
use pivotlab::uso::{tabulate, MorrisOracle, PlcpOracle};
use pivotlab::verify::level;
use pivotlab::{LcpInstance, Orientation, UsoTable, Vertex};
use proptest::prelude::*;

fn table(n: usize, seed: u64, k: bool) -> UsoTable {
    let m = if k {
        gen_k_matrix(n, seed, 5).unwrap()
    } else {
        gen_p_matrix(n, seed, PStrategy::KPpt, 5).unwrap()
    };
    let q = gen_q(&m, seed.wrapping_add(1), 5).unwrap();
    tabulate(&PlcpOracle::new(LcpInstance::new(m, q).unwrap())).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n);
            out.push(q);
        }
    }
    out
}

// every recorded step is a legal move of the orientation
fn assert_valid(o: &dyn Orientation, tr: &RunTrace) {
    for w in tr.visits.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        assert_eq!(a.outmap, o.outmap(a.vertex).unwrap());
        assert!(!a.chosen.is_empty());
        assert!(a.chosen.is_subset(a.outmap.outgoing()));
        assert_eq!(a.vertex.flip(a.chosen).unwrap(), b.vertex);
        assert_eq!(a.level, level(a.vertex, a.outmap));
        assert_eq!(b.index, a.index + 1);
    }
    let last = tr.visits.last().unwrap();
    assert_eq!(tr.status == Status::SinkReached, last.outmap.is_sink());
}

#[test]
fn murty_pi_terminates_everywhere() {
    let mut tables: Vec<UsoTable> = (0..4).map(|s| table(4, s, false)).collect();
    tables.extend((0..3).map(|s| table(5, 100 + s, false)));
    tables.push(tabulate(&MorrisOracle::new(3).unwrap()).unwrap());
    tables.push(tabulate(&MorrisOracle::new(5).unwrap()).unwrap());
    for t in &tables {
        let n = t.dim();
        for pi in permutations(n) {
            let rule = PivotRule::murty_pi(pi.clone()).unwrap();
            for v in Vertex::all(n) {
                let tr = run(t, &rule, v, Limits::default_for(n)).unwrap();
                assert_eq!(tr.status, Status::SinkReached, "pi={pi:?} start={v}");
                assert!(detect_cycle(&tr).is_none());
                assert_valid(t, &tr);
            }
        }
    }
}

#[test]
fn morris_from_the_origin_takes_the_known_number_of_steps() {
    for n in [3usize, 5, 7, 9, 11] {
        let o = MorrisOracle::new(n).unwrap();
        let tr = run(&o, &PivotRule::murty(), Vertex::zero(n).unwrap(), Limits::default_for(n)).unwrap();
        assert_eq!(tr.steps() as usize, (n * n).div_ceil(2));
        assert!(tr.end().is_all_ones());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn traces_are_valid(n in 1usize..=6, seed in any::<u64>(), start in any::<u64>(), k in any::<bool>()) {
        let t = table(n, seed, k);
        let v = Vertex::from_mask(n, start & ((1 << n) - 1)).unwrap();
        for rule in all_rules(n, seed).unwrap() {
            let tr = run(&t, &rule, v, Limits::default_for(n)).unwrap();
            assert_valid(&t, &tr);
            if !rule.kind().is_greedy() {
                prop_assert_eq!(tr.status, Status::SinkReached);
            }
        }
    }

    #[test]
    fn k_tables_are_monotone_from_the_origin(n in 1usize..=6, seed in any::<u64>()) {
        let t = table(n, seed, true);
        let sink = t.sinks()[0];
        for rule in all_rules(n, seed).unwrap() {
            let tr = run(&t, &rule, Vertex::zero(n).unwrap(), Limits::default_for(n)).unwrap();
            prop_assert_eq!(tr.status, Status::SinkReached);
            prop_assert_eq!(tr.flips() as usize, sink.weight(), "{}", rule);
        }
    }

    #[test]
    fn seeded_rules_replay(n in 2usize..=6, seed in any::<u64>(), rs in any::<u64>()) {
        let t = table(n, seed, false);
        let v = Vertex::zero(n).unwrap();
        for rule in [PivotRule::random_edge(rs), PivotRule::randomized_murty(rs)] {
            let a = run(&t, &rule, v, Limits::default_for(n)).unwrap();
            let b = run(&t, &rule, v, Limits::default_for(n)).unwrap();
            prop_assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
        }
    }
}
