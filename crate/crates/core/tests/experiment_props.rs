use pivotlab::experiments::{run_experiment, Config, NAMES};

fn small(name: &str) -> Vec<usize> {
    match name {
        "thm-id" => vec![3, 5, 7],
        "thm-general" => vec![3, 5],
        "k-bound" => vec![2, 3, 4],
        "random-edge" => vec![5, 7],
        _ => vec![3],
    }
}

#[test]
fn experiment_output_is_byte_stable() {
    let cfg = Config {
        seed: 9,
        general_samples: 50,
        k_instances: 10,
        k_sampled_starts: 10,
        random_edge_trials: 20,
        level_one_min_samples: 1_000_000,
        ..Config::default()
    };
    for name in NAMES {
        let ns = small(name);
        let a = run_experiment(name, Some(&ns), &cfg).unwrap();
        let b = run_experiment(name, Some(&ns), &cfg).unwrap();
        assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap(), "{name}");
        assert_eq!(a.summary_json(), b.summary_json(), "{name}");
        assert!(a.to_csv().unwrap().starts_with("experiment,n,parameter,observed,bound,verdict\n"));
    }
}

#[test]
fn seed_changes_random_edge_statistics() {
    let ns = [7];
    let run = |seed| {
        let cfg = Config { seed, random_edge_trials: 30, ..Config::default() };
        run_experiment("random-edge", Some(&ns), &cfg).unwrap().to_csv().unwrap()
    };
    assert_ne!(run(1), run(2));
}

#[test]
fn unknown_experiment_is_an_error() {
    assert!(run_experiment("nope", None, &Config::default()).is_err());
}
