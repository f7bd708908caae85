use std::fs;
use std::path::Path;

use mlcascade::analysis::{auc, Alpha, AucResult, Report};
use mlcascade::cascade::{read_traces, simulate_batch, write_traces, SimConfig};
use mlcascade::experiment::{benchmark_selection, evaluate_dir, run_sweep, ExperimentConfig, NetworkSpec};
use mlcascade::graph::{read_network, write_network};
use mlcascade::ingest::{build_network, parse_interactions, write_interactions, Action, ProjectionOptions};
use mlcascade::seeding::{select_seeds, SelectionConfig};
use mlcascade::synth::{preferential_attachment_multiplex, synthetic_interactions};
use mlcascade::{Method, SeedSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn interactions_file(dir: &Path, name: &str, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let records = synthetic_interactions(50, 60, 4, 2, &mut rng);
    write_interactions(&records, fs::File::create(dir.join(name)).unwrap()).unwrap();
}

#[test]
fn csv_to_network_file_to_cascade() {
    let tmp = tempfile::tempdir().unwrap();
    interactions_file(tmp.path(), "p.csv", 1);
    let records = parse_interactions(fs::File::open(tmp.path().join("p.csv")).unwrap()).unwrap();
    let net = build_network(&records, &Action::ALL, ProjectionOptions::default()).unwrap();
    assert_eq!(net.layer_names(), vec!["comment", "like"]);

    let mut buf = Vec::new();
    write_network(&net, &mut buf).unwrap();
    let back = read_network(buf.as_slice()).unwrap();
    assert_eq!(back.actors().ids(), net.actors().ids());
    for (a, b) in net.layers().iter().zip(back.layers()) {
        assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
    }

    let cfg = SelectionConfig {
        budget_fraction: 0.1,
        ..Default::default()
    };
    let sel = select_seeds::<f64>(&back, Some(&records), Method::Arl, &cfg).unwrap();
    let set = SeedSet::from_json(&sel.set.to_json().unwrap()).unwrap();
    let seeds = set.resolve(&back).unwrap();
    assert_eq!(seeds, sel.actors);

    let sim = SimConfig {
        activation_probability: 0.2,
        runs: 5,
        master_seed: 9,
        ..Default::default()
    };
    let traces = simulate_batch(&back, &seeds, &sim).unwrap();
    let mut csv = Vec::new();
    write_traces(&traces, &mut csv).unwrap();
    assert_eq!(read_traces::<f64, _>(csv.as_slice()).unwrap(), traces);
}

#[test]
fn f32_and_f64_agree_on_integer_outcomes() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let net = preferential_attachment_multiplex(300, 3, 2, &mut rng);
    let sel = select_seeds::<f32>(&net, None, Method::KShell, &SelectionConfig::default()).unwrap();
    let sel64 = select_seeds::<f64>(&net, None, Method::KShell, &SelectionConfig::default()).unwrap();
    assert_eq!(sel.actors, sel64.actors);

    // p = 1 makes every draw succeed regardless of precision
    let one32 = SimConfig::<f32> {
        activation_probability: 1.0,
        runs: 2,
        ..Default::default()
    };
    let one64 = SimConfig::<f64> {
        activation_probability: 1.0,
        runs: 2,
        ..Default::default()
    };
    let a = simulate_batch(&net, &sel.actors, &one32).unwrap();
    let b = simulate_batch(&net, &sel.actors, &one64).unwrap();
    for (x, y) in a.iter().zip(&b) {
        let ax: Vec<usize> = x.steps.iter().map(|s| s.activated).collect();
        let by: Vec<usize> = y.steps.iter().map(|s| s.activated).collect();
        assert_eq!(ax, by);
        let d = auc(&x.coverage()).unwrap() as f64 - auc(&y.coverage()).unwrap();
        assert!(d.abs() < 1e-5);
    }
}

#[test]
fn sweep_over_mixed_inputs_and_reevaluation() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    interactions_file(d, "a.csv", 3);
    interactions_file(d, "b.csv", 4);
    fs::write(
        d.join("m.edges"),
        "1 1 2 1\n1 2 3 1\n1 3 4 1\n2 1 3 1\n2 4 5 1\n3 1 5 1\n",
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let net = preferential_attachment_multiplex(60, 2, 2, &mut rng);
    let mut file = fs::File::create(d.join("g.net")).unwrap();
    write_network(&net, &mut file).unwrap();

    let toml = r#"
        methods = ["degree", "kshell", "voterank", "random"]
        seed_budget_fraction = 0.1
        timing_reps = 2
        [sim]
        activation_probability = 0.1
        runs = 3
        master_seed = 11
        [[networks]]
        id = "a"
        interactions = "a.csv"
        [[networks]]
        id = "b"
        interactions = "b.csv"
        layers = ["like"]
        [[networks]]
        id = "m"
        multiplex = "m.edges"
        keep_layers = [1, 2]
        [[networks]]
        id = "g"
        network = "g.net"
    "#;
    let cfg = ExperimentConfig::from_toml(toml).unwrap();
    let out = d.join("out");
    let summary = run_sweep(&cfg, d, &out, 3).unwrap();
    assert_eq!(summary.failures, 0, "{:?}", summary.cells());
    assert_eq!(summary.cells().len(), 16);
    assert_eq!(summary.report.timings.len(), 16);
    assert!(summary
        .report
        .timings
        .iter()
        .all(|t| t.reps == 2 && !t.includes_graph_build));

    let on_disk = Report::from_json(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(on_disk, summary.report);

    let (again, rows) = evaluate_dir(&out.join("traces"), &Alpha::ALL).unwrap();
    assert_eq!(rows.len(), 16);
    assert_eq!(again.friedman, summary.report.friedman);
    assert_eq!(again.nemenyi, summary.report.nemenyi);
    for (net, method, traces) in &rows {
        let entry = summary
            .report
            .auc
            .iter()
            .find(|e| &e.network == net && e.method == *method)
            .unwrap();
        let recomputed = AucResult::from_traces(net.clone(), *method, traces).unwrap();
        assert_eq!(recomputed.mean_auc, entry.mean);
    }

    let coverage = fs::read_to_string(out.join("plots/coverage.csv")).unwrap();
    assert_eq!(coverage.lines().count(), 1 + 16 * 11);
    let seeds = SeedSet::from_json(&fs::read_to_string(out.join("seeds/m__degree.json")).unwrap()).unwrap();
    assert_eq!(seeds.seeds.len(), 1);
}

#[test]
fn bench_times_build_for_network_methods_only() {
    let tmp = tempfile::tempdir().unwrap();
    interactions_file(tmp.path(), "a.csv", 6);
    let mut cfg = ExperimentConfig::new(vec![
        NetworkSpec::interactions("a", "a.csv"),
        NetworkSpec::interactions("missing", "nope.csv"),
    ]);
    cfg.methods = vec![Method::Degree, Method::Arl];
    let records = benchmark_selection(&cfg, tmp.path(), 3).unwrap();
    assert_eq!(records.len(), 4);
    let deg = &records[0];
    assert_eq!(
        (deg.method, deg.reps, deg.includes_graph_build),
        (Method::Degree, 3, true)
    );
    assert!(deg.error.is_none() && deg.mean_seconds > 0.0);
    let arl = &records[1];
    assert_eq!((arl.method, arl.includes_graph_build), (Method::Arl, false));
    assert!(arl.error.is_none());
    assert!(records[2].error.as_deref().unwrap().contains("nope.csv"));
    assert!(records[3].error.is_some());
}
