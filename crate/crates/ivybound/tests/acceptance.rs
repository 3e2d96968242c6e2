//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the numbers it verified (run with `--nocapture` to see them).

use rayon::prelude::*;

use ivybound::bounds::{clique_count_gap, universal_lower_bound};
use ivybound::cli::{exp1, exp2, Exp1Args, Exp2Args};
use ivybound::design::{
    bounded_size_intervention_set, single_multinode_intervention, sink_complement_interventions,
};
use ivybound::essential::{i_essential_graph, i_mec_union};
use ivybound::generators;
use ivybound::naive;
use ivybound::oracle::{optimal_atomic_size, DEFAULT_ORACLE_BUDGET};
use ivybound::orderings::{cbsp_ordering, check_p1, check_p2, CliqueBlockOrdering, RepairStep};
use ivybound::{Dag, InterventionSet};

use rand::RngExt;

const FIG: &str = "a -> b\nb -> c\nb -> e\nc -> e\nc -> d\nc -> f\nd -> f\n";

fn fig_dag() -> Dag {
    Dag::parse_edge_list(FIG).unwrap()
}

fn ids(d: &Dag, names: &[&str]) -> Vec<usize> {
    names.iter().map(|n| d.vertex_by_name(n).unwrap()).collect()
}

/// The instance stream of criterion 2 (also re-walked by criterion 5).
fn sandwich_instances() -> Vec<Dag> {
    (0..200u64)
        .map(|i| {
            let mut rng = generators::rng_stream(0xACCE5501, i);
            let n = rng.random_range(5..=12);
            let p = rng.random_range(0.1..0.3);
            generators::er_dag_no_vstructures_with(n, p, &mut rng).unwrap()
        })
        .collect()
}

fn exp1_acceptance_args() -> Exp1Args {
    Exp1Args {
        count: 200,
        nmin: 5,
        nmax: 14,
        pmin: 0.1,
        pmax: 0.3,
        seed: 0xACCE5506,
        budget: DEFAULT_ORACLE_BUDGET,
    }
}

/// The graphs behind `exp1(exp1_acceptance_args())`, regenerated for
/// criterion 5 from the same per-graph streams.
fn exp1_acceptance_dags() -> Vec<Dag> {
    let args = exp1_acceptance_args();
    (0..args.count as u64)
        .map(|i| {
            let mut rng = generators::rng_stream(args.seed, i);
            let n = rng.random_range(args.nmin..=args.nmax);
            let p = rng.random_range(args.pmin..args.pmax);
            generators::er_dag_no_vstructures_with(n, p, &mut rng).unwrap()
        })
        .collect()
}

fn exp2_acceptance_args() -> Exp2Args {
    Exp2Args {
        sizes: vec![10, 20, 30],
        count: 200,
        min_clique: 2,
        max_clique: 4,
        seed: 0xACCE5507,
    }
}

fn exp2_acceptance_dags() -> Vec<Dag> {
    let args = exp2_acceptance_args();
    let mut out = Vec::new();
    let mut graph_id = 0u64;
    for &n in &args.sizes {
        for _ in 0..args.count {
            let mut rng = generators::rng_stream(args.seed, graph_id);
            out.push(
                generators::bounded_clique_dag_with(n, args.min_clique, args.max_clique, &mut rng)
                    .unwrap(),
            );
            graph_id += 1;
        }
    }
    out
}

/// The instance stream of criterion 8 (also re-walked by criterion 5).
fn multinode_instances() -> Vec<Dag> {
    let mut rng = generators::rng_from_seed(0xACCE5508);
    (0..100)
        .map(|_| {
            let n = rng.random_range(3..=12);
            let p = rng.random_range(0.15..0.4);
            naive::random_dag(n, p, &mut rng)
        })
        .collect()
}

#[test]
fn criterion_01_fixture_exactness() {
    let d = fig_dag();

    let report = universal_lower_bound(&d).unwrap();
    assert_eq!(report.our_bound, 2);

    let sink = sink_complement_interventions(&d).unwrap();
    assert!(sink.certified);
    let targets: Vec<&str> = sink
        .interventions
        .non_empty_members()
        .map(|m| d.name(m[0]))
        .collect();
    assert_eq!(targets, vec!["a", "c", "d"]);

    let (cbo, _) = cbsp_ordering(&d).unwrap();
    assert!(cbo.p1_holds() && cbo.p2_holds());

    let sigma_prime = ids(&d, &["a", "b", "c", "d", "e", "f"]);
    let p1_witness = check_p1(&d, &sigma_prime).unwrap().expect("P1 must fail");
    assert_eq!(p1_witness, ids(&d, &["c", "d", "e"]));

    let sigma = ids(&d, &["a", "b", "c", "d", "f", "e"]);
    assert_eq!(check_p1(&d, &sigma).unwrap(), None);
    let p2_witness = check_p2(&d, &sigma).unwrap().expect("P2 must fail");
    assert_eq!(
        p2_witness,
        (d.vertex_by_name("c").unwrap(), d.vertex_by_name("d").unwrap())
    );

    println!(
        "acceptance 1 (fixture exactness): PASS: bound 2, sink complement {{a,c,d}}, witnesses as pinned"
    );
}

#[test]
fn criterion_02_oracle_sandwich() {
    let dags = sandwich_instances();
    let results: Vec<(usize, usize, usize)> = dags
        .par_iter()
        .map(|d| {
            let report = universal_lower_bound(d).unwrap();
            let oracle = optimal_atomic_size(d, DEFAULT_ORACLE_BUDGET).unwrap();
            assert!(!oracle.budget_hit);
            (report.our_bound, oracle.optimal_size, report.n - report.r)
        })
        .collect();
    for &(lb, opt, nr) in &results {
        assert!(lb <= opt, "lower bound {lb} above optimum {opt}");
        assert!(opt <= nr, "optimum {opt} above n-r {nr}");
        assert!(nr <= 2 * nr.div_ceil(2));
        assert!(nr <= 2 * lb, "n-r {nr} above twice the bound {lb}");
    }
    println!(
        "acceptance 2 (oracle sandwich): PASS: {} instances, zero violations",
        results.len()
    );
}

#[test]
fn criterion_03_essential_graph_exactness() {
    let mut pairs_checked = 0u64;
    for n in 0..=4 {
        let dags = naive::all_dags(n);
        let families = naive::all_intervention_sets(n, 2);
        let counts: Vec<u64> = dags
            .par_iter()
            .map(|d| {
                let mut local = 0u64;
                for iv in &families {
                    let engine = i_essential_graph(d, iv).unwrap();
                    let union = i_mec_union(d, iv).unwrap();
                    assert_eq!(
                        engine.graph(),
                        &union,
                        "engine/oracle mismatch on {d:?} with {iv:?}"
                    );
                    local += 1;
                }
                local
            })
            .collect();
        pairs_checked += counts.iter().sum::<u64>();
    }
    println!(
        "acceptance 3 (essential-graph exactness): PASS: {pairs_checked} (DAG, intervention-set) pairs, zero mismatches"
    );
}

#[test]
fn criterion_04_consecutive_pair_directedness() {
    let mut rng = generators::rng_from_seed(0xACCE5504);
    let mut checks = 0u64;
    for _ in 0..100 {
        let n = rng.random_range(2..=8);
        let p = rng.random_range(0.15..0.45);
        let d = generators::er_dag_no_vstructures_with(n, p, &mut rng).unwrap();
        let (cbo, _) = cbsp_ordering(&d).unwrap();
        let pairs = cbo.consecutive_block_pairs();
        for _ in 0..50 {
            let targets: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.35)).collect();
            let iv = InterventionSet::atomic(targets);
            let e = i_essential_graph(&d, &iv).unwrap();
            for &(a, b) in &pairs {
                assert_eq!(
                    e.graph().has_directed(a, b),
                    iv.cuts(a, b),
                    "pair ({a},{b}) of {d:?} under {iv:?}"
                );
                checks += 1;
            }
        }
    }
    println!(
        "acceptance 4 (block-pair directedness iff cut): PASS: {checks} edge checks, zero violations"
    );
}

#[test]
fn criterion_05_bound_dominance() {
    let mut graphs = sandwich_instances();
    graphs.extend(exp1_acceptance_dags());
    graphs.extend(exp2_acceptance_dags());
    graphs.extend(multinode_instances());
    let total = graphs.len();
    let chordal_skeletons: usize = graphs
        .par_iter()
        .map(|d| {
            let report = universal_lower_bound(d).unwrap();
            assert!(
                report.our_bound >= report.prior_bound,
                "dominance fails on {d:?}"
            );
            let skel = d.skeleton();
            if skel.is_chordal().unwrap().is_some() {
                let (gap, omega_minus_one) = clique_count_gap(&skel).unwrap();
                assert!(gap >= omega_minus_one, "clique-count gap fails on {d:?}");
                1
            } else {
                0
            }
        })
        .sum();
    println!(
        "acceptance 5 (bound dominance): PASS: {total} graphs, {chordal_skeletons} chordal skeletons, zero violations"
    );
}

#[test]
fn criterion_06_experiment1_scaled() {
    let rows = exp1(&exp1_acceptance_args()).unwrap();
    assert_eq!(rows.len(), 200);
    let mut closer_to_lower = 0usize;
    for row in &rows {
        assert!(
            row.lower_bound <= row.optimal,
            "row {}: optimum below bound",
            row.graph_id
        );
        assert!(
            row.optimal <= 2 * row.lower_bound,
            "row {}: optimum beyond twice the bound",
            row.graph_id
        );
        if row.optimal - row.lower_bound <= 2 * row.lower_bound - row.optimal {
            closer_to_lower += 1;
        }
    }
    let fraction = closer_to_lower as f64 / rows.len() as f64;
    println!(
        "acceptance 6 (experiment 1): PASS: 200 rows inside [LB, 2·LB]; fraction closer to the lower line: {fraction:.3} (reported)"
    );
}

#[test]
fn criterion_07_experiment2_scaled() {
    let rows = exp2(&exp2_acceptance_args()).unwrap();
    assert_eq!(rows.len(), 600);
    for row in &rows {
        assert!(row.prior_bound >= 1, "row {}: degenerate prior", row.graph_id);
        assert!(row.ratio >= 1.0, "row {}: ratio below one", row.graph_id);
    }
    let mean = |n: usize| {
        let picked: Vec<f64> = rows.iter().filter(|r| r.n == n).map(|r| r.ratio).collect();
        picked.iter().sum::<f64>() / picked.len() as f64
    };
    let (mean10, mean30) = (mean(10), mean(30));
    assert!(
        mean30 > mean10,
        "mean ratio did not increase: {mean10} vs {mean30}"
    );
    let max30 = rows
        .iter()
        .filter(|r| r.n == 30)
        .map(|r| r.ratio)
        .fold(0.0f64, f64::max);
    assert!(max30 >= 2.0, "max ratio at n=30 is only {max30}");
    println!(
        "acceptance 7 (experiment 2): PASS: 600 rows, mean ratio {mean10:.3} @ n=10 -> {mean30:.3} @ n=30, max {max30:.2} @ n=30"
    );
}

#[test]
fn criterion_08_multinode_bounds() {
    let dags = multinode_instances();
    let checked: usize = dags
        .par_iter()
        .map(|d| {
            let report = universal_lower_bound(d).unwrap();
            let nr = report.n - report.r;

            // Node budget of the single multi-node intervention: sum of
            // ceil(|block| / 2) over the deterministic P1 orderings of the
            // non-singleton components.
            let essential = i_essential_graph(d, &InterventionSet::observational()).unwrap();
            let mut node_budget = 0usize;
            for comp in essential.graph().chain_components().non_singletons() {
                let (sub, _) = d.induced_dag(comp).unwrap();
                let cbo = ivybound::orderings::clique_block_ordering(&sub).unwrap();
                node_budget += cbo.blocks().iter().map(|b| b.len().div_ceil(2)).sum::<usize>();
            }
            let single = single_multinode_intervention(d).unwrap();
            assert!(single.certified, "multi-node design uncertified on {d:?}");
            let node_count = single
                .interventions
                .non_empty_members()
                .map(|m| m.len())
                .sum::<usize>();
            assert!(node_count <= node_budget, "node budget exceeded on {d:?}");

            for k in [2usize, 3] {
                let chunked = bounded_size_intervention_set(d, k).unwrap();
                assert!(chunked.certified, "chunked design uncertified on {d:?}");
                assert!(chunked.interventions.non_empty_members().all(|m| m.len() <= k));
                let lower = nr.div_ceil(2).div_ceil(k);
                let upper = (nr / 2).div_ceil(k) + report.r_star.div_ceil(k);
                assert!(
                    (lower..=upper).contains(&chunked.size),
                    "count {} outside [{lower}, {upper}] on {d:?}",
                    chunked.size
                );
            }
            1
        })
        .sum();
    println!(
        "acceptance 8 (multi-node bounds): PASS: {checked} DAGs x k in {{2,3}}, zero violations"
    );
}

#[test]
fn criterion_09_separation_families() {
    for k in 2..=10usize {
        for construction in [generators::construction1, generators::construction2] {
            let g = construction(k, 4).unwrap();
            let d = generators::orient_by_peo_from_largest_clique(&g).unwrap();
            let report = universal_lower_bound(&d).unwrap();
            // ratio >= k / 2, in exact integers.
            assert!(
                2 * report.our_bound >= k * report.prior_bound,
                "separation fails at k={k}: {} vs {}",
                report.our_bound,
                report.prior_bound
            );
        }
    }
    println!("acceptance 9 (separation families): PASS: both constructions, k = 2..=10, ratio >= k/2");
}

#[test]
fn criterion_10_equality_families() {
    let mut rng = generators::rng_from_seed(0xACCE5510);
    let mut checked = 0;
    for i in 0..50u64 {
        let k = 1 + (i as usize % 4);
        let n = rng.random_range((k + 2)..=(k + 10));
        let g = generators::k_tree(k, n, 0xACCE5510 ^ i).unwrap();
        let cliques = g.maximal_cliques().unwrap();
        let omega = cliques.iter().map(|c| c.len()).max().unwrap();
        let gap = g.vertex_count() - cliques.len();
        assert_eq!(gap.div_ceil(2), omega / 2, "k-tree equality fails: {g:?}");
        checked += 1;
    }
    for i in 0..50u64 {
        let clique = rng.random_range(2..=6);
        let independent = rng.random_range(0..=6);
        let attach = rng.random_range(0.2..0.9);
        let g = generators::split_graph(clique, independent, attach, 0xACCE5511 ^ i).unwrap();
        let cliques = g.maximal_cliques().unwrap();
        let omega = cliques.iter().map(|c| c.len()).max().unwrap();
        let gap = g.vertex_count() - cliques.len();
        assert_eq!(gap.div_ceil(2), omega / 2, "split-graph equality fails: {g:?}");
        checked += 1;
    }
    println!("acceptance 10 (equality families): PASS: {checked} graphs, exact equality everywhere");
}

fn assert_repair_trace_sound(d: &Dag, trace: &[RepairStep]) {
    let sinks = d.sink_vertices().unwrap();
    let mut last_position = None;
    for step in trace {
        if let Some(prev) = last_position {
            assert!(step.violation_position > prev, "violation position did not advance");
        }
        last_position = Some(step.violation_position);

        // (1) The tail is closed under children.
        for &y in &step.tail_set {
            for z in d.children(y).ones() {
                assert!(step.tail_set.contains(&z), "tail not closed under children");
            }
        }
        // (2) Extension set non-empty; the violating vertex and every
        // non-sink member have a sink-vertex child inside it.
        assert!(!step.extension_set.is_empty(), "empty extension set");
        let a = step.violating_pair.0;
        for &x in std::iter::once(&a).chain(&step.extension_set) {
            if !sinks.contains(&x) {
                assert!(
                    step.extension_set
                        .iter()
                        .any(|&y| sinks.contains(&y) && d.has_directed(x, y)),
                    "non-sink member without sink child"
                );
            }
        }
        // (3) Sinks of the induced sub-DAG are sinks of the whole DAG.
        let (sub, map) = d.induced_dag(&step.extension_set).unwrap();
        for s in sub.sink_vertices().unwrap() {
            assert!(sinks.contains(&map[s]), "extension sink is not a DAG sink");
        }
        // Intermediate orderings keep P1.
        let mid = CliqueBlockOrdering::analyze(d, step.resulting_ordering.clone()).unwrap();
        assert!(mid.p1_holds(), "intermediate ordering violates P1");
    }
}

#[test]
fn criterion_11_cbsp_existence_and_repair_soundness() {
    let mut instances = 0usize;
    let mut repairs = 0usize;
    for n in 0..=4 {
        for d in naive::all_dags(n) {
            if !d.v_structures().is_empty() {
                continue;
            }
            let (cbo, trace) = cbsp_ordering(&d).unwrap();
            assert!(cbo.p1_holds() && cbo.p2_holds());
            assert_repair_trace_sound(&d, &trace);
            instances += 1;
            repairs += trace.len();
        }
    }
    let mut rng = generators::rng_from_seed(0xACCE5511);
    for _ in 0..1000 {
        let n = rng.random_range(2..=10);
        let p = rng.random_range(0.1..0.5);
        let d = generators::er_dag_no_vstructures_with(n, p, &mut rng).unwrap();
        let (cbo, trace) = cbsp_ordering(&d).unwrap();
        assert!(cbo.p1_holds() && cbo.p2_holds());
        assert_repair_trace_sound(&d, &trace);
        instances += 1;
        repairs += trace.len();
    }
    assert!(repairs > 0, "no repair step was ever exercised");
    println!(
        "acceptance 11 (ordering existence + repair soundness): PASS: {instances} DAGs, {repairs} repair steps, all invariants hold"
    );
}

#[test]
fn criterion_12_folklore_corollaries() {
    let mut rng = generators::rng_from_seed(0xACCE5512);
    let mut split_checks = 0u64;
    let mut component_checks = 0u64;
    for _ in 0..100 {
        let n = rng.random_range(3..=8);
        let p = rng.random_range(0.2..0.5);
        let d = naive::random_dag(n, p, &mut rng);
        let mut iv = InterventionSet::observational();
        for _ in 0..rng.random_range(1..=3) {
            let member: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.3)).collect();
            iv.insert(member);
        }

        // Splitting monotonicity: break one non-empty intervention in two.
        if let Some(member) = iv.non_empty_members().find(|m| m.len() >= 2) {
            let member = member.to_vec();
            let cut = rng.random_range(1..member.len());
            let mut refined = InterventionSet::observational();
            for m in iv.non_empty_members() {
                if m != member.as_slice() {
                    refined.insert(m.iter().copied());
                }
            }
            refined.insert(member[..cut].iter().copied());
            refined.insert(member[cut..].iter().copied());
            let before = i_essential_graph(&d, &iv).unwrap();
            let after = i_essential_graph(&d, &refined).unwrap();
            for (u, v) in before.graph().directed_edges() {
                assert!(
                    after.graph().has_directed(u, v),
                    "splitting undirected an edge on {d:?}"
                );
                split_checks += 1;
            }
        }

        // Chain-component decomposition.
        let observational = i_essential_graph(&d, &InterventionSet::observational()).unwrap();
        let cc = observational.graph().chain_components();
        let full = i_essential_graph(&d, &iv).unwrap();
        for comp in &cc.components {
            let (sub, map) = d.induced_dag(comp).unwrap();
            let mut to_local = vec![None; d.vertex_count()];
            for (local, &global) in map.iter().enumerate() {
                to_local[global] = Some(local);
            }
            let local_iv = iv.relabel(&to_local);
            let local_essential = i_essential_graph(&sub, &local_iv).unwrap();
            for (u_local, v_local) in sub.directed_edges() {
                let (u, v) = (map[u_local], map[v_local]);
                let directed_globally =
                    full.graph().has_directed(u, v) || full.graph().has_directed(v, u);
                let directed_locally = local_essential.graph().has_directed(u_local, v_local)
                    || local_essential.graph().has_directed(v_local, u_local);
                assert_eq!(
                    directed_globally, directed_locally,
                    "component decomposition mismatch on {d:?}"
                );
                component_checks += 1;
            }
        }
        for (u, v) in d.directed_edges() {
            if cc.component_of[u] != cc.component_of[v] {
                assert!(
                    observational.graph().has_directed(u, v),
                    "cross-component edge undirected observationally on {d:?}"
                );
            }
        }
    }
    println!(
        "acceptance 12 (folklore corollaries): PASS: {split_checks} splitting checks, {component_checks} decomposition checks, zero violations"
    );
}
