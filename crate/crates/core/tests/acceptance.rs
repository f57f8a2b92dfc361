//! Acceptance checks. Each criterion prints one PASS/FAIL line; the test
//! fails if any required criterion fails.
//!
//! Run with `cargo test -p radiobook-core --test acceptance -- --nocapture`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use radiobook_core::bounds::{lower_bound_total, path_radio_number, upper_bound_total};
use radiobook_core::constructive::{build_label_order, construct, Strategy};
use radiobook_core::io::{graph_from_json, graph_to_json, labeling_from_json, labeling_to_json};
use radiobook_core::{
    all_pairs_distances, brute_force_oracle, build_path, build_stacked_book, build_star,
    greedy_label, label_stacked_book, solve_exact, stacked_book_distance, validate, BookParams,
    Graph, Labeling, SolveConfig, SolveStatus,
};

const FIXTURE: &str = concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/fixtures/g55_reference_labeling.json"
);

enum Outcome {
    Pass(String),
    Fail(String),
}

fn within(limit: Duration, start: Instant) -> Result<String, String> {
    let took = start.elapsed();
    if took <= limit {
        Ok(format!("{took:.2?}"))
    } else {
        Err(format!("took {took:.2?}, limit {limit:?}"))
    }
}

fn run(check: impl FnOnce() -> Result<String, String>) -> Outcome {
    match catch_unwind(AssertUnwindSafe(check)) {
        Ok(Ok(detail)) => Outcome::Pass(detail),
        Ok(Err(detail)) => Outcome::Fail(detail),
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Outcome::Fail(msg)
        }
    }
}

fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn fixture_labeling() -> Result<String, String> {
    let start = Instant::now();
    let g = build_stacked_book(5, 5).unwrap();
    let text = std::fs::read_to_string(FIXTURE).map_err(|e| e.to_string())?;
    let f = labeling_from_json(&g, &text).map_err(|e| e.to_string())?;
    let report = validate(&all_pairs_distances(&g).unwrap(), &f).unwrap();
    if !report.violations.is_empty() || report.span != 69 {
        return Err(format!(
            "{} violations, span {}",
            report.violations.len(),
            report.span
        ));
    }
    within(Duration::from_secs(1), start).map(|t| format!("span 69, 0 violations, {t}"))
}

fn bounds_gap() -> Result<String, String> {
    let p = BookParams::new(5, 5);
    let (lo, hi) = (lower_bound_total(p).unwrap(), upper_bound_total(p).unwrap());
    if (lo, hi) != (68, 69) {
        return Err(format!("(5,5) gave {lo}/{hi}"));
    }
    for m in 5..=12 {
        for n in [5, 7, 9, 11] {
            let p = BookParams::new(m, n);
            let gap = upper_bound_total(p).unwrap() - lower_bound_total(p).unwrap();
            if gap != 1 {
                return Err(format!("({m},{n}) gap {gap}"));
            }
        }
    }
    Ok("68/69 at (5,5); gap 1 on 32 instances".into())
}

fn constructive_guarantee() -> Result<String, String> {
    let start = Instant::now();
    for m in 5..=8 {
        for n in [5, 7, 9] {
            let f = label_stacked_book(m, n).map_err(|e| e.to_string())?;
            let dm = all_pairs_distances(&build_stacked_book(m, n).unwrap()).unwrap();
            let report = validate(&dm, &f).unwrap();
            let bound = upper_bound_total(BookParams::new(m, n)).unwrap();
            if !report.valid || report.span > bound {
                return Err(format!(
                    "({m},{n}) valid={} span {} bound {bound}",
                    report.valid, report.span
                ));
            }
        }
    }
    within(Duration::from_secs(10), start).map(|t| format!("12 instances within bound, {t}"))
}

fn solver_vs_oracle() -> Result<String, String> {
    let start = Instant::now();
    let mut corpus: Vec<(String, Graph)> = Vec::new();
    corpus.extend((2..=6).map(|n| (format!("P{n}"), build_path(n).unwrap())));
    corpus.extend((3..=6).map(|m| (format!("S{m}"), build_star(m).unwrap())));
    corpus.extend((3..=6).map(|n| (format!("C{n}"), cycle(n))));
    corpus.push(("G32".into(), build_stacked_book(3, 2).unwrap()));
    let count = corpus.len();
    for (name, g) in corpus {
        let dm = all_pairs_distances(&g).unwrap();
        let r = solve_exact(&dm, &SolveConfig::default()).unwrap();
        let rn = r.radio_number.ok_or(format!("{name}: not certified"))?;
        let at = brute_force_oracle(&dm, rn).unwrap().is_some();
        let below = rn > 0 && brute_force_oracle(&dm, rn - 1).unwrap().is_some();
        if !at || below {
            return Err(format!("{name}: rn {rn}, oracle at r {at}, at r-1 {below}"));
        }
    }
    within(Duration::from_secs(300), start).map(|t| format!("{count} graphs, {t}"))
}

fn path_values() -> Result<String, String> {
    let rn = |n| {
        let dm = all_pairs_distances(&build_path(n).unwrap()).unwrap();
        solve_exact(&dm, &SolveConfig::default())
            .unwrap()
            .radio_number
            .unwrap()
    };
    let (p3, p4, p6) = (rn(3), rn(4), rn(6));
    if p4 != 5 || p6 != 13 {
        return Err(format!("P4 {p4}, P6 {p6}"));
    }
    let printed = path_radio_number(3).unwrap().printed;
    if p3 != 3 || printed != 4 {
        return Err(format!("P3 exhaustive {p3}, formula {printed}"));
    }
    Ok("P4 5, P6 13; P3 exhaustive 3 vs formula 4 (known discrepancy)".into())
}

fn distance_closed_form() -> Result<String, String> {
    let start = Instant::now();
    let mut pairs = 0usize;
    for m in 3..=8 {
        for n in 2..=9 {
            let g = build_stacked_book(m, n).unwrap();
            let dm = all_pairs_distances(&g).unwrap();
            let coords = g.coords().unwrap();
            for u in g.vertices() {
                for v in g.vertices() {
                    let closed = stacked_book_distance(m, n, coords[u.0], coords[v.0]).unwrap();
                    if closed != dm.get(u, v) {
                        return Err(format!("G_{m},{n} {} {}", coords[u.0], coords[v.0]));
                    }
                    pairs += 1;
                }
            }
        }
    }
    within(Duration::from_secs(30), start).map(|t| format!("{pairs} pairs, {t}"))
}

fn property_suites() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let graphs = [
        build_path(6).unwrap(),
        build_star(5).unwrap(),
        build_stacked_book(4, 3).unwrap(),
        build_stacked_book(5, 5).unwrap(),
    ];
    for trial in 0..1000 {
        let g = &graphs[trial % graphs.len()];
        let dm = all_pairs_distances(g).unwrap();
        let f = Labeling::new((0..dm.len()).map(|_| rng.gen_range(0..60)).collect());
        let shift = rng.gen_range(0..10_000);
        if validate(&dm, &f).unwrap() != validate(&dm, &f.shifted(shift)).unwrap() {
            return Err(format!("translation changed the verdict on trial {trial}"));
        }
    }
    for (m, n) in [(5, 5), (6, 7), (8, 9)] {
        let dm = all_pairs_distances(&build_stacked_book(m, n).unwrap()).unwrap();
        let order = build_label_order(m, n).unwrap().sequence;
        if greedy_label(&dm, &order) != greedy_label(&dm, &order) {
            return Err(format!("greedy differs between runs at ({m},{n})"));
        }
    }
    for g in &graphs {
        let back = graph_from_json(&graph_to_json(g)).unwrap();
        if back.edges() != g.edges() || back.coords() != g.coords() {
            return Err("graph JSON round trip changed the graph".into());
        }
        let f = Labeling::new((0..g.num_vertices() as u64).map(|i| i * 3).collect());
        if labeling_from_json(g, &labeling_to_json(g, &f, None)).unwrap() != f {
            return Err("labeling JSON round trip changed the labels".into());
        }
    }
    Ok("1000 translation trials, greedy determinism, JSON round trips".into())
}

/// Stretch goal: certify rn(G_{4,5}) within 10^8 search nodes.
fn certified_small_book() -> Result<String, String> {
    let (m, n) = (4, 5);
    let dm = all_pairs_distances(&build_stacked_book(m, n).unwrap()).unwrap();
    let cfg = SolveConfig {
        node_budget: Some(100_000_000),
        ..Default::default()
    };
    let r = solve_exact(&dm, &cfg).unwrap();
    let lo = lower_bound_total(BookParams::new(m, n)).unwrap();
    // The closed-form upper bound needs m >= 5; the constructive labeling
    // still applies at m = 4 and serves as the upper side.
    let hi = construct(m, n, Strategy::Rotation)
        .map_err(|e| e.to_string())?
        .span;
    match (r.status, r.radio_number) {
        (SolveStatus::Optimal, Some(rn)) if lo <= rn && rn <= hi => Ok(format!(
            "{lo} <= rn(G_4,5) = {rn} <= {hi}, {} nodes",
            r.nodes_explored
        )),
        (SolveStatus::Optimal, Some(rn)) => Err(format!("rn {rn} outside [{lo}, {hi}]")),
        _ => Err(format!(
            "not certified: best span {} after {} nodes (lower {lo})",
            r.witness_span, r.nodes_explored
        )),
    }
}

#[test]
fn acceptance() {
    type Check = fn() -> Result<String, String>;
    let criteria: [(&str, bool, Check); 8] = [
        ("1 fixture labeling", true, fixture_labeling),
        ("2 bounds gap", true, bounds_gap),
        ("3 constructive guarantee", true, constructive_guarantee),
        ("4 solver vs oracle", true, solver_vs_oracle),
        ("5 path radio numbers", true, path_values),
        ("6 distance closed form", true, distance_closed_form),
        ("7 property suites", true, property_suites),
        ("8 certified G_4,5 (stretch)", true, certified_small_book),
    ];
    let mut failed = Vec::new();
    for (name, required, check) in criteria {
        match run(check) {
            Outcome::Pass(detail) => println!("PASS  {name}: {detail}"),
            Outcome::Fail(detail) => {
                println!("FAIL  {name}: {detail}");
                if required {
                    failed.push(name);
                }
            }
        }
    }
    assert!(failed.is_empty(), "required criteria failed: {failed:?}");
}
