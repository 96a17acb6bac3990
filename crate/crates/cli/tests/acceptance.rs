//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on
//! any failure. Stretch goals print their own lines and only fail the run
//! when they produce a wrong answer.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Mutex;
use std::time::Instant;

use common::*;
use diam2::canon::canonical_form;
use diam2::cayley::{
    cayley_graph, classify_prime_power_orders, counting_feasibility, enumerate_connection_sets, prime_power,
    ramanujan_nagell, AbelianGroup, Verdict,
};
use diam2::constructions::{
    cycle_expansion, double_cover_quotient, enumerate_valid_matchings, expand_double_cover, named, ExpansionSpec,
    Involution, LiftFilter,
};
use diam2::process::{max_diameter2_subgraph, run_process};
use diam2::properties::{regular_witness_bracket, srg_integrality, srg_params, SrgParams};
use diam2::search::{closure, enumerate_witnesses, ClosureBudget, ClosureOps, SearchConfig};
use diam2::{canonicalize, from_graph6, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<String, String>;

/// Every graph any criterion produced, for the theorem oracles.
static PRODUCED: Mutex<Vec<(String, Graph)>> = Mutex::new(Vec::new());

fn produced(label: &str, g: &Graph) {
    PRODUCED.lock().unwrap().push((label.to_string(), g.clone()));
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> (i32, Vec<Value>) {
    let out = Command::new(env!("CARGO_BIN_EXE_diam2")).args(args).output().expect("binary runs");
    let lines = String::from_utf8(out.stdout)
        .expect("utf-8")
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect();
    (out.status.code().unwrap_or(-1), lines)
}

fn of_type<'a>(lines: &'a [Value], ty: &str) -> Vec<&'a Value> {
    lines.iter().filter(|v| v["type"] == ty).collect()
}

fn paper_row(n: usize, edges: usize) -> Option<(usize, usize, &'static str, usize, u64, usize)> {
    PAPER_ROWS.iter().copied().find(|r| r.0 == n && r.1 == edges)
}

fn census_13() -> Check {
    let start = Instant::now();
    let (code, lines) = cli(&["enumerate", "--n-max", "13", "--s", "2", "--t", "3"]);
    let secs = start.elapsed().as_secs_f64();
    ensure(code == 0, || format!("exit code {code}"))?;
    let counts: Vec<u64> = of_type(&lines, "count").iter().map(|v| v["count"].as_u64().unwrap()).collect();
    ensure(counts == [1, 1, 1, 1, 1, 1, 2, 2, 2, 3], || format!("counts {counts:?}"))?;
    let mut rows = 0;
    for w in of_type(&lines, "witness") {
        let w = &w["witness"];
        let g = from_graph6(w["graph6"].as_str().unwrap()).map_err(|e| e.to_string())?;
        produced("census", &g);
        let girth = match w["girth"].as_str().unwrap() {
            "four" => 4,
            "five" => 5,
            other => return Err(format!("girth class {other}")),
        };
        let got = (
            g.n(),
            w["edges"].as_u64().unwrap() as usize,
            degree_signature(&g),
            girth,
            w["aut_order"].as_str().unwrap().parse::<u64>().unwrap(),
            w["orbit_count"].as_u64().unwrap() as usize,
        );
        let want = paper_row(got.0, got.1).ok_or_else(|| format!("no paper row for {got:?}"))?;
        let want = (want.0, want.1, want.2.to_string(), want.3, want.4, want.5);
        ensure(got == want, || format!("row {got:?} != paper {want:?}"))?;
        ensure(is_witness(&matrix(&g), 2, 3), || format!("{} fails the oracle", w["graph6"]))?;
        rows += 1;
    }
    ensure(rows == 15, || format!("{rows} witnesses"))?;
    ensure(secs < 300.0, || format!("took {secs:.1}s"))?;
    Ok(format!("counts 1,1,1,1,1,1,2,2,2,3; 15 rows match incl. aut/orbits; {secs:.2}s"))
}

fn census_16_stretch() -> Check {
    let e = enumerate_witnesses(&SearchConfig::new(16, 2, 3)).map_err(|e| e.to_string())?;
    let counts: Vec<usize> = (14..=16).map(|n| e.count(n)).collect();
    ensure(counts == [1, 1, 2], || format!("counts 14..16 {counts:?}"))?;
    for w in e.witnesses.iter().filter(|w| w.n > 13) {
        produced("census", &w.graph);
        let r = canonicalize(&w.graph);
        let want = paper_row(w.n, w.edges).ok_or("missing paper row")?;
        let got = (w.n, w.edges, degree_signature(&w.graph), w.graph.girth().unwrap(), r.aut_order.to_string(), r.orbit_count);
        ensure(got == (want.0, want.1, want.2.to_string(), want.3, want.4.to_string(), want.5), || {
            format!("{got:?} vs {want:?}")
        })?;
    }
    Ok("orders 14,15,16 give 1,1,2 with matching rows".into())
}

fn named_graphs() -> Check {
    let rows: &[(&str, (usize, usize, &str, usize, u64, usize))] = &[
        ("c4", PAPER_ROWS[0]),
        ("c5", PAPER_ROWS[1]),
        ("subdivided_k23", PAPER_ROWS[2]),
        ("mobius8", PAPER_ROWS[4]),
        ("petersen", PAPER_ROWS[6]),
        ("groetzsch", PAPER_ROWS[9]),
        ("clebsch", PAPER_ROWS[18]),
        ("hoffman_singleton", (50, 175, "7^50", 5, 252000, 1)),
        ("gewirtz", (56, 280, "10^56", 4, 80640, 1)),
    ];
    for &(name, (n, e, d, girth, aut, orbits)) in rows {
        let g = named(name).map_err(|e| e.to_string())?;
        produced(name, &g);
        let r = canonicalize(&g);
        let got = (g.n(), g.edge_count(), degree_signature(&g), g.girth().unwrap(), r.aut_order.to_string(), r.orbit_count);
        ensure(got == (n, e, d.to_string(), girth, aut.to_string(), orbits), || format!("{name}: {got:?}"))?;
        ensure(is_witness(&matrix(&g), 2, 3), || format!("{name} is not a witness"))?;
    }
    let hs = named("hoffman_singleton").unwrap();
    ensure(hs.diameter() == Some(2), || "HS diameter".into())?;
    Ok("9 named graphs match their rows; HS 50/175/7-regular/girth 5/diam 2/252000/1".into())
}

fn cayley_classification() -> Check {
    let (code, lines) = cli(&["cayley", "--group", "2,2,2,2", "--k", "5"]);
    ensure(code == 0, || format!("exit {code}"))?;
    let classes = of_type(&lines, "class");
    ensure(classes.len() == 1, || format!("{} classes on Z_2^4, k=5", classes.len()))?;
    let clebsch = canonical_form(&named("clebsch").unwrap());
    ensure(classes[0]["canonical_form"] == clebsch.as_str(), || "class is not Clebsch".into())?;
    for spec in ["2,2,2", "2,2,2,2,2", "2,2,2,2,2,2"] {
        let (code, lines) = cli(&["cayley", "--group", spec]);
        let total = of_type(&lines, "summary")[0]["classes"].as_u64().unwrap();
        ensure(code == 0 && total == 0, || format!("{spec}: {total} classes"))?;
    }
    let rn = ramanujan_nagell(60).map_err(|e| e.to_string())?;
    ensure(rn == [3, 4, 5, 7, 15], || format!("ramanujan_nagell {rn:?}"))?;
    let feasible: Vec<usize> = (2..200)
        .filter(|&n| prime_power(n).is_some() && n % 2 != 0 && n % 3 != 0)
        .filter(|&n| matches!(counting_feasibility(&AbelianGroup::cyclic(n).unwrap(), None), Verdict::Feasible { .. }))
        .collect();
    ensure(feasible == [5, 13, 25, 41, 61, 113, 181], || format!("feasible {feasible:?}"))?;
    let z13 = enumerate_connection_sets(&AbelianGroup::cyclic(13).unwrap(), 4, 3).map_err(|e| e.to_string())?;
    ensure(!z13.is_empty(), || "no Z_13 witness".into())?;
    for c in &z13 {
        let g = cayley_graph(&c.set).unwrap();
        produced("cayley", &g);
        let r = canonicalize(&g);
        let got = (g.n(), g.edge_count(), degree_signature(&g), g.girth().unwrap(), r.aut_order.to_string(), r.orbit_count);
        ensure(got == (13, 26, "4^13".into(), 4, "52".into(), 1), || format!("Z_13 class {got:?}"))?;
    }
    for spec in ["25", "5,5"] {
        let found = enumerate_connection_sets(&AbelianGroup::parse(spec).unwrap(), 6, 3).map_err(|e| e.to_string())?;
        ensure(found.is_empty(), || format!("{spec}: {} witnesses", found.len()))?;
    }
    let rows = classify_prime_power_orders(199).map_err(|e| e.to_string())?;
    let with_witness: Vec<usize> = rows.iter().filter(|r| r.witness_classes > 0).map(|r| r.order).collect();
    ensure(with_witness == [5, 13], || format!("witness orders {with_witness:?}"))?;
    for spec in ["2,2,2,2", "5", "2,6"] {
        let g = AbelianGroup::parse(spec).unwrap();
        for k in 1..g.order().min(21) {
            for c in enumerate_connection_sets(&g, k, 3).map_err(|e| e.to_string())? {
                produced("cayley", &cayley_graph(&c.set).unwrap());
            }
        }
    }
    Ok(format!(
        "Z_2^4 k=5 -> Clebsch only; Z_2^3, Z_2^5, Z_2^6 -> 0; RN {rn:?}; feasible {feasible:?}; Z_13 -> {} class; Z_25, Z_5^2 -> 0; orders < 200 with witnesses {with_witness:?}",
        z13.len()
    ))
}

fn lemma_4_1() -> Check {
    let t = lemma41_cross_validation(20_240_401, 500);
    ensure(t.samples == 500, || format!("{} samples", t.samples))?;
    ensure((t.agree_b, t.agree_c, t.agree_d) == (500, 500, 500), || format!("{t:?}"))?;
    ensure(t.parity_violations == 0 && t.parity_check_failures == 0, || format!("{t:?}"))?;
    Ok(format!(
        "(b) {}/500, (c) {}/500, (d) {}/500, parity violations 0 (triangle-free {}, diameter 2 {}, K_2,3-free {})",
        t.agree_b, t.agree_c, t.agree_d, t.triangle_free, t.diameter_two, t.k23_free
    ))
}

fn srg_arithmetic() -> Check {
    let ok = |v, k, l, m| srg_integrality(&SrgParams::new(v, k, l, m)).map_err(|e| e.to_string());
    ensure(ok(16, 5, 0, 2)?, || "(16,5,0,2) rejected".into())?;
    ensure(ok(5, 2, 0, 1)?, || "(5,2,0,1) rejected".into())?;
    ensure(!ok(4096, 90, 0, 2)?, || "(4096,90,0,2) accepted".into())?;
    let bracket = regular_witness_bracket(7).map_err(|e| e.to_string())?;
    ensure(bracket == (29, 50), || format!("bracket {bracket:?}"))?;
    let hs = named("hoffman_singleton").unwrap();
    ensure(srg_params(&hs) == Some(SrgParams::new(50, 7, 0, 1)) && hs.n() == bracket.1, || "HS not at the upper extreme".into())?;
    Ok("(16,5,0,2) and (5,2,0,1) accepted, (4096,90,0,2) rejected; bracket(7) = (29,50) with HS = srg(50,7,0,1)".into())
}

fn process_properties() -> Check {
    let start = Instant::now();
    let mut report = Vec::new();
    for (s, t) in [(2, 3), (3, 4)] {
        let mut probe_orders = Vec::new();
        let mut edges = Vec::new();
        for i in 0..100u64 {
            let seed = 9_000 + i;
            let tr = run_process(100, s, t, seed).map_err(|e| e.to_string())?;
            let g = &tr.final_graph;
            let rows = masks(g);
            let tri = g.edges().iter().any(|&(u, v)| rows[u] & rows[v] != 0);
            ensure(!tri, || format!("({s},{t}) seed {seed}: triangle"))?;
            ensure(!has_kst_masks(&rows, s, t, None), || format!("({s},{t}) seed {seed}: K_s,t"))?;
            ensure(tr.verify_certificate(), || format!("({s},{t}) seed {seed}: certificate"))?;
            let unblocked = g.non_edges().into_iter().find(|&(u, v)| !blocked(&rows, u, v, s, t));
            ensure(unblocked.is_none(), || format!("({s},{t}) seed {seed}: {unblocked:?} addable"))?;
            ensure(tr == run_process(100, s, t, seed).unwrap(), || format!("seed {seed} not reproducible"))?;
            probe_orders.push(max_diameter2_subgraph(g, 0, None).order);
            edges.push(g.edge_count());
            produced("process", g);
        }
        let above = probe_orders.iter().filter(|&&o| o > 13).count();
        report.push(format!(
            "({s},{t}): 100/100 free+saturated+reproducible, edges {}..{}, probe orders {}..{} ({above}/100 above 13)",
            edges.iter().min().unwrap(),
            edges.iter().max().unwrap(),
            probe_orders.iter().min().unwrap(),
            probe_orders.iter().max().unwrap()
        ));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 600.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{}; {secs:.1}s", report.join("; ")))
}

fn probe_correctness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for i in 0..50 {
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.1..0.7);
        let g = random_graph(&mut rng, n, p);
        let r = max_diameter2_subgraph(&g, 12, None);
        let brute = brute_force_max_diameter2(&g);
        ensure(r.exact && r.order == brute, || format!("graph {i}: probe {} vs brute force {brute}", r.order))?;
    }
    let c6 = max_diameter2_subgraph(&common_cycle(6), 12, None).order;
    let pet = max_diameter2_subgraph(&named("petersen").unwrap(), 12, None).order;
    ensure((c6, pet) == (3, 10), || format!("C6 {c6}, Petersen {pet}"))?;
    Ok("50/50 random graphs equal brute force; C6 -> 3; Petersen -> 10".into())
}

fn common_cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

fn closure_soundness() -> Check {
    let e = enumerate_witnesses(&SearchConfig::new(13, 2, 3)).map_err(|e| e.to_string())?;
    let seeds: Vec<Graph> = e.witnesses.iter().map(|w| w.graph.clone()).collect();
    let census: BTreeSet<String> = e.witnesses.iter().map(|w| w.graph6.clone()).collect();
    let r = closure(&seeds, ClosureOps::ALL, 2, 3, ClosureBudget::default()).map_err(|e| e.to_string())?;
    ensure(!r.truncated, || "closure truncated".into())?;
    let new: Vec<&String> = r.forms.difference(&census).collect();
    ensure(new.is_empty(), || format!("new graphs {new:?}"))?;
    for f in &r.forms {
        produced("closure", &from_graph6(f).unwrap());
    }
    Ok(format!("closure of the {} census graphs is the census itself ({} iterations)", census.len(), r.iterations))
}

fn other_constructions() {
    for len in [4, 5] {
        for m in enumerate_valid_matchings(len).unwrap() {
            for (k, l) in [(1, 1), (1, 2), (2, 2)] {
                produced("expansion", &cycle_expansion(&ExpansionSpec::uniform(k, l, len, m.clone())).unwrap());
            }
        }
    }
    let m8 = named("mobius8").unwrap();
    for pi in Involution::automorphisms_of(&m8) {
        if (0..8).all(|v| pi.image(v) != v) {
            let q = double_cover_quotient(&m8, &pi).unwrap();
            for h in expand_double_cover(&q, Some(LiftFilter { s: 2, t: 3 })).unwrap() {
                produced("lift", &h);
            }
        }
    }
}

/// Theorem 2.1, Proposition 2.2 and Δ² ≥ n-1 on every produced graph that
/// passes the (2,t)-witness predicate, at the smallest such t (the
/// strongest instance of each inequality).
fn theorem_oracles() -> Check {
    other_constructions();
    let graphs = PRODUCED.lock().unwrap().clone();
    let mut checked = 0;
    for (label, g) in &graphs {
        let m = matrix(g);
        if !(triangle_free(&m) && diameter_at_most_two(&m) && !is_star(&m)) {
            continue;
        }
        let rows = masks_any(g);
        let max_codegree = (0..g.n())
            .flat_map(|u| (u + 1..g.n()).map(move |v| (u, v)))
            .map(|(u, v)| common_count(&rows, u, v))
            .max()
            .unwrap_or(0);
        let t = (max_codegree + 1).max(2);
        let bad = theorem_violations(g, t);
        ensure(bad.is_empty(), || format!("{label} {}: {bad:?} at t={t}", diam2::to_graph6(g)))?;
        checked += 1;
    }
    ensure(checked > 0, || "nothing checked".into())?;
    Ok(format!("{checked} witness graphs from census, named, cayley, closure, expansion, lift and process; 0 violations"))
}

fn masks_any(g: &Graph) -> Vec<Vec<u64>> {
    (0..g.n())
        .map(|u| {
            let mut row = vec![0u64; g.n().div_ceil(64)];
            for v in 0..g.n() {
                if g.has_edge(u, v) {
                    row[v / 64] |= 1 << (v % 64);
                }
            }
            row
        })
        .collect()
}

fn common_count(rows: &[Vec<u64>], u: usize, v: usize) -> usize {
    rows[u].iter().zip(&rows[v]).map(|(a, b)| (a & b).count_ones() as usize).sum()
}

fn main() {
    let criteria: Vec<(&str, bool, fn() -> Check)> = vec![
        ("census reproduction (n <= 13)", false, census_13),
        ("census stretch (n <= 16)", true, census_16_stretch),
        ("named-graph validation", false, named_graphs),
        ("Cayley classification", false, cayley_classification),
        ("Lemma 4.1 cross-validation", false, lemma_4_1),
        ("SRG arithmetic", false, srg_arithmetic),
        ("process properties", false, process_properties),
        ("probe correctness", false, probe_correctness),
        ("closure soundness", false, closure_soundness),
        ("theorem oracles", false, theorem_oracles),
    ];
    let mut failed = 0;
    for (name, stretch, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let tag = if stretch { " (stretch)" } else { "" };
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name}{tag}: {detail} [{secs:.1}s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}{tag}: {why} [{secs:.1}s]");
            }
        }
    }
    println!("SKIP census stretch (n = 19 -> 0): not run, exhaustive search beyond desk-scale time budget");
    println!("SKIP closure stretch (39-vertex rotation class of 536): needs a seed graph from the published corpus");
    if failed > 0 {
        println!("acceptance: {failed} failed");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
