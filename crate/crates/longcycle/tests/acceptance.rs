//! Acceptance gate: one test per criterion, each printing a single
//! PASS line with its headline numbers (visible with `--nocapture`; the
//! per-test ok/FAILED line doubles as the pass/fail verdict).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use longcycle::cert::{solve_to_json, to_doc, verify_certificate};
use longcycle::cycles::{find_disjoint_long_pair_bruteforce, min_transversal_bruteforce};
use longcycle::fixtures;
use longcycle::graph::{gen_complete, gen_gnp, Graph, VertexMask, VertexSet};
use longcycle::paths::{find_path, two_disjoint_paths_or_cut, MengerResult, PathQuery};
use longcycle::solver::{solve, Budget, CertificateKind};
use longcycle::sweep::{connected_graphs, run_sweep, SweepConfig, SweepMode};

const ELLS: [usize; 3] = [3, 4, 5];

/// The randomized corpus: 2,000 G(n,p) samples cycling n through 8..=14 and
/// p through {0.15, 0.25, 0.35}, seeded by the sample index.
fn random_corpus() -> impl Iterator<Item = (usize, Graph)> {
    let ps = [0.15f64, 0.25, 0.35];
    (0..2000usize).map(move |i| {
        let n = 8 + (i % 7);
        let p = ps[(i / 7) % 3];
        (n, gen_gnp(n, p, i as u64).expect("valid p"))
    })
}

fn is_valid(g: &Graph, cert: &longcycle::solver::Certificate) -> bool {
    verify_certificate(g, &to_doc(cert, false)).is_valid()
}

#[test]
fn criterion_1_exhaustive_soundness() {
    let mut instances = 0usize;
    for n in 1..=7 {
        for g in connected_graphs(n) {
            for ell in ELLS {
                let cert = solve(&g, ell);
                assert!(is_valid(&g, &cert), "invalid certificate: n={n} ell={ell} {g:?}");
                assert!(!cert.trace.anomaly, "anomaly: n={n} ell={ell} {g:?}");
                // Used by criterion 6: this corpus never enters case A, so
                // the trace scan there only needs the randomized corpus.
                assert!(
                    !cert.trace.branch.label().starts_with("case_a"),
                    "unexpected case-A entry at n={n}"
                );
                instances += 1;
            }
        }
    }
    println!(
        "criterion 1 PASS: {instances} exhaustive instances (connected n <= 7, ell in {{3,4,5}}) \
         all verified, zero anomalies"
    );
}

#[test]
fn criterion_2_exhaustive_obligation() {
    let mut checked = 0usize;
    for n in 1..=7 {
        for g in connected_graphs(n) {
            for ell in ELLS {
                if find_disjoint_long_pair_bruteforce(&g, ell).is_some() {
                    continue;
                }
                let budget = Budget::new(ell).value;
                match solve(&g, ell).kind {
                    CertificateKind::Transversal(x) => {
                        assert!(
                            x.len() <= budget,
                            "transversal over budget: n={n} ell={ell} {g:?}"
                        );
                    }
                    CertificateKind::DisjointPair(..) => {
                        panic!("pair despite oracle absence: n={n} ell={ell} {g:?}")
                    }
                }
                checked += 1;
            }
        }
    }
    println!(
        "criterion 2 PASS: {checked} pair-free exhaustive instances all got transversals \
         within floor((3*ell+7)/2)"
    );
}

#[test]
fn criterion_3_tightness_of_complete_graphs() {
    for ell in ELLS {
        let k = 2 * ell - 1;
        let g = gen_complete(k);
        let budget = Budget::new(ell).value;
        let (size, _) = min_transversal_bruteforce(&g, ell, budget)
            .unwrap_or_else(|| panic!("K_{k} has no transversal within budget"));
        assert_eq!(size, ell, "K_{k} minimum transversal");
        assert!(
            find_disjoint_long_pair_bruteforce(&g, ell).is_none(),
            "K_{k} admits a disjoint pair"
        );
    }
    println!(
        "criterion 3 PASS: min transversal of K5/K7/K9 is exactly 3/4/5 and none has \
         two disjoint long cycles"
    );
}

#[test]
fn criterion_4_randomized_soundness() {
    let mut oracle_checked = 0usize;
    let mut total = 0usize;
    for (n, g) in random_corpus() {
        for ell in ELLS {
            let cert = solve(&g, ell);
            assert!(is_valid(&g, &cert), "invalid certificate: n={n} ell={ell} {g:?}");
            assert!(!cert.trace.anomaly, "anomaly: n={n} ell={ell} {g:?}");
            total += 1;
            if n > 10 {
                continue;
            }
            let pair = find_disjoint_long_pair_bruteforce(&g, ell);
            match &cert.kind {
                CertificateKind::DisjointPair(..) => {
                    assert!(pair.is_some(), "pair not confirmed: n={n} ell={ell} {g:?}");
                }
                CertificateKind::Transversal(x) => {
                    let budget = Budget::new(ell).value;
                    assert!(x.len() <= budget);
                    let (min_size, _) = min_transversal_bruteforce(&g, ell, budget)
                        .expect("within-budget transversal exists");
                    assert!(min_size <= x.len());
                }
            }
            if pair.is_none() {
                assert!(
                    matches!(cert.kind, CertificateKind::Transversal(_)),
                    "pair despite oracle absence: n={n} ell={ell} {g:?}"
                );
            }
            oracle_checked += 1;
        }
    }
    println!(
        "criterion 4 PASS: {total} randomized instances (2000 samples x 3 ells) all verified, \
         zero anomalies; {oracle_checked} agreed with brute force (n <= 10)"
    );
}

/// All paths satisfying the query, by exhaustive DFS.
fn all_query_paths(g: &Graph, q: &PathQuery) -> Vec<Vec<usize>> {
    let internal = g
        .vertices()
        .difference(q.mask.forbidden)
        .difference(q.source)
        .difference(q.target)
        .difference(q.forbidden_internal);
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn dfs(
        g: &Graph,
        q: &PathQuery,
        internal: VertexSet,
        used: VertexSet,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = *stack.last().unwrap();
        for u in g.neighbors(v).iter() {
            if q.target.contains(u) {
                let mut p = stack.clone();
                p.push(u);
                out.push(p);
            } else if internal.contains(u) && !used.contains(u) {
                let mut used2 = used;
                used2.insert(u);
                stack.push(u);
                dfs(g, q, internal, used2, stack, out);
                stack.pop();
            }
        }
    }
    for s in q.source.iter() {
        stack.push(s);
        dfs(g, q, internal, VertexSet::singleton(s), &mut stack, &mut out);
        stack.pop();
    }
    out
}

#[test]
fn criterion_5_menger_engine_duality() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let mut tags = [0usize; 3]; // [two_paths, cut_vertex, no_path]
    for i in 0..500usize {
        let g = gen_gnp(12, 0.3, i as u64).unwrap();
        // A random query: disjoint source/target of 1-2 vertices each, a
        // small random mask, and a random forbidden-internal set.
        let mut perm: Vec<usize> = (0..12).collect();
        for j in (1..perm.len()).rev() {
            perm.swap(j, rng.gen_range(0..=j));
        }
        let s_size = rng.gen_range(1..=2);
        let t_size = rng.gen_range(1..=2);
        let m_size = rng.gen_range(0..=3);
        let source = VertexSet::from_iter(perm[..s_size].iter().copied());
        let target = VertexSet::from_iter(perm[s_size..s_size + t_size].iter().copied());
        let mask_set =
            VertexSet::from_iter(perm[s_size + t_size..s_size + t_size + m_size].iter().copied());
        let mut forbidden_internal = VertexSet::EMPTY;
        for &v in &perm[s_size + t_size + m_size..] {
            if rng.gen::<f64>() < 0.2 {
                forbidden_internal.insert(v);
            }
        }
        let q = PathQuery {
            source,
            target,
            mask: VertexMask::of(mask_set),
            forbidden_internal,
        };
        let paths = all_query_paths(&g, &q);
        match two_disjoint_paths_or_cut(&g, &q).expect("query is well formed") {
            MengerResult::TwoPaths(p1, p2) => {
                assert!(q.admits(&g, &p1) && q.admits(&g, &p2), "query {i}");
                assert!(p1.vertex_set().is_disjoint(p2.vertex_set()), "query {i}");
                assert!(!paths.is_empty(), "query {i}");
                tags[0] += 1;
            }
            MengerResult::CutVertex(z) => {
                assert!(!paths.is_empty(), "query {i}: cut vertex but no path");
                for p in &paths {
                    assert!(p.contains(&z), "query {i}: path {p:?} avoids cut vertex {z}");
                }
                tags[1] += 1;
            }
            MengerResult::NoPath => {
                assert!(paths.is_empty(), "query {i}: paths exist: {paths:?}");
                tags[2] += 1;
            }
        }
    }
    println!(
        "criterion 5 PASS: 500 path queries — {} two-path, {} cut-vertex (all separating), \
         {} no-path, all matching exhaustive enumeration",
        tags[0], tags[1], tags[2]
    );
}

#[test]
fn criterion_6_first_claim_shortest_special_paths() {
    // Case A is unreachable on the n <= 7 exhaustive corpus (asserted in
    // criterion 1), so the case-A traces with n <= 12 all come from the
    // randomized corpus. Case A needs a base cycle longer than the budget
    // plus a rich cycle structure on the few remaining vertices, so the
    // small-n corpus may produce no such trace at all; the fixture
    // instances are checked as well so the property is never tested
    // vacuously.
    let mut corpus_traces = 0usize;
    let mut fixture_traces = 0usize;
    let corpus = random_corpus()
        .filter(|(n, _)| *n <= 12)
        .flat_map(|(n, g)| ELLS.map(|ell| (n, g.clone(), ell, false)));
    let fixture_instances = fixtures::all()
        .into_iter()
        .map(|f| (f.graph.n(), f.graph, f.ell, true));
    for (n, g, ell, from_fixture) in corpus.chain(fixture_instances) {
        {
            let cert = solve(&g, ell);
            let Some(a) = &cert.trace.case_a else { continue };
            let c = cert.trace.c.as_ref().expect("case A records C");
            let c_set = c.vertex_set();
            if from_fixture {
                fixture_traces += 1;
            } else {
                corpus_traces += 1;
            }
            // The three segments: E1, E2 and the covering segment C_D.
            let segs = [&a.e1, &a.e2, &a.cd];
            for i in 0..3 {
                for j in (i + 1)..3 {
                    let (si, sj) = (segs[i], segs[j]);
                    if si.is_empty() || sj.is_empty() {
                        continue;
                    }
                    let q = PathQuery {
                        source: VertexSet::from_iter(si.iter().copied()),
                        target: VertexSet::from_iter(sj.iter().copied()),
                        mask: VertexMask::NONE,
                        forbidden_internal: c_set,
                    };
                    if let Some(p) = find_path(&g, &q) {
                        assert!(
                            p.vertices().len() - 1 >= ell - 1,
                            "short special path between segments {i} and {j}: \
                             n={n} ell={ell} path={:?} {g:?}",
                            p.vertices()
                        );
                    }
                }
            }
        }
    }
    assert!(fixture_traces > 0, "no case-A traces found; the check was vacuous");
    println!(
        "criterion 6 PASS: {corpus_traces} case-A traces from the n <= 12 corpus plus \
         {fixture_traces} from fixtures; every path between distinct segments off the \
         base cycle has length >= ell - 1"
    );
}

#[test]
fn criterion_7_branch_coverage_of_pair_constructors() {
    let mut seen = Vec::new();
    for f in fixtures::all() {
        let cert = solve(&f.graph, f.ell);
        assert!(!cert.trace.anomaly, "{}: anomaly", f.name);
        assert_eq!(cert.trace.branch.label(), f.expect, "{}: wrong branch", f.name);
        match &cert.kind {
            CertificateKind::DisjointPair(c1, c2) => {
                assert!(c1.len() >= f.ell && c2.len() >= f.ell);
            }
            other => panic!("{}: expected a pair, got {other:?}", f.name),
        }
        assert!(is_valid(&f.graph, &cert), "{}: invalid pair", f.name);
        seen.push(f.expect);
    }
    assert_eq!(seen.len(), 10);
    println!(
        "criterion 7 PASS: 10 fixture instances drive all pair-emitting branches \
         ({}), each emitting a verified disjoint pair",
        seen.join(", ")
    );
}

#[test]
fn criterion_8_determinism() {
    // Certificates: repeated solves serialize identically (trace included).
    let mut graphs: Vec<Graph> = (0..20).map(|s| gen_gnp(11, 0.3, s).unwrap()).collect();
    graphs.push(gen_complete(7));
    graphs.extend(fixtures::all().into_iter().map(|f| f.graph));
    for g in &graphs {
        for ell in ELLS {
            assert_eq!(solve_to_json(g, ell, true), solve_to_json(g, ell, true));
        }
    }
    // Sweep reports: identical configs render byte-identical reports.
    for cfg in [
        SweepConfig {
            ells: vec![3, 4, 5],
            mode: SweepMode::Random {
                count: 40,
                n: 10,
                p: 0.25,
                seed: 99,
            },
            oracle: true,
        },
        SweepConfig {
            ells: vec![3],
            mode: SweepMode::Exhaustive { max_n: 5 },
            oracle: false,
        },
    ] {
        assert_eq!(run_sweep(&cfg).render(), run_sweep(&cfg).render());
    }
    println!(
        "criterion 8 PASS: repeated solves and sweeps produce byte-identical \
         certificates and reports"
    );
}
