//! Property suites: serialization, canonical forms, counting, detection,
//! the incremental check, the solver's independent methods and the
//! embedding machinery.

mod common;

use btfree::audit::{self, GoodSet};
use btfree::detect::{self, contains_bt, contains_bt_oracle};
use btfree::embed::{self, Certification, FSpec, ZPolicy};
use btfree::graph6::{self, Record};
use btfree::solver::{self, canonical_form, SearchConfig, Symmetry};
use btfree::{BipartiteGraph, Exec, Graph, VertexSet};
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn brute_good_sets(g: &Graph, t: usize) -> Vec<GoodSet> {
    fn subsets(n: usize, t: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            subsets(n, t, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    subsets(g.n(), t, 0, &mut Vec::new(), &mut all);
    all.into_iter()
        .filter_map(|members| {
            let d = g.common_neighbors(&members).len();
            (d > t).then_some(GoodSet { members, codegree: d })
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn graph6_and_sparse6_round_trip(n in 0usize..80, p in 0.0f64..1.0, seed: u64) {
        let g = gnp(&mut rng(seed), n, p);
        prop_assert_eq!(&graph6::decode_graph6(&graph6::encode_graph6(&g)).unwrap(), &g);
        prop_assert_eq!(&graph6::decode_sparse6(&graph6::encode_sparse6(&g)).unwrap(), &g);
    }

    #[test]
    fn bipartite_sidecar_round_trip(a in 1usize..12, b in 1usize..12, p in 0.0f64..1.0, seed: u64) {
        let g = bipartite_gnp(&mut rng(seed), a, b, p);
        let text = graph6::encode_bipartite(&g);
        let recs = graph6::parse_stream(&text).unwrap();
        prop_assert_eq!(recs, vec![Record::Bipartite(g)]);
    }

    #[test]
    fn canonical_form_is_relabelling_invariant(n in 1usize..12, p in 0.0f64..1.0, seed: u64) {
        let mut r = rng(seed);
        let g = gnp(&mut r, n, p);
        let h = g.relabel(&random_perm(&mut r, n));
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        let canon = g.relabel(&solver::canonical_labeling(&g));
        prop_assert_eq!(canon.edge_count(), g.edge_count());
    }

    #[test]
    fn codegree_shrinks_with_larger_sets(n in 2usize..40, p in 0.1f64..0.9, seed: u64) {
        let mut r = rng(seed);
        let g = gnp(&mut r, n, p);
        let perm = random_perm(&mut r, n);
        let mut prev = n;
        for k in 1..=n.min(6) {
            let s = VertexSet::from_iter(n, perm[..k].iter().copied()).unwrap();
            let d = g.codegree(&s).unwrap();
            prop_assert!(d <= prev);
            prev = d;
        }
    }

    #[test]
    fn c4_count_matches_brute_force(n in 0usize..=12, p in 0.0f64..1.0, seed: u64) {
        let g = gnp(&mut rng(seed), n, p);
        prop_assert_eq!(g.count_c4(), brute_c4(&g));
    }

    #[test]
    fn detector_matches_oracle(n in 2usize..=10, p in 0.1f64..0.9, t in 1usize..=3, seed: u64) {
        let g = gnp(&mut rng(seed), n, p);
        let found = contains_bt(&g, t);
        prop_assert_eq!(found.is_some(), contains_bt_oracle(&g, t));
        if let Some(cert) = found {
            prop_assert_eq!(cert.t(), t);
            prop_assert!(cert.validate(&g).is_ok());
        }
        prop_assert_eq!(
            detect::contains_bt_with(&g, t, Exec::Sequential).is_some(),
            detect::contains_bt_with(&g, t, Exec::Parallel).is_some()
        );
    }

    #[test]
    fn incremental_check_matches_full_detection(n in 3usize..=12, t in 1usize..=3, seed: u64) {
        let mut r = rng(seed);
        let order = {
            let mut pairs: Vec<(usize, usize)> = (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
            rand::seq::SliceRandom::shuffle(pairs.as_mut_slice(), &mut r);
            pairs
        };
        let mut g = Graph::empty(n);
        for (u, v) in order {
            let quick = solver::incremental_free_check(&g, (u, v), t).unwrap();
            let h = g.with_edge(u, v).unwrap();
            prop_assert_eq!(quick, detect::is_bt_free(&h, t));
            if quick {
                g = h;
            }
        }
    }

    #[test]
    fn good_sets_match_brute_force(n in 2usize..=11, p in 0.2f64..0.9, t in 1usize..=3, seed: u64) {
        let g = gnp(&mut rng(seed), n, p);
        let fast = audit::enumerate_good_sets(&g, t);
        prop_assert_eq!(&fast, &brute_good_sets(&g, t));
        let sum: u64 = fast.iter().map(|s| (s.codegree * (s.codegree - 1)) as u64).sum();
        prop_assert_eq!(audit::good_set_sum_with(&g, t, Exec::Parallel), sum);
        prop_assert_eq!(audit::good_set_sum_with(&g, t, Exec::Sequential), sum);
    }

    #[test]
    fn audit_inequalities_on_free_graphs(n in 4usize..=18, t in 2usize..=3, seed: u64) {
        let mut r = rng(seed);
        let target = n * n;
        let g = random_bt_free(&mut r, n, t, target);
        let reports = audit::run_checks(
            &g,
            None,
            t,
            &[audit::Check::Lemma21, audit::Check::Lemma22, audit::Check::PerEdge, audit::Check::Spider],
        ).unwrap();
        for rep in reports {
            prop_assert!(rep.holds, "{:?}", rep);
        }
    }

    #[test]
    fn embedding_is_sound(a in 2usize..9, b in 2usize..9, p in 0.3f64..1.0, k in 1usize..=4, seed: u64) {
        let mut r = rng(seed);
        let g = bipartite_gnp(&mut r, a, b, p);
        let tree = random_tree(&mut r, k);
        let cond = embed::check_embed_condition(&g, k);
        match embed::embed_k2_tree(&g, &tree) {
            Ok(map) => {
                prop_assert!(cond.holds);
                prop_assert!(map.validate(g.graph()).is_ok());
                prop_assert_eq!(map.x_image.len(), k);
                prop_assert_eq!(map.y_image.len(), k);
            }
            Err(_) => prop_assert!(!cond.holds || g.graph().edge_count() == 0),
        }
        match embed::certify(&g, &tree) {
            Certification::Embedded { orientation, map } => {
                let host = match orientation {
                    embed::Orientation::Standard => g.clone(),
                    embed::Orientation::Swapped => g.swapped(),
                };
                prop_assert!(map.validate(host.graph()).is_ok());
            }
            Certification::Free { traces } => {
                prop_assert_eq!(traces.len(), 2);
                for ot in traces {
                    prop_assert_eq!(ot.trace.residual_edges, 0);
                    prop_assert!(ot.trace.ledger_holds());
                    prop_assert!(ot.trace.ledger_lower_initial <= ot.trace.ledger_size);
                }
            }
        }
    }

    #[test]
    fn deletion_ledger_holds(a in 1usize..10, b in 1usize..10, p in 0.0f64..1.0, t in 1usize..=4, strict: bool, seed: u64) {
        let g = bipartite_gnp(&mut rng(seed), a, b, p);
        let policy = if strict { ZPolicy::Strict } else { ZPolicy::Permissive };
        let (residual, trace) = embed::deletion_process_with(&g, t, policy);
        prop_assert!(trace.ledger_holds(), "{:?}", trace);
        prop_assert_eq!(residual.graph().edge_count(), trace.residual_edges);
        if trace.residual_edges > 0 {
            prop_assert!(embed::check_embed_condition_with(&residual, t, policy).holds);
        } else {
            prop_assert_eq!(trace.ledger_lower, trace.ledger_lower_initial);
        }
    }

    #[test]
    fn fspec_replay_counts(ops in proptest::collection::vec((0usize..64, 0usize..3), 0..6)) {
        // every operation targets an edge of the pattern built so far
        let mut spec = FSpec::default();
        for (pick, r) in ops {
            let edges = spec.replay().unwrap().edges;
            let (a, b) = edges[pick % edges.len()];
            spec.ops.push(embed::FOp { a, b, r });
        }
        let shape = spec.replay().unwrap();
        prop_assert_eq!(shape.a_count, 1 + spec.ops.len());
        prop_assert_eq!(shape.b_count, 1 + spec.ops.iter().map(|o| 1 + o.r).sum::<usize>());
        prop_assert_eq!(shape.edges.len(), 1 + spec.ops.iter().map(|o| 3 + 2 * o.r).sum::<usize>());
        let f = embed::build_f(&spec).unwrap();
        prop_assert_eq!(f.graph().edge_count(), shape.edges.len());
    }
}

/// Three independent ways to the same extremal numbers: orderly search,
/// labelled search, and exhaustive enumeration of labelled graphs.
#[test]
fn solver_methods_agree_with_enumeration() {
    let off = SearchConfig {
        symmetry: Symmetry::Off,
        ..SearchConfig::default()
    };
    for n in 2..=6 {
        for t in 1..=3 {
            let on = solver::exact_turan(n, t, &SearchConfig::default()).unwrap();
            let lab = solver::exact_turan(n, t, &off).unwrap();
            let brute = brute_max_edges(n, |g| detect::is_bt_free(g, t), |_, _| true);
            assert_eq!(on.value, brute, "n={n} t={t}");
            assert_eq!(lab.value, brute, "n={n} t={t}");
            let w = on.witness_graph();
            assert_eq!(w.edge_count(), brute);
            assert!(detect::is_bt_free(&w, t));
        }
    }
}

#[test]
fn bipartite_solver_agrees_with_enumeration() {
    for n in 2..=7 {
        for t in 1..=2 {
            let r = solver::exact_turan_bipartite(n, t, &SearchConfig::default()).unwrap();
            let brute = (1..=n / 2)
                .map(|x| brute_max_edges(n, |g| detect::is_bt_free(g, t), |u, v| u < x && v >= x))
                .max()
                .unwrap_or(0);
            assert_eq!(r.value, brute, "n={n} t={t}");
            let (x, _) = r.parts.unwrap();
            let w = BipartiteGraph::with_prefix(r.witness_graph(), x).unwrap();
            assert!(detect::is_bt_free(w.graph(), t));
        }
    }
}
