mod common;

use kindep::covering::{self, CoveringParams};
use kindep::graph::{self, construct_worst_case, max_run, Multigraph, RandomChooser, Scripted};
use kindep::loops::{
    alpha_k_bruteforce, alpha_k_min_loops, construct_extremal_loop_multigraph,
    enumerate_loop_realizations,
};
use kindep::omega::{b_value, decrement_sequence, omega};
use kindep::order::{
    apply_decrement, apply_increment, elementary_successors, pseudo_reductions, StepKind,
};
use kindep::{DegreeSequence, SigmaProfile};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::ds;

fn any_multiset(max_len: usize, max_value: u32) -> impl Strategy<Value = DegreeSequence> {
    prop::collection::vec(0..=max_value, 0..=max_len)
        .prop_map(|v| DegreeSequence::new(v.into_iter().map(i64::from)).unwrap())
}

/// A random loopless multigraph; its degree sequence is graphical by construction.
fn any_multigraph(max_n: usize, max_edges: usize) -> impl Strategy<Value = Multigraph> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_edges).prop_map(move |pairs| {
            Multigraph::from_edges(
                n,
                pairs
                    .into_iter()
                    .filter(|(u, v)| u != v)
                    .map(|(u, v)| (u, v, 1)),
            )
            .unwrap()
        })
    })
}

fn any_graphical(max_n: usize, max_edges: usize) -> impl Strategy<Value = DegreeSequence> {
    any_multigraph(max_n, max_edges).prop_map(|g| g.degree_sequence())
}

/// σ difference `σ_after − σ_before` as a sparse map over z ≥ 1.
fn sigma_delta(before: &DegreeSequence, after: &DegreeSequence) -> Vec<(usize, i64)> {
    let (a, b) = (before.sigma(), after.sigma());
    let top = a.values().len().max(b.values().len());
    (0..=top)
        .map(|z| (z, b.get(z) as i64 - a.get(z) as i64))
        .filter(|&(_, d)| d != 0)
        .collect()
}

fn indicator(points: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut acc = std::collections::BTreeMap::new();
    for &(z, c) in points {
        *acc.entry(z).or_insert(0) += c;
    }
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

/// Residual degree of every alive vertex.
fn residual_degrees(g: &Multigraph, alive: &[bool]) -> Vec<u64> {
    let mut deg = vec![0u64; g.order()];
    for (u, v, m) in g.edges() {
        if alive[u] && alive[v] {
            deg[u] += m as u64;
            deg[v] += m as u64;
        }
    }
    deg
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sigma_is_a_conjugate_profile(d in any_multiset(12, 20)) {
        let s = d.sigma();
        prop_assert!(s.values().windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(s.get(0), d.order());
        prop_assert_eq!(s.values()[1..].iter().sum::<usize>() as u64, d.sum());
        prop_assert_eq!(DegreeSequence::from_sigma(&s), d.clone());
        for z in 0..=21u32 {
            prop_assert_eq!(d.mu(z), s.get(z as usize) - s.get(z as usize + 1));
        }
    }

    #[test]
    fn sigma_of_profile_round_trips(mut cols in prop::collection::vec(0usize..10, 1..8)) {
        cols.sort_unstable_by(|a, b| b.cmp(a));
        let p = SigmaProfile::new(cols).unwrap();
        prop_assert_eq!(DegreeSequence::from_sigma(&p).sigma(), p);
    }

    #[test]
    fn multiset_operators_are_pointwise(d in any_multiset(10, 8), e in any_multiset(10, 8)) {
        let u = d.union(&e).unwrap();
        let diff = d.difference(&e);
        for z in 0..=9 {
            prop_assert_eq!(u.mu(z), d.mu(z) + e.mu(z));
            prop_assert_eq!(diff.mu(z), d.mu(z).saturating_sub(e.mu(z)));
        }
    }

    #[test]
    fn singletons_are_not_graphical(x in 1u32..1000) {
        prop_assert!(!DegreeSequence::repeated(x, 1).unwrap().is_graphical());
    }

    #[test]
    fn decrement_and_increment_shift_sigma(e in any_multiset(10, 12), pick in any::<prop::sample::Index>()) {
        prop_assume!(!e.is_empty());
        let values = e.to_vec();
        let x = values[pick.index(values.len())];
        let up = apply_increment(&e, x).unwrap();
        prop_assert_eq!(sigma_delta(&e, &up), vec![(x as usize + 1, 1)]);
        prop_assert_eq!(apply_decrement(&up, x + 1).unwrap(), e.clone());
        if x > 0 {
            let down = apply_decrement(&e, x).unwrap();
            prop_assert_eq!(sigma_delta(&e, &down), vec![(x as usize, -1)]);
        }
    }

    #[test]
    fn elementary_steps_shift_sigma(e in any_multiset(8, 8), k in 1u32..5) {
        for (step, d) in elementary_successors(&e, k) {
            let (x, y) = (step.x as usize, step.y as usize);
            let expected = match step.kind {
                StepKind::Addition => indicator(&[(x, 1), (y, 1)]),
                StepKind::Transfer => indicator(&[(x, -1), (y, 1)]),
            };
            prop_assert_eq!(sigma_delta(&e, &d), expected, "{:?}", step);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn omega_is_a_nontrivial_reduction_or_zero(d in any_graphical(8, 14), k in 1u32..5) {
        prop_assume!(!d.is_trivial(k));
        let o = omega(&d, k).unwrap();
        prop_assert_eq!(o.clone(), omega(&d, k).unwrap());
        prop_assert_eq!(o.order(), d.order() - 1);
        if o.is_all_zero() {
            for e in pseudo_reductions(&d, k).unwrap() {
                prop_assert!(e.is_trivial(k), "{} has nontrivial pseudo-reduction {}", d, e);
            }
        } else {
            prop_assert!(o.is_graphical());
            prop_assert!(!o.is_trivial(k));
            prop_assert_eq!(o.sum(), d.sum() - 2 * d.max().unwrap() as u64);
        }
    }

    #[test]
    fn decrement_trace_leaves_the_decremented_value(d in any_graphical(8, 14), k in 1u32..5) {
        prop_assume!(!d.is_trivial(k));
        let trace = decrement_sequence(&d, k).unwrap();
        prop_assert_eq!(trace.clone().a, decrement_sequence(&d, k).unwrap().a);
        if !trace.degenerate {
            let states = trace.intermediates();
            for i in 0..trace.max as usize {
                prop_assert!(states[i + 1].contains(trace.a[i] - 1));
            }
        }
    }

    #[test]
    fn max_run_deletes_residual_maxima(
        g in any_multigraph(9, 20),
        k in 1u32..5,
        seed in any::<u64>(),
    ) {
        let run = max_run(&g, k, &mut RandomChooser(ChaCha8Rng::seed_from_u64(seed))).unwrap();
        let mut alive = vec![true; g.order()];
        for del in &run.log {
            let deg = residual_degrees(&g, &alive);
            let top = (0..g.order()).filter(|&v| alive[v]).map(|v| deg[v]).max().unwrap();
            prop_assert!(del.degree >= k);
            prop_assert_eq!(del.degree as u64, deg[del.vertex]);
            prop_assert_eq!(del.degree as u64, top);
            alive[del.vertex] = false;
        }
        let deg = residual_degrees(&g, &alive);
        prop_assert!((0..g.order()).filter(|&v| alive[v]).all(|v| deg[v] < k as u64));
        prop_assert_eq!(run.independent_set, (0..g.order()).filter(|&v| alive[v]).collect::<Vec<_>>());
    }

    #[test]
    fn covering_profiles_are_consistent(v in 6u64..60, kappa in 3u64..20, lambda in 1u64..3, extra in 0u64..5) {
        prop_assume!(kappa < v);
        let params = CoveringParams::new(v, kappa, lambda).unwrap();
        let (r, d) = params.replication();
        let z = covering::schonheim(&params) + extra;
        let report = covering::excess_profile(&params, z).unwrap();
        prop_assert_eq!(report.degrees.order() as u64, v);
        prop_assert_eq!(report.degrees.sum(), v * d + (kappa * z - r * v) * (kappa - 1));
        prop_assert_eq!(report.degrees.sum() % 2, 0);
        let (bound, _) = covering::covering_lower_bound(&params, z).unwrap();
        prop_assert!(bound <= v.max(z));
    }

    #[test]
    fn zero_degree_vertex_adds_one(d in prop::collection::vec(1u32..8, 0..8), k in 1u32..6) {
        let mut d = d;
        if d.iter().sum::<u32>() % 2 == 1 {
            d.push(1);
        }
        let d = DegreeSequence::new(d.into_iter().map(i64::from)).unwrap();
        let with_zero = d.union(&DegreeSequence::zeros(1)).unwrap();
        prop_assert_eq!(
            alpha_k_min_loops(&with_zero, k).unwrap(),
            alpha_k_min_loops(&d, k).unwrap() + 1
        );
        let g = construct_extremal_loop_multigraph(&with_zero, k).unwrap();
        prop_assert_eq!(alpha_k_bruteforce(&g, k).unwrap(), alpha_k_min_loops(&with_zero, k).unwrap());
    }
}

#[test]
fn witness_survivors_match_b() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 200 {
        use rand::Rng;
        let n = rng.gen_range(2..=8);
        let values: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=7)).collect();
        let d = DegreeSequence::new(values).unwrap();
        if !d.is_graphical() {
            continue;
        }
        let k = rng.gen_range(1..=4);
        let w = construct_worst_case(&d, k).unwrap();
        let run = max_run(&w.graph, k, &mut Scripted::new(w.script.deletions.clone())).unwrap();
        assert_eq!(
            run.independent_set.len(),
            b_value(&d, k).unwrap(),
            "{d}, k={k}"
        );
        assert_eq!(w.b, run.independent_set.len());
        checked += 1;
    }
}

#[test]
fn no_improvement_once_replication_reaches_block_size() {
    for kappa in 5..=12u64 {
        let lo = (kappa - 1).pow(2) + 2;
        for v in (lo..lo + 40).step_by(3) {
            let params = CoveringParams::new(v, kappa, 1).unwrap();
            assert!(params.replication().0 >= kappa);
            let sch = covering::schonheim(&params);
            let (bound, _) = covering::covering_lower_bound(&params, sch).unwrap();
            assert_eq!(bound, sch, "κ={kappa}, v={v}");
        }
    }
}

#[test]
fn known_coverings_are_not_ruled_out() {
    // four of five points per block, three blocks; the Fano plane; the affine plane of order 3
    for (v, kappa, z) in [(5, 4, 3), (7, 3, 7), (9, 3, 12)] {
        let params = CoveringParams::new(v, kappa, 1).unwrap();
        assert!(
            !covering::evaluate(&params, z).unwrap().contradiction,
            "({v},{kappa},1) z={z}"
        );
    }
}

#[test]
fn every_loop_realization_meets_the_formula() {
    for d in [ds(&[1, 1, 2, 3, 3]), ds(&[2, 2, 4]), ds(&[1, 3, 3, 5])] {
        for g in enumerate_loop_realizations(&d).unwrap() {
            for k in 1..=4 {
                assert!(alpha_k_bruteforce(&g, k).unwrap() >= alpha_k_min_loops(&d, k).unwrap());
            }
        }
    }
}

/// The survivors need not be inclusion-maximal: after deleting 0, 1 and 2
/// in turn, vertex 0 could rejoin `{3}` since they are not adjacent.
#[test]
fn max_output_can_miss_an_early_deletion() {
    let g =
        Multigraph::from_edges(4, [(0, 1, 3), (0, 2, 2), (1, 2, 1), (1, 3, 1), (2, 3, 1)]).unwrap();
    let run = max_run(&g, 1, &mut Scripted::new(vec![0, 1, 2])).unwrap();
    assert_eq!(run.independent_set, vec![3]);
    assert_eq!(g.multiplicity(0, 3), 0);
}

#[test]
fn rewiring_preserves_degrees() {
    let d = ds(&[1, 2, 2, 4, 4, 5, 6]);
    let g = graph::realize(&d).unwrap();
    for seed in 0..20 {
        let h = graph::rewire(&g, 50, &mut ChaCha8Rng::seed_from_u64(seed));
        assert_eq!(h.degrees(), g.degrees());
    }
}
