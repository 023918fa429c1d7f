use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bemsched::partition::overlap_matrix;
use bemsched::scenarios::{gen_bus, gen_interposer, gen_random, gen_srr};
use bemsched::sched::is_approx_square;
use bemsched::{
    assign_rows, assign_task_lists, lpt_schedule, part_schedule, partition_external, redistribution_cost, simulate,
};
use bemsched::{MachineModel, Object, StrategyKind, TaskSpec};

fn objects(edges: &[u64]) -> Vec<Object> {
    edges.iter().enumerate().map(|(i, &e)| Object::new(i, e)).collect()
}

fn tasks(objs: &[Object]) -> Vec<TaskSpec> {
    objs.iter().map(TaskSpec::for_object).collect()
}

fn edge_lists() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..5000, 1..40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn partition_conserves_edges(edges in edge_lists(), procs in 1usize..64) {
        let objs = objects(&edges);
        let map = partition_external(&objs, procs).unwrap();
        map.validate(&objs).unwrap();
        for (i, o) in objs.iter().enumerate() {
            let col: u64 = (0..procs).map(|p| map.owned(p, i)).sum();
            prop_assert_eq!(col, o.edges);
        }
    }

    #[test]
    fn small_objects_stay_whole(edges in edge_lists(), procs in 1usize..64) {
        let objs = objects(&edges);
        let total: u64 = edges.iter().sum();
        let map = partition_external(&objs, procs).unwrap();
        for (i, &e) in edges.iter().enumerate() {
            if e * procs as u64 <= total {
                prop_assert_eq!(map.partition_count(i), 1);
            }
        }
    }

    #[test]
    fn partition_load_is_at_most_twice_the_target(edges in edge_lists(), procs in 1usize..64) {
        let objs = objects(&edges);
        let total: u64 = edges.iter().sum();
        let map = partition_external(&objs, procs).unwrap();
        // max_load <= 2 * total / procs
        prop_assert!(map.max_load() * procs as u64 <= 2 * total);
    }

    #[test]
    fn assignment_is_a_bijection(n in square_matrix()) {
        let a = assign_rows(&n);
        let mut rows = a.process_to_row.clone();
        rows.sort_unstable();
        prop_assert_eq!(rows, (0..n.len()).collect::<Vec<_>>());
        for (p, &r) in a.process_to_row.iter().enumerate() {
            prop_assert_eq!(a.overlap[p], n[p][r]);
        }
        let inv = a.row_to_process();
        for (p, &r) in a.process_to_row.iter().enumerate() {
            prop_assert_eq!(inv[r], p);
        }
    }

    #[test]
    fn assignment_follows_row_relabelling(n in distinct_matrix(), seed in any::<u64>()) {
        let procs = n.len();
        let mut perm: Vec<usize> = (0..procs).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        // Row r of the original is row perm[r] of the relabelled matrix.
        let mut m = vec![vec![0; procs]; procs];
        for p in 0..procs {
            for r in 0..procs {
                m[p][perm[r]] = n[p][r];
            }
        }
        let a = assign_rows(&n);
        let b = assign_rows(&m);
        for p in 0..procs {
            prop_assert_eq!(b.process_to_row[p], perm[a.process_to_row[p]]);
        }
    }

    #[test]
    fn message_count_is_bounded(seed in any::<u64>(), n in 1usize..30, procs in 1usize..24) {
        let s = gen_random(n, 10..=3000, seed).unwrap();
        let t = s.tasks();
        let res = part_schedule(&t, procs, Some(20)).unwrap();
        let map = partition_external(&s.objects, procs).unwrap();
        let a = assign_task_lists(&res.schedule, &t, &map).unwrap();
        let comm = redistribution_cost(&a, &res.schedule, &res.molded(&t), &map, &MachineModel::default()).unwrap();
        let p = procs as u64;
        prop_assert!(comm.messages <= p * (p - 1));
        prop_assert!(comm.edges_moved <= s.total_edges());
    }

    #[test]
    fn part_schedule_never_worsens_lpt(edges in edge_lists(), procs in 1usize..80, cutoff in 1u32..30) {
        let objs = objects(&edges);
        let t = tasks(&objs);
        let lpt = lpt_schedule(&t, procs, None).unwrap();
        for c in [Some(cutoff), None] {
            let res = part_schedule(&t, procs, c).unwrap();
            prop_assert!(res.c_max <= lpt.c_max);
            res.schedule.validate(&res.molded(&t)).unwrap();
            let budget: usize = res.procs_per_task.iter().filter(|&&q| q > 1).map(|&q| q as usize).sum();
            prop_assert!(budget <= procs);
            if let Some(c) = c {
                for &q in res.procs_per_task.iter().filter(|&&q| q > c) {
                    prop_assert!(is_approx_square(q), "P_i = {} above cutoff {}", q, c);
                }
            }
        }
    }

    #[test]
    fn scheduling_is_deterministic(edges in edge_lists(), procs in 1usize..80) {
        let t = tasks(&objects(&edges));
        prop_assert_eq!(part_schedule(&t, procs, Some(20)).unwrap(), part_schedule(&t, procs, Some(20)).unwrap());
    }
}

fn square_matrix() -> impl Strategy<Value = Vec<Vec<u64>>> {
    (1usize..10).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0u64..20, n), n))
}

/// Square matrices whose entries are pairwise distinct, so no ties arise.
fn distinct_matrix() -> impl Strategy<Value = Vec<Vec<u64>>> {
    (1usize..10, any::<u64>()).prop_map(|(n, seed)| {
        let mut values: Vec<u64> = (0..(n * n) as u64).collect();
        values.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        values.chunks(n).map(|c| c.to_vec()).collect()
    })
}

#[test]
fn greedy_overlap_beats_identity_and_random_assignments() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases = [(gen_bus(5).unwrap(), vec![20]), (gen_interposer(), vec![40, 160, 640]), (gen_srr(None).unwrap(), vec![40, 320])];
    for (s, procs) in cases {
        let t = s.tasks();
        for p in procs {
            let res = part_schedule(&t, p, Some(20)).unwrap();
            let map = partition_external(&s.objects, p).unwrap();
            let n = overlap_matrix(&res.schedule, &res.molded(&t), &map).unwrap();
            let greedy = assign_rows(&n).total_overlap();
            let identity: u64 = (0..p).map(|q| n[q][q]).sum();
            assert!(greedy >= identity, "{} P={p}: {greedy} < identity {identity}", s.name);
            let mut perm: Vec<usize> = (0..p).collect();
            for _ in 0..100 {
                perm.shuffle(&mut rng);
                let random: u64 = (0..p).map(|q| n[q][perm[q]]).sum();
                assert!(greedy >= random, "{} P={p}: {greedy} < random {random}", s.name);
            }
        }
    }
}

#[test]
fn proposed_internal_time_beats_no_redistribution() {
    let mut scenarios = vec![gen_interposer(), gen_srr(None).unwrap()];
    scenarios.extend([5, 10, 20, 40].map(|pairs| gen_bus(pairs).unwrap()));
    for s in &scenarios {
        for &p in &s.procs_list {
            let prop = simulate(s, StrategyKind::Proposed, p).unwrap();
            let none = simulate(s, StrategyKind::NoRedistribution, p).unwrap();
            assert!(
                prop.internal_makespan <= none.internal_makespan * (1.0 + 1e-12),
                "{} P={p}: {} > {}",
                s.name,
                prop.internal_makespan,
                none.internal_makespan
            );
        }
    }
}

#[test]
fn simulation_is_deterministic() {
    let s = gen_interposer();
    for strategy in StrategyKind::ALL {
        assert_eq!(simulate(&s, strategy, 200).unwrap(), simulate(&s, strategy, 200).unwrap());
    }
}
