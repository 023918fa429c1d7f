//! Generators for the benchmark structures and for random instances.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{MachineModel, Object, Scenario, DEFAULT_CUTOFF};

/// Edges of one trapezoidal bus conductor.
pub const BUS_CONDUCTOR_EDGES: u64 = 7026;

/// `(pairs, solver iterations)` for the published bus structures.
pub const BUS_ITERATIONS: [(usize, u32); 7] =
    [(5, 66), (10, 74), (20, 85), (40, 96), (80, 109), (160, 124), (250, 135)];

pub const SRR_OBJECTS: usize = 1488;
pub const SRR_TOTAL_EDGES: u64 = 1_281_975;
/// Relative edge counts of the full, half and quarter size resonators.
pub const SRR_CLASS_RATIOS: [u64; 3] = [16, 4, 1];
/// Default resonators per size class. Not published; chosen so the array has
/// many small outer elements, fewer mid-size ones and a core of large ones.
pub const SRR_DEFAULT_CLASSES: [usize; 3] = [288, 480, 720];

pub const INTERPOSER_OBJECTS: usize = 129;
pub const INTERPOSER_TOTAL_EDGES: u64 = 449_610;
pub const INTERPOSER_CAGE_SHARE: f64 = 0.53;
pub const INTERPOSER_LINE_SHARES: (f64, f64) = (0.003, 0.0043);

fn strong_scaling_procs() -> Vec<usize> {
    (40..=640).step_by(40).collect()
}

fn scenario(name: String, objects: Vec<Object>, procs_list: Vec<usize>, iterations: u32, grid: [u64; 3]) -> Scenario {
    Scenario {
        name,
        objects,
        procs_list,
        iterations,
        machine: MachineModel::default().with_grid(grid),
        cutoff: DEFAULT_CUTOFF,
        grid,
    }
}

/// High-speed bus with `pairs` pairs of identical conductors, run on
/// `4 * pairs` processes.
pub fn gen_bus(pairs: usize) -> Result<Scenario> {
    if pairs == 0 {
        return Err(Error::InvalidScenario("a bus needs at least one conductor pair".into()));
    }
    let objects = (0..2 * pairs).map(|i| Object::new(i, BUS_CONDUCTOR_EDGES)).collect();
    let iterations = BUS_ITERATIONS
        .iter()
        .min_by_key(|&&(rows, _)| (rows.abs_diff(pairs), rows))
        .map(|&(_, it)| it)
        .expect("table is non-empty");
    let grid = [500, 4 * pairs as u64, 8];
    Ok(scenario(format!("bus-{pairs}"), objects, vec![4 * pairs], iterations, grid))
}

/// Split-ring resonator array with `classes` resonators of full, half and
/// quarter size (defaults to [`SRR_DEFAULT_CLASSES`]).
pub fn gen_srr(classes: Option<[usize; 3]>) -> Result<Scenario> {
    let classes = classes.unwrap_or(SRR_DEFAULT_CLASSES);
    if classes.iter().sum::<usize>() != SRR_OBJECTS {
        return Err(Error::InvalidScenario(format!(
            "resonator class counts {classes:?} must sum to {SRR_OBJECTS}"
        )));
    }
    let weight: u64 = classes.iter().zip(SRR_CLASS_RATIOS).map(|(&n, r)| n as u64 * r).sum();
    let base = SRR_TOTAL_EDGES as f64 / weight as f64;
    let edges: Vec<u64> = SRR_CLASS_RATIOS.iter().map(|&r| (r as f64 * base).round() as u64).collect();

    let mut objects = Vec::with_capacity(SRR_OBJECTS);
    for (class, &n) in classes.iter().enumerate() {
        for _ in 0..n {
            objects.push(Object::new(objects.len(), edges[class]));
        }
    }
    Ok(scenario("srr".into(), objects, strong_scaling_procs(), 43, [1000, 1000, 4]))
}

/// Workload shares of the interposer objects: the ground cage first, then the
/// lines spaced linearly across the published range, renormalized to one.
pub fn interposer_shares() -> Vec<f64> {
    let lines = INTERPOSER_OBJECTS - 1;
    let (lo, hi) = INTERPOSER_LINE_SHARES;
    let mut f = Vec::with_capacity(INTERPOSER_OBJECTS);
    f.push(INTERPOSER_CAGE_SHARE);
    f.extend((0..lines).map(|j| lo + (hi - lo) * j as f64 / (lines - 1) as f64));
    let total: f64 = f.iter().sum();
    f.iter().map(|x| x / total).collect()
}

/// Fan-out interposer: a large ground cage plus 128 lines.
pub fn gen_interposer() -> Scenario {
    let shares = interposer_shares();
    let roots: Vec<f64> = shares.iter().map(|f| f.sqrt()).collect();
    let scale = INTERPOSER_TOTAL_EDGES as f64 / roots.iter().sum::<f64>();
    let objects = roots
        .iter()
        .enumerate()
        .map(|(i, r)| Object::new(i, (r * scale).round() as u64))
        .collect();
    scenario("interposer".into(), objects, strong_scaling_procs(), 76, [400, 400, 8])
}

/// Deterministic random scenario with edge counts drawn uniformly from
/// `edges`.
pub fn gen_random(n_objects: usize, edges: RangeInclusive<u64>, seed: u64) -> Result<Scenario> {
    if n_objects == 0 {
        return Err(Error::InvalidScenario("a random scenario needs at least one object".into()));
    }
    if edges.is_empty() {
        return Err(Error::InvalidScenario(format!("empty edge range {edges:?}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let objects = (0..n_objects).map(|i| Object::new(i, rng.gen_range(edges.clone()))).collect();
    Ok(scenario(format!("random-{seed}"), objects, vec![1, 2, 4, 8], 10, [16, 16, 16]))
}
