#![allow(dead_code)]

use fsz_core::{EndoMatrix, GroupParams, MixedVector, TableGroup};
use rand::seq::SliceRandom;
use rand::Rng;

pub const GRID: [(u64, u32); 5] = [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)];

pub fn params(i: usize) -> GroupParams {
    let (p, j) = GRID[i % GRID.len()];
    GroupParams::new(p, j).unwrap()
}

pub fn random_vector<R: Rng>(params: GroupParams, rng: &mut R) -> MixedVector {
    let coords: Vec<i64> = (0..params.dim())
        .map(|i| rng.gen_range(0..params.modulus(i)) as i64)
        .collect();
    MixedVector::from_coords(params, &coords).unwrap()
}

/// A random matrix satisfying the row-0 divisibility condition.
pub fn random_matrix<R: Rng>(params: GroupParams, rng: &mut R) -> EndoMatrix {
    let n = params.dim();
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| match (r, c) {
                    (0, 0) => rng.gen_range(0..params.top_modulus()) as i64,
                    (0, _) => (rng.gen_range(0..params.p()) * params.p_pow_j()) as i64,
                    _ => rng.gen_range(0..params.p()) as i64,
                })
                .collect()
        })
        .collect();
    EndoMatrix::from_rows(params, &rows).unwrap()
}

fn random_perm<R: Rng>(degree: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..degree).collect();
    p.shuffle(rng);
    p
}

/// A random group of order at most 64: the subgroup of `S_5` generated by
/// one or two random permutations, with elements randomly relabelled.
pub fn random_table_group<R: Rng>(rng: &mut R) -> TableGroup {
    loop {
        let count = rng.gen_range(1..=2);
        let gens: Vec<Vec<usize>> = (0..count).map(|_| random_perm(5, rng)).collect();
        if let Ok(g) = TableGroup::from_permutations(None, &gens, 64) {
            if g.order() < 4 {
                continue;
            }
            let mut perm: Vec<u32> = (0..g.order() as u32).collect();
            perm.shuffle(rng);
            return g.relabel(&perm);
        }
    }
}
