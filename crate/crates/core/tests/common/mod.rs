#![allow(dead_code)]

use num_integer::Integer;
use num_traits::Signed;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use seifert_core::{Arm, StarGraph};

pub const CORPUS_SEED: u64 = 0x5eed_2024;
pub const CORPUS_SIZE: usize = 600;

/// Every reduced arm `n/q` with `2 <= n <= n_max`.
pub fn arm_types(n_max: i64) -> Vec<Arm> {
    (2..=n_max)
        .flat_map(|n| (1..n).filter(move |q| q.gcd(&n) == 1).map(move |q| Arm { n, q }))
        .collect()
}

/// Calls `f` on every multiset of size `t` drawn from `types`, in
/// nondecreasing index order.
pub fn for_each_multiset(types: &[Arm], t: usize, mut f: impl FnMut(&[Arm])) {
    if types.is_empty() && t > 0 {
        return;
    }
    let mut idx = vec![0usize; t];
    let mut arms: Vec<Arm> = idx.iter().map(|&i| types[i]).collect();
    loop {
        for (a, &i) in arms.iter_mut().zip(&idx) {
            *a = types[i];
        }
        f(&arms);
        let Some(pos) = (0..t).rev().find(|&p| idx[p] + 1 < types.len()) else {
            return;
        };
        idx[pos] += 1;
        for p in pos + 1..t {
            idx[p] = idx[pos];
        }
    }
}

/// Calls `f` on every genus-0 graph with `t` arms, `1 <= d <= d_max`,
/// `n_i <= n_max` and `e > 0`, arms sorted.
pub fn for_each_genus_zero(t: usize, d_max: i64, n_max: i64, mut f: impl FnMut(StarGraph)) {
    let types = arm_types(n_max);
    for_each_multiset(&types, t, |arms| {
        for d in 1..=d_max {
            let sg = StarGraph::new(0, d, arms.to_vec());
            if sg.euler_number().unwrap().is_positive() {
                f(sg);
            }
        }
    });
}

pub fn genus_zero_sweep(t: usize, d_max: i64, n_max: i64) -> Vec<StarGraph> {
    let mut out = Vec::new();
    for_each_genus_zero(t, d_max, n_max, |sg| out.push(sg));
    out
}

fn random_arm(rng: &mut StdRng, n_max: i64) -> Arm {
    let n = rng.random_range(2..=n_max);
    loop {
        let q = rng.random_range(1..n);
        if q.gcd(&n) == 1 {
            return Arm { n, q };
        }
    }
}

/// Seeded valid graphs outside the cyclic quotient range: `t <= 5`,
/// `n_i <= 25`, `d <= 12`, genus in {0, 1, 2}, `e > 0`.
pub fn random_corpus(count: usize, seed: u64) -> Vec<StarGraph> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let genus: u32 = [0, 0, 0, 1, 2][rng.random_range(0..5)];
        let t = if genus == 0 {
            rng.random_range(3..=5)
        } else {
            rng.random_range(0..=5)
        };
        let arms = (0..t).map(|_| random_arm(&mut rng, 25)).collect();
        let sg = StarGraph::new(genus, rng.random_range(1..=12), arms);
        if sg.euler_number().unwrap().is_positive() {
            out.push(sg);
        }
    }
    out
}

pub fn corpus() -> Vec<StarGraph> {
    random_corpus(CORPUS_SIZE, CORPUS_SEED)
}
