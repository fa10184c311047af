//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tcis::boolean::BooleanPermutation;
use tcis::code::LinearCode;
use tcis::gf2::BitMatrix;

pub fn random_perm(rng: &mut ChaCha8Rng, k: usize) -> BooleanPermutation {
    let mut table: Vec<u32> = (0..1u32 << k).collect();
    table.shuffle(rng);
    BooleanPermutation::new(k, table).unwrap()
}

pub fn random_invertible(rng: &mut ChaCha8Rng, k: usize) -> BitMatrix {
    loop {
        let rows: Vec<u64> = (0..k).map(|_| rng.gen_range(0..1u64 << k)).collect();
        let m = BitMatrix::from_u64_rows(k, &rows);
        if m.is_invertible() {
            return m;
        }
    }
}

/// `(I_k | A_1 | … | A_{t−1})` with random invertible blocks.
pub fn random_systematic_tcis(rng: &mut ChaCha8Rng, k: usize, t: usize) -> LinearCode {
    let mut g = BitMatrix::identity(k);
    for _ in 1..t {
        g = g.hcat(&random_invertible(rng, k)).unwrap();
    }
    LinearCode::new(g).unwrap()
}

fn dot(a: u32, b: u32) -> bool {
    (a & b).count_ones() % 2 == 1
}

/// `W_F(a, b) = Σ_x (−1)^{b·F(x) + a·x}` by direct summation.
pub fn walsh(f: &BooleanPermutation, a: u32, b: u32) -> i64 {
    (0..1u32 << f.k())
        .map(|x| {
            if dot(b, f.apply(x)) ^ dot(a, x) {
                -1
            } else {
                1
            }
        })
        .sum()
}

/// Fourier value of `x ↦ b·F(x)` at `a`: the sum of `(−1)^{a·x}` over its support.
pub fn fourier_of_component(f: &BooleanPermutation, a: u32, b: u32) -> i64 {
    (0..1u32 << f.k())
        .filter(|&x| dot(b, f.apply(x)))
        .map(|x| if dot(a, x) { -1 } else { 1 })
        .sum()
}

/// Largest `d` such that every `(a, b_1, …, b_t)` with `a ≠ 0` and total
/// weight at most `d` has some `W_{F_i}(a, b_i) = 0`, by scanning all tuples.
pub fn brute_tuple_strength(fs: &[BooleanPermutation]) -> usize {
    let k = fs[0].k();
    let size = 1u32 << k;
    let tables: Vec<Vec<i64>> = fs
        .iter()
        .map(|f| {
            (0..size * size)
                .map(|i| walsh(f, i % size, i / size))
                .collect()
        })
        .collect();
    let t = fs.len();
    let mut best = usize::MAX;
    for a in 1..size {
        for bs in 0..1u64 << (t * k) {
            let mut weight = a.count_ones() as usize;
            let mut all_nonzero = true;
            for (i, table) in tables.iter().enumerate() {
                let b = ((bs >> (i * k)) & (size as u64 - 1)) as u32;
                weight += b.count_ones() as usize;
                if table[(b * size + a) as usize] == 0 {
                    all_nonzero = false;
                    break;
                }
            }
            if all_nonzero {
                best = best.min(weight);
            }
        }
    }
    best - 1
}
