mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use tcis::boolean::{
    build_masking_code, cip_strength, convolve_all, derive_bijections, leakage_constancy_check,
    t_ci_strength, verify_pair_duality, verify_tuple_duality, walsh_table, BooleanPermutation,
    LeakageFunction,
};
use tcis::code::{dual_distance, DualDistance};
use tcis::gf2::BitVector;

use common::*;

#[test]
fn walsh_is_minus_twice_the_fourier_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in 1..=4 {
        for _ in 0..10 {
            let f = random_perm(&mut rng, k);
            let w = walsh_table(&f).unwrap();
            for a in 1..1u32 << k {
                for b in 0..1u32 << k {
                    let hat = fourier_of_component(&f, a, b);
                    assert_eq!(w.get(a, b) as i64, -2 * hat);
                    assert_eq!(walsh(&f, a, b), w.get(a, b) as i64);
                }
            }
        }
    }
}

#[test]
fn identity_pair_strength_from_definition() {
    let id = BooleanPermutation::identity(3).unwrap();
    assert_eq!(brute_tuple_strength(&[id.clone(), id.clone()]), 2);
    assert_eq!(cip_strength(&id, &id).unwrap().value, 2);
    let triple = [id.clone(), id.clone(), id];
    assert_eq!(
        t_ci_strength(&triple).unwrap().value,
        brute_tuple_strength(&triple)
    );
}

#[test]
fn pair_strength_matches_scan_and_is_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 2..=3 {
        for _ in 0..40 {
            let (f1, f2) = (random_perm(&mut rng, k), random_perm(&mut rng, k));
            let s = cip_strength(&f1, &f2).unwrap().value;
            assert_eq!(s, brute_tuple_strength(&[f1.clone(), f2.clone()]));
            assert_eq!(s, cip_strength(&f2, &f1).unwrap().value);
        }
    }
}

#[test]
fn tuple_strength_agrees_with_pair_strength() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let (f1, f2) = (random_perm(&mut rng, 4), random_perm(&mut rng, 4));
        let pair = cip_strength(&f1, &f2).unwrap().value;
        assert_eq!(
            t_ci_strength(&[f1.clone(), f2.clone()]).unwrap().value,
            pair
        );
        // a third function adds a nonnegative term to every candidate weight
        let f3 = random_perm(&mut rng, 4);
        assert!(t_ci_strength(&[f1, f2, f3]).unwrap().value >= pair);
    }
}

#[test]
fn strength_plus_one_is_dual_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in [2, 3] {
        for _ in 0..100 {
            let (f1, f2) = (random_perm(&mut rng, k), random_perm(&mut rng, k));
            let report = verify_pair_duality(&f1, &f2).unwrap();
            assert!(report.holds(), "{report:?}");
            assert_eq!(report.strength, brute_tuple_strength(&[f1, f2]));
        }
    }
    let id = BooleanPermutation::identity(2).unwrap();
    assert!(verify_pair_duality(&id, &id).unwrap().holds());
}

#[test]
fn three_function_duality() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in [2, 3] {
        for _ in 0..30 {
            let fs: Vec<_> = (0..3).map(|_| random_perm(&mut rng, k)).collect();
            let report = verify_tuple_duality(&fs).unwrap();
            assert!(report.holds(), "{report:?}");
            assert_eq!(report.strength, brute_tuple_strength(&fs));
        }
    }
}

#[test]
fn tiny_masking_code() {
    let id = BooleanPermutation::identity(1).unwrap();
    let c = build_masking_code(&[id.clone(), id]).unwrap();
    let words: HashSet<String> = c.words().iter().map(|w| w.to_string()).collect();
    let want: HashSet<String> = ["000", "110", "101", "011"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(words, want);
}

#[test]
fn derived_maps_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (k, t) in [(2, 2), (2, 3), (3, 3), (4, 3), (2, 4)] {
        for _ in 0..20 {
            let c = random_systematic_tcis(&mut rng, k, t);
            let d = derive_bijections(&c, t).unwrap();
            let masking = build_masking_code(&d.bijections).unwrap();
            // the masking code is the dual of the t-CIS code
            let dual: HashSet<BitVector> = c
                .codewords()
                .unwrap()
                .into_iter()
                .collect::<Vec<_>>()
                .into_iter()
                .collect();
            let mut dual_words = HashSet::new();
            for m in 0..1u64 << (t * k) {
                let w = BitVector::from_u64(t * k, m);
                if dual.iter().all(|u| !u.dot(&w)) {
                    dual_words.insert(w);
                }
            }
            let got: HashSet<BitVector> = masking.words().iter().cloned().collect();
            assert_eq!(got, dual_words, "k={k} t={t}");
            assert_eq!(
                dual_distance(&masking).unwrap(),
                DualDistance::Finite(c.min_distance(None).unwrap())
            );
        }
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `(⊗^t w_H)(z)` by summing over all share tuples.
fn direct_weight_convolution(k: usize, t: usize) -> Vec<BigRational> {
    let size = 1usize << k;
    (0..size)
        .map(|z| {
            let mut acc = 0i64;
            for m in 0..1usize << (k * (t - 1)) {
                let mut first = z;
                let mut prod = 1i64;
                for i in 0..t - 1 {
                    let s = (m >> (i * k)) & (size - 1);
                    first ^= s;
                    prod *= s.count_ones() as i64;
                }
                acc += prod * first.count_ones() as i64;
            }
            rat(acc, 1)
        })
        .collect()
}

#[test]
fn three_share_weight_identity() {
    let k = 4usize;
    let w = LeakageFunction::hamming_weight(k).unwrap();
    let conv = convolve_all(&[w.clone(), w.clone(), w]).unwrap();
    assert_eq!(conv.values(), direct_weight_convolution(k, 3).as_slice());
    let k_i = k as i64;
    for z in 0..16u32 {
        let lhs = conv.value(z) * rat(1, 1 << (2 * k));
        let rhs = rat(z.count_ones() as i64, 4) + rat((k_i - 1) * k_i * (k_i + 1), 8);
        assert_eq!(lhs, rhs, "z={z}");
    }
}

#[test]
fn normalized_weight_convolution_formula() {
    for k in [3usize, 4] {
        for t in [2usize, 3] {
            let w = LeakageFunction::hamming_weight(k).unwrap();
            let conv = convolve_all(&vec![w; t]).unwrap();
            assert_eq!(conv.values(), direct_weight_convolution(k, t).as_slice());
            let k_i = k as i64;
            let sign_pow = (-k_i).pow(t as u32 - 1);
            let factor = rat((-1i64).pow(t as u32 - 1), 1 << (t - 1));
            for z in 0..1u32 << k {
                let lhs = conv.value(z) * rat(1, 1 << (k * (t - 1)));
                let rhs = &factor * (rat(z.count_ones() as i64, 1) + rat(k_i * (sign_pow - 1), 2));
                assert_eq!(lhs, rhs, "k={k} t={t} z={z}");
            }
        }
    }
}

#[test]
fn identity_masking_leaks() {
    let k = 3;
    let w = LeakageFunction::hamming_weight(k).unwrap();
    let id = BooleanPermutation::identity(k).unwrap();
    let r =
        leakage_constancy_check(&[w.clone(), w.clone(), w], &[id.clone(), id.clone(), id]).unwrap();
    assert!(!r.constant);
    assert!(r.cross_checked);
}
