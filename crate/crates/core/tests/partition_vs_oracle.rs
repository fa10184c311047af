use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tcis::code::LinearCode;
use tcis::gf2::BitMatrix;
use tcis::partition::{exhaustive_partition_oracle, t_cis_partition, PartitionOutcome};

fn random_matrix(rng: &mut ChaCha8Rng, k: usize, n: usize, density: f64) -> BitMatrix {
    let mut m = BitMatrix::zeros(k, n);
    for i in 0..k {
        for j in 0..n {
            m.set(i, j, rng.gen_bool(density));
        }
    }
    m
}

fn agree(c: &LinearCode, t: usize) -> bool {
    let walk = t_cis_partition(c, t).unwrap();
    let oracle = exhaustive_partition_oracle(c, t).unwrap();
    walk.is_partition() == oracle.is_some()
}

#[test]
fn every_rank_two_generator_of_length_six() {
    let mut yes = 0;
    let mut total = 0;
    for bits in 0u32..(1 << 12) {
        let m = BitMatrix::from_u64_rows(6, &[(bits & 63) as u64, (bits >> 6) as u64]);
        let Ok(c) = LinearCode::new(m) else { continue };
        total += 1;
        assert!(agree(&c, 3), "disagreement on {c:?}");
        if t_cis_partition(&c, 3).unwrap().is_partition() {
            yes += 1;
        }
    }
    // ordered pairs of independent nonzero rows
    assert_eq!(total, 63 * 62);
    assert!(yes > 0);
}

#[test]
fn random_systematic_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for &(k, t) in &[
        (3usize, 3usize),
        (4, 3),
        (3, 2),
        (4, 2),
        (2, 4),
        (3, 4),
        (6, 3),
        (9, 2),
        (2, 6),
    ] {
        for round in 0..300 {
            let density = [0.15, 0.3, 0.5][round % 3];
            let a = random_matrix(&mut rng, k, (t - 1) * k, density);
            let g = BitMatrix::identity(k).hcat(&a).unwrap();
            let c = LinearCode::new(g).unwrap();
            assert!(agree(&c, t), "disagreement for t={t} on {c:?}");
        }
    }
}

#[test]
fn random_full_rank_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut seen_no = 0;
    let mut seen_yes = 0;
    for &(k, t) in &[(3usize, 3usize), (4, 3), (4, 4), (3, 5), (6, 3)] {
        let mut done = 0;
        while done < 400 {
            let density = rng.gen_range(0.1..0.6);
            let Ok(c) = LinearCode::new(random_matrix(&mut rng, k, t * k, density)) else {
                continue;
            };
            done += 1;
            assert!(agree(&c, t), "disagreement for t={t} on {c:?}");
            match t_cis_partition(&c, t).unwrap() {
                PartitionOutcome::Partition(_) => seen_yes += 1,
                PartitionOutcome::Violation { .. } => seen_no += 1,
            }
        }
    }
    assert!(seen_yes > 100 && seen_no > 100, "{seen_yes} / {seen_no}");
}
