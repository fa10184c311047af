use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tcis::boolean::{build_masking_code, t_ci_strength, verify_tuple_duality, BooleanPermutation};
use tcis::code::{dual_distance, DualDistance, UnrestrictedCode};
use tcis::gf2::BitVector;
use tcis::partition::PartitionOutcome;
use tcis::z4::{
    gray_image, gray_inverse, gray_map, lee_min_distance, z4_derive_bijections, z4_invert,
    z4_t_cis_partition, Z4Code, Z4Matrix,
};

fn octacode() -> Z4Code {
    Z4Code::new(Z4Matrix::from_strs(&["1000 3121", "0100 1231", "0010 3332", "0001 2311"]).unwrap())
}

fn code_24() -> Z4Code {
    Z4Code::new(
        Z4Matrix::from_strs(&[
            "100000 023213 301011 132301",
            "010000 231330 013120 303121",
            "001000 231123 003312 001012",
            "000100 321233 222323 132032",
            "000010 322333 330001 321033",
            "000001 321301 313202 122120",
        ])
        .unwrap(),
    )
}

#[test]
fn octacode_image_is_nordstrom_robinson() {
    let c = octacode();
    assert!(c.is_free());
    let img = gray_image(&c).unwrap();
    assert_eq!((img.n(), img.size()), (16, 256));
    assert_eq!(img.min_distance().unwrap(), Some(6));
    // all-pairs count agrees with the translation shortcut
    let slow = img.clone().with_distance_invariance(false);
    assert_eq!(slow.min_distance().unwrap(), Some(6));
    assert_eq!(lee_min_distance(&c).unwrap(), 6);
}

#[test]
fn octacode_bijection() {
    let c = octacode();
    assert!(z4_t_cis_partition(&c, 2).unwrap().is_partition());
    let d = z4_derive_bijections(&c, 2).unwrap();
    assert_eq!(d.sets, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]]);
    let f = &d.bijections[0];
    assert_eq!(f.k(), 8);
    assert!(!f.is_linear());
    let mc = build_masking_code(std::slice::from_ref(f)).unwrap();
    assert!(!mc.is_distance_invariant());
    assert_eq!(mc.size(), 256);
    assert_eq!(dual_distance(&mc).unwrap(), DualDistance::Finite(6));
    assert_eq!(t_ci_strength(std::slice::from_ref(f)).unwrap().value, 5);
}

#[test]
fn code_24_lee_distance_and_blocks() {
    let c = code_24();
    assert!(c.is_free());
    assert_eq!(lee_min_distance(&c).unwrap(), 18);
    let img = gray_image(&c).unwrap();
    assert_eq!((img.n(), img.size()), (48, 4096));
    assert_eq!(img.min_distance().unwrap(), Some(18));
    for b in 0..4 {
        let cols: Vec<usize> = (6 * b..6 * b + 6).collect();
        assert!(z4_invert(&c.generator().select_columns(&cols))
            .unwrap()
            .is_some());
    }
    let blocks: Vec<Vec<usize>> = (0..4).map(|b| (6 * b..6 * b + 6).collect()).collect();
    assert_eq!(
        z4_t_cis_partition(&c, 4).unwrap(),
        PartitionOutcome::Partition(blocks)
    );
}

fn random_systematic(rng: &mut ChaCha8Rng, t: usize) -> Z4Code {
    let mut rows = vec![vec![1u8, 0], vec![0u8, 1]];
    for r in rows.iter_mut() {
        r.extend((0..2 * (t - 1)).map(|_| rng.gen_range(0..4u8)));
    }
    Z4Code::new(Z4Matrix::from_rows(&rows).unwrap())
}

/// `{(φ(x_1 + … + x_{t−1}), F_1(φ(x_1)), …)}` with the shares added in Z4.
fn z4_sum_masking_code(fs: &[BooleanPermutation], k: usize) -> UnrestrictedCode {
    let t = fs.len();
    let bits = 2 * k;
    let words = (0..1u64 << (t * bits))
        .map(|m| {
            let mut sum = vec![0u8; k];
            let mut word = BitVector::zeros((t + 1) * bits);
            for (i, f) in fs.iter().enumerate() {
                let x = ((m >> (i * bits)) & ((1 << bits) - 1)) as u32;
                let xv = BitVector::from_u64(bits, x as u64);
                for (s, d) in sum.iter_mut().zip(gray_inverse(&xv).unwrap()) {
                    *s = (*s + d) & 3;
                }
                let y = f.apply(x);
                for j in 0..bits {
                    word.set((i + 1) * bits + j, (y >> j) & 1 == 1);
                }
            }
            let g = gray_map(&sum);
            for j in 0..bits {
                word.set(j, g.get(j));
            }
            word
        })
        .collect();
    UnrestrictedCode::new((t + 1) * bits, words).unwrap()
}

#[test]
fn single_gray_bijection_has_strength_lee_distance_minus_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 100 {
        let c = random_systematic(&mut rng, 2);
        let Ok(d) = z4_derive_bijections(&c, 2) else {
            continue;
        };
        let lee = lee_min_distance(&c).unwrap();
        let r = verify_tuple_duality(&d.bijections).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.dual_distance, DualDistance::Finite(lee), "{c:?}");
        checked += 1;
    }
}

#[test]
fn two_gray_bijections_survey() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut checked, mut xor_short) = (0, 0);
    while checked < 100 {
        let c = random_systematic(&mut rng, 3);
        let Ok(d) = z4_derive_bijections(&c, 3) else {
            continue;
        };
        let lee = lee_min_distance(&c).unwrap();
        let r = verify_tuple_duality(&d.bijections).unwrap();
        assert!(r.holds(), "{r:?}");
        let z4sum = z4_sum_masking_code(&d.bijections, 2);
        assert_eq!(
            dual_distance(&z4sum).unwrap(),
            DualDistance::Finite(lee),
            "{c:?}"
        );
        if r.dual_distance != DualDistance::Finite(lee) {
            xor_short += 1;
        }
        checked += 1;
    }
    // XOR-summed shares fall short of the Lee distance on some samples
    assert!(xor_short > 0);
}

#[test]
fn xor_masking_counterexample_for_two_gray_bijections() {
    let c = Z4Code::new(Z4Matrix::from_strs(&["10 23 10", "01 31 11"]).unwrap());
    assert_eq!(lee_min_distance(&c).unwrap(), 5);
    let d = z4_derive_bijections(&c, 3).unwrap();
    let r = verify_tuple_duality(&d.bijections).unwrap();
    assert_eq!((r.strength, r.dual_distance), (3, DualDistance::Finite(4)));
    let z4sum = z4_sum_masking_code(&d.bijections, 2);
    assert_eq!(dual_distance(&z4sum).unwrap(), DualDistance::Finite(5));
}
