use heegner_traces::{canonical_key, cm_point, genus_character, heegner_classes, BinaryQF, Mat, Sign};
use proptest::prelude::*;
use series_core::arith::{gcd, is_fundamental, kronecker};
use std::collections::BTreeSet;

/// Reduced primitive forms |b| ≤ a ≤ c counted by a plain scan over a, b, c.
fn brute_class_number(d: i64) -> usize {
    let mut h = 0;
    for a in 1..=-d {
        for b in -a..=a {
            for c in a..=-d {
                if b * b - 4 * a * c != d || gcd(gcd(a, b), c) != 1 {
                    continue;
                }
                if (b < 0) && (b == -a || a == c) {
                    continue;
                }
                h += 1;
            }
        }
    }
    h
}

fn beta_for(n: i64, d: i64) -> i64 {
    (0..2 * n).find(|b| (b * b - d).rem_euclid(4 * n) == 0).unwrap()
}

#[test]
fn level_one_completeness() {
    for d in [-3, -4, -7, -8, -11, -15, -20, -23, -24] {
        let classes = heegner_classes(1, d, d.rem_euclid(2)).unwrap();
        let pos = classes.iter().filter(|c| c.sign == Sign::Plus).count();
        assert_eq!(pos, brute_class_number(d), "d = {d}");
    }
    assert_eq!(brute_class_number(-23), 3);
}

#[test]
fn split_prime_level_completeness() {
    // for p split in Q(√d), each β ≡ ±r gives h(d) classes
    for d in [-3i64, -4, -7, -11, -40, -47, -67, -83] {
        if !is_fundamental(d) || kronecker(d, 37) != 1 {
            continue;
        }
        let b = beta_for(37, d);
        for beta in [b, (-b).rem_euclid(74)] {
            let pos = heegner_classes(37, d, beta).unwrap().iter().filter(|c| c.sign == Sign::Plus).count();
            assert_eq!(pos, brute_class_number(d), "d = {d}, β = {beta}");
        }
    }
}

#[test]
fn representatives_are_inequivalent() {
    for (n, d) in [(37u64, -84i64), (37, -3 * 1489), (11, -7 * 4), (1, -3 * 9), (11, -8)] {
        let b = beta_for(n as i64, d);
        let classes = heegner_classes(n, d, b).unwrap();
        let mut keys = BTreeSet::new();
        for c in &classes {
            assert!(keys.insert((c.sign, canonical_key(&c.form, n))), "duplicate class {:?}", c.form);
            assert_eq!(c.form.a % n as i64, 0);
            assert_eq!(c.form.discriminant(), d);
            assert_eq!((c.form.b - b).rem_euclid(2 * n as i64), 0);
            let s = c.stabilizer_order;
            assert!([1, 2, 3].contains(&s));
            if s > 1 {
                let k = if s == 3 { -3 } else { -4 };
                let q = d / k;
                assert!(d % k == 0 && (q as f64).sqrt().round().powi(2) == q as f64);
            }
        }
    }
}

#[test]
fn character_of_negated_form() {
    for n in [1u64, 11, 37] {
        for delta in [-3i64, -4, 5, -7, 8, -8, 12, 13] {
            for d in 1..40 {
                let disc = delta * d;
                if disc >= 0 {
                    continue;
                }
                let Some(b) = (0..2 * n as i64).find(|b| (b * b - disc).rem_euclid(4 * n as i64) == 0) else {
                    continue;
                };
                for c in heegner_classes(n, disc, b).unwrap() {
                    let x = genus_character(&c.form, delta, n).unwrap();
                    let y = genus_character(&c.form.neg(), delta, n).unwrap();
                    assert_eq!(y, delta.signum() as i32 * x, "{:?}, Δ = {delta}", c.form);
                }
            }
        }
    }
}

fn gamma0_word(n: i64, word: &[(bool, i64)]) -> Mat {
    let mut m: Mat = [[1, 0], [0, 1]];
    for &(upper, k) in word {
        let g: Mat = if upper { [[1, k], [0, 1]] } else { [[1, 0], [n * k, 1]] };
        m = [
            [m[0][0] * g[0][0] + m[0][1] * g[1][0], m[0][0] * g[0][1] + m[0][1] * g[1][1]],
            [m[1][0] * g[0][0] + m[1][1] * g[1][0], m[1][0] * g[0][1] + m[1][1] * g[1][1]],
        ];
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(5))]

    #[test]
    fn class_data_is_gamma0_invariant(word in prop::collection::vec((any::<bool>(), -2i64..=2), 1..4)) {
        let n = 37u64;
        let g = gamma0_word(37, &word);
        for (delta, d) in [(-3i64, 28i64), (-3, 12), (-3, 21)] {
            let disc = delta * d;
            let b = beta_for(37, disc);
            for c in heegner_classes(n, disc, b).unwrap() {
                let f = c.form.transform(&g);
                prop_assert_eq!(canonical_key(&f, n), canonical_key(&c.form, n));
                prop_assert_eq!(genus_character(&f, delta, n).unwrap(), genus_character(&c.form, delta, n).unwrap());
                // Fricke involution on forms: [A, B, C] ↦ [N·C, −B, A/N]
                let w = BinaryQF::new(37 * c.form.c, -c.form.b, c.form.a / 37);
                prop_assert_eq!(genus_character(&w, delta, n).unwrap(), genus_character(&c.form, delta, n).unwrap());
            }
        }
    }

    #[test]
    fn cm_point_of_negation(a in 1i64..40, b in -40i64..40, c in 1i64..40) {
        let f = BinaryQF::new(a, b, c);
        prop_assume!(f.discriminant() < 0);
        let z = cm_point::<f64>(&f).unwrap();
        let w = cm_point::<f64>(&f.neg()).unwrap();
        prop_assert!(z.im > 0.0);
        prop_assert!((z - w).norm() < 1e-14);
        prop_assert!((z * z * a as f64 + z * b as f64 + c as f64).norm() < 1e-9 * (1.0 + z.norm_sqr()) * a as f64);
    }
}
