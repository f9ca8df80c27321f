use proptest::prelude::*;

use rlk::algebra::{check_leibniz, check_reynolds, induced_bracket};
use rlk::classify::{enumerate_reynolds, BuiltinAlgebra};
use rlk::field::{FieldSpec, Sampler};
use rlk::fixtures::{random_algebra, random_context, random_matrix};
use rlk::io;
use rlk::linalg::{Matrix, Tensor3};
use rlk::ybe::coboundary_coproduct;

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rational),
        Just(FieldSpec::Prime(3)),
        Just(FieldSpec::Prime(5)),
        Just(FieldSpec::Prime(7))
    ]
}

fn random_tensor(field: FieldSpec, n: usize, sampler: &mut Sampler) -> Tensor3 {
    let mut t = Tensor3::cube(field, n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if sampler.coin(0.4) {
                    t.add_at((i, j, k), &sampler.any(field));
                }
            }
        }
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn algebra_files_round_trip(seed in any::<u64>(), f in field()) {
        let alg = random_algebra(f, &mut Sampler::new(seed));
        let text = io::algebra_to_json(&alg);
        let back = io::algebra_from_json(&text).unwrap();
        prop_assert_eq!(&back, &alg);
        prop_assert_eq!(io::algebra_to_json(&back), text);
    }

    #[test]
    fn matrix_files_round_trip(seed in any::<u64>(), f in field(), rows in 1usize..4, cols in 1usize..4) {
        let m = random_matrix(f, rows, cols, &mut Sampler::new(seed));
        let text = io::matrix_to_json(&m);
        let back = io::matrix_from_json(f, &text).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(io::matrix_to_json(&back), text);
    }

    #[test]
    fn coproduct_files_round_trip(seed in any::<u64>(), f in field(), n in 1usize..4) {
        let d = random_tensor(f, n, &mut Sampler::new(seed));
        let text = io::coproduct_to_json(&d);
        let back = io::coproduct_from_json(f, &text).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(io::coproduct_to_json(&back), text);
    }

    #[test]
    fn induced_bracket_is_leibniz(seed in any::<u64>(), l in 0i64..5) {
        let f = FieldSpec::Prime(5);
        let ctx = random_context(f, &f.int(l), &mut Sampler::new(seed)).unwrap();
        let induced = induced_bracket(&ctx).unwrap();
        prop_assert!(check_leibniz(induced.structure()).unwrap().holds());
        prop_assert!(check_reynolds(&induced, ctx.lambda(), ctx.op()).unwrap().holds());
    }

    #[test]
    fn coboundary_is_linear(seed in any::<u64>(), f in field()) {
        let mut sampler = Sampler::new(seed);
        let alg = random_algebra(f, &mut sampler);
        let n = alg.dim();
        let a = random_matrix(f, n, n, &mut sampler);
        let b = random_matrix(f, n, n, &mut sampler);
        let c = sampler.any(f);
        let lhs = coboundary_coproduct(&alg, &a.add(&b.scale(&c))).unwrap();
        let db = coboundary_coproduct(&alg, &b).unwrap();
        let mut scaled = Tensor3::cube(f, n);
        for (i, j, k, v) in db.nonzero() {
            scaled.add_at((i, j, k), &(v * &c));
        }
        prop_assert_eq!(lhs, coboundary_coproduct(&alg, &a).unwrap().add(&scaled));
        prop_assert!(coboundary_coproduct(&alg, &Matrix::zeros(f, n, n)).unwrap().is_zero());
    }

    #[test]
    fn sampler_is_deterministic(seed in any::<u64>(), f in field()) {
        let draw = |s: u64| {
            let mut sampler = Sampler::new(s);
            (0..16).map(|_| sampler.any(f)).collect::<Vec<_>>()
        };
        prop_assert_eq!(draw(seed), draw(seed));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn enumeration_is_deterministic(p in prop_oneof![Just(3u32), Just(5)], l in 0i64..3, a2 in any::<bool>()) {
        let f = FieldSpec::Prime(p);
        let id = if a2 { BuiltinAlgebra::A2 } else { BuiltinAlgebra::A1 };
        let first = enumerate_reynolds(id, f, &f.int(l)).unwrap();
        let second = enumerate_reynolds(id, f, &f.int(l)).unwrap();
        prop_assert_eq!(io::to_json(&first), io::to_json(&second));
    }
}
