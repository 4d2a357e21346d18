use proptest::prelude::*;
use spectravoid::pfaffian::pfaffian;
use spectravoid::structures::{
    canonical_spectrum, expected_codimension, sample, skew_block_form, validate, Codimension, StructureClass,
    StructureKind,
};
use spectravoid::{CollisionClass, DetSign, Matrix, SampleStream};

fn any_class() -> impl Strategy<Value = StructureClass> {
    (0usize..8, 1usize..8, 0usize..3).prop_map(|(k, n, extra)| {
        let kind = StructureKind::ALL[k];
        match kind {
            StructureKind::Orthogonal => {
                StructureClass::orthogonal(n, if extra == 0 { DetSign::Minus } else { DetSign::Plus })
            }
            StructureKind::RectReal | StructureKind::RectComplex => StructureClass::rect(kind, n + extra, n).unwrap(),
            _ => StructureClass::new(kind, n).unwrap(),
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn samples_belong_to_their_class(class in any_class(), seed in 0u64..1000) {
        let a: Matrix = sample(&class, &mut SampleStream::new(seed, 0));
        prop_assert!(validate(&a, &class).unwrap().valid);
        prop_assert!(canonical_spectrum(&a, &class).is_ok());
    }

    #[test]
    fn pfaffian_squares_to_determinant(half in 1usize..6, seed in 0u64..1000) {
        let n = 2 * half;
        let a: Matrix = sample(&StructureClass::skew_symmetric(n), &mut SampleStream::new(seed, 1));
        let pf = pfaffian(&a).unwrap();
        let det = spectravoid::numkernel::determinant(&a).unwrap().re;
        prop_assert!((pf * pf - det).abs() <= 1e-10 * det.abs());
    }

    #[test]
    fn block_form_reproduces_matrix(n in 1usize..9, seed in 0u64..1000) {
        let a: Matrix = sample(&StructureClass::skew_symmetric(n), &mut SampleStream::new(seed, 2));
        let f = skew_block_form(&a).unwrap();
        let back = f.v.transpose().matmul(&f.block_diagonal()).matmul(&f.v);
        prop_assert!((&back - &a).max_abs() <= 1e-12 * a.max_abs().max(1.0));
    }

    #[test]
    fn codimensions_are_small(class in any_class()) {
        for c in CollisionClass::ALL {
            if let Codimension::Value(v) = expected_codimension(&class, c) {
                prop_assert!((1..=3).contains(&v));
            }
        }
    }
}
