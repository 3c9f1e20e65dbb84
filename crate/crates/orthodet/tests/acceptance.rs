//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines for passing criteria as well.

use std::panic::{catch_unwind, UnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orthodet::catalog;
use orthodet::exactla::{Matrix, Polynomial};
use orthodet::numfield::{
    is_totally_positive, normalize_class, parse_field_element, same_class,
    squarefree_part_with_budget, FieldDescriptor, FieldElement, NumFieldError, Rational,
    SquareClass,
};
use orthodet::repkit::{
    det_via_isometry, enumerate_group, find_invertible_skew, has_square_root_of_minus_one,
    induced_determinant_formula, induced_split_extension, orthogonal_determinant,
    schur_index_two_determinant, skew_from_words, verify_automorphism_order_two, GroupWord,
    RepKitError, SearchConfig, DEFAULT_ENUMERATION_CAP,
};

fn gate(number: u32, name: &str, body: impl FnOnce() + UnwindSafe) {
    let outcome = catch_unwind(body);
    let verdict = if outcome.is_ok() { "pass" } else { "FAIL" };
    println!("criterion {number} ({name}): {verdict}");
    if let Err(e) = outcome {
        std::panic::resume_unwind(e);
    }
}

fn class_of_int(n: i64) -> SquareClass {
    SquareClass::new(FieldElement::from_int(n)).unwrap()
}

fn rational_class(c: &SquareClass) -> SquareClass {
    let r = c
        .representative()
        .to_rational()
        .expect("class is rational");
    SquareClass::new(FieldElement::from_rational(r)).unwrap()
}

#[test]
fn criterion_1_gl32_degree6_cli() {
    gate(1, "GL3(2) degree-6 determinant via the binary", || {
        let start = Instant::now();
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_orthodet"))
            .args(["orthodet", "gl32-deleted6", "--json"])
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "exit: {:?}", out.status);
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report["class"], "7");
        assert!(start.elapsed().as_secs() < 10, "took {:?}", start.elapsed());

        // the library agrees for several seeds
        let rep = catalog::build("gl32-deleted6").unwrap();
        for seed in [1u64, 2, 3] {
            let class = orthogonal_determinant(&rep, seed).unwrap();
            assert!(same_class(&class, &class_of_int(7)).unwrap());
        }
    });
}

#[test]
fn criterion_2_seventh_root_product() {
    gate(2, "C7 companion skew element has determinant 7", || {
        let rep = catalog::build("c7-companion6").unwrap();
        let terms = vec![(Rational::one(), GroupWord::gen(0))];
        let x = skew_from_words(&rep, &terms).unwrap();
        let det = x.det().unwrap();
        assert_eq!(det, FieldElement::from_int(7));
        let class = normalize_class(&SquareClass::new(det).unwrap()).unwrap();
        assert!(same_class(&class, &class_of_int(7)).unwrap());
    });
}

#[test]
fn criterion_3_square_root_of_minus_one() {
    gate(3, "i in the group forces class 1; dihedral3 gives 3", || {
        for name in ["dihedral4-deg2", "c4-rot"] {
            let rep = catalog::build(name).unwrap();
            assert!(
                has_square_root_of_minus_one(&rep, DEFAULT_ENUMERATION_CAP).unwrap(),
                "{name} contains a square root of -1"
            );
            let class = orthogonal_determinant(&rep, 1).unwrap();
            assert!(same_class(&class, &class_of_int(1)).unwrap(), "{name}");
        }
        let rep = catalog::build("dihedral3-deg2").unwrap();
        assert!(!has_square_root_of_minus_one(&rep, DEFAULT_ENUMERATION_CAP).unwrap());
        let class = orthogonal_determinant(&rep, 1).unwrap();
        assert!(same_class(&class, &class_of_int(3)).unwrap());
    });
}

#[test]
fn criterion_4_quadratic_field_case() {
    gate(4, "dihedral5 class is (5+sqrt 5)/2 and totally positive", || {
        let rep = catalog::build("dihedral5-deg2").unwrap();
        let q5 = FieldDescriptor::quadratic(5).unwrap();
        let target =
            SquareClass::new(parse_field_element("5/2+1/2*sqrt(5)", Some(q5)).unwrap()).unwrap();
        for seed in [1u64, 2, 3] {
            let class = orthogonal_determinant(&rep, seed).unwrap();
            assert!(same_class(&class, &target).unwrap(), "seed {seed}");
            assert!(is_totally_positive(class.representative()).unwrap());
        }
    });
}

#[test]
fn criterion_5_split_extension_dual_path() {
    gate(5, "A5:2 determinant: formula and construction agree", || {
        let rep = catalog::build("a5-deg3").unwrap();
        let alpha = catalog::a5_outer_automorphism();
        verify_automorphism_order_two(&rep, &alpha, DEFAULT_ENUMERATION_CAP).unwrap();

        let delta = FieldElement::from_int(5);
        let formula = induced_determinant_formula(rep.degree(), false, &delta).unwrap();
        assert!(same_class(&formula, &class_of_int(5)).unwrap());

        let ext = induced_split_extension(&rep, &alpha).unwrap();
        assert_eq!(ext.degree(), 6);
        let x = find_invertible_skew(&ext, 1, &SearchConfig::default()).unwrap();
        let d = x.det().unwrap().to_rational().expect("rational determinant");
        let construction = SquareClass::new(FieldElement::from_rational(d)).unwrap();
        assert!(same_class(&formula, &construction).unwrap());

        // closed formula at larger degrees, odd and even powers of delta
        assert!(same_class(
            &induced_determinant_formula(21, false, &delta).unwrap(),
            &class_of_int(5)
        )
        .unwrap());
        assert!(same_class(
            &induced_determinant_formula(14, false, &delta).unwrap(),
            &class_of_int(1)
        )
        .unwrap());
    });
}

#[test]
fn criterion_6_schur_index_two_surrogate() {
    gate(6, "doubled GL3(2) module: reduced norm recovers 7", || {
        let doubled = catalog::build("double:gl32-deleted6").unwrap();
        let class = schur_index_two_determinant(&doubled, 1).unwrap();
        assert!(same_class(&class, &class_of_int(7)).unwrap());

        let single = catalog::build("gl32-deleted6").unwrap();
        let plain = orthogonal_determinant(&single, 1).unwrap();
        assert!(same_class(&class, &rational_class(&plain)).unwrap());

        // a representation that is not a double fails the square extraction
        let other = catalog::build("c4-rot").unwrap();
        match schur_index_two_determinant(&other, 1) {
            Err(RepKitError::NotPerfectSquare) => {}
            other => panic!("expected NotPerfectSquare, got {other:?}"),
        }
    });
}

// ---------------------------------------------------------------------------
// criterion 7: randomized property suites (seed-pinned, >= 100 cases each)

const EVEN_DEGREE_ENTRIES: [&str; 12] = [
    "c3-rot",
    "c4-rot",
    "c6-rot",
    "c7-companion6",
    "dihedral3-deg2",
    "dihedral4-deg2",
    "dihedral5-deg2",
    "dihedral6-deg2",
    "sym3-deleted",
    "sym5-deleted",
    "sym7-deleted",
    "gl32-deleted6",
];

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, field: FieldDescriptor) -> Matrix {
    Matrix::from_fn(n, n, field, |_, _| {
        FieldElement::integer(rng.gen_range(-4..=4), field)
    })
}

#[test]
fn criterion_7a_symmetric_times_skew_class_identity() {
    gate(7, "a: det(B*S) lands in the class of det(B)", || {
        let q = FieldDescriptor::rational();
        let mut rng = ChaCha8Rng::seed_from_u64(20_260_826);
        let mut cases = 0usize;
        while cases < 110 {
            let n = [2usize, 4, 6][rng.gen_range(0..3)];
            let a = random_matrix(&mut rng, n, q);
            let b = a.add(&a.transpose());
            let c = random_matrix(&mut rng, n, q);
            let s = c.sub(&c.transpose());
            let db = b.det().unwrap();
            let ds = s.det().unwrap();
            if db.is_zero() || ds.is_zero() {
                continue;
            }
            let lhs = SquareClass::new(b.mul(&s).det().unwrap()).unwrap();
            let rhs = SquareClass::new(db).unwrap();
            assert!(same_class(&lhs, &rhs).unwrap(), "n = {n}");
            cases += 1;
        }
    });
}

#[test]
fn criterion_7b_seed_and_basis_invariance() {
    gate(7, "b: determinant class ignores seed and basis", || {
        let mut rng = ChaCha8Rng::seed_from_u64(7_070_707);
        let mut cases = 0usize;
        for name in EVEN_DEGREE_ENTRIES {
            let rep = catalog::build(name).unwrap();
            let reference = orthogonal_determinant(&rep, 1).unwrap();
            assert!(is_totally_positive(reference.representative()).unwrap());
            for seed in 2u64..=7 {
                let class = orthogonal_determinant(&rep, seed).unwrap();
                assert!(same_class(&class, &reference).unwrap(), "{name} seed {seed}");
                cases += 1;
            }
            for trial in 0..3 {
                let t = loop {
                    let t = random_matrix(&mut rng, rep.degree(), rep.field());
                    if !t.det().unwrap().is_zero() {
                        break t;
                    }
                };
                let conj = rep.conjugate(&t).unwrap();
                let class = orthogonal_determinant(&conj, 1 + trial).unwrap();
                assert!(same_class(&class, &reference).unwrap(), "{name} conj {trial}");
                cases += 1;
            }
        }
        assert!(cases >= 100, "only {cases} cases");
    });
}

#[test]
fn criterion_7c_isometry_shortcut_agreement() {
    gate(7, "c: P(1)P(-1) shortcut matches the pipeline", || {
        let mut cases = 0usize;
        for name in EVEN_DEGREE_ENTRIES {
            let rep = catalog::build(name).unwrap();
            let pipeline = orthogonal_determinant(&rep, 1).unwrap();
            assert!(is_totally_positive(pipeline.representative()).unwrap());
            let one = FieldElement::one(rep.field());
            let minus_one = FieldElement::integer(-1, rep.field());
            for m in enumerate_group(&rep, DEFAULT_ENUMERATION_CAP).unwrap() {
                let p = m.charpoly().unwrap();
                if p.coeff(0) != one {
                    continue; // not an isometry of determinant one
                }
                if (&p.eval(&one) * &p.eval(&minus_one)).is_zero() {
                    continue; // eigenvalue +-1: shortcut hypothesis fails
                }
                let shortcut = det_via_isometry(&p).unwrap();
                assert!(is_totally_positive(shortcut.representative()).unwrap());
                assert!(same_class(&shortcut, &pipeline).unwrap(), "{name}");
                cases += 1;
            }
        }
        assert!(cases >= 100, "only {cases} cases");
    });
}

#[test]
fn criterion_7d_numfield_equivalence_and_normalization() {
    gate(7, "d: square-class relation laws and normal forms", || {
        let fields = [
            FieldDescriptor::rational(),
            FieldDescriptor::quadratic(5).unwrap(),
            FieldDescriptor::quadratic(-1).unwrap(),
            FieldDescriptor::quadratic(3).unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(424_242);
        let rational_in = |rng: &mut ChaCha8Rng| {
            Rational::new(
                BigInt::from(rng.gen_range(-30i64..=30)),
                BigInt::from(rng.gen_range(1i64..=12)),
            )
        };
        for case in 0..120 {
            let field = fields[case % fields.len()];
            let x = loop {
                let b = if field.is_rational() {
                    Rational::zero()
                } else {
                    rational_in(&mut rng)
                };
                let x = FieldElement::new(rational_in(&mut rng), b, field);
                if !x.is_zero() {
                    break x;
                }
            };
            let q = loop {
                let q = rational_in(&mut rng);
                if !q.is_zero() {
                    break q;
                }
            };
            let cx = SquareClass::new(x.clone()).unwrap();
            let cy = SquareClass::new(x.scale(&(&q * &q))).unwrap();
            let cz = SquareClass::new(x.scale(&(&q * &q * &q * &q))).unwrap();
            // reflexive, symmetric along a square scaling, transitive
            assert!(same_class(&cx, &cx).unwrap());
            assert!(same_class(&cx, &cy).unwrap());
            assert!(same_class(&cy, &cx).unwrap());
            assert!(same_class(&cy, &cz).unwrap() && same_class(&cx, &cz).unwrap());
            // normalization stays in the class and is idempotent
            let n1 = normalize_class(&cx).unwrap();
            assert!(same_class(&cx, &n1).unwrap());
            let n2 = normalize_class(&n1).unwrap();
            assert_eq!(n1.representative(), n2.representative());
            // the two normal forms of equivalent inputs coincide
            let ny = normalize_class(&cy).unwrap();
            assert_eq!(n1.representative(), ny.representative());
        }
    });
}

#[test]
fn criterion_8_error_paths() {
    gate(8, "every documented failure is its own error", || {
        // odd degree has no invertible skew-adjoint element
        let odd = catalog::build("a5-deg3").unwrap();
        match orthogonal_determinant(&odd, 1) {
            Err(RepKitError::OddDegree) => {}
            other => panic!("expected OddDegree, got {other:?}"),
        }

        // eigenvalue 1 kills the isometry shortcut
        let p = Polynomial::parse("x^2-2*x+1", None).unwrap();
        match det_via_isometry(&p) {
            Err(RepKitError::ShortcutInapplicable) => {}
            other => panic!("expected ShortcutInapplicable, got {other:?}"),
        }

        // enumeration cap
        let big = catalog::build("gl32-perm7").unwrap();
        match enumerate_group(&big, 10) {
            Err(RepKitError::CapExceeded { cap: 10 }) => {}
            other => panic!("expected CapExceeded, got {other:?}"),
        }

        // factoring budget: a product of two large Mersenne primes
        let m61 = (BigInt::one() << 61) - 1;
        let m89 = (BigInt::one() << 89) - 1;
        let hard = Rational::from(&m61 * &m89);
        match squarefree_part_with_budget(&hard, 1_000) {
            Err(NumFieldError::FactorizationBudget) => {}
            other => panic!("expected FactorizationBudget, got {other:?}"),
        }

        // charpoly that is not a perfect square
        let rep = catalog::build("dihedral3-deg2").unwrap();
        match schur_index_two_determinant(&rep, 1) {
            Err(RepKitError::NotPerfectSquare) => {}
            other => panic!("expected NotPerfectSquare, got {other:?}"),
        }
    });
}
