#[allow(dead_code)]
#[path = "support/suites.rs"]
mod suites;

macro_rules! suite {
    ($name:ident) => {
        #[test]
        fn $name() {
            assert!(suites::$name() >= suites::CASES);
        }
    };
}

suite!(field_axioms);
suite!(factorization);
suite!(groebner_normal_form);
suite!(solution_sets);
suite!(specialization);
suite!(handshake);
suite!(slope3_equivalence);
suite!(slope3_equality);
