use ordcalc::cli::parse::parse_term;
use ordcalc::condensation::{
    condense_brute, condense_iterate, condense_step, condense_symbolic, ctlo_condense_transport,
    zeta_factorization,
};
use ordcalc::cyclic::{
    validate_witness, witness_finite_rotation, witness_product_left, witness_translation,
};
use ordcalc::linorder::{sample, Position, Support};
use ordcalc::{Element, OrderTerm, Ordinal};

mod common;
use common::{finite_interval, window};

fn t(s: &str) -> OrderTerm {
    parse_term(s).unwrap()
}

#[test]
fn brute_examples() {
    assert!(condense_brute(0, &Ordinal::one()).unwrap().is_empty());
    assert_eq!(
        condense_brute(5, &Ordinal::zero()).unwrap(),
        (0..5).map(|i| vec![i]).collect::<Vec<_>>()
    );
    assert_eq!(
        condense_brute(5, &Ordinal::one()).unwrap(),
        vec![(0..5).collect::<Vec<_>>()]
    );
    assert!(condense_brute(5, &Ordinal::omega()).is_err());
}

#[test]
fn one_step_matches_interval_oracle() {
    for s in ["z", "z*3", "z*w", "z*z", "w*z", "z*(z*2)", "w*3 + z*2"] {
        let term = t(s);
        let Ok(c) = condense_step(&term) else {
            continue;
        };
        let w = window(&term, 3);
        for x in &w {
            let px = c.project.apply(x).unwrap();
            c.term.check(&px).unwrap();
            assert_eq!(
                c.project.apply(&c.section.apply(&px).unwrap()).unwrap(),
                px,
                "{s}"
            );
            for y in &w {
                let same = px == c.project.apply(y).unwrap();
                assert_eq!(same, finite_interval(&term, x, y, 3), "{s}: {x} ~ {y}");
                if !same {
                    // The quotient map is monotone.
                    let o = term.compare(x, y).unwrap();
                    assert_eq!(
                        c.term.compare(&px, &c.project.apply(y).unwrap()).unwrap(),
                        o,
                        "{s}"
                    );
                }
            }
        }
    }
}

#[test]
fn symbolic_examples() {
    assert_eq!(
        condense_symbolic(&OrderTerm::Zeta).unwrap(),
        OrderTerm::Fin(1)
    );
    assert_eq!(condense_symbolic(&t("z*3")).unwrap(), OrderTerm::Fin(3));
    let zw = t(r#"exp(z@{"zeta":0}, w)"#);
    assert_eq!(condense_symbolic(&zw).unwrap(), zw);
    assert_eq!(
        condense_iterate(&t("z*(z*2)"), &Ordinal::nat(2)).unwrap(),
        OrderTerm::Fin(2)
    );
    assert_eq!(
        condense_iterate(&zw, &Ordinal::omega()).unwrap(),
        OrderTerm::Fin(1)
    );
    assert_eq!(
        condense_iterate(&OrderTerm::Eta, &Ordinal::nat(5)).unwrap(),
        OrderTerm::Eta
    );
    assert_eq!(
        condense_iterate(&t("w + z*eta + w*"), &Ordinal::one()).unwrap(),
        t("1 + eta + 1")
    );
}

#[test]
fn zeta_power_classes_forget_position_zero() {
    let zw = t(r#"exp(z@{"zeta":0}, w)"#);
    let c = condense_step(&zw).unwrap();
    let f = |entries: &[(u64, i64)]| {
        Element::Fs(
            ordcalc::exponential::fs_from_nat_pairs(
                &ordcalc::exponential::ExpSpace::from_term(&zw).unwrap(),
                &entries
                    .iter()
                    .map(|&(p, z)| (p, Element::Zeta(z)))
                    .collect::<Vec<_>>(),
            )
            .unwrap()
            .support()
            .clone(),
        )
    };
    let same = [
        (f(&[(0, 4), (3, 1)]), f(&[(0, -9), (3, 1)])),
        (f(&[]), f(&[(0, 100)])),
    ];
    for (x, y) in same {
        assert_eq!(c.project.apply(&x).unwrap(), c.project.apply(&y).unwrap());
    }
    let apart = [
        (f(&[(1, 1)]), f(&[])),
        (f(&[(0, 2), (3, 1)]), f(&[(0, 2), (3, 2)])),
    ];
    for (x, y) in apart {
        assert_ne!(c.project.apply(&x).unwrap(), c.project.apply(&y).unwrap());
    }
    let img = c.project.apply(&f(&[(0, 4), (1, -2), (5, 6)])).unwrap();
    let Element::Fs(s) = img else { panic!() };
    assert_eq!(
        s.entries(),
        &[
            (Position::Ord(Ordinal::zero()), Element::Zeta(-2)),
            (Position::Ord(Ordinal::nat(4)), Element::Zeta(6))
        ]
    );
}

#[test]
fn factorization_round_trips() {
    for s in ["z*1", "z*2", "z*3", r#"exp(z@{"zeta":0}, 2)"#, "z*eta"] {
        let term = t(s);
        let z = zeta_factorization(&term).unwrap();
        let prod = z.product();
        let xs = sample(&prod, 4, 300).unwrap();
        for w in xs.windows(2) {
            let (a, b) = (
                z.forward.apply(&w[0]).unwrap(),
                z.forward.apply(&w[1]).unwrap(),
            );
            assert_eq!(
                term.compare(&a, &b).unwrap(),
                prod.compare(&w[0], &w[1]).unwrap(),
                "{s}"
            );
            assert_eq!(z.inverse.apply(&a).unwrap(), w[0]);
        }
    }
}

#[test]
fn transport_onto_three_points() {
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let rot = witness_finite_rotation(3, a, b).unwrap();
        let w = witness_product_left(&OrderTerm::Zeta, &Element::Zeta(0), &Element::Zeta(0), &rot)
            .unwrap();
        let c = ctlo_condense_transport(&w, &Ordinal::one()).unwrap();
        assert_eq!(c.term, OrderTerm::Fin(3));
        assert_eq!(
            (c.a.clone(), c.b.clone()),
            (Element::Fin(a), Element::Fin(b))
        );
        for i in 0..3 {
            let x = Element::Fin(i);
            assert_eq!(c.forward(&x).unwrap(), rot.forward(&x).unwrap());
            assert_eq!(c.in_l1(&x).unwrap(), rot.in_l1(&x).unwrap());
            assert_eq!(c.in_l2_prime(&x).unwrap(), rot.in_l2_prime(&x).unwrap());
        }
        assert!(validate_witness(&c, 1, 100).unwrap().passed());
    }
}

#[test]
fn transport_at_zero_and_on_powers() {
    let w = witness_translation(&OrderTerm::Zeta, &Element::Zeta(2), &Element::Zeta(7)).unwrap();
    let c = ctlo_condense_transport(&w, &Ordinal::zero()).unwrap();
    assert_eq!(c.term, OrderTerm::Zeta);
    assert_eq!(c.forward(&Element::Zeta(-1)).unwrap(), Element::Zeta(4));

    let z2 = t(r#"exp(z@{"zeta":0}, 2)"#);
    let zero = Element::Fs(Support::empty());
    let rot = witness_finite_rotation(2, 0, 1).unwrap();
    let w = witness_product_left(&z2, &zero, &zero, &rot).unwrap();
    let c = ctlo_condense_transport(&w, &Ordinal::one()).unwrap();
    assert_eq!(condense_iterate(&w.term, &Ordinal::one()).unwrap(), c.term);
    let r = validate_witness(&c, 3, 500).unwrap();
    assert!(r.passed(), "{:?}", r.counterexample);
    assert!(ctlo_condense_transport(&w, &Ordinal::nat(3)).is_err());
}
