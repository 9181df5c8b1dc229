use itertools::Itertools;
use ordcalc::cli::parse::parse_term;
use ordcalc::cyclic::{
    ce_eta_eta_plus_one, ce_omega_omegastar_zeta, check_automorphism, ctlo_from_cyclic,
    cyclic_automorphism_count, cyclic_from_ctlo, cyclic_r, inflationary_modify, stock_witnesses,
    transitive_finite_check, validate_equivalence, validate_witness, witness_finite_rotation,
    witness_product_discrete, witness_product_left, witness_reverse, witness_translation,
    witness_transport, Automorphism, CtloWitness, CycEquivWitness, ElementMap,
};
use ordcalc::linorder::{sample, Position, Support};
use ordcalc::{Element, OrderTerm};

fn t(s: &str) -> OrderTerm {
    parse_term(s).unwrap()
}

fn fin(i: u64) -> Element {
    Element::Fin(i)
}

fn zp(z: i64, c: u64) -> Element {
    Element::pair(Element::Zeta(z), Element::Fin(c))
}

/// `R` on `0..n` straight from the definition.
fn r_oracle(x: u64, y: u64, z: u64) -> bool {
    (x < y && y < z) || (y < z && z < x) || (z < x && x < y)
}

fn assert_valid(w: &CtloWitness, samples: usize) {
    let r = validate_witness(w, 5, samples).unwrap();
    assert!(
        r.passed(),
        "{} via {}: {:?}",
        w.term,
        w.via,
        r.counterexample
    );
}

#[test]
fn relation_examples() {
    let f3 = OrderTerm::Fin(3);
    assert!(cyclic_r(&f3, &fin(0), &fin(1), &fin(2)).unwrap());
    assert!(cyclic_r(&f3, &fin(1), &fin(2), &fin(0)).unwrap());
    assert!(!cyclic_r(&f3, &fin(2), &fin(1), &fin(0)).unwrap());
}

#[test]
fn finite_transitivity_and_counts() {
    assert!(transitive_finite_check(1).unwrap());
    assert!(!transitive_finite_check(4).unwrap());
    for n in 1..=6u64 {
        let brute = (0..n)
            .permutations(n as usize)
            .filter(|p| {
                (0..n).permutations(3).all(|v| {
                    let (x, y, z) = (v[0], v[1], v[2]);
                    r_oracle(x, y, z) == r_oracle(p[x as usize], p[y as usize], p[z as usize])
                })
            })
            .count() as u64;
        assert_eq!(cyclic_automorphism_count(n).unwrap(), brute, "n = {n}");
    }
}

#[test]
fn rotation_partitions() {
    let w = witness_finite_rotation(5, 1, 3).unwrap();
    assert_eq!(w.f1.apply(&fin(1)).unwrap(), fin(3));
    let l1: Vec<u64> = (0..5).filter(|&i| w.in_l1(&fin(i)).unwrap()).collect();
    let l2p: Vec<u64> = (0..5)
        .filter(|&i| w.in_l2_prime(&fin(i)).unwrap())
        .collect();
    assert_eq!(l1, vec![0, 1, 2]);
    assert_eq!(l2p, vec![0, 1]);
    assert_valid(&w, 100);

    let id = witness_finite_rotation(5, 2, 2).unwrap();
    assert!(id.is_whole_order());
    assert!((0..5).all(|i| id.forward(&fin(i)).unwrap() == fin(i)));
    assert!(witness_finite_rotation(1, 0, 0).unwrap().is_whole_order());
}

#[test]
fn glued_rotation_is_a_cyclic_automorphism() {
    let w = witness_finite_rotation(5, 1, 3).unwrap();
    let phi = cyclic_from_ctlo(&w);
    for i in 0..5 {
        assert_eq!(phi.forward.apply(&fin(i)).unwrap(), fin((i + 2) % 5));
    }
    let mut triples = 0;
    for v in (0..5u64).permutations(3) {
        let img: Vec<u64> = v
            .iter()
            .map(|&i| match phi.forward.apply(&fin(i)).unwrap() {
                Element::Fin(j) => j,
                e => panic!("{e}"),
            })
            .collect();
        assert_eq!(r_oracle(v[0], v[1], v[2]), r_oracle(img[0], img[1], img[2]));
        triples += 1;
    }
    assert_eq!(triples, 60);

    let back = ctlo_from_cyclic(&OrderTerm::Fin(5), &phi, &fin(1), &fin(3)).unwrap();
    for i in 0..5 {
        assert_eq!(back.in_l1(&fin(i)).unwrap(), w.in_l1(&fin(i)).unwrap());
        assert_eq!(
            back.in_l2_prime(&fin(i)).unwrap(),
            w.in_l2_prime(&fin(i)).unwrap()
        );
    }
}

#[test]
fn tampered_witnesses_fail() {
    let mut w = witness_finite_rotation(5, 1, 3).unwrap();
    w.f1 = ElementMap::new("x + 1", |e| match e {
        Element::Fin(i) => Ok(Element::Fin(i + 1)),
        _ => unreachable!(),
    });
    let r = validate_witness(&w, 5, 100).unwrap();
    let c = r.counterexample.expect("tampered F1 must fail");
    assert_eq!(c.check, "F1(a) = b");
    assert_eq!(c.inputs, fin(1).to_string());

    // Fixes a = b but reverses the order.
    let mut w =
        witness_translation(&OrderTerm::Zeta, &Element::Zeta(0), &Element::Zeta(0)).unwrap();
    w.f1 = ElementMap::new("negate", |e| match e {
        Element::Zeta(z) => Ok(Element::Zeta(-z)),
        _ => unreachable!(),
    });
    w.f1_inv = w.f1.clone();
    assert!(!validate_witness(&w, 5, 200).unwrap().passed());
}

#[test]
fn translations() {
    let w = witness_translation(&OrderTerm::Zeta, &Element::Zeta(2), &Element::Zeta(7)).unwrap();
    for z in -20..20 {
        assert_eq!(w.forward(&Element::Zeta(z)).unwrap(), Element::Zeta(z + 5));
    }
    let w = witness_translation(&OrderTerm::Eta, &Element::eta(1, 2), &Element::eta(1, 3)).unwrap();
    assert_eq!(w.forward(&Element::eta(0, 1)).unwrap(), Element::eta(-1, 6));
    assert_valid(&w, 300);

    let z2 = t(r#"exp(z@{"zeta":0}, 2)"#);
    let at = |p: u64, v: i64| Element::Fs(single(p, v));
    let w = witness_translation(&z2, &at(0, 1), &at(1, 1)).unwrap();
    assert_eq!(
        w.forward(&Element::Fs(Support::empty())).unwrap(),
        Element::Fs(two(-1, 1))
    );
    assert_valid(&w, 500);
}

fn single(p: u64, v: i64) -> Support {
    let s = ordcalc::exponential::ExpSpace::new(
        OrderTerm::Zeta,
        Element::Zeta(0),
        ordcalc::Ordinal::nat(2),
    )
    .unwrap();
    ordcalc::exponential::fs_from_nat_pairs(&s, &[(p, Element::Zeta(v))])
        .unwrap()
        .support()
        .clone()
}

fn two(v0: i64, v1: i64) -> Support {
    let s = ordcalc::exponential::ExpSpace::new(
        OrderTerm::Zeta,
        Element::Zeta(0),
        ordcalc::Ordinal::nat(2),
    )
    .unwrap();
    ordcalc::exponential::fs_make(
        &s,
        vec![
            (Position::Ord(ordcalc::Ordinal::zero()), Element::Zeta(v0)),
            (Position::Ord(ordcalc::Ordinal::one()), Element::Zeta(v1)),
        ],
    )
    .unwrap()
    .support()
    .clone()
}

#[test]
fn products() {
    let rot = witness_finite_rotation(2, 0, 1).unwrap();
    let w =
        witness_product_left(&OrderTerm::Zeta, &Element::Zeta(0), &Element::Zeta(0), &rot).unwrap();
    assert_eq!(w.forward(&zp(4, 0)).unwrap(), zp(4, 1));
    assert_valid(&w, 500);

    let zz = t("z*z");
    let origin = Element::pair(Element::Zeta(0), Element::Zeta(0));
    let w = witness_product_left(
        &zz,
        &origin,
        &origin,
        &witness_finite_rotation(3, 0, 2).unwrap(),
    )
    .unwrap();
    assert_valid(&w, 500);

    let trivial = witness_finite_rotation(2, 1, 1).unwrap();
    let w = witness_product_left(
        &OrderTerm::Zeta,
        &Element::Zeta(0),
        &Element::Zeta(3),
        &trivial,
    )
    .unwrap();
    assert!(w.is_whole_order());

    let left =
        witness_product_left(&OrderTerm::Zeta, &Element::Zeta(0), &Element::Zeta(0), &rot).unwrap();
    let right = witness_product_left(
        &OrderTerm::Zeta,
        &Element::Zeta(-1),
        &Element::Zeta(2),
        &rot,
    )
    .unwrap();
    let w = witness_product_discrete(&left, &right, false).unwrap();
    assert_eq!(w.term, t("(z*2)*(z*2)"));
    assert_valid(&w, 500);
    // First coordinates in decreasing order.
    let w = witness_product_discrete(&left, &right, true).unwrap();
    assert_eq!(w.a.as_pair().unwrap().0, &zp(0, 1));
    assert_valid(&w, 500);
}

#[test]
fn reversal() {
    let w = witness_finite_rotation(5, 1, 3).unwrap();
    let r = witness_reverse(&w).unwrap();
    assert_valid(&r, 100);
    // Read back in the original labels the glued map rotates by n - d.
    let phi = cyclic_from_ctlo(&r);
    for i in 0..5 {
        assert_eq!(
            phi.forward.apply(&fin(4 - i)).unwrap(),
            fin(4 - (i + 3) % 5)
        );
    }
    let id = witness_reverse(&witness_finite_rotation(4, 2, 2).unwrap()).unwrap();
    assert!((0..4).all(|i| id.forward(&fin(i)).unwrap() == fin(i)));
    let z = witness_reverse(
        &witness_translation(&OrderTerm::Zeta, &Element::Zeta(0), &Element::Zeta(4)).unwrap(),
    )
    .unwrap();
    assert_eq!(z.term, OrderTerm::Zeta);
    assert_eq!(z.forward(&Element::Zeta(10)).unwrap(), Element::Zeta(14));
}

#[test]
fn transport() {
    let ce = ce_omega_omegastar_zeta();
    assert!(validate_equivalence(&ce, 1, 300).unwrap().passed());
    assert_eq!(
        ce.forward(&Element::left(Element::Omega(3))).unwrap(),
        Element::Zeta(3)
    );
    assert_eq!(
        ce.forward(&Element::right(Element::OmegaStar(0))).unwrap(),
        Element::Zeta(-1)
    );
    let wz = witness_translation(&OrderTerm::Zeta, &Element::Zeta(0), &Element::Zeta(3)).unwrap();
    let w = witness_transport(&ce.invert(), &wz).unwrap();
    assert_eq!(w.term, t("w + w*"));
    assert_valid(&w, 500);

    let same = witness_transport(&CycEquivWitness::identity(OrderTerm::Zeta), &wz).unwrap();
    for z in -10..10 {
        assert_eq!(
            same.forward(&Element::Zeta(z)).unwrap(),
            wz.forward(&Element::Zeta(z)).unwrap()
        );
    }

    let we =
        witness_translation(&OrderTerm::Eta, &Element::eta(0, 1), &Element::eta(1, 1)).unwrap();
    let w = witness_transport(&ce_eta_eta_plus_one(), &we).unwrap();
    assert_eq!(w.term, t("eta + 1"));
    assert_valid(&w, 500);
}

#[test]
fn glued_product_preserves_r() {
    let rot = witness_finite_rotation(2, 0, 1).unwrap();
    let w =
        witness_product_left(&OrderTerm::Zeta, &Element::Zeta(0), &Element::Zeta(0), &rot).unwrap();
    let phi = cyclic_from_ctlo(&w);
    let r = check_automorphism(&phi, 9, 500).unwrap();
    assert!(r.passed(), "{:?}", r.counterexample);
    let xs = sample(&w.term, 2, 300).unwrap();
    for v in xs.chunks(3) {
        if v[0] == v[1] || v[1] == v[2] || v[0] == v[2] {
            continue;
        }
        let img: Vec<Element> = v.iter().map(|x| phi.forward.apply(x).unwrap()).collect();
        assert_eq!(
            cyclic_r(&w.term, &v[0], &v[1], &v[2]).unwrap(),
            cyclic_r(&w.term, &img[0], &img[1], &img[2]).unwrap()
        );
    }
}

#[test]
fn whole_order_from_a_translation() {
    let wz = witness_translation(&OrderTerm::Zeta, &Element::Zeta(0), &Element::Zeta(5)).unwrap();
    let w = ctlo_from_cyclic(
        &OrderTerm::Zeta,
        &cyclic_from_ctlo(&wz),
        &Element::Zeta(0),
        &Element::Zeta(5),
    )
    .unwrap();
    for z in sample(&OrderTerm::Zeta, 1, 200).unwrap() {
        assert!(w.in_l1(&z).unwrap());
    }
}

#[test]
fn inflationary_translations() {
    let phi =
        Automorphism::translation(&OrderTerm::Zeta, &Element::Zeta(0), &Element::Zeta(3)).unwrap();
    let m = inflationary_modify(&phi, &Element::Zeta(0), &Element::Zeta(3), 8).unwrap();
    for z in -50..50 {
        assert_eq!(
            m.forward.apply(&Element::Zeta(z)).unwrap(),
            Element::Zeta(z + 3)
        );
    }
    let id =
        Automorphism::translation(&OrderTerm::Zeta, &Element::Zeta(4), &Element::Zeta(4)).unwrap();
    let m = inflationary_modify(&id, &Element::Zeta(4), &Element::Zeta(4), 8).unwrap();
    assert_eq!(
        m.forward.apply(&Element::Zeta(-7)).unwrap(),
        Element::Zeta(-7)
    );

    let phi = Automorphism::translation(&OrderTerm::Eta, &Element::eta(0, 1), &Element::eta(1, 1))
        .unwrap();
    let m = inflationary_modify(&phi, &Element::eta(0, 1), &Element::eta(1, 1), 64).unwrap();
    for q in sample(&OrderTerm::Eta, 4, 200).unwrap() {
        let img = m.forward.apply(&q).unwrap();
        assert_eq!(img, phi.forward.apply(&q).unwrap());
        assert!(OrderTerm::Eta.le(&q, &img).unwrap());
    }
}

#[test]
fn stock_witnesses_validate() {
    for w in stock_witnesses().unwrap() {
        assert_valid(&w, 500);
    }
}
