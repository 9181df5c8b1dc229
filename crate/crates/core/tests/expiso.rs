use std::cmp::Ordering;
use std::sync::Arc;

use ordcalc::cyclic::{
    witness_finite_rotation, witness_product_left, witness_translation, ElementMap,
};
use ordcalc::expiso::{
    embed, main_iso, main_iso_inverse, stage_f, stage_f_inverse, stage_glued, stage_glued_inverse,
    verify_exponentiable, ExpIsoContext, Side, Tower,
};
use ordcalc::exponential::{fs_make, ExpSpace, FsFunction};
use ordcalc::linorder::{sample, Position};
use ordcalc::{Element, Error, OrderTerm, Ordinal};

fn zeta_two() -> ExpIsoContext {
    let rot = witness_finite_rotation(2, 0, 1).unwrap();
    let w =
        witness_product_left(&OrderTerm::Zeta, &Element::Zeta(0), &Element::Zeta(0), &rot).unwrap();
    ExpIsoContext::new(w).unwrap()
}

fn p(z: i64, c: u64) -> Element {
    Element::pair(Element::Zeta(z), Element::Fin(c))
}

fn o(s: &str) -> Ordinal {
    s.parse().unwrap()
}

fn fs(space: &Arc<ExpSpace>, entries: &[(Ordinal, Element)]) -> FsFunction {
    fs_make(
        space,
        entries
            .iter()
            .map(|(o, e)| (Position::Ord(o.clone()), e.clone()))
            .collect(),
    )
    .unwrap()
}

/// `z*2` ordered by copy first, then integer.
fn base_key(e: &Element) -> (u64, i64) {
    match e.as_pair().unwrap() {
        (Element::Zeta(z), Element::Fin(c)) => (*c, *z),
        _ => panic!("{e}"),
    }
}

/// Compares two functions by their values at the highest position where
/// they differ, reading values off both supports.
fn colex_oracle(f: &FsFunction, g: &FsFunction) -> Ordering {
    let mut positions: Vec<Ordinal> = f
        .support()
        .entries()
        .iter()
        .chain(g.support().entries())
        .map(|(p, _)| p.as_ord().unwrap().clone())
        .collect();
    positions.sort();
    positions.dedup();
    for q in positions.iter().rev() {
        let q = Position::Ord(q.clone());
        let (x, y) = (base_key(f.value_at(&q)), base_key(g.value_at(&q)));
        if x != y {
            return x.cmp(&y);
        }
    }
    Ordering::Equal
}

/// All functions over `alpha` with at most one non-basepoint value, taken
/// at one of `positions` from the integer window `-10..=10` of both copies.
fn small_supports(space: &Arc<ExpSpace>, positions: &[Ordinal]) -> Vec<FsFunction> {
    let mut out = vec![space.constant()];
    for q in positions {
        for z in -10..=10 {
            for c in 0..2 {
                let v = p(z, c);
                if &v != space.point() {
                    out.push(fs(space, &[(q.clone(), v)]));
                }
            }
        }
    }
    out
}

fn sampled(space: &Arc<ExpSpace>, seed: u64, n: usize) -> Vec<FsFunction> {
    sample(space.term(), seed, n)
        .unwrap()
        .iter()
        .map(|e| space.wrap(e).unwrap())
        .collect()
}

#[test]
fn embed_examples() {
    let ctx = zeta_two();
    let w = Ordinal::omega();
    let f = fs(&ctx.source(&w).unwrap(), &[(Ordinal::nat(3), p(2, 0))]);
    assert_eq!(embed(&ctx, &w, &w, &f, Tower::I).unwrap(), f);
    let x = fs(
        &ctx.source(&Ordinal::one()).unwrap(),
        &[(Ordinal::zero(), p(7, 0))],
    );
    let e = embed(&ctx, &Ordinal::one(), &w, &x, Tower::I).unwrap();
    assert_eq!(
        e,
        fs(&ctx.source(&w).unwrap(), &[(Ordinal::zero(), p(7, 0))])
    );
    assert!(matches!(
        embed(&ctx, &w, &Ordinal::one(), &f, Tower::I),
        Err(Error::BadStage(_))
    ));
}

#[test]
fn stage_examples() {
    let ctx = zeta_two();
    for alpha in [Ordinal::one(), Ordinal::omega()] {
        let f = fs(&ctx.source(&alpha).unwrap(), &[(Ordinal::zero(), p(5, 0))]);
        let img = stage_f(&ctx, &alpha, Side::One, &f).unwrap();
        assert_eq!(
            img,
            fs(&ctx.target(&alpha).unwrap(), &[(Ordinal::zero(), p(5, 1))])
        );
    }
    let two = Ordinal::nat(2);
    let f = fs(&ctx.source(&two).unwrap(), &[(Ordinal::zero(), p(-4, 1))]);
    let img = stage_f(&ctx, &two, Side::One, &f).unwrap();
    // F2 sends the prefix back to copy 0; F1 of the top, then one step up.
    let expected = fs(
        &ctx.target(&two).unwrap(),
        &[(Ordinal::zero(), p(-4, 0)), (Ordinal::one(), p(1, 1))],
    );
    assert_eq!(img, expected);
}

#[test]
fn exhaustive_small_support_monotonicity() {
    let ctx = zeta_two();
    let cases = [
        (o("2"), vec![o("0"), o("1")]),
        (o("w"), vec![o("0"), o("1"), o("3")]),
        (o("w + 1"), vec![o("0"), o("w")]),
    ];
    for (alpha, positions) in cases {
        let src = ctx.source(&alpha).unwrap();
        let mut fs = small_supports(&src, &positions);
        fs.sort_by(colex_oracle);
        let images: Vec<FsFunction> = fs
            .iter()
            .map(|f| stage_glued(&ctx, &alpha, f).unwrap())
            .collect();
        for (f, img) in fs.iter().zip(&images) {
            assert_eq!(&stage_glued_inverse(&ctx, &alpha, img).unwrap(), f);
            assert_eq!(
                ctx.side_prime(&alpha, img).unwrap(),
                ctx.side(&alpha, f).unwrap(),
                "{alpha}: {f}"
            );
        }
        // Side one is an initial piece, and the glued map rotates it past
        // the image of side two.
        let sides: Vec<Side> = fs.iter().map(|f| ctx.side(&alpha, f).unwrap()).collect();
        assert!(
            sides
                .windows(2)
                .all(|w| !(w[0] == Side::Two && w[1] == Side::One)),
            "{alpha}"
        );
        for i in 0..fs.len() {
            for j in i + 1..fs.len() {
                let expected = if sides[i] == sides[j] {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
                assert_eq!(
                    colex_oracle(&images[i], &images[j]),
                    expected,
                    "{alpha}: {} vs {}",
                    fs[i],
                    fs[j]
                );
            }
        }
        let g: Vec<FsFunction> = fs
            .iter()
            .map(|f| main_iso(&ctx, &alpha, f).unwrap())
            .collect();
        for w in g.windows(2) {
            assert_eq!(colex_oracle(&w[0], &w[1]), Ordering::Less, "G({alpha})");
        }
    }
}

#[test]
fn round_trips_and_base_points() {
    let ctx = zeta_two();
    for alpha in [o("1"), o("2"), o("w"), o("w + 2")] {
        let src = ctx.source(&alpha).unwrap();
        let dst = ctx.target(&alpha).unwrap();
        for f in sampled(&src, 1, 1000) {
            assert_eq!(
                stage_glued_inverse(&ctx, &alpha, &stage_glued(&ctx, &alpha, &f).unwrap()).unwrap(),
                f
            );
        }
        for z in sampled(&dst, 2, 1000) {
            assert_eq!(
                stage_glued(
                    &ctx,
                    &alpha,
                    &stage_glued_inverse(&ctx, &alpha, &z).unwrap()
                )
                .unwrap(),
                z
            );
        }
        assert_eq!(
            stage_f(&ctx, &alpha, Side::One, &src.constant()).unwrap(),
            dst.constant()
        );
        assert_eq!(
            stage_f_inverse(&ctx, &alpha, Side::One, &dst.constant()).unwrap(),
            src.constant()
        );
    }
}

#[test]
fn commuting_squares() {
    let ctx = zeta_two();
    let stages = [
        o("0"),
        o("1"),
        o("2"),
        o("w"),
        o("w + 1"),
        o("w + 3"),
        o("w*2"),
    ];
    for (i, alpha) in stages.iter().enumerate() {
        for delta in &stages[..=i] {
            for x in sampled(&ctx.source(delta).unwrap(), 3, 150) {
                if ctx.side(delta, &x).unwrap() != Side::One {
                    continue;
                }
                let lhs = stage_f(
                    &ctx,
                    alpha,
                    Side::One,
                    &embed(&ctx, delta, alpha, &x, Tower::I).unwrap(),
                )
                .unwrap();
                let fx = stage_f(&ctx, delta, Side::One, &x).unwrap();
                let rhs = embed(&ctx, delta, alpha, &fx, Tower::J).unwrap();
                assert_eq!(lhs, rhs, "delta {delta}, alpha {alpha}, x {x}");
            }
        }
    }
}

#[test]
fn main_iso_shape() {
    let ctx = zeta_two();
    let three = o("3");
    for f in sampled(&ctx.source(&three).unwrap(), 4, 200) {
        let g = main_iso(&ctx, &three, &f).unwrap();
        for q in 0..3 {
            let q = Position::Ord(Ordinal::nat(q));
            assert_eq!(g.value_at(&q), f.value_at(&q));
        }
    }
    let w = o("w");
    for f in sampled(&ctx.source(&w).unwrap(), 5, 300) {
        if ctx.side(&w, &f).unwrap() == Side::One {
            assert_eq!(
                main_iso(&ctx, &w, &f).unwrap(),
                stage_f(&ctx, &w, Side::One, &f).unwrap()
            );
        }
    }
    let alpha = o("w + 2");
    let f = fs(
        &ctx.source(&alpha).unwrap(),
        &[(o("2"), p(-1, 0)), (o("w"), p(3, 1))],
    );
    let g = main_iso(&ctx, &alpha, &f).unwrap();
    assert_eq!(g.value_at(&Position::Ord(o("w"))), &p(3, 1));
    assert_eq!(g.value_at(&Position::Ord(o("w + 1"))), ctx.a());
    let prefix = fs(&ctx.source(&w).unwrap(), &[(o("2"), p(-1, 0))]);
    let low = stage_f(&ctx, &w, Side::One, &prefix).unwrap();
    for (q, v) in low.support().entries() {
        assert_eq!(g.value_at(q), v);
    }
    assert_eq!(main_iso_inverse(&ctx, &alpha, &g).unwrap(), f);
}

#[test]
fn theorem_instances() {
    let ctx = zeta_two();
    let r = verify_exponentiable(&ctx, &o("w*2"), 1, 1000);
    assert!(r.passed(), "{:?}", r.counterexample);
    let z = ExpIsoContext::new(
        witness_translation(&OrderTerm::Zeta, &Element::Zeta(0), &Element::Zeta(1)).unwrap(),
    )
    .unwrap();
    let r = verify_exponentiable(&z, &o("w^2"), 2, 1000);
    assert!(r.passed(), "{:?}", r.counterexample);
}

#[test]
fn negative_controls() {
    let mut w =
        witness_translation(&OrderTerm::Zeta, &Element::Zeta(0), &Element::Zeta(1)).unwrap();
    w.term = OrderTerm::Omega;
    w.a = Element::Omega(0);
    w.b = Element::Omega(1);
    assert!(matches!(
        ExpIsoContext::new(w),
        Err(Error::NotDiscreteUnbounded(_))
    ));

    // A witness whose F1 misses b.
    let mut w =
        witness_translation(&OrderTerm::Zeta, &Element::Zeta(0), &Element::Zeta(1)).unwrap();
    w.f1 = ElementMap::new("x + 2", |e| match e {
        Element::Zeta(z) => Ok(Element::Zeta(z + 2)),
        _ => unreachable!(),
    });
    let ctx = ExpIsoContext::new(w).unwrap();
    let r = verify_exponentiable(&ctx, &o("w"), 1, 100);
    assert!(!r.passed());
}

#[test]
fn concurrent_calls_agree_with_serial() {
    let ctx = zeta_two();
    let alpha = o("w^2 + w + 1");
    let src = ctx.source(&alpha).unwrap();
    let fs = sampled(&src, 6, 400);
    let serial: Vec<FsFunction> = {
        let fresh = zeta_two();
        fs.iter()
            .map(|f| main_iso(&fresh, &alpha, f).unwrap())
            .collect()
    };
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..8)
            .map(|k| {
                let (ctx, fs, alpha) = (&ctx, &fs, &alpha);
                s.spawn(move || {
                    let mut order: Vec<usize> = (0..fs.len()).collect();
                    order.rotate_left(k * 37 % fs.len());
                    order
                        .into_iter()
                        .map(|i| (i, main_iso(ctx, alpha, &fs[i]).unwrap()))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, g) in h.join().unwrap() {
                assert_eq!(g, serial[i]);
            }
        }
    });
}
