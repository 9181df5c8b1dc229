//! Seeded property suites. Every suite is a list of named cases, each
//! with its own random stream, so reruns with one seed are identical.

use std::cmp::Ordering;
use std::fmt::Display;
use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::condensation::{
    condense_brute, condense_iterate, ctlo_condense_transport, zeta_factorization,
};
use crate::cyclic::{
    ctlo_from_cyclic, cyclic_automorphism_count, cyclic_from_ctlo, cyclic_r, stock_witnesses,
    transitive_finite_check, validate_witness, witness_finite_rotation, witness_product_left,
    witness_translation, CtloWitness,
};
use crate::error::Result;
use crate::expiso::{embed, stage_f, verify_exponentiable, ExpIsoContext, Side, Tower};
use crate::exponential::{
    curry_spaces, fs_between, fs_compare, fs_make, fs_rebase, iso_curry, iso_curry_inverse,
    iso_split_sum, iso_split_sum_inverse, locate_rem_rep, locator_compare, split_sum_spaces,
    ExpSpace, FsFunction,
};
use crate::linorder::{
    back_and_forth, sample_with, Element, Exponent, Extremum, OrderTerm, Position,
};
use crate::ordinal::Ordinal;
use crate::report::{CheckReport, Status};

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Suite {
    Ordinal,
    Order,
    Exp,
    Condense,
    Cyclic,
    Mainthm,
    Backforth,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Ordinal,
        Suite::Order,
        Suite::Exp,
        Suite::Condense,
        Suite::Cyclic,
        Suite::Mainthm,
        Suite::Backforth,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ordinal => "ordinal",
            Suite::Order => "order",
            Suite::Exp => "exp",
            Suite::Condense => "condense",
            Suite::Cyclic => "cyclic",
            Suite::Mainthm => "mainthm",
            Suite::Backforth => "backforth",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Case {
    pub id: String,
    pub status: Status,
    pub checks_run: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<crate::report::Counterexample>,
}

impl Case {
    fn from_report(id: String, r: CheckReport) -> Case {
        Case {
            id,
            status: r.status(),
            checks_run: r.checks_run,
            counterexample: r.counterexample,
        }
    }
}

/// Runs a suite. `budget` caps the number of samples of every check.
pub fn run_suite(suite: Suite, seed: u64, budget: Option<usize>) -> Vec<Case> {
    let cap = Cap(budget);
    match suite {
        Suite::Ordinal => ordinal_suite(seed, cap),
        Suite::Order => order_suite(seed, cap),
        Suite::Exp => exp_suite(seed, cap),
        Suite::Condense => condense_suite(seed, cap),
        Suite::Cyclic => cyclic_suite(seed, cap),
        Suite::Mainthm => mainthm_suite(seed, cap),
        Suite::Backforth => backforth_suite(seed, cap),
    }
}

#[derive(Clone, Copy)]
struct Cap(Option<usize>);

impl Cap {
    fn of(self, default: usize) -> usize {
        self.0.map_or(default, |b| b.min(default))
    }
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn run_case(id: impl Into<String>, body: impl FnOnce(&mut CheckReport) -> Result<()>) -> Case {
    let id = id.into();
    let mut r = CheckReport::new();
    if let Err(e) = body(&mut r) {
        r.error("error", id.clone(), &e);
    }
    Case::from_report(id, r)
}

fn detail(
    inputs: impl Display,
    expected: impl Display,
    got: impl Display,
) -> (String, String, String) {
    (inputs.to_string(), expected.to_string(), got.to_string())
}

macro_rules! check {
    ($r:expr, $name:expr, $ok:expr, $inputs:expr, $expected:expr, $got:expr) => {
        if !$r.ensure($name, $ok, || detail($inputs, $expected, $got)) {
            return Ok(());
        }
    };
}

fn ord_str(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    }
}

// ---------------------------------------------------------------- ordinal

fn ordinal_suite(seed: u64, cap: Cap) -> Vec<Case> {
    let n = cap.of(10_000);
    let bound = Ordinal::omega_pow(Ordinal::nat(3));
    let triples = |salt| {
        let mut rng = rng_for(seed, salt);
        (0..n)
            .map(|_| {
                let mut draw = || bound.random_below(&mut rng).expect("non-zero bound");
                (draw(), draw(), draw())
            })
            .collect::<Vec<_>>()
    };
    vec![
        run_case("add associative", |r| {
            for (a, b, c) in triples(0) {
                let (l, rr) = (a.add(&b).add(&c), a.add(&b.add(&c)));
                check!(
                    r,
                    "add associative",
                    l == rr,
                    format!("{a}, {b}, {c}"),
                    &l,
                    &rr
                );
            }
            Ok(())
        }),
        run_case("compare total order", |r| {
            for (a, b, c) in triples(1) {
                check!(
                    r,
                    "reflexive",
                    a.cmp(&a).is_eq(),
                    &a,
                    "=",
                    ord_str(a.cmp(&a))
                );
                check!(
                    r,
                    "antisymmetric",
                    a.cmp(&b) == b.cmp(&a).reverse(),
                    format!("{a}, {b}"),
                    ord_str(b.cmp(&a).reverse()),
                    ord_str(a.cmp(&b))
                );
                let trans = !(a <= b && b <= c) || a <= c;
                check!(
                    r,
                    "transitive",
                    trans,
                    format!("{a}, {b}, {c}"),
                    "a <= c",
                    ">"
                );
            }
            Ok(())
        }),
        run_case("sub round trip", |r| {
            for (a, b, _) in triples(2) {
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                let d = hi.sub(&lo)?;
                let back = lo.add(&d);
                check!(
                    r,
                    "sub round trip",
                    back == hi,
                    format!("{hi} - {lo}"),
                    &hi,
                    &back
                );
                if lo < hi {
                    check!(
                        r,
                        "sub rejects",
                        lo.sub(&hi).is_err(),
                        format!("{lo} - {hi}"),
                        "error",
                        "a value"
                    );
                }
            }
            Ok(())
        }),
        run_case("difference identity", |r| {
            for (a, b, c) in triples(3) {
                let mut v = [a, b, c];
                v.sort();
                let [beta, alpha, gamma] = v;
                let lhs = gamma.sub(&beta)?;
                let rhs = alpha.sub(&beta)?.add(&gamma.sub(&alpha)?);
                check!(
                    r,
                    "difference identity",
                    lhs == rhs,
                    format!("{beta} <= {alpha} <= {gamma}"),
                    &lhs,
                    &rhs
                );
            }
            Ok(())
        }),
        run_case("split limit finite", |r| {
            for (a, _, _) in triples(4) {
                let (beta, k) = a.split_limit_finite();
                let back = beta.add(&Ordinal::nat(k));
                check!(r, "split round trip", back == a, &a, &a, &back);
                let limit_part = beta.terms().iter().all(|(e, _)| !e.is_zero());
                check!(
                    r,
                    "split limit part",
                    limit_part,
                    &a,
                    "no finite term",
                    &beta
                );
                check!(
                    r,
                    "is_limit",
                    a.is_limit() == (!a.is_zero() && k == 0),
                    &a,
                    k == 0,
                    a.is_limit()
                );
            }
            Ok(())
        }),
    ]
}

// ------------------------------------------------------------------ order

pub fn stock_terms() -> Vec<OrderTerm> {
    [
        "1",
        "5",
        "w",
        "w*",
        "z",
        "eta",
        "w + w*",
        "z*2",
        "z*eta",
        "eta + 1",
        "1 + eta",
        "w + z*eta + w*",
        r#"exp(z@{"zeta":0}, 2)"#,
        r#"exp(w@{"omega":0}, w)"#,
        r#"rev(exp(z@{"zeta":0}, w))"#,
    ]
    .iter()
    .map(|s| s.parse().expect("stock term parses"))
    .collect()
}

fn draw(term: &OrderTerm, rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<Element>> {
    (0..n).map(|_| sample_with(term, rng)).collect()
}

fn order_laws(
    r: &mut CheckReport,
    term: &OrderTerm,
    xs: &[Element],
    neighbors: bool,
) -> Result<()> {
    let c = term.classify()?;
    let rterm = term.reverse();
    for w in xs.chunks_exact(3) {
        let (x, y, z) = (&w[0], &w[1], &w[2]);
        let xy = term.compare(x, y)?;
        check!(
            r,
            "irreflexive",
            term.compare(x, x)?.is_eq(),
            x,
            "=",
            "not ="
        );
        check!(
            r,
            "antisymmetric",
            xy == term.compare(y, x)?.reverse(),
            format!("{x}, {y}"),
            ord_str(xy),
            "asymmetric"
        );
        if term.le(x, y)? && term.le(y, z)? {
            check!(
                r,
                "transitive",
                term.le(x, z)?,
                format!("{x}, {y}, {z}"),
                "x <= z",
                "x > z"
            );
        }
        let (rx, ry) = (term.reverse_element(x)?, term.reverse_element(y)?);
        let rc = rterm.compare(&rx, &ry)?;
        check!(
            r,
            "reverse flips",
            rc == xy.reverse(),
            format!("{x}, {y}"),
            ord_str(xy.reverse()),
            ord_str(rc)
        );
        let ux = term.unreverse_element(&rx)?;
        check!(r, "reverse round trip", ux == *x, x, x, &ux);
        if !neighbors {
            continue;
        }
        let (p, s) = term.neighbors(x)?;
        if c.discrete {
            let least = term.is_extremal(x, Extremum::Least)?;
            let greatest = term.is_extremal(x, Extremum::Greatest)?;
            check!(
                r,
                "discrete neighbors",
                p.is_some() || least,
                x,
                "a predecessor",
                "none"
            );
            check!(
                r,
                "discrete neighbors",
                s.is_some() || greatest,
                x,
                "a successor",
                "none"
            );
        }
        if let Some(s) = &s {
            check!(
                r,
                "successor above",
                term.lt(x, s)?,
                x,
                format!("< {s}"),
                "not below"
            );
            let back = term.predecessor(s)?;
            check!(
                r,
                "successor adjacent",
                back.as_ref() == Some(x),
                s,
                x,
                format!("{back:?}")
            );
            for o in [y, z] {
                let inside = term.lt(x, o)? && term.lt(o, s)?;
                check!(
                    r,
                    "nothing between",
                    !inside,
                    format!("{x} < {o} < {s}"),
                    "no element",
                    o
                );
            }
        }
        if let Some(p) = &p {
            check!(
                r,
                "predecessor below",
                term.lt(p, x)?,
                x,
                format!("> {p}"),
                "not above"
            );
            let back = term.successor(p)?;
            check!(
                r,
                "predecessor adjacent",
                back.as_ref() == Some(x),
                p,
                x,
                format!("{back:?}")
            );
        }
    }
    Ok(())
}

fn order_suite(seed: u64, cap: Cap) -> Vec<Case> {
    let n = cap.of(1000);
    let pairs = cap.of(500);
    let mut cases: Vec<Case> = stock_terms()
        .into_iter()
        .enumerate()
        .map(|(i, term)| {
            run_case(format!("laws {term}"), |r| {
                let mut rng = rng_for(seed, i as u64);
                let xs = draw(&term, &mut rng, 3 * n)?;
                order_laws(r, &term, &xs, true)
            })
        })
        .collect();

    let distrib: [(&str, &str, &str); 3] = [("z", "w", "eta"), ("2", "w*", "z"), ("eta", "3", "w")];
    for (i, (a, b, c)) in distrib.iter().enumerate() {
        let (l1, l2, l3): (OrderTerm, OrderTerm, OrderTerm) =
            (a.parse().unwrap(), b.parse().unwrap(), c.parse().unwrap());
        let src = OrderTerm::prod(l1.clone(), OrderTerm::sum(l2.clone(), l3.clone()));
        let dst = OrderTerm::sum(OrderTerm::prod(l1.clone(), l2), OrderTerm::prod(l1, l3));
        cases.push(run_case(format!("left distributive {src}"), |r| {
            let mut rng = rng_for(seed, 100 + i as u64);
            let map = |e: &Element| -> Result<Element> {
                let (x, s) = e.as_pair().ok_or_else(|| src.mismatch(e))?;
                match s {
                    Element::Left(y) => Ok(Element::left(Element::pair(x.clone(), (**y).clone()))),
                    Element::Right(z) => {
                        Ok(Element::right(Element::pair(x.clone(), (**z).clone())))
                    }
                    _ => Err(src.mismatch(e)),
                }
            };
            for _ in 0..pairs {
                let (x, y) = (sample_with(&src, &mut rng)?, sample_with(&src, &mut rng)?);
                let (mx, my) = (map(&x)?, map(&y)?);
                dst.check(&mx)?;
                let (c1, c2) = (src.compare(&x, &y)?, dst.compare(&mx, &my)?);
                check!(
                    r,
                    "left distributive",
                    c1 == c2,
                    format!("{x}, {y}"),
                    ord_str(c1),
                    ord_str(c2)
                );
            }
            Ok(())
        }));
    }

    cases.push(run_case("right distributivity fails", |r| {
        let mut rng = rng_for(seed, 200);
        let two_omega = OrderTerm::prod(OrderTerm::Fin(2), OrderTerm::Omega);
        let to_omega = |e: &Element| -> Result<u64> {
            match e.as_pair() {
                Some((Element::Fin(i), Element::Omega(k))) => Ok(2 * k + i),
                _ => Err(two_omega.mismatch(e)),
            }
        };
        for _ in 0..pairs {
            let (x, y) = (
                sample_with(&two_omega, &mut rng)?,
                sample_with(&two_omega, &mut rng)?,
            );
            let (c1, c2) = (
                two_omega.compare(&x, &y)?,
                to_omega(&x)?.cmp(&to_omega(&y)?),
            );
            check!(
                r,
                "(1+1)*w onto w",
                c1 == c2,
                format!("{x}, {y}"),
                ord_str(c1),
                ord_str(c2)
            );
            let least = two_omega.is_extremal(&x, Extremum::Least)?;
            check!(
                r,
                "(1+1)*w predecessors",
                least || two_omega.predecessor(&x)?.is_some(),
                &x,
                "a predecessor",
                "none"
            );
        }
        let ww = OrderTerm::sum(OrderTerm::Omega, OrderTerm::Omega);
        let witness = Element::right(Element::Omega(0));
        let pred = ww.predecessor(&witness)?;
        check!(
            r,
            "w+w limit point",
            pred.is_none(),
            &witness,
            "no predecessor",
            format!("{pred:?}")
        );
        let least = ww.is_extremal(&witness, Extremum::Least)?;
        check!(r, "w+w limit point", !least, &witness, "not least", "least");
        Ok(())
    }));
    cases
}

// -------------------------------------------------------------------- exp

fn exp_bases() -> Vec<(OrderTerm, Element)> {
    vec![
        (OrderTerm::Zeta, Element::Zeta(0)),
        (OrderTerm::Omega, Element::Omega(0)),
        (OrderTerm::Omega, Element::Omega(1)),
        (
            OrderTerm::prod(OrderTerm::Zeta, OrderTerm::Fin(2)),
            Element::pair(Element::Zeta(0), Element::Fin(0)),
        ),
    ]
}

fn exp_exponents() -> Vec<Exponent> {
    vec![
        Exponent::Ordinal(Ordinal::nat(3)),
        Exponent::Ordinal(Ordinal::omega()),
        Exponent::Ordinal(Ordinal::omega().succ()),
        Exponent::Term(Box::new(OrderTerm::Zeta)),
        Exponent::Ordinal(Ordinal::monomial(Ordinal::one(), 2)),
    ]
}

fn wrap_sample(space: &std::sync::Arc<ExpSpace>, rng: &mut ChaCha8Rng) -> Result<FsFunction> {
    space.wrap(&sample_with(space.term(), rng)?)
}

fn exp_suite(seed: u64, cap: Cap) -> Vec<Case> {
    let n = cap.of(1000);
    let pairs = cap.of(500);
    let mut cases = Vec::new();
    let mut salt = 0u64;
    for (base, point) in exp_bases() {
        for exponent in exp_exponents() {
            salt += 1;
            let space = match ExpSpace::new(base.clone(), point.clone(), exponent.clone()) {
                Ok(s) => s,
                Err(e) => {
                    cases.push(run_case(format!("({base},{point})^{exponent}"), |_| Err(e)));
                    continue;
                }
            };
            let term = space.term().clone();
            cases.push(run_case(format!("laws {term}"), |r| {
                let mut rng = rng_for(seed, salt);
                let xs = draw(&term, &mut rng, 3 * n)?;
                order_laws(r, &term, &xs, false)?;
                let fs = xs
                    .iter()
                    .map(|x| space.wrap(x))
                    .collect::<Result<Vec<_>>>()?;
                if exponent.as_ordinal().is_some() {
                    for w in fs.chunks_exact(2) {
                        let (f, g) = (&w[0], &w[1]);
                        let c = fs_compare(f, g)?;
                        let l = locator_compare(&base, &locate_rem_rep(f)?, &locate_rem_rep(g)?)?;
                        check!(
                            r,
                            "locator agrees",
                            c == l,
                            format!("{f}, {g}"),
                            ord_str(c),
                            ord_str(l)
                        );
                    }
                }
                if let Exponent::Term(_) = &exponent {
                    for w in fs.chunks_exact(2).take(pairs) {
                        let (f, g) = match fs_compare(&w[0], &w[1])? {
                            Ordering::Less => (&w[0], &w[1]),
                            Ordering::Greater => (&w[1], &w[0]),
                            Ordering::Equal => continue,
                        };
                        let h = fs_between(f, g)?;
                        let inside = fs_compare(f, &h)?.is_lt() && fs_compare(&h, g)?.is_lt();
                        check!(
                            r,
                            "between",
                            inside,
                            format!("{f} < {g}"),
                            "strictly between",
                            &h
                        );
                    }
                }
                if exponent.as_ordinal().and_then(Ordinal::as_nat).is_some() {
                    let other = sample_with(&base, &mut rng)?;
                    for w in fs.chunks_exact(2).take(pairs) {
                        let (f, g) = (&w[0], &w[1]);
                        let (rf, rg) = (fs_rebase(f, &other)?, fs_rebase(g, &other)?);
                        let (c1, c2) = (fs_compare(f, g)?, fs_compare(&rf, &rg)?);
                        check!(
                            r,
                            "finite rebase",
                            c1 == c2,
                            format!("{f}, {g} at {other}"),
                            ord_str(c1),
                            ord_str(c2)
                        );
                    }
                }
                Ok(())
            }));
        }
        for (k, (shape, kind)) in [("w + 1", 0), ("w + w", 0), ("w*2", 1), ("2*w", 1)]
            .iter()
            .enumerate()
        {
            salt += 1;
            let exponent: OrderTerm = shape.parse().expect("exponent parses");
            let id = format!(
                "{} ({base},{point})^[{exponent}]",
                if *kind == 0 { "split sum" } else { "curry" }
            );
            cases.push(run_case(id, |r| {
                let space = ExpSpace::new(base.clone(), point.clone(), exponent.clone())?;
                let mut rng = rng_for(seed, 1000 + salt * 8 + k as u64);
                for _ in 0..pairs {
                    let (f, g) = (
                        wrap_sample(&space, &mut rng)?,
                        wrap_sample(&space, &mut rng)?,
                    );
                    let c = fs_compare(&f, &g)?;
                    if *kind == 0 {
                        let (f1, f2) = iso_split_sum(&f)?;
                        let (g1, g2) = iso_split_sum(&g)?;
                        let back = iso_split_sum_inverse(&space, &f1, &f2)?;
                        check!(r, "split sum round trip", back == f, &f, &f, &back);
                        let pc = fs_compare(&f2, &g2)?.then(fs_compare(&f1, &g1)?);
                        check!(
                            r,
                            "split sum monotone",
                            pc == c,
                            format!("{f}, {g}"),
                            ord_str(c),
                            ord_str(pc)
                        );
                        let (s1, s2) = split_sum_spaces(&space)?;
                        check!(
                            r,
                            "split sum spaces",
                            f1.space() == &s1 && f2.space() == &s2,
                            &f,
                            "factor spaces",
                            "other"
                        );
                    } else {
                        let (cf, cg) = (iso_curry(&f)?, iso_curry(&g)?);
                        let back = iso_curry_inverse(&space, &cf)?;
                        check!(r, "curry round trip", back == f, &f, &f, &back);
                        let pc = fs_compare(&cf, &cg)?;
                        check!(
                            r,
                            "curry monotone",
                            pc == c,
                            format!("{f}, {g}"),
                            ord_str(c),
                            ord_str(pc)
                        );
                        let (outer, _) = curry_spaces(&space)?;
                        check!(
                            r,
                            "curry space",
                            cf.space() == &outer,
                            &f,
                            "outer space",
                            "other"
                        );
                    }
                }
                Ok(())
            }));
        }
    }

    cases.push(run_case("(w,0)^w bounded below", |r| {
        let space = ExpSpace::new(OrderTerm::Omega, Element::Omega(0), Ordinal::omega())?;
        let least = space.term().extremum(Extremum::Least)?;
        let constant = space.constant().element();
        check!(
            r,
            "least is constant",
            least.as_ref() == Some(&constant),
            space.term(),
            &constant,
            format!("{least:?}")
        );
        let mut rng = rng_for(seed, 5000);
        for _ in 0..cap.of(200) {
            let f = sample_with(space.term(), &mut rng)?;
            check!(
                r,
                "nothing below constant",
                space.term().le(&constant, &f)?,
                &f,
                ">= constant",
                "below"
            );
        }
        Ok(())
    }));
    cases.push(run_case("(w,1)^w unbounded below", |r| {
        let space = ExpSpace::new(OrderTerm::Omega, Element::Omega(1), Ordinal::omega())?;
        let least = space.term().extremum(Extremum::Least)?;
        check!(
            r,
            "no least",
            least.is_none(),
            space.term(),
            "none",
            format!("{least:?}")
        );
        let mut rng = rng_for(seed, 5001);
        for _ in 0..cap.of(200) {
            let f = wrap_sample(&space, &mut rng)?;
            let above = match f.support().top() {
                Some((Position::Ord(p), _)) => p.succ(),
                _ => Ordinal::zero(),
            };
            let mut assignments = f.support().entries().to_vec();
            assignments.push((Position::Ord(above), Element::Omega(0)));
            let g = fs_make(&space, assignments)?;
            check!(
                r,
                "strictly smaller",
                fs_compare(&g, &f)?.is_lt(),
                &f,
                "g < f",
                &g
            );
        }
        Ok(())
    }));
    cases
}

// --------------------------------------------------------------- condense

fn condense_suite(seed: u64, cap: Cap) -> Vec<Case> {
    let pairs = cap.of(500);
    let mut cases = vec![run_case("finite brute force", |r| {
        for n in 0..=12u64 {
            let mut previous: Option<Vec<Vec<u64>>> = None;
            for g in 0..=4u64 {
                let gamma = Ordinal::nat(g);
                let classes = condense_brute(n, &gamma)?;
                let symbolic = condense_iterate(&OrderTerm::Fin(n), &gamma)?;
                let expected = OrderTerm::Fin(classes.len() as u64);
                check!(
                    r,
                    "brute = symbolic",
                    symbolic == expected,
                    format!("{n} at {gamma}"),
                    &expected,
                    &symbolic
                );
                let mut next = 0;
                for c in &classes {
                    let interval = c.iter().enumerate().all(|(i, &x)| x == next + i as u64);
                    check!(
                        r,
                        "classes are intervals",
                        interval,
                        format!("{n} at {gamma}"),
                        "interval",
                        format!("{c:?}")
                    );
                    next += c.len() as u64;
                }
                check!(
                    r,
                    "classes cover",
                    next == n,
                    format!("{n} at {gamma}"),
                    n,
                    next
                );
                if let Some(prev) = &previous {
                    let coarser = prev
                        .iter()
                        .all(|p| classes.iter().any(|c| p.iter().all(|x| c.contains(x))));
                    check!(
                        r,
                        "coarsening",
                        coarser,
                        format!("{n} at {gamma}"),
                        "coarser",
                        format!("{classes:?}")
                    );
                }
                previous = Some(classes);
            }
        }
        Ok(())
    })];

    let terms = ["z*1", "z*2", "z*3", r#"exp(z@{"zeta":0}, 2)"#];
    for (i, text) in terms.iter().enumerate() {
        let term: OrderTerm = text.parse().expect("term parses");
        cases.push(run_case(format!("factorization {term}"), |r| {
            let z = zeta_factorization(&term)?;
            let product = z.product();
            let mut rng = rng_for(seed, 10 + i as u64);
            for _ in 0..pairs {
                let (x, y) = (
                    sample_with(&product, &mut rng)?,
                    sample_with(&product, &mut rng)?,
                );
                let (fx, fy) = (z.forward.apply(&x)?, z.forward.apply(&y)?);
                term.check(&fx)?;
                let (c1, c2) = (product.compare(&x, &y)?, term.compare(&fx, &fy)?);
                check!(
                    r,
                    "factorization monotone",
                    c1 == c2,
                    format!("{x}, {y}"),
                    ord_str(c1),
                    ord_str(c2)
                );
                let back = z.inverse.apply(&fx)?;
                check!(r, "factorization round trip", back == x, &x, &x, &back);
                let t = sample_with(&term, &mut rng)?;
                let again = z.forward.apply(&z.inverse.apply(&t)?)?;
                check!(r, "factorization onto", again == t, &t, &t, &again);
            }
            Ok(())
        }));
    }

    let witnesses = || -> Result<Vec<(CtloWitness, Ordinal)>> {
        let rot2 = witness_finite_rotation(2, 0, 1)?;
        let rot3 = witness_finite_rotation(3, 0, 2)?;
        let z2 = OrderTerm::zeta_power(Ordinal::nat(2));
        let origin = fs_make(
            &ExpSpace::new(OrderTerm::Zeta, Element::Zeta(0), Ordinal::nat(2))?,
            vec![],
        )?
        .element();
        let moved = fs_make(
            &ExpSpace::new(OrderTerm::Zeta, Element::Zeta(0), Ordinal::nat(2))?,
            vec![(Position::Ord(Ordinal::one()), Element::Zeta(2))],
        )?
        .element();
        Ok(vec![
            (
                witness_product_left(
                    &OrderTerm::Zeta,
                    &Element::Zeta(0),
                    &Element::Zeta(3),
                    &rot2,
                )?,
                Ordinal::one(),
            ),
            (
                witness_product_left(&z2, &origin, &moved, &rot3)?,
                Ordinal::one(),
            ),
            (
                witness_product_left(&z2, &origin, &moved, &rot3)?,
                Ordinal::nat(2),
            ),
            (witness_translation(&z2, &origin, &moved)?, Ordinal::one()),
        ])
    };
    match witnesses() {
        Ok(ws) => {
            for (i, (w, gamma)) in ws.into_iter().enumerate() {
                cases.push(run_case(
                    format!("transport {} via {} to stage {gamma}", w.term, w.via),
                    |r| {
                        let t = ctlo_condense_transport(&w, &gamma)?;
                        let v = validate_witness(&t, seed ^ (40 + i as u64), pairs)?;
                        r.merge(v);
                        Ok(())
                    },
                ));
            }
        }
        Err(e) => cases.push(run_case("transport witnesses", |_| Err(e))),
    }
    cases
}

// ----------------------------------------------------------------- cyclic

/// Axioms of the glued cyclic order on `samples` sampled quadruples;
/// quadruples with repeated entries are skipped.
pub fn cyclic_axioms(term: &OrderTerm, seed: u64, samples: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new();
    axioms_into(
        &mut r,
        term,
        &crate::linorder::sample(term, seed, 4 * samples)?,
    )?;
    Ok(r)
}

fn axioms_into(r: &mut CheckReport, term: &OrderTerm, xs: &[Element]) -> Result<()> {
    for w in xs.chunks_exact(4) {
        let (a, b, c, d) = (&w[0], &w[1], &w[2], &w[3]);
        if a == b || b == c || a == c {
            continue;
        }
        let abc = cyclic_r(term, a, b, c)?;
        let bca = cyclic_r(term, b, c, a)?;
        let cba = cyclic_r(term, c, b, a)?;
        let inputs = || format!("{a}, {b}, {c}");
        check!(r, "cyclic", abc == bca, inputs(), abc, bca);
        check!(r, "asymmetric", !(abc && cba), inputs(), "not both", "both");
        check!(
            r,
            "total",
            abc || cba,
            inputs(),
            "one orientation",
            "neither"
        );
        if d != a && d != b && d != c && abc && cyclic_r(term, a, c, d)? {
            let abd = cyclic_r(term, a, b, d)?;
            check!(
                r,
                "transitive",
                abd,
                format!("{a}, {b}, {c}, {d}"),
                "R(a,b,d)",
                abd
            );
        }
    }
    Ok(())
}

fn cyclic_suite(seed: u64, cap: Cap) -> Vec<Case> {
    let n = cap.of(1000);
    let samples = cap.of(500);
    let mut cases: Vec<Case> = stock_terms()
        .into_iter()
        .enumerate()
        .map(|(i, term)| {
            run_case(format!("cyclic axioms {term}"), |r| {
                r.merge(cyclic_axioms(&term, seed ^ (i as u64), n)?);
                Ok(())
            })
        })
        .collect();

    cases.push(run_case("finite rotations", |r| {
        for k in 1..=7u64 {
            let count = cyclic_automorphism_count(k)?;
            check!(r, "rotation count", count == k, k, k, count);
            let transitive = transitive_finite_check(k)?;
            check!(
                r,
                "finite transitivity",
                transitive == (k == 1),
                k,
                k == 1,
                transitive
            );
        }
        Ok(())
    }));

    cases.push(run_case("cyclic round trip 5", |r| {
        let term = OrderTerm::Fin(5);
        for a in 0..5 {
            for b in a..5 {
                let w = witness_finite_rotation(5, a, b)?;
                let phi = cyclic_from_ctlo(&w);
                let back = ctlo_from_cyclic(&term, &phi, &w.a, &w.b)?;
                for x in 0..5 {
                    let x = Element::Fin(x);
                    let (u, v) = (w.forward(&x)?, back.forward(&x)?);
                    check!(r, "same map", u == v, format!("{a}->{b} at {x}"), &u, &v);
                    let (p, q) = (w.in_l1(&x)?, back.in_l1(&x)?);
                    check!(r, "same cut", p == q, format!("{a}->{b} at {x}"), p, q);
                }
                r.merge(validate_witness(&back, seed, 32)?);
            }
        }
        Ok(())
    }));

    cases.push(run_case("cyclic round trip z*2", |r| {
        let rot2 = witness_finite_rotation(2, 0, 1)?;
        let w = witness_product_left(
            &OrderTerm::Zeta,
            &Element::Zeta(0),
            &Element::Zeta(2),
            &rot2,
        )?;
        let phi = cyclic_from_ctlo(&w);
        let back = ctlo_from_cyclic(&w.term, &phi, &w.a, &w.b)?;
        let mut rng = rng_for(seed, 300);
        for _ in 0..samples {
            let x = sample_with(&w.term, &mut rng)?;
            let (u, v) = (w.forward(&x)?, back.forward(&x)?);
            check!(r, "same map", u == v, &x, &u, &v);
            let (p, q) = (w.in_l1(&x)?, back.in_l1(&x)?);
            check!(r, "same cut", p == q, &x, p, q);
        }
        Ok(())
    }));

    match stock_witnesses() {
        Ok(ws) => {
            for (i, w) in ws.into_iter().enumerate() {
                cases.push(run_case(format!("witness {} via {}", w.term, w.via), |r| {
                    r.merge(validate_witness(&w, seed ^ (500 + i as u64), samples)?);
                    Ok(())
                }));
            }
        }
        Err(e) => cases.push(run_case("stock witnesses", |_| Err(e))),
    }
    cases
}

// ---------------------------------------------------------------- mainthm

/// The bases and point pairs of the exponentiation suite.
pub fn mainthm_witnesses() -> Result<Vec<CtloWitness>> {
    let z = |k| Element::Zeta(k);
    let z2 = OrderTerm::zeta_power(Ordinal::nat(2));
    let z2_space = ExpSpace::new(OrderTerm::Zeta, z(0), Ordinal::nat(2))?;
    let v = |pairs: &[(u64, i64)]| -> Result<Element> {
        Ok(fs_make(
            &z2_space,
            pairs
                .iter()
                .map(|&(p, k)| (Position::Ord(Ordinal::nat(p)), z(k)))
                .collect(),
        )?
        .element())
    };
    Ok(vec![
        witness_translation(&OrderTerm::Zeta, &z(0), &z(3))?,
        witness_translation(&OrderTerm::Zeta, &z(4), &z(-1))?,
        witness_product_left(
            &OrderTerm::Zeta,
            &z(0),
            &z(0),
            &witness_finite_rotation(2, 0, 1)?,
        )?,
        witness_product_left(
            &OrderTerm::Zeta,
            &z(-2),
            &z(5),
            &witness_finite_rotation(2, 0, 0)?,
        )?,
        witness_product_left(
            &OrderTerm::Zeta,
            &z(0),
            &z(0),
            &witness_finite_rotation(3, 0, 2)?,
        )?,
        witness_product_left(
            &OrderTerm::Zeta,
            &z(1),
            &z(-4),
            &witness_finite_rotation(3, 1, 2)?,
        )?,
        witness_product_left(
            &z2,
            &v(&[])?,
            &v(&[(1, 1)])?,
            &witness_finite_rotation(2, 0, 1)?,
        )?,
        witness_product_left(
            &z2,
            &v(&[(0, 2)])?,
            &v(&[(0, -1), (1, -1)])?,
            &witness_finite_rotation(2, 1, 1)?,
        )?,
    ])
}

pub fn mainthm_alphas() -> Vec<Ordinal> {
    let w = Ordinal::omega();
    let w2 = Ordinal::omega_pow(Ordinal::nat(2));
    vec![
        Ordinal::nat(2),
        w.clone(),
        w.succ(),
        w.succ().succ(),
        Ordinal::monomial(Ordinal::one(), 2),
        w2.clone(),
        w2.add(&w).succ(),
    ]
}

fn commuting_squares(
    r: &mut CheckReport,
    ctx: &ExpIsoContext,
    alpha: &Ordinal,
    rng: &mut ChaCha8Rng,
    n: usize,
) -> Result<()> {
    let top = alpha.succ();
    for _ in 0..n {
        let delta = top.random_below(rng).expect("non-zero bound");
        let src = ctx.source(&delta)?;
        let x = wrap_sample(&src, rng)?;
        if ctx.side(&delta, &x)? != Side::One {
            continue;
        }
        let lhs = stage_f(
            ctx,
            alpha,
            Side::One,
            &embed(ctx, &delta, alpha, &x, Tower::I)?,
        )?;
        let rhs = embed(
            ctx,
            &delta,
            alpha,
            &stage_f(ctx, &delta, Side::One, &x)?,
            Tower::J,
        )?;
        check!(
            r,
            "commuting square",
            lhs == rhs,
            format!("{x} from {delta} to {alpha}"),
            &rhs,
            &lhs
        );
    }
    Ok(())
}

fn mainthm_suite(seed: u64, cap: Cap) -> Vec<Case> {
    let pairs = cap.of(1000);
    let squares = cap.of(200);
    let witnesses = match mainthm_witnesses() {
        Ok(ws) => ws,
        Err(e) => return vec![run_case("witnesses", |_| Err(e))],
    };
    let alphas = mainthm_alphas();
    let jobs: Vec<(usize, &CtloWitness)> = witnesses.iter().enumerate().collect();
    let mut cases: Vec<(usize, Case)> = thread::scope(|s| {
        let handles: Vec<_> = jobs
            .into_iter()
            .map(|(i, w)| {
                let alphas = &alphas;
                s.spawn(move || {
                    let mut out = Vec::new();
                    let ctx = match ExpIsoContext::new(w.clone()) {
                        Ok(c) => c,
                        Err(e) => {
                            return vec![(i * 100, run_case(format!("{}", w.term), |_| Err(e)))]
                        }
                    };
                    for (k, alpha) in alphas.iter().enumerate() {
                        let id = format!("{} a={} b={} alpha={alpha}", w.term, w.a, w.b);
                        let salt = (i * 100 + k) as u64;
                        out.push((
                            i * 100 + k,
                            run_case(id, |r| {
                                r.merge(verify_exponentiable(&ctx, alpha, seed ^ salt, pairs));
                                let mut rng = rng_for(seed, 7000 + salt);
                                commuting_squares(r, &ctx, alpha, &mut rng, squares)
                            }),
                        ));
                    }
                    out
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("suite worker"))
            .collect()
    });
    cases.sort_by_key(|(k, _)| *k);
    cases.into_iter().map(|(_, c)| c).collect()
}

// -------------------------------------------------------------- backforth

fn backforth_suite(seed: u64, cap: Cap) -> Vec<Case> {
    let schedules = cap.of(100);
    let pairs = [("eta", "eta + eta"), ("eta + 1 + eta", "eta*2")];
    pairs
        .iter()
        .enumerate()
        .map(|(i, (l, rt))| {
            let (left, right): (OrderTerm, OrderTerm) = (l.parse().unwrap(), rt.parse().unwrap());
            run_case(format!("back and forth {left} ~ {right}"), |r| {
                for s in 0..schedules {
                    let mut rng = rng_for(seed, (i * 1000 + s) as u64);
                    let rounds = 12 + rng.random_range(0..4);
                    let out = back_and_forth(&left, &right, rounds, &mut rng)?;
                    check!(
                        r,
                        "extends",
                        out.ok(),
                        format!("schedule {s}"),
                        "no failure",
                        format!("{:?}", out.failure)
                    );
                    for w in out.pairs.windows(2) {
                        let ok = left.lt(&w[0].0, &w[1].0)? && right.lt(&w[0].1, &w[1].1)?;
                        check!(
                            r,
                            "order preserving",
                            ok,
                            format!("schedule {s}"),
                            "increasing pairs",
                            format!("{:?}", w)
                        );
                    }
                }
                Ok(())
            })
        })
        .collect()
}
