use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::construct::probe;
use super::{cyclic_r, CtloWitness, Cut, CycEquivWitness, CyclicAutomorphism, ElementMap};
use crate::error::Result;
use crate::linorder::{Element, OrderTerm};
use crate::report::CheckReport;

const BISECTIONS: usize = 16;

// Sorted, deduplicated probe elements plus the pairs to test: neighbours in
// the sorted list and a stride further apart. Finite terms use all pairs.
type Probes = (Vec<Element>, Vec<(usize, usize)>);

fn probe_pairs(term: &OrderTerm, seed: u64, samples: usize) -> Result<Probes> {
    let mut elems = probe(term, seed, samples)?;
    let mut err = None;
    elems.sort_by(|x, y| {
        term.compare(x, y).unwrap_or_else(|e| {
            err = Some(e);
            Ordering::Equal
        })
    });
    if let Some(e) = err {
        return Err(e);
    }
    elems.dedup();
    let n = elems.len();
    let finite = crate::linorder::finite_size(term).is_some_and(|s| s <= 64);
    let pairs = if finite {
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect()
    } else {
        (0..n)
            .flat_map(|i| {
                [i + 1, i + 7]
                    .into_iter()
                    .filter(move |&j| j < n)
                    .map(move |j| (i, j))
            })
            .collect()
    };
    Ok((elems, pairs))
}

macro_rules! try_check {
    ($report:expr, $check:expr, $inputs:expr, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => {
                $report.error($check, $inputs, &err);
                return Ok($report);
            }
        }
    };
}

/// Checks every clause of a cyclic-transitivity witness on sampled
/// elements and pairs; finite terms are checked exhaustively.
pub fn validate_witness(w: &CtloWitness, seed: u64, samples: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new();
    let t = &w.term;
    let (a, b) = (&w.a, &w.b);
    let a_in = try_check!(r, "a in L1", a.to_string(), w.in_l1(a));
    r.ensure("a in L1", a_in, || {
        (a.to_string(), "true".into(), "false".into())
    });
    let b_in = try_check!(r, "b in L1'", b.to_string(), w.in_l2_prime(b));
    r.ensure("b in L1'", !b_in, || {
        (b.to_string(), "true".into(), "false".into())
    });
    if !w.is_whole_order() {
        let le = try_check!(r, "a <= b", format!("{a}, {b}"), t.le(a, b));
        r.ensure("a <= b", le, || {
            (format!("{a}, {b}"), "a <= b".into(), "a > b".into())
        });
    }
    let fa = try_check!(r, "F1(a) = b", a.to_string(), w.f1.apply(a));
    r.ensure("F1(a) = b", fa == *b, || {
        (a.to_string(), b.to_string(), fa.to_string())
    });

    let (elems, pairs) = probe_pairs(t, seed, samples)?;
    let sides = PieceMaps {
        term: t,
        cut_dom: &w.cut1,
        cut_cod: &w.cut2,
        f1: &w.f1,
        f1_inv: &w.f1_inv,
        f2: &w.f2,
        f2_inv: &w.f2_inv,
    };
    sides.check_domain(&mut r, &elems, &pairs)?;
    sides.check_codomain(&mut r, t, &elems, &pairs)?;
    if t.classify()?.unbounded() {
        for x in &elems {
            let in1 = try_check!(r, "L1 membership", x.to_string(), w.in_l1(x));
            let in2p = try_check!(r, "L2' membership", x.to_string(), w.in_l2_prime(x));
            for (name, cut, inside) in [("L1/L2", &w.cut1, in1), ("L2'/L1'", &w.cut2, in2p)] {
                for up in [true, false] {
                    let ok = try_check!(
                        r,
                        "unbounded pieces",
                        x.to_string(),
                        escapes(t, x, cut, inside, up, &elems)
                    );
                    r.ensure("unbounded pieces", ok, || {
                        (
                            x.to_string(),
                            format!(
                                "piece of {name} containing x has no {}",
                                if up { "greatest" } else { "least" }
                            ),
                            "x is extremal in its piece".into(),
                        )
                    });
                }
            }
        }
    }
    Ok(r)
}

/// Checks the clauses of a cyclic equivalence on sampled elements of both
/// sides.
pub fn validate_equivalence(
    ce: &CycEquivWitness,
    seed: u64,
    samples: usize,
) -> Result<CheckReport> {
    let mut r = CheckReport::new();
    let sides = PieceMaps {
        term: &ce.right,
        cut_dom: &ce.cut_left,
        cut_cod: &ce.cut_right,
        f1: &ce.f1,
        f1_inv: &ce.f1_inv,
        f2: &ce.f2,
        f2_inv: &ce.f2_inv,
    };
    let (left, lpairs) = probe_pairs(&ce.left, seed, samples)?;
    sides.check_domain(&mut r, &left, &lpairs)?;
    let (right, rpairs) = probe_pairs(&ce.right, seed.wrapping_add(1), samples)?;
    sides.check_codomain(&mut r, &ce.left, &right, &rpairs)?;
    Ok(r)
}

/// Checks that `aut` preserves the cyclic relation on sampled triples and
/// that its inverse undoes it.
pub fn check_automorphism(
    aut: &CyclicAutomorphism,
    seed: u64,
    samples: usize,
) -> Result<CheckReport> {
    let mut r = CheckReport::new();
    let t = &aut.term;
    let (elems, _) = probe_pairs(t, seed, samples)?;
    let mut images = Vec::with_capacity(elems.len());
    for x in &elems {
        let y = try_check!(r, "phi total", x.to_string(), aut.forward.apply(x));
        let valid = t.check(&y).is_ok();
        r.ensure("phi total", valid, || {
            (x.to_string(), format!("element of {t}"), y.to_string())
        });
        let back = try_check!(r, "phi^-1 phi = id", x.to_string(), aut.inverse.apply(&y));
        r.ensure("phi^-1 phi = id", back == *x, || {
            (x.to_string(), x.to_string(), back.to_string())
        });
        let z = try_check!(r, "phi phi^-1 = id", x.to_string(), aut.inverse.apply(x));
        let again = try_check!(r, "phi phi^-1 = id", x.to_string(), aut.forward.apply(&z));
        r.ensure("phi phi^-1 = id", again == *x, || {
            (x.to_string(), x.to_string(), again.to_string())
        });
        images.push(y);
    }
    let n = elems.len();
    if n < 3 {
        return Ok(r);
    }
    let triples: Vec<(usize, usize, usize)> = if n <= 16 {
        (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .filter(|&(i, j, k)| i != j && j != k && i != k)
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples.max(n))
            .map(|_| {
                let mut pick = || rng.random_range(0..n);
                (pick(), pick(), pick())
            })
            .filter(|&(i, j, k)| i != j && j != k && i != k)
            .collect()
    };
    for (i, j, k) in triples {
        let (x, y, z) = (&elems[i], &elems[j], &elems[k]);
        let before = try_check!(
            r,
            "R preserved",
            format!("{x}, {y}, {z}"),
            cyclic_r(t, x, y, z)
        );
        let after = try_check!(
            r,
            "R preserved",
            format!("{x}, {y}, {z}"),
            cyclic_r(t, &images[i], &images[j], &images[k])
        );
        r.ensure("R preserved", before == after, || {
            (
                format!("{x}, {y}, {z}"),
                before.to_string(),
                after.to_string(),
            )
        });
    }
    Ok(r)
}

// The two isomorphisms `L1 -> L1'` and `L2 -> L2'` between a domain cut
// `cut_dom` (membership in `L1`) and a codomain cut `cut_cod` (membership
// in `L2'`).
struct PieceMaps<'a> {
    term: &'a OrderTerm,
    cut_dom: &'a Cut,
    cut_cod: &'a Cut,
    f1: &'a ElementMap,
    f1_inv: &'a ElementMap,
    f2: &'a ElementMap,
    f2_inv: &'a ElementMap,
}

impl PieceMaps<'_> {
    fn check_domain(
        &self,
        r: &mut CheckReport,
        elems: &[Element],
        pairs: &[(usize, usize)],
    ) -> Result<()> {
        if r.counterexample.is_some() {
            return Ok(());
        }
        let cod = self.term;
        let mut side = Vec::with_capacity(elems.len());
        let mut images = Vec::with_capacity(elems.len());
        for x in elems {
            let in1 = match self.cut_dom.contains(x) {
                Ok(v) => v,
                Err(e) => {
                    r.error("L1 membership", x.to_string(), &e);
                    return Ok(());
                }
            };
            let (f, f_inv) = if in1 {
                (self.f1, self.f1_inv)
            } else {
                (self.f2, self.f2_inv)
            };
            let y = match f.apply(x) {
                Ok(y) => y,
                Err(e) => {
                    r.error("maps defined on pieces", x.to_string(), &e);
                    return Ok(());
                }
            };
            let valid = cod.check(&y).is_ok();
            r.ensure("image is an element", valid, || {
                (x.to_string(), format!("element of {cod}"), y.to_string())
            });
            let lands = self.cut_cod.contains(&y).map(|in2p| in2p != in1);
            match lands {
                Ok(ok) => {
                    r.ensure("F1(L1) in L1', F2(L2) in L2'", ok, || {
                        (
                            x.to_string(),
                            format!("image in the piece matching L{}", if in1 { 1 } else { 2 }),
                            y.to_string(),
                        )
                    });
                }
                Err(e) => {
                    r.error("L2' membership", y.to_string(), &e);
                    return Ok(());
                }
            }
            match f_inv.apply(&y) {
                Ok(back) => {
                    r.ensure("inverse after forward", back == *x, || {
                        (x.to_string(), x.to_string(), back.to_string())
                    });
                }
                Err(e) => {
                    r.error("inverse after forward", y.to_string(), &e);
                    return Ok(());
                }
            }
            side.push(in1);
            images.push(y);
        }
        for &(i, j) in pairs {
            let (x, y) = (&elems[i], &elems[j]);
            r.ensure("L1 downward closed", !side[j] || side[i], || {
                (
                    format!("{x} < {y}"),
                    "y in L1 implies x in L1".into(),
                    "x in L2, y in L1".into(),
                )
            });
            if side[i] == side[j] {
                let lt = cod.lt(&images[i], &images[j])?;
                r.ensure("monotone on pieces", lt, || {
                    (
                        format!("{x} < {y}"),
                        "F(x) < F(y)".into(),
                        format!("{} >= {}", images[i], images[j]),
                    )
                });
            }
        }
        Ok(())
    }

    fn check_codomain(
        &self,
        r: &mut CheckReport,
        dom: &OrderTerm,
        elems: &[Element],
        pairs: &[(usize, usize)],
    ) -> Result<()> {
        if r.counterexample.is_some() {
            return Ok(());
        }
        let mut side = Vec::with_capacity(elems.len());
        for y in elems {
            let in2p = match self.cut_cod.contains(y) {
                Ok(v) => v,
                Err(e) => {
                    r.error("L2' membership", y.to_string(), &e);
                    return Ok(());
                }
            };
            let (f, f_inv) = if in2p {
                (self.f2, self.f2_inv)
            } else {
                (self.f1, self.f1_inv)
            };
            let x = match f_inv.apply(y) {
                Ok(x) => x,
                Err(e) => {
                    r.error("surjective onto pieces", y.to_string(), &e);
                    return Ok(());
                }
            };
            let valid = dom.check(&x).is_ok();
            r.ensure("preimage is an element", valid, || {
                (y.to_string(), format!("element of {dom}"), x.to_string())
            });
            match self.cut_dom.contains(&x) {
                Ok(in1) => {
                    r.ensure("preimage in the matching piece", in1 != in2p, || {
                        (
                            y.to_string(),
                            "preimage in the matching piece".into(),
                            x.to_string(),
                        )
                    });
                }
                Err(e) => {
                    r.error("L1 membership", x.to_string(), &e);
                    return Ok(());
                }
            }
            match f.apply(&x) {
                Ok(again) => {
                    r.ensure("forward after inverse", again == *y, || {
                        (y.to_string(), y.to_string(), again.to_string())
                    });
                }
                Err(e) => {
                    r.error("forward after inverse", x.to_string(), &e);
                    return Ok(());
                }
            }
            side.push(in2p);
        }
        for &(i, j) in pairs {
            let (x, y) = (&elems[i], &elems[j]);
            r.ensure("L2' downward closed", !side[j] || side[i], || {
                (
                    format!("{x} < {y}"),
                    "y in L2' implies x in L2'".into(),
                    "x in L1', y in L2'".into(),
                )
            });
        }
        Ok(())
    }
}

// Finds an element strictly above (or below) `x` on the same side of `cut`.
// Discrete orders use the neighbour; otherwise `between` is bisected toward
// `x` from the nearest probe element on the other side.
fn escapes(
    t: &OrderTerm,
    x: &Element,
    cut: &Cut,
    inside: bool,
    up: bool,
    probes: &[Element],
) -> Result<bool> {
    let same = |e: &Element| -> Result<bool> { Ok(cut.contains(e)? == inside) };
    let neighbour = if up {
        t.successor(x)?
    } else {
        t.predecessor(x)?
    };
    if let Some(n) = neighbour {
        return same(&n);
    }
    let mut far: Option<Element> = None;
    for p in probes {
        let beyond = if up { t.lt(x, p)? } else { t.lt(p, x)? };
        if beyond && !same(p)? {
            let closer = match &far {
                None => true,
                Some(f) => {
                    if up {
                        t.lt(p, f)?
                    } else {
                        t.lt(f, p)?
                    }
                }
            };
            if closer {
                far = Some(p.clone());
            }
        }
    }
    for _ in 0..BISECTIONS {
        let c = if up {
            t.between(Some(x), far.as_ref())?
        } else {
            t.between(far.as_ref(), Some(x))?
        };
        let Some(c) = c else { return Ok(false) };
        if same(&c)? {
            return Ok(true);
        }
        far = Some(c);
    }
    Ok(false)
}
