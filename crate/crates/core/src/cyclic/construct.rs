use std::sync::Arc;

use super::{
    Automorphism, CtloWitness, Cut, CycEquivWitness, CyclicAutomorphism, ElementMap, Shift,
};
use crate::error::{Error, Result};
use crate::linorder::{sample, Element, OrderTerm};

fn fin_value(e: &Element) -> Result<u64> {
    match e {
        Element::Fin(i) => Ok(*i),
        _ => Err(OrderTerm::Fin(0).mismatch(e)),
    }
}

fn pair_parts(e: &Element) -> Result<(&Element, &Element)> {
    e.as_pair().ok_or_else(|| Error::ShapeMismatch {
        term: "product".into(),
        element: e.to_string(),
    })
}

fn whole(
    term: &OrderTerm,
    a: &Element,
    b: &Element,
    f: ElementMap,
    f_inv: ElementMap,
    via: &str,
) -> CtloWitness {
    CtloWitness {
        term: term.clone(),
        a: a.clone(),
        b: b.clone(),
        cut1: Cut::all(),
        cut2: Cut::nothing(),
        f1: f,
        f1_inv: f_inv,
        f2: ElementMap::empty(),
        f2_inv: ElementMap::empty(),
        via: via.into(),
        shift: None,
    }
}

/// Rotation of `n` by `d = b - a`: `L1 = {0..n-1-d}`, `L2' = {0..d-1}`.
pub fn witness_finite_rotation(n: u64, a: u64, b: u64) -> Result<CtloWitness> {
    if !(a <= b && b < n) {
        return Err(Error::OutOfRange(format!(
            "need a <= b < n, got a={a}, b={b}, n={n}"
        )));
    }
    let term = OrderTerm::Fin(n);
    let (ea, eb) = (Element::Fin(a), Element::Fin(b));
    if a == b {
        return Ok(whole(
            &term,
            &ea,
            &eb,
            ElementMap::identity(),
            ElementMap::identity(),
            "rotation",
        ));
    }
    let d = b - a;
    let m = n - d;
    Ok(CtloWitness {
        term,
        a: ea,
        b: eb,
        cut1: Cut::new(
            format!("x <= {}", n - 1 - d),
            move |e| Ok(fin_value(e)? < m),
        ),
        cut2: Cut::new(format!("y < {d}"), move |e| Ok(fin_value(e)? < d)),
        f1: ElementMap::new(format!("x + {d}"), move |e| {
            Ok(Element::Fin(fin_value(e)? + d))
        }),
        f1_inv: ElementMap::new(format!("y - {d}"), move |e| {
            Ok(Element::Fin(fin_value(e)? - d))
        }),
        f2: ElementMap::new(format!("x - {m}"), move |e| {
            Ok(Element::Fin(fin_value(e)? - m))
        }),
        f2_inv: ElementMap::new(format!("y + {m}"), move |e| {
            Ok(Element::Fin(fin_value(e)? + m))
        }),
        via: "rotation".into(),
        shift: None,
    })
}

/// Whole-order translation witness on a term of the translation family.
/// `a <= b` is not required.
pub fn witness_translation(term: &OrderTerm, a: &Element, b: &Element) -> Result<CtloWitness> {
    let phi = Automorphism::translation(term, a, b)?;
    let mut w = whole(term, a, b, phi.forward, phi.inverse, "translation");
    w.shift = phi.shift;
    Ok(w)
}

/// Witness on `L * M` from a translation of `L` sending `a` to `b` and a
/// witness on `M`: `G_j(x, y) = (phi(x), F_j(y))`.
pub fn witness_product_left(
    l: &OrderTerm,
    a: &Element,
    b: &Element,
    m: &CtloWitness,
) -> Result<CtloWitness> {
    let phi = Automorphism::translation(l, a, b)?;
    let term = OrderTerm::prod(l.clone(), m.term.clone());
    let lift = |f: &ElementMap, g: &ElementMap| {
        let (f, g) = (f.clone(), g.clone());
        ElementMap::new(
            format!("({}, {})", f.description(), g.description()),
            move |e| {
                let (x, y) = pair_parts(e)?;
                Ok(Element::pair(f.apply(x)?, g.apply(y)?))
            },
        )
    };
    let on_second = |c: &Cut| {
        let c = c.clone();
        if c.is_all() || c.is_nothing() {
            return c;
        }
        Cut::new(
            format!("second coordinate in {}", c.description()),
            move |e| c.contains(pair_parts(e)?.1),
        )
    };
    let shift = match (&phi.shift, &m.shift) {
        (Some(x), Some(y)) if m.is_whole_order() => {
            Some(Shift::Prod(Box::new(x.clone()), Box::new(y.clone())))
        }
        _ => None,
    };
    Ok(CtloWitness {
        a: Element::pair(a.clone(), m.a.clone()),
        b: Element::pair(b.clone(), m.b.clone()),
        cut1: on_second(&m.cut1),
        cut2: on_second(&m.cut2),
        f1: lift(&phi.forward, &m.f1),
        f1_inv: lift(&phi.inverse, &m.f1_inv),
        f2: lift(&phi.forward, &m.f2),
        f2_inv: lift(&phi.inverse, &m.f2_inv),
        via: "prod55".into(),
        shift,
        term,
    })
}

/// Witness on `L * M` for `M` discrete and unbounded, at the points
/// `(wl.a, wr.a)` and `(wl.b, wr.b)` when `wl.a <= wl.b`.
///
/// When `reversed_first` is set, `wl` witnesses `(b, a)` on `L` with
/// `b < a`, and the result is taken at `(wl.b, wr.a)` and `(wl.a, wr.b)`;
/// the first coordinate is then moved by the inverse maps and the second by
/// predecessors.
pub fn witness_product_discrete(
    wl: &CtloWitness,
    wr: &CtloWitness,
    reversed_first: bool,
) -> Result<CtloWitness> {
    let m = wr.term.clone();
    crate::linorder::require_discrete_unbounded(&m)?;
    let term = OrderTerm::prod(wl.term.clone(), m.clone());
    let (a, b) = if reversed_first {
        (
            Element::pair(wl.b.clone(), wr.a.clone()),
            Element::pair(wl.a.clone(), wr.b.clone()),
        )
    } else {
        (
            Element::pair(wl.a.clone(), wr.a.clone()),
            Element::pair(wl.b.clone(), wr.b.clone()),
        )
    };
    if !term.le(&a, &b)? {
        return Err(Error::HypothesisFailed(format!("{a} <= {b}")));
    }
    if a == b {
        return Ok(whole(
            &term,
            &a,
            &b,
            ElementMap::identity(),
            ElementMap::identity(),
            "prod56",
        ));
    }
    let wl = Arc::new(wl.clone());
    let wr = Arc::new(wr.clone());
    let mt = Arc::new(m);
    let step = move |t: &OrderTerm, y: &Element, up: bool| -> Result<Element> {
        let s = if up {
            t.successor(y)?
        } else {
            t.predecessor(y)?
        };
        s.ok_or_else(|| Error::NotDiscreteUnbounded(t.to_string()))
    };

    // Which piece of M a second coordinate lies in, and its image.
    let m_forward = {
        let wr = Arc::clone(&wr);
        move |y: &Element| -> Result<Element> { wr.forward(y) }
    };
    let m_inverse = {
        let wr = Arc::clone(&wr);
        move |v: &Element| -> Result<Element> { wr.inverse(v) }
    };

    let glued = |first: bool| -> ElementMap {
        let (wl, mt) = (Arc::clone(&wl), Arc::clone(&mt));
        let (mf, mi) = (m_forward.clone(), m_inverse.clone());
        let desc = match (reversed_first, first) {
            (false, true) => "(F1 x, Fj y) on L1, (F2 x, Fj(y)+) on L2",
            (false, false) => "inverse of (F1 x, Fj y) | (F2 x, Fj(y)+)",
            (true, true) => "(F1^-1 x, Fj y) on L1', (F2^-1 x, Fj(y)-) on L2'",
            (true, false) => "inverse of (F1^-1 x, Fj y) | (F2^-1 x, Fj(y)-)",
        };
        ElementMap::new(desc, move |e| {
            let (x, y) = pair_parts(e)?;
            match (reversed_first, first) {
                (false, true) => {
                    let v = mf(y)?;
                    if wl.in_l1(x)? {
                        Ok(Element::pair(wl.f1.apply(x)?, v))
                    } else {
                        Ok(Element::pair(wl.f2.apply(x)?, step(&mt, &v, true)?))
                    }
                }
                (false, false) => {
                    if wl.in_l2_prime(x)? {
                        Ok(Element::pair(
                            wl.f2_inv.apply(x)?,
                            mi(&step(&mt, y, false)?)?,
                        ))
                    } else {
                        Ok(Element::pair(wl.f1_inv.apply(x)?, mi(y)?))
                    }
                }
                (true, true) => {
                    let v = mf(y)?;
                    if wl.in_l2_prime(x)? {
                        Ok(Element::pair(wl.f2_inv.apply(x)?, step(&mt, &v, false)?))
                    } else {
                        Ok(Element::pair(wl.f1_inv.apply(x)?, v))
                    }
                }
                (true, false) => {
                    if wl.in_l1(x)? {
                        Ok(Element::pair(wl.f1.apply(x)?, mi(y)?))
                    } else {
                        Ok(Element::pair(wl.f2.apply(x)?, mi(&step(&mt, y, true)?)?))
                    }
                }
            }
        })
    };
    let forward = glued(true);
    let inverse = glued(false);
    let cut1 = {
        let wr = Arc::clone(&wr);
        Cut::new(
            format!("second coordinate in {}", wr.cut1.description()),
            move |e| wr.in_l1(pair_parts(e)?.1),
        )
    };
    let cut2 = {
        let wr = Arc::clone(&wr);
        Cut::new(
            format!("second coordinate in {}", wr.cut2.description()),
            move |e| wr.in_l2_prime(pair_parts(e)?.1),
        )
    };
    Ok(CtloWitness {
        term,
        a,
        b,
        cut1,
        cut2,
        f1: forward.clone(),
        f1_inv: inverse.clone(),
        f2: forward,
        f2_inv: inverse,
        via: "prod56".into(),
        shift: None,
    })
}

/// Witness on the reversed term at `(rev b, rev a)`.
pub fn witness_reverse(w: &CtloWitness) -> Result<CtloWitness> {
    let term = w.term.clone();
    let rterm = term.reverse();
    let to = {
        let t = term.clone();
        ElementMap::new("rev⁻¹", move |e| t.unreverse_element(e))
    };
    let from = {
        let t = term.clone();
        ElementMap::new("rev", move |e| t.reverse_element(e))
    };
    let a = term.reverse_element(&w.b)?;
    let b = term.reverse_element(&w.a)?;
    let shift = match &w.shift {
        Some(_) => Some(Shift::between(&rterm, &a, &b)?),
        None => None,
    };
    Ok(CtloWitness {
        cut1: w
            .cut2
            .complement_through(&to, format!("rev(not {})", w.cut2.description())),
        cut2: w
            .cut1
            .complement_through(&to, format!("rev(not {})", w.cut1.description())),
        f1: to.then(&w.f1_inv).then(&from),
        f1_inv: to.then(&w.f1).then(&from),
        f2: to.then(&w.f2_inv).then(&from),
        f2_inv: to.then(&w.f2).then(&from),
        via: "reverse".into(),
        shift,
        term: rterm,
        a,
        b,
    })
}

/// Glues `F1` and `F2` into one cyclic automorphism.
pub fn cyclic_from_ctlo(w: &CtloWitness) -> CyclicAutomorphism {
    let (fw, iw) = (w.clone(), w.clone());
    CyclicAutomorphism {
        term: w.term.clone(),
        forward: ElementMap::new(
            format!("{} on L1, {} on L2", w.f1.description(), w.f2.description()),
            move |x| fw.forward(x),
        ),
        inverse: ElementMap::new(
            format!(
                "{} on L1', {} on L2'",
                w.f1_inv.description(),
                w.f2_inv.description()
            ),
            move |y| iw.inverse(y),
        ),
    }
}

const AUTOMORPHISM_SAMPLES: usize = 16;

/// Recovers a witness from a cyclic automorphism with `phi(a) = b`:
/// `L1 = {x | a <= x iff b <= phi(x)}`.
pub fn ctlo_from_cyclic(
    term: &OrderTerm,
    phi: &CyclicAutomorphism,
    a: &Element,
    b: &Element,
) -> Result<CtloWitness> {
    term.check(a)?;
    term.check(b)?;
    let image = phi.forward.apply(a)?;
    if image != *b {
        return Err(Error::PointMismatch(format!(
            "phi({a}) = {image}, expected {b}"
        )));
    }
    if !term.le(a, b)? {
        return Err(Error::HypothesisFailed(format!("{a} <= {b}")));
    }
    let report = super::check_automorphism(phi, 0, AUTOMORPHISM_SAMPLES)?;
    if let Some(c) = report.counterexample {
        return Err(Error::NotAutomorphism(format!("{}: {}", c.check, c.inputs)));
    }
    let cut1 = {
        let (t, f, a, b) = (term.clone(), phi.forward.clone(), a.clone(), b.clone());
        Cut::new(
            format!(
                "a <= x iff b <= phi(x), phi = {}",
                phi.forward.description()
            ),
            move |x| Ok(t.le(&a, x)? == t.le(&b, &f.apply(x)?)?),
        )
    };
    let cut2 = cut1.complement_through(&phi.inverse, "image of L2 under phi");
    Ok(CtloWitness {
        term: term.clone(),
        a: a.clone(),
        b: b.clone(),
        cut1,
        cut2,
        f1: phi.forward.clone(),
        f1_inv: phi.inverse.clone(),
        f2: phi.forward.clone(),
        f2_inv: phi.inverse.clone(),
        via: "cyclic".into(),
        shift: None,
    })
}

/// Carries a witness on `ce.left` to `ce.right` by conjugating the glued
/// cyclic automorphism. When the images of `a` and `b` come out in the
/// wrong order the inverse automorphism is used at the swapped points.
pub fn witness_transport(ce: &CycEquivWitness, w: &CtloWitness) -> Result<CtloWitness> {
    if ce.left != w.term {
        return Err(Error::HypothesisFailed(format!(
            "witness on {} but equivalence starts at {}",
            w.term, ce.left
        )));
    }
    let phi = cyclic_from_ctlo(w);
    let psi = ce.forward_map();
    let psi_inv = ce.backward_map();
    let forward = psi_inv.then(&phi.forward).then(&psi);
    let inverse = psi_inv.then(&phi.inverse).then(&psi);
    let a = ce.forward(&w.a)?;
    let b = ce.forward(&w.b)?;
    let mut out = if ce.right.le(&a, &b)? {
        let aut = CyclicAutomorphism {
            term: ce.right.clone(),
            forward,
            inverse,
        };
        ctlo_from_cyclic(&ce.right, &aut, &a, &b)?
    } else {
        let aut = CyclicAutomorphism {
            term: ce.right.clone(),
            forward: inverse,
            inverse: forward,
        };
        ctlo_from_cyclic(&ce.right, &aut, &b, &a)?
    };
    out.via = "transport".into();
    Ok(out)
}

/// Elements used to spot-check constructors; finite terms are enumerated.
pub(crate) fn probe(term: &OrderTerm, seed: u64, count: usize) -> Result<Vec<Element>> {
    match crate::linorder::finite_size(term) {
        Some(n) if n <= 64 => term.enumerate(64),
        _ => sample(term, seed, count),
    }
}
