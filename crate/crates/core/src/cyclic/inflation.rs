use super::{Automorphism, ElementMap, Shift};
use crate::error::{Error, Result};
use crate::linorder::{Element, OrderTerm, Position};

/// Whether `phi^-n(a) < c < phi^n(a)` for some `n`. The search tries
/// `n <= bound`; translations fall back to an exact decision, anything
/// else reports the bound as exceeded.
pub fn in_orbit_interval(
    phi: &Automorphism,
    a: &Element,
    c: &Element,
    bound: usize,
) -> Result<bool> {
    let t = &phi.term;
    let (mut lo, mut hi) = (a.clone(), a.clone());
    for _ in 0..bound {
        lo = phi.inverse.apply(&lo)?;
        hi = phi.forward.apply(&hi)?;
        if hi == *a {
            return Ok(false);
        }
        if t.lt(&lo, c)? && t.lt(c, &hi)? {
            return Ok(true);
        }
    }
    match &phi.shift {
        Some(s) => exact(s, t, a, c),
        None => Err(Error::SearchBoundExceeded {
            element: c.to_string(),
            bound,
        }),
    }
}

/// Assumes `a <= phi(a)`, so that a non-trivial translation moves the
/// orbit of `a` upward.
fn exact(s: &Shift, t: &OrderTerm, a: &Element, c: &Element) -> Result<bool> {
    match (s, t) {
        (_, OrderTerm::Rev(x)) => exact(s, x, a, c),
        (Shift::Trivial, _) => Ok(false),
        (Shift::Int(d), _) => Ok(*d != 0),
        (Shift::Rat(d), _) => Ok(*d != num_traits::Zero::zero()),
        (Shift::Vector(v), _) => {
            let Some((top, _)) = v.last() else {
                return Ok(false);
            };
            let exponent = match t.as_exp() {
                Some((_, _, e)) => e,
                None => return Err(t.mismatch(a)),
            };
            let above = |e: &Element| -> Result<Vec<(Position, Element)>> {
                let s = e.as_support().ok_or_else(|| t.mismatch(e))?;
                let mut out = Vec::new();
                for (p, x) in s.entries() {
                    if exponent.compare_positions(p, top)?.is_gt() {
                        out.push((p.clone(), x.clone()));
                    }
                }
                Ok(out)
            };
            Ok(above(a)? == above(c)?)
        }
        (Shift::Prod(sx, sy), OrderTerm::Prod(x, y)) => {
            let ((ax, ay), (cx, cy)) = match (a.as_pair(), c.as_pair()) {
                (Some(p), Some(q)) => (p, q),
                _ => return Err(t.mismatch(c)),
            };
            if exact(sy, y, ay, cy)? {
                return Ok(true);
            }
            Ok(sy.is_identity() && ay == cy && exact(sx, x, ax, cx)?)
        }
        _ => Err(t.mismatch(a)),
    }
}

/// An inflationary automorphism agreeing with `phi` on the orbit interval
/// of `a` and with the identity elsewhere. Membership is decided lazily,
/// so applying the result can fail with `SearchBoundExceeded`.
pub fn inflationary_modify(
    phi: &Automorphism,
    a: &Element,
    b: &Element,
    bound: usize,
) -> Result<Automorphism> {
    let t = &phi.term;
    let image = phi.forward.apply(a)?;
    if image != *b {
        return Err(Error::PointMismatch(format!(
            "phi({a}) = {image}, expected {b}"
        )));
    }
    if !t.le(a, b)? {
        return Err(Error::HypothesisFailed(format!("{a} <= {b}")));
    }
    let (p, q) = (phi.clone(), phi.clone());
    let (a1, a2) = (a.clone(), a.clone());
    Ok(Automorphism {
        term: t.clone(),
        forward: ElementMap::new(
            format!(
                "{} on I(a,b), identity elsewhere",
                phi.forward.description()
            ),
            move |x| {
                if in_orbit_interval(&p, &a1, x, bound)? {
                    p.forward.apply(x)
                } else {
                    Ok(x.clone())
                }
            },
        ),
        // The interval is invariant under phi.
        inverse: ElementMap::new(
            format!(
                "{} on I(a,b), identity elsewhere",
                phi.inverse.description()
            ),
            move |y| {
                if in_orbit_interval(&q, &a2, y, bound)? {
                    q.inverse.apply(y)
                } else {
                    Ok(y.clone())
                }
            },
        ),
        shift: None,
    })
}
