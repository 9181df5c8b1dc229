use std::cmp::Ordering;

use super::{Element, Exponent, OrderTerm, Support};
use crate::error::Result;

impl OrderTerm {
    /// Total order on the elements of this term.
    pub fn compare(&self, a: &Element, b: &Element) -> Result<Ordering> {
        match self {
            OrderTerm::Fin(n) => match (a, b) {
                (Element::Fin(x), Element::Fin(y)) if x < n && y < n => Ok(x.cmp(y)),
                _ => Err(self.mismatch(if matches!(a, Element::Fin(x) if x < n) {
                    b
                } else {
                    a
                })),
            },
            OrderTerm::Omega => match (a, b) {
                (Element::Omega(x), Element::Omega(y)) => Ok(x.cmp(y)),
                _ => Err(self.mismatch(pick_bad(a, b, |e| matches!(e, Element::Omega(_))))),
            },
            OrderTerm::OmegaStar => match (a, b) {
                (Element::OmegaStar(x), Element::OmegaStar(y)) => Ok(y.cmp(x)),
                _ => Err(self.mismatch(pick_bad(a, b, |e| matches!(e, Element::OmegaStar(_))))),
            },
            OrderTerm::Zeta => match (a, b) {
                (Element::Zeta(x), Element::Zeta(y)) => Ok(x.cmp(y)),
                _ => Err(self.mismatch(pick_bad(a, b, |e| matches!(e, Element::Zeta(_))))),
            },
            OrderTerm::Eta => match (a, b) {
                (Element::Eta(x), Element::Eta(y)) => Ok(x.cmp(y)),
                _ => Err(self.mismatch(pick_bad(a, b, |e| matches!(e, Element::Eta(_))))),
            },
            OrderTerm::Sum(l, r) => match (a, b) {
                (Element::Left(x), Element::Left(y)) => l.compare(x, y),
                (Element::Right(x), Element::Right(y)) => r.compare(x, y),
                (Element::Left(x), Element::Right(y)) => {
                    l.check(x)?;
                    r.check(y)?;
                    Ok(Ordering::Less)
                }
                (Element::Right(x), Element::Left(y)) => {
                    r.check(x)?;
                    l.check(y)?;
                    Ok(Ordering::Greater)
                }
                _ => Err(self.mismatch(pick_bad(a, b, |e| {
                    matches!(e, Element::Left(_) | Element::Right(_))
                }))),
            },
            OrderTerm::Prod(l, r) => match (a, b) {
                (Element::Pair(x1, y1), Element::Pair(x2, y2)) => match r.compare(y1, y2)? {
                    Ordering::Equal => l.compare(x1, x2),
                    ord => {
                        l.check(x1)?;
                        l.check(x2)?;
                        Ok(ord)
                    }
                },
                _ => Err(self.mismatch(pick_bad(a, b, |e| matches!(e, Element::Pair(..))))),
            },
            OrderTerm::Exp {
                base,
                point,
                exponent,
            } => match (a, b) {
                (Element::Fs(f), Element::Fs(g)) => compare_supports(base, point, exponent, f, g),
                _ => Err(self.mismatch(pick_bad(a, b, |e| matches!(e, Element::Fs(_))))),
            },
            OrderTerm::Rev(inner) => Ok(inner.compare(a, b)?.reverse()),
        }
    }

    pub fn lt(&self, a: &Element, b: &Element) -> Result<bool> {
        Ok(self.compare(a, b)? == Ordering::Less)
    }

    pub fn le(&self, a: &Element, b: &Element) -> Result<bool> {
        Ok(self.compare(a, b)? != Ordering::Greater)
    }
}

fn pick_bad<'a>(a: &'a Element, b: &'a Element, ok: impl Fn(&Element) -> bool) -> &'a Element {
    if ok(a) {
        b
    } else {
        a
    }
}

/// Compares two finite-support functions by their values at the greatest
/// position where they differ. Supports are walked from the top down.
pub(crate) fn compare_supports(
    base: &OrderTerm,
    point: &Element,
    exponent: &Exponent,
    f: &Support,
    g: &Support,
) -> Result<Ordering> {
    let fe = f.entries();
    let ge = g.entries();
    let (mut i, mut j) = (fe.len(), ge.len());
    while i > 0 || j > 0 {
        let ord = match (i, j) {
            (0, _) => Ordering::Less,
            (_, 0) => Ordering::Greater,
            _ => exponent.compare_positions(&fe[i - 1].0, &ge[j - 1].0)?,
        };
        let step = match ord {
            Ordering::Equal => {
                let o = base.compare(&fe[i - 1].1, &ge[j - 1].1)?;
                i -= 1;
                j -= 1;
                o
            }
            // f's top position is above g's: g holds the basepoint there.
            Ordering::Greater => {
                let o = base.compare(&fe[i - 1].1, point)?;
                i -= 1;
                o
            }
            Ordering::Less => {
                let o = base.compare(point, &ge[j - 1].1)?;
                j -= 1;
                o
            }
        };
        if step != Ordering::Equal {
            return Ok(step);
        }
    }
    Ok(Ordering::Equal)
}
