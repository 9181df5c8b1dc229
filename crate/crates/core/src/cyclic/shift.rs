use std::cmp::Ordering;
use std::fmt;

use num_traits::{CheckedAdd, Zero};

use super::ElementMap;
use crate::error::{Error, Result};
use crate::linorder::{Element, Exponent, OrderTerm, Position, Rational, Support};

/// A translation of an order in the family built from `z`, `eta`,
/// `(z,0)^gamma`, `1` and products of these.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Shift {
    /// The one-point order.
    Trivial,
    Int(i64),
    Rat(Rational),
    /// Pointwise addition on `(z,0)^gamma`; entries are non-zero and sorted
    /// by increasing position.
    Vector(Vec<(Position, i64)>),
    /// Componentwise on a product.
    Prod(Box<Shift>, Box<Shift>),
}

impl Shift {
    /// The translation carrying `a` to `b`.
    pub fn between(term: &OrderTerm, a: &Element, b: &Element) -> Result<Shift> {
        term.check(a)?;
        term.check(b)?;
        match (term, a, b) {
            (OrderTerm::Rev(x), _, _) => Shift::between(x, a, b),
            (OrderTerm::Fin(1), _, _) => Ok(Shift::Trivial),
            (OrderTerm::Zeta, Element::Zeta(x), Element::Zeta(y)) => y
                .checked_sub(*x)
                .map(Shift::Int)
                .ok_or_else(|| Error::OutOfRange(format!("{b} - {a}"))),
            (OrderTerm::Eta, Element::Eta(x), Element::Eta(y)) => Ok(Shift::Rat(y - x)),
            (OrderTerm::Exp { .. }, Element::Fs(f), Element::Fs(g)) => {
                let exponent = zeta_exponent(term)?;
                Ok(Shift::Vector(combine(exponent, &[(f, -1), (g, 1)], &[])?))
            }
            (OrderTerm::Prod(x, y), Element::Pair(ax, ay), Element::Pair(bx, by)) => {
                Ok(Shift::Prod(
                    Box::new(Shift::between(x, ax, bx)?),
                    Box::new(Shift::between(y, ay, by)?),
                ))
            }
            _ => Err(Error::UnsupportedFamily(term.to_string())),
        }
    }

    pub fn invert(&self) -> Shift {
        match self {
            Shift::Trivial => Shift::Trivial,
            Shift::Int(d) => Shift::Int(-d),
            Shift::Rat(d) => Shift::Rat(-d),
            Shift::Vector(v) => Shift::Vector(v.iter().map(|(p, x)| (p.clone(), -x)).collect()),
            Shift::Prod(x, y) => Shift::Prod(Box::new(x.invert()), Box::new(y.invert())),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Shift::Trivial => true,
            Shift::Int(d) => *d == 0,
            Shift::Rat(d) => d.is_zero(),
            Shift::Vector(v) => v.is_empty(),
            Shift::Prod(x, y) => x.is_identity() && y.is_identity(),
        }
    }

    pub fn apply(&self, term: &OrderTerm, e: &Element) -> Result<Element> {
        let overflow = || Error::OutOfRange(format!("{e} shifted by {self}"));
        match (self, term, e) {
            (_, OrderTerm::Rev(x), _) => self.apply(x, e),
            (Shift::Trivial, OrderTerm::Fin(1), Element::Fin(0)) => Ok(e.clone()),
            (Shift::Int(d), OrderTerm::Zeta, Element::Zeta(z)) => i64::checked_add(*z, *d)
                .map(Element::Zeta)
                .ok_or_else(overflow),
            (Shift::Rat(d), OrderTerm::Eta, Element::Eta(q)) => {
                q.checked_add(d).map(Element::Eta).ok_or_else(overflow)
            }
            (Shift::Vector(v), OrderTerm::Exp { .. }, Element::Fs(f)) => {
                let exponent = zeta_exponent(term)?;
                term.check(e)?;
                let entries = combine(exponent, &[(f, 1)], v)?;
                Ok(Element::Fs(Support::from_sorted(
                    entries
                        .into_iter()
                        .map(|(p, x)| (p, Element::Zeta(x)))
                        .collect(),
                )))
            }
            (Shift::Prod(sx, sy), OrderTerm::Prod(x, y), Element::Pair(ex, ey)) => {
                Ok(Element::pair(sx.apply(x, ex)?, sy.apply(y, ey)?))
            }
            _ => Err(term.mismatch(e)),
        }
    }

    pub fn map(&self, term: &OrderTerm) -> ElementMap {
        let (s, t) = (self.clone(), term.clone());
        ElementMap::new(format!("x + {self}"), move |e| s.apply(&t, e))
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shift::Trivial => write!(f, "0"),
            Shift::Int(d) => write!(f, "{d}"),
            Shift::Rat(d) => write!(f, "{d}"),
            Shift::Vector(v) => {
                write!(f, "{{")?;
                for (i, (p, x)) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}: {x}")?;
                }
                write!(f, "}}")
            }
            Shift::Prod(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

fn zeta_exponent(term: &OrderTerm) -> Result<&Exponent> {
    match term.as_exp() {
        Some((OrderTerm::Zeta, Element::Zeta(0), exponent)) => Ok(exponent),
        _ => Err(Error::UnsupportedFamily(term.to_string())),
    }
}

// Signed sum of integer-valued supports plus an extra vector, sorted by
// position with zero entries dropped.
fn combine(
    exponent: &Exponent,
    supports: &[(&Support, i64)],
    extra: &[(Position, i64)],
) -> Result<Vec<(Position, i64)>> {
    let mut acc: Vec<(Position, i64)> = Vec::new();
    let mut add = |p: &Position, x: i64| -> Result<()> {
        match acc.iter_mut().find(|(q, _)| q == p) {
            Some((_, y)) => {
                *y = y
                    .checked_add(x)
                    .ok_or_else(|| Error::OutOfRange(format!("entry at {p}")))?
            }
            None => acc.push((p.clone(), x)),
        }
        Ok(())
    };
    for (s, sign) in supports {
        for (p, v) in s.entries() {
            let Element::Zeta(z) = v else {
                return Err(Error::UnsupportedFamily(format!("value {v}")));
            };
            add(p, sign * z)?;
        }
    }
    for (p, x) in extra {
        add(p, *x)?;
    }
    acc.retain(|(_, x)| *x != 0);
    let mut err = None;
    acc.sort_by(|x, y| {
        exponent.compare_positions(&x.0, &y.0).unwrap_or_else(|e| {
            err = Some(e);
            Ordering::Equal
        })
    });
    match err {
        Some(e) => Err(e),
        None => Ok(acc),
    }
}
