use serde::Serialize;

use super::{Exponent, Extremum, OrderTerm};
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

/// Order-theoretic flags of a term. For the empty order every flag is
/// vacuously true.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Classification {
    pub has_least: bool,
    pub has_greatest: bool,
    pub discrete: bool,
    pub dense: bool,
    pub empty: bool,
}

impl Classification {
    const EMPTY: Classification = Classification {
        has_least: true,
        has_greatest: true,
        discrete: true,
        dense: true,
        empty: true,
    };

    const POINT: Classification = Classification {
        has_least: true,
        has_greatest: true,
        discrete: true,
        dense: true,
        empty: false,
    };

    fn atom(has_least: bool, has_greatest: bool, discrete: bool, dense: bool) -> Self {
        Classification {
            has_least,
            has_greatest,
            discrete,
            dense,
            empty: false,
        }
    }

    pub fn unbounded(&self) -> bool {
        !self.empty && !self.has_least && !self.has_greatest
    }

    pub fn discrete_unbounded(&self) -> bool {
        self.discrete && self.unbounded()
    }

    fn both_ends(&self) -> bool {
        self.has_least && self.has_greatest
    }
}

/// Number of elements when the term is finite, `None` when infinite.
/// Sizes saturate at `u64::MAX`.
pub fn finite_size(term: &OrderTerm) -> Option<u64> {
    match term {
        OrderTerm::Fin(n) => Some(*n),
        OrderTerm::Omega | OrderTerm::OmegaStar | OrderTerm::Zeta | OrderTerm::Eta => None,
        OrderTerm::Sum(a, b) => Some(finite_size(a)?.saturating_add(finite_size(b)?)),
        OrderTerm::Prod(a, b) => {
            if a.is_empty() || b.is_empty() {
                return Some(0);
            }
            Some(finite_size(a)?.saturating_mul(finite_size(b)?))
        }
        OrderTerm::Exp { base, exponent, .. } => {
            let width = match exponent {
                Exponent::Ordinal(o) => o.as_nat(),
                Exponent::Term(t) => finite_size(t),
            };
            let base_size = finite_size(base);
            match (width, base_size) {
                (Some(0), _) | (_, Some(1)) => Some(1),
                (Some(w), Some(b)) => Some(
                    u32::try_from(w)
                        .ok()
                        .and_then(|w| b.checked_pow(w))
                        .unwrap_or(u64::MAX),
                ),
                _ => None,
            }
        }
        OrderTerm::Rev(x) => finite_size(x),
    }
}

struct Shape {
    class: Classification,
    size: Option<u64>,
}

impl Shape {
    fn singleton(&self) -> bool {
        self.size == Some(1)
    }
}

impl OrderTerm {
    /// Structural classification. Exponentials whose exponent term is
    /// outside the decidable fragment yield [`Error::Unsupported`].
    pub fn classify(&self) -> Result<Classification> {
        Ok(self.shape()?.class)
    }

    fn shape(&self) -> Result<Shape> {
        let size = finite_size(self);
        if size == Some(0) {
            return Ok(Shape {
                class: Classification::EMPTY,
                size,
            });
        }
        if size == Some(1) {
            return Ok(Shape {
                class: Classification::POINT,
                size,
            });
        }
        let class = match self {
            // n >= 2 here.
            OrderTerm::Fin(_) => Classification::atom(true, true, true, false),
            OrderTerm::Omega => Classification::atom(true, false, true, false),
            OrderTerm::OmegaStar => Classification::atom(false, true, true, false),
            OrderTerm::Zeta => Classification::atom(false, false, true, false),
            OrderTerm::Eta => Classification::atom(false, false, false, true),
            OrderTerm::Sum(a, b) => sum_class(&a.shape()?, &b.shape()?),
            OrderTerm::Prod(a, b) => prod_class(&a.shape()?, &b.shape()?),
            OrderTerm::Exp {
                base,
                point,
                exponent,
            } => {
                let base_shape = base.shape()?;
                let point_least = base.extremum(Extremum::Least)?.as_ref() == Some(&**point);
                let point_greatest = base.extremum(Extremum::Greatest)?.as_ref() == Some(&**point);
                exp_class(&base_shape, point_least, point_greatest, exponent)?
            }
            OrderTerm::Rev(x) => {
                let c = x.classify()?;
                Classification {
                    has_least: c.has_greatest,
                    has_greatest: c.has_least,
                    ..c
                }
            }
        };
        Ok(Shape { class, size })
    }
}

fn sum_class(a: &Shape, b: &Shape) -> Classification {
    let (ca, cb) = (a.class, b.class);
    if ca.empty {
        return cb;
    }
    if cb.empty {
        return ca;
    }
    Classification::atom(
        ca.has_least,
        cb.has_greatest,
        // A greatest element of A needs a least element of B to be its
        // successor, and conversely.
        ca.discrete && cb.discrete && ca.has_greatest == cb.has_least,
        ca.dense && cb.dense && !(ca.has_greatest && cb.has_least),
    )
}

// Colex product: |B| copies of A.
fn prod_class(a: &Shape, b: &Shape) -> Classification {
    let (ca, cb) = (a.class, b.class);
    if a.singleton() {
        return cb;
    }
    if b.singleton() {
        return ca;
    }
    let discrete = if !ca.discrete {
        false
    } else if ca.unbounded() {
        true
    } else if ca.both_ends() {
        cb.discrete
    } else {
        false
    };
    Classification::atom(
        ca.has_least && cb.has_least,
        ca.has_greatest && cb.has_greatest,
        discrete,
        ca.dense && (cb.dense || !ca.both_ends()),
    )
}

fn exp_class(
    base: &Shape,
    point_least: bool,
    point_greatest: bool,
    exponent: &Exponent,
) -> Result<Classification> {
    match exponent {
        Exponent::Ordinal(alpha) => Ok(ordinal_power_class(
            base,
            point_least,
            point_greatest,
            alpha,
        )),
        Exponent::Term(t) => {
            if let Some(n) = finite_size(t) {
                return Ok(ordinal_power_class(
                    base,
                    point_least,
                    point_greatest,
                    &Ordinal::nat(n),
                ));
            }
            if t.extremum(Extremum::Least)?.is_none() {
                // Between any two functions there is a third, obtained by
                // changing a value below both supports.
                return Ok(Classification::atom(
                    point_least,
                    point_greatest,
                    false,
                    true,
                ));
            }
            let (alpha, rest) = crate::exponential::split_exponent(t)?;
            let head = ordinal_power_class(base, point_least, point_greatest, &alpha);
            if rest.is_empty() {
                return Ok(head);
            }
            let tail = Shape {
                class: Classification::atom(point_least, point_greatest, false, true),
                size: None,
            };
            let head = Shape {
                class: head,
                size: if alpha.is_zero() { Some(1) } else { None },
            };
            Ok(prod_class(&head, &tail))
        }
    }
}

// The base is neither empty nor a singleton.
fn ordinal_power_class(
    base: &Shape,
    point_least: bool,
    point_greatest: bool,
    alpha: &Ordinal,
) -> Classification {
    let cb = base.class;
    if let Some(n) = alpha.as_nat() {
        // A finite power is an iterated product; its class is stable from
        // the square on.
        let mut acc = Shape {
            class: Classification::POINT,
            size: Some(1),
        };
        for _ in 0..n.min(3) {
            acc = Shape {
                class: prod_class(base, &acc),
                size: None,
            };
        }
        return acc.class;
    }
    // Position 0 is least, so any gap or jump in the base reappears there.
    let discrete = cb.discrete
        && (cb.unbounded()
            || (cb.both_ends() && !point_least && !point_greatest)
            || (cb.both_ends() && *alpha == Ordinal::omega()));
    Classification::atom(point_least, point_greatest, discrete, cb.dense)
}

/// Rejects terms that are not discrete and unbounded.
pub(crate) fn require_discrete_unbounded(term: &OrderTerm) -> Result<Classification> {
    let c = term.classify()?;
    if c.discrete_unbounded() {
        Ok(c)
    } else {
        Err(Error::NotDiscreteUnbounded(term.to_string()))
    }
}
