//! Symbolic countable linear orders and their concrete elements.
//!
//! An [`OrderTerm`] is built from the finite orders, `w`, `w*`, `z`
//! (integers), `eta` (rationals), sums, colex products, pointed
//! finite-support exponentials and reversal. Each constructor has a concrete
//! [`Element`] representation; every operation in this module works on
//! those elements directly, so infinite orders are never materialized.

mod backforth;
mod classify;
mod compare;
mod element;
mod neighbors;
pub mod rational;
mod reverse;
mod sample;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

pub use backforth::{back_and_forth, BackAndForthOutcome};
pub(crate) use classify::require_discrete_unbounded;
pub use classify::{finite_size, Classification};
pub use element::{Element, Position, Support};
pub use neighbors::Extremum;
pub use rational::Rational;
pub use sample::{sample, sample_with};

/// Exponent of a pointed exponential: an ordinal (positions are ordinals
/// below it) or an arbitrary order term (positions are its elements).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Exponent {
    Ordinal(Ordinal),
    Term(Box<OrderTerm>),
}

impl Exponent {
    pub fn as_ordinal(&self) -> Option<&Ordinal> {
        match self {
            Exponent::Ordinal(o) => Some(o),
            Exponent::Term(_) => None,
        }
    }

    pub fn as_term(&self) -> Option<&OrderTerm> {
        match self {
            Exponent::Term(t) => Some(t),
            Exponent::Ordinal(_) => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Exponent::Ordinal(o) => o.is_zero(),
            Exponent::Term(t) => t.is_empty(),
        }
    }

    pub fn compare_positions(&self, p: &Position, q: &Position) -> Result<std::cmp::Ordering> {
        match (self, p, q) {
            (Exponent::Ordinal(_), Position::Ord(a), Position::Ord(b)) => Ok(a.cmp(b)),
            (Exponent::Term(t), Position::Elem(a), Position::Elem(b)) => t.compare(a, b),
            _ => Err(Error::InvalidPosition {
                position: format!("{p} / {q}"),
                exponent: self.to_string(),
            }),
        }
    }

    pub fn check_position(&self, p: &Position) -> Result<()> {
        let ok = match (self, p) {
            (Exponent::Ordinal(alpha), Position::Ord(o)) => o < alpha,
            (Exponent::Term(t), Position::Elem(e)) => t.check(e).is_ok(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidPosition {
                position: p.to_string(),
                exponent: self.to_string(),
            })
        }
    }

    /// Least position, if the exponent has one.
    pub fn least_position(&self) -> Result<Option<Position>> {
        match self {
            Exponent::Ordinal(o) if o.is_zero() => Ok(None),
            Exponent::Ordinal(_) => Ok(Some(Position::Ord(Ordinal::zero()))),
            Exponent::Term(t) => Ok(t.extremum(Extremum::Least)?.map(Position::Elem)),
        }
    }

    /// Immediate successor of a position inside the exponent.
    pub fn next_position(&self, p: &Position) -> Result<Option<Position>> {
        match (self, p) {
            (Exponent::Ordinal(alpha), Position::Ord(o)) => {
                let s = o.succ();
                Ok((s < *alpha).then_some(Position::Ord(s)))
            }
            (Exponent::Term(t), Position::Elem(e)) => Ok(t.neighbors(e)?.1.map(Position::Elem)),
            _ => Err(Error::InvalidPosition {
                position: p.to_string(),
                exponent: self.to_string(),
            }),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Ordinal(o) => write!(f, "{o}"),
            Exponent::Term(t) => write!(f, "[{t}]"),
        }
    }
}

impl From<Ordinal> for Exponent {
    fn from(o: Ordinal) -> Self {
        Exponent::Ordinal(o)
    }
}

impl From<OrderTerm> for Exponent {
    fn from(t: OrderTerm) -> Self {
        Exponent::Term(Box::new(t))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum OrderTerm {
    /// The finite order with `n` elements; `Fin(0)` is empty.
    Fin(u64),
    Omega,
    OmegaStar,
    Zeta,
    Eta,
    /// Every element of the left summand lies below every element of the right.
    Sum(Box<OrderTerm>, Box<OrderTerm>),
    /// Pairs in colex order: the right factor decides first.
    Prod(Box<OrderTerm>, Box<OrderTerm>),
    /// Finite-support functions `exponent -> base`, equal to `point`
    /// almost everywhere.
    Exp {
        base: Box<OrderTerm>,
        point: Box<Element>,
        exponent: Exponent,
    },
    /// Same elements as the inner term, opposite order.
    Rev(Box<OrderTerm>),
}

impl OrderTerm {
    pub fn sum(a: OrderTerm, b: OrderTerm) -> Self {
        OrderTerm::Sum(Box::new(a), Box::new(b))
    }

    pub fn prod(a: OrderTerm, b: OrderTerm) -> Self {
        OrderTerm::Prod(Box::new(a), Box::new(b))
    }

    /// Pointed exponential; the base must be non-empty and contain `point`.
    pub fn exp(base: OrderTerm, point: Element, exponent: impl Into<Exponent>) -> Result<Self> {
        if base.is_empty() {
            return Err(Error::EmptyOrder(base.to_string()));
        }
        base.check(&point)?;
        Ok(OrderTerm::Exp {
            base: Box::new(base),
            point: Box::new(point),
            exponent: exponent.into(),
        })
    }

    /// `(Zeta, 0)^alpha`, the integer power used throughout the witness
    /// families.
    pub fn zeta_power(alpha: Ordinal) -> Self {
        OrderTerm::Exp {
            base: Box::new(OrderTerm::Zeta),
            point: Box::new(Element::Zeta(0)),
            exponent: Exponent::Ordinal(alpha),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            OrderTerm::Fin(n) => *n == 0,
            OrderTerm::Sum(a, b) => a.is_empty() && b.is_empty(),
            OrderTerm::Prod(a, b) => a.is_empty() || b.is_empty(),
            OrderTerm::Rev(x) => x.is_empty(),
            _ => false,
        }
    }

    /// Base, point and exponent of an exponential term.
    pub fn as_exp(&self) -> Option<(&OrderTerm, &Element, &Exponent)> {
        match self {
            OrderTerm::Exp {
                base,
                point,
                exponent,
            } => Some((base, point, exponent)),
            _ => None,
        }
    }

    /// Reads a well-ordered term back as an ordinal.
    pub fn as_ordinal(&self) -> Option<Ordinal> {
        match self {
            OrderTerm::Fin(n) => Some(Ordinal::nat(*n)),
            OrderTerm::Omega => Some(Ordinal::omega()),
            OrderTerm::Sum(a, b) => Some(a.as_ordinal()?.add(&b.as_ordinal()?)),
            OrderTerm::Prod(a, b) => Some(a.as_ordinal()?.mul(&b.as_ordinal()?)),
            OrderTerm::Rev(x) => x.as_ordinal()?.as_nat().map(Ordinal::nat),
            _ => None,
        }
    }
}

impl FromStr for OrderTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::cli::parse::parse_term(s)
    }
}

// Pretty printer. `+` and `*` are right associative and `*` binds tighter,
// matching the parser.
impl fmt::Display for OrderTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderTerm::Fin(n) => write!(f, "{n}"),
            OrderTerm::Omega => write!(f, "w"),
            OrderTerm::OmegaStar => write!(f, "w*"),
            OrderTerm::Zeta => write!(f, "z"),
            OrderTerm::Eta => write!(f, "eta"),
            OrderTerm::Sum(a, b) => {
                if matches!(**a, OrderTerm::Sum(..)) {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                write!(f, " + {b}")
            }
            OrderTerm::Prod(a, b) => {
                if matches!(**a, OrderTerm::Sum(..) | OrderTerm::Prod(..)) {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                if matches!(**a, OrderTerm::OmegaStar) {
                    write!(f, " ")?;
                }
                write!(f, "*")?;
                if matches!(**b, OrderTerm::Sum(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            OrderTerm::Exp {
                base,
                point,
                exponent,
            } => write!(f, "exp({base}@{point}, {exponent})"),
            OrderTerm::Rev(x) => write!(f, "rev({x})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> OrderTerm {
        s.parse().unwrap()
    }

    #[test]
    fn printing_respects_precedence() {
        let term = OrderTerm::sum(
            OrderTerm::Omega,
            OrderTerm::sum(
                OrderTerm::prod(OrderTerm::Zeta, OrderTerm::Eta),
                OrderTerm::OmegaStar,
            ),
        );
        assert_eq!(term.to_string(), "w + z*eta + w*");
        let left_nested = OrderTerm::sum(
            OrderTerm::sum(OrderTerm::Omega, OrderTerm::Omega),
            OrderTerm::Zeta,
        );
        assert_eq!(left_nested.to_string(), "(w + w) + z");
        let prod_of_sum = OrderTerm::prod(
            OrderTerm::sum(OrderTerm::Fin(1), OrderTerm::Fin(1)),
            OrderTerm::Omega,
        );
        assert_eq!(prod_of_sum.to_string(), "(1 + 1)*w");
        assert_eq!(
            OrderTerm::prod(OrderTerm::OmegaStar, OrderTerm::Fin(2)).to_string(),
            "w* *2"
        );
    }

    #[test]
    fn exp_requires_valid_point() {
        assert!(OrderTerm::exp(OrderTerm::Fin(0), Element::Fin(0), Ordinal::omega()).is_err());
        assert!(OrderTerm::exp(OrderTerm::Omega, Element::Zeta(0), Ordinal::omega()).is_err());
        assert!(OrderTerm::exp(OrderTerm::Omega, Element::Omega(3), Ordinal::omega()).is_ok());
    }

    #[test]
    fn ordinal_readback() {
        assert_eq!(t("w*2").as_ordinal(), Some("w*2".parse().unwrap()));
        assert_eq!(t("2*w").as_ordinal(), Some(Ordinal::omega()));
        assert_eq!(t("w + 3").as_ordinal(), Some("w + 3".parse().unwrap()));
        assert_eq!(t("z").as_ordinal(), None);
    }
}
