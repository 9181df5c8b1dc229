use super::{Element, OrderTerm};
use crate::error::Result;

impl OrderTerm {
    /// The reversed order. Reversal is pushed through every constructor
    /// except exponentials, which are wrapped in a [`OrderTerm::Rev`] node.
    pub fn reverse(&self) -> OrderTerm {
        match self {
            OrderTerm::Fin(n) => OrderTerm::Fin(*n),
            OrderTerm::Omega => OrderTerm::OmegaStar,
            OrderTerm::OmegaStar => OrderTerm::Omega,
            OrderTerm::Zeta => OrderTerm::Zeta,
            OrderTerm::Eta => OrderTerm::Eta,
            OrderTerm::Sum(a, b) => OrderTerm::sum(b.reverse(), a.reverse()),
            OrderTerm::Prod(a, b) => OrderTerm::prod(a.reverse(), b.reverse()),
            OrderTerm::Exp { .. } => OrderTerm::Rev(Box::new(self.clone())),
            OrderTerm::Rev(x) => (**x).clone(),
        }
    }

    /// Carries an element of `self` to the same point of `self.reverse()`.
    /// The map is an order anti-isomorphism.
    pub fn reverse_element(&self, e: &Element) -> Result<Element> {
        Ok(match (self, e) {
            (OrderTerm::Fin(n), Element::Fin(i)) if i < n => Element::Fin(n - 1 - i),
            (OrderTerm::Omega, Element::Omega(k)) => Element::OmegaStar(*k),
            (OrderTerm::OmegaStar, Element::OmegaStar(k)) => Element::Omega(*k),
            (OrderTerm::Zeta, Element::Zeta(z)) => Element::Zeta(-z),
            (OrderTerm::Eta, Element::Eta(q)) => Element::Eta(-q),
            (OrderTerm::Sum(a, _), Element::Left(x)) => Element::right(a.reverse_element(x)?),
            (OrderTerm::Sum(_, b), Element::Right(y)) => Element::left(b.reverse_element(y)?),
            (OrderTerm::Prod(a, b), Element::Pair(x, y)) => {
                Element::pair(a.reverse_element(x)?, b.reverse_element(y)?)
            }
            (OrderTerm::Exp { .. }, Element::Fs(_)) | (OrderTerm::Rev(_), _) => {
                self.check(e)?;
                e.clone()
            }
            _ => return Err(self.mismatch(e)),
        })
    }

    /// Inverse of [`OrderTerm::reverse_element`].
    pub fn unreverse_element(&self, e: &Element) -> Result<Element> {
        self.reverse().reverse_element(e)
    }
}
