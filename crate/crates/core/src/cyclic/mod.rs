//! Cyclic orders obtained by gluing the ends of a linear order, and
//! witnesses of cyclic transitivity and cyclic equivalence.
//!
//! Partitions of infinite orders are never materialized: a [`Cut`] is a
//! decidable membership test for the lower piece, and maps between pieces
//! are element transformers carrying their inverses.

mod construct;
mod finite;
mod inflation;
mod shift;
mod stock;
mod validate;

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linorder::{Element, OrderTerm};

pub use construct::{
    ctlo_from_cyclic, cyclic_from_ctlo, witness_finite_rotation, witness_product_discrete,
    witness_product_left, witness_reverse, witness_translation, witness_transport,
};
pub use finite::{cyclic_automorphism_count, transitive_finite_check};
pub use inflation::{in_orbit_interval, inflationary_modify};
pub use shift::Shift;
pub use stock::{
    ce_eta_eta_plus_one, ce_eta_one_plus_eta, ce_omega_omegastar_zeta, ce_zeta_eta_block,
    stock_witnesses,
};
pub use validate::{check_automorphism, validate_equivalence, validate_witness};

type MapFn = dyn Fn(&Element) -> Result<Element> + Send + Sync;
type PredFn = dyn Fn(&Element) -> Result<bool> + Send + Sync;

/// A described element transformer.
#[derive(Clone)]
pub struct ElementMap {
    description: String,
    f: Arc<MapFn>,
}

impl ElementMap {
    pub fn new(
        description: impl Into<String>,
        f: impl Fn(&Element) -> Result<Element> + Send + Sync + 'static,
    ) -> Self {
        ElementMap {
            description: description.into(),
            f: Arc::new(f),
        }
    }

    pub fn identity() -> Self {
        ElementMap::new("x", |e| Ok(e.clone()))
    }

    /// The map out of an empty piece; calling it is an error.
    pub fn empty() -> Self {
        ElementMap::new("empty map", |e| {
            Err(Error::InternalInvariantViolation(format!(
                "empty map applied to {e}"
            )))
        })
    }

    pub fn apply(&self, e: &Element) -> Result<Element> {
        (self.f)(e)
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ElementMap) -> ElementMap {
        let (f, g) = (Arc::clone(&self.f), Arc::clone(&next.f));
        ElementMap::new(
            format!("{} ∘ {}", next.description, self.description),
            move |e| g(&f(e)?),
        )
    }
}

impl fmt::Debug for ElementMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ElementMap({})", self.description)
    }
}

#[derive(Clone)]
enum CutKind {
    All,
    Nothing,
    Pred(Arc<PredFn>),
}

/// Membership test for a downward-closed piece of an order.
#[derive(Clone)]
pub struct Cut {
    description: String,
    kind: CutKind,
}

impl Cut {
    pub fn all() -> Self {
        Cut {
            description: "everything".into(),
            kind: CutKind::All,
        }
    }

    pub fn nothing() -> Self {
        Cut {
            description: "nothing".into(),
            kind: CutKind::Nothing,
        }
    }

    pub fn new(
        description: impl Into<String>,
        pred: impl Fn(&Element) -> Result<bool> + Send + Sync + 'static,
    ) -> Self {
        Cut {
            description: description.into(),
            kind: CutKind::Pred(Arc::new(pred)),
        }
    }

    pub fn contains(&self, e: &Element) -> Result<bool> {
        match &self.kind {
            CutKind::All => Ok(true),
            CutKind::Nothing => Ok(false),
            CutKind::Pred(p) => p(e),
        }
    }

    pub fn is_all(&self) -> bool {
        matches!(self.kind, CutKind::All)
    }

    pub fn is_nothing(&self) -> bool {
        matches!(self.kind, CutKind::Nothing)
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// The cut whose piece is the image of the complement of `self` under
    /// `map`, where `unmap` inverts it.
    pub(crate) fn complement_through(
        &self,
        unmap: &ElementMap,
        description: impl Into<String>,
    ) -> Cut {
        match &self.kind {
            CutKind::All => Cut::nothing(),
            CutKind::Nothing => Cut::all(),
            CutKind::Pred(p) => {
                let (p, u) = (Arc::clone(p), Arc::clone(&unmap.f));
                Cut::new(description, move |e| Ok(!p(&u(e)?)?))
            }
        }
    }
}

impl Cut {
    /// The cut pulled back along `map`: `e` belongs iff `map(e)` does.
    pub fn pull_back(&self, map: &ElementMap, description: impl Into<String>) -> Cut {
        match &self.kind {
            CutKind::All => Cut::all(),
            CutKind::Nothing => Cut::nothing(),
            CutKind::Pred(p) => {
                let (p, m) = (Arc::clone(p), Arc::clone(&map.f));
                Cut::new(description, move |e| p(&m(e)?))
            }
        }
    }
}

impl fmt::Debug for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cut({})", self.description)
    }
}

/// Certificate that `term` is cyclically transitive at `(a, b)`:
/// `L = L1 + L2 = L2' + L1'` with `a ∈ L1`, `b ∈ L1'`, and isomorphisms
/// `F1: L1 -> L1'`, `F2: L2 -> L2'` with `F1(a) = b`.
#[derive(Clone, Debug)]
pub struct CtloWitness {
    pub term: OrderTerm,
    pub a: Element,
    pub b: Element,
    /// Membership in `L1`.
    pub cut1: Cut,
    /// Membership in `L2'`.
    pub cut2: Cut,
    pub f1: ElementMap,
    pub f1_inv: ElementMap,
    pub f2: ElementMap,
    pub f2_inv: ElementMap,
    /// Name of the constructor that produced the witness.
    pub via: String,
    /// Set when the witness is a translation of the whole order.
    pub shift: Option<Shift>,
}

impl CtloWitness {
    /// `L2` is empty and `F1` is an automorphism of the whole order.
    pub fn is_whole_order(&self) -> bool {
        self.cut1.is_all() && self.cut2.is_nothing()
    }

    pub fn in_l1(&self, x: &Element) -> Result<bool> {
        self.cut1.contains(x)
    }

    pub fn in_l2_prime(&self, y: &Element) -> Result<bool> {
        self.cut2.contains(y)
    }

    /// The glued map `F1 ∪ F2`.
    pub fn forward(&self, x: &Element) -> Result<Element> {
        if self.in_l1(x)? {
            self.f1.apply(x)
        } else {
            self.f2.apply(x)
        }
    }

    pub fn inverse(&self, y: &Element) -> Result<Element> {
        if self.in_l2_prime(y)? {
            self.f2_inv.apply(y)
        } else {
            self.f1_inv.apply(y)
        }
    }

    pub fn descriptor(&self) -> Value {
        json!({
            "term": self.term.to_string(),
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "via": self.via,
            "whole_order": self.is_whole_order(),
            "L1": self.cut1.description(),
            "L2'": self.cut2.description(),
            "F1": self.f1.description(),
            "F2": self.f2.description(),
        })
    }
}

/// Certificate of `left ~c right`: `left = L1 + L2`, `right = L2' + L1'`,
/// `F1: L1 -> L1'`, `F2: L2 -> L2'`.
#[derive(Clone, Debug)]
pub struct CycEquivWitness {
    pub left: OrderTerm,
    pub right: OrderTerm,
    /// Membership in `L1` inside `left`.
    pub cut_left: Cut,
    /// Membership in `L2'` inside `right`.
    pub cut_right: Cut,
    pub f1: ElementMap,
    pub f1_inv: ElementMap,
    pub f2: ElementMap,
    pub f2_inv: ElementMap,
}

impl CycEquivWitness {
    pub fn identity(term: OrderTerm) -> Self {
        CycEquivWitness {
            left: term.clone(),
            right: term,
            cut_left: Cut::all(),
            cut_right: Cut::nothing(),
            f1: ElementMap::identity(),
            f1_inv: ElementMap::identity(),
            f2: ElementMap::empty(),
            f2_inv: ElementMap::empty(),
        }
    }

    /// The glued bijection `left -> right`; it preserves the cyclic orders.
    pub fn forward(&self, x: &Element) -> Result<Element> {
        if self.cut_left.contains(x)? {
            self.f1.apply(x)
        } else {
            self.f2.apply(x)
        }
    }

    pub fn backward(&self, y: &Element) -> Result<Element> {
        if self.cut_right.contains(y)? {
            self.f2_inv.apply(y)
        } else {
            self.f1_inv.apply(y)
        }
    }

    pub fn forward_map(&self) -> ElementMap {
        let me = self.clone();
        ElementMap::new(
            format!("glue({}, {})", self.f1.description, self.f2.description),
            move |x| me.forward(x),
        )
    }

    pub fn backward_map(&self) -> ElementMap {
        let me = self.clone();
        ElementMap::new(
            format!("glue({}, {})⁻¹", self.f1.description, self.f2.description),
            move |y| me.backward(y),
        )
    }

    /// `right ~c left`: `L2'` becomes the lower piece of `right`.
    pub fn invert(&self) -> CycEquivWitness {
        CycEquivWitness {
            left: self.right.clone(),
            right: self.left.clone(),
            cut_left: self.cut_right.clone(),
            cut_right: self.cut_left.clone(),
            f1: self.f2_inv.clone(),
            f1_inv: self.f2.clone(),
            f2: self.f1_inv.clone(),
            f2_inv: self.f1.clone(),
        }
    }

    /// `left* ~c right*`: the pieces trade roles.
    pub fn reverse(&self) -> CycEquivWitness {
        let (l, r) = (self.left.clone(), self.right.clone());
        let (lr, rr) = (l.reverse(), r.reverse());
        let to_l = {
            let l = l.clone();
            ElementMap::new("rev⁻¹", move |e| l.unreverse_element(e))
        };
        let to_r = {
            let r = r.clone();
            ElementMap::new("rev⁻¹", move |e| r.unreverse_element(e))
        };
        let from_l = {
            let l = l.clone();
            ElementMap::new("rev", move |e| l.reverse_element(e))
        };
        let from_r = {
            let r = r.clone();
            ElementMap::new("rev", move |e| r.reverse_element(e))
        };
        CycEquivWitness {
            cut_left: self
                .cut_left
                .complement_through(&to_l, format!("rev(not {})", self.cut_left.description())),
            cut_right: self
                .cut_right
                .complement_through(&to_r, format!("rev(not {})", self.cut_right.description())),
            f1: to_l.then(&self.f2).then(&from_r),
            f1_inv: to_r.then(&self.f2_inv).then(&from_l),
            f2: to_l.then(&self.f1).then(&from_r),
            f2_inv: to_r.then(&self.f1_inv).then(&from_l),
            left: lr,
            right: rr,
        }
    }
}

/// An automorphism of the cyclic order obtained by gluing the ends of `term`.
#[derive(Clone, Debug)]
pub struct CyclicAutomorphism {
    pub term: OrderTerm,
    pub forward: ElementMap,
    pub inverse: ElementMap,
}

/// An order automorphism of `term`; `shift` is set for the translation
/// family, where interval membership is decidable exactly.
#[derive(Clone, Debug)]
pub struct Automorphism {
    pub term: OrderTerm,
    pub forward: ElementMap,
    pub inverse: ElementMap,
    pub shift: Option<Shift>,
}

impl Automorphism {
    /// The translation of `term` sending `a` to `b`.
    pub fn translation(term: &OrderTerm, a: &Element, b: &Element) -> Result<Self> {
        let s = Shift::between(term, a, b)?;
        Ok(Automorphism {
            term: term.clone(),
            forward: s.map(term),
            inverse: s.invert().map(term),
            shift: Some(s),
        })
    }
}

/// The glued cyclic relation: one of `a<b<c`, `b<c<a`, `c<a<b`.
pub fn cyclic_r(term: &OrderTerm, a: &Element, b: &Element, c: &Element) -> Result<bool> {
    if a == b || b == c || a == c {
        return Err(Error::NotDistinct);
    }
    let lt = |x: &Element, y: &Element| term.lt(x, y);
    Ok((lt(a, b)? && lt(b, c)?) || (lt(b, c)? && lt(c, a)?) || (lt(c, a)? && lt(a, b)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_relation_on_three_points() {
        let t = OrderTerm::Fin(3);
        let e = |i| Element::Fin(i);
        assert!(cyclic_r(&t, &e(0), &e(1), &e(2)).unwrap());
        assert!(cyclic_r(&t, &e(1), &e(2), &e(0)).unwrap());
        assert!(!cyclic_r(&t, &e(2), &e(1), &e(0)).unwrap());
        assert_eq!(cyclic_r(&t, &e(1), &e(1), &e(0)), Err(Error::NotDistinct));
    }
}
