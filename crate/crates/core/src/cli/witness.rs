//! Picks a witness constructor for a term and two points.

use crate::cyclic::{
    ce_eta_eta_plus_one, ce_eta_one_plus_eta, ce_omega_omegastar_zeta, ce_zeta_eta_block,
    witness_finite_rotation, witness_product_discrete, witness_product_left, witness_reverse,
    witness_translation, witness_transport, CtloWitness, CycEquivWitness, Shift,
};
use crate::error::{Error, Result};
use crate::linorder::{Element, OrderTerm};

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Via {
    Auto,
    Rotation,
    Translation,
    Prod55,
    Prod56,
    Reverse,
    Transport,
}

fn equivalences() -> Vec<CycEquivWitness> {
    vec![
        ce_omega_omegastar_zeta().invert(),
        ce_omega_omegastar_zeta(),
        ce_eta_eta_plus_one(),
        ce_eta_one_plus_eta(),
        ce_zeta_eta_block(),
    ]
}

fn pair(term: &OrderTerm, e: &Element) -> Result<(Element, Element)> {
    e.as_pair()
        .map(|(x, y)| (x.clone(), y.clone()))
        .ok_or_else(|| Error::ShapeMismatch {
            term: term.to_string(),
            element: e.to_string(),
        })
}

/// A witness for `(a, b)` on `term`, built with the requested constructor.
pub fn build_witness(term: &OrderTerm, a: &Element, b: &Element, via: Via) -> Result<CtloWitness> {
    term.check(a)?;
    term.check(b)?;
    match via {
        Via::Auto => auto(term, a, b),
        Via::Rotation => match (term, a, b) {
            (OrderTerm::Fin(n), Element::Fin(i), Element::Fin(j)) => {
                witness_finite_rotation(*n, *i, *j)
            }
            _ => Err(Error::unsupported(format!(
                "rotation needs a finite order, got {term}"
            ))),
        },
        Via::Translation => witness_translation(term, a, b),
        Via::Prod55 => match term {
            OrderTerm::Prod(l, m) => {
                let ((x1, y1), (x2, y2)) = (pair(term, a)?, pair(term, b)?);
                witness_product_left(l, &x1, &x2, &auto(m, &y1, &y2)?)
            }
            _ => Err(Error::unsupported(format!("{term} is not a product"))),
        },
        Via::Prod56 => match term {
            OrderTerm::Prod(l, m) => {
                let ((x1, y1), (x2, y2)) = (pair(term, a)?, pair(term, b)?);
                let wr = auto(m, &y1, &y2)?;
                if l.le(&x1, &x2)? {
                    witness_product_discrete(&auto(l, &x1, &x2)?, &wr, false)
                } else {
                    witness_product_discrete(&auto(l, &x2, &x1)?, &wr, true)
                }
            }
            _ => Err(Error::unsupported(format!("{term} is not a product"))),
        },
        Via::Reverse => {
            let inner = term.reverse();
            let w = auto(
                &inner,
                &inner.unreverse_element(b)?,
                &inner.unreverse_element(a)?,
            )?;
            witness_reverse(&w)
        }
        Via::Transport => {
            let ce = equivalences()
                .into_iter()
                .find(|ce| &ce.right == term)
                .ok_or_else(|| {
                    Error::unsupported(format!("no stored cyclic equivalence onto {term}"))
                })?;
            let w = auto(&ce.left, &ce.backward(a)?, &ce.backward(b)?)?;
            witness_transport(&ce, &w)
        }
    }
}

fn auto(term: &OrderTerm, a: &Element, b: &Element) -> Result<CtloWitness> {
    if let OrderTerm::Fin(_) = term {
        return build_witness(term, a, b, Via::Rotation);
    }
    if Shift::between(term, a, b).is_ok() {
        return witness_translation(term, a, b);
    }
    let attempts: &[Via] = match term {
        OrderTerm::Prod(..) => &[Via::Prod56, Via::Prod55, Via::Transport],
        OrderTerm::Rev(..) => &[Via::Reverse],
        _ => &[Via::Transport],
    };
    let mut last = Error::UnsupportedFamily(term.to_string());
    for via in attempts {
        match build_witness(term, a, b, *via) {
            Ok(w) => return Ok(w),
            Err(e) => last = e,
        }
    }
    Err(last)
}
