//! Cantor's back-and-forth construction between two countable dense
//! unbounded orders, run on sampled elements.

use std::cmp::Ordering;

use rand::Rng;
use serde::Serialize;

use super::{sample_with, Element, OrderTerm};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct BackAndForthOutcome {
    pub rounds: usize,
    /// The finite partial isomorphism, sorted by its left coordinate.
    pub pairs: Vec<(Element, Element)>,
    pub failure: Option<String>,
}

impl BackAndForthOutcome {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Alternates `rounds` forth and back steps: a fresh sampled element on one
/// side is matched with an element of the other side in the corresponding
/// gap, so the pairs stay order-preserving.
pub fn back_and_forth<R: Rng + ?Sized>(
    left: &OrderTerm,
    right: &OrderTerm,
    rounds: usize,
    rng: &mut R,
) -> Result<BackAndForthOutcome> {
    for t in [left, right] {
        let c = t.classify()?;
        if c.empty || !c.dense || !c.unbounded() {
            return Err(Error::unsupported(format!(
                "{t} is not dense, unbounded and non-empty"
            )));
        }
    }
    let mut pairs: Vec<(Element, Element)> = Vec::new();
    for round in 0..rounds {
        for forth in [true, false] {
            let (src, dst) = if forth { (left, right) } else { (right, left) };
            let x = sample_with(src, rng)?;
            if let Err(msg) = extend(&mut pairs, src, dst, x, forth)? {
                return Ok(BackAndForthOutcome {
                    rounds: round,
                    pairs,
                    failure: Some(msg),
                });
            }
        }
    }
    Ok(BackAndForthOutcome {
        rounds,
        pairs,
        failure: None,
    })
}

// Adds `x` (from `src`) to the partial map; `forth` says whether `src` is the
// left side. The inner error is a description of a failed extension.
fn extend(
    pairs: &mut Vec<(Element, Element)>,
    src: &OrderTerm,
    dst: &OrderTerm,
    x: Element,
    forth: bool,
) -> Result<std::result::Result<(), String>> {
    let pick = |p: &(Element, Element)| if forth { p.0.clone() } else { p.1.clone() };
    let image = |p: &(Element, Element)| if forth { p.1.clone() } else { p.0.clone() };
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    let mut cmp_err = None;
    order.sort_by(|&i, &j| {
        src.compare(&pick(&pairs[i]), &pick(&pairs[j]))
            .unwrap_or_else(|e| {
                cmp_err = Some(e);
                Ordering::Equal
            })
    });
    if let Some(e) = cmp_err {
        return Err(e);
    }
    let mut lo: Option<Element> = None;
    let mut hi: Option<Element> = None;
    for &i in &order {
        match src.compare(&pick(&pairs[i]), &x)? {
            Ordering::Less => lo = Some(image(&pairs[i])),
            Ordering::Equal => return Ok(Ok(())),
            Ordering::Greater => {
                hi = Some(image(&pairs[i]));
                break;
            }
        }
    }
    let Some(y) = dst.between(lo.as_ref(), hi.as_ref())? else {
        return Ok(Err(format!("no element of {dst} in the gap for {x}")));
    };
    pairs.push(if forth { (x, y) } else { (y, x) });
    pairs.sort_by(|a, b| left_cmp(src, dst, forth, a, b));
    Ok(Ok(()))
}

fn left_cmp(
    src: &OrderTerm,
    dst: &OrderTerm,
    forth: bool,
    a: &(Element, Element),
    b: &(Element, Element),
) -> Ordering {
    let left = if forth { src } else { dst };
    left.compare(&a.0, &b.0).unwrap_or(Ordering::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn eta_against_two_etas() {
        let l: OrderTerm = "eta".parse().unwrap();
        let r: OrderTerm = "eta + eta".parse().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let out = back_and_forth(&l, &r, 12, &mut rng).unwrap();
        assert!(out.ok(), "{:?}", out.failure);
        for w in out.pairs.windows(2) {
            assert_eq!(l.compare(&w[0].0, &w[1].0).unwrap(), Ordering::Less);
            assert_eq!(r.compare(&w[0].1, &w[1].1).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn rejects_discrete_orders() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(back_and_forth(&OrderTerm::Zeta, &OrderTerm::Eta, 3, &mut rng).is_err());
    }
}
