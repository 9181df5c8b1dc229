use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rational::random_stern_brocot;
use super::{Element, Exponent, OrderTerm, Position, Support};
use crate::error::{Error, Result};
use crate::ordinal::small_nat;

const MAX_SUPPORT: usize = 3;

/// `count` elements of `term` drawn from a ChaCha stream seeded by `seed`.
pub fn sample(term: &OrderTerm, seed: u64, count: usize) -> Result<Vec<Element>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| sample_with(term, &mut rng)).collect()
}

/// One random element of `term`.
pub fn sample_with<R: Rng + ?Sized>(term: &OrderTerm, rng: &mut R) -> Result<Element> {
    if term.is_empty() {
        return Err(Error::EmptyOrder(term.to_string()));
    }
    Ok(match term {
        OrderTerm::Fin(n) => Element::Fin(rng.random_range(0..*n)),
        OrderTerm::Omega => Element::Omega(small_nat(rng)),
        OrderTerm::OmegaStar => Element::OmegaStar(small_nat(rng)),
        OrderTerm::Zeta => {
            let z = small_nat(rng) as i64;
            Element::Zeta(if rng.random_bool(0.5) { z } else { -z })
        }
        OrderTerm::Eta => Element::Eta(random_stern_brocot(rng)),
        OrderTerm::Sum(a, b) => {
            if b.is_empty() || (!a.is_empty() && rng.random_bool(0.5)) {
                Element::left(sample_with(a, rng)?)
            } else {
                Element::right(sample_with(b, rng)?)
            }
        }
        OrderTerm::Prod(a, b) => Element::pair(sample_with(a, rng)?, sample_with(b, rng)?),
        OrderTerm::Exp {
            base,
            point,
            exponent,
        } => Element::Fs(sample_support(base, point, exponent, rng)?),
        OrderTerm::Rev(x) => sample_with(x, rng)?,
    })
}

fn sample_support<R: Rng + ?Sized>(
    base: &OrderTerm,
    point: &Element,
    exponent: &Exponent,
    rng: &mut R,
) -> Result<Support> {
    let size = rng.random_range(0..=MAX_SUPPORT);
    let mut entries: Vec<(Position, Element)> = Vec::with_capacity(size);
    for _ in 0..size {
        let pos = match exponent {
            Exponent::Ordinal(o) => match o.random_below(rng) {
                Some(p) => Position::Ord(p),
                None => break,
            },
            Exponent::Term(t) => Position::Elem(sample_with(t, rng)?),
        };
        // A few redraws avoid storing the basepoint; a singleton base gives up.
        let value = (0..8)
            .map(|_| sample_with(base, rng))
            .find(|v| !matches!(v, Ok(v) if v == point));
        let Some(value) = value else { continue };
        entries.push((pos, value?));
    }
    let mut err = None;
    entries.sort_by(|x, y| {
        exponent.compare_positions(&x.0, &y.0).unwrap_or_else(|e| {
            err = Some(e);
            Ordering::Equal
        })
    });
    if let Some(e) = err {
        return Err(e);
    }
    entries.dedup_by(|x, y| x.0 == y.0);
    Ok(Support::from_sorted(entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        for s in [
            "3",
            "w + z*eta",
            r#"exp(z@{"zeta":0}, w*2 + 1)"#,
            r#"exp(w@{"omega":1}, [z])"#,
            r#"rev(exp(2@{"fin":1}, w))"#,
        ] {
            let term: OrderTerm = s.parse().unwrap();
            let a = sample(&term, 42, 50).unwrap();
            assert_eq!(a, sample(&term, 42, 50).unwrap());
            for e in &a {
                term.check(e).unwrap();
            }
        }
    }

    #[test]
    fn finite_values_in_range() {
        let v = sample(&OrderTerm::Fin(3), 7, 10).unwrap();
        assert_eq!(v.len(), 10);
        assert!(v.iter().all(|e| matches!(e, Element::Fin(i) if *i < 3)));
    }

    #[test]
    fn empty_order_rejected() {
        assert!(matches!(
            sample(&OrderTerm::Fin(0), 1, 1),
            Err(Error::EmptyOrder(_))
        ));
    }
}
