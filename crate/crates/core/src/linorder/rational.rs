//! Exact rationals for `eta` elements, with Stern–Brocot helpers.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub type Rational = num_rational::Rational64;

/// The simplest rational (least denominator, then least magnitude) in the
/// open interval `(lo, hi)`. `None` bounds are infinite.
pub fn simplest_between(lo: Option<Rational>, hi: Option<Rational>) -> Rational {
    match (lo, hi) {
        (None, None) => Rational::zero(),
        (Some(l), None) => {
            if l.is_negative() {
                Rational::zero()
            } else {
                l.floor() + Rational::one()
            }
        }
        (None, Some(h)) => -simplest_between(Some(-h), None),
        (Some(l), Some(h)) => {
            assert!(l < h, "empty interval");
            if l.is_negative() && h.is_positive() {
                Rational::zero()
            } else if !h.is_positive() {
                -simplest_positive(-h, Some(-l))
            } else {
                simplest_positive(l, Some(h))
            }
        }
    }
}

// Simplest rational in (lo, hi) with 0 <= lo.
fn simplest_positive(lo: Rational, hi: Option<Rational>) -> Rational {
    let fl = lo.floor();
    let next = fl + Rational::one();
    if hi.is_none_or(|h| next < h) {
        return next;
    }
    let h = hi.unwrap();
    // lo and hi both lie in [fl, fl + 1]; recurse on the reciprocals of the
    // fractional parts, which reverses the interval.
    let lo_frac = lo - fl;
    let hi_frac = h - fl;
    let inner_lo = hi_frac.recip();
    let inner_hi = if lo_frac.is_zero() {
        None
    } else {
        Some(lo_frac.recip())
    };
    fl + simplest_positive(inner_lo, inner_hi).recip()
}

/// A random rational obtained from a random integer part and a random
/// descent of bounded depth in the Stern–Brocot tree of `(0, 1)`.
pub fn random_stern_brocot<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let mut int = 0i64;
    while int.abs() < 30 && rng.random_bool(0.5) {
        int += if rng.random_bool(0.5) { 1 } else { -1 };
    }
    if rng.random_bool(0.2) {
        return Rational::from_integer(int);
    }
    // Mediant walk between 0/1 and 1/1.
    let (mut ln, mut ld, mut rn, mut rd) = (0i64, 1i64, 1i64, 1i64);
    let (mut n, mut d) = (1i64, 2i64);
    let depth = rng.random_range(0..8);
    for _ in 0..depth {
        if rng.random_bool(0.5) {
            rn = n;
            rd = d;
        } else {
            ln = n;
            ld = d;
        }
        n = ln + rn;
        d = ld + rd;
    }
    let g = n.gcd(&d);
    Rational::from_integer(int) + Rational::new(n / g, d / g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    // Oracle: scan denominators upward and take the first fraction that fits.
    fn brute_simplest(lo: Rational, hi: Rational) -> Rational {
        for d in 1..200i64 {
            let mut best: Option<Rational> = None;
            for n in -400..=400i64 {
                let x = r(n, d);
                if lo < x && x < hi && best.is_none_or(|b| x.abs() < b.abs()) {
                    best = Some(x);
                }
            }
            if let Some(b) = best {
                return b;
            }
        }
        panic!("no fraction found");
    }

    #[test]
    fn simplest_matches_brute_force() {
        let pts = [
            r(-3, 1),
            r(-5, 3),
            r(-1, 2),
            r(0, 1),
            r(1, 3),
            r(2, 5),
            r(1, 2),
            r(3, 4),
            r(1, 1),
            r(7, 3),
        ];
        for &a in &pts {
            for &b in &pts {
                if a < b {
                    assert_eq!(
                        simplest_between(Some(a), Some(b)),
                        brute_simplest(a, b),
                        "({a}, {b})"
                    );
                }
            }
        }
    }

    #[test]
    fn unbounded_sides() {
        assert_eq!(simplest_between(None, None), r(0, 1));
        assert_eq!(simplest_between(Some(r(5, 2)), None), r(3, 1));
        assert_eq!(simplest_between(None, Some(r(-5, 2))), r(-3, 1));
        assert_eq!(simplest_between(Some(r(-5, 2)), None), r(0, 1));
    }

    #[test]
    fn random_is_deterministic() {
        let mut a = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut b = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            assert_eq!(random_stern_brocot(&mut a), random_stern_brocot(&mut b));
        }
    }
}
