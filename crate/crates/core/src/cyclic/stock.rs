//! Explicit cyclic equivalences and a catalogue of witnesses built from
//! every constructor.

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::{
    witness_finite_rotation, witness_product_discrete, witness_product_left, witness_reverse,
    witness_translation, witness_transport, CtloWitness, Cut, CycEquivWitness, ElementMap,
};
use crate::error::{Error, Result};
use crate::linorder::{Element, OrderTerm, Rational, Support};
use crate::ordinal::Ordinal;

fn shape(term: &str, e: &Element) -> Error {
    Error::ShapeMismatch {
        term: term.into(),
        element: e.to_string(),
    }
}

/// `w + w* ~c z`: `w` goes to `[0, oo)` and `w*` to `(-oo, 0)`.
pub fn ce_omega_omegastar_zeta() -> CycEquivWitness {
    let left = OrderTerm::sum(OrderTerm::Omega, OrderTerm::OmegaStar);
    let k = |e: &Element| -> Result<i64> {
        match e {
            Element::Left(x) => match **x {
                Element::Omega(k) => i64::try_from(k).map_err(|_| Error::OutOfRange(e.to_string())),
                _ => Err(shape("w + w*", e)),
            },
            Element::Right(x) => match **x {
                Element::OmegaStar(k) => {
                    i64::try_from(k).map_err(|_| Error::OutOfRange(e.to_string()))
                }
                _ => Err(shape("w + w*", e)),
            },
            _ => Err(shape("w + w*", e)),
        }
    };
    let z = |e: &Element| -> Result<i64> {
        match e {
            Element::Zeta(z) => Ok(*z),
            _ => Err(shape("z", e)),
        }
    };
    CycEquivWitness {
        left,
        right: OrderTerm::Zeta,
        cut_left: Cut::new("x in w", |e| Ok(matches!(e, Element::Left(_)))),
        cut_right: Cut::new("y < 0", move |e| Ok(z(e)? < 0)),
        f1: ElementMap::new("Left k -> k", move |e| Ok(Element::Zeta(k(e)?))),
        f1_inv: ElementMap::new("k -> Left k", move |e| {
            Ok(Element::left(Element::Omega(z(e)? as u64)))
        }),
        f2: ElementMap::new("Right k -> -1-k", move |e| Ok(Element::Zeta(-1 - k(e)?))),
        f2_inv: ElementMap::new("y -> Right(-1-y)", move |e| {
            Ok(Element::right(Element::OmegaStar((-1 - z(e)?) as u64)))
        }),
    }
}

// The cut point r = sum over i >= 1 of 2^-(i(i+1)/2), irrational because its
// binary expansion has ever longer runs of zeros. c_k are the partial sums
// and d_k = c_k + 2^(1 - (k+1)(k+2)/2) decreasing upper bounds.
type Big = Ratio<i128>;

const PIECES: u32 = 8;
const REFINE: u32 = 13;

fn tri(k: u32) -> u32 {
    k * (k + 1) / 2
}

fn pow2_inv(e: u32) -> Big {
    Big::new(1, 1i128 << e)
}

fn lower(k: u32) -> Big {
    (1..=k)
        .map(|i| pow2_inv(tri(i)))
        .fold(Big::zero(), |s, x| s + x)
}

fn upper(k: u32) -> Big {
    lower(k) + pow2_inv(tri(k + 1) - 1)
}

fn breakpoint(k: u32) -> Big {
    Big::from_integer((1i128 << k) - 1)
}

fn to_big(q: &Rational) -> Big {
    Big::new(*q.numer() as i128, *q.denom() as i128)
}

fn to_small(q: Big) -> Result<Rational> {
    match (i64::try_from(*q.numer()), i64::try_from(*q.denom())) {
        (Ok(n), Ok(d)) => Ok(Rational::new(n, d)),
        _ => Err(Error::OutOfRange(format!(
            "{q} does not fit a 64-bit rational"
        ))),
    }
}

fn affine(x: Big, x0: Big, x1: Big, y0: Big, y1: Big) -> Big {
    y0 + (x - x0) * (y1 - y0) / (x1 - x0)
}

// Monotone bijection Q -> Q below r: translation below 0, then the
// breakpoints 2^k - 1 go to c_k.
fn below_r(x: Big) -> Result<Big> {
    if x <= Big::zero() {
        return Ok(x + lower(0));
    }
    for k in 0..PIECES {
        if x <= breakpoint(k + 1) {
            return Ok(affine(
                x,
                breakpoint(k),
                breakpoint(k + 1),
                lower(k),
                lower(k + 1),
            ));
        }
    }
    Err(Error::OutOfRange(format!(
        "{x} beyond the explicit pieces of the cut"
    )))
}

fn below_r_inv(y: Big) -> Result<Big> {
    if y <= lower(0) {
        return Ok(y - lower(0));
    }
    for k in 0..PIECES {
        if y <= lower(k + 1) {
            return Ok(affine(
                y,
                lower(k),
                lower(k + 1),
                breakpoint(k),
                breakpoint(k + 1),
            ));
        }
    }
    Err(Error::OutOfRange(format!("{y} too close to the cut")))
}

// Monotone bijection Q -> Q above r: translation above 0, then the
// breakpoints -(2^k - 1) go to d_k.
fn above_r(x: Big) -> Result<Big> {
    if x >= Big::zero() {
        return Ok(x + upper(0));
    }
    for k in 0..PIECES {
        if x >= -breakpoint(k + 1) {
            return Ok(affine(
                x,
                -breakpoint(k),
                -breakpoint(k + 1),
                upper(k),
                upper(k + 1),
            ));
        }
    }
    Err(Error::OutOfRange(format!(
        "{x} beyond the explicit pieces of the cut"
    )))
}

fn above_r_inv(y: Big) -> Result<Big> {
    if y >= upper(0) {
        return Ok(y - upper(0));
    }
    for k in 0..PIECES {
        if y >= upper(k + 1) {
            return Ok(affine(
                y,
                upper(k),
                upper(k + 1),
                -breakpoint(k),
                -breakpoint(k + 1),
            ));
        }
    }
    Err(Error::OutOfRange(format!("{y} too close to the cut")))
}

fn below_cut(q: &Rational) -> Result<bool> {
    let q = to_big(q);
    for k in 0..=REFINE {
        if q <= lower(k) {
            return Ok(true);
        }
        if q >= upper(k) {
            return Ok(false);
        }
    }
    Err(Error::OutOfRange(format!("{q} too close to the cut")))
}

// (0, oo) -> Q, increasing: t <= 1 gives 1 - 1/t, t > 1 gives t - 1.
fn mu(t: Big) -> Big {
    if t <= Big::one() {
        Big::one() - t.recip()
    } else {
        t - Big::one()
    }
}

fn mu_inv(s: Big) -> Big {
    if s <= Big::zero() {
        (Big::one() - s).recip()
    } else {
        s + Big::one()
    }
}

fn eta_value(e: &Element) -> Result<Rational> {
    match e {
        Element::Eta(q) => Ok(*q),
        _ => Err(shape("eta", e)),
    }
}

/// `eta ~c eta + 1`: `(-oo, 0]` goes onto the part of `eta + 1` above an
/// irrational cut, with `0` sent to the top point, and `(0, oo)` onto the
/// part below it. Values far beyond the first few pieces of the cut report
/// `OutOfRange`.
pub fn ce_eta_eta_plus_one() -> CycEquivWitness {
    let right = OrderTerm::sum(OrderTerm::Eta, OrderTerm::Fin(1));
    let inner = |e: &Element| -> Result<Rational> {
        match e {
            Element::Left(x) => eta_value(x),
            _ => Err(shape("eta + 1", e)),
        }
    };
    let left_of = |q: Big| -> Result<Element> { Ok(Element::left(Element::Eta(to_small(q)?))) };
    CycEquivWitness {
        left: OrderTerm::Eta,
        right,
        cut_left: Cut::new("x <= 0", |e| Ok(eta_value(e)? <= Rational::zero())),
        cut_right: Cut::new("y < r below the top point", move |e| match e {
            Element::Left(x) => below_cut(&eta_value(x)?),
            _ => Ok(false),
        }),
        f1: ElementMap::new("0 -> top, x < 0 -> above r", move |e| {
            let q = eta_value(e)?;
            if q.is_zero() {
                return Ok(Element::right(Element::Fin(0)));
            }
            if q > Rational::zero() {
                return Err(shape("(-oo, 0]", e));
            }
            left_of(above_r(-mu(-to_big(&q)))?)
        }),
        f1_inv: ElementMap::new("top -> 0, above r -> x < 0", move |e| {
            if let Element::Right(_) = e {
                return Ok(Element::Eta(Rational::zero()));
            }
            let s = above_r_inv(to_big(&inner(e)?))?;
            Ok(Element::Eta(to_small(-mu_inv(-s))?))
        }),
        f2: ElementMap::new("x > 0 -> below r", move |e| {
            let q = eta_value(e)?;
            if q <= Rational::zero() {
                return Err(shape("(0, oo)", e));
            }
            left_of(below_r(mu(to_big(&q)))?)
        }),
        f2_inv: ElementMap::new("below r -> x > 0", move |e| {
            let s = below_r_inv(to_big(&inner(e)?))?;
            Ok(Element::Eta(to_small(mu_inv(s))?))
        }),
    }
}

/// `eta ~c 1 + eta`, the reversal of [`ce_eta_eta_plus_one`].
pub fn ce_eta_one_plus_eta() -> CycEquivWitness {
    ce_eta_eta_plus_one().reverse()
}

/// `z * (1 + eta) ~c w + z*eta + w*`: the negative half of the first copy
/// of `z` becomes the final `w*`.
pub fn ce_zeta_eta_block() -> CycEquivWitness {
    let left = OrderTerm::prod(
        OrderTerm::Zeta,
        OrderTerm::sum(OrderTerm::Fin(1), OrderTerm::Eta),
    );
    let right = OrderTerm::sum(
        OrderTerm::Omega,
        OrderTerm::sum(
            OrderTerm::prod(OrderTerm::Zeta, OrderTerm::Eta),
            OrderTerm::OmegaStar,
        ),
    );
    // (z, tag) where tag is None for the first copy, Some(q) for copy q.
    let parts = |e: &Element| -> Result<(i64, Option<Rational>)> {
        let bad = || shape("z * (1 + eta)", e);
        let (x, y) = e.as_pair().ok_or_else(bad)?;
        let Element::Zeta(z) = x else {
            return Err(bad());
        };
        match y {
            Element::Left(_) => Ok((*z, None)),
            Element::Right(q) => Ok((*z, Some(eta_value(q)?))),
            _ => Err(bad()),
        }
    };
    let first = |z: i64| Element::pair(Element::Zeta(z), Element::left(Element::Fin(0)));
    let nat = |z: i64| u64::try_from(z).map_err(|_| Error::OutOfRange(z.to_string()));
    CycEquivWitness {
        left,
        right,
        cut_left: Cut::new("first copy, z < 0", move |e| {
            Ok(matches!(parts(e)?, (z, None) if z < 0))
        }),
        cut_right: Cut::new("not in w*", |e| {
            Ok(!matches!(e, Element::Right(x) if matches!(**x, Element::Right(_))))
        }),
        f1: ElementMap::new("(z, first) -> w* at -1-z", move |e| match parts(e)? {
            (z, None) if z < 0 => Ok(Element::right(Element::right(Element::OmegaStar(nat(
                -1 - z
            )?)))),
            _ => Err(shape("first copy, z < 0", e)),
        }),
        f1_inv: ElementMap::new("w* k -> (-1-k, first)", move |e| match e {
            Element::Right(x) => match &**x {
                Element::Right(y) => match **y {
                    Element::OmegaStar(k) => Ok(first(-1 - k as i64)),
                    _ => Err(shape("w*", e)),
                },
                _ => Err(shape("w*", e)),
            },
            _ => Err(shape("w*", e)),
        }),
        f2: ElementMap::new(
            "(z >= 0, first) -> w, (z, q) -> z*eta",
            move |e| match parts(e)? {
                (z, None) => Ok(Element::left(Element::Omega(nat(z)?))),
                (z, Some(q)) => Ok(Element::right(Element::left(Element::pair(
                    Element::Zeta(z),
                    Element::Eta(q),
                )))),
            },
        ),
        f2_inv: ElementMap::new("inverse on w + z*eta", move |e| match e {
            Element::Left(x) => match **x {
                Element::Omega(k) => Ok(first(k as i64)),
                _ => Err(shape("w", e)),
            },
            Element::Right(x) => match &**x {
                Element::Left(p) => match p.as_pair() {
                    Some((Element::Zeta(z), Element::Eta(q))) => Ok(Element::pair(
                        Element::Zeta(*z),
                        Element::right(Element::Eta(*q)),
                    )),
                    _ => Err(shape("z*eta", e)),
                },
                _ => Err(shape("w + z*eta", e)),
            },
            _ => Err(shape("w + z*eta", e)),
        }),
    }
}

fn zv(z: i64) -> Element {
    Element::Zeta(z)
}

fn fs_zeta(pairs: &[(u64, i64)]) -> Element {
    Element::Fs(Support::from_sorted(
        pairs
            .iter()
            .map(|&(p, z)| {
                (
                    crate::linorder::Position::Ord(Ordinal::nat(p)),
                    Element::Zeta(z),
                )
            })
            .collect(),
    ))
}

/// One witness from each constructor, on the orders used in the examples.
pub fn stock_witnesses() -> Result<Vec<CtloWitness>> {
    let mut out = vec![
        witness_finite_rotation(5, 1, 3)?,
        witness_translation(&OrderTerm::Zeta, &zv(2), &zv(7))?,
        witness_translation(&OrderTerm::Eta, &Element::eta(1, 2), &Element::eta(1, 3))?,
        witness_translation(
            &OrderTerm::zeta_power(Ordinal::nat(2)),
            &fs_zeta(&[(0, 1)]),
            &fs_zeta(&[(1, 1)]),
        )?,
    ];

    // z * 2 from z and a rotation of 2.
    let rot2 = witness_finite_rotation(2, 0, 1)?;
    let z2 = witness_product_left(&OrderTerm::Zeta, &zv(0), &zv(0), &rot2)?;
    out.push(z2.clone());
    out.push(witness_product_left(
        &OrderTerm::zeta_power(Ordinal::nat(2)),
        &fs_zeta(&[]),
        &fs_zeta(&[(0, 3)]),
        &witness_finite_rotation(3, 0, 2)?,
    )?);

    // (z*2) * (z*2), both cases of the first coordinate.
    let z2_shift = witness_product_left(&OrderTerm::Zeta, &zv(-1), &zv(2), &rot2)?;
    out.push(witness_product_discrete(&z2, &z2_shift, false)?);
    out.push(witness_product_discrete(&z2_shift, &z2, false)?);
    out.push(witness_product_discrete(&z2, &z2_shift, true)?);

    out.push(witness_reverse(&witness_finite_rotation(5, 1, 3)?)?);
    out.push(witness_reverse(&z2)?);

    let zt = witness_translation(&OrderTerm::Zeta, &zv(0), &zv(4))?;
    out.push(witness_transport(&ce_omega_omegastar_zeta().invert(), &zt)?);
    let et = witness_translation(&OrderTerm::Eta, &Element::eta(-1, 1), &Element::eta(3, 1))?;
    out.push(witness_transport(&ce_eta_eta_plus_one(), &et)?);
    let one_eta = witness_transport(&ce_eta_one_plus_eta(), &et)?;
    out.push(one_eta.clone());
    let block = witness_product_left(&OrderTerm::Zeta, &zv(-2), &zv(1), &one_eta)?;
    out.push(block.clone());
    out.push(witness_transport(&ce_zeta_eta_block(), &block)?);
    Ok(out)
}
