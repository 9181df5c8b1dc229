//! Isomorphisms `(L,a)^alpha -> (L,b)^alpha` for a discrete unbounded
//! cyclically transitive `L`, built stage by stage from a witness for
//! `(a, b)`.
//!
//! Stage `alpha` splits `(L,a)^alpha` into a lower piece (side one) and an
//! upper piece (side two), and likewise `(L,b)^alpha` into an upper piece
//! (side one) and a lower piece (side two). At a successor stage
//! `gamma + 1` the side is read off the top coordinate; at zero and limit
//! stages everything is on side one. The maps `F(alpha)_j` carry side `j`
//! onto side `j` and are evaluated one element at a time.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use parking_lot::Mutex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cyclic::CtloWitness;
use crate::error::{Error, Result};
use crate::exponential::{fs_compare, fs_rebase, ExpSpace, FsFunction};
use crate::linorder::{
    require_discrete_unbounded, sample_with, Element, OrderTerm, Position, Support,
};
use crate::ordinal::Ordinal;
use crate::report::CheckReport;

type Entries = Vec<(Position, Element)>;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Side {
    One,
    Two,
}

impl Side {
    pub fn index(self) -> u8 {
        match self {
            Side::One => 1,
            Side::Two => 2,
        }
    }

    pub fn from_index(j: u8) -> Result<Side> {
        match j {
            1 => Ok(Side::One),
            2 => Ok(Side::Two),
            _ => Err(Error::BadStage(format!("side {j}"))),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Which tower an embedding acts on: `I` over `(L,a)`, `J` over `(L,b)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Tower {
    I,
    J,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Dir {
    Forward,
    Backward,
}

type MemoKey = (Ordinal, Side, Dir, Entries);

const MEMO_LIMIT: usize = 1 << 16;

pub struct ExpIsoContext {
    base: OrderTerm,
    witness: CtloWitness,
    memo: Mutex<HashMap<MemoKey, Entries>>,
}

impl ExpIsoContext {
    pub fn new(witness: CtloWitness) -> Result<Self> {
        require_discrete_unbounded(&witness.term)?;
        Ok(ExpIsoContext {
            base: witness.term.clone(),
            witness,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn base(&self) -> &OrderTerm {
        &self.base
    }

    pub fn witness(&self) -> &CtloWitness {
        &self.witness
    }

    pub fn a(&self) -> &Element {
        &self.witness.a
    }

    pub fn b(&self) -> &Element {
        &self.witness.b
    }

    /// `(L,a)^alpha`.
    pub fn source(&self, alpha: &Ordinal) -> Result<Arc<ExpSpace>> {
        ExpSpace::new(self.base.clone(), self.a().clone(), alpha.clone())
    }

    /// `(L,b)^alpha`.
    pub fn target(&self, alpha: &Ordinal) -> Result<Arc<ExpSpace>> {
        ExpSpace::new(self.base.clone(), self.b().clone(), alpha.clone())
    }

    /// The piece of `(L,a)^alpha` containing `f`.
    pub fn side(&self, alpha: &Ordinal, f: &FsFunction) -> Result<Side> {
        self.expect_space(f, &self.source(alpha)?)?;
        self.side_a(alpha, f.support().entries())
    }

    /// The piece of `(L,b)^alpha` containing `z`.
    pub fn side_prime(&self, alpha: &Ordinal, z: &FsFunction) -> Result<Side> {
        self.expect_space(z, &self.target(alpha)?)?;
        self.side_b(alpha, z.support().entries())
    }

    fn expect_space(&self, f: &FsFunction, space: &Arc<ExpSpace>) -> Result<()> {
        if f.space() == space {
            Ok(())
        } else {
            Err(Error::IncompatibleExponentials)
        }
    }

    fn side_a(&self, alpha: &Ordinal, x: &[(Position, Element)]) -> Result<Side> {
        match alpha.predecessor() {
            None => Ok(Side::One),
            Some(gamma) => {
                let v = top_value(x, &gamma).unwrap_or(self.a());
                Ok(if self.witness.in_l1(v)? {
                    Side::One
                } else {
                    Side::Two
                })
            }
        }
    }

    fn side_b(&self, alpha: &Ordinal, z: &[(Position, Element)]) -> Result<Side> {
        match alpha.predecessor() {
            None => Ok(Side::One),
            Some(gamma) => {
                let v = top_value(z, &gamma).unwrap_or(self.b());
                Ok(if self.witness.in_l2_prime(v)? {
                    Side::Two
                } else {
                    Side::One
                })
            }
        }
    }

    fn piece_map(&self, j: Side, dir: Dir, e: &Element) -> Result<Element> {
        let w = &self.witness;
        match (j, dir) {
            (Side::One, Dir::Forward) => w.f1.apply(e),
            (Side::Two, Dir::Forward) => w.f2.apply(e),
            (Side::One, Dir::Backward) => w.f1_inv.apply(e),
            (Side::Two, Dir::Backward) => w.f2_inv.apply(e),
        }
    }

    fn step(&self, j: Side, dir: Dir, v: Element) -> Result<Element> {
        let moved = match dir {
            Dir::Forward => self.base.successor(&v)?,
            Dir::Backward => self.base.predecessor(&v)?,
        };
        let moved = moved
            .ok_or_else(|| Error::InternalInvariantViolation(format!("{v} has no neighbor")))?;
        let side = if self.witness.in_l2_prime(&moved)? {
            Side::Two
        } else {
            Side::One
        };
        if side != j {
            return Err(Error::InternalInvariantViolation(format!(
                "neighbor {moved} of {v} left piece {j}"
            )));
        }
        Ok(moved)
    }

    fn memoized(
        &self,
        alpha: &Ordinal,
        j: Side,
        dir: Dir,
        x: &[(Position, Element)],
    ) -> Result<Entries> {
        let key = (alpha.clone(), j, dir, x.to_vec());
        if let Some(hit) = self.memo.lock().get(&key) {
            return Ok(hit.clone());
        }
        let out = match dir {
            Dir::Forward => self.forward(alpha, j, x)?,
            Dir::Backward => self.backward(alpha, j, x)?,
        };
        let mut memo = self.memo.lock();
        if memo.len() >= MEMO_LIMIT {
            memo.clear();
        }
        memo.insert(key, out.clone());
        Ok(out)
    }

    fn forward(&self, alpha: &Ordinal, j: Side, x: &[(Position, Element)]) -> Result<Entries> {
        let found = self.side_a(alpha, x)?;
        if found != j {
            return Err(Error::SideMismatch {
                expected: j.index(),
                found: found.index(),
            });
        }
        if alpha.is_zero() {
            return Ok(Vec::new());
        }
        match alpha.predecessor() {
            Some(gamma) => {
                let (prefix, top) = split_at(x, &gamma);
                let y = top.unwrap_or_else(|| self.a().clone());
                let s = self.side_a(&gamma, prefix)?;
                let mut out = self.memoized(&gamma, s, Dir::Forward, prefix)?;
                let mut v = self.piece_map(j, Dir::Forward, &y)?;
                if s == Side::Two {
                    v = self.step(j, Dir::Forward, v)?;
                }
                if &v != self.b() {
                    out.push((Position::Ord(gamma), v));
                }
                Ok(out)
            }
            None => match covering_stage(x, |v| self.witness.in_l1(v))? {
                None => Ok(Vec::new()),
                Some(beta) => self.memoized(&beta, Side::One, Dir::Forward, x),
            },
        }
    }

    fn backward(&self, alpha: &Ordinal, j: Side, z: &[(Position, Element)]) -> Result<Entries> {
        let found = self.side_b(alpha, z)?;
        if found != j {
            return Err(Error::SideMismatch {
                expected: j.index(),
                found: found.index(),
            });
        }
        if alpha.is_zero() {
            return Ok(Vec::new());
        }
        match alpha.predecessor() {
            Some(gamma) => {
                let (prefix, top) = split_at(z, &gamma);
                let mut v = top.unwrap_or_else(|| self.b().clone());
                let s = self.side_b(&gamma, prefix)?;
                let mut out = self.memoized(&gamma, s, Dir::Backward, prefix)?;
                if s == Side::Two {
                    v = self.step(j, Dir::Backward, v)?;
                }
                let y = self.piece_map(j, Dir::Backward, &v)?;
                if &y != self.a() {
                    out.push((Position::Ord(gamma), y));
                }
                Ok(out)
            }
            None => match covering_stage(z, |v| Ok(!self.witness.in_l2_prime(v)?))? {
                None => Ok(Vec::new()),
                Some(beta) => self.memoized(&beta, Side::One, Dir::Backward, z),
            },
        }
    }

    /// Number of cached stage evaluations.
    pub fn memo_len(&self) -> usize {
        self.memo.lock().len()
    }
}

fn top_value<'a>(x: &'a [(Position, Element)], gamma: &Ordinal) -> Option<&'a Element> {
    match x.last() {
        Some((Position::Ord(p), v)) if p == gamma => Some(v),
        _ => None,
    }
}

fn split_at<'a>(
    x: &'a [(Position, Element)],
    gamma: &Ordinal,
) -> (&'a [(Position, Element)], Option<Element>) {
    match top_value(x, gamma) {
        Some(v) => (&x[..x.len() - 1], Some(v.clone())),
        None => (x, None),
    }
}

// Least successor stage above the top support position whose top
// coordinate lies in the first piece.
fn covering_stage(
    x: &[(Position, Element)],
    first_piece: impl Fn(&Element) -> Result<bool>,
) -> Result<Option<Ordinal>> {
    let Some((p, v)) = x.last() else {
        return Ok(None);
    };
    let p = p.as_ord().ok_or_else(|| Error::InvalidPosition {
        position: p.to_string(),
        exponent: "an ordinal".into(),
    })?;
    Ok(Some(if first_piece(v)? {
        p.succ()
    } else {
        p.succ().succ()
    }))
}

fn wrap(space: &Arc<ExpSpace>, entries: Entries) -> Result<FsFunction> {
    space.wrap(&Element::Fs(Support::from_sorted(entries)))
}

/// `I` or `J` from stage `delta` into stage `alpha`; positions and values
/// are unchanged.
pub fn embed(
    ctx: &ExpIsoContext,
    delta: &Ordinal,
    alpha: &Ordinal,
    x: &FsFunction,
    which: Tower,
) -> Result<FsFunction> {
    if delta > alpha {
        return Err(Error::BadStage(format!("{delta} > {alpha}")));
    }
    let (from, to) = match which {
        Tower::I => (ctx.source(delta)?, ctx.source(alpha)?),
        Tower::J => (ctx.target(delta)?, ctx.target(alpha)?),
    };
    ctx.expect_space(x, &from)?;
    let side = match which {
        Tower::I => ctx.side_a(delta, x.support().entries())?,
        Tower::J => ctx.side_b(delta, x.support().entries())?,
    };
    if side != Side::One {
        return Err(Error::SideMismatch {
            expected: 1,
            found: side.index(),
        });
    }
    wrap(&to, x.support().entries().to_vec())
}

/// `F(alpha)_j`.
pub fn stage_f(
    ctx: &ExpIsoContext,
    alpha: &Ordinal,
    j: Side,
    f: &FsFunction,
) -> Result<FsFunction> {
    ctx.expect_space(f, &ctx.source(alpha)?)?;
    let out = ctx.memoized(alpha, j, Dir::Forward, f.support().entries())?;
    wrap(&ctx.target(alpha)?, out)
}

/// The inverse of `F(alpha)_j`.
pub fn stage_f_inverse(
    ctx: &ExpIsoContext,
    alpha: &Ordinal,
    j: Side,
    z: &FsFunction,
) -> Result<FsFunction> {
    ctx.expect_space(z, &ctx.target(alpha)?)?;
    let out = ctx.memoized(alpha, j, Dir::Backward, z.support().entries())?;
    wrap(&ctx.source(alpha)?, out)
}

/// Both pieces glued: `F(alpha)_1` on side one, `F(alpha)_2` on side two.
pub fn stage_glued(ctx: &ExpIsoContext, alpha: &Ordinal, f: &FsFunction) -> Result<FsFunction> {
    let j = ctx.side(alpha, f)?;
    stage_f(ctx, alpha, j, f)
}

pub fn stage_glued_inverse(
    ctx: &ExpIsoContext,
    alpha: &Ordinal,
    z: &FsFunction,
) -> Result<FsFunction> {
    let j = ctx.side_prime(alpha, z)?;
    stage_f_inverse(ctx, alpha, j, z)
}

// Positions below the limit part go through F(beta)_1; the finitely many
// top coordinates are kept as values and only re-stored relative to the
// other basepoint.
fn iso(ctx: &ExpIsoContext, alpha: &Ordinal, f: &FsFunction, dir: Dir) -> Result<FsFunction> {
    let (from, to, point) = match dir {
        Dir::Forward => (ctx.source(alpha)?, ctx.target(alpha)?, ctx.b()),
        Dir::Backward => (ctx.target(alpha)?, ctx.source(alpha)?, ctx.a()),
    };
    ctx.expect_space(f, &from)?;
    let (beta, n) = alpha.split_limit_finite();
    let (low, high): (Entries, Entries) = f
        .support()
        .entries()
        .iter()
        .cloned()
        .partition(|(p, _)| p.as_ord().is_some_and(|o| o < &beta));
    let mut out = ctx.memoized(&beta, Side::One, dir, &low)?;
    if n > 0 {
        let top_from = ExpSpace::new(ctx.base.clone(), from.point().clone(), Ordinal::nat(n))?;
        let shifted = high
            .into_iter()
            .map(|(p, v)| {
                let o = p.as_ord().expect("ordinal exponent").sub(&beta)?;
                Ok((Position::Ord(o), v))
            })
            .collect::<Result<Entries>>()?;
        let rebased = fs_rebase(&wrap(&top_from, shifted)?, point)?;
        for (p, v) in rebased.support().entries() {
            let o = p.as_ord().expect("ordinal exponent");
            out.push((Position::Ord(beta.add(o)), v.clone()));
        }
    }
    wrap(&to, out)
}

/// `G(alpha): (L,a)^alpha -> (L,b)^alpha`.
pub fn main_iso(ctx: &ExpIsoContext, alpha: &Ordinal, f: &FsFunction) -> Result<FsFunction> {
    iso(ctx, alpha, f, Dir::Forward)
}

pub fn main_iso_inverse(
    ctx: &ExpIsoContext,
    alpha: &Ordinal,
    z: &FsFunction,
) -> Result<FsFunction> {
    iso(ctx, alpha, z, Dir::Backward)
}

macro_rules! try_check {
    ($report:expr, $check:expr, $inputs:expr, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => {
                $report.error($check, $inputs, &err);
                return $report;
            }
        }
    };
}

/// Samples `pairs` pairs `f < g` (half of them adjacent) and checks that
/// `G(alpha)` preserves their order, that `G(alpha)` and its inverse round
/// trip, and that `F(alpha)_1` sends `a_alpha` to `b_alpha`. For limit
/// `alpha` also `G(alpha)(a_alpha) = b_alpha`.
pub fn verify_exponentiable(
    ctx: &ExpIsoContext,
    alpha: &Ordinal,
    seed: u64,
    pairs: usize,
) -> CheckReport {
    let mut report = CheckReport::new();
    let src = try_check!(report, "setup", alpha.to_string(), ctx.source(alpha));
    let dst = try_check!(report, "setup", alpha.to_string(), ctx.target(alpha));
    let (a_alpha, b_alpha) = (src.constant(), dst.constant());

    let image = try_check!(
        report,
        "base point",
        a_alpha.to_string(),
        stage_f(ctx, alpha, Side::One, &a_alpha)
    );
    report.ensure("base point", image == b_alpha, || {
        (
            format!("F({alpha})_1(a)"),
            b_alpha.to_string(),
            image.to_string(),
        )
    });
    if alpha.is_zero() || alpha.is_limit() {
        let g = try_check!(
            report,
            "base point",
            a_alpha.to_string(),
            main_iso(ctx, alpha, &a_alpha)
        );
        report.ensure("base point", g == b_alpha, || {
            (format!("G({alpha})(a)"), b_alpha.to_string(), g.to_string())
        });
    }

    let term = src.term().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..pairs {
        let x = try_check!(
            report,
            "sample",
            term.to_string(),
            sample_with(&term, &mut rng)
        );
        let y = if i % 2 == 0 {
            match try_check!(report, "sample", x.to_string(), term.successor(&x)) {
                Some(y) => y,
                None => continue,
            }
        } else {
            try_check!(
                report,
                "sample",
                term.to_string(),
                sample_with(&term, &mut rng)
            )
        };
        let f = try_check!(report, "sample", x.to_string(), src.wrap(&x));
        let g = try_check!(report, "sample", y.to_string(), src.wrap(&y));
        let order = try_check!(report, "sample", format!("{f}, {g}"), fs_compare(&f, &g));
        if order.is_eq() {
            continue;
        }
        let (f, g) = if order.is_lt() { (f, g) } else { (g, f) };
        let gf = try_check!(report, "apply", f.to_string(), main_iso(ctx, alpha, &f));
        let gg = try_check!(report, "apply", g.to_string(), main_iso(ctx, alpha, &g));
        let image_order = try_check!(
            report,
            "monotone",
            format!("{gf}, {gg}"),
            fs_compare(&gf, &gg)
        );
        if !report.ensure("monotone", image_order.is_lt(), || {
            (
                format!("{f} < {g}"),
                "G(f) < G(g)".into(),
                format!("{gf} vs {gg}"),
            )
        }) {
            return report;
        }
        for (h, gh) in [(&f, &gf), (&g, &gg)] {
            let back = try_check!(
                report,
                "round trip",
                gh.to_string(),
                main_iso_inverse(ctx, alpha, gh)
            );
            if !report.ensure("round trip", &back == h, || {
                (gh.to_string(), h.to_string(), back.to_string())
            }) {
                return report;
            }
            let z = try_check!(
                report,
                "sample",
                term.to_string(),
                sample_with(dst.term(), &mut rng)
            );
            let z = try_check!(report, "sample", z.to_string(), dst.wrap(&z));
            let pre = try_check!(
                report,
                "round trip",
                z.to_string(),
                main_iso_inverse(ctx, alpha, &z)
            );
            let again = try_check!(
                report,
                "round trip",
                pre.to_string(),
                main_iso(ctx, alpha, &pre)
            );
            if !report.ensure("round trip", again == z, || {
                (pre.to_string(), z.to_string(), again.to_string())
            }) {
                return report;
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{witness_finite_rotation, witness_product_left, witness_translation};

    fn zeta_two() -> ExpIsoContext {
        let rot = witness_finite_rotation(2, 0, 1).unwrap();
        let w = witness_product_left(&OrderTerm::Zeta, &Element::Zeta(0), &Element::Zeta(0), &rot)
            .unwrap();
        ExpIsoContext::new(w).unwrap()
    }

    fn p(z: i64, c: u64) -> Element {
        Element::pair(Element::Zeta(z), Element::Fin(c))
    }

    fn fs(space: &Arc<ExpSpace>, pairs: &[(Ordinal, Element)]) -> FsFunction {
        crate::exponential::fs_make(
            space,
            pairs
                .iter()
                .map(|(o, e)| (Position::Ord(o.clone()), e.clone()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn first_stages() {
        let ctx = zeta_two();
        let one = Ordinal::one();
        let f = fs(&ctx.source(&one).unwrap(), &[(Ordinal::zero(), p(5, 0))]);
        let img = stage_f(&ctx, &one, Side::One, &f).unwrap();
        assert_eq!(
            img,
            fs(&ctx.target(&one).unwrap(), &[(Ordinal::zero(), p(5, 1))])
        );

        let w = Ordinal::omega();
        let f = fs(&ctx.source(&w).unwrap(), &[(Ordinal::zero(), p(5, 0))]);
        let img = stage_f(&ctx, &w, Side::One, &f).unwrap();
        assert_eq!(
            img,
            fs(&ctx.target(&w).unwrap(), &[(Ordinal::zero(), p(5, 1))])
        );
    }

    #[test]
    fn side_two_prefix_shifts_the_top() {
        let ctx = zeta_two();
        let two = Ordinal::nat(2);
        let f = fs(&ctx.source(&two).unwrap(), &[(Ordinal::zero(), p(3, 1))]);
        assert_eq!(ctx.side(&two, &f).unwrap(), Side::One);
        let img = stage_f(&ctx, &two, Side::One, &f).unwrap();
        // prefix (3,1) goes to (3,0); the top a=(0,0) goes to b=(0,1), then one step up.
        let expected = fs(
            &ctx.target(&two).unwrap(),
            &[(Ordinal::zero(), p(3, 0)), (Ordinal::one(), p(1, 1))],
        );
        assert_eq!(img, expected);
        assert_eq!(stage_f_inverse(&ctx, &two, Side::One, &img).unwrap(), f);
    }

    #[test]
    fn side_mismatch() {
        let ctx = zeta_two();
        let one = Ordinal::one();
        let f = fs(&ctx.source(&one).unwrap(), &[(Ordinal::zero(), p(0, 1))]);
        assert!(matches!(
            stage_f(&ctx, &one, Side::One, &f),
            Err(Error::SideMismatch {
                expected: 1,
                found: 2
            })
        ));
    }

    #[test]
    fn omega_rejected() {
        let w =
            witness_translation(&OrderTerm::Zeta, &Element::Zeta(0), &Element::Zeta(1)).unwrap();
        assert!(ExpIsoContext::new(w).is_ok());
        let mut w =
            witness_translation(&OrderTerm::Zeta, &Element::Zeta(0), &Element::Zeta(1)).unwrap();
        w.term = OrderTerm::Omega;
        assert!(matches!(
            ExpIsoContext::new(w),
            Err(Error::NotDiscreteUnbounded(_))
        ));
    }

    #[test]
    fn exponentiable_small() {
        let ctx = zeta_two();
        for alpha in [
            Ordinal::one(),
            Ordinal::nat(3),
            Ordinal::omega(),
            Ordinal::omega().add(&Ordinal::nat(2)),
        ] {
            let r = verify_exponentiable(&ctx, &alpha, 7, 200);
            assert!(r.passed(), "{alpha}: {:?}", r.counterexample);
        }
    }
}
