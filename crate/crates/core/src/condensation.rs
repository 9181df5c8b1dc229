//! Hausdorff condensation: `a ~_(b+1) c` when the interval between them
//! meets finitely many `~_b` classes, with unions at limits.
//!
//! Finite orders are condensed by brute force. Terms are condensed by
//! rewriting, and each rewrite carries the quotient map onto the condensed
//! term together with a section choosing class representatives.

use crate::cyclic::{CtloWitness, Cut, ElementMap};
use crate::error::{Error, Result};
use crate::linorder::{Element, Exponent, OrderTerm, Position, Support};
use crate::ordinal::Ordinal;

/// Classes of `~_gamma` on `Fin(size)` for finite `gamma`, each listed in
/// increasing order.
pub fn condense_brute(size: u64, gamma: &Ordinal) -> Result<Vec<Vec<u64>>> {
    let steps = gamma.as_nat().ok_or_else(|| {
        Error::unsupported(format!(
            "brute-force condensation needs a finite stage, got {gamma}"
        ))
    })?;
    // class[i] is a representative of the class containing i.
    let mut class: Vec<usize> = (0..size as usize).collect();
    for _ in 0..steps {
        let n = class.len();
        let mut next: Vec<usize> = (0..n).collect();
        for i in 0..n {
            for j in i + 1..n {
                // [i, j] meets at most j - i + 1 classes, finitely many.
                let (ri, rj) = (find(&mut next, i), find(&mut next, j));
                next[rj.max(ri)] = ri.min(rj);
            }
        }
        class = (0..n).map(|i| find(&mut next, i)).collect();
    }
    let mut out: Vec<Vec<u64>> = Vec::new();
    let mut last = None;
    for (i, c) in class.iter().enumerate() {
        if last == Some(*c) {
            out.last_mut().expect("class started").push(i as u64);
        } else {
            out.push(vec![i as u64]);
            last = Some(*c);
        }
    }
    Ok(out)
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// One condensation step together with the quotient map onto the result
/// and a section picking a representative of each class.
#[derive(Clone, Debug)]
pub struct Condensed {
    pub term: OrderTerm,
    pub project: ElementMap,
    pub section: ElementMap,
}

impl Condensed {
    fn identity(term: OrderTerm) -> Self {
        Condensed {
            term,
            project: ElementMap::identity(),
            section: ElementMap::identity(),
        }
    }

    fn point(rep: Element) -> Self {
        Condensed {
            term: OrderTerm::Fin(1),
            project: ElementMap::new("class", |_| Ok(Element::Fin(0))),
            section: ElementMap::new(format!("{rep}"), move |_| Ok(rep.clone())),
        }
    }

    fn then(self, next: Condensed) -> Condensed {
        Condensed {
            term: next.term,
            project: self.project.then(&next.project),
            section: next.section.then(&self.section),
        }
    }
}

fn zeta_power_exponent(term: &OrderTerm) -> Option<&Ordinal> {
    match term.as_exp() {
        Some((OrderTerm::Zeta, Element::Zeta(0), Exponent::Ordinal(a))) => Some(a),
        _ => None,
    }
}

fn support_of<'a>(term: &OrderTerm, e: &'a Element) -> Result<&'a Support> {
    e.as_support().ok_or_else(|| term.mismatch(e))
}

/// `(z,0)^alpha` condensed `k` times, `k <= alpha`: positions below `k`
/// are forgotten and the rest shifted down by left subtraction.
fn zeta_power_drop(term: &OrderTerm, alpha: &Ordinal, k: &Ordinal) -> Result<Condensed> {
    let delta = alpha.sub(k)?;
    if delta.is_zero() {
        let rep = Element::Fs(Support::empty());
        return Ok(Condensed::point(rep));
    }
    let (t1, t2) = (term.clone(), term.clone());
    let (k1, k2) = (k.clone(), k.clone());
    Ok(Condensed {
        term: OrderTerm::zeta_power(delta),
        project: ElementMap::new(format!("drop positions below {k}"), move |e| {
            let s = support_of(&t1, e)?;
            let mut out = Vec::new();
            for (p, v) in s.entries() {
                let Position::Ord(o) = p else {
                    return Err(t1.mismatch(e));
                };
                if *o >= k1 {
                    out.push((Position::Ord(o.sub(&k1)?), v.clone()));
                }
            }
            Ok(Element::Fs(Support::from_sorted(out)))
        }),
        section: ElementMap::new(format!("shift positions up by {k}"), move |e| {
            let s = support_of(&t2, e)?;
            let mut out = Vec::new();
            for (p, v) in s.entries() {
                let Position::Ord(o) = p else {
                    return Err(t2.mismatch(e));
                };
                out.push((Position::Ord(k2.add(o)), v.clone()));
            }
            Ok(Element::Fs(Support::from_sorted(out)))
        }),
    })
}

fn unsupported(term: &OrderTerm) -> Error {
    Error::unsupported(format!("no condensation rule for {term}"))
}

/// One condensation step with its quotient map and section.
pub fn condense_step(term: &OrderTerm) -> Result<Condensed> {
    Ok(match term {
        OrderTerm::Fin(0) => Condensed::identity(term.clone()),
        OrderTerm::Fin(_) => Condensed::point(Element::Fin(0)),
        OrderTerm::Omega => Condensed::point(Element::Omega(0)),
        OrderTerm::OmegaStar => Condensed::point(Element::OmegaStar(0)),
        OrderTerm::Zeta => Condensed::point(Element::Zeta(0)),
        OrderTerm::Eta => Condensed::identity(OrderTerm::Eta),
        OrderTerm::Sum(a, b) => {
            let (ca, cb) = (condense_step(a)?, condense_step(b)?);
            let (ka, kb) = (ca.term.classify()?, cb.term.classify()?);
            // Classes cannot straddle the junction when one side has
            // infinitely many classes next to it.
            let separated = a.is_empty() || b.is_empty() || !ka.has_greatest || !kb.has_least;
            if !separated {
                return Err(Error::unsupported(format!(
                    "condensations of {a} and {b} are bounded at the junction"
                )));
            }
            let (pa, pb, sa, sb) = (ca.project, cb.project, ca.section, cb.section);
            let left = |e: &Element| -> Option<Element> {
                match e {
                    Element::Left(x) => Some((**x).clone()),
                    _ => None,
                }
            };
            let right = |e: &Element| -> Option<Element> {
                match e {
                    Element::Right(x) => Some((**x).clone()),
                    _ => None,
                }
            };
            let t = term.clone();
            let t2 = term.clone();
            Condensed {
                term: OrderTerm::sum(ca.term, cb.term),
                project: ElementMap::new("summandwise", move |e| match (left(e), right(e)) {
                    (Some(x), _) => Ok(Element::left(pa.apply(&x)?)),
                    (_, Some(y)) => Ok(Element::right(pb.apply(&y)?)),
                    _ => Err(t.mismatch(e)),
                }),
                section: ElementMap::new("summandwise", move |e| match (left(e), right(e)) {
                    (Some(x), _) => Ok(Element::left(sa.apply(&x)?)),
                    (_, Some(y)) => Ok(Element::right(sb.apply(&y)?)),
                    _ => Err(t2.mismatch(e)),
                }),
            }
        }
        OrderTerm::Prod(a, m) => {
            let ka = a.classify()?;
            // Without a least or greatest element every copy of `a` is
            // infinite toward its neighbours, so classes stay inside copies.
            if ka.empty || (ka.has_least && ka.has_greatest) {
                return Err(unsupported(term));
            }
            let ca = condense_step(a)?;
            let collapse = ca.term == OrderTerm::Fin(1);
            let (pa, sa) = (ca.project, ca.section);
            let t = term.clone();
            let m_term = m.clone();
            Condensed {
                term: if collapse {
                    (**m).clone()
                } else {
                    OrderTerm::prod(ca.term, (**m).clone())
                },
                project: ElementMap::new("copywise", move |e| {
                    let (x, y) = e.as_pair().ok_or_else(|| t.mismatch(e))?;
                    if collapse {
                        Ok(y.clone())
                    } else {
                        Ok(Element::pair(pa.apply(x)?, y.clone()))
                    }
                }),
                section: ElementMap::new("copywise", move |e| {
                    if collapse {
                        Ok(Element::pair(sa.apply(&Element::Fin(0))?, e.clone()))
                    } else {
                        let (x, y) = e.as_pair().ok_or_else(|| m_term.mismatch(e))?;
                        Ok(Element::pair(sa.apply(x)?, y.clone()))
                    }
                }),
            }
        }
        OrderTerm::Exp { .. } => match zeta_power_exponent(term) {
            Some(alpha) if alpha.is_zero() => Condensed::point(Element::Fs(Support::empty())),
            Some(alpha) => zeta_power_drop(term, alpha, &Ordinal::one())?,
            None => return Err(unsupported(term)),
        },
        OrderTerm::Rev(x) => {
            let c = condense_step(x)?;
            Condensed {
                term: c.term.reverse(),
                ..c
            }
        }
    })
}

/// One condensation step on a term.
pub fn condense_symbolic(term: &OrderTerm) -> Result<OrderTerm> {
    Ok(condense_step(term)?.term)
}

const LIMIT_STEPS: usize = 64;

/// The `gamma`-th condensation with its quotient map and section. Finite
/// stages iterate [`condense_step`]; `(z,0)^alpha` is condensed directly by
/// left subtraction; other infinite stages need the iteration to reach a
/// fixed point.
pub fn condense_iterate_maps(term: &OrderTerm, gamma: &Ordinal) -> Result<Condensed> {
    if let Some(alpha) = zeta_power_exponent(term) {
        let k = if gamma <= alpha { gamma } else { alpha };
        return zeta_power_drop(term, alpha, k);
    }
    let mut acc = Condensed::identity(term.clone());
    let steps = gamma.as_nat();
    let mut i: u64 = 0;
    loop {
        if steps == Some(i) {
            return Ok(acc);
        }
        let next = condense_step(&acc.term)?;
        let fixed = next.term == acc.term;
        acc = acc.then(next);
        if fixed {
            return Ok(acc);
        }
        i += 1;
        if steps.is_none() && i as usize >= LIMIT_STEPS {
            return Err(Error::unsupported(format!(
                "{term} does not stabilise before stage {gamma}"
            )));
        }
    }
}

pub fn condense_iterate(term: &OrderTerm, gamma: &Ordinal) -> Result<OrderTerm> {
    Ok(condense_iterate_maps(term, gamma)?.term)
}

/// An isomorphism `z * c(term) -> term` for a discrete unbounded term.
#[derive(Clone, Debug)]
pub struct ZetaFactorization {
    pub term: OrderTerm,
    pub condensed: OrderTerm,
    /// From `z * condensed` to `term`.
    pub forward: ElementMap,
    pub inverse: ElementMap,
}

impl ZetaFactorization {
    pub fn product(&self) -> OrderTerm {
        OrderTerm::prod(OrderTerm::Zeta, self.condensed.clone())
    }
}

pub fn zeta_factorization(term: &OrderTerm) -> Result<ZetaFactorization> {
    crate::linorder::require_discrete_unbounded(term)?;
    match term {
        OrderTerm::Prod(a, m) if **a == OrderTerm::Zeta => Ok(ZetaFactorization {
            term: term.clone(),
            condensed: (**m).clone(),
            forward: ElementMap::identity(),
            inverse: ElementMap::identity(),
        }),
        _ => {
            let Some(alpha) = zeta_power_exponent(term) else {
                return Err(Error::unsupported(format!(
                    "no class representatives for {term}"
                )));
            };
            let c = zeta_power_drop(term, alpha, &Ordinal::one())?;
            let (t1, t2) = (term.clone(), term.clone());
            let (section, project) = (c.section.clone(), c.project.clone());
            Ok(ZetaFactorization {
                term: term.clone(),
                condensed: c.term,
                forward: ElementMap::new("(k, g) -> g shifted up, with k at 0", move |e| {
                    let (k, g) = e.as_pair().ok_or_else(|| t1.mismatch(e))?;
                    let Element::Zeta(k) = k else {
                        return Err(t1.mismatch(e));
                    };
                    let lifted = section.apply(g)?;
                    let mut entries = Vec::new();
                    if *k != 0 {
                        entries.push((Position::Ord(Ordinal::zero()), Element::Zeta(*k)));
                    }
                    entries.extend(support_of(&t1, &lifted)?.entries().iter().cloned());
                    Ok(Element::Fs(Support::from_sorted(entries)))
                }),
                inverse: ElementMap::new("f -> (f(0), f shifted down)", move |e| {
                    let s = support_of(&t2, e)?;
                    let k = s
                        .value_at(&Position::Ord(Ordinal::zero()), &Element::Zeta(0))
                        .clone();
                    Ok(Element::pair(k, project.apply(e)?))
                }),
            })
        }
    }
}

/// Induces a witness on the `gamma`-th condensation. Every stage below
/// `gamma` must be unbounded.
pub fn ctlo_condense_transport(w: &CtloWitness, gamma: &Ordinal) -> Result<CtloWitness> {
    if gamma.is_zero() {
        return Ok(w.clone());
    }
    check_unbounded_stages(&w.term, gamma)?;
    let c = condense_iterate_maps(&w.term, gamma)?;
    let induce = |f: &ElementMap| c.section.then(f).then(&c.project);
    Ok(CtloWitness {
        term: c.term.clone(),
        a: c.project.apply(&w.a)?,
        b: c.project.apply(&w.b)?,
        cut1: w
            .cut1
            .pull_back(&c.section, format!("class in {}", w.cut1.description())),
        cut2: w
            .cut2
            .pull_back(&c.section, format!("class in {}", w.cut2.description())),
        f1: induce(&w.f1),
        f1_inv: induce(&w.f1_inv),
        f2: induce(&w.f2),
        f2_inv: induce(&w.f2_inv),
        via: format!("condense({})", w.via),
        shift: None,
    })
}

fn check_unbounded_stages(term: &OrderTerm, gamma: &Ordinal) -> Result<()> {
    let bounded = |t: &OrderTerm, beta: &dyn std::fmt::Display| -> Result<()> {
        if t.classify()?.unbounded() {
            Ok(())
        } else {
            Err(Error::HypothesisFailed(format!(
                "stage {beta} condensation {t} is bounded"
            )))
        }
    };
    if let Some(alpha) = zeta_power_exponent(term) {
        // Stage beta is (z,0)^(alpha - beta), unbounded exactly for beta < alpha.
        if gamma > alpha {
            return Err(Error::HypothesisFailed(format!(
                "stage {alpha} condensation of {term} is a point"
            )));
        }
        return bounded(term, &0);
    }
    let mut t = term.clone();
    let steps = gamma.as_nat().unwrap_or(LIMIT_STEPS as u64);
    for beta in 0..steps {
        bounded(&t, &beta)?;
        let next = condense_symbolic(&t)?;
        if next == t {
            break;
        }
        t = next;
    }
    Ok(())
}

/// Whether `Cut` pieces of a witness are unions of classes, checked on the
/// given elements by comparing each with its class representative.
pub fn cut_respects_classes(cut: &Cut, c: &Condensed, elems: &[Element]) -> Result<bool> {
    for e in elems {
        let rep = c.section.apply(&c.project.apply(e)?)?;
        if cut.contains(e)? != cut.contains(&rep)? {
            return Ok(false);
        }
    }
    Ok(true)
}
