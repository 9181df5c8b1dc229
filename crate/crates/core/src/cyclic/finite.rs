use itertools::Itertools;

use super::cyclic_r;
use crate::error::{Error, Result};
use crate::linorder::{Element, OrderTerm};

const MAX_BRUTE: u64 = 9;

fn guard(n: u64) -> Result<()> {
    if n > MAX_BRUTE {
        Err(Error::TooLarge(n))
    } else {
        Ok(())
    }
}

/// Whether `n` is transitive as a linear order, by searching all
/// permutations for an order automorphism moving each point to each other.
pub fn transitive_finite_check(n: u64) -> Result<bool> {
    guard(n)?;
    let autos: Vec<Vec<u64>> = (0..n)
        .permutations(n as usize)
        .filter(|p| p.windows(2).all(|w| w[0] < w[1]))
        .collect();
    Ok((0..n).all(|a| (0..n).all(|b| autos.iter().any(|p| p[a as usize] == b))))
}

/// Number of permutations of `n` preserving the glued cyclic relation.
pub fn cyclic_automorphism_count(n: u64) -> Result<u64> {
    guard(n)?;
    let term = OrderTerm::Fin(n);
    let e = |i: u64| Element::Fin(i);
    let mut triples = Vec::new();
    for (x, y, z) in (0..n).tuple_combinations() {
        triples.push((x, y, z));
        triples.push((z, y, x));
    }
    let mut truth = Vec::with_capacity(triples.len());
    for &(x, y, z) in &triples {
        truth.push(cyclic_r(&term, &e(x), &e(y), &e(z))?);
    }
    let mut count = 0;
    for p in (0..n).permutations(n as usize) {
        let mut ok = true;
        for (&(x, y, z), &t) in triples.iter().zip(&truth) {
            let (px, py, pz) = (p[x as usize], p[y as usize], p[z as usize]);
            if cyclic_r(&term, &e(px), &e(py), &e(pz))? != t {
                ok = false;
                break;
            }
        }
        if ok {
            count += 1;
        }
    }
    Ok(count)
}
