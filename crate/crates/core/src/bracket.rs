//! Kauffman bracket and Jones polynomial by state summation.
//!
//! Conventions: the variable is `A`, the loop value is `δ = -A² - A⁻²`,
//! and the A-smoothing of a crossing joins slots 0–1 and 2–3 (the regions
//! swept counterclockwise by the over strand). With these choices a
//! positive kink multiplies the bracket by `-A³`.

use rayon::prelude::*;

use crate::diagram::{PlanarDiagram, UnionFind};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

pub const DEFAULT_CROSSING_LIMIT: usize = 24;

/// Below this many crossings the state sum runs on one thread.
const PARALLEL_THRESHOLD: usize = 10;

fn delta() -> LaurentPoly {
    LaurentPoly::from_terms([(-1, 2), (-1, -2)]).expect("small")
}

/// `hist[a - b + n][loops]` = number of states.
fn state_histogram(d: &PlanarDiagram) -> Vec<Vec<u64>> {
    let n = d.num_crossings();
    let m = d.num_arcs();
    let max_loops = m + d.free_loops() as usize + 1;
    let empty = || vec![vec![0u64; max_loops + 1]; 2 * n + 1];
    let xs = d.crossings();
    let tally = |mut hist: Vec<Vec<u64>>, state: u64| {
        let mut uf = UnionFind::new(m);
        let mut b_count = 0usize;
        for (k, x) in xs.iter().enumerate() {
            let [a0, a1, a2, a3] = x.arcs.map(|a| a as usize);
            if state >> k & 1 == 0 {
                uf.union(a0, a1);
                uf.union(a2, a3);
            } else {
                b_count += 1;
                uf.union(a0, a3);
                uf.union(a1, a2);
            }
        }
        let loops = uf.classes() + d.free_loops() as usize;
        let a_count = n - b_count;
        hist[a_count + n - b_count][loops] += 1;
        hist
    };
    let states = 1u64 << n;
    if n < PARALLEL_THRESHOLD {
        (0..states).fold(empty(), tally)
    } else {
        (0..states)
            .into_par_iter()
            .fold(empty, tally)
            .reduce(empty, |mut x, y| {
                for (rx, ry) in x.iter_mut().zip(&y) {
                    for (cx, cy) in rx.iter_mut().zip(ry) {
                        *cx += cy;
                    }
                }
                x
            })
    }
}

fn check_input(d: &PlanarDiagram, limit: usize) -> Result<()> {
    if !d.is_closed() {
        return Err(Error::InvalidDiagram("bracket needs a closed diagram".into()));
    }
    if d.num_crossings() > limit {
        return Err(Error::CrossingLimit {
            crossings: d.num_crossings(),
            limit,
        });
    }
    if d.num_crossings() == 0 && d.free_loops() == 0 {
        return Err(Error::InvalidDiagram("empty link".into()));
    }
    Ok(())
}

pub fn kauffman_bracket(d: &PlanarDiagram) -> Result<LaurentPoly> {
    kauffman_bracket_with_limit(d, DEFAULT_CROSSING_LIMIT)
}

pub fn kauffman_bracket_with_limit(d: &PlanarDiagram, limit: usize) -> Result<LaurentPoly> {
    check_input(d, limit)?;
    let n = d.num_crossings() as i32;
    let hist = state_histogram(d);
    let delta = delta();
    let mut powers = vec![LaurentPoly::one()];
    let max_loops = hist.first().map_or(0, |r| r.len());
    for k in 1..max_loops {
        let next = powers[k - 1].mul(&delta)?;
        powers.push(next);
    }
    let mut total = LaurentPoly::zero();
    for (shift, row) in hist.iter().enumerate() {
        for (loops, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let coeff = i64::try_from(count).map_err(|_| Error::Overflow)?;
            let term = powers[loops - 1].shift(shift as i32 - n)?.scale(coeff)?;
            total = total.add(&term)?;
        }
    }
    Ok(total)
}

/// `(-A³)^(-writhe) · <d>`.
pub fn jones(d: &PlanarDiagram) -> Result<LaurentPoly> {
    jones_with_limit(d, DEFAULT_CROSSING_LIMIT)
}

pub fn jones_with_limit(d: &PlanarDiagram, limit: usize) -> Result<LaurentPoly> {
    let bracket = kauffman_bracket_with_limit(d, limit)?;
    writhe_normalize(&bracket, d.writhe())
}

pub fn writhe_normalize(bracket: &LaurentPoly, writhe: i64) -> Result<LaurentPoly> {
    let w = i32::try_from(writhe).map_err(|_| Error::Overflow)?;
    let sign = if w % 2 == 0 { 1 } else { -1 };
    bracket.shift(w.checked_mul(-3).ok_or(Error::Overflow)?)?.scale(sign)
}

/// True iff `pq = p · q`.
pub fn jones_connected_sum_check(p: &LaurentPoly, q: &LaurentPoly, pq: &LaurentPoly) -> bool {
    p.mul(q).is_ok_and(|prod| &prod == pq)
}
