//! Brute-force bracket oracle working directly on Gauss codes.
//!
//! Shares no code with the library's diagram or polynomial types. Each
//! component is cut at its crossing visits into segments; a smoothing joins
//! segment ends at every crossing, and loops are counted with a plain
//! parent array. At a positive crossing the A-smoothing is the oriented
//! one, at a negative crossing the B-smoothing is.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

pub type Poly = BTreeMap<i32, i64>;

pub fn poly_mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for (a, x) in p {
        for (b, y) in q {
            *out.entry(a + b).or_insert(0) += x * y;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn poly_add(p: &mut Poly, q: &Poly) {
    for (e, c) in q {
        *p.entry(*e).or_insert(0) += c;
    }
    p.retain(|_, c| *c != 0);
}

pub fn poly_pow(p: &Poly, n: u32) -> Poly {
    (0..n).fold(Poly::from([(0, 1)]), |acc, _| poly_mul(&acc, p))
}

/// Parses `p` as printed by the library, e.g. `-1*A^-16 + 1*A^-12`.
pub fn parse_library_poly(s: &str) -> Poly {
    let mut out = Poly::new();
    if s.trim() == "0" {
        return out;
    }
    let s = s.replace(" - ", " + -");
    for term in s.split(" + ") {
        let (c, e) = term.trim().split_once("*A^").expect("c*A^e term");
        *out.entry(e.parse().unwrap()).or_insert(0) += c.parse::<i64>().unwrap();
    }
    out.retain(|_, c| *c != 0);
    out
}

struct Visit {
    label: String,
    positive: bool,
}

fn parse(code: &str) -> (Vec<Vec<Visit>>, usize) {
    let mut comps = Vec::new();
    let mut loops = 0;
    for line in code.split('\n') {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.is_empty() {
            loops += 1;
            continue;
        }
        comps.push(
            toks.iter()
                .map(|t| {
                    let (body, sign) = t.split_at(t.len() - 1);
                    let label = body[..body.len() - 1].to_string();
                    Visit {
                        label,
                        positive: sign == "+",
                    }
                })
                .collect(),
        );
    }
    (comps, loops)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Kauffman bracket with `δ = -A² - A⁻²`.
pub fn oracle_bracket(code: &str) -> Poly {
    let (comps, free) = parse(code);
    // segment k runs from visit k to the next visit of its component
    let mut prev_seg = Vec::new();
    let mut visits = Vec::new();
    for comp in &comps {
        let base = visits.len();
        for (j, v) in comp.iter().enumerate() {
            visits.push(v);
            prev_seg.push(base + (j + comp.len() - 1) % comp.len());
        }
    }
    let mut by_label: HashMap<&str, Vec<usize>> = HashMap::new();
    for (k, v) in visits.iter().enumerate() {
        by_label.entry(v.label.as_str()).or_default().push(k);
    }
    let mut crossings: Vec<(usize, usize, bool)> = by_label
        .values()
        .map(|ks| {
            assert_eq!(ks.len(), 2, "each label twice");
            (ks[0], ks[1], visits[ks[0]].positive)
        })
        .collect();
    crossings.sort();
    let n = crossings.len();
    let m = visits.len();
    // segment ends: 2k = start of segment k, 2k+1 = end of segment k
    let mut total = Poly::new();
    let delta = Poly::from([(2, -1), (-2, -1)]);
    for state in 0u64..(1 << n) {
        let mut parent: Vec<usize> = (0..2 * m).collect();
        let union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            p[ra] = rb;
        };
        for k in 0..m {
            union(&mut parent, 2 * k, 2 * k + 1);
        }
        let mut a_count = 0i32;
        for (c, &(p, q, positive)) in crossings.iter().enumerate() {
            let a_smoothing = state >> c & 1 == 0;
            if a_smoothing {
                a_count += 1;
            }
            let oriented = a_smoothing == positive;
            let (in_p, out_p) = (2 * prev_seg[p] + 1, 2 * p);
            let (in_q, out_q) = (2 * prev_seg[q] + 1, 2 * q);
            if oriented {
                union(&mut parent, in_p, out_q);
                union(&mut parent, in_q, out_p);
            } else {
                union(&mut parent, in_p, in_q);
                union(&mut parent, out_p, out_q);
            }
        }
        let roots = (0..2 * m).filter(|&x| find(&mut parent, x) == x).count();
        let loops = roots + free;
        let b_count = n as i32 - a_count;
        let term = poly_mul(&Poly::from([(a_count - b_count, 1)]), &poly_pow(&delta, loops as u32 - 1));
        poly_add(&mut total, &term);
    }
    total
}

pub fn oracle_writhe(code: &str) -> i64 {
    let (comps, _) = parse(code);
    let sum: i64 = comps.iter().flatten().map(|v| if v.positive { 1 } else { -1 }).sum();
    sum / 2
}

/// `(-A³)^(-w) · <code>`.
pub fn oracle_jones(code: &str) -> Poly {
    let w = oracle_writhe(code) as i32;
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    oracle_bracket(code)
        .into_iter()
        .map(|(e, c)| (e - 3 * w, sign * c))
        .collect()
}
