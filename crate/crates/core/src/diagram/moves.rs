//! Reidemeister moves on crossing-record diagrams.
//!
//! Every move is local: it touches the crossings around one arc, one face
//! or one crossing, and returns a new diagram.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{ArcId, Crossing, Dart, HalfEdge, Incidence, PlanarDiagram};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KinkSite {
    Arc(ArcId),
    FreeLoop,
}

/// Listed in exploration order: removals first, then the third move, then
/// insertions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Move {
    /// Removes a crossing with a monogon loop.
    R1Remove { crossing: u32 },
    /// Removes the two crossings of the bigon to the right of `dart`.
    R2Remove { dart: Dart },
    /// Slides a strand across the crossing opposite the triangle to the
    /// right of `dart`.
    R3 { dart: Dart },
    /// Pushes a finger of `over` across `under`; both darts must border
    /// the same face.
    R2Insert { over: Dart, under: Dart },
    /// Adds a kink. `over_first` tells whether the strand passes the new
    /// crossing over before it passes under.
    R1Insert {
        site: KinkSite,
        positive: bool,
        over_first: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    I,
    II,
    III,
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::R1Remove { .. } | Move::R1Insert { .. } => MoveKind::I,
            Move::R2Remove { .. } | Move::R2Insert { .. } => MoveKind::II,
            Move::R3 { .. } => MoveKind::III,
        }
    }

    pub fn crossing_delta(&self) -> i32 {
        match self {
            Move::R1Remove { .. } => -1,
            Move::R2Remove { .. } => -2,
            Move::R3 { .. } => 0,
            Move::R2Insert { .. } => 2,
            Move::R1Insert { .. } => 1,
        }
    }
}

fn inapplicable(mv: &Move, why: &str) -> Error {
    Error::Inapplicable(format!("{mv:?}: {why}"))
}

fn face_walk(d: &PlanarDiagram, inc: &Incidence, start: HalfEdge, max_len: usize) -> Vec<HalfEdge> {
    let mut orbit = vec![start];
    let mut h = d.next_ccw(d.twin(inc, start));
    while h != start && orbit.len() <= max_len {
        orbit.push(h);
        h = d.next_ccw(d.twin(inc, h));
    }
    orbit
}

fn slot_of(h: HalfEdge) -> Option<(usize, usize)> {
    match h {
        HalfEdge::Slot(c, s) => Some((c as usize, s as usize)),
        HalfEdge::Port(_) => None,
    }
}

fn check_dart(d: &PlanarDiagram, dart: Dart) -> bool {
    (dart.arc as usize) < d.num_arcs()
}

/// Crossings `(c, slot)` around a small face, or `None` if the face has a
/// port, repeats a crossing, or has the wrong length.
fn small_face(d: &PlanarDiagram, inc: &Incidence, dart: Dart, len: usize) -> Option<Vec<(usize, usize)>> {
    if !check_dart(d, dart) {
        return None;
    }
    let orbit = face_walk(d, inc, d.dart_start(inc, dart), len);
    if orbit.len() != len {
        return None;
    }
    let corners: Option<Vec<_>> = orbit.iter().map(|&h| slot_of(h)).collect();
    let corners = corners?;
    for i in 0..len {
        for j in 0..i {
            if corners[i].0 == corners[j].0 {
                return None;
            }
        }
    }
    Some(corners)
}

fn r2_removable(d: &PlanarDiagram, inc: &Incidence, dart: Dart) -> Option<[usize; 2]> {
    let corners = small_face(d, inc, dart, 2)?;
    let (p, sp) = corners[0];
    let (q, _) = corners[1];
    // arc leaving p at slot sp ends at q
    let end = d.twin(inc, HalfEdge::Slot(p as u32, sp as u8));
    let (_, sq) = slot_of(end)?;
    (Crossing::is_over(sp) == Crossing::is_over(sq)).then_some([p, q])
}

/// For each triangle side: (start crossing, slot, end crossing, slot).
fn r3_triangle(d: &PlanarDiagram, inc: &Incidence, dart: Dart) -> Option<Vec<(usize, usize, usize, usize)>> {
    let corners = small_face(d, inc, dart, 3)?;
    let mut sides = Vec::with_capacity(3);
    for &(c, s) in &corners {
        let (c2, s2) = slot_of(d.twin(inc, HalfEdge::Slot(c as u32, s as u8)))?;
        sides.push((c, s, c2, s2));
    }
    let arcs: Vec<ArcId> = corners.iter().map(|&(c, s)| d.crossings[c].arcs[s]).collect();
    if arcs[0] == arcs[1] || arcs[1] == arcs[2] || arcs[0] == arcs[2] {
        return None;
    }
    let top = sides
        .iter()
        .any(|&(_, s, _, s2)| Crossing::is_over(s) && Crossing::is_over(s2));
    top.then_some(sides)
}

fn kink(e1: ArcId, e2: ArcId, l: ArcId, positive: bool, over_first: bool) -> Crossing {
    let arcs = match (over_first, positive) {
        (false, true) => [e1, e2, l, l],
        (false, false) => [e1, l, l, e2],
        (true, true) => [l, l, e2, e1],
        (true, false) => [l, e1, e2, l],
    };
    Crossing::new(arcs, positive)
}

pub fn apply_reidemeister(d: &PlanarDiagram, mv: &Move) -> Result<PlanarDiagram> {
    let inc = d.incidence();
    let m = d.num_arcs() as ArcId;
    match *mv {
        Move::R1Remove { crossing } => {
            let c = d
                .crossings
                .get(crossing as usize)
                .ok_or_else(|| inapplicable(mv, "no such crossing"))?;
            if !(0..4).any(|s| c.arcs[s] == c.arcs[(s + 1) % 4]) {
                return Err(inapplicable(mv, "crossing has no monogon"));
            }
            let mut remove = vec![false; d.num_crossings()];
            remove[crossing as usize] = true;
            Ok(d.splice(&remove, |_| true))
        }
        Move::R2Remove { dart } => {
            let [p, q] = r2_removable(d, &inc, dart).ok_or_else(|| inapplicable(mv, "not a removable bigon"))?;
            let mut remove = vec![false; d.num_crossings()];
            remove[p] = true;
            remove[q] = true;
            Ok(d.splice(&remove, |_| true))
        }
        Move::R3 { dart } => {
            let sides = r3_triangle(d, &inc, dart).ok_or_else(|| inapplicable(mv, "not a movable triangle"))?;
            let mut out = d.clone();
            for &(x, s, z, t) in &sides {
                let c = d.crossings[x].arcs[s];
                let x1 = d.crossings[x].arcs[(s + 2) % 4];
                let z1 = d.crossings[z].arcs[(t + 2) % 4];
                out.crossings[x].arcs[(s + 2) % 4] = c;
                out.crossings[x].arcs[s] = z1;
                out.crossings[z].arcs[(t + 2) % 4] = c;
                out.crossings[z].arcs[t] = x1;
            }
            Ok(PlanarDiagram::from_parts(out.crossings, out.ports, out.free_loops))
        }
        Move::R2Insert { over, under } => {
            if !check_dart(d, over) || !check_dart(d, under) || over.arc == under.arc {
                return Err(inapplicable(mv, "needs two distinct arcs"));
            }
            let hu = d.dart_start(&inc, over);
            let hv = d.dart_start(&inc, under);
            let orbits = d.face_orbits(&inc);
            let fidx = d.face_index(&orbits);
            if fidx[d.he_index(hu)] != fidx[d.he_index(hv)] {
                return Err(inapplicable(mv, "darts border different faces"));
            }
            let hu2 = d.twin(&inc, hu);
            let hv2 = d.twin(&inc, hv);
            let (u1, v1) = (over.arc, under.arc);
            let (u_mid, u2, v_mid, v2) = (m, m + 1, m + 2, m + 3);
            let mut out = d.clone();
            out.set_arc(hu2, u2);
            out.set_arc(hv2, v2);
            let (fu, fv) = (over.forward, under.forward);
            let ov = [false, true, false, true];
            let p = Crossing::from_ccw([(v_mid, fv), (u1, fu), (v2, !fv), (u_mid, !fu)], ov);
            let q = Crossing::from_ccw([(v1, fv), (u2, !fu), (v_mid, !fv), (u_mid, fu)], ov);
            out.crossings.push(p);
            out.crossings.push(q);
            Ok(PlanarDiagram::from_parts(out.crossings, out.ports, out.free_loops))
        }
        Move::R1Insert {
            site,
            positive,
            over_first,
        } => {
            let mut out = d.clone();
            match site {
                KinkSite::Arc(e) => {
                    if e >= m {
                        return Err(inapplicable(mv, "no such arc"));
                    }
                    let (l, e2) = (m, m + 1);
                    out.set_arc(inc.head[e as usize], e2);
                    out.crossings.push(kink(e, e2, l, positive, over_first));
                }
                KinkSite::FreeLoop => {
                    if d.free_loops == 0 {
                        return Err(inapplicable(mv, "no free loop"));
                    }
                    out.free_loops -= 1;
                    out.crossings.push(kink(m, m, m + 1, positive, over_first));
                }
            }
            Ok(PlanarDiagram::from_parts(out.crossings, out.ports, out.free_loops))
        }
    }
}

/// All applicable moves in exploration order: remove-I, remove-II, III,
/// insert-II, insert-I. Insertions are skipped when they would exceed
/// `max_crossings`.
pub fn applicable_moves(d: &PlanarDiagram, max_crossings: Option<usize>) -> Vec<Move> {
    let inc = d.incidence();
    let n = d.num_crossings();
    let mut out = Vec::new();
    for (ci, c) in d.crossings.iter().enumerate() {
        if (0..4).any(|s| c.arcs[s] == c.arcs[(s + 1) % 4]) {
            out.push(Move::R1Remove { crossing: ci as u32 });
        }
    }
    let faces: Vec<Vec<Dart>> = d
        .face_orbits(&inc)
        .into_iter()
        .map(|orbit| orbit.into_iter().map(|h| d.dart_from(&inc, h)).collect())
        .collect();
    let mut r2: Vec<Dart> = Vec::new();
    let mut r3: Vec<Dart> = Vec::new();
    for face in &faces {
        let first = *face.iter().min().unwrap();
        if face.len() == 2 && r2_removable(d, &inc, first).is_some() {
            r2.push(first);
        }
        if face.len() == 3 && r3_triangle(d, &inc, first).is_some() {
            r3.push(first);
        }
    }
    r2.sort();
    r3.sort();
    out.extend(r2.into_iter().map(|dart| Move::R2Remove { dart }));
    out.extend(r3.into_iter().map(|dart| Move::R3 { dart }));
    let room = |k: usize| max_crossings.is_none_or(|mx| n + k <= mx);
    if room(2) {
        let mut ins = Vec::new();
        for face in &faces {
            for &u in face {
                for &v in face {
                    if u.arc != v.arc {
                        ins.push(Move::R2Insert { over: u, under: v });
                    }
                }
            }
        }
        ins.sort();
        ins.dedup();
        out.extend(ins);
    }
    if room(1) {
        let sites = (0..d.num_arcs() as ArcId)
            .map(KinkSite::Arc)
            .chain((d.free_loops > 0).then_some(KinkSite::FreeLoop));
        for site in sites {
            for (positive, over_first) in [(true, false), (true, true), (false, false), (false, true)] {
                out.push(Move::R1Insert {
                    site,
                    positive,
                    over_first,
                });
            }
        }
    }
    out
}

/// Applies `steps` random moves, each drawn by picking a move type among
/// those applicable and then a move of that type. Insertions stay within
/// `max_crossings`.
pub fn random_moves<R: Rng>(
    d: &PlanarDiagram,
    steps: usize,
    max_crossings: usize,
    rng: &mut R,
) -> Result<(PlanarDiagram, Vec<Move>)> {
    let mut cur = d.clone();
    let mut applied = Vec::with_capacity(steps);
    for _ in 0..steps {
        let moves = applicable_moves(&cur, Some(max_crossings));
        let mut kinds: Vec<std::mem::Discriminant<Move>> = moves.iter().map(std::mem::discriminant).collect();
        kinds.dedup();
        let Some(kind) = kinds.choose(rng) else {
            break;
        };
        let of_kind: Vec<&Move> = moves.iter().filter(|m| std::mem::discriminant(*m) == *kind).collect();
        let mv = **of_kind.choose(rng).expect("kind has a move");
        cur = apply_reidemeister(&cur, &mv)?;
        applied.push(mv);
    }
    Ok((cur, applied))
}
