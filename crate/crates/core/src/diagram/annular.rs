//! Diagrams in a rectangle whose top and bottom edges are glued.
//!
//! The rectangle carries `b` marked points on each of its bottom and top
//! edges, numbered 1..=b from left to right; top point `i` is glued to
//! bottom point `i`. The gluing level is the cut. A knot is written as a
//! Gauss code in which the token `|i+` records an upward passage through
//! the cut at point `i` (leave through top `i`, come back through bottom
//! `i`) and `|i-` a downward one. The text format is a header line `b=<n>`
//! followed by the code:
//!
//! ```text
//! b=3
//! |1+ |2- |3+
//! ```

use std::collections::{HashMap, VecDeque};

use super::gauss::{build, head_token, tokenize};
use super::moves::{apply_reidemeister, Move};
use super::{ArcId, Crossing, HalfEdge, PlanarDiagram, UnionFind};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AnnularDiagram {
    b: usize,
    /// Ports ordered `B1..Bb, Tb..T1`.
    tangle: PlanarDiagram,
}

/// Where a tangle strand starts and ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum StrandKind {
    /// Bottom to top or top to bottom.
    Through,
    /// Both ends on the bottom edge.
    Cap,
    /// Both ends on the top edge.
    Cup,
}

impl AnnularDiagram {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim_start();
        let (header, rest) = match text.split_once('\n') {
            Some((h, r)) => (h, r),
            None => (text, ""),
        };
        let b: usize = header
            .trim()
            .strip_prefix("b=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::Malformed(format!("expected header b=<int>, got {header:?}")))?;
        Self::from_code(rest, b)
    }

    /// Builds from a cut-annotated Gauss code with `b` cut points.
    pub fn from_code(code: &str, b: usize) -> Result<Self> {
        let comps = tokenize(code)?;
        let tangle = build(&comps, b)?;
        Ok(Self { b, tangle })
    }

    /// Builds from a code, taking `b` to be the number of cut tokens.
    pub fn from_code_counting_cuts(code: &str) -> Result<Self> {
        let b = code.split_whitespace().filter(|t| t.starts_with('|')).count();
        Self::from_code(code, b)
    }

    pub(crate) fn from_tangle(b: usize, tangle: PlanarDiagram) -> Self {
        Self { b, tangle }
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn tangle(&self) -> &PlanarDiagram {
        &self.tangle
    }

    pub fn num_crossings(&self) -> usize {
        self.tangle.num_crossings()
    }

    pub fn bottom_port(&self, pos: usize) -> usize {
        pos - 1
    }

    pub fn top_port(&self, pos: usize) -> usize {
        2 * self.b - pos
    }

    /// 1-based position and edge (`true` for bottom) of a port index.
    pub fn port_position(&self, port: usize) -> (usize, bool) {
        if port < self.b {
            (port + 1, true)
        } else {
            (2 * self.b - port, false)
        }
    }

    /// Sign of the passage through each cut point, positions 1..=b.
    pub fn cut_signs(&self) -> Vec<i8> {
        (1..=self.b)
            .map(|pos| {
                if self.tangle.ports()[self.bottom_port(pos)].enters {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }

    pub fn index(&self) -> i64 {
        self.cut_signs().iter().map(|&s| s as i64).sum()
    }

    /// Open strands of the tangle, in the order of `PlanarDiagram::components`.
    pub fn strands(&self) -> Vec<(Vec<ArcId>, StrandKind)> {
        let inc = self.tangle.incidence();
        self.tangle
            .components()
            .into_iter()
            .filter(|s| !s.closed)
            .map(|s| {
                let first = s.arcs[0] as usize;
                let last = *s.arcs.last().unwrap() as usize;
                let bottom = |h: HalfEdge| match h {
                    HalfEdge::Port(p) => (p as usize) < self.b,
                    HalfEdge::Slot(..) => unreachable!("strands end at ports"),
                };
                let kind = match (bottom(inc.tail[first]), bottom(inc.head[last])) {
                    (true, true) => StrandKind::Cap,
                    (false, false) => StrandKind::Cup,
                    _ => StrandKind::Through,
                };
                (s.arcs, kind)
            })
            .collect()
    }

    /// Glues top point `i` to bottom point `i` by nested arcs around the
    /// rectangle, giving a closed planar diagram.
    pub fn closure(&self) -> PlanarDiagram {
        let t = &self.tangle;
        let m = t.num_arcs();
        let mut uf = UnionFind::new(m);
        for pos in 1..=self.b {
            let a = t.ports()[self.bottom_port(pos)].arc as usize;
            let c = t.ports()[self.top_port(pos)].arc as usize;
            uf.union(a, c);
        }
        let mut has_end = vec![false; m];
        let crossings: Vec<Crossing> = t
            .crossings()
            .iter()
            .map(|x| {
                let arcs = x.arcs.map(|a| {
                    let r = uf.find(a as usize);
                    has_end[r] = true;
                    r as ArcId
                });
                Crossing::new(arcs, x.positive)
            })
            .collect();
        let loops = (0..m).filter(|&a| uf.find(a) == a && !has_end[a]).count() as u32;
        PlanarDiagram::from_parts(crossings, Vec::new(), t.free_loops() + loops)
    }

    pub fn num_knot_components(&self) -> usize {
        self.closure().num_link_components()
    }

    pub fn apply_move(&self, mv: &Move) -> Result<Self> {
        Ok(Self {
            b: self.b,
            tangle: apply_reidemeister(&self.tangle, mv)?,
        })
    }

    /// Fewest knot points met by a level running from the left edge of the
    /// rectangle to the right edge, i.e. the least number of arcs a path
    /// between the two side faces must cross. Zero when `b = 0`.
    pub fn level_distance(&self) -> usize {
        let t = &self.tangle;
        if self.b == 0 {
            return 0;
        }
        let inc = t.incidence();
        let orbits = t.face_orbits(&inc);
        let fidx = t.face_index(&orbits);
        let left = fidx[t.he_index(HalfEdge::Port(self.top_port(1) as u32))];
        let right = fidx[t.he_index(HalfEdge::Port(self.bottom_port(self.b) as u32))];
        let mut adj = vec![Vec::new(); orbits.len()];
        for a in 0..t.num_arcs() {
            let f = fidx[t.he_index(inc.tail[a])];
            let g = fidx[t.he_index(inc.head[a])];
            adj[f].push(g);
            adj[g].push(f);
        }
        let mut dist = vec![usize::MAX; orbits.len()];
        dist[left] = 0;
        let mut queue = VecDeque::from([left]);
        while let Some(f) = queue.pop_front() {
            for &g in &adj[f] {
                if dist[g] == usize::MAX {
                    dist[g] = dist[f] + 1;
                    queue.push_back(g);
                }
            }
        }
        dist[right]
    }

    /// Writes the `b=<n>` header and the code. Components are ordered by
    /// smallest arc id and start at the head of that arc.
    pub fn serialize(&self) -> String {
        format!("b={}\n{}", self.b, self.code())
    }

    /// The cut-annotated Gauss code without header.
    pub fn code(&self) -> String {
        let t = &self.tangle;
        let inc = t.incidence();
        let m = t.num_arcs();
        let mut names = HashMap::new();
        let mut seen = vec![false; m];
        let mut lines = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut tokens = Vec::new();
            let mut a = start;
            while !seen[a] {
                seen[a] = true;
                let head = inc.head[a];
                tokens.push(head_token(t, head, &mut names, self.b));
                a = match head {
                    HalfEdge::Slot(c, s) => t.crossings()[c as usize].arcs[(s as usize + 2) % 4] as usize,
                    HalfEdge::Port(p) => {
                        let (pos, bottom) = self.port_position(p as usize);
                        let partner = if bottom { self.top_port(pos) } else { self.bottom_port(pos) };
                        t.ports()[partner].arc as usize
                    }
                };
            }
            lines.push(tokens.join(" "));
        }
        lines.extend((0..t.free_loops()).map(|_| String::new()));
        lines.join("\n")
    }
}
