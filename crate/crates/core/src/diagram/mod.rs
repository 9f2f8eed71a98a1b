//! Oriented link and tangle diagrams stored as crossing records.
//!
//! A diagram is a 4-valent planar graph: every crossing lists its four
//! incident arcs counterclockwise. Tangles additionally carry boundary
//! ports, listed counterclockwise around the boundary circle; the outside
//! of that circle is treated as one extra vertex for face and planarity
//! computations.

pub mod annular;
pub mod gauss;
pub mod moves;
pub mod simplify;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ArcId = u32;

/// Arcs are listed counterclockwise. Slot 0 is the incoming under-arc and
/// slot 2 the outgoing under-arc. The over strand enters at slot 3 on a
/// positive crossing and at slot 1 on a negative one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Crossing {
    pub arcs: [ArcId; 4],
    pub positive: bool,
}

impl Crossing {
    pub fn new(arcs: [ArcId; 4], positive: bool) -> Self {
        Self { arcs, positive }
    }

    pub fn sign(&self) -> i32 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    pub fn over_in(&self) -> usize {
        if self.positive {
            3
        } else {
            1
        }
    }

    pub fn over_out(&self) -> usize {
        if self.positive {
            1
        } else {
            3
        }
    }

    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in()
    }

    pub fn is_over(slot: usize) -> bool {
        slot % 2 == 1
    }

    /// Same crossing with the strands' heights exchanged.
    pub fn mirrored(&self) -> Self {
        let [a, b, c, d] = self.arcs;
        if self.positive {
            Self::new([d, a, b, c], false)
        } else {
            Self::new([b, c, d, a], true)
        }
    }

    /// Builds a crossing from four `(arc, incoming)` entries in
    /// counterclockwise order, with `over` marking the two over entries.
    pub(crate) fn from_ccw(entries: [(ArcId, bool); 4], over: [bool; 4]) -> Self {
        let start = (0..4)
            .find(|&k| !over[k] && entries[k].1)
            .expect("under strand must enter");
        let mut arcs = [0; 4];
        let mut over_in_slot = 0;
        for k in 0..4 {
            let src = (start + k) % 4;
            arcs[k] = entries[src].0;
            if over[src] && entries[src].1 {
                over_in_slot = k;
            }
        }
        Self::new(arcs, over_in_slot == 3)
    }
}

/// A boundary point of a tangle. `enters` is true when the strand runs
/// from the boundary into the interior.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Port {
    pub arc: ArcId,
    pub enters: bool,
}

/// One end of an arc: a crossing slot or a boundary port.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HalfEdge {
    Slot(u32, u8),
    Port(u32),
}

/// An arc traversed along (`forward`) or against its orientation. The
/// face of a dart is the face on its right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart {
    pub arc: ArcId,
    pub forward: bool,
}

/// A link component (`closed`) or a tangle strand running port to port.
/// Crossingless closed components are not listed; see `free_loops`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strand {
    pub arcs: Vec<ArcId>,
    pub closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    ports: Vec<Port>,
    free_loops: u32,
}

#[derive(Clone, Debug)]
pub(crate) struct Incidence {
    pub tail: Vec<HalfEdge>,
    pub head: Vec<HalfEdge>,
}

impl PlanarDiagram {
    /// Validated constructor. Arc ids may be arbitrary; they are renumbered
    /// by first appearance.
    pub fn new(crossings: Vec<Crossing>, ports: Vec<Port>, free_loops: u32) -> Result<Self> {
        let d = Self::from_parts(crossings, ports, free_loops);
        d.validate()?;
        Ok(d)
    }

    /// Renumbers arcs without validating.
    pub(crate) fn from_parts(crossings: Vec<Crossing>, ports: Vec<Port>, free_loops: u32) -> Self {
        let mut d = Self {
            crossings,
            ports,
            free_loops,
        };
        d.compact();
        d
    }

    pub fn unknot() -> Self {
        Self::with_free_loops(1)
    }

    pub fn with_free_loops(n: u32) -> Self {
        Self {
            crossings: Vec::new(),
            ports: Vec::new(),
            free_loops: n,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn ports(&self) -> &[Port] {
        &self.ports
    }

    pub fn free_loops(&self) -> u32 {
        self.free_loops
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn num_arcs(&self) -> usize {
        // every arc has exactly two ends
        (4 * self.crossings.len() + self.ports.len()) / 2
    }

    pub fn is_closed(&self) -> bool {
        self.ports.is_empty()
    }

    /// Renumbers arcs by first appearance unless ids already form
    /// `0..num_arcs` with two ends each.
    fn compact(&mut self) {
        let m = self.num_arcs();
        let mut uses = vec![0u32; m];
        let mut ok = true;
        let ids = self
            .crossings
            .iter()
            .flat_map(|c| c.arcs)
            .chain(self.ports.iter().map(|p| p.arc));
        for a in ids {
            match uses.get_mut(a as usize) {
                Some(u) => *u += 1,
                None => ok = false,
            }
        }
        if ok && uses.iter().all(|&u| u == 2) {
            return;
        }
        let mut map = std::collections::HashMap::new();
        let fresh = |a: ArcId, map: &mut std::collections::HashMap<ArcId, ArcId>| {
            let n = map.len() as ArcId;
            *map.entry(a).or_insert(n)
        };
        for c in &mut self.crossings {
            for a in &mut c.arcs {
                *a = fresh(*a, &mut map);
            }
        }
        for p in &mut self.ports {
            p.arc = fresh(p.arc, &mut map);
        }
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.num_arcs();
        if !(4 * self.crossings.len() + self.ports.len()).is_multiple_of(2) {
            return Err(Error::InvalidDiagram("odd number of arc ends".into()));
        }
        let mut tails = vec![0u32; m];
        let mut heads = vec![0u32; m];
        let mut bump = |a: ArcId, incoming: bool| -> Result<()> {
            let slot = tails
                .get_mut(a as usize)
                .ok_or_else(|| Error::InvalidDiagram(format!("arc id {a} out of range")))?;
            if incoming {
                heads[a as usize] += 1;
            } else {
                *slot += 1;
            }
            Ok(())
        };
        for c in &self.crossings {
            for s in 0..4 {
                bump(c.arcs[s], c.is_incoming(s))?;
            }
        }
        for p in &self.ports {
            bump(p.arc, !p.enters)?;
        }
        for a in 0..m {
            if tails[a] != 1 || heads[a] != 1 {
                return Err(Error::InvalidDiagram(format!(
                    "arc {a} has {} tails and {} heads",
                    tails[a], heads[a]
                )));
            }
        }
        if !self.is_planar() {
            return Err(Error::NonPlanar);
        }
        Ok(())
    }

    pub(crate) fn incidence(&self) -> Incidence {
        let m = self.num_arcs();
        let mut tail = vec![HalfEdge::Port(u32::MAX); m];
        let mut head = vec![HalfEdge::Port(u32::MAX); m];
        for (ci, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                let h = HalfEdge::Slot(ci as u32, s as u8);
                if c.is_incoming(s) {
                    head[c.arcs[s] as usize] = h;
                } else {
                    tail[c.arcs[s] as usize] = h;
                }
            }
        }
        for (pi, p) in self.ports.iter().enumerate() {
            let h = HalfEdge::Port(pi as u32);
            if p.enters {
                tail[p.arc as usize] = h;
            } else {
                head[p.arc as usize] = h;
            }
        }
        Incidence { tail, head }
    }

    pub fn arc_at(&self, h: HalfEdge) -> ArcId {
        match h {
            HalfEdge::Slot(c, s) => self.crossings[c as usize].arcs[s as usize],
            HalfEdge::Port(p) => self.ports[p as usize].arc,
        }
    }

    pub(crate) fn set_arc(&mut self, h: HalfEdge, a: ArcId) {
        match h {
            HalfEdge::Slot(c, s) => self.crossings[c as usize].arcs[s as usize] = a,
            HalfEdge::Port(p) => self.ports[p as usize].arc = a,
        }
    }

    pub(crate) fn he_index(&self, h: HalfEdge) -> usize {
        match h {
            HalfEdge::Slot(c, s) => 4 * c as usize + s as usize,
            HalfEdge::Port(p) => 4 * self.crossings.len() + p as usize,
        }
    }

    pub(crate) fn he_from_index(&self, i: usize) -> HalfEdge {
        let n4 = 4 * self.crossings.len();
        if i < n4 {
            HalfEdge::Slot((i / 4) as u32, (i % 4) as u8)
        } else {
            HalfEdge::Port((i - n4) as u32)
        }
    }

    /// Next half-edge counterclockwise around the same vertex. Ports are
    /// listed counterclockwise around the boundary, which is clockwise as
    /// seen from the outer vertex.
    pub(crate) fn next_ccw(&self, h: HalfEdge) -> HalfEdge {
        match h {
            HalfEdge::Slot(c, s) => HalfEdge::Slot(c, (s + 1) % 4),
            HalfEdge::Port(p) => {
                let n = self.ports.len() as u32;
                HalfEdge::Port((p + n - 1) % n)
            }
        }
    }

    pub(crate) fn twin(&self, inc: &Incidence, h: HalfEdge) -> HalfEdge {
        let a = self.arc_at(h) as usize;
        if inc.tail[a] == h {
            inc.head[a]
        } else {
            inc.tail[a]
        }
    }

    pub(crate) fn dart_start(&self, inc: &Incidence, d: Dart) -> HalfEdge {
        if d.forward {
            inc.tail[d.arc as usize]
        } else {
            inc.head[d.arc as usize]
        }
    }

    pub(crate) fn dart_from(&self, inc: &Incidence, h: HalfEdge) -> Dart {
        let arc = self.arc_at(h);
        Dart {
            arc,
            forward: inc.tail[arc as usize] == h,
        }
    }

    /// Faces as cyclic lists of darts, each face lying to the right of its
    /// darts. Free loops contribute no faces.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let inc = self.incidence();
        self.face_orbits(&inc)
            .into_iter()
            .map(|orbit| orbit.into_iter().map(|h| self.dart_from(&inc, h)).collect())
            .collect()
    }

    pub(crate) fn face_orbits(&self, inc: &Incidence) -> Vec<Vec<HalfEdge>> {
        let total = 4 * self.crossings.len() + self.ports.len();
        let mut seen = vec![false; total];
        let mut faces = Vec::new();
        for start in 0..total {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut h = self.he_from_index(start);
            loop {
                let i = self.he_index(h);
                if seen[i] {
                    break;
                }
                seen[i] = true;
                orbit.push(h);
                h = self.next_ccw(self.twin(inc, h));
            }
            faces.push(orbit);
        }
        faces
    }

    /// Index of the face containing each half-edge's dart.
    pub(crate) fn face_index(&self, orbits: &[Vec<HalfEdge>]) -> Vec<usize> {
        let total = 4 * self.crossings.len() + self.ports.len();
        let mut idx = vec![0; total];
        for (f, orbit) in orbits.iter().enumerate() {
            for &h in orbit {
                idx[self.he_index(h)] = f;
            }
        }
        idx
    }

    /// Euler characteristic check of the rotation system, per connected
    /// component of the underlying graph.
    pub fn is_planar(&self) -> bool {
        let n = self.crossings.len();
        let has_outer = !self.ports.is_empty();
        let v = n + usize::from(has_outer);
        if v == 0 {
            return true;
        }
        let inc = self.incidence();
        let vertex = |h: HalfEdge| match h {
            HalfEdge::Slot(c, _) => c as usize,
            HalfEdge::Port(_) => n,
        };
        let mut uf = UnionFind::new(v);
        for a in 0..self.num_arcs() {
            uf.union(vertex(inc.tail[a]), vertex(inc.head[a]));
        }
        let comps = (0..v).filter(|&x| uf.find(x) == x).count();
        let f = self.face_orbits(&inc).len();
        v as i64 - self.num_arcs() as i64 + f as i64 == 2 * comps as i64
    }

    /// Components in a deterministic order: strands by entry port, then
    /// closed components by smallest arc id. Each closed component starts
    /// at its smallest arc.
    pub fn components(&self) -> Vec<Strand> {
        let inc = self.incidence();
        let m = self.num_arcs();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        let walk = |start: ArcId, seen: &mut Vec<bool>| {
            let mut arcs = Vec::new();
            let mut a = start;
            loop {
                if seen[a as usize] {
                    return Strand { arcs, closed: true };
                }
                seen[a as usize] = true;
                arcs.push(a);
                match inc.head[a as usize] {
                    HalfEdge::Slot(c, s) => {
                        a = self.crossings[c as usize].arcs[(s as usize + 2) % 4];
                    }
                    HalfEdge::Port(_) => return Strand { arcs, closed: false },
                }
            }
        };
        for p in &self.ports {
            if p.enters && !seen[p.arc as usize] {
                out.push(walk(p.arc, &mut seen));
            }
        }
        for a in 0..m as ArcId {
            if !seen[a as usize] {
                out.push(walk(a, &mut seen));
            }
        }
        out
    }

    /// Closed components including crossingless ones.
    pub fn num_link_components(&self) -> usize {
        self.components().iter().filter(|s| s.closed).count() + self.free_loops as usize
    }

    /// Component index (into `components()`) of every arc.
    pub fn arc_components(&self) -> Vec<usize> {
        let mut comp = vec![0; self.num_arcs()];
        for (k, s) in self.components().iter().enumerate() {
            for &a in &s.arcs {
                comp[a as usize] = k;
            }
        }
        comp
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign() as i64).sum()
    }

    pub fn mirror(&self) -> Self {
        Self {
            crossings: self.crossings.iter().map(Crossing::mirrored).collect(),
            ports: self.ports.clone(),
            free_loops: self.free_loops,
        }
    }

    /// Reverses the orientation of every component.
    pub fn reverse(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.arcs;
                Crossing::new([cc, d, a, b], c.positive)
            })
            .collect();
        let ports = self
            .ports
            .iter()
            .map(|p| Port {
                arc: p.arc,
                enters: !p.enters,
            })
            .collect();
        Self::from_parts(crossings, ports, self.free_loops)
    }

    /// Deletes the marked crossings, letting both strands pass straight
    /// through, then drops every arc whose component is not kept. Arcs of
    /// kept components that lose all their ends become free loops.
    pub(crate) fn splice(&self, remove: &[bool], keep_arc: impl Fn(ArcId) -> bool) -> Self {
        let m = self.num_arcs();
        let mut uf = UnionFind::new(m);
        for (ci, c) in self.crossings.iter().enumerate() {
            if remove[ci] {
                uf.union(c.arcs[0] as usize, c.arcs[2] as usize);
                uf.union(c.arcs[1] as usize, c.arcs[3] as usize);
            }
        }
        let root = |uf: &mut UnionFind, a: ArcId| uf.find(a as usize) as ArcId;
        let mut crossings = Vec::new();
        let mut has_end = vec![false; m];
        for (ci, c) in self.crossings.iter().enumerate() {
            if remove[ci] {
                continue;
            }
            let mut arcs = c.arcs;
            for a in &mut arcs {
                *a = root(&mut uf, *a);
                has_end[*a as usize] = true;
            }
            crossings.push(Crossing::new(arcs, c.positive));
        }
        let mut ports = Vec::new();
        for p in &self.ports {
            let r = root(&mut uf, p.arc);
            has_end[r as usize] = true;
            if !keep_arc(r) {
                continue;
            }
            ports.push(Port {
                arc: r,
                enters: p.enters,
            });
        }
        let mut free_loops = self.free_loops;
        for a in 0..m {
            if uf.find(a) == a && !has_end[a] && keep_arc(a as ArcId) {
                free_loops += 1;
            }
        }
        Self::from_parts(crossings, ports, free_loops)
    }

    /// The diagram of a single closed component, crossings with other
    /// components removed.
    pub fn sub_diagram(&self, component: usize) -> Self {
        let comp = self.arc_components();
        let remove: Vec<bool> = self
            .crossings
            .iter()
            .map(|c| comp[c.arcs[0] as usize] != component || comp[c.arcs[1] as usize] != component)
            .collect();
        let mut d = self.splice(&remove, |a| comp[a as usize] == component);
        d.free_loops -= self.free_loops;
        d
    }

    /// Relabels arcs by a traversal starting at `start` and sorts the
    /// crossings. Returns the relabeled diagram's key.
    fn key_from(&self, inc: &Incidence, start: ArcId) -> Vec<u32> {
        let m = self.num_arcs();
        let mut label = vec![u32::MAX; m];
        let mut next = 0u32;
        let mut order: Vec<u32> = Vec::new();
        let mut seen_crossing = vec![false; self.crossings.len()];
        let walk = |a0: ArcId,
                    label: &mut Vec<u32>,
                    next: &mut u32,
                    order: &mut Vec<u32>,
                    seen_crossing: &mut Vec<bool>| {
            let mut a = a0;
            while label[a as usize] == u32::MAX {
                label[a as usize] = *next;
                *next += 1;
                match inc.head[a as usize] {
                    HalfEdge::Slot(c, s) => {
                        if !seen_crossing[c as usize] {
                            seen_crossing[c as usize] = true;
                            order.push(c);
                        }
                        a = self.crossings[c as usize].arcs[(s as usize + 2) % 4];
                    }
                    HalfEdge::Port(_) => break,
                }
            }
        };
        walk(start, &mut label, &mut next, &mut order, &mut seen_crossing);
        loop {
            let mut progressed = false;
            let mut k = 0;
            while k < order.len() {
                let c = order[k] as usize;
                for s in 0..4 {
                    let a = self.crossings[c].arcs[s];
                    if label[a as usize] == u32::MAX {
                        walk(a, &mut label, &mut next, &mut order, &mut seen_crossing);
                        progressed = true;
                    }
                }
                k += 1;
            }
            for p in &self.ports {
                if label[p.arc as usize] == u32::MAX {
                    walk(p.arc, &mut label, &mut next, &mut order, &mut seen_crossing);
                    progressed = true;
                }
            }
            if !progressed {
                match (0..m).find(|&a| label[a] == u32::MAX) {
                    Some(a) => walk(a as ArcId, &mut label, &mut next, &mut order, &mut seen_crossing),
                    None => break,
                }
            }
        }
        let mut xs: Vec<[u32; 5]> = self
            .crossings
            .iter()
            .map(|c| {
                let l = |s: usize| label[c.arcs[s] as usize];
                [l(0), l(1), l(2), l(3), u32::from(c.positive)]
            })
            .collect();
        xs.sort_unstable();
        let mut key = Vec::with_capacity(3 + 5 * xs.len() + 2 * self.ports.len());
        key.extend([self.crossings.len() as u32, self.ports.len() as u32, self.free_loops]);
        for x in xs {
            key.extend(x);
        }
        for p in &self.ports {
            key.extend([label[p.arc as usize], u32::from(p.enters)]);
        }
        key
    }

    /// Isomorphism key: equal keys imply the diagrams agree up to arc
    /// renaming and crossing order.
    pub fn canonical_key(&self) -> Vec<u32> {
        let inc = self.incidence();
        let m = self.num_arcs() as ArcId;
        if m == 0 {
            return vec![0, 0, self.free_loops];
        }
        (0..m).map(|a| self.key_from(&inc, a)).min().unwrap()
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.num_crossings() == other.num_crossings()
            && self.ports.len() == other.ports.len()
            && self.canonical_key() == other.canonical_key()
    }
}

/// Plain union-find with path halving.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }

    pub fn classes(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}
