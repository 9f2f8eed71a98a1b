//! Schemes: a knot in the cross-section together with the cut sphere, plus
//! their intersection invariants, validity rules and the cut-and-close
//! link invariant. Also the admissibility table of flow classes.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bracket::{jones_with_limit, DEFAULT_CROSSING_LIMIT};
use crate::diagram::annular::{AnnularDiagram, StrandKind};
use crate::diagram::moves::Move;
use crate::diagram::simplify::{search, simplify_bfs};
use crate::diagram::{ArcId, Crossing, PlanarDiagram, UnionFind};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// The cross-section containing the knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ambient {
    /// Three-sphere, flows with five equilibria.
    #[serde(rename = "SPHERE_S3", alias = "S3")]
    S3,
    /// `S² × S¹`, flows with four equilibria.
    S2xS1,
}

impl Ambient {
    pub fn equilibria(&self) -> u32 {
        match self {
            Ambient::S3 => 5,
            Ambient::S2xS1 => 4,
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ambient::S3 => "SPHERE_S3",
            Ambient::S2xS1 => "S2xS1",
        })
    }
}

/// A knot diagram in the cut rectangle, with the cut level standing for
/// the sphere. For `S3` the two sides of the cut are stacked: the part
/// above the sphere sits at the bottom of the rectangle and the part
/// below it at the top, so some level between them misses the knot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scheme {
    ambient: Ambient,
    diagram: AnnularDiagram,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SchemeFile {
    ambient: Ambient,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gauss_code: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    annular_code: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cut_signs: Option<Vec<i8>>,
}

impl Scheme {
    pub fn new(ambient: Ambient, diagram: AnnularDiagram) -> Result<Self> {
        if ambient == Ambient::S3 && diagram.level_distance() != 0 {
            return Err(Error::InvalidScheme(
                "the two sides of the sphere overlap: no level misses the knot".into(),
            ));
        }
        Ok(Self { ambient, diagram })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn diagram(&self) -> &AnnularDiagram {
        &self.diagram
    }

    pub fn b(&self) -> usize {
        self.diagram.b()
    }

    pub fn index(&self) -> i64 {
        self.diagram.index()
    }

    pub fn cut_signs(&self) -> Vec<i8> {
        self.diagram.cut_signs()
    }

    pub fn apply_move(&self, mv: &Move) -> Result<Self> {
        Ok(Self {
            ambient: self.ambient,
            diagram: self.diagram.apply_move(mv)?,
        })
    }

    /// JSON with fields `ambient`, `gauss_code` (S3, `b` counted from cut
    /// tokens) or `annular_code` (with `b=` header), and optional
    /// `cut_signs`, which must agree with the code.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: SchemeFile =
            serde_json::from_str(text).map_err(|e| Error::Malformed(format!("scheme JSON: {e}")))?;
        let diagram = match (&file.gauss_code, &file.annular_code) {
            (Some(code), None) => AnnularDiagram::from_code_counting_cuts(code)?,
            (None, Some(code)) => AnnularDiagram::parse(code)?,
            _ => {
                return Err(Error::Malformed(
                    "scheme needs exactly one of gauss_code, annular_code".into(),
                ))
            }
        };
        if let Some(signs) = &file.cut_signs {
            if *signs != diagram.cut_signs() {
                return Err(Error::InvalidScheme(format!(
                    "cut_signs {signs:?} disagree with the code ({:?})",
                    diagram.cut_signs()
                )));
            }
        }
        Self::new(file.ambient, diagram)
    }

    pub fn to_json(&self) -> String {
        let (gauss_code, annular_code) = match self.ambient {
            Ambient::S3 => (Some(self.diagram.code()), None),
            Ambient::S2xS1 => (None, Some(self.diagram.serialize())),
        };
        let file = SchemeFile {
            ambient: self.ambient,
            gauss_code,
            annular_code,
            cut_signs: Some(self.cut_signs()),
        };
        serde_json::to_string_pretty(&file).expect("plain data")
    }
}

/// Geometric and algebraic intersection numbers of the knot with the
/// sphere.
pub fn intersection_invariants(s: &Scheme) -> (usize, i64) {
    (s.b(), s.index())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RuleStatus {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for RuleStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleStatus::Pass => "PASS",
            RuleStatus::Fail => "FAIL",
            RuleStatus::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleCheck {
    pub status: RuleStatus,
    pub detail: String,
}

impl RuleCheck {
    fn new(status: RuleStatus, detail: impl Into<String>) -> Self {
        Self {
            status,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ambient: Ambient,
    pub b: usize,
    pub index: i64,
    pub parity: RuleCheck,
    pub single_component: RuleCheck,
    pub triviality: RuleCheck,
}

impl ValidationReport {
    /// Parity and component rules pass; triviality may be inconclusive.
    pub fn rules_hold(&self) -> bool {
        self.parity.status == RuleStatus::Pass && self.single_component.status == RuleStatus::Pass
    }

    pub fn any_failure(&self) -> bool {
        [&self.parity, &self.single_component, &self.triviality]
            .iter()
            .any(|r| r.status == RuleStatus::Fail)
    }
}

/// Bounds for bracket evaluation and move searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Largest diagram handed to the bracket state sum.
    pub crossing_limit: usize,
    /// Crossings a search may add beyond the starting diagram.
    pub extra_crossings: usize,
    /// States a search may visit.
    pub max_states: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            crossing_limit: DEFAULT_CROSSING_LIMIT,
            extra_crossings: 2,
            max_states: 20_000,
        }
    }
}

pub fn parity_rule(s: &Scheme) -> RuleCheck {
    let (b, index) = intersection_invariants(s);
    let (want_index, want_odd) = match s.ambient {
        Ambient::S2xS1 => (1, true),
        Ambient::S3 => (0, false),
    };
    let ok = index == want_index && (b % 2 == 1) == want_odd;
    let detail = format!(
        "b = {b}, index = {index}; {} requires index {want_index} and {} b",
        s.ambient,
        if want_odd { "odd" } else { "even" }
    );
    RuleCheck::new(if ok { RuleStatus::Pass } else { RuleStatus::Fail }, detail)
}

pub fn component_rule(s: &Scheme) -> RuleCheck {
    let n = s.diagram.num_knot_components();
    let status = if n == 1 { RuleStatus::Pass } else { RuleStatus::Fail };
    RuleCheck::new(status, format!("closure has {n} component(s)"))
}

fn triviality_rule(s: &Scheme, budget: &Budget) -> RuleCheck {
    let d = &s.diagram;
    if d.num_knot_components() != 1 {
        return RuleCheck::new(RuleStatus::Inconclusive, "not a knot");
    }
    match s.ambient {
        Ambient::S2xS1 => {
            let index = d.index();
            if index.abs() != 1 {
                return RuleCheck::new(
                    RuleStatus::Fail,
                    format!("algebraic intersection with the level is {index}, a core curve has ±1"),
                );
            }
            if d.level_distance() == 1 {
                return RuleCheck::new(RuleStatus::Pass, "a level meets the knot once");
            }
            let tangle = d.tangle();
            let b = d.b();
            let out = search(
                tangle,
                tangle.num_crossings() + budget.extra_crossings,
                budget.max_states,
                |t| AnnularDiagram::from_tangle(b, t.clone()).level_distance() == 1,
            );
            match out.found {
                Some(_) => RuleCheck::new(
                    RuleStatus::Pass,
                    format!("a level meets the knot once after moves ({} states searched)", out.explored),
                ),
                None => RuleCheck::new(
                    RuleStatus::Inconclusive,
                    format!("no level meeting the knot once within {} states", out.explored),
                ),
            }
        }
        Ambient::S3 => {
            let knot = d.closure();
            if knot.num_crossings() == 0 {
                return RuleCheck::new(RuleStatus::Pass, "crossingless diagram");
            }
            let max = knot.num_crossings() + budget.extra_crossings;
            if let Ok(r) = simplify_bfs(&knot, max, budget.max_states) {
                if r.diagram.num_crossings() == 0 {
                    return RuleCheck::new(
                        RuleStatus::Pass,
                        format!("simplifies to a crossingless diagram ({} states)", r.states_explored),
                    );
                }
            }
            match jones_with_limit(&knot, budget.crossing_limit) {
                Ok(j) if j != LaurentPoly::one() => {
                    RuleCheck::new(RuleStatus::Fail, format!("knotted: jones = {j}"))
                }
                _ => RuleCheck::new(RuleStatus::Inconclusive, "no simplification found, jones = 1"),
            }
        }
    }
}

pub fn validate_scheme(s: &Scheme, budget: &Budget) -> ValidationReport {
    ValidationReport {
        ambient: s.ambient,
        b: s.b(),
        index: s.index(),
        parity: parity_rule(s),
        single_component: component_rule(s),
        triviality: triviality_rule(s, budget),
    }
}

/// Deletes the through strand `strand` (index into
/// [`AnnularDiagram::strands`]) with its crossings, then closes the
/// remaining endpoints on each edge by nested arcs outside the rectangle.
/// Scanning an edge left to right, an endpoint is joined to the nearest
/// unmatched one of opposite direction, so no closing arcs cross.
pub fn cut_and_close(s: &Scheme, strand: usize) -> Result<PlanarDiagram> {
    if s.ambient != Ambient::S2xS1 {
        return Err(Error::AmbientMismatch("cut_and_close needs an S2xS1 scheme".into()));
    }
    let d = &s.diagram;
    let t = d.tangle();
    match d.strands().get(strand) {
        Some((_, StrandKind::Through)) => {}
        _ => return Err(Error::NotThroughStrand(strand)),
    }
    let comps = t.arc_components();
    let remove: Vec<bool> = t
        .crossings()
        .iter()
        .map(|c| c.arcs.iter().any(|&a| comps[a as usize] == strand))
        .collect();
    let kept_ports: Vec<usize> = (0..t.ports().len())
        .filter(|&p| comps[t.ports()[p].arc as usize] != strand)
        .collect();
    let spliced = t.splice(&remove, |a| comps[a as usize] != strand);
    let m = spliced.num_arcs();
    let mut uf = UnionFind::new(m);
    for bottom in [true, false] {
        let mut edge: Vec<(usize, usize)> = kept_ports
            .iter()
            .enumerate()
            .filter_map(|(k, &p)| {
                let (pos, on_bottom) = d.port_position(p);
                (on_bottom == bottom).then_some((pos, k))
            })
            .collect();
        edge.sort_unstable();
        let mut stack: Vec<usize> = Vec::new();
        for (_, k) in edge {
            let port = spliced.ports()[k];
            match stack.last() {
                Some(&j) if spliced.ports()[j].enters != port.enters => {
                    stack.pop();
                    uf.union(spliced.ports()[j].arc as usize, port.arc as usize);
                }
                _ => stack.push(k),
            }
        }
        if !stack.is_empty() {
            return Err(Error::UnsupportedClosure(format!(
                "{} endpoints on the {} edge have no partner of opposite direction",
                stack.len(),
                if bottom { "bottom" } else { "top" }
            )));
        }
    }
    let mut has_end = vec![false; m];
    let crossings: Vec<Crossing> = spliced
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
    PlanarDiagram::new(crossings, Vec::new(), spliced.free_loops() + loops)
}

/// Indices into [`AnnularDiagram::strands`] of the strands crossing the
/// cut level.
pub fn through_strands(s: &Scheme) -> Vec<usize> {
    s.diagram
        .strands()
        .iter()
        .enumerate()
        .filter(|(_, st)| st.1 == StrandKind::Through)
        .map(|(k, _)| k)
        .collect()
}

/// Jones polynomials of the components of a link, sorted.
pub fn component_jones(link: &PlanarDiagram, limit: usize) -> Result<Vec<LaurentPoly>> {
    let mut out = Vec::new();
    for (k, st) in link.components().iter().enumerate() {
        if st.closed {
            out.push(jones_with_limit(&link.sub_diagram(k), limit)?);
        }
    }
    out.extend((0..link.free_loops()).map(|_| LaurentPoly::one()));
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedEntry {
    /// Index of the removed through strand.
    pub strand: usize,
    /// Sorted component polynomials, absent when not computable.
    pub jones: Option<Vec<LaurentPoly>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Cut-and-close component polynomials over every through strand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedInvariant {
    pub entries: Vec<DerivedEntry>,
}

impl DerivedInvariant {
    pub fn is_complete(&self) -> bool {
        self.entries.iter().all(|e| e.jones.is_some())
    }

    /// The multiset of per-strand multisets, sorted; `None` if incomplete.
    pub fn multiset(&self) -> Option<Vec<Vec<LaurentPoly>>> {
        let mut out: Vec<Vec<LaurentPoly>> = self.entries.iter().map(|e| e.jones.clone()).collect::<Option<_>>()?;
        out.sort();
        Some(out)
    }
}

pub fn derived_invariant(s: &Scheme, crossing_limit: usize) -> Result<DerivedInvariant> {
    if s.ambient != Ambient::S2xS1 {
        return Err(Error::AmbientMismatch("derived invariant needs an S2xS1 scheme".into()));
    }
    let through = through_strands(s);
    let entries = through
        .par_iter()
        .map(|&strand| {
            let computed = cut_and_close(s, strand).and_then(|link| component_jones(&link, crossing_limit));
            match computed {
                Ok(polys) => Ok(DerivedEntry {
                    strand,
                    jones: Some(polys),
                    note: None,
                }),
                Err(e @ (Error::CrossingLimit { .. } | Error::UnsupportedClosure(_))) => Ok(DerivedEntry {
                    strand,
                    jones: None,
                    note: Some(e.to_string()),
                }),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DerivedInvariant { entries })
}

/// Closed 4-manifolds appearing in the admissibility table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Manifold {
    S4,
    CP2,
    S3xS1,
    /// The non-orientable `S³`-bundle over `S¹`.
    NonOrientableS3BundleOverS1,
    CP2SharpCP2,
    S2xS2,
    /// The non-trivial `S²`-bundle over `S²`.
    TwistedS2BundleOverS2,
}

impl Manifold {
    pub const ALL: [Manifold; 7] = [
        Manifold::S4,
        Manifold::CP2,
        Manifold::S3xS1,
        Manifold::NonOrientableS3BundleOverS1,
        Manifold::CP2SharpCP2,
        Manifold::S2xS2,
        Manifold::TwistedS2BundleOverS2,
    ];

    /// Rational Betti numbers β₀..β₄.
    pub fn betti(&self) -> [i64; 5] {
        match self {
            Manifold::S4 => [1, 0, 0, 0, 1],
            Manifold::CP2 => [1, 0, 1, 0, 1],
            Manifold::S3xS1 => [1, 1, 0, 1, 1],
            Manifold::NonOrientableS3BundleOverS1 => [1, 1, 0, 0, 0],
            Manifold::CP2SharpCP2 | Manifold::S2xS2 | Manifold::TwistedS2BundleOverS2 => [1, 0, 2, 0, 1],
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.betti())
    }
}

fn alternating_sum(v: &[i64; 5]) -> i64 {
    v.iter().enumerate().map(|(i, x)| if i % 2 == 0 { *x } else { -x }).sum()
}

/// Flow class: `k` equilibria, two saddles of Morse indices `mu <= nu`,
/// on `manifold`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlowClassDescriptor {
    pub k: u32,
    pub mu: u32,
    pub nu: u32,
    pub manifold: Manifold,
}

/// One row of the admissibility table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibleRow {
    pub k: u32,
    pub saddles: Vec<(u32, u32)>,
    pub manifolds: Vec<Manifold>,
}

pub fn admissibility_table() -> Vec<AdmissibleRow> {
    use Manifold::*;
    vec![
        AdmissibleRow {
            k: 6,
            saddles: vec![(1, 1), (1, 3), (3, 3)],
            manifolds: vec![S4],
        },
        AdmissibleRow {
            k: 4,
            saddles: vec![(1, 2), (2, 3)],
            manifolds: vec![S4],
        },
        AdmissibleRow {
            k: 5,
            saddles: vec![(1, 2), (2, 3)],
            manifolds: vec![CP2],
        },
        AdmissibleRow {
            k: 4,
            saddles: vec![(1, 3)],
            manifolds: vec![S3xS1, NonOrientableS3BundleOverS1],
        },
        AdmissibleRow {
            k: 4,
            saddles: vec![(2, 2)],
            manifolds: vec![CP2SharpCP2, S2xS2, TwistedS2BundleOverS2],
        },
    ]
}

pub fn matches_table_row(d: &FlowClassDescriptor) -> bool {
    admissibility_table().iter().any(|row| {
        row.k == d.k && row.saddles.contains(&(d.mu, d.nu)) && row.manifolds.contains(&d.manifold)
    })
}

/// Equilibria per Morse index 0..4: the two saddles plus `k - 2` sinks
/// and sources. Two nodes are one sink and one source; a third node is a
/// second sink when a saddle has index 1 and a second source otherwise;
/// with four nodes each index-1 (index-3) saddle adds a sink (source).
pub fn equilibrium_counts(d: &FlowClassDescriptor) -> Option<[i64; 5]> {
    if d.k < 4 || !(1..=3).contains(&d.mu) || !(1..=3).contains(&d.nu) {
        return None;
    }
    let mut counts = [0i64; 5];
    counts[d.mu as usize] += 1;
    counts[d.nu as usize] += 1;
    let nodes = d.k as i64 - 2;
    let (sinks, sources) = match nodes {
        2 => (1, 1),
        3 if d.mu == 1 || d.nu == 1 => (2, 1),
        3 => (1, 2),
        _ => {
            let ones = counts[1];
            let sinks = (1 + ones).min(nodes - 1);
            (sinks, nodes - sinks)
        }
    };
    counts[0] = sinks;
    counts[4] = sources;
    Some(counts)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorseCheck {
    pub counts: [i64; 5],
    pub betti: [i64; 5],
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

/// `k₀ - k₁ + k₂ - k₃ + k₄ = β₀ - β₁ + β₂ - β₃ + β₄`.
pub fn morse_equality(d: &FlowClassDescriptor) -> Option<MorseCheck> {
    let counts = equilibrium_counts(d)?;
    let betti = d.manifold.betti();
    let (lhs, rhs) = (alternating_sum(&counts), alternating_sum(&betti));
    Some(MorseCheck {
        counts,
        betti,
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

pub fn check_admissibility(d: &FlowClassDescriptor) -> bool {
    d.mu <= d.nu && matches_table_row(d) && morse_equality(d).is_some_and(|m| m.holds)
}

/// Jones polynomial of the closed-up knot, for display.
pub fn closure_jones(s: &Scheme, limit: usize) -> Result<LaurentPoly> {
    jones_with_limit(&s.diagram.closure(), limit)
}
