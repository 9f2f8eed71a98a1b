//! Generators for the standard scheme families and realization reports.
//!
//! The `S2xS1` family `(γ, i)` has `b = 2γ + 1` cut points. Its knot runs
//! up through point 1, comes back down through point 2, up through 3 and
//! so on, closing after point `b`; the `γ` returns form clasps around the
//! cut. `i` right-handed trefoil patterns are tied into the cap between
//! bottom points 1 and 2 (into the single strand when `γ = 0`). The knot
//! is trivial in `S² × S¹`, but cutting out the strand through point `b`
//! and closing up leaves a link with an `i`-fold trefoil sum.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bracket::DEFAULT_CROSSING_LIMIT;
use crate::diagram::annular::AnnularDiagram;
use crate::diagram::moves::random_moves;
use crate::error::{Error, Result};
use crate::scheme::{
    check_admissibility, morse_equality, validate_scheme, Ambient, Budget, FlowClassDescriptor, Manifold,
    MorseCheck, RuleStatus, Scheme,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyParams {
    pub gamma: u32,
    /// Trefoil summands.
    #[serde(default)]
    pub i: u32,
}

/// Trefoil crossings are labelled from here on so they never collide
/// with cut positions.
fn trefoil_tokens(copy: u32) -> String {
    let [a, b, c] = [3 * copy + 1, 3 * copy + 2, 3 * copy + 3];
    format!("{a}o+ {b}u+ {c}o+ {a}u+ {b}o+ {c}u+")
}

/// Cut-annotated Gauss code of the `S2xS1` family member.
pub fn k4_code(p: FamilyParams) -> String {
    let b = 2 * p.gamma + 1;
    let mut tokens = vec!["|1+".to_string()];
    tokens.extend((0..p.i).map(trefoil_tokens));
    for pos in 2..=b {
        tokens.push(format!("|{pos}{}", if pos % 2 == 0 { '-' } else { '+' }));
    }
    tokens.join(" ")
}

pub fn gen_k4_scheme(p: FamilyParams) -> Result<Scheme> {
    gen_k4_scheme_with_limit(p, DEFAULT_CROSSING_LIMIT)
}

pub fn gen_k4_scheme_with_limit(p: FamilyParams, max_crossings: usize) -> Result<Scheme> {
    let crossings = 3 * p.i as usize;
    if crossings > max_crossings {
        return Err(Error::GenerationLimit(format!(
            "{} trefoils need {crossings} crossings, limit is {max_crossings}",
            p.i
        )));
    }
    let b = 2 * p.gamma as usize + 1;
    Scheme::new(Ambient::S2xS1, AnnularDiagram::from_code(&k4_code(p), b)?)
}

/// `|1+ |2- ... |2γ-`: alternating caps below and cups above the cut.
pub fn k5_code(gamma: u32) -> String {
    (1..=2 * gamma)
        .map(|pos| format!("|{pos}{}", if pos % 2 == 0 { '-' } else { '+' }))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn gen_k5_scheme(gamma: u32) -> Result<Scheme> {
    let b = 2 * gamma as usize;
    Scheme::new(Ambient::S3, AnnularDiagram::from_code(&k5_code(gamma), b)?)
}

/// The same scheme after `steps` random moves inside the rectangle, never
/// exceeding `max_crossings`. A drawn move that would leave the scheme
/// unencodable (in `S3`, a level must miss the knot) is redrawn, up to
/// `MAX_REDRAWS` times per step.
pub fn perturb_scheme<R: Rng>(s: &Scheme, steps: usize, max_crossings: usize, rng: &mut R) -> Result<Scheme> {
    const MAX_REDRAWS: usize = 64;
    let mut cur = s.clone();
    for _ in 0..steps {
        for _ in 0..MAX_REDRAWS {
            let (tangle, _) = random_moves(cur.diagram().tangle(), 1, max_crossings, rng)?;
            if let Ok(next) = Scheme::new(cur.ambient(), AnnularDiagram::from_tangle(cur.b(), tangle)) {
                cur = next;
                break;
            }
        }
    }
    Ok(cur)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equilibrium {
    pub name: String,
    pub morse_index: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Handle {
    pub name: String,
    pub index: u32,
    /// Linear field on `Bⁱ × B⁴⁻ⁱ`, `x ∈ Bⁱ`, `y ∈ B⁴⁻ⁱ`.
    pub field: String,
    pub contains: String,
    pub attached_along: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealizationReport {
    pub descriptor: FlowClassDescriptor,
    pub cross_section: Ambient,
    pub b: usize,
    pub index: i64,
    pub knot: String,
    pub equilibria: Vec<Equilibrium>,
    pub handles: Vec<Handle>,
    pub morse: MorseCheck,
    pub admissible: bool,
    pub triviality: RuleStatus,
}

const LINEAR_FIELD: &str = "ẋ = x, ẏ = −y";

/// Handle decomposition of a flow whose scheme is `s`: sinks in 0-handles,
/// the saddle of index 1 in a 1-handle whose belt sphere is the cut
/// sphere, the saddle of index 2 in a 2-handle attached along the knot,
/// and the source in a 4-handle.
pub fn realization_report(s: &Scheme, budget: &Budget) -> Result<RealizationReport> {
    let report = validate_scheme(s, budget);
    if !report.rules_hold() || report.triviality.status == RuleStatus::Fail {
        return Err(Error::InvalidScheme(format!(
            "not the scheme of a flow: parity {:?}, components {:?}, triviality {:?}",
            report.parity.status, report.single_component.status, report.triviality.status
        )));
    }
    let (manifold, sinks) = match s.ambient() {
        Ambient::S2xS1 => (Manifold::S4, 1),
        Ambient::S3 => (Manifold::CP2, 2),
    };
    let descriptor = FlowClassDescriptor {
        k: s.ambient().equilibria(),
        mu: 1,
        nu: 2,
        manifold,
    };
    let sink_names: Vec<String> = if sinks == 1 {
        vec!["ω".into()]
    } else {
        (1..=sinks).map(|j| format!("ω{j}")).collect()
    };
    let mut equilibria: Vec<Equilibrium> = sink_names
        .iter()
        .map(|n| Equilibrium {
            name: n.clone(),
            morse_index: 0,
        })
        .collect();
    equilibria.push(Equilibrium {
        name: "σ1".into(),
        morse_index: 1,
    });
    equilibria.push(Equilibrium {
        name: "σ2".into(),
        morse_index: 2,
    });
    equilibria.push(Equilibrium {
        name: "α".into(),
        morse_index: 4,
    });
    let mut handles: Vec<Handle> = sink_names
        .iter()
        .enumerate()
        .map(|(j, n)| Handle {
            name: format!("H0_{}", j + 1),
            index: 0,
            field: LINEAR_FIELD.into(),
            contains: n.clone(),
            attached_along: "-".into(),
        })
        .collect();
    let feet = if sinks == 1 {
        "both feet on ∂H0_1, boundary becomes S²×S¹".to_string()
    } else {
        "one foot on each of ∂H0_1, ∂H0_2, boundary becomes S³".to_string()
    };
    handles.push(Handle {
        name: "H1".into(),
        index: 1,
        field: LINEAR_FIELD.into(),
        contains: "σ1".into(),
        attached_along: format!("{feet}; belt sphere is the cut sphere"),
    });
    let code = s.diagram().code();
    handles.push(Handle {
        name: "H2".into(),
        index: 2,
        field: LINEAR_FIELD.into(),
        contains: "σ2".into(),
        attached_along: format!(
            "knot {:?} meeting the belt sphere in {} points, index {}",
            code,
            s.b(),
            s.index()
        ),
    });
    handles.push(Handle {
        name: "H4".into(),
        index: 4,
        field: LINEAR_FIELD.into(),
        contains: "α".into(),
        attached_along: "the remaining boundary sphere".into(),
    });
    let morse = morse_equality(&descriptor).expect("descriptor has valid indices");
    Ok(RealizationReport {
        descriptor,
        cross_section: s.ambient(),
        b: s.b(),
        index: s.index(),
        knot: code,
        equilibria,
        handles,
        admissible: check_admissibility(&descriptor),
        morse,
        triviality: report.triviality.status,
    })
}

impl RealizationReport {
    pub fn to_text(&self) -> String {
        let d = &self.descriptor;
        let mut out = format!(
            "flow class k={} mu={} nu={} on {:?} (admissible: {})\n",
            d.k, d.mu, d.nu, d.manifold, self.admissible
        );
        out += &format!(
            "cross-section {}: b={} index={} knot {:?}\n",
            self.cross_section, self.b, self.index, self.knot
        );
        out += "equilibria:";
        for e in &self.equilibria {
            out += &format!(" {}({})", e.name, e.morse_index);
        }
        out += "\nhandles:\n";
        for h in &self.handles {
            out += &format!("  {} [{}] {}: {}\n", h.name, h.field, h.contains, h.attached_along);
        }
        out += &format!(
            "morse equality: {} = {} ({})\n",
            self.morse.lhs,
            self.morse.rhs,
            if self.morse.holds { "holds" } else { "fails" }
        );
        out
    }
}
