//! Equivalence verdicts for pairs of schemes, with certificates.

use rayon::prelude::*;
use serde::Serialize;

use crate::bracket::DEFAULT_CROSSING_LIMIT;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::scheme::{component_rule, derived_invariant, parity_rule, Ambient, DerivedInvariant, RuleStatus, Scheme};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictResult {
    Equivalent,
    Nonequivalent,
    Unknown,
}

impl VerdictResult {
    /// 0, 1, 2 for equivalent, nonequivalent, unknown.
    pub fn exit_code(&self) -> i32 {
        match self {
            VerdictResult::Equivalent => 0,
            VerdictResult::Nonequivalent => 1,
            VerdictResult::Unknown => 2,
        }
    }
}

impl std::fmt::Display for VerdictResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            VerdictResult::Equivalent => "EQUIVALENT",
            VerdictResult::Nonequivalent => "NONEQUIVALENT",
            VerdictResult::Unknown => "UNKNOWN",
        })
    }
}

/// Why a verdict was reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule")]
pub enum Certificate {
    /// Both sides are the same input object.
    SameInput,
    /// In `S² × S¹`, knots meeting the cut sphere once are all equivalent.
    SingleIntersection,
    /// In `S³`, schemes with the same number of intersections are
    /// equivalent.
    EqualIntersectionCount { b: usize },
    /// Witness: different geometric intersection counts.
    IntersectionCountMismatch { left: usize, right: usize },
    /// Witness: different cut-and-close component polynomials.
    DerivedInvariantMismatch {
        left: Vec<Vec<LaurentPoly>>,
        right: Vec<Vec<LaurentPoly>>,
    },
    /// Every computed invariant agrees; equivalence is not certified.
    InvariantsAgree { b: usize, derived: Vec<Vec<LaurentPoly>> },
    /// Some cut-and-close polynomial could not be computed.
    Incomplete { notes: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub result: VerdictResult,
    pub certificate: Certificate,
    /// The pair was compared after reversing time, which swaps the saddle
    /// roles; the verdict itself is unaffected.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub time_reversed: bool,
}

impl Verdict {
    fn new(result: VerdictResult, certificate: Certificate) -> Self {
        Self {
            result,
            certificate,
            time_reversed: false,
        }
    }

    pub fn same_input() -> Self {
        Self::new(VerdictResult::Equivalent, Certificate::SameInput)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub crossing_limit: usize,
    pub time_reversed: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            crossing_limit: DEFAULT_CROSSING_LIMIT,
            time_reversed: false,
        }
    }
}

fn require_valid(s: &Scheme, ambient: Ambient) -> Result<()> {
    if s.ambient() != ambient {
        return Err(Error::AmbientMismatch(format!("expected {ambient}, got {}", s.ambient())));
    }
    for rule in [parity_rule(s), component_rule(s)] {
        if rule.status != RuleStatus::Pass {
            return Err(Error::InvalidScheme(rule.detail));
        }
    }
    Ok(())
}

pub fn classify_k5(s1: &Scheme, s2: &Scheme) -> Result<Verdict> {
    require_valid(s1, Ambient::S3)?;
    require_valid(s2, Ambient::S3)?;
    Ok(decide_k5(s1.b(), s2.b()))
}

fn decide_k5(b1: usize, b2: usize) -> Verdict {
    if b1 == b2 {
        Verdict::new(VerdictResult::Equivalent, Certificate::EqualIntersectionCount { b: b1 })
    } else {
        Verdict::new(
            VerdictResult::Nonequivalent,
            Certificate::IntersectionCountMismatch { left: b1, right: b2 },
        )
    }
}

pub fn classify_k4(s1: &Scheme, s2: &Scheme, opts: &ClassifyOptions) -> Result<Verdict> {
    require_valid(s1, Ambient::S2xS1)?;
    require_valid(s2, Ambient::S2xS1)?;
    let left = K4Data::compute(s1, opts.crossing_limit)?;
    let right = K4Data::compute(s2, opts.crossing_limit)?;
    Ok(decide_k4(&left, &right))
}

struct K4Data {
    b: usize,
    derived: Option<DerivedInvariant>,
}

impl K4Data {
    fn compute(s: &Scheme, limit: usize) -> Result<Self> {
        let derived = if s.b() > 1 {
            Some(derived_invariant(s, limit)?)
        } else {
            None
        };
        Ok(Self { b: s.b(), derived })
    }
}

fn decide_k4(l: &K4Data, r: &K4Data) -> Verdict {
    if l.b == 1 && r.b == 1 {
        return Verdict::new(VerdictResult::Equivalent, Certificate::SingleIntersection);
    }
    if l.b != r.b {
        return Verdict::new(
            VerdictResult::Nonequivalent,
            Certificate::IntersectionCountMismatch { left: l.b, right: r.b },
        );
    }
    let (dl, dr) = (l.derived.as_ref().unwrap(), r.derived.as_ref().unwrap());
    match (dl.multiset(), dr.multiset()) {
        (Some(a), Some(b)) if a != b => Verdict::new(
            VerdictResult::Nonequivalent,
            Certificate::DerivedInvariantMismatch { left: a, right: b },
        ),
        (Some(a), Some(_)) => Verdict::new(
            VerdictResult::Unknown,
            Certificate::InvariantsAgree { b: l.b, derived: a },
        ),
        _ => {
            let notes = dl
                .entries
                .iter()
                .chain(&dr.entries)
                .filter_map(|e| e.note.clone())
                .collect();
            Verdict::new(VerdictResult::Unknown, Certificate::Incomplete { notes })
        }
    }
}

pub fn classify(s1: &Scheme, s2: &Scheme, opts: &ClassifyOptions) -> Result<Verdict> {
    let mut v = match (s1.ambient(), s2.ambient()) {
        (Ambient::S3, Ambient::S3) => classify_k5(s1, s2)?,
        (Ambient::S2xS1, Ambient::S2xS1) => classify_k4(s1, s2, opts)?,
        (a, b) => return Err(Error::AmbientMismatch(format!("cannot compare {a} with {b}"))),
    };
    v.time_reversed = opts.time_reversed;
    Ok(v)
}

/// Verdicts for every ordered pair. Diagonal entries are equivalent by
/// identity of the input; invariants are computed once per scheme.
pub fn classify_family_pairwise(schemes: &[Scheme], opts: &ClassifyOptions) -> Result<Vec<Vec<Verdict>>> {
    let Some(first) = schemes.first() else {
        return Ok(Vec::new());
    };
    let ambient = first.ambient();
    for s in schemes {
        require_valid(s, ambient)?;
    }
    let data: Option<Vec<K4Data>> = match ambient {
        Ambient::S2xS1 => Some(
            schemes
                .par_iter()
                .map(|s| K4Data::compute(s, opts.crossing_limit))
                .collect::<Result<_>>()?,
        ),
        Ambient::S3 => None,
    };
    let n = schemes.len();
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut v = if i == j {
                        Verdict::same_input()
                    } else if let Some(data) = &data {
                        decide_k4(&data[i], &data[j])
                    } else {
                        decide_k5(schemes[i].b(), schemes[j].b())
                    };
                    v.time_reversed = opts.time_reversed;
                    v
                })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{gen_k4_scheme, gen_k5_scheme, FamilyParams};

    fn k4(gamma: u32, i: u32) -> Scheme {
        gen_k4_scheme(FamilyParams { gamma, i }).unwrap()
    }

    #[test]
    fn k5_by_count() {
        let opts = ClassifyOptions::default();
        let v = classify(&gen_k5_scheme(2).unwrap(), &gen_k5_scheme(2).unwrap(), &opts).unwrap();
        assert_eq!(v.certificate, Certificate::EqualIntersectionCount { b: 4 });
        let v = classify_k5(&gen_k5_scheme(0).unwrap(), &gen_k5_scheme(1).unwrap()).unwrap();
        assert_eq!(v.result, VerdictResult::Nonequivalent);
        let v = classify_k5(&gen_k5_scheme(0).unwrap(), &gen_k5_scheme(0).unwrap()).unwrap();
        assert_eq!(v.result, VerdictResult::Equivalent);
    }

    #[test]
    fn k4_family_members_differ() {
        let opts = ClassifyOptions::default();
        let v = classify_k4(&k4(1, 1), &k4(1, 2), &opts).unwrap();
        assert_eq!(v.result, VerdictResult::Nonequivalent);
        assert!(matches!(v.certificate, Certificate::DerivedInvariantMismatch { .. }));
        let v = classify_k4(&k4(0, 0), &k4(0, 3), &opts).unwrap();
        assert_eq!(v.certificate, Certificate::SingleIntersection);
        let v = classify_k4(&k4(1, 1), &k4(1, 1), &opts).unwrap();
        assert_eq!(v.result, VerdictResult::Unknown);
    }

    #[test]
    fn mismatched_ambients_are_errors() {
        let opts = ClassifyOptions::default();
        assert!(matches!(
            classify(&k4(0, 0), &gen_k5_scheme(0).unwrap(), &opts),
            Err(Error::AmbientMismatch(_))
        ));
        assert!(classify_family_pairwise(&[], &opts).unwrap().is_empty());
    }

    #[test]
    fn pairwise_matches_single_comparisons() {
        let opts = ClassifyOptions::default();
        let family: Vec<Scheme> = (0..3).map(|i| k4(1, i)).collect();
        let m = classify_family_pairwise(&family, &opts).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    assert_eq!(m[i][j].certificate, Certificate::SameInput);
                } else {
                    assert_eq!(m[i][j], classify(&family[i], &family[j], &opts).unwrap());
                    assert_eq!(m[i][j].result, VerdictResult::Nonequivalent);
                }
            }
        }
    }
}
