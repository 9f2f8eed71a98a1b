//! Bounded breadth-first search over Reidemeister moves.
//!
//! States are deduplicated by canonical key. Each BFS layer is expanded in
//! parallel and merged in order, so results do not depend on scheduling.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use super::moves::{applicable_moves, apply_reidemeister};
use super::PlanarDiagram;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct SimplifyResult {
    pub diagram: PlanarDiagram,
    /// The state budget ran out before the search space was exhausted and
    /// no crossingless diagram was found.
    pub inconclusive: bool,
    pub states_explored: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct SearchOutcome {
    pub best: PlanarDiagram,
    pub found: Option<PlanarDiagram>,
    pub exhausted: bool,
    pub explored: usize,
}

/// Explores diagrams with at most `max_crossings` crossings until `goal`
/// holds, the space is exhausted, or `max_states` states have been seen.
/// `best` is the first diagram reached with the fewest crossings.
pub(crate) fn search<G>(d: &PlanarDiagram, max_crossings: usize, max_states: usize, goal: G) -> SearchOutcome
where
    G: Fn(&PlanarDiagram) -> bool + Sync,
{
    let mut best = d.clone();
    if goal(d) {
        return SearchOutcome {
            best,
            found: Some(d.clone()),
            exhausted: false,
            explored: 1,
        };
    }
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(d.canonical_key());
    let mut layer = vec![d.clone()];
    let mut explored = 1;
    while !layer.is_empty() {
        let expanded: Vec<Vec<(Vec<u32>, PlanarDiagram)>> = layer
            .par_iter()
            .map(|state| {
                applicable_moves(state, Some(max_crossings))
                    .iter()
                    .filter_map(|mv| apply_reidemeister(state, mv).ok())
                    .map(|next| (next.canonical_key(), next))
                    .collect()
            })
            .collect();
        let mut next_layer = Vec::new();
        for (key, next) in expanded.into_iter().flatten() {
            if !seen.insert(key) {
                continue;
            }
            explored += 1;
            if next.num_crossings() < best.num_crossings() {
                best = next.clone();
            }
            if goal(&next) {
                return SearchOutcome {
                    best,
                    found: Some(next),
                    exhausted: false,
                    explored,
                };
            }
            if explored >= max_states {
                return SearchOutcome {
                    best,
                    found: None,
                    exhausted: false,
                    explored,
                };
            }
            next_layer.push(next);
        }
        layer = next_layer;
    }
    SearchOutcome {
        best,
        found: None,
        exhausted: true,
        explored,
    }
}

/// Searches for a diagram with fewer crossings. Stops early once a
/// crossingless diagram is reached.
pub fn simplify_bfs(d: &PlanarDiagram, max_crossings: usize, max_states: usize) -> Result<SimplifyResult> {
    if max_crossings == 0 || max_states == 0 {
        return Err(Error::InvalidDiagram("search bounds must be positive".into()));
    }
    let out = search(d, max_crossings, max_states, |x| x.num_crossings() == 0);
    let diagram = out.found.unwrap_or(out.best);
    let inconclusive = !out.exhausted && diagram.num_crossings() > 0;
    Ok(SimplifyResult {
        diagram,
        inconclusive,
        states_explored: out.explored,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::gauss::parse_gauss;
    use crate::diagram::moves::{KinkSite, Move};

    #[test]
    fn kink_simplifies_to_unknot() {
        let d = parse_gauss("1o+ 1u+").unwrap();
        let r = simplify_bfs(&d, 2, 100).unwrap();
        assert_eq!(r.diagram, PlanarDiagram::unknot());
        assert!(!r.inconclusive);
    }

    #[test]
    fn four_crossing_unknot_simplifies() {
        // a kink, then a bigon across the kink's loop and the main arc
        let mut d = PlanarDiagram::unknot();
        d = apply_reidemeister(
            &d,
            &Move::R1Insert {
                site: KinkSite::FreeLoop,
                positive: true,
                over_first: false,
            },
        )
        .unwrap();
        let ins = applicable_moves(&d, None)
            .into_iter()
            .find(|m| matches!(m, Move::R2Insert { .. }))
            .unwrap();
        d = apply_reidemeister(&d, &ins).unwrap();
        d = apply_reidemeister(
            &d,
            &Move::R1Insert {
                site: KinkSite::Arc(2),
                positive: false,
                over_first: true,
            },
        )
        .unwrap();
        assert_eq!(d.num_crossings(), 4);
        let r = simplify_bfs(&d, 5, 20_000).unwrap();
        assert_eq!(r.diagram.num_crossings(), 0);
        assert!(!r.inconclusive);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let d = parse_gauss("1o+ 2u+ 3o+ 1u+ 2o+ 3u+").unwrap();
        let r = simplify_bfs(&d, 5, 50).unwrap();
        assert_eq!(r.diagram.num_crossings(), 3);
        assert!(r.inconclusive);
        assert!(simplify_bfs(&d, 0, 10).is_err());
    }
}
