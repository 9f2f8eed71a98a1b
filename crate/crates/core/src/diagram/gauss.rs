//! Signed Gauss codes.
//!
//! One line per component. A crossing visit is written `<label><o|u><+|->`,
//! e.g. `3u-`: label, over/under, crossing sign. An empty line is a
//! crossingless component, and the empty string is the unknot. Annular
//! codes may also contain cut tokens `|<pos><+|->` (see
//! [`super::annular`]).

use std::collections::HashMap;

use super::{ArcId, Crossing, HalfEdge, PlanarDiagram, Port};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Token {
    Visit {
        label: String,
        over: bool,
        positive: bool,
    },
    /// Passage through the cut level at 1-based `pos`; `up` is the
    /// positive direction.
    Cut { pos: usize, up: bool },
}

pub(crate) fn parse_token(tok: &str) -> Result<Token> {
    let bad = || Error::Malformed(format!("bad token {tok:?}"));
    let (body, sign) = tok.split_at(tok.len().checked_sub(1).ok_or_else(bad)?);
    let positive = match sign {
        "+" => true,
        "-" => false,
        _ => return Err(bad()),
    };
    if let Some(pos) = body.strip_prefix('|') {
        let pos: usize = pos.parse().map_err(|_| bad())?;
        return Ok(Token::Cut { pos, up: positive });
    }
    let (label, ou) = body.split_at(body.len().checked_sub(1).ok_or_else(bad)?);
    let over = match ou {
        "o" => true,
        "u" => false,
        _ => return Err(bad()),
    };
    if label.is_empty() || !label.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(bad());
    }
    Ok(Token::Visit {
        label: label.to_string(),
        over,
        positive,
    })
}

pub(crate) fn tokenize(code: &str) -> Result<Vec<Vec<Token>>> {
    code.split('\n')
        .map(|line| {
            line.trim_end_matches('\r')
                .split_whitespace()
                .map(parse_token)
                .collect()
        })
        .collect()
}

struct Visit {
    over: bool,
    positive: bool,
    incoming: ArcId,
    outgoing: ArcId,
}

/// Builds a diagram from tokenized components. Cut tokens become ports of
/// a rectangle with `b` points on each of the bottom and top edges; ports
/// are ordered `B1..Bb, Tb..T1` (counterclockwise).
pub(crate) fn build(components: &[Vec<Token>], b: usize) -> Result<PlanarDiagram> {
    let mut labels: Vec<String> = Vec::new();
    let mut visits: HashMap<String, Vec<Visit>> = HashMap::new();
    let mut ports: Vec<Option<Port>> = vec![None; 2 * b];
    let mut cut_seen = vec![false; b];
    let mut free_loops = 0;
    let mut base: ArcId = 0;
    for comp in components {
        let v = comp.len() as ArcId;
        if v == 0 {
            free_loops += 1;
            continue;
        }
        for (j, tok) in comp.iter().enumerate() {
            let j = j as ArcId;
            let incoming = base + j;
            let outgoing = base + (j + 1) % v;
            match tok {
                Token::Visit {
                    label,
                    over,
                    positive,
                } => {
                    let entry = visits.entry(label.clone()).or_insert_with(|| {
                        labels.push(label.clone());
                        Vec::new()
                    });
                    entry.push(Visit {
                        over: *over,
                        positive: *positive,
                        incoming,
                        outgoing,
                    });
                }
                Token::Cut { pos, up } => {
                    if *pos == 0 || *pos > b {
                        return Err(Error::Malformed(format!("cut position {pos} outside 1..={b}")));
                    }
                    if std::mem::replace(&mut cut_seen[pos - 1], true) {
                        return Err(Error::Malformed(format!("cut position {pos} used twice")));
                    }
                    let bottom = pos - 1;
                    let top = 2 * b - pos;
                    let (end_at, start_at) = if *up { (top, bottom) } else { (bottom, top) };
                    ports[end_at] = Some(Port {
                        arc: incoming,
                        enters: false,
                    });
                    ports[start_at] = Some(Port {
                        arc: outgoing,
                        enters: true,
                    });
                }
            }
        }
        base += v;
    }
    if let Some(p) = cut_seen.iter().position(|s| !s) {
        return Err(Error::Malformed(format!("cut position {} never used", p + 1)));
    }
    let mut crossings = Vec::with_capacity(labels.len());
    for label in &labels {
        let vs = &visits[label];
        if vs.len() != 2 {
            return Err(Error::LabelCount {
                label: label.clone(),
                count: vs.len(),
            });
        }
        let (o, u) = match (vs[0].over, vs[1].over) {
            (true, false) => (&vs[0], &vs[1]),
            (false, true) => (&vs[1], &vs[0]),
            _ => {
                return Err(Error::Malformed(format!(
                    "crossing {label} needs one over and one under visit"
                )))
            }
        };
        if o.positive != u.positive {
            return Err(Error::Malformed(format!("crossing {label} has inconsistent signs")));
        }
        let arcs = if o.positive {
            [u.incoming, o.outgoing, u.outgoing, o.incoming]
        } else {
            [u.incoming, o.incoming, u.outgoing, o.outgoing]
        };
        crossings.push(Crossing::new(arcs, o.positive));
    }
    let ports = ports.into_iter().map(|p| p.expect("every cut filled")).collect();
    PlanarDiagram::new(crossings, ports, free_loops)
}

/// Parses a signed Gauss code of a link in the plane.
pub fn parse_gauss(code: &str) -> Result<PlanarDiagram> {
    let comps = tokenize(code)?;
    if comps.iter().flatten().any(|t| matches!(t, Token::Cut { .. })) {
        return Err(Error::Malformed("cut tokens are only allowed in annular codes".into()));
    }
    build(&comps, 0)
}

/// Token text for the visit at the head of `arc`.
pub(crate) fn head_token(
    d: &PlanarDiagram,
    head: HalfEdge,
    names: &mut HashMap<u32, usize>,
    b: usize,
) -> String {
    match head {
        HalfEdge::Slot(c, s) => {
            let n = names.len() + 1;
            let label = *names.entry(c).or_insert(n);
            let x = d.crossings()[c as usize];
            format!(
                "{label}{}{}",
                if Crossing::is_over(s as usize) { 'o' } else { 'u' },
                if x.positive { '+' } else { '-' }
            )
        }
        HalfEdge::Port(p) => {
            let p = p as usize;
            if p < b {
                format!("|{}-", p + 1)
            } else {
                format!("|{}+", 2 * b - p)
            }
        }
    }
}

/// Writes a closed diagram as a Gauss code. Components are ordered by
/// smallest arc id and start at the head of that arc; labels are numbered
/// by first appearance. Crossingless components come last.
pub fn serialize_gauss(d: &PlanarDiagram) -> Result<String> {
    if !d.is_closed() {
        return Err(Error::InvalidDiagram("tangles have no plain Gauss code".into()));
    }
    let inc = d.incidence();
    let mut names = HashMap::new();
    let mut lines: Vec<String> = d
        .components()
        .iter()
        .map(|s| {
            s.arcs
                .iter()
                .map(|&a| head_token(d, inc.head[a as usize], &mut names, 0))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    lines.extend((0..d.free_loops()).map(|_| String::new()));
    Ok(lines.join("\n"))
}
