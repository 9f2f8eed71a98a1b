//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails if
//! any criterion fails.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use common::{oracle_bracket, oracle_jones, parse_library_poly, poly_pow};
use knotscheme::bracket::{jones, kauffman_bracket};
use knotscheme::classify::{classify, classify_family_pairwise, Certificate, ClassifyOptions, VerdictResult};
use knotscheme::diagram::gauss::{parse_gauss, serialize_gauss};
use knotscheme::diagram::moves::{random_moves, MoveKind};
use knotscheme::diagram::PlanarDiagram;
use knotscheme::family::{gen_k4_scheme, gen_k5_scheme, perturb_scheme, FamilyParams};
use knotscheme::laurent::LaurentPoly;
use knotscheme::scheme::{check_admissibility, intersection_invariants, morse_equality, FlowClassDescriptor, Scheme};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

const RIGHT_TREFOIL: &str = "1o+ 2u+ 3o+ 1u+ 2o+ 3u+";
const LEFT_TREFOIL: &str = "1o- 2u- 3o- 1u- 2o- 3u-";
const HOPF: &str = "1o+ 2u+\n1u+ 2o+";

struct Report {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Report {
    Report {
        pass,
        detail: detail.into(),
    }
}

fn k4(gamma: u32, i: u32) -> Scheme {
    gen_k4_scheme(FamilyParams { gamma, i }).unwrap()
}

fn parity_reproduction() -> Report {
    let mut bad = Vec::new();
    for gamma in 0..=3 {
        for i in 0..=4 {
            let got = intersection_invariants(&k4(gamma, i));
            if got != (2 * gamma as usize + 1, 1) {
                bad.push(format!("k4({gamma},{i}) -> {got:?}"));
            }
        }
    }
    for gamma in 0..=5 {
        let got = intersection_invariants(&gen_k5_scheme(gamma).unwrap());
        if got != (2 * gamma as usize, 0) {
            bad.push(format!("k5({gamma}) -> {got:?}"));
        }
    }
    check(bad.is_empty(), format!("26 schemes, mismatches {bad:?}"))
}

fn k5_classifier() -> Report {
    let schemes: Vec<Scheme> = (0..=5).map(|g| gen_k5_scheme(g).unwrap()).collect();
    let m = classify_family_pairwise(&schemes, &ClassifyOptions::default()).unwrap();
    let mut wrong = 0;
    let mut unknown = 0;
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            // off-diagonal entries go through the rule; recheck the diagonal by rule as well
            let v = if i == j {
                classify(&schemes[i], &schemes[j], &ClassifyOptions::default()).unwrap()
            } else {
                v.clone()
            };
            let want = if i == j {
                VerdictResult::Equivalent
            } else {
                VerdictResult::Nonequivalent
            };
            wrong += usize::from(v.result != want);
            unknown += usize::from(v.result == VerdictResult::Unknown);
        }
    }
    check(wrong == 0 && unknown == 0, format!("6x6 matrix, {wrong} wrong, {unknown} unknown"))
}

fn countable_family() -> Report {
    let schemes: Vec<Scheme> = (0..=4).map(|i| k4(1, i)).collect();
    let m = classify_family_pairwise(&schemes, &ClassifyOptions::default()).unwrap();
    let oracle_trefoil = oracle_jones(RIGHT_TREFOIL);
    let trefoil = jones(&parse_gauss(RIGHT_TREFOIL).unwrap()).unwrap();
    let mut problems = Vec::new();
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i == j {
                continue;
            }
            let Certificate::DerivedInvariantMismatch { left, right } = &v.certificate else {
                problems.push(format!("({i},{j}) {:?}", v.result));
                continue;
            };
            if v.result != VerdictResult::Nonequivalent || left == right {
                problems.push(format!("({i},{j}) witness does not separate"));
            }
            for (side, k) in [(left, i), (right, j)] {
                let want = trefoil.pow(k as u32).unwrap();
                let nontrivial: Vec<&LaurentPoly> =
                    side.iter().flatten().filter(|p| **p != LaurentPoly::one()).collect();
                let expected = usize::from(k > 0);
                let matches_lib = nontrivial.iter().all(|p| **p == want);
                let matches_oracle = nontrivial
                    .iter()
                    .all(|p| parse_library_poly(&p.to_string()) == poly_pow(&oracle_trefoil, k as u32));
                if nontrivial.len() != expected || !matches_lib || !matches_oracle {
                    problems.push(format!("({i},{j}) side {k}: {nontrivial:?}"));
                }
            }
        }
    }
    check(problems.is_empty(), format!("5x5 matrix, problems {problems:?}"))
}

fn jones_invariance() -> Report {
    let pool: Vec<PlanarDiagram> = ["", RIGHT_TREFOIL, LEFT_TREFOIL, HOPF, "1o- 2u+ 3o+ 1u- 4o- 3u+ 2o+ 4u-"]
        .iter()
        .map(|c| parse_gauss(c).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let (mut ok, mut r1_ok, mut r1_total) = (0, 0, 0);
    let mut kinds = [0usize; 3];
    let mut failures = Vec::new();
    for case in 0..200 {
        let start = &pool[case % pool.len()];
        let steps = rng.gen_range(0..10);
        let (d, _) = random_moves(start, steps, 10, &mut rng).unwrap();
        assert!(d.num_crossings() <= 10);
        let (e, mv) = random_moves(&d, 1, 12, &mut rng).unwrap();
        let Some(mv) = mv.first().copied() else {
            failures.push(format!("case {case}: no applicable move"));
            continue;
        };
        kinds[match mv.kind() {
            MoveKind::I => 0,
            MoveKind::II => 1,
            MoveKind::III => 2,
        }] += 1;
        let (jd, je) = (jones(&d).unwrap(), jones(&e).unwrap());
        if jd == je {
            ok += 1;
        } else {
            failures.push(format!("case {case}: {mv:?} changed jones"));
        }
        let (bd, be) = (kauffman_bracket(&d).unwrap(), kauffman_bracket(&e).unwrap());
        if mv.kind() == MoveKind::I {
            r1_total += 1;
            let dw = e.writhe() - d.writhe();
            if dw.abs() == 1 && be == bd.mul(&LaurentPoly::monomial(-1, 3 * dw as i32)).unwrap() {
                r1_ok += 1;
            }
        } else if bd != be {
            failures.push(format!("case {case}: {mv:?} changed bracket"));
        }
        // cross-check against the oracle on a sample
        if case % 10 == 0 {
            let code = serialize_gauss(&e).unwrap();
            if parse_library_poly(&be.to_string()) != oracle_bracket(&code) {
                failures.push(format!("case {case}: oracle disagrees on {code:?}"));
            }
        }
    }
    check(
        ok == 200 && r1_ok == r1_total && failures.is_empty(),
        format!(
            "jones unchanged {ok}/200; R1 bracket factor exact {r1_ok}/{r1_total}; moves I/II/III = {kinds:?}; failures {failures:?}"
        ),
    )
}

fn fixture_values() -> Report {
    let unknot = jones(&PlanarDiagram::unknot()).unwrap();
    let right = jones(&parse_gauss(RIGHT_TREFOIL).unwrap()).unwrap();
    let left = jones(&parse_gauss(LEFT_TREFOIL).unwrap()).unwrap();
    let hopf = kauffman_bracket(&parse_gauss(HOPF).unwrap()).unwrap();
    let lib = |p: &LaurentPoly| parse_library_poly(&p.to_string());
    let conditions = [
        ("jones(unknot) = 1", unknot == LaurentPoly::one() && lib(&unknot) == oracle_jones("")),
        ("trefoils are mirror images", left == right.substitute_mirror() && right == left.substitute_mirror()),
        ("trefoils differ", left != right),
        ("right trefoil matches oracle", lib(&right) == oracle_jones(RIGHT_TREFOIL)),
        ("left trefoil matches oracle", lib(&left) == oracle_jones(LEFT_TREFOIL)),
        (
            "bracket(Hopf) = -A^4 - A^-4",
            hopf == "-A^4 - A^-4".parse().unwrap() && lib(&hopf) == oracle_bracket(HOPF),
        ),
    ];
    let failed: Vec<&str> = conditions.iter().filter(|c| !c.1).map(|c| c.0).collect();
    check(failed.is_empty(), format!("right trefoil {right}; failed {failed:?}"))
}

#[derive(Deserialize)]
struct AdmissibilityFixture {
    accepted: Vec<FlowClassDescriptor>,
    perturbed: Vec<FlowClassDescriptor>,
}

fn admissibility_table() -> Report {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/admissibility.json")).unwrap();
    let fx: AdmissibilityFixture = serde_json::from_str(&text).unwrap();
    let accepted = fx.accepted.iter().filter(|d| check_admissibility(d)).count();
    let rejected = fx.perturbed.iter().filter(|d| !check_admissibility(d)).count();
    let morse_ok = fx
        .accepted
        .iter()
        .filter(|d| morse_equality(d).is_some_and(|m| m.holds && m.rhs == d.manifold.euler_characteristic()))
        .count();
    let pass = accepted == fx.accepted.len() && rejected == 20 && fx.perturbed.len() == 20 && morse_ok == accepted;
    check(
        pass,
        format!(
            "accepted {accepted}/{}, rejected {rejected}/{}, Morse equality {morse_ok}/{}",
            fx.accepted.len(),
            fx.perturbed.len(),
            fx.accepted.len()
        ),
    )
}

fn soundness_fuzz() -> Report {
    let opts = ClassifyOptions::default();
    let mut counts = [0usize; 3];
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = if seed % 4 == 3 {
            gen_k5_scheme(rng.gen_range(0..4)).unwrap()
        } else {
            k4(rng.gen_range(0..3), rng.gen_range(0..3))
        };
        let steps = rng.gen_range(1..=6);
        let p = perturb_scheme(&s, steps, s.diagram().num_crossings() + 4, &mut rng).unwrap();
        let v = classify(&s, &p, &opts).unwrap();
        counts[v.result.exit_code() as usize] += 1;
    }
    check(
        counts[1] == 0,
        format!(
            "100 pairs: {} equivalent, {} nonequivalent, {} unknown",
            counts[0], counts[1], counts[2]
        ),
    )
}

fn single_intersection_rule() -> Report {
    let mut schemes: Vec<Scheme> = (0..=4).map(|i| k4(0, i)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..=2 {
        let s = k4(0, i);
        schemes.push(perturb_scheme(&s, 3, s.diagram().num_crossings() + 4, &mut rng).unwrap());
    }
    let opts = ClassifyOptions::default();
    let (mut pairs, mut good) = (0, 0);
    for a in 0..schemes.len() {
        for b in 0..schemes.len() {
            if a == b || schemes[a].diagram() == schemes[b].diagram() {
                continue;
            }
            pairs += 1;
            let v = classify(&schemes[a], &schemes[b], &opts).unwrap();
            if v.result == VerdictResult::Equivalent && v.certificate == Certificate::SingleIntersection {
                good += 1;
            }
        }
    }
    check(pairs > 0 && good == pairs, format!("{good}/{pairs} pairs EQUIVALENT by SingleIntersection"))
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, fn() -> Report, Duration);
    let criteria: [Criterion; 8] = [
        ("1 parity reproduction", parity_reproduction, Duration::from_secs(1)),
        ("2 k=5 classifier", k5_classifier, Duration::from_secs(1)),
        ("3 countable family", countable_family, Duration::from_secs(60)),
        ("4 jones invariance", jones_invariance, Duration::from_secs(30)),
        ("5 fixture values", fixture_values, Duration::MAX),
        ("6 admissibility table", admissibility_table, Duration::MAX),
        ("7 soundness fuzz", soundness_fuzz, Duration::MAX),
        ("8 single intersection rule", single_intersection_rule, Duration::MAX),
    ];
    let mut failed = Vec::new();
    let stdout = std::io::stdout();
    for (name, run, limit) in criteria {
        let t0 = Instant::now();
        let r = run();
        let elapsed = t0.elapsed();
        let in_time = elapsed < limit;
        let pass = r.pass && in_time;
        let budget = if limit == Duration::MAX {
            String::new()
        } else {
            format!(", limit {limit:?}")
        };
        let _ = writeln!(
            stdout.lock(),
            "criterion {name}: {} ({}; {elapsed:.2?}{budget})",
            if pass { "PASS" } else { "FAIL" },
            r.detail
        );
        if !pass {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
