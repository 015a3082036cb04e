//! The acceptance criteria as executable checks. Each criterion produces a
//! report of named expected/actual comparisons; known, explained failures are
//! listed alongside so that they stay visible instead of being suppressed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;
use std::path::PathBuf;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arithmetic::{
    off_ramification_lower_bound, required_point_count, unirationality_threshold, ArithmeticCase, DEFAULT_HORIZON,
};
use crate::classes::tables::check_reference_tables;
use crate::classes::ClassCatalog;
use crate::configuration::{orbit_fingerprint, registry_entries, registry_representative, Configuration, GaloisData};
use crate::curves::figures::{check_figure, FIGURES, KNOWN_MISMATCHES, UNDRAWN_TARGETS};
use crate::curves::{
    classes_meeting, derive_configuration, derive_pair_curves_at, eckardt_quadruples, free_minus1_curves, pair_classes,
    reduce_in_order, reduce_to_minus1, ExceptionalCase,
};
use crate::lattice::{DivisorClass, SurfaceLattice};
use crate::weyl::{simple_roots, DeltaKind, TraceFilter, WeylGroup};

/// Titles of criteria 1 to 11.
pub const CRITERIA: [&str; 11] = [
    "class counts",
    "intersection tables regenerated",
    "intersection ranges and the anticanonical pairing",
    "twelve classes per root and their pairing",
    "pair classes of orthogonal roots",
    "pair derivation independent of root choice",
    "free (-1)-curve counts and required points",
    "configuration graphs and contraction targets",
    "W(E7) order, transitivity and trace sets",
    "unirationality thresholds",
    "randomized property suites",
];

/// Number of 4-sets of pre(-1) classes meeting pairwise once.
pub const ECKARDT_QUADRUPLES: usize = 630;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub skip_weyl: bool,
    pub cache_dir: Option<PathBuf>,
    pub property_trials: usize,
    pub seed: u64,
    pub threshold_horizon: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            skip_weyl: false,
            cache_dir: None,
            property_trials: 1000,
            seed: 0x5eed,
            threshold_horizon: DEFAULT_HORIZON,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

impl Check {
    fn eq<T: PartialEq + Debug>(name: impl Into<String>, expected: T, actual: T) -> Self {
        Self {
            name: name.into(),
            passed: expected == actual,
            expected: format!("{expected:?}"),
            actual: format!("{actual:?}"),
        }
    }

    fn subset(name: impl Into<String>, allowed: &[i64], found: &BTreeSet<i64>) -> Self {
        let allowed: BTreeSet<i64> = allowed.iter().copied().collect();
        Self {
            name: name.into(),
            expected: format!("subset of {allowed:?}"),
            actual: format!("{found:?}"),
            passed: found.is_subset(&allowed),
        }
    }

    fn holds(name: impl Into<String>, expected: &str, failures: Vec<String>) -> Self {
        let passed = failures.is_empty();
        let actual = if passed {
            expected.to_string()
        } else {
            let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
            format!("{} failure(s): {}", failures.len(), shown.join("; "))
        };
        Self {
            name: name.into(),
            expected: expected.to_string(),
            actual,
            passed,
        }
    }
}

/// A failing check with a recorded explanation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KnownIssue {
    pub check: String,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub status: Status,
    pub checks: Vec<Check>,
    pub known_issues: Vec<KnownIssue>,
    #[serde(skip)]
    pub seconds: f64,
}

impl CriterionReport {
    pub fn failing_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// One line: id, status, title, timing and a failure summary.
    pub fn summary_line(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let mut line = format!(
            "criterion {:>2} {status} {} ({:.2}s)",
            self.id, self.title, self.seconds
        );
        let failing: Vec<&str> = self.failing_checks().map(|c| c.name.as_str()).collect();
        if !failing.is_empty() {
            line.push_str(&format!(": failing {}", failing.join(", ")));
            let known: Vec<&str> = self.known_issues.iter().map(|k| k.check.as_str()).collect();
            if !known.is_empty() {
                line.push_str(&format!(" [known: {}]", known.join(", ")));
            }
        }
        line
    }
}

/// Runs all criteria in order, cheap ones first.
pub fn verify_all(opts: &VerifyOptions) -> Vec<CriterionReport> {
    (1..=11).map(|id| run_criterion(id, opts)).collect()
}

/// Runs a single criterion (1 to 11).
pub fn run_criterion(id: u8, opts: &VerifyOptions) -> CriterionReport {
    assert!((1..=11).contains(&id), "criteria are numbered 1 to 11");
    let start = Instant::now();
    let cat = ClassCatalog::degree_two();
    let mut known = Vec::new();
    let checks = match id {
        1 => class_counts(),
        2 => tables(),
        3 => ranges(&cat),
        4 => twelve_classes(&cat),
        5 => orthogonal_pairs(&cat),
        6 => choice_independence(&cat),
        7 => free_counts(&cat),
        8 => {
            let (checks, issues) = figures(&cat);
            known = issues;
            checks
        }
        9 if opts.skip_weyl => Vec::new(),
        9 => weyl(&cat, opts),
        10 => thresholds(opts.threshold_horizon),
        _ => properties(&cat, opts),
    };
    let status = if id == 9 && opts.skip_weyl {
        Status::Skipped
    } else if checks.iter().all(|c| c.passed) {
        Status::Pass
    } else {
        Status::Fail
    };
    CriterionReport {
        id,
        title: CRITERIA[id as usize - 1],
        status,
        checks,
        known_issues: known,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn class_counts() -> Vec<Check> {
    let r7 = ClassCatalog::degree_two();
    let r8 = ClassCatalog::new(SurfaceLattice::new(8).expect("rank 8 is supported"));
    let k8 = r8.canonical_class();
    let mut bad = Vec::new();
    for e in r8.pre_minus1() {
        let partner = &k8.scale(-2) - e;
        if partner.square() != -1 || partner.dot(&k8) != -1 || r8.pre_index(&partner).is_none() {
            bad.push(format!("{e}"));
        }
    }
    vec![
        Check::eq("pre(-1) classes at rank 7", 56, r7.pre_minus1().len()),
        Check::eq("roots at rank 7", 126, r7.roots().len()),
        Check::eq("pre(-1) classes at rank 8", 240, r8.pre_minus1().len()),
        Check::holds("-2K - E is a pre(-1) class at rank 8", "all 240", bad),
    ]
}

fn tables() -> Vec<Check> {
    let t = check_reference_tables();
    vec![
        Check::eq("mismatched published cells", 0, t.mismatches.len()),
        Check {
            name: "cells compared".into(),
            expected: "> 0".into(),
            actual: t.cells.to_string(),
            passed: t.cells > 0,
        },
        Check {
            name: "member pairs evaluated".into(),
            expected: "> 0".into(),
            actual: format!(
                "{} ({} uncovered pattern(s) reported separately)",
                t.pairs_checked,
                t.uncovered.len()
            ),
            passed: t.pairs_checked > 0,
        },
    ]
}

fn ranges(cat: &ClassCatalog) -> Vec<Check> {
    let pre = cat.pre_minus1();
    let roots = cat.roots();
    let neg_k = -&cat.canonical_class();
    let mut pre_pre = BTreeSet::new();
    let mut equivalence = Vec::new();
    for (i, a) in pre.iter().enumerate() {
        for (j, b) in pre.iter().enumerate() {
            if i != j {
                pre_pre.insert(a.dot(b));
            }
            if (a.dot(b) == 2) != ((a + b) == neg_k) {
                equivalence.push(format!("{a} {b}"));
            }
        }
    }
    let all_pre: BTreeSet<i64> = pre.iter().flat_map(|a| pre.iter().map(move |b| a.dot(b))).collect();
    let pre_root: BTreeSet<i64> = pre.iter().flat_map(|a| roots.iter().map(move |r| a.dot(r))).collect();
    let root_root: BTreeSet<i64> = roots.iter().flat_map(|a| roots.iter().map(move |b| a.dot(b))).collect();
    vec![
        Check::subset("pre(-1) x pre(-1)", &[-1, 0, 1, 2], &all_pre),
        Check::subset("distinct pre(-1) classes", &[0, 1, 2], &pre_pre),
        Check::subset("pre(-1) x roots", &[-1, 0, 1], &pre_root),
        Check::subset("roots x roots (class level)", &[-2, -1, 0, 1, 2], &root_root),
        Check::holds("product 2 iff sum is -K (56 x 56)", "holds", equivalence),
    ]
}

fn twelve_classes(cat: &ClassCatalog) -> Vec<Check> {
    let neg_k = -&cat.canonical_class();
    let mut counts = Vec::new();
    let mut pairing = Vec::new();
    for f in cat.roots() {
        let sizes = [1, -1, 0].map(|v| classes_meeting(f, v, cat).len());
        if sizes != [12, 12, 32] {
            counts.push(format!("{f}: {sizes:?}"));
        }
        let twelve = classes_meeting(f, 1, cat);
        let target = &neg_k - f;
        for d in &twelve {
            let partners: Vec<&DivisorClass> = twelve.iter().filter(|e| e.dot(d) == 1).collect();
            let ok = partners.len() == 1 && partners[0] != d && (d + partners[0]) == target;
            if !ok {
                pairing.push(format!("{d} against {f}"));
            }
        }
    }
    vec![
        Check::holds("12 / 12 / 32 classes with value 1 / -1 / 0", "every root", counts),
        Check::holds("fixed-point-free matching D -> -K - F - D", "every root", pairing),
    ]
}

const PAIR_EXAMPLES: [(&str, &str, [&str; 2]); 6] = [
    ("A'12", "A'34", ["B13", "C24"]),
    ("A'12", "B'123", ["A2", "C23"]),
    ("A'12", "B'345", ["B16", "B17"]),
    ("A'12", "C'3", ["A2", "B13"]),
    ("B'123", "B'145", ["A1", "B67"]),
    ("B'123", "C'1", ["A2", "A3"]),
];

fn orthogonal_pairs(cat: &ClassCatalog) -> Vec<Check> {
    let neg_k = -&cat.canonical_class();
    let mut bad = Vec::new();
    let mut count = 0;
    for f in cat.roots() {
        for g in cat.roots() {
            if f.dot(g) != 0 {
                continue;
            }
            count += 1;
            match pair_classes(f, g, cat) {
                Ok((d1, d2)) => {
                    if d1.dot(&d2) != 0 || (&d1 + &d2) != (&(&neg_k - f) - g) {
                        bad.push(format!("{f} {g}"));
                    }
                }
                Err(e) => bad.push(e.to_string()),
            }
        }
    }
    let mut checks = vec![
        Check::eq("ordered orthogonal root pairs", 126 * 60, count),
        Check::holds(
            "two disjoint classes summing to -K - F - G",
            "every orthogonal pair",
            bad,
        ),
    ];
    for (f, g, want) in PAIR_EXAMPLES {
        let expected: BTreeSet<String> = want.iter().map(|s| s.to_string()).collect();
        let actual = cat
            .named(f)
            .and_then(|fc| cat.named(g).map(|gc| (fc, gc)))
            .map_err(|e| e.to_string())
            .and_then(|(fc, gc)| pair_classes(&fc, &gc, cat).map_err(|e| e.to_string()))
            .map(|(a, b)| [a, b].iter().map(|c| cat.label(c)).collect::<BTreeSet<String>>());
        checks.push(Check::eq(format!("pair classes of {f}, {g}"), Ok(expected), actual));
    }
    checks
}

fn representatives(cat: &ClassCatalog) -> Vec<(String, Result<Configuration, String>)> {
    registry_entries()
        .iter()
        .map(|e| {
            let name = match e.variant {
                Some(v) => format!("{} ({v})", e.type_name),
                None => e.type_name.to_string(),
            };
            (name, e.configuration(cat).map_err(|err| err.to_string()))
        })
        .collect()
}

fn choice_independence(cat: &ClassCatalog) -> Vec<Check> {
    let mut bad = Vec::new();
    let mut checked = 0;
    for (name, cfg) in representatives(cat) {
        let cfg = match cfg {
            Ok(c) if c.delta() >= 2 => c,
            Ok(_) => continue,
            Err(e) => {
                bad.push(format!("{name}: {e}"));
                continue;
            }
        };
        checked += 1;
        let comps = cfg.components();
        for i in 0..comps.len() {
            for j in i + 1..comps.len() {
                let mut results = BTreeSet::new();
                for &f in &comps[i].roots {
                    for &g in &comps[j].roots {
                        match derive_pair_curves_at(&cfg, cat, f, g) {
                            Ok(r) => {
                                results.insert(r);
                            }
                            Err(e) => bad.push(format!("{name}: {e}")),
                        }
                    }
                }
                if results.len() > 1 {
                    bad.push(format!(
                        "{name}: components {i}, {j} give {} different results",
                        results.len()
                    ));
                }
            }
        }
    }
    vec![
        Check {
            name: "representatives with two or more points".into(),
            expected: "> 0".into(),
            actual: checked.to_string(),
            passed: checked > 0,
        },
        Check::holds("same curves for every choice of roots", "every component pair", bad),
    ]
}

fn free_counts(cat: &ClassCatalog) -> Vec<Check> {
    let cases = [
        (ArithmeticCase::One, None),
        (ArithmeticCase::Two, None),
        (ArithmeticCase::Three, Some("no-L315-curve")),
    ];
    let mut checks = Vec::new();
    let quads = eckardt_quadruples(cat);
    let quads_ok = quads.as_ref().map(|q| q.len()).map_err(|e| e.to_string());
    checks.push(Check::eq(
        "Eckardt quadruples (each sums to -2K)",
        Ok(ECKARDT_QUADRUPLES),
        quads_ok,
    ));
    // Largest family of classes meeting pairwise once: a quadruple that no fifth class extends.
    let p = cat.pre_minus1();
    let extendable = quads
        .unwrap_or_default()
        .iter()
        .filter(|q| (0..p.len()).any(|x| !q.contains(&x) && q.iter().all(|&y| p[x].dot(&p[y]) == 1)))
        .count();
    checks.push(Check::eq("quadruples extendable to five", 0, extendable));
    let per_point = 4;
    for (case, variant) in cases {
        let free = registry_representative(&case.type_name().parse().expect("case types parse"), variant, cat)
            .map(|cfg| free_minus1_curves(&cfg, cat).len())
            .map_err(|e| e.to_string());
        checks.push(Check::eq(
            format!("free curves, case {case}"),
            Ok(case.free_minus1_count() as usize),
            free.clone(),
        ));
        let derived_n = free.map(|n| n / per_point + 1);
        checks.push(Check::eq(
            format!("required points, case {case}"),
            Ok(required_point_count(case) as usize),
            derived_n,
        ));
    }
    checks
}

fn figures(cat: &ClassCatalog) -> (Vec<Check>, Vec<KnownIssue>) {
    let mut checks = Vec::new();
    let mut covered: BTreeSet<(String, Option<String>)> = BTreeSet::new();
    for f in FIGURES {
        match check_figure(f, cat) {
            Ok(results) => {
                for r in results {
                    covered.insert((f.type_name.to_string(), r.variant.map(str::to_string)));
                    let name = match r.variant {
                        Some(v) => format!("{} {} ({v})", f.case, f.type_name),
                        None => format!("{} {}", f.case, f.type_name),
                    };
                    checks.push(Check {
                        passed: r.passed(f),
                        name,
                        expected: format!("isomorphic, degree {}, {}", f.degree, f.target),
                        actual: format!(
                            "{}, degree {}, {}",
                            if r.isomorphic { "isomorphic" } else { "not isomorphic" },
                            r.degree,
                            r.target
                        ),
                    });
                }
            }
            Err(e) => checks.push(Check {
                name: f.case.to_string(),
                expected: "derivation".into(),
                actual: e.to_string(),
                passed: false,
            }),
        }
    }
    for &(ty, curves, degree, target) in UNDRAWN_TARGETS {
        covered.insert((ty.to_string(), None));
        let actual = ty
            .parse()
            .map_err(|e: crate::configuration::ConfigError| e.to_string())
            .and_then(|t| registry_representative(&t, None, cat).map_err(|e| e.to_string()))
            .and_then(|cfg| derive_configuration(&cfg, cat).map_err(|e| e.to_string()))
            .map(|g| (g.curves.len(), g.target.degree, g.target.singularities.to_string()));
        checks.push(Check::eq(
            format!("{ty}: contracted curves, degree, target"),
            Ok((curves, degree, target.to_string())),
            actual,
        ));
    }
    let minimal = [
        (
            "A1",
            None,
            GaloisData {
                orbits: vec![vec![0]],
                ..Default::default()
            },
            ExceptionalCase::One,
        ),
        (
            "A2",
            None,
            GaloisData {
                orbits: vec![vec![0]],
                a2_conjugate_components: BTreeSet::from([0]),
            },
            ExceptionalCase::Two,
        ),
        (
            "4A1",
            Some("no-L315-curve"),
            GaloisData {
                orbits: vec![vec![0, 1, 2, 3]],
                ..Default::default()
            },
            ExceptionalCase::Three,
        ),
    ];
    for (ty, variant, galois, case) in minimal {
        covered.insert((ty.to_string(), variant.map(str::to_string)));
        let actual = ty
            .parse()
            .map_err(|e: crate::configuration::ConfigError| e.to_string())
            .and_then(|t| registry_representative(&t, variant, cat).map_err(|e| e.to_string()))
            .and_then(|cfg| cfg.with_galois(galois).map_err(|e| e.to_string()))
            .and_then(|cfg| derive_configuration(&cfg, cat).map_err(|e| e.to_string()))
            .map(|g| (g.minimal, g.curves.len()));
        checks.push(Check::eq(
            format!("{ty}: minimal, nothing contracted"),
            Ok((Some(case), 0)),
            actual,
        ));
    }
    let missing: Vec<String> = registry_entries()
        .iter()
        .filter(|e| !covered.contains(&(e.type_name.to_string(), e.variant.map(str::to_string))))
        .map(|e| format!("{} {:?}", e.type_name, e.variant))
        .collect();
    checks.push(Check::holds("every registry variant compared", "all covered", missing));
    let issues = KNOWN_MISMATCHES
        .iter()
        .flat_map(|&(case, reason)| {
            checks
                .iter()
                .filter(move |c| !c.passed && c.name.starts_with(&format!("{case} ")))
                .map(move |c| KnownIssue {
                    check: c.name.clone(),
                    reason: reason.to_string(),
                })
        })
        .collect();
    (checks, issues)
}

fn weyl(cat: &ClassCatalog, opts: &VerifyOptions) -> Vec<Check> {
    let group = match WeylGroup::load_or_generate(cat, opts.cache_dir.as_deref()) {
        Ok(g) => g,
        Err(e) => {
            return vec![Check {
                name: "group closure".into(),
                expected: "2903040 elements".into(),
                actual: e.to_string(),
                passed: false,
            }]
        }
    };
    let mut checks = vec![Check::eq("order", 2_903_040, group.order())];
    checks.push(Check::eq(
        "126 x root stabilizer",
        2_903_040,
        126 * group.stabilizer_size(0),
    ));
    let hist = group.trace_histogram();
    checks.push(Check::eq(
        "least trace and its multiplicity",
        Some((-6, 1)),
        hist.iter().next().map(|(&t, &n)| (t, n)),
    ));

    let deltas = group.delta_sets();
    checks.push(Check::eq("|Delta|", 126, deltas.roots.len()));
    let per_root = (0..126u8).filter(|&b| group.action().roots_dot(0, b) == 1).count();
    checks.push(Check::eq(
        "|Delta_2| = 126 x roots with product 1",
        126 * per_root,
        deltas.pairs.len(),
    ));
    checks.push(Check {
        name: "|Delta_3|".into(),
        expected: "nonempty".into(),
        actual: deltas.quadruples.len().to_string(),
        passed: !deltas.quadruples.is_empty(),
    });
    for (kind, name) in [
        (DeltaKind::Roots, "Delta"),
        (DeltaKind::Pairs, "Delta_2"),
        (DeltaKind::Quadruples, "Delta_3"),
    ] {
        checks.push(Check::eq(
            format!("transitive on {name}"),
            true,
            group.verify_transitivity(&deltas, kind),
        ));
    }
    if deltas.quadruples.is_empty() {
        return checks;
    }

    let expected: [BTreeSet<i64>; 3] = [
        BTreeSet::from([-4, -2, -1, 0, 1, 2, 3, 4, 5, 6, 8]),
        BTreeSet::from([-4, -2, -1, 0, 1, 2]),
        BTreeSet::from([0, 2]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut filters = vec![
        TraceFilter::FixesRoot(0),
        TraceFilter::SwapsPair(deltas.pairs[0]),
        TraceFilter::CyclesQuadruple(deltas.quadruples[0]),
    ];
    for _ in 0..5 {
        filters.push(TraceFilter::FixesRoot(rng.gen_range(0..126)));
        filters.push(TraceFilter::SwapsPair(
            *deltas.pairs.choose(&mut rng).expect("nonempty"),
        ));
        filters.push(TraceFilter::CyclesQuadruple(
            *deltas.quadruples.choose(&mut rng).expect("nonempty"),
        ));
    }
    match group.trace_sets(&filters) {
        Ok(results) => {
            let names = ["fixing a root", "swapping a pair", "cycling a quadruple"];
            for kind in 0..3 {
                let default = &results[kind];
                checks.push(Check::eq(
                    format!("traces {} (default witness)", names[kind]),
                    expected[kind].clone(),
                    default.traces.clone(),
                ));
                let others: BTreeSet<BTreeSet<i64>> = results
                    .iter()
                    .skip(3)
                    .skip(kind)
                    .step_by(3)
                    .map(|r| r.traces.clone())
                    .collect();
                checks.push(Check::eq(
                    format!("traces {} (5 random witnesses)", names[kind]),
                    BTreeSet::from([expected[kind].clone()]),
                    others,
                ));
            }
            for (case, kind) in [
                (ArithmeticCase::One, 0),
                (ArithmeticCase::Two, 1),
                (ArithmeticCase::Three, 2),
            ] {
                checks.push(Check::eq(
                    format!("least trace of case {case}"),
                    Some(case.min_trace()),
                    results[kind].traces.first().copied(),
                ));
            }
        }
        Err(e) => checks.push(Check {
            name: "trace sets".into(),
            expected: "computed".into(),
            actual: e.to_string(),
            passed: false,
        }),
    }
    checks
}

fn thresholds(horizon: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    for (case, boundary) in [
        (ArithmeticCase::One, 8),
        (ArithmeticCase::Two, 7),
        (ArithmeticCase::Three, 3),
    ] {
        match unirationality_threshold(case, horizon) {
            Ok(t) => {
                checks.push(Check::eq(
                    format!("threshold, case {case}"),
                    case.stated_threshold(),
                    t.threshold,
                ));
                checks.push(Check::eq(
                    format!("boundary failure, case {case}"),
                    Some(boundary),
                    t.boundary_failure,
                ));
                checks.push(Check::eq(
                    format!("tail beyond {horizon}, case {case}"),
                    true,
                    t.tail_certified,
                ));
            }
            Err(e) => checks.push(Check {
                name: format!("threshold, case {case}"),
                expected: "computed".into(),
                actual: e.to_string(),
                passed: false,
            }),
        }
    }
    let waypoints = [
        (9, ArithmeticCase::One, false, 14),
        (16, ArithmeticCase::One, true, 144),
        (9, ArithmeticCase::Two, false, 24),
        (8, ArithmeticCase::Two, true, 16),
        (5, ArithmeticCase::Three, false, 14),
        (4, ArithmeticCase::Three, true, 8),
    ];
    for (q, case, char2, want) in waypoints {
        checks.push(Check::eq(
            format!("points off the ramification curve, q = {q}, case {case}"),
            Ok(want),
            off_ramification_lower_bound(q, case, char2),
        ));
    }
    checks
}

fn random_class(rng: &mut ChaCha8Rng, rank: usize) -> DivisorClass {
    DivisorClass::new((0..=rank).map(|_| rng.gen_range(-6..=6)).collect())
}

fn random_word(
    rng: &mut ChaCha8Rng,
    lat: SurfaceLattice,
    x: &DivisorClass,
    simple: &[DivisorClass],
    len: usize,
) -> DivisorClass {
    (0..len).fold(x.clone(), |acc, _| {
        lat.reflect(&acc, simple.choose(rng).expect("seven generators"))
            .expect("simple roots are roots")
    })
}

fn properties(cat: &ClassCatalog, opts: &VerifyOptions) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let n = opts.property_trials;
    let lat = cat.lattice();
    let k = cat.canonical_class();
    let reps: Vec<(String, Configuration)> = representatives(cat)
        .into_iter()
        .filter_map(|(n, c)| c.ok().map(|c| (n, c)))
        .collect();

    let mut reflection = Vec::new();
    for _ in 0..n {
        let (x, y) = (random_class(&mut rng, 7), random_class(&mut rng, 7));
        let r = cat.roots().choose(&mut rng).expect("roots exist");
        let sx = lat.reflect(&x, r).expect("valid root");
        let sy = lat.reflect(&y, r).expect("valid root");
        if lat.reflect(&sx, r).as_ref() != Ok(&x) || sx.dot(&sy) != x.dot(&y) || lat.reflect(&k, r).as_ref() != Ok(&k) {
            reflection.push(format!("{x} in {r}"));
        }
    }

    let mut reduction = Vec::new();
    for _ in 0..n {
        let (name, cfg) = reps.choose(&mut rng).expect("registry is nonempty");
        let d = cat.pre_minus1().choose(&mut rng).expect("classes exist");
        let mut order: Vec<usize> = (0..cfg.simple_roots().len()).collect();
        order.shuffle(&mut rng);
        match (reduce_to_minus1(d, cfg, cat), reduce_in_order(d, cfg, cat, &order)) {
            (Ok(a), Ok(b)) => {
                let sum = b
                    .removed
                    .iter()
                    .fold(b.curve.clone(), |acc, &i| &acc + &cfg.simple_roots()[i]);
                if a.curve != b.curve || &sum != d || a.removed.len() != b.removed.len() {
                    reduction.push(format!("{name}: {d}"));
                }
            }
            (Err(e), _) | (_, Err(e)) => reduction.push(format!("{name}: {e}")),
        }
    }

    let mut contraction = Vec::new();
    for _ in 0..n {
        let mut pool: Vec<&DivisorClass> = cat.pre_minus1().iter().collect();
        pool.shuffle(&mut rng);
        let want = rng.gen_range(0..=6);
        let mut curves: Vec<DivisorClass> = Vec::new();
        for c in pool {
            if curves.len() < want && curves.iter().all(|e| e.dot(c) == 0) {
                curves.push(c.clone());
            }
        }
        let c = match lat.blow_down(&curves) {
            Ok(c) => c,
            Err(e) => {
                contraction.push(e.to_string());
                continue;
            }
        };
        let pushed = |x: &DivisorClass| curves.iter().fold(x.clone(), |acc, e| acc.add_scaled(x.dot(e), e));
        let (x, y) = (random_class(&mut rng, 7), random_class(&mut rng, 7));
        let ok = match (c.project(&x), c.project(&y)) {
            (Ok(px), Ok(py)) => c.target.intersect(&px, &py) == pushed(&x).dot(&pushed(&y)),
            _ => false,
        } && c.project(&k).ok() == Some(c.target.canonical_class());
        if !ok {
            contraction.push(format!("{} curves, {x}, {y}", curves.len()));
        }
    }

    let simple = simple_roots();
    let mut invariance = Vec::new();
    for _ in 0..n {
        let (name, cfg) = reps.choose(&mut rng).expect("registry is nonempty");
        let len = rng.gen_range(1..=40);
        let seed: u64 = rng.gen();
        // One word applied to every root: reseed per root so all see the same reflections.
        let image: Vec<DivisorClass> = cfg
            .simple_roots()
            .iter()
            .map(|r| random_word(&mut ChaCha8Rng::seed_from_u64(seed), lat, r, &simple, len))
            .collect();
        match Configuration::new(lat, image) {
            Ok(img) if orbit_fingerprint(&img, cat) == orbit_fingerprint(cfg, cat) => {}
            Ok(_) => invariance.push(format!("{name}: fingerprint changed")),
            Err(e) => invariance.push(format!("{name}: {e}")),
        }
    }

    let label = |what: &str| format!("{what} ({n} trials)");
    vec![
        Check::holds(
            label("reflection is an isometric involution fixing K"),
            "all trials",
            reflection,
        ),
        Check::holds(
            label("reduction is order independent and D = E + removed"),
            "all trials",
            reduction,
        ),
        Check::holds(
            label("contraction preserves products of push-forwards"),
            "all trials",
            contraction,
        ),
        Check::holds(label("fingerprint is Weyl invariant"), "all trials", invariance),
    ]
}

/// Names of failing checks, grouped by criterion.
pub fn failures(reports: &[CriterionReport]) -> BTreeMap<u8, Vec<String>> {
    reports
        .iter()
        .filter(|r| r.status == Status::Fail)
        .map(|r| (r.id, r.failing_checks().map(|c| c.name.clone()).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_criteria_pass() {
        let opts = VerifyOptions {
            property_trials: 50,
            threshold_horizon: 2000,
            ..Default::default()
        };
        for id in [1, 2, 3, 4, 5, 6, 7, 10, 11] {
            let r = run_criterion(id, &opts);
            assert_eq!(r.status, Status::Pass, "{}", r.summary_line());
        }
    }

    #[test]
    fn skipped_weyl_is_reported() {
        let opts = VerifyOptions {
            skip_weyl: true,
            ..Default::default()
        };
        let r = run_criterion(9, &opts);
        assert_eq!(r.status, Status::Skipped);
        assert!(r.summary_line().contains("SKIP"));
    }

    #[test]
    fn figure_failures_are_exactly_the_known_ones() {
        let r = run_criterion(8, &VerifyOptions::default());
        let failing: Vec<String> = r.failing_checks().map(|c| c.name.clone()).collect();
        let known: Vec<String> = r.known_issues.iter().map(|k| k.check.clone()).collect();
        assert_eq!(failing, known);
        assert_eq!(known.len(), KNOWN_MISMATCHES.len());
    }
}
