//! (-1)-curves relative to a configuration: honesty test, reduction of
//! pre(-1) classes, the curves attached to pairs and triples of singular
//! points, and the derived contraction of every singularity type.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::canon::ColoredGraph;
use crate::classes::ClassCatalog;
use crate::configuration::{classify_dynkin, AdeKind, AdeLabel, ConfigError, Configuration, SingularityType};
use crate::lattice::{Contraction, DivisorClass, LatticeError, TargetLattice};

pub mod figures;

/// Upper bound on reduction steps (the number of positive roots of E7).
pub const REDUCTION_CAP: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0} is not a pre(-1) class")]
    NotPreMinusOne(DivisorClass),
    #[error("{0} is not a root")]
    NotARoot(DivisorClass),
    #[error("roots {0} and {1} are not orthogonal")]
    NotOrthogonal(DivisorClass, DivisorClass),
    #[error("expected exactly two classes meeting {0} and {1}, found {2}")]
    PairCount(DivisorClass, DivisorClass, usize),
    #[error("components {0} and {1} must differ")]
    SameComponent(usize, usize),
    #[error("reduction of {0} did not terminate within {REDUCTION_CAP} steps")]
    NonTermination(DivisorClass),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
}

/// A pre(-1) class is an honest (-1)-curve iff it meets no simple root negatively.
pub fn is_minus1_curve(d: &DivisorClass, cfg: &Configuration, cat: &ClassCatalog) -> Result<bool, GeometryError> {
    if cat.pre_index(d).is_none() {
        return Err(GeometryError::NotPreMinusOne(d.clone()));
    }
    Ok(cfg.simple_roots().iter().all(|f| d.dot(f) >= 0))
}

/// Result of stripping (-2)-curves off a pre(-1) class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub curve: DivisorClass,
    /// Indices of the subtracted simple roots, in subtraction order.
    pub removed: Vec<usize>,
}

/// Repeatedly subtracts a simple root meeting the current class with value -1,
/// lowest catalog index first.
pub fn reduce_to_minus1(d: &DivisorClass, cfg: &Configuration, cat: &ClassCatalog) -> Result<Reduction, GeometryError> {
    let mut order: Vec<usize> = (0..cfg.simple_roots().len()).collect();
    order.sort_by_key(|&i| cat.root_index(&cfg.simple_roots()[i]));
    reduce_in_order(d, cfg, cat, &order)
}

/// Reduction trying simple roots in the given priority order.
pub fn reduce_in_order(
    d: &DivisorClass,
    cfg: &Configuration,
    cat: &ClassCatalog,
    order: &[usize],
) -> Result<Reduction, GeometryError> {
    if cat.pre_index(d).is_none() {
        return Err(GeometryError::NotPreMinusOne(d.clone()));
    }
    let roots = cfg.simple_roots();
    let mut cur = d.clone();
    let mut removed = Vec::new();
    while let Some(&i) = order.iter().find(|&&i| cur.dot(&roots[i]) == -1) {
        if removed.len() == REDUCTION_CAP {
            return Err(GeometryError::NonTermination(d.clone()));
        }
        cur = &cur - &roots[i];
        removed.push(i);
    }
    if roots.iter().any(|f| cur.dot(f) < 0) || cat.pre_index(&cur).is_none() {
        return Err(GeometryError::Postcondition(format!("reduction of {d} ended at {cur}")));
    }
    Ok(Reduction { curve: cur, removed })
}

/// All pre(-1) classes meeting `f` with the given value.
pub fn classes_meeting(f: &DivisorClass, value: i64, cat: &ClassCatalog) -> Vec<DivisorClass> {
    cat.pre_minus1().iter().filter(|d| d.dot(f) == value).cloned().collect()
}

/// The two pre(-1) classes meeting both of two orthogonal roots once.
pub fn pair_classes(
    f: &DivisorClass,
    g: &DivisorClass,
    cat: &ClassCatalog,
) -> Result<(DivisorClass, DivisorClass), GeometryError> {
    for r in [f, g] {
        if cat.root_index(r).is_none() {
            return Err(GeometryError::NotARoot(r.clone()));
        }
    }
    if f.dot(g) != 0 || f == g {
        return Err(GeometryError::NotOrthogonal(f.clone(), g.clone()));
    }
    let both: Vec<DivisorClass> = cat
        .pre_minus1()
        .iter()
        .filter(|d| d.dot(f) == 1 && d.dot(g) == 1)
        .cloned()
        .collect();
    match both.as_slice() {
        [a, b] => Ok((a.clone(), b.clone())),
        _ => Err(GeometryError::PairCount(f.clone(), g.clone(), both.len())),
    }
}

/// Reduces both pair classes of the roots `fi`, `gi` (indices into the simple
/// roots) and returns the distinct results, sorted.
pub fn derive_pair_curves_at(
    cfg: &Configuration,
    cat: &ClassCatalog,
    fi: usize,
    gi: usize,
) -> Result<Vec<DivisorClass>, GeometryError> {
    let s = cfg.simple_roots();
    let (d1, d2) = pair_classes(&s[fi], &s[gi], cat)?;
    let e1 = reduce_to_minus1(&d1, cfg, cat)?.curve;
    let e2 = reduce_to_minus1(&d2, cfg, cat)?.curve;
    let p = e1.dot(&e2);
    if !(p == 0 || (p == -1 && e1 == e2)) {
        return Err(GeometryError::Postcondition(format!(
            "derived curves {e1} and {e2} meet with {p}"
        )));
    }
    let mut out = vec![e1, e2];
    out.sort();
    out.dedup();
    Ok(out)
}

/// Curves attached to two singular points, using the lowest root of each component.
pub fn derive_pair_curves(
    cfg: &Configuration,
    cat: &ClassCatalog,
    comp_i: usize,
    comp_j: usize,
) -> Result<Vec<DivisorClass>, GeometryError> {
    if comp_i == comp_j {
        return Err(GeometryError::SameComponent(comp_i, comp_j));
    }
    let c = cfg.components();
    derive_pair_curves_at(cfg, cat, c[comp_i].roots[0], c[comp_j].roots[0])
}

/// Honest curves meeting exactly three simple roots, all isolated (type A1).
pub fn lemma315_curves(cfg: &Configuration, cat: &ClassCatalog) -> Result<Vec<DivisorClass>, GeometryError> {
    let s = cfg.simple_roots();
    let k = cat.canonical_class();
    let isolated: Vec<bool> = (0..s.len())
        .map(|i| cfg.components()[cfg.component_of(i)].label == AdeLabel::A1)
        .collect();
    let mut out = Vec::new();
    for d in cat.pre_minus1() {
        if s.iter().any(|f| d.dot(f) < 0) {
            continue;
        }
        let hits: Vec<usize> = (0..s.len()).filter(|&i| d.dot(&s[i]) == 1).collect();
        if hits.len() != 3 || !hits.iter().all(|&i| isolated[i]) {
            continue;
        }
        let lhs = d.scale(2);
        let rhs = hits.iter().fold(-&k, |acc, &i| &acc - &s[i]);
        if lhs != rhs {
            return Err(GeometryError::Postcondition(format!("2E != -K - F1 - F2 - F3 for {d}")));
        }
        out.push(d.clone());
    }
    Ok(out)
}

/// All 4-sets of pre(-1) classes with pairwise product 1 (as catalog indices).
pub fn eckardt_quadruples(cat: &ClassCatalog) -> Result<Vec<[usize; 4]>, GeometryError> {
    let p = cat.pre_minus1();
    let n = p.len();
    let meets = |a: usize, b: usize| p[a].dot(&p[b]) == 1;
    let target = cat.canonical_class().scale(-2);
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !meets(a, b) {
                continue;
            }
            for c in b + 1..n {
                if !meets(a, c) || !meets(b, c) {
                    continue;
                }
                for d in c + 1..n {
                    if meets(a, d) && meets(b, d) && meets(c, d) {
                        let sum = &(&p[a] + &p[b]) + &(&p[c] + &p[d]);
                        if sum != target {
                            return Err(GeometryError::Postcondition(format!(
                                "quadruple {a},{b},{c},{d} does not sum to -2K"
                            )));
                        }
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Honest curves orthogonal to every simple root.
pub fn free_minus1_curves(cfg: &Configuration, cat: &ClassCatalog) -> Vec<DivisorClass> {
    cat.pre_minus1()
        .iter()
        .filter(|d| cfg.simple_roots().iter().all(|f| d.dot(f) == 0))
        .cloned()
        .collect()
}

/// Roots of a component chosen as the ends of a δ = 1 derivation: both ends
/// of an A-chain, the two short arms of D (n >= 5) and the two long arms of E6;
/// for E7 the short arm and the longest arm; all three leaves of D4.
pub fn terminal_roots(cfg: &Configuration, comp: usize) -> Vec<usize> {
    let shape = cfg.shape(comp);
    let members = &cfg.components()[comp].roots;
    let end = |arm: &Vec<usize>| members[*arm.last().expect("arms are nonempty")];
    let a = &shape.arms;
    match (shape.label.kind, shape.label.n) {
        (AdeKind::A, 1) => vec![members[0]],
        (AdeKind::A, _) => vec![members[a[0][0]], end(&a[0])],
        (AdeKind::D, 4) => a.iter().map(end).collect(),
        (AdeKind::D, _) => vec![end(&a[0]), end(&a[1])],
        (AdeKind::E, 6) => vec![end(&a[1]), end(&a[2])],
        (AdeKind::E, _) => vec![end(&a[0]), end(&a[2])],
    }
}

/// The exceptional, possibly minimal, cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExceptionalCase {
    /// A single A1 point.
    One,
    /// One A2 point whose two (-2)-curves are conjugate.
    Two,
    /// Four conjugate A1 points with no curve through three of them.
    Three,
}

impl ExceptionalCase {
    pub fn number(self) -> u8 {
        match self {
            Self::One => 1,
            Self::Two => 2,
            Self::Three => 3,
        }
    }
}

/// Image of the contraction of the derived curves.
#[derive(Debug, Clone, Serialize)]
pub struct Target {
    pub degree: i64,
    pub singularities: SingularityType,
    pub lattice: TargetLattice,
    /// Simple roots orthogonal to every contracted curve.
    pub surviving_roots: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Vertex {
    Root(usize),
    Curve(usize),
}

/// Roots, derived curves, their product-1 edges and the contraction outcome.
#[derive(Debug, Clone, Serialize)]
pub struct DerivedGraph {
    pub roots: Vec<DivisorClass>,
    /// The contraction set: pairwise disjoint honest (-1)-curves.
    pub curves: Vec<DivisorClass>,
    pub edges: Vec<(Vertex, Vertex)>,
    /// `Some` for the minimal exceptional cases, which contract nothing.
    pub minimal: Option<ExceptionalCase>,
    pub target: Target,
    /// Which rule produced the contraction set and the Galois data it relies on.
    pub rule: String,
}

impl DerivedGraph {
    /// Colour 0 for roots, 1 for curves.
    pub fn to_colored_graph(&self) -> ColoredGraph {
        let nr = self.roots.len();
        let mut g = ColoredGraph::new((0..nr + self.curves.len()).map(|i| u32::from(i >= nr)).collect());
        let idx = |v: Vertex| match v {
            Vertex::Root(i) => i,
            Vertex::Curve(i) => nr + i,
        };
        for &(a, b) in &self.edges {
            g.add_edge(idx(a), idx(b));
        }
        g
    }

    /// DOT rendering: circles for roots, points for curves.
    pub fn to_dot(&self, name: &str, labels: impl Fn(&DivisorClass) -> String) -> String {
        let mut s = format!("graph \"{name}\" {{\n");
        for (i, r) in self.roots.iter().enumerate() {
            s.push_str(&format!(
                "  r{i} [shape=circle, label=\"\", tooltip=\"{}\"];\n",
                labels(r)
            ));
        }
        for (i, c) in self.curves.iter().enumerate() {
            s.push_str(&format!("  e{i} [shape=point, tooltip=\"{}\"];\n", labels(c)));
        }
        let id = |v: Vertex| match v {
            Vertex::Root(i) => format!("r{i}"),
            Vertex::Curve(i) => format!("e{i}"),
        };
        for &(a, b) in &self.edges {
            s.push_str(&format!("  {} -- {};\n", id(a), id(b)));
        }
        s.push_str("}\n");
        s
    }
}

fn sorted_union(sets: impl IntoIterator<Item = Vec<DivisorClass>>) -> Vec<DivisorClass> {
    let all: BTreeSet<DivisorClass> = sets.into_iter().flatten().collect();
    all.into_iter().collect()
}

fn check_disjoint(curves: &[DivisorClass]) -> Result<(), GeometryError> {
    for (i, a) in curves.iter().enumerate() {
        for b in &curves[i + 1..] {
            if a.dot(b) != 0 {
                return Err(GeometryError::Postcondition(format!(
                    "derived curves {a} and {b} meet with {}",
                    a.dot(b)
                )));
            }
        }
    }
    Ok(())
}

/// Chooses the contraction set for a configuration and contracts it.
pub fn derive_configuration(cfg: &Configuration, cat: &ClassCatalog) -> Result<DerivedGraph, GeometryError> {
    let comps = cfg.components();
    let galois = cfg.galois();
    let s = cfg.simple_roots();
    let (curves, minimal, rule): (Vec<DivisorClass>, Option<ExceptionalCase>, String) = match cfg.delta() {
        0 => (Vec::new(), None, "no singular points".into()),
        1 => {
            let label = comps[0].label;
            if label == AdeLabel::A1 {
                (
                    Vec::new(),
                    Some(ExceptionalCase::One),
                    "single A1 point: minimal".into(),
                )
            } else if label == AdeLabel::A2 {
                if galois.a2_conjugate_components.contains(&0) {
                    (
                        Vec::new(),
                        Some(ExceptionalCase::Two),
                        "A2 with conjugate curves: minimal".into(),
                    )
                } else {
                    let first = comps[0].roots[0];
                    let other = comps[0].roots[1];
                    let six: Vec<DivisorClass> = classes_meeting(&s[first], 1, cat)
                        .into_iter()
                        .filter(|d| d.dot(&s[other]) == 0)
                        .collect();
                    (six, None, format!("A2: honest curves meeting root {first}"))
                }
            } else {
                let t = terminal_roots(cfg, 0);
                let mut sets = Vec::new();
                for (a, b) in pairs(&t) {
                    sets.push(derive_pair_curves_at(cfg, cat, a, b)?);
                }
                (
                    sorted_union(sets),
                    None,
                    format!("{label}: pair derivation from terminal roots {t:?}"),
                )
            }
        }
        2 | 3 => {
            let mut sets = Vec::new();
            for (i, j) in pairs(&(0..cfg.delta()).collect::<Vec<_>>()) {
                sets.push(derive_pair_curves(cfg, cat, i, j)?);
            }
            (
                sorted_union(sets),
                None,
                "pair derivation over all pairs of singular points".into(),
            )
        }
        4 if cfg.type_label().count(AdeLabel::A1) == 4 => {
            let special = lemma315_curves(cfg, cat)?;
            if !special.is_empty() {
                (special, None, "4A1: curve through three A1 points".into())
            } else if let Some(single) = galois.orbits.iter().find(|o| o.len() == 1) {
                let f = comps[single[0]].roots[0];
                let mut sets = Vec::new();
                for (c, comp) in comps.iter().enumerate() {
                    if c != single[0] {
                        sets.push(derive_pair_curves_at(cfg, cat, f, comp.roots[0])?);
                    }
                }
                (
                    sorted_union(sets),
                    None,
                    format!("4A1: pairs with the rational point {}", single[0]),
                )
            } else if let Some(orbit) = galois.orbits.iter().find(|o| o.len() == 2) {
                let (a, b) = (comps[orbit[0]].roots[0], comps[orbit[1]].roots[0]);
                (
                    derive_pair_curves_at(cfg, cat, a, b)?,
                    None,
                    format!("4A1: pair of conjugate points {orbit:?}"),
                )
            } else {
                (
                    Vec::new(),
                    Some(ExceptionalCase::Three),
                    "4A1, all conjugate, no curve through three: minimal".into(),
                )
            }
        }
        _ => {
            let special = lemma315_curves(cfg, cat)?;
            let rule = if cfg.delta() == 4 {
                "curve through the three A1 points".to_string()
            } else {
                "all curves through three A1 points".to_string()
            };
            (special, None, rule)
        }
    };
    check_disjoint(&curves)?;
    for c in &curves {
        if !is_minus1_curve(c, cfg, cat)? {
            return Err(GeometryError::Postcondition(format!("derived class {c} is not honest")));
        }
    }

    let contraction: Contraction = cfg.lattice().blow_down(&curves)?;
    let surviving: Vec<usize> = (0..s.len())
        .filter(|&i| curves.iter().all(|e| e.dot(&s[i]) == 0))
        .collect();
    for &i in &surviving {
        let p = contraction.project(&s[i])?;
        if contraction.target.intersect(&p, &p) != -2 {
            return Err(GeometryError::Postcondition(format!("image of root {i} is not a root")));
        }
    }
    let kept: Vec<DivisorClass> = surviving.iter().map(|&i| s[i].clone()).collect();
    let singularities = classify_dynkin(cfg.lattice(), &kept)?;

    let mut edges = Vec::new();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s[i].dot(&s[j]) == 1 {
                edges.push((Vertex::Root(i), Vertex::Root(j)));
            }
        }
    }
    for (c, e) in curves.iter().enumerate() {
        for (i, f) in s.iter().enumerate() {
            if e.dot(f) == 1 {
                edges.push((Vertex::Root(i), Vertex::Curve(c)));
            }
        }
    }

    Ok(DerivedGraph {
        roots: s.to_vec(),
        target: Target {
            degree: contraction.target.degree(),
            singularities,
            lattice: contraction.target,
            surviving_roots: surviving,
        },
        curves,
        edges,
        minimal,
        rule,
    })
}

fn pairs(v: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            out.push((v[i], v[j]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::SurfaceLattice;

    fn cat() -> ClassCatalog {
        ClassCatalog::degree_two()
    }

    fn cfg(cat: &ClassCatalog, names: &[&str]) -> Configuration {
        let roots = names.iter().map(|n| cat.named(n).unwrap()).collect();
        Configuration::new(SurfaceLattice::degree_two(), roots).unwrap()
    }

    fn names(cat: &ClassCatalog, v: &[DivisorClass]) -> BTreeSet<String> {
        v.iter().map(|c| cat.name_of(c).unwrap()).collect()
    }

    fn set(v: &[&str]) -> BTreeSet<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn honesty() {
        let cat = cat();
        let c = cfg(&cat, &["A'12", "A'23"]);
        assert!(!is_minus1_curve(&cat.named("A2").unwrap(), &c, &cat).unwrap());
        let empty = Configuration::new(SurfaceLattice::degree_two(), vec![]).unwrap();
        assert!(cat
            .pre_minus1()
            .iter()
            .all(|d| is_minus1_curve(d, &empty, &cat).unwrap()));
        let c = cfg(&cat, &["A'12", "A'34"]);
        assert!(is_minus1_curve(&cat.named("B13").unwrap(), &c, &cat).unwrap());
        assert!(is_minus1_curve(&cat.named("A'12").unwrap(), &c, &cat).is_err());
    }

    #[test]
    fn reduction_examples() {
        let cat = cat();
        let c = cfg(&cat, &["A'12", "A'23"]);
        let r = reduce_to_minus1(&cat.named("A2").unwrap(), &c, &cat).unwrap();
        assert_eq!(r.curve, cat.named("A3").unwrap());
        assert_eq!(r.removed, vec![1]);
        let honest = cat.named("B45").unwrap();
        let r = reduce_to_minus1(&honest, &c, &cat).unwrap();
        assert_eq!((r.curve, r.removed.len()), (honest, 0));
        let c = cfg(&cat, &["A'12", "A'23", "A'34"]);
        let r = reduce_to_minus1(&cat.named("D1").unwrap(), &c, &cat).unwrap();
        let k = cat.canonical_class();
        assert_eq!((r.curve.square(), r.curve.dot(&k)), (-1, -1));
    }

    #[test]
    fn meeting_counts() {
        let cat = cat();
        let f = cat.named("A'12").unwrap();
        let mut expected = set(&["A2", "D1"]);
        for i in 3..=7 {
            expected.insert(format!("B1{i}"));
            expected.insert(format!("C2{i}"));
        }
        assert_eq!(names(&cat, &classes_meeting(&f, 1, &cat)), expected);
        for r in cat.roots() {
            assert_eq!(classes_meeting(r, 1, &cat).len(), 12);
            assert_eq!(classes_meeting(r, -1, &cat).len(), 12);
            assert_eq!(classes_meeting(r, 0, &cat).len(), 32);
        }
    }

    #[test]
    fn pair_class_examples() {
        let cat = cat();
        let cases = [
            ("A'12", "A'34", ["B13", "C24"]),
            ("A'12", "B'123", ["A2", "C23"]),
            ("A'12", "B'345", ["B16", "B17"]),
            ("A'12", "C'3", ["A2", "B13"]),
            ("B'123", "B'145", ["A1", "B67"]),
            ("B'123", "C'1", ["A2", "A3"]),
        ];
        for (f, g, want) in cases {
            let (d1, d2) = pair_classes(&cat.named(f).unwrap(), &cat.named(g).unwrap(), &cat).unwrap();
            assert_eq!(names(&cat, &[d1, d2]), set(&want), "{f} {g}");
        }
        let err = pair_classes(&cat.named("A'12").unwrap(), &cat.named("A'23").unwrap(), &cat);
        assert!(matches!(err, Err(GeometryError::NotOrthogonal(..))));
    }

    #[test]
    fn two_a1_derivation() {
        let cat = cat();
        let c = cfg(&cat, &["A'12", "A'34"]);
        let e = derive_pair_curves(&c, &cat, 0, 1).unwrap();
        assert_eq!(names(&cat, &e), set(&["B13", "C24"]));
        assert!(derive_pair_curves(&c, &cat, 0, 0).is_err());
        let g = derive_configuration(&c, &cat).unwrap();
        assert_eq!(g.target.degree, 4);
        assert!(g.target.singularities.is_smooth());
    }

    #[test]
    fn free_curve_counts() {
        let cat = cat();
        assert_eq!(free_minus1_curves(&cfg(&cat, &["A'12"]), &cat).len(), 32);
        assert_eq!(free_minus1_curves(&cfg(&cat, &["A'12", "A'23"]), &cat).len(), 20);
    }

    #[test]
    fn eckardt_quadruples_sum_to_minus_two_k() {
        let cat = cat();
        let q = eckardt_quadruples(&cat).unwrap();
        assert!(!q.is_empty());
        // No class meets all four members of a quadruple once.
        let p = cat.pre_minus1();
        for quad in &q {
            for (i, d) in p.iter().enumerate() {
                if !quad.contains(&i) {
                    assert!(quad.iter().any(|&j| d.dot(&p[j]) != 1));
                }
            }
        }
    }
}
