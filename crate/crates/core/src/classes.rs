//! Enumeration of exceptional ("pre(-1)") classes and roots, with the symbolic
//! names used in degree 2.
//!
//! A pre(-1) class satisfies `c.c = c.K = -1` with `a0 >= 0`; a root satisfies
//! `c.c = -2`, `c.K = 0`. Both are found by a bounded search: Cauchy-Schwarz on
//! `(a1, ..., ar)` bounds `a0`, and a sum/sum-of-squares budget prunes the inner
//! coefficients.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::lattice::{DivisorClass, LatticeError, SurfaceLattice};

pub mod tables;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("symbolic names exist only at rank 7 (got rank {0})")]
    NamesNeedRankSeven(usize),
    #[error("unknown class name {0:?}")]
    UnknownName(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("intersection of {left} and {right} is not constant on index pattern {pattern}")]
    NonConstantPattern {
        left: Family,
        right: Family,
        pattern: String,
    },
}

/// Which kind of class a search looks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    PreMinusOne,
    Root,
}

impl Kind {
    /// Required `(c.K, c.c)`.
    fn targets(self) -> (i64, i64) {
        match self {
            Self::PreMinusOne => (-1, -1),
            Self::Root => (0, -2),
        }
    }
}

/// Range of `a0` allowed by Cauchy-Schwarz: `(sum ai)^2 <= r * sum ai^2`.
fn a0_range(rank: usize, kind: Kind) -> Vec<i64> {
    let (kdeg, sq) = kind.targets();
    let r = rank as i64;
    let admissible = |a0: i64| {
        // c.K = -3 a0 - sum ai, c.c = a0^2 - sum ai^2
        let sum = -3 * a0 - kdeg;
        let squares = a0 * a0 - sq;
        squares >= 0 && sum * sum <= r * squares
    };
    // The admissible set is an interval contained in |a0| <= 8 for r <= 8.
    let lo = if kind == Kind::PreMinusOne { 0 } else { -16 };
    (lo..=16).filter(|&a0| admissible(a0)).collect()
}

/// All `(a1..ak)` with the given sum and sum of squares, each `|ai| <= envelope`,
/// in lexicographic order.
fn inner_solutions(k: usize, sum: i64, squares: i64, envelope: i64) -> Vec<Vec<i64>> {
    fn go(k: usize, sum: i64, squares: i64, env: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == 0 {
            if sum == 0 && squares == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if squares < 0 || sum * sum > k as i64 * squares || (sum - squares).rem_euclid(2) != 0 {
            return;
        }
        for a in -env..=env {
            if a * a > squares {
                continue;
            }
            prefix.push(a);
            go(k - 1, sum - a, squares - a * a, env, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(k, sum, squares, envelope, &mut Vec::new(), &mut out);
    out
}

fn search(lat: SurfaceLattice, kind: Kind, envelope: impl Fn(i64) -> i64) -> Vec<DivisorClass> {
    let (kdeg, sq) = kind.targets();
    let mut out = Vec::new();
    for a0 in a0_range(lat.rank(), kind) {
        let sum = -3 * a0 - kdeg;
        let squares = a0 * a0 - sq;
        for inner in inner_solutions(lat.rank(), sum, squares, envelope(a0)) {
            let mut c = vec![a0];
            c.extend(inner);
            out.push(DivisorClass::new(c));
        }
    }
    out.sort();
    out
}

/// Coefficient envelope `|ai| <= |a0| + 2` used by the catalog search.
fn envelope(a0: i64) -> i64 {
    a0.abs() + 2
}

/// All pre(-1) classes of the lattice, sorted lexicographically.
pub fn pre_minus1_classes(lat: SurfaceLattice) -> Vec<DivisorClass> {
    search(lat, Kind::PreMinusOne, envelope)
}

/// All roots (both signs), sorted lexicographically.
pub fn root_classes(lat: SurfaceLattice) -> Vec<DivisorClass> {
    search(lat, Kind::Root, envelope)
}

/// Class families of the degree-2 lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// `l_i`
    A,
    /// `l0 - l_i - l_j`
    B,
    /// `2 l0 - sum + l_i + l_j`
    C,
    /// `3 l0 - sum - l_i`
    D,
    /// `l_i - l_j`, `i != j`
    APrime,
    /// `l0 - l_i - l_j - l_k`
    BPrime,
    /// `2 l0 - sum + l_i`
    CPrime,
}

impl Family {
    pub const PRE_MINUS1: [Family; 4] = [Family::A, Family::B, Family::C, Family::D];
    pub const ROOTS: [Family; 3] = [Family::APrime, Family::BPrime, Family::CPrime];

    pub fn is_root(self) -> bool {
        matches!(self, Self::APrime | Self::BPrime | Self::CPrime)
    }

    fn prefix(self) -> &'static str {
        match self {
            Self::A => "A",
            Self::B => "B",
            Self::C => "C",
            Self::D => "D",
            Self::APrime => "A'",
            Self::BPrime => "B'",
            Self::CPrime => "C'",
        }
    }

    /// Index tuples of the family members, in a fixed order.
    pub fn index_tuples(self) -> Vec<Vec<usize>> {
        let pts = 1..=7usize;
        match self {
            Self::A | Self::D | Self::CPrime => pts.map(|i| vec![i]).collect(),
            Self::B | Self::C => {
                let mut v = Vec::new();
                for i in 1..=7 {
                    for j in i + 1..=7 {
                        v.push(vec![i, j]);
                    }
                }
                v
            }
            Self::APrime => {
                let mut v = Vec::new();
                for i in 1..=7 {
                    for j in 1..=7 {
                        if i != j {
                            v.push(vec![i, j]);
                        }
                    }
                }
                v
            }
            Self::BPrime => {
                let mut v = Vec::new();
                for i in 1..=7 {
                    for j in i + 1..=7 {
                        for k in j + 1..=7 {
                            v.push(vec![i, j, k]);
                        }
                    }
                }
                v
            }
        }
    }

    /// The class with the given indices (points numbered `1..=7`).
    pub fn class(self, idx: &[usize]) -> DivisorClass {
        let mut c = [0i64; 8];
        match self {
            Self::A => c[idx[0]] = 1,
            Self::B | Self::BPrime => {
                c[0] = 1;
                for &i in idx {
                    c[i] = -1;
                }
            }
            Self::C | Self::CPrime => {
                c[0] = 2;
                c[1..].fill(-1);
                for &i in idx {
                    c[i] = 0;
                }
            }
            Self::D => {
                c[0] = 3;
                c[1..].fill(-1);
                c[idx[0]] = -2;
            }
            Self::APrime => {
                c[idx[0]] = 1;
                c[idx[1]] = -1;
            }
        }
        DivisorClass::new(c.to_vec())
    }

    pub fn members(self) -> Vec<(Vec<usize>, DivisorClass)> {
        self.index_tuples()
            .into_iter()
            .map(|t| (t.clone(), self.class(&t)))
            .collect()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.prefix())
    }
}

impl FromStr for Family {
    type Err = ClassError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            Self::A,
            Self::B,
            Self::C,
            Self::D,
            Self::APrime,
            Self::BPrime,
            Self::CPrime,
        ]
        .into_iter()
        .find(|f| f.prefix() == s)
        .ok_or_else(|| ClassError::UnknownFamily(s.to_string()))
    }
}

/// A symbolic name such as `B13`, `A'21` or `-C'4`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassName {
    pub negated: bool,
    pub family: Family,
    pub indices: Vec<usize>,
}

impl ClassName {
    pub fn class(&self) -> DivisorClass {
        let c = self.family.class(&self.indices);
        if self.negated {
            -&c
        } else {
            c
        }
    }
}

impl fmt::Display for ClassName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        f.write_str(self.family.prefix())?;
        for i in &self.indices {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl FromStr for ClassName {
    type Err = ClassError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ClassError::UnknownName(s.to_string());
        let (negated, rest) = match s.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, s),
        };
        let split = rest.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
        let family: Family = rest[..split].parse().map_err(|_| bad())?;
        let indices: Vec<usize> = rest[split..]
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()
            .ok_or_else(bad)?;
        if !family.index_tuples().contains(&indices) || (negated && !family.is_root()) {
            return Err(bad());
        }
        Ok(Self {
            negated,
            family,
            indices,
        })
    }
}

/// The pre(-1) classes and roots of a lattice, with index lookups.
#[derive(Debug, Clone)]
pub struct ClassCatalog {
    lattice: SurfaceLattice,
    pre_minus1: Vec<DivisorClass>,
    roots: Vec<DivisorClass>,
    pre_index: HashMap<DivisorClass, usize>,
    root_index: HashMap<DivisorClass, usize>,
    names: Option<Names>,
}

#[derive(Debug, Clone)]
struct Names {
    by_name: HashMap<String, DivisorClass>,
    pre: Vec<ClassName>,
    roots: Vec<ClassName>,
}

impl ClassCatalog {
    pub fn new(lattice: SurfaceLattice) -> Self {
        let pre_minus1 = pre_minus1_classes(lattice);
        let roots = root_classes(lattice);
        let pre_index = pre_minus1.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let root_index = roots.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let mut cat = Self {
            lattice,
            pre_minus1,
            roots,
            pre_index,
            root_index,
            names: None,
        };
        if lattice.rank() == 7 {
            cat.names = Some(cat.build_names());
        }
        cat
    }

    /// The degree-2 catalog (56 pre(-1) classes, 126 roots).
    pub fn degree_two() -> Self {
        Self::new(SurfaceLattice::degree_two())
    }

    fn build_names(&self) -> Names {
        let mut pre = vec![None; self.pre_minus1.len()];
        let mut roots = vec![None; self.roots.len()];
        let mut by_name = HashMap::new();
        for family in Family::PRE_MINUS1.into_iter().chain(Family::ROOTS) {
            for (indices, class) in family.members() {
                for negated in [false, true] {
                    if negated && !family.is_root() {
                        continue;
                    }
                    let name = ClassName {
                        negated,
                        family,
                        indices: indices.clone(),
                    };
                    let class = if negated { -&class } else { class.clone() };
                    if family.is_root() {
                        let i = self.root_index[&class];
                        // A'ij and -A'ji coincide; keep the unnegated spelling.
                        if roots[i].is_none() {
                            roots[i] = Some(name.clone());
                        }
                    } else {
                        pre[self.pre_index[&class]] = Some(name.clone());
                    }
                    by_name.insert(name.to_string(), class);
                }
            }
        }
        Names {
            by_name,
            pre: pre
                .into_iter()
                .map(|n| n.expect("every pre(-1) class is named"))
                .collect(),
            roots: roots.into_iter().map(|n| n.expect("every root is named")).collect(),
        }
    }

    pub fn lattice(&self) -> SurfaceLattice {
        self.lattice
    }

    pub fn pre_minus1(&self) -> &[DivisorClass] {
        &self.pre_minus1
    }

    pub fn roots(&self) -> &[DivisorClass] {
        &self.roots
    }

    pub fn canonical_class(&self) -> DivisorClass {
        self.lattice.canonical_class()
    }

    pub fn pre_index(&self, c: &DivisorClass) -> Option<usize> {
        self.pre_index.get(c).copied()
    }

    pub fn root_index(&self, c: &DivisorClass) -> Option<usize> {
        self.root_index.get(c).copied()
    }

    /// Looks up a symbolic name (rank 7 only).
    pub fn named(&self, name: &str) -> Result<DivisorClass, ClassError> {
        let names = self
            .names
            .as_ref()
            .ok_or(ClassError::NamesNeedRankSeven(self.lattice.rank()))?;
        names
            .by_name
            .get(name)
            .cloned()
            .ok_or_else(|| ClassError::UnknownName(name.to_string()))
    }

    /// Name of a pre(-1) class or root, if the catalog is named.
    pub fn name_of(&self, c: &DivisorClass) -> Option<String> {
        let names = self.names.as_ref()?;
        if let Some(i) = self.pre_index(c) {
            return Some(names.pre[i].to_string());
        }
        self.root_index(c).map(|i| names.roots[i].to_string())
    }

    pub fn pre_name(&self, i: usize) -> Option<&ClassName> {
        self.names.as_ref().map(|n| &n.pre[i])
    }

    pub fn root_name(&self, i: usize) -> Option<&ClassName> {
        self.names.as_ref().map(|n| &n.roots[i])
    }

    /// Name if known, coefficient vector otherwise.
    pub fn label(&self, c: &DivisorClass) -> String {
        self.name_of(c).unwrap_or_else(|| c.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(r: usize) -> SurfaceLattice {
        SurfaceLattice::new(r).unwrap()
    }

    #[test]
    fn counts_by_rank() {
        let pre: Vec<usize> = (0..=8).map(|r| pre_minus1_classes(lat(r)).len()).collect();
        assert_eq!(pre, vec![0, 1, 3, 6, 10, 16, 27, 56, 240]);
        let roots: Vec<usize> = (0..=8).map(|r| root_classes(lat(r)).len()).collect();
        assert_eq!(roots, vec![0, 0, 2, 8, 20, 40, 72, 126, 240]);
        assert_eq!(pre_minus1_classes(lat(1)), vec![DivisorClass::basis(1, 1)]);
    }

    #[test]
    fn defining_equations_hold() {
        for r in 0..=8 {
            let lat = lat(r);
            let k = lat.canonical_class();
            for c in pre_minus1_classes(lat) {
                assert_eq!((c.square(), c.dot(&k)), (-1, -1));
                assert!(c.coeffs()[0] >= 0);
            }
            for c in root_classes(lat) {
                assert_eq!((c.square(), c.dot(&k)), (-2, 0));
            }
        }
    }

    #[test]
    fn envelope_is_not_binding() {
        // The sum-of-squares budget alone bounds the inner coefficients; the
        // envelope must not cut anything off.
        for r in 0..=5 {
            for kind in [Kind::PreMinusOne, Kind::Root] {
                assert_eq!(search(lat(r), kind, envelope), search(lat(r), kind, |_| 64));
            }
        }
    }

    #[test]
    fn degree_two_families() {
        let cat = ClassCatalog::degree_two();
        assert_eq!(cat.pre_minus1().len(), 56);
        assert_eq!(cat.roots().len(), 126);
        let sizes: Vec<usize> = Family::PRE_MINUS1.iter().map(|f| f.members().len()).collect();
        assert_eq!(sizes, vec![7, 21, 21, 7]);
        let sizes: Vec<usize> = Family::ROOTS.iter().map(|f| f.members().len()).collect();
        assert_eq!(sizes, vec![42, 35, 7]);
        let positive = cat.roots().iter().filter(|c| c.coeffs()[0] >= 0).count();
        assert_eq!(positive, 84);
        for f in Family::PRE_MINUS1 {
            for (_, c) in f.members() {
                assert!(cat.pre_index(&c).is_some());
            }
        }
    }

    #[test]
    fn names_round_trip() {
        let cat = ClassCatalog::degree_two();
        let b13 = cat.named("B13").unwrap();
        assert_eq!(b13.coeffs(), &[1, -1, 0, -1, 0, 0, 0, 0]);
        assert_eq!(cat.name_of(&b13).as_deref(), Some("B13"));
        assert_eq!(cat.named("A'21").unwrap(), cat.named("-A'12").unwrap());
        assert_eq!(cat.name_of(&cat.named("-C'3").unwrap()).as_deref(), Some("-C'3"));
        assert!(cat.named("B11").is_err());
        assert!(ClassCatalog::new(lat(6)).named("A1").is_err());
        let n: ClassName = "B'123".parse().unwrap();
        assert_eq!(n.to_string(), "B'123");
    }

    #[test]
    fn enumeration_is_deterministic() {
        assert_eq!(root_classes(lat(7)), root_classes(lat(7)));
        let v = pre_minus1_classes(lat(8));
        let mut sorted = v.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(v, sorted);
    }
}
