//! Singularity configurations: sets of roots standing for the irreducible
//! (-2)-curves, their Dynkin types, Galois orbit data and orbit fingerprints.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classes::ClassCatalog;
use crate::lattice::{DivisorClass, LatticeError, SurfaceLattice};

pub mod registry;
mod registry_data;

pub use registry::{registry_entries, registry_representative, RegistryEntry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("invalid configuration: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("cannot parse singularity type {0:?}")]
    BadType(String),
    #[error("type {0} is not in the catalog")]
    UnknownType(String),
    #[error("type {ty} has no variant {variant:?}")]
    UnknownVariant { ty: String, variant: String },
    #[error("type {0} has several variants; one must be named")]
    AmbiguousVariant(String),
    #[error("inconsistent Galois data: {0}")]
    Galois(String),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// A reason a root set is not a valid configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Error)]
pub enum Violation {
    #[error("root {index} has {found} coefficients, lattice needs {expected}")]
    WrongLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("root {index} has square {square} and K-degree {kdeg}")]
    NotARoot { index: usize, square: i64, kdeg: i64 },
    #[error("roots {0} and {1} coincide")]
    Duplicate(usize, usize),
    #[error("roots {i} and {j} have product {value}, expected 0 or 1")]
    BadProduct { i: usize, j: usize, value: i64 },
    #[error("component {roots:?} is not a Dynkin diagram of type A, D or E")]
    NotDynkin { roots: Vec<usize> },
    #[error("{0} components, at most 7 allowed")]
    TooManyComponents(usize),
    #[error("type {0} is not one of the 40 catalogued types")]
    NotCatalogued(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AdeKind {
    A,
    D,
    E,
}

/// One Dynkin label such as `A3` or `E6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AdeLabel {
    pub kind: AdeKind,
    pub n: u8,
}

impl AdeLabel {
    pub const A1: AdeLabel = AdeLabel { kind: AdeKind::A, n: 1 };
    pub const A2: AdeLabel = AdeLabel { kind: AdeKind::A, n: 2 };
    pub const D4: AdeLabel = AdeLabel { kind: AdeKind::D, n: 4 };

    pub fn new(kind: AdeKind, n: u8) -> Self {
        Self { kind, n }
    }
}

impl fmt::Display for AdeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            AdeKind::A => 'A',
            AdeKind::D => 'D',
            AdeKind::E => 'E',
        };
        write!(f, "{k}{}", self.n)
    }
}

/// A multiset of Dynkin labels, printed like `2A1+A3`; the empty type is `smooth`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SingularityType {
    labels: Vec<AdeLabel>,
}

impl SingularityType {
    pub fn new(mut labels: Vec<AdeLabel>) -> Self {
        labels.sort();
        Self { labels }
    }

    pub fn smooth() -> Self {
        Self::default()
    }

    pub fn labels(&self) -> &[AdeLabel] {
        &self.labels
    }

    /// Number of components.
    pub fn delta(&self) -> usize {
        self.labels.len()
    }

    /// Number of roots.
    pub fn total_rank(&self) -> usize {
        self.labels.iter().map(|l| l.n as usize).sum()
    }

    pub fn is_smooth(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn count(&self, label: AdeLabel) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.labels.is_empty() {
            return f.write_str("smooth");
        }
        let mut groups: Vec<(AdeLabel, usize)> = Vec::new();
        for &l in &self.labels {
            match groups.last_mut() {
                Some((g, c)) if *g == l => *c += 1,
                _ => groups.push((l, 1)),
            }
        }
        let parts: Vec<String> = groups
            .into_iter()
            .map(|(l, c)| if c == 1 { l.to_string() } else { format!("{c}{l}") })
            .collect();
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for SingularityType {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ConfigError::BadType(s.to_string());
        let s = s.trim();
        if s == "smooth" {
            return Ok(Self::smooth());
        }
        let mut labels = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            let pos = part.find(|c: char| c.is_ascii_alphabetic()).ok_or_else(bad)?;
            let count: usize = if pos == 0 {
                1
            } else {
                part[..pos].parse().map_err(|_| bad())?
            };
            let kind = match &part[pos..pos + 1] {
                "A" => AdeKind::A,
                "D" => AdeKind::D,
                "E" => AdeKind::E,
                _ => return Err(bad()),
            };
            let n: u8 = part[pos + 1..].parse().map_err(|_| bad())?;
            let ok = match kind {
                AdeKind::A => n >= 1,
                AdeKind::D => n >= 4,
                AdeKind::E => (6..=8).contains(&n),
            };
            if !ok || count == 0 {
                return Err(bad());
            }
            labels.extend(std::iter::repeat_n(AdeLabel::new(kind, n), count));
        }
        Ok(Self::new(labels))
    }
}

impl Serialize for SingularityType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The 40 singularity types of degree-2 surfaces, by number of components.
pub const TYPE_CATALOG: [(usize, &[&str]); 7] = [
    (
        1,
        &["A1", "A2", "A3", "A4", "A5", "A6", "A7", "D4", "D5", "D6", "E6", "E7"],
    ),
    (
        2,
        &[
            "2A1", "A1+A2", "A1+A3", "A1+A4", "A1+A5", "A1+D4", "A1+D5", "A1+D6", "2A2", "A2+A3", "A2+A4", "A2+A5",
            "2A3",
        ],
    ),
    (
        3,
        &[
            "3A1", "2A1+A2", "2A1+A3", "2A1+D4", "A1+2A2", "A1+A2+A3", "A1+2A3", "3A2",
        ],
    ),
    (4, &["4A1", "3A1+A2", "3A1+A3", "3A1+D4"]),
    (5, &["5A1"]),
    (6, &["6A1"]),
    (7, &["7A1"]),
];

/// All catalogued types in catalog order.
pub fn catalog_types() -> Vec<SingularityType> {
    TYPE_CATALOG
        .iter()
        .flat_map(|(_, names)| names.iter().map(|n| n.parse().expect("catalog names parse")))
        .collect()
}

pub fn is_catalogued(ty: &SingularityType) -> bool {
    catalog_types().contains(ty)
}

/// A connected component of the Dynkin graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    /// Indices into the configuration's simple roots, increasing.
    pub roots: Vec<usize>,
    pub label: AdeLabel,
}

/// Shape of one Dynkin tree, with vertices given as local positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinShape {
    pub label: AdeLabel,
    /// Branch vertex for D and E types.
    pub center: Option<usize>,
    /// Arms as paths leaving the branch vertex (or the whole path for type A),
    /// sorted by length.
    pub arms: Vec<Vec<usize>>,
}

/// Classifies a connected graph on `0..n` given by its adjacency lists.
pub fn dynkin_shape(adj: &[Vec<usize>]) -> Option<DynkinShape> {
    let n = adj.len();
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if n == 0 || edges + 1 != n {
        return None;
    }
    // connected + n-1 edges = tree
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    let walk = |start: usize, from: usize| {
        let mut path = vec![start];
        let (mut prev, mut cur) = (from, start);
        loop {
            let next: Vec<usize> = adj[cur].iter().copied().filter(|&w| w != prev).collect();
            if next.len() != 1 {
                return path;
            }
            prev = cur;
            cur = next[0];
            path.push(cur);
        }
    };
    match branch.as_slice() {
        [] => {
            let end = (0..n).find(|&v| adj[v].len() <= 1)?;
            let path = if n == 1 { vec![end] } else { walk(adj[end][0], end) };
            let mut full = vec![end];
            if n > 1 {
                full.extend(path);
            }
            Some(DynkinShape {
                label: AdeLabel::new(AdeKind::A, n as u8),
                center: None,
                arms: vec![full],
            })
        }
        [c] if adj[*c].len() == 3 => {
            let mut arms: Vec<Vec<usize>> = adj[*c].iter().map(|&w| walk(w, *c)).collect();
            arms.sort_by_key(|a| (a.len(), a[0]));
            let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
            let label = match lens.as_slice() {
                [1, 1, _] => AdeLabel::new(AdeKind::D, n as u8),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => AdeLabel::new(AdeKind::E, n as u8),
                _ => return None,
            };
            Some(DynkinShape {
                label,
                center: Some(*c),
                arms,
            })
        }
        _ => None,
    }
}

/// Galois data: a partition of the components into orbits, and the A2
/// components whose two roots are conjugate.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GaloisData {
    pub orbits: Vec<Vec<usize>>,
    pub a2_conjugate_components: BTreeSet<usize>,
}

/// A validated configuration of simple roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    lattice: SurfaceLattice,
    simple_roots: Vec<DivisorClass>,
    components: Vec<Component>,
    type_label: SingularityType,
    galois: GaloisData,
}

/// Checks the configuration invariants of a root list (catalog membership
/// is only checked at rank 7).
pub fn validate_roots(lattice: SurfaceLattice, roots: &[DivisorClass]) -> Vec<Violation> {
    let mut out = Vec::new();
    let k = lattice.canonical_class();
    for (index, r) in roots.iter().enumerate() {
        if r.coeffs().len() != lattice.dim() {
            out.push(Violation::WrongLength {
                index,
                expected: lattice.dim(),
                found: r.coeffs().len(),
            });
        }
    }
    if !out.is_empty() {
        return out;
    }
    for (index, r) in roots.iter().enumerate() {
        let (square, kdeg) = (r.square(), r.dot(&k));
        if (square, kdeg) != (-2, 0) {
            out.push(Violation::NotARoot { index, square, kdeg });
        }
    }
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if roots[i] == roots[j] {
                out.push(Violation::Duplicate(i, j));
                continue;
            }
            let value = roots[i].dot(&roots[j]);
            if value != 0 && value != 1 {
                out.push(Violation::BadProduct { i, j, value });
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    let (components, bad) = split_components(roots);
    out.extend(bad);
    if components.len() > 7 {
        out.push(Violation::TooManyComponents(components.len()));
    }
    if out.is_empty() && lattice.rank() == 7 {
        let ty = SingularityType::new(components.iter().map(|c| c.label).collect());
        if !is_catalogued(&ty) && !ty.is_smooth() {
            out.push(Violation::NotCatalogued(ty.to_string()));
        }
    }
    out
}

fn split_components(roots: &[DivisorClass]) -> (Vec<Component>, Vec<Violation>) {
    let n = roots.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && roots[i].dot(&roots[j]) == 1).collect())
        .collect();
    let mut comp_of = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp_of[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![s];
        comp_of[s] = id;
        let mut i = 0;
        while i < members.len() {
            for &w in &adj[members[i]] {
                if comp_of[w] == usize::MAX {
                    comp_of[w] = id;
                    members.push(w);
                }
            }
            i += 1;
        }
        members.sort();
        comps.push(members);
    }
    let mut out = Vec::new();
    let mut bad = Vec::new();
    for members in comps {
        let local: Vec<Vec<usize>> = members
            .iter()
            .map(|&v| {
                adj[v]
                    .iter()
                    .map(|w| members.iter().position(|m| m == w).unwrap())
                    .collect()
            })
            .collect();
        match dynkin_shape(&local) {
            Some(shape) => out.push(Component {
                roots: members,
                label: shape.label,
            }),
            None => bad.push(Violation::NotDynkin { roots: members }),
        }
    }
    (out, bad)
}

/// Dynkin type of a root set.
pub fn classify_dynkin(lattice: SurfaceLattice, roots: &[DivisorClass]) -> Result<SingularityType, ConfigError> {
    let mut violations: Vec<Violation> = validate_roots(lattice, roots)
        .into_iter()
        .filter(|v| !matches!(v, Violation::NotCatalogued(_) | Violation::TooManyComponents(_)))
        .collect();
    if !violations.is_empty() {
        return Err(ConfigError::Invalid(std::mem::take(&mut violations)));
    }
    let (components, _) = split_components(roots);
    Ok(SingularityType::new(components.iter().map(|c| c.label).collect()))
}

impl Configuration {
    /// Validates the roots and attaches trivial Galois data.
    pub fn new(lattice: SurfaceLattice, simple_roots: Vec<DivisorClass>) -> Result<Self, ConfigError> {
        let violations = validate_roots(lattice, &simple_roots);
        if !violations.is_empty() {
            return Err(ConfigError::Invalid(violations));
        }
        let (components, _) = split_components(&simple_roots);
        let type_label = SingularityType::new(components.iter().map(|c| c.label).collect());
        let galois = GaloisData {
            orbits: (0..components.len()).map(|i| vec![i]).collect(),
            ..Default::default()
        };
        Ok(Self {
            lattice,
            simple_roots,
            components,
            type_label,
            galois,
        })
    }

    /// Replaces the Galois data after checking it against the components.
    pub fn with_galois(mut self, galois: GaloisData) -> Result<Self, ConfigError> {
        let n = self.components.len();
        let mut seen = vec![false; n];
        for orbit in &galois.orbits {
            if orbit.is_empty() {
                return Err(ConfigError::Galois("empty orbit".into()));
            }
            for &c in orbit {
                if c >= n || seen[c] {
                    return Err(ConfigError::Galois(format!("component {c} is missing or repeated")));
                }
                seen[c] = true;
                if self.components[c].label != self.components[orbit[0]].label {
                    return Err(ConfigError::Galois(format!("orbit {orbit:?} mixes Dynkin types")));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(ConfigError::Galois("orbits do not cover every component".into()));
        }
        for &c in &galois.a2_conjugate_components {
            if c >= n || self.components[c].label != AdeLabel::A2 {
                return Err(ConfigError::Galois(format!("component {c} is not of type A2")));
            }
        }
        let mut galois = galois;
        for o in &mut galois.orbits {
            o.sort();
        }
        galois.orbits.sort();
        self.galois = galois;
        Ok(self)
    }

    pub fn lattice(&self) -> SurfaceLattice {
        self.lattice
    }

    pub fn simple_roots(&self) -> &[DivisorClass] {
        &self.simple_roots
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn type_label(&self) -> &SingularityType {
        &self.type_label
    }

    pub fn galois(&self) -> &GaloisData {
        &self.galois
    }

    pub fn delta(&self) -> usize {
        self.components.len()
    }

    /// Component index of a simple root.
    pub fn component_of(&self, root: usize) -> usize {
        self.components
            .iter()
            .position(|c| c.roots.contains(&root))
            .expect("root belongs to a component")
    }

    /// Local Dynkin shape of a component (positions are indices into `component.roots`).
    pub fn shape(&self, comp: usize) -> DynkinShape {
        let members = &self.components[comp].roots;
        let local: Vec<Vec<usize>> = members
            .iter()
            .map(|&v| {
                (0..members.len())
                    .filter(|&j| members[j] != v && self.simple_roots[v].dot(&self.simple_roots[members[j]]) == 1)
                    .collect()
            })
            .collect();
        dynkin_shape(&local).expect("components are Dynkin trees")
    }

    /// Dynkin degree of every simple root.
    pub fn dynkin_degrees(&self) -> Vec<usize> {
        let s = &self.simple_roots;
        (0..s.len())
            .map(|i| (0..s.len()).filter(|&j| j != i && s[i].dot(&s[j]) == 1).count())
            .collect()
    }

    pub fn to_spec(&self) -> ConfigurationSpec {
        ConfigurationSpec {
            roots: self.simple_roots.iter().map(|r| r.coeffs().to_vec()).collect(),
            orbits: Some(self.galois.orbits.clone()),
            a2_conjugate_components: Some(self.galois.a2_conjugate_components.iter().copied().collect()),
        }
    }

    pub fn from_spec(spec: &ConfigurationSpec) -> Result<Self, ConfigError> {
        let dim = spec.roots.first().map_or(8, Vec::len);
        let lattice = SurfaceLattice::new(dim.saturating_sub(1))?;
        let roots = spec.roots.iter().map(|r| DivisorClass::new(r.clone())).collect();
        let cfg = Self::new(lattice, roots)?;
        let galois = GaloisData {
            orbits: spec
                .orbits
                .clone()
                .unwrap_or_else(|| (0..cfg.delta()).map(|i| vec![i]).collect()),
            a2_conjugate_components: spec.a2_conjugate_components.iter().flatten().copied().collect(),
        };
        cfg.with_galois(galois)
    }
}

/// JSON form `{"roots": [[...]], "orbits": [[0],[1,2]], "a2_conjugate_components": [..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationSpec {
    pub roots: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbits: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a2_conjugate_components: Option<Vec<usize>>,
}

/// Weyl-invariant summary of a configuration: for every pre(-1) class, the
/// sorted list of `(label of F, Dynkin degree of F, D.F)` over the simple roots
/// `F`; the fingerprint is the sorted list of these.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint(Vec<Vec<(AdeLabel, u8, i8)>>);

impl Fingerprint {
    /// Number of pre(-1) classes orthogonal to every simple root.
    pub fn free_count(&self) -> usize {
        self.0.iter().filter(|row| row.iter().all(|&(_, _, v)| v == 0)).count()
    }

    /// Short hex digest for display.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        h.update(serde_json::to_vec(&self.0).expect("fingerprint serializes"));
        h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

pub fn orbit_fingerprint(cfg: &Configuration, cat: &ClassCatalog) -> Fingerprint {
    let degrees = cfg.dynkin_degrees();
    let labels: Vec<(AdeLabel, u8)> = (0..cfg.simple_roots.len())
        .map(|i| (cfg.components[cfg.component_of(i)].label, degrees[i] as u8))
        .collect();
    let mut rows: Vec<Vec<(AdeLabel, u8, i8)>> = cat
        .pre_minus1()
        .iter()
        .map(|d| {
            let mut row: Vec<(AdeLabel, u8, i8)> = cfg
                .simple_roots
                .iter()
                .zip(&labels)
                .map(|(f, &(l, deg))| (l, deg, d.dot(f) as i8))
                .collect();
            row.sort();
            row
        })
        .collect();
    rows.sort();
    Fingerprint(rows)
}

/// Counts of each type in a list, for reporting.
pub fn type_histogram<'a>(types: impl IntoIterator<Item = &'a SingularityType>) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for t in types {
        *m.entry(t.to_string()).or_insert(0) += 1;
    }
    m
}
