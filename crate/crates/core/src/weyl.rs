//! The Weyl group W(E7) acting on the degree-2 Picard lattice: closure from
//! the simple reflections, traces, the root-tuple sets and their transitivity.
//!
//! An element is determined by the images of `l1, ..., l7`, which are
//! exceptional classes; the image of `l0` follows from `3 l0 = l1 + ... + l7 - K`.
//! Elements are stored as those seven class indices packed six bits each.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::classes::ClassCatalog;
use crate::lattice::DivisorClass;

/// |W(E7)|.
pub const E7_ORDER: usize = 2_903_040;

const DIM: usize = 8;
const CLASSES: usize = 56;
const ROOTS: usize = 126;
const NONE: u8 = u8::MAX;
const CACHE_MAGIC: &[u8; 4] = b"DPLW";
const CACHE_VERSION: u32 = 1;

type Vector = [i8; DIM];

#[derive(Debug, Error)]
pub enum WeylError {
    #[error("the Weyl action needs the degree-2 catalog (rank 7), got rank {0}")]
    WrongRank(usize),
    #[error("closure has {0} elements, expected {E7_ORDER}")]
    UnexpectedOrder(usize),
    #[error("no group element satisfies {0:?}; the witness is wrong")]
    EmptyFilter(TraceFilter),
    #[error("witness {0:?} is not valid: {1}")]
    BadWitness(TraceFilter, &'static str),
    #[error("cache {path}: {reason}")]
    BadCache { path: PathBuf, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Lookup tables for the action on the 56 exceptional classes and 126 roots.
#[derive(Debug, Clone)]
pub struct E7Action {
    classes: Vec<Vector>,
    roots: Vec<Vector>,
    class_table: Vec<u8>,
    root_table: Vec<u8>,
    /// Catalog index of `l_i` for `i = 1..=7`.
    basis: [u8; 7],
    generators: Vec<[u8; CLASSES]>,
    generator_roots: Vec<[u8; ROOTS]>,
}

fn encode(v: &Vector) -> Option<usize> {
    let mut code = 0usize;
    for &a in v.iter().rev() {
        if !(-3..=3).contains(&a) {
            return None;
        }
        code = code * 7 + (a + 3) as usize;
    }
    Some(code)
}

fn to_vector(c: &DivisorClass) -> Vector {
    let mut v = [0i8; DIM];
    for (x, &a) in v.iter_mut().zip(c.coeffs()) {
        *x = a as i8;
    }
    v
}

fn lookup_table(vectors: &[Vector]) -> Vec<u8> {
    let mut t = vec![NONE; 7usize.pow(DIM as u32)];
    for (i, v) in vectors.iter().enumerate() {
        t[encode(v).expect("catalog coefficients lie in -3..=3")] = i as u8;
    }
    t
}

fn dot(a: &Vector, b: &Vector) -> i32 {
    a[0] as i32 * b[0] as i32 - (1..DIM).map(|i| a[i] as i32 * b[i] as i32).sum::<i32>()
}

fn reflect(x: &Vector, r: &Vector) -> Vector {
    let k = dot(x, r) as i8;
    let mut out = *x;
    for i in 0..DIM {
        out[i] += k * r[i];
    }
    out
}

/// The simple roots `l1-l2, ..., l6-l7, l0-l1-l2-l3`.
pub fn simple_roots() -> Vec<DivisorClass> {
    let mut out = Vec::new();
    for i in 1..7 {
        let mut c = vec![0; DIM];
        c[i] = 1;
        c[i + 1] = -1;
        out.push(DivisorClass::new(c));
    }
    out.push(DivisorClass::new(vec![1, -1, -1, -1, 0, 0, 0, 0]));
    out
}

/// A group element by the columns of its matrix (images of `l0, ..., l7`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeylElement {
    key: u64,
    cols: [Vector; DIM],
}

impl WeylElement {
    /// Packed images of `l1..l7`.
    pub fn key(&self) -> u64 {
        self.key
    }

    /// Trace of the 8x8 matrix on the full Picard lattice.
    pub fn trace(&self) -> i64 {
        (0..DIM).map(|j| self.cols[j][j] as i64).sum()
    }

    /// Row-major matrix acting on coefficient vectors.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        (0..DIM)
            .map(|i| (0..DIM).map(|j| self.cols[j][i] as i64).collect())
            .collect()
    }

    fn apply_vec(&self, v: &Vector) -> Vector {
        let mut out = [0i8; DIM];
        for (j, &a) in v.iter().enumerate() {
            if a != 0 {
                for (o, &c) in out.iter_mut().zip(&self.cols[j]) {
                    *o += a * c;
                }
            }
        }
        out
    }

    pub fn apply(&self, c: &DivisorClass) -> DivisorClass {
        let v: Vec<i64> = (0..DIM)
            .map(|i| {
                c.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(j, &a)| a * self.cols[j][i] as i64)
                    .sum()
            })
            .collect();
        DivisorClass::new(v)
    }
}

impl E7Action {
    pub fn new(cat: &ClassCatalog) -> Result<Self, WeylError> {
        if cat.lattice().rank() != 7 {
            return Err(WeylError::WrongRank(cat.lattice().rank()));
        }
        let classes: Vec<Vector> = cat.pre_minus1().iter().map(to_vector).collect();
        let roots: Vec<Vector> = cat.roots().iter().map(to_vector).collect();
        let class_table = lookup_table(&classes);
        let root_table = lookup_table(&roots);
        let mut basis = [0u8; 7];
        for (i, b) in basis.iter_mut().enumerate() {
            *b = cat
                .pre_index(&DivisorClass::basis(7, i + 1))
                .expect("l_i is exceptional") as u8;
        }
        let mut generators = Vec::new();
        let mut generator_roots = Vec::new();
        for s in simple_roots() {
            let s = to_vector(&s);
            let mut p = [0u8; CLASSES];
            for (a, c) in classes.iter().enumerate() {
                p[a] = class_table[encode(&reflect(c, &s)).expect("reflection stays small")];
            }
            let mut q = [0u8; ROOTS];
            for (a, r) in roots.iter().enumerate() {
                q[a] = root_table[encode(&reflect(r, &s)).expect("reflection stays small")];
            }
            generators.push(p);
            generator_roots.push(q);
        }
        Ok(Self {
            classes,
            roots,
            class_table,
            root_table,
            basis,
            generators,
            generator_roots,
        })
    }

    pub fn identity_key(&self) -> u64 {
        self.basis
            .iter()
            .enumerate()
            .fold(0u64, |k, (i, &b)| k | (b as u64) << (6 * i))
    }

    /// Rebuilds an element from its packed images.
    pub fn element(&self, key: u64) -> WeylElement {
        let mut cols = [[0i8; DIM]; DIM];
        let mut sum = [0i8; DIM];
        for i in 0..7 {
            let c = &self.classes[((key >> (6 * i)) & 63) as usize];
            cols[i + 1] = *c;
            for d in 0..DIM {
                sum[d] += c[d];
            }
        }
        // l0 = (l1 + ... + l7 - K) / 3 with K = (-3, 1, ..., 1).
        cols[0][0] = (sum[0] + 3) / 3;
        for d in 1..DIM {
            cols[0][d] = (sum[d] - 1) / 3;
        }
        WeylElement { key, cols }
    }

    pub fn identity(&self) -> WeylElement {
        self.element(self.identity_key())
    }

    /// Product of simple reflections `s_{w[0]} s_{w[1]} ...` (generator indices 0..7).
    pub fn word(&self, w: &[usize]) -> WeylElement {
        let key = w
            .iter()
            .rev()
            .fold(self.identity_key(), |k, &s| self.left_multiply(k, s));
        self.element(key)
    }

    fn left_multiply(&self, key: u64, generator: usize) -> u64 {
        let p = &self.generators[generator];
        (0..7).fold(0u64, |k, i| k | (p[((key >> (6 * i)) & 63) as usize] as u64) << (6 * i))
    }

    /// `a` after `b`.
    pub fn compose(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        let key = (0..7).fold(0u64, |k, i| {
            let img = self.class_image(a, ((b.key >> (6 * i)) & 63) as u8);
            k | (img as u64) << (6 * i)
        });
        self.element(key)
    }

    pub fn class_image(&self, g: &WeylElement, class: u8) -> u8 {
        self.class_table[encode(&g.apply_vec(&self.classes[class as usize])).expect("image is exceptional")]
    }

    pub fn root_image(&self, g: &WeylElement, root: u8) -> u8 {
        self.root_table[encode(&g.apply_vec(&self.roots[root as usize])).expect("image is a root")]
    }

    pub fn class_perm(&self, g: &WeylElement) -> Vec<u8> {
        (0..CLASSES as u8).map(|c| self.class_image(g, c)).collect()
    }

    pub fn root_perm(&self, g: &WeylElement) -> [u8; ROOTS] {
        let mut p = [0u8; ROOTS];
        for (r, x) in p.iter_mut().enumerate() {
            *x = self.root_image(g, r as u8);
        }
        p
    }

    /// Root permutations of the seven simple reflections.
    pub fn generator_root_perms(&self) -> &[[u8; ROOTS]] {
        &self.generator_roots
    }

    fn generator_hash(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        for p in &self.generators {
            h.update(p);
        }
        h.finalize().into()
    }

    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    pub fn roots_dot(&self, a: u8, b: u8) -> i32 {
        dot(&self.roots[a as usize], &self.roots[b as usize])
    }
}

/// Which elements a trace set is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TraceFilter {
    /// `g(r) = r`.
    FixesRoot(u8),
    /// `g(r1) = r2` and `g(r2) = r1`.
    SwapsPair([u8; 2]),
    /// `g` maps `t0 -> t1 -> t2 -> t3 -> t0`.
    CyclesQuadruple([u8; 4]),
}

impl TraceFilter {
    fn matches(&self, action: &E7Action, g: &WeylElement) -> bool {
        match *self {
            Self::FixesRoot(r) => action.root_image(g, r) == r,
            Self::SwapsPair([a, b]) => action.root_image(g, a) == b && action.root_image(g, b) == a,
            Self::CyclesQuadruple(t) => (0..4).all(|i| action.root_image(g, t[i]) == t[(i + 1) % 4]),
        }
    }
}

/// Traces over the elements selected by a filter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilteredTraces {
    pub filter: TraceFilter,
    pub traces: BTreeSet<i64>,
    pub elements: usize,
}

/// The root sets of the transitivity statement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaSets {
    pub roots: Vec<u8>,
    /// Ordered pairs with product 1.
    pub pairs: Vec<[u8; 2]>,
    /// Ordered orthogonal 4-tuples cyclically permuted by some element.
    pub quadruples: Vec<[u8; 4]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DeltaKind {
    Roots,
    Pairs,
    Quadruples,
}

/// W(E7) as a sorted list of packed elements.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    action: E7Action,
    keys: Vec<u64>,
}

impl WeylGroup {
    /// Breadth-first closure of the identity under left multiplication by
    /// the simple reflections.
    pub fn generate(cat: &ClassCatalog) -> Result<Self, WeylError> {
        let action = E7Action::new(cat)?;
        let start = action.identity_key();
        let mut seen: HashSet<u64> = HashSet::with_capacity(E7_ORDER);
        seen.insert(start);
        let mut layer = vec![start];
        let mut keys = vec![start];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for &k in &layer {
                for s in 0..action.generators.len() {
                    let h = action.left_multiply(k, s);
                    if seen.insert(h) {
                        next.push(h);
                    }
                }
            }
            keys.extend_from_slice(&next);
            layer = next;
        }
        drop(seen);
        if keys.len() != E7_ORDER {
            return Err(WeylError::UnexpectedOrder(keys.len()));
        }
        keys.sort_unstable();
        Ok(Self { action, keys })
    }

    /// Loads the group from `dir` if a matching cache exists, otherwise
    /// generates it and writes the cache.
    pub fn load_or_generate(cat: &ClassCatalog, dir: Option<&Path>) -> Result<Self, WeylError> {
        let Some(dir) = dir else { return Self::generate(cat) };
        let path = dir.join("weyl-e7.bin");
        if path.exists() {
            if let Ok(g) = Self::load(cat, &path) {
                return Ok(g);
            }
        }
        let g = Self::generate(cat)?;
        fs::create_dir_all(dir)?;
        g.save(&path)?;
        Ok(g)
    }

    /// Cache layout: magic, version (u32 LE), generator hash (32 bytes),
    /// element count (u64 LE), then one u64 LE key per element.
    pub fn save(&self, path: &Path) -> Result<(), WeylError> {
        let tmp = path.with_extension("tmp");
        let mut w = io::BufWriter::new(fs::File::create(&tmp)?);
        w.write_all(CACHE_MAGIC)?;
        w.write_all(&CACHE_VERSION.to_le_bytes())?;
        w.write_all(&self.action.generator_hash())?;
        w.write_all(&(self.keys.len() as u64).to_le_bytes())?;
        for k in &self.keys {
            w.write_all(&k.to_le_bytes())?;
        }
        w.flush()?;
        drop(w);
        fs::rename(tmp, path)?;
        Ok(())
    }

    pub fn load(cat: &ClassCatalog, path: &Path) -> Result<Self, WeylError> {
        let action = E7Action::new(cat)?;
        let bad = |reason: &str| WeylError::BadCache {
            path: path.to_path_buf(),
            reason: reason.to_string(),
        };
        let mut r = io::BufReader::new(fs::File::open(path)?);
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != CACHE_MAGIC {
            return Err(bad("wrong magic"));
        }
        let mut word = [0u8; 4];
        r.read_exact(&mut word)?;
        if u32::from_le_bytes(word) != CACHE_VERSION {
            return Err(bad("unsupported version"));
        }
        let mut hash = [0u8; 32];
        r.read_exact(&mut hash)?;
        if hash != action.generator_hash() {
            return Err(bad("generator hash differs"));
        }
        let mut count = [0u8; 8];
        r.read_exact(&mut count)?;
        let count = u64::from_le_bytes(count) as usize;
        if count != E7_ORDER {
            return Err(bad("wrong element count"));
        }
        let mut bytes = vec![0u8; count * 8];
        r.read_exact(&mut bytes)?;
        if r.read(&mut [0u8; 1])? != 0 {
            return Err(bad("trailing data"));
        }
        let keys: Vec<u64> = bytes
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().expect("8 bytes")))
            .collect();
        if keys.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad("keys not strictly increasing"));
        }
        Ok(Self { action, keys })
    }

    pub fn order(&self) -> usize {
        self.keys.len()
    }

    pub fn action(&self) -> &E7Action {
        &self.action
    }

    pub fn keys(&self) -> &[u64] {
        &self.keys
    }

    pub fn contains(&self, g: &WeylElement) -> bool {
        self.keys.binary_search(&g.key).is_ok()
    }

    pub fn elements(&self) -> impl Iterator<Item = WeylElement> + '_ {
        self.keys.iter().map(|&k| self.action.element(k))
    }

    /// Number of elements with each trace.
    pub fn trace_histogram(&self) -> BTreeMap<i64, usize> {
        self.keys
            .par_iter()
            .fold(BTreeMap::new, |mut m, &k| {
                *m.entry(self.action.element(k).trace()).or_insert(0) += 1;
                m
            })
            .reduce(BTreeMap::new, merge_counts)
    }

    /// Trace sets for several filters in one pass over the group.
    pub fn trace_sets(&self, filters: &[TraceFilter]) -> Result<Vec<FilteredTraces>, WeylError> {
        for f in filters {
            self.check_witness(f)?;
        }
        let empty = || vec![(BTreeSet::new(), 0usize); filters.len()];
        let acc = self
            .keys
            .par_iter()
            .fold(empty, |mut acc, &k| {
                let g = self.action.element(k);
                for (slot, f) in acc.iter_mut().zip(filters) {
                    if f.matches(&self.action, &g) {
                        slot.0.insert(g.trace());
                        slot.1 += 1;
                    }
                }
                acc
            })
            .reduce(empty, |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    x.0.extend(y.0);
                    x.1 += y.1;
                }
                a
            });
        filters
            .iter()
            .zip(acc)
            .map(|(&filter, (traces, elements))| {
                if elements == 0 {
                    Err(WeylError::EmptyFilter(filter))
                } else {
                    Ok(FilteredTraces {
                        filter,
                        traces,
                        elements,
                    })
                }
            })
            .collect()
    }

    fn check_witness(&self, f: &TraceFilter) -> Result<(), WeylError> {
        let n = self.action.root_count() as u8;
        let dot = |a: u8, b: u8| self.action.roots_dot(a, b);
        match *f {
            TraceFilter::FixesRoot(r) if r >= n => Err(WeylError::BadWitness(*f, "root index out of range")),
            TraceFilter::SwapsPair([a, b]) if a >= n || b >= n || dot(a, b) != 1 => {
                Err(WeylError::BadWitness(*f, "pair must be two roots with product 1"))
            }
            TraceFilter::CyclesQuadruple(t) => {
                let distinct = (0..4).all(|i| (i + 1..4).all(|j| t[i] != t[j]));
                if t.iter().any(|&x| x >= n) || !distinct || (0..4).any(|i| (i + 1..4).any(|j| dot(t[i], t[j]) != 0)) {
                    Err(WeylError::BadWitness(
                        *f,
                        "quadruple must be four distinct orthogonal roots",
                    ))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// The three root sets; the quadruples are collected by scanning every
    /// element for roots `r` with `r, gr, g^2 r, g^3 r` distinct, pairwise
    /// orthogonal and `g^4 r = r`.
    pub fn delta_sets(&self) -> DeltaSets {
        let n = self.action.root_count() as u8;
        let roots: Vec<u8> = (0..n).collect();
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.action.roots_dot(a, b) == 1 {
                    pairs.push([a, b]);
                }
            }
        }
        let orth = |a: u8, b: u8| self.action.roots_dot(a, b) == 0;
        let found: HashSet<[u8; 4]> = self
            .keys
            .par_iter()
            .fold(HashSet::new, |mut s, &k| {
                let g = self.action.element(k);
                let p = self.action.root_perm(&g);
                for r in 0..n {
                    let t = [
                        r,
                        p[r as usize],
                        p[p[r as usize] as usize],
                        p[p[p[r as usize] as usize] as usize],
                    ];
                    if p[t[3] as usize] != r || t[1] == r || t[2] == r {
                        continue;
                    }
                    if orth(t[0], t[1])
                        && orth(t[0], t[2])
                        && orth(t[0], t[3])
                        && orth(t[1], t[2])
                        && orth(t[1], t[3])
                        && orth(t[2], t[3])
                    {
                        s.insert(t);
                    }
                }
                s
            })
            .reduce(HashSet::new, |mut a, b| {
                a.extend(b);
                a
            });
        let mut quadruples: Vec<[u8; 4]> = found.into_iter().collect();
        quadruples.sort_unstable();
        DeltaSets {
            roots,
            pairs,
            quadruples,
        }
    }

    /// Whether the orbit of the first tuple under the simple reflections is
    /// the whole set.
    pub fn verify_transitivity(&self, sets: &DeltaSets, kind: DeltaKind) -> bool {
        let gens = self.action.generator_root_perms();
        match kind {
            DeltaKind::Roots => orbit_is_whole(&sets.roots.iter().map(|&r| [r]).collect::<Vec<_>>(), gens),
            DeltaKind::Pairs => orbit_is_whole(&sets.pairs, gens),
            DeltaKind::Quadruples => orbit_is_whole(&sets.quadruples, gens),
        }
    }

    /// An element mapping the root set `from` onto the root set `to`, if any.
    /// This is the exact orbit-membership test for configurations.
    pub fn conjugating_element(&self, from: &[u8], to: &[u8]) -> Option<WeylElement> {
        let mut target = to.to_vec();
        target.sort_unstable();
        if from.len() != target.len() {
            return None;
        }
        let found = self.keys.par_iter().find_first(|&&k| {
            let g = self.action.element(k);
            let mut img: Vec<u8> = from.iter().map(|&r| self.action.root_image(&g, r)).collect();
            img.sort_unstable();
            img == target
        });
        found.map(|&k| self.action.element(k))
    }

    /// Elements of least trace.
    pub fn min_trace_elements(&self) -> Vec<WeylElement> {
        let min = self
            .keys
            .par_iter()
            .map(|&k| self.action.element(k).trace())
            .min()
            .expect("group is nonempty");
        self.keys
            .iter()
            .map(|&k| self.action.element(k))
            .filter(|g| g.trace() == min)
            .collect()
    }

    /// Number of elements fixing a root (for the orbit-stabilizer check).
    pub fn stabilizer_size(&self, root: u8) -> usize {
        self.keys
            .par_iter()
            .filter(|&&k| self.action.root_image(&self.action.element(k), root) == root)
            .count()
    }
}

fn merge_counts(mut a: BTreeMap<i64, usize>, b: BTreeMap<i64, usize>) -> BTreeMap<i64, usize> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

fn orbit_is_whole<const N: usize>(set: &[[u8; N]], gens: &[[u8; ROOTS]]) -> bool {
    let Some(&seed) = set.first() else { return false };
    let members: HashSet<[u8; N]> = set.iter().copied().collect();
    let mut seen = HashSet::from([seed]);
    let mut queue = VecDeque::from([seed]);
    while let Some(t) = queue.pop_front() {
        for p in gens {
            let img = t.map(|x| p[x as usize]);
            if !members.contains(&img) {
                return false;
            }
            if seen.insert(img) {
                queue.push_back(img);
            }
        }
    }
    seen.len() == members.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn action() -> E7Action {
        E7Action::new(&ClassCatalog::degree_two()).unwrap()
    }

    #[test]
    fn identity_and_generators() {
        let a = action();
        let id = a.identity();
        assert_eq!(id.trace(), 8);
        assert_eq!(a.class_perm(&id), (0..56).collect::<Vec<u8>>());
        let k = ClassCatalog::degree_two().canonical_class();
        for s in 0..7 {
            let g = a.word(&[s]);
            assert_eq!(g.trace(), 6);
            assert_eq!(a.word(&[s, s]), id);
            assert_eq!(g.apply(&k), k);
        }
    }

    #[test]
    fn matrix_matches_reflection_formula() {
        let cat = ClassCatalog::degree_two();
        let a = E7Action::new(&cat).unwrap();
        let simple = simple_roots();
        let g = a.word(&[6]);
        for c in cat.pre_minus1() {
            assert_eq!(g.apply(c), cat.lattice().reflect(c, &simple[6]).unwrap());
        }
    }

    #[test]
    fn composition_agrees_with_words() {
        let a = action();
        let x = a.word(&[0, 6, 2]);
        let y = a.word(&[5, 1, 6, 3]);
        assert_eq!(a.compose(&x, &y), a.word(&[0, 6, 2, 5, 1, 6, 3]));
        let cat = ClassCatalog::degree_two();
        for c in cat.pre_minus1() {
            assert_eq!(a.compose(&x, &y).apply(c), x.apply(&y.apply(c)));
        }
    }

    #[test]
    fn witnesses_are_checked() {
        let cat = ClassCatalog::degree_two();
        let g = WeylGroup {
            action: E7Action::new(&cat).unwrap(),
            keys: vec![],
        };
        assert!(matches!(
            g.trace_sets(&[TraceFilter::SwapsPair([0, 0])]),
            Err(WeylError::BadWitness(..))
        ));
        assert!(matches!(
            g.trace_sets(&[TraceFilter::CyclesQuadruple([0, 0, 1, 2])]),
            Err(WeylError::BadWitness(..))
        ));
        assert!(matches!(
            g.trace_sets(&[TraceFilter::FixesRoot(0)]),
            Err(WeylError::EmptyFilter(_))
        ));
    }
}
