//! Intersection tables between the named families.
//!
//! The computed side groups every pair of family members by how their index
//! tuples overlap and records the (constant) product on each group. The
//! reference side lists the published case predicates; checking one against the
//! other turns the published tables into a test oracle.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{ClassCatalog, ClassError, Family};

/// Positions `(p, q)` with `left[p] == right[q]`.
pub type IndexPattern = Vec<(usize, usize)>;

fn pattern(left: &[usize], right: &[usize]) -> IndexPattern {
    let mut p = Vec::new();
    for (i, a) in left.iter().enumerate() {
        for (j, b) in right.iter().enumerate() {
            if a == b {
                p.push((i, j));
            }
        }
    }
    p
}

fn describe(p: &IndexPattern) -> String {
    if p.is_empty() {
        return "disjoint".to_string();
    }
    p.iter()
        .map(|(i, j)| format!("L{i}=R{j}"))
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleCase {
    pub pattern: IndexPattern,
    pub description: String,
    pub value: i64,
    pub pairs: usize,
}

/// Intersection values of two families, one case per index pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleTable {
    pub left: Family,
    pub right: Family,
    pub cases: Vec<RuleCase>,
}

/// Evaluates every pair of members and groups by index pattern.
pub fn intersection_table(cat: &ClassCatalog, left: Family, right: Family) -> Result<RuleTable, ClassError> {
    if cat.lattice().rank() != 7 {
        return Err(ClassError::NamesNeedRankSeven(cat.lattice().rank()));
    }
    let mut groups: BTreeMap<IndexPattern, (i64, usize)> = BTreeMap::new();
    for (li, lc) in left.members() {
        for (ri, rc) in right.members() {
            let p = pattern(&li, &ri);
            let v = lc.dot(&rc);
            let entry = groups.entry(p.clone()).or_insert((v, 0));
            if entry.0 != v {
                return Err(ClassError::NonConstantPattern {
                    left,
                    right,
                    pattern: describe(&p),
                });
            }
            entry.1 += 1;
        }
    }
    let cases = groups
        .into_iter()
        .map(|(pattern, (value, pairs))| RuleCase {
            description: describe(&pattern),
            pattern,
            value,
            pairs,
        })
        .collect();
    Ok(RuleTable { left, right, cases })
}

/// One published table cell: a predicate on the index tuples and its value.
#[derive(Clone, Copy)]
pub struct ReferenceCell {
    pub left: Family,
    pub right: Family,
    pub condition: &'static str,
    pub value: i64,
    pub holds: fn(&[usize], &[usize]) -> bool,
}

fn common(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

macro_rules! cell {
    ($l:ident, $r:ident, $cond:expr, $v:expr, |$a:ident, $b:ident| $body:expr) => {
        ReferenceCell {
            left: Family::$l,
            right: Family::$r,
            condition: $cond,
            value: $v,
            holds: |$a: &[usize], $b: &[usize]| $body,
        }
    };
}

/// The three published intersection tables, cell by cell.
///
/// Left tuples are `(i, j, ...)`, right tuples `(k, l, m)` for the mixed tables
/// and `(l, m, n)` for the root table, matching the published variable names.
pub fn reference_cells() -> Vec<ReferenceCell> {
    vec![
        // pre(-1) against pre(-1)
        cell!(A, A, "i = k", -1, |a, b| a[0] == b[0]),
        cell!(A, A, "i != k", 0, |a, b| a[0] != b[0]),
        cell!(A, B, "i in {k,l}", 1, |a, b| b.contains(&a[0])),
        cell!(A, B, "i not in {k,l}", 0, |a, b| !b.contains(&a[0])),
        cell!(A, C, "i in {k,l}", 0, |a, b| b.contains(&a[0])),
        cell!(A, C, "i not in {k,l}", 1, |a, b| !b.contains(&a[0])),
        cell!(A, D, "i = k", 2, |a, b| a[0] == b[0]),
        cell!(A, D, "i != k", 1, |a, b| a[0] != b[0]),
        cell!(B, B, "|{i,j} & {k,l}| = 2", -1, |a, b| common(a, b) == 2),
        cell!(B, B, "|{i,j} & {k,l}| = 1", 0, |a, b| common(a, b) == 1),
        cell!(B, B, "|{i,j} & {k,l}| = 0", 1, |a, b| common(a, b) == 0),
        cell!(B, C, "|{i,j} & {k,l}| = 2", 2, |a, b| common(a, b) == 2),
        cell!(B, C, "|{i,j} & {k,l}| = 1", 1, |a, b| common(a, b) == 1),
        cell!(B, C, "|{i,j} & {k,l}| = 0", 0, |a, b| common(a, b) == 0),
        cell!(B, D, "k in {i,j}", 0, |a, b| a.contains(&b[0])),
        cell!(B, D, "k not in {i,j}", 1, |a, b| !a.contains(&b[0])),
        cell!(C, C, "|{i,j} & {k,l}| = 2", -1, |a, b| common(a, b) == 2),
        cell!(C, C, "|{i,j} & {k,l}| = 1", 0, |a, b| common(a, b) == 1),
        cell!(C, C, "|{i,j} & {k,l}| = 0", 1, |a, b| common(a, b) == 0),
        cell!(C, D, "k in {i,j}", 1, |a, b| a.contains(&b[0])),
        cell!(C, D, "k not in {i,j}", 0, |a, b| !a.contains(&b[0])),
        cell!(D, D, "i = k", -1, |a, b| a[0] == b[0]),
        cell!(D, D, "i != k", 0, |a, b| a[0] != b[0]),
        // roots against roots
        cell!(APrime, APrime, "(i,j) = (l,m)", -2, |a, b| a == b),
        cell!(APrime, APrime, "i = m, j = l", 2, |a, b| a[0] == b[1] && a[1] == b[0]),
        cell!(APrime, APrime, "i = l, j != m", -1, |a, b| a[0] == b[0] && a[1] != b[1]),
        cell!(APrime, APrime, "i = m, j != l", 1, |a, b| a[0] == b[1] && a[1] != b[0]),
        cell!(APrime, APrime, "i != l, j = m", -1, |a, b| a[0] != b[0] && a[1] == b[1]),
        cell!(APrime, APrime, "{i,j} & {l,m} empty", 0, |a, b| common(a, b) == 0),
        cell!(APrime, BPrime, "{i,j} in {l,m,n}", 0, |a, b| common(a, b) == 2),
        cell!(APrime, BPrime, "only i in {l,m,n}", 1, |a, b| b.contains(&a[0])
            && !b.contains(&a[1])),
        cell!(APrime, BPrime, "only j in {l,m,n}", -1, |a, b| !b.contains(&a[0])
            && b.contains(&a[1])),
        cell!(APrime, BPrime, "i, j not in {l,m,n}", 0, |a, b| common(a, b) == 0),
        cell!(APrime, CPrime, "i = l", -1, |a, b| a[0] == b[0]),
        cell!(APrime, CPrime, "j = l", 1, |a, b| a[1] == b[0]),
        cell!(APrime, CPrime, "l not in {i,j}", 0, |a, b| !a.contains(&b[0])),
        cell!(BPrime, BPrime, "|{i,j,k} & {l,m,n}| = 3", -2, |a, b| common(a, b) == 3),
        cell!(BPrime, BPrime, "|{i,j,k} & {l,m,n}| = 2", -1, |a, b| common(a, b) == 2),
        cell!(BPrime, BPrime, "|{i,j,k} & {l,m,n}| = 1", 0, |a, b| common(a, b) == 1),
        cell!(BPrime, BPrime, "|{i,j,k} & {l,m,n}| = 0", 1, |a, b| common(a, b) == 0),
        cell!(BPrime, CPrime, "l in {i,j,k}", 0, |a, b| a.contains(&b[0])),
        cell!(BPrime, CPrime, "l not in {i,j,k}", -1, |a, b| !a.contains(&b[0])),
        cell!(CPrime, CPrime, "i = l", -2, |a, b| a[0] == b[0]),
        cell!(CPrime, CPrime, "i != l", -1, |a, b| a[0] != b[0]),
        // pre(-1) against roots
        cell!(A, APrime, "i = k", -1, |a, b| a[0] == b[0]),
        cell!(A, APrime, "i = l", 1, |a, b| a[0] == b[1]),
        cell!(A, APrime, "i not in {k,l}", 0, |a, b| !b.contains(&a[0])),
        cell!(A, BPrime, "i in {k,l,m}", 1, |a, b| b.contains(&a[0])),
        cell!(A, BPrime, "i not in {k,l,m}", 0, |a, b| !b.contains(&a[0])),
        cell!(A, CPrime, "i = k", 0, |a, b| a[0] == b[0]),
        cell!(A, CPrime, "i != k", 1, |a, b| a[0] != b[0]),
        cell!(B, APrime, "{k,l} in {i,j}", 0, |a, b| common(a, b) == 2),
        cell!(B, APrime, "only k in {i,j}", 1, |a, b| a.contains(&b[0])
            && !a.contains(&b[1])),
        cell!(B, APrime, "only l in {i,j}", -1, |a, b| !a.contains(&b[0])
            && a.contains(&b[1])),
        cell!(B, APrime, "k, l not in {i,j}", 0, |a, b| common(a, b) == 0),
        cell!(B, BPrime, "|{i,j} & {k,l,m}| = 2", -1, |a, b| common(a, b) == 2),
        cell!(B, BPrime, "|{i,j} & {k,l,m}| = 1", 0, |a, b| common(a, b) == 1),
        cell!(B, BPrime, "|{i,j} & {k,l,m}| = 0", 1, |a, b| common(a, b) == 0),
        cell!(B, CPrime, "k in {i,j}", 1, |a, b| a.contains(&b[0])),
        cell!(B, CPrime, "k not in {i,j}", 0, |a, b| !a.contains(&b[0])),
        cell!(C, APrime, "{k,l} in {i,j}", 0, |a, b| common(a, b) == 2),
        cell!(C, APrime, "only k in {i,j}", -1, |a, b| a.contains(&b[0])
            && !a.contains(&b[1])),
        cell!(C, APrime, "only l in {i,j}", 1, |a, b| !a.contains(&b[0])
            && a.contains(&b[1])),
        cell!(C, APrime, "k, l not in {i,j}", 0, |a, b| common(a, b) == 0),
        cell!(C, BPrime, "|{i,j} & {k,l,m}| = 2", 1, |a, b| common(a, b) == 2),
        cell!(C, BPrime, "|{i,j} & {k,l,m}| = 1", 0, |a, b| common(a, b) == 1),
        cell!(C, BPrime, "|{i,j} & {k,l,m}| = 0", -1, |a, b| common(a, b) == 0),
        cell!(C, CPrime, "k in {i,j}", -1, |a, b| a.contains(&b[0])),
        cell!(C, CPrime, "k not in {i,j}", 0, |a, b| !a.contains(&b[0])),
        cell!(D, APrime, "i = k", 1, |a, b| a[0] == b[0]),
        cell!(D, APrime, "i = l", -1, |a, b| a[0] == b[1]),
        cell!(D, APrime, "i not in {k,l}", 0, |a, b| !b.contains(&a[0])),
        cell!(D, BPrime, "i in {k,l,m}", -1, |a, b| b.contains(&a[0])),
        cell!(D, BPrime, "i not in {k,l,m}", 0, |a, b| !b.contains(&a[0])),
        cell!(D, CPrime, "i = k", 0, |a, b| a[0] == b[0]),
        cell!(D, CPrime, "i != k", -1, |a, b| a[0] != b[0]),
    ]
}

/// A published cell contradicted by some member pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellMismatch {
    pub left: Family,
    pub right: Family,
    pub condition: String,
    pub expected: i64,
    pub found: i64,
    pub witness: (Vec<usize>, Vec<usize>),
}

/// Index patterns of a family pair that no published cell covers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UncoveredCase {
    pub left: Family,
    pub right: Family,
    pub description: String,
    pub value: i64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct TableCheck {
    pub cells: usize,
    pub pairs_checked: usize,
    pub mismatches: Vec<CellMismatch>,
    pub uncovered: Vec<UncoveredCase>,
}

/// Compares every published cell with the brute-force products.
pub fn check_reference_tables() -> TableCheck {
    let cells = reference_cells();
    let mut out = TableCheck {
        cells: cells.len(),
        ..Default::default()
    };
    let mut family_pairs: Vec<(Family, Family)> = cells.iter().map(|c| (c.left, c.right)).collect();
    family_pairs.dedup();
    for (lf, rf) in family_pairs {
        let row: Vec<&ReferenceCell> = cells.iter().filter(|c| c.left == lf && c.right == rf).collect();
        let mut uncovered: BTreeMap<IndexPattern, i64> = BTreeMap::new();
        for (li, lc) in lf.members() {
            for (ri, rc) in rf.members() {
                let v = lc.dot(&rc);
                out.pairs_checked += 1;
                let mut covered = false;
                for cell in &row {
                    if (cell.holds)(&li, &ri) {
                        covered = true;
                        if cell.value != v
                            && !out
                                .mismatches
                                .iter()
                                .any(|m| m.condition == cell.condition && m.left == lf && m.right == rf)
                        {
                            out.mismatches.push(CellMismatch {
                                left: lf,
                                right: rf,
                                condition: cell.condition.to_string(),
                                expected: cell.value,
                                found: v,
                                witness: (li.clone(), ri.clone()),
                            });
                        }
                    }
                }
                if !covered {
                    uncovered.insert(pattern(&li, &ri), v);
                }
            }
        }
        out.uncovered
            .extend(uncovered.into_iter().map(|(p, value)| UncoveredCase {
                left: lf,
                right: rf,
                description: describe(&p),
                value,
            }));
    }
    out
}

/// Every product of the published table ranges: pre(-1) x pre(-1), positive
/// roots x positive roots, pre(-1) x positive roots.
pub fn all_pair_rows(cat: &ClassCatalog) -> Result<Vec<(String, String, i64)>, ClassError> {
    if cat.lattice().rank() != 7 {
        return Err(ClassError::NamesNeedRankSeven(cat.lattice().rank()));
    }
    let pre: Vec<_> = Family::PRE_MINUS1
        .iter()
        .flat_map(|f| f.members().into_iter().map(move |(i, c)| (f, i, c)))
        .collect();
    let roots: Vec<_> = Family::ROOTS
        .iter()
        .flat_map(|f| f.members().into_iter().map(move |(i, c)| (f, i, c)))
        .collect();
    let name = |f: &Family, i: &[usize]| {
        let mut s = f.to_string();
        for x in i {
            s.push_str(&x.to_string());
        }
        s
    };
    let mut rows = Vec::new();
    for (a, b) in [(&pre, &pre), (&roots, &roots), (&pre, &roots)] {
        for (lf, li, lc) in a.iter() {
            for (rf, ri, rc) in b.iter() {
                rows.push((name(lf, li), name(rf, ri), lc.dot(rc)));
            }
        }
    }
    Ok(rows)
}
