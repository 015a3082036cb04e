//! The Picard lattice `Z^{1,r}` of a blow-up of the plane in `r` points.
//!
//! Classes are integer vectors `(a0, a1, ..., ar)` in the basis `l0, l1, ..., lr`
//! with intersection form `diag(1, -1, ..., -1)`. Everything here is exact.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported number of blown-up points.
pub const MAX_RANK: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("unsupported lattice rank {0} (expected 0..=8)")]
    UnsupportedRank(usize),
    #[error("class has {found} coefficients, lattice of rank {rank} needs {}", rank + 1)]
    RankMismatch { rank: usize, found: usize },
    #[error("{class} is not a root (square {square}, expected -2)")]
    InvalidRoot { class: DivisorClass, square: i64 },
    #[error("cannot contract: {0}")]
    Contraction(String),
}

/// A divisor class `a0 l0 + a1 l1 + ... + ar lr`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass(Vec<i64>);

impl DivisorClass {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Self(coeffs)
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank + 1])
    }

    /// The basis vector `l_i`.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank + 1];
        c[i] = 1;
        Self(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    /// Number of blown-up points this class lives over.
    pub fn rank(&self) -> usize {
        self.0.len() - 1
    }

    /// Intersection product; both classes must have the same length.
    pub fn dot(&self, other: &Self) -> i64 {
        assert_eq!(self.0.len(), other.0.len(), "intersection of classes of different rank");
        let (h, rest) = self.0.split_first().expect("class has at least one coefficient");
        let (oh, orest) = other.0.split_first().expect("class has at least one coefficient");
        h * oh - rest.iter().zip(orest).map(|(a, b)| a * b).sum::<i64>()
    }

    pub fn square(&self) -> i64 {
        self.dot(self)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self(self.0.iter().map(|a| a * k).collect())
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, k: i64, other: &Self) -> Self {
        assert_eq!(self.0.len(), other.0.len());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + k * b).collect())
    }

    /// Exact division of every coefficient, `None` if some coefficient is not divisible.
    pub fn div_exact(&self, k: i64) -> Option<Self> {
        self.0
            .iter()
            .map(|a| (a % k == 0).then_some(a / k))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: Self) -> DivisorClass {
        self.add_scaled(1, rhs)
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: Self) -> DivisorClass {
        self.add_scaled(-1, rhs)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.scale(-1)
    }
}

/// `Z^{1,r}` with `r` in `0..=8`; the surface has degree `9 - r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceLattice {
    rank: usize,
}

impl SurfaceLattice {
    pub fn new(rank: usize) -> Result<Self, LatticeError> {
        if rank > MAX_RANK {
            return Err(LatticeError::UnsupportedRank(rank));
        }
        Ok(Self { rank })
    }

    /// The degree-2 lattice `Z^{1,7}`.
    pub fn degree_two() -> Self {
        Self { rank: 7 }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> i64 {
        9 - self.rank as i64
    }

    /// Number of coefficients of a class.
    pub fn dim(&self) -> usize {
        self.rank + 1
    }

    pub fn check(&self, c: &DivisorClass) -> Result<(), LatticeError> {
        if c.coeffs().len() == self.dim() {
            Ok(())
        } else {
            Err(LatticeError::RankMismatch {
                rank: self.rank,
                found: c.coeffs().len(),
            })
        }
    }

    /// Builds a class after checking its length.
    pub fn class(&self, coeffs: Vec<i64>) -> Result<DivisorClass, LatticeError> {
        let c = DivisorClass::new(coeffs);
        self.check(&c)?;
        Ok(c)
    }

    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64, LatticeError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.dot(b))
    }

    /// `K = -3 l0 + l1 + ... + lr`.
    pub fn canonical_class(&self) -> DivisorClass {
        let mut c = vec![1; self.dim()];
        c[0] = -3;
        DivisorClass::new(c)
    }

    /// Reflection `x + (x.r) r` in a root `r` (`r.r = -2`).
    pub fn reflect(&self, x: &DivisorClass, root: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        self.check(x)?;
        self.check(root)?;
        let square = root.square();
        if square != -2 {
            return Err(LatticeError::InvalidRoot {
                class: root.clone(),
                square,
            });
        }
        Ok(x.add_scaled(x.dot(root), root))
    }

    /// Contracts pairwise disjoint exceptional classes and rebases the orthogonal
    /// complement of their span.
    pub fn blow_down(&self, curves: &[DivisorClass]) -> Result<Contraction, LatticeError> {
        Contraction::new(*self, curves)
    }
}

/// Lattice of the image of a contraction.
///
/// Contracting `m` disjoint exceptional classes from `Z^{1,r}` leaves a unimodular
/// lattice of rank `r - m + 1`. It is `Z^{1,r-m}` except when two classes remain
/// and the complement is even; that is the hyperbolic plane `U` (the lattice of
/// the quadric and of the second Hirzebruch surface).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TargetLattice {
    Standard(SurfaceLattice),
    HyperbolicPlane,
}

impl TargetLattice {
    pub fn degree(&self) -> i64 {
        match self {
            Self::Standard(lat) => lat.degree(),
            Self::HyperbolicPlane => 8,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Standard(lat) => lat.dim(),
            Self::HyperbolicPlane => 2,
        }
    }

    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> i64 {
        match self {
            Self::Standard(_) => a.dot(b),
            Self::HyperbolicPlane => {
                let (a, b) = (a.coeffs(), b.coeffs());
                a[0] * b[1] + a[1] * b[0]
            }
        }
    }

    pub fn canonical_class(&self) -> DivisorClass {
        match self {
            Self::Standard(lat) => lat.canonical_class(),
            Self::HyperbolicPlane => DivisorClass::new(vec![-2, -2]),
        }
    }
}

/// A contraction of disjoint exceptional classes together with the rebasing data.
#[derive(Debug, Clone, Serialize)]
pub struct Contraction {
    pub source: SurfaceLattice,
    pub target: TargetLattice,
    pub curves: Vec<DivisorClass>,
    /// Row-major isometry of the source lattice fixing `K`, sending the contracted
    /// classes to the last basis vectors (or, in the hyperbolic case, all but one
    /// of them, the last being sent to `l0 - l1 - l2`).
    pub rebasing: Vec<Vec<i64>>,
}

impl Contraction {
    fn new(source: SurfaceLattice, curves: &[DivisorClass]) -> Result<Self, LatticeError> {
        let k = source.canonical_class();
        for c in curves {
            source.check(c)?;
            if c.square() != -1 || c.dot(&k) != -1 {
                return Err(LatticeError::Contraction(format!("{c} is not an exceptional class")));
            }
        }
        for (i, a) in curves.iter().enumerate() {
            for b in &curves[i + 1..] {
                if a == b || a.dot(b) != 0 {
                    return Err(LatticeError::Contraction(format!("{a} and {b} are not disjoint")));
                }
            }
        }

        let n = source.dim();
        let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        let mut top = source.rank();
        let mut hyperbolic = false;
        for (step, curve) in curves.iter().enumerate().rev() {
            let mut e = apply(&m, curve);
            let mut guard = 0;
            while e.coeffs()[0] > 0 {
                guard += 1;
                if top < 3 {
                    let c = e.coeffs();
                    let last = step == 0 && top == 2 && c[..3] == [1, -1, -1] && c[3..].iter().all(|&a| a == 0);
                    if last {
                        hyperbolic = true;
                        break;
                    }
                    return Err(LatticeError::Contraction(format!("cannot normalise {curve}")));
                }
                if guard > 64 {
                    return Err(LatticeError::Contraction(format!(
                        "degree reduction of {curve} stalled"
                    )));
                }
                let mut idx: Vec<usize> = (1..=top).collect();
                idx.sort_by_key(|&i| (e.coeffs()[i], i));
                let mut r = vec![0; n];
                r[0] = 1;
                for &i in &idx[..3] {
                    r[i] = -1;
                }
                let r = DivisorClass::new(r);
                m = reflect_rows(&m, &r);
                e = e.add_scaled(e.dot(&r), &r);
            }
            if hyperbolic {
                break;
            }
            let j = e.coeffs().iter().position(|&a| a == 1).filter(|&j| j > 0 && j <= top);
            let Some(j) = j else {
                return Err(LatticeError::Contraction(format!("cannot normalise {curve}")));
            };
            if j != top {
                let mut r = vec![0; n];
                r[j] = 1;
                r[top] = -1;
                m = reflect_rows(&m, &DivisorClass::new(r));
            }
            top -= 1;
        }

        let target = if hyperbolic {
            TargetLattice::HyperbolicPlane
        } else {
            TargetLattice::Standard(SurfaceLattice { rank: top })
        };
        Ok(Self {
            source,
            target,
            curves: curves.to_vec(),
            rebasing: m,
        })
    }

    /// Push-forward `c + sum (c.E) E`, expressed in the target basis.
    pub fn project(&self, c: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        self.source.check(c)?;
        let y = apply(&self.rebasing, c);
        match self.target {
            TargetLattice::Standard(lat) => Ok(DivisorClass::new(y.coeffs()[..lat.dim()].to_vec())),
            TargetLattice::HyperbolicPlane => {
                let y = DivisorClass::new(y.coeffs()[..3].to_vec());
                let e = DivisorClass::new(vec![1, -1, -1]);
                let y = y.add_scaled(y.dot(&e), &e);
                // The complement of l0 - l1 - l2 has basis (l0 - l1, l0 - l2).
                Ok(DivisorClass::new(vec![-y.coeffs()[1], -y.coeffs()[2]]))
            }
        }
    }
}

fn apply(m: &[Vec<i64>], c: &DivisorClass) -> DivisorClass {
    DivisorClass::new(
        m.iter()
            .map(|row| row.iter().zip(c.coeffs()).map(|(a, b)| a * b).sum())
            .collect(),
    )
}

/// Left-multiplies `m` by the reflection in `r`.
fn reflect_rows(m: &[Vec<i64>], r: &DivisorClass) -> Vec<Vec<i64>> {
    let n = m.len();
    let cols: Vec<DivisorClass> = (0..n)
        .map(|j| DivisorClass::new(m.iter().map(|row| row[j]).collect()))
        .collect();
    let images: Vec<DivisorClass> = cols.iter().map(|c| c.add_scaled(c.dot(r), r)).collect();
    (0..n).map(|i| images.iter().map(|c| c.coeffs()[i]).collect()).collect()
}
