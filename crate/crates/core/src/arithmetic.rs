//! Point-count bounds over finite fields for the three possibly-minimal
//! cases, and the resulting thresholds on q. All comparisons involving
//! `sqrt(q)` are done in integers.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

/// Prime powers are scanned up to this bound before the analytic tail argument applies.
pub const DEFAULT_HORIZON: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("characteristic-2 flag {char2} is inconsistent with q = {q}")]
    CharacteristicMismatch { q: u64, char2: bool },
    #[error("unknown case {0:?}; expected 1, 2 or 3")]
    UnknownCase(String),
    #[error("scan bound {0} is too small")]
    BadBound(u64),
    #[error("no prime power up to {0} starts a passing tail")]
    NoThreshold(u64),
}

/// The three singularity configurations that can be minimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ArithmeticCase {
    /// A single A1 point.
    One,
    /// One A2 point whose two roots are Galois conjugate.
    Two,
    /// Four A1 points forming a single Galois orbit.
    Three,
}

/// How the point count of the singular surface relates to its resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PointRelation {
    /// `#X >= #X~ - q`: the exceptional curve may contribute `q + 1` points.
    AtLeastResolutionMinusQ,
    /// `#X = #X~`: the exceptional locus has a single rational point.
    EqualsResolution,
}

impl ArithmeticCase {
    pub const ALL: [Self; 3] = [Self::One, Self::Two, Self::Three];

    pub fn label(self) -> &'static str {
        match self {
            Self::One => "①",
            Self::Two => "②",
            Self::Three => "③",
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Self::One => 1,
            Self::Two => 2,
            Self::Three => 3,
        }
    }

    /// Singularity type of the case.
    pub fn type_name(self) -> &'static str {
        match self {
            Self::One => "A1",
            Self::Two => "A2",
            Self::Three => "4A1",
        }
    }

    /// Least trace of Frobenius compatible with the case.
    pub fn min_trace(self) -> i64 {
        match self {
            Self::One | Self::Two => -4,
            Self::Three => 0,
        }
    }

    pub fn point_relation(self) -> PointRelation {
        match self {
            Self::One => PointRelation::AtLeastResolutionMinusQ,
            Self::Two | Self::Three => PointRelation::EqualsResolution,
        }
    }

    /// Number of free (-1)-curves on the resolution.
    pub fn free_minus1_count(self) -> u64 {
        match self {
            Self::One => 32,
            Self::Two => 20,
            Self::Three => 8,
        }
    }

    /// Rational points off the ramification curve that guarantee one not on
    /// any (-1)-curve: a point lies on at most four of them.
    pub fn required_points(self) -> u64 {
        self.free_minus1_count() / 4 + 1
    }

    /// Threshold on q claimed for the case.
    pub fn stated_threshold(self) -> u64 {
        match self {
            Self::One => 9,
            Self::Two => 8,
            Self::Three => 4,
        }
    }
}

impl fmt::Display for ArithmeticCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ArithmeticCase {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "1" | "①" => Ok(Self::One),
            "2" | "②" => Ok(Self::Two),
            "3" | "③" => Ok(Self::Three),
            other => Err(ArithError::UnknownCase(other.to_string())),
        }
    }
}

/// `q = p^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PrimePower {
    pub q: u64,
    pub p: u64,
    pub k: u32,
}

impl PrimePower {
    pub fn new(q: u64) -> Result<Self, ArithError> {
        let p = smallest_factor(q).ok_or(ArithError::NotPrimePower(q))?;
        let mut rest = q;
        let mut k = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(ArithError::NotPrimePower(q));
        }
        Ok(Self { q, p, k })
    }

    pub fn is_char2(self) -> bool {
        self.p == 2
    }
}

fn smallest_factor(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return Some(d);
        }
        d += 1;
    }
    Some(n)
}

/// Sorted prime powers in `2..=n`.
pub fn prime_powers_up_to(n: u64) -> Result<Vec<PrimePower>, ArithError> {
    if n < 2 {
        return Err(ArithError::BadBound(n));
    }
    let len = n as usize + 1;
    let mut composite = vec![false; len];
    let mut out = Vec::new();
    for p in 2..len {
        if composite[p] {
            continue;
        }
        let mut m = p * p;
        while m < len {
            composite[m] = true;
            m += p;
        }
        let (mut q, mut k) = (p as u64, 1);
        while q <= n {
            out.push(PrimePower { q, p: p as u64, k });
            match q.checked_mul(p as u64) {
                Some(next) => q = next,
                None => break,
            }
            k += 1;
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// The exact quantity `a + b * sqrt(q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SqrtBound {
    pub a: i64,
    pub b: i64,
    pub q: u64,
}

impl SqrtBound {
    /// `floor(b * sqrt(q))` for `b >= 0`, computed as `isqrt(b^2 q)`.
    pub fn floor_sqrt_part(&self) -> i64 {
        debug_assert!(self.b >= 0);
        ((self.b * self.b) as u64 * self.q).isqrt() as i64
    }

    /// Whether `m <= a + b sqrt(q)`, decided by isolating the root and squaring.
    pub fn at_least(&self, m: i64) -> bool {
        let d = m - self.a;
        d <= 0 || ((d as i128) * (d as i128) <= (self.b as i128) * (self.b as i128) * self.q as i128)
    }

    pub fn floor(&self) -> i64 {
        self.a + self.floor_sqrt_part()
    }
}

impl fmt::Display for SqrtBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.b {
            0 => write!(f, "{}", self.a),
            b => write!(f, "{}+{}*sqrt({})", self.a, b, self.q),
        }
    }
}

fn checked_field(q: u64, char2: bool) -> Result<PrimePower, ArithError> {
    let pp = PrimePower::new(q)?;
    if pp.is_char2() != char2 {
        return Err(ArithError::CharacteristicMismatch { q, char2 });
    }
    Ok(pp)
}

/// Lower bound on `#X(k)`: `q^2 + q * min_trace + 1`, minus a further `q` in case ①.
pub fn min_surface_points(q: u64, case: ArithmeticCase) -> Result<i64, ArithError> {
    PrimePower::new(q)?;
    let q = q as i64;
    let resolution = q * q + q * case.min_trace() + 1;
    Ok(match case.point_relation() {
        PointRelation::AtLeastResolutionMinusQ => resolution - q,
        PointRelation::EqualsResolution => resolution,
    })
}

/// Upper bound on the rational points of the ramification curve.
pub fn ramification_point_bound(q: u64, case: ArithmeticCase, char2: bool) -> Result<SqrtBound, ArithError> {
    checked_field(q, char2)?;
    let qi = q as i64;
    let (a, b) = if char2 {
        (2 * qi + 1, 0)
    } else {
        match case {
            // Genus-2 curve, plus one for the singular point of the branch curve.
            ArithmeticCase::One => (qi + 2, 4),
            ArithmeticCase::Two => (qi + 1, 4),
            // Two conjugate lines: at most two rational points off their meeting point.
            ArithmeticCase::Three => (2 * qi + 2, 0),
        }
    };
    Ok(SqrtBound { a, b, q })
}

/// Least integer that `#(X \ R)(k)` is guaranteed to reach:
/// `ceil(min_X - a - b sqrt(q)) = min_X - a - floor(b sqrt(q))`.
pub fn off_ramification_lower_bound(q: u64, case: ArithmeticCase, char2: bool) -> Result<i64, ArithError> {
    let r = ramification_point_bound(q, case, char2)?;
    Ok(min_surface_points(q, case)? - r.floor())
}

pub fn required_point_count(case: ArithmeticCase) -> u64 {
    case.required_points()
}

/// One row of a bound table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub q: u64,
    pub characteristic: u64,
    pub min_x: i64,
    pub max_r: String,
    pub min_off_r: i64,
    pub required: u64,
    pub ok: bool,
}

pub fn bound_row(q: u64, case: ArithmeticCase) -> Result<BoundRow, ArithError> {
    let pp = PrimePower::new(q)?;
    let r = ramification_point_bound(q, case, pp.is_char2())?;
    let min_off_r = off_ramification_lower_bound(q, case, pp.is_char2())?;
    let required = required_point_count(case);
    Ok(BoundRow {
        q,
        characteristic: pp.p,
        min_x: min_surface_points(q, case)?,
        max_r: r.to_string(),
        min_off_r,
        required,
        ok: min_off_r >= required as i64,
    })
}

pub fn bound_table(case: ArithmeticCase, qmax: u64) -> Result<Vec<BoundRow>, ArithError> {
    prime_powers_up_to(qmax)?
        .into_iter()
        .map(|pp| bound_row(pp.q, case))
        .collect()
}

/// Scan result behind a threshold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Threshold {
    pub case: ArithmeticCase,
    pub threshold: u64,
    /// Largest prime power below the threshold, which fails the bound.
    pub boundary_failure: Option<u64>,
    pub horizon: u64,
    /// The worst-case bound is increasing past the horizon and already passes there.
    pub tail_certified: bool,
}

/// Least prime power `q0` such that every prime power `q >= q0` up to the
/// horizon passes, with the characteristic taken from each `q`.
pub fn unirationality_threshold(case: ArithmeticCase, horizon: u64) -> Result<Threshold, ArithError> {
    if horizon < 5 {
        return Err(ArithError::BadBound(horizon));
    }
    let required = required_point_count(case) as i64;
    let qs = prime_powers_up_to(horizon)?;
    let mut threshold = None;
    let mut failure = None;
    for pp in qs.iter().rev() {
        if off_ramification_lower_bound(pp.q, case, pp.is_char2())? >= required {
            threshold = Some(pp.q);
        } else {
            failure = Some(pp.q);
            break;
        }
    }
    let threshold = threshold.ok_or(ArithError::NoThreshold(horizon))?;
    Ok(Threshold {
        case,
        threshold,
        boundary_failure: failure,
        horizon,
        tail_certified: tail_certificate(case, horizon),
    })
}

/// Past the horizon H both branches are bounded below by
/// `W(q) = min_X(q) - max(q + 2 + 4 sqrt(q), 2q + 2)`; every `min_X` has the form
/// `q^2 - c q + 1` with `c <= 5`, so `W'(q) >= 2q - 7 - 2/sqrt(q) > 0` for `q >= 5`.
/// It remains to check `W(H) >= required` exactly.
fn tail_certificate(case: ArithmeticCase, horizon: u64) -> bool {
    let h = horizon as i64;
    let min_x = h * h + h * case.min_trace() + 1 - if case == ArithmeticCase::One { h } else { 0 };
    let linear = min_x - (2 * h + 2);
    let root = SqrtBound {
        a: h + 2,
        b: 4,
        q: horizon,
    };
    let sqrt_branch = min_x - root.a - root.floor_sqrt_part() - 1;
    horizon >= 5 && linear.min(sqrt_branch) >= required_point_count(case) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use ArithmeticCase::*;

    #[test]
    fn prime_powers() {
        let qs: Vec<u64> = prime_powers_up_to(10).unwrap().iter().map(|p| p.q).collect();
        assert_eq!(qs, [2, 3, 4, 5, 7, 8, 9]);
        assert!(PrimePower::new(4).unwrap().is_char2());
        assert_eq!(PrimePower::new(9).unwrap().p, 3);
        assert_eq!(PrimePower::new(6), Err(ArithError::NotPrimePower(6)));
        assert_eq!(PrimePower::new(1), Err(ArithError::NotPrimePower(1)));
        assert_eq!(prime_powers_up_to(1), Err(ArithError::BadBound(1)));
    }

    #[test]
    fn prime_power_sieve_matches_trial_division() {
        let sieved: Vec<u64> = prime_powers_up_to(5000).unwrap().iter().map(|p| p.q).collect();
        let trial: Vec<u64> = (2..=5000).filter(|&q| PrimePower::new(q).is_ok()).collect();
        assert_eq!(sieved, trial);
    }

    #[test]
    fn surface_points() {
        assert_eq!(min_surface_points(9, One), Ok(37));
        assert_eq!(min_surface_points(9, Two), Ok(46));
        assert_eq!(min_surface_points(4, Three), Ok(17));
        assert!(min_surface_points(10, One).is_err());
    }

    #[test]
    fn ramification_bounds() {
        assert_eq!(ramification_point_bound(9, One, false).unwrap().floor(), 23);
        assert_eq!(ramification_point_bound(8, Two, true).unwrap().floor(), 17);
        assert_eq!(ramification_point_bound(4, Three, true).unwrap().floor(), 9);
        assert_eq!(ramification_point_bound(5, Three, false).unwrap().floor(), 12);
        assert!(matches!(
            ramification_point_bound(9, One, true),
            Err(ArithError::CharacteristicMismatch { .. })
        ));
        assert!(matches!(
            ramification_point_bound(8, One, false),
            Err(ArithError::CharacteristicMismatch { .. })
        ));
    }

    #[test]
    fn waypoints() {
        assert_eq!(off_ramification_lower_bound(9, One, false), Ok(14));
        assert_eq!(off_ramification_lower_bound(16, One, true), Ok(144));
        assert_eq!(off_ramification_lower_bound(9, Two, false), Ok(24));
        assert_eq!(off_ramification_lower_bound(8, Two, true), Ok(16));
        assert_eq!(off_ramification_lower_bound(5, Three, false), Ok(14));
        assert_eq!(off_ramification_lower_bound(4, Three, true), Ok(8));
    }

    #[test]
    fn exact_sqrt_comparison() {
        // 4 sqrt(7) = 10.58...
        let r = SqrtBound { a: 0, b: 4, q: 7 };
        assert_eq!(r.floor_sqrt_part(), 10);
        assert!(r.at_least(10));
        assert!(!r.at_least(11));
        let sq = SqrtBound { a: 3, b: 4, q: 9 };
        assert!(sq.at_least(15));
        assert!(!sq.at_least(16));
        for q in 2..2000u64 {
            let b = SqrtBound { a: 0, b: 4, q };
            let f = b.floor_sqrt_part();
            assert!(b.at_least(f) && !b.at_least(f + 1), "q = {q}");
        }
    }

    #[test]
    fn required_points_follow_free_counts() {
        assert_eq!(ArithmeticCase::ALL.map(required_point_count), [9, 6, 3]);
    }

    #[test]
    fn thresholds_and_boundaries() {
        for case in ArithmeticCase::ALL {
            let t = unirationality_threshold(case, 20_000).unwrap();
            assert_eq!(t.threshold, case.stated_threshold());
            assert!(t.tail_certified);
        }
        assert_eq!(unirationality_threshold(One, 1000).unwrap().boundary_failure, Some(8));
        assert_eq!(unirationality_threshold(Two, 1000).unwrap().boundary_failure, Some(7));
        assert_eq!(
            unirationality_threshold(Three, 1000).unwrap().boundary_failure,
            Some(4 - 1)
        );
    }

    #[test]
    fn char2_interleaving_decides_case_two() {
        // The odd-characteristic branch alone fails at 7 and passes from 9; q = 8 passes
        // only through the characteristic-2 branch.
        assert!(off_ramification_lower_bound(8, Two, true).unwrap() >= 6);
        assert!(off_ramification_lower_bound(7, Two, false).unwrap() < 6);
    }

    #[test]
    fn monotone_within_each_characteristic_branch() {
        for case in ArithmeticCase::ALL {
            let qs = prime_powers_up_to(20_000).unwrap();
            for char2 in [false, true] {
                let vals: Vec<i64> = qs
                    .iter()
                    .filter(|p| p.q >= 5 && p.is_char2() == char2)
                    .map(|p| off_ramification_lower_bound(p.q, case, char2).unwrap())
                    .collect();
                assert!(vals.windows(2).all(|w| w[0] <= w[1]), "{case} char2={char2}");
            }
        }
    }

    #[test]
    fn case_parsing() {
        assert_eq!("2".parse::<ArithmeticCase>(), Ok(Two));
        assert_eq!("③".parse::<ArithmeticCase>(), Ok(Three));
        assert!("4".parse::<ArithmeticCase>().is_err());
    }
}
