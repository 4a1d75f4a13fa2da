//! Lower-bound formulas for the dimension of a local maximal commutative
//! subalgebra with a given Loewy signature, the signature-free minima
//! D_r(n) obtained by enumerating all admissible signatures, the
//! first-exceptional-dimension search, and the Laffey comparison value
//! (2n)^(2/3) - 1 as a certified rational enclosure.
//!
//! Everything here is integer or rational arithmetic; the only real
//! number in sight, the Laffey value, is sandwiched between rationals
//! whose distance is provably below 10^-12 so that fixed-precision
//! display and strict comparisons are certified rather than floated.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactlinalg::Rational;

/// Ceiling division of positive integers via the identity
/// ceil(a / b) = (a + b - 1) div b.
pub fn ceil_div(a: u64, b: u64) -> u64 {
    debug_assert!(b > 0, "ceil_div by zero");
    ((a as u128 + b as u128 - 1) / b as u128) as u64
}

/// The value of the general local bound on one signature, together with
/// the middle-layer aggregates it was computed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureBound {
    /// Nilpotency degree, the signature length.
    pub r: usize,
    /// The signature (n1, ..., nr) itself.
    pub signature: Vec<u64>,
    /// 1 + n1*nr + ceil((S(n1 + nr) + P) / (n1*nr + 1)).
    pub value: u64,
    /// Sum of the middle layers.
    pub s: u64,
    /// Sum of pairwise products of distinct middle layers.
    pub p: u64,
}

fn check_layers(signature: &[u64]) -> Result<()> {
    if signature.iter().any(|&x| x == 0) {
        return Err(Error::NonPositiveLayer(signature.to_vec()));
    }
    Ok(())
}

/// The general local bound for an arbitrary signature of length >= 3:
/// with S the sum of the middle layers and P the sum of their pairwise
/// products, the dimension of a local maximal commutative algebra with
/// this Loewy signature is at least
/// 1 + n1*nr + ceil((S(n1 + nr) + P) / (n1*nr + 1)).
pub fn f_general(signature: &[u64]) -> Result<SignatureBound> {
    let r = signature.len();
    if r < 3 {
        return Err(Error::SignatureTooShort(r));
    }
    check_layers(signature)?;
    let n1 = signature[0] as u128;
    let nr = signature[r - 1] as u128;
    let middles = &signature[1..r - 1];
    let mut s: u128 = 0;
    let mut p: u128 = 0;
    for (i, &mi) in middles.iter().enumerate() {
        s += mi as u128;
        for &mj in &middles[i + 1..] {
            p += mi as u128 * mj as u128;
        }
    }
    let denom = n1 * nr + 1;
    let numer = s * (n1 + nr) + p;
    let value = 1 + n1 * nr + (numer + denom - 1) / denom;
    Ok(SignatureBound {
        r,
        signature: signature.to_vec(),
        value: value.try_into().expect("bound exceeds u64 range"),
        s: s.try_into().expect("middle sum exceeds u64 range"),
        p: p.try_into().expect("middle product sum exceeds u64 range"),
    })
}

/// Degree-3 bound: 1 + n1*n3 + ceil(n2(n1 + n3) / (n1*n3 + 1)).
pub fn f3(n1: u64, n2: u64, n3: u64) -> Result<u64> {
    Ok(f_general(&[n1, n2, n3])?.value)
}

/// Degree-4 bound:
/// 1 + n1*n4 + ceil(((n2 + n3)(n1 + n4) + n2*n3) / (n1*n4 + 1)).
pub fn f4(n1: u64, n2: u64, n3: u64, n4: u64) -> Result<u64> {
    Ok(f_general(&[n1, n2, n3, n4])?.value)
}

/// Degree-3 bound for the signature class (2, n-4, 2) that the stack
/// construction inhabits; equals `courter_dim(n)` for every n >= 14 and
/// is the bound column reproduced by the table command. The signature-free
/// minimum [`d_r`] can be strictly smaller once n >= 23, because wider
/// outer layers become profitable there.
pub fn stack_class_bound(n: u64) -> Result<u64> {
    let middle = n.checked_sub(4).filter(|&m| m >= 1).ok_or_else(|| {
        Error::NonPositiveLayer(vec![2, n.saturating_sub(4), 2])
    })?;
    f3(2, middle, 2)
}

/// Smallest degree the signature enumeration supports.
pub const MIN_DEGREE: usize = 3;
/// Largest degree the signature enumeration supports.
pub const MAX_DEGREE: usize = 8;

/// The minimum of the general bound over one degree, with the signature
/// attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrEntry {
    /// The signature-free minimum D_r(n).
    pub value: u64,
    /// Lexicographically smallest admissible signature attaining it.
    pub argmin: Vec<u64>,
}

fn check_degree(r: usize) -> Result<()> {
    if !(MIN_DEGREE..=MAX_DEGREE).contains(&r) {
        return Err(Error::DegreeOutOfRange {
            min: MIN_DEGREE,
            max: MAX_DEGREE,
            got: r,
        });
    }
    Ok(())
}

/// Recursively fills middle layers in lexicographic order. Position
/// `idx` receives every value that leaves at least 1 per remaining
/// middle layer and at least 2 for the last layer; the last position
/// takes the forced remainder.
fn search_middles(sig: &mut [u64], idx: usize, remaining: u64, best: &mut Option<DrEntry>) {
    let r = sig.len();
    if idx == r - 1 {
        if remaining >= 2 {
            sig[idx] = remaining;
            let bound = f_general(sig).expect("layers are positive by construction");
            let improves = match best {
                Some(entry) => bound.value < entry.value,
                None => true,
            };
            if improves {
                *best = Some(DrEntry {
                    value: bound.value,
                    argmin: sig.to_vec(),
                });
            }
        }
        return;
    }
    let middles_after = (r - 2 - idx) as u64;
    let max_here = remaining.saturating_sub(middles_after + 2);
    for m in 1..=max_here {
        sig[idx] = m;
        search_middles(sig, idx + 1, remaining - m, best);
    }
}

/// The signature-free minimum D_r(n): the exact minimum of the general
/// bound over all compositions n1 + ... + nr = n with outer layers >= 2
/// and middle layers >= 1. Ties are broken by the lexicographically
/// smallest signature, which the ascending enumeration finds first.
pub fn d_r(n: u64, r: usize) -> Result<DrEntry> {
    check_degree(r)?;
    if n < r as u64 + 2 {
        return Err(Error::InfeasibleSignature { n, r });
    }
    let mut sig = vec![0u64; r];
    let mut best: Option<DrEntry> = None;
    let max_n1 = n - (r as u64 - 2) - 2;
    for n1 in 2..=max_n1 {
        sig[0] = n1;
        search_middles(&mut sig, 1, n - n1, &mut best);
    }
    Ok(best.expect("feasible n admits at least one signature"))
}

/// Default search cap for [`first_exceptional`].
pub const FIRST_EXCEPTIONAL_CAP: u64 = 200;

/// The smallest n whose degree-r bound drops below n, together with the
/// bound value there, searching up to `cap`.
pub fn first_exceptional_capped(r: usize, cap: u64) -> Result<(u64, u64)> {
    check_degree(r)?;
    let mut n = r as u64 + 2;
    while n <= cap {
        let entry = d_r(n, r)?;
        if entry.value < n {
            return Ok((n, entry.value));
        }
        n += 1;
    }
    Err(Error::SearchCapExceeded { r, cap })
}

/// [`first_exceptional_capped`] with the default cap.
pub fn first_exceptional(r: usize) -> Result<(u64, u64)> {
    first_exceptional_capped(r, FIRST_EXCEPTIONAL_CAP)
}

/// Minimum dimension of a maximal commutative algebra whose radical
/// squares to zero: over all splittings a + b = n the dimension 1 + ab
/// is minimized at a = 1, giving exactly n.
pub fn deg2_min_dim(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::AmbientTooSmall { min: 2, got: n });
    }
    Ok(n)
}

/// A certified rational enclosure lo <= x <= hi of a real value.
#[derive(Clone, Debug, PartialEq)]
pub struct Enclosure {
    lo: Rational,
    hi: Rational,
}

impl Enclosure {
    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    /// Fixed nine-fractional-digit decimal rendering of the midpoint,
    /// rounding half away from zero. The enclosure width keeps every
    /// digit stable across runs.
    pub fn to_decimal_9(&self) -> String {
        let mid = self.midpoint();
        debug_assert!(!mid.is_negative(), "display expects nonnegative values");
        let scale = BigInt::from(10u64.pow(9));
        let scaled = mid * Rational::from_integer(scale.clone());
        let rounded = (scaled + Rational::new(BigInt::one(), BigInt::from(2))).floor();
        let units = rounded.to_integer();
        let int_part = &units / &scale;
        let frac_part = &units % &scale;
        format!("{int_part}.{frac_part:09}")
    }
}

/// Largest integer c with c^3 <= x.
fn integer_cbrt(x: u128) -> u128 {
    if x == 0 {
        return 0;
    }
    let mut lo: u128 = 1;
    let mut hi: u128 = 1 << 44; // (2^44)^3 > u128::MAX, safe upper end
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        match mid.checked_mul(mid).and_then(|m2| m2.checked_mul(mid)) {
            Some(cube) if cube <= x => lo = mid,
            _ => hi = mid,
        }
    }
    lo
}

fn rational_from_u128(x: u128) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

/// Certified enclosure of the real cube root of an integer, exact when
/// the input is a perfect cube and of width below 10^-12 otherwise.
fn cbrt_enclosure(x: u128) -> Enclosure {
    let c = integer_cbrt(x);
    if c * c * c == x {
        let exact = rational_from_u128(c);
        return Enclosure {
            lo: exact.clone(),
            hi: exact,
        };
    }
    let target = Rational::new(BigInt::one(), BigInt::from(10u64).pow(12));
    let big_x = Rational::from_integer(BigInt::from(x));
    let mut lo = rational_from_u128(c);
    let mut hi = rational_from_u128(c + 1);
    while &hi - &lo >= target {
        let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
        if &mid * &mid * &mid <= big_x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Enclosure { lo, hi }
}

/// The comparison value (2n)^(2/3) - 1 as a certified enclosure: the
/// cube root of 4n^2 shifted down by one. Exact when 2n is a perfect
/// cube, as in n = 4 or n = 32.
pub fn laffey_bound(n: u64) -> Enclosure {
    let x = 4u128 * n as u128 * n as u128;
    let cbrt = cbrt_enclosure(x);
    let one = Rational::one();
    Enclosure {
        lo: cbrt.lo - &one,
        hi: cbrt.hi - &one,
    }
}

/// Exact integer floor of (2n)^(2/3) - 1.
pub fn laffey_floor(n: u64) -> u64 {
    let x = 4u128 * n as u128 * n as u128;
    (integer_cbrt(x) - 1) as u64
}

/// One row of the bound table: the signature-free minima for each
/// requested degree (absent when n < r + 2), the Laffey comparison
/// value, and the trivial bound n itself.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub n: u64,
    /// Pairs (r, D_r entry); `None` marks an infeasible degree.
    pub entries: Vec<(usize, Option<DrEntry>)>,
    pub laffey: Enclosure,
    pub trivial: u64,
}

/// Builds one [`BoundReport`] per n in the inclusive range, columns in
/// the order of `r_set`. Degrees outside the supported range are
/// rejected up front; degrees infeasible for a particular n produce
/// empty cells.
pub fn bound_table(n_min: u64, n_max: u64, r_set: &[usize]) -> Result<Vec<BoundReport>> {
    for &r in r_set {
        check_degree(r)?;
    }
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        let mut entries = Vec::with_capacity(r_set.len());
        for &r in r_set {
            let cell = if n >= r as u64 + 2 {
                Some(d_r(n, r)?)
            } else {
                None
            };
            entries.push((r, cell));
        }
        rows.push(BoundReport {
            n,
            entries,
            laffey: laffey_bound(n),
            trivial: n,
        });
    }
    Ok(rows)
}
