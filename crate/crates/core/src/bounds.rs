//! Closed-form bounds on Pythagoras numbers of real forms.
//!
//! Every quantity here is exact: integers are `u128`, irrational values are
//! carried as quadratic surds and only rounded through integer square roots.
//! Floating point appears solely in [`HalfSurd::approx`] and
//! [`SqrtRatio::approx`], which exist for display.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Number of variables `n` and half-degree `d`; forms under study have degree `2d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DegreeParams {
    pub n: u32,
    pub d: u32,
}

impl DegreeParams {
    pub fn new(n: u32, d: u32) -> Result<Self> {
        if n == 0 || d == 0 {
            return invalid(format!("need n >= 1 and d >= 1, got n={n}, d={d}"));
        }
        Ok(Self { n, d })
    }

    /// `N_{n,d}`: dimension of the degree-`d` forms.
    pub fn n_d(&self) -> u128 {
        dim_forms(self.n, self.d)
    }

    /// `N_{n,2d}`: dimension of the degree-`2d` forms.
    pub fn n_2d(&self) -> u128 {
        dim_forms(self.n, 2 * self.d)
    }

    /// `N_{n,d-1}`.
    pub fn n_d_minus_1(&self) -> u128 {
        dim_forms(self.n, self.d - 1)
    }
}

impl fmt::Display for DegreeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, 2d={})", self.n, 2 * self.d)
    }
}

/// Exact binomial coefficient; `C(a, b) = 0` for `b > a`.
///
/// Panics on `u128` overflow, which is far outside every parameter range
/// this crate works with.
pub fn binomial(a: u64, b: u64) -> u128 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        // acc * (a - i) is divisible by (i + 1) after the multiplication.
        let num = (a - i) as u128;
        let den = (i + 1) as u128;
        let g = num_integer::gcd(acc, den);
        let (acc_r, den_r) = (acc / g, den / g);
        let num_r = num / den_r;
        debug_assert_eq!(num % den_r, 0);
        acc = acc_r.checked_mul(num_r).expect("binomial overflows u128");
    }
    acc
}

/// Signed-top binomial used by the multiplicity-refined Leep bound:
/// zero whenever the top is negative or smaller than the bottom.
fn binomial_signed(a: i64, b: u64) -> u128 {
    if a < 0 {
        0
    } else {
        binomial(a as u64, b)
    }
}

/// `N_{n,e} = C(n+e-1, n-1)`, the dimension of degree-`e` forms in `n` variables.
pub fn dim_forms(n: u32, e: u32) -> u128 {
    assert!(n >= 1, "dim_forms needs n >= 1");
    binomial((n + e - 1) as u64, (n - 1) as u64)
}

pub fn isqrt(x: u128) -> u128 {
    if x < 2 {
        return x;
    }
    // Newton iteration from an overestimate.
    let mut r = 1u128 << ((128 - x.leading_zeros()).div_ceil(2));
    loop {
        let next = (r + x / r) / 2;
        if next >= r {
            break;
        }
        r = next;
    }
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// The real number `(offset + sign * sqrt(radicand)) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfSurd {
    pub offset: i128,
    /// `+1` or `-1`.
    pub sign: i8,
    pub radicand: u128,
}

impl HalfSurd {
    /// `floor(sign * sqrt(radicand))`
    fn floor_root_term(&self) -> i128 {
        let r = isqrt(self.radicand) as i128;
        if self.sign >= 0 {
            r
        } else if (r as u128) * (r as u128) == self.radicand {
            -r
        } else {
            -r - 1
        }
    }

    pub fn floor(&self) -> i128 {
        // floor(x / 2) == floor(floor(x) / 2)
        (self.offset + self.floor_root_term()).div_euclid(2)
    }

    pub fn ceil(&self) -> i128 {
        let neg = HalfSurd {
            offset: -self.offset,
            sign: -self.sign,
            radicand: self.radicand,
        };
        -neg.floor()
    }

    pub fn is_rational(&self) -> bool {
        let r = isqrt(self.radicand);
        r * r == self.radicand
    }

    /// Decimal approximation for reports.
    pub fn approx(&self) -> f64 {
        (self.offset as f64 + self.sign as f64 * (self.radicand as f64).sqrt()) / 2.0
    }
}

impl fmt::Display for HalfSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.sign >= 0 { '+' } else { '-' };
        write!(f, "({} {} √{})/2", self.offset, op, self.radicand)
    }
}

/// `λ(n,2d) = (2e+1 - sqrt((2e+1)^2 - 8a)) / 2` with `e = N_{n,d}`, `a = N_{n,2d}`.
///
/// The returned surd is exact; `.ceil()` is the integer lower bound used for
/// typical lengths.
pub fn lambda_lower(params: DegreeParams) -> HalfSurd {
    let e = params.n_d();
    let a = params.n_2d();
    let two_e1 = 2 * e + 1;
    let radicand = (two_e1 * two_e1)
        .checked_sub(8 * a)
        .expect("negative radicand in lambda: N_{2d} exceeds (2N_d+1)^2/8");
    HalfSurd {
        offset: two_e1 as i128,
        sign: -1,
        radicand,
    }
}

/// `Λ(n,2d) = (-1 + sqrt(1 + 8a)) / 2` with `a = N_{n,2d}`.
pub fn lambda_upper(params: DegreeParams) -> HalfSurd {
    HalfSurd {
        offset: -1,
        sign: 1,
        radicand: 1 + 8 * params.n_2d(),
    }
}

/// Length bound for an sos form with a real zero of multiplicity `2m`:
/// `1 + C(n+d-2, n-2) - C(n+m-3, n-2)`. With `m = 0` this is `L(n,2d)`.
pub fn leep_length_bound(n: u32, d: u32, m: u32) -> Result<u128> {
    if n < 2 || d < 1 {
        return invalid(format!(
            "leep bound needs n >= 2, d >= 1 (got n={n}, d={d})"
        ));
    }
    if m > d {
        return invalid(format!("multiplicity parameter m={m} exceeds d={d}"));
    }
    let k = (n - 2) as u64;
    let full = binomial((n + d - 2) as u64, k);
    let cut = binomial_signed(n as i64 + m as i64 - 3, k);
    Ok(1 + full - cut)
}

/// `L(n,2d) = 1 + C(n-2+d, n-2)`.
pub fn leep_bound(n: u32, d: u32) -> u128 {
    leep_length_bound(n, d, 0).expect("m = 0 is always valid for n >= 2")
}

fn check_sd_params(params: DegreeParams) -> Result<()> {
    if params.n < 3 || params.d < 2 {
        return invalid(format!("need n >= 3 and d >= 2, got {params}"));
    }
    Ok(())
}

/// Whether `s` points satisfy `C(N_d - s + 1, 2) <= N_{2d} - n s`.
fn s_feasible(params: DegreeParams, s: u128) -> bool {
    let nd = params.n_d();
    let lhs = binomial((nd + 1 - s) as u64, 2);
    let ns = params.n as u128 * s;
    let n2d = params.n_2d();
    n2d >= ns && lhs <= n2d - ns
}

/// Smallest `s` with `C(N_d - s + 1, 2) <= N_{2d} - n s`.
///
/// Scans downward from `N_d - 1` to the feasible set, an integer interval
/// (a quadratic in `s` is `<= 0` on it), then to its lower end. For `n >= 4` the result is checked
/// to satisfy `N_{d-1} < s < N_d`. For `n = 3` the scan lands exactly on
/// `N_{d-1} = C(d+1, 2)` so only `N_{d-1} <= s` is checked.
pub fn s_min(params: DegreeParams) -> Result<u128> {
    check_sd_params(params)?;
    let nd = params.n_d();
    // The feasible interval contains N_d - 1 for n >= 4; for (3, 2) it ends at 4 < 5.
    let mut s = (0..nd)
        .rev()
        .find(|&s| s_feasible(params, s))
        .ok_or_else(|| Error::Internal(format!("no feasible s below N_d for {params}")))?;
    while s > 0 && s_feasible(params, s - 1) {
        s -= 1;
    }
    let lower = params.n_d_minus_1();
    let ok = if params.n >= 4 { lower < s } else { lower <= s };
    if !ok || s >= nd {
        return Err(Error::Internal(format!(
            "s_min = {s} escapes bracket ({lower}, {nd}) for {params}"
        )));
    }
    Ok(s)
}

/// `θ(n,2d) = N_d - s_min(n,d)`, a lower bound for `p(n,2d)`.
pub fn theta_lower(params: DegreeParams) -> Result<u128> {
    Ok(params.n_d() - s_min(params)?)
}

/// `sqrt(num / den)` kept exact.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SqrtRatio {
    pub num: u128,
    pub den: u128,
}

impl SqrtRatio {
    pub fn squared(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    pub fn approx(&self) -> f64 {
        (self.num as f64 / self.den as f64).sqrt()
    }
}

impl PartialEq for SqrtRatio {
    fn eq(&self, other: &Self) -> bool {
        self.squared() == other.squared()
    }
}

impl fmt::Display for SqrtRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "√({}/{})", self.num, self.den)
    }
}

/// `(c_n, C_n)` with `c_n = sqrt((2^n - 2n)/(n-1)!)` and `C_n = sqrt(2^n/(n-1)!)`.
pub fn asymptotic_constants(n: u32) -> Result<(SqrtRatio, SqrtRatio)> {
    if n < 3 {
        return invalid(format!("asymptotic constants need n >= 3, got {n}"));
    }
    let fact: u128 = (1..n as u128).product();
    let pow = 1u128 << n;
    Ok((
        SqrtRatio {
            num: pow - 2 * n as u128,
            den: fact,
        },
        SqrtRatio {
            num: pow,
            den: fact,
        },
    ))
}

/// Compares `|sqrt(a) - sqrt(c)|` against `|sqrt(b) - sqrt(c)|` for
/// nonnegative rationals, without leaving exact arithmetic.
///
/// `gap_a^2 - gap_b^2 = (sqrt(a) - sqrt(b)) (sqrt(a) + sqrt(b) - 2 sqrt(c))`.
pub fn cmp_sqrt_gaps(a: &BigRational, b: &BigRational, c: &BigRational) -> Ordering {
    let first = a.cmp(b);
    if first == Ordering::Equal {
        return Ordering::Equal;
    }
    // sign(sqrt(a) + sqrt(b) - 2 sqrt(c)): compare 2 sqrt(ab) with 4c - a - b.
    let four = BigRational::from_integer(BigInt::from(4));
    let rhs = &four * c - a - b;
    let second = if rhs.is_negative() {
        Ordering::Greater
    } else {
        (&four * a * b).cmp(&(&rhs * &rhs))
    };
    match (first, second) {
        (_, Ordering::Equal) => Ordering::Equal,
        (x, Ordering::Greater) => x,
        (x, Ordering::Less) => x.reverse(),
    }
}

/// Compares `|θ(n,2d)/d^{(n-1)/2} - c_n|` at two half-degrees.
/// `Ordering::Less` means the gap at `d1` is the smaller one.
pub fn cmp_theta_gap(n: u32, d1: u32, d2: u32) -> Result<Ordering> {
    let (c, _) = asymptotic_constants(n)?;
    let ratio_sq = |d: u32| -> Result<BigRational> {
        let theta = BigInt::from(theta_lower(DegreeParams::new(n, d)?)?);
        let denom = num_traits::pow(BigInt::from(d), (n - 1) as usize);
        Ok(BigRational::new(&theta * &theta, denom))
    };
    let a = ratio_sq(d1)?;
    let b = ratio_sq(d2)?;
    Ok(cmp_sqrt_gaps(&a, &b, &c.squared()))
}

/// Which closed-form upper bound is the best one known for a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UpperSource {
    LeepL,
    LambdaFloor,
}

impl fmt::Display for UpperSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UpperSource::LeepL => "L",
            UpperSource::LambdaFloor => "floor(Lambda)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub params: DegreeParams,
    pub n_d: u128,
    pub n_2d: u128,
    pub lambda: HalfSurd,
    pub lambda_ceil: i128,
    pub big_lambda: HalfSurd,
    pub big_lambda_floor: i128,
    pub leep_l: u128,
    pub s_min: u128,
    pub theta: u128,
    pub upper_best: u128,
    pub upper_source: UpperSource,
}

/// Best known upper bound and where it comes from.
pub fn best_upper(params: DegreeParams) -> (u128, UpperSource) {
    let floor_big = lambda_upper(params).floor() as u128;
    let leep = if params.n >= 2 {
        Some(leep_bound(params.n, params.d))
    } else {
        None
    };
    match leep {
        Some(l) if l < floor_big => (l, UpperSource::LeepL),
        _ => (floor_big, UpperSource::LambdaFloor),
    }
}

pub fn bounds_row(params: DegreeParams) -> Result<BoundsRow> {
    check_sd_params(params)?;
    let lambda = lambda_lower(params);
    let big_lambda = lambda_upper(params);
    let s = s_min(params)?;
    let (upper_best, upper_source) = best_upper(params);
    Ok(BoundsRow {
        params,
        n_d: params.n_d(),
        n_2d: params.n_2d(),
        lambda,
        lambda_ceil: lambda.ceil(),
        big_lambda,
        big_lambda_floor: big_lambda.floor(),
        leep_l: leep_bound(params.n, params.d),
        s_min: s,
        theta: params.n_d() - s,
        upper_best,
        upper_source,
    })
}

/// One row per `(n, d)`, `n` outer, `d` inner.
pub fn bounds_table(
    n_range: impl IntoIterator<Item = u32>,
    d_range: impl IntoIterator<Item = u32> + Clone,
) -> Result<Vec<BoundsRow>> {
    let mut rows = Vec::new();
    for n in n_range {
        for d in d_range.clone() {
            rows.push(bounds_row(DegreeParams::new(n, d)?)?);
        }
    }
    Ok(rows)
}

/// Pairs `(n, 2d)` with `n >= 4` in the given box where `L(n,2d) < floor(Λ(n,2d))`.
pub fn leep_beats_lambda(
    n_range: impl IntoIterator<Item = u32>,
    d_range: impl IntoIterator<Item = u32> + Clone,
) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for n in n_range {
        for d in d_range.clone() {
            let p = DegreeParams { n, d };
            if (leep_bound(n, d) as i128) < lambda_upper(p).floor() {
                out.push((n, 2 * d));
            }
        }
    }
    out
}

/// Renders rows in the three-lines-per-`n` layout:
///
/// ```text
/// d: 2 3 4 5 6 7 8
///
/// s_min(4,d): 5 12 24 41 65 97 137
/// p(4,2d)≥: 5 8 11 15 19 23 28
/// p(4,2d)≤: 7 11 16 22 29 36 43
/// ```
///
/// Rows must be grouped by `n` with the same `d` sequence in each group.
pub fn render_paper_layout(rows: &[BoundsRow]) -> String {
    let mut groups: Vec<(u32, Vec<&BoundsRow>)> = Vec::new();
    for row in rows {
        match groups.last_mut() {
            Some((n, g)) if *n == row.params.n => g.push(row),
            _ => groups.push((row.params.n, vec![row])),
        }
    }
    let join = |it: &mut dyn Iterator<Item = String>| it.collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    if let Some((_, first)) = groups.first() {
        out.push_str(&format!(
            "d: {}\n",
            join(&mut first.iter().map(|r| r.params.d.to_string()))
        ));
    }
    for (n, g) in &groups {
        out.push('\n');
        out.push_str(&format!(
            "s_min({n},d): {}\n",
            join(&mut g.iter().map(|r| r.s_min.to_string()))
        ));
        out.push_str(&format!(
            "p({n},2d)≥: {}\n",
            join(&mut g.iter().map(|r| r.theta.to_string()))
        ));
        out.push_str(&format!(
            "p({n},2d)≤: {}\n",
            join(&mut g.iter().map(|r| r.upper_best.to_string()))
        ));
    }
    out
}

/// `ceil(λ)` and `floor(Λ)` bracket every admissible length `p`:
/// `C(p+1,2) <= N_{2d} <= p N_d - C(p,2)`.
pub fn endpoint_inequalities_hold(params: DegreeParams) -> bool {
    let a = params.n_2d();
    let e = params.n_d();
    let lo = lambda_lower(params).ceil();
    let hi = lambda_upper(params).floor();
    if lo < 0 || hi < 0 {
        return false;
    }
    let (lo, hi) = (lo as u128, hi as u128);
    let upper_ok = binomial(hi as u64 + 1, 2) <= a && binomial(hi as u64 + 2, 2) > a;
    let lower_ok = lo * e >= binomial(lo as u64, 2) + a;
    upper_ok && lower_ok
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32, d: u32) -> DegreeParams {
        DegreeParams::new(n, d).unwrap()
    }

    #[test]
    fn binomial_basics() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(60, 30), 118264581564861424);
    }

    #[test]
    fn dim_forms_examples() {
        assert_eq!(dim_forms(3, 3), 10);
        assert_eq!(dim_forms(3, 6), 28);
        assert_eq!(dim_forms(4, 2), 10);
        assert_eq!(dim_forms(1, 7), 1);
    }

    #[test]
    fn degree_params_reject_zero() {
        assert!(DegreeParams::new(0, 2).is_err());
        assert!(DegreeParams::new(3, 0).is_err());
    }

    #[test]
    fn isqrt_exhaustive_small() {
        for x in 0u128..5000 {
            let r = isqrt(x);
            assert!(r * r <= x && (r + 1) * (r + 1) > x, "x={x}");
        }
        let big = (1u128 << 100) + 12345;
        let r = isqrt(big);
        assert!(r * r <= big && (r + 1) * (r + 1) > big);
    }

    #[test]
    fn lambda_examples() {
        let l = lambda_lower(p(3, 3));
        assert_eq!((l.offset, l.radicand), (21, 217));
        assert_eq!(l.ceil(), 4);
        let l = lambda_lower(p(4, 2));
        assert_eq!((l.offset, l.radicand), (21, 161));
        assert_eq!(l.ceil(), 5);
        for d in 1..40 {
            assert_eq!(lambda_lower(p(2, d)).ceil(), 2, "d={d}");
        }
    }

    #[test]
    fn big_lambda_examples() {
        for d in 1..=50 {
            let s = lambda_upper(p(3, d));
            assert!(s.is_rational());
            assert_eq!(s.floor(), 2 * d as i128 + 1);
            assert_eq!(s.ceil(), 2 * d as i128 + 1);
        }
        assert_eq!(lambda_upper(p(4, 2)).floor(), 7);
        assert_eq!(lambda_upper(p(4, 3)).floor(), 12);
    }

    #[test]
    fn surd_rounding_matches_float_away_from_integers() {
        for offset in -30i128..30 {
            for radicand in 0u128..200 {
                for sign in [-1i8, 1] {
                    let s = HalfSurd {
                        offset,
                        sign,
                        radicand,
                    };
                    let v = s.approx();
                    if (v - v.round()).abs() > 1e-9 {
                        assert_eq!(s.floor(), v.floor() as i128, "{s}");
                        assert_eq!(s.ceil(), v.ceil() as i128, "{s}");
                    } else {
                        assert_eq!(s.floor(), s.ceil(), "{s}");
                    }
                }
            }
        }
    }

    #[test]
    fn leep_examples() {
        for d in 1..30 {
            assert_eq!(leep_length_bound(3, d, 0).unwrap(), d as u128 + 2);
        }
        assert_eq!(leep_length_bound(4, 3, 0).unwrap(), 11);
        assert_eq!(leep_length_bound(3, 3, 1).unwrap(), 4);
        assert!(leep_length_bound(3, 3, 4).is_err());
        // ternary refinement: d + 2 - m
        for d in 1..10 {
            for m in 0..=d {
                assert_eq!(leep_length_bound(3, d, m).unwrap(), (d + 2 - m) as u128);
            }
        }
    }

    #[test]
    fn s_min_examples() {
        assert_eq!(s_min(p(4, 2)).unwrap(), 5);
        assert_eq!(s_min(p(5, 4)).unwrap(), 48);
        assert_eq!(s_min(p(3, 3)).unwrap(), 6);
        assert!(s_min(p(2, 3)).is_err());
        assert!(s_min(p(3, 1)).is_err());
    }

    #[test]
    fn s_min_matches_upward_scan() {
        for n in 3..=7 {
            for d in 2..=8 {
                let params = p(n, d);
                let brute = (0..=params.n_d())
                    .find(|&s| {
                        let lhs = binomial((params.n_d() + 1 - s) as u64, 2) as i128;
                        lhs <= params.n_2d() as i128 - (n as i128) * s as i128
                    })
                    .unwrap();
                assert_eq!(s_min(params).unwrap(), brute, "{params}");
            }
        }
    }

    #[test]
    fn ternary_s_min_sits_on_lower_bracket() {
        for d in 2..=40 {
            assert_eq!(s_min(p(3, d)).unwrap(), binomial(d as u64 + 1, 2));
            assert_eq!(theta_lower(p(3, d)).unwrap(), d as u128 + 1);
        }
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta_lower(p(4, 3)).unwrap(), 8);
        assert_eq!(theta_lower(p(6, 5)).unwrap(), 60);
        assert_eq!(theta_lower(p(3, 3)).unwrap(), 4);
    }

    #[test]
    fn asymptotic_constant_examples() {
        let (c4, big_c4) = asymptotic_constants(4).unwrap();
        assert_eq!((c4.num, c4.den), (8, 6));
        assert_eq!((big_c4.num, big_c4.den), (16, 6));
        let (c3, _) = asymptotic_constants(3).unwrap();
        assert_eq!(c3, SqrtRatio { num: 1, den: 1 });
        let (_, big_c5) = asymptotic_constants(5).unwrap();
        assert_eq!(big_c5, SqrtRatio { num: 32, den: 24 });
        assert!(asymptotic_constants(2).is_err());
    }

    #[test]
    fn sqrt_gap_comparison_against_floats() {
        let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        let cases = [
            (r(1, 1), r(4, 1), r(2, 1)),
            (r(9, 4), r(1, 4), r(1, 1)),
            (r(3, 1), r(5, 1), r(4, 1)),
            (r(100, 1), r(1, 100), r(1, 1)),
            (r(7, 3), r(2, 9), r(1, 2)),
        ];
        for (a, b, c) in cases {
            let f = |x: &BigRational| {
                let (n, d): (f64, f64) = (
                    x.numer().to_string().parse().unwrap(),
                    x.denom().to_string().parse().unwrap(),
                );
                (n / d).sqrt()
            };
            let ga = (f(&a) - f(&c)).abs();
            let gb = (f(&b) - f(&c)).abs();
            assert_eq!(cmp_sqrt_gaps(&a, &b, &c), ga.partial_cmp(&gb).unwrap());
        }
        // equal gaps on opposite sides: sqrt 1 and sqrt 9 around sqrt 4
        assert_eq!(cmp_sqrt_gaps(&r(1, 1), &r(9, 1), &r(4, 1)), Ordering::Equal);
    }

    #[test]
    fn best_upper_selection() {
        assert_eq!(best_upper(p(3, 4)), (6, UpperSource::LeepL));
        assert_eq!(best_upper(p(4, 3)), (11, UpperSource::LeepL));
        assert_eq!(best_upper(p(4, 2)), (7, UpperSource::LambdaFloor));
        assert_eq!(best_upper(p(4, 6)), (29, UpperSource::LambdaFloor));
    }

    #[test]
    fn table_rows() {
        let row = bounds_row(p(4, 2)).unwrap();
        assert_eq!((row.s_min, row.theta, row.upper_best), (5, 5, 7));
        let row = bounds_row(p(5, 5)).unwrap();
        assert_eq!((row.s_min, row.theta, row.upper_best), (94, 32, 44));
        let row = bounds_row(p(3, 3)).unwrap();
        assert_eq!((row.theta, row.upper_best), (4, 5));
        let row = bounds_row(p(3, 5)).unwrap();
        assert_eq!((row.theta, row.upper_best), (6, 7));
    }

    #[test]
    fn endpoint_inequalities() {
        for n in 3..=8 {
            for d in 1..=12 {
                assert!(endpoint_inequalities_hold(p(n, d)), "n={n} d={d}");
            }
        }
    }
}
