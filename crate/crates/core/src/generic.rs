//! Randomized dimension experiments over two primes.
//!
//! Every instance is an integer instance (integer point coordinates or form
//! coefficients) reduced modulo each working prime. A rank computed mod `p`
//! never exceeds the rank over `Q`, which in turn never exceeds the generic
//! rank, so equality with a proven upper bound certifies the instance.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{binomial, dim_forms, lambda_lower, DegreeParams};
use crate::error::{invalid, Error, Result};
use crate::linalg::PrimeMatrix;
use crate::ring::{monomial_values, PrimeField, ProductTable};

/// Product matrices above this many entries need `allow_large`.
pub const LARGE_INSTANCE_ENTRIES: u128 = 40_000_000;

/// Sampling rounds before giving up on a genericity gate or prime agreement.
pub const MAX_ROUNDS: usize = 5;

/// Knobs shared by every experiment.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub primes: Vec<PrimeField>,
    /// Integer samples are drawn uniformly from `[-coord_bound, coord_bound]`.
    pub coord_bound: i64,
    pub max_rounds: usize,
    pub allow_large: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            primes: vec![PrimeField::p1(), PrimeField::p2()],
            coord_bound: 1 << 30,
            max_rounds: MAX_ROUNDS,
            allow_large: false,
        }
    }
}

impl ExperimentConfig {
    pub fn with_primes(p1: u64, p2: u64) -> Result<Self> {
        Ok(Self {
            primes: vec![PrimeField::new(p1)?, PrimeField::new(p2)?],
            ..Self::default()
        })
    }

    fn prime_values(&self) -> Vec<u64> {
        self.primes.iter().map(|f| f.modulus()).collect()
    }

    fn guard(&self, rows: u128, cols: u128, what: &str) -> Result<()> {
        if !self.allow_large && rows * cols > LARGE_INSTANCE_ENTRIES {
            return invalid(format!(
                "{what} needs a {rows}x{cols} matrix ({} entries > {LARGE_INSTANCE_ENTRIES}); pass --allow-large",
                rows * cols
            ));
        }
        Ok(())
    }
}

/// SplitMix64 step, used to derive independent job and round seeds.
pub fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed
        .wrapping_add(salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn rand_int(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

// ---------------------------------------------------------------------------
// Point samples

/// `s` integer points in `P^{n-1}` that passed the genericity gate at every
/// working prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSample {
    pub params: DegreeParams,
    pub points: Vec<Vec<i64>>,
    /// Seed of the round that produced these points.
    pub seed: u64,
    pub primes: Vec<u64>,
}

impl PointSample {
    pub fn s(&self) -> usize {
        self.points.len()
    }

    /// `s x N_{n,e}` matrix of monomial values mod `p`.
    pub fn evaluation_matrix(&self, field: PrimeField, e: u32) -> PrimeMatrix {
        let n = self.params.n;
        let cols = dim_forms(n, e) as usize;
        let mut data = Vec::with_capacity(self.points.len() * cols);
        for pt in &self.points {
            let coords: Vec<u64> = pt.iter().map(|&c| field.from_i64_mod(c)).collect();
            data.extend(monomial_values(&field, &coords, e));
        }
        PrimeMatrix::new(field, self.points.len(), cols, data).expect("shape matches")
    }

    /// Maximal evaluation rank in degree `d`, and in degree `d-1` (so that
    /// `I_{d-1} = 0` once `s >= N_{d-1}`).
    fn passes_gate(&self, field: PrimeField) -> bool {
        let s = self.s();
        let DegreeParams { n, d } = self.params;
        let full = |e: u32| {
            let cols = dim_forms(n, e) as usize;
            self.evaluation_matrix(field, e).rank() == s.min(cols)
        };
        full(d) && full(d - 1)
    }
}

/// Draws `s` random integer points and keeps the first round whose
/// evaluation matrices have maximal rank at every prime.
pub fn sample_points(
    n: u32,
    d: u32,
    s: usize,
    seed: u64,
    cfg: &ExperimentConfig,
) -> Result<PointSample> {
    let params = DegreeParams::new(n, d)?;
    if s == 0 {
        return invalid("need at least one point");
    }
    for round in 0..cfg.max_rounds {
        let round_seed = mix_seed(seed, round as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(round_seed);
        let points: Vec<Vec<i64>> = (0..s)
            .map(|_| loop {
                let pt: Vec<i64> = (0..n)
                    .map(|_| rand_int(&mut rng, cfg.coord_bound))
                    .collect();
                if pt.iter().any(|&c| c != 0) {
                    break pt;
                }
            })
            .collect();
        let sample = PointSample {
            params,
            points,
            seed: round_seed,
            primes: cfg.prime_values(),
        };
        if cfg.primes.iter().all(|&f| sample.passes_gate(f)) {
            return Ok(sample);
        }
    }
    Err(Error::GenericityFailure {
        rounds: cfg.max_rounds,
        detail: format!("evaluation rank not maximal for n={n}, d={d}, s={s}"),
    })
}

/// Degree-`d` part of the vanishing ideal mod `p`, as a kernel basis.
#[derive(Debug, Clone)]
pub struct VanishingComponent {
    pub field: PrimeField,
    pub dim: usize,
    pub basis: Vec<Vec<u64>>,
}

pub fn vanishing_component(sample: &PointSample, field: PrimeField) -> Result<VanishingComponent> {
    let nd = sample.params.n_d() as usize;
    if sample.s() > nd {
        return invalid(format!("s = {} exceeds N_d = {nd}", sample.s()));
    }
    let basis = sample
        .evaluation_matrix(field, sample.params.d)
        .kernel_basis();
    if basis.len() != nd - sample.s() {
        return Err(Error::Internal(format!(
            "vanishing component has dimension {} but the gate promised {}",
            basis.len(),
            nd - sample.s()
        )));
    }
    Ok(VanishingComponent {
        field,
        dim: basis.len(),
        basis,
    })
}

/// Rows `p_i p_j` (`i <= j`) of the symmetric-square product map.
pub fn square_product_matrix(field: PrimeField, basis: &[Vec<u64>], n: u32, d: u32) -> PrimeMatrix {
    let table = ProductTable::new(n, d, d);
    let cols = dim_forms(n, 2 * d) as usize;
    let b = basis.len();
    let mut m = PrimeMatrix::zeros(field, b * (b + 1) / 2, cols);
    let mut row = 0;
    for i in 0..b {
        for j in i..b {
            let out = m.row_mut(row);
            for (a, &u) in basis[i].iter().enumerate() {
                if u == 0 {
                    continue;
                }
                for (c, &v) in basis[j].iter().enumerate() {
                    if v != 0 {
                        let k = table.get(a, c);
                        out[k] = field.mul_add(out[k], u, v);
                    }
                }
            }
            row += 1;
        }
    }
    m
}

// ---------------------------------------------------------------------------
// Reports

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quantity {
    DimVanishingD,
    DimSquareComponent2d,
    HilbertH2d,
    GenericIdealDimMr,
    FullRankAtDegree2d,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    /// Computed value equals the expected one at every prime.
    Verified,
    /// Computed value exceeds the expectation (or primes disagreed); resampling may help.
    InconclusiveHigh,
    /// A proven inequality failed.
    InternalError,
    /// Nothing to compare against.
    NoExpectation,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "Verified",
            Status::InconclusiveHigh => "InconclusiveHigh",
            Status::InternalError => "InternalError",
            Status::NoExpectation => "NoExpectation",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub quantity: Quantity,
    pub computed: u128,
    pub expected: Option<u128>,
    pub status: Status,
    pub n: u32,
    pub d: u32,
    /// Point count `s`, or number of forms `r`.
    pub size: u64,
    pub seed: u64,
    pub primes: Vec<u64>,
    /// Value at each prime, same order as `primes`.
    pub per_prime: Vec<u128>,
    pub trials: usize,
    pub note: Option<String>,
}

/// Symmetric-square ranks of one sample, one entry per prime.
pub fn square_component_ranks(sample: &PointSample, cfg: &ExperimentConfig) -> Result<Vec<u128>> {
    let DegreeParams { n, d } = sample.params;
    let b = sample.params.n_d() - sample.s() as u128;
    cfg.guard(
        b * (b + 1) / 2,
        sample.params.n_2d(),
        "symmetric-square product",
    )?;
    cfg.primes
        .iter()
        .map(|&field| {
            let comp = vanishing_component(sample, field)?;
            Ok(square_product_matrix(field, &comp.basis, n, d).rank() as u128)
        })
        .collect()
}

/// `dim (I^2)_{2d}` for one sample, with the conjectured value as expectation
/// when `(n, d, s)` lies in the conjecture's range.
pub fn dim_square_component(
    sample: &PointSample,
    cfg: &ExperimentConfig,
) -> Result<DimensionReport> {
    let DegreeParams { n, d } = sample.params;
    let s = sample.s();
    let ranks = square_component_ranks(sample, cfg)?;
    let n2d = sample.params.n_2d();
    let expected = ik_expected(n, d, s as u128).ok().map(|h| n2d - h);
    let b = sample.params.n_d() - s as u128;
    let cap = (b * (b + 1) / 2).min(n2d);
    let status = if ranks.iter().any(|&r| r > cap) {
        Status::InternalError
    } else {
        match expected {
            None => Status::NoExpectation,
            Some(e) if ranks.iter().any(|&r| r > e) => Status::InternalError,
            Some(e) if ranks.iter().all(|&r| r == e) => Status::Verified,
            Some(_) => Status::InconclusiveHigh,
        }
    };
    Ok(DimensionReport {
        quantity: Quantity::DimSquareComponent2d,
        computed: ranks.iter().copied().max().unwrap_or(0),
        expected,
        status,
        n,
        d,
        size: s as u64,
        seed: sample.seed,
        primes: sample.primes.clone(),
        per_prime: ranks,
        trials: 1,
        note: None,
    })
}

/// Whether `(n, d, s)` is one of the three triples where the min rule applies.
pub fn is_exceptional_triple(n: u32, d: u32, s: u128) -> bool {
    matches!((n, d, s), (3, 2, 5) | (4, 2, 9) | (5, 2, 14))
}

/// Conjectured `h_{2d}(I^2)` for `s` general points:
/// `max{ns, N_{2d} - C(N_d - s + 1, 2)}`, with `min` at the exceptional triples.
pub fn ik_expected(n: u32, d: u32, s: u128) -> Result<u128> {
    if n < 3 || d < 2 {
        return invalid(format!("need n >= 3 and d >= 2, got n={n}, d={d}"));
    }
    let params = DegreeParams::new(n, d)?;
    let (lo, hi) = (params.n_d_minus_1(), params.n_d());
    if s < lo || s >= hi {
        return invalid(format!("s = {s} outside [N_(d-1), N_d) = [{lo}, {hi})"));
    }
    let ns = n as u128 * s;
    let pairs = binomial((hi - s + 1) as u64, 2);
    let other = params.n_2d().saturating_sub(pairs);
    Ok(if is_exceptional_triple(n, d, s) {
        ns.min(other)
    } else {
        ns.max(other)
    })
}

/// Where an instance stands in the literature, for report notes.
pub fn ik_status_note(n: u32, d: u32, s: u128) -> &'static str {
    let nd = dim_forms(n, d);
    if is_exceptional_triple(n, d, s) {
        "exceptional triple (min rule)"
    } else if n == 3 {
        "theorem (ternary case)"
    } else if s + n as u128 >= nd {
        "theorem (N_d - n <= s < N_d)"
    } else {
        "conjectural range"
    }
}

/// Searches up to `trials` samples for one whose `h_{2d}(I^2)` meets the
/// conjectured value at every prime.
///
/// `h` computed mod `p` is at least `h` over `Q` for the same integer points,
/// which is at least the generic `h`, which is at least the conjectured
/// value. Equality therefore certifies the conjecture for `(n, d, s)`; a
/// value below the expectation means a bug.
pub fn ik_verify(
    n: u32,
    d: u32,
    s: u128,
    trials: usize,
    seed: u64,
    cfg: &ExperimentConfig,
) -> Result<DimensionReport> {
    let expected = ik_expected(n, d, s)?;
    let params = DegreeParams::new(n, d)?;
    let n2d = params.n_2d();
    let mut best: Option<DimensionReport> = None;
    for trial in 0..trials.max(1) {
        let trial_seed = mix_seed(seed, 1000 + trial as u64);
        let sample = sample_points(n, d, s as usize, trial_seed, cfg)?;
        let ranks = square_component_ranks(&sample, cfg)?;
        let hs: Vec<u128> = ranks.iter().map(|&r| n2d - r).collect();
        let h = *hs.iter().min().expect("at least one prime");
        let status = if h < expected {
            Status::InternalError
        } else if hs.iter().all(|&x| x == expected) {
            Status::Verified
        } else {
            Status::InconclusiveHigh
        };
        let report = DimensionReport {
            quantity: Quantity::HilbertH2d,
            computed: *hs.iter().max().expect("at least one prime"),
            expected: Some(expected),
            status,
            n,
            d,
            size: s as u64,
            seed: sample.seed,
            primes: sample.primes.clone(),
            per_prime: hs,
            trials: trial + 1,
            note: Some(ik_status_note(n, d, s).to_string()),
        };
        if status == Status::InternalError {
            return Ok(DimensionReport {
                computed: h,
                ..report
            });
        }
        if status == Status::Verified {
            return Ok(report);
        }
        if best.as_ref().is_none_or(|b| report.computed < b.computed) {
            best = Some(report);
        }
    }
    let mut report = best.expect("at least one trial");
    report.trials = trials.max(1);
    Ok(report)
}

/// `ik_verify` for every `s` in `[N_{d-1}, N_d)`, run as independent jobs.
/// Results come back ordered by `s`.
pub fn ik_sweep(
    n: u32,
    d: u32,
    trials: usize,
    seed: u64,
    cfg: &ExperimentConfig,
) -> Result<Vec<DimensionReport>> {
    let params = DegreeParams::new(n, d)?;
    let range: Vec<u128> = (params.n_d_minus_1()..params.n_d()).collect();
    range
        .par_iter()
        .map(|&s| ik_verify(n, d, s, trials, mix_seed(seed, s as u64), cfg))
        .collect()
}

// ---------------------------------------------------------------------------
// Generic forms

/// Integer coefficient vectors of `r` random degree-`d` forms. The first `r'`
/// forms for `r' < r` are the same for a fixed seed.
pub fn random_forms(n: u32, d: u32, r: usize, seed: u64, bound: i64) -> Vec<Vec<i64>> {
    let len = dim_forms(n, d) as usize;
    (0..r)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, i as u64));
            (0..len).map(|_| rand_int(&mut rng, bound)).collect()
        })
        .collect()
}

/// Rows `p_i x^beta` for every form and every degree-`d` monomial.
pub fn ideal_degree_2d_matrix(
    field: PrimeField,
    forms: &[Vec<i64>],
    n: u32,
    d: u32,
) -> PrimeMatrix {
    let table = ProductTable::new(n, d, d);
    let nd = dim_forms(n, d) as usize;
    let cols = dim_forms(n, 2 * d) as usize;
    let mut m = PrimeMatrix::zeros(field, forms.len() * nd, cols);
    for (i, form) in forms.iter().enumerate() {
        let reduced: Vec<u64> = form.iter().map(|&c| field.from_i64_mod(c)).collect();
        for beta in 0..nd {
            let row = m.row_mut(i * nd + beta);
            for (alpha, &c) in reduced.iter().enumerate() {
                row[table.get(beta, alpha)] = c;
            }
        }
    }
    m
}

/// `m_r = dim I_{2d}` for `r` random degree-`d` forms, measured at every
/// prime. A disagreement between primes triggers a resample.
pub fn generic_ideal_dim(
    n: u32,
    d: u32,
    r: usize,
    seed: u64,
    cfg: &ExperimentConfig,
) -> Result<DimensionReport> {
    let params = DegreeParams::new(n, d)?;
    if r == 0 {
        return invalid("need at least one form");
    }
    cfg.guard(r as u128 * params.n_d(), params.n_2d(), "generic ideal")?;
    let n2d = params.n_2d();
    let mut last = None;
    for round in 0..cfg.max_rounds {
        let round_seed = mix_seed(seed, round as u64);
        let forms = random_forms(n, d, r, round_seed, cfg.coord_bound);
        let ranks: Vec<u128> = cfg
            .primes
            .iter()
            .map(|&f| ideal_degree_2d_matrix(f, &forms, n, d).rank() as u128)
            .collect();
        let agree = ranks.windows(2).all(|w| w[0] == w[1]);
        let full = ranks.iter().all(|&x| x == n2d);
        let report = DimensionReport {
            quantity: if full {
                Quantity::FullRankAtDegree2d
            } else {
                Quantity::GenericIdealDimMr
            },
            computed: *ranks.iter().max().expect("at least one prime"),
            expected: None,
            status: if agree {
                Status::NoExpectation
            } else {
                Status::InconclusiveHigh
            },
            n,
            d,
            size: r as u64,
            seed: round_seed,
            primes: cfg.prime_values(),
            per_prime: ranks,
            trials: round + 1,
            note: None,
        };
        if agree {
            return Ok(report);
        }
        last = Some(report);
    }
    Ok(last.expect("max_rounds >= 1"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LengthStatus {
    /// The sampled upper bound meets the certified lower bound.
    Exact,
    IntervalOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypicalLengthResult {
    pub n: u32,
    pub d: u32,
    /// Smallest `r` tried whose generic ideal is full in degree `2d`.
    pub r_found: Option<u32>,
    /// `ceil(λ(n,2d))`.
    pub certified_lower: u32,
    /// `2^{n-1}`.
    pub fos_cap: u64,
    pub status: LengthStatus,
    pub reports: Vec<DimensionReport>,
}

/// Smallest `r <= min(r_max, 2^{n-1})` for which `r` random forms of degree
/// `d` generate everything in degree `2d`.
///
/// The search starts at `ceil(λ)`: below it the Koszul count
/// `r N_d - C(r,2) < N_{2d}` rules out full rank. A single full-rank
/// instance proves `t <= r`.
pub fn typical_length(
    n: u32,
    d: u32,
    r_max: u32,
    seed: u64,
    cfg: &ExperimentConfig,
) -> Result<TypicalLengthResult> {
    let params = DegreeParams::new(n, d)?;
    let certified_lower = lambda_lower(params).ceil().max(1) as u32;
    let fos_cap = 1u64 << (n - 1);
    let top = (r_max as u64).min(fos_cap) as u32;
    let mut reports = Vec::new();
    let mut r_found = None;
    for r in certified_lower..=top {
        let report = generic_ideal_dim(n, d, r as usize, mix_seed(seed, r as u64), cfg)?;
        let full = report.quantity == Quantity::FullRankAtDegree2d;
        reports.push(report);
        if full {
            r_found = Some(r);
            break;
        }
    }
    let status = if r_found == Some(certified_lower) {
        LengthStatus::Exact
    } else {
        LengthStatus::IntervalOnly
    };
    Ok(TypicalLengthResult {
        n,
        d,
        r_found,
        certified_lower,
        fos_cap,
        status,
        reports,
    })
}
