//! Sums of squares with certified exact length.
//!
//! For `s` real points `Z` in general position the form
//! `f = p_1^2 + ... + p_b^2`, with `p_i` a basis of `I(Z)_d`, has sos length
//! exactly `b = N_d - s` whenever the product map `S^2(I(Z)_d) -> R[x]_{2d}`
//! is injective:
//!
//! - any representation `f = sum q_k^2` has every `q_k` vanishing on `Z`,
//!   because the squares are nonnegative at real points, so `q_k` lies in
//!   `I(Z)_d`;
//! - injectivity pins the Gram tensor `sum q_k ⊗ q_k`, and over a real field
//!   equal Gram tensors mean orthogonally equivalent representations, whose
//!   length is the rank of the tensor, `b`.
//!
//! Injectivity is certified by the product matrix having full row rank
//! `C(b+1, 2)` modulo a prime, which forces full rank over `Q`. This holds
//! for the sampled instance without any conjecture.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{binomial, dim_forms, s_min, DegreeParams};
use crate::error::{invalid, Error, Result};
use crate::generic::{mix_seed, square_product_matrix, ExperimentConfig};
use crate::linalg::{kernel_basis_rational, PrimeMatrix, RationalMatrix};
use crate::ring::{monomial_values, Form, Point, PrimeField, ProductTable, Rationals};

/// Witness points have integer coordinates in `[-WITNESS_COORD_BOUND, WITNESS_COORD_BOUND]`.
pub const WITNESS_COORD_BOUND: i64 = 1000;

/// Default point count: `C(d+1, 2)` for ternary forms, `s_min(n, d)` otherwise.
pub fn default_point_count(n: u32, d: u32) -> Result<u128> {
    if n == 3 {
        Ok(binomial(d as u64 + 1, 2))
    } else {
        s_min(DegreeParams::new(n, d)?)
    }
}

mod decimal {
    //! Big integers as decimal strings in JSON.
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|x| x.to_string()))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
            let raw = Vec::<String>::deserialize(d)?;
            raw.iter()
                .map(|x| BigInt::from_str(x).map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod vec2 {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(
                v.iter()
                    .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            )
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
            let raw = Vec::<Vec<String>>::deserialize(d)?;
            raw.iter()
                .map(|row| {
                    row.iter()
                        .map(|x| BigInt::from_str(x).map_err(serde::de::Error::custom))
                        .collect()
                })
                .collect()
        }
    }
}

/// A self-contained, independently checkable proof that `witness` has sos
/// length exactly `length`.
///
/// Coefficient vectors are in graded-lex order (`x1^e` first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthCertificate {
    pub n: u32,
    pub d: u32,
    pub s: usize,
    /// Primes at which the product matrix reached full rank.
    pub primes: Vec<u64>,
    /// Seed of the point sampler in the round that succeeded.
    pub seed: u64,
    pub points: Vec<Vec<i64>>,
    /// Integer basis of `I(Z)_d`, content 1, first nonzero entry positive.
    #[serde(with = "decimal::vec2")]
    pub basis: Vec<Vec<BigInt>>,
    /// `sum basis_i^2`, degree `2d`.
    #[serde(with = "decimal::vec")]
    pub witness: Vec<BigInt>,
    pub length: usize,
    pub injectivity_rank: usize,
}

impl LengthCertificate {
    pub fn basis_forms(&self) -> Result<Vec<Form<Rationals>>> {
        self.basis
            .iter()
            .map(|v| Form::from_integers(self.n, self.d, v))
            .collect()
    }

    pub fn witness_form(&self) -> Result<Form<Rationals>> {
        Form::from_integers(self.n, 2 * self.d, &self.witness)
    }

    /// The representation `witness = sum basis_i^2`.
    pub fn basis_representation(&self) -> Result<SosRepresentation> {
        SosRepresentation::new(self.basis_forms()?)
    }

    pub fn rational_points(&self) -> Result<Vec<Point<BigRational>>> {
        self.points
            .iter()
            .map(|p| {
                Point::new(
                    &Rationals,
                    p.iter()
                        .map(|&c| BigRational::from_integer(BigInt::from(c)))
                        .collect(),
                )
            })
            .collect()
    }
}

fn integer_evaluation_rows(points: &[Vec<i64>], e: u32) -> Vec<Vec<BigInt>> {
    let domain = Rationals;
    points
        .iter()
        .map(|p| {
            let coords: Vec<BigRational> = p
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect();
            monomial_values(&domain, &coords, e)
                .into_iter()
                .map(|v| v.to_integer())
                .collect()
        })
        .collect()
}

fn square_sum(n: u32, d: u32, basis: &[Vec<BigInt>]) -> Vec<BigInt> {
    let table = ProductTable::new(n, d, d);
    let mut out = vec![BigInt::zero(); dim_forms(n, 2 * d) as usize];
    for v in basis {
        for (a, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in v.iter().enumerate() {
                if !y.is_zero() {
                    out[table.get(a, b)] += x * y;
                }
            }
        }
    }
    out
}

fn reduce_basis(field: PrimeField, basis: &[Vec<BigInt>]) -> Vec<Vec<u64>> {
    basis
        .iter()
        .map(|v| v.iter().map(|x| field.from_bigint(x)).collect())
        .collect()
}

/// Samples `s` integer points, computes the exact basis of `I(Z)_d` and the
/// witness `sum p_i^2`, and certifies its length `N_d - s`.
pub fn build_witness(
    n: u32,
    d: u32,
    s: usize,
    seed: u64,
    cfg: &ExperimentConfig,
) -> Result<LengthCertificate> {
    if n < 3 || d < 2 {
        return invalid(format!(
            "witnesses need n >= 3 and d >= 2, got n={n}, d={d}"
        ));
    }
    let params = DegreeParams::new(n, d)?;
    let (lo, hi) = (params.n_d_minus_1() as usize, params.n_d() as usize);
    if s < lo || s >= hi {
        return invalid(format!("s = {s} outside [N_(d-1), N_d) = [{lo}, {hi})"));
    }
    let b = hi - s;
    let target_rank = b * (b + 1) / 2;
    let mut shortfall = Vec::new();
    for round in 0..cfg.max_rounds {
        let round_seed = mix_seed(seed, round as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(round_seed);
        let points: Vec<Vec<i64>> = (0..s)
            .map(|_| loop {
                let p: Vec<i64> = (0..n)
                    .map(|_| rng.gen_range(-WITNESS_COORD_BOUND..=WITNESS_COORD_BOUND))
                    .collect();
                if p.iter().any(|&c| c != 0) {
                    break p;
                }
            })
            .collect();

        // exact genericity gate
        let eval_d = RationalMatrix::from_integer_rows(&integer_evaluation_rows(&points, d))?;
        let eval_below =
            RationalMatrix::from_integer_rows(&integer_evaluation_rows(&points, d - 1))?;
        if eval_d.rank() != s || eval_below.rank() != s.min(lo) {
            shortfall.push(format!("round {round}: evaluation rank not maximal"));
            continue;
        }

        let basis = kernel_basis_rational(&eval_d);
        if basis.len() != b {
            return Err(Error::Internal(format!(
                "kernel has dimension {} but evaluation rank is {s}",
                basis.len()
            )));
        }

        let mut primes = Vec::new();
        let mut best = 0;
        for &field in &cfg.primes {
            let rank = square_product_matrix(field, &reduce_basis(field, &basis), n, d).rank();
            best = best.max(rank);
            if rank == target_rank {
                primes.push(field.modulus());
            }
        }
        if primes.is_empty() {
            shortfall.push(format!(
                "round {round}: product rank {best} < {target_rank}"
            ));
            continue;
        }
        let witness = square_sum(n, d, &basis);
        return Ok(LengthCertificate {
            n,
            d,
            s,
            primes,
            seed: round_seed,
            points,
            basis,
            witness,
            length: b,
            injectivity_rank: target_rank,
        });
    }
    Err(Error::CertificationFailure(format!(
        "n={n}, d={d}, s={s}: {}",
        shortfall.join("; ")
    )))
}

/// Re-checks every claim of a certificate from its serialized data alone.
pub fn verify_certificate(cert: &LengthCertificate) -> Result<()> {
    let fail = |msg: String| Err(Error::CertificationFailure(msg));
    let (n, d) = (cert.n, cert.d);
    let params = DegreeParams::new(n, d)?;
    let nd = params.n_d() as usize;
    if cert.points.len() != cert.s || cert.points.iter().any(|p| p.len() != n as usize) {
        return fail("point list does not match (n, s)".into());
    }
    if cert.basis.len() != cert.length || cert.length + cert.s != nd {
        return fail(format!(
            "length {} with {} basis forms and s = {} (N_d = {nd})",
            cert.length,
            cert.basis.len(),
            cert.s
        ));
    }
    if cert.basis.iter().any(|v| v.len() != nd) {
        return fail("basis vector of wrong length".into());
    }
    if square_sum(n, d, &cert.basis) != cert.witness {
        return fail("witness differs from the sum of squared basis forms".into());
    }
    let eval = RationalMatrix::from_integer_rows(&integer_evaluation_rows(&cert.points, d))?;
    for v in &cert.basis {
        if !crate::linalg::is_kernel_vector(&eval, v) {
            return fail("a basis form does not vanish on every point".into());
        }
    }
    let want = cert.length * (cert.length + 1) / 2;
    if cert.injectivity_rank != want || cert.primes.is_empty() {
        return fail(format!(
            "injectivity rank {} recorded, {want} required",
            cert.injectivity_rank
        ));
    }
    for &p in &cert.primes {
        let field = PrimeField::new(p)?;
        let eval_p = eval.reduce(field).expect("integer matrix");
        if eval_p.rank() != cert.s {
            return fail(format!("evaluation rank mod {p} below s"));
        }
        let rank = square_product_matrix(field, &reduce_basis(field, &cert.basis), n, d).rank();
        if rank != want {
            return fail(format!("product rank mod {p} is {rank}, not {want}"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Representations and Gram tensors

/// `target = sum summands_i^2` over `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct SosRepresentation {
    n: u32,
    d: u32,
    summands: Vec<Form<Rationals>>,
    target: Form<Rationals>,
}

impl SosRepresentation {
    pub fn new(summands: Vec<Form<Rationals>>) -> Result<Self> {
        let Some(first) = summands.first() else {
            return invalid("a representation needs at least one summand");
        };
        let (n, d) = (first.n(), first.degree());
        if summands.iter().any(|p| p.n() != n || p.degree() != d) {
            return invalid("summands differ in variable count or degree");
        }
        let mut target = Form::zero(Rationals, n, 2 * d);
        for p in &summands {
            target = target.add(&p.multiply(p)?)?;
        }
        Ok(Self {
            n,
            d,
            summands,
            target,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn summands(&self) -> &[Form<Rationals>] {
        &self.summands
    }

    pub fn target(&self) -> &Form<Rationals> {
        &self.target
    }
}

/// `sum v_i v_i^T` for the coefficient vectors `v_i` of the summands, in the
/// degree-`d` monomial basis.
#[derive(Debug, Clone, PartialEq)]
pub struct GramTensor {
    pub n: u32,
    pub d: u32,
    pub size: usize,
    pub matrix: Vec<BigRational>,
}

impl GramTensor {
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.matrix[i * self.size + j]
    }

    pub fn rank(&self) -> usize {
        RationalMatrix::new(self.size, self.size, self.matrix.clone())
            .expect("square")
            .rank()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// The quadratic form `v^T G v` read back as a degree-`2d` form.
    pub fn induced_form(&self) -> Result<Form<Rationals>> {
        let table = ProductTable::new(self.n, self.d, self.d);
        let mut out = vec![BigRational::zero(); dim_forms(self.n, 2 * self.d) as usize];
        for i in 0..self.size {
            for j in 0..self.size {
                let g = self.get(i, j);
                if !g.is_zero() {
                    out[table.get(i, j)] += g;
                }
            }
        }
        Form::new(Rationals, self.n, 2 * self.d, out)
    }
}

pub fn gram_tensor(rep: &SosRepresentation) -> GramTensor {
    let size = dim_forms(rep.n, rep.d) as usize;
    let mut matrix = vec![BigRational::zero(); size * size];
    for p in &rep.summands {
        let v = p.coeffs();
        for i in 0..size {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..size {
                if !v[j].is_zero() {
                    matrix[i * size + j] += &v[i] * &v[j];
                }
            }
        }
    }
    GramTensor {
        n: rep.n,
        d: rep.d,
        size,
        matrix,
    }
}

/// Whether two representations of the same form are orthogonally
/// equivalent, decided by comparing Gram tensors.
pub fn gram_equivalent(a: &SosRepresentation, b: &SosRepresentation) -> Result<bool> {
    if a.n != b.n || a.d != b.d {
        return invalid("representations of different shapes");
    }
    if a.target != b.target {
        return invalid("representations have different targets");
    }
    Ok(gram_tensor(a) == gram_tensor(b))
}

/// Checks that `alt` is a valid representation of the certificate's witness
/// (every summand vanishes on the points) and that it is orthogonally
/// equivalent to the basis representation.
pub fn certify_unique_representation(
    cert: &LengthCertificate,
    alt: &SosRepresentation,
) -> Result<bool> {
    if alt.target != cert.witness_form()? {
        return invalid("alternative representation does not sum to the witness");
    }
    let points = cert.rational_points()?;
    for (k, q) in alt.summands.iter().enumerate() {
        for pt in &points {
            if !q.evaluate(pt)?.is_zero() {
                return invalid(format!("summand {k} does not vanish on the point set"));
            }
        }
    }
    gram_equivalent(alt, &cert.basis_representation()?)
}

/// Applies `rotations` random rational Givens rotations, built from
/// Pythagorean triples, to random pairs of summands. The result is an
/// orthogonally equivalent representation.
pub fn orthogonal_mix(rep: &SosRepresentation, rotations: usize, seed: u64) -> SosRepresentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summands = rep.summands.clone();
    let m = summands.len();
    for _ in 0..rotations {
        if m < 2 {
            if rng.gen_bool(0.5) {
                summands[0] = summands[0].scale(&-BigRational::one());
            }
            continue;
        }
        let i = rng.gen_range(0..m);
        let j = (i + rng.gen_range(1..m)) % m;
        let (u, v) = loop {
            let u: i64 = rng.gen_range(1..12);
            let v: i64 = rng.gen_range(1..12);
            if u != v {
                break (u, v);
            }
        };
        let (a, b, c) = (u * u - v * v, 2 * u * v, u * u + v * v);
        let ca = BigRational::new(BigInt::from(a), BigInt::from(c));
        let cb = BigRational::new(BigInt::from(b), BigInt::from(c));
        let pi = summands[i].clone();
        let pj = summands[j].clone();
        summands[i] = pi.scale(&ca).add(&pj.scale(&cb)).expect("same shape");
        summands[j] = pi.scale(&-cb).add(&pj.scale(&ca)).expect("same shape");
    }
    SosRepresentation::new(summands).expect("same shape as input")
}

/// JSON shape for a representation: `{n, d, summands: [["p/q", ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationRecord {
    pub n: u32,
    pub d: u32,
    pub summands: Vec<Vec<String>>,
}

impl RepresentationRecord {
    pub fn from_representation(rep: &SosRepresentation) -> Self {
        Self {
            n: rep.n,
            d: rep.d,
            summands: rep
                .summands
                .iter()
                .map(|p| p.coeffs().iter().map(crate::ring::fmt_fraction).collect())
                .collect(),
        }
    }

    pub fn to_representation(&self) -> Result<SosRepresentation> {
        let forms = self
            .summands
            .iter()
            .map(|row| {
                let coeffs = row
                    .iter()
                    .map(|x| {
                        BigRational::from_str(x)
                            .map_err(|e| Error::InvalidArgument(format!("bad fraction {x:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Form::new(Rationals, self.n, self.d, coeffs)
            })
            .collect::<Result<Vec<_>>>()?;
        SosRepresentation::new(forms)
    }
}

/// Rank of a product matrix over a prime, exposed for independent checks.
pub fn product_rank(field: PrimeField, n: u32, d: u32, basis: &[Vec<BigInt>]) -> usize {
    square_product_matrix(field, &reduce_basis(field, basis), n, d).rank()
}

/// Evaluation matrix of integer points reduced mod `p`.
pub fn evaluation_matrix_mod(field: PrimeField, points: &[Vec<i64>], e: u32) -> PrimeMatrix {
    let rows: Vec<Vec<u64>> = integer_evaluation_rows(points, e)
        .iter()
        .map(|r| r.iter().map(|x| field.from_bigint(x)).collect())
        .collect();
    let cols = dim_forms(points.first().map_or(1, |p| p.len() as u32), e) as usize;
    PrimeMatrix::new(field, rows.len(), cols, rows.concat()).expect("shape matches")
}
