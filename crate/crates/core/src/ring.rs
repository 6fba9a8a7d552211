//! Monomials in graded-lexicographic order, coefficient domains, and dense forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bounds::{binomial, dim_forms};
use crate::error::{invalid, Result};

/// `2^31 - 1`, the default working prime.
pub const P1: u64 = (1 << 31) - 1;
/// `2^61 - 1`, the confirmation prime.
pub const P2: u64 = (1 << 61) - 1;

/// A coefficient domain. Elements are plain values; the domain value
/// carries any context (the modulus) the arithmetic needs.
pub trait Domain: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The prime field `F_p` for `2 <= p < 2^62`, elements as residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
    /// `k` when `p = 2^k - 1`, else 0.
    mersenne: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 62).contains(&p) {
            return invalid(format!("modulus {p} outside [2, 2^62)"));
        }
        if !is_prime_u64(p) {
            return invalid(format!("modulus {p} is not prime"));
        }
        let mersenne = if (p + 1).is_power_of_two() {
            (p + 1).trailing_zeros()
        } else {
            0
        };
        Ok(Self { p, mersenne })
    }

    pub fn p1() -> Self {
        Self::new(P1).expect("2^31 - 1 is prime")
    }

    pub fn p2() -> Self {
        Self::new(P2).expect("2^61 - 1 is prime")
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces any `x < p^2 + p`.
    #[inline(always)]
    pub fn reduce(&self, x: u128) -> u64 {
        if self.mersenne != 0 {
            let k = self.mersenne;
            let p = self.p as u128;
            let r = (x & p) + (x >> k);
            let r = (r & p) + (r >> k);
            let r = r as u64;
            if r >= self.p {
                r - self.p
            } else {
                r
            }
        } else {
            (x % self.p as u128) as u64
        }
    }

    #[inline(always)]
    pub fn mul_mod(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    /// `a + f * b mod p`, the elimination kernel.
    #[inline(always)]
    pub fn mul_add(&self, a: u64, f: u64, b: u64) -> u64 {
        self.reduce(a as u128 + f as u128 * b as u128)
    }

    #[inline(always)]
    pub fn add_mod(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub_mod(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline(always)]
    pub fn neg_mod(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow_mod(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(acc, a);
            }
            a = self.mul_mod(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse by Fermat exponentiation. `a` must be nonzero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero mod {}", self.p);
        self.pow_mod(a, self.p - 2)
    }

    pub fn from_i64_mod(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }

    pub fn from_bigint(&self, v: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        v.mod_floor(&p).to_u64().expect("residue fits u64")
    }

    /// Image of a rational, or `None` when `p` divides the denominator.
    pub fn from_rational(&self, v: &BigRational) -> Option<u64> {
        let den = self.from_bigint(v.denom());
        if den == 0 {
            return None;
        }
        Some(self.mul_mod(self.from_bigint(v.numer()), self.inv(den)))
    }
}

impl Domain for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.add_mod(*a, *b)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.sub_mod(*a, *b)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mul_mod(*a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        self.neg_mod(*a)
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.from_i64_mod(v)
    }
    fn fmt_elem(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// Exact rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Domain for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        fmt_fraction(a)
    }
}

/// `p/q` with `q > 0`, or just `p` for integers.
pub fn fmt_fraction(a: &BigRational) -> String {
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mulm = |a: u64, b: u64| (a as u128 * b as u128 % n as u128) as u64;
    let powm = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulm(r, a);
            }
            a = mulm(a, a);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// ---------------------------------------------------------------------------
// Monomials

fn binom_usize(a: usize, b: usize) -> usize {
    binomial(a as u64, b as u64) as usize
}

/// Position of `exponents` among degree-`sum` monomials in graded-lex order,
/// where `x1^e` comes first and `xn^e` last.
///
/// Monomials sharing the first `i` exponents but with a larger exponent at
/// position `i` are counted in closed form by the hockey-stick identity.
pub fn mono_rank(exponents: &[u32], degree: u32) -> Result<usize> {
    let total: u64 = exponents.iter().map(|&a| a as u64).sum();
    if total != degree as u64 {
        return invalid(format!(
            "exponent vector {exponents:?} has degree {total}, expected {degree}"
        ));
    }
    if exponents.is_empty() {
        return invalid("monomials need at least one variable");
    }
    Ok(rank_unchecked(exponents))
}

#[inline]
fn rank_unchecked(exponents: &[u32]) -> usize {
    let n = exponents.len();
    let mut rem: usize = exponents.iter().map(|&a| a as usize).sum();
    let mut rank = 0usize;
    for (i, &a) in exponents.iter().enumerate().take(n.saturating_sub(1)) {
        let a = a as usize;
        let k = n - i - 1;
        if rem > a {
            rank += binom_usize(rem - a - 1 + k, k);
        }
        rem -= a;
    }
    rank
}

/// Inverse of [`mono_rank`].
pub fn mono_unrank(n: u32, degree: u32, index: usize) -> Result<Vec<u32>> {
    if n == 0 {
        return invalid("monomials need at least one variable");
    }
    let count = dim_forms(n, degree) as usize;
    if index >= count {
        return invalid(format!(
            "index {index} out of range for {count} monomials (n={n}, e={degree})"
        ));
    }
    let n = n as usize;
    let mut out = vec![0u32; n];
    let mut rem = degree as usize;
    let mut idx = index;
    for (i, slot) in out.iter_mut().enumerate().take(n - 1) {
        let k = n - i - 1;
        // Blocks in order of decreasing exponent v; each holds C(rem-v+k-1, k-1).
        let mut v = rem;
        loop {
            let block = binom_usize(rem - v + k - 1, k - 1);
            if idx < block {
                break;
            }
            idx -= block;
            v -= 1;
        }
        *slot = v as u32;
        rem -= v;
    }
    out[n - 1] = rem as u32;
    Ok(out)
}

/// Exponent vector of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() {
            return invalid("monomials need at least one variable");
        }
        Ok(Self { exponents })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn n(&self) -> u32 {
        self.exponents.len() as u32
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn rank(&self) -> usize {
        rank_unchecked(&self.exponents)
    }

    pub fn unrank(n: u32, degree: u32, index: usize) -> Result<Self> {
        Ok(Self {
            exponents: mono_unrank(n, degree, index)?,
        })
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        if self.n() != other.n() {
            return invalid("monomials in different variable counts");
        }
        Ok(Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &a) in self.exponents.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if a == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, a)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// All degree-`e` monomials in `n` variables, in rank order.
pub fn monomials(n: u32, e: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(dim_forms(n, e) as usize);
    let mut cur = vec![0u32; n as usize];
    fn rec(pos: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if pos == n - 1 {
            cur[pos] = rem;
            out.push(Monomial {
                exponents: cur.clone(),
            });
            return;
        }
        for v in (0..=rem).rev() {
            cur[pos] = v;
            rec(pos + 1, rem - v, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, e, &mut cur, &mut out);
    out
}

/// Index table for multiplying degree-`a` by degree-`b` monomials:
/// `get(i, j)` is the rank of `m_i * m_j` among degree-`a+b` monomials.
#[derive(Debug, Clone)]
pub struct ProductTable {
    cols: usize,
    table: Vec<u32>,
}

impl ProductTable {
    pub fn new(n: u32, a: u32, b: u32) -> Self {
        let left = monomials(n, a);
        let right = monomials(n, b);
        let mut table = Vec::with_capacity(left.len() * right.len());
        let mut buf = vec![0u32; n as usize];
        for l in &left {
            for r in &right {
                for (k, slot) in buf.iter_mut().enumerate() {
                    *slot = l.exponents[k] + r.exponents[k];
                }
                table.push(rank_unchecked(&buf) as u32);
            }
        }
        Self {
            cols: right.len(),
            table,
        }
    }

    #[inline(always)]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.table[i * self.cols + j] as usize
    }
}

// ---------------------------------------------------------------------------
// Forms and points

/// A projective point representative; not all coordinates zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Point<E> {
    coords: Vec<E>,
}

impl<E: Clone> Point<E> {
    pub fn new<D: Domain<Elem = E>>(domain: &D, coords: Vec<E>) -> Result<Self> {
        if coords.is_empty() || coords.iter().all(|c| domain.is_zero(c)) {
            return invalid("a projective point needs a nonzero coordinate");
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[E] {
        &self.coords
    }

    pub fn n(&self) -> u32 {
        self.coords.len() as u32
    }
}

/// Values of every degree-`e` monomial at `coords`, in rank order.
pub fn monomial_values<D: Domain>(domain: &D, coords: &[D::Elem], e: u32) -> Vec<D::Elem> {
    let powers: Vec<Vec<D::Elem>> = coords
        .iter()
        .map(|c| {
            let mut row = Vec::with_capacity(e as usize + 1);
            row.push(domain.one());
            for k in 1..=e as usize {
                let next = domain.mul(&row[k - 1], c);
                row.push(next);
            }
            row
        })
        .collect();
    monomials(coords.len() as u32, e)
        .iter()
        .map(|m| {
            m.exponents
                .iter()
                .enumerate()
                .fold(domain.one(), |acc, (i, &a)| {
                    domain.mul(&acc, &powers[i][a as usize])
                })
        })
        .collect()
}

/// A homogeneous polynomial stored densely in graded-lex order.
#[derive(Debug, Clone, PartialEq)]
pub struct Form<D: Domain> {
    domain: D,
    n: u32,
    degree: u32,
    coeffs: Vec<D::Elem>,
}

impl<D: Domain> Form<D> {
    pub fn new(domain: D, n: u32, degree: u32, coeffs: Vec<D::Elem>) -> Result<Self> {
        if n == 0 {
            return invalid("forms need at least one variable");
        }
        let expected = dim_forms(n, degree) as usize;
        if coeffs.len() != expected {
            return invalid(format!(
                "coefficient vector has length {}, expected N_({n},{degree}) = {expected}",
                coeffs.len()
            ));
        }
        Ok(Self {
            domain,
            n,
            degree,
            coeffs,
        })
    }

    pub fn zero(domain: D, n: u32, degree: u32) -> Self {
        let len = dim_forms(n, degree) as usize;
        let z = domain.zero();
        Self {
            domain,
            n,
            degree,
            coeffs: vec![z; len],
        }
    }

    /// `coeff * x^exponents`.
    pub fn monomial(domain: D, exponents: &[u32], coeff: D::Elem) -> Result<Self> {
        let degree = exponents.iter().sum();
        let idx = mono_rank(exponents, degree)?;
        let mut f = Self::zero(domain, exponents.len() as u32, degree);
        f.coeffs[idx] = coeff;
        Ok(f)
    }

    pub fn domain(&self) -> &D {
        &self.domain
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[D::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<D::Elem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.domain.is_zero(c))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.domain != other.domain {
            return invalid("forms live over different coefficient domains");
        }
        if self.n != other.n {
            return invalid(format!("forms in {} and {} variables", self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return invalid("cannot add forms of different degrees");
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.domain.add(a, b))
            .collect();
        Ok(Self {
            coeffs,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &D::Elem) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| self.domain.mul(a, c)).collect(),
            ..self.clone()
        }
    }

    /// Exact product; the result has degree `deg f + deg g`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let table = ProductTable::new(self.n, self.degree, other.degree);
        let mut out = Self::zero(self.domain.clone(), self.n, self.degree + other.degree);
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.domain.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if self.domain.is_zero(b) {
                    continue;
                }
                let k = table.get(i, j);
                let prod = self.domain.mul(a, b);
                out.coeffs[k] = self.domain.add(&out.coeffs[k], &prod);
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &Point<D::Elem>) -> Result<D::Elem> {
        if point.n() != self.n {
            return invalid(format!(
                "point has {} coordinates, form has {} variables",
                point.n(),
                self.n
            ));
        }
        let values = monomial_values(&self.domain, point.coords(), self.degree);
        Ok(self
            .coeffs
            .iter()
            .zip(&values)
            .fold(self.domain.zero(), |acc, (c, v)| {
                self.domain.add(&acc, &self.domain.mul(c, v))
            }))
    }
}

impl Form<Rationals> {
    /// Integer coefficients, as produced by kernel computations.
    pub fn from_integers(n: u32, degree: u32, coeffs: &[BigInt]) -> Result<Self> {
        Self::new(
            Rationals,
            n,
            degree,
            coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Reduction mod `p`; fails when `p` divides a denominator.
    pub fn reduce(&self, field: PrimeField) -> Result<Form<PrimeField>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| field.from_rational(c))
            .collect::<Option<Vec<_>>>();
        match coeffs {
            Some(coeffs) => Form::new(field, self.n, self.degree, coeffs),
            None => invalid(format!("a denominator is divisible by {}", field.modulus())),
        }
    }
}

impl<D: Domain> fmt::Display for Form<D> {
    /// `c * x1^a1 ... xn^an + ...`; zero terms are skipped.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if self.domain.is_zero(c) {
                continue;
            }
            if wrote {
                f.write_str(" + ")?;
            }
            wrote = true;
            let mono = Monomial::unrank(self.n, self.degree, i).map_err(|_| fmt::Error)?;
            if self.degree == 0 {
                write!(f, "{}", self.domain.fmt_elem(c))?;
            } else {
                write!(f, "{} * {}", self.domain.fmt_elem(c), mono)?;
            }
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Removes the common content of an integer vector and makes its first
/// nonzero entry positive.
pub fn normalize_integer_vector(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return;
    }
    let flip = v
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x = &*x / &g;
        if flip {
            *x = -&*x;
        }
    }
}
