//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::cmp::Ordering;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use pythagoras_core::bounds::{
    binomial, bounds_row, bounds_table, cmp_theta_gap, dim_forms, lambda_upper, leep_beats_lambda,
    leep_bound, DegreeParams,
};
use pythagoras_core::generic::{
    ik_expected, ik_sweep, ik_verify, typical_length, DimensionReport, ExperimentConfig,
    LengthStatus, Status,
};
use pythagoras_core::linalg::{kernel_basis_rational, RationalMatrix};
use pythagoras_core::ring::{mono_rank, mono_unrank, P1, P2};
use pythagoras_core::witness::{build_witness, gram_tensor, orthogonal_mix, LengthCertificate};

const SEED: u64 = 20_250_101;

// Runtime budgets per criterion.
const BUDGET_TABLE: Duration = Duration::from_secs(1);
const BUDGET_LAMBDA: Duration = Duration::from_secs(1);
const BUDGET_TERNARY: Duration = Duration::from_secs(30);
const BUDGET_SWEEP: Duration = Duration::from_secs(300);
const BUDGET_TYPICAL: Duration = Duration::from_secs(600);
const BUDGET_WITNESS: Duration = Duration::from_secs(120);
const BUDGET_ASYMPTOTIC: Duration = Duration::from_secs(1);

const MONO_LIMIT: u128 = 10_000;
const GRAM_MIXES: u64 = 100;
const KERNEL_MATRICES: u64 = 100;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_pythagoras")
}

fn cfg() -> ExperimentConfig {
    ExperimentConfig::default()
}

// ---------------------------------------------------------------------------
// 1

/// `(n, s_min row, lower row, upper row)` for d = 2..8.
type TableBlock = (u32, [u128; 7], [u128; 7], [u128; 7]);

const TABLE: [TableBlock; 3] = [
    (
        4,
        [5, 12, 24, 41, 65, 97, 137],
        [5, 8, 11, 15, 19, 23, 28],
        [7, 11, 16, 22, 29, 36, 43],
    ),
    (
        5,
        [8, 21, 48, 94, 166, 273, 422],
        [7, 14, 22, 32, 44, 57, 73],
        [11, 20, 30, 44, 59, 77, 97],
    ),
    (
        6,
        [10, 34, 88, 192, 374, 670, 1123],
        [11, 22, 38, 60, 88, 122, 164],
        [15, 29, 50, 77, 110, 152, 201],
    ),
];

fn parse_row(text: &str, label: &str) -> Option<Vec<u128>> {
    let line = text.lines().find(|l| l.starts_with(label))?;
    line[label.len()..]
        .split_whitespace()
        .map(|x| x.parse().ok())
        .collect()
}

fn criterion_table() -> Outcome {
    let out = Command::new(bin())
        .args(["table", "--paper-table"])
        .output()
        .expect("binary runs");
    if !out.status.success() {
        return fail(format!("exit status {}", out.status));
    }
    let text = String::from_utf8_lossy(&out.stdout);
    if parse_row(&text, "d:") != Some((2..=8).collect()) {
        return fail("missing d header");
    }
    let mut matched = 0;
    let rows = bounds_table(4..=6, 2..=8).expect("valid box");
    for (n, s, lo, up) in TABLE {
        let printed = [
            parse_row(&text, &format!("s_min({n},d):")),
            parse_row(&text, &format!("p({n},2d)≥:")),
            parse_row(&text, &format!("p({n},2d)≤:")),
        ];
        for (got, want) in printed.iter().zip([s, lo, up]) {
            match got {
                Some(g) if g.as_slice() == want.as_slice() => matched += 7,
                _ => return fail(format!("n={n}: printed {got:?}, expected {want:?}")),
            }
        }
        for (i, d) in (2..=8).enumerate() {
            let row = rows
                .iter()
                .find(|r| r.params.n == n && r.params.d == d)
                .expect("row present");
            if (row.s_min, row.theta, row.upper_best) != (s[i], lo[i], up[i]) {
                return fail(format!("library row ({n},{d}) disagrees"));
            }
        }
    }
    pass(format!("{matched}/63 numbers match; s_min(6,8)=1123"))
}

// ---------------------------------------------------------------------------
// 2

fn criterion_lambda() -> Outcome {
    for d in 1..=50u32 {
        let big = lambda_upper(DegreeParams::new(3, d).unwrap());
        let want = 2 * d as i128 + 1;
        if !big.is_rational() || big.floor() != want || big.ceil() != want {
            return fail(format!("Λ(3,{}) = {big}, expected {want}", 2 * d));
        }
    }
    let pairs = leep_beats_lambda(4..=10, 1..=100);
    if pairs != vec![(4, 6), (4, 8), (4, 10)] {
        return fail(format!("exceptional pairs {pairs:?}"));
    }
    for ((_, two_d), want) in pairs.iter().zip([12i128, 17, 23]) {
        let p = DegreeParams::new(4, two_d / 2).unwrap();
        let floor = lambda_upper(p).floor();
        let l = leep_bound(4, two_d / 2) as i128;
        if floor != want || l != want - 1 {
            return fail(format!("(4,{two_d}): floor(Λ)={floor}, L={l}"));
        }
    }
    pass(
        "Λ(3,2d)=2d+1 for d=1..50; L<floor(Λ) exactly at (4,6),(4,8),(4,10) with floor(Λ)=12,17,23",
    )
}

// ---------------------------------------------------------------------------
// 3, 4

fn agree_across_primes(r: &DimensionReport) -> bool {
    r.primes.len() == 2 && r.per_prime.len() == 2 && r.per_prime.iter().all(|&h| h == r.computed)
}

fn criterion_ternary(log: &mut Vec<DimensionReport>) -> Outcome {
    let mut count = 0;
    for d in 2..=10u32 {
        let s = binomial(d as u64 + 1, 2);
        for seed in [SEED, SEED + 1] {
            let r = match ik_verify(3, d, s, 1, seed, &cfg()) {
                Ok(r) => r,
                Err(e) => return fail(format!("d={d}: {e}")),
            };
            let ok = r.status == Status::Verified && r.computed == 3 * s && agree_across_primes(&r);
            log.push(r.clone());
            if !ok {
                return fail(format!(
                    "d={d} seed={seed}: {:?} h={}",
                    r.status, r.computed
                ));
            }
            count += 1;
        }
    }
    pass(format!(
        "{count} runs Verified with h=3*C(d+1,2), d=2..10, 2 seeds, both primes"
    ))
}

fn criterion_sweep(log: &mut Vec<DimensionReport>) -> Outcome {
    let mut count = 0;
    let mut exceptional = Vec::new();
    for n in 3..=5u32 {
        for d in 2..=3u32 {
            let reports = match ik_sweep(n, d, 2, SEED, &cfg()) {
                Ok(r) => r,
                Err(e) => return fail(format!("({n},{d}): {e}")),
            };
            let p = DegreeParams::new(n, d).unwrap();
            if reports.len() as u128 != p.n_d() - p.n_d_minus_1() {
                return fail(format!("({n},{d}): {} reports", reports.len()));
            }
            for r in reports {
                if r.status != Status::Verified || !agree_across_primes(&r) {
                    let msg = format!(
                        "({n},{d},{}): {:?} h={} expected {:?}",
                        r.size, r.status, r.computed, r.expected
                    );
                    log.push(r);
                    return fail(msg);
                }
                if [(3, 2, 5), (4, 2, 9), (5, 2, 14)].contains(&(n, d, r.size)) {
                    exceptional.push(r.computed);
                }
                count += 1;
                log.push(r);
            }
        }
    }
    if exceptional != [14, 34, 69] {
        return fail(format!("exceptional triples gave {exceptional:?}"));
    }
    pass(format!(
        "{count} instances Verified; (3,2,5)->14, (4,2,9)->34, (5,2,14)->69"
    ))
}

// ---------------------------------------------------------------------------
// 5

fn criterion_typical(log: &mut Vec<DimensionReport>) -> Outcome {
    let mut cases: Vec<(u32, u32, u32)> = vec![(3, 1, 3), (3, 2, 3)];
    cases.extend((3..=8).map(|d| (3, d, 4)));
    cases.extend((2..=4).map(|d| (4, d, 5)));
    cases.extend((5..=8).map(|d| (4, d, 6)));
    cases.extend((9..=10).map(|d| (4, d, 7)));
    for &(n, d, want) in &cases {
        let t = match typical_length(n, d, 1 << (n - 1), SEED, &cfg()) {
            Ok(t) => t,
            Err(e) => return fail(format!("t({n},{}): {e}", 2 * d)),
        };
        log.extend(t.reports.iter().cloned());
        let Some(r) = t.r_found else {
            return fail(format!(
                "t({n},{}): nothing found up to {}",
                2 * d,
                t.fos_cap
            ));
        };
        let consistent = t.certified_lower <= r && r as u64 <= t.fos_cap;
        if r != want || !consistent || t.status != LengthStatus::Exact {
            return fail(format!(
                "t({n},{}): r_found={r} lower={} status={:?}, expected {want}",
                2 * d,
                t.certified_lower,
                t.status
            ));
        }
    }
    pass(format!(
        "{} typical lengths reproduced, all Exact",
        cases.len()
    ))
}

// ---------------------------------------------------------------------------
// 6: certificates, rechecked by code that shares nothing with the library

fn graded_lex(n: usize, e: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![e]];
    }
    let mut out = Vec::new();
    for a in (0..=e).rev() {
        for mut rest in graded_lex(n - 1, e - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let powm = |mut b: u64, mut e: u64| {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = mulm(r, b);
            }
            b = mulm(b, b);
            e >>= 1;
        }
        r
    };
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = powm(rows[rank][c], p - 2);
        let pivot: Vec<u64> = rows[rank].iter().map(|&x| mulm(x, inv)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p - mulm(f, y)) % p;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

fn big_mod(x: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    (((x % &m) + &m) % &m).to_u64().unwrap()
}

fn independent_check(cert: &Value) -> Result<usize, String> {
    let num = |k: &str| cert[k].as_u64().ok_or(format!("missing {k}"));
    let (n, d, s) = (num("n")? as usize, num("d")? as u32, num("s")? as usize);
    let big = |v: &Value| BigInt::from_str(v.as_str().unwrap_or("x")).map_err(|e| e.to_string());
    let basis: Vec<Vec<BigInt>> = cert["basis"]
        .as_array()
        .ok_or("basis")?
        .iter()
        .map(|v| {
            v.as_array()
                .ok_or("basis row".to_string())?
                .iter()
                .map(big)
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let witness: Vec<BigInt> = cert["witness"]
        .as_array()
        .ok_or("witness")?
        .iter()
        .map(big)
        .collect::<Result<_, _>>()?;
    let points: Vec<Vec<i64>> =
        serde_json::from_value(cert["points"].clone()).map_err(|e| e.to_string())?;
    let primes: Vec<u64> =
        serde_json::from_value(cert["primes"].clone()).map_err(|e| e.to_string())?;

    let md = graded_lex(n, d);
    let m2d = graded_lex(n, 2 * d);
    let index = |a: &[u32], b: &[u32]| {
        let sum: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        m2d.iter().position(|m| *m == sum).unwrap()
    };
    let b = basis.len();
    if points.len() != s || b + s != md.len() || num("length")? as usize != b {
        return Err("length does not equal N_d - s".into());
    }
    if num("injectivity_rank")? as usize != b * (b + 1) / 2 {
        return Err("recorded injectivity rank".into());
    }
    // multiply back
    let mut sum = vec![BigInt::zero(); m2d.len()];
    let mut products = Vec::new();
    for i in 0..b {
        for j in i..b {
            let mut row = vec![BigInt::zero(); m2d.len()];
            for (a, x) in basis[i].iter().enumerate() {
                for (c, y) in basis[j].iter().enumerate() {
                    row[index(&md[a], &md[c])] += x * y;
                }
            }
            if i == j {
                for (t, v) in sum.iter_mut().zip(&row) {
                    *t += v;
                }
            }
            products.push(row);
        }
    }
    if sum != witness {
        return Err("witness is not the sum of squares".into());
    }
    // vanishing
    let evals: Vec<Vec<BigInt>> = points
        .iter()
        .map(|pt| {
            md.iter()
                .map(|m| {
                    pt.iter().zip(m).fold(BigInt::from(1), |acc, (&c, &e)| {
                        acc * BigInt::from(c).pow(e)
                    })
                })
                .collect()
        })
        .collect();
    for v in &basis {
        for row in &evals {
            let val: BigInt = v.iter().zip(row).map(|(x, y)| x * y).sum();
            if !val.is_zero() {
                return Err("basis form does not vanish on a point".into());
            }
        }
    }
    // rank evidence
    if primes.is_empty() {
        return Err("no primes".into());
    }
    for p in primes {
        let reduce = |m: &[Vec<BigInt>]| {
            m.iter()
                .map(|r| r.iter().map(|x| big_mod(x, p)).collect())
                .collect()
        };
        if rank_mod(reduce(&evals), p) != s {
            return Err(format!("evaluation rank mod {p}"));
        }
        if rank_mod(reduce(&products), p) != b * (b + 1) / 2 {
            return Err(format!("product rank mod {p}"));
        }
    }
    Ok(b)
}

fn python_check(paths: &[PathBuf]) -> Option<Result<(), String>> {
    let script = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scripts/check_certificate.py");
    let probe = Command::new("python3").arg("--version").output();
    if !matches!(probe, Ok(ref o) if o.status.success()) {
        return None;
    }
    let out = Command::new("python3")
        .arg(script)
        .args(paths)
        .output()
        .ok()?;
    Some(if out.status.success() {
        Ok(())
    } else {
        Err(String::from_utf8_lossy(&out.stdout).into_owned())
    })
}

fn criterion_witness(dir: &Path) -> Outcome {
    let mut cases: Vec<(u32, u32, usize, usize)> = (2..=6)
        .map(|d| (3, d, binomial(d as u64 + 1, 2) as usize, d as usize + 1))
        .collect();
    cases.push((4, 2, 5, 5));
    let mut paths = Vec::new();
    let mut lengths = Vec::new();
    for (n, d, s, want) in cases {
        let cert = match build_witness(n, d, s, SEED, &cfg()) {
            Ok(c) => c,
            Err(e) => return fail(format!("({n},{d},{s}): {e}")),
        };
        let path = dir.join(format!("cert-{n}-{d}-{s}.json"));
        std::fs::write(&path, serde_json::to_string(&cert).unwrap()).unwrap();
        let value: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        match independent_check(&value) {
            Ok(len) if len == want => {}
            Ok(len) => return fail(format!("({n},{d},{s}): length {len}, expected {want}")),
            Err(e) => return fail(format!("({n},{d},{s}): {e}")),
        }
        if n == 3 {
            let upper = bounds_row(DegreeParams::new(3, d).unwrap())
                .unwrap()
                .upper_best;
            if upper != d as u128 + 2 {
                return fail(format!("upper bound for p(3,{}) is {upper}", 2 * d));
            }
        }
        lengths.push(want);
        paths.push(path);
    }
    let script = match python_check(&paths) {
        None => "python3 not found, script skipped".to_string(),
        Some(Ok(())) => "script agrees".to_string(),
        Some(Err(e)) => return fail(format!("check_certificate.py: {e}")),
    };
    pass(format!(
        "lengths {lengths:?} for (3,d,C(d+1,2)) d=2..6 and (4,2,5); d+1 <= p(3,2d) <= d+2; {script}"
    ))
}

// ---------------------------------------------------------------------------
// 7

fn property_dimension_floor(log: &[DimensionReport]) -> Result<usize, String> {
    let mut checked = 0;
    for r in log {
        if let Some(e) = r.expected {
            if r.n >= 3
                && r.d >= 2
                && r.computed < ik_expected(r.n, r.d, r.size as u128).unwrap_or(e)
            {
                return Err(format!(
                    "({},{},{}): h={} < {e}",
                    r.n, r.d, r.size, r.computed
                ));
            }
            if r.status == Status::InternalError {
                return Err(format!(
                    "({},{},{}) flagged InternalError",
                    r.n, r.d, r.size
                ));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

fn property_prime_agreement(log: &[DimensionReport]) -> Result<usize, String> {
    for r in log {
        if r.primes != [P1, P2] || !r.per_prime.iter().all(|&h| h == r.per_prime[0]) {
            return Err(format!(
                "{:?} ({},{},{}): per prime {:?}",
                r.quantity, r.n, r.d, r.size, r.per_prime
            ));
        }
    }
    Ok(log.len())
}

fn property_monomials() -> Result<usize, String> {
    let mut spaces = 0;
    for n in 1..=12u32 {
        for e in 0..=60u32 {
            if dim_forms(n, e) > MONO_LIMIT {
                break;
            }
            let list = graded_lex(n as usize, e);
            if list.len() as u128 != dim_forms(n, e) {
                return Err(format!("N_({n},{e}) mismatch"));
            }
            for (i, m) in list.iter().enumerate() {
                let r = mono_rank(m, e).map_err(|x| x.to_string())?;
                let back = mono_unrank(n, e, i).map_err(|x| x.to_string())?;
                if r != i || back != *m {
                    return Err(format!("n={n} e={e} index {i}: rank {r}, unrank {back:?}"));
                }
            }
            if mono_unrank(n, e, list.len()).is_ok() {
                return Err(format!("unrank accepted index N_({n},{e})"));
            }
            spaces += 1;
        }
    }
    Ok(spaces)
}

fn property_gram_mixes(cert: &LengthCertificate) -> Result<u64, String> {
    let rep = cert.basis_representation().map_err(|e| e.to_string())?;
    let base = gram_tensor(&rep);
    for k in 0..GRAM_MIXES {
        let mixed = orthogonal_mix(&rep, 1 + (k as usize % 17), SEED ^ k);
        if mixed.target() != rep.target() || gram_tensor(&mixed) != base {
            return Err(format!("mix {k} changed the Gram tensor"));
        }
    }
    Ok(GRAM_MIXES)
}

fn property_kernels() -> Result<u64, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let small = |rng: &mut ChaCha8Rng| {
        BigRational::new(
            BigInt::from(rng.gen_range(-9i64..=9)),
            BigInt::from(rng.gen_range(1i64..=6)),
        )
    };
    for k in 0..KERNEL_MATRICES {
        let rows = rng.gen_range(1..=7usize);
        let cols = rng.gen_range(1..=9usize);
        let inner = rng.gen_range(1..=rows.min(cols));
        // low-rank product so kernels are often larger than cols - rows
        let a: Vec<BigRational> = (0..rows * inner).map(|_| small(&mut rng)).collect();
        let b: Vec<BigRational> = (0..inner * cols).map(|_| small(&mut rng)).collect();
        let mut data = vec![BigRational::zero(); rows * cols];
        for i in 0..rows {
            for j in 0..cols {
                for t in 0..inner {
                    data[i * cols + j] += &a[i * inner + t] * &b[t * cols + j];
                }
            }
        }
        let m = RationalMatrix::new(rows, cols, data).map_err(|e| e.to_string())?;
        let kernel = kernel_basis_rational(&m);
        if kernel.len() + m.rank() != cols {
            return Err(format!(
                "matrix {k}: kernel dimension {} with rank {}",
                kernel.len(),
                m.rank()
            ));
        }
        for v in &kernel {
            let q: Vec<BigRational> = v
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            if m.mul_vec(&q).iter().any(|x| !x.is_zero()) {
                return Err(format!("matrix {k}: M v != 0"));
            }
        }
    }
    Ok(KERNEL_MATRICES)
}

fn criterion_properties(log: &[DimensionReport]) -> Outcome {
    let cert = match build_witness(3, 3, 6, SEED, &cfg()) {
        Ok(c) => c,
        Err(e) => return fail(format!("witness for mixes: {e}")),
    };
    let results = [
        (
            "a",
            property_dimension_floor(log).map(|k| format!("{k} reports h>=expected")),
        ),
        (
            "b",
            property_prime_agreement(log).map(|k| format!("{k} reports agree at both primes")),
        ),
        (
            "c",
            property_monomials().map(|k| format!("{k} monomial spaces bijective")),
        ),
        (
            "d",
            property_gram_mixes(&cert).map(|k| format!("{k} mixes keep the Gram tensor")),
        ),
        (
            "e",
            property_kernels().map(|k| format!("{k} kernels multiply back to zero")),
        ),
    ];
    let mut parts = Vec::new();
    let mut ok = true;
    for (tag, r) in results {
        match r {
            Ok(msg) => parts.push(format!("({tag}) {msg}")),
            Err(msg) => {
                ok = false;
                parts.push(format!("({tag}) FAILED {msg}"));
            }
        }
    }
    Outcome {
        ok,
        detail: parts.join("; "),
    }
}

// ---------------------------------------------------------------------------
// 8

fn criterion_asymptotic() -> Outcome {
    for n in [4, 5] {
        match cmp_theta_gap(n, 200, 20) {
            Ok(Ordering::Less) => {}
            other => return fail(format!("n={n}: gap(200) vs gap(20) = {other:?}")),
        }
    }
    pass("gap at d=200 strictly below gap at d=20 for n=4,5 (exact)")
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let mut log = Vec::new();
    let mut failed = 0;
    let mut report =
        |id: u32, name: &str, budget: Option<Duration>, run: &mut dyn FnMut() -> Outcome| {
            let start = Instant::now();
            let mut outcome = run();
            let took = start.elapsed();
            if let Some(limit) = budget {
                if took > limit {
                    outcome.ok = false;
                    outcome.detail += &format!("; took {took:.2?} > {limit:?}");
                }
            }
            let tag = if outcome.ok { "PASS" } else { "FAIL" };
            if !outcome.ok {
                failed += 1;
            }
            println!(
                "criterion {id} {tag} [{name}] ({took:.2?}): {}",
                outcome.detail
            );
        };

    report(1, "bounds table", Some(BUDGET_TABLE), &mut criterion_table);
    report(
        2,
        "Λ identity and exceptional pairs",
        Some(BUDGET_LAMBDA),
        &mut criterion_lambda,
    );
    report(
        3,
        "ternary Hilbert identity",
        Some(BUDGET_TERNARY),
        &mut || criterion_ternary(&mut log),
    );
    report(4, "dimension sweep", Some(BUDGET_SWEEP), &mut || {
        criterion_sweep(&mut log)
    });
    report(5, "typical lengths", Some(BUDGET_TYPICAL), &mut || {
        criterion_typical(&mut log)
    });
    report(6, "certified lengths", Some(BUDGET_WITNESS), &mut || {
        criterion_witness(dir.path())
    });
    let snapshot = log.clone();
    report(7, "property suites", None, &mut || {
        criterion_properties(&snapshot)
    });
    report(
        8,
        "asymptotic gap",
        Some(BUDGET_ASYMPTOTIC),
        &mut criterion_asymptotic,
    );

    if failed > 0 {
        println!("acceptance: {failed} criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all 8 criteria passed");
}
