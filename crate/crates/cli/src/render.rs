//! Text, CSV and JSON renderings of results.
//!
//! JSON output is one record per line with keys in sorted order.
//!
//! CSV columns:
//! - bounds: `n,d,n_d,s_min,theta,lambda_ceil,big_lambda_floor,leep_l,upper_best,upper_source`
//! - reports: `quantity,n,d,size,computed,expected,status,seed,primes,per_prime,trials,note`
//!   (list cells are `;`-separated)

use std::fmt::Write;

use pythagoras_core::bounds::{render_paper_layout, BoundsRow, UpperSource};
use pythagoras_core::generic::{DimensionReport, TypicalLengthResult};
use pythagoras_core::witness::LengthCertificate;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// One sorted-key JSON object per line.
pub fn json_lines<T: Serialize>(items: &[T]) -> String {
    let mut out = String::new();
    for item in items {
        let value = serde_json::to_value(item).expect("records serialize");
        out.push_str(&value.to_string());
        out.push('\n');
    }
    out
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(";")
}

fn source_name(s: UpperSource) -> &'static str {
    match s {
        UpperSource::LeepL => "L",
        UpperSource::LambdaFloor => "floor(Λ)",
    }
}

pub fn bounds(rows: &[BoundsRow], format: Format, paper_layout: bool) -> String {
    match format {
        Format::Json => json_lines(rows),
        Format::Csv => {
            let mut out = String::from(
                "n,d,n_d,s_min,theta,lambda_ceil,big_lambda_floor,leep_l,upper_best,upper_source\n",
            );
            for r in rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.params.n,
                    r.params.d,
                    r.n_d,
                    r.s_min,
                    r.theta,
                    r.lambda_ceil,
                    r.big_lambda_floor,
                    r.leep_l,
                    r.upper_best,
                    source_name(r.upper_source)
                );
            }
            out
        }
        Format::Table if paper_layout => render_paper_layout(rows),
        Format::Table => {
            let mut out = String::new();
            for r in rows {
                let (n, d) = (r.params.n, r.params.d);
                let _ = writeln!(
                    out,
                    "p({n},{}): lower {} upper {} [{}]  s_min={} λ={} Λ={}",
                    2 * d,
                    r.theta,
                    r.upper_best,
                    source_name(r.upper_source),
                    r.s_min,
                    r.lambda,
                    r.big_lambda
                );
            }
            out
        }
    }
}

pub fn report_line(r: &DimensionReport) -> String {
    let expected = r
        .expected
        .map_or_else(|| "-".to_string(), |e| e.to_string());
    let mut line = format!(
        "{:?} n={} d={} size={}: {} computed={} expected={} primes=[{}] per_prime=[{}] seed={}",
        r.quantity,
        r.n,
        r.d,
        r.size,
        r.status,
        r.computed,
        expected,
        join(&r.primes),
        join(&r.per_prime),
        r.seed
    );
    if let Some(note) = &r.note {
        let _ = write!(line, "; {note}");
    }
    line
}

pub fn reports(rs: &[DimensionReport], format: Format) -> String {
    match format {
        Format::Json => json_lines(rs),
        Format::Csv => {
            let mut out = String::from(
                "quantity,n,d,size,computed,expected,status,seed,primes,per_prime,trials,note\n",
            );
            for r in rs {
                let _ = writeln!(
                    out,
                    "{:?},{},{},{},{},{},{},{},{},{},{},{}",
                    r.quantity,
                    r.n,
                    r.d,
                    r.size,
                    r.computed,
                    r.expected.map(|e| e.to_string()).unwrap_or_default(),
                    r.status,
                    r.seed,
                    join(&r.primes),
                    join(&r.per_prime),
                    r.trials,
                    r.note.as_deref().unwrap_or("").replace(',', ";")
                );
            }
            out
        }
        Format::Table => rs.iter().map(|r| report_line(r) + "\n").collect(),
    }
}

pub fn typical(t: &TypicalLengthResult, format: Format) -> String {
    match format {
        Format::Json => json_lines(std::slice::from_ref(t)),
        Format::Csv => {
            let mut out = String::from("n,d,r_found,certified_lower,fos_cap,status\n");
            let _ = writeln!(
                out,
                "{},{},{},{},{},{:?}",
                t.n,
                t.d,
                t.r_found.map(|r| r.to_string()).unwrap_or_default(),
                t.certified_lower,
                t.fos_cap,
                t.status
            );
            out
        }
        Format::Table => {
            let found = t
                .r_found
                .map_or_else(|| "none".to_string(), |r| r.to_string());
            let mut out = format!(
                "t({},{}): r_found={} certified_lower={} cap={} status={:?}\n",
                t.n,
                2 * t.d,
                found,
                t.certified_lower,
                t.fos_cap,
                t.status
            );
            for r in &t.reports {
                let _ = writeln!(out, "  {}", report_line(r));
            }
            out
        }
    }
}

pub fn certificate_summary(c: &LengthCertificate, path: &str, format: Format) -> String {
    #[derive(Serialize)]
    struct Summary<'a> {
        n: u32,
        d: u32,
        s: usize,
        length: usize,
        injectivity_rank: usize,
        primes: &'a [u64],
        file: &'a str,
    }
    let summary = Summary {
        n: c.n,
        d: c.d,
        s: c.s,
        length: c.length,
        injectivity_rank: c.injectivity_rank,
        primes: &c.primes,
        file: path,
    };
    match format {
        Format::Json => json_lines(&[summary]),
        Format::Csv => format!(
            "n,d,s,length,injectivity_rank,primes,file\n{},{},{},{},{},{},{}\n",
            c.n,
            c.d,
            c.s,
            c.length,
            c.injectivity_rank,
            join(&c.primes),
            path
        ),
        Format::Table => format!(
            "certified length {} for n={} d={} s={} (product rank {} mod [{}]) -> {}\n",
            c.length,
            c.n,
            c.d,
            c.s,
            c.injectivity_rank,
            join(&c.primes),
            path
        ),
    }
}
