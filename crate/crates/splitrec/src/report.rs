//! JSON and text renderings of evaluations and verification reports.

use serde::Serialize;
use splitrec_core::rat;
use splitrec_core::verify::{Bundle, TargetRecurrence, VerificationReport};
use splitrec_core::IdempotentTarget;

use crate::artifact::{target_record, TargetRecord};

/// `a_p mod p` for one recurrence at one prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cell {
    /// Good prime: the value is guaranteed to be the indicator.
    Value(u64),
    /// The prime divides a discriminant but no denominator; the residue exists, with no guarantee.
    Unverified(u64),
    /// The prime divides a denominator; there is no residue.
    Denominator,
}

impl Cell {
    pub fn status(&self) -> &'static str {
        match self {
            Cell::Value(_) => "ok",
            Cell::Unverified(_) => "unverified",
            Cell::Denominator => "denominator",
        }
    }

    pub fn value(&self) -> Option<u64> {
        match self {
            Cell::Value(v) | Cell::Unverified(v) => Some(*v),
            Cell::Denominator => None,
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Value(v) => v.to_string(),
            Cell::Unverified(v) => format!("{v}*"),
            Cell::Denominator => "bad".into(),
        }
    }
}

pub fn cell(bundle: &Bundle, t: &TargetRecurrence, p: u64) -> Cell {
    let rec = &t.recurrence;
    if rec.is_denominator_prime(p) {
        return Cell::Denominator;
    }
    let value = rec.residue(p).expect("p is prime and divides no denominator");
    if rec.is_bad(p) || bundle.field_bad(p) {
        Cell::Unverified(value)
    } else {
        Cell::Value(value)
    }
}

#[derive(Serialize)]
struct EvalValue {
    target: TargetRecord,
    value: Option<u64>,
    status: &'static str,
}

#[derive(Serialize)]
struct EvalRow {
    prime: u64,
    values: Vec<EvalValue>,
}

fn eval_row(bundle: &Bundle, p: u64) -> EvalRow {
    let values = bundle
        .recurrences()
        .iter()
        .map(|t| {
            let c = cell(bundle, t, p);
            EvalValue { target: target_record(&t.target), value: c.value(), status: c.status() }
        })
        .collect();
    EvalRow { prime: p, values }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}

pub fn eval_prime_json(bundle: &Bundle, p: u64) -> String {
    pretty(&eval_row(bundle, p))
}

pub fn eval_range_json(bundle: &Bundle, lo: u64, hi: u64, primes: &[u64]) -> String {
    #[derive(Serialize)]
    struct Rows {
        range: [u64; 2],
        rows: Vec<EvalRow>,
    }
    pretty(&Rows { range: [lo, hi], rows: primes.iter().map(|&p| eval_row(bundle, p)).collect() })
}

#[derive(Serialize)]
struct MismatchOut {
    prime: u64,
    target: TargetRecord,
    predicted: u64,
    actual: u64,
}

#[derive(Serialize)]
struct ClassFrequency {
    representative: usize,
    size: usize,
    count: u64,
    expected_density: String,
}

#[derive(Serialize)]
struct ReportOut {
    range: [u64; 2],
    status: &'static str,
    primes_tested: u64,
    skipped_bad: Vec<u64>,
    mismatches: Vec<MismatchOut>,
    class_frequencies: Vec<ClassFrequency>,
    density_within_three_sigma: Option<Vec<bool>>,
}

/// Deterministic JSON form; timing is reported separately.
pub fn report_json(bundle: &Bundle, r: &VerificationReport) -> String {
    let out = ReportOut {
        range: [r.p_min, r.p_max],
        status: if r.passed() { "PASS" } else { "FAIL" },
        primes_tested: r.primes_tested,
        skipped_bad: r.skipped_bad.clone(),
        mismatches: r
            .mismatches
            .iter()
            .map(|m| MismatchOut {
                prime: m.prime,
                target: target_record(&bundle.recurrences()[m.recurrence].target),
                predicted: m.predicted,
                actual: m.actual,
            })
            .collect(),
        class_frequencies: bundle
            .group()
            .classes()
            .iter()
            .zip(r.class_frequencies())
            .map(|(c, (count, q))| ClassFrequency {
                representative: c.representative,
                size: c.size(),
                count,
                expected_density: rat::to_string(&q),
            })
            .collect(),
        density_within_three_sigma: r.density_within_three_sigma(),
    };
    pretty(&out)
}

/// One-line human summary.
pub fn report_summary(r: &VerificationReport) -> String {
    let ms = r.elapsed.map(|d| d.as_millis()).unwrap_or(0);
    format!(
        "{}: {} primes tested in [{}, {}], {} skipped, {} mismatches, {} ms",
        if r.passed() { "PASS" } else { "FAIL" },
        r.primes_tested,
        r.p_min,
        r.p_max,
        r.skipped_bad.len(),
        r.mismatches.len(),
        ms
    )
}

pub(crate) fn header(t: &TargetRecurrence) -> String {
    match &t.target {
        IdempotentTarget::Class(i) => format!("class {i}"),
        IdempotentTarget::Subset(s) => {
            format!("subset {{{}}}", s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
        }
    }
}

/// Rows of `p | a_p mod p`, one column per recurrence.
pub fn table_text(bundle: &Bundle, primes: &[u64]) -> String {
    let mut rows: Vec<Vec<String>> = vec![core::iter::once("p".to_string())
        .chain(bundle.recurrences().iter().map(|t| format!("a_p mod p ({})", header(t))))
        .collect()];
    for &p in primes {
        rows.push(
            core::iter::once(p.to_string())
                .chain(bundle.recurrences().iter().map(|t| cell(bundle, t, p).text()))
                .collect(),
        );
    }
    let widths: Vec<usize> =
        (0..rows[0].len()).map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        out.push_str(cells.join(" | ").trim_end());
        out.push('\n');
        if i == 0 {
            let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
            out.push_str(&rule.join("-+-"));
            out.push('\n');
        }
    }
    out.push_str("* prime divides a discriminant: residue shown without guarantee\n");
    out.push_str("bad: prime divides a denominator\n");
    out
}
