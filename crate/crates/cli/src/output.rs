//! Serializers for histograms, census reports, and parameter lists, plus
//! the file-or-stdout sink shared by every emitting command.
//!
//! CSV histograms are always `period,count` with rows ascending by period
//! and LF line endings, so equal reports produce byte-identical files.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use iprng_core::analyzer::PeriodHistogram;
use iprng_core::census::Mismatch;
use iprng_core::iprng::GeneratorParams;
use serde_json::{json, Value};

/// Identifies what a JSON report describes.
pub struct ReportMeta<'a> {
    pub p: u64,
    pub e: u32,
    pub case: &'a str,
    pub engine: &'a str,
}

/// Counts that fit in a u64 stay JSON numbers; anything larger is emitted
/// as a string so no consumer silently rounds it.
fn count_value(count: u128) -> Value {
    match u64::try_from(count) {
        Ok(small) => Value::from(small),
        Err(_) => Value::from(count.to_string()),
    }
}

pub fn histogram_csv(histogram: &PeriodHistogram) -> String {
    let mut text = String::from("period,count\n");
    for (period, count) in histogram.iter() {
        text.push_str(&format!("{period},{count}\n"));
    }
    text
}

pub fn params_csv(params: &[GeneratorParams]) -> String {
    let mut text = String::from("a,b,x0\n");
    for params in params {
        text.push_str(&format!("{},{},{}\n", params.a, params.b, params.x0));
    }
    text
}

pub fn report_json(
    meta: &ReportMeta<'_>,
    histogram: &PeriodHistogram,
    mismatches: &[Mismatch],
    warnings: &[String],
) -> String {
    let rows: Vec<Value> = histogram
        .iter()
        .map(|(period, count)| json!({ "period": period, "count": count_value(count) }))
        .collect();
    let misses: Vec<Value> = mismatches
        .iter()
        .map(|m| {
            json!({
                "a": m.a,
                "b": m.b,
                "x0": m.x0,
                "oracle": m.oracle,
                "predicted": m.predicted,
            })
        })
        .collect();
    let document = json!({
        "p": meta.p,
        "e": meta.e,
        "case": meta.case,
        "engine": meta.engine,
        "total": count_value(histogram.total()),
        "histogram": rows,
        "mismatches": misses,
        "warnings": warnings,
    });
    let mut text = serde_json::to_string_pretty(&document).expect("histogram rows serialize");
    text.push('\n');
    text
}

pub fn search_json(p: u64, e: u32, period: u64, params: &[GeneratorParams]) -> String {
    let triples: Vec<Value> = params
        .iter()
        .map(|q| json!({ "a": q.a, "b": q.b, "x0": q.x0 }))
        .collect();
    let document = json!({
        "p": p,
        "e": e,
        "period": period,
        "count": triples.len(),
        "params": triples,
    });
    let mut text = serde_json::to_string_pretty(&document).expect("triples serialize");
    text.push('\n');
    text
}

/// Writes `text` to the given path, or to standard output when none is set.
pub fn emit(text: &str, out: Option<&Path>) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Inverse of [`histogram_csv`], used to pin down the round-trip.
    fn parse_histogram_csv(text: &str) -> PeriodHistogram {
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("period,count"));
        lines
            .map(|line| {
                let (period, count) = line.split_once(',').expect("two columns");
                (period.parse().unwrap(), count.parse().unwrap())
            })
            .collect()
    }

    #[test]
    fn histogram_csv_is_sorted_with_header() {
        let histogram: PeriodHistogram =
            [(50u64, 150_000u128), (1, 65_000), (10, 70_000), (2, 27_500)]
                .into_iter()
                .collect();
        assert_eq!(
            histogram_csv(&histogram),
            "period,count\n1,65000\n2,27500\n10,70000\n50,150000\n"
        );
    }

    #[test]
    fn params_csv_lists_triples_in_order() {
        let params = [
            GeneratorParams { a: 1, b: 1, x0: 0 },
            GeneratorParams { a: 1, b: 1, x0: 1 },
        ];
        assert_eq!(params_csv(&params), "a,b,x0\n1,1,0\n1,1,1\n");
    }

    #[test]
    fn oversized_counts_become_json_strings() {
        assert_eq!(count_value(7), Value::from(7u64));
        assert_eq!(count_value(u64::MAX as u128), Value::from(u64::MAX));
        let big = u64::MAX as u128 + 1;
        assert_eq!(count_value(big), Value::from(big.to_string()));
    }

    #[test]
    fn report_json_carries_all_sections() {
        let histogram: PeriodHistogram = [(1u64, 3u128), (4, 2)].into_iter().collect();
        let mismatches = [Mismatch { a: 1, b: 2, x0: 3, oracle: 4, predicted: 5 }];
        let warnings = ["look closer".to_string()];
        let meta = ReportMeta { p: 5, e: 2, case: "units", engine: "both" };
        let text = report_json(&meta, &histogram, &mismatches, &warnings);
        let doc: Value = serde_json::from_str(&text).unwrap();

        assert_eq!(doc["p"], 5);
        assert_eq!(doc["e"], 2);
        assert_eq!(doc["case"], "units");
        assert_eq!(doc["engine"], "both");
        assert_eq!(doc["total"], 5);
        assert_eq!(doc["histogram"][0], json!({ "period": 1, "count": 3 }));
        assert_eq!(doc["histogram"][1], json!({ "period": 4, "count": 2 }));
        assert_eq!(
            doc["mismatches"][0],
            json!({ "a": 1, "b": 2, "x0": 3, "oracle": 4, "predicted": 5 })
        );
        assert_eq!(doc["warnings"], json!(["look closer"]));
    }

    proptest! {
        #[test]
        fn csv_round_trips_exactly(
            rows in proptest::collection::btree_map(1u64..1 << 40, 1u128..1 << 90, 0..20)
        ) {
            let histogram: PeriodHistogram = rows.into_iter().collect();
            let parsed = parse_histogram_csv(&histogram_csv(&histogram));
            prop_assert_eq!(parsed, histogram);
        }
    }
}
