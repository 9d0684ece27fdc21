//! Text and JSON rendering of tables, B_pi analyses and run reports.

use std::fmt::Write;

use bpilab::theorems::{RunReport, Status, VerificationReport};
use bpilab::{CharacterTable, PrimeSet, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn mark(r: &VerificationReport) -> &'static str {
    match r.status {
        Status::Pass => "✓",
        Status::Skipped if r.equivalence_holds => "✓ (partial)",
        Status::Error => "✗ error",
        _ => "✗",
    }
}

fn pi_label(pi: &[u64]) -> String {
    let inner: Vec<String> = pi.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn witnesses(r: &VerificationReport) -> String {
    let mut out = Vec::new();
    for (tag, side) in [("lhs", &r.lhs), ("rhs", &r.rhs)] {
        if let Some(w) = &side.witness {
            out.push(format!("{tag}: {w}"));
        }
    }
    for part in &r.parts {
        if part.status != Status::Pass {
            out.push(format!("{}: {}", part.label, part.detail));
        }
    }
    out.join("; ")
}

/// Aligned table of checks in text mode, the report document in json mode.
pub fn render_report(report: &RunReport, format: Format) -> Result<String> {
    if format == Format::Json {
        return Ok(bpilab::corpus::save_report(report)? + "\n");
    }
    let header = ["check", "group", "pi", "p", "lhs", "rhs", "result"];
    let rows: Vec<[String; 7]> = report
        .results
        .iter()
        .map(|r| {
            [
                r.check.as_str().to_string(),
                r.group.clone(),
                pi_label(&r.pi),
                r.p.map(|p| p.to_string()).unwrap_or_else(|| "-".into()),
                yes_no(r.lhs.holds).to_string(),
                yes_no(r.rhs.holds).to_string(),
                mark(r).to_string(),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[&str]| -> String {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = String::new();
    writeln!(out, "{}", line(&header)).unwrap();
    for (row, r) in rows.iter().zip(&report.results) {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        let mut l = line(&cells);
        if r.is_failure() || r.status == Status::Skipped {
            let w = witnesses(r);
            if !w.is_empty() {
                write!(l, "  [{w}]").unwrap();
            }
        }
        writeln!(out, "{l}").unwrap();
    }
    for rej in &report.run.rejected {
        writeln!(out, "rejected {} {}: {}", rej.group, pi_label(&rej.pi), rej.reason).unwrap();
    }
    if !report.results.is_empty() || !report.run.rejected.is_empty() {
        let s = &report.run;
        writeln!(
            out,
            "pass {}, fail {}, skipped {}, errors {}, rejected {}",
            s.pass,
            s.fail,
            s.skipped,
            s.errors,
            s.rejected.len()
        )
        .unwrap();
    }
    Ok(out)
}

pub fn render_table(name: &str, t: &CharacterTable, format: Format) -> Result<String> {
    if format == Format::Json {
        return Ok(bpilab::corpus::save_table(t)? + "\n");
    }
    let classes = t.classes();
    let mut out = String::new();
    writeln!(out, "{name}: order {}, {} classes", t.order(), t.num_classes()).unwrap();
    let head: Vec<String> = (0..t.num_classes())
        .map(|c| format!("{}{}", classes.rep_orders()[c], class_letter(c)))
        .collect();
    let cells: Vec<Vec<String>> = t.rows().iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
    let mut widths: Vec<usize> = head.iter().map(|h| h.len()).collect();
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let fmt_row = |label: &str, row: &[String]| -> String {
        let body: Vec<String> = row.iter().zip(&widths).map(|(c, &w)| format!("{c:>w$}")).collect();
        format!("{label:<8}{}", body.join(" "))
    };
    writeln!(out, "{}", fmt_row("", &head)).unwrap();
    let sizes: Vec<String> = classes.sizes().iter().map(|s| s.to_string()).collect();
    writeln!(out, "{}", fmt_row("size", &sizes)).unwrap();
    for (i, row) in cells.iter().enumerate() {
        writeln!(out, "{}", fmt_row(&format!("X.{}", i + 1), row)).unwrap();
    }
    Ok(out)
}

/// `a, b, ..., z, aa, ab, ...` for class labels.
fn class_letter(c: usize) -> String {
    let letters = b"abcdefghijklmnopqrstuvwxyz";
    if c < 26 {
        (letters[c] as char).to_string()
    } else {
        format!("{}{}", class_letter(c / 26 - 1), letters[c % 26] as char)
    }
}

/// Summary of `B_pi(G)` as text lines or a small JSON object.
pub fn render_bpi(name: &str, pi: &PrimeSet, rows: &[usize], degrees: &[u64], pi_classes: usize, format: Format) -> String {
    let degree_set: std::collections::BTreeSet<u64> = rows.iter().map(|&i| degrees[i]).collect();
    if format == Format::Json {
        let doc = serde_json::json!({
            "group": name,
            "pi": pi.iter().collect::<Vec<_>>(),
            "rows": rows,
            "degrees": rows.iter().map(|&i| degrees[i]).collect::<Vec<_>>(),
            "degree_set": degree_set,
            "pi_element_classes": pi_classes,
        });
        return serde_json::to_string_pretty(&doc).expect("json value serializes") + "\n";
    }
    let set: Vec<String> = degree_set.iter().map(|d| d.to_string()).collect();
    let mut out = String::new();
    writeln!(out, "B_{pi}({name}): {} characters, {pi_classes} classes of {pi}-elements", rows.len()).unwrap();
    writeln!(out, "degrees {{{}}}", set.join(", ")).unwrap();
    for &i in rows {
        writeln!(out, "  X.{} degree {}", i + 1, degrees[i]).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use bpilab::theorems::{CheckName, Side};

    fn failing() -> VerificationReport {
        VerificationReport {
            check: CheckName::ItoMichler,
            group: "G".into(),
            pi: vec![2],
            p: Some(3),
            lhs: Side { statement: "a".into(), holds: true, witness: None },
            rhs: Side { statement: "b".into(), holds: false, witness: Some("irr[4] of degree 3".into()) },
            equivalence_holds: false,
            status: Status::Fail,
            parts: Vec::new(),
            elapsed_ms: None,
        }
    }

    #[test]
    fn empty_report_is_header_only() {
        let r = RunReport::from_results(Vec::new(), Vec::new(), 0);
        let text = render_report(&r, Format::Text).unwrap();
        assert_eq!(text.lines().count(), 1);
        assert!(text.starts_with("check"));
    }

    #[test]
    fn failing_line_names_witness_degree() {
        let r = RunReport::from_results(vec![failing()], Vec::new(), 1);
        let text = render_report(&r, Format::Text).unwrap();
        let line = text.lines().nth(1).unwrap();
        assert!(line.contains('✗') && line.contains("degree 3"), "{line}");
    }

    #[test]
    fn json_round_trips_through_loader() {
        let r = RunReport::from_results(vec![failing()], Vec::new(), 1);
        let doc = render_report(&r, Format::Json).unwrap();
        assert_eq!(bpilab::corpus::load_report(&doc).unwrap(), r);
    }

    #[test]
    fn class_letters() {
        assert_eq!(class_letter(0), "a");
        assert_eq!(class_letter(25), "z");
        assert_eq!(class_letter(26), "aa");
    }
}
