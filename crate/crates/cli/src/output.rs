//! Human-readable tables for terminal output.

use poincare_core::{PseudometricMatrix, VerificationReport, WeightedGraph};

/// Compact float rendering for tables.
pub fn fmt_human(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    let s = if (1e-4..1e7).contains(&a) {
        format!("{v:.6}")
    } else {
        return format!("{v:.6e}");
    };
    let trimmed = s.trim_end_matches('0').trim_end_matches('.');
    trimmed.to_string()
}

/// Distance table with labels along both axes, rows in `order`.
pub fn metric_table(g: &WeightedGraph, pm: &PseudometricMatrix, order: &[usize]) -> String {
    let mut width = 6usize;
    for &i in order {
        width = width.max(g.label(i).len() + 2);
    }
    let mut cells: Vec<Vec<String>> = Vec::new();
    for &i in order {
        let mut row = Vec::new();
        for &j in order {
            let s = fmt_human(pm.get(i, j));
            width = width.max(s.len() + 2);
            row.push(s);
        }
        cells.push(row);
    }

    let mut out = String::new();
    out.push_str(&" ".repeat(width));
    for &j in order {
        out.push_str(&format!("{:>width$}", g.label(j)));
    }
    out.push('\n');
    for (r, &i) in order.iter().enumerate() {
        out.push_str(&format!("{:<width$}", g.label(i)));
        for cell in &cells[r] {
            out.push_str(&format!("{cell:>width$}"));
        }
        out.push('\n');
    }
    out
}

pub fn report_lines(report: &VerificationReport, verbose: bool) -> String {
    let mut out = String::new();
    let tag = if report.pass { "PASS" } else { "FAIL" };
    out.push_str(&format!(
        "[{tag}] {}: lhs = {}, rhs = {}, residual = {:.3e} (tol {:.0e})\n",
        report.theorem,
        fmt_human(report.lhs),
        fmt_human(report.rhs),
        report.residual,
        report.tolerance,
    ));
    if verbose {
        for note in &report.notes {
            out.push_str(&format!("       {note}\n"));
        }
    }
    out
}
