use std::fmt::Write as _;

use super::comprehensive::ComprehensiveReport;
use super::label::QualityLabel;
use super::number::round_half_up;

const STYLE: &str = "body{font-family:Helvetica,Arial,sans-serif;margin:2em;color:#111}\
table{border-collapse:collapse;margin:1em 0}\
th,td{border:1px solid #999;padding:4px 8px;text-align:right}\
th:first-child,td:first-child{text-align:left}\
.dq-label{border:3px solid #000;padding:0.5em 1em;display:inline-block}\
.dq-label h1{margin:0;font-size:1.6em;border-bottom:6px solid #000}\
.dq-total td{font-weight:bold;font-size:1.2em;border-top:3px solid #000}\
.dq-na{color:#888}\
.dq-missing{background:#b6e3b6}\
.dq-duplicate{background:#f5e97a}\
.dq-missing.dq-duplicate{background:linear-gradient(90deg,#b6e3b6,#f5e97a)}";

pub(crate) fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            _ => out.push(c),
        }
    }
    out
}

fn page(title: &str, body: &str) -> String {
    format!(
        "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>{}</title>\n<style>{STYLE}</style>\n</head>\n<body>\n{body}</body>\n</html>\n",
        escape(title)
    )
}

fn label_table(label: &QualityLabel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "<div class=\"dq-label\">\n<h1>Data Quality Label</h1>");
    let _ = writeln!(
        out,
        "<table>\n<tr><th>Ingredient</th><th>Weight %</th><th>Score</th><th>Contribution</th></tr>"
    );
    for e in &label.entries {
        let class = if e.assessed { "" } else { " class=\"dq-na\"" };
        let score = e.score.map_or_else(|| "n/a".to_string(), |s| round_half_up(s, 2));
        let contribution = e.contribution.map_or_else(|| "-".to_string(), |c| round_half_up(c, 2));
        let _ = writeln!(
            out,
            "<tr{class}><td>{}</td><td>{}</td><td>{score}</td><td>{contribution}</td></tr>",
            escape(e.ingredient.label()),
            round_half_up(e.weight, 2)
        );
    }
    let _ = writeln!(
        out,
        "<tr class=\"dq-total\"><td>DQ Score</td><td colspan=\"3\">{}</td></tr>\n</table>",
        round_half_up(label.total, 2)
    );
    if label.renormalized {
        let _ = writeln!(out, "<p>Weights renormalized over the assessed ingredients.</p>");
    }
    let _ = writeln!(out, "<p><small>{}</small></p>\n</div>", escape(&label.version));
    out
}

pub(crate) fn label_page(label: &QualityLabel) -> String {
    page("Data Quality Label", &label_table(label))
}

fn list_section(out: &mut String, title: &str, items: Vec<String>) {
    let _ = writeln!(out, "<h2>{}</h2>", escape(title));
    if items.is_empty() {
        let _ = writeln!(out, "<p>None.</p>");
        return;
    }
    let _ = writeln!(out, "<ul>");
    for item in items {
        let _ = writeln!(out, "<li>{}</li>", escape(&item));
    }
    let _ = writeln!(out, "</ul>");
}

pub(crate) fn report_page(report: &ComprehensiveReport) -> String {
    let mut body = String::new();
    let _ = writeln!(
        body,
        "<p>Dataset <strong>{}</strong>: {} rows, {} columns.</p>",
        escape(&report.dataset),
        report.row_count,
        report.column_count
    );
    body.push_str(&label_table(&report.label));

    list_section(&mut body, "Suggestions", report.suggestions.clone());
    list_section(
        &mut body,
        "Not assessed",
        report
            .not_assessed
            .iter()
            .map(|n| format!("{}: {}", n.ingredient.label(), n.reason))
            .collect(),
    );
    list_section(
        &mut body,
        "Correlated pairs",
        report
            .correlated_pairs
            .iter()
            .map(|p| format!("{} ~ {}: r = {}", p.left, p.right, round_half_up(p.r, 3)))
            .collect(),
    );
    list_section(
        &mut body,
        "Low metadata coupling",
        report
            .low_coupling_columns
            .iter()
            .map(|c| format!("{}: {}", c.column, round_half_up(c.coupling, 2)))
            .collect(),
    );
    list_section(
        &mut body,
        "Skewed columns",
        report
            .skewed_columns
            .iter()
            .map(|c| format!("{}: g1 = {}", c.column, round_half_up(c.g1, 3)))
            .collect(),
    );
    list_section(
        &mut body,
        "Type mismatches",
        report
            .type_mismatches
            .iter()
            .map(|c| format!("{} ({}): {} cells", c.column, c.declared_type, c.mismatched_rows.len()))
            .collect(),
    );
    list_section(
        &mut body,
        "Inconsistent categorical columns",
        report
            .inconsistent_columns
            .iter()
            .map(|c| format!("{}: declared {}", c.column, c.declared_type))
            .collect(),
    );
    list_section(
        &mut body,
        "Characteristics mismatches",
        report
            .characteristics_mismatches
            .iter()
            .map(|m| {
                format!(
                    "{} {:?}: reference {}",
                    m.column,
                    m.parameter,
                    round_half_up(m.reference, 2)
                )
            })
            .collect(),
    );
    if let Some(p) = &report.provenance {
        list_section(
            &mut body,
            "Provenance",
            vec![
                format!("origin {}", round_half_up(p.origin, 2)),
                format!("author {}", round_half_up(p.author, 2)),
                format!(
                    "recency {} ({} years since update)",
                    round_half_up(p.recency, 2),
                    round_half_up(p.years_since_update, 2)
                ),
                format!("accessibility {}", round_half_up(p.accessibility, 2)),
            ],
        );
    }

    let _ = writeln!(body, "<h2>Flagged rows</h2>");
    if report.flagged_rows.is_empty() {
        let _ = writeln!(body, "<p>None.</p>");
    } else {
        let _ = writeln!(
            body,
            "<p>Rows with missing cells are green; duplicate rows are yellow.</p>\n<table>"
        );
        let _ = write!(body, "<tr><th>row</th>");
        for c in &report.columns {
            let _ = write!(body, "<th>{}</th>", escape(c));
        }
        let _ = writeln!(body, "</tr>");
        for row in &report.flagged_rows {
            let mut classes = Vec::new();
            if row.missing {
                classes.push("dq-missing");
            }
            if row.duplicate_of.is_some() {
                classes.push("dq-duplicate");
            }
            let _ = write!(body, "<tr class=\"{}\"><td>{}</td>", classes.join(" "), row.row);
            for cell in &row.cells {
                let _ = write!(body, "<td>{}</td>", escape(cell));
            }
            let _ = writeln!(body, "</tr>");
        }
        let _ = writeln!(body, "</table>");
        if report.flagged_rows_omitted > 0 {
            let _ = writeln!(
                body,
                "<p>{} more flagged rows not shown.</p>",
                report.flagged_rows_omitted
            );
        }
    }
    page(&format!("Data Quality Report: {}", report.dataset), &body)
}
