//! Report rendering: deterministic JSON (no timestamps), CSV, and an
//! aligned human-readable table.

use crate::cases::VerificationCase;
use anyhow::Result;

pub fn render_json(cases: &[VerificationCase]) -> Result<String> {
    Ok(serde_json::to_string_pretty(cases)?)
}

fn csv_quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn render_csv(cases: &[VerificationCase]) -> String {
    let mut out = String::from("case,quantity,expected,got,tol,provenance,pass\n");
    for case in cases {
        for q in &case.quantities {
            out.push_str(&format!(
                "{},{},{:.12e},{:.12e},{:.1e},{},{}\n",
                csv_quote(&case.case),
                csv_quote(&q.name),
                q.expected,
                q.got,
                q.tol,
                csv_quote(&q.provenance),
                q.pass
            ));
        }
    }
    out
}

pub fn render_table(cases: &[VerificationCase]) -> String {
    let mut out = String::new();
    for case in cases {
        out.push_str(&format!(
            "case {:<18} {}\n",
            case.case,
            if case.pass { "PASS" } else { "FAIL" }
        ));
        for q in &case.quantities {
            out.push_str(&format!(
                "  {:<32} expected {:>18.12} got {:>18.12} tol {:>8.1e}  {}\n",
                q.name,
                q.expected,
                q.got,
                q.tol,
                if q.pass { "ok" } else { "FAIL" }
            ));
        }
    }
    let total = cases.len();
    let passed = cases.iter().filter(|c| c.pass).count();
    out.push_str(&format!("{passed}/{total} cases passed\n"));
    out
}
