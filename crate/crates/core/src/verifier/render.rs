//! Markdown rendering of a verification report, one table per case.

use std::fmt::Write;

use super::{Verdict, VerificationReport};
use crate::catalog::claims_for;

fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::Confirmed => "confirmed",
        Verdict::Refuted => "**refuted**",
        Verdict::ConflictingResolved => "conflicting, resolved",
        Verdict::NotApplicable => "n/a",
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|")
}

pub fn render_markdown(report: &VerificationReport) -> String {
    let mut out = String::new();
    let s = &report.summary;
    let _ = writeln!(
        out,
        "# Claim verification (seed {}, {} mode)\n",
        report.meta.seed, report.meta.mode
    );
    let _ = writeln!(
        out,
        "{} cells: {} confirmed, {} refuted ({} asserted), {} conflicting resolved, {} not applicable.\n",
        s.cells, s.confirmed, s.refuted, s.refuted_asserted, s.conflicting_resolved, s.not_applicable
    );
    for &case in &report.meta.cases {
        let _ = writeln!(out, "## Case ({case})\n");
        let _ = writeln!(
            out,
            "| Claim | Kind | Statement | Cell | Parameters | Verdict | Computed |"
        );
        let _ = writeln!(out, "|---|---|---|---|---|---|---|");
        let claims = claims_for(case).unwrap_or(&[]);
        for o in report.outcomes.iter().filter(|o| o.case == case) {
            let statement = claims
                .iter()
                .find(|c| c.id == o.claim)
                .map(|c| c.statement())
                .unwrap_or_default();
            let mut verdict = verdict_label(o.verdict).to_string();
            if !o.matched.is_empty() {
                verdict.push_str(&format!(" ({})", o.matched.join(", ")));
            }
            let mut computed = o.computed.clone();
            if let Some(d) = &o.detail {
                computed.push_str(&format!("; {d}"));
            }
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | {} |",
                o.claim,
                o.kind.name(),
                cell(&statement),
                o.cell,
                cell(&o.params.to_string()),
                verdict,
                cell(&computed)
            );
        }
        out.push('\n');
    }
    out
}
