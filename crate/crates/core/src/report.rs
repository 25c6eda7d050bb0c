//! JSON and markdown rendering of complexity reports.

use crate::complexity::ComplexityReport;
use crate::error::Result;

fn mark(flag: bool) -> &'static str {
    if flag {
        "✓"
    } else {
        "✗"
    }
}

pub fn to_json(reports: &[ComplexityReport]) -> Result<String> {
    Ok(serde_json::to_string_pretty(reports)?)
}

/// One row per function, columns laid out like the ranking-attributes table
/// with the category and verdict appended.
pub fn ranking_markdown(reports: &[ComplexityReport]) -> String {
    let mut out = String::from(
        "| Function | Rank 1 | Rank 2 | Rank 3 | Rank 4 | Category | Description bits | Mapping bits | Table bits | Verdict |\n\
         |---|---|---|---|---|---|---|---|---|---|\n",
    );
    for r in reports {
        let [r1, r2, r3, r4] = r.profile.flags();
        let s = &r.ledgers.size;
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
            r.function_id,
            mark(r1),
            mark(r2),
            mark(r3),
            mark(r4),
            r.category,
            s.description_bits,
            s.mapping_bits,
            s.table_bits,
            r.verdict
        ));
    }
    out
}
