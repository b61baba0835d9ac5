//! Text rendering for ranked-library tables and run summaries.

use std::io::Write;

use boardport_core::recommender::RankedList;

pub fn write_ranked_table(out: &mut dyn Write, list: &RankedList) -> std::io::Result<()> {
    writeln!(out, "Component: {}", list.component)?;
    writeln!(
        out,
        "  {:>2}  {:<24} {:>9} {:>8} {:>9}",
        "#", "library", "tfidf", "history", "combined"
    )?;
    for (i, entry) in list.entries.iter().enumerate() {
        writeln!(
            out,
            "  {:>2}  {:<24} {:>9.4} {:>8} {:>9.4}",
            i + 1,
            entry.library,
            entry.tfidf,
            entry.history,
            entry.combined
        )?;
    }
    Ok(())
}
