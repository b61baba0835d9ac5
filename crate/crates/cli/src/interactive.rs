//! Interactive library selection: one ranked list per component, a numbered
//! choice or a free-form library name, then a final confirmation.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use boardport_core::recommender::{LibraryIndex, RankedList};

use crate::errors::CliError;
use crate::render::write_ranked_table;

/// Runs the prompt loop. Aborting (end of input, or declining the final
/// confirmation) is a selection error; nothing must be written afterwards.
pub fn interactive_select(
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    ranked: &[RankedList],
    index: &LibraryIndex,
) -> Result<BTreeMap<String, String>, CliError> {
    let mut selections = BTreeMap::new();
    for list in ranked {
        write_ranked_table(out, list).map_err(io_err)?;
        let chosen = loop {
            write!(
                out,
                "Select a library for \"{}\" [1-{} or library name]: ",
                list.component,
                list.entries.len()
            )
            .map_err(io_err)?;
            out.flush().map_err(io_err)?;
            let line = read_line(input)?;
            let trimmed = line.trim();
            if let Ok(choice) = trimmed.parse::<usize>() {
                if (1..=list.entries.len()).contains(&choice) {
                    break list.entries[choice - 1].library.clone();
                }
                writeln!(out, "choice out of range").map_err(io_err)?;
                continue;
            }
            if index.contains_library(trimmed) {
                break trimmed.to_string();
            }
            writeln!(out, "no library named {trimmed:?} in the corpus").map_err(io_err)?;
        };
        selections.insert(list.component.clone(), chosen);
    }
    writeln!(out, "Selections:").map_err(io_err)?;
    for (component, library) in &selections {
        writeln!(out, "  {component} -> {library}").map_err(io_err)?;
    }
    write!(out, "Proceed with these selections? [y/N]: ").map_err(io_err)?;
    out.flush().map_err(io_err)?;
    let answer = read_line(input)?;
    if !matches!(answer.trim(), "y" | "Y" | "yes") {
        return Err(CliError::Selection(
            "selection aborted; nothing was written".to_string(),
        ));
    }
    Ok(selections)
}

fn read_line(input: &mut dyn BufRead) -> Result<String, CliError> {
    let mut line = String::new();
    let read = input
        .read_line(&mut line)
        .map_err(|e| CliError::Selection(format!("failed to read selection: {e}")))?;
    if read == 0 {
        return Err(CliError::Selection(
            "selection aborted (end of input); nothing was written".to_string(),
        ));
    }
    Ok(line)
}

fn io_err(err: std::io::Error) -> CliError {
    CliError::Selection(format!("selection prompt failed: {err}"))
}
