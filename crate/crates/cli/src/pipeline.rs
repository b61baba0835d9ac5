//! Orchestrates the migration workflow: source analysis, hardware mapping,
//! library ranking, selection, code generation and history update. Outputs
//! are staged in a temporary directory and moved into place on success, so
//! a failing run leaves nothing behind.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use boardport_core::codegen::{build_plan, emit, Emission};
use boardport_core::hardware_graph::{parse_fritzing, traverse, MappingsSet};
use boardport_core::platform_kb::{load_repository, PlatformRepository, HISTORY_FILE};
use boardport_core::recommender::{build_index, rank, LibraryIndex, RankedList};
use boardport_core::source_analysis::{parse_source, Analyzer};

use crate::args::{MigrateArgs, RankArgs};
use crate::errors::CliError;
use crate::interactive::interactive_select;
use crate::render::write_ranked_table;

struct Workspace {
    repo: PlatformRepository,
    index: LibraryIndex,
    mappings: MappingsSet,
}

fn load_workspace(repo_path: &Path, sketch_path: &Path) -> Result<Workspace, CliError> {
    let repo = load_repository(repo_path)?;
    let index = build_index(&repo.headers)?;
    let sketch = read_file(sketch_path)?;
    let model = parse_fritzing(&sketch, &repo)?;
    let traversal = traverse(&model);
    Ok(Workspace {
        repo,
        index,
        mappings: traversal.mappings,
    })
}

fn ranked_lists(ws: &Workspace, top_k: usize, history_weight: f64) -> Vec<RankedList> {
    ws.mappings
        .mapped_kinds()
        .iter()
        .map(|kind| rank(kind, &ws.index, &ws.repo.history, top_k, history_weight))
        .collect()
}

pub fn run_migrate(args: MigrateArgs) -> Result<(), CliError> {
    if args.history_weight < 0.0 {
        return Err(CliError::Usage(
            "--history-weight must be non-negative".to_string(),
        ));
    }
    let ws = load_workspace(&args.repo, &args.sketch)?;
    if ws.repo.target.id != args.target {
        return Err(CliError::Input(format!(
            "repository targets platform {:?}, but --target is {:?}",
            ws.repo.target.id, args.target
        )));
    }

    // parse and analyse every source up front; nothing is written on error
    let analyzer = Analyzer::new(&ws.repo);
    let mut units = Vec::new();
    let mut seen_stems: Vec<String> = Vec::new();
    for path in &args.sources {
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .ok_or_else(|| CliError::Usage(format!("not a source file: {}", path.display())))?;
        if seen_stems.contains(&stem) {
            return Err(CliError::Usage(format!(
                "duplicate source file stem {stem:?}; outputs would collide"
            )));
        }
        seen_stems.push(stem.clone());
        let text = read_file(path)?;
        let tu =
            parse_source(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let analysis = analyzer
            .analyse(&tu)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        units.push((stem, analysis));
    }

    let ranked = ranked_lists(&ws, args.top_k as usize, args.history_weight);
    let selections = obtain_selections(&args, &ws, &ranked)?;

    let mut emissions: Vec<(String, Emission)> = Vec::new();
    for (stem, analysis) in &units {
        let plan = build_plan(analysis, &ws.mappings, &selections, &ws.repo)?;
        let file_name = format!("{stem}.{}", ws.repo.target.output_extension);
        let emission = emit(&plan, &file_name);
        emissions.push((file_name, emission));
    }

    let written = stage_and_move(&args.out, &emissions)?;

    let mut history = ws.repo.history.clone();
    for kind in ws.mappings.mapped_kinds() {
        history.record_selection(&kind, &selections[&kind]);
    }
    history.save(&args.repo.join(HISTORY_FILE))?;

    let stdout = io::stdout();
    let mut out = stdout.lock();
    let _ = writeln!(out, "Mappings: {}", ws.mappings);
    let _ = writeln!(out, "Selections:");
    for kind in ws.mappings.mapped_kinds() {
        let _ = writeln!(out, "  {kind} -> {}", selections[&kind]);
    }
    for (file_name, emission) in &emissions {
        let _ = writeln!(
            out,
            "Wrote {} ({} lines, {} stubs, {} tasks)",
            args.out.join(file_name).display(),
            emission.metrics.generated_lines,
            emission.metrics.stub_count,
            emission.tasks.items.len()
        );
    }
    let _ = written;
    Ok(())
}

pub fn run_rank(args: RankArgs) -> Result<(), CliError> {
    if args.history_weight < 0.0 {
        return Err(CliError::Usage(
            "--history-weight must be non-negative".to_string(),
        ));
    }
    let ws = load_workspace(&args.repo, &args.sketch)?;
    let mut lists = ranked_lists(&ws, args.top_k as usize, args.history_weight);
    if let Some(filter) = &args.component {
        let kinds = ws.mappings.mapped_kinds();
        lists.retain(|l| {
            l.component.eq_ignore_ascii_case(filter)
                || l.component.to_lowercase().contains(&filter.to_lowercase())
        });
        if lists.is_empty() {
            return Err(CliError::Selection(format!(
                "no mapped component matches {filter:?}; mapped components: {}",
                kinds.join(", ")
            )));
        }
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if lists.is_empty() {
        let _ = writeln!(out, "no input/output components are mapped in this sketch");
        return Ok(());
    }
    for list in &lists {
        write_ranked_table(&mut out, list)
            .map_err(|e| CliError::Input(format!("failed to print: {e}")))?;
    }
    Ok(())
}

fn obtain_selections(
    args: &MigrateArgs,
    ws: &Workspace,
    ranked: &[RankedList],
) -> Result<BTreeMap<String, String>, CliError> {
    if let Some(path) = &args.select_file {
        let text = read_file(path)?;
        let selections: BTreeMap<String, String> = toml::from_str(&text)
            .map_err(|e| CliError::Selection(format!("{}: {e}", path.display())))?;
        let unknown: Vec<&str> = selections
            .values()
            .filter(|lib| !ws.index.contains_library(lib))
            .map(String::as_str)
            .collect();
        if !unknown.is_empty() {
            return Err(CliError::Selection(format!(
                "selections name libraries missing from the corpus: {}",
                unknown.join(", ")
            )));
        }
        return Ok(selections);
    }
    if args.auto {
        return Ok(ranked
            .iter()
            .map(|list| (list.component.clone(), list.entries[0].library.clone()))
            .collect());
    }
    let stdin = io::stdin();
    let stdout = io::stdout();
    interactive_select(
        &mut stdin.lock() as &mut dyn BufRead,
        &mut stdout.lock(),
        ranked,
        &ws.index,
    )
}

/// Writes all output files into a temp directory next to `out`, then moves
/// them in. The temp directory self-cleans if anything fails.
fn stage_and_move(out: &Path, emissions: &[(String, Emission)]) -> Result<Vec<PathBuf>, CliError> {
    let parent = match out.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&parent)
        .map_err(|e| CliError::Input(format!("cannot create {}: {e}", parent.display())))?;
    let staging = tempfile::Builder::new()
        .prefix(".boardport-stage-")
        .tempdir_in(&parent)
        .map_err(|e| CliError::Input(format!("cannot create staging directory: {e}")))?;

    let mut names = Vec::new();
    for (file_name, emission) in emissions {
        let stem = file_name
            .rsplit_once('.')
            .map(|(s, _)| s)
            .unwrap_or(file_name);
        let files = [
            (file_name.clone(), emission.text.clone()),
            (format!("{stem}.tasks.txt"), emission.tasks.to_text()),
            (format!("{stem}.tasks.json"), emission.tasks.to_json()),
        ];
        for (name, content) in files {
            fs::write(staging.path().join(&name), content)
                .map_err(|e| CliError::Input(format!("cannot write {name}: {e}")))?;
            names.push(name);
        }
    }

    fs::create_dir_all(out)
        .map_err(|e| CliError::Input(format!("cannot create {}: {e}", out.display())))?;
    let mut written = Vec::new();
    for name in names {
        let target = out.join(&name);
        fs::rename(staging.path().join(&name), &target)
            .map_err(|e| CliError::Input(format!("cannot move {name} into place: {e}")))?;
        written.push(target);
    }
    Ok(written)
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| {
        if e.kind() == io::ErrorKind::NotFound {
            CliError::Input(format!("missing file: {}", path.display()))
        } else {
            CliError::Input(format!("cannot read {}: {e}", path.display()))
        }
    })
}
