//! Builds a migration plan from analysis results, pin mappings and library
//! selections, then emits adapter-pattern target source plus a task list.
//!
//! Emission order: retained includes, target runtime include, selected
//! library includes, generated port constants, retained globals, retained
//! functions, `setup`, `loop`, one three-line stub per platform-dependent
//! call. The output contains no blank lines, which keeps the generated line
//! count within `3*L + |added includes| + |port constants| + 4`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::hardware_graph::MappingsSet;
use crate::platform_kb::PlatformRepository;
use crate::recommender::tokenize;
use crate::source_analysis::ast::{FunctionDef, GlobalDecl, IncludeDirective, Stmt};
use crate::source_analysis::{printer, AnalysisResult};

pub const TODO_MARKER: &str = "//TODO: complete method";

#[derive(Debug, Error)]
pub enum PlanError {
    #[error("no library selected for: {}", components.join(", "))]
    MissingSelection { components: Vec<String> },
}

/// A generated `const int` pin binding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PortConstant {
    pub name: String,
    /// Board pin label, emitted verbatim.
    pub pin: String,
    /// Human-readable origin, emitted as a trailing comment.
    pub comment: String,
    /// True when the name needed an ordinal suffix to stay unique.
    pub renamed: bool,
}

/// An adapter stub for one platform-dependent function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stub {
    pub name: String,
    pub signature: String,
    /// True when the signature was inferred from call arity.
    pub inferred: bool,
}

impl Stub {
    /// Exactly three physical lines: signature with opening brace, TODO
    /// marker, closing brace.
    pub fn render(&self) -> [String; 3] {
        [
            format!("{}{{", self.signature),
            format!("  {TODO_MARKER}"),
            "}".to_string(),
        ]
    }
}

/// A source global that looks related to a mapped hardware component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PortReconciliation {
    pub global_name: String,
    pub component: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MigrationPlan {
    pub agnostic_includes: Vec<IncludeDirective>,
    /// Target runtime header, included in quotes.
    pub board_include: String,
    /// Selected library headers, included in angle brackets.
    pub library_includes: Vec<String>,
    pub port_constants: Vec<PortConstant>,
    pub retained_globals: Vec<GlobalDecl>,
    pub retained_functions: Vec<FunctionDef>,
    pub setup_statements: Vec<Stmt>,
    pub loop_statements: Vec<Stmt>,
    /// Trailing setup statements that sat after the infinite loop.
    pub moved_tail_count: usize,
    pub stubs: Vec<Stub>,
    pub reconciliations: Vec<PortReconciliation>,
    pub source_line_count: usize,
}

impl MigrationPlan {
    /// Includes added relative to the source: runtime plus selected libraries.
    pub fn added_include_count(&self) -> usize {
        1 + self.library_includes.len()
    }

    /// Upper bound on generated lines per the adapter-pattern size argument.
    pub fn size_bound(&self) -> usize {
        3 * self.source_line_count + self.added_include_count() + self.port_constants.len() + 4
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TaskKind {
    StubBody,
    UnreachableCode,
    InferredSignature,
    PortReconciliation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TaskItem {
    pub file: String,
    pub line: usize,
    pub kind: TaskKind,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct TaskList {
    pub items: Vec<TaskItem>,
}

impl TaskList {
    pub fn to_text(&self) -> String {
        self.items
            .iter()
            .map(|item| {
                format!(
                    "{}:{}: [{:?}] {}\n",
                    item.file, item.line, item.kind, item.message
                )
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("task list serializes") + "\n"
    }

    pub fn count(&self, kind: TaskKind) -> usize {
        self.items.iter().filter(|i| i.kind == kind).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanMetrics {
    pub source_lines: usize,
    pub generated_lines: usize,
    pub stub_count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Emission {
    pub text: String,
    pub tasks: TaskList,
    pub metrics: PlanMetrics,
}

/// Assembles everything the emitter needs. `selections` maps component
/// kind (canonical name) to a library name and must cover every input or
/// output component present in `mappings`.
pub fn build_plan(
    analysis: &AnalysisResult,
    mappings: &MappingsSet,
    selections: &BTreeMap<String, String>,
    repo: &PlatformRepository,
) -> Result<MigrationPlan, PlanError> {
    let kinds = mappings.mapped_kinds();
    let uncovered: Vec<String> = kinds
        .iter()
        .filter(|kind| !selections.contains_key(*kind))
        .cloned()
        .collect();
    if !uncovered.is_empty() {
        return Err(PlanError::MissingSelection {
            components: uncovered,
        });
    }
    let mut library_includes = Vec::new();
    for kind in &kinds {
        let header = format!("{}.h", selections[kind]);
        if !library_includes.contains(&header) {
            library_includes.push(header);
        }
    }
    let stubs = analysis
        .platform_calls
        .iter()
        .map(|call| match &call.signature {
            Some(signature) => Stub {
                name: call.name.clone(),
                signature: signature.clone(),
                inferred: false,
            },
            None => Stub {
                name: call.name.clone(),
                signature: inferred_signature(&call.name, call.max_arity),
                inferred: true,
            },
        })
        .collect();
    Ok(MigrationPlan {
        agnostic_includes: analysis.retained_includes.clone(),
        board_include: repo.target.runtime_header.clone(),
        library_includes,
        port_constants: derive_port_constants(mappings),
        retained_globals: analysis.retained_globals.clone(),
        retained_functions: analysis.retained_functions.clone(),
        setup_statements: analysis.main_decomposition.pre_loop.clone(),
        loop_statements: analysis.main_decomposition.loop_body.clone(),
        moved_tail_count: analysis.main_decomposition.moved_tail_count,
        stubs,
        reconciliations: find_reconciliations(analysis, mappings),
        source_line_count: analysis.source_line_count,
    })
}

/// `long name(long a1, ..., long ak)` with `k` the maximum observed arity.
fn inferred_signature(name: &str, max_arity: usize) -> String {
    let params = (1..=max_arity)
        .map(|i| format!("long a{i}"))
        .collect::<Vec<_>>()
        .join(", ");
    format!("long {name}({params})")
}

/// One `const int` per mapping entry, in mapping order. Name collisions
/// after sanitization get an ordinal suffix and are flagged.
pub fn derive_port_constants(mappings: &MappingsSet) -> Vec<PortConstant> {
    let mut used: BTreeMap<String, usize> = BTreeMap::new();
    mappings
        .entries
        .iter()
        .map(|entry| {
            let base = format!("PIN_{}", const_ident(&entry.endpoint_qualified));
            let seen = used.entry(base.clone()).or_insert(0);
            *seen += 1;
            let (name, renamed) = if *seen == 1 {
                (base, false)
            } else {
                (format!("{}_{}", base, *seen), true)
            };
            PortConstant {
                name,
                pin: entry.board_connector.clone(),
                comment: format!("{} {}", entry.component_title, entry.connector_name),
                renamed,
            }
        })
        .collect()
}

/// Uppercased ASCII alphanumerics only, so the result is a C identifier.
fn const_ident(qualified: &str) -> String {
    qualified
        .chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .collect::<String>()
        .to_uppercase()
}

/// Source globals whose names share a token with a mapped component are
/// flagged for manual pin reconciliation rather than silently rewritten.
fn find_reconciliations(
    analysis: &AnalysisResult,
    mappings: &MappingsSet,
) -> Vec<PortReconciliation> {
    let mut component_tokens: Vec<(String, Vec<String>)> = Vec::new();
    for entry in &mappings.entries {
        for key in [&entry.component_kind, &entry.component_title] {
            if !component_tokens.iter().any(|(name, _)| name == key) {
                component_tokens.push((key.clone(), tokenize(key)));
            }
        }
    }
    analysis
        .retained_globals
        .iter()
        .filter_map(|global| {
            let name_tokens = tokenize(&global.decl.name);
            component_tokens
                .iter()
                .find(|(_, tokens)| tokens.iter().any(|t| name_tokens.contains(t)))
                .map(|(component, _)| PortReconciliation {
                    global_name: global.decl.name.clone(),
                    component: component.clone(),
                })
        })
        .collect()
}

/// Renders the target source and the task list in one pass so line numbers
/// agree. `file_name` only labels task items.
pub fn emit(plan: &MigrationPlan, file_name: &str) -> Emission {
    let mut lines: Vec<String> = Vec::new();
    let mut items: Vec<TaskItem> = Vec::new();
    let task = |items: &mut Vec<TaskItem>, line: usize, kind: TaskKind, message: String| {
        items.push(TaskItem {
            file: file_name.to_string(),
            line,
            kind,
            message,
        });
    };

    for include in &plan.agnostic_includes {
        push_multiline(&mut lines, printer::print_include(include));
    }
    lines.push(format!("#include \"{}\"", plan.board_include));
    for header in &plan.library_includes {
        lines.push(format!("#include <{header}>"));
    }

    for constant in &plan.port_constants {
        lines.push(format!(
            "const int {} = {}; //{}",
            constant.name, constant.pin, constant.comment
        ));
        if constant.renamed {
            task(
                &mut items,
                lines.len(),
                TaskKind::PortReconciliation,
                format!(
                    "port constant `{}` was renamed to avoid a collision; review the wiring",
                    constant.name
                ),
            );
        }
    }

    let reconcile_lookup: BTreeMap<&str, &str> = plan
        .reconciliations
        .iter()
        .map(|r| (r.global_name.as_str(), r.component.as_str()))
        .collect();
    for global in &plan.retained_globals {
        push_multiline(&mut lines, printer::print_global(global));
        if let Some(component) = reconcile_lookup.get(global.decl.name.as_str()) {
            task(
                &mut items,
                lines.len(),
                TaskKind::PortReconciliation,
                format!(
                    "source constant `{}` may refer to component `{}`; reconcile it with the generated PIN_ constants",
                    global.decl.name, component
                ),
            );
        }
    }

    for func in &plan.retained_functions {
        push_multiline(&mut lines, printer::print_function(func));
    }

    emit_scaffold(
        &mut lines,
        &mut items,
        "setup",
        &plan.setup_statements,
        plan.moved_tail_count,
        file_name,
    );
    emit_scaffold(
        &mut lines,
        &mut items,
        "loop",
        &plan.loop_statements,
        0,
        file_name,
    );

    for stub in &plan.stubs {
        let signature_line = lines.len() + 1;
        lines.extend(stub.render());
        task(
            &mut items,
            signature_line,
            TaskKind::StubBody,
            format!("complete the body of `{}`", stub.name),
        );
        if stub.inferred {
            task(
                &mut items,
                signature_line,
                TaskKind::InferredSignature,
                format!(
                    "signature of `{}` was inferred from call arity; fix parameter and return types",
                    stub.name
                ),
            );
        }
    }

    let text = lines.join("\n") + "\n";
    items.sort_by_key(|item| item.line);
    Emission {
        metrics: PlanMetrics {
            source_lines: plan.source_line_count,
            generated_lines: lines.len(),
            stub_count: plan.stubs.len(),
        },
        text,
        tasks: TaskList { items },
    }
}

pub fn emit_target(plan: &MigrationPlan) -> String {
    emit(plan, "").text
}

pub fn emit_task_list(plan: &MigrationPlan, file_name: &str) -> TaskList {
    emit(plan, file_name).tasks
}

fn emit_scaffold(
    lines: &mut Vec<String>,
    items: &mut Vec<TaskItem>,
    name: &str,
    stmts: &[Stmt],
    moved_tail_count: usize,
    file_name: &str,
) {
    lines.push(format!("void {name}() {{"));
    let moved_from = stmts.len() - moved_tail_count;
    for (idx, stmt) in stmts.iter().enumerate() {
        let first_line = lines.len() + 1;
        push_multiline(lines, printer::print_stmt(stmt, 1));
        if idx >= moved_from {
            items.push(TaskItem {
                file: file_name.to_string(),
                line: first_line,
                kind: TaskKind::UnreachableCode,
                message: "statement was unreachable after the infinite loop; it now runs in setup"
                    .to_string(),
            });
        }
    }
    lines.push("}".to_string());
}

fn push_multiline(lines: &mut Vec<String>, text: String) {
    for line in text.split('\n') {
        lines.push(line.to_string());
    }
}
