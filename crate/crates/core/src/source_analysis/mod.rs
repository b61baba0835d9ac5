//! Parses source-platform sketches (a defined C subset) and classifies
//! every construct as platform-agnostic or platform-dependent.
//!
//! Classification is name-based: an include is dropped when its header
//! belongs to the source platform registry; a call is platform-dependent
//! when its callee is neither defined locally nor a recognized standard
//! library function. Results are memoized per translation unit.

pub mod ast;
mod lexer;
mod parser;
pub mod printer;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::platform_kb::PlatformRepository;
use ast::{Expr, FunctionDef, GlobalDecl, IncludeDirective, Stmt, StmtKind, TranslationUnit};

pub use parser::parse_source;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax {
        line: u32,
        col: u32,
        message: String,
    },
    #[error("{line}:{col}: unsupported construct: {construct}")]
    Unsupported {
        line: u32,
        col: u32,
        construct: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("translation unit does not define a `main` function")]
    NoMainFunction,
}

/// Standard C library functions that must not be stubbed.
const STD_FUNCTIONS: &[&str] = &[
    // stdio
    "printf", "fprintf", "sprintf", "snprintf", "scanf", "fscanf", "sscanf", "puts", "putchar",
    "putc", "fputs", "fputc", "getchar", "getc", "fgetc", "fgets", "ungetc", "fopen", "fclose",
    "fflush", "fread", "fwrite", "fseek", "ftell", "rewind", "remove", "rename", "perror",
    // stdlib
    "malloc", "calloc", "realloc", "free", "exit", "abort", "atexit", "atoi", "atol", "atof",
    "strtol", "strtod", "rand", "srand", "abs", "labs", "qsort", "bsearch", "getenv", "system",
    // string
    "strlen", "strcmp", "strncmp", "strcpy", "strncpy", "strcat", "strncat", "strchr", "strrchr",
    "strstr", "strtok", "strspn", "strcspn", "strpbrk", "strerror", "memcpy", "memmove", "memset",
    "memcmp", "memchr", // math
    "sin", "cos", "tan", "asin", "acos", "atan", "atan2", "sinh", "cosh", "tanh", "exp", "log",
    "log10", "pow", "sqrt", "ceil", "floor", "fabs", "fmod", "ldexp", "frexp", "modf",
    // ctype
    "isalpha", "isdigit", "isalnum", "isspace", "isupper", "islower", "ispunct", "isprint",
    "iscntrl", "isxdigit", "toupper", "tolower", // time
    "time", "clock", "difftime",
];

pub fn is_standard_function(name: &str) -> bool {
    STD_FUNCTIONS.contains(&name)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassificationTag {
    Agnostic,
    PlatformDependent,
    /// Only produced for include directives.
    PlatformInclude,
}

/// How a construct was classified and which registry rule fired.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub tag: ClassificationTag,
    pub reason: String,
}

pub fn classify_include(include: &IncludeDirective, repo: &PlatformRepository) -> Classification {
    let name = include.header_name();
    if repo.origin_headers().contains(name) {
        Classification {
            tag: ClassificationTag::PlatformInclude,
            reason: format!("header {name} belongs to the source platform registry"),
        }
    } else {
        Classification {
            tag: ClassificationTag::Agnostic,
            reason: format!("header {name} is not a source-platform header"),
        }
    }
}

pub fn classify_call(
    callee: &str,
    tu: &TranslationUnit,
    repo: &PlatformRepository,
) -> Classification {
    if tu.defines_function(callee) {
        return Classification {
            tag: ClassificationTag::Agnostic,
            reason: format!("{callee} is defined in this translation unit"),
        };
    }
    if let Some(record) = repo.lookup_source_signature(callee) {
        return Classification {
            tag: ClassificationTag::PlatformDependent,
            reason: format!(
                "{callee} is a source-platform function from {}",
                record.origin_header
            ),
        };
    }
    if is_standard_function(callee) {
        return Classification {
            tag: ClassificationTag::Agnostic,
            reason: format!("{callee} is a standard library function"),
        };
    }
    Classification {
        tag: ClassificationTag::PlatformDependent,
        reason: format!("{callee} is external and not in the standard-library allowlist"),
    }
}

/// A platform-dependent call aggregated over all its call sites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlatformCall {
    pub name: String,
    /// Signature text from the registry; `None` means it must be inferred.
    pub signature: Option<String>,
    pub call_count: usize,
    pub max_arity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalysisWarning {
    /// Statements after the infinite loop were moved into the setup block.
    UnreachableAfterLoop { stmt_count: usize },
    /// More than one top-level infinite loop; the first one won.
    MultipleInfiniteLoops { count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MainDecomposition {
    pub pre_loop: Vec<Stmt>,
    pub loop_body: Vec<Stmt>,
    /// How many trailing statements of `pre_loop` came from after the loop.
    pub moved_tail_count: usize,
    pub warnings: Vec<AnalysisWarning>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisResult {
    pub retained_includes: Vec<IncludeDirective>,
    pub dropped_includes: Vec<IncludeDirective>,
    pub retained_globals: Vec<GlobalDecl>,
    /// All function definitions except `main`, in source order.
    pub retained_functions: Vec<FunctionDef>,
    /// Distinct platform-dependent calls in first-occurrence order.
    pub platform_calls: Vec<PlatformCall>,
    pub main_decomposition: MainDecomposition,
    pub source_line_count: usize,
}

/// Partitions includes: dropped iff the header is owned by the source
/// platform registry, retained otherwise.
pub fn classify_includes(
    tu: &TranslationUnit,
    repo: &PlatformRepository,
) -> (Vec<IncludeDirective>, Vec<IncludeDirective>) {
    tu.includes
        .iter()
        .cloned()
        .partition(|inc| classify_include(inc, repo).tag != ClassificationTag::PlatformInclude)
}

/// Distinct platform-dependent calls. A call qualifies when its callee is
/// not defined in the translation unit and is either registered as a
/// source-platform function or not a recognized standard function.
pub fn collect_platform_calls(
    tu: &TranslationUnit,
    repo: &PlatformRepository,
) -> Vec<PlatformCall> {
    let mut order: Vec<String> = Vec::new();
    let mut calls: HashMap<String, PlatformCall> = HashMap::new();
    for site in tu.call_sites() {
        if classify_call(&site.name, tu, repo).tag != ClassificationTag::PlatformDependent {
            continue;
        }
        let signature = repo
            .lookup_source_signature(&site.name)
            .map(|r| r.signature.clone());
        let entry = calls.entry(site.name.clone()).or_insert_with(|| {
            order.push(site.name.clone());
            PlatformCall {
                name: site.name.clone(),
                signature,
                call_count: 0,
                max_arity: 0,
            }
        });
        entry.call_count += 1;
        entry.max_arity = entry.max_arity.max(site.args.len());
    }
    order
        .into_iter()
        .map(|name| calls.remove(&name).expect("recorded"))
        .collect()
}

/// Splits `main` around its infinite loop: statements before the loop form
/// the setup block, the loop body forms the forever block. Statements after
/// the loop are appended to setup and reported as unreachable.
pub fn decompose_main(tu: &TranslationUnit) -> Result<MainDecomposition, AnalysisError> {
    let main = tu.function("main").ok_or(AnalysisError::NoMainFunction)?;
    let stmts = &main.body.stmts;
    let loop_positions: Vec<usize> = stmts
        .iter()
        .enumerate()
        .filter(|(_, stmt)| is_infinite_loop(stmt))
        .map(|(i, _)| i)
        .collect();
    let Some(&first) = loop_positions.first() else {
        return Ok(MainDecomposition {
            pre_loop: stmts.clone(),
            loop_body: Vec::new(),
            moved_tail_count: 0,
            warnings: Vec::new(),
        });
    };
    let mut warnings = Vec::new();
    if loop_positions.len() > 1 {
        warnings.push(AnalysisWarning::MultipleInfiniteLoops {
            count: loop_positions.len(),
        });
    }
    let mut pre_loop: Vec<Stmt> = stmts[..first].to_vec();
    let tail: Vec<Stmt> = stmts[first + 1..].to_vec();
    let moved_tail_count = tail.len();
    if moved_tail_count > 0 {
        warnings.push(AnalysisWarning::UnreachableAfterLoop {
            stmt_count: moved_tail_count,
        });
        pre_loop.extend(tail);
    }
    let StmtKind::While { body, .. } = &stmts[first].kind else {
        unreachable!("is_infinite_loop matched a non-while statement");
    };
    let loop_body = match &body.kind {
        StmtKind::Block(block) => block.stmts.clone(),
        _ => vec![(**body).clone()],
    };
    Ok(MainDecomposition {
        pre_loop,
        loop_body,
        moved_tail_count,
        warnings,
    })
}

fn is_infinite_loop(stmt: &Stmt) -> bool {
    let StmtKind::While { cond, .. } = &stmt.kind else {
        return false;
    };
    is_infinite_cond(cond)
}

fn is_infinite_cond(expr: &Expr) -> bool {
    match expr {
        Expr::IntLit(text) => text == "1",
        Expr::Ident(name) => name == "true",
        Expr::Paren(inner) => is_infinite_cond(inner),
        _ => false,
    }
}

/// One-shot analysis without memoization.
pub fn analyse(
    tu: &TranslationUnit,
    repo: &PlatformRepository,
) -> Result<AnalysisResult, AnalysisError> {
    let (retained_includes, dropped_includes) = classify_includes(tu, repo);
    let platform_calls = collect_platform_calls(tu, repo);
    let main_decomposition = decompose_main(tu)?;
    Ok(AnalysisResult {
        retained_includes,
        dropped_includes,
        retained_globals: tu.globals.clone(),
        retained_functions: tu
            .functions
            .iter()
            .filter(|f| f.name != "main")
            .cloned()
            .collect(),
        platform_calls,
        main_decomposition,
        source_line_count: tu.source_line_count,
    })
}

/// Memoizing analysis front end bound to one repository. Safe for
/// concurrent readers; insertions take the write lock.
pub struct Analyzer<'r> {
    repo: &'r PlatformRepository,
    cache: RwLock<HashMap<u64, Arc<AnalysisResult>>>,
}

impl<'r> Analyzer<'r> {
    pub fn new(repo: &'r PlatformRepository) -> Self {
        Analyzer {
            repo,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn analyse(&self, tu: &TranslationUnit) -> Result<Arc<AnalysisResult>, AnalysisError> {
        let key = tu.fingerprint();
        if let Some(hit) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let result = Arc::new(analyse(tu, self.repo)?);
        let mut cache = self.cache.write().expect("cache lock");
        Ok(cache.entry(key).or_insert(result).clone())
    }
}

#[cfg(test)]
mod tests {
    use super::ast::stmts_structurally_eq;
    use super::printer::print_translation_unit;
    use super::*;
    use crate::platform_kb::load_repository;
    use crate::test_support::{propeller_repo, LINE_FOLLOWER};

    #[test]
    fn parses_line_follower_structure() {
        let tu = parse_source(LINE_FOLLOWER).unwrap();
        assert_eq!(tu.includes.len(), 2);
        assert_eq!(tu.globals.len(), 5);
        assert_eq!(tu.functions.len(), 2);
        assert_eq!(tu.functions[0].name, "GetQTIState");
        assert_eq!(tu.functions[1].name, "main");
    }

    #[test]
    fn empty_input_is_empty_tu() {
        let tu = parse_source("").unwrap();
        assert!(tu.includes.is_empty());
        assert!(tu.globals.is_empty());
        assert!(tu.functions.is_empty());
        assert_eq!(tu.source_line_count, 0);
    }

    #[test]
    fn misspelled_keyword_is_a_syntax_error() {
        let err = parse_source("int main(){retur 0;}").unwrap_err();
        match err {
            ParseError::Syntax { line, message, .. } => {
                assert_eq!(line, 1);
                assert!(message.contains("`0`"), "message: {message}");
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn out_of_subset_constructs_are_named() {
        let err = parse_source("int main(){for(;;){}}").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Unsupported { ref construct, .. } if construct == "for loop"
        ));
        let err = parse_source("template<typename T> T id(T x){return x;}").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Unsupported { ref construct, .. } if construct == "template"
        ));
    }

    #[test]
    fn global_initializer_call_is_unsupported() {
        let err = parse_source("int x = f();").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Unsupported { ref construct, .. }
                if construct.contains("global initializer")
        ));
    }

    #[test]
    fn classify_includes_partitions_by_registry() {
        let repo = propeller_repo();
        let tu = parse_source(
            "#include \"simpletools.h\"\n#include \"abdrive.h\"\n#include <stdio.h>\n",
        )
        .unwrap();
        let (retained, dropped) = classify_includes(&tu, &repo);
        let names = |v: &[IncludeDirective]| {
            v.iter()
                .map(|i| i.header_name().to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(names(&dropped), ["simpletools.h", "abdrive.h"]);
        assert_eq!(names(&retained), ["stdio.h"]);
    }

    #[test]
    fn classify_includes_empty_tu() {
        let repo = propeller_repo();
        let tu = parse_source("").unwrap();
        let (retained, dropped) = classify_includes(&tu, &repo);
        assert!(retained.is_empty() && dropped.is_empty());
    }

    #[test]
    fn standard_library_include_is_retained() {
        let repo = propeller_repo();
        let tu = parse_source("#include <fstream>\n").unwrap();
        let (retained, dropped) = classify_includes(&tu, &repo);
        assert_eq!(retained.len(), 1);
        assert!(dropped.is_empty());
    }

    #[test]
    fn line_follower_platform_calls_are_the_eight() {
        let repo = propeller_repo();
        let tu = parse_source(LINE_FOLLOWER).unwrap();
        let calls = collect_platform_calls(&tu, &repo);
        let mut names: Vec<&str> = calls.iter().map(|c| c.name.as_str()).collect();
        names.sort_unstable();
        assert_eq!(
            names,
            [
                "drive_speed",
                "get_state",
                "high",
                "low",
                "pause",
                "set_direction",
                "set_output",
                "waitcnt"
            ]
        );
        // locally defined functions are never platform-dependent
        assert!(!calls.iter().any(|c| c.name == "GetQTIState"));
        let drive = calls.iter().find(|c| c.name == "drive_speed").unwrap();
        assert_eq!(
            drive.signature.as_deref(),
            Some("void drive_speed(int left, int right)")
        );
        assert_eq!(drive.call_count, 4);
        assert_eq!(drive.max_arity, 2);
    }

    #[test]
    fn stdlib_only_calls_yield_nothing() {
        let repo = propeller_repo();
        let tu = parse_source("#include <stdio.h>\nint main(){while(1){printf(\"hi\");}}").unwrap();
        assert!(collect_platform_calls(&tu, &repo).is_empty());
    }

    #[test]
    fn unknown_external_call_defaults_to_platform_dependent() {
        let repo = propeller_repo();
        let tu = parse_source("int main(){while(1){frobnicate(1, 2, 3);}}").unwrap();
        let calls = collect_platform_calls(&tu, &repo);
        assert_eq!(calls.len(), 1);
        assert_eq!(calls[0].name, "frobnicate");
        assert_eq!(calls[0].signature, None);
        assert_eq!(calls[0].max_arity, 3);
    }

    #[test]
    fn decompose_line_follower_main() {
        let tu = parse_source(LINE_FOLLOWER).unwrap();
        let decomp = decompose_main(&tu).unwrap();
        assert!(decomp.pre_loop.is_empty());
        assert_eq!(decomp.loop_body.len(), 3); // two decls + the if/else cascade
        assert!(decomp.warnings.is_empty());
    }

    #[test]
    fn decompose_pre_loop_split() {
        let tu = parse_source("int main(){init(); while(1){step();}}").unwrap();
        let decomp = decompose_main(&tu).unwrap();
        assert_eq!(decomp.pre_loop.len(), 1);
        assert_eq!(decomp.loop_body.len(), 1);
    }

    #[test]
    fn decompose_without_loop_keeps_whole_body_in_setup() {
        let tu = parse_source("int main(){init(); run();}").unwrap();
        let decomp = decompose_main(&tu).unwrap();
        assert_eq!(decomp.pre_loop.len(), 2);
        assert!(decomp.loop_body.is_empty());
    }

    #[test]
    fn decompose_statements_after_loop_are_moved_with_warning() {
        let tu = parse_source("int main(){while(1){step();} cleanup();}").unwrap();
        let decomp = decompose_main(&tu).unwrap();
        assert_eq!(decomp.pre_loop.len(), 1);
        assert_eq!(decomp.moved_tail_count, 1);
        assert_eq!(
            decomp.warnings,
            vec![AnalysisWarning::UnreachableAfterLoop { stmt_count: 1 }]
        );
    }

    #[test]
    fn decompose_multiple_loops_first_wins() {
        let tu = parse_source("int main(){while(1){a();} while(true){b();}}").unwrap();
        let decomp = decompose_main(&tu).unwrap();
        assert!(decomp
            .warnings
            .contains(&AnalysisWarning::MultipleInfiniteLoops { count: 2 }));
        let printed = printer::print_stmt(&decomp.loop_body[0], 0);
        assert!(printed.contains("a()"));
    }

    #[test]
    fn decompose_requires_main() {
        let tu = parse_source("int helper(){return 0;}").unwrap();
        assert_eq!(
            decompose_main(&tu).unwrap_err(),
            AnalysisError::NoMainFunction
        );
    }

    #[test]
    fn analyse_is_memoized_and_idempotent() {
        let repo = propeller_repo();
        let analyzer = Analyzer::new(&repo);
        let tu = parse_source(LINE_FOLLOWER).unwrap();
        let first = analyzer.analyse(&tu).unwrap();
        let second = analyzer.analyse(&tu).unwrap();
        assert!(Arc::ptr_eq(&first, &second));
        // a reparse of the same text hits the same memo entry
        let reparsed = parse_source(LINE_FOLLOWER).unwrap();
        let third = analyzer.analyse(&reparsed).unwrap();
        assert!(Arc::ptr_eq(&first, &third));
        assert_eq!(*first, *third);
    }

    #[test]
    fn classification_reasons_name_the_rule_that_fired() {
        let repo = propeller_repo();
        let tu = parse_source(LINE_FOLLOWER).unwrap();
        let dropped = classify_include(&tu.includes[0], &repo);
        assert_eq!(dropped.tag, ClassificationTag::PlatformInclude);
        assert!(dropped.reason.contains("simpletools.h"));
        let local = classify_call("GetQTIState", &tu, &repo);
        assert_eq!(local.tag, ClassificationTag::Agnostic);
        let registered = classify_call("drive_speed", &tu, &repo);
        assert_eq!(registered.tag, ClassificationTag::PlatformDependent);
        assert!(registered.reason.contains("abdrive.h"));
        let std_fn = classify_call("printf", &tu, &repo);
        assert_eq!(std_fn.tag, ClassificationTag::Agnostic);
        let unknown = classify_call("frobnicate", &tu, &repo);
        assert_eq!(unknown.tag, ClassificationTag::PlatformDependent);
    }

    #[test]
    fn memoized_analysis_is_safe_under_concurrent_readers() {
        let repo = propeller_repo();
        let analyzer = Analyzer::new(&repo);
        let tu = parse_source(LINE_FOLLOWER).unwrap();
        let results: Vec<Arc<AnalysisResult>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..8)
                .map(|_| scope.spawn(|| analyzer.analyse(&tu).unwrap()))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for pair in results.windows(2) {
            assert!(Arc::ptr_eq(&pair[0], &pair[1]));
        }
    }

    #[test]
    fn analyse_include_partition_is_total() {
        let repo = propeller_repo();
        let tu = parse_source(LINE_FOLLOWER).unwrap();
        let result = analyse(&tu, &repo).unwrap();
        assert_eq!(
            result.retained_includes.len() + result.dropped_includes.len(),
            tu.includes.len()
        );
        let platform_names: Vec<&str> = result
            .platform_calls
            .iter()
            .map(|c| c.name.as_str())
            .collect();
        for func in &result.retained_functions {
            assert!(!platform_names.contains(&func.name.as_str()));
        }
        assert_eq!(result.source_line_count, 33);
    }

    #[test]
    fn print_parse_round_trip_on_fixture() {
        let tu = parse_source(LINE_FOLLOWER).unwrap();
        let printed = print_translation_unit(&tu);
        let reparsed = parse_source(&printed).unwrap();
        assert!(
            tu.structurally_eq(&reparsed),
            "reparsed tree differs\n--- printed ---\n{printed}"
        );
        // printing is a fixpoint after one round
        assert_eq!(printed, print_translation_unit(&reparsed));
    }

    #[test]
    fn decomposed_loop_body_survives_reprinting() {
        let tu = parse_source(LINE_FOLLOWER).unwrap();
        let decomp = decompose_main(&tu).unwrap();
        let printed: String = decomp
            .loop_body
            .iter()
            .map(|s| printer::print_stmt(s, 1) + "\n")
            .collect();
        let wrapped = format!("int main(){{\nwhile (1){{\n{printed}}}\n}}\n");
        let reparsed = parse_source(&wrapped).unwrap();
        let redecomp = decompose_main(&reparsed).unwrap();
        assert!(stmts_structurally_eq(
            &decomp.loop_body,
            &redecomp.loop_body
        ));
    }

    #[test]
    fn repo_fixture_loads_for_integration() {
        // keep the inline repo consistent with the on-disk fixture layout
        let dir = tempfile::tempdir().unwrap();
        crate::platform_kb::save_repository(&propeller_repo(), dir.path()).unwrap();
        let loaded = load_repository(dir.path()).unwrap();
        assert_eq!(loaded.source_functions.len(), 8);
    }
}
