//! End-to-end behavior of the `boardport` binary: exit statuses, selection
//! modes, replay equivalence and failure hygiene.

mod common;

use std::fs;

use common::{dir_contents, fixtures_dir, path_str, repo_copy, run_cli, MigrateCmd};

#[test]
fn migrate_with_selection_file_succeeds() {
    let tmp = tempfile::tempdir().unwrap();
    let cmd = MigrateCmd::fixture(tmp.path(), "out");
    let select = fixtures_dir().join("linefollower/selections");
    let run = cmd.run(&["--select", &path_str(&select)], None);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let generated = fs::read_to_string(cmd.out.join("linefollower.ino")).unwrap();
    assert!(!generated.contains("simpletools.h"));
    assert!(!generated.contains("abdrive.h"));
    assert!(generated.contains("#include <stdio.h>"));
    assert!(generated.contains("#include \"Arduino.h\""));
    assert_eq!(generated.matches("//TODO: complete method").count(), 8);
    assert!(cmd.out.join("linefollower.tasks.txt").exists());
    assert!(cmd.out.join("linefollower.tasks.json").exists());
    // history was updated for each mapped component kind
    let history = fs::read_to_string(cmd.repo.join("history")).unwrap();
    assert!(history.contains("\"Basic Servo\""));
    assert!(history.contains("Servo = 1"));
}

#[test]
fn missing_sketch_exits_2_without_output_dir() {
    let tmp = tempfile::tempdir().unwrap();
    let mut cmd = MigrateCmd::fixture(tmp.path(), "out");
    cmd.sketch = tmp.path().join("nonexistent.fz");
    let run = cmd.run(&["--auto"], None);
    assert_eq!(run.code, 2, "stderr: {}", run.stderr);
    assert!(!cmd.out.exists());
}

#[test]
fn missing_source_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let mut cmd = MigrateCmd::fixture(tmp.path(), "out");
    cmd.source = tmp.path().join("nonexistent.c");
    let run = cmd.run(&["--auto"], None);
    assert_eq!(run.code, 2);
    assert!(!cmd.out.exists());
}

#[test]
fn syntax_error_in_source_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let mut cmd = MigrateCmd::fixture(tmp.path(), "out");
    let bad = tmp.path().join("bad.c");
    fs::write(&bad, "int main(){retur 0;}").unwrap();
    cmd.source = bad;
    let run = cmd.run(&["--auto"], None);
    assert_eq!(run.code, 2);
    assert!(
        run.stderr.contains("syntax error"),
        "stderr: {}",
        run.stderr
    );
    assert!(!cmd.out.exists());
}

#[test]
fn unknown_component_exits_2_naming_it() {
    let tmp = tempfile::tempdir().unwrap();
    let mut cmd = MigrateCmd::fixture(tmp.path(), "out");
    let sketch = fs::read_to_string(&cmd.sketch).unwrap();
    let mangled = sketch.replace("5mmColorLEDModuleID", "MysteryPartModuleID");
    let path = tmp.path().join("mangled.fz");
    fs::write(&path, mangled.replace("Red (633nm)-LED1", "Mystery Part1")).unwrap();
    cmd.sketch = path;
    let run = cmd.run(&["--auto"], None);
    assert_eq!(run.code, 2);
    assert!(
        run.stderr.contains("Mystery Part1"),
        "stderr: {}",
        run.stderr
    );
    assert!(!cmd.out.exists());
}

#[test]
fn target_mismatch_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let cmd = MigrateCmd::fixture(tmp.path(), "out");
    let mut args = cmd.args(&["--auto"]);
    let pos = args.iter().position(|a| a == "arduino_uno").unwrap();
    args[pos] = "esp32".to_string();
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let run = run_cli(&refs, None);
    assert_eq!(run.code, 2);
    assert!(!cmd.out.exists());
}

#[test]
fn usage_error_exits_1() {
    let run = run_cli(&["migrate", "--bogus-flag"], None);
    assert_eq!(run.code, 1);
}

#[test]
fn help_exits_0() {
    let run = run_cli(&["--help"], None);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("migrate") || run.stderr.contains("migrate"));
}

#[test]
fn auto_mode_equals_rank_heads_selection_file() {
    let tmp = tempfile::tempdir().unwrap();
    let auto = MigrateCmd::fixture(tmp.path(), "out-auto");
    let run = auto.run(&["--auto"], None);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);

    // with an empty history the rank heads are Boards / QTRSensors / LED
    let heads = tmp.path().join("heads.toml");
    fs::write(
        &heads,
        "\"Basic Servo\" = \"Boards\"\n\"QTI Sensor\" = \"QTRSensors\"\n\"LED\" = \"LED\"\n",
    )
    .unwrap();
    let mut from_file = MigrateCmd::fixture(tmp.path(), "out-file");
    from_file.repo = repo_copy(&tmp.path().join("second"));
    let run = from_file.run(&["--select", &path_str(&heads)], None);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);

    assert_eq!(dir_contents(&auto.out), dir_contents(&from_file.out));
}

#[test]
fn interactive_run_replays_to_selection_file_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    // prompts come in mapping order: Basic Servo, QTI Sensor, LED.
    // entry 2 for the servo is the Servo library (Boards ranks first on
    // bare TFIDF); free-form name exercises the by-name path.
    let interactive = MigrateCmd::fixture(tmp.path(), "out-interactive");
    let run = interactive.run(&["--interactive"], Some("2\n1\nLED\ny\n"));
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert!(run.stdout.contains("Select a library for \"Basic Servo\""));

    let select = fixtures_dir().join("linefollower/selections");
    let mut from_file = MigrateCmd::fixture(tmp.path(), "out-file");
    from_file.repo = repo_copy(&tmp.path().join("second"));
    let run = from_file.run(&["--select", &path_str(&select)], None);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);

    assert_eq!(dir_contents(&interactive.out), dir_contents(&from_file.out));
}

#[test]
fn interactive_rejects_unknown_library_then_accepts() {
    let tmp = tempfile::tempdir().unwrap();
    let cmd = MigrateCmd::fixture(tmp.path(), "out");
    let run = cmd.run(&["--interactive"], Some("NoSuchLib\n2\n1\n1\ny\n"));
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert!(run.stdout.contains("no library named \"NoSuchLib\""));
}

#[test]
fn interactive_eof_exits_3_and_writes_nothing() {
    let tmp = tempfile::tempdir().unwrap();
    let cmd = MigrateCmd::fixture(tmp.path(), "out");
    let history_before = fs::read(cmd.repo.join("history")).unwrap();
    let run = cmd.run(&["--interactive"], Some("2\n"));
    assert_eq!(run.code, 3, "stderr: {}", run.stderr);
    assert!(!cmd.out.exists());
    assert_eq!(fs::read(cmd.repo.join("history")).unwrap(), history_before);
}

#[test]
fn declining_confirmation_exits_3() {
    let tmp = tempfile::tempdir().unwrap();
    let cmd = MigrateCmd::fixture(tmp.path(), "out");
    let run = cmd.run(&["--interactive"], Some("2\n1\n1\nn\n"));
    assert_eq!(run.code, 3);
    assert!(!cmd.out.exists());
}

#[test]
fn missing_selection_exits_3_and_leaves_history_untouched() {
    let tmp = tempfile::tempdir().unwrap();
    let cmd = MigrateCmd::fixture(tmp.path(), "out");
    let history_before = fs::read(cmd.repo.join("history")).unwrap();
    let partial = tmp.path().join("partial.toml");
    fs::write(&partial, "\"Basic Servo\" = \"Servo\"\n").unwrap();
    let run = cmd.run(&["--select", &path_str(&partial)], None);
    assert_eq!(run.code, 3, "stderr: {}", run.stderr);
    assert!(run.stderr.contains("QTI Sensor"), "stderr: {}", run.stderr);
    assert!(!cmd.out.exists());
    assert_eq!(fs::read(cmd.repo.join("history")).unwrap(), history_before);
}

#[test]
fn selection_of_unknown_library_exits_3() {
    let tmp = tempfile::tempdir().unwrap();
    let cmd = MigrateCmd::fixture(tmp.path(), "out");
    let bad = tmp.path().join("bad.toml");
    fs::write(
        &bad,
        "\"Basic Servo\" = \"Imaginary\"\n\"QTI Sensor\" = \"QTRSensors\"\n\"LED\" = \"LED\"\n",
    )
    .unwrap();
    let run = cmd.run(&["--select", &path_str(&bad)], None);
    assert_eq!(run.code, 3);
    assert!(run.stderr.contains("Imaginary"));
}

#[test]
fn monitoring_fixture_migrates_with_inferred_signature() {
    let tmp = tempfile::tempdir().unwrap();
    let mut cmd = MigrateCmd::fixture(tmp.path(), "out");
    cmd.source = fixtures_dir().join("monitoring/monitoring.c");
    cmd.sketch = fixtures_dir().join("monitoring/sketch.fz");
    let select = fixtures_dir().join("monitoring/selections");
    let run = cmd.run(&["--select", &path_str(&select)], None);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    // the IR emitter resolves through the canonical-name substring rule
    assert!(run.stdout.contains("IRLED1WriteP1->2"), "{}", run.stdout);
    let generated = fs::read_to_string(cmd.out.join("monitoring.ino")).unwrap();
    assert!(generated.contains("#include <DHT.h>"));
    assert!(generated.contains("#include <IRremote.h>"));
    // dht_read is not registered: stub with arity-inferred signature
    assert!(generated.contains("long dht_read(long a1){"));
    let tasks = fs::read_to_string(cmd.out.join("monitoring.tasks.txt")).unwrap();
    assert!(tasks.contains("[InferredSignature]"));
    assert!(tasks.contains("dht_read"));
}

#[test]
fn dht_library_ranks_top_5_for_the_dht22_sensor() {
    let tmp = tempfile::tempdir().unwrap();
    let repo = repo_copy(tmp.path());
    let sketch = fixtures_dir().join("monitoring/sketch.fz");
    let run = run_cli(
        &[
            "rank",
            "--sketch",
            &path_str(&sketch),
            "--repo",
            &path_str(&repo),
            "--component",
            "DHT22 Sensor",
        ],
        None,
    );
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let dht_row = run
        .stdout
        .lines()
        .find(|l| l.contains(" DHT "))
        .unwrap_or_else(|| panic!("DHT not listed:\n{}", run.stdout));
    let position: usize = dht_row
        .trim_start()
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(position <= 5, "DHT ranked {position}:\n{}", run.stdout);
}

#[test]
fn multiple_sources_yield_one_output_per_file() {
    let tmp = tempfile::tempdir().unwrap();
    let cmd = MigrateCmd::fixture(tmp.path(), "out");
    let second = tmp.path().join("beeper.c");
    fs::write(
        &second,
        "int main(){\n  while (1){\n    freqout(4, 500, 3000);\n    pause(500);\n  }\n}\n",
    )
    .unwrap();
    let select = fixtures_dir().join("linefollower/selections");
    let mut args = cmd.args(&["--select", &path_str(&select)]);
    let pos = args.iter().position(|a| a == "--sketch").unwrap();
    args.insert(pos, path_str(&second));
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let run = run_cli(&refs, None);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert!(cmd.out.join("linefollower.ino").exists());
    assert!(cmd.out.join("beeper.ino").exists());
    let beeper = fs::read_to_string(cmd.out.join("beeper.ino")).unwrap();
    assert!(beeper.contains("void freqout(int pin, int msTime, int frequency){"));
}

#[test]
fn duplicate_source_stems_are_a_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    let cmd = MigrateCmd::fixture(tmp.path(), "out");
    let clone_dir = tmp.path().join("elsewhere");
    fs::create_dir_all(&clone_dir).unwrap();
    let clone = clone_dir.join("linefollower.c");
    fs::copy(&cmd.source, &clone).unwrap();
    let mut args = cmd.args(&["--auto"]);
    let pos = args.iter().position(|a| a == "--sketch").unwrap();
    args.insert(pos, path_str(&clone));
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let run = run_cli(&refs, None);
    assert_eq!(run.code, 1, "stderr: {}", run.stderr);
    assert!(!cmd.out.exists());
}

#[test]
fn rank_prints_tables_per_component() {
    let tmp = tempfile::tempdir().unwrap();
    let repo = repo_copy(tmp.path());
    let sketch = fixtures_dir().join("linefollower/sketch.fz");
    let run = run_cli(
        &[
            "rank",
            "--sketch",
            &path_str(&sketch),
            "--repo",
            &path_str(&repo),
        ],
        None,
    );
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    for component in ["Basic Servo", "QTI Sensor", "LED"] {
        assert!(run.stdout.contains(&format!("Component: {component}")));
    }
    assert!(run.stdout.contains("combined"));
}

#[test]
fn rank_top_k_1_yields_single_row() {
    let tmp = tempfile::tempdir().unwrap();
    let repo = repo_copy(tmp.path());
    let sketch = fixtures_dir().join("linefollower/sketch.fz");
    let run = run_cli(
        &[
            "rank",
            "--sketch",
            &path_str(&sketch),
            "--repo",
            &path_str(&repo),
            "--component",
            "LED",
            "--top-k",
            "1",
        ],
        None,
    );
    assert_eq!(run.code, 0);
    let rows = run
        .stdout
        .lines()
        .filter(|l| l.trim_start().starts_with("1  "))
        .count();
    assert_eq!(rows, 1);
    assert!(!run.stdout.contains("\n   2  "));
}

#[test]
fn rank_unknown_component_exits_3_listing_components() {
    let tmp = tempfile::tempdir().unwrap();
    let repo = repo_copy(tmp.path());
    let sketch = fixtures_dir().join("linefollower/sketch.fz");
    let run = run_cli(
        &[
            "rank",
            "--sketch",
            &path_str(&sketch),
            "--repo",
            &path_str(&repo),
            "--component",
            "flux capacitor",
        ],
        None,
    );
    assert_eq!(run.code, 3);
    assert!(run.stderr.contains("Basic Servo"), "stderr: {}", run.stderr);
}

#[test]
fn rank_is_read_only() {
    let tmp = tempfile::tempdir().unwrap();
    let repo = repo_copy(tmp.path());
    let sketch = fixtures_dir().join("linefollower/sketch.fz");
    let before = fs::read(repo.join("history")).unwrap();
    let run = run_cli(
        &[
            "rank",
            "--sketch",
            &path_str(&sketch),
            "--repo",
            &path_str(&repo),
        ],
        None,
    );
    assert_eq!(run.code, 0);
    assert_eq!(fs::read(repo.join("history")).unwrap(), before);
}

#[test]
fn repo_env_var_is_honored() {
    let tmp = tempfile::tempdir().unwrap();
    let repo = repo_copy(tmp.path());
    let sketch = fixtures_dir().join("linefollower/sketch.fz");
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_boardport"))
        .args(["rank", "--sketch", &path_str(&sketch)])
        .env("BOARDPORT_REPO", &repo)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn history_biases_subsequent_ranking() {
    let tmp = tempfile::tempdir().unwrap();
    let cmd = MigrateCmd::fixture(tmp.path(), "out");
    let sketch = fixtures_dir().join("linefollower/sketch.fz");
    let rank_args = [
        "rank",
        "--sketch",
        &path_str(&sketch),
        "--repo",
        &path_str(&cmd.repo),
        "--component",
        "Basic Servo",
        "--top-k",
        "1",
    ];
    let before = run_cli(&rank_args, None);
    assert!(before.stdout.contains("Boards"), "{}", before.stdout);
    // migrate selects Servo; the next ranking must put it first
    let select = fixtures_dir().join("linefollower/selections");
    let run = cmd.run(&["--select", &path_str(&select)], None);
    assert_eq!(run.code, 0);
    let after = run_cli(&rank_args, None);
    assert!(after.stdout.contains("Servo"), "{}", after.stdout);
    assert!(!after.stdout.contains("Boards"), "{}", after.stdout);
}
