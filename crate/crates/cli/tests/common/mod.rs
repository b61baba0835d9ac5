//! Helpers shared by the CLI integration and acceptance suites: fixture
//! paths, hermetic repository copies and binary invocation.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .canonicalize()
        .expect("fixtures directory exists")
}

pub fn copy_dir(src: &Path, dst: &Path) {
    fs::create_dir_all(dst).unwrap();
    for entry in fs::read_dir(src).unwrap() {
        let entry = entry.unwrap();
        let target = dst.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            copy_dir(&entry.path(), &target);
        } else {
            fs::copy(entry.path(), &target).unwrap();
        }
    }
}

/// Copies the fixture repository into `tmp` so history updates stay local.
pub fn repo_copy(tmp: &Path) -> PathBuf {
    let dst = tmp.join("repo");
    copy_dir(&fixtures_dir().join("repo"), &dst);
    dst
}

pub struct CliRun {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_cli(args: &[&str], stdin: Option<&str>) -> CliRun {
    let mut command = Command::new(env!("CARGO_BIN_EXE_boardport"));
    command
        .args(args)
        .env_remove("BOARDPORT_REPO")
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    command.stdin(if stdin.is_some() {
        Stdio::piped()
    } else {
        Stdio::null()
    });
    let mut child = command.spawn().expect("binary spawns");
    if let Some(input) = stdin {
        child
            .stdin
            .take()
            .expect("stdin piped")
            .write_all(input.as_bytes())
            .expect("stdin written");
    }
    let output = child.wait_with_output().expect("binary runs");
    CliRun {
        code: output.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&output.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&output.stderr).into_owned(),
    }
}

pub fn path_str(path: &Path) -> String {
    path.to_string_lossy().into_owned()
}

/// File name -> content for every file in a directory (non-recursive).
pub fn dir_contents(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    for entry in fs::read_dir(dir).unwrap() {
        let entry = entry.unwrap();
        if entry.file_type().unwrap().is_file() {
            out.insert(
                entry.file_name().to_string_lossy().into_owned(),
                fs::read(entry.path()).unwrap(),
            );
        }
    }
    out
}

pub struct MigrateCmd {
    pub source: PathBuf,
    pub sketch: PathBuf,
    pub repo: PathBuf,
    pub out: PathBuf,
}

impl MigrateCmd {
    /// Standard line-follower invocation rooted at a hermetic repo copy.
    pub fn fixture(tmp: &Path, out_name: &str) -> Self {
        MigrateCmd {
            source: fixtures_dir().join("linefollower/linefollower.c"),
            sketch: fixtures_dir().join("linefollower/sketch.fz"),
            repo: repo_copy(tmp),
            out: tmp.join(out_name),
        }
    }

    pub fn args<'a>(&'a self, selection: &'a [&'a str]) -> Vec<String> {
        let mut args = vec![
            "migrate".to_string(),
            "--source".to_string(),
            path_str(&self.source),
            "--sketch".to_string(),
            path_str(&self.sketch),
            "--repo".to_string(),
            path_str(&self.repo),
            "--target".to_string(),
            "arduino_uno".to_string(),
            "--out".to_string(),
            path_str(&self.out),
        ];
        args.extend(selection.iter().map(|s| s.to_string()));
        args
    }

    pub fn run(&self, selection: &[&str], stdin: Option<&str>) -> CliRun {
        let args = self.args(selection);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        run_cli(&refs, stdin)
    }
}
