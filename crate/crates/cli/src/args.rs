use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "boardport",
    version,
    about = "Migrates embedded robotic sketches between hardware platforms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full migration: analyse sources, map pins, select libraries,
    /// generate target code and a task list.
    Migrate(MigrateArgs),
    /// Print ranked candidate libraries per mapped component (read-only).
    Rank(RankArgs),
}

#[derive(Debug, Args)]
pub struct MigrateArgs {
    /// Source sketch file(s) on the source platform
    #[arg(long = "source", required = true, num_args = 1..)]
    pub sources: Vec<PathBuf>,

    /// Sketch XML describing the target hardware architecture
    #[arg(long)]
    pub sketch: PathBuf,

    /// Target platform repository directory
    #[arg(long, env = "BOARDPORT_REPO")]
    pub repo: PathBuf,

    /// Target platform identifier (must match the repository)
    #[arg(long)]
    pub target: String,

    /// Output directory for generated files
    #[arg(long)]
    pub out: PathBuf,

    /// Take library selections from a file instead of prompting
    #[arg(long = "select", group = "selection")]
    pub select_file: Option<PathBuf>,

    /// Prompt for a library per component (default)
    #[arg(long, group = "selection")]
    pub interactive: bool,

    /// Pick the top-ranked library for every component, no prompting
    #[arg(long, group = "selection")]
    pub auto: bool,

    /// Entries shown per ranked list
    #[arg(long = "top-k", default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    pub top_k: u32,

    /// Weight of the historical-selection term in the combined score
    #[arg(long = "history-weight", default_value_t = 1.0)]
    pub history_weight: f64,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    /// Sketch XML describing the target hardware architecture
    #[arg(long)]
    pub sketch: PathBuf,

    /// Target platform repository directory
    #[arg(long, env = "BOARDPORT_REPO")]
    pub repo: PathBuf,

    /// Only rank the component with this canonical name
    #[arg(long)]
    pub component: Option<String>,

    /// Entries shown per ranked list
    #[arg(long = "top-k", default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    pub top_k: u32,

    /// Weight of the historical-selection term in the combined score
    #[arg(long = "history-weight", default_value_t = 1.0)]
    pub history_weight: f64,
}
