//! Command-line front end: `run`, `render`, `export` and `bench`.

mod bench;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::assets::DirAssets;
use crate::codegen::{generate_template, package_archive, serialize_scene};
use crate::interp::{run_source, EvalOutcome, ScriptError};
use crate::raster::{render, RenderOptions, DEFAULT_HEIGHT, DEFAULT_WIDTH, MAX_DIMENSION};

pub use bench::{bench_one, bench_script, run_bench, BenchReport, BenchRun, FrameLoop, DEFAULT_BENCH_COUNTS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SYNTAX: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "scenelua", version, about = "Interpret, render and export scene scripts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ScriptArgs {
    /// Script to interpret.
    script: PathBuf,
    /// Directory DrawObject names resolve against (default: the script's directory).
    #[arg(long, value_name = "DIR")]
    assets_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SizeArgs {
    #[arg(long, default_value_t = DEFAULT_WIDTH, value_parser = clap::value_parser!(u32).range(1..=MAX_DIMENSION as i64))]
    width: u32,
    #[arg(long, default_value_t = DEFAULT_HEIGHT, value_parser = clap::value_parser!(u32).range(1..=MAX_DIMENSION as i64))]
    height: u32,
    /// Rasterizer worker threads (default: all cores).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=1024))]
    threads: Option<u32>,
}

impl SizeArgs {
    fn options(&self) -> RenderOptions {
        RenderOptions {
            width: self.width,
            height: self.height,
            threads: self.threads.map(|t| t as usize),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Interpret a script and print its console output.
    Run {
        #[command(flatten)]
        script: ScriptArgs,
        /// Write the scene document here.
        #[arg(long, value_name = "PATH")]
        scene_out: Option<PathBuf>,
    },
    /// Render a script's scene to a binary PPM image.
    Render {
        #[command(flatten)]
        script: ScriptArgs,
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        #[command(flatten)]
        size: SizeArgs,
    },
    /// Export a script's scene as a zipped standalone web page.
    Export {
        #[command(flatten)]
        script: ScriptArgs,
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Time parse, evaluation and two rendered frames for N-sphere scenes.
    Bench {
        /// Sphere counts to measure.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_BENCH_COUNTS,
              value_parser = clap::value_parser!(u32).range(1..))]
        counts: Vec<u32>,
        /// Print the machine-readable report instead of the table.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        size: SizeArgs,
    },
}

/// Why a command stopped; each maps to one exit code.
enum Failure {
    Script(ScriptError),
    Io(String),
}

impl Failure {
    fn io(path: &Path, e: std::io::Error) -> Failure {
        Failure::Io(format!("{}: {e}", path.display()))
    }
}

/// Run the command line and return the process exit code.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = !e.use_stderr();
            let _ = if informational {
                write!(stdout, "{}", e.render())
            } else {
                write!(stderr, "{}", e.render())
            };
            return if informational { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let result = match cli.command {
        Command::Run { script, scene_out } => cmd_run(&script, scene_out.as_deref(), stdout),
        Command::Render { script, out, size } => cmd_render(&script, &out, &size, stdout),
        Command::Export { script, out } => cmd_export(&script, &out, stdout),
        Command::Bench { counts, json, size } => cmd_bench(&counts, json, &size, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Script(e)) => {
            let _ = writeln!(stderr, "{e}");
            match e {
                ScriptError::Syntax(_) => EXIT_SYNTAX,
                ScriptError::Runtime { .. } => EXIT_RUNTIME,
            }
        }
        Err(Failure::Io(message)) => {
            let _ = writeln!(stderr, "error: {message}");
            EXIT_IO
        }
    }
}

fn print_console(lines: &[String], stdout: &mut dyn Write) {
    for line in lines {
        let _ = writeln!(stdout, "{line}");
    }
}

/// Read, parse and evaluate the script. Console output is printed even
/// when evaluation fails part way.
fn interpret(args: &ScriptArgs, stdout: &mut dyn Write) -> Result<EvalOutcome, Failure> {
    let source = std::fs::read(&args.script).map_err(|e| Failure::io(&args.script, e))?;
    let source = String::from_utf8(source)
        .map_err(|_| Failure::Io(format!("{}: script is not valid UTF-8", args.script.display())))?;
    let root = match &args.assets_dir {
        Some(dir) => dir.clone(),
        None => args
            .script
            .parent()
            .filter(|p| !p.as_os_str().is_empty())
            .map_or_else(|| PathBuf::from("."), Path::to_path_buf),
    };
    let assets = DirAssets::new(root);
    match run_source(&source, &assets) {
        Ok(outcome) => {
            print_console(&outcome.console, stdout);
            Ok(outcome)
        }
        Err(e) => {
            print_console(e.console(), stdout);
            Err(Failure::Script(e))
        }
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, bytes).map_err(|e| Failure::io(path, e))
}

fn cmd_run(args: &ScriptArgs, scene_out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Failure> {
    let outcome = interpret(args, stdout)?;
    if let Some(path) = scene_out {
        let mut text = serialize_scene(&outcome.scene);
        text.push('\n');
        write_file(path, text.as_bytes())?;
    }
    Ok(())
}

fn cmd_render(args: &ScriptArgs, out: &Path, size: &SizeArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let outcome = interpret(args, stdout)?;
    let image = render(&outcome.scene, &size.options()).map_err(|e| Failure::Io(e.to_string()))?;
    write_file(out, &image.to_ppm())
}

fn cmd_export(args: &ScriptArgs, out: &Path, stdout: &mut dyn Write) -> Result<(), Failure> {
    let outcome = interpret(args, stdout)?;
    write_file(out, &package_archive(&generate_template(&outcome.scene)))
}

fn cmd_bench(counts: &[u32], json: bool, size: &SizeArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let counts: Vec<usize> = counts.iter().map(|&c| c as usize).collect();
    let report = run_bench(&counts, &size.options()).map_err(|e| Failure::Io(e.to_string()))?;
    let text = if json { report.to_json() } else { report.to_table() };
    let _ = writeln!(stdout, "{text}");
    Ok(())
}
