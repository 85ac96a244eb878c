//! Library side of the `nevai` command-line tool.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;

use std::time::Instant;

use clap::Parser;

use args::{Cli, Command};
use error::{CliError, CliResult, EXIT_OK, EXIT_USAGE};
use output::{Outputs, RunManifest};

/// Thread count from the flag (or `NEVAI_THREADS`), else all cores.
pub fn resolve_threads(requested: Option<usize>) -> CliResult<usize> {
    match requested {
        Some(0) => Err(CliError::Usage("--threads must be >= 1".into())),
        Some(t) => Ok(t),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Run `f` inside a dedicated pool of `threads` workers.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> CliResult<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} threads: {e}")))?;
    Ok(pool.install(f))
}

fn dispatch(command: &Command, out: &mut Outputs, manifest: &mut RunManifest) -> CliResult<()> {
    match command {
        Command::Nodes(a) => commands::cmd_nodes(a, out, manifest).map(|_| ()),
        Command::Eval(a) => {
            let ev = commands::cmd_eval(a, out, manifest)?;
            let r = ev.report()?;
            println!("e_max_re={:.6e} e_max_im={:.6e}", r.e_max_re, r.e_max_im);
            Ok(())
        }
        Command::Table(a) => {
            for (n, r) in commands::cmd_table(a, out, manifest)? {
                println!("n={n} e_max_re={:.6e} e_mean_re={:.6e} e_max_im={:.6e} e_mean_im={:.6e}", r.e_max_re, r.e_mean_re, r.e_max_im, r.e_mean_im);
            }
            Ok(())
        }
        Command::Contour(a) => {
            let c = commands::cmd_contour(a, out, manifest)?;
            println!("max={:.6e} mean={:.6e} ms={:.6e}", c.errors.max, c.errors.mean, c.errors.ms);
            Ok(())
        }
        Command::Image(a) => {
            let r = commands::cmd_image(a, out, manifest)?;
            for (name, q) in [("amplitude", r.amplitude), ("phase", r.phase)] {
                println!("{name}: ssim={:.4} psnr_db={:.2} rmse={:.4}", q.ssim, q.psnr_db, q.rmse);
            }
            Ok(())
        }
        Command::Rate(a) => {
            let r = commands::cmd_rate(a, out, manifest)?;
            for (n, e) in r.ns.iter().zip(&r.sups) {
                println!("n={n} sup={e:.6e}");
            }
            println!("exponent={:.4} log_factor_detected={}", r.estimate.exponent, r.estimate.log_factor_detected);
            Ok(())
        }
    }
}

/// Execute a parsed command line; the manifest is written whatever the outcome.
pub fn execute(cli: &Cli, argv: Vec<String>) -> i32 {
    let start = Instant::now();
    let mut out = Outputs::new(&cli.out_dir);
    let mut manifest = RunManifest::new(cli.command.name(), argv);
    let result = resolve_threads(cli.threads).and_then(|threads| {
        manifest.threads = threads;
        out.prepare()?;
        with_threads(threads, || dispatch(&cli.command, &mut out, &mut manifest))?
    });
    finish(result, out, manifest, start)
}

fn finish(result: CliResult<()>, out: Outputs, mut manifest: RunManifest, start: Instant) -> i32 {
    let code = match &result {
        Ok(()) => EXIT_OK,
        Err(e) => e.exit_code(),
    };
    manifest.outputs = out.written().iter().map(|p| p.display().to_string()).collect();
    manifest.wall_clock_seconds = start.elapsed().as_secs_f64();
    manifest.exit_code = code;
    manifest.status = if code == EXIT_OK { "ok".into() } else { "error".into() };
    if let Err(e) = &result {
        manifest.error = Some(e.to_string());
        eprintln!("error: {e}");
    }
    if let Err(e) = out.write_manifest(&manifest) {
        eprintln!("error: {e}");
        return if code == EXIT_OK { e.exit_code() } else { code };
    }
    code
}

/// Parse and run; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    match Cli::try_parse_from(&argv) {
        Ok(cli) => execute(&cli, argv),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}
