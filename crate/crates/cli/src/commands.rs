use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use hmreq_core::{check as check_source, export as export_json, load_project, Lexicon, Quartile, SourceDocument, ValueSpace};
use hmreq_service::AppState;
use rayon::prelude::*;

use crate::Format;

/// Process outcome: 0 success, 1 diagnostics with errors, 2 usage or I/O failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    Diagnostics = 1,
    Usage = 2,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

pub fn load_lexicon(path: Option<&Path>) -> Result<Lexicon, String> {
    let Some(path) = path else {
        return Ok(Lexicon::seed());
    };
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Lexicon::load(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn check(paths: &[std::path::PathBuf], lexicon: &Lexicon, format: Format) -> Status {
    let mut sources = Vec::with_capacity(paths.len());
    for p in paths {
        match SourceDocument::from_path(p) {
            Ok(s) => sources.push(s),
            Err(e) => {
                eprintln!("hmreq: {}: {e}", p.display());
                return Status::Usage;
            }
        }
    }
    let results: Vec<_> = sources.par_iter().map(|src| check_source(src, lexicon)).collect();

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut errors = false;
    for (src, parsed) in sources.iter().zip(&results) {
        errors |= parsed.has_errors();
        for d in &parsed.diagnostics {
            let line = match format {
                Format::Text => d.render(src),
                Format::Machine => d.render_machine(src),
            };
            let _ = writeln!(out, "{line}");
        }
    }
    if errors {
        Status::Diagnostics
    } else {
        Status::Success
    }
}

pub fn export(path: &Path, out: Option<&Path>, lexicon: &Lexicon) -> Status {
    let src = match SourceDocument::from_path(path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("hmreq: {}: {e}", path.display());
            return Status::Usage;
        }
    };
    let parsed = check_source(&src, lexicon);
    let json = match export_json(&parsed) {
        Ok(json) => json,
        Err(blocked) => {
            for d in parsed.diagnostics.iter().filter(|d| d.is_error()) {
                eprintln!("{}", d.render(&src));
            }
            eprintln!("hmreq: not exported: {blocked}");
            return Status::Diagnostics;
        }
    };
    match out {
        Some(file) => {
            if let Err(e) = std::fs::write(file, format!("{json}\n")) {
                eprintln!("hmreq: {}: {e}", file.display());
                return Status::Usage;
            }
        }
        None => {
            let _ = writeln!(std::io::stdout().lock(), "{json}");
        }
    }
    Status::Success
}

pub fn conflicts(path: &Path, min: Quartile, lexicon: &Lexicon) -> Status {
    let space = ValueSpace::builtin();
    let project = match load_project(path, lexicon, space) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("hmreq: {e}");
            return Status::Usage;
        }
    };
    let mut reports = Vec::new();
    for r in &project.document.requirements {
        match project.conflicts(&r.id, space) {
            Ok(report) => {
                if let Some(avg) = report.average {
                    reports.push((r.id.as_str(), avg, report));
                }
            }
            Err(e) => {
                eprintln!("hmreq: {}: {}: {e}", path.display(), r.id);
                return Status::Usage;
            }
        }
    }
    // stable: equal averages keep document order
    reports.sort_by(|a, b| b.1.total_cmp(&a.1));

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for (id, avg, report) in &reports {
        let rows: Vec<_> = report.pairs.iter().filter(|p| p.quartile >= min).collect();
        if rows.is_empty() {
            continue;
        }
        for p in rows {
            let _ = writeln!(
                out,
                "{id} {}↔{} {}↔{} {:.2} {}",
                p.stakeholder_a, p.stakeholder_b, p.value_a, p.value_b, p.score, p.quartile
            );
        }
        let _ = writeln!(out, "{id} average {avg:.2}");
    }
    Status::Success
}

pub fn serve(path: &Path, bind: &str, port: u16, lexicon: Lexicon) -> Status {
    let state = match AppState::open(path, lexicon) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("hmreq: {e}");
            return Status::Usage;
        }
    };
    let runtime = match tokio::runtime::Runtime::new() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("hmreq: {e}");
            return Status::Usage;
        }
    };
    runtime.block_on(async move {
        let listener = match tokio::net::TcpListener::bind((bind, port)).await {
            Ok(l) => l,
            Err(e) => {
                eprintln!("hmreq: cannot bind {bind}:{port}: {e}");
                return Status::Usage;
            }
        };
        match listener.local_addr() {
            Ok(addr) => eprintln!("hmreq: serving {} on http://{addr}", path.display()),
            Err(_) => eprintln!("hmreq: serving {}", path.display()),
        }
        match hmreq_service::serve(listener, state, shutdown_signal()).await {
            Ok(()) => {
                eprintln!("hmreq: stopped");
                Status::Success
            }
            Err(e) => {
                eprintln!("hmreq: {e}");
                Status::Usage
            }
        }
    })
}

async fn shutdown_signal() {
    #[cfg(unix)]
    {
        use tokio::signal::unix::{signal, SignalKind};
        let mut term = signal(SignalKind::terminate()).expect("SIGTERM handler");
        tokio::select! {
            _ = tokio::signal::ctrl_c() => {}
            _ = term.recv() => {}
        }
    }
    #[cfg(not(unix))]
    {
        let _ = tokio::signal::ctrl_c().await;
    }
}
