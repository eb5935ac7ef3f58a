//! Formula input: DIMACS or infix, from a file, stdin or an inline string.

use std::io::Read;
use std::path::Path;

use groversat_core::formula::{CnfFormula, FormulaError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Syntax {
    Dimacs,
    Infix,
}

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{origin}: {source}")]
    Parse {
        origin: String,
        source: FormulaError,
    },
}

/// DIMACS if any non-comment line is a `p` header, infix otherwise.
pub fn detect(text: &str) -> Syntax {
    let dimacs = text
        .lines()
        .map(str::trim_start)
        .filter(|l| !l.is_empty() && !l.starts_with('c'))
        .any(|l| l.split_whitespace().next() == Some("p"));
    if dimacs {
        Syntax::Dimacs
    } else {
        Syntax::Infix
    }
}

pub fn parse_text(text: &str, origin: &str) -> Result<CnfFormula, InputError> {
    let parsed = match detect(text) {
        Syntax::Dimacs => CnfFormula::parse_dimacs(text),
        Syntax::Infix => CnfFormula::parse_infix(text.trim()),
    };
    parsed.map_err(|source| InputError::Parse {
        origin: origin.to_string(),
        source,
    })
}

/// Reads `path` (`-` for stdin) and parses it.
pub fn load(path: &Path) -> Result<CnfFormula, InputError> {
    let display = path.display().to_string();
    let io = |source| InputError::Io {
        path: display.clone(),
        source,
    };
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(io)?
    };
    parse_text(&text, &display)
}
