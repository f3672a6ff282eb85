use std::fmt;
use std::io::Read;
use std::path::Path;

use pooldesign_core::construct::{builtin, Builtin};
use pooldesign_core::{BinaryCode, Error, QaryCode};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Format(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Format(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Format(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Format { .. } => CliError::Format(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub enum Code {
    Binary(BinaryCode),
    Qary(QaryCode),
}

fn read_source(source: Option<&str>) -> CliResult<(String, String)> {
    match source {
        None | Some("-") => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Format(format!("<stdin>: {e}")))?;
            Ok((text, "<stdin>".to_owned()))
        }
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
            Ok((text, path.to_owned()))
        }
    }
}

/// Reads a code from a file path, standard input, or a built-in name (used
/// when no file of that name exists). The header decides the kind: `N t` is
/// binary, `N t q` is q-ary.
pub fn load_code(source: Option<&str>) -> CliResult<Code> {
    if let Some(name) = source {
        let name = name.strip_prefix("builtin:").unwrap_or(name);
        if !Path::new(name).exists() {
            if let Ok(code) = builtin(name) {
                return Ok(match code {
                    Builtin::Binary(x) => Code::Binary(x),
                    Builtin::Qary(x) => Code::Qary(x),
                });
            }
        }
    }
    let (text, origin) = read_source(source)?;
    let header_fields = text
        .lines()
        .next()
        .map_or(0, |l| l.split_whitespace().count());
    let parsed = if header_fields == 3 {
        text.parse().map(Code::Qary)
    } else {
        text.parse().map(Code::Binary)
    };
    parsed.map_err(|e| CliError::Format(format!("{origin}: {e}")))
}

pub fn load_binary(source: Option<&str>) -> CliResult<BinaryCode> {
    match load_code(source)? {
        Code::Binary(x) => Ok(x),
        Code::Qary(_) => Err(CliError::Format(
            "expected a binary code, got a q-ary code".into(),
        )),
    }
}

pub fn load_qary(source: Option<&str>) -> CliResult<QaryCode> {
    match load_code(source)? {
        Code::Qary(x) => Ok(x),
        Code::Binary(_) => Err(CliError::Format(
            "expected a q-ary code, got a binary code".into(),
        )),
    }
}

pub fn require(value: Option<usize>, flag: &str) -> CliResult<usize> {
    value.ok_or_else(|| CliError::Usage(format!("missing --{flag}")))
}
