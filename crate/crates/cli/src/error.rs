use std::fmt;

/// A 1-based position in the spec file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Loc {
    pub line: usize,
    pub col: usize,
}

impl Loc {
    pub fn of_offset(text: &str, offset: usize) -> Loc {
        let before = &text[..offset.min(text.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
        Loc { line, col }
    }
}

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Parse {
        loc: Option<Loc>,
        message: String,
    },
    UndeclaredVariable {
        loc: Loc,
        name: String,
    },
    Degree {
        loc: Loc,
        message: String,
    },
    Invalid {
        loc: Option<Loc>,
        message: String,
    },
    MissingSection(String),
    /// An engine error raised while running a check.
    Engine(lbialg::Error),
    Io(String),
}

impl CliError {
    /// 2 for anything wrong with the input, 3 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 3,
            CliError::Engine(lbialg::Error::ChartMismatch) => 3,
            _ => 2,
        }
    }
}

fn at(loc: &Option<Loc>) -> String {
    loc.map(|l| format!("{l}: ")).unwrap_or_default()
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { loc, message } => write!(f, "{}parse error: {message}", at(loc)),
            CliError::UndeclaredVariable { loc, name } => write!(f, "{loc}: undeclared variable `{name}`"),
            CliError::Degree { loc, message } => write!(f, "{loc}: degree error: {message}"),
            CliError::Invalid { loc, message } => write!(f, "{}invalid: {message}", at(loc)),
            CliError::MissingSection(s) => write!(f, "missing section: the file declares no {s} entries"),
            CliError::Engine(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<lbialg::Error> for CliError {
    fn from(e: lbialg::Error) -> Self {
        CliError::Engine(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
