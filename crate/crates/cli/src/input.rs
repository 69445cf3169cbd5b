use ncdist_core::{Graph, Path};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("entry {index}: '{token}' is not a number")]
    NotANumber { index: usize, token: String },
    #[error("{0}")]
    Invalid(#[from] ncdist_core::Error),
    #[error("matrix row {row}, column {col}: '{token}' is not a number")]
    MatrixEntry { row: usize, col: usize, token: String },
    #[error("matrix file is empty")]
    EmptyMatrix,
    #[error("pair must be two vertices 'i,j', got '{0}'")]
    Pair(String),
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("{path}, line {line}: {source}")]
    Line {
        path: String,
        line: usize,
        #[source]
        source: Box<InputError>,
    },
    #[error("{path} contains no weight vectors")]
    EmptyBatch { path: String },
}

fn tokens(text: &str) -> impl Iterator<Item = &str> {
    text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty())
}

/// Comma- or whitespace-separated weights `d_1, ..., d_{n-1}`.
pub fn parse_weights(text: &str) -> Result<Path, InputError> {
    let d = tokens(text)
        .enumerate()
        .map(|(k, t)| t.parse::<f64>().map_err(|_| InputError::NotANumber { index: k + 1, token: t.into() }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Path::new(d)?)
}

/// `n` lines of `n` numbers; symmetric to 1e-12, zero diagonal.
pub fn parse_matrix(text: &str) -> Result<Graph, InputError> {
    let rows = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, line)| {
            tokens(line)
                .enumerate()
                .map(|(j, t)| {
                    t.parse::<f64>().map_err(|_| InputError::MatrixEntry { row: i + 1, col: j + 1, token: t.into() })
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if rows.is_empty() {
        return Err(InputError::EmptyMatrix);
    }
    Ok(Graph::from_rows(&rows, 1e-12)?)
}

/// 1-based `i,j`, returned zero-based.
pub fn parse_pair(text: &str) -> Result<(usize, usize), InputError> {
    let bad = || InputError::Pair(text.into());
    let parts: Vec<&str> = tokens(text).collect();
    let [i, j] = parts.as_slice() else { return Err(bad()) };
    let i: usize = i.parse().map_err(|_| bad())?;
    let j: usize = j.parse().map_err(|_| bad())?;
    if i == 0 || j == 0 {
        return Err(bad());
    }
    Ok((i - 1, j - 1))
}

pub fn read_file(path: &str) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError::Io { path: path.into(), reason: e.to_string() })
}

/// One weight vector per nonblank line.
pub fn parse_batch(path: &str, text: &str) -> Result<Vec<Path>, InputError> {
    let paths = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, l)| {
            parse_weights(l).map_err(|e| InputError::Line { path: path.into(), line: k + 1, source: Box::new(e) })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if paths.is_empty() {
        return Err(InputError::EmptyBatch { path: path.into() });
    }
    Ok(paths)
}
