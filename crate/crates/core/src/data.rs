//! Line-oriented fixture format: `<kind> <args...> = <payload> @ <citation>`.
//! Blank lines and lines starting with `#` are ignored.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("data line {line}: {message}")]
pub struct DataError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DataEntry {
    pub kind: String,
    pub args: Vec<String>,
    pub payload: String,
    pub citation: String,
    pub line: usize,
}

impl DataEntry {
    /// Argument `k` as an integer.
    pub fn int_arg(&self, k: usize) -> Result<usize, DataError> {
        self.args.get(k).and_then(|a| a.parse().ok()).ok_or_else(|| DataError {
            line: self.line,
            message: format!("argument {} of `{}` is not an integer", k + 1, self.kind),
        })
    }

    pub fn matches(&self, kind: &str, args: &[&str]) -> bool {
        self.kind == kind && self.args.len() == args.len() && self.args.iter().zip(args).all(|(a, b)| a == b)
    }
}

pub fn parse_entries(text: &str) -> Result<Vec<DataEntry>, DataError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let err = |m: &str| DataError {
            line,
            message: m.to_string(),
        };
        let (head, rest) = t.split_once('=').ok_or_else(|| err("missing `=`"))?;
        let (payload, citation) = rest.rsplit_once('@').ok_or_else(|| err("missing `@ citation`"))?;
        let mut words = head.split_whitespace();
        let kind = words.next().ok_or_else(|| err("missing kind"))?.to_string();
        out.push(DataEntry {
            kind,
            args: words.map(str::to_string).collect(),
            payload: payload.trim().to_string(),
            citation: citation.trim().to_string(),
            line,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_fields() {
        let e = parse_entries("# c\n\nlambda 2 1 = r^-3 @ Somewhere\n").unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].kind, "lambda");
        assert_eq!(e[0].args, vec!["2", "1"]);
        assert_eq!(e[0].payload, "r^-3");
        assert_eq!(e[0].citation, "Somewhere");
        assert_eq!(e[0].line, 3);
        assert_eq!(e[0].int_arg(1).unwrap(), 1);
        assert!(parse_entries("lambda 2 1 r").is_err());
    }
}
