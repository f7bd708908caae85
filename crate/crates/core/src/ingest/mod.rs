//! Interaction records, bipartite post–user layers and their projection
//! onto a user–user multilayer network.

mod bipartite;
mod multiplex;

use std::fmt;
use std::io::Read;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bipartite::{
    assemble_multilayer, build_bipartite, build_network, project, BipartiteLayer, ProjectionOptions,
    UserGraph,
};
pub use multiplex::{parse_multiplex_edges, MultiplexLoad};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Comment,
    Like,
}

impl Action {
    pub const ALL: [Action; 2] = [Action::Comment, Action::Like];

    pub fn as_str(self) -> &'static str {
        match self {
            Action::Comment => "comment",
            Action::Like => "like",
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Action {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "comment" => Ok(Action::Comment),
            "like" => Ok(Action::Like),
            _ => Err(s.to_string()),
        }
    }
}

/// One user action on one post.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InteractionRecord {
    pub post_id: String,
    pub user_id: String,
    pub action: Action,
}

impl InteractionRecord {
    pub fn new(post_id: impl Into<String>, user_id: impl Into<String>, action: Action) -> Self {
        InteractionRecord {
            post_id: post_id.into(),
            user_id: user_id.into(),
            action,
        }
    }
}

const HEADER: [&str; 3] = ["post_id", "user_id", "action"];

/// Parses the `post_id,user_id,action` CSV format. The header row is
/// mandatory; duplicate rows are kept (deduplication happens when building
/// bipartite layers).
pub fn parse_interactions<R: Read>(source: R) -> Result<Vec<InteractionRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(source);
    let mut out = Vec::new();
    let mut row = csv::StringRecord::new();
    let mut seen_header = false;
    loop {
        let more = reader.read_record(&mut row).map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            Error::parse(line, format!("unreadable CSV row: {e}"))
        })?;
        if !more {
            break;
        }
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        if !seen_header {
            let got: Vec<String> = row.iter().map(|c| c.trim().to_ascii_lowercase()).collect();
            if got != HEADER {
                return Err(Error::parse(
                    line,
                    format!(
                        "expected header 'post_id,user_id,action', found '{}'",
                        row.iter().collect::<Vec<_>>().join(",")
                    ),
                ));
            }
            seen_header = true;
            continue;
        }
        if row.len() != 3 {
            return Err(Error::parse(
                line,
                format!("expected 3 columns, found {}", row.len()),
            ));
        }
        let (post, user, action) = (row[0].trim(), row[1].trim(), row[2].trim());
        if post.is_empty() || user.is_empty() {
            return Err(Error::parse(line, "empty post_id or user_id"));
        }
        let action = action
            .parse::<Action>()
            .map_err(|value| Error::UnknownAction { line, value })?;
        out.push(InteractionRecord::new(post, user, action));
    }
    if !seen_header {
        return Err(Error::parse(1, "missing header row"));
    }
    Ok(out)
}

/// Writes records in the canonical CSV format (LF line endings).
pub fn write_interactions<W: std::io::Write>(records: &[InteractionRecord], w: W) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    let csv_err = |e: csv::Error| Error::InvalidArgument(format!("csv write: {e}"));
    wtr.write_record(HEADER).map_err(csv_err)?;
    for r in records {
        wtr.write_record([r.post_id.as_str(), r.user_id.as_str(), r.action.as_str()])
            .map_err(csv_err)?;
    }
    wtr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_row() {
        let recs = parse_interactions("post_id,user_id,action\np1,A,like\n".as_bytes()).unwrap();
        assert_eq!(recs, vec![InteractionRecord::new("p1", "A", Action::Like)]);
    }

    #[test]
    fn unknown_action_names_value_and_line() {
        let err = parse_interactions("post_id,user_id,action\np1,A,share\n".as_bytes()).unwrap_err();
        assert_eq!(err.to_string(), "unknown action 'share' at line 2");
    }

    #[test]
    fn duplicates_are_kept() {
        let recs = parse_interactions("post_id,user_id,action\np1,A,like\np1,A,like\n".as_bytes()).unwrap();
        assert_eq!(recs.len(), 2);
    }

    #[test]
    fn crlf_and_case() {
        let recs =
            parse_interactions("post_id,user_id,action\r\np1,A,LIKE\r\np2,B,Comment\r\n".as_bytes()).unwrap();
        assert_eq!(recs[0].action, Action::Like);
        assert_eq!(recs[1], InteractionRecord::new("p2", "B", Action::Comment));
    }

    #[test]
    fn malformed_rows() {
        let err = parse_interactions("post_id,user_id,action\np1,A\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_interactions("p1,A,like\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        assert!(parse_interactions("".as_bytes()).is_err());
        assert!(parse_interactions("post_id,user_id,action\n,A,like\n".as_bytes()).is_err());
    }

    #[test]
    fn write_then_parse() {
        let recs = vec![
            InteractionRecord::new("p,1", "A", Action::Like),
            InteractionRecord::new("p2", "B", Action::Comment),
        ];
        let mut buf = Vec::new();
        write_interactions(&recs, &mut buf).unwrap();
        assert_eq!(parse_interactions(&buf[..]).unwrap(), recs);
    }
}
