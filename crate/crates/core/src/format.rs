//! Line-oriented election text format. Example:
//!
//! ```text
//! #candidates: 3
//! candidate: 0 Adam
//! candidate: 1 Alice
//! candidate: 2 Bob
//! alliance: A 0 1
//! alliance: B 2
//! 46: 0 > 1 > 2
//! 5: 1 > 2 > 0
//! ```
//!
//! Laminar families add `#laminar: true` before the alliance lines.
//! Rankings accept both `>` and the Unicode succeeds sign.

use crate::election::{AllianceStructure, Ballot, Election};
use crate::error::{Error, Result};

const SUCC: char = '\u{227b}'; // ≻

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_election(text: &str) -> Result<Election> {
    let mut m: Option<usize> = None;
    let mut laminar = false;
    let mut labels: Vec<Option<String>> = Vec::new();
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut ballots: Vec<Ballot> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with("//") {
            continue;
        }
        if let Some(rest) = line.strip_prefix("#candidates:") {
            let count: usize = rest
                .trim()
                .parse()
                .map_err(|_| err(line_no, "bad candidate count"))?;
            if count == 0 {
                return Err(err(line_no, "need at least one candidate"));
            }
            if m.replace(count).is_some() {
                return Err(err(line_no, "duplicate #candidates header"));
            }
            labels = vec![None; count];
            continue;
        }
        if let Some(rest) = line.strip_prefix("#laminar:") {
            laminar = rest.trim() == "true";
            continue;
        }
        let m = m.ok_or_else(|| err(line_no, "missing #candidates header"))?;
        if let Some(rest) = line.strip_prefix("candidate:") {
            let rest = rest.trim();
            let (idx, label) = rest
                .split_once(char::is_whitespace)
                .ok_or_else(|| err(line_no, "expected `candidate: <index> <label>`"))?;
            let idx: usize = idx.parse().map_err(|_| err(line_no, "bad candidate index"))?;
            if idx >= m {
                return Err(err(line_no, format!("candidate index {idx} out of range")));
            }
            if labels[idx].replace(label.trim().to_string()).is_some() {
                return Err(err(line_no, format!("candidate {idx} declared twice")));
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("alliance:") {
            let mut parts = rest.split_whitespace();
            parts
                .next()
                .ok_or_else(|| err(line_no, "expected `alliance: <name> <indices>`"))?;
            let members: Vec<usize> = parts
                .map(|p| p.parse::<usize>().map_err(|_| err(line_no, "bad alliance member")))
                .collect::<Result<_>>()?;
            if members.is_empty() {
                return Err(err(line_no, "empty alliance"));
            }
            if let Some(&bad) = members.iter().find(|&&c| c >= m) {
                return Err(err(line_no, format!("alliance member {bad} out of range")));
            }
            sets.push(members);
            continue;
        }
        // ballot line: `<multiplicity>: i > j > ...`
        let (mult, ranking) = line
            .split_once(':')
            .ok_or_else(|| err(line_no, "expected `<multiplicity>: <ranking>`"))?;
        let weight: u64 = mult.trim().parse().map_err(|_| err(line_no, "bad multiplicity"))?;
        let ranking: Vec<usize> = ranking
            .split(|c| c == '>' || c == SUCC)
            .map(|p| p.trim().parse::<usize>().map_err(|_| err(line_no, "bad ranking entry")))
            .collect::<Result<_>>()?;
        let mut seen = vec![false; m];
        for &c in &ranking {
            if c >= m {
                return Err(err(line_no, format!("candidate {c} out of range")));
            }
            if seen[c] {
                return Err(err(line_no, format!("duplicate candidate {c} in ranking")));
            }
            seen[c] = true;
        }
        if ranking.len() != m {
            return Err(err(line_no, "ranking does not cover all candidates"));
        }
        ballots.push(Ballot::new(weight, ranking));
    }

    let m = m.ok_or_else(|| err(1, "missing #candidates header"))?;
    let labels: Vec<String> = labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.unwrap_or_else(|| format!("c{i}")))
        .collect();
    let alliances = if sets.is_empty() {
        AllianceStructure::singletons(m)
    } else if laminar {
        AllianceStructure::Laminar(sets)
    } else {
        AllianceStructure::Partition(sets)
    };
    Election::new(labels, ballots, alliances)
}

pub fn serialize_election(e: &Election) -> String {
    let mut out = String::new();
    let m = e.candidate_count();
    out.push_str(&format!("#candidates: {m}\n"));
    for (i, label) in e.labels().iter().enumerate() {
        out.push_str(&format!("candidate: {i} {label}\n"));
    }
    if !e.alliances().is_partition() {
        out.push_str("#laminar: true\n");
    }
    for (i, set) in e.alliance_sets().iter().enumerate() {
        let members: Vec<String> = set.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("alliance: a{i} {}\n", members.join(" ")));
    }
    for b in e.ballots() {
        let ranking: Vec<String> = b.ranking.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("{}: {}\n", b.weight, ranking.join(&format!(" {SUCC} "))));
    }
    out
}
