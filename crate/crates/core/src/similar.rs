//! Clone sets (contiguous blocks in every ranking) and similarity
//! between allies (no opponent ranked between them by any voter).

use crate::election::Election;
use crate::error::{Error, Result};

/// All maximal candidate sets `T` with `2 <= |T| < m` whose members form
/// a contiguous block in every ranking.
pub fn find_clone_sets(e: &Election) -> Vec<Vec<usize>> {
    let m = e.candidate_count();
    if m < 3 {
        return Vec::new();
    }
    // every clone set is an interval of the first ranking
    let first = &e.ballots()[0].ranking;
    let mut found: Vec<Vec<usize>> = Vec::new();
    for start in 0..m {
        for len in 2..m {
            if start + len > m {
                break;
            }
            let set: Vec<usize> = first[start..start + len].to_vec();
            if is_clone_set(e, &set) {
                let mut sorted = set;
                sorted.sort_unstable();
                found.push(sorted);
            }
        }
    }
    // keep only maximal sets
    let mut maximal: Vec<Vec<usize>> = Vec::new();
    for s in &found {
        if !found
            .iter()
            .any(|t| t.len() > s.len() && s.iter().all(|c| t.contains(c)))
        {
            maximal.push(s.clone());
        }
    }
    maximal.sort();
    maximal.dedup();
    maximal
}

/// Direct re-verification of the block condition for `set`.
pub fn is_clone_set(e: &Election, set: &[usize]) -> bool {
    let m = e.candidate_count();
    if set.len() < 2 || set.len() >= m {
        return false;
    }
    e.ballots().iter().all(|b| {
        let positions: Vec<usize> = set.iter().map(|&c| b.position_of(c)).collect();
        let lo = *positions.iter().min().unwrap();
        let hi = *positions.iter().max().unwrap();
        hi - lo + 1 == set.len()
    })
}

/// Symmetric similarity: allies `a` and `b` are similar iff no voter
/// ranks any opponent strictly between them, in either order.
pub fn are_similar(e: &Election, a: usize, b: usize) -> Result<bool> {
    check_allies(e, a, b)?;
    Ok(similar_directional(e, a, b) && similar_directional(e, b, a))
}

/// One-directional variant: no voter has `a > opponent > b`. Exposed for
/// experimentation; the symmetric form is used everywhere else.
pub fn are_similar_directional(e: &Election, a: usize, b: usize) -> Result<bool> {
    check_allies(e, a, b)?;
    Ok(similar_directional(e, a, b))
}

fn check_allies(e: &Election, a: usize, b: usize) -> Result<()> {
    if a == b || !e.are_allies(a, b) {
        return Err(Error::InvalidOperation(format!(
            "similarity is defined for distinct allies, got {a} and {b}"
        )));
    }
    Ok(())
}

fn similar_directional(e: &Election, a: usize, b: usize) -> bool {
    // opponents = candidates outside the (minimal) alliance of a
    let alliance = e.alliance_of(a);
    e.ballots().iter().all(|ballot| {
        let pa = ballot.position_of(a);
        let pb = ballot.position_of(b);
        if pa >= pb {
            return true;
        }
        ballot.ranking[pa + 1..pb]
            .iter()
            .all(|c| alliance.contains(c))
    })
}

/// All unordered similar pairs within alliances.
pub fn similar_pairs(e: &Election) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for set in e.alliance_sets() {
        for (i, &a) in set.iter().enumerate() {
            for &b in &set[i + 1..] {
                if are_similar(e, a, b).unwrap_or(false) {
                    pairs.push((a, b));
                }
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}
