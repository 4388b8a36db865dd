//! Election perturbation operators: candidate removal, alliance
//! split/merge and single-step rank promotion. All operators are pure
//! and return new elections; removal also returns an index map so
//! callers can track candidate identity across the perturbation.

use crate::election::{AllianceStructure, Ballot, Election};
use crate::error::{Error, Result};

/// Mapping between candidate indices before and after a removal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateMap {
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

impl CandidateMap {
    pub fn identity(m: usize) -> Self {
        CandidateMap {
            old_to_new: (0..m).map(Some).collect(),
            new_to_old: (0..m).collect(),
        }
    }

    /// Old index of a winner reported in the perturbed election.
    pub fn to_old(&self, new: usize) -> usize {
        self.new_to_old[new]
    }

    pub fn to_new(&self, old: usize) -> Option<usize> {
        self.old_to_new[old]
    }
}

/// Remove the candidates in `remove` from every ranking and from the
/// alliance structure. Emptied alliances disappear; at least one
/// candidate must survive.
pub fn remove_candidates(e: &Election, remove: &[usize]) -> Result<(Election, CandidateMap)> {
    let m = e.candidate_count();
    let mut gone = vec![false; m];
    for &c in remove {
        if c >= m {
            return Err(Error::InvalidOperation(format!("candidate {c} out of range")));
        }
        gone[c] = true;
    }
    let kept: Vec<usize> = (0..m).filter(|&c| !gone[c]).collect();
    if kept.is_empty() {
        return Err(Error::InvalidOperation("cannot remove every candidate".into()));
    }
    let mut old_to_new = vec![None; m];
    for (new, &old) in kept.iter().enumerate() {
        old_to_new[old] = Some(new);
    }
    let map = CandidateMap { old_to_new, new_to_old: kept.clone() };

    let labels = kept.iter().map(|&c| e.labels()[c].clone()).collect();
    let ballots = e
        .ballots()
        .iter()
        .map(|b| {
            Ballot::new(
                b.weight,
                b.ranking
                    .iter()
                    .filter_map(|&c| map.old_to_new[c])
                    .collect(),
            )
        })
        .collect();
    let remap_sets = |sets: &[Vec<usize>]| -> Vec<Vec<usize>> {
        sets.iter()
            .map(|s| s.iter().filter_map(|&c| map.old_to_new[c]).collect::<Vec<_>>())
            .filter(|s: &Vec<usize>| !s.is_empty())
            .collect()
    };
    let alliances = match e.alliances() {
        AllianceStructure::Partition(sets) => AllianceStructure::Partition(remap_sets(sets)),
        AllianceStructure::Laminar(sets) => AllianceStructure::Laminar(remap_sets(sets)),
    };
    Ok((Election::new(labels, ballots, alliances)?, map))
}

/// Split alliance `alliance_idx` into `part` and its complement.
/// `part` must be a non-empty proper subset of the alliance.
pub fn split_alliance(e: &Election, alliance_idx: usize, part: &[usize]) -> Result<Election> {
    let sets = e.alliance_sets();
    let a = sets
        .get(alliance_idx)
        .ok_or_else(|| Error::InvalidOperation(format!("no alliance {alliance_idx}")))?;
    if part.is_empty() || part.len() >= a.len() {
        return Err(Error::InvalidOperation(
            "split part must be a non-empty proper subset".into(),
        ));
    }
    if part.iter().any(|c| !a.contains(c)) {
        return Err(Error::InvalidOperation("split part is not a subset of the alliance".into()));
    }
    let rest: Vec<usize> = a.iter().copied().filter(|c| !part.contains(c)).collect();
    let mut new_sets: Vec<Vec<usize>> = Vec::with_capacity(sets.len() + 1);
    for (i, s) in sets.iter().enumerate() {
        if i == alliance_idx {
            new_sets.push(part.to_vec());
            new_sets.push(rest.clone());
        } else {
            new_sets.push(s.clone());
        }
    }
    let alliances = match e.alliances() {
        AllianceStructure::Partition(_) => AllianceStructure::Partition(new_sets),
        AllianceStructure::Laminar(_) => AllianceStructure::Laminar(new_sets),
    };
    e.with_alliances(alliances)
}

/// Merge two disjoint alliances into one.
pub fn merge_alliances(e: &Election, i: usize, j: usize) -> Result<Election> {
    let sets = e.alliance_sets();
    if i == j || i >= sets.len() || j >= sets.len() {
        return Err(Error::InvalidOperation("merge needs two distinct alliances".into()));
    }
    if sets[i].iter().any(|c| sets[j].contains(c)) {
        return Err(Error::InvalidOperation("alliances to merge are not disjoint".into()));
    }
    let mut merged: Vec<usize> = sets[i].iter().chain(&sets[j]).copied().collect();
    merged.sort_unstable();
    let mut new_sets: Vec<Vec<usize>> = Vec::with_capacity(sets.len() - 1);
    for (k, s) in sets.iter().enumerate() {
        if k == i {
            new_sets.push(merged.clone());
        } else if k != j {
            new_sets.push(s.clone());
        }
    }
    let alliances = match e.alliances() {
        AllianceStructure::Partition(_) => AllianceStructure::Partition(new_sets),
        AllianceStructure::Laminar(_) => AllianceStructure::Laminar(new_sets),
    };
    e.with_alliances(alliances)
}

/// Swap candidate `c` one position upward in the ballot of the voter at
/// flat index `voter` (0-based across expanded multiplicities). A
/// weighted ballot group is first split so exactly one unit ballot
/// changes.
pub fn promote_candidate(e: &Election, voter: u64, c: usize) -> Result<Election> {
    if voter >= e.voter_count() {
        return Err(Error::InvalidOperation(format!("voter {voter} out of range")));
    }
    let mut ballots: Vec<Ballot> = Vec::with_capacity(e.ballots().len() + 2);
    let mut offset = 0u64;
    let mut done = false;
    for b in e.ballots() {
        if !done && voter < offset + b.weight {
            let pos = b.position_of(c);
            if pos == 0 {
                return Err(Error::InvalidOperation(format!(
                    "candidate {c} is already on top of this ballot"
                )));
            }
            let mut promoted = b.ranking.clone();
            promoted.swap(pos - 1, pos);
            if b.weight > 1 {
                ballots.push(Ballot::new(b.weight - 1, b.ranking.clone()));
            }
            ballots.push(Ballot::new(1, promoted));
            done = true;
        } else {
            ballots.push(b.clone());
        }
        offset += b.weight;
    }
    Election::new(e.labels().to_vec(), ballots, e.alliances().clone())
}

/// Flat voter index of the first voter in each ballot group, for
/// callers enumerating one promotion per distinct ranking.
pub fn group_offsets(e: &Election) -> Vec<u64> {
    let mut offsets = Vec::with_capacity(e.ballots().len());
    let mut acc = 0u64;
    for b in e.ballots() {
        offsets.push(acc);
        acc += b.weight;
    }
    offsets
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::pref::PrefMatrix;

    #[test]
    fn removal_deletes_from_rankings_and_alliances() {
        // Removing a2 (index 1) from the clone/similar fixture leaves
        // two identical ballots b > a1 > a3.
        let e = fixtures::clone_vs_similar();
        let (e2, map) = remove_candidates(&e, &[1]).unwrap();
        assert_eq!(e2.candidate_count(), 3);
        for b in e2.ballots() {
            let old: Vec<usize> = b.ranking.iter().map(|&c| map.to_old(c)).collect();
            assert_eq!(old, vec![3, 0, 2]);
        }
        assert_eq!(e2.alliance_sets().len(), 2);
    }

    #[test]
    fn removal_of_nothing_is_identity() {
        let e = fixtures::faction_six();
        let (e2, map) = remove_candidates(&e, &[]).unwrap();
        assert_eq!(e2, e);
        assert_eq!(map, CandidateMap::identity(6));
    }

    #[test]
    fn removal_preserves_surviving_pref_counts() {
        let e = fixtures::faction_six();
        let p = PrefMatrix::build(&e);
        let (e2, map) = remove_candidates(&e, &[1, 4]).unwrap();
        let p2 = PrefMatrix::build(&e2);
        for a in 0..e2.candidate_count() {
            for b in 0..e2.candidate_count() {
                if a != b {
                    assert_eq!(p2.get(a, b), p.get(map.to_old(a), map.to_old(b)));
                }
            }
        }
    }

    #[test]
    fn removing_everyone_fails() {
        let e = fixtures::cycle3();
        assert!(remove_candidates(&e, &[0, 1, 2]).is_err());
    }

    #[test]
    fn split_and_merge_are_inverse() {
        let e = fixtures::spoiler_demo();
        // {{Adam, Alice}, {Bob}} -> {{Adam}, {Alice}, {Bob}}
        let split = split_alliance(&e, 0, &[0]).unwrap();
        assert_eq!(split.alliance_sets(), &[vec![0], vec![1], vec![2]]);
        let merged = merge_alliances(&split, 0, 1).unwrap();
        assert_eq!(merged, e);
        // votes untouched either way
        assert_eq!(PrefMatrix::build(&split), PrefMatrix::build(&e));
    }

    #[test]
    fn split_rejects_improper_subsets() {
        let e = fixtures::spoiler_demo();
        assert!(split_alliance(&e, 0, &[]).is_err());
        assert!(split_alliance(&e, 0, &[0, 1]).is_err());
        assert!(split_alliance(&e, 1, &[2]).is_err());
    }

    #[test]
    fn promotion_swaps_adjacent_pair() {
        let e = Election::from_parts(3, &[(1, &[1, 0, 2][..])], &[&[0][..], &[1][..], &[2][..]])
            .unwrap();
        let e2 = promote_candidate(&e, 0, 0).unwrap();
        assert_eq!(e2.ballots()[0].ranking, vec![0, 1, 2]);
        // promoting back the demoted candidate restores the profile
        let e3 = promote_candidate(&e2, 0, 1).unwrap();
        assert_eq!(e3.ballots()[0].ranking, e.ballots()[0].ranking);
    }

    #[test]
    fn promotion_splits_weighted_groups() {
        let e = fixtures::spoiler_demo();
        let before = PrefMatrix::build(&e);
        let e2 = promote_candidate(&e, 50, 0).unwrap(); // a voter in the 5x Alice>Bob>Adam group
        assert_eq!(e2.voter_count(), e.voter_count());
        let after = PrefMatrix::build(&e2);
        // exactly one pref pair changes by exactly one
        let mut diffs = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                if after.get(a, b) != before.get(a, b) {
                    diffs.push((a, b, before.get(a, b), after.get(a, b)));
                }
            }
        }
        assert_eq!(diffs.len(), 2); // the pair and its mirror
        assert!(diffs.iter().all(|&(_, _, x, y)| x.abs_diff(y) == 1));
    }

    #[test]
    fn promotion_of_top_candidate_fails() {
        let e = fixtures::cycle3();
        assert!(promote_candidate(&e, 0, 0).is_err());
    }

    #[test]
    fn repeated_promotion_matches_direct_reinsertion() {
        // promoting k times from position p lands the candidate at p-k,
        // with everyone else in original relative order
        let e = Election::from_parts(
            5,
            &[(1, &[4, 3, 2, 1, 0][..])],
            &[&[0][..], &[1][..], &[2][..], &[3][..], &[4][..]],
        )
        .unwrap();
        let mut cur = e.clone();
        for _ in 0..3 {
            cur = promote_candidate(&cur, 0, 0).unwrap();
        }
        let mut expected = vec![4, 3, 2, 1];
        expected.insert(1, 0);
        assert_eq!(cur.ballots().last().unwrap().ranking, expected);
    }
}
