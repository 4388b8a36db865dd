//! Compressed ballots for the Plurality variants: each voter submits
//! only a top choice plus the longest prefix of their ranking that
//! stays inside one alliance. IW-Plurality is computable from these
//! alone; SW-Plurality becomes an approval round plus a plurality
//! runoff with fresh ballots.

use crate::election::{AllianceStructure, Election};
use crate::error::{Error, Result};
use crate::rules::{argmax_lex, argmax_lex_among, TallyResult, Trace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedBallot {
    pub weight: u64,
    pub top_choice: usize,
    /// Longest single-alliance prefix of the ranking; contains top_choice.
    pub prefix_set: Vec<usize>,
}

fn require_partition(a: &AllianceStructure) -> Result<()> {
    match a {
        AllianceStructure::Partition(_) => Ok(()),
        AllianceStructure::Laminar(_) => Err(Error::InvalidOperation(
            "reduced ballots are defined for disjoint alliances only".into(),
        )),
    }
}

pub fn reduce_ballots(e: &Election) -> Result<Vec<ReducedBallot>> {
    require_partition(e.alliances())?;
    Ok(e.ballots()
        .iter()
        .map(|b| {
            let top = b.ranking[0];
            let lead = e.alliance_index_of(top);
            let prefix: Vec<usize> = b
                .ranking
                .iter()
                .take_while(|&&c| e.alliance_index_of(c) == lead)
                .copied()
                .collect();
            ReducedBallot { weight: b.weight, top_choice: top, prefix_set: prefix }
        })
        .collect())
}

fn candidate_total(alliances: &AllianceStructure) -> usize {
    alliances.sets().iter().map(|s| s.len()).sum()
}

/// Alliance-aware plurality scores recovered from prefix sets: a ballot
/// counts for `c` exactly when `c` lies in its single-alliance prefix.
pub fn approval_scores(reduced: &[ReducedBallot], m: usize) -> Vec<u64> {
    let mut scores = vec![0u64; m];
    for b in reduced {
        for &c in &b.prefix_set {
            scores[c] += b.weight;
        }
    }
    scores
}

pub fn iw_plurality_from_reduced(
    reduced: &[ReducedBallot],
    alliances: &AllianceStructure,
) -> Result<TallyResult> {
    require_partition(alliances)?;
    let m = candidate_total(alliances);
    if m == 0 || reduced.is_empty() {
        return Err(Error::InvalidOperation("empty reduced election".into()));
    }
    let aa = approval_scores(reduced, m);
    let best = argmax_lex(&aa);
    let alliance = alliances
        .sets()
        .iter()
        .find(|s| s.contains(&best))
        .expect("partition covers candidates")
        .clone();
    let mut top_counts = vec![0u64; m];
    for b in reduced {
        top_counts[b.top_choice] += b.weight;
    }
    let winner = argmax_lex_among(&top_counts, &alliance);
    Ok(TallyResult {
        winner,
        scores: aa.iter().map(|&s| s as f64).collect(),
        trace: Trace::TwoRound {
            first_round_scores: aa.iter().map(|&s| s as f64).collect(),
            advancing: alliance.clone(),
            second_round_scores: alliance.iter().map(|&c| (c, top_counts[c] as f64)).collect(),
        },
    })
}

/// Round-1 outcome of the two-round SW-Plurality protocol: candidates
/// approved by more than half the voters, or the sole approval
/// maximizer when nobody clears the bar (empty survivor list means the
/// maximizer already won).
pub fn sw_survivors(reduced: &[ReducedBallot], m: usize) -> (Vec<usize>, Vec<u64>) {
    let scores = approval_scores(reduced, m);
    let n: u64 = reduced.iter().map(|b| b.weight).sum();
    let survivors: Vec<usize> = (0..m).filter(|&c| 2 * scores[c] > n).collect();
    (survivors, scores)
}

/// Plain top-choice runoff ballots, as (weight, choice) pairs.
pub type RunoffBallot = (u64, usize);

/// Derive runoff ballots from the full rankings: each voter names their
/// highest-ranked survivor.
pub fn runoff_ballots(e: &Election, survivors: &[usize]) -> Result<Vec<RunoffBallot>> {
    e.ballots()
        .iter()
        .map(|b| {
            b.ranking
                .iter()
                .find(|c| survivors.contains(c))
                .map(|&c| (b.weight, c))
                .ok_or_else(|| Error::InvalidOperation("no survivor on a ballot".into()))
        })
        .collect()
}

pub fn sw_plurality_two_round(
    reduced: &[ReducedBallot],
    runoff: &[RunoffBallot],
    alliances: &AllianceStructure,
) -> Result<TallyResult> {
    require_partition(alliances)?;
    let m = candidate_total(alliances);
    if m == 0 || reduced.is_empty() {
        return Err(Error::InvalidOperation("empty reduced election".into()));
    }
    let (survivors, aa) = sw_survivors(reduced, m);
    let first: Vec<f64> = aa.iter().map(|&s| s as f64).collect();
    if survivors.len() <= 1 {
        // majority approval, or nobody over the bar: round 1 decides
        let winner = match survivors.first() {
            Some(&c) => c,
            None => argmax_lex(&aa),
        };
        return Ok(TallyResult {
            winner,
            scores: first.clone(),
            trace: Trace::TwoRound {
                first_round_scores: first,
                advancing: survivors,
                second_round_scores: Vec::new(),
            },
        });
    }
    let n1: u64 = reduced.iter().map(|b| b.weight).sum();
    let n2: u64 = runoff.iter().map(|&(w, _)| w).sum();
    if n1 != n2 {
        return Err(Error::InvalidOperation(format!(
            "round 1 has {n1} voters but round 2 has {n2}"
        )));
    }
    let mut counts = vec![0u64; m];
    for &(w, c) in runoff {
        if !survivors.contains(&c) {
            return Err(Error::InvalidOperation(format!(
                "runoff vote for eliminated candidate {c}"
            )));
        }
        counts[c] += w;
    }
    let winner = argmax_lex_among(&counts, &survivors);
    Ok(TallyResult {
        winner,
        scores: first.clone(),
        trace: Trace::TwoRound {
            first_round_scores: first,
            advancing: survivors.clone(),
            second_round_scores: survivors.iter().map(|&c| (c, counts[c] as f64)).collect(),
        },
    })
}

/// Convenience wrapper running the whole two-round protocol from one
/// election, deriving the runoff ballots from the full rankings.
pub fn sw_plurality_from_election(e: &Election) -> Result<TallyResult> {
    let reduced = reduce_ballots(e)?;
    let (survivors, _) = sw_survivors(&reduced, e.candidate_count());
    let runoff = if survivors.len() > 1 {
        runoff_ballots(e, &survivors)?
    } else {
        Vec::new()
    };
    sw_plurality_two_round(&reduced, &runoff, e.alliances())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alliance::{self, BaseRule};
    use crate::fixtures;

    #[test]
    fn prefixes_stop_at_the_first_opponent() {
        let e = fixtures::faction_six();
        let reduced = reduce_ballots(&e).unwrap();
        // ballot 30 x [b, a2, a4, a3, a1, c] reduces to prefix {b}
        assert_eq!(reduced[0].prefix_set, vec![4]);
        assert_eq!(reduced[0].top_choice, 4);
        // ballot 35 x [a1, a2, a4, a3, b, c] keeps the whole a-block
        assert_eq!(reduced[1].prefix_set, vec![0, 1, 3, 2]);
        for b in &reduced {
            assert!(b.prefix_set.contains(&b.top_choice));
        }
    }

    #[test]
    fn approvals_equal_alliance_aware_plurality_scores() {
        let e = fixtures::faction_six();
        let reduced = reduce_ballots(&e).unwrap();
        assert_eq!(
            approval_scores(&reduced, 6),
            vec![40, 40, 70, 40, 30, 0]
        );
    }

    #[test]
    fn reduced_iw_matches_full_ballots_on_fixtures() {
        for e in [
            fixtures::spoiler_demo(),
            fixtures::support_cycle(),
            fixtures::faction_six(),
            fixtures::no_independent_winner(),
            fixtures::cycle3(),
            fixtures::iw_sw_conflict(),
        ] {
            let reduced = reduce_ballots(&e).unwrap();
            assert_eq!(
                iw_plurality_from_reduced(&reduced, e.alliances()).unwrap().winner,
                alliance::iw_winner(&e, BaseRule::Plurality).unwrap().winner
            );
        }
    }

    #[test]
    fn two_round_protocol_matches_direct_sw_plurality() {
        for e in [
            fixtures::spoiler_demo(),
            fixtures::support_cycle(),
            fixtures::faction_six(),
            fixtures::no_independent_winner(),
            fixtures::cycle3(),
            fixtures::iw_sw_conflict(),
        ] {
            assert_eq!(
                sw_plurality_from_election(&e).unwrap().winner,
                alliance::sw_winner(&e, BaseRule::Plurality).unwrap().winner
            );
        }
    }

    #[test]
    fn no_ally_prefixes_are_singletons() {
        let e = fixtures::cycle3();
        for b in reduce_ballots(&e).unwrap() {
            assert_eq!(b.prefix_set, vec![b.top_choice]);
        }
    }

    // two allies approved by 3 of 4 voters: both survive, runoff needed
    fn majority_pair() -> (Vec<ReducedBallot>, AllianceStructure) {
        let reduced = vec![
            ReducedBallot { weight: 3, top_choice: 0, prefix_set: vec![0, 1] },
            ReducedBallot { weight: 1, top_choice: 2, prefix_set: vec![2] },
        ];
        (reduced, AllianceStructure::Partition(vec![vec![0, 1], vec![2]]))
    }

    #[test]
    fn mismatched_round_sizes_are_rejected() {
        let (reduced, alliances) = majority_pair();
        let short = vec![(1u64, 0usize)];
        assert!(sw_plurality_two_round(&reduced, &short, &alliances).is_err());
    }

    #[test]
    fn runoff_votes_for_eliminated_candidates_are_rejected() {
        let (reduced, alliances) = majority_pair();
        let bad = vec![(4u64, 2usize)];
        assert!(sw_plurality_two_round(&reduced, &bad, &alliances).is_err());
        let good = vec![(3u64, 0usize), (1u64, 1usize)];
        let r = sw_plurality_two_round(&reduced, &good, &alliances).unwrap();
        assert_eq!(r.winner, 0);
    }

    #[test]
    fn laminar_structures_are_rejected() {
        let e = fixtures::nested_demo();
        assert!(reduce_ballots(&e).is_err());
    }
}
