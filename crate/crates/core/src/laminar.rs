//! Multi-round IW-f / SW-f for nested (laminar) alliance families.
//! A candidate's alliance-aware score is taken with respect to the
//! greatest alliance still in play that contains them; after each round
//! the exhausted alliances are dropped and scores are recomputed.

use crate::election::{AllianceStructure, Election};
use crate::error::{Error, Result};
use crate::perturb::remove_candidates;
use crate::pref::PrefMatrix;
use crate::rules::{RoundTrace, TallyResult, Trace};

use crate::alliance::BaseRule;

fn laminar_family(e: &Election) -> Result<Vec<Vec<usize>>> {
    match e.alliances() {
        AllianceStructure::Laminar(_) => {}
        AllianceStructure::Partition(_) => {
            return Err(Error::InvalidOperation(
                "laminar rule applied to a disjoint partition; convert with closed_laminar"
                    .into(),
            ))
        }
    }
    let closed = e.alliances().with_singleton_closure(e.candidate_count());
    // the full candidate set never counts as an alliance
    Ok(closed
        .sets()
        .iter()
        .filter(|s| s.len() < e.candidate_count())
        .cloned()
        .collect())
}

fn base_rule(f: BaseRule) -> Result<BaseRule> {
    match f {
        BaseRule::Schulze => Err(Error::InvalidOperation(
            "laminar variants are defined for plurality and maximin only".into(),
        )),
        other => Ok(other),
    }
}

/// Greatest set in `family` containing `c`; falls back to the singleton.
fn greatest_alliance(family: &[Vec<usize>], c: usize) -> Vec<usize> {
    family
        .iter()
        .filter(|s| s.contains(&c))
        .max_by_key(|s| s.len())
        .cloned()
        .unwrap_or_else(|| vec![c])
}

/// Standard f-score of `c` after deleting `set \ {c}`, computed directly.
fn score_wrt(e: &Election, pref: &PrefMatrix, f: BaseRule, c: usize, set: &[usize]) -> u64 {
    match f {
        BaseRule::Plurality => e
            .ballots()
            .iter()
            .filter(|b| {
                b.ranking[..b.position_of(c)].iter().all(|x| set.contains(x))
            })
            .map(|b| b.weight)
            .sum(),
        BaseRule::Maximin => (0..e.candidate_count())
            .filter(|o| !set.contains(o))
            .map(|o| pref.get(c, o))
            .min()
            .unwrap_or(e.voter_count()),
        BaseRule::Schulze => unreachable!("rejected by base_rule"),
    }
}

/// Alliance-aware f-scores with respect to the greatest alliance of each
/// candidate in the election's own (closed) laminar family.
pub fn laminar_alliance_aware_scores(e: &Election, f: BaseRule) -> Result<Vec<u64>> {
    let f = base_rule(f)?;
    let family = laminar_family(e)?;
    let pref = PrefMatrix::build(e);
    Ok((0..e.candidate_count())
        .map(|c| score_wrt(e, &pref, f, c, &greatest_alliance(&family, c)))
        .collect())
}

pub fn laminar_alliance_aware_score(e: &Election, f: BaseRule, c: usize) -> Result<u64> {
    Ok(laminar_alliance_aware_scores(e, f)?[c])
}

/// Multi-round IW-f: each round narrows the potential-winner set to the
/// greatest remaining alliance of the best-scoring contender, then
/// retires that alliance and recounts.
pub fn laminar_iw_winner(e: &Election, f: BaseRule) -> Result<TallyResult> {
    let f = base_rule(f)?;
    let mut family = laminar_family(e)?;
    let pref = PrefMatrix::build(e);
    let mut contenders: Vec<usize> = (0..e.candidate_count()).collect();
    let mut rounds = Vec::new();
    let round_bound = family.len() + 2;
    for _ in 0..round_bound {
        if contenders.len() == 1 {
            let winner = contenders[0];
            let scores = rounds
                .first()
                .map(|r: &RoundTrace| {
                    let mut v = vec![0.0; e.candidate_count()];
                    for &(c, s) in &r.scores {
                        v[c] = s;
                    }
                    v
                })
                .unwrap_or_else(|| vec![0.0; e.candidate_count()]);
            return Ok(TallyResult { winner, scores, trace: Trace::Rounds { rounds } });
        }
        let scored: Vec<(usize, u64)> = contenders
            .iter()
            .map(|&c| (c, score_wrt(e, &pref, f, c, &greatest_alliance(&family, c))))
            .collect();
        let &(best, _) = scored
            .iter()
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("contenders non-empty");
        rounds.push(RoundTrace {
            contenders: contenders.clone(),
            scores: scored.iter().map(|&(c, s)| (c, s as f64)).collect(),
        });
        let chosen = greatest_alliance(&family, best);
        family.retain(|s| *s != chosen);
        contenders = chosen;
    }
    Err(Error::InvalidOperation("laminar IW tally failed to converge".into()))
}

/// Multi-round SW-f: candidates scoring above n/2 advance; the alliances
/// containing all of them are retired and the rest of the field removed.
/// With no advancing candidate the score maximizer wins.
pub fn laminar_sw_winner(e: &Election, f: BaseRule) -> Result<TallyResult> {
    let f = base_rule(f)?;
    let mut family = laminar_family(e)?;
    let mut cur = e.clone();
    // map from current indices back to the original election
    let mut to_orig: Vec<usize> = (0..e.candidate_count()).collect();
    let n = e.voter_count();
    let mut rounds = Vec::new();
    let round_bound = e.candidate_count() + 2;
    for _ in 0..round_bound {
        if cur.candidate_count() == 1 {
            return Ok(finish(e, to_orig[0], rounds));
        }
        let pref = PrefMatrix::build(&cur);
        let scores: Vec<u64> = (0..cur.candidate_count())
            .map(|c| score_wrt(&cur, &pref, f, c, &greatest_alliance(&family, c)))
            .collect();
        rounds.push(RoundTrace {
            contenders: to_orig.clone(),
            scores: scores
                .iter()
                .enumerate()
                .map(|(c, &s)| (to_orig[c], s as f64))
                .collect(),
        });
        let advancing: Vec<usize> =
            (0..cur.candidate_count()).filter(|&c| 2 * scores[c] > n).collect();
        if advancing.is_empty() {
            let mut best = 0;
            for c in 1..cur.candidate_count() {
                if scores[c] > scores[best] {
                    best = c;
                }
            }
            return Ok(finish(e, to_orig[best], rounds));
        }
        if advancing.len() == 1 {
            return Ok(finish(e, to_orig[advancing[0]], rounds));
        }
        family.retain(|s| !advancing.iter().all(|c| s.contains(c)));
        let eliminated: Vec<usize> =
            (0..cur.candidate_count()).filter(|c| !advancing.contains(c)).collect();
        let survivors = advancing;
        // restrict the family to the surviving candidates
        family = family
            .iter()
            .map(|s| {
                s.iter()
                    .filter(|c| survivors.contains(c))
                    .map(|&c| survivors.iter().position(|&x| x == c).unwrap())
                    .collect::<Vec<usize>>()
            })
            .filter(|s: &Vec<usize>| !s.is_empty())
            .collect();
        let (next, map) = remove_candidates(&cur, &eliminated)?;
        to_orig = (0..next.candidate_count()).map(|c| to_orig[map.to_old(c)]).collect();
        cur = next;
    }
    Err(Error::InvalidOperation("laminar SW tally failed to converge".into()))
}

fn finish(e: &Election, winner: usize, rounds: Vec<RoundTrace>) -> TallyResult {
    let mut scores = vec![0.0; e.candidate_count()];
    if let Some(r) = rounds.first() {
        for &(c, s) in &r.scores {
            scores[c] = s;
        }
    }
    TallyResult { winner, scores, trace: Trace::Rounds { rounds } }
}
