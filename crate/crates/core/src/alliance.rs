//! Alliance-aware scores and the IW-f / SW-f rules for
//! f in {Plurality, Maximin, Schulze} on disjoint alliance partitions.
//!
//! The alliance-aware f-score of a candidate is their standard f-score
//! after all of their allies are deleted; for Plurality and Maximin it
//! reduces to a direct formula on the ballots / preference matrix.

use serde::{Deserialize, Serialize};

use crate::election::Election;
use crate::error::{Error, Result};
use crate::perturb::remove_candidates;
use crate::pref::{top_counts, PrefMatrix};
use crate::rules::{
    argmax_lex, argmax_lex_among, compute_strengths, maximin_scores, schulze_scores, TallyResult,
    Trace,
};

/// The standard rule an alliance-aware rule extends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseRule {
    Plurality,
    Maximin,
    Schulze,
}

impl BaseRule {
    pub fn name(self) -> &'static str {
        match self {
            BaseRule::Plurality => "plurality",
            BaseRule::Maximin => "maximin",
            BaseRule::Schulze => "schulze",
        }
    }
}

impl std::fmt::Display for BaseRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Alliance-aware and standard scores under one base rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllianceAwareScores {
    pub rule: BaseRule,
    pub alliance_aware: Vec<u64>,
    pub standard: Vec<u64>,
}

fn require_partition(e: &Election) -> Result<()> {
    if !e.alliances().is_partition() {
        return Err(Error::InvalidOperation(
            "this rule expects a disjoint alliance partition; use the laminar variant".into(),
        ));
    }
    Ok(())
}

/// Ballots in which no opponent of the candidate is ranked above them.
pub fn alliance_aware_plurality_scores(e: &Election) -> Vec<u64> {
    let m = e.candidate_count();
    let mut scores = vec![0u64; m];
    for b in e.ballots() {
        // walking from the top, a candidate scores while the prefix
        // above them stays inside their own alliance
        let lead = e.alliance_index_of(b.ranking[0]);
        for &c in &b.ranking {
            if e.alliance_index_of(c) != lead {
                break;
            }
            scores[c] += b.weight;
        }
    }
    scores
}

/// Worst head-to-head support against any opponent.
pub fn alliance_aware_maximin_scores(e: &Election, pref: &PrefMatrix) -> Vec<u64> {
    let m = e.candidate_count();
    (0..m)
        .map(|c| {
            (0..m)
                .filter(|&o| e.alliance_index_of(o) != e.alliance_index_of(c))
                .map(|o| pref.get(c, o))
                .min()
                .unwrap_or(e.voter_count())
        })
        .collect()
}

/// One point per ally plus one per opponent `b` whose strongest path
/// back is no stronger, where the path from `x` to `y` may not pass
/// through allies of `y`.
pub fn alliance_aware_schulze_scores(e: &Election, pref: &PrefMatrix) -> Vec<u64> {
    let m = e.candidate_count();
    let k = e.alliance_sets().len();
    // one widest-path pass per target alliance, excluding its members
    // as intermediates
    let per_target: Vec<_> = (0..k)
        .map(|t| compute_strengths(pref, |node| e.alliance_index_of(node) != t))
        .collect();
    let restricted = |x: usize, y: usize| per_target[e.alliance_index_of(y)].get(x, y);
    (0..m)
        .map(|a| {
            let allies = (e.alliance_of(a).len() - 1) as u64;
            let beaten = (0..m)
                .filter(|&b| {
                    e.alliance_index_of(b) != e.alliance_index_of(a)
                        && restricted(a, b) >= restricted(b, a)
                })
                .count() as u64;
            allies + beaten
        })
        .collect()
}

fn standard_scores(e: &Election, f: BaseRule, pref: &PrefMatrix) -> Vec<u64> {
    match f {
        BaseRule::Plurality => top_counts(e),
        BaseRule::Maximin => maximin_scores(pref),
        BaseRule::Schulze => schulze_scores(pref).0,
    }
}

pub fn alliance_aware_scores(e: &Election, f: BaseRule) -> Result<AllianceAwareScores> {
    require_partition(e)?;
    let pref = PrefMatrix::build(e);
    let alliance_aware = match f {
        BaseRule::Plurality => alliance_aware_plurality_scores(e),
        BaseRule::Maximin => alliance_aware_maximin_scores(e, &pref),
        BaseRule::Schulze => alliance_aware_schulze_scores(e, &pref),
    };
    Ok(AllianceAwareScores { rule: f, alliance_aware, standard: standard_scores(e, f, &pref) })
}

pub fn alliance_aware_score(e: &Election, f: BaseRule, c: usize) -> Result<u64> {
    Ok(alliance_aware_scores(e, f)?.alliance_aware[c])
}

/// IW-f: round one picks the alliance of the candidate with the top
/// alliance-aware f-score; round two elects its member with the top
/// standard f-score on the full election.
pub fn iw_winner(e: &Election, f: BaseRule) -> Result<TallyResult> {
    let scores = alliance_aware_scores(e, f)?;
    let best = argmax_lex(&scores.alliance_aware);
    let alliance = e.alliance_of(best);
    let winner = argmax_lex_among(&scores.standard, alliance);
    Ok(TallyResult {
        winner,
        scores: scores.alliance_aware.iter().map(|&s| s as f64).collect(),
        trace: Trace::TwoRound {
            first_round_scores: scores.alliance_aware.iter().map(|&s| s as f64).collect(),
            advancing: alliance.to_vec(),
            second_round_scores: alliance
                .iter()
                .map(|&c| (c, scores.standard[c] as f64))
                .collect(),
        },
    })
}

/// SW-f: candidates whose alliance-aware f-score exceeds n/2 advance
/// (for Schulze: candidates beating every opponent head-to-head); the
/// runoff is the standard f tally on the reduced election. With no
/// advancing candidate the alliance-aware score maximizer wins outright.
pub fn sw_winner(e: &Election, f: BaseRule) -> Result<TallyResult> {
    let scores = alliance_aware_scores(e, f)?;
    let n = e.voter_count();
    let advancing: Vec<usize> = match f {
        BaseRule::Schulze => {
            let pref = PrefMatrix::build(e);
            (0..e.candidate_count())
                .filter(|&c| {
                    (0..e.candidate_count())
                        .filter(|&o| e.alliance_index_of(o) != e.alliance_index_of(c))
                        .all(|o| pref.wins_head_to_head(c, o))
                })
                .collect()
        }
        _ => (0..e.candidate_count())
            .filter(|&c| 2 * scores.alliance_aware[c] > n)
            .collect(),
    };
    let first_round: Vec<f64> = scores.alliance_aware.iter().map(|&s| s as f64).collect();
    if advancing.is_empty() {
        let winner = argmax_lex(&scores.alliance_aware);
        return Ok(TallyResult {
            winner,
            scores: first_round.clone(),
            trace: Trace::TwoRound {
                first_round_scores: first_round,
                advancing,
                second_round_scores: Vec::new(),
            },
        });
    }
    let eliminated: Vec<usize> =
        (0..e.candidate_count()).filter(|c| !advancing.contains(c)).collect();
    let (winner, second_round) = if eliminated.is_empty() {
        // everyone advances; the runoff is the standard tally itself
        let pref = PrefMatrix::build(e);
        let std = standard_scores(e, f, &pref);
        (argmax_lex(&std), advancing.iter().map(|&c| (c, std[c] as f64)).collect())
    } else {
        let (reduced, map) = remove_candidates(e, &eliminated)?;
        let pref = PrefMatrix::build(&reduced);
        let std = standard_scores(&reduced, f, &pref);
        let w = map.to_old(argmax_lex(&std));
        let detail = std
            .iter()
            .enumerate()
            .map(|(c, &s)| (map.to_old(c), s as f64))
            .collect();
        (w, detail)
    };
    Ok(TallyResult {
        winner,
        scores: first_round.clone(),
        trace: Trace::TwoRound {
            first_round_scores: first_round,
            advancing,
            second_round_scores: second_round,
        },
    })
}
