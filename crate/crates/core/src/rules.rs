//! Standard (alliance-blind) voting rules: positional scoring, Copeland,
//! Maximin, STV and Schulze. Ties are always broken toward the smallest
//! candidate index.

use serde::Serialize;

use crate::election::Election;
use crate::error::{Error, Result};
use crate::pref::{top_counts, PrefMatrix};

/// Outcome of a tally: winner, per-candidate scores (semantics depend on
/// the rule) and optional rule-specific detail.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TallyResult {
    pub winner: usize,
    pub scores: Vec<f64>,
    pub trace: Trace,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Trace {
    None,
    Stv {
        elimination_order: Vec<usize>,
    },
    Copeland {
        wins: Vec<u32>,
        ties: Vec<u32>,
    },
    Schulze {
        strengths: Vec<Vec<u64>>,
    },
    /// Two-round alliance-aware rules: first-round scores, the candidates
    /// still able to win after round one, and the scores deciding round two.
    TwoRound {
        first_round_scores: Vec<f64>,
        advancing: Vec<usize>,
        second_round_scores: Vec<(usize, f64)>,
    },
    /// Multi-round (laminar) rules: per-round surviving set and scores.
    Rounds {
        rounds: Vec<RoundTrace>,
    },
    /// Primary-composed rules: the representative chosen per alliance.
    Primaries {
        representatives: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundTrace {
    pub contenders: Vec<usize>,
    pub scores: Vec<(usize, f64)>,
}

/// Index of the maximal value, smallest index on ties.
pub fn argmax_lex<T: PartialOrd + Copy>(values: &[T]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// Among `candidates`, the one with the maximal value, smallest index on ties.
pub fn argmax_lex_among<T: PartialOrd + Copy>(values: &[T], candidates: &[usize]) -> usize {
    let mut best = candidates[0];
    for &c in &candidates[1..] {
        if values[c] > values[best] {
            best = c;
        }
    }
    best
}

/// Positional scoring rule for a non-increasing score vector.
pub fn positional(e: &Election, score_vector: &[f64]) -> Result<TallyResult> {
    let m = e.candidate_count();
    if score_vector.len() != m {
        return Err(Error::InvalidOperation(format!(
            "score vector of length {} for {m} candidates",
            score_vector.len()
        )));
    }
    if score_vector.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidOperation("score vector must be non-increasing".into()));
    }
    let mut scores = vec![0.0f64; m];
    for b in e.ballots() {
        for (pos, &c) in b.ranking.iter().enumerate() {
            scores[c] += score_vector[pos] * b.weight as f64;
        }
    }
    Ok(TallyResult { winner: argmax_lex(&scores), scores, trace: Trace::None })
}

pub fn plurality_vector(m: usize) -> Vec<f64> {
    let mut v = vec![0.0; m];
    v[0] = 1.0;
    v
}

pub fn borda_vector(m: usize) -> Vec<f64> {
    (0..m).map(|i| (m - 1 - i) as f64).collect()
}

pub fn plurality(e: &Election) -> Result<TallyResult> {
    positional(e, &plurality_vector(e.candidate_count()))
}

pub fn borda(e: &Election) -> Result<TallyResult> {
    positional(e, &borda_vector(e.candidate_count()))
}

/// Copeland with half a point per pairwise tie.
pub fn copeland(e: &Election) -> Result<TallyResult> {
    let m = e.candidate_count();
    let pref = PrefMatrix::build(e);
    let mut wins = vec![0u32; m];
    let mut ties = vec![0u32; m];
    for a in 0..m {
        for b in 0..m {
            if a == b {
                continue;
            }
            if pref.wins_head_to_head(a, b) {
                wins[a] += 1;
            } else if pref.ties_head_to_head(a, b) {
                ties[a] += 1;
            }
        }
    }
    let scores: Vec<f64> = (0..m).map(|c| wins[c] as f64 + 0.5 * ties[c] as f64).collect();
    Ok(TallyResult { winner: argmax_lex(&scores), scores, trace: Trace::Copeland { wins, ties } })
}

/// Maximin scores straight from a preference matrix.
pub fn maximin_scores(pref: &PrefMatrix) -> Vec<u64> {
    let m = pref.candidate_count();
    (0..m)
        .map(|c| {
            (0..m)
                .filter(|&o| o != c)
                .map(|o| pref.get(c, o))
                .min()
                .unwrap_or(pref.voter_count())
        })
        .collect()
}

pub fn maximin(e: &Election) -> Result<TallyResult> {
    let pref = PrefMatrix::build(e);
    let scores: Vec<f64> = maximin_scores(&pref).iter().map(|&s| s as f64).collect();
    Ok(TallyResult { winner: argmax_lex(&scores), scores, trace: Trace::None })
}

/// Single transferable vote. Each round eliminates the candidate with
/// the smallest plurality score on the reduced profile; among tied
/// minima the largest index is eliminated, so surviving candidates keep
/// the same lexicographic preference as winner tie-breaking.
pub fn stv(e: &Election) -> Result<TallyResult> {
    let m = e.candidate_count();
    let mut alive = vec![true; m];
    let mut eliminated = Vec::with_capacity(m.saturating_sub(1));
    let mut final_counts = top_counts(e);
    for _ in 1..m {
        let mut counts = vec![0u64; m];
        for b in e.ballots() {
            if let Some(&top) = b.ranking.iter().find(|&&c| alive[c]) {
                counts[top] += b.weight;
            }
        }
        let mut victim = None::<usize>;
        for c in 0..m {
            if alive[c] && victim.is_none_or(|v| counts[c] <= counts[v]) {
                victim = Some(c);
            }
        }
        let victim = victim.expect("at least one alive candidate");
        alive[victim] = false;
        eliminated.push(victim);
        final_counts = counts;
    }
    let winner = alive.iter().position(|&a| a).expect("one candidate remains");
    let scores: Vec<f64> = final_counts.iter().map(|&c| c as f64).collect();
    Ok(TallyResult { winner, scores, trace: Trace::Stv { elimination_order: eliminated } })
}

/// Widest-path strengths between all candidate pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrengthMatrix {
    m: usize,
    vals: Vec<u64>,
}

impl StrengthMatrix {
    pub fn get(&self, a: usize, b: usize) -> u64 {
        self.vals[a * self.m + b]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.m).map(|a| (0..self.m).map(|b| self.get(a, b)).collect()).collect()
    }
}

/// All-pairs widest paths (max over paths of the minimum edge) by
/// dynamic programming over intermediates, admitting only intermediate
/// nodes for which `allowed` returns true. Endpoints are always free.
pub fn compute_strengths<F: Fn(usize) -> bool>(pref: &PrefMatrix, allowed: F) -> StrengthMatrix {
    let m = pref.candidate_count();
    let mut vals = vec![0u64; m * m];
    for a in 0..m {
        for b in 0..m {
            if a != b {
                vals[a * m + b] = pref.get(a, b);
            }
        }
    }
    for k in 0..m {
        if !allowed(k) {
            continue;
        }
        for a in 0..m {
            if a == k {
                continue;
            }
            let via_a = vals[a * m + k];
            if via_a == 0 {
                continue;
            }
            for b in 0..m {
                if b == k || b == a {
                    continue;
                }
                let through = via_a.min(vals[k * m + b]);
                if through > vals[a * m + b] {
                    vals[a * m + b] = through;
                }
            }
        }
    }
    StrengthMatrix { m, vals }
}

/// Schulze scores: one point per opponent whose strongest path back is
/// no stronger.
pub fn schulze_scores(pref: &PrefMatrix) -> (Vec<u64>, StrengthMatrix) {
    let m = pref.candidate_count();
    let strengths = compute_strengths(pref, |_| true);
    let scores = (0..m)
        .map(|a| {
            (0..m)
                .filter(|&b| b != a && strengths.get(a, b) >= strengths.get(b, a))
                .count() as u64
        })
        .collect();
    (scores, strengths)
}

pub fn schulze(e: &Election) -> Result<TallyResult> {
    let pref = PrefMatrix::build(e);
    let (scores, strengths) = schulze_scores(&pref);
    let scores: Vec<f64> = scores.iter().map(|&s| s as f64).collect();
    Ok(TallyResult {
        winner: argmax_lex(&scores),
        scores,
        trace: Trace::Schulze { strengths: strengths.rows() },
    })
}
