//! Pairwise preference counts and the majority / Condorcet winners
//! derived from them.

use crate::election::Election;

/// `m x m` matrix of pairwise preference counts; entry `(a, b)` is the
/// number of voters ranking `a` above `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefMatrix {
    m: usize,
    n: u64,
    counts: Vec<u64>,
}

impl PrefMatrix {
    pub fn build(e: &Election) -> Self {
        let m = e.candidate_count();
        let mut counts = vec![0u64; m * m];
        for b in e.ballots() {
            for (i, &a) in b.ranking.iter().enumerate() {
                for &c in &b.ranking[i + 1..] {
                    counts[a * m + c] += b.weight;
                }
            }
        }
        PrefMatrix { m, n: e.voter_count(), counts }
    }

    /// Build directly from counts; used by tests and random-matrix oracles.
    pub fn from_counts(m: usize, n: u64, counts: Vec<u64>) -> Self {
        assert_eq!(counts.len(), m * m);
        PrefMatrix { m, n, counts }
    }

    pub fn candidate_count(&self) -> usize {
        self.m
    }

    pub fn voter_count(&self) -> u64 {
        self.n
    }

    /// Number of voters ranking `a` above `b`.
    pub fn get(&self, a: usize, b: usize) -> u64 {
        self.counts[a * self.m + b]
    }

    /// Strict majority preference of `a` over `b`. Exact ties are not wins.
    pub fn wins_head_to_head(&self, a: usize, b: usize) -> bool {
        assert_ne!(a, b, "head-to-head comparison of a candidate with itself");
        2 * self.get(a, b) > self.n
    }

    pub fn ties_head_to_head(&self, a: usize, b: usize) -> bool {
        assert_ne!(a, b);
        2 * self.get(a, b) == self.n
    }
}

/// Per-candidate top-rank counts (plurality scores).
pub fn top_counts(e: &Election) -> Vec<u64> {
    let mut counts = vec![0u64; e.candidate_count()];
    for b in e.ballots() {
        counts[b.ranking[0]] += b.weight;
    }
    counts
}

/// Candidate ranked on top by a strict majority, if any.
pub fn majority_winner(e: &Election) -> Option<usize> {
    let n = e.voter_count();
    top_counts(e).iter().position(|&c| 2 * c > n)
}

/// Candidate winning head-to-head against every other, if any.
pub fn condorcet_winner(e: &Election) -> Option<usize> {
    let pref = PrefMatrix::build(e);
    condorcet_winner_of(&pref)
}

pub fn condorcet_winner_of(pref: &PrefMatrix) -> Option<usize> {
    let m = pref.candidate_count();
    (0..m).find(|&a| (0..m).all(|b| b == a || pref.wins_head_to_head(a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn single_ballot_counts() {
        let e = Election::from_parts(2, &[(1, &[0, 1][..])], &[&[0][..], &[1][..]]).unwrap();
        let p = PrefMatrix::build(&e);
        assert_eq!(p.get(0, 1), 1);
        assert_eq!(p.get(1, 0), 0);
    }

    #[test]
    fn support_cycle_counts() {
        // 3/37/11/49 votes over {a1, a2, b}: a2 beats a1 60:40, a1 beats
        // b 52:48, b beats a2 51:49.
        let e = fixtures::support_cycle();
        let p = PrefMatrix::build(&e);
        assert_eq!(p.get(1, 0), 60);
        assert_eq!(p.get(0, 2), 52);
        assert_eq!(p.get(2, 1), 51);
        assert!(p.wins_head_to_head(0, 2));
        assert_eq!(condorcet_winner(&e), None);
    }

    #[test]
    fn faction_six_counts() {
        let e = fixtures::faction_six();
        let p = PrefMatrix::build(&e);
        assert_eq!(p.get(3, 2), 70);
    }

    #[test]
    fn exact_tie_is_not_a_win() {
        let e = Election::from_parts(
            2,
            &[(1, &[0, 1][..]), (1, &[1, 0][..])],
            &[&[0][..], &[1][..]],
        )
        .unwrap();
        let p = PrefMatrix::build(&e);
        assert!(!p.wins_head_to_head(0, 1));
        assert!(p.ties_head_to_head(0, 1));
    }

    #[test]
    fn spoiler_demo_head_to_head() {
        // 100 voters; Bob beats Adam 54:46.
        let e = fixtures::spoiler_demo();
        let p = PrefMatrix::build(&e);
        assert!(p.wins_head_to_head(2, 0));
        assert_eq!(p.get(2, 0), 54);
    }

    #[test]
    fn unanimity_has_majority_and_condorcet_winner() {
        let e = Election::from_parts(
            3,
            &[(3, &[0, 1, 2][..])],
            &[&[0][..], &[1][..], &[2][..]],
        )
        .unwrap();
        assert_eq!(majority_winner(&e), Some(0));
        assert_eq!(condorcet_winner(&e), Some(0));
    }

    #[test]
    fn cycle_has_no_condorcet_winner() {
        let e = fixtures::cycle3();
        assert_eq!(majority_winner(&e), None);
        assert_eq!(condorcet_winner(&e), None);
    }
}
