//! The election data model: candidates, weighted ordinal ballots and
//! alliance structures (disjoint partitions or laminar families).

use serde::Serialize;

use crate::error::{Error, Result};

/// A ranking shared by `weight` voters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ballot {
    pub weight: u64,
    /// Permutation of candidate indices, most preferred first.
    pub ranking: Vec<usize>,
}

impl Ballot {
    pub fn new(weight: u64, ranking: Vec<usize>) -> Self {
        Ballot { weight, ranking }
    }

    /// Position of candidate `c` in this ranking (0 = top).
    pub fn position_of(&self, c: usize) -> usize {
        self.ranking.iter().position(|&x| x == c).expect("candidate in ranking")
    }
}

/// Either a disjoint partition of the candidates or a laminar family
/// (any two sets are nested or disjoint).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum AllianceStructure {
    Partition(Vec<Vec<usize>>),
    Laminar(Vec<Vec<usize>>),
}

impl AllianceStructure {
    /// Partition where every candidate is in a singleton alliance.
    pub fn singletons(m: usize) -> Self {
        AllianceStructure::Partition((0..m).map(|c| vec![c]).collect())
    }

    pub fn is_partition(&self) -> bool {
        matches!(self, AllianceStructure::Partition(_))
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        match self {
            AllianceStructure::Partition(s) | AllianceStructure::Laminar(s) => s,
        }
    }

    /// Laminar family extended with a singleton `{c}` for every candidate.
    pub fn with_singleton_closure(&self, m: usize) -> Self {
        let mut sets: Vec<Vec<usize>> = self.sets().to_vec();
        for s in &mut sets {
            s.sort_unstable();
        }
        for c in 0..m {
            if !sets.iter().any(|s| s.len() == 1 && s[0] == c) {
                sets.push(vec![c]);
            }
        }
        sets.sort();
        sets.dedup();
        AllianceStructure::Laminar(sets)
    }

    fn canonicalize(&mut self) {
        let sets = match self {
            AllianceStructure::Partition(s) | AllianceStructure::Laminar(s) => s,
        };
        for s in sets.iter_mut() {
            s.sort_unstable();
        }
        sets.sort();
        sets.dedup();
    }

    fn validate(&self, m: usize) -> Result<()> {
        let sets = self.sets();
        if sets.is_empty() {
            return Err(Error::InvalidElection("no alliances".into()));
        }
        for s in sets {
            if s.is_empty() {
                return Err(Error::InvalidElection("empty alliance".into()));
            }
            for &c in s {
                if c >= m {
                    return Err(Error::InvalidElection(format!(
                        "alliance member {c} out of range (m = {m})"
                    )));
                }
            }
            for w in s.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::InvalidElection(format!(
                        "duplicate candidate {} in alliance",
                        w[0]
                    )));
                }
            }
        }
        match self {
            AllianceStructure::Partition(sets) => {
                let mut seen = vec![false; m];
                for s in sets {
                    for &c in s {
                        if seen[c] {
                            return Err(Error::InvalidElection(format!(
                                "candidate {c} in two alliances"
                            )));
                        }
                        seen[c] = true;
                    }
                }
                if let Some(c) = seen.iter().position(|&x| !x) {
                    return Err(Error::InvalidElection(format!(
                        "candidate {c} belongs to no alliance"
                    )));
                }
            }
            AllianceStructure::Laminar(sets) => {
                for (i, a) in sets.iter().enumerate() {
                    for b in sets.iter().skip(i + 1) {
                        let inter = a.iter().filter(|c| b.contains(c)).count();
                        let nested = inter == a.len().min(b.len());
                        if inter != 0 && !nested {
                            return Err(Error::InvalidElection(format!(
                                "alliances {a:?} and {b:?} overlap without nesting"
                            )));
                        }
                    }
                }
                let mut covered = vec![false; m];
                for s in sets {
                    for &c in s {
                        covered[c] = true;
                    }
                }
                if let Some(c) = covered.iter().position(|&x| !x) {
                    return Err(Error::InvalidElection(format!(
                        "candidate {c} belongs to no alliance"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// An election: candidates, weighted rankings, and an alliance structure.
///
/// Immutable after construction; every perturbation returns a new value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Election {
    labels: Vec<String>,
    ballots: Vec<Ballot>,
    alliances: AllianceStructure,
    /// Alliance index per candidate. For laminar structures this is the
    /// index of the *minimal* alliance containing the candidate.
    #[serde(skip)]
    alliance_idx: Vec<usize>,
    voters: u64,
}

impl Election {
    pub fn new(
        labels: Vec<String>,
        ballots: Vec<Ballot>,
        mut alliances: AllianceStructure,
    ) -> Result<Self> {
        let m = labels.len();
        if m == 0 {
            return Err(Error::InvalidElection("no candidates".into()));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(Error::InvalidElection(format!("duplicate label `{a}`")));
            }
        }
        if ballots.is_empty() {
            return Err(Error::InvalidElection("no ballots".into()));
        }
        let mut voters: u64 = 0;
        for b in &ballots {
            if b.weight == 0 {
                return Err(Error::InvalidElection("ballot with zero weight".into()));
            }
            voters += b.weight;
            let mut seen = vec![false; m];
            if b.ranking.len() != m {
                return Err(Error::InvalidElection(format!(
                    "ranking of length {} for {m} candidates",
                    b.ranking.len()
                )));
            }
            for &c in &b.ranking {
                if c >= m || seen[c] {
                    return Err(Error::InvalidElection(format!(
                        "ranking {:?} is not a permutation of 0..{m}",
                        b.ranking
                    )));
                }
                seen[c] = true;
            }
        }
        alliances.canonicalize();
        alliances.validate(m)?;
        let alliance_idx = match &alliances {
            AllianceStructure::Partition(sets) => {
                let mut idx = vec![0usize; m];
                for (i, s) in sets.iter().enumerate() {
                    for &c in s {
                        idx[c] = i;
                    }
                }
                idx
            }
            AllianceStructure::Laminar(sets) => {
                // minimal containing set per candidate
                let mut idx = vec![usize::MAX; m];
                for c in 0..m {
                    let mut best: Option<usize> = None;
                    for (i, s) in sets.iter().enumerate() {
                        if s.contains(&c)
                            && best.is_none_or(|b| s.len() < sets[b].len())
                        {
                            best = Some(i);
                        }
                    }
                    idx[c] = best.expect("coverage validated");
                }
                idx
            }
        };
        Ok(Election { labels, ballots, alliances, alliance_idx, voters })
    }

    /// Shorthand used throughout the tests: numeric labels, weighted
    /// rankings, partition given as index sets.
    pub fn from_parts(
        m: usize,
        votes: &[(u64, &[usize])],
        alliances: &[&[usize]],
    ) -> Result<Self> {
        Election::new(
            (0..m).map(|c| format!("c{c}")).collect(),
            votes.iter().map(|&(w, r)| Ballot::new(w, r.to_vec())).collect(),
            AllianceStructure::Partition(alliances.iter().map(|s| s.to_vec()).collect()),
        )
    }

    pub fn candidate_count(&self) -> usize {
        self.labels.len()
    }

    pub fn voter_count(&self) -> u64 {
        self.voters
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ballots(&self) -> &[Ballot] {
        &self.ballots
    }

    pub fn alliances(&self) -> &AllianceStructure {
        &self.alliances
    }

    pub fn alliance_sets(&self) -> &[Vec<usize>] {
        self.alliances.sets()
    }

    /// Index (into `alliance_sets`) of the alliance of `c`; minimal
    /// alliance in the laminar case.
    pub fn alliance_index_of(&self, c: usize) -> usize {
        self.alliance_idx[c]
    }

    /// Members of the (minimal) alliance of `c`.
    pub fn alliance_of(&self, c: usize) -> &[usize] {
        &self.alliances.sets()[self.alliance_idx[c]]
    }

    pub fn are_allies(&self, a: usize, b: usize) -> bool {
        match &self.alliances {
            AllianceStructure::Partition(_) => self.alliance_idx[a] == self.alliance_idx[b],
            AllianceStructure::Laminar(sets) => sets
                .iter()
                .any(|s| s.len() < self.labels.len() && s.contains(&a) && s.contains(&b)),
        }
    }

    pub fn is_no_ally(&self) -> bool {
        self.alliances.sets().iter().all(|s| s.len() == 1)
    }

    /// Same votes, different alliance structure.
    pub fn with_alliances(&self, alliances: AllianceStructure) -> Result<Self> {
        Election::new(self.labels.clone(), self.ballots.clone(), alliances)
    }

    /// Laminar copy with the singleton closure applied; partitions are
    /// reinterpreted as flat laminar families.
    pub fn closed_laminar(&self) -> Result<Self> {
        let closed = self.alliances.with_singleton_closure(self.candidate_count());
        self.with_alliances(closed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_permutation() {
        let e = Election::from_parts(3, &[(1, &[0, 0, 1][..])], &[&[0, 1][..], &[2][..]]);
        assert!(e.is_err());
    }

    #[test]
    fn rejects_uncovered_candidate() {
        let e = Election::from_parts(3, &[(1, &[0, 1, 2][..])], &[&[0, 1][..]]);
        assert!(e.is_err());
    }

    #[test]
    fn rejects_overlapping_partition() {
        let e = Election::from_parts(3, &[(1, &[0, 1, 2][..])], &[&[0, 1][..], &[1, 2][..]]);
        assert!(e.is_err());
    }

    #[test]
    fn laminar_validation() {
        let votes = vec![Ballot::new(1, vec![0, 1, 2, 3])];
        let labels: Vec<String> = (0..4).map(|c| format!("c{c}")).collect();
        let ok = AllianceStructure::Laminar(vec![vec![0, 1, 2], vec![0, 1], vec![3]]);
        assert!(Election::new(labels.clone(), votes.clone(), ok).is_ok());
        let bad = AllianceStructure::Laminar(vec![vec![0, 1], vec![1, 2], vec![3]]);
        assert!(Election::new(labels, votes, bad).is_err());
    }

    #[test]
    fn singleton_closure_covers_everyone() {
        let fam = AllianceStructure::Laminar(vec![vec![0, 1]]);
        let closed = fam.with_singleton_closure(3);
        let sets = closed.sets();
        assert!(sets.contains(&vec![0]));
        assert!(sets.contains(&vec![1]));
        assert!(sets.contains(&vec![2]));
        assert!(sets.contains(&vec![0, 1]));
    }

    #[test]
    fn minimal_alliance_in_laminar() {
        let labels: Vec<String> = (0..4).map(|c| format!("c{c}")).collect();
        let votes = vec![Ballot::new(1, vec![0, 1, 2, 3])];
        let fam = AllianceStructure::Laminar(vec![
            vec![0, 1, 2],
            vec![0, 1],
            vec![0],
            vec![1],
            vec![2],
            vec![3],
        ]);
        let e = Election::new(labels, votes, fam).unwrap();
        assert_eq!(e.alliance_of(0), &[0]);
        assert!(e.are_allies(0, 1));
        assert!(e.are_allies(0, 2));
        assert!(!e.are_allies(0, 3));
    }
}
