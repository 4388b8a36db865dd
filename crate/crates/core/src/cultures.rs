//! Seeded statistical cultures producing random elections with
//! alliances: impartial culture (uniform rankings, uniform alliance
//! assignment) and Euclidean cultures (spatial preferences in the unit
//! cube). Trial substreams make sampling order-independent.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::election::{AllianceStructure, Ballot, Election};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Culture {
    Ic,
    Euclidean { dim: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CultureSpec {
    pub culture: Culture,
    pub candidates: usize,
    pub voters: u64,
    pub alliances: usize,
    #[serde(default)]
    pub seed: u64,
}

impl CultureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.candidates < self.alliances || self.alliances < 2 {
            return Err(Error::InvalidCulture {
                spec: self.to_string(),
                msg: "need m >= k >= 2".into(),
            });
        }
        if self.voters == 0 {
            return Err(Error::InvalidCulture {
                spec: self.to_string(),
                msg: "need at least one voter".into(),
            });
        }
        if let Culture::Euclidean { dim } = self.culture {
            if dim == 0 {
                return Err(Error::InvalidCulture {
                    spec: self.to_string(),
                    msg: "dimension must be positive".into(),
                });
            }
        }
        Ok(())
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Election for trial index `t`; distinct trials use disjoint
    /// generator streams, so any subset can be sampled in any order.
    pub fn sample_trial(&self, trial: u64) -> Result<Election> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial);
        match self.culture {
            Culture::Ic => sample_ic(self, &mut rng),
            Culture::Euclidean { dim } => sample_euclidean(self, dim, &mut rng),
        }
    }

    pub fn sample(&self) -> Result<Election> {
        self.sample_trial(0)
    }
}

fn labels(m: usize) -> Vec<String> {
    (0..m).map(|c| format!("c{c}")).collect()
}

fn alliance_sets(assignment: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut sets = vec![Vec::new(); k];
    for (c, &a) in assignment.iter().enumerate() {
        sets[a].push(c);
    }
    sets
}

fn sample_ic(spec: &CultureSpec, rng: &mut ChaCha8Rng) -> Result<Election> {
    let m = spec.candidates;
    let k = spec.alliances;
    let ballots: Vec<Ballot> = (0..spec.voters)
        .map(|_| {
            let mut ranking: Vec<usize> = (0..m).collect();
            ranking.shuffle(rng);
            Ballot::new(1, ranking)
        })
        .collect();
    // uniform assignment, redrawn until every alliance is inhabited
    let sets = loop {
        let assignment: Vec<usize> = (0..m).map(|_| rng.gen_range(0..k)).collect();
        let sets = alliance_sets(&assignment, k);
        if sets.iter().all(|s| !s.is_empty()) {
            break sets;
        }
    };
    Election::new(labels(m), ballots, AllianceStructure::Partition(sets))
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn sample_euclidean(spec: &CultureSpec, dim: usize, rng: &mut ChaCha8Rng) -> Result<Election> {
    let m = spec.candidates;
    let k = spec.alliances;
    let point = |rng: &mut ChaCha8Rng| -> Vec<f64> { (0..dim).map(|_| rng.gen::<f64>()).collect() };
    // a whole instance is redrawn when some alliance ends up empty
    loop {
        let alliance_points: Vec<Vec<f64>> = (0..k).map(|_| point(rng)).collect();
        let candidate_points: Vec<Vec<f64>> = (0..m).map(|_| point(rng)).collect();
        let voter_points: Vec<Vec<f64>> = (0..spec.voters).map(|_| point(rng)).collect();
        let assignment: Vec<usize> = candidate_points
            .iter()
            .map(|cp| {
                let mut best = 0;
                for a in 1..k {
                    if squared_distance(cp, &alliance_points[a])
                        < squared_distance(cp, &alliance_points[best])
                    {
                        best = a;
                    }
                }
                best
            })
            .collect();
        let sets = alliance_sets(&assignment, k);
        if sets.iter().any(|s| s.is_empty()) {
            continue;
        }
        let ballots: Vec<Ballot> = voter_points
            .iter()
            .map(|vp| {
                let mut ranking: Vec<usize> = (0..m).collect();
                // distance ties (measure zero) break toward lower index
                ranking.sort_by(|&a, &b| {
                    squared_distance(vp, &candidate_points[a])
                        .partial_cmp(&squared_distance(vp, &candidate_points[b]))
                        .unwrap()
                        .then(a.cmp(&b))
                });
                Ballot::new(1, ranking)
            })
            .collect();
        return Election::new(labels(m), ballots, AllianceStructure::Partition(sets));
    }
}

impl fmt::Display for CultureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.culture {
            Culture::Ic => write!(
                f,
                "ic:m={},n={},k={}",
                self.candidates, self.voters, self.alliances
            ),
            Culture::Euclidean { dim } => write!(
                f,
                "euc:d={},m={},n={},k={}",
                dim, self.candidates, self.voters, self.alliances
            ),
        }
    }
}

impl FromStr for CultureSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<CultureSpec> {
        let bad = |msg: &str| Error::InvalidCulture { spec: s.to_string(), msg: msg.into() };
        let (head, rest) = s.split_once(':').ok_or_else(|| bad("expected <culture>:<params>"))?;
        let mut dim = None;
        let mut m = None;
        let mut n = None;
        let mut k = None;
        let mut seed = 0u64;
        for pair in rest.split(',') {
            let (key, value) = pair.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            match key.trim() {
                "d" => dim = Some(value.trim().parse().map_err(|_| bad("bad d"))?),
                "m" => m = Some(value.trim().parse().map_err(|_| bad("bad m"))?),
                "n" => n = Some(value.trim().parse().map_err(|_| bad("bad n"))?),
                "k" => k = Some(value.trim().parse().map_err(|_| bad("bad k"))?),
                "seed" => seed = value.trim().parse().map_err(|_| bad("bad seed"))?,
                other => return Err(bad(&format!("unknown key {other}"))),
            }
        }
        let culture = match head.trim() {
            "ic" => {
                if dim.is_some() {
                    return Err(bad("ic takes no dimension"));
                }
                Culture::Ic
            }
            "euc" => Culture::Euclidean { dim: dim.ok_or_else(|| bad("euc needs d="))? },
            other => return Err(bad(&format!("unknown culture {other}"))),
        };
        let spec = CultureSpec {
            culture,
            candidates: m.ok_or_else(|| bad("missing m="))?,
            voters: n.ok_or_else(|| bad("missing n="))?,
            alliances: k.ok_or_else(|| bad("missing k="))?,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }
}
