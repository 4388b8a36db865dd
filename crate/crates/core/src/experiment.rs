//! Primary-election compositions and the batch experiment runner:
//! per-alliance primaries (joint or disjoint electorates), detection of
//! non-optimal primary winners, Borda social welfare, and CSV/JSON
//! aggregation over a culture grid with per-cell checkpoints.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cultures::CultureSpec;
use crate::election::{AllianceStructure, Ballot, Election};
use crate::error::{Error, Result};
use crate::perturb::remove_candidates;
use crate::ruleid::RuleId;
use crate::rules::{TallyResult, Trace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimaryMode {
    Joint,
    Disjoint,
}

impl fmt::Display for PrimaryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimaryMode::Joint => write!(f, "joint"),
            PrimaryMode::Disjoint => write!(f, "disjoint"),
        }
    }
}

impl FromStr for PrimaryMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<PrimaryMode> {
        match s {
            "joint" => Ok(PrimaryMode::Joint),
            "disjoint" => Ok(PrimaryMode::Disjoint),
            _ => Err(Error::UnknownRule(format!("primary mode {s}"))),
        }
    }
}

/// Representative of alliance `alliance_idx` chosen by an in-alliance
/// primary. Joint primaries restrict candidates but keep every ballot;
/// disjoint primaries also restrict to the alliance's supporters
/// (voters whose overall top choice is in the alliance). A supporterless
/// alliance falls back to its lowest-indexed member.
pub fn primary_winner(
    e: &Election,
    alliance_idx: usize,
    mode: PrimaryMode,
    rule: &RuleId,
) -> Result<usize> {
    let sets = e.alliance_sets();
    let a = sets
        .get(alliance_idx)
        .ok_or_else(|| Error::InvalidOperation(format!("no alliance {alliance_idx}")))?;
    if a.len() == 1 {
        return Ok(a[0]);
    }
    let ballots: Vec<Ballot> = match mode {
        PrimaryMode::Joint => e.ballots().to_vec(),
        PrimaryMode::Disjoint => e
            .ballots()
            .iter()
            .filter(|b| a.contains(&b.ranking[0]))
            .cloned()
            .collect(),
    };
    if ballots.is_empty() {
        return Ok(*a.iter().min().expect("alliance non-empty"));
    }
    let restricted: Vec<Ballot> = ballots
        .iter()
        .map(|b| {
            Ballot::new(
                b.weight,
                b.ranking.iter().filter(|c| a.contains(c)).copied().collect(),
            )
        })
        .collect();
    let labels: Vec<String> = a.iter().map(|&c| e.labels()[c].clone()).collect();
    let local: Vec<usize> = (0..a.len()).collect();
    let mut remap = vec![usize::MAX; e.candidate_count()];
    for (new, &old) in a.iter().enumerate() {
        remap[old] = new;
    }
    let restricted: Vec<Ballot> = restricted
        .into_iter()
        .map(|b| Ballot::new(b.weight, b.ranking.iter().map(|&c| remap[c]).collect()))
        .collect();
    let primary = Election::new(
        labels,
        restricted,
        AllianceStructure::Partition(vec![local]),
    )?;
    Ok(a[rule.winner(&primary)?])
}

/// One representative per alliance, in alliance order.
pub fn representatives(e: &Election, mode: PrimaryMode, rule: &RuleId) -> Result<Vec<usize>> {
    (0..e.alliance_sets().len())
        .map(|i| primary_winner(e, i, mode, rule))
        .collect()
}

/// Winner of the election restricted to one representative per
/// alliance, in original candidate indices.
pub fn main_election_with_representatives(
    e: &Election,
    reps: &[usize],
    rule: &RuleId,
) -> Result<usize> {
    let sets = e.alliance_sets();
    if reps.len() != sets.len() {
        return Err(Error::InvalidOperation("need exactly one representative per alliance".into()));
    }
    for (i, &r) in reps.iter().enumerate() {
        if !sets[i].contains(&r) {
            return Err(Error::InvalidOperation(format!(
                "candidate {r} is not in alliance {i}"
            )));
        }
    }
    let removed: Vec<usize> = (0..e.candidate_count()).filter(|c| !reps.contains(c)).collect();
    let (main, map) = remove_candidates(e, &removed)?;
    Ok(map.to_old(rule.winner(&main)?))
}

/// Full primaries-then-main-election pipeline as a tally.
pub fn tally_with_primaries(e: &Election, base: &RuleId, mode: PrimaryMode) -> Result<TallyResult> {
    let reps = representatives(e, mode, base)?;
    let winner = main_election_with_representatives(e, &reps, base)?;
    Ok(TallyResult {
        winner,
        scores: vec![0.0; e.candidate_count()],
        trace: Trace::Primaries { representatives: reps },
    })
}

/// True when some losing alliance could have won the main election by
/// sending a different representative, all other representatives held
/// fixed.
pub fn has_nonoptimal_primary_winner(
    e: &Election,
    mode: PrimaryMode,
    rule: &RuleId,
) -> Result<bool> {
    let reps = representatives(e, mode, rule)?;
    let winner = main_election_with_representatives(e, &reps, rule)?;
    let sets = e.alliance_sets();
    for (i, a) in sets.iter().enumerate() {
        if a.contains(&winner) || a.len() < 2 {
            continue;
        }
        for &alt in a {
            if alt == reps[i] {
                continue;
            }
            let mut swapped = reps.clone();
            swapped[i] = alt;
            let w = main_election_with_representatives(e, &swapped, rule)?;
            if a.contains(&w) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Borda score of `c`: a ballot placing `c` at 0-indexed position `p`
/// contributes `m - 1 - p` per voter.
pub fn social_welfare(e: &Election, c: usize) -> u64 {
    let m = e.candidate_count() as u64;
    e.ballots()
        .iter()
        .map(|b| b.weight * (m - 1 - b.position_of(c) as u64))
        .sum()
}

pub fn welfare_of_rule(e: &Election, rule: &RuleId) -> Result<u64> {
    Ok(social_welfare(e, rule.winner(e)?))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ExperimentManifest {
    /// Culture heads, e.g. "ic" or "euc:d=1"; m, n, k come from the grid.
    pub cultures: Vec<String>,
    pub candidates: Vec<usize>,
    pub alliances: Vec<usize>,
    pub voters: u64,
    pub rules: Vec<String>,
    pub trials: u64,
    pub seed: u64,
}

impl ExperimentManifest {
    /// The full reference grid: both cultures in 1 to 3 dimensions,
    /// m in {8,10,12}, k in {2,3}, n = 101.
    pub fn reference_grid(trials: u64, seed: u64) -> Self {
        let mut rules = Vec::new();
        for f in ["plurality", "maximin", "schulze"] {
            rules.push(f.to_string());
            rules.push(format!("{f}+primaries:joint"));
            rules.push(format!("{f}+primaries:disjoint"));
            rules.push(format!("iw-{f}"));
            rules.push(format!("sw-{f}"));
        }
        ExperimentManifest {
            cultures: vec!["ic".into(), "euc:d=1".into(), "euc:d=2".into(), "euc:d=3".into()],
            candidates: vec![8, 10, 12],
            alliances: vec![2, 3],
            voters: 101,
            rules,
            trials,
            seed,
        }
    }

    pub fn cells(&self) -> Result<Vec<CellSpec>> {
        let mut cells = Vec::new();
        for culture in &self.cultures {
            for &m in &self.candidates {
                for &k in &self.alliances {
                    let joined = if culture.contains(':') {
                        format!("{culture},m={m},n={n},k={k}", n = self.voters)
                    } else {
                        format!("{culture}:m={m},n={n},k={k}", n = self.voters)
                    };
                    let spec: CultureSpec = joined.parse()?;
                    cells.push(CellSpec { index: cells.len(), spec: spec.with_seed(self.seed) });
                }
            }
        }
        Ok(cells)
    }

    pub fn parsed_rules(&self) -> Result<Vec<RuleId>> {
        self.rules.iter().map(|r| r.parse()).collect()
    }
}

#[derive(Debug, Clone)]
pub struct CellSpec {
    pub index: usize,
    pub spec: CultureSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ResultRow {
    pub culture: String,
    pub d: usize,
    pub m: usize,
    pub n: u64,
    pub k: usize,
    pub rule: String,
    pub mode: String,
    pub metric: String,
    pub value: f64,
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Serialize, Deserialize)]
struct Checkpoint {
    seed: u64,
    trials: u64,
    rows: Vec<ResultRow>,
}

fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// One cell's result rows; trials run in parallel on disjoint
/// substreams, aggregation is order-independent.
pub fn run_cell(manifest: &ExperimentManifest, cell: &CellSpec) -> Result<Vec<ResultRow>> {
    let rules = manifest.parsed_rules()?;
    let trials = manifest.trials;
    // stream layout: high bits identify the cell, low bits the trial
    let base_stream = (cell.index as u64) << 32;
    let mut per_trial: Vec<(u64, Vec<(f64, Option<bool>)>)> = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<(u64, Vec<(f64, Option<bool>)>)> {
            let e = cell.spec.sample_trial(base_stream | t)?;
            let mut outcomes = Vec::with_capacity(rules.len());
            for rule in &rules {
                let welfare = welfare_of_rule(&e, rule)? as f64;
                let spoiled = match rule {
                    RuleId::WithPrimaries { base, mode } => {
                        Some(has_nonoptimal_primary_winner(&e, *mode, base)?)
                    }
                    _ => None,
                };
                outcomes.push((welfare, spoiled));
            }
            Ok((t, outcomes))
        })
        .collect::<Result<Vec<_>>>()?;
    per_trial.sort_by_key(|&(t, _)| t);

    let (culture, d) = match cell.spec.culture {
        crate::cultures::Culture::Ic => ("ic".to_string(), 0),
        crate::cultures::Culture::Euclidean { dim } => ("euc".to_string(), dim),
    };
    let mut rows = Vec::new();
    for (ri, rule) in rules.iter().enumerate() {
        let mode = match rule {
            RuleId::WithPrimaries { mode, .. } => mode.to_string(),
            _ => String::new(),
        };
        let make = |metric: &str, values: &[f64]| {
            let (value, stderr) = mean_and_stderr(values);
            ResultRow {
                culture: culture.clone(),
                d,
                m: cell.spec.candidates,
                n: cell.spec.voters,
                k: cell.spec.alliances,
                rule: rule.to_string(),
                mode: mode.clone(),
                metric: metric.to_string(),
                value,
                stderr,
                trials,
                seed: manifest.seed,
            }
        };
        if matches!(rule, RuleId::WithPrimaries { .. }) {
            let flags: Vec<f64> = per_trial
                .iter()
                .map(|(_, o)| if o[ri].1 == Some(true) { 1.0 } else { 0.0 })
                .collect();
            rows.push(make("rate", &flags));
        }
        let welfare: Vec<f64> = per_trial.iter().map(|(_, o)| o[ri].0).collect();
        rows.push(make("mean_welfare", &welfare));
    }
    Ok(rows)
}

/// Run the whole grid, checkpointing each finished cell so interrupted
/// runs resume without recomputation. Emits results.csv and
/// results.json under `out_dir`.
pub fn run_experiment(manifest: &ExperimentManifest, out_dir: &Path) -> Result<Vec<ResultRow>> {
    let ckpt_dir = out_dir.join("checkpoints");
    fs::create_dir_all(&ckpt_dir)?;
    let mut all_rows = Vec::new();
    for cell in manifest.cells()? {
        let ckpt_path = ckpt_dir.join(format!("cell_{:04}.json", cell.index));
        let rows = match load_checkpoint(&ckpt_path, manifest) {
            Some(rows) => rows,
            None => {
                let rows = run_cell(manifest, &cell)?;
                let ckpt = Checkpoint {
                    seed: manifest.seed,
                    trials: manifest.trials,
                    rows: rows.clone(),
                };
                // atomic per-cell write: temp file then rename
                let tmp = ckpt_path.with_extension("json.tmp");
                fs::write(&tmp, serde_json::to_vec_pretty(&ckpt)?)?;
                fs::rename(&tmp, &ckpt_path)?;
                rows
            }
        };
        all_rows.extend(rows);
    }

    let mut writer = csv::Writer::from_path(out_dir.join("results.csv"))?;
    for row in &all_rows {
        writer.serialize(row)?;
    }
    writer.flush()?;

    #[derive(Serialize)]
    struct Output<'a> {
        schema_version: u32,
        manifest: &'a ExperimentManifest,
        rows: &'a [ResultRow],
    }
    let json = serde_json::to_vec_pretty(&Output {
        schema_version: 1,
        manifest,
        rows: &all_rows,
    })?;
    fs::write(out_dir.join("results.json"), json)?;
    Ok(all_rows)
}

fn load_checkpoint(path: &Path, manifest: &ExperimentManifest) -> Option<Vec<ResultRow>> {
    let bytes = fs::read(path).ok()?;
    let ckpt: Checkpoint = serde_json::from_slice(&bytes).ok()?;
    (ckpt.seed == manifest.seed && ckpt.trials == manifest.trials).then_some(ckpt.rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn plurality() -> RuleId {
        RuleId::Plurality
    }

    #[test]
    fn joint_primary_on_spoiler_demo_picks_adam() {
        // all 100 ballots restricted to {Adam, Alice}: Adam tops 46+6=52
        let e = fixtures::spoiler_demo();
        assert_eq!(primary_winner(&e, 0, PrimaryMode::Joint, &plurality()).unwrap(), 0);
    }

    #[test]
    fn disjoint_primary_on_spoiler_demo_picks_adam() {
        // supporters = 46 Adam-first + 5 Alice-first voters
        let e = fixtures::spoiler_demo();
        assert_eq!(primary_winner(&e, 0, PrimaryMode::Disjoint, &plurality()).unwrap(), 0);
    }

    #[test]
    fn singleton_alliances_represent_themselves() {
        let e = fixtures::spoiler_demo();
        for mode in [PrimaryMode::Joint, PrimaryMode::Disjoint] {
            assert_eq!(primary_winner(&e, 1, mode, &plurality()).unwrap(), 2);
        }
    }

    #[test]
    fn supporterless_alliance_falls_back_to_first_member() {
        // nobody tops {1, 2}; both candidates sit mid-ballot
        let e = Election::from_parts(
            4,
            &[(3, &[0, 1, 2, 3][..]), (2, &[3, 2, 1, 0][..])],
            &[&[0][..], &[1, 2][..], &[3][..]],
        )
        .unwrap();
        assert_eq!(primary_winner(&e, 1, PrimaryMode::Disjoint, &plurality()).unwrap(), 1);
    }

    #[test]
    fn main_election_matches_hand_counts() {
        let e = fixtures::spoiler_demo();
        // reps (Adam, Bob): Bob tops 5+43+6=54 of the restricted ballots
        assert_eq!(main_election_with_representatives(&e, &[0, 2], &plurality()).unwrap(), 2);
        // reps (Alice, Bob): Alice wins 51:49
        assert_eq!(main_election_with_representatives(&e, &[1, 2], &plurality()).unwrap(), 1);
        assert!(main_election_with_representatives(&e, &[2, 2], &plurality()).is_err());
        assert!(main_election_with_representatives(&e, &[0], &plurality()).is_err());
    }

    #[test]
    fn spoiler_demo_has_nonoptimal_primary_winner() {
        let e = fixtures::spoiler_demo();
        for mode in [PrimaryMode::Joint, PrimaryMode::Disjoint] {
            assert!(has_nonoptimal_primary_winner(&e, mode, &plurality()).unwrap());
        }
    }

    #[test]
    fn all_singletons_never_spoil() {
        let e = fixtures::cycle3();
        for mode in [PrimaryMode::Joint, PrimaryMode::Disjoint] {
            assert!(!has_nonoptimal_primary_winner(&e, mode, &plurality()).unwrap());
        }
    }

    #[test]
    fn welfare_matches_direct_position_sum() {
        let e = fixtures::faction_six();
        // a2 sits at positions 1,1,0,4 with weights 30,35,5,30
        assert_eq!(social_welfare(&e, 1), 30 * 4 + 35 * 4 + 5 * 5 + 30 * 1);
        let top = Election::from_parts(3, &[(4, &[0, 1, 2][..])], &[&[0, 1, 2][..]]).unwrap();
        assert_eq!(social_welfare(&top, 0), 8);
        assert_eq!(social_welfare(&top, 2), 0);
    }

    #[test]
    fn primaries_tally_reports_representatives() {
        let e = fixtures::spoiler_demo();
        let rule: RuleId = "plurality+primaries:joint".parse().unwrap();
        let r = rule.tally(&e).unwrap();
        assert_eq!(r.winner, 2); // Adam represents, Bob wins the main election
        match r.trace {
            Trace::Primaries { representatives } => assert_eq!(representatives, vec![0, 2]),
            _ => panic!("expected primaries trace"),
        }
    }

    #[test]
    fn tiny_experiment_is_deterministic_and_checkpointed() {
        let manifest = ExperimentManifest {
            cultures: vec!["ic".into(), "euc:d=1".into()],
            candidates: vec![4],
            alliances: vec![2],
            voters: 9,
            rules: vec!["plurality".into(), "plurality+primaries:joint".into()],
            trials: 20,
            seed: 99,
        };
        let dir = tempfile::tempdir().unwrap();
        let rows1 = run_experiment(&manifest, dir.path()).unwrap();
        let csv1 = fs::read(dir.path().join("results.csv")).unwrap();
        // second run resumes from checkpoints and reproduces the bytes
        let rows2 = run_experiment(&manifest, dir.path()).unwrap();
        let csv2 = fs::read(dir.path().join("results.csv")).unwrap();
        assert_eq!(rows1, rows2);
        assert_eq!(csv1, csv2);
        // fresh directory, same manifest: identical output bytes
        let dir2 = tempfile::tempdir().unwrap();
        run_experiment(&manifest, dir2.path()).unwrap();
        let csv3 = fs::read(dir2.path().join("results.csv")).unwrap();
        assert_eq!(csv1, csv3);
        // rate rows only for the primaries rule; welfare bounded
        for row in &rows1 {
            assert!(row.value >= 0.0);
            if row.metric == "rate" {
                assert_eq!(row.rule, "plurality+primaries:joint");
                assert!(row.value <= 1.0);
            } else {
                assert!(row.value <= (row.n * (row.m as u64 - 1)) as f64);
            }
        }
    }

    #[test]
    fn example_welfare_value_from_scores() {
        let e = fixtures::faction_six();
        let w = welfare_of_rule(&e, &RuleId::Borda).unwrap();
        assert!(w <= e.voter_count() * 5);
    }
}
