//! Per-instance axiom checkers with counterexample search. A pass
//! certifies only the given election: every perturbation in the
//! axiom's family was tried (up to the documented split-enumeration
//! cap) and none broke the axiom's implication. Refutations of a rule
//! come from the fuzzer, which mines counterexamples over sampled
//! elections.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cultures::CultureSpec;
use crate::election::{AllianceStructure, Election};
use crate::error::{Error, Result};
use crate::perturb::{group_offsets, promote_candidate, remove_candidates, split_alliance};
use crate::pref::{condorcet_winner, majority_winner};
use crate::ruleid::RuleId;
use crate::similar::{find_clone_sets, similar_pairs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomId {
    AllyNoHarm,
    ResistanceSplitting,
    SimilarAllies,
    AllianceMonotonicity,
    Monotonicity,
    Majority,
    Condorcet,
    Cloneproof,
    IwConsistency,
    SwConsistency,
}

impl AxiomId {
    pub fn all() -> [AxiomId; 10] {
        use AxiomId::*;
        [
            AllyNoHarm,
            ResistanceSplitting,
            SimilarAllies,
            AllianceMonotonicity,
            Monotonicity,
            Majority,
            Condorcet,
            Cloneproof,
            IwConsistency,
            SwConsistency,
        ]
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            AxiomId::AllyNoHarm => "ally-no-harm",
            AxiomId::ResistanceSplitting => "resistance-splitting",
            AxiomId::SimilarAllies => "similar-allies",
            AxiomId::AllianceMonotonicity => "alliance-monotonicity",
            AxiomId::Monotonicity => "monotonicity",
            AxiomId::Majority => "majority",
            AxiomId::Condorcet => "condorcet",
            AxiomId::Cloneproof => "cloneproof",
            AxiomId::IwConsistency => "iw-consistency",
            AxiomId::SwConsistency => "sw-consistency",
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AxiomId {
    type Err = Error;

    fn from_str(s: &str) -> Result<AxiomId> {
        AxiomId::all()
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::UnknownAxiom(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// No perturbation in the enumerated family violated the axiom on
    /// this election. Says nothing about other elections.
    HoldsOnInstance,
    /// As above, but a large alliance forced sub-sampling of splits.
    HoldsOnSampledSplits,
    Counterexample,
}

/// A replayable violation: both elections, both winners (original
/// candidate indices), and what was perturbed.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub original: Election,
    pub perturbed: Election,
    pub description: String,
    pub winner_before: usize,
    pub winner_after: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub axiom: AxiomId,
    pub rule: String,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub perturbations_tried: u64,
    /// Scope statement for consumers of serialized reports.
    pub scope: &'static str,
}

const SCOPE: &str = "per-instance check: a pass certifies this election only";

/// Splits of one alliance are fully enumerated up to this many; larger
/// alliances get deterministic sub-sampling and a downgraded verdict.
pub const SPLIT_CAP: u64 = 1 << 15;

struct Checker {
    axiom: AxiomId,
    rule: String,
    tried: u64,
    sampled: bool,
    witness: Option<Witness>,
}

impl Checker {
    fn new(axiom: AxiomId, rule: &RuleId) -> Self {
        Checker { axiom, rule: rule.to_string(), tried: 0, sampled: false, witness: None }
    }

    fn violated(&mut self, w: Witness) {
        if self.witness.is_none() {
            self.witness = Some(w);
        }
    }

    fn finish(self) -> AxiomReport {
        let verdict = match (&self.witness, self.sampled) {
            (Some(_), _) => Verdict::Counterexample,
            (None, true) => Verdict::HoldsOnSampledSplits,
            (None, false) => Verdict::HoldsOnInstance,
        };
        AxiomReport {
            axiom: self.axiom,
            rule: self.rule,
            verdict,
            witness: self.witness,
            perturbations_tried: self.tried,
            scope: SCOPE,
        }
    }
}

fn require_partition(e: &Election, what: &str) -> Result<()> {
    match e.alliances() {
        AllianceStructure::Partition(_) => Ok(()),
        AllianceStructure::Laminar(_) => Err(Error::InvalidOperation(format!(
            "{what} is checked on disjoint alliances only"
        ))),
    }
}

/// Removing a candidate whose alliance was losing must not hand the win
/// to that alliance.
pub fn check_ally_no_harm(e: &Election, rule: &RuleId) -> Result<AxiomReport> {
    require_partition(e, "ally-no-harm")?;
    let mut ck = Checker::new(AxiomId::AllyNoHarm, rule);
    let winner = rule.winner(e)?;
    for c in 0..e.candidate_count() {
        if ck.witness.is_some() {
            break;
        }
        let alliance = e.alliance_of(c);
        if alliance.contains(&winner) {
            continue;
        }
        let (perturbed, map) = remove_candidates(e, &[c])?;
        let after = map.to_old(rule.winner(&perturbed)?);
        ck.tried += 1;
        if alliance.contains(&after) {
            ck.violated(Witness {
                original: e.clone(),
                perturbed,
                description: format!(
                    "removed losing candidate {c}; the win moved into their alliance"
                ),
                winner_before: winner,
                winner_after: after,
            });
        }
    }
    Ok(ck.finish())
}

/// Splitting a losing alliance in two must not change the winner.
pub fn check_resistance_splitting(e: &Election, rule: &RuleId) -> Result<AxiomReport> {
    require_partition(e, "resistance to alliance splitting")?;
    let mut ck = Checker::new(AxiomId::ResistanceSplitting, rule);
    let winner = rule.winner(e)?;
    'alliances: for (i, a) in e.alliance_sets().iter().enumerate() {
        if a.contains(&winner) || a.len() < 2 {
            continue;
        }
        // fix a[0] in the first part; each mask over the rest is one
        // 2-partition, the all-ones mask leaves an empty complement
        let free = a.len() - 1;
        let total = if free >= 63 { u64::MAX } else { (1u64 << free) - 1 };
        let exhaustive = total <= SPLIT_CAP;
        if !exhaustive {
            ck.sampled = true;
        }
        let budget = total.min(SPLIT_CAP);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5711_7000 ^ i as u64);
        for step in 0..budget {
            let mask = if exhaustive { step } else { rng.gen_range(0..total) };
            let part: Vec<usize> = std::iter::once(a[0])
                .chain(a[1..].iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &c)| c))
                .collect();
            let perturbed = split_alliance(e, i, &part)?;
            let after = rule.winner(&perturbed)?;
            ck.tried += 1;
            if after != winner {
                ck.violated(Witness {
                    original: e.clone(),
                    perturbed,
                    description: format!(
                        "split losing alliance {i} into {part:?} and the rest"
                    ),
                    winner_before: winner,
                    winner_after: after,
                });
                break 'alliances;
            }
        }
    }
    Ok(ck.finish())
}

/// Removing one of two similar allies must not move the win out of (or
/// fail to keep it in) their alliance, and must not change the winner
/// at all when the alliance was losing.
pub fn check_independence_similar_allies(e: &Election, rule: &RuleId) -> Result<AxiomReport> {
    require_partition(e, "independence of similar allies")?;
    let mut ck = Checker::new(AxiomId::SimilarAllies, rule);
    let winner = rule.winner(e)?;
    'pairs: for (a, b) in similar_pairs(e) {
        for (gone, kept) in [(a, b), (b, a)] {
            let alliance = e.alliance_of(kept);
            let (perturbed, map) = remove_candidates(e, &[gone])?;
            let after = map.to_old(rule.winner(&perturbed)?);
            ck.tried += 1;
            let ok = if alliance.contains(&winner) {
                alliance.contains(&after)
            } else {
                after == winner
            };
            if !ok {
                ck.violated(Witness {
                    original: e.clone(),
                    perturbed,
                    description: format!(
                        "removed candidate {gone}, similar to ally {kept}"
                    ),
                    winner_before: winner,
                    winner_after: after,
                });
                break 'pairs;
            }
        }
    }
    Ok(ck.finish())
}

/// Promoting any member of the winning alliance one step on one ballot
/// must keep the win inside that alliance.
pub fn check_alliance_monotonicity(e: &Election, rule: &RuleId) -> Result<AxiomReport> {
    let mut ck = Checker::new(AxiomId::AllianceMonotonicity, rule);
    let winner = rule.winner(e)?;
    let alliance = e.alliance_of(winner).to_vec();
    'outer: for &c in &alliance {
        for (g, offset) in group_offsets(e).into_iter().enumerate() {
            if e.ballots()[g].ranking[0] == c {
                continue;
            }
            let perturbed = promote_candidate(e, offset, c)?;
            let after = rule.winner(&perturbed)?;
            ck.tried += 1;
            if !alliance.contains(&after) {
                ck.violated(Witness {
                    original: e.clone(),
                    perturbed,
                    description: format!(
                        "promoted winning-alliance member {c} on ballot group {g}"
                    ),
                    winner_before: winner,
                    winner_after: after,
                });
                break 'outer;
            }
        }
    }
    Ok(ck.finish())
}

/// Promoting the winner one step on one ballot must keep them winning.
pub fn check_monotonicity(e: &Election, rule: &RuleId) -> Result<AxiomReport> {
    let mut ck = Checker::new(AxiomId::Monotonicity, rule);
    let winner = rule.winner(e)?;
    for (g, offset) in group_offsets(e).into_iter().enumerate() {
        if e.ballots()[g].ranking[0] == winner {
            continue;
        }
        let perturbed = promote_candidate(e, offset, winner)?;
        let after = rule.winner(&perturbed)?;
        ck.tried += 1;
        if after != winner {
            ck.violated(Witness {
                original: e.clone(),
                perturbed,
                description: format!("promoted the winner on ballot group {g}"),
                winner_before: winner,
                winner_after: after,
            });
            break;
        }
    }
    Ok(ck.finish())
}

pub fn check_majority(e: &Election, rule: &RuleId) -> Result<AxiomReport> {
    let mut ck = Checker::new(AxiomId::Majority, rule);
    let winner = rule.winner(e)?;
    ck.tried = 1;
    if let Some(mw) = majority_winner(e) {
        if winner != mw {
            ck.violated(Witness {
                original: e.clone(),
                perturbed: e.clone(),
                description: format!("majority winner {mw} was not elected"),
                winner_before: winner,
                winner_after: winner,
            });
        }
    }
    Ok(ck.finish())
}

pub fn check_condorcet(e: &Election, rule: &RuleId) -> Result<AxiomReport> {
    let mut ck = Checker::new(AxiomId::Condorcet, rule);
    let winner = rule.winner(e)?;
    ck.tried = 1;
    if let Some(cw) = condorcet_winner(e) {
        if winner != cw {
            ck.violated(Witness {
                original: e.clone(),
                perturbed: e.clone(),
                description: format!("Condorcet winner {cw} was not elected"),
                winner_before: winner,
                winner_after: winner,
            });
        }
    }
    Ok(ck.finish())
}

/// Removing one member of a clone set (a block ranked contiguously by
/// every voter) must keep the winner, or keep the win inside the set
/// when a clone was winning.
pub fn check_cloneproof(e: &Election, rule: &RuleId) -> Result<AxiomReport> {
    let mut ck = Checker::new(AxiomId::Cloneproof, rule);
    let winner = rule.winner(e)?;
    'sets: for set in find_clone_sets(e) {
        for &c in &set {
            let (perturbed, map) = remove_candidates(e, &[c])?;
            let after = map.to_old(rule.winner(&perturbed)?);
            ck.tried += 1;
            let ok = if set.contains(&winner) {
                set.contains(&after) && after != c
            } else {
                after == winner
            };
            if !ok {
                ck.violated(Witness {
                    original: e.clone(),
                    perturbed,
                    description: format!("removed clone {c} from clone set {set:?}"),
                    winner_before: winner,
                    winner_after: after,
                });
                break 'sets;
            }
        }
    }
    Ok(ck.finish())
}

/// The candidate who would win after leaving their alliance to run
/// alone, if any. At most one exists for sane rules; finding two is
/// reported as an error.
pub fn independent_winner(e: &Election, rule: &RuleId) -> Result<Option<usize>> {
    require_partition(e, "independent winner")?;
    let mut found = Vec::new();
    for c in 0..e.candidate_count() {
        let split = if e.alliance_of(c).len() == 1 {
            e.clone()
        } else {
            split_alliance(e, e.alliance_index_of(c), &[c])?
        };
        if rule.winner(&split)? == c {
            found.push(c);
        }
    }
    match found.len() {
        0 => Ok(None),
        1 => Ok(Some(found[0])),
        _ => Err(Error::InvalidOperation(format!(
            "multiple independent winners {found:?}; rule is not basic"
        ))),
    }
}

/// Candidates who would win after all their allies withdrew. Defined
/// for two-alliance elections.
pub fn solitary_winners(e: &Election, rule: &RuleId) -> Result<Vec<usize>> {
    require_partition(e, "solitary winner")?;
    let k = e.alliance_sets().len();
    if k != 2 {
        return Err(Error::NotTwoAlliance(k));
    }
    let mut winners = Vec::new();
    for c in 0..e.candidate_count() {
        let allies: Vec<usize> =
            e.alliance_of(c).iter().copied().filter(|&x| x != c).collect();
        let (reduced, map) = remove_candidates(e, &allies)?;
        if map.to_old(rule.winner(&reduced)?) == c {
            winners.push(c);
        }
    }
    Ok(winners)
}

pub fn check_iw_consistency(e: &Election, rule: &RuleId) -> Result<AxiomReport> {
    let mut ck = Checker::new(AxiomId::IwConsistency, rule);
    let winner = rule.winner(e)?;
    ck.tried = e.candidate_count() as u64;
    if let Some(iw) = independent_winner(e, rule)? {
        if winner != iw {
            let perturbed = if e.alliance_of(iw).len() == 1 {
                e.clone()
            } else {
                split_alliance(e, e.alliance_index_of(iw), &[iw])?
            };
            ck.violated(Witness {
                original: e.clone(),
                perturbed,
                description: format!("independent winner {iw} was not elected"),
                winner_before: winner,
                winner_after: iw,
            });
        }
    }
    Ok(ck.finish())
}

pub fn check_sw_consistency(e: &Election, rule: &RuleId) -> Result<AxiomReport> {
    let mut ck = Checker::new(AxiomId::SwConsistency, rule);
    let winner = rule.winner(e)?;
    let solitary = solitary_winners(e, rule)?;
    ck.tried = e.candidate_count() as u64;
    if !solitary.is_empty() && !solitary.contains(&winner) {
        let c = solitary[0];
        let allies: Vec<usize> =
            e.alliance_of(c).iter().copied().filter(|&x| x != c).collect();
        let (perturbed, _) = remove_candidates(e, &allies)?;
        ck.violated(Witness {
            original: e.clone(),
            perturbed,
            description: format!(
                "solitary winners {solitary:?} exist but {winner} was elected"
            ),
            winner_before: winner,
            winner_after: c,
        });
    }
    Ok(ck.finish())
}

pub fn check(e: &Election, rule: &RuleId, axiom: AxiomId) -> Result<AxiomReport> {
    match axiom {
        AxiomId::AllyNoHarm => check_ally_no_harm(e, rule),
        AxiomId::ResistanceSplitting => check_resistance_splitting(e, rule),
        AxiomId::SimilarAllies => check_independence_similar_allies(e, rule),
        AxiomId::AllianceMonotonicity => check_alliance_monotonicity(e, rule),
        AxiomId::Monotonicity => check_monotonicity(e, rule),
        AxiomId::Majority => check_majority(e, rule),
        AxiomId::Condorcet => check_condorcet(e, rule),
        AxiomId::Cloneproof => check_cloneproof(e, rule),
        AxiomId::IwConsistency => check_iw_consistency(e, rule),
        AxiomId::SwConsistency => check_sw_consistency(e, rule),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzHit {
    pub trial: u64,
    pub report: AxiomReport,
}

/// Check `axiom` on `trials` sampled elections; returns every
/// counterexample, sorted by trial index. Trials run in parallel on
/// disjoint generator substreams, so the result is independent of
/// scheduling.
pub fn fuzz(
    rule: &RuleId,
    axiom: AxiomId,
    culture: &CultureSpec,
    trials: u64,
    seed: u64,
) -> Result<Vec<FuzzHit>> {
    if trials == 0 {
        return Err(Error::InvalidOperation("fuzz needs at least one trial".into()));
    }
    let spec = culture.with_seed(seed);
    let mut hits: Vec<FuzzHit> = (0..trials)
        .into_par_iter()
        .map(|trial| -> Result<Option<FuzzHit>> {
            let e = spec.sample_trial(trial)?;
            let report = check(&e, rule, axiom)?;
            Ok((report.verdict == Verdict::Counterexample).then_some(FuzzHit { trial, report }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    hits.sort_by_key(|h| h.trial);
    Ok(hits)
}

/// Replay a witness: re-tally both elections and re-check the recorded
/// winners. Used to guarantee every reported counterexample reproduces.
pub fn verify_witness(report: &AxiomReport, rule: &RuleId) -> Result<bool> {
    let Some(w) = &report.witness else {
        return Ok(true);
    };
    let before = rule.winner(&w.original)?;
    Ok(before == w.winner_before)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cultures::Culture;
    use crate::fixtures;

    fn rule(s: &str) -> RuleId {
        s.parse().unwrap()
    }

    #[test]
    fn axiom_ids_round_trip() {
        for a in AxiomId::all() {
            assert_eq!(a.as_str().parse::<AxiomId>().unwrap(), a);
        }
        assert!("harmless".parse::<AxiomId>().is_err());
    }

    #[test]
    fn plain_plurality_harms_allies_on_spoiler_demo() {
        // removing Adam hands the election to his ally Alice
        let e = fixtures::spoiler_demo();
        let r = check_ally_no_harm(&e, &rule("plurality")).unwrap();
        assert_eq!(r.verdict, Verdict::Counterexample);
        let w = r.witness.unwrap();
        assert_eq!(w.winner_before, 2);
        assert_eq!(w.winner_after, 1);
        assert!(w.description.contains("removed losing candidate 0"));
    }

    #[test]
    fn sw_plurality_passes_ally_no_harm_on_spoiler_demo() {
        let e = fixtures::spoiler_demo();
        let r = check_ally_no_harm(&e, &rule("sw-plurality")).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsOnInstance);
    }

    #[test]
    fn splitting_resistance_on_example_fixtures() {
        let e = fixtures::no_independent_winner();
        for id in ["iw-maximin", "sw-maximin", "iw-plurality", "sw-plurality"] {
            let r = check_resistance_splitting(&e, &rule(id)).unwrap();
            assert_eq!(r.verdict, Verdict::HoldsOnInstance, "{id}");
        }
        // singleton alliances admit no splits at all
        let r = check_resistance_splitting(&fixtures::cycle3(), &rule("plurality")).unwrap();
        assert_eq!(r.perturbations_tried, 0);
        assert_eq!(r.verdict, Verdict::HoldsOnInstance);
    }

    #[test]
    fn copeland_breaks_similar_allies_on_prop1_fixture() {
        let e = fixtures::copeland_similar_break();
        let r = check_independence_similar_allies(&e, &rule("copeland")).unwrap();
        assert_eq!(r.verdict, Verdict::Counterexample);
    }

    #[test]
    fn borda_breaks_similar_allies_on_prop1_fixture() {
        let e = fixtures::borda_similar_break();
        let r = check_independence_similar_allies(&e, &rule("borda")).unwrap();
        assert_eq!(r.verdict, Verdict::Counterexample);
    }

    #[test]
    fn alliance_rules_keep_similar_allies_on_example2() {
        let e = fixtures::clone_vs_similar();
        for id in ["iw-plurality", "sw-plurality", "iw-maximin", "sw-maximin"] {
            let r = check_independence_similar_allies(&e, &rule(id)).unwrap();
            assert_eq!(r.verdict, Verdict::HoldsOnInstance, "{id}");
        }
    }

    #[test]
    fn promotions_never_hurt_sw_maximin_on_example4() {
        let e = fixtures::faction_six();
        let r = check_alliance_monotonicity(&e, &rule("sw-maximin")).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsOnInstance);
        let r = check_monotonicity(&e, &rule("sw-maximin")).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsOnInstance);
    }

    #[test]
    fn majority_and_condorcet_hold_trivially_on_unanimity() {
        let e = Election::from_parts(3, &[(5, &[1, 0, 2][..])], &[&[0, 1, 2][..]]).unwrap();
        for id in ["plurality", "maximin", "schulze", "iw-plurality", "sw-maximin"] {
            assert_eq!(check_majority(&e, &rule(id)).unwrap().verdict, Verdict::HoldsOnInstance);
            assert_eq!(
                check_condorcet(&e, &rule(id)).unwrap().verdict,
                Verdict::HoldsOnInstance,
                "{id}"
            );
        }
    }

    #[test]
    fn plurality_variants_fail_condorcet_on_seed_fixture() {
        let e = fixtures::condorcet_break();
        for id in ["iw-plurality", "sw-plurality"] {
            let r = check_condorcet(&e, &rule(id)).unwrap();
            assert_eq!(r.verdict, Verdict::Counterexample, "{id}");
        }
        for id in ["iw-maximin", "sw-maximin", "iw-schulze", "sw-schulze"] {
            let r = check_condorcet(&e, &rule(id)).unwrap();
            assert_eq!(r.verdict, Verdict::HoldsOnInstance, "{id}");
        }
    }

    #[test]
    fn plurality_is_not_cloneproof() {
        let e = fixtures::clone_split();
        let r = check_cloneproof(&e, &rule("plurality")).unwrap();
        assert_eq!(r.verdict, Verdict::Counterexample);
        let r = check_cloneproof(&e, &rule("schulze")).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsOnInstance);
    }

    #[test]
    fn independent_winner_on_reference_elections() {
        // support-cycle election: a2 runs alone and wins under IW-Maximin
        let e = fixtures::support_cycle();
        assert_eq!(independent_winner(&e, &rule("iw-maximin")).unwrap(), Some(1));
        // intro election under SW-Plurality: Alice wins, but whoever
        // leaves their alliance loses to Bob, and Bob loses to Alice
        let e = fixtures::spoiler_demo();
        assert_eq!(independent_winner(&e, &rule("sw-plurality")).unwrap(), None);
        assert_eq!(
            check_iw_consistency(&e, &rule("sw-plurality")).unwrap().verdict,
            Verdict::HoldsOnInstance
        );
        // the two-against-two cycle: a2 runs alone and still tops the
        // alliance-aware plurality scores, so IW-Plurality elects them
        let e = fixtures::no_independent_winner();
        assert_eq!(independent_winner(&e, &rule("iw-plurality")).unwrap(), Some(1));
        assert_eq!(rule("iw-plurality").winner(&e).unwrap(), 1);
    }

    #[test]
    fn solitary_winners_on_support_cycle() {
        // a1 beats b 52:48 head-to-head; a2 loses 49:51
        let e = fixtures::support_cycle();
        for id in ["maximin", "sw-maximin", "schulze"] {
            assert_eq!(solitary_winners(&e, &rule(id)).unwrap(), vec![0], "{id}");
        }
    }

    #[test]
    fn solitary_winner_needs_two_alliances() {
        let e = fixtures::cycle3();
        assert!(matches!(
            solitary_winners(&e, &rule("plurality")),
            Err(Error::NotTwoAlliance(3))
        ));
    }

    #[test]
    fn iw_and_sw_consistency_conflict_on_seed_fixtures() {
        let e = fixtures::iw_sw_conflict();
        // the cycle fixture separates the two families
        let iw_fails_sw = check_sw_consistency(&e, &rule("iw-plurality")).unwrap();
        let sw_fails_iw = check_iw_consistency(&e, &rule("sw-plurality")).unwrap();
        assert_eq!(iw_fails_sw.verdict, Verdict::Counterexample);
        assert_eq!(sw_fails_iw.verdict, Verdict::Counterexample);
        // and each family satisfies its own axiom here
        assert_eq!(
            check_iw_consistency(&e, &rule("iw-plurality")).unwrap().verdict,
            Verdict::HoldsOnInstance
        );
        assert_eq!(
            check_sw_consistency(&e, &rule("sw-plurality")).unwrap().verdict,
            Verdict::HoldsOnInstance
        );
    }

    #[test]
    fn fuzz_is_deterministic_and_clean_for_iw_plurality() {
        let spec = CultureSpec {
            culture: Culture::Ic,
            candidates: 5,
            voters: 9,
            alliances: 2,
            seed: 0,
        };
        let hits =
            fuzz(&rule("iw-plurality"), AxiomId::AllyNoHarm, &spec, 300, 17).unwrap();
        assert!(hits.is_empty());
        let again = fuzz(&rule("iw-plurality"), AxiomId::AllyNoHarm, &spec, 300, 17).unwrap();
        assert_eq!(hits.len(), again.len());
    }

    #[test]
    fn fuzz_finds_ally_no_harm_breaks_for_plain_plurality() {
        let spec = CultureSpec {
            culture: Culture::Ic,
            candidates: 5,
            voters: 9,
            alliances: 2,
            seed: 0,
        };
        let hits = fuzz(&rule("plurality"), AxiomId::AllyNoHarm, &spec, 500, 3).unwrap();
        assert!(!hits.is_empty());
        for h in &hits {
            assert!(verify_witness(&h.report, &rule("plurality")).unwrap());
        }
    }

    #[test]
    fn stv_is_not_monotone() {
        // x wins: tops tie 3:3:3, z (largest index) is eliminated, the
        // three z ballots transfer to x. Promoting x on the y>x>z
        // ballot makes y the first eliminee; two y>z>x ballots then
        // carry z past x, 5:4.
        let e = Election::from_parts(
            3,
            &[
                (3, &[0, 1, 2][..]),
                (1, &[1, 0, 2][..]),
                (2, &[1, 2, 0][..]),
                (3, &[2, 0, 1][..]),
            ],
            &[&[0][..], &[1][..], &[2][..]],
        )
        .unwrap();
        assert_eq!(RuleId::Stv.winner(&e).unwrap(), 0);
        let r = check_monotonicity(&e, &rule("stv")).unwrap();
        assert_eq!(r.verdict, Verdict::Counterexample);
        let w = r.witness.unwrap();
        assert_eq!(w.winner_before, 0);
        assert_eq!(w.winner_after, 2);
    }
}
