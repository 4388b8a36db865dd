//! Small hand-built elections used across the test suites and handy as
//! demo inputs. Candidate indices are documented per fixture.

use crate::election::{AllianceStructure, Ballot, Election};

fn build(labels: &[&str], votes: &[(u64, &[usize])], alliances: &[&[usize]]) -> Election {
    Election::new(
        labels.iter().map(|s| s.to_string()).collect(),
        votes.iter().map(|&(w, r)| Ballot::new(w, r.to_vec())).collect(),
        AllianceStructure::Partition(alliances.iter().map(|s| s.to_vec()).collect()),
    )
    .expect("fixture is valid")
}

/// Two-party spoiler scenario, 100 voters. Candidates: 0 = Adam,
/// 1 = Alice (allies), 2 = Bob. Plurality elects Bob although a
/// majority prefers the {Adam, Alice} alliance.
pub fn spoiler_demo() -> Election {
    build(
        &["Adam", "Alice", "Bob"],
        &[
            (46, &[0, 1, 2][..]),
            (5, &[1, 2, 0][..]),
            (43, &[2, 1, 0][..]),
            (6, &[2, 0, 1][..]),
        ],
        &[&[0, 1][..], &[2][..]],
    )
}

/// Three-candidate majority cycle among allies {0, 1} and opponent 2:
/// 1 beats 0 (60:40), 0 beats 2 (52:48), 2 beats 1 (51:49). 100 voters.
pub fn support_cycle() -> Election {
    build(
        &["a1", "a2", "b"],
        &[
            (3, &[0, 2, 1][..]),
            (37, &[2, 0, 1][..]),
            (11, &[2, 1, 0][..]),
            (49, &[1, 0, 2][..]),
        ],
        &[&[0, 1][..], &[2][..]],
    )
}

/// Symmetric three-cycle, no-ally: a>b>c, b>c>a, c>a>b.
pub fn cycle3() -> Election {
    build(
        &["a", "b", "c"],
        &[(1, &[0, 1, 2][..]), (1, &[1, 2, 0][..]), (1, &[2, 0, 1][..])],
        &[&[0][..], &[1][..], &[2][..]],
    )
}

/// Three-cycle with {a, b} allied against c; separates independent-winner
/// from solitary-winner behavior.
pub fn iw_sw_conflict() -> Election {
    build(
        &["a", "b", "c"],
        &[(1, &[0, 1, 2][..]), (1, &[1, 2, 0][..]), (1, &[2, 0, 1][..])],
        &[&[0, 1][..], &[2][..]],
    )
}

/// Two voters over allies {0, 1, 2} and opponent 3. Candidates 3 and 0
/// are clones but not similar; 0 and 2 are similar but not clones.
pub fn clone_vs_similar() -> Election {
    build(
        &["a1", "a2", "a3", "b"],
        &[(1, &[3, 0, 1, 2][..]), (1, &[1, 3, 0, 2][..])],
        &[&[0, 1, 2][..], &[3][..]],
    )
}

/// Two-alliance election ({0,1} vs {2,3}, three voters) in which no
/// candidate is an independent winner for a rule electing 0 originally
/// and 2 after the {0,1} split.
pub fn no_independent_winner() -> Election {
    build(
        &["a1", "a2", "b1", "b2"],
        &[(1, &[3, 0, 2, 1][..]), (1, &[1, 3, 0, 2][..]), (1, &[2, 0, 1, 3][..])],
        &[&[0, 1][..], &[2, 3][..]],
    )
}

/// Six candidates, 100 voters; alliance {a1..a4} = {0,1,2,3} against
/// singletons b = 4 and c = 5. The four alliance-aware rules disagree:
/// IW-Plurality -> a1, SW-Plurality -> a3, IW-Maximin -> a2,
/// SW-Maximin -> a4.
pub fn faction_six() -> Election {
    build(
        &["a1", "a2", "a3", "a4", "b", "c"],
        &[
            (30, &[4, 1, 3, 2, 0, 5][..]),
            (35, &[0, 1, 3, 2, 4, 5][..]),
            (5, &[1, 0, 3, 2, 4, 5][..]),
            (30, &[2, 5, 3, 4, 1, 0][..]),
        ],
        &[&[0, 1, 2, 3][..], &[4][..], &[5][..]],
    )
}

/// Six candidates with allies {a1, a2} = {0, 1}; 12 voters. Both Maximin
/// and Schulze elect a member of {0, 1} under every alliance structure
/// refinement. Candidates: a1=0, a2=1, b=2, c=3, d=4, e=5.
pub fn two_pillar_six() -> Election {
    build(
        &["a1", "a2", "b", "c", "d", "e"],
        &[
            (1, &[2, 1, 3, 5, 4, 0][..]),
            (1, &[0, 5, 4, 3, 2, 1][..]),
            (1, &[4, 0, 5, 3, 2, 1][..]),
            (1, &[1, 3, 2, 5, 4, 0][..]),
            (2, &[1, 5, 4, 0, 3, 2][..]),
            (2, &[0, 3, 2, 1, 5, 4][..]),
            (2, &[1, 3, 2, 0, 5, 4][..]),
            (2, &[4, 0, 5, 2, 1, 3][..]),
        ],
        &[&[0, 1][..], &[2][..], &[3][..], &[4][..], &[5][..]],
    )
}

/// Four candidates, allies {a1, a2} = {0, 1} vs singletons b = 2, c = 3;
/// 15 voters. After removing a2, a1 wins under Maximin; after removing
/// a1, b is the Condorcet winner.
pub fn solitary_asymmetry() -> Election {
    build(
        &["a1", "a2", "b", "c"],
        &[
            (5, &[1, 0, 2, 3][..]),
            (5, &[3, 0, 2, 1][..]),
            (3, &[2, 1, 3, 0][..]),
            (1, &[1, 2, 3, 0][..]),
            (1, &[1, 2, 0, 3][..]),
        ],
        &[&[0, 1][..], &[2][..], &[3][..]],
    )
}

/// Five candidates, allies {a1, a2} = {0, 1}; 100 voters. Plurality on
/// the no-ally refinement elects a1.
pub fn plurality_pillar_five() -> Election {
    build(
        &["a1", "a2", "b", "c", "d"],
        &[
            (10, &[0, 1, 2, 3, 4][..]),
            (35, &[0, 2, 3, 4, 1][..]),
            (10, &[3, 2, 4, 0, 1][..]),
            (10, &[3, 4, 2, 0, 1][..]),
            (35, &[1, 4, 3, 2, 0][..]),
        ],
        &[&[0, 1][..], &[2][..], &[3][..], &[4][..]],
    )
}

/// Three-cycle extended with a trailing duplicate of c: candidates
/// a=0, b=1, c=2, c'=3 with alliance {c, c'}. Copeland violates
/// independence of similar allies here.
pub fn copeland_similar_break() -> Election {
    build(
        &["a", "b", "c", "c_dup"],
        &[
            (1, &[0, 1, 2, 3][..]),
            (1, &[1, 2, 3, 0][..]),
            (1, &[2, 3, 0, 1][..]),
        ],
        &[&[0][..], &[1][..], &[2, 3][..]],
    )
}

/// Two-voter tie with a duplicated ally below b: candidates a=0, b=1,
/// b'=2 with alliance {b, b'}. Borda violates independence of similar
/// allies here.
pub fn borda_similar_break() -> Election {
    build(
        &["a", "b", "b_dup"],
        &[(1, &[0, 1, 2][..]), (1, &[1, 2, 0][..])],
        &[&[0][..], &[1, 2][..]],
    )
}

/// b is the Condorcet winner but the {a1, a2} alliance has the top
/// alliance-aware plurality score; IW-/SW-Plurality elect a1.
pub fn condorcet_break() -> Election {
    build(
        &["a1", "a2", "b"],
        &[(2, &[0, 2, 1][..]), (2, &[1, 2, 0][..]), (1, &[2, 0, 1][..])],
        &[&[0, 1][..], &[2][..]],
    )
}

/// Plurality clone-splitting fixture: t1 = 0 and t2 = 1 split a majority
/// that z = 2 wins. 7 voters.
pub fn clone_split() -> Election {
    build(
        &["t1", "t2", "z"],
        &[(2, &[0, 1, 2][..]), (2, &[1, 0, 2][..]), (3, &[2, 0, 1][..])],
        &[&[0][..], &[1][..], &[2][..]],
    )
}

/// Two-level nested alliance structure over four candidates:
/// outer {0, 1, 2}, inner {0, 1}, plus singletons; d = 3 opposes.
pub fn nested_demo() -> Election {
    Election::new(
        vec!["a1".into(), "a2".into(), "a3".into(), "d".into()],
        vec![
            Ballot::new(4, vec![0, 1, 2, 3]),
            Ballot::new(3, vec![1, 0, 2, 3]),
            Ballot::new(2, vec![2, 0, 1, 3]),
            Ballot::new(4, vec![3, 2, 1, 0]),
        ],
        AllianceStructure::Laminar(vec![vec![0, 1, 2], vec![0, 1], vec![3]])
            .with_singleton_closure(4),
    )
    .expect("fixture is valid")
}
