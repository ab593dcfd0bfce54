//! Bounded bidirectional search for move scripts relating two presentations,
//! invariant gates that refute equivalence, certificate checking, and the
//! constructive macros used to build related pairs.

mod macros;
mod recorder;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Bound;

use thiserror::Error;

use crate::error::{Error, RibbonError, ScriptError};
use crate::moves::{apply_script, enumerate_moves, Move, MoveScript};
use crate::quandle::{count_colorings, FiniteQuandle};
use crate::ribbon::RibbonData;

pub use macros::{
    macro_clone_handle, macro_merge_bases, unknotting_drill, MergeWitness, DRILL_DEPTH,
    DRILL_STATES,
};
pub use recorder::ScriptRecorder;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Cap on the sum of the depths reached from both sides.
    pub depth: usize,
    /// Trivial-handle moves allowed on each side.
    pub weak_budget: usize,
    /// Cap on the number of distinct states visited over both sides.
    pub state_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            depth: 8,
            weak_budget: 0,
            state_cap: 200_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    Coloring {
        quandle: String,
        count_a: u64,
        count_b: u64,
    },
    Genus {
        genus_a: usize,
        genus_b: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub script_a: MoveScript,
    pub script_b: MoveScript,
    /// Common canonical form reached by both scripts.
    pub meeting: RibbonData,
    pub weak_used_a: usize,
    pub weak_used_b: usize,
    pub weak_budget: usize,
    /// Search depth (both sides together) at which the forms met.
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Equivalent(Certificate),
    Refuted(Refutation),
    Unknown { states: usize, depth: usize },
}

/// Dihedral quandles of orders 3, 5 and 7.
pub fn default_gate_quandles() -> Vec<FiniteQuandle> {
    [3, 5, 7]
        .into_iter()
        .map(|m| FiniteQuandle::dihedral(m).expect("m >= 1"))
        .collect()
}

/// First invariant that tells `a` and `b` apart.
///
/// Coloring counts are compared over `quandles` in order. Genus is compared
/// only as far as `weak_budget` allows: each side may change its genus by at
/// most `weak_budget`, so with a budget of 0 the genera must agree.
pub fn invariant_gate(
    a: &RibbonData,
    b: &RibbonData,
    quandles: &[FiniteQuandle],
    weak_budget: usize,
) -> Result<Option<Refutation>, Error> {
    for q in quandles {
        let count_a = count_colorings(a, q)?;
        let count_b = count_colorings(b, q)?;
        if count_a != count_b {
            return Ok(Some(Refutation::Coloring {
                quandle: String::from(q.id()),
                count_a,
                count_b,
            }));
        }
    }
    let genus_a = a.genus()?;
    let genus_b = b.genus()?;
    if genus_a.abs_diff(genus_b) > 2 * weak_budget {
        return Ok(Some(Refutation::Genus { genus_a, genus_b }));
    }
    Ok(None)
}

/// Expands a whole search level. Each entry of `level` is a canonical state
/// with the trivial-handle budget it has left; the result lists its
/// neighbours as produced by [`enumerate_moves`], in the same order.
pub trait Expander {
    fn expand(&self, level: &[(RibbonData, usize)]) -> Vec<Vec<(Move, RibbonData)>>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Expander for Sequential {
    fn expand(&self, level: &[(RibbonData, usize)]) -> Vec<Vec<(Move, RibbonData)>> {
        level
            .iter()
            .map(|(s, left)| enumerate_moves(s, *left))
            .collect()
    }
}

type Key = (RibbonData, usize);

struct Node {
    parent: Option<(Key, Move)>,
    depth: usize,
}

struct Side {
    raw: RibbonData,
    visited: BTreeMap<Key, Node>,
    frontier: Vec<Key>,
    depth: usize,
}

impl Side {
    fn new(raw: RibbonData, root: RibbonData) -> Self {
        let key = (root, 0);
        let mut visited = BTreeMap::new();
        visited.insert(
            key.clone(),
            Node {
                parent: None,
                depth: 0,
            },
        );
        Side {
            raw,
            visited,
            frontier: alloc::vec![key],
            depth: 0,
        }
    }

    /// Entries for `form` with at most `max_weak` trivial-handle moves.
    fn with_form<'a>(
        &'a self,
        form: &RibbonData,
        max_weak: usize,
    ) -> impl Iterator<Item = (&'a Key, &'a Node)> + 'a {
        let lo = (form.clone(), 0);
        let hi = (form.clone(), max_weak);
        self.visited
            .range((Bound::Included(lo), Bound::Included(hi)))
    }

    fn path(&self, key: &Key) -> Vec<Move> {
        let mut moves = Vec::new();
        let mut cur = key.clone();
        while let Some((parent, mv)) = &self.visited[&cur].parent {
            moves.push(mv.clone());
            cur = parent.clone();
        }
        moves.reverse();
        moves
    }

    fn script(&self, key: &Key) -> Result<MoveScript, Error> {
        let mut recorder = ScriptRecorder::new(self.raw.clone());
        for mv in self.path(key) {
            recorder.apply_canonical(&mv)?;
        }
        // leave the data in its canonical shape apart from labels
        recorder.normalize()?;
        Ok(recorder.finish().1)
    }
}

pub fn search_equiv(
    a: &RibbonData,
    b: &RibbonData,
    config: SearchConfig,
) -> Result<SearchOutcome, Error> {
    search_equiv_with(a, b, config, &default_gate_quandles(), &Sequential)
}

fn check_input(data: &RibbonData) -> Result<(), Error> {
    if let Some(d) = data.validate().into_iter().next() {
        return Err(RibbonError::Invalid(alloc::format!("{d}")).into());
    }
    if !data.is_connected() {
        return Err(RibbonError::NotAKnot.into());
    }
    Ok(())
}

/// Canonical form with the dimension set to `dim`; the dimension takes no
/// part in moves and would otherwise keep the two sides from ever meeting.
fn form_in_dim(data: &RibbonData, dim: u32) -> RibbonData {
    let mut form = data.canonical_form();
    form.dim = dim;
    form
}

/// Bidirectional breadth-first search over canonical forms.
///
/// The invariant gate runs first. Then whole levels are expanded, always on
/// the side with the smaller frontier (side A on ties), until the sides meet,
/// the summed depth reaches `config.depth`, or more than `config.state_cap`
/// states have been visited. A state is a canonical form together with the
/// number of trivial-handle moves used to reach it; a state is dropped when
/// the same form is already known with no more such moves. Among meetings
/// found in one level the one with the shallowest partner is chosen, ties
/// broken by form order, so the outcome depends only on the inputs and caps.
pub fn search_equiv_with(
    a: &RibbonData,
    b: &RibbonData,
    config: SearchConfig,
    quandles: &[FiniteQuandle],
    expander: &dyn Expander,
) -> Result<SearchOutcome, Error> {
    if config.depth == 0 || config.state_cap == 0 {
        return Err(Error::InvalidCaps);
    }
    check_input(a)?;
    check_input(b)?;
    if let Some(r) = invariant_gate(a, b, quandles, config.weak_budget)? {
        return Ok(SearchOutcome::Refuted(r));
    }
    let budget = config.weak_budget;
    let mut sides = [
        Side::new(a.clone(), form_in_dim(a, a.dim)),
        Side::new(b.clone(), form_in_dim(b, a.dim)),
    ];
    if sides[0].frontier[0] == sides[1].frontier[0] {
        let key = sides[0].frontier[0].clone();
        return certificate(&sides, &key, &key, budget, 0).map(SearchOutcome::Equivalent);
    }

    loop {
        let reached = sides[0].depth + sides[1].depth;
        let states = sides[0].visited.len() + sides[1].visited.len();
        if reached >= config.depth {
            return Ok(SearchOutcome::Unknown {
                states,
                depth: reached,
            });
        }
        let (fa, fb) = (sides[0].frontier.len(), sides[1].frontier.len());
        let x = match (fa, fb) {
            (0, 0) => {
                return Ok(SearchOutcome::Unknown {
                    states,
                    depth: reached,
                })
            }
            (0, _) => 1,
            (_, 0) => 0,
            _ if fa <= fb => 0,
            _ => 1,
        };
        let y = 1 - x;

        let level: Vec<(RibbonData, usize)> = sides[x]
            .frontier
            .iter()
            .map(|(form, used)| (form.clone(), budget - used))
            .collect();
        let expanded = expander.expand(&level);
        let depth = sides[x].depth + 1;
        let mut next_frontier = Vec::new();
        let mut states = states;
        for (parent, successors) in sides[x].frontier.clone().into_iter().zip(expanded) {
            for (mv, mut form) in successors {
                form.dim = a.dim;
                let used = parent.1 + usize::from(mv.is_weak());
                if used > budget || sides[x].with_form(&form, used).next().is_some() {
                    continue;
                }
                let key = (form, used);
                sides[x].visited.insert(
                    key.clone(),
                    Node {
                        parent: Some((parent.clone(), mv)),
                        depth,
                    },
                );
                next_frontier.push(key);
                states += 1;
                if states > config.state_cap {
                    return Ok(SearchOutcome::Unknown {
                        states,
                        depth: reached,
                    });
                }
            }
        }
        next_frontier.sort();
        sides[x].frontier = next_frontier;
        sides[x].depth = depth;

        let mut best: Option<(usize, &Key, &Key)> = None;
        for key in &sides[x].frontier {
            for (other, node) in sides[y].with_form(&key.0, budget) {
                if best.as_ref().map_or(true, |(d, _, _)| node.depth < *d) {
                    best = Some((node.depth, key, other));
                }
            }
        }
        if let Some((other_depth, key, other)) = best {
            let (ka, kb) = if x == 0 { (key, other) } else { (other, key) };
            let (ka, kb) = (ka.clone(), kb.clone());
            return certificate(&sides, &ka, &kb, budget, depth + other_depth)
                .map(SearchOutcome::Equivalent);
        }
    }
}

fn certificate(
    sides: &[Side; 2],
    ka: &Key,
    kb: &Key,
    budget: usize,
    depth: usize,
) -> Result<Certificate, Error> {
    Ok(Certificate {
        script_a: sides[0].script(ka)?,
        script_b: sides[1].script(kb)?,
        meeting: ka.0.clone(),
        weak_used_a: ka.1,
        weak_used_b: kb.1,
        weak_budget: budget,
        depth,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("outcome is not an equivalence")]
    NotEquivalent,
    #[error("script {side} does not replay: {source}")]
    Replay { side: char, source: ScriptError },
    #[error("script {side} does not reach the meeting form")]
    Mismatch { side: char },
    #[error("script {side} uses {actual} trivial-handle moves, certificate declares {declared}")]
    WeakCount {
        side: char,
        actual: usize,
        declared: usize,
    },
    #[error("script {side} uses {used} trivial-handle moves, budget is {budget}")]
    OverBudget {
        side: char,
        used: usize,
        budget: usize,
    },
}

/// Replays both scripts and checks that they reach the meeting form with the
/// declared number of trivial-handle moves, within budget.
pub fn certify_detailed(
    a: &RibbonData,
    b: &RibbonData,
    outcome: &SearchOutcome,
) -> Result<(), CertifyError> {
    let SearchOutcome::Equivalent(cert) = outcome else {
        return Err(CertifyError::NotEquivalent);
    };
    let sides = [
        ('A', a, &cert.script_a, cert.weak_used_a),
        ('B', b, &cert.script_b, cert.weak_used_b),
    ];
    for (side, input, script, declared) in sides {
        let end =
            apply_script(input, script).map_err(|source| CertifyError::Replay { side, source })?;
        if form_in_dim(&end, cert.meeting.dim) != cert.meeting {
            return Err(CertifyError::Mismatch { side });
        }
        let actual = script.weak_moves();
        if actual != declared {
            return Err(CertifyError::WeakCount {
                side,
                actual,
                declared,
            });
        }
        if actual > cert.weak_budget {
            return Err(CertifyError::OverBudget {
                side,
                used: actual,
                budget: cert.weak_budget,
            });
        }
    }
    Ok(())
}

pub fn certify(a: &RibbonData, b: &RibbonData, outcome: &SearchOutcome) -> bool {
    certify_detailed(a, b, outcome).is_ok()
}
