use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

use super::{search_equiv, ScriptRecorder, SearchConfig, SearchOutcome};
use crate::error::{Error, MoveError};
use crate::moves::{traverse, Direction, End, Move, MoveScript};
use crate::ribbon::{reduce_word, Handle, RibbonData, SignedLetter};

/// Path for merging a doomed base into a surviving one: handles traversed
/// one after another, starting at the doomed base and ending at the
/// survivor. The concatenated crossing word, once freely reduced, must not
/// cross the doomed base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeWitness {
    pub survivor: usize,
    pub route: Vec<(usize, Direction)>,
}

fn macro_error(msg: impl Into<String>) -> Error {
    Error::Macro(msg.into())
}

/// Merges `doomed` into `witness.survivor` after attaching one trivial
/// handle to `doomed`.
///
/// The new handle's end is slid along the route, every crossing of `doomed`
/// is rerouted along the new handle onto the survivor, and every other
/// handle end on `doomed` is slid across. The doomed base is then joined to
/// the rest only by the new handle; if that handle crosses nothing the base
/// is destabilized. Handles made trivial along the way are removed.
pub fn macro_merge_bases(
    data: &RibbonData,
    doomed: usize,
    witness: &MergeWitness,
) -> Result<(RibbonData, MoveScript), Error> {
    if !data.is_valid() {
        return Err(macro_error("invalid ribbon data"));
    }
    if doomed == 0 || doomed > data.base_count {
        return Err(MoveError::BaseOutOfRange(doomed).into());
    }
    if witness.survivor == doomed {
        return Err(macro_error("survivor must differ from the doomed base"));
    }
    let mut at = doomed;
    let mut route_word: Vec<SignedLetter> = Vec::new();
    for &(h, dir) in &witness.route {
        let handle = data
            .handles
            .get(h.wrapping_sub(1))
            .ok_or(MoveError::HandleOutOfRange(h))?;
        let (near, far, w) = traverse(handle, dir);
        if near != at {
            return Err(macro_error("route is not a connected path"));
        }
        route_word.extend(w);
        at = far;
    }
    if at != witness.survivor {
        return Err(macro_error("route does not end at the survivor"));
    }
    if reduce_word(&route_word).iter().any(|l| l.base == doomed) {
        return Err(macro_error("route crosses the doomed base"));
    }

    let originally_trivial: Vec<bool> = data.handles.iter().map(Handle::is_trivial).collect();
    let mut rec = ScriptRecorder::new(data.clone());
    rec.apply(Move::TrivialHandle { base: doomed })?;
    let t = rec.current().handles.len();
    for &(along, direction) in &witness.route {
        rec.apply(Move::Slide {
            handle: t,
            end: End::End,
            along,
            direction,
        })?;
    }
    rec.reduce_handle(t)?;

    loop {
        let hit = rec.current().handles.iter().enumerate().find_map(|(i, h)| {
            (i + 1 != t)
                .then(|| {
                    h.word
                        .iter()
                        .position(|l| l.base == doomed)
                        .map(|p| (i + 1, p))
                })
                .flatten()
        });
        let Some((handle, position)) = hit else { break };
        rec.apply(Move::CrossSlide {
            handle,
            position,
            via: t,
            direction: Direction::Forward,
        })?;
    }
    loop {
        let hit = rec.current().handles.iter().enumerate().find_map(|(i, h)| {
            if i + 1 == t {
                None
            } else if h.start == doomed {
                Some((i + 1, End::Start))
            } else if h.end == doomed {
                Some((i + 1, End::End))
            } else {
                None
            }
        });
        let Some((handle, end)) = hit else { break };
        rec.apply(Move::Slide {
            handle,
            end,
            along: t,
            direction: Direction::Forward,
        })?;
    }
    for handle in 1..=rec.current().handles.len() {
        rec.reduce_handle(handle)?;
    }
    if rec.current().handles[t - 1].word.is_empty() {
        rec.apply(Move::Destab { base: doomed })?;
    }
    let stale: Vec<usize> = rec
        .current()
        .handles
        .iter()
        .enumerate()
        .filter(|(i, h)| h.is_trivial() && !originally_trivial.get(*i).copied().unwrap_or(true))
        .map(|(i, _)| i + 1)
        .collect();
    for handle in stale.into_iter().rev() {
        rec.apply(Move::RemoveTrivialHandle { handle })?;
    }
    Ok(rec.finish())
}

const CLONE_PATH_LIMIT: usize = 6;

/// Attaches a trivial handle at `template.start` and slides its end along a
/// path of handles until it coincides with `template`.
///
/// The path is found by breadth-first search over (base, reduced word)
/// pairs, at most six slides long.
pub fn macro_clone_handle(
    data: &RibbonData,
    template: &Handle,
) -> Result<(RibbonData, MoveScript), Error> {
    if !data.is_valid() {
        return Err(macro_error("invalid ribbon data"));
    }
    let in_range = |b: usize| b >= 1 && b <= data.base_count;
    if !in_range(template.start)
        || !in_range(template.end)
        || !template.word.iter().all(|l| in_range(l.base))
    {
        return Err(macro_error("template refers to a base out of range"));
    }
    let target = reduce_word(&template.word);
    let longest = data.handles.iter().map(|h| h.word.len()).max().unwrap_or(0);
    let word_limit = target.len() + 2 * longest;

    type State = (usize, Vec<SignedLetter>);
    let root: State = (template.start, Vec::new());
    let mut seen: BTreeSet<State> = BTreeSet::new();
    seen.insert(root.clone());
    let mut queue: VecDeque<(State, Vec<(usize, Direction)>)> = VecDeque::new();
    queue.push_back((root, Vec::new()));
    let mut found = None;
    while let Some(((base, word), path)) = queue.pop_front() {
        if base == template.end && word == target {
            found = Some(path);
            break;
        }
        if path.len() == CLONE_PATH_LIMIT {
            continue;
        }
        for (i, h) in data.handles.iter().enumerate() {
            for direction in [Direction::Forward, Direction::Reverse] {
                let (near, far, w) = traverse(h, direction);
                if near != base {
                    continue;
                }
                let mut next = word.clone();
                next.extend(w);
                let next = reduce_word(&next);
                if next.len() > word_limit {
                    continue;
                }
                let state = (far, next);
                if seen.insert(state.clone()) {
                    let mut p = path.clone();
                    p.push((i + 1, direction));
                    queue.push_back((state, p));
                }
            }
        }
    }
    let path = found
        .ok_or_else(|| macro_error("template is not reachable by sliding a trivial handle"))?;

    let mut rec = ScriptRecorder::new(data.clone());
    rec.apply(Move::TrivialHandle {
        base: template.start,
    })?;
    let t = rec.current().handles.len();
    for (along, direction) in path {
        rec.apply(Move::Slide {
            handle: t,
            end: End::End,
            along,
            direction,
        })?;
    }
    rec.reduce_handle(t)?;
    if rec.current().handles[t - 1] != (Handle::new(template.start, template.end, target)) {
        return Err(macro_error("slide path did not reproduce the template"));
    }
    Ok(rec.finish())
}

pub const DRILL_DEPTH: usize = 10;
pub const DRILL_STATES: usize = 500_000;

/// Searches from `data` towards the one-base unknot with `budget` trivial
/// handles allowed per side.
pub fn unknotting_drill(data: &RibbonData, budget: usize) -> Result<SearchOutcome, Error> {
    let mut unknot = RibbonData::unknot();
    unknot.dim = data.dim;
    search_equiv(
        data,
        &unknot,
        SearchConfig {
            depth: DRILL_DEPTH,
            weak_budget: budget,
            state_cap: DRILL_STATES,
        },
    )
}
