//! Elementary moves on ribbon data.
//!
//! Stable equivalence is generated by adding or removing a base joined to the
//! rest by a handle that crosses nothing (`Stab`/`Destab`), handle passes, and
//! handle slides. For n >= 2 a handle pass leaves every crossing word
//! unchanged, so it has no representation here. On top of those this module
//! provides the simple-equivalence word moves (insertion and deletion of a
//! cancelling pair), rerouting of a single crossing along another handle
//! (`CrossSlide`), handle reversal, and the weak stabilization that attaches
//! or removes a trivial handle.
//!
//! Handle indices in [`Move`] are 1-based, word positions 0-based.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{MoveError, ScriptError};
use crate::ribbon::{reduce_word, reverse_and_flip, Handle, RibbonData, Sign, SignedLetter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    Start,
    End,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// Traverse a handle from its start to its end.
    Forward,
    Reverse,
}

impl Direction {
    pub fn opposite(self) -> Direction {
        match self {
            Direction::Forward => Direction::Reverse,
            Direction::Reverse => Direction::Forward,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    Stab {
        target: usize,
    },
    Destab {
        base: usize,
    },
    CancelInsert {
        handle: usize,
        position: usize,
        base: usize,
        sign: Sign,
    },
    CancelDelete {
        handle: usize,
        position: usize,
    },
    Slide {
        handle: usize,
        end: End,
        along: usize,
        direction: Direction,
    },
    CrossSlide {
        handle: usize,
        position: usize,
        via: usize,
        direction: Direction,
    },
    TrivialHandle {
        base: usize,
    },
    RemoveTrivialHandle {
        handle: usize,
    },
    ReverseHandle {
        handle: usize,
    },
}

impl Move {
    pub fn apply(&self, data: &RibbonData) -> Result<RibbonData, MoveError> {
        match *self {
            Move::Stab { target } => apply_stabilize(data, target),
            Move::Destab { base } => apply_destabilize(data, base),
            Move::CancelInsert {
                handle,
                position,
                base,
                sign,
            } => apply_cancel_insert(data, handle, position, SignedLetter::new(base, sign)),
            Move::CancelDelete { handle, position } => apply_cancel_delete(data, handle, position),
            Move::Slide {
                handle,
                end,
                along,
                direction,
            } => apply_slide(data, handle, end, along, direction),
            Move::CrossSlide {
                handle,
                position,
                via,
                direction,
            } => apply_cross_slide(data, handle, position, via, direction),
            Move::TrivialHandle { base } => apply_trivial_handle(data, base),
            Move::RemoveTrivialHandle { handle } => remove_trivial_handle(data, handle),
            Move::ReverseHandle { handle } => reverse_handle(data, handle),
        }
    }

    /// Whether the move changes the genus (attaches or removes a trivial handle).
    pub fn is_weak(&self) -> bool {
        matches!(
            self,
            Move::TrivialHandle { .. } | Move::RemoveTrivialHandle { .. }
        )
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = |d: Direction| match d {
            Direction::Forward => "fwd",
            Direction::Reverse => "rev",
        };
        match *self {
            Move::Stab { target } => write!(f, "stab {target}"),
            Move::Destab { base } => write!(f, "destab {base}"),
            Move::CancelInsert {
                handle,
                position,
                base,
                sign,
            } => write!(
                f,
                "ins {handle} {position} {}",
                SignedLetter::new(base, sign)
            ),
            Move::CancelDelete { handle, position } => write!(f, "del {handle} {position}"),
            Move::Slide {
                handle,
                end,
                along,
                direction,
            } => {
                let end = match end {
                    End::Start => "start",
                    End::End => "end",
                };
                write!(f, "slide {handle} {end} {along} {}", dir(direction))
            }
            Move::CrossSlide {
                handle,
                position,
                via,
                direction,
            } => write!(f, "xslide {handle} {position} {via} {}", dir(direction)),
            Move::TrivialHandle { base } => write!(f, "trivh {base}"),
            Move::RemoveTrivialHandle { handle } => write!(f, "untrivh {handle}"),
            Move::ReverseHandle { handle } => write!(f, "revh {handle}"),
        }
    }
}

/// A replayable sequence of moves.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MoveScript {
    pub moves: Vec<Move>,
}

impl MoveScript {
    pub fn new(moves: Vec<Move>) -> Self {
        MoveScript { moves }
    }

    /// Trivial handles attached minus trivial handles removed.
    pub fn weak_count(&self) -> i64 {
        self.moves
            .iter()
            .map(|m| match m {
                Move::TrivialHandle { .. } => 1,
                Move::RemoveTrivialHandle { .. } => -1,
                _ => 0,
            })
            .sum()
    }

    /// Number of genus-changing moves in either direction.
    pub fn weak_moves(&self) -> usize {
        self.moves.iter().filter(|m| m.is_weak()).count()
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn push(&mut self, mv: Move) {
        self.moves.push(mv);
    }

    pub fn extend(&mut self, other: &MoveScript) {
        self.moves.extend(other.moves.iter().cloned());
    }
}

impl fmt::Display for MoveScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.moves {
            writeln!(f, "{m}")?;
        }
        Ok(())
    }
}

fn check_base(data: &RibbonData, base: usize) -> Result<(), MoveError> {
    if (1..=data.base_count).contains(&base) {
        Ok(())
    } else {
        Err(MoveError::BaseOutOfRange(base))
    }
}

fn check_handle(data: &RibbonData, handle: usize) -> Result<(), MoveError> {
    if (1..=data.handles.len()).contains(&handle) {
        Ok(())
    } else {
        Err(MoveError::HandleOutOfRange(handle))
    }
}

/// Near base, far base and crossing word of `handle` traversed in `direction`.
pub fn traverse(handle: &Handle, direction: Direction) -> (usize, usize, Vec<SignedLetter>) {
    match direction {
        Direction::Forward => (handle.start, handle.end, handle.word.clone()),
        Direction::Reverse => (handle.end, handle.start, reverse_and_flip(&handle.word)),
    }
}

/// Adds base `|B| + 1` joined to `target` by a handle that crosses nothing.
pub fn apply_stabilize(data: &RibbonData, target: usize) -> Result<RibbonData, MoveError> {
    check_base(data, target)?;
    let mut out = data.clone();
    out.base_count += 1;
    out.handles
        .push(Handle::new(out.base_count, target, Vec::new()));
    Ok(out)
}

/// Removes a base carrying a single handle end whose handle crosses nothing
/// and leads to another base. Higher bases shift down by one.
pub fn apply_destabilize(data: &RibbonData, base: usize) -> Result<RibbonData, MoveError> {
    check_base(data, base)?;
    if data
        .handles
        .iter()
        .any(|h| h.word.iter().any(|l| l.base == base))
    {
        return Err(MoveError::BaseInWords);
    }
    let incident: Vec<usize> = data
        .handles
        .iter()
        .enumerate()
        .flat_map(|(i, h)| {
            [(h.start == base).then_some(i), (h.end == base).then_some(i)]
                .into_iter()
                .flatten()
        })
        .collect();
    if incident.len() != 1 {
        return Err(MoveError::DegreeNotOne);
    }
    let idx = incident[0];
    let handle = &data.handles[idx];
    if !handle.word.is_empty() {
        return Err(MoveError::NonEmptyWord);
    }
    if handle.start == handle.end {
        return Err(MoveError::SameBase);
    }
    let shift = |b: usize| if b > base { b - 1 } else { b };
    let handles = data
        .handles
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != idx)
        .map(|(_, h)| {
            Handle::new(
                shift(h.start),
                shift(h.end),
                h.word
                    .iter()
                    .map(|l| SignedLetter::new(shift(l.base), l.sign))
                    .collect(),
            )
        })
        .collect();
    Ok(RibbonData {
        dim: data.dim,
        base_count: data.base_count - 1,
        handles,
    })
}

/// Inserts `letter` followed by its inverse before word position `position`.
pub fn apply_cancel_insert(
    data: &RibbonData,
    handle: usize,
    position: usize,
    letter: SignedLetter,
) -> Result<RibbonData, MoveError> {
    check_handle(data, handle)?;
    check_base(data, letter.base)?;
    let word = &data.handles[handle - 1].word;
    if position > word.len() {
        return Err(MoveError::PositionOutOfRange { handle, position });
    }
    let mut out = data.clone();
    out.handles[handle - 1]
        .word
        .splice(position..position, [letter, letter.inverse()]);
    Ok(out)
}

pub fn apply_cancel_delete(
    data: &RibbonData,
    handle: usize,
    position: usize,
) -> Result<RibbonData, MoveError> {
    check_handle(data, handle)?;
    let word = &data.handles[handle - 1].word;
    if position + 1 >= word.len() {
        return Err(MoveError::PositionOutOfRange { handle, position });
    }
    if !word[position].cancels(word[position + 1]) {
        return Err(MoveError::NotCancellingPair { handle, position });
    }
    let mut out = data.clone();
    out.handles[handle - 1].word.drain(position..position + 2);
    Ok(out)
}

/// Slides one end of `handle` along `along` to the far base of `along`.
///
/// With `w` the word of `along` as traversed, a slid end becomes
/// `old ++ w`, a slid start `reverse_and_flip(w) ++ old`.
pub fn apply_slide(
    data: &RibbonData,
    handle: usize,
    end: End,
    along: usize,
    direction: Direction,
) -> Result<RibbonData, MoveError> {
    check_handle(data, handle)?;
    check_handle(data, along)?;
    if handle == along {
        return Err(MoveError::SelfSlide);
    }
    let (near, far, w) = traverse(&data.handles[along - 1], direction);
    let mut out = data.clone();
    let slider = &mut out.handles[handle - 1];
    match end {
        End::Start => {
            if slider.start != near {
                return Err(MoveError::EndNotOnBase);
            }
            let mut word = reverse_and_flip(&w);
            word.extend_from_slice(&slider.word);
            slider.word = word;
            slider.start = far;
        }
        End::End => {
            if slider.end != near {
                return Err(MoveError::EndNotOnBase);
            }
            slider.word.extend_from_slice(&w);
            slider.end = far;
        }
    }
    Ok(out)
}

/// Reroutes the crossing at `position` of `handle` along `via`: a crossing
/// `(b, e)` with `via` running from `b` to `b'` over the word `w` becomes
/// `w (b', e) reverse_and_flip(w)`.
pub fn apply_cross_slide(
    data: &RibbonData,
    handle: usize,
    position: usize,
    via: usize,
    direction: Direction,
) -> Result<RibbonData, MoveError> {
    check_handle(data, handle)?;
    check_handle(data, via)?;
    if handle == via {
        return Err(MoveError::SelfSlide);
    }
    let word = &data.handles[handle - 1].word;
    let letter = *word
        .get(position)
        .ok_or(MoveError::PositionOutOfRange { handle, position })?;
    let (near, far, w) = traverse(&data.handles[via - 1], direction);
    if letter.base != near {
        return Err(MoveError::LetterNotOnVia);
    }
    let mut replacement = w.clone();
    replacement.push(SignedLetter::new(far, letter.sign));
    replacement.extend(reverse_and_flip(&w));
    let mut out = data.clone();
    out.handles[handle - 1]
        .word
        .splice(position..=position, replacement);
    Ok(out)
}

/// Undoes [`apply_cross_slide`]: recognizes `w (b', e) reverse_and_flip(w)`
/// starting at `position` of `handle`, where `via` runs from `b` to `b'`
/// over `w`, and returns moves collapsing it to `(b, e)`.
///
/// The collapse is a cross-slide of the middle letter back along `via`
/// followed by the deletions of the resulting cancelling pairs.
pub fn cross_slide_collapse(
    data: &RibbonData,
    handle: usize,
    position: usize,
    via: usize,
    direction: Direction,
) -> Result<MoveScript, MoveError> {
    check_handle(data, handle)?;
    check_handle(data, via)?;
    if handle == via {
        return Err(MoveError::SelfSlide);
    }
    let (_, far, w) = traverse(&data.handles[via - 1], direction);
    let word = &data.handles[handle - 1].word;
    let k = w.len();
    if position + 2 * k + 1 > word.len() {
        return Err(MoveError::PositionOutOfRange { handle, position });
    }
    let middle = word[position + k];
    if word[position..position + k] != w[..]
        || middle.base != far
        || word[position + k + 1..position + 2 * k + 1] != reverse_and_flip(&w)[..]
    {
        return Err(MoveError::LetterNotOnVia);
    }
    let mut script = MoveScript::default();
    script.push(Move::CrossSlide {
        handle,
        position: position + k,
        via,
        direction: direction.opposite(),
    });
    // w rf(w) (b,e) w rf(w): each half cancels innermost-first.
    for i in 0..k {
        script.push(Move::CancelDelete {
            handle,
            position: position + k - 1 - i,
        });
    }
    for i in 0..k {
        script.push(Move::CancelDelete {
            handle,
            position: position + k - i,
        });
    }
    Ok(script)
}

pub fn apply_trivial_handle(data: &RibbonData, base: usize) -> Result<RibbonData, MoveError> {
    check_base(data, base)?;
    let mut out = data.clone();
    out.handles.push(Handle::trivial(base));
    Ok(out)
}

pub fn remove_trivial_handle(data: &RibbonData, handle: usize) -> Result<RibbonData, MoveError> {
    check_handle(data, handle)?;
    if !data.handles[handle - 1].is_trivial() {
        return Err(MoveError::NotTrivial(handle));
    }
    let mut out = data.clone();
    out.handles.remove(handle - 1);
    Ok(out)
}

pub fn reverse_handle(data: &RibbonData, handle: usize) -> Result<RibbonData, MoveError> {
    check_handle(data, handle)?;
    let mut out = data.clone();
    out.handles[handle - 1] = out.handles[handle - 1].reversed();
    Ok(out)
}

/// Applies `script` left to right, reporting the index of the first move
/// that does not apply.
pub fn apply_script(data: &RibbonData, script: &MoveScript) -> Result<RibbonData, ScriptError> {
    script
        .moves
        .iter()
        .enumerate()
        .try_fold(data.clone(), |cur, (index, mv)| {
            mv.apply(&cur)
                .map_err(|source| ScriptError { index, source })
        })
}

/// Neighbours of `data` in the search graph, each in canonical form, without
/// duplicates and sorted by successor.
///
/// Generated: every applicable destabilization, every slide, every
/// cross-slide that does not lengthen the freely reduced word (this includes
/// all collapses of earlier cross-slides), a stabilization onto each base,
/// and, when `weak_budget > 0`, trivial-handle attachment to each base and
/// removal of each trivial handle. Cancel insertions are never generated;
/// states are kept freely reduced.
pub fn enumerate_moves(data: &RibbonData, weak_budget: usize) -> Vec<(Move, RibbonData)> {
    let mut candidates: Vec<Move> = Vec::new();
    let handles = &data.handles;

    for base in 1..=data.base_count {
        candidates.push(Move::Destab { base });
    }
    for (i, h) in handles.iter().enumerate() {
        for (end, at) in [(End::Start, h.start), (End::End, h.end)] {
            for (j, g) in handles.iter().enumerate() {
                if i == j {
                    continue;
                }
                for (direction, near) in
                    [(Direction::Forward, g.start), (Direction::Reverse, g.end)]
                {
                    if near == at {
                        candidates.push(Move::Slide {
                            handle: i + 1,
                            end,
                            along: j + 1,
                            direction,
                        });
                    }
                }
            }
        }
    }
    let mut cross: Vec<Move> = Vec::new();
    for (i, h) in handles.iter().enumerate() {
        for (position, letter) in h.word.iter().enumerate() {
            for (j, g) in handles.iter().enumerate() {
                if i == j {
                    continue;
                }
                for (direction, near) in
                    [(Direction::Forward, g.start), (Direction::Reverse, g.end)]
                {
                    if near == letter.base {
                        cross.push(Move::CrossSlide {
                            handle: i + 1,
                            position,
                            via: j + 1,
                            direction,
                        });
                    }
                }
            }
        }
    }
    for base in 1..=data.base_count {
        candidates.push(Move::Stab { target: base });
    }
    if weak_budget > 0 {
        for (i, h) in handles.iter().enumerate() {
            if h.is_trivial() {
                candidates.push(Move::RemoveTrivialHandle { handle: i + 1 });
            }
        }
        for base in 1..=data.base_count {
            candidates.push(Move::TrivialHandle { base });
        }
    }

    let mut seen: BTreeSet<RibbonData> = BTreeSet::new();
    seen.insert(data.canonical_form());
    let mut out: Vec<(Move, RibbonData)> = Vec::new();
    let mut accept = |mv: Move, next: RibbonData, out: &mut Vec<(Move, RibbonData)>| {
        let canon = next.canonical_form();
        if seen.insert(canon.clone()) {
            out.push((mv, canon));
        }
    };
    for mv in candidates {
        if let Ok(next) = mv.apply(data) {
            accept(mv, next, &mut out);
        }
    }
    for mv in cross {
        if let Move::CrossSlide { handle, .. } = mv {
            if let Ok(next) = mv.apply(data) {
                let before = reduce_word(&data.handles[handle - 1].word).len();
                if reduce_word(&next.handles[handle - 1].word).len() <= before {
                    accept(mv, next, &mut out);
                }
            }
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{random_applicable_move, random_connected};
    use crate::quandle::{coloring_profile, FiniteQuandle};
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn l(v: i64) -> SignedLetter {
        SignedLetter::from_signed(v).unwrap()
    }

    fn word(v: &[i64]) -> Vec<SignedLetter> {
        v.iter().map(|&x| l(x)).collect()
    }

    fn data(base_count: usize, handles: Vec<Handle>) -> RibbonData {
        RibbonData {
            dim: 2,
            base_count,
            handles,
        }
    }

    fn family() -> Vec<FiniteQuandle> {
        vec![
            FiniteQuandle::dihedral(3).unwrap(),
            FiniteQuandle::dihedral(5).unwrap(),
            FiniteQuandle::dihedral(7).unwrap(),
        ]
    }

    #[test]
    fn stabilize_unknot() {
        let s = apply_stabilize(&RibbonData::unknot(), 1).unwrap();
        assert_eq!(s, data(2, vec![Handle::new(2, 1, vec![])]));
        assert_eq!(s.genus(), Ok(0));
        assert_eq!(apply_destabilize(&s, 2).unwrap(), RibbonData::unknot());
        assert_eq!(apply_stabilize(&s, 3), Err(MoveError::BaseOutOfRange(3)));
    }

    #[test]
    fn destabilize_preconditions() {
        let crossed = data(
            3,
            vec![Handle::new(3, 1, vec![]), Handle::new(1, 2, word(&[3]))],
        );
        assert_eq!(apply_destabilize(&crossed, 3), Err(MoveError::BaseInWords));
        let two_ends = data(
            3,
            vec![Handle::new(2, 1, vec![]), Handle::new(2, 3, vec![])],
        );
        assert_eq!(
            apply_destabilize(&two_ends, 2),
            Err(MoveError::DegreeNotOne)
        );
        let nonempty = data(2, vec![Handle::new(2, 1, word(&[1]))]);
        assert_eq!(
            apply_destabilize(&nonempty, 2),
            Err(MoveError::NonEmptyWord)
        );
        // reindexing is order preserving
        let chain = data(
            3,
            vec![Handle::new(1, 2, vec![]), Handle::new(3, 1, word(&[3, -3]))],
        );
        assert_eq!(
            apply_destabilize(&chain, 2).unwrap(),
            data(2, vec![Handle::new(2, 1, word(&[2, -2]))])
        );
    }

    #[test]
    fn cancel_insert_delete() {
        let d = data(1, vec![Handle::trivial(1)]);
        let ins = apply_cancel_insert(&d, 1, 0, l(1)).unwrap();
        assert_eq!(ins.handles[0].word, word(&[1, -1]));
        assert_eq!(apply_cancel_delete(&ins, 1, 0).unwrap(), d);
        assert!(matches!(
            apply_cancel_insert(&d, 1, 1, l(1)),
            Err(MoveError::PositionOutOfRange { .. })
        ));
        let not_pair = data(2, vec![Handle::new(1, 2, word(&[1, 2]))]);
        assert!(matches!(
            apply_cancel_delete(&not_pair, 1, 0),
            Err(MoveError::NotCancellingPair { .. })
        ));
    }

    #[test]
    fn slide_examples() {
        let d = data(
            2,
            vec![Handle::new(2, 1, vec![]), Handle::new(1, 2, vec![])],
        );
        let s = apply_slide(&d, 1, End::End, 2, Direction::Forward).unwrap();
        assert_eq!(s.handles[0], Handle::new(2, 2, vec![]));

        let d = data(
            3,
            vec![
                Handle::new(3, 1, word(&[2])),
                Handle::new(1, 2, word(&[3])),
                Handle::new(2, 1, vec![]),
            ],
        );
        let s = apply_slide(&d, 1, End::End, 2, Direction::Forward).unwrap();
        assert_eq!(s.handles[0], Handle::new(3, 2, word(&[2, 3])));
        let s = apply_slide(&d, 2, End::Start, 3, Direction::Reverse).unwrap();
        assert_eq!(s.handles[1], Handle::new(2, 2, word(&[3])));
        assert_eq!(
            apply_slide(&d, 1, End::Start, 2, Direction::Forward),
            Err(MoveError::EndNotOnBase)
        );
        assert_eq!(
            apply_slide(&d, 2, End::End, 2, Direction::Forward),
            Err(MoveError::SelfSlide)
        );
    }

    #[test]
    fn cross_slide_examples() {
        let d = data(
            3,
            vec![Handle::new(3, 3, word(&[1])), Handle::new(1, 2, vec![])],
        );
        let x = apply_cross_slide(&d, 1, 0, 2, Direction::Forward).unwrap();
        assert_eq!(x.handles[0].word, word(&[2]));

        let d = data(
            3,
            vec![
                Handle::new(3, 3, word(&[-1])),
                Handle::new(1, 2, word(&[3])),
            ],
        );
        let x = apply_cross_slide(&d, 1, 0, 2, Direction::Forward).unwrap();
        assert_eq!(x.handles[0].word, word(&[3, -2, -3]));
        let collapse = cross_slide_collapse(&x, 1, 0, 2, Direction::Forward).unwrap();
        assert_eq!(apply_script(&x, &collapse).unwrap(), d);
        assert_eq!(
            apply_cross_slide(&d, 1, 0, 2, Direction::Reverse),
            Err(MoveError::LetterNotOnVia)
        );
        assert_eq!(
            apply_cross_slide(&d, 1, 0, 1, Direction::Forward),
            Err(MoveError::SelfSlide)
        );
    }

    #[test]
    fn trivial_handles() {
        let t = apply_trivial_handle(&RibbonData::unknot(), 1).unwrap();
        assert_eq!(t, RibbonData::torus(1));
        assert_eq!(t.genus(), Ok(1));
        assert_eq!(remove_trivial_handle(&t, 1).unwrap(), RibbonData::unknot());
        assert_eq!(
            remove_trivial_handle(&RibbonData::spun_trefoil(), 1),
            Err(MoveError::NotTrivial(1))
        );
    }

    #[test]
    fn reverse_examples() {
        let t = RibbonData::spun_trefoil();
        let r = reverse_handle(&t, 1).unwrap();
        assert_eq!(r.handles[0], Handle::new(2, 1, word(&[1, 2])));
        assert_eq!(reverse_handle(&r, 1).unwrap(), t);
        assert_eq!(r.canonical_form(), t.canonical_form());
    }

    #[test]
    fn script_examples() {
        let u = RibbonData::unknot();
        let s = MoveScript::new(vec![Move::Stab { target: 1 }, Move::Destab { base: 2 }]);
        assert_eq!(apply_script(&u, &s).unwrap(), u);
        assert_eq!(apply_script(&u, &MoveScript::default()).unwrap(), u);
        let bad = MoveScript::new(vec![Move::Stab { target: 1 }, Move::Destab { base: 3 }]);
        let err = apply_script(&u, &bad).unwrap_err();
        assert_eq!(err.index, 1);
    }

    #[test]
    fn script_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let d = random_connected(&mut rng, 3, 4, 3);
            let mut cur = d.clone();
            let mut script = MoveScript::default();
            for _ in 0..12 {
                let mv = random_applicable_move(&mut rng, &cur);
                cur = mv.apply(&cur).unwrap();
                script.push(mv);
            }
            let (a, b) = script.moves.split_at(5);
            let mid = apply_script(&d, &MoveScript::new(a.to_vec())).unwrap();
            assert_eq!(
                apply_script(&mid, &MoveScript::new(b.to_vec())).unwrap(),
                cur
            );
            assert_eq!(apply_script(&d, &script).unwrap(), cur);
        }
    }

    #[test]
    fn enumerate_unknot() {
        let u = RibbonData::unknot();
        let succ = enumerate_moves(&u, 0);
        assert_eq!(succ.len(), 1);
        assert_eq!(succ[0].0, Move::Stab { target: 1 });
        let succ = enumerate_moves(&u, 1);
        assert_eq!(succ.len(), 2);
        assert!(succ
            .iter()
            .any(|(m, _)| *m == Move::TrivialHandle { base: 1 }));
    }

    #[test]
    fn random_moves_preserve_invariants() {
        let quandles = family();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut applied = 0;
        while applied < 1000 {
            let d = random_connected(&mut rng, 4, 5, 4);
            let mut cur = d;
            for _ in 0..10 {
                let mv = random_applicable_move(&mut rng, &cur);
                let next = mv.apply(&cur).unwrap();
                let delta = next.handles.len() as i64
                    - next.base_count as i64
                    - (cur.handles.len() as i64 - cur.base_count as i64);
                match mv {
                    Move::TrivialHandle { .. } => assert_eq!(delta, 1),
                    Move::RemoveTrivialHandle { .. } => assert_eq!(delta, -1),
                    _ => assert_eq!(delta, 0, "{mv}"),
                }
                assert_eq!(next.components(), cur.components());
                assert_eq!(
                    coloring_profile(&cur, &quandles).unwrap(),
                    coloring_profile(&next, &quandles).unwrap(),
                    "{mv}"
                );
                cur = next;
                applied += 1;
            }
        }
    }

    #[test]
    fn enumerated_successors_share_profile() {
        let quandles = family();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let d = random_connected(&mut rng, 3, 3, 3).canonical_form();
            let p = coloring_profile(&d, &quandles).unwrap();
            for (mv, next) in enumerate_moves(&d, 1) {
                assert_eq!(next, next.canonical_form());
                assert_eq!(coloring_profile(&next, &quandles).unwrap(), p, "{mv}");
            }
        }
    }

    #[test]
    fn moves_have_inverses() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..60 {
            let d = random_connected(&mut rng, 3, 3, 2).canonical_form();
            for (mv, next) in enumerate_moves(&d, 1) {
                let back: Vec<RibbonData> =
                    enumerate_moves(&next, 1).into_iter().map(|t| t.1).collect();
                // cross-slides that shorten a word undo a lengthening one, which is not enumerated
                if !matches!(mv, Move::CrossSlide { .. }) {
                    assert!(back.contains(&d), "no inverse for {mv}");
                }
            }
        }
    }
}
