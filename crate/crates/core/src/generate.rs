//! Seeded random instances, moves and move walks.

use alloc::vec::Vec;

use rand::Rng;

use crate::moves::{enumerate_moves, Direction, End, Move, MoveScript};
use crate::ribbon::{Handle, RibbonData, Sign, SignedLetter};
use crate::search::ScriptRecorder;

fn random_letter<R: Rng + ?Sized>(rng: &mut R, base_count: usize) -> SignedLetter {
    let base = rng.gen_range(1..=base_count);
    let sign = if rng.gen_bool(0.5) {
        Sign::Pos
    } else {
        Sign::Neg
    };
    SignedLetter::new(base, sign)
}

/// A freely reduced word of length at most `max_len`.
pub fn random_word<R: Rng + ?Sized>(
    rng: &mut R,
    base_count: usize,
    max_len: usize,
) -> Vec<SignedLetter> {
    let len = rng.gen_range(0..=max_len);
    let mut word: Vec<SignedLetter> = Vec::with_capacity(len);
    while word.len() < len {
        let letter = random_letter(rng, base_count);
        if word.last().map_or(true, |last| !last.cancels(letter)) {
            word.push(letter);
        }
    }
    word
}

/// Connected data with `bases` bases and `max(handles, bases - 1)` handles.
/// A spanning tree of handles is laid down first, then the remaining handles
/// join random bases.
pub fn random_connected<R: Rng + ?Sized>(
    rng: &mut R,
    bases: usize,
    handles: usize,
    max_len: usize,
) -> RibbonData {
    let bases = bases.max(1);
    let mut out: Vec<Handle> = Vec::new();
    for b in 2..=bases {
        let other = rng.gen_range(1..b);
        let word = random_word(rng, bases, max_len);
        let h = if rng.gen_bool(0.5) {
            Handle::new(b, other, word)
        } else {
            Handle::new(other, b, word)
        };
        out.push(h);
    }
    while out.len() < handles {
        let start = rng.gen_range(1..=bases);
        let end = rng.gen_range(1..=bases);
        let word = random_word(rng, bases, max_len);
        out.push(Handle::new(start, end, word));
    }
    // shuffle handle order so the tree is not always first
    for i in (1..out.len()).rev() {
        let j = rng.gen_range(0..=i);
        out.swap(i, j);
    }
    RibbonData {
        dim: 2,
        base_count: bases,
        handles: out,
    }
}

fn pick<R: Rng + ?Sized, T: Clone>(rng: &mut R, items: &[T]) -> Option<T> {
    if items.is_empty() {
        None
    } else {
        Some(items[rng.gen_range(0..items.len())].clone())
    }
}

/// All applicable slides of `data`.
pub fn applicable_slides(data: &RibbonData) -> Vec<Move> {
    let mut out = Vec::new();
    for (i, h) in data.handles.iter().enumerate() {
        for (end, at) in [(End::Start, h.start), (End::End, h.end)] {
            for (j, g) in data.handles.iter().enumerate() {
                if i == j {
                    continue;
                }
                for (direction, near) in
                    [(Direction::Forward, g.start), (Direction::Reverse, g.end)]
                {
                    if near == at {
                        out.push(Move::Slide {
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
    out
}

/// All applicable cross-slides of `data`.
pub fn applicable_cross_slides(data: &RibbonData) -> Vec<Move> {
    let mut out = Vec::new();
    for (i, h) in data.handles.iter().enumerate() {
        for (position, letter) in h.word.iter().enumerate() {
            for (j, g) in data.handles.iter().enumerate() {
                if i == j {
                    continue;
                }
                for (direction, near) in
                    [(Direction::Forward, g.start), (Direction::Reverse, g.end)]
                {
                    if near == letter.base {
                        out.push(Move::CrossSlide {
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
    out
}

/// A uniformly chosen move type among those with an applicable instance,
/// then a uniformly chosen instance. Every move type can be produced.
pub fn random_applicable_move<R: Rng + ?Sized>(rng: &mut R, data: &RibbonData) -> Move {
    let n = data.base_count;
    let mut kinds: Vec<Vec<Move>> = Vec::new();
    kinds.push((1..=n).map(|target| Move::Stab { target }).collect());
    kinds.push(
        (1..=n)
            .map(|base| Move::Destab { base })
            .filter(|m| m.apply(data).is_ok())
            .collect(),
    );
    let mut inserts = Vec::new();
    let mut deletes = Vec::new();
    for (i, h) in data.handles.iter().enumerate() {
        let letter = random_letter(rng, n);
        inserts.push(Move::CancelInsert {
            handle: i + 1,
            position: rng.gen_range(0..=h.word.len()),
            base: letter.base,
            sign: letter.sign,
        });
        for p in 0..h.word.len().saturating_sub(1) {
            if h.word[p].cancels(h.word[p + 1]) {
                deletes.push(Move::CancelDelete {
                    handle: i + 1,
                    position: p,
                });
            }
        }
    }
    kinds.push(inserts);
    kinds.push(deletes);
    kinds.push(applicable_slides(data));
    kinds.push(applicable_cross_slides(data));
    kinds.push((1..=n).map(|base| Move::TrivialHandle { base }).collect());
    kinds.push(
        data.handles
            .iter()
            .enumerate()
            .filter(|(_, h)| h.is_trivial())
            .map(|(i, _)| Move::RemoveTrivialHandle { handle: i + 1 })
            .collect(),
    );
    kinds.push(
        (1..=data.handles.len())
            .map(|handle| Move::ReverseHandle { handle })
            .collect(),
    );
    kinds.retain(|k| !k.is_empty());
    let kind = rng.gen_range(0..kinds.len());
    pick(rng, &kinds[kind]).expect("non-empty kind")
}

/// A walk of `len` search-graph moves from `data`, recorded as a script
/// that replays on `data` itself. At most `weak` steps attach a trivial
/// handle. Each step is chosen among enumerated neighbours whose inverse is
/// also an enumerated neighbour, so the walk can be retraced from either end.
pub fn random_stable_walk<R: Rng + ?Sized>(
    rng: &mut R,
    data: &RibbonData,
    len: usize,
    weak: usize,
) -> (RibbonData, MoveScript) {
    let mut recorder = ScriptRecorder::new(data.clone());
    let weak_steps: Vec<usize> = {
        let mut steps: Vec<usize> = (0..len).collect();
        for i in (1..steps.len()).rev() {
            let j = rng.gen_range(0..=i);
            steps.swap(i, j);
        }
        steps.truncate(weak.min(len));
        steps
    };
    for step in 0..len {
        let current = recorder.current().canonical_form();
        let successors = enumerate_moves(&current, 1);
        let want_weak = weak_steps.contains(&step);
        let choices: Vec<&(Move, RibbonData)> = successors
            .iter()
            .filter(|(mv, _)| {
                if want_weak {
                    matches!(mv, Move::TrivialHandle { .. })
                } else {
                    !mv.is_weak()
                }
            })
            .filter(|(_, next)| {
                enumerate_moves(next, 1)
                    .iter()
                    .any(|(_, back)| *back == current)
            })
            .collect();
        if let Some((mv, _)) = pick(rng, &choices) {
            recorder
                .apply_canonical(mv)
                .expect("enumerated move applies to its source");
        }
    }
    recorder.finish()
}
