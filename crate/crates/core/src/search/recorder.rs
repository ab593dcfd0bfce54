use crate::error::MoveError;
use crate::moves::{Move, MoveScript};
use crate::ribbon::{first_cancelling_pair, Labeling, RibbonData};

/// Replays moves on concrete data while recording the script.
///
/// Search works on canonical forms; [`ScriptRecorder::apply_canonical`]
/// translates a move stated against the canonical form of the current data
/// into moves on the data itself: cancelling pairs are deleted, handles whose
/// canonical orientation differs are reversed, and handle and base indices
/// are mapped through the canonical labeling.
#[derive(Clone, Debug)]
pub struct ScriptRecorder {
    current: RibbonData,
    script: MoveScript,
}

impl ScriptRecorder {
    pub fn new(data: RibbonData) -> Self {
        ScriptRecorder {
            current: data,
            script: MoveScript::default(),
        }
    }

    pub fn current(&self) -> &RibbonData {
        &self.current
    }

    pub fn script(&self) -> &MoveScript {
        &self.script
    }

    pub fn finish(self) -> (RibbonData, MoveScript) {
        (self.current, self.script)
    }

    pub fn apply(&mut self, mv: Move) -> Result<(), MoveError> {
        self.current = mv.apply(&self.current)?;
        self.script.push(mv);
        Ok(())
    }

    /// Deletes cancelling pairs of one handle, leftmost first.
    pub fn reduce_handle(&mut self, handle: usize) -> Result<(), MoveError> {
        while let Some(position) = first_cancelling_pair(&self.current.handles[handle - 1].word) {
            self.apply(Move::CancelDelete { handle, position })?;
        }
        Ok(())
    }

    /// Brings the data into the exact shape of its canonical form up to base
    /// and handle order, returning the labeling that finishes the job.
    pub fn normalize(&mut self) -> Result<Labeling, MoveError> {
        for handle in 1..=self.current.handles.len() {
            self.reduce_handle(handle)?;
        }
        let (_, mut labeling) = self.current.canonical_labeling();
        for (source, reversed) in labeling.handle_source.iter_mut() {
            if *reversed {
                self.apply(Move::ReverseHandle {
                    handle: *source + 1,
                })?;
                *reversed = false;
            }
        }
        Ok(labeling)
    }

    /// Applies `mv`, whose indices refer to the canonical form of the
    /// current data.
    pub fn apply_canonical(&mut self, mv: &Move) -> Result<(), MoveError> {
        let labeling = self.normalize()?;
        let translated = translate(mv, &labeling);
        self.apply(translated)
    }
}

fn translate(mv: &Move, labeling: &Labeling) -> Move {
    let handle = |j: usize| labeling.handle_source[j - 1].0 + 1;
    let base = |b: usize| labeling.input_base(b);
    match *mv {
        Move::Stab { target } => Move::Stab {
            target: base(target),
        },
        Move::Destab { base: b } => Move::Destab { base: base(b) },
        Move::CancelInsert {
            handle: h,
            position,
            base: b,
            sign,
        } => Move::CancelInsert {
            handle: handle(h),
            position,
            base: base(b),
            sign,
        },
        Move::CancelDelete {
            handle: h,
            position,
        } => Move::CancelDelete {
            handle: handle(h),
            position,
        },
        Move::Slide {
            handle: h,
            end,
            along,
            direction,
        } => Move::Slide {
            handle: handle(h),
            end,
            along: handle(along),
            direction,
        },
        Move::CrossSlide {
            handle: h,
            position,
            via,
            direction,
        } => Move::CrossSlide {
            handle: handle(h),
            position,
            via: handle(via),
            direction,
        },
        Move::TrivialHandle { base: b } => Move::TrivialHandle { base: base(b) },
        Move::RemoveTrivialHandle { handle: h } => Move::RemoveTrivialHandle { handle: handle(h) },
        Move::ReverseHandle { handle: h } => Move::ReverseHandle { handle: handle(h) },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::random_connected;
    use crate::moves::enumerate_moves;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn canonical_moves_replay_on_raw_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let raw = random_connected(&mut rng, 4, 5, 3);
            let mut recorder = ScriptRecorder::new(raw.clone());
            for _ in 0..4 {
                let canon = recorder.current().canonical_form();
                let succ = enumerate_moves(&canon, 1);
                let (mv, expected) = succ[rng.gen_range(0..succ.len())].clone();
                recorder.apply_canonical(&mv).unwrap();
                assert_eq!(recorder.current().canonical_form(), expected);
            }
            let (end, script) = recorder.finish();
            assert_eq!(crate::moves::apply_script(&raw, &script).unwrap(), end);
        }
    }
}
