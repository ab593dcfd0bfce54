use std::num::NonZeroUsize;
use std::thread;

use ribbonlab_core::moves::enumerate_moves;
use ribbonlab_core::search::Expander;
use ribbonlab_core::{Move, RibbonData};

/// Expands a search level on scoped worker threads. Each worker takes a
/// contiguous chunk of the level and results are concatenated in level
/// order, so the output equals that of the sequential expander.
#[derive(Clone, Copy, Debug)]
pub struct Threaded {
    threads: NonZeroUsize,
}

impl Threaded {
    pub fn new(threads: NonZeroUsize) -> Self {
        Threaded { threads }
    }
}

impl Expander for Threaded {
    fn expand(&self, level: &[(RibbonData, usize)]) -> Vec<Vec<(Move, RibbonData)>> {
        let workers = self.threads.get().min(level.len());
        if workers <= 1 {
            return level
                .iter()
                .map(|(s, left)| enumerate_moves(s, *left))
                .collect();
        }
        let chunk = level.len().div_ceil(workers);
        thread::scope(|scope| {
            let handles: Vec<_> = level
                .chunks(chunk)
                .map(|part| {
                    scope.spawn(move || {
                        part.iter()
                            .map(|(s, left)| enumerate_moves(s, *left))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("expansion worker panicked"))
                .collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use ribbonlab_core::generate::random_connected;
    use ribbonlab_core::search::Sequential;

    #[test]
    fn matches_sequential() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let level: Vec<(RibbonData, usize)> = (0..23)
            .map(|i| (random_connected(&mut rng, 3, 4, 3).canonical_form(), i % 2))
            .collect();
        let threaded = Threaded::new(NonZeroUsize::new(4).unwrap());
        assert_eq!(threaded.expand(&level), Sequential.expand(&level));
    }
}
