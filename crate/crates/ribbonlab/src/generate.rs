//! Named example generators: `unknot`, `stabilized:<k>:<seed>`,
//! `spun-trefoil`, `torus:<g>` and `random:<b>:<h>:<len>:<seed>`.

use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ribbonlab_core::generate::{applicable_cross_slides, applicable_slides, random_connected};
use ribbonlab_core::moves::apply_stabilize;
use ribbonlab_core::{MoveScript, RibbonData};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed generator spec `{0}`")]
pub struct GenSpecError(pub String);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenSpec {
    Unknot,
    Stabilized {
        k: usize,
        seed: u64,
    },
    SpunTrefoil,
    Torus {
        g: usize,
    },
    Random {
        bases: usize,
        handles: usize,
        len: usize,
        seed: u64,
    },
}

impl FromStr for GenSpec {
    type Err = GenSpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || GenSpecError(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.parse::<usize>().map_err(|_| err());
        let seed = |t: &str| t.parse::<u64>().map_err(|_| err());
        match parts.as_slice() {
            ["unknot"] => Ok(GenSpec::Unknot),
            ["spun-trefoil"] => Ok(GenSpec::SpunTrefoil),
            ["stabilized", k, s] => Ok(GenSpec::Stabilized {
                k: num(k)?,
                seed: seed(s)?,
            }),
            ["torus", g] => Ok(GenSpec::Torus { g: num(g)? }),
            ["random", b, h, len, s] => {
                let (bases, handles) = (num(b)?, num(h)?);
                if bases == 0 || handles + 1 < bases {
                    return Err(err());
                }
                Ok(GenSpec::Random {
                    bases,
                    handles,
                    len: num(len)?,
                    seed: seed(s)?,
                })
            }
            _ => Err(err()),
        }
    }
}

/// The unknot after `k` stabilizations onto seeded bases, followed by `k`
/// seeded slides or cross-slides. Returns the script that was applied.
pub fn stabilized(k: usize, seed: u64) -> (RibbonData, MoveScript) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = RibbonData::unknot();
    let mut script = MoveScript::default();
    for _ in 0..k {
        let target = *(1..=data.base_count)
            .collect::<Vec<_>>()
            .choose(&mut rng)
            .expect("non-empty");
        let mv = ribbonlab_core::Move::Stab { target };
        data = apply_stabilize(&data, target).expect("base in range");
        script.push(mv);
    }
    for _ in 0..k {
        let mut choices = applicable_slides(&data);
        choices.extend(applicable_cross_slides(&data));
        let Some(mv) = choices.choose(&mut rng) else {
            break;
        };
        data = mv.apply(&data).expect("applicable move");
        script.push(mv.clone());
    }
    (data, script)
}

pub fn generate(spec: GenSpec) -> RibbonData {
    match spec {
        GenSpec::Unknot => RibbonData::unknot(),
        GenSpec::SpunTrefoil => RibbonData::spun_trefoil(),
        GenSpec::Torus { g } => RibbonData::torus(g),
        GenSpec::Stabilized { k, seed } => stabilized(k, seed).0,
        GenSpec::Random {
            bases,
            handles,
            len,
            seed,
        } => random_connected(&mut ChaCha8Rng::seed_from_u64(seed), bases, handles, len),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ribbonlab_core::moves::apply_script;

    #[test]
    fn specs_parse() {
        assert_eq!("unknot".parse(), Ok(GenSpec::Unknot));
        assert_eq!("torus:2".parse(), Ok(GenSpec::Torus { g: 2 }));
        assert_eq!(
            "stabilized:3:7".parse(),
            Ok(GenSpec::Stabilized { k: 3, seed: 7 })
        );
        assert!("random:3:1:2:0".parse::<GenSpec>().is_err());
        assert!("stabilized:3".parse::<GenSpec>().is_err());
        assert!("knot".parse::<GenSpec>().is_err());
    }

    #[test]
    fn stabilized_is_seeded_and_replays() {
        let (a, script) = stabilized(3, 7);
        assert_eq!(stabilized(3, 7).0, a);
        assert_eq!(a.base_count, 4);
        assert!(a.is_sphere_knot());
        assert_eq!(apply_script(&RibbonData::unknot(), &script).unwrap(), a);
    }

    #[test]
    fn random_is_connected() {
        for seed in 0..50 {
            let d = generate(GenSpec::Random {
                bases: 4,
                handles: 5,
                len: 3,
                seed,
            });
            assert!(d.is_connected() && d.is_valid());
        }
    }
}
