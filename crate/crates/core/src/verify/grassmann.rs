use rayon::prelude::*;

use super::opposition::OppositionIndex;
use super::{Mode, Verdict};
use crate::error::Result;
use crate::field::Field;
use crate::grassmann::GrassmannGraph;

/// Adjacency against existence of an opposition witness, every pair.
pub fn verify_grassmann_characterization<F: Field>(g: &GrassmannGraph<F>) -> Result<Verdict> {
    let idx = OppositionIndex::new(g.table(), g.opposite_dim() as u8);
    let len = g.len();
    let k = g.k();
    let mut v = Verdict::new("grassmann", &g.name(), Mode::Exhaustive);
    let rows: Vec<(u64, Vec<String>)> = (0..len)
        .into_par_iter()
        .map(|i| {
            let mut adj = 0;
            let mut fails = Vec::new();
            for j in i + 1..len {
                let adjacent = g.table().get(i, j) as usize + 1 == k;
                adj += adjacent as u64;
                let witness = idx.has_witness(i, j);
                if adjacent != witness {
                    fails.push(format!(
                        "pair ({i}, {j}): adjacent={adjacent} witness={witness}"
                    ));
                }
            }
            (adj, fails)
        })
        .collect();
    v.pairs_checked = (len * (len - 1) / 2) as u64;
    v.detail("vertices", len);
    v.detail("adjacent_pairs", rows.iter().map(|r| r.0).sum::<u64>());
    v.detail("diameter", g.diameter());
    for (_, fails) in rows {
        for f in fails {
            v.fail(f);
        }
    }
    Ok(v)
}
