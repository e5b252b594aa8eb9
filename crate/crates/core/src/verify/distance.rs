use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Sampling, Verdict};
use crate::dual_polar::DualPolarSpace;
use crate::error::Result;
use crate::field::Field;
use crate::graph::Graph;
use crate::grassmann::GrassmannGraph;
use crate::half_spin::HalfSpinSpace;

/// BFS sources: all vertices, or `ceil(pairs / len)` distinct seeded ones.
fn sources(len: usize, sampling: Sampling) -> Vec<usize> {
    match sampling {
        Sampling::Exhaustive => (0..len).collect(),
        Sampling::Sampled { pairs, seed } => {
            let k = pairs.div_ceil(len.max(1)).clamp(1, len);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picked = index::sample(&mut rng, len, k).into_vec();
            picked.sort_unstable();
            picked
        }
    }
}

/// Compares BFS distances from each source with `formula(src, dst)`;
/// `describe` renders a vertex in failure messages.
fn compare_bfs(
    v: &mut Verdict,
    graph: &Graph,
    sampling: Sampling,
    formula: impl Fn(usize, usize) -> u32 + Sync,
    describe: impl Fn(usize) -> usize,
) {
    let srcs = sources(graph.len(), sampling);
    let fails: Vec<Vec<(usize, usize, u32, u32)>> = srcs
        .par_iter()
        .map(|&s| {
            let dist = graph.bfs(s);
            (0..graph.len())
                .filter(|&u| dist[u] != formula(s, u))
                .map(|u| (s, u, dist[u], formula(s, u)))
                .collect()
        })
        .collect();
    v.pairs_checked += (srcs.len() * graph.len()) as u64;
    v.detail("sources", srcs.len());
    for (s, u, bfs, f) in fails.into_iter().flatten() {
        v.fail(format!(
            "({}, {}): bfs {bfs}, formula {f}",
            describe(s),
            describe(u)
        ));
    }
}

/// Dual polar distance `n - dim(S ∩ U)` against BFS.
pub fn verify_dual_polar_distances<F: Field>(
    dps: &DualPolarSpace<F>,
    sampling: Sampling,
) -> Result<Verdict> {
    let mut v = Verdict::new("distance-formula", &dps.space().name(), sampling.mode());
    let n = dps.rank() as u32;
    let t = dps.table();
    compare_bfs(
        &mut v,
        dps.graph(),
        sampling,
        |s, u| n - t.get(s, u) as u32,
        |i| i,
    );
    v.detail("diameter", dps.graph().diameter());
    Ok(v)
}

/// Grassmann distance `k - dim(S ∩ U)` against BFS.
pub fn verify_grassmann_distances<F: Field>(
    g: &GrassmannGraph<F>,
    sampling: Sampling,
) -> Result<Verdict> {
    let mut v = Verdict::new("distance-formula", &g.name(), sampling.mode());
    let k = g.k() as u32;
    let t = g.table();
    compare_bfs(
        &mut v,
        g.graph(),
        sampling,
        |s, u| k - t.get(s, u) as u32,
        |i| i,
    );
    let diameter = g.graph().diameter();
    v.detail("diameter", diameter);
    if diameter != Some(g.diameter() as u32) {
        v.fail(format!(
            "BFS diameter {diameter:?}, expected {}",
            g.diameter()
        ));
    }
    Ok(v)
}

/// The dimension criterion for opposite members against BFS distance equal
/// to the diameter; also checks half-spin distance equal to half the dual
/// polar distance.
pub fn verify_half_spin_distances<F: Field>(
    hss: &HalfSpinSpace<'_, F>,
    sampling: Sampling,
) -> Result<Verdict> {
    let name = format!(
        "{} family {}",
        hss.dual_polar().space().name(),
        hss.family()
    );
    let mut v = Verdict::new("half-spin-distance", &name, sampling.mode());
    let Some(diameter) = hss.diameter() else {
        v.fail("collinearity graph is disconnected");
        return Ok(v);
    };
    v.detail("diameter", diameter);
    v.detail("opposite_dim", hss.opposite_dim());
    let n = hss.rank() as u32;
    let t = hss.table();
    let op = hss.opposite_dim() as u8;
    let m = hss.members();
    let srcs = sources(hss.len(), sampling);
    let fails: Vec<Vec<String>> = srcs
        .par_iter()
        .map(|&s| {
            let dist = hss.graph().bfs(s);
            let mut out = Vec::new();
            for (u, &d) in dist.iter().enumerate() {
                let by_dim = t.get(s, u) == op;
                if by_dim != (d == diameter) {
                    out.push(format!(
                        "({}, {}): dimension criterion {by_dim}, bfs distance {d}",
                        m[s], m[u]
                    ));
                }
                if 2 * d != n - t.get(s, u) as u32 {
                    out.push(format!(
                        "({}, {}): bfs distance {d} is not half the dual distance",
                        m[s], m[u]
                    ));
                }
            }
            out
        })
        .collect();
    v.pairs_checked = (srcs.len() * hss.len()) as u64;
    v.detail("sources", srcs.len());
    for f in fails.into_iter().flatten() {
        v.fail(f);
    }
    Ok(v)
}
