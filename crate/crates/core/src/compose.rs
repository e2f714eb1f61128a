//! Composition layer: from `C_m[n]` splits to full decompositions of `K_v`
//! and `K_t[mn]`.
//!
//! The frame is always the same. A Hamiltonian decomposition of a small
//! complete graph (the classical zigzag construction, [`walecki`]) is blown
//! up so every frame vertex becomes a group of `n` (or `mn`) vertices; each
//! blown-up Hamiltonian cycle is a copy of `C_m[n]` and is split by the
//! `cmn` solver, and the untouched in-group edges form holes that are filled
//! recursively or, for the multipartite host, not at all. The planner
//! decides how many `C_m`- versus `C_n`-factors each copy and each hole must
//! contribute so the totals meet the request.

use serde::{Deserialize, Serialize};

use crate::model::{CycleSeq, TwoFactor, Vertex};
use crate::{Error, Result};

pub use crate::cmn::SolveOutcome;

/// A sub-decomposition some construction needed but could not produce.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IngredientRequest {
    /// A decomposition of `K_order` into `C_cycle_len`-factors only.
    UniformFactorization { order: u32, cycle_len: u32 },
    /// A decomposition of the complete multipartite graph `K_t[m]` into
    /// `C_m`-factors.
    KtmFactorization { t: u32, m: u32 },
}

/// A request to decompose `K_{mnt}` (for `t = 1`, the complete graph; for
/// odd `t > 1` the blow-up frame has `t` groups) into `alpha` `C_m`-factors
/// and `beta` `C_n`-factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HwRequest {
    pub m: u32,
    pub n: u32,
    pub t: u32,
    pub alpha: u32,
    pub beta: u32,
}

impl HwRequest {
    pub fn new(m: u32, n: u32, t: u32, alpha: u32, beta: u32) -> Result<Self> {
        if m < 3 || m % 2 == 0 || n < m || n % 2 == 0 {
            return Err(Error::BadParameters(format!(
                "need odd 3 <= m <= n, got m={m} n={n}"
            )));
        }
        if t == 0 {
            return Err(Error::BadParameters("need t >= 1".into()));
        }
        Ok(HwRequest { m, n, t, alpha, beta })
    }

    pub fn order(&self) -> u32 {
        self.m * self.n * self.t
    }
}

/// Hamiltonian decomposition of the complete graph on odd `v` vertices into
/// `(v-1)/2` cycles, by the classical zigzag: vertices `0..v-1` with `v-1`
/// as the center, cycle `j` walks `j, j+1, j-1, j+2, j-2, …` mod `v-1` and
/// closes through the center.
pub fn walecki(v: u32) -> Result<Vec<CycleSeq>> {
    if v < 3 || v % 2 == 0 {
        return Err(Error::BadParameters(format!(
            "hamiltonian decomposition needs odd v >= 3, got {v}"
        )));
    }
    let ring = v - 1; // even
    let center = ring;
    let k = ring / 2;
    let mut out = Vec::with_capacity(k as usize);
    for j in 0..k {
        let mut cycle = Vec::with_capacity(v as usize);
        for t in 0..ring {
            let half = (t + 1) / 2;
            let u = if t % 2 == 1 {
                (j + half) % ring
            } else {
                (j + ring - half % ring) % ring
            };
            cycle.push(u);
        }
        cycle.push(center);
        out.push(CycleSeq(cycle));
    }
    Ok(out)
}

/// Pulls a `C_m[n]` factor list back along a frame cycle: coordinate
/// `(level, residue)` (encoded `level * n + residue`) becomes the global
/// vertex `frame[level] * n + residue`. Factors keep their cycle lengths.
pub fn expand_through_cycle(factors: &[TwoFactor], n: u32, frame: &CycleSeq) -> Vec<TwoFactor> {
    let map = |v: Vertex| -> Vertex {
        let (level, r) = (v / n, v % n);
        frame.0[level as usize] * n + r
    };
    factors
        .iter()
        .map(|f| {
            let cycles = f
                .cycles
                .iter()
                .map(|c| c.0.iter().map(|&v| map(v)).collect())
                .collect();
            TwoFactor::new(f.cycle_length, cycles)
        })
        .collect()
}

/// Solves the two-cycle-length factorization of the complete graph
/// `K_{m·n·t}` (t = 1) or of the `t`-group frame for odd `t > 1`.
pub fn hw_solve(req: &HwRequest) -> Result<SolveOutcome> {
    let req = HwRequest::new(req.m, req.n, req.t, req.alpha, req.beta)?;
    let v = req.order();
    if req.t % 2 == 0 {
        return Ok(SolveOutcome::Infeasible {
            reason: format!("order {v} is even: t = {} must be odd", req.t),
        });
    }
    let need = (v - 1) / 2;
    if req.alpha + req.beta != need {
        return Ok(SolveOutcome::Infeasible {
            reason: format!(
                "alpha + beta must equal (v-1)/2 = {need} for v = {v}, got {}",
                req.alpha + req.beta
            ),
        });
    }
    if (req.m, req.n, req.t, req.alpha, req.beta) == (3, 5, 1, 6, 1) {
        return Ok(SolveOutcome::KnownNonexistent {
            citation: "(6,1) ∉ HWP(15; 3, 5)".into(),
        });
    }
    Err(Error::Unsupported(format!(
        "composition for m={} n={} t={} not yet wired",
        req.m, req.n, req.t
    )))
}

/// Solves the multipartite variant: `K_t[mn]` (odd `t > 1`) into `alpha`
/// `C_m`-factors and `beta` `C_n`-factors.
pub fn multipartite_solve(req: &HwRequest) -> Result<SolveOutcome> {
    let req = HwRequest::new(req.m, req.n, req.t, req.alpha, req.beta)?;
    if req.t < 2 {
        return Err(Error::BadParameters(
            "multipartite host needs t >= 2 groups".into(),
        ));
    }
    if req.t % 2 == 0 {
        return Ok(SolveOutcome::Infeasible {
            reason: format!("t = {} must be odd for a 2-factorization to exist", req.t),
        });
    }
    let need = req.m * req.n * (req.t - 1) / 2;
    if req.alpha + req.beta != need {
        return Ok(SolveOutcome::Infeasible {
            reason: format!(
                "alpha + beta must equal mn(t-1)/2 = {need}, got {}",
                req.alpha + req.beta
            ),
        });
    }
    Err(Error::Unsupported(format!(
        "multipartite composition for m={} n={} t={} not yet wired",
        req.m, req.n, req.t
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{FactorizationCertificate, GraphSpec};
    use crate::verify::verify;

    #[test]
    fn zigzag_is_a_hamiltonian_decomposition() {
        for v in [3u32, 5, 7, 9, 11, 21] {
            let cycles = walecki(v).unwrap();
            assert_eq!(cycles.len() as u32, (v - 1) / 2, "v={v}");
            let factors = cycles
                .into_iter()
                .map(|c| TwoFactor::new(v, vec![c.0]))
                .collect();
            let cert = FactorizationCertificate::new(GraphSpec::Complete { v }, factors);
            let report = verify(&cert);
            assert!(report.is_accept(), "v={v}: {:?}", report.first_violation);
        }
    }

    #[test]
    fn zigzag_rejects_even_orders() {
        assert!(walecki(8).is_err());
    }

    #[test]
    fn frame_pullback_relabels_levels() {
        let f = TwoFactor::new(3, vec![vec![0, 5, 10], vec![1, 6, 11]]);
        // frame cycle (2, 0, 1): level 0 -> group 2, level 1 -> group 0, ...
        let frame = CycleSeq(vec![2, 0, 1]);
        let out = expand_through_cycle(&[f], 5, &frame);
        // (level 0, r 0) -> vertex 10; (1, 0) -> 0; (2, 0) -> 5, so the
        // triangle {0, 5, 10} survives as a set; (0,1)/(1,1)/(2,1) -> 11, 1, 6.
        let cycles: Vec<&Vec<u32>> = out[0].cycles.iter().map(|c| &c.0).collect();
        let as_sets: Vec<std::collections::BTreeSet<u32>> = cycles
            .iter()
            .map(|c| c.iter().copied().collect())
            .collect();
        assert!(as_sets.contains(&[0u32, 5, 10].into_iter().collect()));
        assert!(as_sets.contains(&[1u32, 6, 11].into_iter().collect()));
    }

    #[test]
    fn infeasible_shapes_are_reported() {
        let out = hw_solve(&HwRequest::new(3, 5, 2, 10, 4).unwrap()).unwrap();
        assert_eq!(out.label(), "infeasible");
        let out = hw_solve(&HwRequest::new(3, 5, 1, 3, 3).unwrap()).unwrap();
        assert_eq!(out.label(), "infeasible");
        let out = multipartite_solve(&HwRequest::new(3, 5, 4, 1, 1).unwrap()).unwrap();
        assert_eq!(out.label(), "infeasible");
    }

    #[test]
    fn the_classical_nonexistent_pair_is_cited() {
        let out = hw_solve(&HwRequest::new(3, 5, 1, 6, 1).unwrap()).unwrap();
        match out {
            SolveOutcome::KnownNonexistent { citation } => {
                assert_eq!(citation, "(6,1) ∉ HWP(15; 3, 5)");
            }
            other => panic!("{other:?}"),
        }
    }
}
