//! Difference-matrix constructions for `C_m`-factors of `C_m[T]`.
//!
//! A `k × m` integer matrix whose rows sum to `0 mod n` and whose columns
//! each enumerate the same `k` residue classes `T` encodes a decomposition of
//! `C_m[T]` into `k` `C_m`-factors: row `i` traces one cycle through the `m`
//! levels by partial sums, its `n` residue translates form a factor, and
//! column `j` lists exactly which difference each factor spends on ladder
//! `j`. Everything else in this module is a way of manufacturing such
//! matrices: widening a narrow one with `±` column pairs, stacking the six
//! signed rotations of a zero-sum triple, and the two degenerate families
//! (the pillar factor for difference 0 and the full spread decomposition).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::model::{cp_vertex, DifferenceTriple, TwoFactor};
use crate::{Error, Result};

/// A validated difference matrix: rectangular, rows sum to `0 mod n`, and
/// every column induces the same set of residue classes with no repeats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMatrix {
    n: u32,
    rows: Vec<Vec<i64>>,
}

impl QuotientMatrix {
    pub fn new(n: u32, rows: Vec<Vec<i64>>) -> Result<Self> {
        if n < 3 || n % 2 == 0 {
            return Err(Error::BadParameters(format!(
                "difference matrix needs odd n >= 3, got {n}"
            )));
        }
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::InvalidMatrix("empty matrix".into()));
        }
        let cols = rows[0].len();
        let n_i = n as i64;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidMatrix(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            if row.iter().sum::<i64>().rem_euclid(n_i) != 0 {
                return Err(Error::InvalidMatrix(format!("row {i} does not sum to 0 mod {n}")));
            }
        }
        let col_classes = |j: usize| -> BTreeSet<u32> {
            rows.iter().map(|r| r[j].rem_euclid(n_i) as u32).collect()
        };
        let classes = col_classes(0);
        if classes.len() != rows.len() {
            return Err(Error::InvalidMatrix(
                "column 0 repeats a residue class".into(),
            ));
        }
        for j in 1..cols {
            let cj = col_classes(j);
            if cj != classes {
                return Err(Error::InvalidMatrix(format!(
                    "column {j} covers {cj:?}, expected {classes:?}"
                )));
            }
        }
        Ok(QuotientMatrix { n, rows })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn cols(&self) -> usize {
        self.rows[0].len()
    }

    /// The residue classes each column enumerates (the `T` of `C_m[T]`).
    pub fn difference_classes(&self) -> BTreeSet<u32> {
        let n_i = self.n as i64;
        self.rows.iter().map(|r| r[0].rem_euclid(n_i) as u32).collect()
    }

    /// Whether `T = -T mod n`, the precondition for column-pair widening.
    pub fn classes_symmetric(&self) -> bool {
        let t = self.difference_classes();
        t.iter().all(|&d| t.contains(&((self.n - d) % self.n)))
    }
}

/// Expands a difference matrix into `C_m`-factors of `C_m[T]`.
///
/// A matrix narrower than `m` is widened first by appending `(m - cols)/2`
/// column pairs `(t, -t)` — row `i` receiving the `i`-th smallest class —
/// which keeps row sums at zero and every column a copy of `T`, provided `T`
/// is symmetric. Row `i` then yields the cycle with residues the partial
/// sums of its first `m-1` entries (the final entry is forced on the closing
/// ladder by the zero row sum), and its `n` residue translates make factor
/// `F_i`. The factors exactly cover `C_m[T]`.
pub fn construction_d(mat: &QuotientMatrix, m: u32) -> Result<Vec<TwoFactor>> {
    if m < 3 || m % 2 == 0 {
        return Err(Error::BadParameters(format!("need odd m >= 3, got {m}")));
    }
    let n = mat.n;
    let cols = mat.cols();
    if cols > m as usize {
        return Err(Error::InvalidMatrix(format!(
            "matrix has {cols} columns but the cycle length is only {m}"
        )));
    }
    if (m as usize - cols) % 2 != 0 {
        return Err(Error::ParityMismatch { cols: cols as u32, m });
    }
    let n_i = n as i64;
    let mut rows = mat.rows.clone();
    if cols < m as usize {
        if !mat.classes_symmetric() {
            return Err(Error::InvalidMatrix(
                "cannot widen: difference classes are not closed under negation".into(),
            ));
        }
        let sorted: Vec<i64> = mat.difference_classes().iter().map(|&d| d as i64).collect();
        let pairs = (m as usize - cols) / 2;
        for (i, row) in rows.iter_mut().enumerate() {
            for _ in 0..pairs {
                row.push(sorted[i]);
                row.push(-sorted[i]);
            }
        }
    }

    let mut factors = Vec::with_capacity(rows.len());
    for row in &rows {
        let mut residues = Vec::with_capacity(m as usize);
        let mut acc = 0i64;
        residues.push(0u32);
        for &a in row.iter().take(m as usize - 1) {
            acc += a;
            residues.push(acc.rem_euclid(n_i) as u32);
        }
        let mut cycles = Vec::with_capacity(n as usize);
        for c in 0..n {
            let cycle = residues
                .iter()
                .enumerate()
                .map(|(level, &s)| cp_vertex(n, level as u32, (s + c) % n))
                .collect();
            cycles.push(cycle);
        }
        factors.push(TwoFactor::new(m, cycles));
    }
    Ok(factors)
}

/// Six `C_m`-factors of `C_m[±{t1,t2,t3}]` from one zero-sum triple: the
/// three cyclic rotations of the triple and their negations, stacked as a
/// `6 × 3` matrix and widened to `m`.
pub fn triple_factors(m: u32, n: u32, triple: DifferenceTriple) -> Result<Vec<TwoFactor>> {
    triple.validate(n)?;
    let [t1, t2, t3] = triple.entries();
    let rows = vec![
        vec![t1, t2, t3],
        vec![t2, t3, t1],
        vec![t3, t1, t2],
        vec![-t1, -t2, -t3],
        vec![-t2, -t3, -t1],
        vec![-t3, -t1, -t2],
    ];
    let mat = QuotientMatrix::new(n, rows)?;
    construction_d(&mat, m)
}

/// `triple_factors` over a list, concatenated: `6·k` factors covering
/// `C_m[±T_1 ∪ … ∪ ±T_k]` when the triples' classes are pairwise disjoint
/// (the caller's responsibility).
pub fn triples_factors(m: u32, n: u32, triples: &[DifferenceTriple]) -> Result<Vec<TwoFactor>> {
    let mut out = Vec::with_capacity(triples.len() * 6);
    for &t in triples {
        out.extend(triple_factors(m, n, t)?);
    }
    Ok(out)
}

/// The pillar factor: difference 0 on every ladder, i.e. the `n` cycles
/// `(0_r, 1_r, …, (m-1)_r)`.
pub fn zero_diff_factor(m: u32, n: u32) -> Result<TwoFactor> {
    let mat = QuotientMatrix::new(n, vec![vec![0i64; m as usize]])?;
    Ok(construction_d(&mat, m)?.pop().expect("one row yields one factor"))
}

/// Decomposes the full `C_m[n]` into `n` `C_m`-factors of constant slope:
/// factor `F_d` uses difference `d` on every climbing ladder and
/// `-(m-1)d` on the closing one. Exact iff `gcd(m-1, n) = 1`.
pub fn spread_factorization(m: u32, n: u32) -> Result<Vec<TwoFactor>> {
    if m < 3 || m % 2 == 0 || n % 2 == 0 || n < 3 {
        return Err(Error::BadParameters(format!(
            "spread needs odd m, n >= 3, got m={m} n={n}"
        )));
    }
    if crate::circulant::gcd((m - 1) as u64, n as u64) != 1 {
        return Err(Error::NotApplicable { m, n });
    }
    let mut factors = Vec::with_capacity(n as usize);
    for d in 0..n {
        let mut cycles = Vec::with_capacity(n as usize);
        for x in 0..n {
            let cycle = (0..m)
                .map(|level| cp_vertex(n, level, ((x as u64 + level as u64 * d as u64) % n as u64) as u32))
                .collect();
            cycles.push(cycle);
        }
        factors.push(TwoFactor::new(m, cycles));
    }
    Ok(factors)
}

/// One stored difference matrix with its applicability window: usable for
/// odd cycle lengths `m >= min_m` of the right parity.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixedMatrixRecord {
    pub n: u32,
    pub alpha: u32,
    pub min_m: u32,
    pub rows: Vec<Vec<i64>>,
}

/// Lookup table of hand-picked difference matrices for the sporadic cases
/// the generic generators do not reach.
#[derive(Clone, Debug, Default)]
pub struct FixedMatrixTable {
    records: BTreeMap<(u32, u32, u32), Vec<Vec<i64>>>,
}

impl FixedMatrixTable {
    pub fn from_json(s: &str) -> Result<Self> {
        let records: Vec<FixedMatrixRecord> = serde_json::from_str(s)
            .map_err(|e| Error::InvalidData(format!("fixed matrix table: {e}")))?;
        let mut map = BTreeMap::new();
        for r in records {
            if map.insert((r.n, r.alpha, r.min_m), r.rows).is_some() {
                return Err(Error::InvalidData(format!(
                    "duplicate fixed matrix for n={} alpha={} min_m={}",
                    r.n, r.alpha, r.min_m
                )));
            }
        }
        Ok(FixedMatrixTable { records: map })
    }

    /// The validated matrix for `(m, n, alpha)`, if one is stored and wide
    /// enough in parity and size to serve cycle length `m`.
    pub fn get(&self, m: u32, n: u32, alpha: u32) -> Result<Option<QuotientMatrix>> {
        for (&(rn, ra, min_m), rows) in &self.records {
            if rn != n || ra != alpha || m < min_m {
                continue;
            }
            let cols = rows.first().map_or(0, |r| r.len());
            if cols > m as usize || (m as usize - cols) % 2 != 0 {
                continue;
            }
            return QuotientMatrix::new(n, rows.clone()).map(Some);
        }
        Ok(None)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32, u32), &Vec<Vec<i64>>)> {
        self.records.iter()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{FactorizationCertificate, GraphSpec};
    use crate::verify::{coverage_of, verify};
    use std::collections::BTreeSet;

    fn assert_exact_cover(m: u32, n: u32, factors: Vec<TwoFactor>, dirs: BTreeSet<u32>) {
        let graph = GraphSpec::cycle_product(m, n, dirs.iter().copied());
        let got = coverage_of(&factors, &graph).unwrap();
        assert_eq!(got, dirs, "m={m} n={n}");
        let cert = FactorizationCertificate::new(graph, factors);
        let report = verify(&cert);
        assert!(report.is_accept(), "m={m} n={n}: {:?}", report.first_violation);
    }

    #[test]
    fn rejects_bad_row_sum() {
        assert!(matches!(
            QuotientMatrix::new(11, vec![vec![3, 4, 5]]),
            Err(Error::InvalidMatrix(_))
        ));
    }

    #[test]
    fn rejects_mismatched_columns() {
        // rows sum to 0 mod 11 but column 1 is {4, 3} while column 0 is {3, 5}
        assert!(matches!(
            QuotientMatrix::new(11, vec![vec![3, 4, 4], vec![5, 3, 3]]),
            Err(Error::InvalidMatrix(_))
        ));
    }

    #[test]
    fn rejects_residue_collision_in_column() {
        // -7 ≡ 4 mod 11 collides with the entry 4
        assert!(QuotientMatrix::new(11, vec![vec![4, 0, -4], vec![-7, 0, 7], vec![0, 0, 0]]).is_err());
    }

    #[test]
    fn six_row_matrix_expands_exactly() {
        let rows = vec![
            vec![3, 4, 3, -4, 5],
            vec![4, 3, -4, 5, 3],
            vec![5, 5, 5, 3, 4],
            vec![-3, -4, -3, 4, -5],
            vec![-4, -3, 4, -5, -3],
            vec![-5, -5, -5, -3, -4],
        ];
        let mat = QuotientMatrix::new(11, rows).unwrap();
        assert_eq!(
            mat.difference_classes(),
            BTreeSet::from([3, 4, 5, 6, 7, 8])
        );
        let factors = construction_d(&mat, 5).unwrap();
        assert_eq!(factors.len(), 6);
        assert_exact_cover(5, 11, factors, BTreeSet::from([3, 4, 5, 6, 7, 8]));
    }

    #[test]
    fn widening_pads_with_symmetric_pairs() {
        let triple = DifferenceTriple(3, 4, -7);
        for m in [3u32, 5, 7, 9] {
            let factors = triple_factors(m, 13, triple).unwrap();
            assert_eq!(factors.len(), 6);
            assert_exact_cover(m, 13, factors, BTreeSet::from([3, 4, 7, 6, 9, 10]));
        }
    }

    #[test]
    fn wrapping_triple_is_accepted() {
        // 3 + 4 + 6 = 13 ≡ 0: classes {3, 4, 6} ∪ {10, 9, 7}
        let factors = triple_factors(3, 13, DifferenceTriple(3, 4, 6)).unwrap();
        assert_exact_cover(3, 13, factors, BTreeSet::from([3, 4, 6, 7, 9, 10]));
    }

    #[test]
    fn triple_rejects_class_collision() {
        // -7 ≡ 4 mod 11: the six signed rotations repeat a class
        assert!(triple_factors(3, 11, DifferenceTriple(3, 4, -7)).is_err());
    }

    #[test]
    fn pillar_factor_covers_difference_zero() {
        let f = zero_diff_factor(5, 7).unwrap();
        assert_eq!(f.cycles.len(), 7);
        assert_exact_cover(5, 7, vec![f], BTreeSet::from([0]));
    }

    #[test]
    fn spread_covers_everything() {
        for (m, n) in [(3u32, 5u32), (3, 9), (5, 9), (5, 5), (7, 9)] {
            if crate::circulant::gcd((m - 1) as u64, n as u64) != 1 {
                continue;
            }
            let factors = spread_factorization(m, n).unwrap();
            assert_eq!(factors.len(), n as usize);
            assert_exact_cover(m, n, factors, (0..n).collect());
        }
    }

    #[test]
    fn spread_needs_coprime_step() {
        assert!(matches!(
            spread_factorization(7, 9),
            Err(Error::NotApplicable { m: 7, n: 9 })
        ));
    }

    #[test]
    fn fixed_table_round_trip() {
        let json = r#"[
            {"n": 11, "alpha": 6, "min_m": 5,
             "rows": [[3,4,3,-4,5],[4,3,-4,5,3],[5,5,5,3,4],
                      [-3,-4,-3,4,-5],[-4,-3,4,-5,-3],[-5,-5,-5,-3,-4]]}
        ]"#;
        let table = FixedMatrixTable::from_json(json).unwrap();
        assert_eq!(table.len(), 1);
        assert!(table.get(3, 11, 6).unwrap().is_none(), "below min_m");
        assert!(table.get(5, 11, 6).unwrap().is_some());
        assert!(table.get(7, 11, 6).unwrap().is_some());
        assert!(table.get(6, 11, 6).unwrap().is_none(), "parity");
        assert!(table.get(5, 13, 6).unwrap().is_none());
    }
}
