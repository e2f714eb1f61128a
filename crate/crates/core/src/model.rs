//! Core vocabulary: vertices, cycles, factors, graph descriptions, difference
//! sets, and the certificate format shared by every other module.
//!
//! Vertices are flat non-negative integers. For the blown-up cycle graph
//! [`GraphSpec::CycleProduct`] the encoding is `id = level * n + residue`
//! (level in `Z_m`, residue in `Z_n`); for [`GraphSpec::CompleteMultipartite`]
//! it is `id = part * s + index`. All relabeling arithmetic is done explicitly
//! by the composing modules so certificates stay language-neutral and
//! diffable.

use std::collections::BTreeSet;
use std::fmt;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Flat vertex identifier; the ambient [`GraphSpec`] gives it meaning.
pub type Vertex = u32;

/// An undirected edge in canonical `(min, max)` order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(pub Vertex, pub Vertex);

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}-{})", self.0, self.1)
    }
}

/// Orders an unordered vertex pair into the canonical [`Edge`] key.
///
/// This is the single edge-identity rule used by both construction and
/// verification, so multiset comparisons are well defined.
pub fn canonical_edge(u: Vertex, v: Vertex) -> Result<Edge> {
    if u == v {
        return Err(Error::LoopEdge(u));
    }
    Ok(if u < v { Edge(u, v) } else { Edge(v, u) })
}

/// The set of directed residue differences a cycle-product graph carries.
///
/// `Full` means all of `Z_n`. An explicit set stores *directed* differences:
/// difference `d` is the edge family level `x` → level `x+1` with residue
/// shift `+d`, so a symmetric pair is stored as `{d, n-d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DifferenceSet {
    Full,
    Explicit(BTreeSet<u32>),
}

impl DifferenceSet {
    /// The concrete difference set for a given n.
    pub fn resolve(&self, n: u32) -> BTreeSet<u32> {
        match self {
            DifferenceSet::Full => (0..n).collect(),
            DifferenceSet::Explicit(s) => s.clone(),
        }
    }

    /// Number of differences carried for a given n.
    pub fn len(&self, n: u32) -> usize {
        match self {
            DifferenceSet::Full => n as usize,
            DifferenceSet::Explicit(s) => s.len(),
        }
    }

    /// Builds an explicit set from directed residues, reducing mod n.
    pub fn from_iter<I: IntoIterator<Item = u32>>(n: u32, it: I) -> Self {
        DifferenceSet::Explicit(it.into_iter().map(|d| d % n).collect())
    }
}

impl Serialize for DifferenceSet {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DifferenceSet::Full => ser.serialize_str("full"),
            DifferenceSet::Explicit(set) => {
                let mut seq = ser.serialize_seq(Some(set.len()))?;
                for d in set {
                    seq.serialize_element(d)?;
                }
                seq.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for DifferenceSet {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = DifferenceSet;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("\"full\" or an array of residues")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<Self::Value, E> {
                if s == "full" {
                    Ok(DifferenceSet::Full)
                } else {
                    Err(E::custom(format!("expected \"full\", got {s:?}")))
                }
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let mut set = BTreeSet::new();
                while let Some(d) = seq.next_element::<u32>()? {
                    set.insert(d);
                }
                Ok(DifferenceSet::Explicit(set))
            }
        }
        de.deserialize_any(V)
    }
}

/// Description of the host graph a certificate claims to factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphSpec {
    /// Complete graph on `v` vertices.
    Complete { v: u32 },
    /// Complete multipartite graph with `t` parts of size `s`.
    CompleteMultipartite { t: u32, s: u32 },
    /// Blow-up of an m-cycle by n: vertices `Z_m x Z_n`, edges between
    /// consecutive levels only, restricted to the given residue differences.
    CycleProduct {
        m: u32,
        n: u32,
        differences: DifferenceSet,
    },
}

impl GraphSpec {
    /// The full cycle blow-up `C_m[n]` (all differences).
    pub fn cycle_product_full(m: u32, n: u32) -> Self {
        GraphSpec::CycleProduct {
            m,
            n,
            differences: DifferenceSet::Full,
        }
    }

    /// Cycle blow-up restricted to an explicit directed difference set.
    pub fn cycle_product(m: u32, n: u32, diffs: impl IntoIterator<Item = u32>) -> Self {
        GraphSpec::CycleProduct {
            m,
            n,
            differences: DifferenceSet::from_iter(n, diffs),
        }
    }

    /// Total number of vertices.
    pub fn vertex_count(&self) -> u32 {
        match *self {
            GraphSpec::Complete { v } => v,
            GraphSpec::CompleteMultipartite { t, s } => t * s,
            GraphSpec::CycleProduct { m, n, .. } => m * n,
        }
    }

    /// Total number of edges.
    pub fn edge_count(&self) -> u64 {
        match self {
            GraphSpec::Complete { v } => (*v as u64) * (*v as u64 - 1) / 2,
            GraphSpec::CompleteMultipartite { t, s } => {
                let (t, s) = (*t as u64, *s as u64);
                t * (t - 1) / 2 * s * s
            }
            GraphSpec::CycleProduct { m, n, differences } => {
                (*m as u64) * (*n as u64) * differences.len(*n) as u64
            }
        }
    }

    /// Structural validity of the sizes themselves.
    pub fn validate(&self) -> Result<()> {
        match *self {
            GraphSpec::Complete { v } if v >= 3 => Ok(()),
            GraphSpec::Complete { v } => {
                Err(Error::BadParameters(format!("complete graph needs v >= 3, got {v}")))
            }
            GraphSpec::CompleteMultipartite { t, s } if t >= 2 && s >= 1 => Ok(()),
            GraphSpec::CompleteMultipartite { t, s } => Err(Error::BadParameters(format!(
                "multipartite graph needs t >= 2, s >= 1, got t={t}, s={s}"
            ))),
            GraphSpec::CycleProduct { m, n, .. } if m >= 3 && n >= 1 => Ok(()),
            GraphSpec::CycleProduct { m, n, .. } => Err(Error::BadParameters(format!(
                "cycle product needs m >= 3, n >= 1, got m={m}, n={n}"
            ))),
        }
    }
}

/// Encodes (level, residue) into a flat cycle-product vertex id.
#[inline]
pub fn cp_vertex(n: u32, level: u32, residue: u32) -> Vertex {
    level * n + residue
}

/// Decodes a flat cycle-product vertex id into (level, residue).
#[inline]
pub fn cp_decode(n: u32, v: Vertex) -> (u32, u32) {
    (v / n, v % n)
}

/// Every edge of the graph exactly once, in canonical form.
///
/// For `CycleProduct(m, n, D)` the edges are
/// `(x, r) - (x+1 mod m, r+d mod n)` for `x in Z_m`, `r in Z_n`, `d in D`;
/// each ladder (pair of consecutive levels) is generated from its lower level
/// once, so for m = 3 the pair of levels (2, 0) is the third distinct ladder
/// and nothing is inserted twice.
pub fn edges_of_spec(g: &GraphSpec) -> Result<Vec<Edge>> {
    g.validate()?;
    let mut edges = Vec::with_capacity(g.edge_count() as usize);
    match g {
        GraphSpec::Complete { v } => {
            for u in 0..*v {
                for w in (u + 1)..*v {
                    edges.push(Edge(u, w));
                }
            }
        }
        GraphSpec::CompleteMultipartite { t, s } => {
            let total = t * s;
            for u in 0..total {
                for w in (u + 1)..total {
                    if u / s != w / s {
                        edges.push(Edge(u, w));
                    }
                }
            }
        }
        GraphSpec::CycleProduct { m, n, differences } => {
            let diffs = differences.resolve(*n);
            for x in 0..*m {
                let y = (x + 1) % m;
                for r in 0..*n {
                    for &d in &diffs {
                        let u = cp_vertex(*n, x, r);
                        let w = cp_vertex(*n, y, (r + d) % n);
                        edges.push(canonical_edge(u, w)?);
                    }
                }
            }
        }
    }
    Ok(edges)
}

/// A cycle given as its ordered vertex list (closed implicitly).
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleSeq(pub Vec<Vertex>);

impl fmt::Debug for CycleSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cycle{:?}", self.0)
    }
}

impl CycleSeq {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The cycle's edges in canonical form (including the closing edge).
    pub fn edges(&self) -> Result<Vec<Edge>> {
        let k = self.0.len();
        if k < 3 {
            return Err(Error::BadParameters(format!("cycle of length {k} < 3")));
        }
        (0..k)
            .map(|i| canonical_edge(self.0[i], self.0[(i + 1) % k]))
            .collect()
    }

    /// Rewrites the cycle into canonical rotation/reflection: smallest vertex
    /// first, then the lexicographically smaller neighbor second.
    pub fn canonicalize(&mut self) {
        let k = self.0.len();
        if k == 0 {
            return;
        }
        let (pos, _) = self
            .0
            .iter()
            .enumerate()
            .min_by_key(|&(_, v)| *v)
            .expect("nonempty");
        self.0.rotate_left(pos);
        if k >= 3 && self.0[k - 1] < self.0[1] {
            self.0[1..].reverse();
        }
    }

    /// A canonicalized copy, leaving `self` untouched.
    pub fn canonicalized(&self) -> CycleSeq {
        let mut c = self.clone();
        c.canonicalize();
        c
    }
}

/// A claimed uniform 2-factor: vertex-disjoint cycles, all of one length,
/// covering every vertex of the ambient graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoFactor {
    pub cycle_length: u32,
    pub cycles: Vec<CycleSeq>,
}

impl TwoFactor {
    /// Builds a factor from raw cycles, canonicalizing each and sorting the
    /// list so equal factors have equal representations.
    pub fn new(cycle_length: u32, cycles: Vec<Vec<Vertex>>) -> Self {
        let mut cycles: Vec<CycleSeq> = cycles
            .into_iter()
            .map(|c| CycleSeq(c).canonicalized())
            .collect();
        cycles.sort_by(|a, b| a.0.cmp(&b.0));
        TwoFactor { cycle_length, cycles }
    }

    /// All edges of the factor, canonical, concatenated across cycles.
    pub fn edges(&self) -> Result<Vec<Edge>> {
        let mut out = Vec::new();
        for c in &self.cycles {
            out.extend(c.edges()?);
        }
        Ok(out)
    }
}

/// Free-form provenance: construction path taken, seeds, budgets.
pub type Metadata = std::collections::BTreeMap<String, serde_json::Value>;

/// A full decomposition claim: host graph plus the list of 2-factors whose
/// edges are claimed to partition it. The verifier, not this type, decides
/// whether the claim is true.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationCertificate {
    pub graph: GraphSpec,
    pub factors: Vec<TwoFactor>,
    #[serde(default)]
    pub metadata: Metadata,
}

impl FactorizationCertificate {
    pub fn new(graph: GraphSpec, factors: Vec<TwoFactor>) -> Self {
        FactorizationCertificate {
            graph,
            factors,
            metadata: Metadata::new(),
        }
    }

    /// Attaches a provenance string under the conventional key.
    pub fn with_construction(mut self, path: impl Into<String>) -> Self {
        self.metadata
            .insert("construction".into(), serde_json::Value::String(path.into()));
        self
    }

    /// Counts factors by declared cycle length (the certificate's claimed
    /// type profile, before any verification).
    pub fn counts(&self) -> std::collections::BTreeMap<u32, u32> {
        let mut counts = std::collections::BTreeMap::new();
        for f in &self.factors {
            *counts.entry(f.cycle_length).or_insert(0) += 1;
        }
        counts
    }
}

/// A signed integer triple summing to zero, used to drive the quotient-matrix
/// constructions; entries are interpreted mod an ambient n at use time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceTriple(pub i64, pub i64, pub i64);

impl DifferenceTriple {
    pub fn entries(&self) -> [i64; 3] {
        [self.0, self.1, self.2]
    }

    /// Checks t1 + t2 + t3 = 0 mod n, with nonzero pairwise-distinct
    /// absolute values (the conditions the matrix construction needs).
    pub fn validate(&self, n: u32) -> Result<()> {
        let e = self.entries();
        let n_i = n as i64;
        if e.iter().sum::<i64>().rem_euclid(n_i) != 0 {
            return Err(Error::InvalidTriple(e, format!("sum not 0 mod {n}")));
        }
        let mut abs: Vec<i64> = e.iter().map(|x| x.abs()).collect();
        if abs.iter().any(|&a| a == 0 || a % n_i == 0) {
            return Err(Error::InvalidTriple(e, "zero entry mod n".into()));
        }
        abs.sort_unstable();
        abs.dedup();
        if abs.len() != 3 {
            return Err(Error::InvalidTriple(e, "absolute values collide".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_edge_orders_pairs() {
        assert_eq!(canonical_edge(7, 2).unwrap(), Edge(2, 7));
        assert_eq!(canonical_edge(0, 1).unwrap(), Edge(0, 1));
        assert!(matches!(canonical_edge(5, 5), Err(Error::LoopEdge(5))));
    }

    #[test]
    fn complete_graph_edge_count() {
        let g = GraphSpec::Complete { v: 5 };
        let e = edges_of_spec(&g).unwrap();
        assert_eq!(e.len(), 10);
    }

    #[test]
    fn cycle_product_full_matches_tripartite_count() {
        // C_3[5] with all differences is the complete tripartite graph on
        // 5+5+5 vertices: 3 part-pairs x 25 edges.
        let g = GraphSpec::cycle_product_full(3, 5);
        let e = edges_of_spec(&g).unwrap();
        assert_eq!(e.len(), 75);
        let set: BTreeSet<Edge> = e.iter().copied().collect();
        assert_eq!(set.len(), 75, "no duplicate edges");
        let km = edges_of_spec(&GraphSpec::CompleteMultipartite { t: 3, s: 5 }).unwrap();
        let km_set: BTreeSet<Edge> = km.into_iter().collect();
        assert_eq!(set, km_set, "same edge set as K_{{5,5,5}}");
    }

    #[test]
    fn cycle_product_explicit_differences() {
        let g = GraphSpec::cycle_product(5, 7, [0u32, 1, 6]);
        let e = edges_of_spec(&g).unwrap();
        assert_eq!(e.len(), 5 * 7 * 3);
        let set: BTreeSet<Edge> = e.into_iter().collect();
        assert_eq!(set.len(), 105);
    }

    #[test]
    fn vertex_encoding_round_trips() {
        let n = 9;
        for level in 0..7 {
            for residue in 0..n {
                let v = cp_vertex(n, level, residue);
                assert_eq!(cp_decode(n, v), (level, residue));
            }
        }
    }

    #[test]
    fn cycle_canonicalization_picks_smallest_rotation() {
        let mut c = CycleSeq(vec![4, 9, 1, 7, 3]);
        c.canonicalize();
        assert_eq!(c.0[0], 1);
        // neighbors of 1 are 9 and 7; the smaller (7) must come second
        assert_eq!(c.0, vec![1, 7, 3, 4, 9]);
        // re-canonicalizing is a fixed point
        let again = c.canonicalized();
        assert_eq!(again, c);
    }

    #[test]
    fn certificate_json_shape_is_stable() {
        let cert = FactorizationCertificate::new(
            GraphSpec::cycle_product(3, 7, [0u32, 1, 6]),
            vec![TwoFactor::new(3, vec![vec![0, 8, 16]])],
        );
        let j = serde_json::to_value(&cert).unwrap();
        assert_eq!(j["graph"]["kind"], "cycle_product");
        assert_eq!(j["graph"]["m"], 3);
        assert_eq!(j["graph"]["differences"], serde_json::json!([0, 1, 6]));
        assert_eq!(j["factors"][0]["cycle_length"], 3);
        assert_eq!(j["factors"][0]["cycles"][0], serde_json::json!([0, 8, 16]));

        let full = GraphSpec::cycle_product_full(3, 7);
        let jf = serde_json::to_value(&full).unwrap();
        assert_eq!(jf["differences"], "full");
        let back: GraphSpec = serde_json::from_value(jf).unwrap();
        assert_eq!(back, full);
    }

    #[test]
    fn difference_triple_validation() {
        DifferenceTriple(3, 4, -7).validate(15).unwrap();
        // wrap-around triple: sums to n, fine mod n
        DifferenceTriple(3, 4, 6).validate(13).unwrap();
        assert!(DifferenceTriple(3, 4, -6).validate(15).is_err());
        assert!(DifferenceTriple(0, 4, -4).validate(15).is_err());
        assert!(DifferenceTriple(4, 4, -8).validate(15).is_err());
    }
}
