//! Hamiltonian decompositions of connected circulant graphs of degree 2 and 4.
//!
//! The graph `⟨S⟩_n` has vertex set `Z_n` and edges `{x, x+d}` for `d ∈ S`.
//! With `n` odd and `|S| ≤ 2` the graph is 2- or 4-regular, and when
//! connected it splits into `|S|` Hamiltonian cycles. A singleton set gives
//! the stepping cycle directly. For pairs, the decomposition is found by:
//!
//! 1. normalizing the connection set by a unit multiple (an automorphism of
//!    `Z_n`) so one element becomes small or the two become consecutive,
//! 2. a deterministic "coil" construction that sweeps each coset of the
//!    non-unit element and stitches the cosets together with the other
//!    element, searching over the few free parameters (sweep directions and
//!    the stitch sign) until the complement is a single cycle,
//! 3. a budgeted depth-first search as a last resort.
//!
//! Results are cached per `(n, S)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Inverse of `a` modulo `n`, when it exists.
pub(crate) fn mod_inv(a: u32, n: u32) -> Option<u32> {
    let (mut r0, mut r1) = (n as i64, (a % n) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(n as i64) as u32)
}

/// Folds a residue to its representative in `[0, n/2]`.
pub(crate) fn fold(n: u32, d: u32) -> u32 {
    let r = d % n;
    r.min(n - r) % n
}

/// A circulant graph `⟨S⟩_n` with the connection set stored folded.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Circulant {
    n: u32,
    set: Vec<u32>,
}

impl Circulant {
    /// Builds `⟨S⟩_n`. Differences are reduced mod `n` and folded; zero
    /// differences (loops) are rejected, duplicates collapse.
    pub fn new(n: u32, differences: impl IntoIterator<Item = u32>) -> Result<Self> {
        if n < 3 || n % 2 == 0 {
            return Err(Error::BadParameters(format!(
                "circulant order must be odd and at least 3, got {n}"
            )));
        }
        let mut set: Vec<u32> = Vec::new();
        for d in differences {
            let f = fold(n, d);
            if f == 0 {
                return Err(Error::BadParameters(format!(
                    "difference {d} is 0 mod {n}"
                )));
            }
            if !set.contains(&f) {
                set.push(f);
            }
        }
        set.sort_unstable();
        if set.is_empty() {
            return Err(Error::BadParameters("empty connection set".into()));
        }
        Ok(Circulant { n, set })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn set(&self) -> &[u32] {
        &self.set
    }

    pub fn is_connected(&self) -> bool {
        let mut g = self.n as u64;
        for &d in &self.set {
            g = gcd(g, d as u64);
        }
        g == 1
    }
}

/// A directed Hamiltonian cycle of `Z_n`, stored as the visiting order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamCycle {
    pub n: u32,
    pub order: Vec<u32>,
}

impl HamCycle {
    /// Checks that the order visits every residue exactly once and that each
    /// step (including the wrap-around) uses a difference from `allowed`.
    pub fn validate(&self, allowed: &Circulant) -> Result<()> {
        let n = self.n;
        if allowed.n() != n {
            return Err(Error::BadParameters("order mismatch".into()));
        }
        if self.order.len() != n as usize {
            return Err(Error::BadParameters(format!(
                "cycle visits {} of {n} residues",
                self.order.len()
            )));
        }
        let mut seen = vec![false; n as usize];
        for &v in &self.order {
            if v >= n || seen[v as usize] {
                return Err(Error::BadParameters(format!("residue {v} invalid or repeated")));
            }
            seen[v as usize] = true;
        }
        for i in 0..self.order.len() {
            let a = self.order[i];
            let b = self.order[(i + 1) % self.order.len()];
            let step = fold(n, (b + n - a) % n);
            if !allowed.set().contains(&step) {
                return Err(Error::BadParameters(format!(
                    "step {a}->{b} uses difference {step} outside the connection set"
                )));
            }
        }
        Ok(())
    }

    /// Rotates the order so it starts at residue 0.
    fn rooted(mut self) -> Self {
        if let Some(pos) = self.order.iter().position(|&v| v == 0) {
            self.order.rotate_left(pos);
        }
        self
    }
}

/// Default node budget for the fallback search; `HWP_BUDGET` overrides it.
pub(crate) fn default_budget() -> u64 {
    std::env::var("HWP_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(10_000_000)
}

/// Decomposes a connected `⟨S⟩_n` with `|S| ∈ {1, 2}` into `|S|` Hamiltonian
/// cycles partitioning its edges.
pub fn ham_decompose(c: &Circulant) -> Result<Vec<HamCycle>> {
    if !c.is_connected() {
        return Err(Error::NotConnected {
            n: c.n(),
            set: c.set().to_vec(),
        });
    }
    let n = c.n();
    match *c.set() {
        [d] => Ok(vec![stepping(n, d)]),
        [a, b] => decompose_pair(n, a, b),
        _ => Err(Error::Unsupported(format!(
            "hamiltonian decomposition implemented for degree <= 4, got connection set {:?}",
            c.set()
        ))),
    }
}

fn stepping(n: u32, d: u32) -> HamCycle {
    let order = (0..n).map(|k| (k as u64 * d as u64 % n as u64) as u32).collect();
    HamCycle { n, order }
}

fn decompose_pair(n: u32, a: u32, b: u32) -> Result<Vec<HamCycle>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32, u32), Vec<Vec<u32>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(orders) = cache.lock().unwrap().get(&(n, a, b)) {
        return Ok(orders
            .iter()
            .map(|o| HamCycle { n, order: o.clone() })
            .collect());
    }

    let mut result: Option<Vec<HamCycle>> = None;

    // Unit multiples that bring the pair to a friendlier form. Multiplying
    // every vertex by a unit is a graph automorphism onto the circulant with
    // the scaled connection set, so a decomposition there maps back.
    let mut transforms: Vec<u32> = vec![1];
    for x in [a, b, b - a, a + b] {
        if let Some(u) = mod_inv(x, n) {
            if !transforms.contains(&u) {
                transforms.push(u);
            }
        }
    }
    'outer: for &u in &transforms {
        let a2 = fold(n, (u as u64 * a as u64 % n as u64) as u32);
        let b2 = fold(n, (u as u64 * b as u64 % n as u64) as u32);
        let (a2, b2) = (a2.min(b2), a2.max(b2));
        if let Some(pair) = construct_pair(n, a2, b2) {
            let w = mod_inv(u, n).expect("transform is a unit");
            let mapped = pair
                .into_iter()
                .map(|h| {
                    let order = h
                        .order
                        .iter()
                        .map(|&v| (v as u64 * w as u64 % n as u64) as u32)
                        .collect();
                    HamCycle { n, order }.rooted()
                })
                .collect();
            result = Some(mapped);
            break 'outer;
        }
    }

    let decomposition = match result {
        Some(d) => d,
        None => dfs_decompose(n, a, b)?,
    };

    let allowed = Circulant::new(n, [a, b])?;
    for h in &decomposition {
        h.validate(&allowed).map_err(|e| Error::InternalBug {
            context: format!("ham_decompose n={n} S={{{a},{b}}}"),
            reason: e.to_string(),
        })?;
    }
    check_partition(n, a, b, &decomposition)?;

    cache.lock().unwrap().insert(
        (n, a, b),
        decomposition.iter().map(|h| h.order.clone()).collect(),
    );
    Ok(decomposition)
}

/// Confirms the two cycles use every edge of `⟨{a,b}⟩_n` exactly once.
fn check_partition(n: u32, a: u32, b: u32, cycles: &[HamCycle]) -> Result<()> {
    let mut used = std::collections::HashSet::new();
    for h in cycles {
        for i in 0..h.order.len() {
            let u = h.order[i];
            let v = h.order[(i + 1) % h.order.len()];
            let e = (u.min(v), u.max(v));
            if !used.insert(e) {
                return Err(Error::InternalBug {
                    context: format!("ham_decompose n={n} S={{{a},{b}}}"),
                    reason: format!("edge {e:?} used twice"),
                });
            }
        }
    }
    if used.len() != 2 * n as usize {
        return Err(Error::InternalBug {
            context: format!("ham_decompose n={n} S={{{a},{b}}}"),
            reason: format!("covered {} of {} edges", used.len(), 2 * n),
        });
    }
    Ok(())
}

/// Direct constructions for a folded pair `a < b`: two stepping cycles when
/// both are units, else the coil search with either element sweeping.
fn construct_pair(n: u32, a: u32, b: u32) -> Option<Vec<HamCycle>> {
    let a_unit = gcd(a as u64, n as u64) == 1;
    let b_unit = gcd(b as u64, n as u64) == 1;
    if a_unit && b_unit {
        return Some(vec![stepping(n, a), stepping(n, b)]);
    }
    for (sweep, jump) in [(a, b), (b, a)] {
        if let Some(pair) = coil(n, sweep, jump) {
            return Some(pair);
        }
    }
    None
}

/// Coil construction. Let `g = gcd(sweep, n) > 1` and `q = n/g`. The cosets
/// of `⟨sweep⟩` partition `Z_n` into `g` stepping cycles of length `q`; a
/// Hamiltonian cycle traverses each coset in one run of `q-1` sweep-steps
/// (upward or downward) and moves between consecutive cosets with a jump
/// edge, which requires `jump ≡ ±1 (mod g)`. Closure forces the number `u`
/// of upward runs to satisfy `2u ≡ g + σ·jump·(sweep/g)⁻¹ (mod q)` for the
/// jump sign `σ`. The remaining freedom — which cosets run upward — only
/// affects whether the complement is a single cycle, so placements are tried
/// in order until it is.
fn coil(n: u32, sweep: u32, jump: u32) -> Option<Vec<HamCycle>> {
    let g = gcd(sweep as u64, n as u64) as u32;
    if g <= 1 {
        return None;
    }
    let e = jump % g;
    if e != 1 && e != g - 1 {
        return None;
    }
    let q = n / g;
    let s_red = sweep / g;
    let inv_s = mod_inv(s_red % q, q)?;
    let inv2 = mod_inv(2, q).expect("q odd");

    for sigma in [1i64, -1i64] {
        let rhs = (g as i64 + sigma * jump as i64 % q as i64 * inv_s as i64)
            .rem_euclid(q as i64) as u32;
        let u0 = (rhs as u64 * inv2 as u64 % q as u64) as u32;
        let mut u = u0;
        while u <= g {
            if let Some(pair) = coil_placements(n, sweep, jump, g, q, sigma, u) {
                return Some(pair);
            }
            u += q;
        }
    }
    None
}

const PLACEMENT_TRIES: usize = 2048;

/// Tries assignments of which of the `g` runs go upward (`u` of them),
/// in lexicographic order of the up-set, bounded by `PLACEMENT_TRIES`.
fn coil_placements(
    n: u32,
    sweep: u32,
    jump: u32,
    g: u32,
    q: u32,
    sigma: i64,
    u: u32,
) -> Option<Vec<HamCycle>> {
    let mut up: Vec<bool> = (0..g).map(|i| i < u).collect();
    let mut tries = 0;
    loop {
        if let Some(pair) = coil_trace(n, sweep, jump, g, q, sigma, &up) {
            return Some(pair);
        }
        tries += 1;
        if tries >= PLACEMENT_TRIES || !next_arrangement(&mut up) {
            return None;
        }
    }
}

/// Advances a boolean arrangement to the lexicographically next one with the
/// same number of `true`s; returns false after the last.
fn next_arrangement(v: &mut [bool]) -> bool {
    // Standard next-permutation on booleans (false < true).
    let len = v.len();
    if len < 2 {
        return false;
    }
    let mut i = len - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = len - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn coil_trace(
    n: u32,
    sweep: u32,
    jump: u32,
    g: u32,
    q: u32,
    sigma: i64,
    up: &[bool],
) -> Option<Vec<HamCycle>> {
    let n64 = n as i64;
    let mut order = Vec::with_capacity(n as usize);
    let mut seen = vec![false; n as usize];
    let mut v: i64 = 0;
    for &run_up in up.iter().take(g as usize) {
        let step = if run_up { sweep as i64 } else { -(sweep as i64) };
        for _ in 0..q {
            if seen[v as usize] {
                return None;
            }
            seen[v as usize] = true;
            order.push(v as u32);
            v = (v + step).rem_euclid(n64);
        }
        // Undo the last sweep step and jump to the next coset instead.
        v = (v - step + sigma * jump as i64).rem_euclid(n64);
    }
    if v != 0 || order.len() != n as usize {
        return None;
    }
    let h1 = HamCycle { n, order };
    let h2 = complement_cycle(n, sweep, jump, &h1)?;
    Some(vec![h1, h2])
}

/// Extracts the complement of `h1` in `⟨{sweep, jump}⟩_n` as a Hamiltonian
/// cycle, or reports that it is disconnected.
fn complement_cycle(n: u32, a: u32, b: u32, h1: &HamCycle) -> Option<HamCycle> {
    let mut used = std::collections::HashSet::new();
    for i in 0..h1.order.len() {
        let u = h1.order[i];
        let v = h1.order[(i + 1) % h1.order.len()];
        used.insert((u.min(v), u.max(v)));
    }
    let offsets = [a, n - a, b, n - b];
    let mut order = Vec::with_capacity(n as usize);
    let mut prev = u32::MAX;
    let mut at = 0u32;
    loop {
        order.push(at);
        let mut next = None;
        for &off in &offsets {
            let w = (at + off) % n;
            if w == prev || w == at {
                continue;
            }
            if !used.contains(&(at.min(w), at.max(w))) {
                next = Some(w);
                break;
            }
        }
        let w = next?;
        if w == 0 {
            break;
        }
        prev = at;
        at = w;
        if order.len() > n as usize {
            return None;
        }
    }
    if order.len() != n as usize {
        return None;
    }
    Some(HamCycle { n, order })
}

/// Fallback: budgeted depth-first search for a Hamiltonian cycle whose
/// complement is a single cycle.
fn dfs_decompose(n: u32, a: u32, b: u32) -> Result<Vec<HamCycle>> {
    let offsets = [a, b, n - b, n - a];
    let budget = default_budget();
    let mut nodes: u64 = 0;
    let mut path = Vec::with_capacity(n as usize);
    let mut visited = vec![false; n as usize];
    path.push(0u32);
    visited[0] = true;
    // Iterative DFS: the stack holds the index of the next offset to try at
    // each depth.
    let mut choice = vec![0usize; n as usize + 1];
    loop {
        let depth = path.len();
        if depth == n as usize {
            let last = *path.last().unwrap();
            let closes = offsets.iter().any(|&off| (last + off) % n == 0);
            if closes {
                let h1 = HamCycle { n, order: path.clone() };
                if let Some(h2) = complement_cycle(n, a, b, &h1) {
                    return Ok(vec![h1, h2]);
                }
            }
            // Treat a full path as exhausted and backtrack.
            let v = path.pop().unwrap();
            visited[v as usize] = false;
            continue;
        }
        let at = *path.last().unwrap();
        let mut advanced = false;
        while choice[depth] < offsets.len() {
            let w = (at + offsets[choice[depth]]) % n;
            choice[depth] += 1;
            if !visited[w as usize] {
                nodes += 1;
                if nodes > budget {
                    return Err(Error::SearchBudgetExceeded {
                        what: format!("hamiltonian decomposition of <{{{a},{b}}}>_{n}"),
                        budget,
                    });
                }
                visited[w as usize] = true;
                path.push(w);
                choice[depth + 1] = 0;
                advanced = true;
                break;
            }
        }
        if !advanced {
            let v = path.pop().unwrap();
            visited[v as usize] = false;
            if path.is_empty() {
                return Err(Error::InternalBug {
                    context: format!("dfs ham_decompose n={n} S={{{a},{b}}}"),
                    reason: "search space exhausted on a connected 4-regular circulant".into(),
                });
            }
        }
    }
}
