//! Embedding circulant Hamiltonian cycles into `C_m[n]` as uniform
//! `C_n`-factors, and the difference-interval factor families built on them.
//!
//! The central device is the level projection: a Hamiltonian cycle of `Z_n`
//! is lifted to an n-cycle of `C_m[n]` by threading its vertices through the
//! `m` levels — first one full climb `i, i+1, …, i+m-1`, then a zig-zag
//! between two adjacent levels. Taking all `m` starting levels of both the
//! climbing and descending variants turns each Hamiltonian cycle into two
//! spanning `C_n`-factors whose edges use exactly the differences `±S` of the
//! underlying circulant.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::circulant::{self, ham_decompose, Circulant};
use crate::model::{cp_vertex, CycleSeq, TwoFactor};
use crate::{Error, Result};

pub use crate::circulant::HamCycle;

/// Projection orientation: `Forward` climbs levels `i, i+1, …`; `Reverse`
/// descends `i, i-1, …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Reverse,
}

/// Lifts a Hamiltonian cycle of `Z_n` to an n-cycle of `C_m[n]` starting at
/// level `i`.
///
/// Position `p` of the cycle carries residue `order[p]` at level
/// `i ± p` for `p < m`, after which the level alternates between `i` and
/// `i ± 1`. Oddness of `n - m` makes the wrap-around land on adjacent
/// levels, so every consecutive pair of the result is an edge of `C_m[n]`.
pub fn i_projection(h: &HamCycle, m: u32, i: u32, dir: Direction) -> Result<CycleSeq> {
    let n = h.n;
    if m < 3 || m % 2 == 0 || n % 2 == 0 {
        return Err(Error::BadParameters(format!(
            "projection needs odd m >= 3 and odd n, got m={m} n={n}"
        )));
    }
    if n < m {
        return Err(Error::BadParameters(format!(
            "projection needs n >= m, got m={m} n={n}"
        )));
    }
    if i >= m {
        return Err(Error::BadParameters(format!("start level {i} out of range for m={m}")));
    }
    if h.order.len() != n as usize {
        return Err(Error::BadParameters("incomplete hamiltonian cycle".into()));
    }
    let mut vertices = Vec::with_capacity(n as usize);
    for (p, &r) in h.order.iter().enumerate() {
        let p = p as u32;
        let offset = if p < m { p } else { (p - m) % 2 };
        let level = match dir {
            Direction::Forward => (i + offset) % m,
            Direction::Reverse => (i + m - offset % m) % m,
        };
        vertices.push(cp_vertex(n, level, r));
    }
    Ok(CycleSeq(vertices))
}

/// Turns a Hamiltonian decomposition of `⟨S⟩_n` into `2·|cycles|`
/// `C_n`-factors of `C_m[n]`, which together use the differences `±S`
/// exactly.
pub fn factors_from_ham(cycles: &[HamCycle], m: u32) -> Result<Vec<TwoFactor>> {
    let mut out = Vec::with_capacity(cycles.len() * 2);
    for h in cycles {
        for dir in [Direction::Forward, Direction::Reverse] {
            let mut members = Vec::with_capacity(m as usize);
            for i in 0..m {
                members.push(i_projection(h, m, i, dir)?.0);
            }
            out.push(TwoFactor::new(h.n, members));
        }
    }
    Ok(out)
}

/// Shape of a difference interval: all of `[w, (n-1)/2]`, or the same with
/// `w+1` skipped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalForm {
    Full,
    SkipSecond,
}

/// `C_n`-factors of `C_m[n]` exactly covering `±S` where `S` is the interval
/// `[w, (n-1)/2]` (`Full`) or `{w} ∪ [w+2, (n-1)/2]` (`SkipSecond`).
///
/// Elements are consumed left to right in pairs whose difference is 1 or 2 —
/// a unit either way — so each pair's circulant is connected and contributes
/// four factors via projection; an odd leftover becomes a single stepping
/// circulant, which needs the leftover itself to be a unit. The only
/// parameter combination where that fails is `SkipSecond` with `n = 2w+3`
/// and `3 | n`, `3 | w`; it is rejected.
pub fn interval_factors(m: u32, n: u32, w: u32, form: IntervalForm) -> Result<Vec<TwoFactor>> {
    if m < 3 || m % 2 == 0 || n % 2 == 0 || n < m {
        return Err(Error::BadParameters(format!(
            "interval factors need odd 3 <= m <= n, got m={m} n={n}"
        )));
    }
    let half = (n - 1) / 2;
    if w == 0 || w > half + 1 {
        return Err(Error::BadParameters(format!(
            "interval start {w} out of range for n={n}"
        )));
    }
    let mut elems: Vec<u32> = Vec::new();
    match form {
        IntervalForm::Full => elems.extend(w..=half),
        IntervalForm::SkipSecond => {
            if w > half {
                return Err(Error::BadParameters(format!(
                    "interval start {w} out of range for n={n}"
                )));
            }
            elems.push(w);
            if w + 2 <= half {
                elems.extend(w + 2..=half);
            }
        }
    }
    let mut out = Vec::new();
    let mut it = elems.into_iter().peekable();
    while let Some(d1) = it.next() {
        if let Some(&d2) = it.peek() {
            it.next();
            debug_assert!(d2 - d1 <= 2);
            let c = Circulant::new(n, [d1, d2])?;
            out.extend(factors_from_ham(&ham_decompose(&c)?, m)?);
        } else {
            // Lone difference: its stepping cycle exists only for units.
            if circulant::gcd(d1 as u64, n as u64) != 1 {
                return Err(Error::UnsupportedInterval { n, w });
            }
            let c = Circulant::new(n, [d1])?;
            out.extend(factors_from_ham(&ham_decompose(&c)?, m)?);
        }
    }
    Ok(out)
}

/// Five `C_n`-factors of `C_m[n]` exactly covering the differences
/// `{0, ±b, ±2b}`, for any unit `b`.
///
/// The base case `b = 1` is solved once; the residue automorphism
/// `(x, r) → (x, b·r)` then carries it to general `b`. For `m = n` the five
/// diagonal factors with slopes `0, ±1, ±2` each cover a single difference
/// class. For `m < n`, three factors covering `{0, +2, -2}` come from the
/// three-factor kernel (scaled from its `{0, +1, -1}` form), and the
/// remaining `±1` pair comes from projecting the unit stepping cycle.
pub fn five_classes(m: u32, n: u32, b: u32) -> Result<Vec<TwoFactor>> {
    if m < 3 || m % 2 == 0 || n % 2 == 0 || n < m {
        return Err(Error::BadParameters(format!(
            "five classes need odd 3 <= m <= n, got m={m} n={n}"
        )));
    }
    if n < 5 {
        return Err(Error::BadParameters(
            "five classes need n >= 5 so the differences 0, ±b, ±2b are distinct".into(),
        ));
    }
    let b = b % n;
    if circulant::gcd(b as u64, n as u64) != 1 {
        return Err(Error::NotAUnit { value: b, n });
    }
    let base = five_base(m, n)?;
    if b == 1 {
        return Ok(base);
    }
    Ok(relabel_residues(&base, n, b))
}

fn five_base(m: u32, n: u32) -> Result<Vec<TwoFactor>> {
    if m == n {
        return Ok([0, 1, 2, n - 2, n - 1]
            .into_iter()
            .map(|d| diagonal_factor(n, d))
            .collect());
    }
    let mut out: Vec<TwoFactor> = three_factor_zero_one(m, n)?
        .into_iter()
        .map(|f| relabel_residues_one(&f, n, 2))
        .collect();
    let c = Circulant::new(n, [1])?;
    out.extend(factors_from_ham(&ham_decompose(&c)?, m)?);
    Ok(out)
}

/// For `m = n`, the diagonal factor of slope `d` covers exactly the
/// difference class `d`: its closing edge has difference `-(n-1)d ≡ d`.
fn diagonal_factor(n: u32, d: u32) -> TwoFactor {
    let mut members = Vec::with_capacity(n as usize);
    for x in 0..n {
        let cycle = (0..n)
            .map(|lvl| cp_vertex(n, lvl, (x + lvl * d) % n))
            .collect();
        members.push(cycle);
    }
    TwoFactor::new(n, members)
}

/// Applies the residue automorphism `(x, r) → (x, u·r)` to every factor.
pub fn relabel_residues(factors: &[TwoFactor], n: u32, u: u32) -> Vec<TwoFactor> {
    factors
        .iter()
        .map(|f| relabel_residues_one(f, n, u))
        .collect()
}

fn relabel_residues_one(f: &TwoFactor, n: u32, u: u32) -> TwoFactor {
    let members = f
        .cycles
        .iter()
        .map(|c| {
            c.0.iter()
                .map(|&v| {
                    let level = v / n;
                    let r = v % n;
                    cp_vertex(n, level, (r as u64 * u as u64 % n as u64) as u32)
                })
                .collect()
        })
        .collect();
    TwoFactor::new(f.cycle_length, members)
}

/// Three `C_n`-factors of `C_m[n]` exactly covering `{0, +1, -1}`, the
/// kernel of the five-class construction for `m < n`.
pub fn three_factor_zero_one(m: u32, n: u32) -> Result<[TwoFactor; 3]> {
    if m >= n || m < 3 || m % 2 == 0 || n % 2 == 0 {
        return Err(Error::BadParameters(format!(
            "three-factor kernel needs odd 3 <= m < n, got m={m} n={n}"
        )));
    }
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), [TwoFactor; 3]>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(m, n)) {
        return Ok(hit.clone());
    }
    let found = search_three_factor(m, n)?;
    cache.lock().unwrap().insert((m, n), found.clone());
    Ok(found)
}

fn search_three_factor(m: u32, n: u32) -> Result<[TwoFactor; 3]> {
    let _ = (m, n);
    Err(Error::Unsupported(
        "three-factor kernel search not yet wired".into(),
    ))
}
