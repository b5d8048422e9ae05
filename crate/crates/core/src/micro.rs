//! Connectivity for tiny graphs (at most 64 vertices) driven by a shared
//! memo table of precomputed transitions.
//!
//! A graph on `t` vertices is encoded as a bit mask over the `t(t-1)/2`
//! vertex pairs in lexicographic order. For a mask the table stores the
//! component representative of every vertex, and for a mask and a deleted
//! pair it stores the resulting mask, whether the deletion split a
//! component, and the side that gets a fresh id.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use dashmap::DashMap;

use crate::dc::{CcId, Counters, DcBuilder, DecrementalConnectivity, DeleteOutcome, Layer};
use crate::error::DcError;
use crate::planar::PlanarGraph;
use crate::{EdgeId, VertexId};

pub const MAX_T: usize = 64;

pub fn pair_count(t: usize) -> usize {
    t * t.saturating_sub(1) / 2
}

/// Index of the pair `{i, j}` (`i < j`) among all pairs of `0..t`.
pub fn pair_index(t: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < t);
    i * (2 * t - i - 1) / 2 + (j - i - 1)
}

pub fn pair_of(t: usize, mut idx: usize) -> (usize, usize) {
    for i in 0..t {
        let row = t - i - 1;
        if idx < row {
            return (i, i + 1 + idx);
        }
        idx -= row;
    }
    panic!("pair index out of range for t = {t}");
}

pub fn mask_words(t: usize) -> usize {
    pair_count(t).div_ceil(64).max(1)
}

fn bit(mask: &[u64], i: usize) -> bool {
    mask[i / 64] >> (i % 64) & 1 == 1
}

fn adjacency(t: usize, mask: &[u64]) -> Vec<u64> {
    let mut adj = vec![0u64; t];
    let mut idx = 0;
    for i in 0..t {
        for j in i + 1..t {
            if bit(mask, idx) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            idx += 1;
        }
    }
    adj
}

fn reach(adj: &[u64], s: usize) -> u64 {
    let mut seen = 1u64 << s;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & !seen;
        seen |= new;
        frontier |= new;
    }
    seen
}

/// Component representative (smallest member) of every vertex.
pub fn representatives(t: usize, mask: &[u64]) -> Vec<u8> {
    let adj = adjacency(t, mask);
    let mut rep = vec![u8::MAX; t];
    for s in 0..t {
        if rep[s] != u8::MAX {
            continue;
        }
        let mut c = reach(&adj, s);
        while c != 0 {
            rep[c.trailing_zeros() as usize] = s as u8;
            c &= c - 1;
        }
    }
    rep
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub new_mask: Box<[u64]>,
    pub critical: bool,
    /// Vertices of the smaller side after a split (the side of the lower
    /// endpoint on ties); empty when not critical.
    pub smaller_side: u64,
}

/// Uncached transition for deleting pair `idx`, which must be present.
pub fn transition(t: usize, mask: &[u64], idx: usize) -> Transition {
    assert!(bit(mask, idx), "pair {idx} is not in the mask");
    let mut new_mask: Box<[u64]> = mask.into();
    new_mask[idx / 64] &= !(1u64 << (idx % 64));
    let (i, j) = pair_of(t, idx);
    let adj = adjacency(t, &new_mask);
    let a = reach(&adj, i);
    if a >> j & 1 == 1 {
        return Transition {
            new_mask,
            critical: false,
            smaller_side: 0,
        };
    }
    let b = reach(&adj, j);
    let smaller_side = if b.count_ones() < a.count_ones() { b } else { a };
    Transition {
        new_mask,
        critical: true,
        smaller_side,
    }
}

type MaskKey = (u8, Box<[u64]>);

/// Concurrent memo of representative arrays and transitions. Entries are
/// only added while the table holds fewer than `capacity` entries.
pub struct MicroTable {
    reps: DashMap<MaskKey, Arc<[u8]>>,
    trans: DashMap<(MaskKey, u16), Transition>,
    capacity: usize,
    len: AtomicUsize,
}

impl std::fmt::Debug for MicroTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MicroTable")
            .field("len", &self.len())
            .field("capacity", &self.capacity)
            .finish()
    }
}

impl Default for MicroTable {
    fn default() -> Self {
        Self::with_capacity(1 << 20)
    }
}

impl MicroTable {
    pub fn with_capacity(capacity: usize) -> Self {
        Self {
            reps: DashMap::new(),
            trans: DashMap::new(),
            capacity,
            len: AtomicUsize::new(0),
        }
    }

    pub fn len(&self) -> usize {
        self.len.load(Ordering::Relaxed)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn reserve(&self) -> bool {
        self.len
            .fetch_update(Ordering::Relaxed, Ordering::Relaxed, |l| {
                (l < self.capacity).then_some(l + 1)
            })
            .is_ok()
    }

    /// Returns the representatives and whether they came from the table.
    pub fn reps(&self, t: usize, mask: &[u64]) -> (Arc<[u8]>, bool) {
        let key = (t as u8, Box::<[u64]>::from(mask));
        if let Some(r) = self.reps.get(&key) {
            return (r.clone(), true);
        }
        let r: Arc<[u8]> = representatives(t, mask).into();
        if self.reserve() {
            self.reps.insert(key, r.clone());
        }
        (r, false)
    }

    pub fn transition(&self, t: usize, mask: &[u64], idx: usize) -> (Transition, bool) {
        let key = ((t as u8, Box::<[u64]>::from(mask)), idx as u16);
        if let Some(tr) = self.trans.get(&key) {
            return (tr.clone(), true);
        }
        let tr = transition(t, mask, idx);
        if self.reserve() {
            self.trans.insert(key, tr.clone());
        }
        (tr, false)
    }
}

/// Fills the table with every graph on up to `t_eager` vertices and all of
/// their single-pair deletions.
pub fn table_warmup(table: &MicroTable, t_eager: usize) {
    assert!(t_eager <= 8, "eager warmup is exponential in t^2");
    for t in 1..=t_eager {
        let p = pair_count(t);
        let masks: Vec<u64> = (0..1u64 << p).collect();
        crate::exec::map(masks, |m| {
            let mask = [m];
            table.reps(t, &mask);
            let mut rest = m;
            while rest != 0 {
                let idx = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                table.transition(t, &mask, idx);
            }
        });
    }
}

pub fn format_mask(mask: &[u64]) -> String {
    let mut s = String::new();
    for (i, w) in mask.iter().enumerate().rev() {
        if s.is_empty() {
            if *w != 0 || i == 0 {
                write!(s, "{w:x}").unwrap();
            }
        } else {
            write!(s, "{w:016x}").unwrap();
        }
    }
    s
}

pub fn parse_mask(s: &str, words: usize) -> Result<Box<[u64]>, String> {
    let s = s.trim_start_matches("0x");
    if s.is_empty() || s.len() > 16 * words {
        return Err(format!("bad mask `{s}`"));
    }
    let mut out = vec![0u64; words];
    let bytes = s.as_bytes();
    for (k, chunk) in bytes.rchunks(16).enumerate() {
        let txt = std::str::from_utf8(chunk).map_err(|e| e.to_string())?;
        out[k] = u64::from_str_radix(txt, 16).map_err(|e| format!("bad mask `{s}`: {e}"))?;
    }
    Ok(out.into())
}

/// One line of a transition test-vector file:
/// `t mask del_index -> new_mask critical smaller_side`.
pub fn format_vector(t: usize, mask: &[u64], idx: usize, tr: &Transition) -> String {
    format!(
        "{t} {} {idx} -> {} {} {:x}",
        format_mask(mask),
        format_mask(&tr.new_mask),
        tr.critical as u8,
        tr.smaller_side
    )
}

pub fn parse_vector(line: &str) -> Result<(usize, Box<[u64]>, usize, Transition), String> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != 7 || parts[3] != "->" {
        return Err(format!("malformed vector line `{line}`"));
    }
    let num = |s: &str| s.parse::<usize>().map_err(|e| format!("`{s}`: {e}"));
    let t = num(parts[0])?;
    if t == 0 || t > MAX_T {
        return Err(format!("t = {t} out of range"));
    }
    let w = mask_words(t);
    let mask = parse_mask(parts[1], w)?;
    let idx = num(parts[2])?;
    let new_mask = parse_mask(parts[4], w)?;
    let critical = match parts[5] {
        "0" => false,
        "1" => true,
        o => return Err(format!("bad flag `{o}`")),
    };
    let smaller_side = u64::from_str_radix(parts[6], 16).map_err(|e| e.to_string())?;
    Ok((
        t,
        mask,
        idx,
        Transition {
            new_mask,
            critical,
            smaller_side,
        },
    ))
}

pub struct MicroDc {
    t: usize,
    table: Arc<MicroTable>,
    mask: Box<[u64]>,
    pair: Vec<u16>,
    alive: Vec<bool>,
    deletable: Vec<bool>,
    explicit: u64,
    reps: Arc<[u8]>,
    labels: Vec<u64>,
    epoch: u64,
    m: usize,
    counters: Counters,
}

impl MicroDc {
    pub fn new(g: &PlanarGraph, explicit: &[bool], table: Arc<MicroTable>) -> Result<Self, DcError> {
        let t = g.vertex_count();
        if t > MAX_T {
            return Err(DcError::MicroCapacity(t));
        }
        let m = g.edge_count();
        let mut mask: Box<[u64]> = vec![0u64; mask_words(t)].into();
        let mut pair = Vec::with_capacity(m);
        for e in 0..m {
            let (a, b) = g.endpoints(e);
            if a == b {
                return Err(DcError::MicroNotSimple(a, b));
            }
            let idx = pair_index(t, a.min(b), a.max(b));
            pair.push(idx as u16);
            if g.is_alive(e) {
                if bit(&mask, idx) {
                    return Err(DcError::MicroNotSimple(a, b));
                }
                mask[idx / 64] |= 1 << (idx % 64);
            }
        }
        let mut counters = Counters::default();
        let (reps, hit) = table.reps(t, &mask);
        count(&mut counters, hit);
        let explicit = explicit
            .iter()
            .enumerate()
            .fold(0u64, |acc, (v, &x)| if x { acc | 1 << v } else { acc });
        Ok(Self {
            t,
            labels: (0..t as u64).collect(),
            alive: (0..m).map(|e| g.is_alive(e)).collect(),
            deletable: (0..m).map(|e| g.is_deletable(e)).collect(),
            table,
            mask,
            pair,
            explicit,
            reps,
            epoch: 0,
            m,
            counters,
        })
    }

    pub fn mask(&self) -> &[u64] {
        &self.mask
    }
}

fn count(c: &mut Counters, hit: bool) {
    if hit {
        c.micro_hits += 1;
    } else {
        c.micro_misses += 1;
    }
}

impl DecrementalConnectivity for MicroDc {
    fn vertex_count(&self) -> usize {
        self.t
    }

    fn delete(&mut self, e: EdgeId) -> Result<DeleteOutcome, DcError> {
        if e >= self.m {
            return Err(DcError::EdgeOutOfRange(e));
        }
        if !self.alive[e] {
            return Err(DcError::DeadEdge(e));
        }
        if !self.deletable[e] {
            return Err(DcError::Undeletable(e));
        }
        self.alive[e] = false;
        let idx = self.pair[e] as usize;
        let (tr, hit) = self.table.transition(self.t, &self.mask, idx);
        count(&mut self.counters, hit);
        self.mask = tr.new_mask;
        if !tr.critical {
            return Ok(DeleteOutcome::default());
        }
        let (i, _) = pair_of(self.t, idx);
        let old = self.labels[self.reps[i] as usize];
        let (reps, hit) = self.table.reps(self.t, &self.mask);
        count(&mut self.counters, hit);
        self.reps = reps;
        self.epoch += 1;
        let small_rep = self.reps[tr.smaller_side.trailing_zeros() as usize] as usize;
        let (a, b) = pair_of(self.t, idx);
        let big_end = if tr.smaller_side >> a & 1 == 1 { b } else { a };
        self.labels[self.reps[big_end] as usize] = old;
        let fresh = self.epoch * self.t as u64 + small_rep as u64;
        self.labels[small_rep] = fresh;
        self.counters.relabels += tr.smaller_side.count_ones() as u64;
        let mut changes = Vec::new();
        let mut s = tr.smaller_side & self.explicit;
        while s != 0 {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            changes.push((v, CcId(fresh)));
        }
        Ok(DeleteOutcome {
            critical: true,
            changes,
        })
    }

    fn cc_id_traced(&self, v: VertexId) -> (CcId, u32) {
        (CcId(self.labels[self.reps[v] as usize]), 0)
    }

    fn id_bound(&self) -> u64 {
        (self.m as u64 + 1) * self.t.max(1) as u64
    }

    fn counters(&self) -> Counters {
        self.counters
    }

    fn layers(&self) -> Vec<Layer> {
        vec![Layer {
            kind: "micro",
            r: None,
            max_vertices: self.t,
            instances: 1,
        }]
    }
}

#[derive(Debug, Clone)]
pub struct MicroBuilder {
    pub table: Arc<MicroTable>,
}

impl DcBuilder for MicroBuilder {
    fn build(
        &self,
        g: PlanarGraph,
        explicit: Vec<bool>,
    ) -> Result<Box<dyn DecrementalConnectivity>, DcError> {
        Ok(Box::new(MicroDc::new(&g, &explicit, self.table.clone())?))
    }
}
