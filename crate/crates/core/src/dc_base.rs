//! Decremental connectivity by interleaved searches.
//!
//! A deletion that the face monitor reports as critical starts two searches,
//! one from each endpoint, advanced alternately one discovered vertex at a
//! time. The first search to run out of vertices has found the smaller side,
//! which is then relabeled. Every vertex is therefore relabeled at most
//! `log2 n` times.

use crate::bridge::DualComplement;
use crate::dc::{CcId, Counters, DcBuilder, DecrementalConnectivity, DeleteOutcome, Layer};
use crate::error::DcError;
use crate::planar::PlanarGraph;
use crate::{EdgeId, VertexId};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DcBaseOptions {
    /// Deliberately broken variant used to check that the test harness
    /// catches wrong answers: when both sides have equal size, nothing is
    /// relabeled.
    #[doc(hidden)]
    pub skip_relabel_on_tie: bool,
}

pub struct DcBase {
    g: PlanarGraph,
    monitor: DualComplement,
    explicit: Vec<bool>,
    label: Vec<u64>,
    next_label: u64,
    stamp: Vec<u64>,
    epoch: u64,
    relabel_count: Vec<u32>,
    last_relabel: usize,
    counters: Counters,
    opts: DcBaseOptions,
}

struct Search {
    stack: Vec<(VertexId, usize, usize)>,
    found: Vec<VertexId>,
    done: bool,
}

impl Search {
    fn new(root: VertexId, g: &PlanarGraph) -> Self {
        Self {
            stack: vec![(root, g.first_out(root).unwrap_or(0), g.degree(root))],
            found: vec![root],
            done: false,
        }
    }
}

impl DcBase {
    pub fn new(g: PlanarGraph, explicit: Vec<bool>) -> Result<Self, DcError> {
        Self::with_options(g, explicit, DcBaseOptions::default())
    }

    pub fn with_options(
        g: PlanarGraph,
        explicit: Vec<bool>,
        opts: DcBaseOptions,
    ) -> Result<Self, DcError> {
        let n = g.vertex_count();
        assert_eq!(explicit.len(), n, "explicit set must cover every vertex");
        let monitor = DualComplement::attach(&g)?;
        let (comp, _) = g.components();
        Ok(Self {
            label: comp.iter().map(|&c| c as u64).collect(),
            next_label: n as u64,
            stamp: vec![0; n],
            epoch: 0,
            relabel_count: vec![0; n],
            last_relabel: 0,
            counters: Counters::default(),
            monitor,
            explicit,
            g,
            opts,
        })
    }

    pub fn graph(&self) -> &PlanarGraph {
        &self.g
    }

    /// Size of the side relabeled by the most recent critical deletion.
    pub fn last_relabel_size(&self) -> usize {
        self.last_relabel
    }

    /// How often each vertex has been relabeled.
    pub fn relabel_counts(&self) -> &[u32] {
        &self.relabel_count
    }

    /// Advances `s` until it discovers one new vertex. Returns false once the
    /// search is exhausted.
    fn advance(&mut self, s: &mut Search, mark: u64) -> bool {
        while let Some(top) = s.stack.last_mut() {
            let (_, h, left) = *top;
            if left == 0 {
                s.stack.pop();
                continue;
            }
            top.1 = self.g.rot_next(h);
            top.2 -= 1;
            self.counters.dfs_steps += 1;
            let w = self.g.head(h);
            if self.stamp[w] != mark {
                self.stamp[w] = mark;
                s.found.push(w);
                s.stack.push((w, self.g.first_out(w).unwrap_or(0), self.g.degree(w)));
                return true;
            }
        }
        s.done = true;
        false
    }

    fn split(&mut self, u: VertexId, v: VertexId) -> Vec<(VertexId, CcId)> {
        self.epoch += 1;
        let (ma, mb) = (2 * self.epoch, 2 * self.epoch + 1);
        self.stamp[u] = ma;
        self.stamp[v] = mb;
        let mut a = Search::new(u, &self.g);
        let mut b = Search::new(v, &self.g);
        let small = loop {
            if !self.advance(&mut a, ma) {
                break a;
            }
            if !self.advance(&mut b, mb) {
                break b;
            }
        };
        if self.opts.skip_relabel_on_tie {
            let (other_root, mark) = if small.found[0] == u { (v, mb) } else { (u, ma) };
            let mut other = Search::new(other_root, &self.g);
            self.epoch += 1;
            let m2 = 2 * self.epoch;
            let _ = mark;
            self.stamp[other_root] = m2;
            while self.advance(&mut other, m2) {}
            if other.found.len() == small.found.len() {
                self.last_relabel = 0;
                return Vec::new();
            }
        }
        let fresh = self.next_label;
        self.next_label += 1;
        let mut changes = Vec::new();
        for &x in &small.found {
            self.label[x] = fresh;
            self.relabel_count[x] += 1;
            if self.explicit[x] {
                changes.push((x, CcId(fresh)));
            }
        }
        self.counters.relabels += small.found.len() as u64;
        self.last_relabel = small.found.len();
        changes
    }
}

impl DecrementalConnectivity for DcBase {
    fn vertex_count(&self) -> usize {
        self.g.vertex_count()
    }

    fn delete(&mut self, e: EdgeId) -> Result<DeleteOutcome, DcError> {
        if e >= self.g.edge_count() {
            return Err(DcError::EdgeOutOfRange(e));
        }
        if !self.g.is_alive(e) {
            return Err(DcError::DeadEdge(e));
        }
        if !self.g.is_deletable(e) {
            return Err(DcError::Undeletable(e));
        }
        let critical = self.monitor.on_delete(e)?;
        self.g.delete_edge(e);
        if !critical {
            return Ok(DeleteOutcome::default());
        }
        let (a, b) = self.g.endpoints(e);
        let changes = self.split(a.min(b), a.max(b));
        Ok(DeleteOutcome {
            critical: true,
            changes,
        })
    }

    fn cc_id_traced(&self, v: VertexId) -> (CcId, u32) {
        (CcId(self.label[v]), 0)
    }

    fn id_bound(&self) -> u64 {
        2 * self.g.vertex_count() as u64 + 1
    }

    fn counters(&self) -> Counters {
        let mut c = self.counters;
        c.dsu_ops = self.monitor.dsu_ops();
        c
    }

    fn euler_component_count(&self) -> Option<usize> {
        Some(self.monitor.component_count())
    }

    fn layers(&self) -> Vec<Layer> {
        vec![Layer {
            kind: "dc_base",
            r: None,
            max_vertices: self.g.vertex_count(),
            instances: 1,
        }]
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DcBaseBuilder {
    pub opts: DcBaseOptions,
}

impl DcBuilder for DcBaseBuilder {
    fn build(
        &self,
        g: PlanarGraph,
        explicit: Vec<bool>,
    ) -> Result<Box<dyn DecrementalConnectivity>, DcError> {
        Ok(Box::new(DcBase::with_options(g, explicit, self.opts)?))
    }
}
