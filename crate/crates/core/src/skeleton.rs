//! One level of the region decomposition.
//!
//! A level splits its graph into an r-division and runs an inner instance on
//! every region. The skeleton set `V_s` is the explicit set plus all boundary
//! vertices. For every region and every inner component class containing
//! skeleton members there is one auxiliary vertex joined to those members;
//! this star graph (the skeleton) has the same connectivity on `V_s` as the
//! whole graph. Skeleton components carry global ids, and a vertex outside
//! `V_s` either inherits the id of its class's auxiliary vertex or, if its
//! class has no members, gets an id composed from its region and inner id.

use std::collections::HashMap;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::bridge::DualComplement;
use crate::dc::{merge_layers, CcId, Counters, DcBuilder, DecrementalConnectivity, DeleteOutcome, Layer};
use crate::dc_base::DcBaseBuilder;
use crate::division::{self, Division};
use crate::error::DcError;
use crate::micro::{MicroBuilder, MicroTable, MAX_T};
use crate::planar::PlanarGraph;
use crate::{EdgeId, VertexId};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Slot {
    region: u32,
    aux: u32,
    pos: u32,
}

#[derive(Debug, Clone)]
struct Aux {
    region: u32,
    lid: u64,
    gid: u64,
    members: Vec<(u32, u8)>,
    alive: bool,
}

/// Explicit copy of the current skeleton graph. Members are nodes
/// `0..members.len()`, live auxiliary vertices follow.
#[derive(Debug, Clone)]
pub struct SkeletonSnapshot {
    pub members: Vec<VertexId>,
    pub aux_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SkeletonSnapshot {
    pub fn node_count(&self) -> usize {
        self.members.len() + self.aux_count
    }

    /// Component label per node.
    pub fn components(&self) -> Vec<usize> {
        let mut dsu = crate::union_find::Dsu::new(self.node_count().max(1));
        use crate::union_find::UnionFind;
        for &(a, b) in &self.edges {
            dsu.union(a, b);
        }
        (0..self.node_count()).map(|x| dsu.find(x)).collect()
    }
}

pub struct Level {
    n: usize,
    r: usize,
    div: Division,
    inner: Vec<Box<dyn DecrementalConnectivity>>,
    edge_loc: Vec<(u32, u32)>,
    alive: Vec<bool>,
    deletable: Vec<bool>,
    monitor: DualComplement,
    explicit: Vec<bool>,
    member_of: Vec<u32>,
    members: Vec<VertexId>,
    slots: Vec<SmallVec<[Slot; 3]>>,
    member_gid: Vec<u64>,
    aux: Vec<Aux>,
    aux_of: Vec<HashMap<u64, u32>>,
    home: Vec<(u32, u32)>,
    offsets: Vec<u64>,
    next_gid: u64,
    gid_end: u64,
    id_bound: u64,
    stamp: Vec<u64>,
    epoch: u64,
    counters: Counters,
}

enum Node {
    Member(usize),
    Aux(usize),
}

impl Level {
    pub fn new(
        g: PlanarGraph,
        explicit: Vec<bool>,
        r: usize,
        inner: &dyn DcBuilder,
    ) -> Result<Self, DcError> {
        let n = g.vertex_count();
        assert_eq!(explicit.len(), n, "explicit set must cover every vertex");
        let div = division::build(&g, r)?;
        let in_vs: Vec<bool> = (0..n).map(|v| explicit[v] || div.is_boundary(v)).collect();

        let jobs: Vec<usize> = (0..div.regions.len()).collect();
        let built = crate::exec::map(jobs, |i| {
            let reg = &div.regions[i];
            let sub = g.restrict(&reg.vertices, &reg.edges);
            let ex = reg.vertices.iter().map(|&v| in_vs[v]).collect();
            inner.build(sub, ex)
        });
        let inner: Vec<Box<dyn DecrementalConnectivity>> =
            built.into_iter().collect::<Result<_, _>>()?;

        let mut edge_loc = vec![(NONE, NONE); g.edge_count()];
        for (i, reg) in div.regions.iter().enumerate() {
            for (j, &e) in reg.edges.iter().enumerate() {
                edge_loc[e] = (i as u32, j as u32);
            }
        }
        let local_of = |region: u32, v: VertexId| -> u32 {
            div.regions[region as usize]
                .vertices
                .binary_search(&v)
                .expect("vertex belongs to region") as u32
        };
        let home: Vec<(u32, u32)> = (0..n)
            .map(|v| {
                let reg = div.regions_of[v][0];
                (reg, local_of(reg, v))
            })
            .collect();

        let mut member_of = vec![NONE; n];
        let mut members = Vec::new();
        let mut slots = Vec::new();
        let mut aux: Vec<Aux> = Vec::new();
        let mut aux_of: Vec<HashMap<u64, u32>> = vec![HashMap::new(); div.regions.len()];
        for v in (0..n).filter(|&v| in_vs[v]) {
            let mi = members.len() as u32;
            member_of[v] = mi;
            members.push(v);
            let mut sl: SmallVec<[Slot; 3]> = SmallVec::new();
            for (k, &reg) in div.regions_of[v].iter().enumerate() {
                let local = local_of(reg, v);
                let lid = inner[reg as usize].cc_id(local as usize).0;
                let a = *aux_of[reg as usize].entry(lid).or_insert_with(|| {
                    aux.push(Aux {
                        region: reg,
                        lid,
                        gid: 0,
                        members: Vec::new(),
                        alive: true,
                    });
                    (aux.len() - 1) as u32
                });
                let pos = aux[a as usize].members.len() as u32;
                aux[a as usize].members.push((mi, k as u8));
                sl.push(Slot {
                    region: reg,
                    aux: a,
                    pos,
                });
            }
            slots.push(sl);
        }

        let monitor = DualComplement::attach(&g)?;
        let mut level = Self {
            n,
            r,
            edge_loc,
            alive: (0..g.edge_count()).map(|e| g.is_alive(e)).collect(),
            deletable: (0..g.edge_count()).map(|e| g.is_deletable(e)).collect(),
            monitor,
            explicit,
            member_gid: vec![0; members.len()],
            member_of,
            members,
            slots,
            aux,
            aux_of,
            home,
            offsets: Vec::new(),
            next_gid: 0,
            gid_end: 0,
            id_bound: 0,
            stamp: Vec::new(),
            epoch: 0,
            counters: Counters::default(),
            inner,
            div,
        };
        level.assign_initial_gids();
        Ok(level)
    }

    fn node_count(&self) -> usize {
        self.members.len() + self.aux.len()
    }

    fn neighbours(&self, node: &Node) -> SmallVec<[usize; 8]> {
        let m = self.members.len();
        match *node {
            Node::Member(i) => self.slots[i].iter().map(|s| m + s.aux as usize).collect(),
            Node::Aux(a) => self.aux[a].members.iter().map(|&(i, _)| i as usize).collect(),
        }
    }

    fn neighbour(&self, x: usize, i: usize) -> Option<usize> {
        let m = self.members.len();
        if x < m {
            self.slots[x].get(i).map(|s| m + s.aux as usize)
        } else {
            self.aux[x - m].members.get(i).map(|&(j, _)| j as usize)
        }
    }

    fn node(&self, x: usize) -> Node {
        if x < self.members.len() {
            Node::Member(x)
        } else {
            Node::Aux(x - self.members.len())
        }
    }

    fn set_gid(&mut self, x: usize, gid: u64) {
        match self.node(x) {
            Node::Member(i) => self.member_gid[i] = gid,
            Node::Aux(a) => self.aux[a].gid = gid,
        }
    }

    fn assign_initial_gids(&mut self) {
        let total = self.node_count();
        let mut seen = vec![false; total];
        let mut comps = 0u64;
        let mut stack = Vec::new();
        for s in 0..total {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            while let Some(x) = stack.pop() {
                self.set_gid(x, comps);
                for y in self.neighbours(&self.node(x)) {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            comps += 1;
        }
        self.next_gid = comps;
        // every further id comes from a split, of which there are fewer than n
        self.gid_end = comps + self.n as u64 + 1;
        let mut off = self.gid_end;
        self.offsets = self
            .inner
            .iter()
            .map(|d| {
                let o = off;
                off += d.id_bound();
                o
            })
            .collect();
        self.id_bound = off;
        self.stamp = vec![0; total];
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn division(&self) -> &Division {
        &self.div
    }

    /// The skeleton set, sorted.
    pub fn skeleton_set(&self) -> &[VertexId] {
        &self.members
    }

    pub fn snapshot(&self) -> SkeletonSnapshot {
        let m = self.members.len();
        let mut index = vec![NONE; self.aux.len()];
        let mut count = 0;
        for (a, x) in self.aux.iter().enumerate() {
            if x.alive {
                index[a] = count as u32;
                count += 1;
            }
        }
        let mut edges = Vec::new();
        for (i, sl) in self.slots.iter().enumerate() {
            for s in sl {
                edges.push((i, m + index[s.aux as usize] as usize));
            }
        }
        SkeletonSnapshot {
            members: self.members.clone(),
            aux_count: count,
            edges,
        }
    }

    fn move_slot(&mut self, mi: usize, k: usize, to: u32) {
        let s = self.slots[mi][k];
        let from = &mut self.aux[s.aux as usize].members;
        from.swap_remove(s.pos as usize);
        if let Some(&(mj, kj)) = from.get(s.pos as usize) {
            self.slots[mj as usize][kj as usize].pos = s.pos;
        }
        let dest = &mut self.aux[to as usize].members;
        dest.push((mi as u32, k as u8));
        let pos = (dest.len() - 1) as u32;
        let slot = &mut self.slots[mi][k];
        slot.aux = to;
        slot.pos = pos;
        self.counters.skeleton_ops += 1;
    }

    /// Applies the id changes an inner instance reported for region `reg`.
    /// Returns the auxiliary vertices that lost members and those that
    /// gained them.
    fn surgery(&mut self, reg: u32, changes: &[(VertexId, CcId)]) -> (Vec<u32>, Vec<u32>) {
        let mut old = Vec::new();
        let mut new = Vec::new();
        for &(lv, CcId(lid)) in changes {
            let v = self.div.regions[reg as usize].vertices[lv];
            let mi = self.member_of[v] as usize;
            let k = self.slots[mi]
                .iter()
                .position(|s| s.region == reg)
                .expect("member has a slot in its region");
            let from = self.slots[mi][k].aux;
            let to = match self.aux_of[reg as usize].get(&lid) {
                Some(&a) => a,
                None => {
                    let gid = self.aux[from as usize].gid;
                    self.aux.push(Aux {
                        region: reg,
                        lid,
                        gid,
                        members: Vec::new(),
                        alive: true,
                    });
                    self.stamp.push(0);
                    let a = (self.aux.len() - 1) as u32;
                    self.aux_of[reg as usize].insert(lid, a);
                    self.counters.skeleton_ops += 1;
                    a
                }
            };
            if from == to {
                continue;
            }
            self.move_slot(mi, k, to);
            if !old.contains(&from) {
                old.push(from);
            }
            if !new.contains(&to) {
                new.push(to);
            }
        }
        for &a in &old {
            let x = &mut self.aux[a as usize];
            if x.members.is_empty() && x.alive {
                x.alive = false;
                let lid = x.lid;
                self.aux_of[x.region as usize].remove(&lid);
                self.counters.skeleton_ops += 1;
            }
        }
        (old, new)
    }

    /// Advances a skeleton search by one newly discovered node.
    fn advance(&mut self, stack: &mut Vec<(usize, usize)>, found: &mut Vec<usize>, mark: u64) -> bool {
        while let Some(&mut (x, ref mut cur)) = stack.last_mut() {
            let Some(y) = self.neighbour(x, *cur) else {
                stack.pop();
                continue;
            };
            *cur += 1;
            self.counters.dfs_steps += 1;
            if self.stamp[y] != mark {
                self.stamp[y] = mark;
                found.push(y);
                stack.push((y, 0));
                return true;
            }
        }
        false
    }

    /// Relabels the smaller of the two skeleton components containing the
    /// auxiliary vertices `first` and `second`.
    fn split(&mut self, first: u32, second: u32) -> Vec<(VertexId, CcId)> {
        let m = self.members.len();
        let (sa, sb) = (m + first as usize, m + second as usize);
        self.epoch += 1;
        let (ma, mb) = (2 * self.epoch, 2 * self.epoch + 1);
        self.stamp[sa] = ma;
        self.stamp[sb] = mb;
        let (mut st_a, mut st_b) = (vec![(sa, 0)], vec![(sb, 0)]);
        let (mut fa, mut fb) = (vec![sa], vec![sb]);
        let small = loop {
            if !self.advance(&mut st_a, &mut fa, ma) {
                break fa;
            }
            if !self.advance(&mut st_b, &mut fb, mb) {
                break fb;
            }
        };
        let fresh = self.next_gid;
        self.next_gid += 1;
        if fresh >= self.gid_end {
            panic!("{}", DcError::IdOverflow);
        }
        let mut changes = Vec::new();
        for &x in &small {
            self.set_gid(x, fresh);
            if x < m && self.explicit[self.members[x]] {
                changes.push((self.members[x], CcId(fresh)));
            }
        }
        self.counters.relabels += small.len() as u64;
        changes
    }
}

impl DecrementalConnectivity for Level {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn delete(&mut self, e: EdgeId) -> Result<DeleteOutcome, DcError> {
        if e >= self.alive.len() {
            return Err(DcError::EdgeOutOfRange(e));
        }
        if !self.alive[e] {
            return Err(DcError::DeadEdge(e));
        }
        if !self.deletable[e] {
            return Err(DcError::Undeletable(e));
        }
        let (reg, local) = self.edge_loc[e];
        let critical = self.monitor.on_delete(e)?;
        let out = self.inner[reg as usize].delete(local as usize)?;
        self.alive[e] = false;
        debug_assert!(out.critical || !critical, "a split of the graph must split the region");
        if !out.critical {
            return Ok(DeleteOutcome::default());
        }
        let (old, new) = self.surgery(reg, &out.changes);
        let mut changes = Vec::new();
        if critical {
            let a = old.iter().copied().find(|&a| self.aux[a as usize].alive);
            if let (Some(a), Some(&b)) = (a, new.first()) {
                changes = self.split(b, a);
            }
        }
        Ok(DeleteOutcome { critical, changes })
    }

    fn cc_id_traced(&self, v: VertexId) -> (CcId, u32) {
        let mi = self.member_of[v];
        if mi != NONE {
            return (CcId(self.member_gid[mi as usize]), 0);
        }
        let (reg, local) = self.home[v];
        let (CcId(lid), calls) = self.inner[reg as usize].cc_id_traced(local as usize);
        let id = match self.aux_of[reg as usize].get(&lid) {
            Some(&a) => self.aux[a as usize].gid,
            None => self.offsets[reg as usize] + lid,
        };
        (CcId(id), calls + 1)
    }

    fn id_bound(&self) -> u64 {
        self.id_bound
    }

    fn counters(&self) -> Counters {
        let mut c = self.counters;
        for d in &self.inner {
            c += d.counters();
        }
        c.dsu_ops += self.monitor.dsu_ops();
        c
    }

    fn euler_component_count(&self) -> Option<usize> {
        Some(self.monitor.component_count())
    }

    fn layers(&self) -> Vec<Layer> {
        let mut below = Vec::new();
        for d in &self.inner {
            merge_layers(&mut below, d.layers());
        }
        let mut out = vec![Layer {
            kind: "level",
            r: Some(self.r),
            max_vertices: self.n,
            instances: 1,
        }];
        out.extend(below);
        out
    }
}

pub fn log_squared(n: usize) -> usize {
    let l = (n.max(2) as f64).log2();
    ((l * l).ceil() as usize).max(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RRule {
    /// `r = ceil(log2(n)^2)` for the graph the level is built on.
    LogSquared,
    Fixed(usize),
}

impl RRule {
    pub fn r(self, n: usize) -> usize {
        match self {
            RRule::LogSquared => log_squared(n),
            RRule::Fixed(r) => r,
        }
    }
}

/// Builds a [`Level`] over `inner`, or hands graphs with at most `min_n`
/// vertices straight to `inner`.
pub struct LevelBuilder {
    pub rule: RRule,
    pub min_n: usize,
    pub inner: Arc<dyn DcBuilder>,
}

impl DcBuilder for LevelBuilder {
    fn build(
        &self,
        g: PlanarGraph,
        explicit: Vec<bool>,
    ) -> Result<Box<dyn DecrementalConnectivity>, DcError> {
        let n = g.vertex_count();
        let r = self.rule.r(n);
        if n <= self.min_n || n <= r {
            return self.inner.build(g, explicit);
        }
        Ok(Box::new(Level::new(g, explicit, r, self.inner.as_ref())?))
    }
}

/// Micro instances where they fit, the interleaved-search structure
/// otherwise.
pub struct LeafBuilder {
    pub micro: MicroBuilder,
}

impl DcBuilder for LeafBuilder {
    fn build(
        &self,
        g: PlanarGraph,
        explicit: Vec<bool>,
    ) -> Result<Box<dyn DecrementalConnectivity>, DcError> {
        if g.vertex_count() <= MAX_T {
            match self.micro.build(g.clone(), explicit.clone()) {
                Ok(d) => return Ok(d),
                Err(DcError::MicroNotSimple(..)) => {}
                Err(e) => return Err(e),
            }
        }
        DcBaseBuilder::default().build(g, explicit)
    }
}

/// One level over the interleaved-search structure.
pub fn one_level_builder() -> LevelBuilder {
    LevelBuilder {
        rule: RRule::LogSquared,
        min_n: MAX_T,
        inner: Arc::new(DcBaseBuilder::default()),
    }
}

/// Two levels over micro instances, sized for a graph on `n` vertices.
pub fn full_builder(n: usize, table: Arc<MicroTable>) -> LevelBuilder {
    let r1 = log_squared(n);
    let r2 = log_squared(r1).min(MAX_T);
    let leaf = LeafBuilder {
        micro: MicroBuilder { table },
    };
    LevelBuilder {
        rule: RRule::LogSquared,
        min_n: MAX_T,
        inner: Arc::new(LevelBuilder {
            rule: RRule::Fixed(r2),
            min_n: MAX_T,
            inner: Arc::new(leaf),
        }),
    }
}

/// Two nested levels over the interleaved-search structure, with levels
/// kept down to small graphs so that both are exercised.
pub fn tower_builder(base: DcBaseBuilder) -> LevelBuilder {
    LevelBuilder {
        rule: RRule::LogSquared,
        min_n: 8,
        inner: Arc::new(LevelBuilder {
            rule: RRule::LogSquared,
            min_n: 8,
            inner: Arc::new(base),
        }),
    }
}
