//! Support groups for candidate reduction and truss groups for follower
//! upper bounds.
//!
//! A *k-support group* is a maximal set of edges with support exactly
//! `k - 2` in the k-truss, connected through shared triangles. Deleting any
//! member collapses the whole group, so one representative stands in for
//! all of them. A *k-truss group* is the analogous unit over edges of
//! trussness exactly `k` chained through triangles whose edges all have
//! trussness at least `k`; the groups an edge touches bound its followers.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, Graph};
use crate::truss::{TrussSubgraph, TrussnessDelta, TrussnessMap};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportGroup {
    pub gid: u32,
    /// Ascending; the first member is the group's representative.
    pub members: Vec<EdgeId>,
    /// Over-support edges that collapse with the group, ascending.
    pub pruned_followers: Vec<EdgeId>,
}

impl SupportGroup {
    pub fn representative(&self) -> EdgeId {
        self.members[0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDiscovery {
    pub groups: Vec<SupportGroup>,
    /// Edges that can be the best deletion, ascending.
    pub candidates: Vec<EdgeId>,
    /// Live edges sharing a triangle with some support-`(k-2)` edge. Only
    /// these can have followers. Ascending.
    pub fragile_adjacent: Vec<EdgeId>,
}

pub fn find_support_groups(g: &Graph, t: &TrussSubgraph) -> GroupDiscovery {
    let k = t.k();
    let tight = k - 2;
    let alive = t.alive();
    let m = g.edge_count();

    let mut visited = EdgeSet::empty(m);
    let mut fragile_adjacent = EdgeSet::empty(m);
    let mut over_support = EdgeSet::empty(m);
    let mut pruned = EdgeSet::empty(m);
    let mut groups = Vec::new();

    let mut queue = Vec::new();
    let mut coverage: HashMap<EdgeId, u32> = HashMap::new();
    for seed in t.edges() {
        if t.support(seed) != tight || visited.contains(seed) {
            continue;
        }
        let gid = groups.len() as u32;
        let mut members = Vec::new();
        coverage.clear();
        visited.insert(seed);
        queue.push(seed);
        while let Some(e) = queue.pop() {
            members.push(e);
            g.for_each_triangle_in(e, alive, |_, a, b| {
                for (x, other) in [(a, b), (b, a)] {
                    fragile_adjacent.insert(x);
                    if t.support(x) == tight {
                        if !visited.contains(x) {
                            visited.insert(x);
                            queue.push(x);
                        }
                    } else {
                        over_support.insert(x);
                        // A triangle holding two members is met once from
                        // each of them but destroys only one unit of support.
                        if t.support(other) != tight || e < other {
                            *coverage.entry(x).or_insert(0) += 1;
                        }
                    }
                }
            });
        }
        members.sort_unstable();
        let mut pruned_followers: Vec<EdgeId> = coverage
            .iter()
            .filter(|&(&x, &hits)| hits > t.support(x) - tight)
            .map(|(&x, _)| x)
            .collect();
        pruned_followers.sort_unstable();
        for &x in &pruned_followers {
            pruned.insert(x);
        }
        groups.push(SupportGroup { gid, members, pruned_followers });
    }

    let mut candidates: Vec<EdgeId> = groups.iter().map(SupportGroup::representative).collect();
    over_support.difference_with(&pruned);
    candidates.extend(over_support.iter());
    candidates.sort_unstable();

    GroupDiscovery {
        groups,
        candidates,
        fragile_adjacent: fragile_adjacent.iter().collect(),
    }
}

const NO_GROUP: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrussGroup {
    pub gid: u32,
    pub level: u32,
    pub members: Vec<EdgeId>,
}

#[derive(Debug, Clone)]
struct LevelGroups {
    gid_of: Vec<u32>,
    sizes: BTreeMap<u32, usize>,
    next_gid: u32,
}

/// Truss groups of one or more levels. Group adjacency is not stored; it is
/// derived from the groups and the trussness map when asked for.
#[derive(Debug, Clone)]
pub struct GroupIndex {
    k: u32,
    levels: BTreeMap<u32, LevelGroups>,
}

/// Id-independent form of a [`GroupIndex`]: per level, the groups as sorted
/// member lists, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalIndex {
    pub groups: BTreeMap<u32, Vec<Vec<EdgeId>>>,
}

pub fn build_truss_group_index(g: &Graph, tau: &TrussnessMap, k: u32) -> Result<GroupIndex> {
    GroupIndex::build(g, tau, k, &[])
}

/// Incrementally brings `idx` up to date after the deletion described by
/// `delta`; `tau` must already reflect it.
pub fn refresh_index(idx: &GroupIndex, delta: &TrussnessDelta, g: &Graph, tau: &TrussnessMap) -> GroupIndex {
    let mut next = idx.clone();
    next.refresh(g, tau, delta);
    next
}

/// Trussness and liveness as they were before the deletion in `delta`.
struct Before<'a> {
    tau: &'a TrussnessMap,
    delta: &'a TrussnessDelta,
    lowered: EdgeSet,
}

impl Before<'_> {
    fn tau(&self, e: EdgeId) -> u32 {
        if e == self.delta.deleted {
            self.delta.deleted_trussness
        } else {
            self.tau.get(e) + u32::from(self.lowered.contains(e))
        }
    }

    fn alive(&self, e: EdgeId) -> bool {
        e == self.delta.deleted || self.tau.alive().contains(e)
    }

    /// Calls `f(a, b)` for every triangle of `e` in the pre-deletion graph
    /// whose three edges all had trussness at least `level`.
    fn for_each_triangle(&self, g: &Graph, e: EdgeId, level: u32, mut f: impl FnMut(EdgeId, EdgeId)) {
        if self.tau(e) < level {
            return;
        }
        g.for_each_triangle(e, |_, a, b| {
            if self.alive(a) && self.alive(b) && self.tau(a) >= level && self.tau(b) >= level {
                f(a, b)
            }
        });
    }
}

impl LevelGroups {
    fn build(g: &Graph, tau: &TrussnessMap, level: u32) -> Self {
        let mut lg = LevelGroups {
            gid_of: vec![NO_GROUP; g.edge_count()],
            sizes: BTreeMap::new(),
            next_gid: 0,
        };
        for e in tau.alive().iter() {
            if tau.get(e) == level && lg.gid_of[e as usize] == NO_GROUP {
                let gid = lg.fresh_gid();
                let n = lg.flood(g, tau, level, e, NO_GROUP, gid, None);
                lg.sizes.insert(gid, n);
            }
        }
        lg
    }

    fn fresh_gid(&mut self) -> u32 {
        self.next_gid += 1;
        self.next_gid - 1
    }

    fn members(&self) -> BTreeMap<u32, Vec<EdgeId>> {
        let mut out: BTreeMap<u32, Vec<EdgeId>> = BTreeMap::new();
        for (e, &gid) in self.gid_of.iter().enumerate() {
            if gid != NO_GROUP {
                out.entry(gid).or_default().push(e as EdgeId);
            }
        }
        out
    }

    /// Relabels `from` to `to` on every level edge reachable from `seed`
    /// through level triangles without leaving `from`. Returns the number
    /// of edges relabelled; their triangle partners go to `partners`.
    #[allow(clippy::too_many_arguments)]
    fn flood(
        &mut self,
        g: &Graph,
        tau: &TrussnessMap,
        level: u32,
        seed: EdgeId,
        from: u32,
        to: u32,
        mut partners: Option<&mut Vec<EdgeId>>,
    ) -> usize {
        debug_assert_eq!(self.gid_of[seed as usize], from);
        self.gid_of[seed as usize] = to;
        let mut stack = vec![seed];
        let mut n = 0;
        while let Some(e) = stack.pop() {
            n += 1;
            g.for_each_triangle_in(e, tau.alive(), |_, a, b| {
                if tau.get(a) < level || tau.get(b) < level {
                    return;
                }
                if let Some(p) = partners.as_deref_mut() {
                    p.extend([a, b]);
                }
                for x in [a, b] {
                    if tau.get(x) == level && self.gid_of[x as usize] == from {
                        self.gid_of[x as usize] = to;
                        stack.push(x);
                    }
                }
            });
        }
        n
    }

    /// Level edges sharing a level triangle with `e`.
    fn neighbours(g: &Graph, tau: &TrussnessMap, level: u32, e: EdgeId, out: &mut Vec<EdgeId>, partners: &mut Vec<EdgeId>) {
        g.for_each_triangle_in(e, tau.alive(), |_, a, b| {
            if tau.get(a) >= level && tau.get(b) >= level {
                partners.extend([a, b]);
                out.extend([a, b].into_iter().filter(|&x| tau.get(x) == level));
            }
        });
    }

    /// Distinct groups `e` shares a level triangle with, plus its own.
    fn adjacent(&self, g: &Graph, tau: &TrussnessMap, level: u32, e: EdgeId) -> Vec<u32> {
        let mut adj = Vec::new();
        if !tau.alive().contains(e) || tau.get(e) < level {
            return adj;
        }
        if tau.get(e) == level {
            adj.push(self.gid_of[e as usize]);
        }
        g.for_each_triangle_in(e, tau.alive(), |_, a, b| {
            if tau.get(a) >= level && tau.get(b) >= level {
                for x in [a, b] {
                    if tau.get(x) == level {
                        adj.push(self.gid_of[x as usize]);
                    }
                }
            }
        });
        adj.sort_unstable();
        adj.dedup();
        adj
    }

    /// Returns the edges whose adjacent groups may have changed.
    fn refresh(&mut self, g: &Graph, tau: &TrussnessMap, before: &Before<'_>, level: u32) -> Vec<EdgeId> {
        let delta = before.delta;
        if delta.deleted_trussness < level {
            return Vec::new();
        }
        // The deleted edge and edges that fell below the level take their
        // triangles with them; edges that fell from one above join.
        let mut leaving = vec![delta.deleted];
        let mut joining = Vec::new();
        for &c in &delta.lowered {
            match before.tau(c) {
                old if old == level => leaving.push(c),
                old if old == level + 1 => joining.push(c),
                _ => {}
            }
        }
        let mut touched: Vec<EdgeId> = leaving.iter().chain(&joining).copied().collect();

        for &x in &leaving {
            let gid = std::mem::replace(&mut self.gid_of[x as usize], NO_GROUP);
            if gid != NO_GROUP {
                *self.sizes.get_mut(&gid).expect("labelled edges have a group") -= 1;
            }
        }
        // A group can only come apart at a lost triangle, so every piece of
        // it holds a member that shared one with a leaving edge.
        let mut seeds: BTreeMap<u32, Vec<EdgeId>> = BTreeMap::new();
        for &x in &leaving {
            before.for_each_triangle(g, x, level, |a, b| {
                touched.extend([a, b]);
                for y in [a, b] {
                    let gid = self.gid_of[y as usize];
                    if gid != NO_GROUP {
                        seeds.entry(gid).or_default().push(y);
                    }
                }
            });
        }
        for (gid, mut s) in seeds {
            s.sort_unstable();
            s.dedup();
            self.split(g, tau, level, gid, &s, &mut touched);
        }
        self.sizes.retain(|_, n| *n > 0);

        // Joining edges are the only unlabelled level edges. Each grows a
        // group of its own, merging every group it meets smaller into larger.
        let mut met = Vec::new();
        for &j in &joining {
            if self.gid_of[j as usize] != NO_GROUP || !tau.alive().contains(j) || tau.get(j) != level {
                continue;
            }
            let mut cur = self.fresh_gid();
            self.gid_of[j as usize] = cur;
            self.sizes.insert(cur, 1);
            let mut stack = vec![j];
            while let Some(e) = stack.pop() {
                met.clear();
                Self::neighbours(g, tau, level, e, &mut met, &mut touched);
                for &y in &met {
                    let other = self.gid_of[y as usize];
                    if other == NO_GROUP {
                        self.gid_of[y as usize] = cur;
                        *self.sizes.get_mut(&cur).expect("current group exists") += 1;
                        stack.push(y);
                    } else if other != cur {
                        let (big, small, start) =
                            if self.sizes[&other] > self.sizes[&cur] { (other, cur, e) } else { (cur, other, y) };
                        let n = self.flood(g, tau, level, start, small, big, Some(&mut touched));
                        debug_assert_eq!(Some(&n), self.sizes.get(&small));
                        self.sizes.remove(&small);
                        *self.sizes.get_mut(&big).expect("merge target exists") += n;
                        cur = big;
                    }
                }
            }
        }
        touched
    }

    /// Finds the pieces of group `gid` by searching from all `seeds` in
    /// lockstep, stopping once at most one piece is still growing. That
    /// piece and everything unreached keep `gid`, so the cost is bounded by
    /// the smaller pieces. Finished pieces get fresh ids and their edges and
    /// partners go to `touched`.
    fn split(&mut self, g: &Graph, tau: &TrussnessMap, level: u32, gid: u32, seeds: &[EdgeId], touched: &mut Vec<EdgeId>) {
        if seeds.len() < 2 {
            return;
        }
        let n = seeds.len();
        let base = self.next_gid;
        self.next_gid += n as u32;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        let mut frontier: Vec<Vec<EdgeId>> = seeds.iter().map(|&s| vec![s]).collect();
        let mut claimed: Vec<Vec<EdgeId>> = seeds.iter().map(|&s| vec![s]).collect();
        let mut partners: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
        for (i, &s) in seeds.iter().enumerate() {
            self.gid_of[s as usize] = base + i as u32;
        }

        let mut growing: Vec<usize> = (0..n).collect();
        let mut met = Vec::new();
        loop {
            growing.retain(|&i| !frontier[i].is_empty());
            let mut roots: Vec<usize> = growing.iter().map(|&i| find(&mut parent, i)).collect();
            roots.sort_unstable();
            roots.dedup();
            if roots.len() <= 1 {
                break;
            }
            for &i in &growing {
                let Some(e) = frontier[i].pop() else { continue };
                met.clear();
                Self::neighbours(g, tau, level, e, &mut met, &mut partners[i]);
                for &y in &met {
                    let label = self.gid_of[y as usize];
                    if label == gid {
                        self.gid_of[y as usize] = base + i as u32;
                        frontier[i].push(y);
                        claimed[i].push(y);
                    } else if (base..base + n as u32).contains(&label) {
                        let (a, b) = (find(&mut parent, i), find(&mut parent, (label - base) as usize));
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }

        let survivor = growing.first().map(|&i| find(&mut parent, i));
        let mut pieces: BTreeMap<usize, (Vec<EdgeId>, Vec<EdgeId>)> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            let piece = pieces.entry(r).or_default();
            piece.0.append(&mut claimed[i]);
            piece.1.append(&mut partners[i]);
        }
        // With nothing left growing every member was reached; the largest
        // piece keeps the id.
        let keep = survivor.unwrap_or_else(|| {
            *pieces.iter().max_by_key(|(&r, p)| (p.0.len(), std::cmp::Reverse(r))).expect("at least two seeds").0
        });
        for (r, (edges, around)) in pieces {
            let label = if r == keep { gid } else { base + r as u32 };
            for &e in &edges {
                self.gid_of[e as usize] = label;
            }
            if r != keep {
                *self.sizes.get_mut(&gid).expect("split group exists") -= edges.len();
                self.sizes.insert(label, edges.len());
                touched.extend(edges);
                touched.extend(around);
            }
        }
    }
}

impl GroupIndex {
    /// Builds groups at level `k` plus any `extra_levels`. Upper bounds are
    /// answered at level `k`.
    pub fn build(g: &Graph, tau: &TrussnessMap, k: u32, extra_levels: &[u32]) -> Result<Self> {
        if k < 3 || extra_levels.iter().any(|&l| l < 3) {
            return Err(Error::InvalidArgument("truss group levels must be at least 3".into()));
        }
        let mut levels = BTreeMap::new();
        for &level in std::iter::once(&k).chain(extra_levels) {
            levels.entry(level).or_insert_with(|| LevelGroups::build(g, tau, level));
        }
        Ok(GroupIndex { k, levels })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn levels(&self) -> impl Iterator<Item = u32> + '_ {
        self.levels.keys().copied()
    }

    pub fn groups(&self, level: u32) -> Vec<TrussGroup> {
        self.levels
            .get(&level)
            .map(|lg| {
                lg.members()
                    .into_iter()
                    .map(|(gid, members)| TrussGroup { gid, level, members })
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn group_of(&self, level: u32, e: EdgeId) -> Option<u32> {
        let lg = self.levels.get(&level)?;
        match lg.gid_of[e as usize] {
            NO_GROUP => None,
            gid => Some(gid),
        }
    }

    pub fn group_size(&self, level: u32, gid: u32) -> usize {
        self.levels
            .get(&level)
            .and_then(|lg| lg.sizes.get(&gid))
            .map_or(0, |&n| n)
    }

    /// Distinct level-`k` groups that `e` shares a k-triangle with,
    /// including its own group, ascending.
    pub fn adjacent_groups(&self, g: &Graph, tau: &TrussnessMap, e: EdgeId) -> Vec<u32> {
        self.levels[&self.k].adjacent(g, tau, self.k, e)
    }

    /// Upper bound on the followers of `e` in the k-truss: the total size of
    /// the level-`k` groups adjacent to it. `tau` must be the map the index
    /// was built or last refreshed with.
    pub fn upper_bound(&self, g: &Graph, tau: &TrussnessMap, e: EdgeId) -> Result<usize> {
        if !tau.alive().contains(e) || tau.get(e) < self.k {
            return Err(Error::NotInTruss(e));
        }
        let lg = &self.levels[&self.k];
        Ok(lg.adjacent(g, tau, self.k, e).iter().map(|gid| lg.sizes[gid]).sum())
    }

    /// Brings every level up to date after the deletion in `delta`; `tau`
    /// must already reflect it. Returns the edges whose adjacent level-`k`
    /// groups may have changed. Group sizes change without edges being
    /// listed.
    pub fn refresh(&mut self, g: &Graph, tau: &TrussnessMap, delta: &TrussnessDelta) -> Vec<EdgeId> {
        let lowered = EdgeSet::from_ids(g.edge_count(), delta.lowered.iter().copied());
        let before = Before { tau, delta, lowered };
        let mut out = Vec::new();
        for (&level, lg) in self.levels.iter_mut() {
            let touched = lg.refresh(g, tau, &before, level);
            if level == self.k {
                out = touched;
            }
        }
        out
    }

    pub fn canonical(&self) -> CanonicalIndex {
        let groups = self
            .levels
            .iter()
            .map(|(&level, lg)| {
                let mut gs: Vec<Vec<EdgeId>> = lg.members().into_values().collect();
                gs.sort();
                (level, gs)
            })
            .collect();
        CanonicalIndex { groups }
    }

    /// True when both indexes hold the same groups, up to group ids.
    pub fn equivalent(&self, other: &GroupIndex) -> bool {
        self.k == other.k && self.canonical() == other.canonical()
    }
}
