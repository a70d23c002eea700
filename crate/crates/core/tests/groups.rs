mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{dense_graph, disjoint_union, ids, parse, Naive};
use ktruss::cascade::{delete_and_cascade, CascadeScratch};
use ktruss::groups::{build_truss_group_index, find_support_groups, refresh_index, GroupIndex};
use ktruss::synth::clique;
use ktruss::truss::{k_truss, truss_decompose, truss_decompose_within, update_after_deletion};
use ktruss::{EdgeId, EdgeKey, Error, Graph};
use proptest::prelude::*;

fn two_k4_sharing_edge() -> Graph {
    parse("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n0 4\n0 5\n1 4\n1 5\n4 5\n")
}

/// Connected components of `nodes` under the pairs in `links`, as sorted
/// member lists, sorted.
fn components(nodes: &BTreeSet<usize>, links: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut parent: BTreeMap<usize, usize> = nodes.iter().map(|&x| (x, x)).collect();
    fn find(p: &mut BTreeMap<usize, usize>, x: usize) -> usize {
        let up = p[&x];
        if up == x {
            return x;
        }
        let root = find(p, up);
        p.insert(x, root);
        root
    }
    for &(a, b) in links {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent.insert(ra, rb);
    }
    let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &x in nodes {
        let r = find(&mut parent, x);
        out.entry(r).or_default().push(x);
    }
    let mut groups: Vec<Vec<usize>> = out.into_values().collect();
    groups.sort();
    groups
}

/// Support groups: support-(k-2) edges of the truss linked when they share
/// a triangle.
fn oracle_support_groups(naive: &Naive, k: usize, truss: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let tight: BTreeSet<usize> = truss.iter().copied().filter(|&e| naive.support(e, truss) + 2 == k).collect();
    let mut links = Vec::new();
    for t in naive.triangles(truss) {
        let members: Vec<usize> = t.iter().copied().filter(|e| tight.contains(e)).collect();
        for w in members.windows(2) {
            links.push((w[0], w[1]));
        }
    }
    components(&tight, &links)
}

/// Truss groups at `level`: trussness-`level` edges linked when they share
/// a triangle whose edges all have trussness at least `level`.
fn oracle_truss_groups(naive: &Naive, tau: &[u32], alive: &BTreeSet<usize>, level: u32) -> Vec<Vec<usize>> {
    let exact: BTreeSet<usize> = alive.iter().copied().filter(|&e| tau[e] == level).collect();
    let mut links = Vec::new();
    for t in naive.triangles(alive) {
        if t.iter().all(|&e| tau[e] >= level) {
            let members: Vec<usize> = t.iter().copied().filter(|e| exact.contains(e)).collect();
            for w in members.windows(2) {
                links.push((w[0], w[1]));
            }
        }
    }
    components(&exact, &links)
}

fn canonical_groups(idx: &GroupIndex, level: u32) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = idx.groups(level).into_iter().map(|g| g.members.iter().map(|&e| e as usize).collect()).collect();
    out.sort();
    out
}

#[test]
fn support_group_examples() {
    let k5 = clique(5);
    let found = find_support_groups(&k5, &k_truss(&k5, 5).unwrap());
    assert_eq!(found.groups.len(), 1);
    assert_eq!(found.groups[0].members.len(), 10);
    assert_eq!(found.candidates, vec![0]);

    let k6 = clique(6);
    let found = find_support_groups(&k6, &k_truss(&k6, 5).unwrap());
    assert!(found.groups.is_empty());
    assert!(found.fragile_adjacent.is_empty());
    assert!(found.candidates.is_empty());

    let g = disjoint_union(&clique(5), &clique(5));
    let found = find_support_groups(&g, &k_truss(&g, 5).unwrap());
    assert_eq!(found.groups.len(), 2);
    assert_eq!(found.candidates, vec![0, 10]);
}

#[test]
fn coverage_counts_each_triangle_once() {
    // Triangle 0-1-2 is the whole 3-truss; every edge is tight and the
    // group leaves no over-support edges to prune.
    let g = clique(3);
    let found = find_support_groups(&g, &k_truss(&g, 3).unwrap());
    assert_eq!(found.groups.len(), 1);
    assert!(found.groups[0].pruned_followers.is_empty());

    // K4 at k=3: every support is 2 > 1, so no groups at all.
    let g = clique(4);
    assert!(find_support_groups(&g, &k_truss(&g, 3).unwrap()).groups.is_empty());
}

#[test]
fn truss_index_examples() {
    let k5 = clique(5);
    let idx = build_truss_group_index(&k5, &truss_decompose(&k5), 5).unwrap();
    let groups = idx.groups(5);
    assert_eq!(groups.len(), 1);
    assert_eq!(groups[0].members.len(), 10);

    let g = two_k4_sharing_edge();
    let idx = build_truss_group_index(&g, &truss_decompose(&g), 4).unwrap();
    let groups = idx.groups(4);
    assert_eq!(groups.len(), 1);
    assert_eq!(groups[0].members.len(), 11);

    let k6 = clique(6);
    let idx = build_truss_group_index(&k6, &truss_decompose(&k6), 5).unwrap();
    assert!(idx.groups(5).is_empty());

    assert!(matches!(build_truss_group_index(&k6, &truss_decompose(&k6), 2), Err(Error::InvalidArgument(_))));
}

#[test]
fn upper_bound_examples() {
    let k5 = clique(5);
    let tau = truss_decompose(&k5);
    let idx = build_truss_group_index(&k5, &tau, 5).unwrap();
    for e in 0..10 {
        assert_eq!(idx.upper_bound(&k5, &tau, e).unwrap(), 10);
    }

    let k6 = clique(6);
    let tau = truss_decompose(&k6);
    let idx = build_truss_group_index(&k6, &tau, 5).unwrap();
    assert_eq!(idx.upper_bound(&k6, &tau, 0).unwrap(), 0);

    let g = disjoint_union(&clique(5), &clique(5));
    let tau = truss_decompose(&g);
    let idx = build_truss_group_index(&g, &tau, 5).unwrap();
    assert_eq!(idx.upper_bound(&g, &tau, 0).unwrap(), 10);

    let (after, _) = update_after_deletion(&g, &tau, g.edge(0)).unwrap();
    assert!(matches!(idx.upper_bound(&g, &after, 0), Err(Error::NotInTruss(0))));
}

#[test]
fn refresh_examples() {
    // Deleting a pendant edge changes no trussness.
    let g = parse("0 1\n1 2\n0 2\n2 3\n");
    let tau = truss_decompose(&g);
    let idx = build_truss_group_index(&g, &tau, 3).unwrap();
    let (after, delta) = update_after_deletion(&g, &tau, EdgeKey::new(2, 3).unwrap()).unwrap();
    assert!(delta.lowered.is_empty());
    let refreshed = refresh_index(&idx, &delta, &g, &after);
    assert_eq!(refreshed.groups(3), idx.groups(3));

    let k5 = clique(5);
    let tau = truss_decompose(&k5);
    let idx = GroupIndex::build(&k5, &tau, 5, &[4]).unwrap();
    assert!(idx.groups(4).is_empty());
    let (after, delta) = update_after_deletion(&k5, &tau, EdgeKey::new(0, 1).unwrap()).unwrap();
    let refreshed = refresh_index(&idx, &delta, &k5, &after);
    assert!(refreshed.groups(5).is_empty());
    let level4 = refreshed.groups(4);
    assert_eq!(level4.len(), 1);
    assert_eq!(level4[0].members.len(), 9);
    assert!(refreshed.equivalent(&GroupIndex::build(&k5, &after, 5, &[4]).unwrap()));

    let g = disjoint_union(&clique(5), &clique(5));
    let tau = truss_decompose(&g);
    let idx = build_truss_group_index(&g, &tau, 5).unwrap();
    let second = idx.groups(5).into_iter().find(|grp| grp.members[0] == 10).unwrap();
    let (after, delta) = update_after_deletion(&g, &tau, g.edge(0)).unwrap();
    let refreshed = refresh_index(&idx, &delta, &g, &after);
    let groups = refreshed.groups(5);
    assert_eq!(groups, vec![second]);
}

fn pruning_check(g: &Graph, k: u32) -> std::result::Result<(), TestCaseError> {
    let t = k_truss(g, k).unwrap();
    let found = find_support_groups(g, &t);
    let mut scratch = CascadeScratch::new(&t);
    let followers: BTreeMap<EdgeId, BTreeSet<EdgeId>> =
        t.edges().map(|e| (e, scratch.run(g, &t, &[e])[1..].iter().copied().collect())).collect();

    let q: BTreeSet<EdgeId> = found.fragile_adjacent.iter().copied().collect();
    for (e, f) in &followers {
        if !q.contains(e) {
            prop_assert!(f.is_empty(), "edge {} outside Q has followers", e);
        }
    }

    for group in &found.groups {
        let count = followers[&group.members[0]].len();
        for &m in &group.members {
            prop_assert_eq!(t.support(m), k - 2);
            let removed = delete_and_cascade(g, &t, &[m]);
            let gone: BTreeSet<EdgeId> = removed.followers.iter().chain(&removed.deleted).copied().collect();
            for &other in &group.members {
                prop_assert!(gone.contains(&other), "deleting {} spares group member {}", m, other);
            }
            prop_assert_eq!(followers[&m].len(), count);
            for p in &group.pruned_followers {
                prop_assert!(followers[&m].contains(p), "pruned {} is not a follower of {}", p, m);
            }
        }
    }

    // The candidates contain a maximiser whenever any edge has followers.
    let best = followers.values().map(BTreeSet::len).max().unwrap_or(0);
    if best > 0 {
        prop_assert!(found.candidates.iter().any(|c| followers[c].len() == best));
    }

    let tau = truss_decompose_within(g, t.alive());
    let idx = build_truss_group_index(g, &tau, k).unwrap();
    for (&e, f) in &followers {
        let ub = idx.upper_bound(g, &tau, e).unwrap();
        prop_assert!(ub >= f.len(), "bound {} below {} followers of {}", ub, f.len(), e);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn support_groups_match_oracle(g in dense_graph(5..=14, 0.3..0.8), k in 3usize..7) {
        let naive = Naive::new(&g);
        let truss = naive.truss(k, &naive.all());
        let t = k_truss(&g, k as u32).unwrap();
        let found = find_support_groups(&g, &t);
        let mut got: Vec<Vec<usize>> = found.groups.iter().map(|grp| grp.members.iter().map(|&e| e as usize).collect()).collect();
        got.sort();
        prop_assert_eq!(got, oracle_support_groups(&naive, k, &truss));
        for grp in &found.groups {
            prop_assert_eq!(grp.representative(), *grp.members.iter().min().unwrap());
        }

        let tight: BTreeSet<usize> = truss.iter().copied().filter(|&e| naive.support(e, &truss) + 2 == k).collect();
        let mut q = BTreeSet::new();
        for tri in naive.triangles(&truss) {
            for (i, e) in tri.iter().enumerate() {
                if tight.contains(e) {
                    q.extend(tri.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x));
                }
            }
        }
        prop_assert_eq!(ids(found.fragile_adjacent.iter().copied()), q);
    }

    #[test]
    fn pruning_facts_hold(g in dense_graph(5..=14, 0.3..0.8), k in 3u32..7) {
        pruning_check(&g, k)?;
    }

    #[test]
    fn truss_index_matches_oracle(g in dense_graph(5..=14, 0.3..0.8), k in 3u32..7) {
        let naive = Naive::new(&g);
        let alive = naive.all();
        let tau = naive.trussness(&alive);
        let idx = build_truss_group_index(&g, &truss_decompose(&g), k).unwrap();
        let expected = oracle_truss_groups(&naive, &tau, &alive, k);
        prop_assert_eq!(canonical_groups(&idx, k), expected.clone());

        let group_of: BTreeMap<usize, usize> =
            expected.iter().enumerate().flat_map(|(i, grp)| grp.iter().map(move |&e| (e, i))).collect();
        for e in alive.iter().copied().filter(|&e| tau[e] >= k) {
            let mut adj = BTreeSet::new();
            if let Some(&i) = group_of.get(&e) {
                adj.insert(i);
            }
            for tri in naive.triangles(&alive) {
                if tri.contains(&e) && tri.iter().all(|&x| tau[x] >= k) {
                    adj.extend(tri.iter().filter_map(|x| group_of.get(x).copied()));
                }
            }
            let bound: usize = adj.iter().map(|&i| expected[i].len()).sum();
            prop_assert_eq!(idx.upper_bound(&g, &truss_decompose(&g), e as EdgeId).unwrap(), bound);
        }
    }

    #[test]
    fn refresh_matches_rebuild(
        g in dense_graph(5..=14, 0.3..0.8),
        k in 3u32..6,
        order in prop::collection::vec(any::<prop::sample::Index>(), 1..12),
    ) {
        let mut tau = truss_decompose(&g);
        let extra: Vec<u32> = (3..8).filter(|&l| l != k).collect();
        let mut idx = GroupIndex::build(&g, &tau, k, &extra).unwrap();
        for pick in order {
            let live: Vec<EdgeId> = tau.alive().iter().collect();
            if live.is_empty() {
                break;
            }
            let e = live[pick.index(live.len())];
            let (next, delta) = update_after_deletion(&g, &tau, g.edge(e)).unwrap();
            idx = refresh_index(&idx, &delta, &g, &next);
            tau = next;
            let rebuilt = GroupIndex::build(&g, &tau, k, &extra).unwrap();
            prop_assert_eq!(idx.canonical(), rebuilt.canonical());
        }
    }
}
