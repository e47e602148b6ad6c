use super::LabeledGraph;

/// Brute-force isomorphism search for small graphs.
///
/// Returns `map` with `map[v - 1]` the image in `b` of vertex `v` of `a`.
/// Candidates are pruned by degree and by adjacency with the already mapped
/// prefix; this is exponential in the worst case and meant for graphs of a
/// few dozen vertices at most.
pub fn find_isomorphism(a: &LabeledGraph, b: &LabeledGraph) -> Option<Vec<usize>> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return None;
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return None;
    }
    let n = a.n();
    let mut map = vec![0usize; n];
    let mut used = vec![false; n];
    if extend(a, b, 1, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

pub fn is_isomorphic(a: &LabeledGraph, b: &LabeledGraph) -> bool {
    find_isomorphism(a, b).is_some()
}

fn extend(a: &LabeledGraph, b: &LabeledGraph, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if v > a.n() {
        return true;
    }
    for w in 1..=b.n() {
        if used[w - 1] || a.degree(v) != b.degree(w) {
            continue;
        }
        let consistent = (1..v).all(|u| a.has_edge(u, v) == b.has_edge(map[u - 1], w));
        if !consistent {
            continue;
        }
        map[v - 1] = w;
        used[w - 1] = true;
        if extend(a, b, v + 1, map, used) {
            return true;
        }
        used[w - 1] = false;
    }
    false
}
