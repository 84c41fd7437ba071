//! Isomorphism of real plumbing graphs up to renaming of ids.
//!
//! Backtracking over component bijections that preserve labels, conjugation
//! and pairwise intersection counts; the point multisets are compared once a
//! full bijection is found. Intended for the small graphs in tests and reports.

use std::collections::{HashMap, VecDeque};

use super::{ComponentReality, PointReality, RealPlumbingGraph, SelfNode};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Label {
    genus: u32,
    euler: i64,
    reality: u8,
    self_nodes: Vec<SelfNode>,
    degree: usize,
}

struct Prepared {
    labels: Vec<Label>,
    conj: Vec<usize>,
    adj: Vec<Vec<i64>>,
    points: Vec<(bool, Vec<usize>, Option<usize>)>,
}

fn prepare(g: &RealPlumbingGraph) -> Prepared {
    let n = g.components.len();
    let lookup = g.component_lookup();
    let mut adj = vec![vec![0i64; n]; n];
    let mut points = Vec::new();
    let point_conj = g.point_conj();
    for (pi, p) in g.points.iter().enumerate() {
        let b: Vec<usize> = p.at.iter().map(|id| lookup[id.as_str()]).collect();
        for i in 0..b.len() {
            for j in 0..b.len() {
                if i != j {
                    adj[b[i]][b[j]] += 1;
                }
            }
        }
        let partner = if p.reality == PointReality::RealPoint {
            None
        } else {
            Some(point_conj[pi])
        };
        points.push((p.reality.is_real(), b, partner));
    }
    let labels = g
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut self_nodes = c.self_nodes.clone();
            self_nodes.sort();
            Label {
                genus: c.genus,
                euler: c.euler,
                reality: match c.reality {
                    ComponentReality::RealWithRealPoints => 0,
                    ComponentReality::RealWithoutRealPoints => 1,
                    ComponentReality::ImaginaryPairedWith(_) => 2,
                },
                self_nodes,
                degree: adj[i].iter().sum::<i64>() as usize,
            }
        })
        .collect();
    Prepared {
        labels,
        conj: g.component_conj(),
        adj,
        points,
    }
}

fn point_signature(p: &Prepared, map: &[usize]) -> Vec<(bool, Vec<usize>, Vec<usize>)> {
    let mapped = |b: &Vec<usize>| {
        let mut v: Vec<usize> = b.iter().map(|&c| map[c]).collect();
        v.sort_unstable();
        v
    };
    let mut sig: Vec<(bool, Vec<usize>, Vec<usize>)> = p
        .points
        .iter()
        .map(|(real, b, partner)| {
            let mine = mapped(b);
            let theirs = partner.map(|q| mapped(&p.points[q].1)).unwrap_or_default();
            (*real, mine, theirs)
        })
        .collect();
    sig.sort();
    sig
}

/// Whether `a` and `b` agree up to renaming of component and point ids.
pub fn isomorphic(a: &RealPlumbingGraph, b: &RealPlumbingGraph) -> bool {
    if a.components.len() != b.components.len() || a.points.len() != b.points.len() {
        return false;
    }
    let pa = prepare(a);
    let pb = prepare(b);
    let mut la = pa.labels.clone();
    let mut lb = pb.labels.clone();
    la.sort();
    lb.sort();
    if la != lb {
        return false;
    }
    let target = point_signature(&pb, &(0..b.components.len()).collect::<Vec<_>>());

    // Breadth-first order keeps already-mapped neighbours available for pruning.
    let n = a.components.len();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in 0..n {
                if !seen[w] && (pa.adj[v][w] > 0 || pa.conj[v] == w) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut by_label: HashMap<&Label, Vec<usize>> = HashMap::new();
    for (j, l) in pb.labels.iter().enumerate() {
        by_label.entry(l).or_default().push(j);
    }
    search(0, &order, &pa, &pb, &by_label, &mut map, &mut used, &target)
}

#[allow(clippy::too_many_arguments)]
fn search(
    depth: usize,
    order: &[usize],
    pa: &Prepared,
    pb: &Prepared,
    by_label: &HashMap<&Label, Vec<usize>>,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    target: &[(bool, Vec<usize>, Vec<usize>)],
) -> bool {
    if depth == order.len() {
        return point_signature(pa, map) == target;
    }
    let v = order[depth];
    let Some(candidates) = by_label.get(&pa.labels[v]) else {
        return false;
    };
    for &w in candidates {
        if used[w] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| {
            pa.adj[v][u] == pb.adj[w][map[u]] && (pa.conj[v] == u) == (pb.conj[w] == map[u])
        }) && ((pa.conj[v] == v) == (pb.conj[w] == w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if search(depth + 1, order, pa, pb, by_label, map, used, target) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::resolution::{ComponentVertex, IntersectionPoint};

    #[test]
    fn renaming_preserves_isomorphism() {
        let g = catalog::e_n(8);
        let mut h = g.clone();
        for c in h.components.iter_mut() {
            c.id = format!("x{}", c.id);
        }
        for p in h.points.iter_mut() {
            p.id = format!("y{}", p.id);
            for a in p.at.iter_mut() {
                *a = format!("x{a}");
            }
        }
        h.components.reverse();
        assert!(isomorphic(&g, &h));
    }

    #[test]
    fn different_trees_are_not_isomorphic() {
        assert!(!isomorphic(&catalog::e_n(7), &catalog::d_n(7)));
        assert!(!isomorphic(&catalog::a_n(7), &catalog::d_n(7)));
        assert!(isomorphic(&catalog::d_n(4), &catalog::d_n(4)));
    }

    #[test]
    fn weights_matter() {
        let g = RealPlumbingGraph::new(
            vec![
                ComponentVertex::real_sphere("a", -2),
                ComponentVertex::real_sphere("b", -3),
            ],
            vec![IntersectionPoint::real("p", &["a", "b"])],
        );
        let h = RealPlumbingGraph::new(
            vec![
                ComponentVertex::real_sphere("a", -2),
                ComponentVertex::real_sphere("b", -2),
            ],
            vec![IntersectionPoint::real("p", &["a", "b"])],
        );
        assert!(!isomorphic(&g, &h));
    }
}
