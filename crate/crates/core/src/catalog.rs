//! Standard resolution graphs: nodes and the real forms Aₙ⁻, Dₙ⁻, Eₙ⁻.
//!
//! The "minus" real forms are modelled as the Dynkin tree of rational
//! (−2)-curves, every component real with real points and every crossing real.

use crate::resolution::{ComponentReality, ComponentVertex, IntersectionPoint, RealPlumbingGraph};

fn tree(n: usize, edges: &[(usize, usize)]) -> RealPlumbingGraph {
    let components = (1..=n)
        .map(|i| ComponentVertex::real_sphere(format!("e{i}"), -2))
        .collect();
    let points = edges
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| {
            IntersectionPoint::real(format!("p{}", k + 1), &[&format!("e{a}"), &format!("e{b}")])
        })
        .collect();
    RealPlumbingGraph::new(components, points)
}

/// Cone-like node x² + y² − z² = 0: one real (−2)-sphere with real points.
pub fn cone_like_node() -> RealPlumbingGraph {
    RealPlumbingGraph::new(vec![ComponentVertex::real_sphere("e1", -2)], vec![])
}

/// Dot-like node x² + y² + z² = 0: one real (−2)-sphere without real points.
pub fn dot_like_node() -> RealPlumbingGraph {
    RealPlumbingGraph::new(
        vec![ComponentVertex::new(
            "e1",
            0,
            -2,
            ComponentReality::RealWithoutRealPoints,
        )],
        vec![],
    )
}

/// Linear chain e1 - e2 - … - en.
pub fn a_n(n: usize) -> RealPlumbingGraph {
    assert!(n >= 1);
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
    tree(n, &edges)
}

/// Chain e1 - … - e(n−2) with two leaves e(n−1), en on e(n−2).
pub fn d_n(n: usize) -> RealPlumbingGraph {
    assert!(n >= 4);
    let mut edges: Vec<(usize, usize)> = (1..n - 2).map(|i| (i, i + 1)).collect();
    edges.push((n - 2, n - 1));
    edges.push((n - 2, n));
    tree(n, &edges)
}

/// Chain e1 - … - e(n−1) with the leaf en on e3.
pub fn e_n(n: usize) -> RealPlumbingGraph {
    assert!((6..=8).contains(&n));
    let mut edges: Vec<(usize, usize)> = (1..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((3, n));
    tree(n, &edges)
}

/// Chain with the given self-intersections, ids `e1..en`.
pub fn chain(weights: &[i64]) -> RealPlumbingGraph {
    let mut g = a_n(weights.len().max(1));
    if weights.is_empty() {
        return RealPlumbingGraph::default();
    }
    for (c, &w) in g.components.iter_mut().zip(weights) {
        c.euler = w;
    }
    g
}
