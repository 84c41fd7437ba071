//! Equivariant blow-ups and blow-downs.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{
    ComponentReality, ComponentVertex, FreshIds, IntersectionPoint, PointReality,
    RealPlumbingGraph, SelfNode, Violation,
};

/// Where to blow up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlowUpLocus {
    /// A generic real point of a `real+` component.
    RealPointOn(String),
    /// A generic pair of conjugate imaginary points, one on the component and
    /// one on its conjugate (the same component when it is real).
    ConjPairOn(String),
    /// An intersection point; an imaginary point is blown up together with its conjugate.
    IntersectionPoint(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurgeryError {
    #[error("graph is not well formed: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidGraph(Vec<Violation>),
    #[error("unknown component {0:?}")]
    UnknownComponent(String),
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("component {0:?} has no real points to blow up")]
    NoRealPoints(String),
    #[error("component {id:?} has self-intersection {euler}, not -1")]
    NotExceptional { id: String, euler: i64 },
    #[error("component {0:?} has positive genus")]
    PositiveGenus(String),
    #[error("component {0:?} has self-nodes")]
    HasSelfNodes(String),
    #[error("component {id:?} meets {count} points; at most 2 allowed")]
    TooManyPoints { id: String, count: usize },
    #[error("point {point:?} on component {id:?} is not a simple crossing of two components")]
    NonSimplePoint { id: String, point: String },
    #[error("conjugate components {0:?} and {1:?} meet each other")]
    ConjugatesMeet(String, String),
}

fn checked(g: &RealPlumbingGraph) -> Result<(), SurgeryError> {
    let v = g.validate();
    if v.is_empty() {
        Ok(())
    } else {
        Err(SurgeryError::InvalidGraph(v))
    }
}

fn exceptional(id: String, reality: ComponentReality) -> ComponentVertex {
    ComponentVertex {
        id,
        genus: 0,
        euler: -1,
        reality,
        self_nodes: Vec::new(),
    }
}

fn paired(a: &str) -> ComponentReality {
    ComponentReality::ImaginaryPairedWith(a.to_string())
}

fn paired_point(id: String, at: [&str; 2], partner: &str) -> IntersectionPoint {
    IntersectionPoint {
        id,
        at: at.iter().map(|s| s.to_string()).collect(),
        reality: PointReality::ImaginaryPairedWith(partner.to_string()),
    }
}

fn real_point(id: String, at: [&str; 2]) -> IntersectionPoint {
    IntersectionPoint {
        id,
        at: at.iter().map(|s| s.to_string()).collect(),
        reality: PointReality::RealPoint,
    }
}

/// Blow up the surface at `locus`, returning the new graph.
///
/// New components and points are appended and named `bN`. A component passing
/// through the centre with `m` branches loses `m²` from its self-intersection.
pub fn blow_up(
    g: &RealPlumbingGraph,
    locus: &BlowUpLocus,
) -> Result<RealPlumbingGraph, SurgeryError> {
    checked(g)?;
    let mut out = g.clone();
    let mut ids = FreshIds::for_graph(g);
    match locus {
        BlowUpLocus::RealPointOn(c) => {
            let ci = g
                .component_index(c)
                .ok_or_else(|| SurgeryError::UnknownComponent(c.clone()))?;
            if g.components[ci].reality != ComponentReality::RealWithRealPoints {
                return Err(SurgeryError::NoRealPoints(c.clone()));
            }
            let e = ids.fresh();
            let p = ids.fresh();
            out.components[ci].euler -= 1;
            out.components
                .push(exceptional(e.clone(), ComponentReality::RealWithRealPoints));
            out.points.push(real_point(p, [c, &e]));
        }
        BlowUpLocus::ConjPairOn(c) => {
            let ci = g
                .component_index(c)
                .ok_or_else(|| SurgeryError::UnknownComponent(c.clone()))?;
            let d = g.components[g.component_conj()[ci]].id.clone();
            let (e1, e2, p1, p2) = (ids.fresh(), ids.fresh(), ids.fresh(), ids.fresh());
            out.components[ci].euler -= 1;
            let di = out.component_index(&d).unwrap();
            out.components[di].euler -= 1;
            out.components.push(exceptional(e1.clone(), paired(&e2)));
            out.components.push(exceptional(e2.clone(), paired(&e1)));
            out.points.push(paired_point(p1.clone(), [c, &e1], &p2));
            out.points.push(paired_point(p2, [&d, &e2], &p1));
        }
        BlowUpLocus::IntersectionPoint(p) => {
            let pi = g
                .point_index(p)
                .ok_or_else(|| SurgeryError::UnknownPoint(p.clone()))?;
            let qi = g.point_conj()[pi];
            let comp_conj = g.component_conj();
            let lookup = g.component_lookup();
            let point = &g.points[pi];

            let centres = if qi == pi { vec![pi] } else { vec![pi, qi] };
            // A component through both p and its conjugate loses m² at each.
            let mut decrement: HashMap<&str, i64> = HashMap::new();
            for &centre in &centres {
                let mut local: HashMap<&str, i64> = HashMap::new();
                for id in &g.points[centre].at {
                    *local.entry(id.as_str()).or_insert(0) += 1;
                }
                for (id, m) in local {
                    *decrement.entry(id).or_insert(0) += m * m;
                }
            }
            for c in out.components.iter_mut() {
                if let Some(d) = decrement.get(c.id.as_str()) {
                    c.euler -= d;
                }
            }

            if qi == pi {
                let e = ids.fresh();
                out.components
                    .push(exceptional(e.clone(), ComponentReality::RealWithRealPoints));
                // The j-th branch on c is conjugate to the j-th branch on σ(c).
                let branches: Vec<usize> = point.at.iter().map(|id| lookup[id.as_str()]).collect();
                let mut slots_of: HashMap<usize, Vec<usize>> = HashMap::new();
                for (slot, &ci) in branches.iter().enumerate() {
                    slots_of.entry(ci).or_default().push(slot);
                }
                let partner_slot: Vec<usize> = branches
                    .iter()
                    .enumerate()
                    .map(|(slot, &ci)| {
                        let j = slots_of[&ci].iter().position(|&s| s == slot).unwrap();
                        slots_of[&comp_conj[ci]][j]
                    })
                    .collect();
                let names: Vec<String> = branches.iter().map(|_| ids.fresh()).collect();
                for (slot, &ci) in branches.iter().enumerate() {
                    let at = [g.components[ci].id.as_str(), e.as_str()];
                    let other = partner_slot[slot];
                    out.points.push(if other == slot {
                        real_point(names[slot].clone(), at)
                    } else {
                        paired_point(names[slot].clone(), at, &names[other])
                    });
                }
                out.points.remove(pi);
            } else {
                let (ep, eq) = (ids.fresh(), ids.fresh());
                out.components.push(exceptional(ep.clone(), paired(&eq)));
                out.components.push(exceptional(eq.clone(), paired(&ep)));
                let q = &g.points[qi];
                let pb: Vec<usize> = point.at.iter().map(|id| lookup[id.as_str()]).collect();
                let qb: Vec<usize> = q.at.iter().map(|id| lookup[id.as_str()]).collect();
                let mut used = vec![false; qb.len()];
                for &ci in &pb {
                    let target = comp_conj[ci];
                    let k = (0..qb.len())
                        .find(|&k| !used[k] && qb[k] == target)
                        .expect("validated conjugate incidence");
                    used[k] = true;
                    let (a, b) = (ids.fresh(), ids.fresh());
                    out.points
                        .push(paired_point(a.clone(), [&g.components[ci].id, &ep], &b));
                    out.points
                        .push(paired_point(b, [&g.components[qb[k]].id, &eq], &a));
                }
                let (hi, lo) = if pi > qi { (pi, qi) } else { (qi, pi) };
                out.points.remove(hi);
                out.points.remove(lo);
            }
        }
    }
    debug_assert!(out.is_valid(), "{:?}", out.validate());
    Ok(out)
}

/// Blow down a rational (−1)-component (with its conjugate, if imaginary).
///
/// Each neighbour meeting the removed component in `m` points gains `m²`.
/// Two points on the same neighbour merge into a node of that neighbour.
pub fn blow_down(g: &RealPlumbingGraph, id: &str) -> Result<RealPlumbingGraph, SurgeryError> {
    checked(g)?;
    let ei = g
        .component_index(id)
        .ok_or_else(|| SurgeryError::UnknownComponent(id.to_string()))?;
    let comp_conj = g.component_conj();
    let fi = comp_conj[ei];
    let targets: Vec<usize> = if fi == ei { vec![ei] } else { vec![ei, fi] };

    let mut incident: Vec<Vec<usize>> = Vec::new();
    for &x in &targets {
        let c = &g.components[x];
        if c.genus > 0 {
            return Err(SurgeryError::PositiveGenus(c.id.clone()));
        }
        if c.euler != -1 {
            return Err(SurgeryError::NotExceptional {
                id: c.id.clone(),
                euler: c.euler,
            });
        }
        if !c.self_nodes.is_empty() {
            return Err(SurgeryError::HasSelfNodes(c.id.clone()));
        }
        let pts: Vec<usize> = (0..g.points.len())
            .filter(|&p| g.points[p].at.contains(&c.id))
            .collect();
        if pts.len() > 2 {
            return Err(SurgeryError::TooManyPoints {
                id: c.id.clone(),
                count: pts.len(),
            });
        }
        for &p in &pts {
            if !g.points[p].is_simple() {
                return Err(SurgeryError::NonSimplePoint {
                    id: c.id.clone(),
                    point: g.points[p].id.clone(),
                });
            }
        }
        incident.push(pts);
    }
    if fi != ei {
        let (e, f) = (&g.components[ei].id, &g.components[fi].id);
        if incident[0].iter().any(|&p| g.points[p].at.contains(f)) {
            return Err(SurgeryError::ConjugatesMeet(e.clone(), f.clone()));
        }
    }

    let mut out = g.clone();
    let mut ids = FreshIds::for_graph(g);
    let neighbour = |x: usize, p: usize| -> String {
        let me = &g.components[x].id;
        g.points[p].at.iter().find(|s| *s != me).unwrap().clone()
    };

    let mut increments: HashMap<String, i64> = HashMap::new();
    for (k, &x) in targets.iter().enumerate() {
        let mut local: HashMap<String, i64> = HashMap::new();
        for &p in &incident[k] {
            *local.entry(neighbour(x, p)).or_insert(0) += 1;
        }
        for (n, m) in local {
            *increments.entry(n).or_insert(0) += m * m;
        }
    }
    for c in out.components.iter_mut() {
        if let Some(d) = increments.get(&c.id) {
            c.euler += d;
        }
    }

    let mut new_points: Vec<IntersectionPoint> = Vec::new();
    let mut new_self_nodes: Vec<(String, SelfNode)> = Vec::new();
    if fi == ei {
        if let [p1, p2] = incident[0][..] {
            let (a, b) = (neighbour(ei, p1), neighbour(ei, p2));
            let imaginary_pair = !g.points[p1].reality.is_real();
            if imaginary_pair && a == b {
                new_self_nodes.push((a, SelfNode::ConjPair));
            } else {
                new_points.push(real_point(ids.fresh(), [&a, &b]));
            }
        }
    } else if let [p1, p2] = incident[0][..] {
        let (a, b) = (neighbour(ei, p1), neighbour(ei, p2));
        let fp: Vec<usize> = incident[1].clone();
        let (c, d) = (neighbour(fi, fp[0]), neighbour(fi, fp[1]));
        let (n1, n2) = (ids.fresh(), ids.fresh());
        new_points.push(paired_point(n1.clone(), [&a, &b], &n2));
        new_points.push(paired_point(n2, [&c, &d], &n1));
    }

    let doomed_points: Vec<usize> = incident.iter().flatten().copied().collect();
    let doomed_ids: Vec<String> = targets
        .iter()
        .map(|&x| g.components[x].id.clone())
        .collect();
    out.points = out
        .points
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !doomed_points.contains(i))
        .map(|(_, p)| p)
        .collect();
    out.points.extend(new_points);
    out.components.retain(|c| !doomed_ids.contains(&c.id));
    for (comp, node) in new_self_nodes {
        if let Some(c) = out.components.iter_mut().find(|c| c.id == comp) {
            c.self_nodes.push(node);
        }
    }
    debug_assert!(out.is_valid(), "{:?}", out.validate());
    Ok(out)
}
