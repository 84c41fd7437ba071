//! Cell structure of ℝP² cut by the lines, built on the double cover S².

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{ArrangementError, LineArrangement, V3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrangementPoint {
    /// Homogeneous coordinates, primitive integers.
    pub coords: [String; 3],
    /// Indices of the lines through the point.
    pub lines: Vec<usize>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub sign: Sign,
    /// Interior sample point, homogeneous integer coordinates.
    pub sample: [String; 3],
    /// Boundary vertices (point indices) in cyclic order; a vertex may repeat.
    pub boundary: Vec<usize>,
    /// Faces of a line arrangement are open discs.
    pub orientable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellComplex {
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub points: Vec<ArrangementPoint>,
    pub faces: Vec<Face>,
    /// Pairs of faces on the two sides of each edge.
    #[serde(skip)]
    pub adjacency: Vec<(usize, usize)>,
}

impl CellComplex {
    pub fn euler(&self) -> i64 {
        self.v as i64 - self.e as i64 + self.f as i64
    }

    pub fn faces_with_sign(&self, sign: Sign) -> usize {
        self.faces.iter().filter(|f| f.sign == sign).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignRegions {
    pub signs: Vec<Sign>,
    pub plus_faces: usize,
    pub minus_faces: usize,
    /// Faces on the two sides of every edge have opposite signs.
    pub alternating: bool,
}

fn det(axis: &V3, a: &V3, b: &V3) -> BigInt {
    axis.dot(&a.cross(b))
}

/// Counter-clockwise order of directions around `axis`, starting from `reference`.
fn ccw_cmp(axis: &V3, reference: &V3, a: &V3, b: &V3) -> Ordering {
    let half = |d: &V3| {
        let s = det(axis, reference, d);
        if s.is_positive() || (s.is_zero() && reference.dot(d).is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let s = det(axis, a, b);
        if s.is_positive() {
            Ordering::Less
        } else if s.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

fn sort_ccw<T>(axis: &V3, items: &mut [(T, V3)]) {
    if items.is_empty() {
        return;
    }
    let reference = items[0].1.clone();
    items.sort_by(|x, y| ccw_cmp(axis, &reference, &x.1, &y.1));
}

struct HalfEdge {
    from: usize,
    to: usize,
    line: usize,
    forward: bool,
    twin: usize,
}

/// Cell complex of ℝP² with exact incidences and face signs.
pub fn build_cell_complex(a: &LineArrangement) -> Result<CellComplex, ArrangementError> {
    let normals = a.normals()?;
    let n = normals.len();

    // Projective points: pairwise intersections, merged.
    let mut index: HashMap<V3, usize> = HashMap::new();
    let mut reps: Vec<V3> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let key = normals[i].cross(&normals[j]).projective_key();
            if !index.contains_key(&key) {
                index.insert(key.clone(), reps.len());
                reps.push(key);
            }
        }
    }
    let points: Vec<ArrangementPoint> = reps
        .iter()
        .map(|p| {
            let lines: Vec<usize> = (0..n).filter(|&i| normals[i].dot(p).is_zero()).collect();
            ArrangementPoint {
                coords: p.to_strings(),
                multiplicity: lines.len(),
                lines,
            }
        })
        .collect();

    // Sphere vertices 2j and 2j + 1 cover point j.
    let sphere: Vec<V3> = reps.iter().flat_map(|p| [p.clone(), p.neg()]).collect();
    let antipode = |x: usize| x ^ 1;

    let mut half_edges: Vec<HalfEdge> = Vec::new();
    let mut slot: HashMap<(usize, usize, bool), usize> = HashMap::new();
    for (i, normal) in normals.iter().enumerate() {
        let mut on: Vec<(usize, V3)> = (0..sphere.len())
            .filter(|&x| points[x / 2].lines.contains(&i))
            .map(|x| (x, sphere[x].clone()))
            .collect();
        sort_ccw(normal, &mut on);
        let m = on.len();
        for (pos, (x, _)) in on.iter().enumerate() {
            for forward in [true, false] {
                let to = if forward {
                    on[(pos + 1) % m].0
                } else {
                    on[(pos + m - 1) % m].0
                };
                slot.insert((*x, i, forward), half_edges.len());
                half_edges.push(HalfEdge {
                    from: *x,
                    to,
                    line: i,
                    forward,
                    twin: usize::MAX,
                });
            }
        }
    }
    for h in 0..half_edges.len() {
        let (to, line, forward) = (half_edges[h].to, half_edges[h].line, half_edges[h].forward);
        half_edges[h].twin = slot[&(to, line, !forward)];
    }
    let tangent = |h: &HalfEdge| {
        let t = normals[h.line].cross(&sphere[h.from]);
        if h.forward {
            t
        } else {
            t.neg()
        }
    };

    // Rotation system: outgoing half-edges in counter-clockwise order seen from outside.
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); sphere.len()];
    let mut rot_pos = vec![0usize; half_edges.len()];
    for (x, rot) in rotation.iter_mut().enumerate() {
        let mut out: Vec<(usize, V3)> = (0..half_edges.len())
            .filter(|&h| half_edges[h].from == x)
            .map(|h| (h, tangent(&half_edges[h])))
            .collect();
        sort_ccw(&sphere[x], &mut out);
        for (p, (h, _)) in out.iter().enumerate() {
            rot_pos[*h] = p;
        }
        *rot = out.into_iter().map(|(h, _)| h).collect();
    }

    let next = |h: usize| {
        let t = half_edges[h].twin;
        let b = half_edges[t].from;
        let r = &rotation[b];
        r[(rot_pos[t] + r.len() - 1) % r.len()]
    };
    let mut face_of = vec![usize::MAX; half_edges.len()];
    let mut sphere_faces: Vec<Vec<usize>> = Vec::new();
    for start in 0..half_edges.len() {
        if face_of[start] != usize::MAX {
            continue;
        }
        let mut cycle = Vec::new();
        let mut h = start;
        while face_of[h] == usize::MAX {
            face_of[h] = sphere_faces.len();
            cycle.push(h);
            h = next(h);
        }
        if h != start {
            return Err(ArrangementError::Internal(
                "face traversal did not close".into(),
            ));
        }
        sphere_faces.push(cycle);
    }
    let sphere_euler =
        sphere.len() as i64 - (half_edges.len() / 2) as i64 + sphere_faces.len() as i64;
    if sphere_euler != 2 {
        return Err(ArrangementError::Internal(format!(
            "sphere subdivision has euler characteristic {sphere_euler}"
        )));
    }

    // Interior points: edge interiors summed around each face.
    let edge_interior = |h: &HalfEdge| {
        if h.to == antipode(h.from) {
            tangent(h)
        } else {
            sphere[h.from].add(&sphere[h.to])
        }
    };
    let mut samples: Vec<V3> = Vec::with_capacity(sphere_faces.len());
    for cycle in &sphere_faces {
        let mut s = V3::from_i64([0, 0, 0]);
        for &h in cycle {
            s = s.add(&edge_interior(&half_edges[h]));
        }
        let s = s.primitive();
        if s.is_zero() || normals.iter().any(|l| l.dot(&s).is_zero()) {
            return Err(ArrangementError::Internal(
                "face sample point landed on a line".into(),
            ));
        }
        samples.push(s);
    }

    // Antipodal faces form one face of ℝP².
    let by_sample: HashMap<&V3, usize> = samples.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut projective = vec![usize::MAX; sphere_faces.len()];
    let mut faces: Vec<Face> = Vec::new();
    for f in 0..sphere_faces.len() {
        if projective[f] != usize::MAX {
            continue;
        }
        let g = *by_sample
            .get(&samples[f].neg())
            .ok_or_else(|| ArrangementError::Internal("face without antipodal partner".into()))?;
        if g == f {
            return Err(ArrangementError::Internal("self-antipodal face".into()));
        }
        projective[f] = faces.len();
        projective[g] = faces.len();
        let negatives = normals
            .iter()
            .filter(|l| l.dot(&samples[f]).is_negative())
            .count();
        faces.push(Face {
            sign: if negatives % 2 == 0 {
                Sign::Plus
            } else {
                Sign::Minus
            },
            sample: samples[f].to_strings(),
            boundary: sphere_faces[f]
                .iter()
                .map(|&h| half_edges[h].from / 2)
                .collect(),
            orientable: true,
        });
    }

    let mut adjacency = Vec::new();
    for (h, he) in half_edges.iter().enumerate() {
        // One representative per projective edge: forward half-edge from the even lift.
        if he.forward && he.from % 2 == 0 {
            adjacency.push((projective[face_of[h]], projective[face_of[he.twin]]));
        }
    }

    let complex = CellComplex {
        v: points.len(),
        e: half_edges.len() / 4,
        f: faces.len(),
        points,
        faces,
        adjacency,
    };
    if complex.euler() != 1 {
        return Err(ArrangementError::Internal(format!(
            "V - E + F = {} on the projective plane",
            complex.euler()
        )));
    }
    Ok(complex)
}

pub fn sign_regions(a: &LineArrangement) -> Result<SignRegions, ArrangementError> {
    let c = build_cell_complex(a)?;
    Ok(sign_regions_of(&c))
}

pub(crate) fn sign_regions_of(c: &CellComplex) -> SignRegions {
    SignRegions {
        signs: c.faces.iter().map(|f| f.sign).collect(),
        plus_faces: c.faces_with_sign(Sign::Plus),
        minus_faces: c.faces_with_sign(Sign::Minus),
        alternating: c
            .adjacency
            .iter()
            .all(|&(x, y)| c.faces[x].sign != c.faces[y].sign),
    }
}
