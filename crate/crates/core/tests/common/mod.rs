#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use realquot::arrangement::{Coefficient, LineArrangement, Region};
use realquot::ledger::{A3MinusDirection, A3PlusDirection, DeformationEvent, QuotientLedger, Side};
use realquot::resolution::{
    BlowUpLocus, ComponentReality, ComponentVertex, IntersectionPoint, RealPlumbingGraph, SelfNode,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Decoration of one conjugation orbit of components.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Deco {
    Real {
        plus: bool,
        genus: u32,
        self_node: Option<SelfNode>,
    },
    Imag {
        genus: u32,
    },
}

impl Deco {
    pub fn size(self) -> usize {
        match self {
            Deco::Real { .. } => 1,
            Deco::Imag { .. } => 2,
        }
    }

    fn is_plus(self) -> bool {
        matches!(self, Deco::Real { plus: true, .. })
    }
}

/// Kind of point orbit between two component orbits (or on one).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlotKind {
    /// Real crossing of two real+ components.
    RrReal,
    /// Conjugate pair of crossings of two real components.
    RrPair,
    /// Real x meets imaginary y and ȳ at conjugate points.
    Ri,
    /// x ∩ y paired with x̄ ∩ ȳ.
    IiSame,
    /// x ∩ ȳ paired with x̄ ∩ y.
    IiCross,
    /// Real crossing of x and x̄.
    IReal,
    /// Conjugate pair of crossings of x and x̄.
    IPair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slot {
    pub kind: SlotKind,
    pub x: usize,
    pub y: usize,
}

pub fn slots(decos: &[Deco], kinds: &[SlotKind]) -> Vec<Slot> {
    let mut out = Vec::new();
    let mut push = |kind: SlotKind, x: usize, y: usize| {
        if kinds.contains(&kind) {
            out.push(Slot { kind, x, y });
        }
    };
    for x in 0..decos.len() {
        if let Deco::Imag { .. } = decos[x] {
            push(SlotKind::IReal, x, x);
            push(SlotKind::IPair, x, x);
        }
        for y in x + 1..decos.len() {
            match (decos[x], decos[y]) {
                (Deco::Real { .. }, Deco::Real { .. }) => {
                    if decos[x].is_plus() && decos[y].is_plus() {
                        push(SlotKind::RrReal, x, y);
                    }
                    push(SlotKind::RrPair, x, y);
                }
                (Deco::Real { .. }, Deco::Imag { .. }) => push(SlotKind::Ri, x, y),
                (Deco::Imag { .. }, Deco::Real { .. }) => push(SlotKind::Ri, y, x),
                (Deco::Imag { .. }, Deco::Imag { .. }) => {
                    push(SlotKind::IiSame, x, y);
                    push(SlotKind::IiCross, x, y);
                }
            }
        }
    }
    out
}

fn ids(decos: &[Deco]) -> Vec<(String, String)> {
    decos
        .iter()
        .enumerate()
        .map(|(i, _)| (format!("c{i}"), format!("c{i}b")))
        .collect()
}

/// Graph with `counts[s]` point orbits in slot `s`; every component has weight `euler`.
pub fn build(
    decos: &[Deco],
    slots: &[Slot],
    counts: &[u32],
    euler: &dyn Fn(usize) -> i64,
) -> RealPlumbingGraph {
    let names = ids(decos);
    let mut components = Vec::new();
    for (i, d) in decos.iter().enumerate() {
        let (a, b) = &names[i];
        match *d {
            Deco::Real {
                plus,
                genus,
                self_node,
            } => {
                let reality = if plus {
                    ComponentReality::RealWithRealPoints
                } else {
                    ComponentReality::RealWithoutRealPoints
                };
                let mut c = ComponentVertex::new(a.clone(), genus, euler(i), reality);
                c.self_nodes.extend(self_node);
                components.push(c);
            }
            Deco::Imag { genus } => {
                components.push(ComponentVertex::new(
                    a.clone(),
                    genus,
                    euler(i),
                    ComponentReality::ImaginaryPairedWith(b.clone()),
                ));
                components.push(ComponentVertex::new(
                    b.clone(),
                    genus,
                    euler(i),
                    ComponentReality::ImaginaryPairedWith(a.clone()),
                ));
            }
        }
    }
    let mut points = Vec::new();
    let mut n = 0usize;
    let mut fresh = || {
        n += 1;
        format!("p{n}")
    };
    for (slot, &count) in slots.iter().zip(counts) {
        let (x, xb) = (&names[slot.x].0, &names[slot.x].1);
        let (y, yb) = (&names[slot.y].0, &names[slot.y].1);
        for _ in 0..count {
            let (p, q) = (fresh(), fresh());
            match slot.kind {
                SlotKind::RrReal => points.push(IntersectionPoint::real(p, &[x, y])),
                SlotKind::RrPair => {
                    points.push(IntersectionPoint::paired(p.clone(), &[x, y], q.clone()));
                    points.push(IntersectionPoint::paired(q, &[x, y], p));
                }
                SlotKind::Ri => {
                    points.push(IntersectionPoint::paired(p.clone(), &[x, y], q.clone()));
                    points.push(IntersectionPoint::paired(q, &[x, yb], p));
                }
                SlotKind::IiSame => {
                    points.push(IntersectionPoint::paired(p.clone(), &[x, y], q.clone()));
                    points.push(IntersectionPoint::paired(q, &[xb, yb], p));
                }
                SlotKind::IiCross => {
                    points.push(IntersectionPoint::paired(p.clone(), &[x, yb], q.clone()));
                    points.push(IntersectionPoint::paired(q, &[xb, y], p));
                }
                SlotKind::IReal => points.push(IntersectionPoint::real(p, &[x, xb])),
                SlotKind::IPair => {
                    points.push(IntersectionPoint::paired(p.clone(), &[x, xb], q.clone()));
                    points.push(IntersectionPoint::paired(q, &[x, xb], p));
                }
            }
        }
    }
    RealPlumbingGraph::new(components, points)
}

pub const ALL_KINDS: [SlotKind; 7] = [
    SlotKind::RrReal,
    SlotKind::RrPair,
    SlotKind::Ri,
    SlotKind::IiSame,
    SlotKind::IiCross,
    SlotKind::IReal,
    SlotKind::IPair,
];

/// One layer of the exhaustive universe: all graphs with `n` components whose
/// orbits carry decorations from `decos` and whose slots hold at most `max_mult` point orbits.
pub struct Layer {
    pub n: usize,
    pub decos: Vec<Deco>,
    pub max_mult: u32,
    pub kinds: Vec<SlotKind>,
}

fn real_decos(plus: &[bool], genera: &[u32], self_nodes: &[Option<SelfNode>]) -> Vec<Deco> {
    let mut out = Vec::new();
    for &p in plus {
        for &g in genera {
            for &s in self_nodes {
                out.push(Deco::Real {
                    plus: p,
                    genus: g,
                    self_node: s,
                });
            }
        }
    }
    out
}

/// Valid graphs with at most five components, in three layers of decreasing decoration richness.
pub fn universe() -> Vec<Layer> {
    let selfs = [None, Some(SelfNode::Real), Some(SelfNode::ConjPair)];
    let mut full = real_decos(&[true, false], &[0, 1], &selfs);
    full.extend([Deco::Imag { genus: 0 }, Deco::Imag { genus: 1 }]);
    let mut four = real_decos(&[true], &[0], &[None, Some(SelfNode::ConjPair)]);
    four.extend(real_decos(&[false], &[0], &[None]));
    four.extend(real_decos(&[true], &[1], &[None]));
    four.push(Deco::Imag { genus: 0 });
    let mut five = real_decos(&[true, false], &[0], &[None]);
    five.push(Deco::Imag { genus: 0 });
    let mut layers: Vec<Layer> = (1..=3)
        .map(|n| Layer {
            n,
            decos: full.clone(),
            max_mult: 2,
            kinds: ALL_KINDS.to_vec(),
        })
        .collect();
    layers.push(Layer {
        n: 4,
        decos: four,
        max_mult: 1,
        kinds: ALL_KINDS.to_vec(),
    });
    layers.push(Layer {
        n: 5,
        decos: five,
        max_mult: 1,
        kinds: ALL_KINDS
            .iter()
            .copied()
            .filter(|k| *k != SlotKind::RrPair)
            .collect(),
    });
    layers
}

/// Multisets of decorations with total component count `n`, as non-decreasing index sequences.
fn deco_multisets(decos: &[Deco], n: usize) -> Vec<Vec<Deco>> {
    fn go(
        decos: &[Deco],
        start: usize,
        left: usize,
        cur: &mut Vec<Deco>,
        out: &mut Vec<Vec<Deco>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..decos.len() {
            if decos[i].size() <= left {
                cur.push(decos[i]);
                go(decos, i, left - decos[i].size(), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(decos, 0, n, &mut Vec::new(), &mut out);
    out
}

pub fn for_each_in_layer(layer: &Layer, mut visit: impl FnMut(&RealPlumbingGraph)) {
    for decos in deco_multisets(&layer.decos, layer.n) {
        let s = slots(&decos, &layer.kinds);
        let mut counts = vec![0u32; s.len()];
        loop {
            visit(&build(&decos, &s, &counts, &|_| -2));
            let mut i = 0;
            while i < counts.len() && counts[i] == layer.max_mult {
                counts[i] = 0;
                i += 1;
            }
            if i == counts.len() {
                break;
            }
            counts[i] += 1;
        }
    }
}

/// A larger graph: random orbits joined by a random spanning tree of slots, plus occasional extra slots.
pub fn random_graph(rng: &mut ChaCha8Rng, min: usize, max: usize) -> RealPlumbingGraph {
    let target = rng.gen_range(min..=max);
    let mut decos = Vec::new();
    let mut size = 0;
    while size < target {
        let d = if target - size >= 2 && rng.gen_bool(0.15) {
            Deco::Imag {
                genus: u32::from(rng.gen_bool(0.1)),
            }
        } else {
            let self_node = match rng.gen_range(0..20) {
                0 => Some(SelfNode::Real),
                1 => Some(SelfNode::ConjPair),
                _ => None,
            };
            Deco::Real {
                plus: !rng.gen_bool(0.1),
                genus: u32::from(rng.gen_bool(0.08)),
                self_node,
            }
        };
        size += d.size();
        decos.push(d);
    }
    let all = slots(&decos, &ALL_KINDS);
    let mut counts = vec![0u32; all.len()];
    for y in 1..decos.len() {
        let x = rng.gen_range(0..y);
        let options: Vec<usize> = (0..all.len())
            .filter(|&s| (all[s].x, all[s].y) == (x, y) || (all[s].x, all[s].y) == (y, x))
            .filter(|&s| all[s].kind != SlotKind::RrPair || rng.gen_bool(0.3))
            .collect();
        let pick = match options.choose(rng) {
            Some(&s) => s,
            None => (0..all.len())
                .find(|&s| (all[s].x, all[s].y) == (x, y) || (all[s].x, all[s].y) == (y, x))
                .expect("every pair of orbits has a slot"),
        };
        counts[pick] += 1;
    }
    for c in counts.iter_mut() {
        if rng.gen_bool(0.04) {
            *c += 1;
        }
    }
    build(&decos, &all, &counts, &|_| -2)
}

/// An SF-shaped tree of real+ spheres with conjugate self-nodes, then at most one defect.
pub fn random_near_sf(rng: &mut ChaCha8Rng, min: usize, max: usize) -> RealPlumbingGraph {
    let n = rng.gen_range(min..=max);
    let mut decos: Vec<Deco> = (0..n)
        .map(|_| Deco::Real {
            plus: true,
            genus: 0,
            self_node: if rng.gen_bool(0.2) {
                Some(SelfNode::ConjPair)
            } else {
                None
            },
        })
        .collect();
    let defect = rng.gen_range(0..8);
    let victim = rng.gen_range(0..n);
    match defect {
        0 => {
            decos[victim] = Deco::Real {
                plus: false,
                genus: 0,
                self_node: None,
            }
        }
        1 => {
            decos[victim] = Deco::Real {
                plus: true,
                genus: 1,
                self_node: None,
            }
        }
        2 => {
            decos[victim] = Deco::Real {
                plus: true,
                genus: 0,
                self_node: Some(SelfNode::Real),
            }
        }
        3 if victim > 0 => decos[victim] = Deco::Imag { genus: 0 },
        _ => {}
    }
    let all = slots(&decos, &ALL_KINDS);
    let mut counts = vec![0u32; all.len()];
    let find = |kinds: &[SlotKind], x: usize, y: usize| {
        all.iter()
            .position(|s| kinds.contains(&s.kind) && ((s.x, s.y) == (x, y) || (s.x, s.y) == (y, x)))
    };
    for y in 1..n {
        let x = rng.gen_range(0..y);
        let s = find(&[SlotKind::RrReal], x, y)
            .or_else(|| find(&[SlotKind::Ri, SlotKind::IiSame], x, y))
            .or_else(|| find(&[SlotKind::RrPair], x, y))
            .expect("a slot joins any two orbits");
        counts[s] += 1;
    }
    match defect {
        // Close a cycle of the quotient graph.
        4 if n > 2 => {
            let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if x != y {
                if let Some(s) = find(&[SlotKind::RrReal], x, y) {
                    counts[s] += 1;
                }
            }
        }
        // Split off a piece.
        5 if n > 1 => {
            if let Some(s) = counts.iter().position(|&c| c > 0) {
                counts[s] -= 1;
            }
        }
        _ => {}
    }
    build(&decos, &all, &counts, &|_| -2)
}

/// Good tree of spheres: real components with some conjugate pairs hanging off them.
pub fn random_good_tree(rng: &mut ChaCha8Rng, max_orbits: usize) -> RealPlumbingGraph {
    let n = rng.gen_range(1..=max_orbits);
    let mut decos = vec![Deco::Real {
        plus: true,
        genus: 0,
        self_node: None,
    }];
    for _ in 1..n {
        decos.push(if rng.gen_bool(0.2) {
            Deco::Imag { genus: 0 }
        } else {
            Deco::Real {
                plus: true,
                genus: 0,
                self_node: None,
            }
        });
    }
    let all = slots(&decos, &ALL_KINDS);
    let mut counts = vec![0u32; all.len()];
    for y in 1..decos.len() {
        // Attach to a real orbit by a single orbit of crossings so that Γ stays a tree.
        let reals: Vec<usize> = (0..y)
            .filter(|&x| matches!(decos[x], Deco::Real { .. }))
            .collect();
        let x = *reals.choose(rng).expect("orbit 0 is real");
        let kind = if let Deco::Imag { .. } = decos[y] {
            SlotKind::Ri
        } else {
            SlotKind::RrReal
        };
        let s = all
            .iter()
            .position(|s| s.kind == kind && (s.x, s.y) == (x, y))
            .expect("slot exists");
        counts[s] += 1;
    }
    let weights: Vec<i64> = (0..decos.len()).map(|_| -rng.gen_range(2..=5)).collect();
    build(&decos, &all, &counts, &|i| weights[i])
}

pub fn random_locus(rng: &mut ChaCha8Rng, g: &RealPlumbingGraph) -> BlowUpLocus {
    loop {
        match rng.gen_range(0..3) {
            0 => {
                let plus: Vec<&ComponentVertex> = g
                    .components
                    .iter()
                    .filter(|c| c.reality == ComponentReality::RealWithRealPoints)
                    .collect();
                if let Some(c) = plus.choose(rng) {
                    return BlowUpLocus::RealPointOn(c.id.clone());
                }
            }
            1 => {
                return BlowUpLocus::ConjPairOn(
                    g.components.choose(rng).expect("nonempty").id.clone(),
                )
            }
            _ => {
                if let Some(p) = g.points.choose(rng) {
                    return BlowUpLocus::IntersectionPoint(p.id.clone());
                }
            }
        }
    }
}

pub fn random_ledger(rng: &mut ChaCha8Rng) -> QuotientLedger {
    QuotientLedger {
        cp2: rng.gen_range(0..6),
        conj_cp2: rng.gen_range(-4..8),
        s2xs2: rng.gen_range(0..4),
        s1xs3: rng.gen_range(0..3),
        node_count: rng.gen_range(0..3),
        ..QuotientLedger::pristine()
    }
}

/// Random event stream with no dot-like node that never resolves a missing node.
pub fn random_nice_stream(
    rng: &mut ChaCha8Rng,
    start_nodes: u64,
    len: usize,
) -> Vec<DeformationEvent> {
    use DeformationEvent::*;
    let mut nodes = start_nodes as i64;
    let mut out = Vec::with_capacity(len);
    while out.len() < len {
        let e = match rng.gen_range(0..9) {
            0 => RealCurveNode {
                side: Side::Preserve,
            },
            1 => RealCurveNode { side: Side::BlowUp },
            2 => A3Plus {
                direction: A3PlusDirection::CreateNode,
            },
            3 => A3Plus {
                direction: A3PlusDirection::ResolveNode,
            },
            4 => A3Minus {
                direction: A3MinusDirection::IntoNodal,
            },
            5 => A3Minus {
                direction: A3MinusDirection::OutOfNodal,
            },
            6 => ResolveNode {},
            7 => CreateNode {},
            _ => BlowUpAtSf {},
        };
        if nodes + e.node_delta() < 0 {
            continue;
        }
        nodes += e.node_delta();
        out.push(e);
    }
    out
}

/// Random arrangement of 2k lines with small coefficients, some rational; coincidences are frequent.
pub fn random_arrangement(rng: &mut ChaCha8Rng, k: u32) -> LineArrangement {
    let mut lines: Vec<[i64; 3]> = Vec::new();
    let mut coeffs: Vec<[Coefficient; 3]> = Vec::new();
    while lines.len() < 2 * k as usize {
        let l = [0, 1, 2].map(|_| rng.gen_range(-3i64..=3));
        if l == [0, 0, 0] || lines.iter().any(|m| cross_zero(m, &l)) {
            continue;
        }
        let den = if rng.gen_bool(0.3) {
            rng.gen_range(2i64..=5)
        } else {
            1
        };
        coeffs.push(l.map(|c| {
            let s = if den == 1 {
                c.to_string()
            } else {
                format!("{c}/{den}")
            };
            serde_json::from_value::<Coefficient>(serde_json::Value::String(s))
                .expect("valid rational")
        }));
        lines.push(l);
    }
    let region = if rng.gen_bool(0.5) {
        Region::Plus
    } else {
        Region::Minus
    };
    LineArrangement {
        k,
        lines: coeffs,
        region,
    }
}

fn cross_zero(a: &[i64; 3], b: &[i64; 3]) -> bool {
    a[1] * b[2] - a[2] * b[1] == 0
        && a[2] * b[0] - a[0] * b[2] == 0
        && a[0] * b[1] - a[1] * b[0] == 0
}

/// Integer normals of an arrangement built by [`random_arrangement`] or from integers.
pub fn integer_normals(a: &LineArrangement) -> Vec<[i64; 3]> {
    a.lines
        .iter()
        .map(|l| {
            let den: i64 = l
                .iter()
                .map(|c| i64::try_from(c.0.denom().clone()).expect("small"))
                .product();
            l.clone().map(|c| {
                i64::try_from(
                    (c.0 * num_rational::BigRational::from_integer(den.into())).to_integer(),
                )
                .expect("small")
            })
        })
        .collect()
}

/// Cell counts of the projective arrangement from incidences alone.
///
/// Points are found by merging pairs of lines that share a point (a vanishing
/// 3×3 determinant), and faces come from Zaslavsky's count for a central
/// arrangement of planes in ℝ³, halved.
pub fn incidence_counts(normals: &[[i64; 3]]) -> (usize, usize, usize) {
    let n = normals.len();
    let det = |a: &[i64; 3], b: &[i64; 3], c: &[i64; 3]| {
        a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0])
    };
    let mut points: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if points.iter().any(|p| p.contains(&i) && p.contains(&j)) {
                continue;
            }
            let through: Vec<usize> = (0..n)
                .filter(|&l| l == i || l == j || det(&normals[i], &normals[j], &normals[l]) == 0)
                .collect();
            points.push(through);
        }
    }
    let v = points.len();
    let e: usize = points.iter().map(Vec::len).sum();
    let f = 1 + points.iter().map(|p| p.len() - 1).sum::<usize>();
    (v, e, f)
}
