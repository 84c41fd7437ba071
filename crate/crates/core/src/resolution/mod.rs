//! Real resolution graphs.
//!
//! A [`RealPlumbingGraph`] lists the irreducible components of an exceptional
//! curve together with their intersection points. Complex conjugation acts on
//! both lists through the pairing fields: real items are fixed, paired items
//! are swapped. Everything downstream (the incidence graph Γ, its quotient Γ̄,
//! blow-ups and blow-downs) is derived from that involution.

mod incidence;
pub mod iso;
mod serde_impl;
mod surgery;

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

pub(crate) use incidence::quotient_of;
pub use incidence::{
    incidence_graph, quotient_graph, BipartiteGraph, GammaEdge, GammaVertex, QuotientEdge,
    QuotientGraph, QuotientVertex, VertexKind, VertexSource,
};
pub use surgery::{blow_down, blow_up, BlowUpLocus, SurgeryError};

/// Real structure of a component of the exceptional curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ComponentReality {
    /// Conjugation-invariant with a nonempty real locus (`"real+"`).
    RealWithRealPoints,
    /// Conjugation-invariant with an empty real locus (`"real0"`).
    RealWithoutRealPoints,
    /// Swapped by conjugation with the named component (`{"pair": id}`).
    ImaginaryPairedWith(String),
}

impl ComponentReality {
    pub fn is_real(&self) -> bool {
        !matches!(self, ComponentReality::ImaginaryPairedWith(_))
    }

    pub fn partner(&self) -> Option<&str> {
        match self {
            ComponentReality::ImaginaryPairedWith(p) => Some(p),
            _ => None,
        }
    }
}

/// Real structure of an intersection point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PointReality {
    /// Fixed by conjugation (`"real"`).
    RealPoint,
    /// Swapped with the named point (`{"pair": id}`).
    ImaginaryPairedWith(String),
}

impl PointReality {
    pub fn is_real(&self) -> bool {
        matches!(self, PointReality::RealPoint)
    }

    pub fn partner(&self) -> Option<&str> {
        match self {
            PointReality::ImaginaryPairedWith(p) => Some(p),
            PointReality::RealPoint => None,
        }
    }
}

/// Marker for a node of a component with itself (non-good resolutions).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelfNode {
    /// Both branches are individually conjugation-invariant.
    Real,
    /// The two branches are exchanged by conjugation.
    ConjPair,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentVertex {
    pub id: String,
    /// Genus of the normalization.
    pub genus: u32,
    /// Self-intersection number in the resolution.
    pub euler: i64,
    pub reality: ComponentReality,
    #[serde(default)]
    pub self_nodes: Vec<SelfNode>,
}

impl ComponentVertex {
    pub fn new(id: impl Into<String>, genus: u32, euler: i64, reality: ComponentReality) -> Self {
        ComponentVertex {
            id: id.into(),
            genus,
            euler,
            reality,
            self_nodes: Vec::new(),
        }
    }

    /// Rational, real, with real points: the shape `{genus 0, real+}`.
    pub fn real_sphere(id: impl Into<String>, euler: i64) -> Self {
        Self::new(id, 0, euler, ComponentReality::RealWithRealPoints)
    }
}

/// A point where two or more branches of the exceptional curve meet.
///
/// Repeated ids in `at` encode several branches of the same component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectionPoint {
    pub id: String,
    pub at: Vec<String>,
    pub reality: PointReality,
}

impl IntersectionPoint {
    pub fn real(id: impl Into<String>, at: &[&str]) -> Self {
        IntersectionPoint {
            id: id.into(),
            at: at.iter().map(|s| s.to_string()).collect(),
            reality: PointReality::RealPoint,
        }
    }

    pub fn paired(id: impl Into<String>, at: &[&str], partner: impl Into<String>) -> Self {
        IntersectionPoint {
            id: id.into(),
            at: at.iter().map(|s| s.to_string()).collect(),
            reality: PointReality::ImaginaryPairedWith(partner.into()),
        }
    }

    /// A point with exactly two distinct branches.
    pub fn is_simple(&self) -> bool {
        self.at.len() == 2 && self.at[0] != self.at[1]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealPlumbingGraph {
    pub components: Vec<ComponentVertex>,
    #[serde(default)]
    pub points: Vec<IntersectionPoint>,
}

/// A broken invariant of a [`RealPlumbingGraph`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    DuplicateId { id: String },
    UnknownPartner { item: String, partner: String },
    SelfPaired { item: String },
    AsymmetricPairing { item: String, partner: String },
    RealSelfNodeOnImaginary { component: String },
    PairedComponentsDiffer { component: String, partner: String },
    PointTooSmall { point: String },
    UnknownComponent { point: String, component: String },
    RealPointNotInvariant { point: String },
    PairedPointsNotConjugate { point: String, partner: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateId { id } => write!(f, "duplicate id {id:?}"),
            Violation::UnknownPartner { item, partner } => {
                write!(f, "{item:?} is paired with unknown item {partner:?}")
            }
            Violation::SelfPaired { item } => write!(f, "{item:?} is paired with itself"),
            Violation::AsymmetricPairing { item, partner } => {
                write!(f, "asymmetric pairing: {item:?} pairs with {partner:?} but not conversely")
            }
            Violation::RealSelfNodeOnImaginary { component } => {
                write!(f, "imaginary component {component:?} carries a real self-node")
            }
            Violation::PairedComponentsDiffer { component, partner } => write!(
                f,
                "conjugate components {component:?} and {partner:?} differ in genus, euler number or self-nodes"
            ),
            Violation::PointTooSmall { point } => {
                write!(f, "point {point:?} lies on fewer than two branches")
            }
            Violation::UnknownComponent { point, component } => {
                write!(f, "point {point:?} refers to unknown component {component:?}")
            }
            Violation::RealPointNotInvariant { point } => {
                write!(f, "real point with non-σ-invariant incidence: {point:?}")
            }
            Violation::PairedPointsNotConjugate { point, partner } => write!(
                f,
                "incidence of {partner:?} is not the conjugate of the incidence of {point:?}"
            ),
        }
    }
}

impl RealPlumbingGraph {
    pub fn new(components: Vec<ComponentVertex>, points: Vec<IntersectionPoint>) -> Self {
        RealPlumbingGraph { components, points }
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, id: &str) -> Option<&ComponentVertex> {
        self.components.iter().find(|c| c.id == id)
    }

    pub fn component_index(&self, id: &str) -> Option<usize> {
        self.components.iter().position(|c| c.id == id)
    }

    pub fn point_index(&self, id: &str) -> Option<usize> {
        self.points.iter().position(|p| p.id == id)
    }

    pub(crate) fn component_lookup(&self) -> HashMap<&str, usize> {
        self.components
            .iter()
            .enumerate()
            .map(|(i, c)| (c.id.as_str(), i))
            .collect()
    }

    /// Conjugate of each component, by index. Broken pairings map to themselves.
    pub(crate) fn component_conj(&self) -> Vec<usize> {
        let lookup = self.component_lookup();
        self.components
            .iter()
            .enumerate()
            .map(|(i, c)| match &c.reality {
                ComponentReality::ImaginaryPairedWith(p) => {
                    lookup.get(p.as_str()).copied().unwrap_or(i)
                }
                _ => i,
            })
            .collect()
    }

    /// Conjugate of each point, by index. Broken pairings map to themselves.
    pub(crate) fn point_conj(&self) -> Vec<usize> {
        let lookup: HashMap<&str, usize> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.id.as_str(), i))
            .collect();
        self.points
            .iter()
            .enumerate()
            .map(|(i, p)| match &p.reality {
                PointReality::ImaginaryPairedWith(q) => {
                    lookup.get(q.as_str()).copied().unwrap_or(i)
                }
                PointReality::RealPoint => i,
            })
            .collect()
    }

    /// Component indices of a point's branches, in `at` order.
    pub(crate) fn branches(&self, point: &IntersectionPoint) -> Vec<usize> {
        let lookup = self.component_lookup();
        point
            .at
            .iter()
            .filter_map(|id| lookup.get(id.as_str()).copied())
            .collect()
    }

    /// Every broken invariant; empty iff the graph is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        validate(self)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Copy with the real structure forgotten: all components `real+`, all points real.
    pub fn forget_real_structure(&self) -> RealPlumbingGraph {
        RealPlumbingGraph {
            components: self
                .components
                .iter()
                .map(|c| ComponentVertex {
                    reality: ComponentReality::RealWithRealPoints,
                    self_nodes: c.self_nodes.iter().map(|_| SelfNode::Real).collect(),
                    ..c.clone()
                })
                .collect(),
            points: self
                .points
                .iter()
                .map(|p| IntersectionPoint {
                    reality: PointReality::RealPoint,
                    ..p.clone()
                })
                .collect(),
        }
    }
}

fn sorted_multiset<'a>(ids: impl Iterator<Item = &'a str>) -> Vec<&'a str> {
    let mut v: Vec<&str> = ids.collect();
    v.sort_unstable();
    v
}

pub fn validate(g: &RealPlumbingGraph) -> Vec<Violation> {
    let mut out = Vec::new();

    let mut seen = HashSet::new();
    for id in g
        .components
        .iter()
        .map(|c| &c.id)
        .chain(g.points.iter().map(|p| &p.id))
    {
        if !seen.insert(id.as_str()) {
            out.push(Violation::DuplicateId { id: id.clone() });
        }
    }

    let comp_by_id: HashMap<&str, &ComponentVertex> =
        g.components.iter().map(|c| (c.id.as_str(), c)).collect();
    let point_by_id: HashMap<&str, &IntersectionPoint> =
        g.points.iter().map(|p| (p.id.as_str(), p)).collect();

    // Components whose pairing is sound; σ is only trusted on these.
    let mut sound: HashSet<&str> = HashSet::new();
    for c in &g.components {
        match &c.reality {
            ComponentReality::ImaginaryPairedWith(p) => {
                if c.self_nodes.contains(&SelfNode::Real) {
                    out.push(Violation::RealSelfNodeOnImaginary {
                        component: c.id.clone(),
                    });
                }
                if *p == c.id {
                    out.push(Violation::SelfPaired { item: c.id.clone() });
                    continue;
                }
                match comp_by_id.get(p.as_str()) {
                    None => out.push(Violation::UnknownPartner {
                        item: c.id.clone(),
                        partner: p.clone(),
                    }),
                    Some(other) => {
                        if other.reality.partner() != Some(c.id.as_str()) {
                            out.push(Violation::AsymmetricPairing {
                                item: c.id.clone(),
                                partner: p.clone(),
                            });
                        } else {
                            sound.insert(c.id.as_str());
                            // Report each mismatched pair once.
                            let differs = other.genus != c.genus
                                || other.euler != c.euler
                                || other.self_nodes.len() != c.self_nodes.len();
                            if differs && c.id < other.id {
                                out.push(Violation::PairedComponentsDiffer {
                                    component: c.id.clone(),
                                    partner: other.id.clone(),
                                });
                            }
                        }
                    }
                }
            }
            _ => {
                sound.insert(c.id.as_str());
            }
        }
    }

    let sigma = |id: &str| {
        if !sound.contains(id) {
            return None;
        }
        let c: &ComponentVertex = comp_by_id.get(id)?;
        Some(c.reality.partner().unwrap_or(c.id.as_str()))
    };
    let conj_at = |p: &IntersectionPoint| -> Option<Vec<&str>> {
        p.at.iter()
            .map(|id| sigma(id))
            .collect::<Option<Vec<_>>>()
            .map(|v| sorted_multiset(v.into_iter()))
    };

    for p in &g.points {
        if p.at.len() < 2 {
            out.push(Violation::PointTooSmall {
                point: p.id.clone(),
            });
        }
        let mut all_known = true;
        for id in &p.at {
            if !comp_by_id.contains_key(id.as_str()) {
                all_known = false;
                out.push(Violation::UnknownComponent {
                    point: p.id.clone(),
                    component: id.clone(),
                });
            }
        }
        match &p.reality {
            PointReality::RealPoint => {
                if !all_known {
                    continue;
                }
                if let Some(image) = conj_at(p) {
                    if image != sorted_multiset(p.at.iter().map(String::as_str)) {
                        out.push(Violation::RealPointNotInvariant {
                            point: p.id.clone(),
                        });
                    }
                }
            }
            PointReality::ImaginaryPairedWith(q) => {
                if *q == p.id {
                    out.push(Violation::SelfPaired { item: p.id.clone() });
                    continue;
                }
                match point_by_id.get(q.as_str()) {
                    None => out.push(Violation::UnknownPartner {
                        item: p.id.clone(),
                        partner: q.clone(),
                    }),
                    Some(other) => {
                        if other.reality.partner() != Some(p.id.as_str()) {
                            out.push(Violation::AsymmetricPairing {
                                item: p.id.clone(),
                                partner: q.clone(),
                            });
                        } else if all_known {
                            if let Some(image) = conj_at(p) {
                                if image != sorted_multiset(other.at.iter().map(String::as_str)) {
                                    out.push(Violation::PairedPointsNotConjugate {
                                        point: p.id.clone(),
                                        partner: q.clone(),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Deterministic generator of fresh `bN` ids.
pub(crate) struct FreshIds {
    used: HashSet<String>,
    next: usize,
}

impl FreshIds {
    pub(crate) fn for_graph(g: &RealPlumbingGraph) -> Self {
        let used = g
            .components
            .iter()
            .map(|c| c.id.clone())
            .chain(g.points.iter().map(|p| p.id.clone()))
            .collect();
        FreshIds { used, next: 1 }
    }

    pub(crate) fn fresh(&mut self) -> String {
        loop {
            let candidate = format!("b{}", self.next);
            self.next += 1;
            if self.used.insert(candidate.clone()) {
                return candidate;
            }
        }
    }
}
