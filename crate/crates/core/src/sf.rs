//! Smoothly-folding decision from a real resolution graph.
//!
//! [`is_sf`] applies the combinatorial criterion: every component real,
//! rational, with real points, only conjugate-pair self-nodes, and Γ̄ a tree.
//! [`quotient_space_homotopy`] is an independent oracle: it assembles the
//! quotient Ē of the exceptional curve from its pieces and reads off Z/2
//! homology.

use serde::Serialize;
use thiserror::Error;

use crate::resolution::{
    incidence_graph, ComponentReality, QuotientGraph, RealPlumbingGraph, SelfNode, Violation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "SF")]
    Sf,
    #[serde(rename = "NotSF")]
    NotSf,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", content = "component")]
pub enum SfReason {
    ImaginaryComponent(String),
    PositiveGenus(String),
    EmptyRealLocus(String),
    RealSelfNode(String),
    QuotientGraphNotTree,
    QuotientGraphDisconnected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SfVerdict {
    pub verdict: Verdict,
    pub reasons: Vec<SfReason>,
}

impl SfVerdict {
    pub fn is_sf(&self) -> bool {
        self.verdict == Verdict::Sf
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SfError {
    #[error("graph is not well formed: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidGraph(Vec<Violation>),
    #[error("empty graph: an exceptional curve has at least one component")]
    EmptyGraph,
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

fn quotient(g: &RealPlumbingGraph) -> Result<QuotientGraph, SfError> {
    if g.is_empty() {
        return Err(SfError::EmptyGraph);
    }
    let gamma = incidence_graph(g).map_err(SfError::InvalidGraph)?;
    Ok(crate::resolution::quotient_of(&gamma))
}

pub fn is_sf(g: &RealPlumbingGraph) -> Result<SfVerdict, SfError> {
    let qg = quotient(g)?;
    let mut reasons = Vec::new();
    for c in &g.components {
        match c.reality {
            ComponentReality::ImaginaryPairedWith(_) => {
                reasons.push(SfReason::ImaginaryComponent(c.id.clone()));
                continue;
            }
            ComponentReality::RealWithoutRealPoints => {
                reasons.push(SfReason::EmptyRealLocus(c.id.clone()))
            }
            ComponentReality::RealWithRealPoints => {}
        }
        if c.genus > 0 {
            reasons.push(SfReason::PositiveGenus(c.id.clone()));
        }
        if c.self_nodes.contains(&SelfNode::Real) {
            reasons.push(SfReason::RealSelfNode(c.id.clone()));
        }
    }
    if !qg.is_connected() {
        reasons.push(SfReason::QuotientGraphDisconnected);
    } else if !qg.is_tree() {
        reasons.push(SfReason::QuotientGraphNotTree);
    }
    let verdict = if reasons.is_empty() {
        Verdict::Sf
    } else {
        Verdict::NotSf
    };
    Ok(SfVerdict { verdict, reasons })
}

/// Topological type of the quotient of one component orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Piece {
    /// Genus-g surface folded along a nonempty real locus: a surface with boundary.
    Folded { genus: u32 },
    /// Genus-g surface under a free involution: closed and non-orientable.
    FreeQuotient { genus: u32 },
    /// One of two conjugate closed genus-g surfaces.
    Sheet { genus: u32 },
}

impl Piece {
    pub fn euler(self) -> i64 {
        match self {
            Piece::Folded { genus } | Piece::FreeQuotient { genus } => 1 - genus as i64,
            Piece::Sheet { genus } => 2 - 2 * genus as i64,
        }
    }

    /// Z/2 Betti numbers (b0, b1, b2).
    pub fn betti(self) -> [i64; 3] {
        match self {
            Piece::Folded { genus } => [1, genus as i64, 0],
            Piece::FreeQuotient { genus } => [1, 1 + genus as i64, 1],
            Piece::Sheet { genus } => [1, 2 * genus as i64, 1],
        }
    }

    pub fn is_disc(self) -> bool {
        self.betti() == [1, 0, 0]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyReport {
    pub euler_char: i64,
    /// Z/2 Betti numbers of Ē.
    pub betti: [i64; 3],
    pub connected: bool,
    pub simply_connected_pieces: bool,
    pub tree: bool,
    pub contractible: bool,
    pub pieces: Vec<Piece>,
}

/// Homotopy data of Ē, the exceptional curve modulo conjugation.
///
/// Ē is the pieces glued at the point orbits of Γ̄, so up to homotopy it is
/// the wedge of the pieces with the graph Γ̄. Euler characteristic is counted
/// by inclusion-exclusion and checked against the Betti numbers.
pub fn quotient_space_homotopy(g: &RealPlumbingGraph) -> Result<HomotopyReport, SfError> {
    let qg = quotient(g)?;
    let mut pieces = Vec::new();
    let mut euler = 0i64;
    let mut betti = [0i64; 3];
    for v in qg
        .vertices
        .iter()
        .filter(|v| v.kind == crate::resolution::VertexKind::Component)
    {
        let c = &g.components[v.members[0]];
        let piece = match c.reality {
            ComponentReality::RealWithRealPoints => Piece::Folded { genus: c.genus },
            ComponentReality::RealWithoutRealPoints => Piece::FreeQuotient { genus: c.genus },
            ComponentReality::ImaginaryPairedWith(_) => Piece::Sheet { genus: c.genus },
        };
        euler += piece.euler();
        let b = piece.betti();
        betti[1] += b[1];
        betti[2] += b[2];
        pieces.push(piece);
    }
    // Each point orbit of degree d identifies d points of the pieces.
    for (i, v) in qg.vertices.iter().enumerate() {
        if v.kind == crate::resolution::VertexKind::Point {
            let degree = qg.edges.iter().filter(|e| e.point == i).count() as i64;
            euler += 1 - degree;
        }
    }
    let components = qg.connected_components() as i64;
    betti[0] = components;
    betti[1] += qg.cycle_rank() as i64;
    if betti[0] - betti[1] + betti[2] != euler {
        return Err(SfError::Internal(format!(
            "euler characteristic {euler} disagrees with Betti numbers {betti:?}"
        )));
    }
    let connected = components == 1;
    let simply_connected_pieces = pieces.iter().all(|p| p.is_disc());
    let tree = qg.is_tree();
    let contractible = betti == [1, 0, 0];
    if contractible && euler != 1 {
        return Err(SfError::Internal(format!(
            "contractible quotient with euler characteristic {euler}"
        )));
    }
    Ok(HomotopyReport {
        euler_char: euler,
        betti,
        connected,
        simply_connected_pieces,
        tree,
        contractible,
        pieces,
    })
}
