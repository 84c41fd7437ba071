//! Connected-sum bookkeeping for conjugation quotients along nodal deformations.
//!
//! A [`QuotientLedger`] records the resolved quotient as a base manifold plus
//! counts of ℂP², reversed ℂP² (`conj_cp2`), S²×S² and S¹×S³ summands,
//! together with the number of nodes that the unresolved quotient carries.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Base {
    #[default]
    Sphere4,
    Named(String),
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientLedger {
    #[serde(default)]
    pub base: Base,
    #[serde(default)]
    pub cp2: u64,
    /// Signed: reversed-ℂP² summands are invisible to BUS equivalence.
    #[serde(default)]
    pub conj_cp2: i64,
    #[serde(default)]
    pub s2xs2: u64,
    #[serde(default)]
    pub s1xs3: u64,
    #[serde(default)]
    pub node_count: u64,
    #[serde(default = "yes")]
    pub bus_tracking_valid: bool,
}

impl Default for QuotientLedger {
    fn default() -> Self {
        QuotientLedger::pristine()
    }
}

impl QuotientLedger {
    /// S⁴ with no summands and no nodes.
    pub fn pristine() -> Self {
        QuotientLedger {
            base: Base::Sphere4,
            cp2: 0,
            conj_cp2: 0,
            s2xs2: 0,
            s1xs3: 0,
            node_count: 0,
            bus_tracking_valid: true,
        }
    }

    /// Euler characteristic of the resolved manifold, for an S⁴ base.
    pub fn euler_characteristic(&self) -> Option<i64> {
        (self.base == Base::Sphere4).then(|| {
            2 + self.cp2 as i64 + self.conj_cp2 + 2 * self.s2xs2 as i64 - 2 * self.s1xs3 as i64
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Preserve,
    BlowUp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum A3PlusDirection {
    CreateNode,
    ResolveNode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum A3MinusDirection {
    IntoNodal,
    OutOfNodal,
}

/// One bifurcation along a simultaneous nodal deformation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum DeformationEvent {
    /// A real curve node covered by a cone-like surface node.
    RealCurveNode {
        side: Side,
    },
    /// A dot-like surface node; the flag says whether the other curve of the
    /// split has nonempty real locus at that moment.
    BadDotNode {
        other_curve_real_nonempty: bool,
    },
    A3Plus {
        direction: A3PlusDirection,
    },
    A3Minus {
        direction: A3MinusDirection,
    },
    /// A node of the quotient from a conjugate pair of imaginary crossings disappears.
    ResolveNode {},
    CreateNode {},
    #[serde(rename = "blow_up_sf")]
    BlowUpAtSf {},
}

impl DeformationEvent {
    pub fn is_bad(&self) -> bool {
        matches!(self, DeformationEvent::BadDotNode { .. })
    }

    /// Change of the node count.
    pub fn node_delta(&self) -> i64 {
        use DeformationEvent::*;
        match self {
            A3Plus {
                direction: A3PlusDirection::CreateNode,
            }
            | A3Minus {
                direction: A3MinusDirection::IntoNodal,
            }
            | CreateNode {} => 1,
            A3Plus {
                direction: A3PlusDirection::ResolveNode,
            }
            | A3Minus {
                direction: A3MinusDirection::OutOfNodal,
            }
            | ResolveNode {} => -1,
            _ => 0,
        }
    }

    /// Change of the reversed-ℂP² count.
    pub fn conj_cp2_delta(&self) -> i64 {
        use DeformationEvent::*;
        match self {
            RealCurveNode { side: Side::BlowUp } => 1,
            A3Minus {
                direction: A3MinusDirection::IntoNodal,
            } => 2,
            A3Minus {
                direction: A3MinusDirection::OutOfNodal,
            } => -2,
            _ => 0,
        }
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum LedgerError {
    #[error("node count underflow: no node to resolve")]
    NodeUnderflow,
    #[error("BUS tracking was lost at an earlier dot-like node")]
    TrackingLost,
    #[error("BUS class is untracked")]
    Untracked,
}

fn shift_nodes(l: &mut QuotientLedger, delta: i64) -> Result<(), LedgerError> {
    if delta < 0 && l.node_count == 0 {
        return Err(LedgerError::NodeUnderflow);
    }
    l.node_count = (l.node_count as i64 + delta) as u64;
    Ok(())
}

pub fn apply_event(
    l: &QuotientLedger,
    e: &DeformationEvent,
) -> Result<QuotientLedger, LedgerError> {
    let mut out = l.clone();
    if e.is_bad() {
        out.bus_tracking_valid = false;
        return Ok(out);
    }
    if !l.bus_tracking_valid {
        return Err(LedgerError::TrackingLost);
    }
    shift_nodes(&mut out, e.node_delta())?;
    out.conj_cp2 += e.conj_cp2_delta();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathRun {
    #[serde(rename = "final")]
    pub final_ledger: QuotientLedger,
    /// Ledger after each event.
    pub log: Vec<QuotientLedger>,
    /// No dot-like surface node along the path.
    pub nice: bool,
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("event {index}: {error}")]
pub struct PathError {
    pub index: usize,
    pub error: LedgerError,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// After tracking is lost, keep counting nodes instead of failing.
    pub continue_untracked: bool,
}

pub fn run_path(
    initial: &QuotientLedger,
    events: &[DeformationEvent],
) -> Result<PathRun, PathError> {
    run_path_with(initial, events, RunOptions::default())
}

pub fn run_path_with(
    initial: &QuotientLedger,
    events: &[DeformationEvent],
    options: RunOptions,
) -> Result<PathRun, PathError> {
    let mut current = initial.clone();
    let mut log = Vec::with_capacity(events.len());
    for (index, e) in events.iter().enumerate() {
        current = if !current.bus_tracking_valid && options.continue_untracked && !e.is_bad() {
            let mut next = current.clone();
            shift_nodes(&mut next, e.node_delta()).map_err(|error| PathError { index, error })?;
            next
        } else {
            apply_event(&current, e).map_err(|error| PathError { index, error })?
        };
        log.push(current.clone());
    }
    Ok(PathRun {
        final_ledger: current,
        log,
        nice: !events.iter().any(DeformationEvent::is_bad),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NormalForm {
    pub cp2: u64,
    pub s1xs3: u64,
    pub base: Base,
}

impl NormalForm {
    /// The ledger with exactly these summands.
    pub fn embed(&self) -> QuotientLedger {
        QuotientLedger {
            base: self.base.clone(),
            cp2: self.cp2,
            s1xs3: self.s1xs3,
            ..QuotientLedger::pristine()
        }
    }
}

/// BUS normal form: reversed ℂP² summands dropped, each S²×S² traded for a ℂP².
pub fn bus_normal_form(l: &QuotientLedger) -> Result<NormalForm, LedgerError> {
    if !l.bus_tracking_valid {
        return Err(LedgerError::Untracked);
    }
    Ok(NormalForm {
        cp2: l.cp2 + l.s2xs2,
        s1xs3: l.s1xs3,
        base: l.base.clone(),
    })
}

pub fn is_bus_trivial(l: &QuotientLedger) -> Result<bool, LedgerError> {
    let nf = bus_normal_form(l)?;
    Ok(nf.base == Base::Sphere4 && nf.s1xs3 == 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CannotRepair {
    pub indices: Vec<usize>,
    pub advice: String,
}

pub const REPAIR_ADVICE: &str = "a dot-like node on one curve can only be moved into the region when the \
other curve has real points at that moment: deform C first keeping B fixed, then B keeping C fixed, and if \
C has empty real locus at both ends, first deform it into an auxiliary curve with real points";

/// Replace every repairable bad node by a real curve node on the preserving side.
pub fn repair_path(events: &[DeformationEvent]) -> Result<Vec<DeformationEvent>, CannotRepair> {
    let stuck: Vec<usize> = events
        .iter()
        .enumerate()
        .filter(|(_, e)| {
            matches!(
                e,
                DeformationEvent::BadDotNode {
                    other_curve_real_nonempty: false
                }
            )
        })
        .map(|(i, _)| i)
        .collect();
    if !stuck.is_empty() {
        return Err(CannotRepair {
            indices: stuck,
            advice: REPAIR_ADVICE.to_string(),
        });
    }
    Ok(events
        .iter()
        .map(|e| match e {
            DeformationEvent::BadDotNode { .. } => DeformationEvent::RealCurveNode {
                side: Side::Preserve,
            },
            other => *other,
        })
        .collect())
}

/// Vanishing criterion for Seiberg-Witten invariants: 0 < p_g(res) < p_g(perturbed).
pub fn sw_vanishes(pg_res: u64, pg_prime: u64) -> bool {
    0 < pg_res && pg_res < pg_prime
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimpleSingularitySymbol {
    pub family: Family,
    pub index: u32,
    /// Real form marker, e.g. `"minus"`.
    pub real_form: String,
    /// Equivalent to x²ⁿ + y² + z² = 0.
    #[serde(default)]
    pub is_exceptional_dot_family: bool,
}

impl SimpleSingularitySymbol {
    pub fn new(family: Family, index: u32, real_form: &str) -> Self {
        SimpleSingularitySymbol {
            family,
            index,
            real_form: real_form.to_string(),
            is_exceptional_dot_family: false,
        }
    }

    /// The real form x²ⁿ + y² + z² = 0, of type A₂ₙ₋₁.
    pub fn dot_family(n: u32) -> Self {
        SimpleSingularitySymbol {
            family: Family::A,
            index: 2 * n - 1,
            real_form: "dot".to_string(),
            is_exceptional_dot_family: true,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolError {
    #[error("{family:?}{index} is not a simple singularity")]
    BadIndex { family: Family, index: u32 },
    #[error("only A with odd index can be of the form x^2n + y^2 + z^2")]
    ExceptionalFlag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum PerturbationClass {
    Independent,
    ExceptionalFamily { caveat: String },
}

pub const EXCEPTIONAL_CAVEAT: &str =
    "independence can fail here: among the real perturbations, those \
whose real locus disappears near the singular point are excluded";

/// Whether every real non-singular perturbation gives the same BUS class.
pub fn perturbation_independent(
    s: &SimpleSingularitySymbol,
) -> Result<PerturbationClass, SymbolError> {
    let ok = match s.family {
        Family::A => s.index >= 1,
        Family::D => s.index >= 4,
        Family::E => (6..=8).contains(&s.index),
    };
    if !ok {
        return Err(SymbolError::BadIndex {
            family: s.family,
            index: s.index,
        });
    }
    if s.is_exceptional_dot_family {
        if s.family != Family::A || s.index % 2 == 0 {
            return Err(SymbolError::ExceptionalFlag);
        }
        return Ok(PerturbationClass::ExceptionalFamily {
            caveat: EXCEPTIONAL_CAVEAT.to_string(),
        });
    }
    Ok(PerturbationClass::Independent)
}

/// Contents of an events file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathFile {
    #[serde(default)]
    pub initial: QuotientLedger,
    pub events: Vec<DeformationEvent>,
}
