//! BUS-triviality certificates for double planes branched along a split curve B ∪ C.
//!
//! The target curve is a generic arrangement of deg B + deg C lines. The
//! deformation from the start to the target is planned in stages so that a
//! moving curve only crosses a dot-like node while the fixed curve has real
//! points; every such node can then be replaced by a real curve node.

use serde::Serialize;
use thiserror::Error;

use super::invariants::generic_ledger;
use crate::ledger::{
    is_bus_trivial, repair_path, run_path, A3MinusDirection, A3PlusDirection, DeformationEvent,
    PathRun, QuotientLedger, Side,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stage {
    /// Curve that moves: "B", "C" or both as "B+C".
    pub moving: String,
    pub from: String,
    pub to: String,
    /// Curve held fixed during the stage.
    pub fixed: Option<String>,
    pub fixed_real_nonempty: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub k: u32,
    pub deg_b: u32,
    pub deg_c: u32,
    pub schedule: Vec<Stage>,
    pub auxiliary: Option<String>,
    /// Symbolic stream before repair; dot-like nodes included.
    pub raw_events: Vec<DeformationEvent>,
    pub events: Vec<DeformationEvent>,
    pub initial: QuotientLedger,
    pub run: PathRun,
    pub bus_trivial: bool,
    /// Seiberg-Witten vanishing is only concluded for k > 3.
    pub sw_vanishing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Certification {
    Certified(Box<Certificate>),
    CannotCertify { reason: String },
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certification::Certified(c) if c.bus_trivial)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error("inconsistent degrees: {0}")]
    InconsistentDegrees(String),
    #[error("certificate pipeline failed: {0}")]
    Pipeline(String),
}

fn stage(
    moving: &str,
    from: &str,
    to: &str,
    fixed: Option<&str>,
    fixed_real_nonempty: bool,
) -> Stage {
    Stage {
        moving: moving.into(),
        from: from.into(),
        to: to.into(),
        fixed: fixed.map(Into::into),
        fixed_real_nonempty,
    }
}

/// Bifurcations met during one stage, in order.
fn stage_events(s: &Stage) -> [DeformationEvent; 8] {
    use DeformationEvent::*;
    [
        CreateNode {},
        A3Plus {
            direction: A3PlusDirection::CreateNode,
        },
        A3Minus {
            direction: A3MinusDirection::IntoNodal,
        },
        BadDotNode {
            other_curve_real_nonempty: s.fixed_real_nonempty,
        },
        RealCurveNode { side: Side::BlowUp },
        A3Minus {
            direction: A3MinusDirection::OutOfNodal,
        },
        A3Plus {
            direction: A3PlusDirection::ResolveNode,
        },
        ResolveNode {},
    ]
}

fn plan(rb0: bool, rc0: bool, rb1: bool, rc1: bool) -> Option<(Vec<Stage>, Option<String>)> {
    if rb0 && rc0 && rb1 && rc1 {
        return Some((vec![stage("B+C", "B0+C0", "B1+C1", None, true)], None));
    }
    if rb0 && rc1 {
        return Some((
            vec![
                stage("C", "C0", "C1", Some("B0"), true),
                stage("B", "B0", "B1", Some("C1"), true),
            ],
            None,
        ));
    }
    if rc0 && rb1 {
        return Some((
            vec![
                stage("B", "B0", "B1", Some("C0"), true),
                stage("C", "C0", "C1", Some("B1"), true),
            ],
            None,
        ));
    }
    if !rc0 && !rc1 && rb0 && rb1 {
        return Some((
            vec![
                stage("C", "C0", "C'0", Some("B0"), true),
                stage("B", "B0", "B1", Some("C'0"), true),
                stage("C", "C'0", "C1", Some("B1"), true),
            ],
            Some("C'0".into()),
        ));
    }
    if !rb0 && !rb1 && rc0 && rc1 {
        return Some((
            vec![
                stage("B", "B0", "B'0", Some("C0"), true),
                stage("C", "C0", "C1", Some("B'0"), true),
                stage("B", "B'0", "B1", Some("C1"), true),
            ],
            Some("B'0".into()),
        ));
    }
    None
}

pub fn split_curve_bus_certificate(
    deg_b: u32,
    deg_c: u32,
    rb0: bool,
    rc0: bool,
    rb1: bool,
    rc1: bool,
) -> Result<Certification, CertifyError> {
    if deg_b == 0 || deg_c == 0 {
        return Err(CertifyError::InconsistentDegrees(
            "both curves need positive degree".into(),
        ));
    }
    if (deg_b + deg_c) % 2 != 0 {
        return Err(CertifyError::InconsistentDegrees(format!(
            "deg B + deg C = {} is odd",
            deg_b + deg_c
        )));
    }
    let k = (deg_b + deg_c) / 2;
    let Some((schedule, auxiliary)) = plan(rb0, rc0, rb1, rc1) else {
        let end = if !rb0 && !rc0 { "start" } else { "end" };
        return Ok(Certification::CannotCertify {
            reason: format!(
                "the branch curve has empty real locus at the {end} of the deformation"
            ),
        });
    };
    let raw_events: Vec<DeformationEvent> = schedule.iter().flat_map(stage_events).collect();
    let events = repair_path(&raw_events)
        .map_err(|c| CertifyError::Pipeline(format!("unrepairable events at {:?}", c.indices)))?;
    let initial = generic_ledger(k).map_err(|e| CertifyError::Pipeline(e.to_string()))?;
    let run = run_path(&initial, &events).map_err(|e| CertifyError::Pipeline(e.to_string()))?;
    let bus_trivial =
        is_bus_trivial(&run.final_ledger).map_err(|e| CertifyError::Pipeline(e.to_string()))?;
    Ok(Certification::Certified(Box::new(Certificate {
        k,
        deg_b,
        deg_c,
        schedule,
        auxiliary,
        raw_events,
        events,
        initial,
        run,
        bus_trivial,
        sw_vanishing: k > 3,
    })))
}
