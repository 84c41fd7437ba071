//! Euler characteristic bookkeeping for the double plane branched along the lines.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::cells::{build_cell_complex, ArrangementPoint, CellComplex};
use super::{ArrangementError, LineArrangement, Region};
use crate::ledger::{Base, QuotientLedger};

/// Euler data of the real curve, the quotient curve and the Arnold surfaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArnoldData {
    pub chi_ra: i64,
    pub chi_ca: i64,
    pub chi_abar: i64,
    /// Closed region of the chosen sign, curve included.
    pub chi_w: i64,
    pub chi_w_complement: i64,
    /// W ∪ Ā.
    pub chi_arnold: i64,
    /// Complementary region ∪ Ā: the branch locus of X̄ → S⁴.
    pub chi_arnold_complement: i64,
    /// The chosen sign has no faces.
    pub empty_region: bool,
}

fn halve(x: i64, what: &str) -> Result<i64, ArrangementError> {
    if x % 2 != 0 {
        return Err(ArrangementError::Internal(format!(
            "{what} = {x}/2 is not an integer"
        )));
    }
    Ok(x / 2)
}

fn region_chi(c: &CellComplex, region: Region) -> (i64, bool) {
    let faces = c.faces_with_sign(region.sign()) as i64;
    if faces == 0 {
        return (0, true);
    }
    (c.v as i64 - c.e as i64 + faces, false)
}

fn arnold_from(c: &CellComplex, k: u32, region: Region) -> Result<ArnoldData, ArrangementError> {
    let chi_ra = c.v as i64 - c.e as i64;
    let glued: i64 = c.points.iter().map(|p| p.multiplicity as i64 - 1).sum();
    let chi_ca = 4 * k as i64 - glued;
    let chi_abar = halve(chi_ca + chi_ra, "chi(Abar)")?;
    let (chi_w, empty_region) = region_chi(c, region);
    let (chi_w_complement, _) = region_chi(c, region.opposite());
    Ok(ArnoldData {
        chi_ra,
        chi_ca,
        chi_abar,
        chi_w,
        chi_w_complement,
        chi_arnold: chi_w + chi_abar - chi_ra,
        chi_arnold_complement: chi_w_complement + chi_abar - chi_ra,
        empty_region,
    })
}

pub fn arnold_euler_data(a: &LineArrangement) -> Result<ArnoldData, ArrangementError> {
    let c = build_cell_complex(a)?;
    arnold_from(&c, a.k, a.region)
}

pub fn b2_plus(k: u32) -> u64 {
    let k = k as u64;
    if k < 2 {
        return 0;
    }
    (k - 1) * (k - 2) / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    /// The arrangement itself; all multiplicities at most 2 or odd.
    Arrangement,
    /// Points of even multiplicity above 2 blown up first.
    BlownUp,
    /// A nonsingular curve of the same degree close to the arrangement.
    Perturbed,
}

/// Predicted connected-sum type of X̄ over S⁴.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decomposition {
    NonOrientable { cp2: u64, conj_cp2: u64 },
    Orientable { s2xs2: u64 },
    NotApplicable,
}

impl Serialize for Decomposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match *self {
            Decomposition::NonOrientable { cp2, conj_cp2 } => {
                let mut m = serializer.serialize_map(Some(2))?;
                m.serialize_entry("cp2", &cp2)?;
                m.serialize_entry("conj_cp2", &conj_cp2)?;
                m.end()
            }
            Decomposition::Orientable { s2xs2 } => {
                let mut m = serializer.serialize_map(Some(1))?;
                m.serialize_entry("s2xs2", &s2xs2)?;
                m.end()
            }
            Decomposition::NotApplicable => serializer.serialize_str("NotApplicable"),
        }
    }
}

impl Decomposition {
    pub fn ledger(&self) -> Option<QuotientLedger> {
        let mut l = QuotientLedger::pristine();
        match *self {
            Decomposition::NonOrientable { cp2, conj_cp2 } => {
                l.cp2 = cp2;
                l.conj_cp2 = conj_cp2 as i64;
            }
            Decomposition::Orientable { s2xs2 } => l.s2xs2 = s2xs2,
            Decomposition::NotApplicable => return None,
        }
        Some(l)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub k: u32,
    pub region: Region,
    pub model: Model,
    pub arnold: ArnoldData,
    /// Euler characteristics of the curve and region actually used by the routes.
    pub chi_ca_used: i64,
    pub chi_ra_used: i64,
    pub chi_w_used: i64,
    pub chi_branch: i64,
    pub chi_cx: i64,
    pub chi_rx: i64,
    pub chi_xbar_route1: i64,
    pub chi_xbar_route2: i64,
    pub b2_plus: u64,
    /// Seiberg-Witten vanishing is only concluded for k > 3.
    pub sw_conclusion_allowed: bool,
    pub pencil: bool,
    pub decomposition: Decomposition,
}

impl InvariantReport {
    pub fn chi_xbar(&self) -> i64 {
        self.chi_xbar_route2
    }
}

fn is_pencil(c: &CellComplex, k: u32) -> bool {
    c.points.iter().any(|p| p.multiplicity == 2 * k as usize)
}

/// Both routes to χ(X̄).
///
/// Route 1 doubles the base and subtracts the branch surface. Route 2 halves
/// χ(ℂX) + χ(ℝX). Points of even multiplicity above 2 are blown up first, so
/// the quotient is a manifold; the blown-up plane has a quotient of Euler
/// characteristic 2.
pub fn quotient_invariants(
    a: &LineArrangement,
    perturbed: bool,
) -> Result<InvariantReport, ArrangementError> {
    let c = build_cell_complex(a)?;
    let arnold = arnold_from(&c, a.k, a.region)?;
    let k = a.k as i64;

    let (model, chi_ca, chi_ra, chi_w, chi_w_comp, chi_cq) = if perturbed {
        if let Some(p) = c.points.iter().find(|p| p.multiplicity > 2) {
            return Err(ArrangementError::PerturbedUnsupported(format!(
                "point [{}] has multiplicity {}",
                p.coords.join(" : "),
                p.multiplicity
            )));
        }
        // The branch surface keeps its Euler characteristic; the real curve becomes ovals.
        let chi_ca = 6 * k - 4 * k * k;
        let chi_abar = halve(chi_ca, "chi(Abar) of the perturbed curve")?;
        let chi_w_comp = arnold.chi_arnold_complement - chi_abar;
        (Model::Perturbed, chi_ca, 0, 1 - chi_w_comp, chi_w_comp, 3)
    } else {
        let even: Vec<&ArrangementPoint> = c.points.iter().filter(|p| blown_up(p)).collect();
        let n = even.len() as i64;
        let separated: i64 = even.iter().map(|p| p.multiplicity as i64 - 1).sum();
        let arcs: i64 = even.iter().map(|p| p.multiplicity as i64 / 2 - 1).sum();
        let model = if even.is_empty() {
            Model::Arrangement
        } else {
            Model::BlownUp
        };
        (
            model,
            arnold.chi_ca + separated,
            arnold.chi_ra + separated,
            arnold.chi_w + arcs,
            arnold.chi_w_complement + arcs,
            3 + n,
        )
    };

    let chi_cx = 2 * chi_cq - chi_ca;
    let chi_rx = 2 * chi_w - chi_ra;
    let route2 = halve(chi_cx + chi_rx, "chi(Xbar)")?;
    let chi_curve_quotient = halve(chi_ca + chi_ra, "chi of the quotient curve")?;
    let chi_branch = chi_w_comp + chi_curve_quotient - chi_ra;
    let route1 = 4 - chi_branch;
    if route1 != route2 {
        return Err(ArrangementError::Internal(format!(
            "route disagreement: 4 - chi(branch) = {route1}, (chi(CX) + chi(RX))/2 = {route2}"
        )));
    }
    Ok(InvariantReport {
        k: a.k,
        region: a.region,
        model,
        arnold,
        chi_ca_used: chi_ca,
        chi_ra_used: chi_ra,
        chi_w_used: chi_w,
        chi_branch,
        chi_cx,
        chi_rx,
        chi_xbar_route1: route1,
        chi_xbar_route2: route2,
        b2_plus: b2_plus(a.k),
        sw_conclusion_allowed: a.k > 3,
        pencil: is_pencil(&c, a.k),
        decomposition: Decomposition::NotApplicable,
    })
}

fn blown_up(p: &ArrangementPoint) -> bool {
    p.multiplicity > 2 && p.multiplicity % 2 == 0
}

/// Summand counts from χ(X̄) and b₂⁺, given the orientability of the branch surface.
pub fn decomposition_prediction(
    report: &InvariantReport,
    orientable: bool,
) -> Result<Decomposition, ArrangementError> {
    if report.pencil {
        return Ok(Decomposition::NotApplicable);
    }
    let chi = report.chi_xbar();
    if orientable {
        let rest = chi - 2;
        if rest < 0 || rest % 2 != 0 {
            return Err(ArrangementError::ModelInconsistency(format!(
                "orientable branch surface needs chi(Xbar) - 2 even and nonnegative, got {rest}"
            )));
        }
        return Ok(Decomposition::Orientable {
            s2xs2: (rest / 2) as u64,
        });
    }
    let a = report.b2_plus;
    let b = chi - 2 - a as i64;
    if b < 0 {
        return Err(ArrangementError::ModelInconsistency(format!(
            "chi(Xbar) = {chi} leaves {b} reversed projective planes after {a} copies of CP2"
        )));
    }
    Ok(Decomposition::NonOrientable {
        cp2: a,
        conj_cp2: b as u64,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", content = "ledger", rename_all = "snake_case")]
pub enum SpecialClass {
    Pencil(QuotientLedger),
    AlmostPencil(QuotientLedger),
    NotSpecial,
}

impl SpecialClass {
    pub fn ledger(&self) -> Option<&QuotientLedger> {
        match self {
            SpecialClass::Pencil(l) | SpecialClass::AlmostPencil(l) => Some(l),
            SpecialClass::NotSpecial => None,
        }
    }
}

pub fn special_class(a: &LineArrangement) -> Result<SpecialClass, ArrangementError> {
    let c = build_cell_complex(a)?;
    let top = c.points.iter().map(|p| p.multiplicity).max().unwrap_or(0);
    let n = 2 * a.k as usize;
    Ok(if top == n {
        SpecialClass::Pencil(QuotientLedger {
            s1xs3: a.k as u64 - 1,
            ..QuotientLedger::pristine()
        })
    } else if top == n - 1 {
        SpecialClass::AlmostPencil(QuotientLedger::pristine())
    } else {
        SpecialClass::NotSpecial
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenBlowups {
    pub points: Vec<ArrangementPoint>,
    /// The quotient of the blown-up plane.
    pub base: Base,
    pub note: &'static str,
}

pub fn even_multiplicity_blowups(a: &LineArrangement) -> Result<EvenBlowups, ArrangementError> {
    let c = build_cell_complex(a)?;
    Ok(EvenBlowups {
        points: c.points.into_iter().filter(blown_up).collect(),
        base: Base::Sphere4,
        note: "every blown-up point is real, and a real blow-up leaves the quotient of the plane equal to S4",
    })
}

/// Quotient ledger of the generic arrangement of 2k lines.
///
/// The non-orientable prediction is tried on both regions first.
pub fn generic_ledger(k: u32) -> Result<QuotientLedger, ArrangementError> {
    let a = LineArrangement::generic(k);
    if let Some(l) = special_class(&a)?.ledger() {
        return Ok(l.clone());
    }
    for orientable in [false, true] {
        for region in [Region::Plus, Region::Minus] {
            let r = quotient_invariants(&a.clone().with_region(region), false)?;
            if let Some(l) = decomposition_prediction(&r, orientable)
                .ok()
                .and_then(|d| d.ledger())
            {
                return Ok(l);
            }
        }
    }
    Err(ArrangementError::ModelInconsistency(format!(
        "no decomposition for the generic arrangement with k = {k}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_generic() -> LineArrangement {
        LineArrangement::from_integers(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], Region::Plus)
    }

    #[test]
    fn arnold_numbers() {
        let d = arnold_euler_data(&four_generic()).unwrap();
        assert_eq!((d.chi_ra, d.chi_ca, d.chi_abar), (-6, 2, -2));
        for k in 1..=4 {
            let d = arnold_euler_data(&LineArrangement::pencil(k)).unwrap();
            let k = k as i64;
            assert_eq!((d.chi_ra, d.chi_ca, d.chi_abar), (1 - 2 * k, 2 * k + 1, 1));
        }
        let d = arnold_euler_data(&LineArrangement::pencil(1)).unwrap();
        assert_eq!((d.chi_ra, d.chi_ca, d.chi_abar), (-1, 3, 1));
    }

    #[test]
    fn routes_agree_on_four_lines() {
        for region in [Region::Plus, Region::Minus] {
            for perturbed in [false, true] {
                let r =
                    quotient_invariants(&four_generic().with_region(region), perturbed).unwrap();
                assert_eq!(r.chi_xbar_route1, r.chi_xbar_route2);
                let chi_w = r.arnold.chi_w;
                assert_eq!(r.chi_xbar(), 5 + chi_w);
            }
        }
    }

    #[test]
    fn b2_plus_values() {
        assert_eq!([2, 3, 4, 5].map(b2_plus), [0, 1, 3, 6]);
        let r = quotient_invariants(&LineArrangement::generic(3), false).unwrap();
        assert_eq!(r.b2_plus, 1);
        assert!(!r.sw_conclusion_allowed);
        assert!(
            quotient_invariants(&LineArrangement::generic(4), false)
                .unwrap()
                .sw_conclusion_allowed
        );
    }

    #[test]
    fn pencil_matches_its_ledger() {
        for k in 1..=5 {
            let a = LineArrangement::pencil(k);
            let r = quotient_invariants(&a, false).unwrap();
            let l = special_class(&a).unwrap();
            assert!(matches!(l, SpecialClass::Pencil(_)));
            assert_eq!(
                l.ledger().unwrap().euler_characteristic(),
                Some(r.chi_xbar())
            );
            assert_eq!(r.chi_xbar(), 4 - 2 * k as i64);
            assert_eq!(
                decomposition_prediction(&r, false).unwrap(),
                Decomposition::NotApplicable
            );
        }
        let l = special_class(&LineArrangement::pencil(3)).unwrap();
        assert_eq!(l.ledger().unwrap().s1xs3, 2);
    }

    #[test]
    fn almost_pencil_is_s4() {
        for k in 2..=5 {
            let a = LineArrangement::almost_pencil(k);
            assert_eq!(
                special_class(&a).unwrap(),
                SpecialClass::AlmostPencil(QuotientLedger::pristine())
            );
            for region in [Region::Plus, Region::Minus] {
                assert_eq!(
                    quotient_invariants(&a.clone().with_region(region), false)
                        .unwrap()
                        .chi_xbar(),
                    2
                );
            }
        }
        assert_eq!(
            special_class(&four_generic()).unwrap(),
            SpecialClass::NotSpecial
        );
    }

    #[test]
    fn decomposition_arithmetic() {
        let mut r = quotient_invariants(&LineArrangement::generic(4), false).unwrap();
        r.chi_xbar_route2 = 46;
        assert_eq!(
            decomposition_prediction(&r, false).unwrap(),
            Decomposition::NonOrientable {
                cp2: 3,
                conj_cp2: 41
            }
        );
        r.chi_xbar_route2 = 6;
        assert_eq!(
            decomposition_prediction(&r, true).unwrap(),
            Decomposition::Orientable { s2xs2: 2 }
        );
        r.chi_xbar_route2 = 7;
        assert!(matches!(
            decomposition_prediction(&r, true),
            Err(ArrangementError::ModelInconsistency(_))
        ));
        r.chi_xbar_route2 = 4;
        assert!(matches!(
            decomposition_prediction(&r, false),
            Err(ArrangementError::ModelInconsistency(_))
        ));
        let mut r = quotient_invariants(&LineArrangement::generic(2), false).unwrap();
        r.chi_xbar_route2 = 2;
        assert_eq!(
            decomposition_prediction(&r, false).unwrap().ledger(),
            Some(QuotientLedger::pristine())
        );
    }

    #[test]
    fn even_points() {
        let a = LineArrangement::from_integers(
            &[
                [1, 0, 0],
                [0, 1, 0],
                [1, 1, 0],
                [1, 2, 0],
                [0, 0, 1],
                [1, 3, 1],
            ],
            Region::Plus,
        );
        let b = even_multiplicity_blowups(&a).unwrap();
        assert_eq!(b.points.len(), 1);
        assert_eq!(b.points[0].multiplicity, 4);
        assert!(even_multiplicity_blowups(&LineArrangement::generic(3))
            .unwrap()
            .points
            .is_empty());
        let b = even_multiplicity_blowups(&LineArrangement::pencil(3)).unwrap();
        assert_eq!(b.points[0].multiplicity, 6);
        let r = quotient_invariants(&a, false).unwrap();
        assert_eq!(r.model, Model::BlownUp);
        assert!(matches!(
            quotient_invariants(&a, true),
            Err(ArrangementError::PerturbedUnsupported(_))
        ));
    }
}
