//! Real line arrangements of even size and the double planes branched along them.
//!
//! All geometry is exact: lines are primitive integer normal vectors, points
//! of ℝP² are primitive integer vectors, and the cell structure is built on the
//! sphere S² → ℝP² where every line is a great circle.

mod cells;
mod certificate;
mod invariants;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use cells::{
    build_cell_complex, sign_regions, ArrangementPoint, CellComplex, Face, Sign, SignRegions,
};
pub use certificate::{
    split_curve_bus_certificate, Certificate, Certification, CertifyError, Stage,
};
pub use invariants::{
    arnold_euler_data, b2_plus, decomposition_prediction, even_multiplicity_blowups,
    generic_ledger, quotient_invariants, special_class, ArnoldData, Decomposition, EvenBlowups,
    InvariantReport, Model, SpecialClass,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    /// W = {f ≥ 0}.
    #[default]
    Plus,
    /// W = {f ≤ 0}.
    Minus,
}

impl Region {
    pub fn opposite(self) -> Region {
        match self {
            Region::Plus => Region::Minus,
            Region::Minus => Region::Plus,
        }
    }

    pub fn sign(self) -> Sign {
        match self {
            Region::Plus => Sign::Plus,
            Region::Minus => Sign::Minus,
        }
    }
}

/// Exact rational coefficient; JSON form is an integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coefficient(pub BigRational);

impl From<i64> for Coefficient {
    fn from(v: i64) -> Self {
        Coefficient(BigRational::from_integer(BigInt::from(v)))
    }
}

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            if let Ok(v) = i64::try_from(self.0.to_integer()) {
                return serializer.serialize_i64(v);
            }
        }
        serializer.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Coefficient;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a rational string \"p/q\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Coefficient, E> {
                Ok(Coefficient::from(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Coefficient, E> {
                Ok(Coefficient(BigRational::from_integer(BigInt::from(v))))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Coefficient, E> {
                let t = v.trim();
                if let Some((_, d)) = t.split_once('/') {
                    if d.trim()
                        .parse::<BigInt>()
                        .map(|d| d.is_zero())
                        .unwrap_or(false)
                    {
                        return Err(E::custom(format!("zero denominator in {v:?}")));
                    }
                }
                BigRational::from_str(t)
                    .map(Coefficient)
                    .map_err(|_| E::custom(format!("not a rational number: {v:?}")))
            }
        }
        deserializer.deserialize_any(V)
    }
}

/// 2k real lines a·x + b·y + c·z = 0 in ℝP².
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineArrangement {
    pub k: u32,
    pub lines: Vec<[Coefficient; 3]>,
    #[serde(default)]
    pub region: Region,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("k must be positive")]
    BadK,
    #[error("expected {expected} lines for k = {k}, got {got}")]
    WrongLineCount { k: u32, expected: usize, got: usize },
    #[error("line {0} has all coefficients zero")]
    ZeroLine(usize),
    #[error("lines {0} and {1} coincide")]
    DuplicateLines(usize, usize),
    #[error("model inconsistency: {0}")]
    ModelInconsistency(String),
    #[error("the perturbed model is only available for generic arrangements: {0}")]
    PerturbedUnsupported(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Integer vector in ℤ³.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct V3(pub [BigInt; 3]);

impl V3 {
    pub(crate) fn from_i64(v: [i64; 3]) -> V3 {
        V3(v.map(BigInt::from))
    }

    pub(crate) fn dot(&self, o: &V3) -> BigInt {
        &self.0[0] * &o.0[0] + &self.0[1] * &o.0[1] + &self.0[2] * &o.0[2]
    }

    pub(crate) fn cross(&self, o: &V3) -> V3 {
        let (a, b) = (&self.0, &o.0);
        V3([
            &a[1] * &b[2] - &a[2] * &b[1],
            &a[2] * &b[0] - &a[0] * &b[2],
            &a[0] * &b[1] - &a[1] * &b[0],
        ])
    }

    pub(crate) fn add(&self, o: &V3) -> V3 {
        V3([
            &self.0[0] + &o.0[0],
            &self.0[1] + &o.0[1],
            &self.0[2] + &o.0[2],
        ])
    }

    pub(crate) fn neg(&self) -> V3 {
        V3([-&self.0[0], -&self.0[1], -&self.0[2]])
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Divide by the gcd of the entries, keeping the direction.
    pub(crate) fn primitive(&self) -> V3 {
        let g = self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        V3([&self.0[0] / &g, &self.0[1] / &g, &self.0[2] / &g])
    }

    /// Primitive representative with the first nonzero entry positive.
    pub(crate) fn projective_key(&self) -> V3 {
        let p = self.primitive();
        match p.0.iter().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => p.neg(),
            _ => p,
        }
    }

    pub(crate) fn to_strings(&self) -> [String; 3] {
        [
            self.0[0].to_string(),
            self.0[1].to_string(),
            self.0[2].to_string(),
        ]
    }
}

impl LineArrangement {
    /// Arrangement from integer coefficient triples.
    pub fn from_integers(lines: &[[i64; 3]], region: Region) -> LineArrangement {
        LineArrangement {
            k: (lines.len() / 2) as u32,
            lines: lines.iter().map(|l| l.map(Coefficient::from)).collect(),
            region,
        }
    }

    /// 2k lines tangent to a conic, hence no three concurrent.
    pub fn generic(k: u32) -> LineArrangement {
        let lines: Vec<[i64; 3]> = (0..2 * k as i64).map(|t| [1, t, t * t]).collect();
        LineArrangement::from_integers(&lines, Region::Plus)
    }

    /// 2k lines through [0 : 0 : 1].
    pub fn pencil(k: u32) -> LineArrangement {
        let lines: Vec<[i64; 3]> = (0..2 * k as i64).map(|t| [1, t, 0]).collect();
        LineArrangement::from_integers(&lines, Region::Plus)
    }

    /// 2k − 1 lines through [0 : 0 : 1] and the line z = 0.
    pub fn almost_pencil(k: u32) -> LineArrangement {
        let mut lines: Vec<[i64; 3]> = (0..2 * k as i64 - 1).map(|t| [1, t, 0]).collect();
        lines.push([0, 0, 1]);
        LineArrangement::from_integers(&lines, Region::Plus)
    }

    pub fn with_region(mut self, region: Region) -> LineArrangement {
        self.region = region;
        self
    }

    /// Checks the arrangement and returns primitive integer normals, same orientation.
    pub(crate) fn normals(&self) -> Result<Vec<V3>, ArrangementError> {
        if self.k == 0 {
            return Err(ArrangementError::BadK);
        }
        let expected = 2 * self.k as usize;
        if self.lines.len() != expected {
            return Err(ArrangementError::WrongLineCount {
                k: self.k,
                expected,
                got: self.lines.len(),
            });
        }
        let mut out: Vec<V3> = Vec::with_capacity(expected);
        for (i, l) in self.lines.iter().enumerate() {
            let den = l.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.0.denom()));
            let v =
                V3([0, 1, 2]
                    .map(|j| (&l[j].0 * BigRational::from_integer(den.clone())).to_integer()));
            if v.is_zero() {
                return Err(ArrangementError::ZeroLine(i));
            }
            let v = v.primitive();
            if let Some(j) = out.iter().position(|w| w.cross(&v).is_zero()) {
                return Err(ArrangementError::DuplicateLines(j, i));
            }
            out.push(v);
        }
        Ok(out)
    }

    pub fn validate(&self) -> Result<(), ArrangementError> {
        self.normals().map(|_| ())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        let a: LineArrangement = serde_json::from_str(
            r#"{"k": 1, "lines": [[1, "1/2", 0], ["-3/4", 0, "2"]], "region": "minus"}"#,
        )
        .unwrap();
        assert_eq!(a.region, Region::Minus);
        let n = a.normals().unwrap();
        assert_eq!(n[0], V3::from_i64([2, 1, 0]));
        assert_eq!(n[1], V3::from_i64([-3, 0, 8]));
        let back: LineArrangement =
            serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(serde_json::from_str::<LineArrangement>(
            r#"{"k": 1, "lines": [[1, 0, 0], [0, 1.5, 0]]}"#
        )
        .is_err());
        assert!(serde_json::from_str::<LineArrangement>(
            r#"{"k": 1, "lines": [[1, "1/0", 0], [0, 1, 0]]}"#
        )
        .is_err());
        assert!(
            serde_json::from_str::<LineArrangement>(r#"{"k": 1, "lines": [], "colour": 2}"#)
                .is_err()
        );
        let a = LineArrangement::from_integers(&[[1, 2, 3], [-2, -4, -6]], Region::Plus);
        assert_eq!(a.validate(), Err(ArrangementError::DuplicateLines(0, 1)));
        let a = LineArrangement::from_integers(&[[1, 2, 3], [0, 0, 0]], Region::Plus);
        assert_eq!(a.validate(), Err(ArrangementError::ZeroLine(1)));
        let mut a = LineArrangement::generic(2);
        a.lines.pop();
        assert!(matches!(
            a.validate(),
            Err(ArrangementError::WrongLineCount { .. })
        ));
    }
}
