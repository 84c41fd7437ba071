//! Intersection lattices of good plumbing graphs and reduction by blow-downs.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::resolution::{blow_down, RealPlumbingGraph, SurgeryError, Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlumbingError {
    #[error("graph is not well formed: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidGraph(Vec<Violation>),
    #[error("graph is not good: {0}")]
    NotGood(String),
    #[error("graph is not a tree")]
    NotTree,
    #[error("component {0:?} has positive genus")]
    PositiveGenus(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionMatrix {
    pub ids: Vec<String>,
    pub entries: Vec<Vec<i64>>,
}

impl IntersectionMatrix {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

fn check_good(g: &RealPlumbingGraph) -> Result<(), PlumbingError> {
    let v = g.validate();
    if !v.is_empty() {
        return Err(PlumbingError::InvalidGraph(v));
    }
    if let Some(c) = g.components.iter().find(|c| !c.self_nodes.is_empty()) {
        return Err(PlumbingError::NotGood(format!(
            "component {:?} has self-nodes",
            c.id
        )));
    }
    if let Some(p) = g.points.iter().find(|p| !p.is_simple()) {
        return Err(PlumbingError::NotGood(format!(
            "point {:?} is not a simple crossing",
            p.id
        )));
    }
    Ok(())
}

/// Good graph whose underlying graph is a tree (or empty) with rational components.
fn check_good_tree(g: &RealPlumbingGraph) -> Result<(), PlumbingError> {
    check_good(g)?;
    if let Some(c) = g.components.iter().find(|c| c.genus > 0) {
        return Err(PlumbingError::PositiveGenus(c.id.clone()));
    }
    if !g.is_empty()
        && !crate::resolution::incidence_graph(g)
            .map_err(PlumbingError::InvalidGraph)?
            .is_tree()
    {
        return Err(PlumbingError::NotTree);
    }
    Ok(())
}

pub fn intersection_matrix(g: &RealPlumbingGraph) -> Result<IntersectionMatrix, PlumbingError> {
    check_good(g)?;
    let lookup = g.component_lookup();
    let n = g.components.len();
    let mut entries = vec![vec![0i64; n]; n];
    for (i, c) in g.components.iter().enumerate() {
        entries[i][i] = c.euler;
    }
    for p in &g.points {
        let (a, b) = (lookup[p.at[0].as_str()], lookup[p.at[1].as_str()]);
        entries[a][b] += 1;
        entries[b][a] += 1;
    }
    Ok(IntersectionMatrix {
        ids: g.components.iter().map(|c| c.id.clone()).collect(),
        entries,
    })
}

fn check_symmetric(m: &[Vec<i64>]) -> Result<(), PlumbingError> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(PlumbingError::NotSquare);
    }
    for i in 0..n {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return Err(PlumbingError::NotSymmetric(i, j));
            }
        }
    }
    Ok(())
}

/// Exact negative-definiteness by symmetric Gaussian elimination over ℚ.
///
/// The k-th pivot is the ratio of consecutive leading principal minors, so all
/// pivots negative is the alternating-sign condition on the minors.
pub fn is_negative_definite(m: &[Vec<i64>]) -> Result<bool, PlumbingError> {
    check_symmetric(m)?;
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    for k in 0..n {
        let pivot = a[k][k].clone();
        if !pivot.is_negative() {
            return Ok(false);
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &pivot;
            for j in k..n {
                let delta = &factor * &a[k][j];
                a[i][j] -= delta;
            }
        }
    }
    Ok(true)
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(m: &[Vec<i64>]) -> Result<BigInt, PlumbingError> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(PlumbingError::NotSquare);
    }
    if n == 0 {
        return Ok(BigInt::from(1));
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(a[n - 1][n - 1].clone() * sign)
}

/// Components that can be blown down inside a good tree, sorted by id.
fn candidates(g: &RealPlumbingGraph) -> Vec<String> {
    let mut degree: HashMap<&str, usize> = HashMap::new();
    for p in &g.points {
        for id in &p.at {
            *degree.entry(id.as_str()).or_insert(0) += 1;
        }
    }
    let mut out: Vec<String> = g
        .components
        .iter()
        .filter(|c| {
            c.genus == 0 && c.euler == -1 && degree.get(c.id.as_str()).copied().unwrap_or(0) <= 2
        })
        .map(|c| c.id.clone())
        .collect();
    out.sort();
    out
}

/// Blow down (−1)-components until none is left, the smallest id first.
///
/// An imaginary (−1)-curve is removed with its conjugate; a pair that meets
/// each other cannot be blown down equivariantly and is skipped.
pub fn reduce(g: &RealPlumbingGraph) -> Result<RealPlumbingGraph, PlumbingError> {
    reduce_by(g, |_| 0)
}

/// [`reduce`] with the next blow-down picked by `choose` among the sorted candidates.
pub fn reduce_by(
    g: &RealPlumbingGraph,
    mut choose: impl FnMut(&[String]) -> usize,
) -> Result<RealPlumbingGraph, PlumbingError> {
    check_good_tree(g)?;
    let mut current = g.clone();
    loop {
        let mut options = candidates(&current);
        let mut next = None;
        while !options.is_empty() {
            let pick = choose(&options).min(options.len() - 1);
            match blow_down(&current, &options[pick]) {
                Ok(h) => {
                    next = Some(h);
                    break;
                }
                Err(SurgeryError::ConjugatesMeet(..)) => {
                    options.remove(pick);
                }
                Err(e) => return Err(e.into()),
            }
        }
        match next {
            Some(h) => current = h,
            None => return Ok(current),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", content = "reason")]
pub enum BoundaryClass {
    Sphere3,
    NotSphere3(String),
    Indeterminate(String),
}

/// S³ recognition for negative-definite good trees of spheres.
///
/// The boundary is S³ when the graph blows down to nothing. A stuck reduced
/// graph is reported as `NotSphere3`; inputs outside the domain are `Indeterminate`.
pub fn boundary_is_s3(g: &RealPlumbingGraph) -> BoundaryClass {
    if let Err(e) = check_good_tree(g) {
        return BoundaryClass::Indeterminate(e.to_string());
    }
    let m = match intersection_matrix(g) {
        Ok(m) => m,
        Err(e) => return BoundaryClass::Indeterminate(e.to_string()),
    };
    match is_negative_definite(&m.entries) {
        Ok(true) => {}
        Ok(false) => {
            return BoundaryClass::Indeterminate(
                "intersection form is not negative definite".into(),
            )
        }
        Err(e) => return BoundaryClass::Indeterminate(e.to_string()),
    }
    match reduce(g) {
        Ok(r) if r.is_empty() => BoundaryClass::Sphere3,
        Ok(r)
            if r.components.len() == 1
                && r.components[0].genus == 0
                && r.components[0].euler == -1 =>
        {
            BoundaryClass::Sphere3
        }
        Ok(r) => BoundaryClass::NotSphere3(format!(
            "reduction stops at {} component(s): {}",
            r.components.len(),
            serde_json::to_string(&r).unwrap_or_default()
        )),
        Err(e) => BoundaryClass::Indeterminate(e.to_string()),
    }
}

/// Conjugate halves of the imaginary part of a resolution graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum ImaginaryPieces {
    /// One graph per conjugate pair of connected imaginary pieces, real structure forgotten.
    Pieces(Vec<RealPlumbingGraph>),
    Indeterminate(String),
}

/// Splits the imaginary components into connected pieces K with K ∩ σK = ∅
/// and returns one half of each conjugate pair.
pub fn imaginary_pieces(g: &RealPlumbingGraph) -> ImaginaryPieces {
    if let Err(e) = check_good(g) {
        return ImaginaryPieces::Indeterminate(e.to_string());
    }
    let conj = g.component_conj();
    let lookup = g.component_lookup();
    let n = g.components.len();
    let imaginary: Vec<bool> = g.components.iter().map(|c| !c.reality.is_real()).collect();

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let inner: Vec<(usize, usize)> = g
        .points
        .iter()
        .map(|p| (lookup[p.at[0].as_str()], lookup[p.at[1].as_str()]))
        .filter(|&(a, b)| imaginary[a] && imaginary[b])
        .collect();
    for &(a, b) in &inner {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra.max(rb)] = ra.min(rb);
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();

    let mut pieces = Vec::new();
    let mut done = vec![false; n];
    for i in (0..n).filter(|&i| imaginary[i]) {
        if done[roots[i]] {
            continue;
        }
        let mirror = roots[conj[i]];
        if mirror == roots[i] {
            return ImaginaryPieces::Indeterminate(format!(
                "imaginary piece containing {:?} meets its conjugate",
                g.components[i].id
            ));
        }
        done[roots[i]] = true;
        done[mirror] = true;
        let members: Vec<usize> = (0..n).filter(|&j| roots[j] == roots[i]).collect();
        let half = RealPlumbingGraph {
            components: members.iter().map(|&j| g.components[j].clone()).collect(),
            points: g
                .points
                .iter()
                .filter(|p| p.at.iter().all(|id| roots[lookup[id.as_str()]] == roots[i]))
                .cloned()
                .collect(),
        };
        pieces.push(half.forget_real_structure());
    }
    ImaginaryPieces::Pieces(pieces)
}
