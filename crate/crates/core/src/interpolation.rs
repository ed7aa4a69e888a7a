//! Pick-matrix feasibility of holomorphic self-maps of the disk, and maps
//! between petals whose connections are double-point identifications.

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::linalg::{hermitian_eigen, CMat};
use crate::petals::Connection;
use crate::{Error, Result, C64};

/// Default relative PSD tolerance.
pub const PSD_TOL: f64 = 1e-9;
/// Largest number of double points handled by [`petal_map_exists`].
pub const MAX_PAIRS: usize = 8;

/// Find `psi: D -> D` with `psi(nodes[i]) = targets[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PickProblem {
    nodes: Vec<C64>,
    targets: Vec<C64>,
}

impl PickProblem {
    pub fn new(nodes: Vec<C64>, targets: Vec<C64>) -> Result<Self> {
        if nodes.len() != targets.len() {
            return Err(Error::DegenerateInput(format!(
                "{} nodes but {} targets",
                nodes.len(),
                targets.len()
            )));
        }
        if nodes.is_empty() {
            return Err(Error::DegenerateInput("no nodes".into()));
        }
        for &z in nodes.iter().chain(&targets) {
            if !(z.norm() < 1.0) {
                return Err(Error::Domain(format!("{z} is not in the open disk")));
            }
        }
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if (nodes[i] - nodes[j]).norm() < 1e-12 {
                    return Err(Error::DegenerateInput(format!("node {} is repeated", nodes[i])));
                }
            }
        }
        Ok(PickProblem { nodes, targets })
    }

    pub fn nodes(&self) -> &[C64] {
        &self.nodes
    }

    pub fn targets(&self) -> &[C64] {
        &self.targets
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// `((1 - conj(b_i) b_j) / (1 - conj(a_i) a_j))`.
pub fn pick_matrix(p: &PickProblem) -> CMat {
    let one = C64::new(1.0, 0.0);
    let (a, b) = (&p.nodes, &p.targets);
    CMat::from_fn(a.len(), a.len(), |i, j| {
        (one - b[i].conj() * b[j]) / (one - a[i].conj() * a[j])
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PickVerdict {
    pub solvable: bool,
    pub min_eigenvalue: f64,
    /// `|min eigenvalue|` within ten times the tolerance of zero.
    pub marginal: bool,
}

/// Solvable iff the Pick matrix is positive semidefinite: its smallest
/// eigenvalue is at least `-tol * max(1, largest eigenvalue)`.
pub fn solvable(p: &PickProblem, tol: f64) -> PickVerdict {
    let (vals, _) = hermitian_eigen(&pick_matrix(p));
    let lo = vals.first().copied().unwrap_or(0.0);
    let scale = vals.last().copied().unwrap_or(1.0).max(1.0);
    PickVerdict {
        solvable: lo >= -tol * scale,
        min_eigenvalue: lo,
        marginal: lo.abs() <= 10.0 * tol * scale,
    }
}

/// Pair `i` of the source goes to pair `target` of the destination, with the
/// two points swapped if `swapped`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairAssignment {
    pub target: usize,
    pub swapped: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PetalMap {
    pub assignment: Vec<PairAssignment>,
    pub verdict: PickVerdict,
}

/// Whether some `psi: D -> D` carries the identified pairs of `conn1` onto
/// identified pairs of `conn2`. Tries injective assignments of pairs,
/// including swaps within a pair, in lexicographic order and returns the
/// first feasible one.
pub fn petal_map_exists(conn1: &Connection, conn2: &Connection, tol: f64) -> Result<Option<PetalMap>> {
    let (Some(src), Some(dst)) = (conn1.double_points(), conn2.double_points()) else {
        return Err(Error::Unsupported(
            "maps between petals are decided only for double-point connections".into(),
        ));
    };
    if src.len() > dst.len() {
        return Err(Error::Precondition(format!(
            "source has {} pairs but target only {}",
            src.len(),
            dst.len()
        )));
    }
    if dst.len() > MAX_PAIRS {
        return Err(Error::Unsupported(format!("more than {MAX_PAIRS} double points")));
    }
    let nodes: Vec<C64> = src.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut used = [false; MAX_PAIRS];
    let mut current = Vec::with_capacity(src.len());
    search(&src, &dst, &nodes, tol, &mut used, &mut current)
}

fn search(
    src: &[(C64, C64)],
    dst: &[(C64, C64)],
    nodes: &[C64],
    tol: f64,
    used: &mut [bool; MAX_PAIRS],
    current: &mut Vec<PairAssignment>,
) -> Result<Option<PetalMap>> {
    if current.len() == src.len() {
        let targets: Vec<C64> = current
            .iter()
            .flat_map(|a| {
                let (x, y) = dst[a.target];
                if a.swapped { [y, x] } else { [x, y] }
            })
            .collect();
        let verdict = solvable(&PickProblem::new(nodes.to_vec(), targets)?, tol);
        return Ok(verdict.solvable.then(|| PetalMap { assignment: current.clone(), verdict }));
    }
    for target in 0..dst.len() {
        if used[target] {
            continue;
        }
        used[target] = true;
        for swapped in [false, true] {
            current.push(PairAssignment { target, swapped });
            let found = search(src, dst, nodes, tol, used, current)?;
            current.pop();
            if found.is_some() {
                used[target] = false;
                return Ok(found);
            }
        }
        used[target] = false;
    }
    Ok(None)
}
