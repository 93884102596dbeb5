//! Path flips on Cauchy paths and transfer sweeps on periodic chains.
//!
//! A path is a sequence of vertex values joined by edges; edge `j` joins
//! vertices `j` and `j + 1` (mod the period for periodic chains) and carries
//! `params[j]`. Flipping an interior vertex `k` moves the path across one
//! square: the value at `k` is evolved from its two neighbours and the two
//! edge parameters around `k` trade places.

use crate::error::{Error, Result};
use crate::exactnum::Draws;
use crate::quadgraph::{evolve_quad, EdgeParam, FieldPoint, QuadData, QuadSystem};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct PathState<T> {
    system: QuadSystem<T>,
    vertices: Vec<FieldPoint<T>>,
    params: Vec<EdgeParam<T>>,
    periodic: bool,
}

impl<T: Scalar> PathState<T> {
    /// An open path needs at least 3 vertices and one parameter per edge.
    pub fn open(
        system: QuadSystem<T>,
        vertices: Vec<FieldPoint<T>>,
        params: Vec<EdgeParam<T>>,
    ) -> Result<Self> {
        if vertices.len() < 3 || params.len() + 1 != vertices.len() {
            return Err(Error::Shape(format!(
                "open path needs >= 3 vertices and one fewer parameters, got {} and {}",
                vertices.len(),
                params.len()
            )));
        }
        Self::validated(system, vertices, params, false)
    }

    /// A periodic chain of period `N >= 2` has `N` vertices and `N` edges.
    pub fn periodic(
        system: QuadSystem<T>,
        vertices: Vec<FieldPoint<T>>,
        params: Vec<EdgeParam<T>>,
    ) -> Result<Self> {
        if vertices.len() < 2 || params.len() != vertices.len() {
            return Err(Error::Shape(format!(
                "periodic chain needs period >= 2 and one parameter per vertex, got {} and {}",
                vertices.len(),
                params.len()
            )));
        }
        Self::validated(system, vertices, params, true)
    }

    fn validated(
        system: QuadSystem<T>,
        vertices: Vec<FieldPoint<T>>,
        params: Vec<EdgeParam<T>>,
        periodic: bool,
    ) -> Result<Self> {
        for v in &vertices {
            system.check_point(v)?;
        }
        for a in &params {
            system.check_param(a)?;
        }
        Ok(PathState {
            system,
            vertices,
            params,
            periodic,
        })
    }

    /// A seeded open path with `len` vertices.
    pub fn sample_open(system: QuadSystem<T>, len: usize, draws: &mut Draws) -> Result<Self> {
        let vertices = (0..len).map(|_| system.sample_point(draws)).collect();
        let params = (1..len).map(|_| system.sample_param(draws)).collect();
        Self::open(system, vertices, params)
    }

    /// A seeded periodic chain with the given period.
    pub fn sample_periodic(system: QuadSystem<T>, period: usize, draws: &mut Draws) -> Result<Self> {
        let vertices = (0..period).map(|_| system.sample_point(draws)).collect();
        let params = (0..period).map(|_| system.sample_param(draws)).collect();
        Self::periodic(system, vertices, params)
    }

    pub fn system(&self) -> &QuadSystem<T> {
        &self.system
    }

    pub fn vertices(&self) -> &[FieldPoint<T>] {
        &self.vertices
    }

    pub fn params(&self) -> &[EdgeParam<T>] {
        &self.params
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_flippable(&self, k: usize) -> bool {
        if self.periodic {
            k < self.len()
        } else {
            k >= 1 && k + 1 < self.len()
        }
    }

    fn neighbours(&self, k: usize) -> Result<(usize, usize)> {
        if !self.is_flippable(k) {
            return Err(Error::IndexOutOfRange {
                index: k,
                vertices: self.len(),
            });
        }
        let n = self.len();
        Ok(((k + n - 1) % n, (k + 1) % n))
    }

    /// Flips vertex `k`; every other vertex and parameter is kept.
    pub fn flip(&self, k: usize) -> Result<Self> {
        let (prev, next) = self.neighbours(k)?;
        let data = QuadData {
            f: self.vertices[k].clone(),
            f1: self.vertices[prev].clone(),
            f2: self.vertices[next].clone(),
            beta1: self.params[prev].clone(),
            beta2: self.params[k].clone(),
        };
        let value = evolve_quad(&self.system, &data).map_err(|e| e.at(&format!("flip at {k}")))?;
        let mut out = self.clone();
        out.vertices[k] = value;
        out.params.swap(prev, k);
        Ok(out)
    }

    /// Applies flips left to right.
    pub fn flip_sequence(&self, ks: &[usize]) -> Result<Vec<Self>> {
        let mut states = Vec::with_capacity(ks.len());
        let mut current = self.clone();
        for &k in ks {
            current = current.flip(k)?;
            states.push(current.clone());
        }
        Ok(states)
    }

    /// Column names for [`PathState::csv_row`].
    pub fn csv_header(&self) -> Vec<String> {
        let n = self.system.components();
        let field = |name: &str, j: usize| -> Vec<String> {
            if n == 1 {
                vec![format!("{name}_{j}")]
            } else {
                (0..n).map(|i| format!("{name}_{j}_{i}")).collect()
            }
        };
        let mut cols: Vec<String> = (0..self.len()).flat_map(|j| field("u", j)).collect();
        cols.extend((0..self.len()).flat_map(|j| field("v", j)));
        cols.extend((0..self.params.len()).map(|j| format!("alpha_{j}")));
        if self.params.iter().any(|a| a.gamma().is_some()) {
            cols.extend((0..self.params.len()).map(|j| format!("gamma_{j}")));
        }
        cols
    }

    /// Every vertex component and edge parameter as `p/q` strings.
    pub fn csv_row(&self) -> Vec<String> {
        let mut row: Vec<String> = self
            .vertices
            .iter()
            .flat_map(|f| f.u.iter().map(ToString::to_string))
            .collect();
        row.extend(
            self.vertices
                .iter()
                .flat_map(|f| f.v.iter().map(ToString::to_string)),
        );
        row.extend(self.params.iter().map(|a| a.beta().to_string()));
        row.extend(
            self.params
                .iter()
                .filter_map(|a| a.gamma().map(ToString::to_string)),
        );
        row
    }
}

pub fn check_involution<T: Scalar>(path: &PathState<T>, k: usize) -> Result<bool> {
    Ok(path.flip(k)?.flip(k)? == *path)
}

/// States after each flip of a sequence.
pub type Trajectory<T> = Vec<PathState<T>>;

/// The two sides of the braid relation at `j` as trajectories: flips
/// `j+1, j, j+1` and flips `j, j+1, j`.
pub fn braid_legs<T: Scalar>(path: &PathState<T>, j: usize) -> Result<(Trajectory<T>, Trajectory<T>)> {
    let a = path.flip_sequence(&[j + 1, j, j + 1])?;
    let b = path.flip_sequence(&[j, j + 1, j])?;
    Ok((a, b))
}

pub fn check_braid<T: Scalar>(path: &PathState<T>, j: usize) -> Result<bool> {
    let (a, b) = braid_legs(path, j)?;
    Ok(a.last() == b.last())
}

/// Flips whose stencils are disjoint commute; `i` and `j` must be more than
/// one vertex apart (cyclically, on periodic chains).
pub fn check_commutation<T: Scalar>(path: &PathState<T>, i: usize, j: usize) -> Result<bool> {
    let gap = i.abs_diff(j);
    let gap = if path.is_periodic() {
        gap.min(path.len() - gap)
    } else {
        gap
    };
    if gap <= 1 {
        return Err(Error::BadIndices { i, j });
    }
    Ok(path.flip(i)?.flip(j)? == path.flip(j)?.flip(i)?)
}

/// One transfer sweep of a periodic chain: flips at `1, 2, ..., N - 1, 0`.
pub fn transfer_step<T: Scalar>(path: &PathState<T>) -> Result<PathState<T>> {
    if !path.is_periodic() {
        return Err(Error::InvalidParameter(
            "transfer sweeps need a periodic chain".into(),
        ));
    }
    let n = path.len();
    let mut current = path.clone();
    for pos in 1..=n {
        current = current
            .flip(pos % n)
            .map_err(|e| e.at(&format!("sweep position {pos}")))?;
    }
    Ok(current)
}
