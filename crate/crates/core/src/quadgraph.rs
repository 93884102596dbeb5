//! Two-field lattice systems on elementary quadrilaterals.
//!
//! A square carries the values `f = (u, v)` at its base vertex, `f1`, `f2` at
//! the shifts in directions 1 and 2, and `f12` at the opposite corner. Edges
//! in direction `i` carry the parameter `beta_i`. Every system here has the
//! form
//!
//! ```text
//! u12 = E(u, u1, v2, beta1, beta2),    v12 = E(v, v2, u1, beta2, beta1)
//! ```
//!
//! so `v1` and `u2` never enter a single evolution step. The vector system
//! replaces the scalar product `u1 v2` by the inner product `u1 . v2`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{gamma_pair_from_slope, Delta, Draws, GammaPair};
use crate::scalar::{div, recip, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    E1,
    E2,
    E3,
    E4,
    E5,
    Vnls,
}

/// A lattice system together with the parameters of its family.
#[derive(Debug, Clone, PartialEq)]
pub enum QuadSystem<T> {
    E1,
    E2,
    E3,
    E4 {
        epsilon: T,
    },
    E5 {
        delta: Delta,
    },
    /// The lattice `n`-vector Schrodinger system.
    Vnls {
        n: usize,
    },
}

impl<T: Scalar> QuadSystem<T> {
    pub fn family(&self) -> Family {
        match self {
            QuadSystem::E1 => Family::E1,
            QuadSystem::E2 => Family::E2,
            QuadSystem::E3 => Family::E3,
            QuadSystem::E4 { .. } => Family::E4,
            QuadSystem::E5 { .. } => Family::E5,
            QuadSystem::Vnls { .. } => Family::Vnls,
        }
    }

    /// Number of components of each of `u` and `v`.
    pub fn components(&self) -> usize {
        match self {
            QuadSystem::Vnls { n } => *n,
            _ => 1,
        }
    }

    /// E5 needs a [`GammaPair`] with the system's delta on every edge; all
    /// other families take plain parameters.
    pub fn check_param(&self, param: &EdgeParam<T>) -> Result<()> {
        match (self, param) {
            (QuadSystem::E5 { delta }, EdgeParam::Gamma(g)) if g.delta() == *delta => Ok(()),
            (QuadSystem::E5 { delta }, _) => Err(Error::InvalidParameter(format!(
                "e5 edges need a gamma pair with delta = {delta}"
            ))),
            (_, EdgeParam::Plain(_)) => Ok(()),
            (other, EdgeParam::Gamma(_)) => Err(Error::InvalidParameter(format!(
                "{other} edges take plain parameters"
            ))),
        }
    }

    /// A seeded edge parameter: a nonzero draw, or for E5 the gamma pair of a
    /// nonzero slope.
    pub fn sample_param(&self, draws: &mut Draws) -> EdgeParam<T> {
        match self {
            QuadSystem::E5 { delta } => gamma_pair_from_slope(&draws.nonzero(), *delta)
                .expect("slope is nonzero")
                .into(),
            _ => EdgeParam::Plain(draws.nonzero()),
        }
    }

    /// A seeded field point with nonzero components.
    pub fn sample_point(&self, draws: &mut Draws) -> FieldPoint<T> {
        let n = self.components();
        FieldPoint {
            u: draws.nonzero_vec(n),
            v: draws.nonzero_vec(n),
        }
    }

    pub fn check_point(&self, p: &FieldPoint<T>) -> Result<()> {
        if p.components() != self.components() {
            return Err(Error::Shape(format!(
                "{self} needs {} components per field, got {}",
                self.components(),
                p.components()
            )));
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Display for QuadSystem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadSystem::E1 => f.write_str("e1"),
            QuadSystem::E2 => f.write_str("e2"),
            QuadSystem::E3 => f.write_str("e3"),
            QuadSystem::E4 { .. } => f.write_str("e4"),
            QuadSystem::E5 { .. } => f.write_str("e5"),
            QuadSystem::Vnls { n } => write!(f, "vnls:{n}"),
        }
    }
}

/// The parameter attached to a lattice edge.
#[derive(Debug, Clone, PartialEq)]
pub enum EdgeParam<T> {
    Plain(T),
    Gamma(GammaPair<T>),
}

impl<T: Scalar> EdgeParam<T> {
    pub fn plain(beta: T) -> Self {
        EdgeParam::Plain(beta)
    }

    pub fn beta(&self) -> &T {
        match self {
            EdgeParam::Plain(b) => b,
            EdgeParam::Gamma(g) => g.beta(),
        }
    }

    pub fn gamma(&self) -> Option<&T> {
        match self {
            EdgeParam::Plain(_) => None,
            EdgeParam::Gamma(g) => Some(g.gamma()),
        }
    }
}

impl<T> From<GammaPair<T>> for EdgeParam<T> {
    fn from(g: GammaPair<T>) -> Self {
        EdgeParam::Gamma(g)
    }
}

/// The two-field value `(u, v)` at a vertex; each field has 1 component for the
/// scalar systems and `n` for the vector system.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldPoint<T> {
    pub u: Vec<T>,
    pub v: Vec<T>,
}

impl<T: Scalar> FieldPoint<T> {
    pub fn scalar(u: T, v: T) -> Self {
        FieldPoint {
            u: vec![u],
            v: vec![v],
        }
    }

    pub fn vector(u: Vec<T>, v: Vec<T>) -> Result<Self> {
        if u.len() != v.len() || u.is_empty() {
            return Err(Error::Shape(format!(
                "u has {} components, v has {}",
                u.len(),
                v.len()
            )));
        }
        Ok(FieldPoint { u, v })
    }

    pub fn components(&self) -> usize {
        self.u.len()
    }
}

/// Initial data for one square: `v1` and `u2` are not needed, but `f1` and
/// `f2` are full field points so the same values feed the edge invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadData<T> {
    pub f: FieldPoint<T>,
    pub f1: FieldPoint<T>,
    pub f2: FieldPoint<T>,
    pub beta1: EdgeParam<T>,
    pub beta2: EdgeParam<T>,
}

/// The scalar right-hand side `E_a(x, y, z, beta1, beta2)` of a lattice system.
pub fn table_e<T: Scalar>(
    system: &QuadSystem<T>,
    x: &T,
    y: &T,
    z: &T,
    b1: &EdgeParam<T>,
    b2: &EdgeParam<T>,
) -> Result<T> {
    system.check_param(b1)?;
    system.check_param(b2)?;
    let (x, y, z) = (x.clone(), y.clone(), z.clone());
    let (be1, be2) = (b1.beta().clone(), b2.beta().clone());
    match system {
        QuadSystem::E1 => {
            let den = T::one() - y.clone() * z;
            Ok(x + (be1 - be2) * div(y, den, "1 - y*z")?)
        }
        QuadSystem::E2 => {
            let den = be2.clone() + y.clone() * z;
            Ok(x.clone() + (be2 - be1) * div(y - x, den, "beta2 + y*z")?)
        }
        QuadSystem::E3 => {
            let den = y + z.clone() - be1.clone();
            Ok(x.clone() + (be1 - be2) * div(x + z, den, "y + z - beta1")?)
        }
        QuadSystem::E4 { epsilon } => {
            let inv1 = recip(be1.clone(), "beta1")?;
            let inv2 = recip(be2.clone(), "beta2")?;
            let xz = x.clone() + z;
            let yx = y - x.clone();
            let num = be1.clone() * be2.clone() * xz.clone() * yx.clone() - epsilon.clone();
            let den = be2 * xz + be1 * yx;
            Ok(x + (inv1 - inv2) * div(num, den, "beta2*(x + z) + beta1*(y - x)")?)
        }
        QuadSystem::E5 { .. } => {
            let g1 = b1.gamma().expect("checked").clone();
            let g2 = b2.gamma().expect("checked").clone();
            let db = be1 - be2;
            let num = db.clone() * y.clone() * z.clone()
                + x.clone() * (g2.clone() * y.clone() + g1.clone() * z.clone());
            let den = db * x + g1 * y + g2 * z;
            div(num, den, "(beta1 - beta2)*x + gamma1*y + gamma2*z")
        }
        QuadSystem::Vnls { .. } => Err(Error::InvalidParameter(
            "the vector system has no scalar table function".into(),
        )),
    }
}

/// Evolves one square: returns `f12` from `f`, `f1`, `f2`.
pub fn evolve_quad<T: Scalar>(system: &QuadSystem<T>, data: &QuadData<T>) -> Result<FieldPoint<T>> {
    for p in [&data.f, &data.f1, &data.f2] {
        system.check_point(p)?;
    }
    system.check_param(&data.beta1)?;
    system.check_param(&data.beta2)?;

    if let QuadSystem::Vnls { .. } = system {
        let dot = data
            .f1
            .u
            .iter()
            .zip(&data.f2.v)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
        let c = div(
            data.beta1.beta().clone() - data.beta2.beta().clone(),
            T::one() - dot,
            "1 - u1.v2",
        )?;
        let u = data
            .f
            .u
            .iter()
            .zip(&data.f1.u)
            .map(|(a, b)| a.clone() + c.clone() * b.clone())
            .collect();
        let v = data
            .f
            .v
            .iter()
            .zip(&data.f2.v)
            .map(|(a, b)| a.clone() - c.clone() * b.clone())
            .collect();
        return Ok(FieldPoint { u, v });
    }

    let (u, v) = (&data.f.u[0], &data.f.v[0]);
    let (u1, v2) = (&data.f1.u[0], &data.f2.v[0]);
    let u12 = table_e(system, u, u1, v2, &data.beta1, &data.beta2).map_err(|e| e.at("u12"))?;
    let v12 = table_e(system, v, v2, u1, &data.beta2, &data.beta1).map_err(|e| e.at("v12"))?;
    Ok(FieldPoint::scalar(u12, v12))
}

fn evolve_at<T: Scalar>(
    system: &QuadSystem<T>,
    f: &FieldPoint<T>,
    f1: &FieldPoint<T>,
    f2: &FieldPoint<T>,
    b1: &EdgeParam<T>,
    b2: &EdgeParam<T>,
    stage: &str,
) -> Result<FieldPoint<T>> {
    let data = QuadData {
        f: f.clone(),
        f1: f1.clone(),
        f2: f2.clone(),
        beta1: b1.clone(),
        beta2: b2.clone(),
    };
    evolve_quad(system, &data).map_err(|e| e.at(stage))
}

/// Initial data on a Cauchy staircase through the cube: the path
/// `f1 -(beta1)- f -(beta2)- f2 -(beta3)- f23`.
#[derive(Debug, Clone, PartialEq)]
pub struct Staircase<T> {
    pub f1: FieldPoint<T>,
    pub f: FieldPoint<T>,
    pub f2: FieldPoint<T>,
    pub f23: FieldPoint<T>,
}

/// The cube filled in by the two deformation routes of the staircase.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyReport<T> {
    /// Corners flipped at positions 2, 1, 2 in turn: `[f3, f13, f123]`.
    pub route_a: [FieldPoint<T>; 3],
    /// Corners flipped at positions 1, 2, 1 in turn: `[f12, f123, f13]`.
    pub route_b: [FieldPoint<T>; 3],
    pub u_consistent: bool,
    pub v_consistent: bool,
}

impl<T: Scalar> ConsistencyReport<T> {
    pub fn consistent(&self) -> bool {
        self.u_consistent && self.v_consistent
    }

    pub fn f123(&self) -> &FieldPoint<T> {
        &self.route_a[2]
    }

    pub fn f13(&self) -> &FieldPoint<T> {
        &self.route_a[1]
    }
}

/// Fills the cube over a staircase in both possible orders and compares the
/// two values obtained for `f13` and for `f123`.
///
/// Each route uses three square evolutions; together they cover all six faces.
/// Route (a) evolves face (2,3) at `f2`, face (1,3) at `f`, then face (1,2)
/// at `f3`; route (b) evolves face (1,2) at `f`, face (1,3) at `f2`, then
/// face (2,3) at `f12`.
pub fn check_consistency_3d<T: Scalar>(
    system: &QuadSystem<T>,
    init: &Staircase<T>,
    betas: [&EdgeParam<T>; 3],
) -> Result<ConsistencyReport<T>> {
    let [b1, b2, b3] = betas;
    let Staircase { f1, f, f2, f23 } = init;

    let f3 = evolve_at(system, f2, f, f23, b2, b3, "face (2,3) at f2")?;
    let f13 = evolve_at(system, f, f1, &f3, b1, b3, "face (1,3) at f")?;
    let f123 = evolve_at(system, &f3, &f13, f23, b1, b2, "face (1,2) at f3")?;

    let f12 = evolve_at(system, f, f1, f2, b1, b2, "face (1,2) at f")?;
    let f123_b = evolve_at(system, f2, &f12, f23, b1, b3, "face (1,3) at f2")?;
    let f13_b = evolve_at(system, &f12, f1, &f123_b, b2, b3, "face (2,3) at f12")?;

    let u_consistent = f13.u == f13_b.u && f123.u == f123_b.u;
    let v_consistent = f13.v == f13_b.v && f123.v == f123_b.v;
    Ok(ConsistencyReport {
        route_a: [f3, f13, f123],
        route_b: [f12, f123_b, f13_b],
        u_consistent,
        v_consistent,
    })
}

/// Finite point symmetries, parametrised rationally.
#[derive(Debug, Clone, PartialEq)]
pub enum SymmetryAction<T> {
    /// `(u, v) -> (t u, v / t)` on every component.
    ScaleOpposite(T),
    /// `(u^i, v^i) -> (t u^i, v^i / t)` on one component of a vector system.
    ScaleOppositeAt { index: usize, factor: T },
    /// `(u, v) -> (u + s, v - s)`.
    Translate(T),
    /// `(u, v) -> (t u, t v)`.
    ScaleSame(T),
}

impl<T: Scalar> SymmetryAction<T> {
    pub fn is_symmetry_of(&self, system: &QuadSystem<T>) -> bool {
        match (self, system) {
            (SymmetryAction::ScaleOpposite(_), QuadSystem::E1 | QuadSystem::E2 | QuadSystem::Vnls { .. }) => {
                true
            }
            (SymmetryAction::ScaleOppositeAt { index, .. }, QuadSystem::Vnls { n }) => index < n,
            (SymmetryAction::Translate(_), QuadSystem::E3 | QuadSystem::E4 { .. }) => true,
            (SymmetryAction::ScaleSame(_), QuadSystem::E4 { epsilon }) => epsilon.is_zero(),
            (SymmetryAction::ScaleSame(_), QuadSystem::E5 { .. }) => true,
            _ => false,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            SymmetryAction::ScaleOpposite(_) => "scale-opposite",
            SymmetryAction::ScaleOppositeAt { .. } => "scale-opposite-component",
            SymmetryAction::Translate(_) => "translate",
            SymmetryAction::ScaleSame(_) => "scale-same",
        }
    }
}

pub fn apply_symmetry<T: Scalar>(
    system: &QuadSystem<T>,
    action: &SymmetryAction<T>,
    p: &FieldPoint<T>,
) -> Result<FieldPoint<T>> {
    if !action.is_symmetry_of(system) {
        return Err(Error::IncompatibleAction {
            action: action.name().into(),
            family: system.to_string(),
        });
    }
    system.check_point(p)?;
    let scale = |t: &T| -> Result<(T, T)> {
        if t.is_zero() {
            return Err(Error::ZeroScale);
        }
        Ok((t.clone(), T::one() / t.clone()))
    };
    let mut out = p.clone();
    match action {
        SymmetryAction::ScaleOpposite(t) => {
            let (t, ti) = scale(t)?;
            out.u.iter_mut().for_each(|x| *x = x.clone() * t.clone());
            out.v.iter_mut().for_each(|x| *x = x.clone() * ti.clone());
        }
        SymmetryAction::ScaleOppositeAt { index, factor } => {
            let (t, ti) = scale(factor)?;
            out.u[*index] = out.u[*index].clone() * t;
            out.v[*index] = out.v[*index].clone() * ti;
        }
        SymmetryAction::Translate(s) => {
            out.u.iter_mut().for_each(|x| *x = x.clone() + s.clone());
            out.v.iter_mut().for_each(|x| *x = x.clone() - s.clone());
        }
        SymmetryAction::ScaleSame(t) => {
            let (t, _) = scale(t)?;
            out.u.iter_mut().for_each(|x| *x = x.clone() * t.clone());
            out.v.iter_mut().for_each(|x| *x = x.clone() * t.clone());
        }
    }
    Ok(out)
}

/// Whether transforming the initial data commutes with evolving the square.
pub fn check_symmetry_invariance<T: Scalar>(
    system: &QuadSystem<T>,
    action: &SymmetryAction<T>,
    data: &QuadData<T>,
) -> Result<bool> {
    let image = apply_symmetry(system, action, &evolve_quad(system, data)?)?;
    let moved = QuadData {
        f: apply_symmetry(system, action, &data.f)?,
        f1: apply_symmetry(system, action, &data.f1)?,
        f2: apply_symmetry(system, action, &data.f2)?,
        beta1: data.beta1.clone(),
        beta2: data.beta2.clone(),
    };
    Ok(evolve_quad(system, &moved)? == image)
}
