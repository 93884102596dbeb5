//! Edge invariants of lattice solutions, and the commuting diagram between
//! square evolution and the Yang-Baxter maps.
//!
//! Each map reads its four points off a square as the invariant of the
//! vertex pairs `x ~ (f, f1)`, `y ~ (f2, f)`, `p ~ (f2, f12)`, `q ~ (f12, f1)`,
//! where the pair invariant is fixed by the map's defining symmetries.

use crate::error::{Error, Result};
use crate::quadgraph::{evolve_quad, EdgeParam, FieldPoint, QuadData, QuadSystem, SymmetryAction};
use crate::scalar::{div, Scalar};
use crate::ybmaps::{MapId, YbMap, YbPoint};

/// A solution on one square. `f12` is always computed, never supplied.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareSolution<T> {
    system: QuadSystem<T>,
    data: QuadData<T>,
    f12: FieldPoint<T>,
}

impl<T: Scalar> SquareSolution<T> {
    /// `v1` (in `f1`) and `u2` (in `f2`) are free: the evolution ignores them,
    /// but some invariants read them.
    pub fn new(system: QuadSystem<T>, data: QuadData<T>) -> Result<Self> {
        let f12 = evolve_quad(&system, &data)?;
        Ok(SquareSolution { system, data, f12 })
    }

    pub fn system(&self) -> &QuadSystem<T> {
        &self.system
    }

    pub fn data(&self) -> &QuadData<T> {
        &self.data
    }

    pub fn f12(&self) -> &FieldPoint<T> {
        &self.f12
    }

    pub fn beta1(&self) -> &EdgeParam<T> {
        &self.data.beta1
    }

    pub fn beta2(&self) -> &EdgeParam<T> {
        &self.data.beta2
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeInvariants<T> {
    pub x: YbPoint<T>,
    pub y: YbPoint<T>,
    pub p: YbPoint<T>,
    pub q: YbPoint<T>,
}

/// The invariant a map assigns to the ordered vertex pair `(a, b)`.
fn pair_invariant<T: Scalar>(id: &MapId<T>, a: &FieldPoint<T>, b: &FieldPoint<T>) -> Result<YbPoint<T>> {
    let (au, av, bu, bv) = (&a.u[0], &a.v[0], &b.u[0], &b.v[0]);
    let c = |x: &T| x.clone();
    let out = match id {
        MapId::E1Shaded | MapId::E2 => vec![div(c(au), c(bu), "u")?, c(av) * c(bu)],
        MapId::E1Blank => vec![div(c(av), c(bv), "v")?, c(av) * c(bu)],
        MapId::E3 | MapId::E4Generic { .. } => vec![c(au) - c(bu), c(av) + c(bu)],
        MapId::E4Eps0Scaling | MapId::E5 { .. } => {
            vec![div(c(au), c(bu), "u")?, div(c(av), c(bu), "u")?]
        }
        MapId::E4Eps0Joint => {
            let den = c(av) + c(bu);
            vec![
                div(c(au) - c(bu), den.clone(), "v + u")?,
                div(c(av) - c(bv), den, "v + u")?,
            ]
        }
        MapId::Vnls { .. } => {
            let ratios =
                a.u.iter()
                    .zip(&b.u)
                    .map(|(x, y)| div(c(x), c(y), "u"))
                    .collect::<Result<Vec<_>>>()?;
            let products = a.v.iter().zip(&b.u).map(|(x, y)| c(x) * c(y));
            ratios.into_iter().chain(products).collect()
        }
    };
    Ok(YbPoint(out))
}

pub fn invariants_from_square<T: Scalar>(id: &MapId<T>, s: &SquareSolution<T>) -> Result<EdgeInvariants<T>> {
    if id.parent_system() != s.system {
        return Err(Error::InvalidParameter(format!(
            "{id} reads invariants of {}, not {}",
            id.parent_system(),
            s.system
        )));
    }
    let QuadData { f, f1, f2, .. } = &s.data;
    let f12 = &s.f12;
    Ok(EdgeInvariants {
        x: pair_invariant(id, f, f1).map_err(|e| e.at("x"))?,
        y: pair_invariant(id, f2, f).map_err(|e| e.at("y"))?,
        p: pair_invariant(id, f2, f12).map_err(|e| e.at("p"))?,
        q: pair_invariant(id, f12, f1).map_err(|e| e.at("q"))?,
    })
}

/// Whether the map sends the invariants `(x, y)` of the square to its `(p, q)`.
pub fn check_commuting_diagram<T: Scalar>(map: &YbMap<T>, s: &SquareSolution<T>) -> Result<bool> {
    let inv = invariants_from_square(&map.id, s)?;
    let image = map.apply(&inv.x, &inv.y, s.beta1(), s.beta2())?;
    Ok(image.p == inv.p && image.q == inv.q)
}

/// The group actions, at parameter `t`, whose orbits the map's invariants are
/// constant on.
pub fn defining_actions<T: Scalar>(id: &MapId<T>, t: &T) -> Vec<SymmetryAction<T>> {
    let t = t.clone();
    match id {
        MapId::E1Shaded | MapId::E1Blank | MapId::E2 => vec![SymmetryAction::ScaleOpposite(t)],
        MapId::Vnls { n } => (0..*n)
            .map(|index| SymmetryAction::ScaleOppositeAt {
                index,
                factor: t.clone(),
            })
            .chain(std::iter::once(SymmetryAction::ScaleOpposite(t.clone())))
            .collect(),
        MapId::E3 | MapId::E4Generic { .. } => vec![SymmetryAction::Translate(t)],
        MapId::E4Eps0Scaling | MapId::E5 { .. } => vec![SymmetryAction::ScaleSame(t)],
        MapId::E4Eps0Joint => vec![SymmetryAction::Translate(t.clone()), SymmetryAction::ScaleSame(t)],
    }
}
