//! Property checks and seeded sweeps over them.
//!
//! `R^{ij}` acts on factors `i < j` of `X x X x X` in that order and fixes the
//! third. A sweep draws each sample from its own stream; a sample whose
//! inputs hit a singularity is redrawn from the next stream, up to the retry
//! budget, and is counted as skipped if none succeeds. Results do not depend
//! on evaluation order, so samples run in parallel.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::chains::{check_braid, check_commutation, check_involution, PathState};
use crate::error::{Error, Result};
use crate::exactnum::{gamma_pair_from_slope, Draws};
use crate::lax::{check_zero_curvature, moebius_p1};
use crate::quadgraph::{check_consistency_3d, EdgeParam, FieldPoint, QuadData, QuadSystem, Staircase};
use crate::reduction::{check_commuting_diagram, invariants_from_square, SquareSolution};
use crate::scalar::Scalar;
use crate::ybmaps::{MapId, YbMap, YbPoint};

#[derive(Debug, Clone, PartialEq)]
pub struct TripleState<T> {
    pub x: YbPoint<T>,
    pub y: YbPoint<T>,
    pub z: YbPoint<T>,
    pub beta1: EdgeParam<T>,
    pub beta2: EdgeParam<T>,
    pub beta3: EdgeParam<T>,
}

/// Whether `R23 R13 R12 = R12 R13 R23` at `t` (rightmost factor applied first).
pub fn check_yb_relation<T: Scalar>(map: &YbMap<T>, t: &TripleState<T>) -> Result<bool> {
    let TripleState {
        x,
        y,
        z,
        beta1: b1,
        beta2: b2,
        beta3: b3,
    } = t;
    let r = |a: &YbPoint<T>, b: &YbPoint<T>, ba, bb, stage: &str| {
        map.apply(a, b, ba, bb)
            .map(|img| (img.p, img.q))
            .map_err(|e| e.at(stage))
    };

    let (x1, y1) = r(x, y, b1, b2, "left R12")?;
    let (x2, z1) = r(&x1, z, b1, b3, "left R13")?;
    let (y2, z2) = r(&y1, &z1, b2, b3, "left R23")?;

    let (y3, z3) = r(y, z, b2, b3, "right R23")?;
    let (x3, z4) = r(x, &z3, b1, b3, "right R13")?;
    let (x4, y4) = r(&x3, &y3, b1, b2, "right R12")?;

    Ok((x2, y2, z2) == (x4, y4, z4))
}

/// Whether `R21(beta2, beta1) R(beta1, beta2) = id` at `(x, y)`, with
/// `R21 = swap . R . swap`.
pub fn check_unitarity<T: Scalar>(
    map: &YbMap<T>,
    x: &YbPoint<T>,
    y: &YbPoint<T>,
    b1: &EdgeParam<T>,
    b2: &EdgeParam<T>,
) -> Result<bool> {
    let img = map.apply(x, y, b1, b2)?;
    let back = map.apply(&img.q, &img.p, b2, b1)?;
    Ok(&back.q == x && &back.p == y)
}

pub fn check_inverse_round_trip<T: Scalar>(
    map: &YbMap<T>,
    x: &YbPoint<T>,
    y: &YbPoint<T>,
    b1: &EdgeParam<T>,
    b2: &EdgeParam<T>,
) -> Result<bool> {
    let img = map.apply(x, y, b1, b2)?;
    let (x2, y2) = map.apply_inverse(&img.p, &img.q, b1, b2)?;
    Ok(&x2 == x && &y2 == y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Yb,
    /// Unitarity together with the inverse round trip.
    Unitarity,
    Consistency,
    /// Involution, braid and far-commutation of path flips.
    Braid,
    ZeroCurvature,
    CommutingDiagram,
    FunctionalRelations,
    NonQuadrirational,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::Yb,
        Property::Unitarity,
        Property::Consistency,
        Property::Braid,
        Property::ZeroCurvature,
        Property::CommutingDiagram,
        Property::FunctionalRelations,
        Property::NonQuadrirational,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Yb => "yb",
            Property::Unitarity => "unitarity",
            Property::Consistency => "consistency",
            Property::Braid => "braid",
            Property::ZeroCurvature => "zero-curvature",
            Property::CommutingDiagram => "commuting-diagram",
            Property::FunctionalRelations => "functional-relations",
            Property::NonQuadrirational => "non-quadrirational",
        }
    }

    /// Properties of the lattice system rather than of a map.
    pub fn is_lattice(self) -> bool {
        matches!(self, Property::Consistency | Property::Braid)
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown property {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureDump {
    pub sample: usize,
    /// Every input of the failing sample, as `p/q` strings.
    pub inputs: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub map: String,
    pub property: Property,
    pub requested: usize,
    pub valid: usize,
    pub passed: usize,
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<FailureDump>,
}

impl VerificationReport {
    /// The property held on every valid sample, and there was at least one.
    pub fn holds(&self) -> bool {
        self.valid > 0 && self.passed == self.valid
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig<T> {
    pub seed: u64,
    pub samples: usize,
    pub bound: u64,
    /// Fresh draws tried per sample before it is skipped.
    pub retry_budget: u64,
    /// Fixes the slope of the first E5 edge parameter.
    pub pinned_slope: Option<T>,
}

impl<T> SweepConfig<T> {
    pub fn new(seed: u64, samples: usize, bound: u64) -> Self {
        SweepConfig {
            seed,
            samples,
            bound,
            retry_budget: 20,
            pinned_slope: None,
        }
    }
}

struct Outcome {
    passed: bool,
    inputs: BTreeMap<String, Vec<String>>,
}

#[derive(Default)]
struct Dump(BTreeMap<String, Vec<String>>);

impl Dump {
    fn values<T: Scalar>(&mut self, key: &str, v: &[T]) {
        self.0
            .insert(key.to_owned(), v.iter().map(ToString::to_string).collect());
    }

    fn point<T: Scalar>(&mut self, key: &str, p: &YbPoint<T>) {
        self.values(key, p.components());
    }

    fn field<T: Scalar>(&mut self, key: &str, f: &FieldPoint<T>) {
        self.values(&format!("{key}.u"), &f.u);
        self.values(&format!("{key}.v"), &f.v);
    }

    fn params<T: Scalar>(&mut self, params: &[EdgeParam<T>]) {
        for (i, a) in params.iter().enumerate() {
            let mut v = vec![a.beta().clone()];
            v.extend(a.gamma().cloned());
            self.values(&format!("beta{}", i + 1), &v);
        }
    }

    fn outcome(self, passed: bool) -> Outcome {
        Outcome {
            passed,
            inputs: self.0,
        }
    }
}

/// Draws `count` edge parameters with pairwise distinct betas; coinciding
/// betas count as a degenerate draw.
fn sample_params<T: Scalar>(
    system: &QuadSystem<T>,
    draws: &mut Draws,
    count: usize,
    pinned: Option<&T>,
) -> Result<Vec<EdgeParam<T>>> {
    let mut out: Vec<EdgeParam<T>> = Vec::with_capacity(count);
    for i in 0..count {
        let param = match (system, pinned) {
            (QuadSystem::E5 { delta }, Some(s)) if i == 0 => gamma_pair_from_slope(s, *delta)?.into(),
            _ => system.sample_param(draws),
        };
        if out.iter().any(|a| a.beta() == param.beta()) {
            return Err(Error::Singular("coinciding edge parameters".into()));
        }
        out.push(param);
    }
    Ok(out)
}

fn sample_square<T: Scalar>(
    system: &QuadSystem<T>,
    draws: &mut Draws,
    pinned: Option<&T>,
    dump: &mut Dump,
) -> Result<SquareSolution<T>> {
    let [f, f1, f2] = [(); 3].map(|_| system.sample_point(draws));
    let [beta1, beta2]: [EdgeParam<T>; 2] = sample_params(system, draws, 2, pinned)?
        .try_into()
        .expect("two parameters");
    dump.field("f", &f);
    dump.field("f1", &f1);
    dump.field("f2", &f2);
    dump.params(&[beta1.clone(), beta2.clone()]);
    SquareSolution::new(
        system.clone(),
        QuadData {
            f,
            f1,
            f2,
            beta1,
            beta2,
        },
    )
}

/// One sample of a map property.
fn map_sample<T: Scalar>(
    map: &YbMap<T>,
    property: Property,
    draws: &mut Draws,
    pinned: Option<&T>,
) -> Result<Outcome> {
    let id = &map.id;
    let system = id.parent_system();
    let mut dump = Dump::default();
    match property {
        Property::Yb => {
            let [x, y, z] = [(); 3].map(|_| id.sample_point(draws));
            let b = sample_params(&system, draws, 3, pinned)?;
            dump.point("x", &x);
            dump.point("y", &y);
            dump.point("z", &z);
            dump.params(&b);
            let [beta1, beta2, beta3] = b.try_into().expect("three parameters");
            let t = TripleState {
                x,
                y,
                z,
                beta1,
                beta2,
                beta3,
            };
            Ok(dump.outcome(check_yb_relation(map, &t)?))
        }
        Property::Unitarity => {
            let [x, y] = [(); 2].map(|_| id.sample_point(draws));
            let b = sample_params(&system, draws, 2, pinned)?;
            dump.point("x", &x);
            dump.point("y", &y);
            dump.params(&b);
            let unitary = check_unitarity(map, &x, &y, &b[0], &b[1])?;
            let inverse = check_inverse_round_trip(map, &x, &y, &b[0], &b[1])?;
            Ok(dump.outcome(unitary && inverse))
        }
        Property::CommutingDiagram => {
            let s = sample_square(&system, draws, pinned, &mut dump)?;
            Ok(dump.outcome(check_commuting_diagram(map, &s)?))
        }
        Property::FunctionalRelations => {
            let s = sample_square(&system, draws, pinned, &mut dump)?;
            let inv = invariants_from_square(id, &s)?;
            let img = map.apply(&inv.x, &inv.y, s.beta1(), s.beta2())?;
            let on_square = id.functional_relation_residuals(&inv.x, &inv.y, &inv.p, &inv.q)?;
            let on_image = id.functional_relation_residuals(&inv.x, &inv.y, &img.p, &img.q)?;
            let zero = on_square.iter().chain(&on_image).all(T::is_zero);
            Ok(dump.outcome(zero))
        }
        Property::NonQuadrirational => {
            let [x, y] = [(); 2].map(|_| id.sample_point(draws));
            let mut x_alt = x.clone();
            for slot in id.p_ignored_slots() {
                x_alt.0[slot] = draws.nonzero();
            }
            let b = sample_params(&system, draws, 2, pinned)?;
            dump.point("x", &x);
            dump.point("x_alt", &x_alt);
            dump.point("y", &y);
            dump.params(&b);
            let p = map.apply(&x, &y, &b[0], &b[1])?.p;
            let p_alt = map.apply(&x_alt, &y, &b[0], &b[1])?.p;
            Ok(dump.outcome(p == p_alt))
        }
        Property::ZeroCurvature => {
            if *id != MapId::E1Shaded {
                return Err(Error::InvalidParameter(format!(
                    "zero curvature is defined for e1-shaded only, not {id}"
                )));
            }
            let [x, y] = [(); 2].map(|_| id.sample_point(draws));
            let b = sample_params(&system, draws, 2, pinned)?;
            dump.point("x", &x);
            dump.point("y", &y);
            dump.params(&b);
            let img = map.apply(&x, &y, &b[0], &b[1])?;
            let (b1, b2) = (b[0].beta(), b[1].beta());
            let curvature = check_zero_curvature(&x, &y, &img.p, &img.q, b1, b2)?;
            let p1 = moebius_p1(&x.0[0], &y.0[0], &y.0[1], b1, b2)?;
            Ok(dump.outcome(curvature && p1 == img.p.0[0]))
        }
        Property::Consistency | Property::Braid => lattice_sample(&system, property, draws, pinned),
    }
}

/// Open paths checked by the flip-law property have this many vertices.
pub const BRAID_PATH_LEN: usize = 8;

fn lattice_sample<T: Scalar>(
    system: &QuadSystem<T>,
    property: Property,
    draws: &mut Draws,
    pinned: Option<&T>,
) -> Result<Outcome> {
    let mut dump = Dump::default();
    match property {
        Property::Consistency => {
            let [f1, f, f2, f23] = [(); 4].map(|_| system.sample_point(draws));
            let b = sample_params(system, draws, 3, pinned)?;
            for (key, p) in [("f1", &f1), ("f", &f), ("f2", &f2), ("f23", &f23)] {
                dump.field(key, p);
            }
            dump.params(&b);
            let init = Staircase { f1, f, f2, f23 };
            let report = check_consistency_3d(system, &init, [&b[0], &b[1], &b[2]])?;
            Ok(dump.outcome(report.consistent()))
        }
        Property::Braid => {
            let vertices: Vec<_> = (0..BRAID_PATH_LEN).map(|_| system.sample_point(draws)).collect();
            let params = sample_params(system, draws, BRAID_PATH_LEN - 1, pinned)?;
            for (j, v) in vertices.iter().enumerate() {
                dump.field(&format!("f{j}"), v);
            }
            dump.params(&params);
            let path = PathState::open(system.clone(), vertices, params)?;
            let ok = check_involution(&path, 3)? && check_braid(&path, 3)? && check_commutation(&path, 2, 5)?;
            Ok(dump.outcome(ok))
        }
        other => Err(Error::InvalidParameter(format!(
            "{other} is a property of maps, not of lattice systems"
        ))),
    }
}

fn run_sweep<T, F>(
    label: String,
    property: Property,
    config: &SweepConfig<T>,
    sample: F,
) -> Result<VerificationReport>
where
    T: Scalar,
    F: Fn(&mut Draws) -> Result<Outcome> + Sync,
{
    if config.samples == 0 || config.bound == 0 || config.retry_budget == 0 {
        return Err(Error::InvalidParameter(
            "samples, bound and retry budget must be positive".into(),
        ));
    }
    if let Some(s) = &config.pinned_slope {
        if s.is_zero() {
            return Err(Error::ZeroSlope);
        }
    }
    let outcomes = (0..config.samples)
        .into_par_iter()
        .map(|i| {
            for attempt in 0..config.retry_budget {
                let stream = i as u64 * config.retry_budget + attempt;
                let mut draws = Draws::new(config.seed, stream, config.bound);
                match sample(&mut draws) {
                    Ok(outcome) => return Ok(Some(outcome)),
                    Err(e) if e.is_singular() => continue,
                    Err(e) => return Err(e),
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<Option<Outcome>>>>()?;

    let requested = config.samples;
    let valid = outcomes.iter().flatten().count();
    let skipped = requested - valid;
    if 2 * skipped > requested {
        return Err(Error::RetryBudgetExhausted { requested, skipped });
    }
    let passed = outcomes.iter().flatten().filter(|o| o.passed).count();
    let first_failure = outcomes.into_iter().enumerate().find_map(|(i, o)| match o {
        Some(o) if !o.passed => Some(FailureDump {
            sample: i,
            inputs: o.inputs,
        }),
        _ => None,
    });
    Ok(VerificationReport {
        map: label,
        property,
        requested,
        valid,
        passed,
        skipped,
        first_failure,
    })
}

/// Checks `property` of `map` on `config.samples` seeded inputs. The lattice
/// properties run on the map's parent system.
pub fn sweep<T: Scalar>(
    map: &YbMap<T>,
    property: Property,
    config: &SweepConfig<T>,
) -> Result<VerificationReport> {
    let pinned = config.pinned_slope.as_ref();
    run_sweep(map.id.to_string(), property, config, |d| {
        map_sample(map, property, d, pinned)
    })
}

/// Checks a lattice property (`consistency` or `braid`) of a system.
pub fn sweep_lattice<T: Scalar>(
    system: &QuadSystem<T>,
    property: Property,
    config: &SweepConfig<T>,
) -> Result<VerificationReport> {
    if !property.is_lattice() {
        return Err(Error::InvalidParameter(format!(
            "{property} is a property of maps, not of lattice systems"
        )));
    }
    let pinned = config.pinned_slope.as_ref();
    run_sweep(system.to_string(), property, config, |d| {
        lattice_sample(system, property, d, pinned)
    })
}
