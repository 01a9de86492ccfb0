//! Named surfaces with adjustable parameters.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

use crate::dual::Vec3;
use crate::error::{GeomError, Result};
use crate::numerics::{CurveSampler, Taylor};
use crate::surface::RuledSurfaceDef;

pub struct CatalogEntry {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub summary: &'static str,
    pub params: &'static [(&'static str, f64)],
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "paper-cone",
        aliases: &["cone"],
        summary: "closed cone through (0, 1, 0) with director (cos t, sin t, 1)",
        params: &[],
    },
    CatalogEntry {
        name: "helicoid",
        aliases: &[],
        summary: "open helicoid with base (-t cos t, 1 - t sin t, t) and director (-sin t, cos t, 0)",
        params: &[("length", TAU)],
    },
    CatalogEntry {
        name: "helix-tangent-developable",
        aliases: &["tangent-developable-of-helix"],
        summary: "tangent developable of the helix (r cos t, r sin t, b t)",
        params: &[("radius", 1.0), ("slope", 1.0), ("length", TAU)],
    },
    CatalogEntry {
        name: "latitude-circle-director",
        aliases: &[],
        summary: "closed hyperboloid: base circle of given radius, director on a latitude circle turned by twist",
        params: &[("colatitude", FRAC_PI_4), ("radius", 1.0), ("twist", FRAC_PI_2)],
    },
    CatalogEntry {
        name: "closed-skew",
        aliases: &[],
        summary: "closed skew surface with varying drall and a moving striction line",
        params: &[],
    },
];

pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG
        .iter()
        .find(|e| e.name == name || e.aliases.contains(&name))
}

fn vec3(x: Taylor<f64>, y: Taylor<f64>, z: Taylor<f64>) -> Taylor<Vec3> {
    x.zip(&y, |a, b| Vec3::new(a, b, 0.0))
        .zip(&z, |v, c| Vec3::new(v.x, v.y, c))
}

fn c(v: f64) -> Taylor<f64> {
    Taylor::constant(v)
}

/// Builds a catalog surface. Missing parameters take their defaults;
/// unknown names and parameters are configuration errors.
pub fn build(name: &str, params: &BTreeMap<String, f64>) -> Result<RuledSurfaceDef> {
    let entry = lookup(name).ok_or_else(|| {
        let known: Vec<_> = CATALOG.iter().map(|e| e.name).collect();
        GeomError::Config(format!(
            "unknown catalog surface '{name}' (known: {})",
            known.join(", ")
        ))
    })?;
    for key in params.keys() {
        if !entry.params.iter().any(|(p, _)| p == key) {
            return Err(GeomError::Config(format!(
                "'{}' has no parameter '{key}'",
                entry.name
            )));
        }
    }
    let p = |key: &str| -> f64 {
        params.get(key).copied().unwrap_or_else(|| {
            entry
                .params
                .iter()
                .find(|(k, _)| *k == key)
                .map(|(_, v)| *v)
                .unwrap_or(0.0)
        })
    };
    let positive = |key: &str| -> Result<f64> {
        let v = p(key);
        if v.is_finite() && v > 0.0 {
            Ok(v)
        } else {
            Err(GeomError::Config(format!(
                "'{key}' must be positive, got {v}"
            )))
        }
    };
    let (base, director) = match entry.name {
        "paper-cone" => (
            CurveSampler::from_jet(TAU, true, |_| Taylor::constant(Vec3::y())),
            CurveSampler::from_jet(TAU, true, |t| {
                let (s, co) = Taylor::variable(t).sin_cos();
                vec3(co, s, c(1.0))
            }),
        ),
        "helicoid" => {
            let len = positive("length")?;
            (
                CurveSampler::from_jet(len, false, |t| {
                    let u = Taylor::variable(t);
                    let (s, co) = u.sin_cos();
                    vec3(-(u * co), c(1.0) - u * s, u)
                }),
                CurveSampler::from_jet(len, false, |t| {
                    let (s, co) = Taylor::variable(t).sin_cos();
                    vec3(-s, co, c(0.0))
                }),
            )
        }
        "helix-tangent-developable" => {
            let (r, b, len) = (positive("radius")?, p("slope"), positive("length")?);
            if b == 0.0 || !b.is_finite() {
                return Err(GeomError::Config(
                    "'slope' must be finite and nonzero".into(),
                ));
            }
            (
                CurveSampler::from_jet(len, false, move |t| {
                    let u = Taylor::variable(t);
                    let (s, co) = u.sin_cos();
                    vec3(co * r, s * r, u * b)
                }),
                CurveSampler::from_jet(len, false, move |t| {
                    let (s, co) = Taylor::variable(t).sin_cos();
                    vec3(-(s * r), co * r, c(b))
                }),
            )
        }
        "latitude-circle-director" => {
            let (phi, r, twist) = (p("colatitude"), positive("radius")?, p("twist"));
            if !(phi > 0.0 && phi < std::f64::consts::PI) {
                return Err(GeomError::Config(format!(
                    "'colatitude' must lie in (0, pi), got {phi}"
                )));
            }
            let (sp, cp) = phi.sin_cos();
            (
                CurveSampler::from_jet(TAU, true, move |t| {
                    let (s, co) = Taylor::variable(t).sin_cos();
                    vec3(co * r, s * r, c(0.0))
                }),
                CurveSampler::from_jet(TAU, true, move |t| {
                    let (s, co) = (Taylor::variable(t) + c(twist)).sin_cos();
                    vec3(co * sp, s * sp, c(cp))
                }),
            )
        }
        "closed-skew" => (
            CurveSampler::from_jet(TAU, true, |t| {
                let u = Taylor::variable(t);
                let (s, co) = u.sin_cos();
                let c3 = (u * 3.0).cos();
                vec3(co * 2.0, s + c3 * 0.2, s * 0.4)
            }),
            CurveSampler::from_jet(TAU, true, |t| {
                let u = Taylor::variable(t);
                let (s, co) = u.sin_cos();
                let s2 = (u * 2.0).sin();
                vec3(co, s, c(0.5) + s2 * 0.3)
            }),
        ),
        _ => unreachable!("catalog entry without a builder"),
    };
    RuledSurfaceDef::new(base, director)
}
