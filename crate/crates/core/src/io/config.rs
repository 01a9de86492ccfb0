//! Surface configuration documents.
//!
//! One `key = value` pair per line, `#` starts a comment. Exactly one of
//! three shapes is allowed:
//!
//! ```text
//! # catalog surface
//! catalog = helix-tangent-developable
//! param.radius = 2
//!
//! # expressions in t
//! base = (-t*cos(t), 1 - t*sin(t), t)
//! director = (-sin(t), cos(t), 0)
//! period = 2*pi
//! periodic = false
//!
//! # tabulated samples, uniform over the period
//! base_sample = 1, 0, 0
//! director_sample = 0, 1, 1
//! ...
//! ```

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;

use crate::dual::Vec3;
use crate::error::{GeomError, Result};
use crate::io::catalog;
use crate::io::expr::{Expr, VectorExpr};
use crate::numerics::{interpolate_open, interpolate_periodic, CurveSampler, Taylor};
use crate::surface::RuledSurfaceDef;

/// Points at which expression surfaces are probed for non-finite values.
const PROBE_SAMPLES: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceConfig {
    Catalog {
        name: String,
        params: BTreeMap<String, f64>,
    },
    Expression {
        base: VectorExpr,
        director: VectorExpr,
        period: f64,
        periodic: bool,
    },
    Tabulated {
        base: Vec<Vec3>,
        director: Vec<Vec3>,
        period: f64,
        periodic: bool,
    },
}

struct Entry<'a> {
    key: &'a str,
    value: &'a str,
    line: usize,
    column: usize,
}

fn split_lines(text: &str) -> Result<Vec<Entry<'_>>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let eq = content.find('=').ok_or(GeomError::Parse {
            line,
            column: content.len() - content.trim_start().len() + 1,
            message: "expected 'key = value'".into(),
        })?;
        let key = content[..eq].trim();
        if key.is_empty() {
            return Err(GeomError::Parse {
                line,
                column: 1,
                message: "missing key before '='".into(),
            });
        }
        let rest = &content[eq + 1..];
        let lead = rest.len() - rest.trim_start().len();
        out.push(Entry {
            key,
            value: rest.trim(),
            line,
            column: content[..eq + 1 + lead].chars().count() + 1,
        });
    }
    Ok(out)
}

fn number(e: &Entry<'_>) -> Result<f64> {
    let x = Expr::parse_at(e.value, e.line, e.column)?;
    if x.depends_on_t() {
        return Err(GeomError::Parse {
            line: e.line,
            column: e.column,
            message: format!("'{}' must be a constant", e.key),
        });
    }
    let v = x.value(0.0)?;
    if !v.is_finite() {
        return Err(GeomError::NonFinite { t: 0.0 });
    }
    Ok(v)
}

fn boolean(e: &Entry<'_>) -> Result<bool> {
    match e.value {
        "true" | "yes" => Ok(true),
        "false" | "no" => Ok(false),
        _ => Err(GeomError::Parse {
            line: e.line,
            column: e.column,
            message: format!("expected true or false, found '{}'", e.value),
        }),
    }
}

fn sample(e: &Entry<'_>) -> Result<Vec3> {
    let v = VectorExpr::parse_at(e.value, e.line, e.column)?;
    if v.0.iter().any(Expr::depends_on_t) {
        return Err(GeomError::Parse {
            line: e.line,
            column: e.column,
            message: "samples must be constant".into(),
        });
    }
    v.value(0.0)
}

fn duplicate(e: &Entry<'_>) -> GeomError {
    GeomError::Parse {
        line: e.line,
        column: 1,
        message: format!("duplicate key '{}'", e.key),
    }
}

fn set_once<T>(slot: &mut Option<T>, e: &Entry<'_>, v: T) -> Result<()> {
    if slot.is_some() {
        return Err(duplicate(e));
    }
    *slot = Some(v);
    Ok(())
}

impl SurfaceConfig {
    pub fn parse(text: &str) -> Result<SurfaceConfig> {
        let mut name = None;
        let mut params = BTreeMap::new();
        let (mut base, mut director) = (None, None);
        let (mut period, mut periodic) = (None, None);
        let (mut base_samples, mut director_samples) = (Vec::new(), Vec::new());
        for e in split_lines(text)? {
            match e.key {
                "catalog" => {
                    let entry = catalog::lookup(e.value).ok_or_else(|| {
                        GeomError::Config(format!(
                            "line {}: unknown catalog surface '{}'",
                            e.line, e.value
                        ))
                    })?;
                    set_once(&mut name, &e, entry.name.to_string())?;
                }
                "base" => set_once(
                    &mut base,
                    &e,
                    VectorExpr::parse_at(e.value, e.line, e.column)?,
                )?,
                "director" => set_once(
                    &mut director,
                    &e,
                    VectorExpr::parse_at(e.value, e.line, e.column)?,
                )?,
                "period" => set_once(&mut period, &e, number(&e)?)?,
                "periodic" | "closed" => set_once(&mut periodic, &e, boolean(&e)?)?,
                "base_sample" => base_samples.push(sample(&e)?),
                "director_sample" => director_samples.push(sample(&e)?),
                k => match k.strip_prefix("param.") {
                    Some(p) if !p.is_empty() => {
                        if params.insert(p.to_string(), number(&e)?).is_some() {
                            return Err(duplicate(&e));
                        }
                    }
                    _ => {
                        return Err(GeomError::Parse {
                            line: e.line,
                            column: 1,
                            message: format!("unknown key '{k}'"),
                        })
                    }
                },
            }
        }
        let has_expr = base.is_some() || director.is_some();
        let has_table = !base_samples.is_empty() || !director_samples.is_empty();
        let shapes = name.is_some() as u8 + has_expr as u8 + has_table as u8;
        if shapes != 1 {
            return Err(GeomError::Config(format!(
                "a configuration needs exactly one of catalog, base/director expressions or samples; found {shapes}"
            )));
        }
        if let Some(name) = name {
            if period.is_some() || periodic.is_some() {
                return Err(GeomError::Config(
                    "catalog surfaces fix their own period".into(),
                ));
            }
            return Ok(SurfaceConfig::Catalog { name, params });
        }
        if !params.is_empty() {
            return Err(GeomError::Config(
                "param.* keys only apply to catalog surfaces".into(),
            ));
        }
        let period = period.unwrap_or(TAU);
        if period <= 0.0 {
            return Err(GeomError::Config(format!(
                "period must be positive, got {period}"
            )));
        }
        let periodic = periodic.unwrap_or(true);
        if has_expr {
            let (Some(base), Some(director)) = (base, director) else {
                return Err(GeomError::Config(
                    "expression surfaces need both base and director".into(),
                ));
            };
            return Ok(SurfaceConfig::Expression {
                base,
                director,
                period,
                periodic,
            });
        }
        if base_samples.len() != director_samples.len() {
            return Err(GeomError::Config(format!(
                "{} base samples but {} director samples",
                base_samples.len(),
                director_samples.len()
            )));
        }
        Ok(SurfaceConfig::Tabulated {
            base: base_samples,
            director: director_samples,
            period,
            periodic,
        })
    }

    /// Writes the document form; `parse` of the output gives back `self`.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        match self {
            SurfaceConfig::Catalog { name, params } => {
                let _ = writeln!(out, "catalog = {name}");
                for (k, v) in params {
                    let _ = writeln!(out, "param.{k} = {}", Expr::Number(*v));
                }
            }
            SurfaceConfig::Expression {
                base,
                director,
                period,
                periodic,
            } => {
                let _ = writeln!(out, "base = {base}");
                let _ = writeln!(out, "director = {director}");
                let _ = writeln!(out, "period = {}", Expr::Number(*period));
                let _ = writeln!(out, "periodic = {periodic}");
            }
            SurfaceConfig::Tabulated {
                base,
                director,
                period,
                periodic,
            } => {
                let _ = writeln!(out, "period = {}", Expr::Number(*period));
                let _ = writeln!(out, "periodic = {periodic}");
                let row = |v: &Vec3| {
                    format!(
                        "{}, {}, {}",
                        Expr::Number(v.x),
                        Expr::Number(v.y),
                        Expr::Number(v.z)
                    )
                };
                for v in base {
                    let _ = writeln!(out, "base_sample = {}", row(v));
                }
                for v in director {
                    let _ = writeln!(out, "director_sample = {}", row(v));
                }
            }
        }
        out
    }

    pub fn build(&self) -> Result<RuledSurfaceDef> {
        match self {
            SurfaceConfig::Catalog { name, params } => catalog::build(name, params),
            SurfaceConfig::Expression {
                base,
                director,
                period,
                periodic,
            } => {
                let (period, periodic) = (*period, *periodic);
                let n = PROBE_SAMPLES;
                let count = if periodic { n } else { n + 1 };
                for i in 0..count {
                    let t = period * i as f64 / n as f64;
                    for e in [base, director] {
                        let jet = e.jet(t)?;
                        if !jet.is_finite_by(|v| v.iter().all(|x| x.is_finite())) {
                            return Err(GeomError::NonFinite { t });
                        }
                    }
                }
                let sampler = |e: &VectorExpr| {
                    let e = e.clone();
                    CurveSampler::from_jet(period, periodic, move |t| {
                        e.jet(t)
                            .unwrap_or_else(|_| Taylor::constant(Vec3::repeat(f64::NAN)))
                    })
                };
                RuledSurfaceDef::new(sampler(base), sampler(director))
            }
            SurfaceConfig::Tabulated {
                base,
                director,
                period,
                periodic,
            } => {
                if let Some(i) = base
                    .iter()
                    .chain(director)
                    .position(|v| !v.iter().all(|x| x.is_finite()))
                {
                    return Err(GeomError::NonFinite {
                        t: *period * (i % base.len()) as f64 / base.len() as f64,
                    });
                }
                let (b, d) = if *periodic {
                    (
                        interpolate_periodic(base, *period)?,
                        interpolate_periodic(director, *period)?,
                    )
                } else {
                    (
                        interpolate_open(base, *period)?,
                        interpolate_open(director, *period)?,
                    )
                };
                RuledSurfaceDef::new(b, d)
            }
        }
    }
}
