//! Wavefront OBJ export of ruled surfaces.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::numerics::QuadratureSpec;
use crate::surface::RuledSurfaceDef;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshOptions {
    /// Grid lines along the parameter `t`, spanning `[0, T]` inclusive.
    pub t_samples: usize,
    /// Grid lines along the ruling parameter `v`.
    pub v_samples: usize,
    pub v_min: f64,
    pub v_max: f64,
    /// Emit the striction line as a separate polyline object.
    pub striction: bool,
}

impl Default for MeshOptions {
    fn default() -> Self {
        MeshOptions {
            t_samples: 64,
            v_samples: 16,
            v_min: -2.0,
            v_max: 2.0,
            striction: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MeshStats {
    pub vertices: usize,
    pub quads: usize,
    pub striction_vertices: usize,
}

/// Renders `surface` as OBJ text. Vertex `(i, j)` sits at
/// `k(tᵢ) + vⱼ q(tᵢ)` and has index `i·v_samples + j + 1`.
pub fn export_obj(
    surface: &RuledSurfaceDef,
    opts: &MeshOptions,
    name: &str,
) -> Result<(String, MeshStats)> {
    let (nt, nv) = (opts.t_samples, opts.v_samples);
    if nt < 2 || nv < 2 {
        return Err(GeomError::Config(format!(
            "mesh grid must be at least 2x2, got {nt}x{nv}"
        )));
    }
    if !(opts.v_min.is_finite() && opts.v_max.is_finite() && opts.v_min < opts.v_max) {
        return Err(GeomError::Config(format!(
            "invalid ruling range [{}, {}]",
            opts.v_min, opts.v_max
        )));
    }
    let period = surface.period();
    let ts: Vec<f64> = (0..nt)
        .map(|i| period * i as f64 / (nt - 1) as f64)
        .collect();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# ruled surface, {nt} x {nv} grid, t in [0, {period}], v in [{}, {}]",
        opts.v_min, opts.v_max
    );
    let _ = writeln!(out, "o {name}");
    for &t in &ts {
        for j in 0..nv {
            let v = opts.v_min + (opts.v_max - opts.v_min) * j as f64 / (nv - 1) as f64;
            let p = surface.point(t, v);
            if !p.iter().all(|x| x.is_finite()) {
                return Err(GeomError::NonFinite { t });
            }
            let _ = writeln!(out, "v {:.12} {:.12} {:.12}", p.x, p.y, p.z);
        }
    }
    for i in 0..nt - 1 {
        for j in 0..nv - 1 {
            let a = i * nv + j + 1;
            let b = a + nv;
            let _ = writeln!(out, "f {a} {b} {} {}", b + 1, a + 1);
        }
    }
    let mut stats = MeshStats {
        vertices: nt * nv,
        quads: (nt - 1) * (nv - 1),
        striction_vertices: 0,
    };
    if opts.striction {
        let spec = QuadratureSpec::default();
        // cylinders have no striction line; the mesh is still useful
        if let Ok(st) = surface.striction_curve(&spec) {
            let pts: Vec<_> = if st.point_degenerate {
                vec![st.curve.evaluate(0.0)]
            } else {
                ts.iter().map(|&t| st.curve.evaluate(t)).collect()
            };
            if pts.iter().all(|p| p.iter().all(|x| x.is_finite())) {
                let _ = writeln!(out, "o {name}_striction");
                for p in &pts {
                    let _ = writeln!(out, "v {:.12} {:.12} {:.12}", p.x, p.y, p.z);
                }
                let first = stats.vertices + 1;
                if pts.len() == 1 {
                    let _ = writeln!(out, "p {first}");
                } else {
                    let idx: Vec<String> =
                        (first..first + pts.len()).map(|i| i.to_string()).collect();
                    let _ = writeln!(out, "l {}", idx.join(" "));
                }
                stats.striction_vertices = pts.len();
            }
        }
    }
    Ok((out, stats))
}

pub fn write_obj(
    path: &Path,
    surface: &RuledSurfaceDef,
    opts: &MeshOptions,
    name: &str,
) -> Result<MeshStats> {
    let (text, stats) = export_obj(surface, opts, name)?;
    std::fs::write(path, text).map_err(|e| GeomError::Io(format!("{}: {e}", path.display())))?;
    Ok(stats)
}
