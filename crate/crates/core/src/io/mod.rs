//! Text formats: expressions, surface configuration files, meshes and
//! reports, plus the command implementations behind the CLI.

pub mod catalog;
pub mod commands;
pub mod config;
pub mod expr;
pub mod mesh;
pub mod report;

pub use commands::{AngleSpec, OffsetMode, RunOptions};
pub use config::SurfaceConfig;
pub use expr::{Expr, Scalar, VectorExpr};
pub use mesh::{export_obj, write_obj, MeshOptions, MeshStats};
pub use report::{Environment, Skipped, VerifyReport};
