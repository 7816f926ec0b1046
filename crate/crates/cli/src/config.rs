//! Job configuration with materialized defaults.

use mgspec_core::graph::{EdgeLength, MetricGraph};

pub const DOF_CAP: usize = 200_000;
pub const DEFAULT_K: usize = 5;
pub const DEFAULT_H_MAX: f64 = 1e-3;
/// Truncation default is `20·u_min`; for graphs made of rays only this
/// falls back to an absolute length of 20.
pub const DEFAULT_TRUNC_FACTOR: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Csv,
}

impl OutputFormat {
    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Text => "text",
            OutputFormat::Csv => "csv",
        }
    }
}

/// Fully resolved configuration, echoed into every report header.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub h_max: f64,
    pub k: usize,
    pub t_trunc: f64,
    pub format: OutputFormat,
    pub dump_dir: Option<std::path::PathBuf>,
    /// Set when the mesh was coarsened to respect the DOF cap.
    pub auto_coarsened: bool,
}

impl JobConfig {
    /// Materialize defaults against a graph and enforce the DOF cap.
    pub fn resolve(
        graph: &MetricGraph,
        h_max: Option<f64>,
        k: Option<usize>,
        t_trunc: Option<f64>,
        format: OutputFormat,
        dump_dir: Option<std::path::PathBuf>,
    ) -> JobConfig {
        let u = graph.u_min();
        let t_trunc = t_trunc.unwrap_or(if u.is_finite() {
            DEFAULT_TRUNC_FACTOR * u
        } else {
            DEFAULT_TRUNC_FACTOR
        });
        let mut h_max = h_max.unwrap_or(DEFAULT_H_MAX);
        let dof_estimate = |h: f64| -> f64 {
            graph
                .edges()
                .iter()
                .map(|e| {
                    let l = match e.length {
                        EdgeLength::Finite(l) => l,
                        EdgeLength::Infinite => t_trunc,
                    };
                    (l / h).ceil() + 1.0
                })
                .sum()
        };
        let mut auto_coarsened = false;
        let estimate = dof_estimate(h_max);
        if estimate > DOF_CAP as f64 {
            h_max *= estimate / DOF_CAP as f64;
            auto_coarsened = true;
        }
        JobConfig {
            h_max,
            k: k.unwrap_or(DEFAULT_K),
            t_trunc,
            format,
            dump_dir,
            auto_coarsened,
        }
    }

    /// Header lines embedded in every report for reproducibility.
    pub fn header(&self, command: &str) -> Vec<String> {
        let mut lines = vec![
            format!("# mgspec {}", env!("CARGO_PKG_VERSION")),
            format!("# command = {command}"),
            format!("# h_max = {}", mgspec_core::report::fmt_sig12(self.h_max)),
            format!("# k = {}", self.k),
            format!(
                "# t_trunc = {}",
                mgspec_core::report::fmt_sig12(self.t_trunc)
            ),
            format!("# format = {}", self.format.name()),
        ];
        if self.auto_coarsened {
            lines.push("# warning = mesh coarsened to respect the DOF cap".to_string());
        }
        lines
    }
}
