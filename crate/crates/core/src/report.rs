//! Plot-ready output tables and compare summaries.
//!
//! CSV values carry 17 significant digits so round-trips through text are
//! lossless; byte-identical output across runs and thread counts is part of
//! the CLI contract.

use num_complex::Complex64;
use serde::Serialize;

use crate::diagnostics::JumpSite;

/// A rectangular table with named columns.
#[derive(Debug, Clone)]
pub struct ProfileTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl ProfileTable {
    pub fn new(columns: &[&str]) -> Self {
        ProfileTable {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_g17(*v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Shortest representation that survives an exact f64 round-trip (17
/// significant digits in the worst case).
pub fn format_g17(v: f64) -> String {
    format!("{v:.16e}")
}

/// One row of a spectrum export.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRow {
    pub n: i64,
    pub k: f64,
    pub kappa_or_nu: f64,
    pub lambda: f64,
    pub norm_sq: f64,
    pub residual: f64,
}

pub fn spectrum_csv(rows: &[SpectrumRow]) -> String {
    let mut out = String::from("n,k_n,kappa_or_nu,lambda_n,norm_sq,residual\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.n,
            format_g17(r.k),
            format_g17(r.kappa_or_nu),
            format_g17(r.lambda),
            format_g17(r.norm_sq),
            format_g17(r.residual),
        ));
    }
    out
}

/// Serialisable echo of a jump site.
#[derive(Debug, Clone, Serialize)]
pub struct JumpTableEntry {
    pub x: f64,
    pub h_dk_abs: f64,
    pub predicted_jump: f64,
    pub cusp_coeff: f64,
    /// Symmetric finite-difference estimate from the closed form.
    pub estimated_jump: f64,
}

impl JumpTableEntry {
    pub fn from_site(site: &JumpSite, estimated_jump: f64) -> Self {
        JumpTableEntry {
            x: site.x,
            h_dk_abs: site.h_dk_abs,
            predicted_jump: site.predicted_jump,
            cusp_coeff: site.cusp_coeff,
            estimated_jump,
        }
    }
}

/// JSON summary of a compare run.
#[derive(Debug, Clone, Serialize)]
pub struct CompareSummary {
    pub problem: String,
    pub p: u64,
    pub q: u64,
    pub reduced_from_input: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    pub t: f64,
    pub modes: u32,
    pub hilbert_modes: usize,
    pub grid: usize,
    pub delta: f64,
    pub sup_err: f64,
    pub l2_err: f64,
    pub excluded_points: usize,
    pub threshold: f64,
    pub passed: bool,
    pub jump_table: Vec<JumpTableEntry>,
    pub cusp_growth_rates: Vec<Vec<f64>>,
    /// For the dislocation: whether the evaluated side is the one revived
    /// at the configured time; the complementary side fractalises.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non_revival_side: Option<bool>,
}

/// Output bundle of a compare run: the per-point decomposition plus the
/// summary.
#[derive(Debug, Clone)]
pub struct CompareOutput {
    pub table: ProfileTable,
    pub summary: CompareSummary,
}

/// Complex sample convenience for table assembly.
pub fn push_complex(row: &mut Vec<f64>, v: Complex64) {
    row.push(v.re);
    row.push(v.im);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_is_lossless() {
        let v = std::f64::consts::PI * 1e-7;
        let s = format_g17(v);
        let back: f64 = s.parse().unwrap();
        assert_eq!(v, back);
    }

    #[test]
    fn table_csv_shape() {
        let mut t = ProfileTable::new(&["x", "u"]);
        t.push(vec![0.5, 1.0]);
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "x,u");
        assert_eq!(lines.next().unwrap().split(',').count(), 2);
    }
}
