//! CSV serialization of simulator outputs.
//!
//! Fields are semicolon-separated so that occupation vectors can stay
//! comma-joined inside a single field. Floats use scientific notation with
//! nine significant digits and `.` as the decimal separator.

use crate::distribution::Distribution;
use crate::distinguishability::BenchmarkResult;
use crate::emitter::RateRow;

/// Scientific notation, 9 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.8e}")
}

/// Columns `occupation;probability`, rows in lexicographic occupation order.
pub fn distribution_to_csv(dist: &Distribution) -> String {
    let mut out = String::from("occupation;probability\n");
    for (state, p) in dist.iter() {
        out.push_str(&format!("{state};{}\n", format_float(p)));
    }
    out
}

/// Columns `N;V;seed;delta_ideal;delta_dist`.
pub fn benchmark_results_to_csv(results: &[BenchmarkResult]) -> String {
    let mut out = String::from("N;V;seed;delta_ideal;delta_dist\n");
    for r in results {
        out.push_str(&format!(
            "{};{};{};{};{}\n",
            r.photon_number,
            format_float(r.id_value),
            r.reference_unitary_seed,
            format_float(r.delta_to_ideal),
            format_float(r.delta_to_distinguishable),
        ));
    }
    out
}

/// Columns `N;switch_transmission;rate_hz`.
pub fn rate_rows_to_csv(rows: &[RateRow]) -> String {
    let mut out = String::from("N;switch_transmission;rate_hz\n");
    for r in rows {
        out.push_str(&format!(
            "{};{};{}\n",
            r.channels,
            format_float(r.switch_transmission),
            format_float(r.rate_hz),
        ));
    }
    out
}
