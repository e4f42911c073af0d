//! Tests two-qubit density matrices for tensor-product structure by
//! comparing each one against the product of its partial traces.

use qdtree::io::fmt_complex_entry;
use qdtree::{DensityMatrix, PureState, SeparabilityReport};

fn print_matrix(label: &str, m: &DensityMatrix) {
    println!("{label}:");
    let entries = m.entries();
    for i in 0..m.dim() {
        let row: Vec<String> = (0..m.dim())
            .map(|j| fmt_complex_entry(entries[(i, j)].re, entries[(i, j)].im))
            .collect();
        println!("  {}", row.join(" "));
    }
}

fn print_report(name: &str, report: &SeparabilityReport) {
    let status = if report.separable {
        "separable"
    } else {
        "not separable"
    };
    println!(
        "{name}: {status} (max deviation {:.3e}, tolerance {:.1e})",
        report.max_deviation, report.tolerance
    );
    print_matrix("  first factor", &report.factor_first);
    print_matrix("  second factor", &report.factor_second);
}

fn main() -> Result<(), qdtree::Error> {
    let first = DensityMatrix::from_real(2, &[0.6, 0.3, 0.3, 0.4])?;
    let second = DensityMatrix::from_real(2, &[0.7, 0.1, 0.1, 0.3])?;
    let product = first.tensor(&second);
    print_report("product state", &product.factor_test(1e-6)?);

    let entangled = PureState::from_real(&[0.9, -0.3, 0.1, 0.3])?.density();
    print_report("entangled state", &entangled.factor_test(1e-6)?);
    Ok(())
}
