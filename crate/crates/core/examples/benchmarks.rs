//! Solve the four benchmark problems at a few resolutions and print the error norms.
//!
//! `cargo run --release -p telegraph-core --example benchmarks`

use telegraph_core::analysis::{error_norms, rms_error, RmsGrid};
use telegraph_core::telegraph::{benchmark, DiscretizationConfig, SolutionField};

fn main() {
    let runs = [(1, 4, 4), (2, 8, 8), (2, 10, 10), (2, 12, 12), (2, 14, 14), (3, 4, 4), (3, 4, 6), (3, 6, 6), (4, 4, 4), (4, 6, 6)];
    println!("{:>3} {:>3} {:>3} {:>11} {:>11} {:>11} {:>9}", "ex", "N", "Mt", "Linf", "linf(grid)", "rms", "seconds");
    for (id, n, mt) in runs {
        let b = benchmark(id).expect("registered benchmark");
        let field = SolutionField::compute(&b.problem, DiscretizationConfig::new(n, n, mt)).expect("solve");
        let r = error_norms(&*b.exact, &field);
        let rms = rms_error(&*b.exact, &field, RmsGrid::Collocation);
        println!(
            "{id:>3} {n:>3} {mt:>3} {:>11.3e} {:>11.3e} {rms:>11.3e} {:>9.4}",
            r.big_linf,
            r.linf,
            r.elapsed.as_secs_f64()
        );
    }
}
