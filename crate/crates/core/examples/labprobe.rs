use sq2::lab::{check_doubling_square, run_suite, verify_ext_table};
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let tables = run_suite("tables", 64).unwrap();
    println!("tables: passed={} findings={} ({:?})", tables.passed, tables.findings.len(), t0.elapsed());
    for f in &tables.findings {
        println!("  [{:?}] {} | expected {} | actual {}", f.verdict, f.check, f.expected, f.actual);
    }

    let t0 = Instant::now();
    let ext = verify_ext_table(6, 2, 64).unwrap();
    println!("ext(6,2,64): passed={} ({:?})", ext.passed, t0.elapsed());
    for f in ext.findings.iter().filter(|f| f.verdict != sq2::lab::Verdict::Pass) {
        println!("  [{:?}] {} expected {} actual {}", f.verdict, f.check, f.expected, f.actual);
    }

    for (r, d) in [(0u32, 2u32), (1, 2), (1, 4)] {
        let t0 = Instant::now();
        let ok = check_doubling_square(r, d, 32).unwrap();
        println!("doubling square r={r} d={d}: {} ({:?})", ok, t0.elapsed());
    }
}
