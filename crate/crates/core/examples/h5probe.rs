use sq2::resolve::{minimal_injective_resolution, operation_matrix, print_operation_matrix};
use sq2::umod::h_k;
use std::time::Instant;

fn main() {
    for k in [5u32, 6] {
        let t0 = Instant::now();
        let hk = h_k(k).unwrap();
        let res = minimal_injective_resolution(&hk, 4).unwrap();
        let pretty: Vec<String> = res.terms.iter().map(|t| t.pretty()).collect();
        println!("H({k}) terms: {:?}  ({:?})", pretty, t0.elapsed());
        println!("  exact={} minimal={}", res.certificates.exact, res.certificates.minimal);
        if k == 5 {
            let rows = operation_matrix(&res.maps[0], &res.terms[0], &res.terms[1]).unwrap();
            println!("  d1 blocks: {}", print_operation_matrix(&rows));
        }
    }
}
