use sq2::resolve::minimal_projective_resolution;
use sq2::umod::{free_module, frobenius, with_window};

fn main() {
    let mut m = free_module(1, 32).unwrap();
    m = frobenius(&m).unwrap();
    let m = with_window(&m, 64).unwrap();
    let res = minimal_projective_resolution(&m, 6, 64).unwrap();
    for s in 0..res.num_levels() {
        println!("P_{s}: {:?}", res.generator_degrees(s));
    }
    println!("exact={} minimal={}", res.certificates.exact, res.certificates.minimal);
}
