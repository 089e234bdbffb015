use sq2::lab::phi_f1;
use sq2::resolve::minimal_projective_resolution;
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let window: u32 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(96);
    let r: u32 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(3);
    let levels: usize = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(10);
    let m = phi_f1(r, window).unwrap();
    let t0 = Instant::now();
    let res = minimal_projective_resolution(&m, levels - 1, window).unwrap();
    println!("res r={r} W={window} levels={levels}: {:?}", t0.elapsed());
    for s in 0..res.num_levels() {
        let gens = res.generator_degrees(s);
        let dim_top = res.level(s).dim(window);
        let dim_mid = res.level(s).dim(window / 2);
        let total: usize = (0..=window).map(|t| res.level(s).dim(t)).sum();
        println!("  s={s}: #gens={} dim@{}={} dim@{}={} total={}",
            gens.len(), window, dim_top, window / 2, dim_mid, total);
    }
}
