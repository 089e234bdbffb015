use sq2::lab::TwistTower;
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let window: u32 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(64);
    let d_max: u32 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(8);
    let r_top: u32 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(4);
    let t0 = Instant::now();
    let tower = TwistTower::build(r_top, d_max, window).unwrap();
    println!("tower W={window} d_max={d_max} r_top={r_top} built in {:?}", t0.elapsed());
    for r in 0..=r_top {
        for d in 1..=d_max {
            let dim = tower.ext_dim(d, r);
            if dim > 0 {
                let degs: Vec<u32> = tower.ext_to_f1[r as usize].group(d).rep_degrees.clone();
                print!("dim(d={d},r={r})={dim}@{degs:?} ");
            }
        }
    }
    println!();
    let t0 = Instant::now();
    for r in 0..r_top {
        for d in [2u32, 4, 6, 8] {
            if d > d_max { continue; }
            let (rank, dim) = tower.twist_map_rank(d, r).unwrap();
            if dim > 0 || rank > 0 {
                print!("map(d={d},{r}->{}):{rank}/{dim} ", r + 1);
            }
        }
    }
    println!("\nmaps in {:?}", t0.elapsed());
}
