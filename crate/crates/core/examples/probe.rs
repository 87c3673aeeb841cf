use mvdual_core::cyclotomic::*;
use mvdual_core::entropy::*;

fn main() {
    // scan 2..40
    let scan = prime_scan(2, 40, 2).unwrap();
    for s in &scan.seeds {
        println!("p={} t={} k={} support={:?} coeffs={:?}", s.p, s.t, s.poly.k(), s.poly.support(), s.poly.coeffs());
    }
    println!("skipped: {:?}", scan.skipped);
    // factors of 17
    let f = factor_cyclotomic(17, 2).unwrap();
    for fac in &f.factors { println!("phi17 factor: {} (support {})", fac, fac.support_size()); }
    // mersenne t=5
    let (p, s, poly) = mersenne_trinomial(5).unwrap().unwrap();
    println!("mersenne t=5: p={p} s={s} poly={poly}");
    // crossover for p=7 seed
    let seed = sparse_factor_search(7, 2).unwrap().unwrap();
    let rep = contradiction_scan(&seed, 0.25, 1.0, default_khintchine_constant(), 7, 260).unwrap();
    println!("crossover m* = {:?}", rep.crossover_m);
    println!("slopes: cube {:?} phase {:?}", rep.slope_cube, rep.slope_phase);
    let rep2 = contradiction_scan(&seed, 0.25, 1.0, default_khintchine_constant(), 40, 220).unwrap();
    println!("window 40..220: m* = {:?} slopes {:?} {:?}", rep2.crossover_m, rep2.slope_cube, rep2.slope_phase);
    // scan to 1000
    let big = prime_scan(2, 1000, 2).unwrap();
    let ps: Vec<u64> = big.seeds.iter().map(|s| s.p).collect();
    println!("scan to 1000: {:?} skipped {:?}", ps, big.skipped);
}
