use std::time::Instant;
fn main() {
    let t0 = Instant::now();
    let polys = ising_core::oracle::ising_polynomials(3).unwrap();
    println!("n=3 full scan: {:?}", t0.elapsed());
    for (g, p) in polys.iter().enumerate() {
        let one = ising_core::rational::rat_int(1);
        println!("  g={g}: {} terms, mass {}", p.len(), p.eval(&one, &one, &one));
    }
    let t1 = Instant::now();
    let uni = ising_core::oracle::unicellular_polynomials(3).unwrap();
    println!("n=3 unicellular scan: {:?}", t1.elapsed());
    println!("  g=2 terms: {}", uni[2].len());
    assert_eq!(uni[2], polys[2]);
    println!("  top-genus slice equals filtered scan: ok");
}
