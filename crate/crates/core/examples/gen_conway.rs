//! Regenerates `data/conway.txt` for every p^m below a size cap.
//!
//! cargo run --release -p tracecodes --example gen_conway -- 1048576 > crates/core/data/conway.txt

use tracecodes::conway::{compute_conway, ConwayTable};

fn main() {
    let cap: u64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(1 << 20);
    let mut table = ConwayTable::default();
    // Primes below 100 only; larger characteristics are rarely needed and
    // a custom modulus covers them.
    for p in (2u32..100).filter(|&p| (2..p).all(|d| p % d != 0)) {
        let mut m = 1;
        while (p as u64).pow(m) <= cap {
            match compute_conway(p, m, &table) {
                Some(f) => table.insert(p, m, f),
                None => eprintln!("no entry for GF({p}^{m})"),
            }
            m += 1;
        }
    }
    println!("# Conway polynomials: p m c_0 c_1 ... c_m (low-to-high, monic)");
    print!("{}", table.to_text());
}
