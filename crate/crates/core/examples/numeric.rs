use std::time::Instant;

use shefferzeta::quadrature::{numeric_check_ids, verify_numeric, Params, Precision};

fn main() {
    let digits = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(30);
    let prec = Precision::new(digits).expect("precision");
    let total = Instant::now();
    for id in numeric_check_ids() {
        let start = Instant::now();
        let results = verify_numeric(id, &Params::default(), prec, None).expect("known id");
        for r in &results {
            let d = r.diagnostic.as_deref().unwrap_or("");
            println!("{:<18} {:<40} {:<5} rel={} {}", r.id, r.params, r.pass, shefferzeta::quadrature::format_float(&r.rel_diff, 3), d);
        }
        println!("  {id}: {:.2?}", start.elapsed());
    }
    println!("total {:.2?}", total.elapsed());
}
