use std::time::Instant;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let t = Instant::now();
    let reports = shefferzeta::identities::run_all(n).expect("sweep");
    for r in &reports {
        println!("{:<16} {:?}", r.id, r.status);
    }
    println!("{} checks in {:.2?}", reports.len(), t.elapsed());
}
