//! Times one table computation.
//!
//! `cargo run --release --example timing -- 1,2 10000 4`

use std::time::Instant;

use cutkit::engine::compute_table;
use cutkit::ruleset::RulesetSpec;

fn main() {
    let mut args = std::env::args().skip(1);
    let spec: RulesetSpec = args
        .next()
        .as_deref()
        .unwrap_or("1,2")
        .parse()
        .expect("ruleset");
    let n: usize = args.next().map_or(10_000, |a| a.parse().expect("N"));
    let threads: usize = args.next().map_or(1, |a| a.parse().expect("threads"));
    let start = Instant::now();
    let t = compute_table(&spec, n, threads).expect("table");
    println!(
        "{spec} N={n} threads={threads}: {:.2?}, G(N)={}",
        start.elapsed(),
        t.g(n)
    );
}
