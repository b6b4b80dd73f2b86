use hbknot_core::construction::ConstructionParams;
use hbknot_core::disksearch::{search, SearchConfig};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let p: i64 = args[1].parse().unwrap();
    let q: i64 = args[2].parse().unwrap();
    let params = ConstructionParams::new(p, q).unwrap();
    let t = std::time::Instant::now();
    let report = search(&params, &SearchConfig::default()).unwrap();
    println!(
        "({p},{q}): {:?} configs={} nodes={} completed={} refuted={} wraps={}",
        t.elapsed(),
        report.configs,
        report.dfs_nodes,
        report.completed_candidates,
        report.all_refuted(),
        report.wrap_prunes,
    );
    for (k, v) in &report.tally {
        println!("  {k}: {v}");
    }
}
