use std::time::Instant;

use strongcover::coloring::verify_cover;
use strongcover::construct::{cover_complete, size_bound};
use strongcover::hypergraph::complete_hypergraph;

#[test]
#[ignore]
fn probe_construct_grid() {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    for k in [3usize, 4, 5] {
        for n in k..=40 {
            let g = complete_hypergraph(n, k).unwrap();
            for &(r, p) in &[(3usize, 3usize), (4, 3), (5, 3), (4, 4), (5, 4)] {
                if p.min(k) > r {
                    continue;
                }
                let t0 = Instant::now();
                let cover = cover_complete(n, k, r, p).unwrap();
                let built = t0.elapsed();
                let bound = size_bound(n, k, r, p).unwrap().value.ceil() as usize;
                let ok = verify_cover(&g, &cover, p).unwrap();
                assert!(ok, "invalid cover at n={n} k={k} r={r} p={p}");
                assert!(
                    cover.len() <= bound,
                    "size {} > bound {bound} at n={n} k={k} r={r} p={p}",
                    cover.len()
                );
                worst = worst.max(cover.len() as f64 / bound as f64);
                if built.as_millis() > 300 {
                    println!(
                        "slow: n={n} k={k} r={r} p={p}: size={} bound={bound} built in {:?}",
                        cover.len(),
                        built
                    );
                }
            }
        }
    }
    println!("grid done in {:?}, worst size/bound ratio {worst:.3}", t.elapsed());
}
