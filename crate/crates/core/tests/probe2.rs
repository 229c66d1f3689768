use std::time::Instant;

use strongcover::table::cover_table;

#[test]
#[ignore]
fn probe_full_table() {
    let t = Instant::now();
    let cells = cover_table(7, 7, 7, 50_000_000, true).unwrap();
    println!("computed {} cells in {:?}", cells.len(), t.elapsed());
    let mut rows: Vec<(usize, usize)> = cells.iter().map(|c| (c.n, c.k)).collect();
    rows.sort();
    rows.dedup();
    print!("{:>6} |", "n,k");
    for r in 3..=7 {
        for p in 3..=r {
            print!(" {:>5}", format!("{r},{p}"));
        }
    }
    println!();
    for (n, k) in rows {
        print!("{:>6} |", format!("{n},{k}"));
        for r in 3..=7 {
            for p in 3..=r {
                match strongcover::table::find_cell(&cells, n, k, r, p) {
                    Some(c) => print!(" {:>5}", c.value.to_string()),
                    None => print!(" {:>5}", ""),
                }
            }
        }
        println!();
    }
    let max_nodes = cells.iter().map(|c| c.nodes).max().unwrap();
    println!("max nodes in a cell: {max_nodes}");
}
