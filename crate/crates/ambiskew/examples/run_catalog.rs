use ambiskew::{catalog, report::RunOptions, verify::verify_certificate, Bounds};

fn main() {
    for e in catalog::list() {
        let t = std::time::Instant::now();
        match e.run(&Bounds::default(), RunOptions::default()) {
            Ok(rs) => {
                for r in rs {
                    println!("{} | {} | verify={:?}", e.name, r.to_text().replace('\n', " / "), verify_certificate(&r));
                }
            }
            Err(err) => println!("{} ERROR {err}", e.name),
        }
        println!("  {} took {:?}", e.name, t.elapsed());
    }
}
