// Scratch timing probe for the elimination engines on the real workloads.
use std::time::Instant;

use anzai_core::{cokernel, exterior_power, kernel_rank, IntMatrix};

fn anzai(n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for i in 0..n - 1 {
        m.set(i, i + 1, 1.into());
    }
    m
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let mode = args.get(1).map(String::as_str).unwrap_or("snf12");
    match mode {
        "snf12" => {
            let a = anzai(12);
            let t0 = Instant::now();
            for r in 0..=12 {
                let t1 = Instant::now();
                let e = exterior_power(&a, r).unwrap();
                let m = e.sub_identity();
                let te = t1.elapsed();
                let t2 = Instant::now();
                let g = cokernel(&m);
                println!(
                    "r={r:2} size={:4} exterior={:.2?} snf={:.2?} coker={g}",
                    m.rows(),
                    te,
                    t2.elapsed()
                );
            }
            println!("total {:.2?}", t0.elapsed());
        }
        "rank" => {
            let n: usize = args[2].parse().unwrap();
            let a = anzai(n);
            let t0 = Instant::now();
            let mut total = 0usize;
            for r in 0..=n {
                let t1 = Instant::now();
                let e = exterior_power(&a, r).unwrap();
                let m = e.sub_identity();
                let te = t1.elapsed();
                let t2 = Instant::now();
                let kr = kernel_rank(&m);
                total += kr;
                println!("r={r:2} size={:5} exterior={:.2?} rank={:.2?} ker={kr}", m.rows(), te, t2.elapsed());
            }
            println!("a_{n} = {total}  total {:.2?}", t0.elapsed());
        }
        _ => eprintln!("unknown mode"),
    }
}
