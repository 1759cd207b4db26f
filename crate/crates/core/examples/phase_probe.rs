use std::time::Instant;
use brooks_core::graph::generators;
use brooks_core::{brooks_color, grow_maximal_path, ColorSystem};

fn main() {
    for &n in &[10_000usize, 100_000, 1_000_000] {
        let t = Instant::now();
        let g = generators::random_regular(n, 4, 41).unwrap();
        let t_gen = t.elapsed().as_secs_f64();

        let t = Instant::now();
        let parts = g.components();
        let t_comp = t.elapsed().as_secs_f64();
        let ncomp = parts.count();

        let t = Instant::now();
        let (x, y) = g.find_nonadjacent_neighbors(0).unwrap();
        let path = grow_maximal_path(&g, x, 0, y);
        let t_grow = t.elapsed().as_secs_f64();
        let covered = path.len();
        let cyc = path.cycle().len();

        let sys = ColorSystem::plain(&g, 4);
        let t = Instant::now();
        let outcome = brooks_color(&sys).unwrap();
        let t_total = t.elapsed().as_secs_f64();
        std::hint::black_box(&outcome);

        println!(
            "n={n:>8}: gen {t_gen:.4}s comps {t_comp:.4}s ({ncomp}) grow {t_grow:.4}s (path {covered}, cycle {cyc}) total {t_total:.4}s"
        );
    }
}
