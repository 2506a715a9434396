//! Graph correspondences as Hilbert modules: inner products, compacts, linking algebras and
//! Katsura ideals.

use corrkit::fixtures;
use corrkit::graphs::graph_correspondence;
use corrkit::hilbmod::{adjoint_of, is_full, is_katsura_nondegenerate, katsura_ideal, linking_algebra, theta};
use corrkit::linalg;
use corrkit::Tolerance;

fn main() -> corrkit::Result<()> {
    let tol = Tolerance::DEFAULT;
    for (name, g) in [("2-cycle", fixtures::two_cycle()), ("v0 -> v1", fixtures::single_edge()), ("loop", fixtures::single_loop())] {
        let x = graph_correspondence(&g);
        let j = katsura_ideal(&x, tol);
        println!(
            "{name}: dim X = {}, dim J = {}, nondegenerate = {}, full = {}",
            x.dim(),
            j.dim(),
            is_katsura_nondegenerate(&x, tol),
            is_full(x.module(), tol)
        );
    }

    let x = graph_correspondence(&fixtures::two_cycle());
    let (a, b) = (linalg::unit_vec(2, 0), linalg::unit_vec(2, 1));
    let t = theta(x.module(), &a, &b);
    let adj = adjoint_of(x.module(), &t.matrix, tol)?;
    println!("Theta_(a,b)* = Theta_(b,a): {}", linalg::max_abs(&(adj.matrix - theta(x.module(), &b, &a).matrix)) < 1e-12);

    let l = linking_algebra(x.module(), 1e-12);
    println!("linking algebra: {}", l.verify(tol));
    Ok(())
}
