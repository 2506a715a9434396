//! Fock-space Toeplitz representations against Cuntz-Krieger families.

use corrkit::fixtures;
use corrkit::fdalg::{FDAlgebra, MatrixAlgebra};
use corrkit::fock::{ck_representation, cp_covariance_defect, fock_toeplitz_rep, tensor_powers};
use corrkit::graphs::graph_correspondence;
use corrkit::hilbmod::{katsura_ideal, Correspondence};
use corrkit::Tolerance;

fn main() -> corrkit::Result<()> {
    let tol = Tolerance(1e-9);
    let scalars = Correspondence::over_itself(&MatrixAlgebra::full(FDAlgebra::matrices(1)));
    let fock = fock_toeplitz_rep(&scalars, 4)?;
    print!("{}", fock.verify(tol));
    let j = katsura_ideal(&scalars, tol).basis;
    println!("C over C: covariance defect {:.3}", cp_covariance_defect(&fock, &j, tol)?);

    let fork = fixtures::fork_times_chain().e;
    let x = graph_correspondence(&fork);
    println!("tensor power dims of the fork: {:?}", tensor_powers(&x, 4)?.dims());
    let ck = ck_representation(&fork)?;
    let j = katsura_ideal(&x, tol).basis;
    println!("fork: {} paths, covariance defect {}", ck.dim(), cp_covariance_defect(&ck.rep, &j, tol)?);
    Ok(())
}
