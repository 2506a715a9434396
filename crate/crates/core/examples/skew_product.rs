//! Skew-product graphs: `X(E ×_α F) ≅ X(E) ⊠ X(F)` and DOT export.

use corrkit::fixtures;
use corrkit::graphs::{
    ideal_compatibility_check, random_instances, skew_product, to_dot, verify_graph_product_isomorphism, RandomBounds,
};
use corrkit::Tolerance;

fn main() -> corrkit::Result<()> {
    let tol = Tolerance::DEFAULT;
    let skw = fixtures::skw();
    let p = skew_product(&skw.e, &skw.action, &skw.f, &skw.labeling)?;
    print!("{}", to_dot(&p, "skw", None));
    print!("{}", verify_graph_product_isomorphism(&skw.e, &skw.action, &skw.f, &skw.labeling, tol));
    print!("{}", ideal_compatibility_check(&skw.e, &skw.action, &skw.f, &skw.labeling, tol));

    let passed = random_instances(7, 25, RandomBounds::default())
        .iter()
        .filter(|i| verify_graph_product_isomorphism(&i.e, &i.action, &i.f, &i.labeling, tol).passed())
        .count();
    println!("random instances certified: {passed}/25");
    Ok(())
}
