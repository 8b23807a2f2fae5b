//! The pair (a²b⁻³, abab⁻¹a⁻¹b⁻¹): no long common factor, and no
//! cancellative product anywhere in its inversion/rotation orbit.
use ac_cyclic::certificates::{check_cct2_inapplicable, check_conjecture4};
use ac_cyclic::word::w;

fn main() {
    let (w1, w2) = (w("aaBBB"), w("abaBAB"));
    let bound = check_conjecture4(&w1, &w2);
    print!("{}", bound.to_toml());
    println!();
    let orbit = check_cct2_inapplicable(&w1, &w2);
    print!("{}", orbit.to_toml());
    assert!(!bound.inequality_satisfiable);
    assert!(orbit.certifies_non_trivializable);
}
