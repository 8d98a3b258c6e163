//! Known filling permutations used in tests, examples and the CLI.

use crate::filling::FillingPermutation;

/// A genus-2 piece with two octagons and two rectangles, `n = 6`.
pub const ZETA: &str = "(1,10,15,20,17,22,3,12)(24,5,18,11)(23,16,9,6,7,4,21,14)(2,19,8,13)";
/// A second genus-2 piece, not equivalent to [`ZETA`], `n = 6`.
pub const ZETA_PRIME: &str = "(1,20,17,12)(24,15,10,5,18,21,4,11)(23,6,7,14)(2,9,16,19,8,3,22,13)";
/// A genus-3 piece with two rectangles and two 12-gons, `n = 8`.
pub const SIGMA_Z: &str = "(1,6,25,18)(2,23,28,5,14,27,22,3,12,21,26,15)(31,24,11,16)(32,13,10,19,20,9,8,29,30,7,4,17)";
/// A genus-5 piece, `n = 12`.
pub const Z5: &str = "(1,32,41,40,13,24)(48,15,18,29,36,11,16,39,46,9,12,27,10,33,44,7,22,37,38,5,20,31,42,17,30,45,4,23)(47,6,19,26)(2,21,28,43,8,3,14,35,34,25)";
/// Minimal genus 1, `n = 1`.
pub const TORUS: &str = "(1,2,3,4)";
/// Minimal genus 3, `n = 5`.
pub const SIGMA_F: &str = "(1,2,13,20,7,6,19,14,5,10,11,16,9,8,15,12,3,4,17,18)";
/// Minimal genus 4, `n = 7`.
pub const F4: &str = "(1,16,27,10,7,18,15,2,3,20,21,12,11,22,17,4,9,26,19,8,13,28,23,6,5,24,25,14)";
/// Minimal genus 6, `n = 11`: [`SIGMA_F`] with [`SIGMA_Z`] glued in at `i = 3`.
pub const SIGMA_F6: &str = "(1,2,11,28,25,44,19,18,43,38,35,8,17,22,23,40,21,20,39,10,7,34,27,6,13,36,29,12,9,24,3,26,31,14,15,30,33,4,5,32,37,16,41,42)";
/// [`TORUS`] with [`Z5`] glued in, `n = 11`.
pub const SIGMA_PRIME: &str = "(1,10,11,36,25,30,19,4,43,24,35,16,17,8,23,26,21,6,39,18,7,42,27,14,13,44,29,20,9,32,3,34,31,22,15,38,33,12,5,40,37,2,41,28)";

fn load(text: &str, n: usize) -> FillingPermutation {
    FillingPermutation::parse(text, n).expect("fixture is a valid filling permutation")
}

pub fn zeta() -> FillingPermutation {
    load(ZETA, 6)
}

pub fn zeta_prime() -> FillingPermutation {
    load(ZETA_PRIME, 6)
}

pub fn sigma_z() -> FillingPermutation {
    load(SIGMA_Z, 8)
}

pub fn z5() -> FillingPermutation {
    load(Z5, 12)
}

pub fn torus() -> FillingPermutation {
    load(TORUS, 1)
}

pub fn sigma_f() -> FillingPermutation {
    load(SIGMA_F, 5)
}

pub fn f4() -> FillingPermutation {
    load(F4, 7)
}

pub fn sigma_f6() -> FillingPermutation {
    load(SIGMA_F6, 11)
}

pub fn sigma_prime() -> FillingPermutation {
    load(SIGMA_PRIME, 11)
}
