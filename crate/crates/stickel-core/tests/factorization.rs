use stickel_core::gauss::{primes_above, verify_stickelberger};
use stickel_core::ring::arith;
use stickel_core::stickelberger::{integral_exponent_basis, row_to_element};

#[test]
fn factorization_c5_small_primes() {
    let basis = integral_exponent_basis(5, 1).unwrap();
    for l in [2, 3, 11, 19, 29, 31] {
        for p in primes_above(5, l).unwrap() {
            for row in &basis {
                let beta = row_to_element(5, row).unwrap();
                let rep = verify_stickelberger(&p, &beta).unwrap();
                assert!(rep.pass, "{rep:?}");
            }
        }
    }
}

#[test]
#[ignore]
fn factorization_c7_full() {
    let basis = integral_exponent_basis(7, 1).unwrap();
    eprintln!("{basis:?}");
    for l in arith::primes_below(100) {
        if l == 7 {
            continue;
        }
        let t = std::time::Instant::now();
        for p in primes_above(7, l).unwrap() {
            for row in &basis {
                let beta = row_to_element(7, row).unwrap();
                let rep = verify_stickelberger(&p, &beta).unwrap();
                assert!(rep.pass, "{rep:?}");
            }
        }
        eprintln!("l={l} {:?}", t.elapsed());
    }
}
