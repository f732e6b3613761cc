mod common;

use common::{dim_e_s_mod2, y_exponent_sums};
use sigma_artin::witness::Witness;
use sigma_artin::SpokeParams;

#[test]
fn vhat_coefficients_match_exponent_sums() {
    for l in 1..=3u64 {
        let p = SpokeParams::new(vec![2, 2], vec![l]).unwrap();
        let mut w = Witness::new(&p).unwrap();
        let l = l as i64;
        let top = 6 * l + 4;
        let sums = y_exponent_sums(l, top);
        for j in 0..top {
            let v = w.vhat(2, j).unwrap();
            for k in 0..top {
                let expected = sums[j as usize][k as usize].rem_euclid(2) as u64;
                assert_eq!(v.component(w.ring(), k)[0], expected, "l={l} j={j} k={k}");
            }
        }
    }
}

#[test]
fn dimensions_match_exponent_sum_oracle() {
    for (k, l, spoke_l) in [
        (vec![2, 2], vec![1], 1),
        (vec![2, 2], vec![2], 2),
        (vec![2, 2], vec![3], 3),
        (vec![2, 2, 3], vec![1, 2], 1),
        (vec![2, 2, 3], vec![2, 1], 2),
        (vec![2, 3, 5, 4], vec![1, 1, 2], 2),
    ] {
        let p = SpokeParams::new(k, l).unwrap();
        let mut w = Witness::new(&p).unwrap();
        for s in 1..=4 {
            let d = w.dimension(s).unwrap();
            assert_eq!(d.dim, dim_e_s_mod2(spoke_l, w.delta_r(), s as i64), "{p} s={s}");
        }
    }
}
