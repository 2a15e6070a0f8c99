//! Independent oracles shared by the integration tests.

use isingser_core::correlation::CorrelationId;
use isingser_core::rational::{self, Rational};
use isingser_core::series::{Series, VarTag};
use num_bigint::BigInt;
use num_traits::Zero;

/// `<sigma_a sigma_b> / (<sigma_a> <sigma_b>)` on a box of free spins with every
/// spin outside fixed to `+`, by enumerating all spin configurations.
///
/// Returns the series in `u = z^2` through `order`.
pub fn lt_ratio_by_spins(id: CorrelationId, margin: i32, order: i64) -> Series {
    let (m, n) = id.offset();
    let (x0, x1, y0, y1) = (-margin, m + margin, -margin, n + margin);
    let w = (x1 - x0 + 1) as usize;
    let h = (y1 - y0 + 1) as usize;
    let count = w * h;
    assert!(count <= 22, "box too large for enumeration");
    let idx = |x: i32, y: i32| (y - y0) as usize * w + (x - x0) as usize;
    let a = idx(0, 0);
    let b = idx(m, n);
    // each bond is (site, Some(site)) or (site, None) for a bond to the fixed boundary
    let mut bonds_of: Vec<Vec<Option<usize>>> = vec![Vec::new(); count];
    for y in y0..=y1 {
        for x in x0..=x1 {
            let here = idx(x, y);
            for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                let (nx, ny) = (x + dx, y + dy);
                let inside = (x0..=x1).contains(&nx) && (y0..=y1).contains(&ny);
                bonds_of[here].push(inside.then(|| idx(nx, ny)));
            }
        }
    }
    let len = 2 * order as usize + 1;
    let mut sums = vec![vec![BigInt::zero(); len]; 4];
    let mut spin = vec![1i8; count];
    let mut broken = 0usize;
    for step in 0u64..(1u64 << count) {
        if step > 0 {
            let site = step.trailing_zeros() as usize;
            for nb in &bonds_of[site] {
                let other = nb.map(|j| spin[j]).unwrap_or(1);
                if spin[site] == other {
                    broken += 1;
                } else {
                    broken -= 1;
                }
            }
            spin[site] = -spin[site];
        }
        if broken < len {
            let sa = spin[a] as i64;
            let sb = spin[b] as i64;
            for (k, weight) in [1, sa, sb, sa * sb].into_iter().enumerate() {
                sums[k][broken] += weight;
            }
        }
    }
    let in_u = |c: &Vec<BigInt>| {
        assert!(c.iter().skip(1).step_by(2).all(|x| x.is_zero()), "odd power of z");
        let coeffs: Vec<Rational> = c.iter().step_by(2).cloned().map(rational::big).collect();
        Series::from_coeffs(VarTag::U, 0, coeffs)
    };
    let [z, z_a, z_b, z_ab] = [0, 1, 2, 3].map(|k| in_u(&sums[k]));
    z_ab.mul(&z).unwrap().div(&z_a.mul(&z_b).unwrap()).unwrap()
}
