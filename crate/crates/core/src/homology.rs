//! Exact integer linear algebra: Smith normal form, homology of finite
//! complexes over `Z`, and windowed exactness scans for graded pieces.

use crate::mat::Mat;
use crate::square::{self, Face};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

pub type IntMat = Mat<BigInt>;

/// `U · M · V = D` with `D` diagonal, `d_i | d_{i+1}`, and `U, V` unimodular.
#[derive(Clone, Debug)]
pub struct SNFResult {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
}

impl SNFResult {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        let n = self.d.rows.min(self.d.cols);
        (0..n).filter(|&i| !self.d.at(i, i).is_zero()).count()
    }

    /// Nonzero diagonal entries in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows.min(self.d.cols);
        (0..n)
            .map(|i| self.d.at(i, i).clone())
            .filter(|d| !d.is_zero())
            .collect()
    }
}

fn smallest_nonzero(m: &IntMat, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in from..m.rows {
        for j in from..m.cols {
            let v = m.at(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            match &best {
                Some((_, b)) if *b <= a => {}
                _ => best = Some(((i, j), a)),
            }
        }
    }
    best.map(|(ij, _)| ij)
}

fn swap_rows(m: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols {
        let x = m.at(a, j).clone();
        let y = m.at(b, j).clone();
        m.set(a, j, y);
        m.set(b, j, x);
    }
}

fn swap_cols(m: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows {
        let x = m.at(i, a).clone();
        let y = m.at(i, b).clone();
        m.set(i, a, y);
        m.set(i, b, x);
    }
}

fn row_axpy(m: &mut IntMat, target: usize, source: usize, q: &BigInt) {
    // row[target] -= q * row[source]
    for j in 0..m.cols {
        let v = m.at(target, j) - q * m.at(source, j);
        m.set(target, j, v);
    }
}

fn col_axpy(m: &mut IntMat, target: usize, source: usize, q: &BigInt) {
    for i in 0..m.rows {
        let v = m.at(i, target) - q * m.at(i, source);
        m.set(i, target, v);
    }
}

fn negate_row(m: &mut IntMat, r: usize) {
    for j in 0..m.cols {
        let v = -m.at(r, j).clone();
        m.set(r, j, v);
    }
}

/// Smith normal form by repeated pivoting on the smallest nonzero entry
/// (ties broken row-major). `U` and `V` accumulate the row and column
/// operations, so `U · M · V = D` holds exactly.
pub fn smith_normal_form(m: &IntMat) -> SNFResult {
    let mut d = m.clone();
    let mut u = IntMat::identity(m.rows);
    let mut v = IntMat::identity(m.cols);
    let steps = m.rows.min(m.cols);

    for k in 0..steps {
        'pivot: loop {
            let Some((pi, pj)) = smallest_nonzero(&d, k) else {
                break 'pivot;
            };
            swap_rows(&mut d, k, pi);
            swap_rows(&mut u, k, pi);
            swap_cols(&mut d, k, pj);
            swap_cols(&mut v, k, pj);
            if d.at(k, k).is_negative() {
                negate_row(&mut d, k);
                negate_row(&mut u, k);
            }
            let mut dirty = false;
            let pivot = d.at(k, k).clone();
            for i in (k + 1)..d.rows {
                if !d.at(i, k).is_zero() {
                    let q = d.at(i, k) / &pivot;
                    if !q.is_zero() {
                        row_axpy(&mut d, i, k, &q);
                        row_axpy(&mut u, i, k, &q);
                    }
                    if !d.at(i, k).is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in (k + 1)..d.cols {
                if !d.at(k, j).is_zero() {
                    let q = d.at(k, j) / &pivot;
                    if !q.is_zero() {
                        col_axpy(&mut d, j, k, &q);
                        col_axpy(&mut v, j, k, &q);
                    }
                    if !d.at(k, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'pivot;
            }
            // Cross cleared; enforce divisibility of the remaining block.
            for i in (k + 1)..d.rows {
                for j in (k + 1)..d.cols {
                    if !(d.at(i, j) % &pivot).is_zero() {
                        // Fold row i into row k and restart the pivot.
                        let one = BigInt::from(-1);
                        row_axpy(&mut d, k, i, &one);
                        row_axpy(&mut u, k, i, &one);
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
    }
    SNFResult { u, d, v }
}

/// Determinant by fraction-free (Bareiss) elimination; used to confirm
/// unimodularity of the SNF transforms.
pub fn det(m: &IntMat) -> BigInt {
    assert_eq!(m.rows, m.cols, "det of non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.at(k, k).is_zero() {
            let swap = ((k + 1)..n).find(|&i| !a.at(i, k).is_zero());
            match swap {
                Some(i) => {
                    swap_rows(&mut a, k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                a.set(i, j, num / &prev);
            }
            a.set(i, k, BigInt::zero());
        }
        prev = a.at(k, k).clone();
    }
    sign * a.at(n - 1, n - 1).clone()
}

/// Bounded cochain complex of finitely generated free `Z`-modules.
#[derive(Clone, Debug, Default)]
pub struct ZComplex {
    pub ranks: BTreeMap<i64, usize>,
    pub diff: BTreeMap<i64, IntMat>,
}

impl ZComplex {
    pub fn rank(&self, n: i64) -> usize {
        self.ranks.get(&n).copied().unwrap_or(0)
    }

    /// Differential out of degree `n`, materialized with the right shape.
    pub fn d(&self, n: i64) -> IntMat {
        match self.diff.get(&n) {
            Some(m) => m.clone(),
            None => IntMat::zeros(self.rank(n + 1), self.rank(n)),
        }
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.ranks.keys().copied().filter(|&n| self.rank(n) > 0).collect()
    }

    /// Checks shapes and `d² = 0`.
    pub fn validate(&self) -> bool {
        for (&n, m) in &self.diff {
            if m.rows != self.rank(n + 1) || m.cols != self.rank(n) {
                return false;
            }
        }
        for &n in self.ranks.keys() {
            let a = self.d(n);
            let b = self.d(n + 1);
            if !b.matmul(&a).is_zero() {
                return false;
            }
        }
        true
    }
}

/// Free rank and torsion invariant factors of `H^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl Homology {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn free_of_rank(r: usize) -> Homology {
        Homology { betti: r, torsion: Vec::new() }
    }
}

/// `H^n = ker d^n / im d^{n-1}` via Smith normal form.
pub fn homology_z(c: &ZComplex, n: i64) -> Homology {
    let snf_in = smith_normal_form(&c.d(n - 1));
    let rank_out = smith_normal_form(&c.d(n)).rank();
    let betti = c.rank(n) - rank_out - snf_in.rank();
    let torsion: Vec<BigInt> = snf_in
        .invariant_factors()
        .into_iter()
        .filter(|f| f.abs() > BigInt::one())
        .collect();
    Homology { betti, torsion }
}

/// True when every `H^n` vanishes.
pub fn is_acyclic(c: &ZComplex) -> bool {
    let lo = c.degrees().first().copied().unwrap_or(0);
    let hi = c.degrees().last().copied().unwrap_or(0);
    (lo..=hi + 1).all(|n| homology_z(c, n).is_trivial())
}

/// A windowed exactness scan over graded pieces of one of the square-module
/// families.
#[derive(Clone, Copy, Debug)]
pub enum GradedScan {
    /// Augmented Čech row of the face-lattice diagram `D(k)`: every graded
    /// piece must be exact.
    DkRow { k: i64 },
    /// Čech complex of the nerve diagram at a face: `H⁰ = Z` exactly on the
    /// support of the face algebra, all other cohomology trivial.
    Nerve { face: Face },
}

#[derive(Clone, Debug)]
pub struct ScanFailure {
    pub degree: (i64, i64),
    pub position: i64,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct WindowReport {
    pub radius: i64,
    pub checked: usize,
    pub failures: Vec<ScanFailure>,
}

impl WindowReport {
    pub fn exact(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs `graded_piece` + `homology_z` on every bidegree with `|d1|, |d2| ≤
/// radius`. An empty failure list means the scanned family is exact on the
/// window (negative radius: vacuously exact).
pub fn window_exact(scan: GradedScan, radius: i64) -> WindowReport {
    let mut failures = Vec::new();
    let mut checked = 0;
    if radius < 0 {
        return WindowReport { radius, checked, failures };
    }
    for d1 in -radius..=radius {
        for d2 in -radius..=radius {
            checked += 1;
            match scan {
                GradedScan::DkRow { k } => {
                    let piece = square::graded_piece_dk_row(k, (d1, d2));
                    for n in -1..=2 {
                        let h = homology_z(&piece.complex, n);
                        if !h.is_trivial() {
                            failures.push(ScanFailure {
                                degree: (d1, d2),
                                position: n,
                                detail: format!("H^{} = {:?}", n, h),
                            });
                        }
                    }
                }
                GradedScan::Nerve { face } => {
                    let piece = square::graded_piece_nerve(face, (d1, d2));
                    let want_h0 = if square::face_algebra_contains(face, (d1, d2)) { 1 } else { 0 };
                    for n in 0..=2 {
                        let h = homology_z(&piece.complex, n);
                        let expected = if n == 0 { Homology::free_of_rank(want_h0) } else { Homology::free_of_rank(0) };
                        if h != expected {
                            failures.push(ScanFailure {
                                degree: (d1, d2),
                                position: n,
                                detail: format!("H^{} = {:?}, expected {:?}", n, h, expected),
                            });
                        }
                    }
                }
            }
        }
    }
    WindowReport { radius, checked, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn m(rows: Vec<Vec<i64>>) -> IntMat {
        IntMat::from_rows(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
    }

    fn check_snf(mat: &IntMat) {
        let snf = smith_normal_form(mat);
        assert_eq!(snf.u.matmul(mat).matmul(&snf.v), snf.d, "U·M·V ≠ D");
        assert_eq!(det(&snf.u).abs(), BigInt::one(), "U not unimodular");
        assert_eq!(det(&snf.v).abs(), BigInt::one(), "V not unimodular");
        // diagonal, nonnegative, divisibility chain
        for i in 0..snf.d.rows {
            for j in 0..snf.d.cols {
                if i != j {
                    assert!(snf.d.at(i, j).is_zero(), "off-diagonal nonzero");
                }
            }
        }
        let diag = snf.invariant_factors();
        for w in diag.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "divisibility chain broken: {:?}", diag);
        }
        let n = snf.d.rows.min(snf.d.cols);
        let mut seen_zero = false;
        for i in 0..n {
            if snf.d.at(i, i).is_zero() {
                seen_zero = true;
            } else {
                assert!(!seen_zero, "nonzero after zero on diagonal");
                assert!(snf.d.at(i, i) > &BigInt::zero());
            }
        }
    }

    #[test]
    fn snf_identity() {
        let snf = smith_normal_form(&IntMat::identity(4));
        assert_eq!(snf.d, IntMat::identity(4));
    }

    #[test]
    fn snf_diag_2_3() {
        let snf = smith_normal_form(&m(vec![vec![2, 0], vec![0, 3]]));
        assert_eq!(snf.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
        check_snf(&m(vec![vec![2, 0], vec![0, 3]]));
    }

    #[test]
    fn snf_2468() {
        let mat = m(vec![vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&mat);
        assert_eq!(snf.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
        check_snf(&mat);
    }

    #[test]
    fn snf_zero_and_empty() {
        check_snf(&m(vec![vec![0, 0], vec![0, 0]]));
        let empty: IntMat = IntMat::zeros(0, 3);
        let snf = smith_normal_form(&empty);
        assert_eq!(snf.rank(), 0);
    }

    #[test]
    fn snf_random_small() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..120 {
            let rows = rng.gen_range(0..=6);
            let cols = rng.gen_range(0..=6);
            let mat = IntMat::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-30i64..=30)));
            check_snf(&mat);
        }
    }

    #[test]
    fn homology_mult_by_two() {
        // 0 → Z →2→ Z → 0 in degrees 0, 1
        let c = ZComplex {
            ranks: [(0, 1), (1, 1)].into_iter().collect(),
            diff: [(0, m(vec![vec![2]]))].into_iter().collect(),
        };
        assert!(c.validate());
        assert_eq!(homology_z(&c, 0), Homology::free_of_rank(0));
        assert_eq!(homology_z(&c, 1), Homology { betti: 0, torsion: vec![BigInt::from(2)] });
    }

    #[test]
    fn homology_zero_map() {
        let c = ZComplex {
            ranks: [(0, 1), (1, 1)].into_iter().collect(),
            diff: [(0, m(vec![vec![0]]))].into_iter().collect(),
        };
        assert_eq!(homology_z(&c, 0), Homology::free_of_rank(1));
        assert_eq!(homology_z(&c, 1), Homology::free_of_rank(1));
    }

    #[test]
    fn homology_of_acyclic_two_term() {
        let c = ZComplex {
            ranks: [(3, 1), (4, 1)].into_iter().collect(),
            diff: [(3, m(vec![vec![1]]))].into_iter().collect(),
        };
        assert!(is_acyclic(&c));
    }

    #[test]
    fn empty_window_vacuously_exact() {
        let rep = window_exact(GradedScan::DkRow { k: 0 }, -1);
        assert!(rep.exact());
        assert_eq!(rep.checked, 0);
    }
}
