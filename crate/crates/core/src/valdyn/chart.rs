use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::ValdynError;
use crate::arith::Rational;

/// The coordinate axis followed by the initial run of free points.
///
/// `X` follows the `x`-axis `{y = 0}`, so `y` gains order along the run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

/// Infinitely near points `1..=points` over the origin, each blown up in turn.
///
/// `[i, j]` in `proximate` means point `i` lies on the strict transform of
/// the exceptional curve of point `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProximityChart {
    pub points: usize,
    pub proximate: Vec<[usize; 2]>,
    pub axis: Axis,
}

impl ProximityChart {
    /// A chain of `r` free points along `axis`.
    pub fn free_chain(r: usize, axis: Axis) -> Self {
        ProximityChart { points: r, proximate: (2..=r).map(|i| [i, i - 1]).collect(), axis }
    }

    pub fn from_json(src: &str) -> Result<Self, ValdynError> {
        let chart: ProximityChart = serde_json::from_str(src).map_err(|e| ValdynError::MalformedChart(e.to_string()))?;
        chart.validate()?;
        Ok(chart)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }

    pub fn validate(&self) -> Result<(), ValdynError> {
        let bad = |m: String| Err(ValdynError::MalformedChart(m));
        if self.points == 0 {
            return bad("no points".into());
        }
        let mut set = BTreeSet::new();
        for &[i, j] in &self.proximate {
            if !(1..=self.points).contains(&i) || j == 0 || j >= i {
                return bad(format!("[{i}, {j}] must satisfy 1 <= j < i <= {}", self.points));
            }
            if !set.insert((i, j)) {
                return bad(format!("[{i}, {j}] repeated"));
            }
        }
        for i in 2..=self.points {
            if !set.contains(&(i, i - 1)) {
                return bad(format!("point {i} is not proximate to {}", i - 1));
            }
            let count = set.range((i, 0)..(i + 1, 0)).count();
            if count > 2 {
                return bad(format!("point {i} is proximate to {count} points"));
            }
        }
        for &(i, j) in &set {
            if let Some(k) = (j + 1..i).find(|&k| !set.contains(&(k, j))) {
                return bad(format!("point {i} is proximate to {j} but point {k} is not"));
            }
        }
        Ok(())
    }

    fn is_proximate(&self, i: usize, j: usize) -> bool {
        self.proximate.iter().any(|&[a, b]| a == i && b == j)
    }

    /// Last point of the initial run of free points.
    fn axis_run(&self) -> usize {
        (2..=self.points).find(|&i| self.proximate.iter().filter(|p| p[0] == i).count() > 1).map_or(self.points, |i| i - 1)
    }
}

/// `P` with `P_ii = 1` and `P_ij = -1` when `i` is proximate to `j`.
fn proximity_matrix(chart: &ProximityChart) -> Vec<Vec<BigInt>> {
    let r = chart.points;
    let mut p = vec![vec![BigInt::zero(); r]; r];
    for (i, row) in p.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    for &[i, j] in &chart.proximate {
        p[i - 1][j - 1] = -BigInt::one();
    }
    p
}

/// Intersection data of the exceptional curves `E_1, ..., E_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalLattice {
    /// `N_ij = E_i . E_j`.
    pub n: Vec<Vec<BigInt>>,
    /// Column `i` expresses the dual divisor of `E_i` in the basis `E_j`.
    pub dual: Vec<Vec<Rational>>,
    /// Generic multiplicities `b_i = min(ord_{E_i} x, ord_{E_i} y)`.
    pub b: Vec<BigInt>,
    pub ord_x: Vec<BigInt>,
    pub ord_y: Vec<BigInt>,
}

impl ExceptionalLattice {
    /// `-(b_i^{-1} dual_i) . (b_j^{-1} dual_j)`, indices starting at 1.
    pub fn skewness(&self, i: usize, j: usize) -> Rational {
        let (i, j) = (i - 1, j - 1);
        -self.dual[i][j].clone() / Rational::from_integer(&self.b[i] * &self.b[j])
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ints = |v: &[BigInt]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        json!({
            "intersection_matrix": self.n.iter().map(|r| ints(r)).collect::<Vec<_>>(),
            "dual": self.dual.iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "b": ints(&self.b),
            "ord_x": ints(&self.ord_x),
            "ord_y": ints(&self.ord_y),
        })
    }
}

/// `N = -P^T P`, its inverse, and the coordinate orders along each `E_i`.
pub fn intersection_matrix(chart: &ProximityChart) -> Result<ExceptionalLattice, ValdynError> {
    chart.validate()?;
    let r = chart.points;
    let p = proximity_matrix(chart);
    let n: Vec<Vec<BigInt>> =
        (0..r).map(|i| (0..r).map(|j| -(0..r).map(|k| &p[k][i] * &p[k][j]).sum::<BigInt>()).collect()).collect();
    if let Some(k) = first_bad_minor(&n) {
        return Err(ValdynError::NotNegativeDefinite(k));
    }
    let dual = invert(&n);
    let pinv = unit_lower_inverse(&p);
    let run = chart.axis_run();
    let along: Vec<BigInt> = (0..r).map(|i| (0..run).map(|k| pinv[i][k].clone()).sum()).collect();
    let across: Vec<BigInt> = (0..r).map(|i| pinv[i][0].clone()).collect();
    let (ord_x, ord_y) = match chart.axis {
        Axis::X => (across, along),
        Axis::Y => (along, across),
    };
    let b = ord_x.iter().zip(&ord_y).map(|(a, c)| a.min(c).clone()).collect();
    Ok(ExceptionalLattice { n, dual, b, ord_x, ord_y })
}

/// Skewness of `nu_{E_i} ∧ nu_{E_j}`.
pub fn skewness(chart: &ProximityChart, i: usize, j: usize) -> Result<Rational, ValdynError> {
    if !(1..=chart.points).contains(&i) || !(1..=chart.points).contains(&j) {
        return Err(ValdynError::Precondition(format!("indices ({i}, {j}) out of range 1..={}", chart.points)));
    }
    Ok(intersection_matrix(chart)?.skewness(i, j))
}

/// A seeded well-formed chart with `points` points.
pub fn random_chart(seed: u64, points: usize) -> ProximityChart {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chart = ProximityChart { points, proximate: Vec::new(), axis: if rng.gen() { Axis::X } else { Axis::Y } };
    for i in 2..=points {
        chart.proximate.push([i, i - 1]);
        let satellite = (1..i - 1).find(|&j| chart.is_proximate(i - 1, j));
        if let Some(j) = satellite.filter(|_| rng.gen_bool(0.5)) {
            chart.proximate.push([i, j]);
        } else if i >= 3 && rng.gen_bool(0.3) {
            chart.proximate.push([i, i - 2]);
        }
    }
    chart
}

// index of the first leading minor of -N that is not positive
fn first_bad_minor(n: &[Vec<BigInt>]) -> Option<usize> {
    let m: Vec<Vec<BigInt>> = n.iter().map(|r| r.iter().map(|c| -c).collect()).collect();
    let size = m.len();
    let mut a = m;
    let mut prev = BigInt::one();
    for k in 0..size {
        if !a[k][k].is_positive() {
            return Some(k + 1);
        }
        for i in k + 1..size {
            for j in k + 1..size {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    None
}

#[allow(clippy::needless_range_loop)]
fn invert(n: &[Vec<BigInt>]) -> Vec<Vec<Rational>> {
    let size = n.len();
    let mut a: Vec<Vec<Rational>> = n
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|c| Rational::from_integer(c.clone())).collect();
            r.extend((0..size).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..size {
        let pivot = (col..size).find(|&r| !a[r][col].is_zero()).expect("nonsingular");
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v /= &p;
        }
        for r in 0..size {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..2 * size {
                    let sub = &f * &a[col][j];
                    a[r][j] -= sub;
                }
            }
        }
    }
    a.into_iter().map(|row| row[size..].to_vec()).collect()
}

#[allow(clippy::needless_range_loop)]
fn unit_lower_inverse(p: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let size = p.len();
    let mut inv = vec![vec![BigInt::zero(); size]; size];
    for col in 0..size {
        inv[col][col] = BigInt::one();
        for i in col + 1..size {
            inv[i][col] = -(col..i).map(|k| &p[i][k] * &inv[k][col]).sum::<BigInt>();
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&c| BigInt::from(c)).collect()).collect()
    }

    #[test]
    fn single_blowup() {
        let l = intersection_matrix(&ProximityChart::free_chain(1, Axis::X)).unwrap();
        assert_eq!(l.n, ints(&[&[-1]]));
        assert_eq!(l.dual, vec![vec![q(-1, 1)]]);
        assert_eq!(l.b, vec![BigInt::one()]);
        assert_eq!(l.skewness(1, 1), q(1, 1));
    }

    #[test]
    fn two_point_chain() {
        let chart = ProximityChart::free_chain(2, Axis::X);
        let l = intersection_matrix(&chart).unwrap();
        assert_eq!(l.n, ints(&[&[-2, 1], &[1, -1]]));
        // dual of E_2 is -E_1 - 2 E_2
        assert_eq!((l.dual[0][1].clone(), l.dual[1][1].clone()), (q(-1, 1), q(-2, 1)));
        assert_eq!((l.ord_x[1].clone(), l.ord_y[1].clone()), (BigInt::from(1), BigInt::from(2)));
        assert_eq!(skewness(&chart, 2, 2).unwrap(), q(2, 1));
        assert_eq!(skewness(&chart, 1, 2).unwrap(), q(1, 1));
        let flipped = intersection_matrix(&ProximityChart::free_chain(2, Axis::Y)).unwrap();
        assert_eq!((flipped.ord_x[1].clone(), flipped.ord_y[1].clone()), (BigInt::from(2), BigInt::from(1)));
    }

    #[test]
    fn cusp_resolution() {
        let chart = ProximityChart { points: 3, proximate: vec![[2, 1], [3, 2], [3, 1]], axis: Axis::X };
        let l = intersection_matrix(&chart).unwrap();
        assert_eq!(l.n, ints(&[&[-3, 0, 1], &[0, -2, 1], &[1, 1, -1]]));
        assert_eq!(l.b[2], BigInt::from(2));
        assert_eq!((l.ord_x[2].clone(), l.ord_y[2].clone()), (BigInt::from(2), BigInt::from(3)));
        assert_eq!(l.skewness(3, 3), q(3, 2));
    }

    #[test]
    fn monomial_chains() {
        // r free points along an axis give the monomial valuation (1, r)
        for r in 1..8 {
            let l = intersection_matrix(&ProximityChart::free_chain(r, Axis::X)).unwrap();
            assert_eq!(l.skewness(r, r), q(r as i64, 1));
        }
    }

    #[test]
    fn malformed_charts() {
        let c = |p: Vec<[usize; 2]>, r| ProximityChart { points: r, proximate: p, axis: Axis::X };
        assert!(c(vec![], 2).validate().is_err());
        assert!(c(vec![[2, 1], [3, 1]], 3).validate().is_err());
        assert!(c(vec![[2, 1], [3, 2], [4, 3], [4, 2], [4, 1]], 4).validate().is_err());
        assert!(c(vec![[2, 1], [3, 2], [4, 3], [4, 1]], 4).validate().is_err());
        assert!(c(vec![[2, 1], [2, 1]], 2).validate().is_err());
        assert!(ProximityChart::from_json(r#"{"points": 2, "proximate": [[2, 1]], "axis": "z"}"#).is_err());
        let ok = ProximityChart::from_json(r#"{"points": 3, "proximate": [[2, 1], [3, 2], [3, 1]], "axis": "y"}"#).unwrap();
        assert_eq!(ok.axis, Axis::Y);
        assert_eq!(ok.to_json()["axis"], "y");
    }

    #[test]
    fn random_charts_are_negative_definite() {
        for seed in 0..50 {
            let chart = random_chart(seed, 6);
            chart.validate().unwrap();
            let l = intersection_matrix(&chart).unwrap();
            let r = chart.points;
            for i in 0..r {
                for j in 0..r {
                    assert_eq!(l.n[i][j], l.n[j][i]);
                    let prod: Rational =
                        (0..r).map(|k| Rational::from_integer(l.n[i][k].clone()) * &l.dual[k][j]).sum();
                    assert_eq!(prod, if i == j { Rational::one() } else { Rational::zero() });
                }
            }
            for i in 1..=r {
                let aii = l.skewness(i, i);
                assert!(aii >= Rational::one(), "{chart:?}");
                for j in 1..=r {
                    let aij = l.skewness(i, j);
                    assert!(aij <= aii.clone().min(l.skewness(j, j)), "{chart:?} {i} {j}");
                }
            }
        }
    }
}
