//! Newton polyhedra: integral closure, reduction tests, reduction numbers,
//! and the Ratliff-Rush closure chain.

use std::collections::BTreeSet;

use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::{Error, Result};

/// The Newton polyhedron of a nonzero monomial ideal: the convex hull of
/// the generator exponent vectors plus the nonnegative orthant.
///
/// Membership is decided exactly in integer arithmetic. A facet of the
/// polyhedron is spanned by d-1 independent vectors, each either a
/// difference of two generator exponents or a coordinate direction, so its
/// outer normal is (up to sign) a generalized cross product of such
/// vectors. Every nonnegative normal yields a valid inequality
/// `w . v >= min_j w . g_j`, and the facet normals occur among the
/// candidates, so the conjunction over all candidates is exact membership.
pub struct NewtonPolyhedron {
    dim: usize,
    /// Sign-normalized candidate facet normals with their support values
    /// `min_j w . g_j`.
    constraints: Vec<(Vec<i64>, i128)>,
}

impl NewtonPolyhedron {
    pub fn new(ideal: &MonomialIdeal) -> Result<Self> {
        if ideal.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let dim = ideal.dim();
        let gens: Vec<&[u32]> = ideal.gens().iter().map(|g| g.exponents()).collect();

        let mut normals: BTreeSet<Vec<i64>> = BTreeSet::new();
        for v in 0..dim {
            let mut axis = vec![0i64; dim];
            axis[v] = 1;
            normals.insert(axis);
        }
        if dim >= 2 {
            let mut spanning: Vec<Vec<i64>> = Vec::new();
            for (i, a) in gens.iter().enumerate() {
                for b in gens.iter().skip(i + 1) {
                    let diff: Vec<i64> =
                        a.iter().zip(b.iter()).map(|(&x, &y)| x as i64 - y as i64).collect();
                    spanning.push(diff);
                }
            }
            for v in 0..dim {
                let mut axis = vec![0i64; dim];
                axis[v] = 1;
                spanning.push(axis);
            }
            let mut subset = vec![0usize; dim - 1];
            collect_normals(&spanning, &mut subset, 0, 0, dim, &mut normals);
        }

        let constraints = normals
            .into_iter()
            .map(|w| {
                let support = gens
                    .iter()
                    .map(|g| dot(&w, g))
                    .min()
                    .expect("nonzero ideal has generators");
                (w, support)
            })
            .collect();
        Ok(NewtonPolyhedron { dim, constraints })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Exact membership of a lattice point.
    pub fn member(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::MixedDimension {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(self
            .constraints
            .iter()
            .all(|(w, support)| dot(w, v) >= *support))
    }
}

fn dot(w: &[i64], v: &[u32]) -> i128 {
    w.iter()
        .zip(v.iter())
        .map(|(&a, &b)| a as i128 * b as i128)
        .sum()
}

/// Enumerate (d-1)-subsets of the spanning vectors and keep the
/// sign-normalized nonnegative cross products.
fn collect_normals(
    spanning: &[Vec<i64>],
    subset: &mut [usize],
    depth: usize,
    start: usize,
    dim: usize,
    out: &mut BTreeSet<Vec<i64>>,
) {
    if depth == dim - 1 {
        let rows: Vec<&[i64]> = subset.iter().map(|&i| spanning[i].as_slice()).collect();
        if let Some(n) = nonneg_cross(&rows, dim) {
            out.insert(n);
        }
        return;
    }
    for i in start..spanning.len() {
        subset[depth] = i;
        collect_normals(spanning, subset, depth + 1, i + 1, dim, out);
    }
}

/// Generalized cross product of d-1 vectors in d dimensions: the vector of
/// signed maximal minors. Returns the gcd-reduced representative with all
/// components nonnegative, or None when the cross product is zero or has
/// mixed signs.
fn nonneg_cross(rows: &[&[i64]], dim: usize) -> Option<Vec<i64>> {
    let mut n = vec![0i128; dim];
    for skip in 0..dim {
        let minor: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &x)| x as i128)
                    .collect()
            })
            .collect();
        let sign = if skip % 2 == 0 { 1 } else { -1 };
        n[skip] = sign * det(&minor);
    }
    if n.iter().all(|&x| x == 0) {
        return None;
    }
    if n.iter().all(|&x| x <= 0) {
        for x in &mut n {
            *x = -*x;
        }
    }
    if n.iter().any(|&x| x < 0) {
        return None;
    }
    let g = n.iter().fold(0i128, |acc, &x| gcd(acc, x));
    Some(n.iter().map(|&x| i64::try_from(x / g).expect("normal overflow")).collect())
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => {
            let mut acc = 0i128;
            for j in 0..n {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let term = m[0][j]
                    .checked_mul(det(&minor))
                    .expect("determinant overflow");
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Whether the exponent vector `v` lies in the Newton polyhedron of `j`.
pub fn newton_member(v: &Monomial, j: &MonomialIdeal) -> Result<bool> {
    if v.dim() != j.dim() {
        return Err(Error::MixedDimension {
            expected: j.dim(),
            found: v.dim(),
        });
    }
    // Divisibility by a generator settles most queries without touching
    // the polyhedron.
    if j.member(v)? {
        return Ok(true);
    }
    NewtonPolyhedron::new(j)?.member(v.exponents())
}

/// The integral closure of an m-primary monomial ideal: the ideal of all
/// lattice points of the Newton polyhedron, minimally generated.
pub fn integral_closure(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    let bounds = ideal.pure_power_box()?;
    let np = NewtonPolyhedron::new(ideal)?;
    let dim = ideal.dim();

    // Any lattice point with v_i >= box_i is divisible by the pure power
    // x_i^box_i already in the ideal, so minimal generators live in the
    // closed box.
    let mut members: Vec<Monomial> = Vec::new();
    let mut v = vec![0u32; dim];
    'scan: loop {
        let m = Monomial::new(v.clone());
        if ideal.member(&m)? || np.member(&v)? {
            members.push(m);
        }
        let mut i = 0;
        loop {
            if i == dim {
                break 'scan;
            }
            v[i] += 1;
            if v[i] <= bounds[i] {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
    MonomialIdeal::new(dim, members)
}

pub fn is_integrally_closed(ideal: &MonomialIdeal) -> Result<bool> {
    integral_closure(ideal)?.equals(ideal)
}

/// The monomial reduction criterion: `q` is a reduction of `i` exactly when
/// `q` is contained in `i` and every generator of `i` lies in the Newton
/// polyhedron of `q` (equal integral closures).
pub fn is_reduction(q: &MonomialIdeal, i: &MonomialIdeal) -> Result<bool> {
    if q.dim() != i.dim() {
        return Err(Error::MixedDimension {
            expected: q.dim(),
            found: i.dim(),
        });
    }
    q.pure_power_box()?;
    i.pure_power_box()?;
    if !i.contains(q)? {
        return Ok(false);
    }
    let np = NewtonPolyhedron::new(q)?;
    for g in i.gens() {
        if !np.member(g.exponents())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The least `r <= r_max` with `i^(r+1) = q * i^r`. For a verified monomial
/// reduction such an `r` always exists; the budget only guards runtime.
pub fn reduction_number(q: &MonomialIdeal, i: &MonomialIdeal, r_max: usize) -> Result<usize> {
    if !is_reduction(q, i)? {
        return Err(Error::NotAReduction);
    }
    let mut power = MonomialIdeal::unit(i.dim());
    for r in 0..=r_max {
        // power = i^r here.
        let next = power.product(i)?;
        if next.equals(&q.product(&power)?)? {
            return Ok(r);
        }
        power = next;
    }
    Err(Error::BudgetExceeded {
        budget: r_max,
        what: "searching for the reduction number",
    })
}

/// Result of the Ratliff-Rush chain computation.
///
/// The chain `(I^(n+1) : I^n)` is ascending with union the Ratliff-Rush
/// closure. We stop at the first repeated term; consecutive equality is
/// standard practice but not a proof of stabilization, so the result is
/// flagged heuristic.
#[derive(Clone, Debug)]
pub struct RatliffRushClosure {
    pub ideal: MonomialIdeal,
    /// Index n of the first chain term equal to its successor.
    pub stabilized_at: usize,
    /// Always true for the consecutive-equality stop rule.
    pub heuristic: bool,
}

pub const RATLIFF_RUSH_DEFAULT_BUDGET: usize = 10;

pub fn ratliff_rush(ideal: &MonomialIdeal, n_max: usize) -> Result<RatliffRushClosure> {
    ideal.pure_power_box()?;
    assert!(n_max >= 2, "need at least two chain steps");
    let mut power = ideal.clone(); // ideal^n
    let mut current = ideal.power(2).colon(&power)?;
    for n in 1..n_max {
        let next_power = power.product(ideal)?;
        let next = next_power.product(ideal)?.colon(&next_power)?;
        if next.equals(&current)? {
            return Ok(RatliffRushClosure {
                ideal: current,
                stabilized_at: n,
                heuristic: true,
            });
        }
        power = next_power;
        current = next;
    }
    Err(Error::BudgetExceeded {
        budget: n_max,
        what: "waiting for the Ratliff-Rush chain to stabilize",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(dim: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(dim, gens.iter().map(|e| Monomial::new(e.to_vec()))).unwrap()
    }

    fn exps(i: &MonomialIdeal) -> Vec<Vec<u32>> {
        i.gens().iter().map(|g| g.exponents().to_vec()).collect()
    }

    #[test]
    fn newton_membership_on_the_diagonal() {
        let q = ideal(2, &[&[2, 0], &[0, 2]]);
        assert!(newton_member(&Monomial::new(vec![1, 1]), &q).unwrap());
        assert!(!newton_member(&Monomial::new(vec![1, 0]), &q).unwrap());
        // (2,3) sits on the boundary line 2/5 + 3/5 = 1 of (x^5, y^5).
        let q5 = ideal(2, &[&[5, 0], &[0, 5]]);
        assert!(newton_member(&Monomial::new(vec![2, 3]), &q5).unwrap());
        assert!(!newton_member(&Monomial::new(vec![2, 2]), &q5).unwrap());
    }

    #[test]
    fn newton_membership_dim3() {
        let q = ideal(3, &[&[3, 0, 0], &[0, 3, 0], &[0, 0, 3]]);
        assert!(newton_member(&Monomial::new(vec![1, 1, 1]), &q).unwrap());
        assert!(!newton_member(&Monomial::new(vec![1, 1, 0]), &q).unwrap());
        assert!(newton_member(&Monomial::new(vec![2, 1, 0]), &q).unwrap());
    }

    #[test]
    fn closure_of_a_parameter_ideal() {
        let q = ideal(2, &[&[2, 0], &[0, 2]]);
        let cl = integral_closure(&q).unwrap();
        assert_eq!(exps(&cl), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert!(!is_integrally_closed(&q).unwrap());
        assert!(is_integrally_closed(&MonomialIdeal::maximal(2)).unwrap());
    }

    #[test]
    fn closure_is_idempotent_on_powers_of_m() {
        for k in 1..5 {
            let mk = MonomialIdeal::maximal(2).power(k);
            assert!(is_integrally_closed(&mk).unwrap());
        }
    }

    #[test]
    fn closure_of_the_free_rank_two_ideal() {
        // The four generators of Q + (x^2 y^3, x^3 y^2) are collinear on
        // x + y = 5, so the closure is the full degree-5 staircase.
        let i = ideal(2, &[&[5, 0], &[0, 5], &[2, 3], &[3, 2]]);
        let cl = integral_closure(&i).unwrap();
        assert_eq!(
            exps(&cl),
            vec![
                vec![5, 0],
                vec![4, 1],
                vec![3, 2],
                vec![2, 3],
                vec![1, 4],
                vec![0, 5]
            ]
        );
        assert!(!is_integrally_closed(&i).unwrap());
    }

    #[test]
    fn reduction_tests() {
        let q = ideal(2, &[&[5, 0], &[0, 5]]);
        let i = ideal(2, &[&[5, 0], &[0, 5], &[2, 3], &[3, 2]]);
        assert!(is_reduction(&q, &i).unwrap());
        assert!(!is_reduction(&ideal(2, &[&[2, 0], &[0, 2]]), &MonomialIdeal::maximal(2)).unwrap());

        let q7 = ideal(2, &[&[7, 0], &[0, 7]]);
        let i7 = ideal(2, &[&[7, 0], &[0, 7], &[1, 6], &[2, 5], &[4, 3], &[5, 2]]);
        assert!(is_reduction(&q7, &i7).unwrap());
    }

    #[test]
    fn reduction_numbers() {
        let q = ideal(2, &[&[2, 0], &[0, 2]]);
        let i = MonomialIdeal::maximal(2).power(2);
        assert_eq!(reduction_number(&q, &i, 10).unwrap(), 1);

        let q5 = ideal(2, &[&[5, 0], &[0, 5]]);
        let i5 = ideal(2, &[&[5, 0], &[0, 5], &[2, 3], &[3, 2]]);
        assert_eq!(reduction_number(&q5, &i5, 10).unwrap(), 2);
        assert_eq!(reduction_number(&q5, &q5, 10).unwrap(), 0);

        assert_eq!(
            reduction_number(&q, &MonomialIdeal::maximal(2), 10).unwrap_err(),
            Error::NotAReduction
        );
    }

    #[test]
    fn ratliff_rush_fixed_points() {
        for k in 1..4 {
            let mk = MonomialIdeal::maximal(2).power(k);
            let rr = ratliff_rush(&mk, 10).unwrap();
            assert!(rr.ideal.equals(&mk).unwrap());
            assert!(rr.heuristic);
        }
        let q = ideal(2, &[&[2, 0], &[0, 2]]);
        let rr = ratliff_rush(&q, 10).unwrap();
        assert!(rr.ideal.equals(&q).unwrap());
    }

    #[test]
    fn ratliff_rush_contains_the_ideal() {
        let i = ideal(2, &[&[4, 0], &[0, 4], &[1, 3], &[3, 1]]);
        let rr = ratliff_rush(&i, 10).unwrap();
        assert!(rr.ideal.contains(&i).unwrap());
        let cl = integral_closure(&i).unwrap();
        assert!(cl.contains(&rr.ideal).unwrap());
    }
}
