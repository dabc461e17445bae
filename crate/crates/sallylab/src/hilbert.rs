//! Hilbert function tables and exact coefficient extraction in the
//! binomial basis.

use rayon::prelude::*;

use crate::closure::is_reduction;
use crate::ideal::MonomialIdeal;
use crate::{Error, Result};

/// Default table window for ambient dimension `d`. Every instance in the
/// built-in corpus postulates by n = 1, so this leaves a wide margin while
/// keeping the largest power cheap.
pub fn default_window(dim: usize) -> usize {
    2 * dim + 6
}

/// Binomial coefficient `C(a, k)` as a polynomial in `a`: zero when
/// `k < 0`, the falling-factorial quotient otherwise. `a` may be any
/// integer.
pub fn binom(a: i128, k: i64) -> i128 {
    if k < 0 {
        return 0;
    }
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for t in 0..k {
        num = num
            .checked_mul(a - t as i128)
            .expect("binomial overflow");
        den *= t as i128 + 1;
    }
    num / den
}

/// Binomial coefficient with the combinatorial convention: additionally
/// zero whenever `a < 0`. Used for graded dimensions of modules, where a
/// negative top index means an empty graded piece.
pub fn binom_nat(a: i128, k: i64) -> i128 {
    if a < 0 {
        0
    } else {
        binom(a, k)
    }
}

/// The Hilbert function `H(n) = len(A / I^(n+1))` tabulated on a window.
#[derive(Clone, Debug)]
pub struct HilbertFunctionTable {
    pub ideal: MonomialIdeal,
    /// `values[n] = len(A / I^(n+1))` for `0 <= n <= window`.
    pub values: Vec<u64>,
    pub window: usize,
}

impl HilbertFunctionTable {
    pub fn value(&self, n: usize) -> u64 {
        self.values[n]
    }
}

/// Tabulate `H(0..=window)`. The powers are built incrementally; the
/// colength counts are independent and evaluated in parallel.
pub fn hilbert_function(ideal: &MonomialIdeal, window: usize) -> Result<HilbertFunctionTable> {
    ideal.pure_power_box()?;
    let mut powers: Vec<MonomialIdeal> = Vec::with_capacity(window + 1);
    let mut current = ideal.clone();
    for _ in 0..=window {
        let next = current.product(ideal)?;
        powers.push(current);
        current = next;
    }
    let values = powers
        .par_iter()
        .map(|p| p.colength())
        .collect::<Result<Vec<u64>>>()?;
    Ok(HilbertFunctionTable {
        ideal: ideal.clone(),
        values,
        window,
    })
}

/// Hilbert coefficients `(e_0, ..., e_d)` in the binomial basis, together
/// with the postulation index from which the polynomial reproduces the
/// table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertCoefficients {
    pub dim: usize,
    pub e: Vec<i128>,
    pub postulation: usize,
}

impl HilbertCoefficients {
    pub fn e(&self, i: usize) -> i128 {
        self.e[i]
    }

    pub fn eval(&self, n: u64) -> i128 {
        eval_binomial_poly(&self.e, self.dim, n)
    }
}

/// Evaluate `sum_i (-1)^i e_i C(n + d - i, d - i)` at `n`.
pub fn eval_binomial_poly(e: &[i128], dim: usize, n: u64) -> i128 {
    let mut acc: i128 = 0;
    for (i, &ei) in e.iter().enumerate() {
        let k = dim as i64 - i as i64;
        let term = ei
            .checked_mul(binom(n as i128 + k as i128, k))
            .expect("polynomial overflow");
        acc = if i % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Solve for the coefficients from the top `d + 1` table entries and scan
/// downward for the postulation index. The binomial basis change is
/// unimodular, so plain finite differences extract the coefficients one at
/// a time with integer arithmetic only. The fit must hold on at least the
/// top `d + 2` entries, otherwise the window is declared too small.
pub fn binomial_fit(table: &HilbertFunctionTable, dim: usize) -> Result<HilbertCoefficients> {
    fit_values(&table.values, dim)
}

pub(crate) fn fit_values(values: &[u64], dim: usize) -> Result<HilbertCoefficients> {
    let needed = dim + 2;
    if values.len() < needed {
        return Err(Error::InsufficientWindow {
            needed,
            have: values.len(),
        });
    }
    let top = values.len() - 1;
    let n0 = top - dim;
    let mut resid: Vec<i128> = values[n0..].iter().map(|&v| v as i128).collect();
    let mut e = vec![0i128; dim + 1];
    for i in 0..=dim {
        let k = dim - i;
        let delta = finite_difference(&resid, k);
        e[i] = if i % 2 == 0 { delta } else { -delta };
        let sign: i128 = if i % 2 == 0 { 1 } else { -1 };
        for (r, res) in resid.iter_mut().enumerate() {
            let kk = k as i64;
            *res -= sign * e[i] * binom((n0 + r) as i128 + kk as i128, kk);
        }
    }
    debug_assert!(resid.iter().all(|&r| r == 0), "interpolation residual");

    let poly = |n: usize| eval_binomial_poly(&e, dim, n as u64);
    // One extra matching entry below the interpolation block.
    if poly(n0 - 1) != values[n0 - 1] as i128 {
        return Err(Error::InsufficientWindow {
            needed: values.len() + 1,
            have: values.len(),
        });
    }
    if e[0] <= 0 {
        return Err(Error::InsufficientWindow {
            needed: values.len() + 1,
            have: values.len(),
        });
    }
    let mut postulation = n0 - 1;
    while postulation > 0 && poly(postulation - 1) == values[postulation - 1] as i128 {
        postulation -= 1;
    }
    Ok(HilbertCoefficients {
        dim,
        e,
        postulation,
    })
}

/// k-th forward finite difference at the first entry.
fn finite_difference(values: &[i128], k: usize) -> i128 {
    let mut acc: i128 = 0;
    for (t, &v) in values.iter().take(k + 1).enumerate() {
        let c = binom(k as i128, t as i64);
        let term = c.checked_mul(v).expect("difference overflow");
        acc = if (k - t) % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Classical multiplicity cross-check: for a parameter reduction `q` of
/// `i`, the leading coefficient equals `len(A/Q)`.
pub fn multiplicity_crosscheck(i: &MonomialIdeal, q: &MonomialIdeal) -> Result<bool> {
    if !is_reduction(q, i)? {
        return Err(Error::NotAReduction);
    }
    if !is_parameter_ideal(q) {
        return Err(Error::NotParameterIdeal);
    }
    let dim = i.dim();
    let table = hilbert_function(i, default_window(dim))?;
    let coeffs = binomial_fit(&table, dim)?;
    Ok(coeffs.e(0) == q.colength()? as i128)
}

/// A parameter ideal here means one generated by exactly `d` pure variable
/// powers, one per variable.
pub fn is_parameter_ideal(q: &MonomialIdeal) -> bool {
    let d = q.dim();
    q.gens().len() == d
        && (0..d).all(|var| {
            q.gens()
                .iter()
                .any(|g| g.is_power_of(var) && g.exponent(var) > 0)
        })
}
