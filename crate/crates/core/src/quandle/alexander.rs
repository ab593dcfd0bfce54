//! Alexander polynomial from the Fox Jacobian of the knot group.

use alloc::vec::Vec;

use super::group::{group_presentation, FreeWord};
use super::laurent::LaurentPoly;
use crate::error::{QuandleError, RibbonError};
use crate::ribbon::{RibbonData, Sign};

/// Fox derivatives of `relator` with respect to each generator, with every
/// generator sent to `t`.
fn fox_row(relator: &FreeWord, generators: usize) -> Result<Vec<LaurentPoly>, QuandleError> {
    let mut row = alloc::vec![LaurentPoly::zero(); generators];
    let mut prefix: i64 = 0;
    for &(g, e) in relator {
        let term = match e {
            Sign::Pos => LaurentPoly::monomial(1, prefix),
            Sign::Neg => LaurentPoly::monomial(-1, prefix - 1),
        };
        row[g - 1] = row[g - 1].add(&term)?;
        prefix += e.as_i64();
    }
    Ok(row)
}

/// One row per handle, one column per base.
pub fn fox_jacobian(data: &RibbonData) -> Result<Vec<Vec<LaurentPoly>>, QuandleError> {
    group_presentation(data)
        .relations
        .iter()
        .map(|r| fox_row(&r.relator(), data.base_count))
        .collect()
}

/// Fraction-free (Bareiss) determinant over `Z[t, t^-1]`.
fn determinant(mut m: Vec<Vec<LaurentPoly>>) -> Result<LaurentPoly, QuandleError> {
    let n = m.len();
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(LaurentPoly::zero());
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k])?.sub(&m[i][k].mul(&m[k][j])?)?;
                m[i][j] = num.div_exact(&prev)?.expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        Ok(det)
    }
}

fn for_each_subset(
    n: usize,
    k: usize,
    f: &mut dyn FnMut(&[usize]) -> Result<bool, QuandleError>,
) -> Result<(), QuandleError> {
    fn rec(
        start: usize,
        n: usize,
        k: usize,
        chosen: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> Result<bool, QuandleError>,
    ) -> Result<bool, QuandleError> {
        if chosen.len() == k {
            return f(chosen);
        }
        for i in start..n {
            if n - i < k - chosen.len() {
                break;
            }
            chosen.push(i);
            let go_on = rec(i + 1, n, k, chosen, f)?;
            chosen.pop();
            if !go_on {
                return Ok(false);
            }
        }
        Ok(true)
    }
    rec(0, n, k, &mut Vec::new(), f).map(|_| ())
}

/// Generator of the smallest principal ideal containing the first elementary
/// ideal: the gcd of the `(|B|-1)`-minors of the Fox Jacobian, normalized to
/// lowest exponent 0 and positive constant term.
///
/// Every row of the Jacobian sums to zero, so all columns but the first are
/// kept and only row subsets are enumerated.
pub fn alexander_polynomial(data: &RibbonData) -> Result<LaurentPoly, QuandleError> {
    if !data.is_connected() {
        return Err(RibbonError::NotAKnot.into());
    }
    let k = data.base_count - 1;
    if k == 0 {
        return Ok(LaurentPoly::one());
    }
    let rows: Vec<Vec<LaurentPoly>> = fox_jacobian(data)?
        .into_iter()
        .map(|row| row.into_iter().skip(1).collect::<Vec<_>>())
        .filter(|row: &Vec<LaurentPoly>| row.iter().any(|p| !p.is_zero()))
        .collect();
    let mut acc = LaurentPoly::zero();
    for_each_subset(rows.len(), k, &mut |subset| {
        let minor: Vec<Vec<LaurentPoly>> = subset.iter().map(|&i| rows[i].clone()).collect();
        let det = determinant(minor)?;
        acc = acc.gcd(&det)?;
        Ok(acc != LaurentPoly::one())
    })?;
    Ok(acc.normalized())
}
