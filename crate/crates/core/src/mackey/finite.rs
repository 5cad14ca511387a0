//! Degrees of the complex irreducible representations of a finite group,
//! computed exactly from its class algebra over a prime field.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::PointGroup;

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|q| q * q <= n)
            .all(|q| !n.is_multiple_of(q))
}

/// Null space of a square matrix over `F_p`, as basis vectors.
fn null_space(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, pr);
        let inv = inv_mod(m[row][col], p);
        for x in m[row].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = m[row].clone();
        for (r, target) in m.iter_mut().enumerate() {
            if r != row && target[col] != 0 {
                let f = target[col];
                for (x, y) in target.iter_mut().zip(&pivot) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - m[r][fc]) % p;
            }
            v
        })
        .collect()
}

/// Class multiplication coefficients: `coeff[r][s][t]` is the number of
/// pairs `(x, y) ∈ C_r × C_s` with `xy` equal to a fixed element of `C_t`.
fn class_coefficients(h: &PointGroup, classes: &[Vec<usize>]) -> Vec<Vec<Vec<u64>>> {
    let k = classes.len();
    let mut class_of = vec![0; h.order()];
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = i;
        }
    }
    let mut coeff = vec![vec![vec![0u64; k]; k]; k];
    for (t, ct) in classes.iter().enumerate() {
        let z = ct[0];
        for (r, cr) in classes.iter().enumerate() {
            for &x in cr {
                let y = h.mul(h.inv(x), z);
                coeff[r][class_of[y]][t] += 1;
            }
        }
    }
    coeff
}

/// Reduced row-echelon basis of the span of `rows`, with pivot columns.
fn echelon_basis(mut rows: Vec<Vec<u64>>, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][col], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = rows[r].clone();
        for (i, target) in rows.iter_mut().enumerate() {
            if i != r && target[col] != 0 {
                let f = target[col];
                for (x, y) in target.iter_mut().zip(&pivot) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

fn apply(a: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (x, y)| (acc + x * y) % p))
        .collect()
}

/// Splits the common eigenspaces of the commuting matrices `mats` down to
/// lines, using pseudo-random combinations.
fn common_eigenvectors(mats: &[Vec<Vec<u64>>], k: usize, p: u64) -> Option<Vec<Vec<u64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let identity: Vec<Vec<u64>> = (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut pending = vec![identity];
    let mut lines = Vec::new();
    let mut attempts = 0;
    while let Some(space) = pending.pop() {
        if space.len() == 1 {
            lines.push(space.into_iter().next().expect("one vector"));
            continue;
        }
        attempts += 1;
        if attempts > 64 * k + 64 {
            return None;
        }
        let coeffs: Vec<u64> = mats.iter().map(|_| rng.gen_range(0..p)).collect();
        let mut a = vec![vec![0u64; k]; k];
        for (c, m) in coeffs.iter().zip(mats) {
            for s in 0..k {
                for t in 0..k {
                    a[s][t] = (a[s][t] + c * m[s][t]) % p;
                }
            }
        }
        let (basis, pivots) = echelon_basis(space, p);
        let dim = basis.len();
        // restriction: A w_i = Σ_j M[j][i] w_j, read off at the pivot columns
        let images: Vec<Vec<u64>> = basis.iter().map(|w| apply(&a, w, p)).collect();
        let restricted: Vec<Vec<u64>> = (0..dim)
            .map(|j| (0..dim).map(|i| images[i][pivots[j]]).collect())
            .collect();
        let mut pieces = Vec::new();
        let mut found = 0;
        for lambda in 0..p {
            let mut m = restricted.clone();
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = (row[i] + p - lambda) % p;
            }
            let ns = null_space(m, p);
            if ns.is_empty() {
                continue;
            }
            found += ns.len();
            let vectors: Vec<Vec<u64>> = ns
                .iter()
                .map(|y| {
                    (0..k)
                        .map(|c| {
                            y.iter()
                                .zip(&basis)
                                .fold(0, |acc, (yi, w)| (acc + yi * w[c]) % p)
                        })
                        .collect()
                })
                .collect();
            pieces.push(vectors);
            if found == dim {
                break;
            }
        }
        if found != dim {
            return None;
        }
        if pieces.len() == 1 {
            pending.push(basis);
        } else {
            pending.extend(pieces);
        }
    }
    Some(lines)
}

/// Irreducible degrees in increasing order. Central characters are the
/// common eigenvectors of the class matrices modulo a prime `p ≡ 1` mod the
/// exponent; each degree follows from `|H| / d² = Σ_t ω_t ω_{t'} / |C_t|`.
pub fn finite_irr_dims(h: &PointGroup) -> Result<Vec<usize>> {
    let n = h.order() as u64;
    if h.is_abelian() {
        return Ok(vec![1; h.order()]);
    }
    let classes = h.conjugacy_classes();
    let k = classes.len();
    let exponent = h.exponent() as u64;
    let p = (n + 1..)
        .find(|&q| q % exponent == 1 && is_prime(q))
        .expect("primes in arithmetic progressions");
    let coeff = class_coefficients(h, &classes);
    let mut class_of = vec![0; h.order()];
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = i;
        }
    }
    let inverse_class: Vec<usize> = classes.iter().map(|c| class_of[h.inv(c[0])]).collect();
    // (A_r)_{s,t} = coeff[r][s][t]; central characters ω satisfy A_r ω = ω_r ω
    let mats: Vec<Vec<Vec<u64>>> = coeff
        .iter()
        .map(|cr| {
            cr.iter()
                .map(|row| row.iter().map(|x| x % p).collect())
                .collect()
        })
        .collect();
    let vectors = common_eigenvectors(&mats, k, p)
        .ok_or_else(|| Error::InvalidGroup("class matrices did not split".into()))?;
    let mut dims = Vec::with_capacity(k);
    for v in vectors {
        let Some(&w0) = v.first().filter(|&&w| w != 0) else {
            return Err(Error::InvalidGroup("degenerate central character".into()));
        };
        let scale = inv_mod(w0, p);
        let w: Vec<u64> = v.iter().map(|x| x * scale % p).collect();
        let mut sum = 0u64;
        for t in 0..k {
            let size = classes[t].len() as u64 % p;
            sum = (sum + w[t] * w[inverse_class[t]] % p * inv_mod(size, p)) % p;
        }
        let d2 = n % p * inv_mod(sum, p) % p;
        let d = (1..=n)
            .take_while(|d| d * d <= n)
            .find(|d| d * d % p == d2)
            .ok_or_else(|| Error::InvalidGroup("no integral degree".into()))?;
        dims.push(d as usize);
    }
    dims.sort_unstable();
    let total: usize = dims.iter().map(|d| d * d).sum();
    if total != h.order() || dims.len() != k {
        return Err(Error::InvalidGroup(format!(
            "degrees {dims:?} do not account for order {}",
            h.order()
        )));
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::point_group_tests::{cyclic, symmetric};

    fn dihedral(n: usize) -> PointGroup {
        // labels: i < n rotation r^i, n + i reflection r^i s
        let table = (0..2 * n)
            .map(|a| {
                (0..2 * n)
                    .map(|b| {
                        let (ra, sa) = (a % n, a >= n);
                        let (rb, sb) = (b % n, b >= n);
                        let r = if sa { (ra + n - rb) % n } else { (ra + rb) % n };
                        r + if sa != sb { n } else { 0 }
                    })
                    .collect()
            })
            .collect();
        PointGroup::from_table(table, vec![1, n]).unwrap()
    }

    #[test]
    fn abelian_groups() {
        assert_eq!(finite_irr_dims(&cyclic(4)).unwrap(), vec![1; 4]);
        assert_eq!(finite_irr_dims(&cyclic(1)).unwrap(), vec![1]);
        assert_eq!(finite_irr_dims(&cyclic(7)).unwrap(), vec![1; 7]);
    }

    #[test]
    fn small_nonabelian() {
        assert_eq!(finite_irr_dims(&symmetric(3)).unwrap(), vec![1, 1, 2]);
        assert_eq!(finite_irr_dims(&dihedral(4)).unwrap(), vec![1, 1, 1, 1, 2]);
        assert_eq!(
            finite_irr_dims(&dihedral(6)).unwrap(),
            vec![1, 1, 1, 1, 2, 2]
        );
        assert_eq!(finite_irr_dims(&symmetric(4)).unwrap(), vec![1, 1, 2, 3, 3]);
    }

    #[test]
    fn larger_symmetric() {
        assert_eq!(
            finite_irr_dims(&symmetric(5)).unwrap(),
            vec![1, 1, 4, 4, 5, 5, 6]
        );
    }
}
