//! Link determinant from a checkerboard colouring.

use std::collections::BTreeMap;

use super::bracket::kauffman_bracket;
use super::diagram::Diagram;
use super::poly::zeta8_norm_sq;
use crate::error::{Error, Result};

/// Two-colours the faces so that faces sharing an edge differ. Returns the
/// colour of each face and, for each crossing, the faces at its four corners.
fn checkerboard(d: &Diagram) -> Result<(Vec<bool>, Vec<[usize; 4]>)> {
    let faces = d.faces();
    let mut corner_face = vec![[usize::MAX; 4]; d.crossing_count()];
    for (fi, f) in faces.iter().enumerate() {
        for &(c, k) in f {
            corner_face[c][k] = fi;
        }
    }
    // adjacent across slot k: corners k-1 and k
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); faces.len()];
    for cf in &corner_face {
        for k in 0..4 {
            let (a, b) = (cf[(k + 3) % 4], cf[k]);
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut colour: Vec<Option<bool>> = vec![None; faces.len()];
    for root in 0..faces.len() {
        if colour[root].is_some() {
            continue;
        }
        colour[root] = Some(true);
        let mut stack = vec![root];
        while let Some(f) = stack.pop() {
            let c = colour[f].unwrap();
            for &g in &adj[f] {
                match colour[g] {
                    None => {
                        colour[g] = Some(!c);
                        stack.push(g);
                    }
                    Some(x) if x == c => {
                        return Err(Error::Structural(
                            "faces admit no checkerboard colouring".into(),
                        ))
                    }
                    _ => {}
                }
            }
        }
    }
    Ok((
        colour.into_iter().map(Option::unwrap).collect(),
        corner_face,
    ))
}

/// Goeritz matrix over the shaded faces (in face order).
pub fn goeritz_matrix(d: &Diagram) -> Result<Vec<Vec<i128>>> {
    let (colour, corner_face) = checkerboard(d)?;
    let shaded: Vec<usize> = (0..colour.len()).filter(|&f| colour[f]).collect();
    let index: BTreeMap<usize, usize> = shaded.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let m = shaded.len();
    let mut g = vec![vec![0i128; m]; m];
    for cf in &corner_face {
        // the A-smoothing merges the corners (1,2) and (3,0)
        let (eta, a, b) = if colour[cf[1]] {
            (1, cf[1], cf[3])
        } else {
            (-1, cf[0], cf[2])
        };
        if a == b {
            continue;
        }
        let (i, j) = (index[&a], index[&b]);
        g[i][j] -= eta;
        g[j][i] -= eta;
        g[i][i] += eta;
        g[j][j] += eta;
    }
    Ok(g)
}

/// Determinant by fraction-free elimination.
pub fn bareiss(mut m: Vec<Vec<i128>>) -> Result<i128> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return Ok(0);
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j]
                    .checked_mul(m[k][k])
                    .zip(m[i][k].checked_mul(m[k][j]))
                    .and_then(|(x, y)| x.checked_sub(y))
                    .ok_or(Error::Overflow("determinant"))?;
                m[i][j] = v / prev;
            }
        }
        prev = m[k][k];
    }
    Ok(sign * m[n - 1][n - 1])
}

/// `|det|` of the Goeritz matrix with one row and column removed. Split
/// diagrams have determinant 0.
pub fn determinant(d: &Diagram) -> Result<u128> {
    let n = d.crossing_count();
    if n == 0 {
        return Ok(u128::from(d.free_loops() <= 1));
    }
    if d.free_loops() > 0 || d.crossing_groups() > 1 {
        return Ok(0);
    }
    let g = goeritz_matrix(d)?;
    let minor: Vec<Vec<i128>> = g.iter().skip(1).map(|row| row[1..].to_vec()).collect();
    Ok(bareiss(minor)?.unsigned_abs())
}

/// `|<D>|` at a primitive eighth root of unity; equals the determinant.
pub fn determinant_from_bracket(d: &Diagram) -> Result<u128> {
    let norm = zeta8_norm_sq(kauffman_bracket(d).eval_zeta8())
        .ok_or_else(|| Error::Structural("bracket norm at zeta_8 is not an integer".into()))?;
    let root = (norm as f64).sqrt().round() as i128;
    let root = (root - 1..=root + 1)
        .find(|r| *r >= 0 && r * r == norm)
        .ok_or_else(|| Error::Structural(format!("{norm} is not a square")))?;
    Ok(root as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_knots() {
        let trefoil = Diagram::from_pd_code(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]).unwrap();
        let hopf = Diagram::from_pd_code(&[[4, 1, 3, 2], [2, 3, 1, 4]]).unwrap();
        let fig8 = Diagram::from_pd_code(&[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]])
            .unwrap();
        for (d, det) in [(trefoil, 3), (hopf, 2), (fig8, 5), (Diagram::unknot(), 1)] {
            assert_eq!(determinant(&d).unwrap(), det);
            assert_eq!(determinant_from_bracket(&d).unwrap(), det);
        }
    }

    #[test]
    fn split_is_zero() {
        let two = Diagram::new(Vec::new(), 2).unwrap();
        assert_eq!(determinant(&two).unwrap(), 0);
        assert_eq!(determinant_from_bracket(&two).unwrap(), 0);
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert_eq!(bareiss(m).unwrap(), 4);
        assert_eq!(bareiss(vec![vec![0, 1], vec![1, 0]]).unwrap(), -1);
        assert_eq!(bareiss(vec![vec![1, 2], vec![2, 4]]).unwrap(), 0);
    }
}
