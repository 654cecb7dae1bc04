//! Cartan matrices in Bourbaki numbering.
//!
//! Entry `[i][j]` is the pairing of the root `alpha_j` with the coroot `alpha_i^vee`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl RootType {
    pub fn letter(self) -> char {
        match self {
            RootType::A => 'A',
            RootType::B => 'B',
            RootType::C => 'C',
            RootType::D => 'D',
            RootType::E => 'E',
            RootType::F => 'F',
            RootType::G => 'G',
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for RootType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "A" => RootType::A,
            "B" => RootType::B,
            "C" => RootType::C,
            "D" => RootType::D,
            "E" => RootType::E,
            "F" => RootType::F,
            "G" => RootType::G,
            _ => return Err(Error::UnknownType(s.to_string())),
        })
    }
}

pub fn check_rank(kind: RootType, rank: usize) -> Result<()> {
    let ok = match kind {
        RootType::A => rank >= 1,
        RootType::B | RootType::C => rank >= 2,
        RootType::D => rank >= 4,
        RootType::E => (6..=8).contains(&rank),
        RootType::F => rank == 4,
        RootType::G => rank == 2,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidRank { kind: kind.letter(), rank })
    }
}

pub fn cartan_matrix(kind: RootType, n: usize) -> Result<Vec<Vec<i64>>> {
    check_rank(kind, n)?;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match kind {
        RootType::A | RootType::B | RootType::C | RootType::F | RootType::G => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        RootType::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        RootType::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
    }
    // the row of the short simple root carries the large entry
    match kind {
        RootType::B => a[n - 1][n - 2] = -2,
        RootType::C => a[n - 2][n - 1] = -2,
        RootType::F => a[2][1] = -2,
        RootType::G => a[0][1] = -3,
        _ => {}
    }
    Ok(a)
}

/// Coxeter number.
pub fn coxeter_number(kind: RootType, n: usize) -> i64 {
    let n = n as i64;
    match kind {
        RootType::A => n + 1,
        RootType::B | RootType::C => 2 * n,
        RootType::D => 2 * n - 2,
        RootType::E => match n {
            6 => 12,
            7 => 18,
            _ => 30,
        },
        RootType::F => 12,
        RootType::G => 6,
    }
}

/// Half squared lengths of the simple coroots, smallest equal to one.
pub fn symmetrizer(cartan: &[Vec<i64>]) -> Vec<i64> {
    let n = cartan.len();
    let mut d = vec![0i64; n];
    if n == 0 {
        return d;
    }
    d[0] = 6;
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if j != i && cartan[i][j] != 0 && d[j] == 0 {
                // cartan[i][j] d_j = cartan[j][i] d_i
                d[j] = cartan[j][i] * d[i] / cartan[i][j];
                stack.push(j);
            }
        }
    }
    let m = *d.iter().min().unwrap();
    d.iter().map(|x| x / m).collect()
}

/// Coxeter matrix entry for two nodes given the product of the off-diagonal
/// Cartan entries; `None` means infinite order.
pub fn braid_order(product: i64) -> Option<usize> {
    match product {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_and_c_are_transposes() {
        let b = cartan_matrix(RootType::B, 3).unwrap();
        let c = cartan_matrix(RootType::C, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(b[i][j], c[j][i]);
            }
        }
    }

    #[test]
    fn symmetrized() {
        for (k, n) in [(RootType::B, 3), (RootType::C, 4), (RootType::F, 4), (RootType::G, 2), (RootType::E, 7)] {
            let a = cartan_matrix(k, n).unwrap();
            let d = symmetrizer(&a);
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(a[i][j] * d[j], a[j][i] * d[i]);
                }
            }
        }
        let g = cartan_matrix(RootType::G, 2).unwrap();
        assert_eq!(symmetrizer(&g), vec![3, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!("H".parse::<RootType>(), Err(Error::UnknownType(_))));
        assert!(cartan_matrix(RootType::E, 5).is_err());
        assert!(cartan_matrix(RootType::D, 3).is_err());
    }
}
