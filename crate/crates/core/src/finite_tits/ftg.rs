//! Identities among lifts of the length-zero Weyl parts `y_(i)`.
//!
//! `y_(i) = y_{I - {i}} y_I` for a minuscule coweight `omega_i^vee`, where
//! `y_J` is the longest element of the parabolic subgroup on `J`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_datum::{RootDatum, RootType, SignVector, WeylElt};

use super::{ft_lift, ft_mul, ft_pow, is_central, TitsFinElt, TitsFinView};

/// `y_(i)` for node `i` (0-based) of its component.
pub fn y_minuscule(rd: &RootDatum, i: usize) -> WeylElt {
    let c = rd.components[rd.component_of_node(i)];
    let all: Vec<usize> = c.nodes().collect();
    let rest: Vec<usize> = c.nodes().filter(|&j| j != i).collect();
    rd.weyl_mul(&rd.longest_element(&rest), &rd.longest_element(&all))
}

#[derive(Debug, Clone, Serialize)]
pub struct FtgCheck {
    pub identity: String,
    pub lhs: TitsFinView,
    pub rhs: TitsFinView,
    pub holds: bool,
}

fn coroot_sum(rd: &RootDatum, labels: impl IntoIterator<Item = usize>) -> SignVector {
    labels
        .into_iter()
        .fold(SignVector::ZERO, |acc, j| acc + rd.coroot_sign(j - 1))
}

/// Runs every identity applicable to the almost simple datum.
pub fn check_ftg_identities(rd: &RootDatum) -> Result<Vec<FtgCheck>> {
    if rd.components.len() != 1 {
        return Err(Error::Unsupported("identities need an almost simple datum".into()));
    }
    let c = rd.components[0];
    let n = c.rank;
    let mut out = Vec::new();
    let lift_y = |j: usize| ft_lift(&y_minuscule(rd, j - 1));
    let mut push = |identity: String, lhs: TitsFinElt, rhs: TitsFinElt, holds: bool| {
        out.push(FtgCheck { identity, lhs: lhs.view(rd), rhs: rhs.view(rd), holds });
    };

    // (1) n_{y(i)}^k lies in the center, k the order of y(i)
    for i in 1..=n {
        if !rd.is_minuscule(i - 1) {
            continue;
        }
        let y = y_minuscule(rd, i - 1);
        let k = rd.weyl_order(&y);
        let lhs = ft_pow(rd, &ft_lift(&y), k);
        let holds = lhs.w.is_identity() && is_central(rd, lhs.eps);
        let rhs = lhs.clone();
        push(format!("(1) i={i} k={k} central"), lhs, rhs, holds);
    }

    if c.kind == RootType::A {
        // (2) powers of n_{y(1)}
        let n1 = lift_y(1);
        for i in 0..=n {
            let lhs = ft_pow(rd, &n1, i + 1);
            let eps = if i % 2 == 1 { coroot_sum(rd, (1..=i).step_by(2)) } else { SignVector::ZERO };
            let rhs = TitsFinElt { eps, w: rd.weyl_pow(&n1.w, i + 1) };
            let holds = lhs == rhs;
            push(format!("(2) i={i}"), lhs, rhs, holds);
        }
    }

    if c.kind == RootType::D && n % 2 == 1 {
        let nn = lift_y(n);
        let even_tail = coroot_sum(rd, [n - 1, n]);
        let (a_eps, b_eps) = if n % 4 == 1 {
            (coroot_sum(rd, (2..n).step_by(2)), even_tail)
        } else {
            (coroot_sum(rd, (2..=n - 3).step_by(2).chain([n])), SignVector::ZERO)
        };
        let cases = [
            ("(3a)", 2, TitsFinElt { eps: a_eps, w: lift_y(1).w }),
            ("(3b)", 3, TitsFinElt { eps: b_eps, w: lift_y(n - 1).w }),
            ("(3c)", 4, TitsFinElt { eps: even_tail, w: rd.weyl_identity() }),
        ];
        for (name, k, rhs) in cases {
            let lhs = ft_pow(rd, &nn, k);
            let holds = lhs == rhs;
            push(format!("{name} n={n}"), lhs, rhs, holds);
        }
    }

    if c.kind == RootType::D && n % 2 == 0 {
        let labels = [1, n - 1, n];
        for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            let (a, b, m) = (labels[i], labels[j], labels[k]);
            let ab = ft_mul(rd, &lift_y(a), &lift_y(b));
            let ba = ft_mul(rd, &lift_y(b), &lift_y(a));
            let target = lift_y(m);
            // ab = t_z n_{y(m)} with z central
            let holds = ab.w == target.w && is_central(rd, ab.eps) && ab == ba;
            push(format!("(4) y({a}) y({b}) = z y({m})"), ab.clone(), ba, holds);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::Isogeny;

    #[test]
    fn y_parts_have_expected_orders() {
        let rd = RootDatum::simple(RootType::A, 3, Isogeny::Sc).unwrap();
        assert_eq!(rd.weyl_order(&y_minuscule(&rd, 0)), 4);
        let rd = RootDatum::simple(RootType::D, 5, Isogeny::Sc).unwrap();
        assert_eq!(rd.weyl_order(&y_minuscule(&rd, 4)), 4);
        let rd = RootDatum::simple(RootType::D, 4, Isogeny::Sc).unwrap();
        assert_eq!(rd.weyl_order(&y_minuscule(&rd, 0)), 2);
    }

    #[test]
    fn battery_holds() {
        let mut cases: Vec<(RootType, usize)> = (2..=5).map(|n| (RootType::A, n)).collect();
        cases.extend([(RootType::D, 4), (RootType::D, 5), (RootType::D, 6), (RootType::D, 7)]);
        for (k, n) in cases {
            let rd = RootDatum::simple(k, n, Isogeny::Sc).unwrap();
            for chk in check_ftg_identities(&rd).unwrap() {
                assert!(chk.holds, "{k}{n} {}: {:?} vs {:?}", chk.identity, chk.lhs, chk.rhs);
            }
        }
    }

    #[test]
    fn d5_fourth_power() {
        let rd = RootDatum::simple(RootType::D, 5, Isogeny::Sc).unwrap();
        let n5 = ft_lift(&y_minuscule(&rd, 4));
        let p = ft_pow(&rd, &n5, 4);
        assert!(p.w.is_identity());
        assert_eq!(p.eps, rd.coroot_sign(3) + rd.coroot_sign(4));
    }
}
