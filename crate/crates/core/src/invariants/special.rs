//! Generators of the graded invariants for `n <= 4`.

use crate::error::{Error, Result};
use crate::invariants::generators::{u_generator, v_generator, Case, Generator, GeneratorSet};
use crate::invariants::graded::{homogenize_z, p_generator, q_generator};
use crate::poly::Polynomial;
use crate::scalar::int;
use crate::Poly;

/// `theta = v1^2 - u1^3 + 3 v1 u1 + 2 u1^2` on three variables.
pub fn theta() -> Poly {
    let u1 = u_generator(3, 1).expect("n = 3");
    let v1 = v_generator(3, 1).expect("n = 3");
    let mut out = &v1 * &v1;
    out = &out - &u1.pow(3);
    out = &out + &(&v1 * &u1).scale(&int(3));
    &out + &(&u1 * &u1).scale(&int(2))
}

/// `theta + 3 u1 u2` on four variables.
pub fn theta_tilde() -> Poly {
    let u1 = u_generator(4, 1).expect("n = 4");
    let u2 = u_generator(4, 2).expect("n = 4");
    &theta().extend(4) + &(&u1 * &u2).scale(&int(3))
}

/// `s = x1^4 theta(z)`, homogeneous of degree 4 on four variables.
pub fn s_element() -> Poly {
    homogenize_z(&theta(), 4).expect("theta has degree 4")
}

/// `t = x1^3 theta~(z)`, homogeneous of degree 3 on five variables.
pub fn t_element() -> Poly {
    homogenize_z(&theta_tilde(), 3).expect("theta~ has degree 3")
}

/// Named generators of the graded invariants on `n + 1` variables, `1 <= n <= 4`.
pub fn special_generators(n: usize) -> Result<GeneratorSet> {
    let nv = n + 1;
    let x1 = || Generator::new("x1", Polynomial::var(nv, 0));
    let members = match n {
        1 => vec![x1()],
        2 => vec![x1(), Generator::new("p1", p_generator(2, 1)?)],
        3 => vec![
            x1(),
            Generator::new("p1", p_generator(3, 1)?),
            Generator::new("q1", q_generator(3, 1)?),
            Generator::new("s", s_element()),
        ],
        4 => vec![
            x1(),
            Generator::new("p1", p_generator(4, 1)?),
            Generator::new("q1", q_generator(4, 1)?),
            Generator::new("p2", p_generator(4, 2)?),
            Generator::new("t", t_element()),
        ],
        _ => return Err(Error::out_of_range(format!("special generators exist for 1 <= n <= 4, got {n}"))),
    };
    Ok(GeneratorSet {
        case: Case::Graded,
        n,
        members,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    #[test]
    fn theta_expansion() {
        let expected = parse(
            "-3*x1^2*(x2^2 - x1*(x2 + 2*x3)) + 9*x1*(x1 + 2*x2)*x3 - 8*x2^3 + x1*x2*(5*x1 + 6*x2) \
             + 9*x3^2 + 3*(x1 + 6*x2)*x3 + 8*x2^2 + 2*x1*x2",
            3,
        )
        .unwrap();
        assert_eq!(theta(), expected);
        assert_eq!(
            theta().leading_form().unwrap(),
            parse("-3*x1^2*(x2^2 - x1*(x2 + 2*x3))", 3).unwrap()
        );
    }

    #[test]
    fn theta_tilde_expansion() {
        let expected = parse(
            "-6*x1^2*x4 + 6*x1*(x2 - x1)*x3 - 2*x2^3 + x1*x2*(3*x2 - x1) \
             - 6*(x1 + 2*x2)*x4 + 9*x3^2 - 6*x1*x3 + 2*x2^2 - x1*x2",
            4,
        )
        .unwrap();
        assert_eq!(theta_tilde(), expected);
    }

    #[test]
    fn s_and_t_expansions() {
        let s = parse(
            "-3*x2^2*(x3^2 - x2*(x3 + 2*x4)) - 9*x1*x2*(x2 + 2*x3)*x4 + 8*x1*x3^3 \
             - x1*x2*x3*(5*x2 + 6*x3) + 9*x1^2*x4^2 + 3*x1^2*(x2 + 6*x3)*x4 + 8*x1^2*x3^2 + 2*x1^2*x2*x3",
            4,
        )
        .unwrap();
        assert_eq!(s_element(), s);
        let t = parse(
            "6*x2^2*x5 - 6*x2*(x3 - x2)*x4 + 2*x3^3 - x2*x3*(3*x3 - x2) \
             + x1*(-6*(x2 + 2*x3)*x5 + 9*x4^2 - 6*x2*x4 + 2*x3^2 - x2*x3)",
            5,
        )
        .unwrap();
        assert_eq!(t_element(), t);
    }

    #[test]
    fn generator_sets() {
        let degrees = |n| special_generators(n).unwrap().members.iter().map(|g| g.degree).collect::<Vec<_>>();
        assert_eq!(degrees(1), vec![1]);
        assert_eq!(degrees(2), vec![1, 2]);
        assert_eq!(degrees(3), vec![1, 2, 3, 4]);
        assert_eq!(degrees(4), vec![1, 2, 3, 2, 3]);
        for n in 1..=4 {
            special_generators(n).unwrap().verify().unwrap();
        }
        assert_eq!(special_generators(3).unwrap().names(), vec!["x1", "p1", "q1", "s"]);
        assert!(special_generators(5).is_err());
    }
}
