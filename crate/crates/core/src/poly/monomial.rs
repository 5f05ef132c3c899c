use std::cmp::Ordering;

/// Exponent vector of a monomial in a fixed number of variables.
///
/// Ordered graded-lexicographically with `x1 > x2 > ...`, so iterating a
/// sorted collection backwards yields the canonical printing order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn with_exponent(&self, index: usize, exp: u32) -> Monomial {
        let mut exps = self.0.clone();
        exps[index] = exp;
        Monomial(exps)
    }

    /// All monomials of total degree exactly `d`, in descending canonical order.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = vec![0u32; nvars];
        fn rec(pos: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = current.len();
            if pos + 1 == n {
                current[pos] = left;
                out.push(Monomial(current.clone()));
                current[pos] = 0;
                return;
            }
            for e in (0..=left).rev() {
                current[pos] = e;
                rec(pos + 1, left - e, current, out);
            }
            current[pos] = 0;
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(0, d, &mut current, &mut out);
        out
    }

    /// All monomials of total degree at most `d`, in descending canonical order.
    pub fn all_up_to_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        (0..=d)
            .rev()
            .flat_map(|k| Monomial::all_of_degree(nvars, k))
            .collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_with_x1_largest() {
        let x1 = Monomial::var(3, 0);
        let x2 = Monomial::var(3, 1);
        let x1x3 = Monomial::from_exponents(vec![1, 0, 1]);
        let x2sq = Monomial::from_exponents(vec![0, 2, 0]);
        assert!(x1 > x2);
        assert!(x1x3 > x2);
        assert!(x1x3 > x2sq);
    }

    #[test]
    fn enumeration_is_sorted_descending() {
        let all = Monomial::all_up_to_degree(3, 3);
        assert_eq!(all.len(), 20);
        assert!(all.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(Monomial::all_of_degree(5, 4).len(), 70);
    }
}
