use num_integer::Integer;
use num_rational::Ratio;
use num_traits::FromPrimitive;

use super::WordType;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KgeCount<T> {
    pub per_type: Vec<(WordType, T)>,
    pub total: T,
}

fn lift<T: FromPrimitive>(v: u64) -> T {
    T::from_u64(v).expect("value fits the count type")
}

/// `C(n, k)`, exact in `T`.
pub fn binomial<T: Integer + Clone + FromPrimitive>(n: u64, k: u64) -> T {
    if k > n {
        return T::zero();
    }
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * lift::<T>(n - i) / lift::<T>(i + 1);
    }
    acc
}

/// Canonical word counts per type from the closed-form table.
pub fn count_kge<T: Integer + Clone + FromPrimitive>(n: u64) -> KgeCount<T> {
    let per_type: Vec<(WordType, T)> = WordType::ALL
        .into_iter()
        .map(|t| (t, t.count::<T>(n)))
        .collect();
    let total = per_type
        .iter()
        .fold(T::zero(), |acc, (_, c)| acc + c.clone());
    KgeCount { per_type, total }
}

/// `p(n) = 5/24 n^4 + 37/12 n^3 + 79/24 n^2 + 101/12 n + 2`, evaluated in exact rationals.
pub fn p_polynomial<T: Integer + Clone + FromPrimitive>(n: u64) -> T {
    let r = |a: u64, b: u64| Ratio::new(lift::<T>(a), lift::<T>(b));
    let x = Ratio::from_integer(lift::<T>(n));
    let x2 = x.clone() * x.clone();
    let x3 = x2.clone() * x.clone();
    let x4 = x3.clone() * x.clone();
    let value = r(5, 24) * x4 + r(37, 12) * x3 + r(79, 24) * x2 + r(101, 12) * x + r(2, 1);
    assert!(value.is_integer(), "p(n) is an integer for every n");
    value.to_integer()
}

/// `p(n) = 5C(n,4) + 10C(n+1,3) + 13C(n,3) + (n+14)C(n,2) + n^2 + 14n + 2`.
pub fn p_binomial<T: Integer + Clone + FromPrimitive>(n: u64) -> T {
    let t = lift::<T>;
    t(5) * binomial::<T>(n, 4)
        + t(10) * binomial::<T>(n + 1, 3)
        + t(13) * binomial::<T>(n, 3)
        + t(n + 14) * binomial::<T>(n, 2)
        + t(n * n)
        + t(14 * n)
        + t(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn binomials() {
        assert_eq!(binomial::<u64>(4, 2), 6);
        assert_eq!(binomial::<u64>(5, 0), 1);
        assert_eq!(binomial::<u64>(2, 3), 0);
        assert_eq!(binomial::<u64>(50, 25), 126_410_606_437_752);
    }

    #[test]
    fn totals_agree() {
        for n in 1..=30 {
            let total = count_kge::<u64>(n).total;
            assert_eq!(total, p_polynomial::<u64>(n));
            assert_eq!(total, p_binomial::<u64>(n));
        }
        assert_eq!(count_kge::<BigUint>(4).total, BigUint::from(339u32));
    }
}
