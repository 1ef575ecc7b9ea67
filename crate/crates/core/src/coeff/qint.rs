use super::{CoeffError, RatFunc};

/// `[n]_q = 1 + q + ... + q^(n-1)`, defined for `n >= 1`.
pub fn q_int(n: u32, q: &RatFunc) -> Result<RatFunc, CoeffError> {
    if n == 0 {
        return Err(CoeffError::ZeroQInteger);
    }
    let mut acc = RatFunc::zero();
    let mut p = RatFunc::one();
    for k in 0..n {
        acc = &acc + &p;
        if k + 1 < n {
            p = &p * q;
        }
    }
    Ok(acc)
}

/// `[n]!_q = [1]_q [2]_q ... [n]_q` with `[0]!_q = 1`.
pub fn q_factorial(n: u32, q: &RatFunc) -> RatFunc {
    (1..=n).fold(RatFunc::one(), |acc, k| &acc * &q_int(k, q).expect("k >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_q_integers() {
        let q = RatFunc::rs(-1, 1);
        assert_eq!(q_int(1, &q).unwrap(), RatFunc::one());
        assert_eq!(q_int(2, &q).unwrap(), &RatFunc::one() + &q);
        assert_eq!(q_int(0, &q), Err(CoeffError::ZeroQInteger));
    }

    #[test]
    fn q_int_three_expanded_by_hand() {
        let q = RatFunc::rs(-3, 3);
        let expect = &(&RatFunc::one() + &RatFunc::rs(-3, 3)) + &RatFunc::rs(-6, 6);
        assert_eq!(q_int(3, &q).unwrap(), expect);
    }

    #[test]
    fn factorials() {
        let q = RatFunc::rs(-1, 1);
        assert_eq!(q_factorial(0, &q), RatFunc::one());
        assert_eq!(q_factorial(2, &q), &RatFunc::one() + &q);
        let one = RatFunc::one();
        let expect = &(&one + &q) * &(&(&one + &q) + &(&q * &q));
        assert_eq!(q_factorial(3, &q), expect);
    }
}
