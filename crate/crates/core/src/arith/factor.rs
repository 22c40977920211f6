//! Integer factorization at desk scale: trial division up to 10^6, then
//! Brent's variant of Pollard rho on the remaining cofactor.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

use super::Integer;

pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;
const RHO_MAX_ITERATIONS: u64 = 4_000_000;
const RHO_SEEDS: u64 = 8;

/// Prime factorization `|n| = ∏ p^e` with primes in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    factors: BTreeMap<Integer, u32>,
}

impl Factorization {
    pub fn primes(&self) -> Vec<(Integer, u32)> {
        self.factors.iter().map(|(p, e)| (p.clone(), *e)).collect()
    }

    pub fn exponent(&self, p: &Integer) -> u32 {
        self.factors.get(p).copied().unwrap_or(0)
    }

    fn push(&mut self, p: Integer, e: u32) {
        *self.factors.entry(p).or_insert(0) += e;
    }

    /// Human form such as `2^10 * 13^2`; `1` for the empty product.
    pub fn display(&self) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect::<Vec<_>>()
            .join(" * ")
    }
}

fn small_primes(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    if n >= 1 {
        sieve[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u64).collect()
}

fn primes_to_limit() -> &'static [u64] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| small_primes(TRIAL_DIVISION_LIMIT))
}

/// Primes below `bound`, ascending.
pub fn primes_below(bound: u64) -> impl Iterator<Item = u64> {
    primes_to_limit().iter().copied().take_while(move |&p| p < bound)
}

/// Miller–Rabin with the first twelve prime bases. Deterministic below 3.3·10^24.
pub fn is_probable_prime(n: &Integer) -> bool {
    if n < &Integer::from(2) {
        return false;
    }
    const BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        let b = Integer::from(b);
        if n == &b {
            return true;
        }
        if n.is_multiple_of(&b) {
            return false;
        }
    }
    let n_minus_1: Integer = n - Integer::one();
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for b in BASES {
        let mut x = Integer::from(b).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x).mod_floor(n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn rho(n: &Integer, seed: u64) -> Option<Integer> {
    // Brent's cycle detection with batched gcds.
    let c = Integer::from(seed);
    let f = |x: &Integer| -> Integer { (x * x + &c).mod_floor(n) };
    let mut y = Integer::from(2 + seed);
    let mut r: u64 = 1;
    let mut q = Integer::one();
    let mut g = Integer::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let m = 128;
    let mut iterations = 0u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (&q * (&x - &y).abs()).mod_floor(n);
            }
            g = q.gcd(n);
            k += m;
            iterations += m;
        }
        r *= 2;
        if iterations > RHO_MAX_ITERATIONS {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn split_cofactor(n: Integer, out: &mut Factorization) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    let limit_sq = Integer::from(TRIAL_DIVISION_LIMIT) * Integer::from(TRIAL_DIVISION_LIMIT);
    if n < limit_sq || is_probable_prime(&n) {
        out.push(n, 1);
        return Ok(());
    }
    // Perfect powers defeat rho; peel them off first.
    for k in (2..=n.bits() as u32 / 20).rev() {
        let root = n.nth_root(k);
        if root.pow(k) == n {
            let mut inner = Factorization::default();
            split_cofactor(root, &mut inner)?;
            for (p, e) in inner.primes() {
                out.push(p, e * k);
            }
            return Ok(());
        }
    }
    for seed in 1..=RHO_SEEDS {
        if let Some(d) = rho(&n, seed) {
            let other = &n / &d;
            split_cofactor(d, out)?;
            split_cofactor(other, out)?;
            return Ok(());
        }
    }
    Err(Error::FactorizationBudgetExceeded(n.to_string()))
}

/// Factor `|n|` for nonzero `n`.
pub fn factor_integer(n: &Integer) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::Internal("cannot factor zero".into()));
    }
    let mut out = Factorization::default();
    let mut m = n.abs();
    for &p in primes_to_limit() {
        if let Some(small) = m.to_u64() {
            if p * p > small {
                break;
            }
        }
        let pb = BigInt::from(p);
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            out.push(pb, e);
        }
        if m.is_one() {
            break;
        }
    }
    split_cofactor(m, &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_sextic_discriminant() {
        let f = factor_integer(&Integer::from(-173056)).unwrap();
        assert_eq!(f.primes(), vec![(Integer::from(2), 10), (Integer::from(13), 2)]);
        assert_eq!(f.display(), "2^10 * 13^2");
    }

    #[test]
    fn factor_large_semiprime() {
        // 1000003 * 1000033 both above the trial-division limit
        let p = Integer::from(1_000_003u64);
        let q = Integer::from(1_000_033u64);
        let n = &p * &q * &p;
        let f = factor_integer(&n).unwrap();
        assert_eq!(f.primes(), vec![(p, 2), (q, 1)]);
    }

    #[test]
    fn probable_primes() {
        assert!(is_probable_prime(&Integer::from(1_000_000_007u64)));
        assert!(!is_probable_prime(&Integer::from(561)));
        assert!(!is_probable_prime(&Integer::from(3_215_031_751u64)));
        assert!(is_probable_prime(&Integer::from(2)));
    }

    #[test]
    fn factor_products_roundtrip() {
        for n in 1i64..2000 {
            let f = factor_integer(&Integer::from(n)).unwrap();
            let back: Integer = f.primes().iter().map(|(p, e)| p.pow(*e)).product();
            assert_eq!(back, Integer::from(n));
        }
    }
}
