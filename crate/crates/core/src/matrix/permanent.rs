//! Exact and modular permanents.
//!
//! The main kernel is a column sweep over row subsets: columns are grouped by
//! content (repeated columns are common in weight matrices), processed in an
//! order that keeps the set of partially covered rows small, and each state
//! records which rows are already matched. Rows whose support has been fully
//! swept must be matched, which prunes most states on sparse inputs. The worst
//! case is the same 2^n bound as Ryser's formula. Ryser's inclusion-exclusion
//! formula is provided as well and the two are checked against each other.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

pub const MAX_DIM: usize = 64;

trait Ring {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, x: i64) -> Self::Elem;
    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem);
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

struct Integers;

impl Ring for Integers {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, x: i64) -> BigInt {
        BigInt::from(x)
    }
    fn add_assign(&self, a: &mut BigInt, b: &BigInt) {
        *a += b;
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
}

struct Residues(u64);

impl Ring for Residues {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
    fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }
    fn add_assign(&self, a: &mut u64, b: &u64) {
        *a = ((*a as u128 + *b as u128) % self.0 as u128) as u64;
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_square(m: &IntMatrix) -> Result<()> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() > MAX_DIM {
        return Err(Error::TooLarge(m.rows()));
    }
    Ok(())
}

/// Exact permanent.
pub fn permanent_exact(m: &IntMatrix) -> Result<BigInt> {
    check_square(m)?;
    Ok(sweep(&Integers, m))
}

/// Permanent reduced into `0..p`.
pub fn permanent_mod(m: &IntMatrix, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    check_square(m)?;
    Ok(sweep(&Residues(p), m))
}

/// Ryser's formula with Gray-code column toggling.
pub fn permanent_ryser(m: &IntMatrix) -> Result<BigInt> {
    check_square(m)?;
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    if n > 30 {
        return Err(Error::TooLarge(n));
    }
    let mut row_sums = vec![0i64; n];
    let mut total = BigInt::zero();
    let mut gray: u64 = 0;
    for k in 1u64..(1u64 << n) {
        let next = k ^ (k >> 1);
        let flipped = (gray ^ next).trailing_zeros() as usize;
        let sign: i64 = if next & (1 << flipped) != 0 { 1 } else { -1 };
        for (r, s) in row_sums.iter_mut().enumerate() {
            *s += sign * m.get(r, flipped);
        }
        gray = next;
        let mut prod = BigInt::one();
        for &s in &row_sums {
            if s == 0 {
                prod = BigInt::zero();
                break;
            }
            prod *= s;
        }
        if !prod.is_zero() {
            if (n - next.count_ones() as usize) % 2 == 0 {
                total += prod;
            } else {
                total -= prod;
            }
        }
    }
    Ok(total)
}

struct ColumnGroup {
    support: Vec<(usize, i64)>,
    multiplicity: usize,
}

fn group_columns(m: &IntMatrix) -> Vec<ColumnGroup> {
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut groups: Vec<ColumnGroup> = Vec::new();
    for c in 0..m.cols() {
        let col = m.column(c);
        match index.get(&col) {
            Some(&g) => groups[g].multiplicity += 1,
            None => {
                let support = col
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(r, &x)| (r, x))
                    .collect();
                index.insert(col, groups.len());
                groups.push(ColumnGroup {
                    support,
                    multiplicity: 1,
                });
            }
        }
    }
    groups
}

/// Greedy order: next column is the one that opens the fewest new rows,
/// preferring columns that overlap most with rows already opened.
fn sweep_order(groups: &[ColumnGroup], n: usize) -> Vec<usize> {
    let mut opened = vec![false; n];
    let mut used = vec![false; groups.len()];
    let mut order = Vec::with_capacity(groups.len());
    for _ in 0..groups.len() {
        let best = (0..groups.len())
            .filter(|&g| !used[g])
            .min_by_key(|&g| {
                let fresh = groups[g].support.iter().filter(|(r, _)| !opened[*r]).count();
                let overlap = groups[g].support.len() - fresh;
                (fresh, std::cmp::Reverse(overlap), g)
            })
            .expect("unused column");
        used[best] = true;
        for &(r, _) in &groups[best].support {
            opened[r] = true;
        }
        order.push(best);
    }
    order
}

fn sweep<R: Ring>(ring: &R, m: &IntMatrix) -> R::Elem {
    let n = m.rows();
    if n == 0 {
        return ring.one();
    }
    let groups = group_columns(m);
    if groups.iter().any(|g| g.support.len() < g.multiplicity) {
        return ring.zero();
    }
    let order = sweep_order(&groups, n);
    let mut last_seen = vec![usize::MAX; n];
    for (pos, &g) in order.iter().enumerate() {
        for &(r, _) in &groups[g].support {
            last_seen[r] = pos;
        }
    }
    if last_seen.contains(&usize::MAX) {
        return ring.zero();
    }
    let mut closing = vec![0u64; order.len()];
    for (r, &pos) in last_seen.iter().enumerate() {
        closing[pos] |= 1 << r;
    }

    let mut states: HashMap<u64, R::Elem> = HashMap::from([(0u64, ring.one())]);
    let mut must_have = 0u64;
    for (pos, &g) in order.iter().enumerate() {
        let group = &groups[g];
        must_have |= closing[pos];
        let entries: Vec<(u64, R::Elem)> = group
            .support
            .iter()
            .map(|&(r, x)| (1u64 << r, ring.from_i64(x)))
            .collect();
        let mut factorial = ring.one();
        for k in 2..=group.multiplicity {
            factorial = ring.mul(&factorial, &ring.from_i64(k as i64));
        }
        let mut next: HashMap<u64, R::Elem> = HashMap::with_capacity(states.len());
        for (mask, value) in &states {
            let base = ring.mul(value, &factorial);
            choose_rows(
                ring,
                &entries,
                0,
                group.multiplicity,
                *mask,
                base,
                must_have,
                &mut next,
            );
        }
        next.retain(|_, v| !ring.is_zero(v));
        states = next;
        if states.is_empty() {
            return ring.zero();
        }
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    states.remove(&full).unwrap_or_else(|| ring.zero())
}

#[allow(clippy::too_many_arguments)]
fn choose_rows<R: Ring>(
    ring: &R,
    entries: &[(u64, R::Elem)],
    from: usize,
    remaining: usize,
    mask: u64,
    acc: R::Elem,
    must_have: u64,
    out: &mut HashMap<u64, R::Elem>,
) {
    if remaining == 0 {
        if mask & must_have == must_have {
            ring.add_assign(out.entry(mask).or_insert_with(|| ring.zero()), &acc);
        }
        return;
    }
    for i in from..entries.len() {
        if entries.len() - i < remaining {
            break;
        }
        let (bit, ref x) = entries[i];
        if mask & bit == 0 {
            let value = ring.mul(&acc, x);
            choose_rows(ring, entries, i + 1, remaining - 1, mask | bit, value, must_have, out);
        }
    }
}

/// Reduces an exact value into `0..p`.
pub fn reduce_mod(x: &BigInt, p: u64) -> u64 {
    let r = x % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits")
}
