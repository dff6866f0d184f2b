//! Dirichlet characters with exact values in cyclotomic fields.
//!
//! `(Z/N)^x` is presented as a product of cyclic groups: a primitive root
//! for each odd prime power, `3` for `4`, and `{-1, 5}` for `2^k` with
//! `k >= 3`, lifted to residues mod `N` by CRT. A character is an exponent
//! tuple `(e_i)` with `chi(g_i) = zeta_{ord_i}^{e_i}`; characters are indexed
//! by the lexicographic rank of that tuple, first generator most significant.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::ntheory::{divisors, euler_phi, factorize, gcd, lcm, mod_pow};
use crate::arith::{CycRat, Field, Rat};
use crate::error::{domain, Result};

/// Cyclic decomposition of `(Z/N)^x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitGroup {
    modulus: u64,
    generators: Vec<(u64, u64)>,
    /// `dlog[n]` is the exponent tuple of `n`, or `None` for non-units.
    dlog: Vec<Option<Vec<u64>>>,
}

fn multiplicative_order(g: u64, n: u64) -> u64 {
    let mut x = g % n;
    let mut k = 1;
    while x != 1 {
        x = (x as u128 * g as u128 % n as u128) as u64;
        k += 1;
    }
    k
}

fn primitive_root(pk: u64) -> u64 {
    let phi = euler_phi(pk);
    (2..pk)
        .find(|&g| gcd(g, pk) == 1 && multiplicative_order(g, pk) == phi)
        .expect("odd prime powers are cyclic")
}

/// The residue mod `n` that is `a` mod `m` and `1` mod `n/m` (`m | n`, coprime cofactor).
fn crt_lift(a: u64, m: u64, n: u64) -> u64 {
    let other = n / m;
    (0..n)
        .step_by(m as usize)
        .map(|t| t + a % m)
        .find(|&x| x % other == 1 % other)
        .expect("coprime moduli")
}

impl UnitGroup {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(domain("modulus must be >= 1"));
        }
        let mut generators = Vec::new();
        for (p, e) in factorize(modulus) {
            let pk = p.pow(e);
            let local: Vec<(u64, u64)> = match (p, e) {
                (2, 1) => vec![],
                (2, 2) => vec![(3, 2)],
                (2, _) => vec![(pk - 1, 2), (5, pk / 4)],
                _ => vec![(primitive_root(pk), euler_phi(pk))],
            };
            for (g, ord) in local {
                generators.push((crt_lift(g, pk, modulus), ord));
            }
        }
        let mut dlog = vec![None; modulus as usize];
        let mut exps = vec![0u64; generators.len()];
        loop {
            let n = generators
                .iter()
                .zip(&exps)
                .fold(1 % modulus, |acc, (&(g, _), &e)| {
                    (acc as u128 * mod_pow(g, e, modulus) as u128 % modulus as u128) as u64
                });
            dlog[n as usize] = Some(exps.clone());
            if !increment(&mut exps, &generators) {
                break;
            }
        }
        Ok(UnitGroup {
            modulus,
            generators,
            dlog,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `(residue, order)` pairs.
    pub fn generators(&self) -> &[(u64, u64)] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.generators.iter().map(|&(_, o)| o).product()
    }

    /// Exponent tuple of `n` with respect to the generators.
    pub fn dlog(&self, n: u64) -> Option<&[u64]> {
        self.dlog[(n % self.modulus) as usize].as_deref()
    }
}

/// Mixed-radix increment, last generator fastest. Returns false on wrap.
fn increment(exps: &mut [u64], generators: &[(u64, u64)]) -> bool {
    for i in (0..exps.len()).rev() {
        exps[i] += 1;
        if exps[i] < generators[i].1 {
            return true;
        }
        exps[i] = 0;
    }
    false
}

/// `unit_group(N)`.
pub fn unit_group(modulus: u64) -> Result<UnitGroup> {
    UnitGroup::new(modulus)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DirichletCharacter {
    modulus: u64,
    index: u64,
    exponents: Vec<u64>,
    order: u64,
    values: Vec<CycRat>,
}

impl DirichletCharacter {
    fn build(group: &UnitGroup, index: u64, exponents: Vec<u64>) -> Self {
        let order = group
            .generators
            .iter()
            .zip(&exponents)
            .fold(1, |acc, (&(_, o), &e)| lcm(acc, o / gcd(e, o)));
        let values = (0..group.modulus)
            .map(|n| match group.dlog(n) {
                None => CycRat::from_rat(Rat::zero()),
                Some(t) => {
                    let k = group
                        .generators
                        .iter()
                        .zip(&exponents)
                        .zip(t)
                        .map(|((&(_, o), &e), &ti)| e * ti % o * order / o)
                        .sum::<u64>();
                    CycRat::root_of_unity(order, k % order)
                }
            })
            .collect();
        DirichletCharacter {
            modulus: group.modulus,
            index,
            exponents,
            order,
            values,
        }
    }

    /// The character with the given lexicographic index.
    pub fn new(modulus: u64, index: u64) -> Result<Self> {
        let group = UnitGroup::new(modulus)?;
        if index >= group.order() {
            return Err(domain(alloc::format!(
                "modulus {modulus} has {} characters, index {index} is out of range",
                group.order()
            )));
        }
        let mut rest = index;
        let mut exponents = vec![0; group.generators.len()];
        for (slot, &(_, o)) in exponents.iter_mut().zip(&group.generators).rev() {
            *slot = rest % o;
            rest /= o;
        }
        Ok(Self::build(&group, index, exponents))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Order of the character; its values lie in `Q(zeta_order)`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_real(&self) -> bool {
        self.order <= 2
    }

    /// `chi(n)` for any integer `n >= 0`, by periodicity.
    pub fn value(&self, n: u64) -> &CycRat {
        &self.values[(n % self.modulus) as usize]
    }

    /// `chi(0), ..., chi(N-1)`.
    pub fn values(&self) -> &[CycRat] {
        &self.values
    }

    /// `chi(n)` converted into the field `F`.
    pub fn value_in<F: Field>(&self, n: u64) -> Result<F> {
        F::from_cyc(self.value(n)).ok_or_else(|| {
            domain(alloc::format!(
                "character value {} does not lie in the coefficient field",
                self.value(n)
            ))
        })
    }

    /// True iff the character does not factor through a proper divisor of `N`.
    pub fn is_primitive(&self) -> bool {
        let n = self.modulus;
        let one = CycRat::from_rat(Rat::one());
        divisors(n).into_iter().filter(|&d| d < n).all(|d| {
            (1..n)
                .step_by(d as usize)
                .filter(|&a| gcd(a, n) == 1)
                .any(|a| self.value(a) != &one)
        })
    }

    /// Smallest period of the character as a function on residues.
    pub fn conductor(&self) -> u64 {
        let n = self.modulus;
        let one = CycRat::from_rat(Rat::one());
        divisors(n)
            .into_iter()
            .find(|&d| {
                (1..n)
                    .step_by(d as usize)
                    .filter(|&a| gcd(a, n) == 1)
                    .all(|a| self.value(a) == &one)
            })
            .unwrap_or(n)
    }
}

/// All `phi(N)` characters mod `N` in index order.
pub fn characters(modulus: u64) -> Result<Vec<DirichletCharacter>> {
    let group = UnitGroup::new(modulus)?;
    let mut out = Vec::with_capacity(group.order() as usize);
    let mut exps = vec![0u64; group.generators.len()];
    let mut index = 0;
    loop {
        out.push(DirichletCharacter::build(&group, index, exps.clone()));
        index += 1;
        if !increment(&mut exps, &group.generators) {
            break;
        }
    }
    Ok(out)
}

pub fn is_primitive(chi: &DirichletCharacter) -> bool {
    chi.is_primitive()
}
