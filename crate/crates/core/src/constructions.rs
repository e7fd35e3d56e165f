//! Builders for the group families studied here.
//!
//! Degree-2p families use points `x_i = i` and `y_i = p + i` for
//! `i in 0..p`; the pair `{x_i, y_i}` is block `i`. A kernel subgroup of
//! `E = <(x_i y_i)>` is described by a binary cyclic code of length `p`:
//! codeword `c` stands for the product of `(x_i y_i)` over the support of `c`.

use crate::error::{Error, Result};
use crate::group::{PermGroup, DEFAULT_ORDER_CAP};
use crate::perm::Perm;

/// Seeds for a shift-invariant binary code of odd prime length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    p: usize,
    seeds: Vec<u64>,
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl CodeSpec {
    /// `seeds` are 0/1 strings of length `p`, each of even weight.
    pub fn new(p: usize, seeds: &[&str]) -> Result<CodeSpec> {
        if p.is_multiple_of(2) || !is_prime(p) || p > 61 {
            return Err(Error::InvalidCodeSpec(format!(
                "length {p} is not an odd prime below 62"
            )));
        }
        let mut words = Vec::new();
        for s in seeds {
            if s.len() != p {
                return Err(Error::InvalidCodeSpec(format!(
                    "seed {s:?} does not have length {p}"
                )));
            }
            let mut w = 0u64;
            for (i, ch) in s.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => w |= 1 << i,
                    _ => {
                        return Err(Error::InvalidCodeSpec(format!(
                            "seed {s:?} is not a 0/1 string"
                        )))
                    }
                }
            }
            if !w.count_ones().is_multiple_of(2) {
                return Err(Error::InvalidCodeSpec(format!("seed {s:?} has odd weight")));
            }
            words.push(w);
        }
        Ok(CodeSpec { p, seeds: words })
    }

    /// The code of all even-weight words, seeded by `1100...0`.
    pub fn full_even_weight(p: usize) -> Result<CodeSpec> {
        let seed: String = (0..p).map(|i| if i < 2 { '1' } else { '0' }).collect();
        CodeSpec::new(p, &[&seed])
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn seeds(&self) -> Vec<String> {
        self.seeds.iter().map(|&w| word_string(w, self.p)).collect()
    }

    fn shift(&self, w: u64) -> u64 {
        let mask = (1u64 << self.p) - 1;
        ((w << 1) | (w >> (self.p - 1))) & mask
    }

    fn multiply(&self, w: u64, m: usize) -> u64 {
        (0..self.p)
            .filter(|i| w >> i & 1 == 1)
            .fold(0, |acc, i| acc | 1 << (i * m % self.p))
    }

    /// A basis, in reduced echelon form, of the span of all cyclic shifts
    /// of the seeds.
    pub fn basis(&self) -> Vec<u64> {
        let mut rows: Vec<u64> = Vec::new();
        for &s in &self.seeds {
            let mut w = s;
            for _ in 0..self.p {
                insert_reduced(&mut rows, w);
                w = self.shift(w);
            }
        }
        rows.sort_unstable();
        rows
    }

    pub fn dimension(&self) -> usize {
        self.basis().len()
    }

    /// All codewords, ascending.
    pub fn codewords(&self) -> Vec<u64> {
        let basis = self.basis();
        let mut out: Vec<u64> = (0..1u64 << basis.len())
            .map(|mask| {
                basis
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0, |acc, (_, &b)| acc ^ b)
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn contains(&self, w: u64) -> bool {
        let basis = self.basis();
        reduce(&basis, w) == 0
    }

    /// Invariance under the coordinate map `i -> m*i mod p`.
    pub fn is_multiplier_invariant(&self, m: usize) -> bool {
        let basis = self.basis();
        basis.iter().all(|&b| reduce(&basis, self.multiply(b, m)) == 0)
    }

    /// The product of `(x_i y_i)` over the support of `w`.
    pub fn involution(&self, w: u64) -> Perm {
        let p = self.p;
        let mut images: Vec<usize> = (0..2 * p).collect();
        for i in (0..p).filter(|i| w >> i & 1 == 1) {
            images[i] = p + i;
            images[p + i] = i;
        }
        Perm::from_images(images).expect("product of disjoint transpositions")
    }
}

fn word_string(w: u64, p: usize) -> String {
    (0..p).map(|i| if w >> i & 1 == 1 { '1' } else { '0' }).collect()
}

fn reduce(rows: &[u64], mut w: u64) -> u64 {
    for &r in rows {
        let lead = 63 - r.leading_zeros();
        if w >> lead & 1 == 1 {
            w ^= r;
        }
    }
    w
}

fn insert_reduced(rows: &mut Vec<u64>, w: u64) {
    let mut w = w;
    // keep rows with distinct leading bits, each reduced against the others
    rows.sort_unstable_by(|a, b| b.cmp(a));
    w = reduce(rows, w);
    if w == 0 {
        return;
    }
    let lead = 63 - w.leading_zeros();
    for r in rows.iter_mut() {
        if *r >> lead & 1 == 1 {
            *r ^= w;
        }
    }
    rows.push(w);
    rows.sort_unstable_by(|a, b| b.cmp(a));
}

/// `(x_0 ... x_{p-1})(y_0 ... y_{p-1})`.
fn simultaneous_cycle(p: usize) -> Perm {
    let images: Vec<usize> = (0..2 * p)
        .map(|v| if v < p { (v + 1) % p } else { p + (v - p + 1) % p })
        .collect();
    Perm::from_images(images).expect("double cycle")
}

/// `x_i -> x_{m i}`, `y_i -> y_{m i}`.
fn multiplier_perm(p: usize, m: usize) -> Perm {
    let images: Vec<usize> = (0..2 * p)
        .map(|v| if v < p { v * m % p } else { p + (v - p) * m % p })
        .collect();
    Perm::from_images(images).expect("multiplier permutes Z_p")
}

fn multiplicative_order(m: usize, p: usize) -> usize {
    let mut x = m % p;
    let mut k = 1;
    while x != 1 {
        x = x * m % p;
        k += 1;
    }
    k
}

/// The smallest `m > 1` of multiplicative order `d` modulo `p`; `1` for `d = 1`.
pub fn multiplier_of_order(p: usize, d: usize) -> Option<usize> {
    if d == 1 {
        return Some(1);
    }
    (2..p).find(|&m| multiplicative_order(m, p) == d)
}

/// `K ⋊ <(x_0 ... x_{p-1})(y_0 ... y_{p-1})>` with `K` given by the code.
pub fn thm16i_group(spec: &CodeSpec) -> Result<PermGroup> {
    frobenius_lift(spec.p, 1, spec)
        .map(|g| g.with_name(format!("thm16i(p={}, seeds={})", spec.p, spec.seeds().join(","))))
}

/// `K ⋊ (Z_p ⋊ Z_d)` on `2p` points: the `Z_d` generator multiplies block
/// indices by an element of order `d` mod `p`, fixing `x_0` and `y_0`.
pub fn frobenius_lift(p: usize, d: usize, spec: &CodeSpec) -> Result<PermGroup> {
    if spec.p != p {
        return Err(Error::InvalidArgument(format!(
            "code length {} does not match p = {p}",
            spec.p
        )));
    }
    if d == 0 || !(p - 1).is_multiple_of(d) {
        return Err(Error::InvalidArgument(format!("d = {d} does not divide p - 1")));
    }
    let basis = spec.basis();
    if basis.is_empty() {
        return Err(Error::KernelTrivial);
    }
    let m = multiplier_of_order(p, d).expect("Z_p^* is cyclic");
    if !spec.is_multiplier_invariant(m) {
        return Err(Error::SeedNotMultiplierInvariant);
    }
    let mut gens = vec![simultaneous_cycle(p)];
    if d > 1 {
        gens.push(multiplier_perm(p, m));
    }
    gens.extend(basis.iter().map(|&w| spec.involution(w)));
    let g = PermGroup::generate(2 * p, &gens, DEFAULT_ORDER_CAP)?;
    Ok(g.with_name(format!(
        "frobenius-lift(p={p}, d={d}, seeds={})",
        spec.seeds().join(",")
    )))
}

/// Unordered pairs `{a, b}`, `a < b`, in lexicographic order.
pub fn two_subsets(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect()
}

/// The induced action on 2-subsets, numbered lexicographically.
pub fn action_on_2subsets(group: &PermGroup) -> Result<PermGroup> {
    let n = group.degree();
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "action on 2-subsets needs degree at least 3, got {n}"
        )));
    }
    let pairs = two_subsets(n);
    let index_of = |a: usize, b: usize| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        pairs.binary_search(&(a, b)).expect("pair listed")
    };
    let gens: Vec<Perm> = group
        .generators()
        .iter()
        .map(|g| {
            let images = pairs
                .iter()
                .map(|&(a, b)| index_of(g.apply(a), g.apply(b)))
                .collect();
            Perm::from_images(images).expect("induced map is a bijection")
        })
        .collect();
    let induced = PermGroup::generate(pairs.len(), &gens, group.order().max(1) + 1)?;
    if induced.order() != group.order() {
        return Err(Error::ActionNotFaithful);
    }
    Ok(match group.name() {
        Some(name) => induced.with_name(format!("{name} on 2-subsets")),
        None => induced,
    })
}

/// The Sylow p-subgroup of `Sym(p^k)`: the k-fold iterated wreath product
/// of `Z_p`, built from the generators of level `k-1` on the first block and
/// a cycle permuting the `p` blocks.
pub fn iterated_wreath_sylow(p: usize, k: u32) -> Result<PermGroup> {
    if !is_prime(p) || k == 0 {
        return Err(Error::InvalidArgument(format!(
            "need a prime p and k >= 1, got p = {p}, k = {k}"
        )));
    }
    let degree = p
        .checked_pow(k)
        .ok_or_else(|| Error::InvalidArgument("degree overflow".into()))?;
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut block = 1usize;
    for _ in 0..k {
        let size = block * p;
        gens = gens
            .into_iter()
            .map(|g| {
                let mut g = g;
                g.extend(block..size);
                g
            })
            .collect();
        gens.push((0..size).map(|v| (v + block) % size).collect());
        block = size;
    }
    let perms = gens
        .into_iter()
        .map(|g| {
            let mut g = g;
            g.extend(g.len()..degree);
            Perm::from_images(g)
        })
        .collect::<Result<Vec<_>>>()?;
    let g = PermGroup::generate(degree, &perms, DEFAULT_ORDER_CAP)?;
    Ok(g.with_name(format!("wreath-sylow(p={p}, k={k})")))
}

pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclic group needs n >= 1".into()));
    }
    let c = Perm::from_images((0..n).map(|v| (v + 1) % n).collect())?;
    Ok(PermGroup::generate(n, &[c], n + 1)?.with_name(format!("C{n}")))
}

/// Rotation and the reflection `v -> -v`.
pub fn dihedral(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Err(Error::InvalidArgument("dihedral group needs n >= 3".into()));
    }
    let r = Perm::from_images((0..n).map(|v| (v + 1) % n).collect())?;
    let s = Perm::from_images((0..n).map(|v| (n - v) % n).collect())?;
    Ok(PermGroup::generate(n, &[r, s], 2 * n + 1)?.with_name(format!("D{n}")))
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Perm::from_cycles(n, &[&[0, 1]])?);
    }
    if n >= 3 {
        let cycle: Vec<usize> = (0..n).collect();
        gens.push(Perm::from_cycles(n, &[&cycle])?);
    }
    Ok(PermGroup::generate(n.max(1), &gens, DEFAULT_ORDER_CAP)?.with_name(format!("S{n}")))
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(Perm::from_cycles(n, &[&[0, 1, 2]])?);
    }
    if n >= 4 {
        let cycle: Vec<usize> = if n % 2 == 1 { (0..n).collect() } else { (1..n).collect() };
        gens.push(Perm::from_cycles(n, &[&cycle])?);
    }
    Ok(PermGroup::generate(n.max(1), &gens, DEFAULT_ORDER_CAP)?.with_name(format!("A{n}")))
}

/// `{id, (1 2)(3 4), (1 3)(2 4), (1 4)(2 3)}` on four points.
pub fn klein_four() -> PermGroup {
    let a = Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).expect("valid");
    let b = Perm::from_cycles(4, &[&[0, 2], &[1, 3]]).expect("valid");
    PermGroup::generate(4, &[a, b], 5)
        .expect("order 4")
        .with_name("V4")
}

pub fn a4_pairs() -> PermGroup {
    action_on_2subsets(&alternating(4).expect("A4")).expect("faithful")
}

pub fn s4_pairs() -> PermGroup {
    action_on_2subsets(&symmetric(4).expect("S4")).expect("faithful")
}

pub fn a5_pairs() -> PermGroup {
    action_on_2subsets(&alternating(5).expect("A5")).expect("faithful")
}

pub fn s5_pairs() -> PermGroup {
    action_on_2subsets(&symmetric(5).expect("S5")).expect("faithful")
}

/// Builds a named construction from string arguments; names match the
/// `construct` subcommand.
pub fn by_name(name: &str, args: &[String]) -> Result<PermGroup> {
    let num = |i: usize| -> Result<usize> {
        args.get(i)
            .ok_or_else(|| Error::InvalidArgument(format!("{name}: missing argument {}", i + 1)))?
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{name}: argument {} is not a number", i + 1)))
    };
    let seeds = |from: usize| -> Vec<&str> { args[from.min(args.len())..].iter().map(String::as_str).collect() };
    let expect_args = |n: usize| -> Result<()> {
        if args.len() != n {
            return Err(Error::InvalidArgument(format!("{name} takes {n} argument(s)")));
        }
        Ok(())
    };
    match name {
        "cyclic" => {
            expect_args(1)?;
            cyclic(num(0)?)
        }
        "dihedral" => {
            expect_args(1)?;
            dihedral(num(0)?)
        }
        "symmetric" => {
            expect_args(1)?;
            symmetric(num(0)?)
        }
        "alternating" => {
            expect_args(1)?;
            alternating(num(0)?)
        }
        "a4-pairs" => expect_args(0).map(|_| a4_pairs()),
        "s4-pairs" => expect_args(0).map(|_| s4_pairs()),
        "a5-pairs" => expect_args(0).map(|_| a5_pairs()),
        "s5-pairs" => expect_args(0).map(|_| s5_pairs()),
        "thm16i" => {
            let p = num(0)?;
            let spec = if args.len() == 1 {
                CodeSpec::full_even_weight(p)?
            } else {
                CodeSpec::new(p, &seeds(1))?
            };
            thm16i_group(&spec)
        }
        "frobenius-lift" => {
            let (p, d) = (num(0)?, num(1)?);
            let spec = if args.len() == 2 {
                CodeSpec::full_even_weight(p)?
            } else {
                CodeSpec::new(p, &seeds(2))?
            };
            frobenius_lift(p, d, &spec)
        }
        "wreath-sylow" => {
            expect_args(2)?;
            iterated_wreath_sylow(num(0)?, num(1)? as u32)
        }
        other => Err(Error::InvalidArgument(format!("unknown construction {other:?}"))),
    }
}

pub const CONSTRUCTION_NAMES: &[&str] = &[
    "cyclic",
    "dihedral",
    "symmetric",
    "alternating",
    "a5-pairs",
    "s5-pairs",
    "s4-pairs",
    "a4-pairs",
    "thm16i",
    "frobenius-lift",
    "wreath-sylow",
];
