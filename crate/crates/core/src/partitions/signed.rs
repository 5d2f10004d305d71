//! Signed-partition classes read off the sum sides of the modulus 36 and
//! modulus 18 identities.
//!
//! Every class is a union over a parameter `j >= 0`: `j` fixes the shape of
//! the positive part and the pool the negative parts are drawn from. The
//! enumerators build members shape by shape; [`is_member`] recognizes them
//! straight from the defining conditions, so the two can check each other.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{LabError, Partition, SignedPartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SignedClass {
    Ram36,
    Sl124,
    Sl125,
    New36,
    M18_1,
    M18_2,
    M18_3,
    M18_4,
}

/// `Proof` is the class the generating-function argument produces. `AsStated`
/// reproduces the weaker wording of the theorem text for the three modulus 18
/// classes where the two differ; for the others both variants agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    #[default]
    Proof,
    AsStated,
}

impl SignedClass {
    pub const ALL: [SignedClass; 8] = [
        SignedClass::Ram36,
        SignedClass::Sl124,
        SignedClass::Sl125,
        SignedClass::New36,
        SignedClass::M18_1,
        SignedClass::M18_2,
        SignedClass::M18_3,
        SignedClass::M18_4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SignedClass::Ram36 => "ram36-signed",
            SignedClass::Sl124 => "sl124-signed",
            SignedClass::Sl125 => "sl125-signed",
            SignedClass::New36 => "new36-signed",
            SignedClass::M18_1 => "m18-1-signed",
            SignedClass::M18_2 => "m18-2-signed",
            SignedClass::M18_3 => "m18-3-signed",
            SignedClass::M18_4 => "m18-4-signed",
        }
    }

    /// The built-in identity whose sum side generates the class.
    pub fn identity(self) -> &'static str {
        match self {
            SignedClass::Ram36 => "ram36",
            SignedClass::Sl124 => "slater124",
            SignedClass::Sl125 => "slater125",
            SignedClass::New36 => "new36",
            SignedClass::M18_1 => "m18-1",
            SignedClass::M18_2 => "m18-2",
            SignedClass::M18_3 => "m18-3",
            SignedClass::M18_4 => "m18-4",
        }
    }

    /// Members of weight `n + shift` correspond to the coefficient of `q^n`.
    pub fn shift(self) -> u32 {
        match self {
            SignedClass::Ram36 | SignedClass::Sl124 | SignedClass::M18_1 | SignedClass::M18_2 => 0,
            SignedClass::Sl125 | SignedClass::New36 | SignedClass::M18_3 => 1,
            SignedClass::M18_4 => 2,
        }
    }

    /// Whether [`Variant::AsStated`] differs from [`Variant::Proof`].
    pub fn has_as_stated(self) -> bool {
        matches!(self, SignedClass::M18_1 | SignedClass::M18_2 | SignedClass::M18_3)
    }

    /// Smallest weight of a member with parameter `j`. Non-decreasing in `j`.
    pub fn min_weight(self, variant: Variant, j: u32) -> i64 {
        let (pos, neg) = shapes(self, variant, j);
        pos.min_weight() as i64 - neg.max_weight() as i64
    }
}

impl fmt::Display for SignedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SignedClass {
    type Err = LabError;

    fn from_str(s: &str) -> Result<SignedClass, LabError> {
        SignedClass::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| LabError::UnknownClass(s.to_string()))
    }
}

/// Allowed positive parts for one value of `j`.
#[derive(Debug, Clone, Copy)]
enum PosShape {
    /// Exactly `count` parts, each `min + 2k`; a part equal to zero is dropped.
    Exact { count: u32, min: u32 },
    /// `evens` even parts each at least `evens`, plus the odd part `evens + 1`
    /// at least once.
    EvensAndOdd { evens: u32 },
    /// Parts `1..=paired` occur an even, positive number of times; parts
    /// `from..=to` occur at least once; nothing else.
    Staircase { paired: u32, from: u32, to: u32 },
}

/// Pool of negative parts for one value of `j`.
#[derive(Debug, Clone, Copy)]
enum NegShape {
    /// Odd parts below `bound`, each at most twice.
    OddBelow { bound: u32 },
    /// Exactly `count` parts: distinct values `3k + pad` with `1 <= k <= kmax`,
    /// padded with copies of `pad`.
    Mod3 { pad: u32, kmax: u32, count: u32 },
}

fn shapes(class: SignedClass, variant: Variant, j: u32) -> (PosShape, NegShape) {
    use SignedClass::*;
    let stated = variant == Variant::AsStated;
    match class {
        Ram36 => (PosShape::Exact { count: 2 * j, min: 2 * j }, NegShape::OddBelow { bound: 2 * j }),
        Sl124 => (PosShape::Exact { count: 2 * j + 1, min: 2 * j }, NegShape::OddBelow { bound: 2 * j + 1 }),
        Sl125 => (PosShape::Exact { count: 2 * j + 1, min: 2 * j + 1 }, NegShape::OddBelow { bound: 2 * j + 1 }),
        New36 => (PosShape::EvensAndOdd { evens: 2 * j }, NegShape::OddBelow { bound: 2 * j + 1 }),
        M18_1 | M18_2 if j == 0 => (PosShape::Exact { count: 0, min: 0 }, NegShape::OddBelow { bound: 0 }),
        M18_1 | M18_2 => (
            PosShape::Staircase { paired: j - 1, from: j, to: 2 * j },
            NegShape::Mod3 {
                pad: if class == M18_1 { 1 } else { 2 },
                kmax: j - 1,
                count: if stated { j - 1 } else { j },
            },
        ),
        M18_3 => (
            PosShape::Staircase { paired: j, from: j + 1, to: 2 * j + 1 },
            NegShape::Mod3 { pad: 1, kmax: if stated { j.saturating_sub(1) } else { j }, count: j },
        ),
        M18_4 => (
            PosShape::Staircase { paired: j, from: j + 2, to: 2 * j + 2 },
            NegShape::Mod3 { pad: 1, kmax: j, count: j },
        ),
    }
}

impl PosShape {
    fn min_weight(self) -> u64 {
        match self {
            PosShape::Exact { count, min } => count as u64 * min as u64,
            PosShape::EvensAndOdd { evens } => evens as u64 * evens as u64 + evens as u64 + 1,
            PosShape::Staircase { paired, from, to } => {
                let p = paired as u64;
                p * (p + 1) + (from as u64..=to as u64).sum::<u64>()
            }
        }
    }

    /// Calls `visit` with every positive part of weight `weight`.
    fn for_each(self, weight: u64, visit: &mut dyn FnMut(Vec<u32>)) {
        match self {
            PosShape::Exact { count, min } => {
                let base = count as u64 * min as u64;
                if weight < base || (weight - base) % 2 == 1 {
                    return;
                }
                let extra = ((weight - base) / 2) as u32;
                for_each_at_most(extra, count, &mut |ks| {
                    let mut parts: Vec<u32> = (0..count as usize)
                        .map(|i| min + 2 * ks.get(i).copied().unwrap_or(0))
                        .filter(|&p| p > 0)
                        .collect();
                    parts.sort_unstable_by(|a, b| b.cmp(a));
                    visit(parts);
                });
            }
            PosShape::EvensAndOdd { evens } => {
                let odd = evens as u64 + 1;
                let evens_base = evens as u64 * evens as u64;
                let mut reps = 1;
                while reps * odd + evens_base <= weight {
                    let rest = weight - reps * odd - evens_base;
                    if rest.is_multiple_of(2) {
                        for_each_at_most((rest / 2) as u32, evens, &mut |ks| {
                            let mut parts: Vec<u32> =
                                (0..evens as usize).map(|i| evens + 2 * ks.get(i).copied().unwrap_or(0)).collect();
                            parts.extend(std::iter::repeat_n(odd as u32, reps as usize));
                            parts.sort_unstable_by(|a, b| b.cmp(a));
                            visit(parts);
                        });
                    }
                    reps += 1;
                }
            }
            PosShape::Staircase { paired, from, to } => {
                let base = self.min_weight();
                if weight < base {
                    return;
                }
                // (value, minimum multiplicity, multiplicity step)
                let mut slots: Vec<(u32, u32, u32)> = (1..=paired).map(|v| (v, 2, 2)).collect();
                slots.extend((from..=to).map(|v| (v, 1, 1)));
                let mut mult = vec![0u32; slots.len()];
                distribute(&slots, 0, weight - base, &mut mult, &mut |mult| {
                    let mut parts = Vec::new();
                    for (&(v, m0, _), &extra) in slots.iter().zip(mult) {
                        parts.extend(std::iter::repeat_n(v, (m0 + extra) as usize));
                    }
                    parts.sort_unstable_by(|a, b| b.cmp(a));
                    visit(parts);
                });
            }
        }
    }
}

/// Extra multiplicities for `slots[i..]` adding exactly `rest` to the weight.
fn distribute(slots: &[(u32, u32, u32)], i: usize, rest: u64, mult: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
    if i == slots.len() {
        if rest == 0 {
            visit(mult);
        }
        return;
    }
    let (v, _, step) = slots[i];
    let unit = v as u64 * step as u64;
    let mut k = 0u64;
    while k * unit <= rest {
        mult[i] = (k * step as u64) as u32;
        distribute(slots, i + 1, rest - k * unit, mult, visit);
        k += 1;
    }
    mult[i] = 0;
}

/// Partitions of `n` into at most `max_len` parts, as weakly decreasing
/// slices.
fn for_each_at_most(n: u32, max_len: u32, visit: &mut dyn FnMut(&[u32])) {
    fn go(rest: u32, max_part: u32, slots: u32, acc: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        if rest == 0 {
            visit(acc);
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=max_part.min(rest)).rev() {
            // the remaining slots can hold at most slots * p
            if (p as u64) * (slots as u64) < rest as u64 {
                break;
            }
            acc.push(p);
            go(rest - p, p, slots - 1, acc, visit);
            acc.pop();
        }
    }
    go(n, n, max_len, &mut Vec::new(), visit);
}

impl NegShape {
    fn max_weight(self) -> u64 {
        match self {
            NegShape::OddBelow { bound } => {
                let k = (bound / 2) as u64;
                2 * k * k
            }
            NegShape::Mod3 { pad, kmax, count } => {
                let used = kmax.min(count);
                let top: u64 = ((kmax - used + 1)..=kmax).map(|k| 3 * k as u64 + pad as u64).sum();
                top + (count - used) as u64 * pad as u64
            }
        }
    }

    fn all(self) -> Vec<Vec<u32>> {
        match self {
            NegShape::OddBelow { bound } => {
                let odds: Vec<u32> = (1..bound).step_by(2).collect();
                let mut out = vec![Vec::new()];
                for &o in &odds {
                    out = out
                        .into_iter()
                        .flat_map(|v: Vec<u32>| {
                            (0..=2).map(move |m| {
                                let mut w = v.clone();
                                w.extend(std::iter::repeat_n(o, m));
                                w
                            })
                        })
                        .collect();
                }
                out
            }
            NegShape::Mod3 { pad, kmax, count } => {
                let mut out = Vec::new();
                for mask in 0u64..(1u64 << kmax) {
                    let chosen: Vec<u32> =
                        (1..=kmax).filter(|k| mask >> (k - 1) & 1 == 1).map(|k| 3 * k + pad).collect();
                    if chosen.len() as u32 > count {
                        continue;
                    }
                    let mut v = chosen;
                    v.extend(std::iter::repeat_n(pad, count as usize - v.len()));
                    out.push(v);
                }
                out
            }
        }
    }
}

fn partition(mut parts: Vec<u32>) -> Partition {
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(parts).expect("shapes only produce positive parts")
}

fn for_each_member(class: SignedClass, variant: Variant, weight: u32, visit: &mut dyn FnMut(&[u32], &[u32])) {
    let w = weight as i64;
    for j in 0.. {
        if class.min_weight(variant, j) > w {
            break;
        }
        let (pos, neg) = shapes(class, variant, j);
        for nu in neg.all() {
            let target = w + nu.iter().map(|&p| p as i64).sum::<i64>();
            pos.for_each(target as u64, &mut |pi| visit(&pi, &nu));
        }
    }
}

/// All members of weight `weight`, sorted.
pub fn enumerate_signed(class: SignedClass, variant: Variant, weight: u32) -> Vec<SignedPartition> {
    let mut out = Vec::new();
    for_each_member(class, variant, weight, &mut |pi, nu| {
        out.push(SignedPartition::new(partition(pi.to_vec()), partition(nu.to_vec())));
    });
    out.sort();
    out
}

/// Number of members of weight `weight`.
pub fn count_signed(class: SignedClass, variant: Variant, weight: u32) -> u64 {
    let mut count = 0;
    for_each_member(class, variant, weight, &mut |_, _| count += 1);
    count
}

/// Membership straight from the defining conditions.
pub fn is_member(class: SignedClass, variant: Variant, sp: &SignedPartition) -> bool {
    match positive_parameter(class, &sp.positive) {
        Some(j) => negative_fits(class, variant, j, &sp.negative),
        None => false,
    }
}

/// The parameter `j` of a valid positive part, or `None`.
pub fn positive_parameter(class: SignedClass, pi: &Partition) -> Option<u32> {
    use SignedClass::*;
    let parts = pi.parts();
    let len = parts.len() as u32;
    let all = |f: &dyn Fn(u32) -> bool| parts.iter().all(|&p| f(p));
    match class {
        Ram36 => (len.is_multiple_of(2) && all(&|p| p % 2 == 0 && p >= len)).then_some(len / 2),
        Sl124 if pi.is_empty() => Some(0),
        Sl124 => (len % 2 == 1 && all(&|p| p % 2 == 0 && p + 1 >= len)).then_some(len / 2),
        Sl125 => (len % 2 == 1 && all(&|p| p % 2 == 1 && p >= len)).then_some(len / 2),
        New36 => {
            let odd = *parts.iter().find(|&&p| p % 2 == 1)?;
            let evens = parts.iter().filter(|&&p| p % 2 == 0).count() as u32;
            let ok = all(&|p| if p % 2 == 1 { p == odd } else { p + 1 >= odd }) && evens + 1 == odd;
            ok.then_some(odd / 2)
        }
        M18_1 | M18_2 if pi.is_empty() => Some(0),
        M18_1 | M18_2 => {
            let top = parts[0];
            if top % 2 == 1 {
                return None;
            }
            let h = top / 2;
            staircase(pi, h - 1, h, top).then_some(h)
        }
        M18_3 => {
            let top = pi.largest()?;
            if top % 2 == 0 {
                return None;
            }
            let j = top / 2;
            staircase(pi, j, j + 1, top).then_some(j)
        }
        M18_4 => {
            let top = pi.largest()?;
            if top % 2 == 1 {
                return None;
            }
            let j = top / 2 - 1;
            (pi.multiplicity(j + 1) == 0 && staircase(pi, j, j + 2, top)).then_some(j)
        }
    }
}

/// Parts `1..=paired` even and positive multiplicity, `from..=to` positive
/// multiplicity, and no other parts.
fn staircase(pi: &Partition, paired: u32, from: u32, to: u32) -> bool {
    let mult = pi.multiplicities();
    let paired_ok = (1..=paired).all(|v| mult.get(&v).is_some_and(|&m| m >= 2 && m % 2 == 0));
    let range_ok = (from..=to).all(|v| mult.contains_key(&v));
    let nothing_else = mult.keys().all(|&v| v <= paired || (from..=to).contains(&v));
    paired_ok && range_ok && nothing_else
}

/// Whether `nu` is an admissible negative part for parameter `j`.
pub fn negative_fits(class: SignedClass, variant: Variant, j: u32, nu: &Partition) -> bool {
    use SignedClass::*;
    let stated = variant == Variant::AsStated;
    let odd_below = |bound: u32| {
        nu.parts().iter().all(|&p| p % 2 == 1 && p < bound) && nu.multiplicities().values().all(|&m| m <= 2)
    };
    // exactly `count` parts, all `pad mod 3` and at most `max`, values above
    // `pad` distinct
    let mod3 = |pad: u32, max: i64, count: u32| {
        nu.len() as u32 == count
            && nu.parts().iter().all(|&p| p % 3 == pad && p as i64 <= max)
            && nu.multiplicities().iter().all(|(&v, &m)| v == pad || m == 1)
    };
    let j64 = j as i64;
    match class {
        Ram36 => odd_below(2 * j),
        Sl124 | Sl125 | New36 => odd_below(2 * j + 1),
        M18_1 | M18_2 if j == 0 => nu.is_empty(),
        M18_1 => mod3(1, 3 * j64 - 2, if stated { j - 1 } else { j }),
        M18_2 => mod3(2, 3 * j64 - 1, if stated { j - 1 } else { j }),
        M18_3 => mod3(1, if stated { 3 * j64 - 1 } else { 3 * j64 + 1 }, j),
        M18_4 => mod3(1, 3 * j64 + 1, j),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::for_each_partition;

    fn sp(pos: &[u32], neg: &[u32]) -> SignedPartition {
        SignedPartition::new(Partition::new(pos.to_vec()).unwrap(), Partition::new(neg.to_vec()).unwrap())
    }

    #[test]
    fn ram36_spot_values() {
        assert_eq!(count_signed(SignedClass::Ram36, Variant::Proof, 2), 1);
        assert_eq!(count_signed(SignedClass::Ram36, Variant::Proof, 6), 3);
        assert_eq!(enumerate_signed(SignedClass::Ram36, Variant::Proof, 2), vec![sp(&[2, 2], &[1, 1])]);
    }

    type WeightCase = (SignedClass, fn(i64) -> i64);

    #[test]
    fn min_weights() {
        let cases: [WeightCase; 8] = [
            (SignedClass::Ram36, |j| 2 * j * j),
            (SignedClass::Sl124, |j| 2 * j * j + 2 * j),
            (SignedClass::Sl125, |j| 2 * j * j + 4 * j + 1),
            (SignedClass::New36, |j| 2 * j * j + 2 * j + 1),
            (SignedClass::M18_1, |j| j * j + j),
            (SignedClass::M18_2, |j| j * j),
            (SignedClass::M18_3, |j| j * j + j + 1),
            (SignedClass::M18_4, |j| j * j + 2 * j + 2),
        ];
        for (class, f) in cases {
            for j in 0..30 {
                assert_eq!(class.min_weight(Variant::Proof, j), f(j as i64), "{class} j={j}");
            }
        }
    }

    #[test]
    fn min_weight_is_monotone() {
        for class in SignedClass::ALL {
            for variant in [Variant::Proof, Variant::AsStated] {
                for j in 0..60 {
                    assert!(class.min_weight(variant, j) <= class.min_weight(variant, j + 1), "{class} {j}");
                }
            }
        }
    }

    #[test]
    fn enumerated_members_are_members() {
        for class in SignedClass::ALL {
            for variant in [Variant::Proof, Variant::AsStated] {
                for w in 0..=16 {
                    let members = enumerate_signed(class, variant, w);
                    let mut dedup = members.clone();
                    dedup.dedup();
                    assert_eq!(dedup.len(), members.len(), "{class} duplicates at {w}");
                    for m in &members {
                        assert_eq!(m.weight(), w as i64);
                        assert!(is_member(class, variant, m), "{class} {variant:?} {m}");
                    }
                    assert_eq!(count_signed(class, variant, w), members.len() as u64);
                }
            }
        }
    }

    /// Counts members of weight `w` among all pairs with `|nu| <= cap`,
    /// without using the shape enumerators.
    fn unbounded_count(class: SignedClass, variant: Variant, w: u32, cap: u32) -> u64 {
        let mut total = 0;
        for v in 0..=cap {
            let mut nus = Vec::new();
            for_each_partition(v, v, &mut |p| nus.push(Partition::new(p.to_vec()).unwrap()));
            for_each_partition(w + v, w + v, &mut |p| {
                let pi = Partition::new(p.to_vec()).unwrap();
                if let Some(j) = positive_parameter(class, &pi) {
                    total += nus.iter().filter(|nu| negative_fits(class, variant, j, nu)).count() as u64;
                }
            });
        }
        total
    }

    #[test]
    fn enumeration_bound_loses_nothing() {
        // the largest negative weight any member of weight <= 10 can carry is
        // well below 18
        for class in SignedClass::ALL {
            for w in 0..=10 {
                assert_eq!(
                    count_signed(class, Variant::Proof, w),
                    unbounded_count(class, Variant::Proof, w, 18),
                    "{class} at {w}"
                );
            }
        }
    }

    #[test]
    fn membership_examples() {
        let p = Variant::Proof;
        assert!(is_member(SignedClass::Ram36, p, &sp(&[], &[])));
        assert!(!is_member(SignedClass::Ram36, p, &sp(&[2, 2], &[3])));
        assert!(is_member(SignedClass::Sl124, p, &sp(&[4], &[])));
        assert!(!is_member(SignedClass::Sl124, p, &sp(&[4], &[1])));
        assert!(is_member(SignedClass::Sl125, p, &sp(&[3, 3, 3], &[1, 1])));
        assert!(is_member(SignedClass::New36, p, &sp(&[2, 2, 3], &[1, 1])));
        assert!(!is_member(SignedClass::New36, p, &sp(&[2, 3], &[])));
        // 2j = 4: parts 1 twice, then 2, 3, 4; negatives {1, 4}
        assert!(is_member(SignedClass::M18_1, p, &sp(&[4, 3, 2, 1, 1], &[4, 1])));
        assert!(!is_member(SignedClass::M18_1, Variant::AsStated, &sp(&[4, 3, 2, 1, 1], &[4, 1])));
        assert!(is_member(SignedClass::M18_3, p, &sp(&[3, 2, 1, 1], &[4])));
        assert!(!is_member(SignedClass::M18_3, Variant::AsStated, &sp(&[3, 2, 1, 1], &[4])));
        assert!(is_member(SignedClass::M18_4, p, &sp(&[4, 3, 1, 1], &[4])));
        assert!(!is_member(SignedClass::M18_4, p, &sp(&[4, 3, 2, 1, 1], &[4])));
    }

    #[test]
    fn class_names_parse() {
        for c in SignedClass::ALL {
            assert_eq!(c.name().parse::<SignedClass>().unwrap(), c);
        }
        assert!("ram37-signed".parse::<SignedClass>().is_err());
    }
}
