//! Direct counts of restricted ordinary partitions.

use std::collections::BTreeSet;

use super::{for_each_partition, LabError};

/// Partitions of `n` into parts congruent to one of `residues` modulo `m`.
/// Residues are taken in `1..=m`.
pub fn count_residues(n: u32, m: u32, residues: &[u32]) -> Result<u128, LabError> {
    if m == 0 || residues.is_empty() || residues.iter().any(|&r| r == 0 || r > m) {
        return Err(LabError::InvalidParameters(format!("residues {residues:?} modulo {m}")));
    }
    let set: BTreeSet<u32> = residues.iter().copied().collect();
    let n = n as usize;
    let mut ways = vec![0u128; n + 1];
    ways[0] = 1;
    for part in 1..=n {
        let r = (part as u32 - 1) % m + 1;
        if !set.contains(&r) {
            continue;
        }
        for total in part..=n {
            ways[total] += ways[total - part];
        }
    }
    Ok(ways[n])
}

/// Partitions of `n` whose parts differ pairwise by at least 2 and are all
/// at least `min_part`.
pub fn count_gap2(n: u32, min_part: u32) -> Result<u64, LabError> {
    if min_part == 0 {
        return Err(LabError::InvalidParameters("minimum part must be positive".into()));
    }
    fn go(rest: u32, max_part: u32, min_part: u32) -> u64 {
        if rest == 0 {
            return 1;
        }
        let mut total = 0;
        for p in (min_part..=max_part.min(rest)).rev() {
            total += go(rest - p, p.saturating_sub(2), min_part);
        }
        total
    }
    Ok(go(n, n, min_part))
}

/// Exactly `l` parts; even parts are `2 mod 4` and occur at most twice.
pub fn count_s(l: u32, n: u32) -> u64 {
    count_length_restricted(l, n, 2)
}

/// Exactly `l` parts; even parts are `0 mod 4` and occur at most twice.
pub fn count_t(l: u32, n: u32) -> u64 {
    count_length_restricted(l, n, 0)
}

fn count_length_restricted(l: u32, n: u32, even_residue: u32) -> u64 {
    let mut count = 0;
    for_each_partition(n, n, &mut |parts| {
        if parts.len() != l as usize {
            return;
        }
        let ok = parts.iter().enumerate().all(|(i, &p)| {
            if p % 2 == 1 {
                return true;
            }
            // parts are sorted, so a third copy sits two places later
            p % 4 == even_residue && parts.get(i + 2) != Some(&p)
        });
        if ok {
            count += 1;
        }
    });
    count
}

/// Partitions of `n` into parts `1, 2, 4, 5, 7, 8 (mod 9)` in which no block
/// `{9k+1, 9k+2}` nor `{9k+7, 9k+8}` contributes both of its members.
pub fn count_andrews_lewis_9(n: u32) -> u64 {
    let mut count = 0;
    for_each_partition(n, n, &mut |parts| {
        let allowed = parts.iter().all(|p| matches!(p % 9, 1 | 2 | 4 | 5 | 7 | 8));
        if !allowed {
            return;
        }
        let has = |x: u32| parts.contains(&x);
        let clash = parts.iter().any(|&p| match p % 9 {
            1 => has(p + 1),
            7 => has(p + 1),
            _ => false,
        });
        if !clash {
            count += 1;
        }
    });
    count
}
