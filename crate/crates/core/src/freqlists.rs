//! Character frequency lists, the `d_N` list distance, aggregation into a
//! universal list and frequency-weighted coverage.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyList<T> {
    entries: Vec<(char, T)>,
    /// Length in characters of the text the list was counted from.
    pub source_size: u64,
}

impl<T: Scalar> FrequencyList<T> {
    /// Relative frequencies from raw counts. Ties are ordered by codepoint.
    pub fn from_counts(counts: &BTreeMap<char, u64>) -> Result<Self> {
        let total: u64 = counts.values().sum();
        if counts.is_empty() || total == 0 {
            return Err(Error::Empty("frequency counts"));
        }
        if counts.values().any(|&n| n == 0) {
            return Err(Error::InvalidParameter("frequency counts must be positive".into()));
        }
        let mut ordered: Vec<(char, u64)> = counts.iter().map(|(&c, &n)| (c, n)).collect();
        ordered.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let denom = T::from_u64(total).unwrap();
        let entries = ordered.into_iter().map(|(c, n)| (c, T::from_u64(n).unwrap() / denom)).collect();
        Ok(FrequencyList { entries, source_size: total })
    }

    /// Builds a list from frequencies, sorting by nonincreasing frequency
    /// (ties by codepoint). Rejects duplicates and nonpositive values.
    pub fn from_frequencies(mut entries: Vec<(char, T)>, source_size: u64) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(c, f) in &entries {
            if !(f > T::zero()) || !f.is_finite() {
                return Err(Error::InvalidParameter(format!("frequency of U+{:04X} must be positive", u32::from(c))));
            }
            if !seen.insert(c) {
                return Err(Error::InvalidParameter(format!("U+{:04X} listed twice", u32::from(c))));
            }
        }
        sort_entries(&mut entries);
        Ok(FrequencyList { entries, source_size })
    }

    pub fn entries(&self) -> &[(char, T)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn chars(&self) -> BTreeSet<char> {
        self.entries.iter().map(|e| e.0).collect()
    }

    /// Characters of the first `n` entries.
    pub fn top(&self, n: usize) -> BTreeSet<char> {
        self.entries.iter().take(n).map(|e| e.0).collect()
    }

    pub fn frequency_map(&self) -> HashMap<char, T> {
        self.entries.iter().copied().collect()
    }

    pub fn total(&self) -> T {
        self.entries.iter().map(|e| e.1).sum()
    }

    /// Keeps only characters accepted by `keep`, preserving order.
    pub fn filtered(&self, keep: impl Fn(char) -> bool) -> Self {
        FrequencyList {
            entries: self.entries.iter().copied().filter(|e| keep(e.0)).collect(),
            source_size: self.source_size,
        }
    }
}

fn sort_entries<T: Scalar>(entries: &mut [(char, T)]) {
    entries.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal).then(a.0.cmp(&b.0)));
}

pub fn comchar<T: Scalar>(a: &FrequencyList<T>, b: &FrequencyList<T>, n: usize) -> BTreeSet<char> {
    let (chars_a, chars_b) = (a.chars(), b.chars());
    let left = a.top(n).into_iter().filter(|c| chars_b.contains(c));
    let right = b.top(n).into_iter().filter(|c| chars_a.contains(c));
    left.chain(right).collect()
}

pub fn comcov<T: Scalar>(a: &FrequencyList<T>, b: &FrequencyList<T>, n: usize) -> T {
    T::from_count(comchar(a, b, n).len()) / T::from_count(n)
}

/// Ranks starting at 1; tied values share the mean of their ranks.
pub fn average_ranks<T: Scalar>(values: &[T]) -> Vec<T> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap_or(std::cmp::Ordering::Equal));
    let mut ranks = vec![T::zero(); values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        // positions i..=j (0-based) hold ranks i+1..=j+1
        let mean = T::from_count(i + j + 2) / T::lit(2.0);
        for &k in &order[i..=j] {
            ranks[k] = mean;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank correlation: Pearson correlation of average ranks.
/// `None` when fewer than two values or when either side has zero rank variance.
pub fn spearman<T: Scalar>(x: &[T], y: &[T]) -> Option<T> {
    assert_eq!(x.len(), y.len(), "spearman needs paired samples");
    if x.len() < 2 {
        return None;
    }
    let (rx, ry) = (average_ranks(x), average_ranks(y));
    let n = T::from_count(x.len());
    let mx = rx.iter().copied().sum::<T>() / n;
    let my = ry.iter().copied().sum::<T>() / n;
    let (mut sxy, mut sxx, mut syy) = (T::zero(), T::zero(), T::zero());
    for (&a, &b) in rx.iter().zip(&ry) {
        sxy = sxy + (a - mx) * (b - my);
        sxx = sxx + (a - mx) * (a - mx);
        syy = syy + (b - my) * (b - my);
    }
    if sxx == T::zero() || syy == T::zero() {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceOptions<T> {
    /// Correlation used when it is undefined on the common set (a single
    /// shared character, or all frequencies tied on one side) and the two
    /// rankings differ. Identical rankings always count as 1.
    pub degenerate_rho: T,
}

impl<T: Scalar> Default for DistanceOptions<T> {
    fn default() -> Self {
        DistanceOptions { degenerate_rho: T::zero() }
    }
}

/// Breakdown of one `d_N` evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceDetail<T> {
    pub common: BTreeSet<char>,
    pub comcov: T,
    /// `None` when the common set is empty.
    pub rho: Option<T>,
    pub distance: T,
}

pub fn distance_dn_detail<T: Scalar>(
    a: &FrequencyList<T>,
    b: &FrequencyList<T>,
    n: usize,
    opts: DistanceOptions<T>,
) -> Result<DistanceDetail<T>> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    let common = comchar(a, b, n);
    let comcov = T::from_count(common.len()) / T::from_count(n);
    if common.is_empty() {
        return Ok(DistanceDetail { common, comcov, rho: None, distance: T::one() });
    }
    let (fa, fb) = (a.frequency_map(), b.frequency_map());
    let xs: Vec<T> = common.iter().map(|c| fa[c]).collect();
    let ys: Vec<T> = common.iter().map(|c| fb[c]).collect();
    let rho = spearman(&xs, &ys).unwrap_or_else(|| {
        if average_ranks(&xs) == average_ranks(&ys) {
            T::one()
        } else {
            opts.degenerate_rho
        }
    });
    let distance = T::one() - comcov * (rho + T::one()) / T::lit(2.0);
    if distance < T::zero() {
        log::warn!("d_N = {distance} is negative: comcov {comcov} exceeds 1 with N = {n}");
    }
    Ok(DistanceDetail { common, comcov, rho: Some(rho), distance })
}

/// `d_N(A, A') = 1 - comcov_N(A, A') * (rho(A_c, A'_c) + 1) / 2`.
pub fn distance_dn<T: Scalar>(a: &FrequencyList<T>, b: &FrequencyList<T>, n: usize) -> Result<T> {
    Ok(distance_dn_detail(a, b, n, DistanceOptions::default())?.distance)
}

/// Pairwise `d_N`; the diagonal is zero by definition.
pub fn distance_matrix<T: Scalar>(lists: &[FrequencyList<T>], n: usize) -> Result<Vec<Vec<T>>> {
    if lists.len() < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: lists.len() });
    }
    let k = lists.len();
    let mut m = vec![vec![T::zero(); k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let d = distance_dn(&lists[i], &lists[j], n)?;
            m[i][j] = d;
            m[j][i] = d;
        }
    }
    Ok(m)
}

/// Universal frequency list: `f(c) = sum_X f_X(c) * #char(X) / #char(UFL)`.
///
/// With `renormalize` the result is rescaled to sum to one; the raw weights
/// do not guarantee that.
pub fn aggregate_ufl<T: Scalar>(lists: &[(String, FrequencyList<T>)], renormalize: bool) -> Result<FrequencyList<T>> {
    if lists.is_empty() {
        return Err(Error::Empty("frequency list set"));
    }
    let universe: BTreeSet<char> = lists.iter().flat_map(|(_, l)| l.entries.iter().map(|e| e.0)).collect();
    let denom = T::from_count(universe.len());
    let mut acc: BTreeMap<char, T> = BTreeMap::new();
    for (_, list) in lists {
        let weight = T::from_count(list.len()) / denom;
        for &(c, f) in &list.entries {
            let slot = acc.entry(c).or_insert_with(T::zero);
            *slot = *slot + f * weight;
        }
    }
    let mut entries: Vec<(char, T)> = acc.into_iter().collect();
    if renormalize {
        let total: T = entries.iter().map(|e| e.1).sum();
        for e in &mut entries {
            e.1 = e.1 / total;
        }
    }
    sort_entries(&mut entries);
    let source_size = lists.iter().map(|(_, l)| l.source_size).sum();
    Ok(FrequencyList { entries, source_size })
}

/// Share of the list's frequency mass carried by characters in `charset`.
pub fn weighted_coverage<T: Scalar>(list: &FrequencyList<T>, charset: &BTreeSet<char>) -> Result<T> {
    if list.is_empty() {
        return Err(Error::Empty("frequency list"));
    }
    let covered: T = list.entries.iter().filter(|e| charset.contains(&e.0)).map(|e| e.1).sum();
    Ok(covered / list.total())
}
