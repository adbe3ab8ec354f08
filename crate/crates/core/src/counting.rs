//! Exact lattice point counts under `Q(m, n) <= x`.
//!
//! `A(x)` counts all integer points (origin included), `B(x)` the primitive
//! ones (`gcd(|m|, |n|) = 1`). Their deviations from the main terms are
//! `P(x) = A(x) - (2π/√D)x` and `R(x) = B(x) - (12/(π√D))x`.
//!
//! The workhorse is [`ValueList`]: every nonzero point below a cap, grouped
//! by the value of the form, with total and primitive multiplicities. All
//! counts, sweeps and the exact integral of `|R|` are read off it.

use std::io::{self, Write};
use std::num::NonZeroUsize;
use std::thread;

use crate::error::{Error, Result};
use crate::quadform::QuadraticForm;

/// Default cap on the number of lattice points a single enumeration may
/// produce (about 1 GiB of transient storage).
pub const DEFAULT_POINT_BUDGET: u64 = 64_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Number of worker threads the row range is split across.
    pub workers: usize,
    /// Upper limit on the predicted number of points.
    pub point_budget: u64,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            workers: thread::available_parallelism().map_or(1, NonZeroUsize::get),
            point_budget: DEFAULT_POINT_BUDGET,
        }
    }
}

impl EnumerationOptions {
    pub fn with_workers(workers: usize) -> Self {
        Self {
            workers: workers.max(1),
            ..Self::default()
        }
    }
}

/// One distinct form value with its representation counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueEntry {
    pub value: f64,
    pub total: u64,
    pub primitive: u64,
}

/// Sorted multiset of the nonzero form values up to a cap.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueList {
    form: QuadraticForm,
    cap: f64,
    entries: Vec<ValueEntry>,
    cum_total: Vec<u64>,
    cum_primitive: Vec<u64>,
}

/// `A`, `B`, `P` and `R` at one threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountResult {
    pub x: f64,
    pub all: u64,
    pub primitive: u64,
    pub p: f64,
    pub r: f64,
}

impl CountResult {
    fn new(form: &QuadraticForm, x: f64, all: u64, primitive: u64) -> Self {
        let k = form.main_coefficients();
        Self {
            x,
            all,
            primitive,
            p: all as f64 - k.0 * x,
            r: primitive as f64 - k.1 * x,
        }
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

/// Rough point count `(2π/√D)·x` plus the perimeter, used for the budget.
fn predicted_points(form: &QuadraticForm, x: f64) -> u64 {
    let (main_all, _) = form.main_coefficients();
    let rows = 2 * form.max_row(x).max(0) as u64 + 1;
    (main_all * x).ceil() as u64 + 2 * rows
}

fn check_budget(form: &QuadraticForm, x: f64, budget: u64) -> Result<()> {
    let predicted = predicted_points(form, x);
    if predicted > budget {
        return Err(Error::Budget { predicted, budget });
    }
    Ok(())
}

fn check_threshold(x: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "threshold must be finite and >= 0, got {x}"
        )));
    }
    Ok(())
}

/// Points of one half plane (`n > 0`, or `n = 0` and `m > 0`) in the given
/// rows, as `(value, primitive)`.
fn half_plane_rows(form: &QuadraticForm, cap: f64, rows: std::ops::Range<i64>) -> Vec<(f64, bool)> {
    let mut out = Vec::new();
    for n in rows {
        let Some((lo, hi)) = form.row_bounds(cap, n) else {
            continue;
        };
        let lo = if n == 0 { lo.max(1) } else { lo };
        let nn = n.unsigned_abs();
        for m in lo..=hi {
            let q = form.eval(m, n);
            if q <= cap {
                out.push((q, gcd(m.unsigned_abs(), nn) == 1));
            }
        }
    }
    out
}

/// Enumerates all nonzero points with `Q <= cap` using default options.
pub fn enumerate(form: &QuadraticForm, cap: f64) -> Result<ValueList> {
    enumerate_with(form, cap, &EnumerationOptions::default())
}

/// Enumerates all nonzero points with `Q <= cap`.
///
/// Rows are split into contiguous blocks, one per worker. The merged list
/// is sorted and grouped by value, so the result does not depend on the
/// worker count.
pub fn enumerate_with(
    form: &QuadraticForm,
    cap: f64,
    opts: &EnumerationOptions,
) -> Result<ValueList> {
    check_threshold(cap)?;
    check_budget(form, cap, opts.point_budget)?;

    let n_max = form.max_row(cap);
    let row_count = n_max + 1;
    let workers = (opts.workers.max(1) as i64).min(row_count.max(1));

    let mut points: Vec<(f64, bool)> = if workers <= 1 {
        half_plane_rows(form, cap, 0..row_count)
    } else {
        let chunk = (row_count + workers - 1) / workers;
        thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let start = (w * chunk).min(row_count);
                    let end = ((w + 1) * chunk).min(row_count);
                    scope.spawn(move || half_plane_rows(form, cap, start..end))
                })
                .collect();
            let mut merged = Vec::new();
            for h in handles {
                merged.extend(h.join().expect("enumeration worker panicked"));
            }
            merged
        })
    };

    points.sort_unstable_by(|x, y| x.0.total_cmp(&y.0));

    let mut entries: Vec<ValueEntry> = Vec::new();
    for (value, primitive) in points {
        let prim = if primitive { 2 } else { 0 };
        match entries.last_mut() {
            Some(last) if last.value == value => {
                last.total += 2;
                last.primitive += prim;
            }
            _ => entries.push(ValueEntry {
                value,
                total: 2,
                primitive: prim,
            }),
        }
    }
    Ok(ValueList::from_entries(*form, cap, entries))
}

impl ValueList {
    fn from_entries(form: QuadraticForm, cap: f64, entries: Vec<ValueEntry>) -> Self {
        let mut cum_total = Vec::with_capacity(entries.len());
        let mut cum_primitive = Vec::with_capacity(entries.len());
        let (mut t, mut p) = (0u64, 0u64);
        for e in &entries {
            t += e.total;
            p += e.primitive;
            cum_total.push(t);
            cum_primitive.push(p);
        }
        Self {
            form,
            cap,
            entries,
            cum_total,
            cum_primitive,
        }
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    pub fn cap(&self) -> f64 {
        self.cap
    }

    pub fn entries(&self) -> &[ValueEntry] {
        &self.entries
    }

    /// Number of nonzero points, i.e. `A(cap) - 1`.
    pub fn point_count(&self) -> u64 {
        self.cum_total.last().copied().unwrap_or(0)
    }

    fn prefix_len(&self, x: f64) -> Result<usize> {
        if !(x <= self.cap) {
            return Err(Error::Domain(format!(
                "threshold {x} exceeds the enumeration cap {}",
                self.cap
            )));
        }
        Ok(self.entries.partition_point(|e| e.value <= x))
    }

    /// `A(x)` including the origin, for `0 <= x <= cap`.
    pub fn count_all(&self, x: f64) -> Result<u64> {
        check_threshold(x)?;
        let k = self.prefix_len(x)?;
        Ok(1 + if k == 0 { 0 } else { self.cum_total[k - 1] })
    }

    /// `B(x)` for `0 <= x <= cap`.
    pub fn count_primitive(&self, x: f64) -> Result<u64> {
        check_threshold(x)?;
        let k = self.prefix_len(x)?;
        Ok(if k == 0 { 0 } else { self.cum_primitive[k - 1] })
    }

    pub fn count(&self, x: f64) -> Result<CountResult> {
        let all = self.count_all(x)?;
        let primitive = self.count_primitive(x)?;
        Ok(CountResult::new(&self.form, x, all, primitive))
    }

    /// `Σ Q(m,n)` over all points with `Q <= cap`.
    pub fn value_sum(&self) -> f64 {
        self.entries.iter().map(|e| e.total as f64 * e.value).sum()
    }

    /// `∫₁^Y |R(x)| dx` for each `Y` in `ys` (any order, each in `[1, cap]`).
    ///
    /// Between consecutive primitive values `R` is linear with slope
    /// `-12/(π√D)`, so each piece is integrated in closed form, splitting at
    /// the zero when the endpoint values have opposite signs.
    pub fn abs_r_integrals(&self, ys: &[f64]) -> Result<Vec<f64>> {
        for &y in ys {
            if !(y >= 1.0) || !(y <= self.cap) {
                return Err(Error::Domain(format!(
                    "integration limit must lie in [1, {}], got {y}",
                    self.cap
                )));
            }
        }
        let mut order: Vec<usize> = (0..ys.len()).collect();
        order.sort_by(|&i, &j| ys[i].total_cmp(&ys[j]));

        let (_, slope) = self.form.main_coefficients();
        let start = self.entries.partition_point(|e| e.value <= 1.0);
        let mut level = if start == 0 {
            0
        } else {
            self.cum_primitive[start - 1]
        } as f64;
        let jumps = self.entries[start..].iter().filter(|e| e.primitive > 0);
        let mut jumps = jumps.peekable();

        let mut out = vec![0.0; ys.len()];
        let mut acc = NeumaierSum::default();
        let mut left = 1.0;
        for idx in order {
            let y = ys[idx];
            while let Some(e) = jumps.peek() {
                if e.value >= y {
                    break;
                }
                acc.add(abs_linear_integral(level, slope, left, e.value));
                level += e.primitive as f64;
                left = e.value;
                jumps.next();
            }
            out[idx] = acc.value() + abs_linear_integral(level, slope, left, y);
        }
        Ok(out)
    }
}

/// `∫_{x0}^{x1} |level - slope·x| dx` for `slope > 0`.
pub(crate) fn abs_linear_integral(level: f64, slope: f64, x0: f64, x1: f64) -> f64 {
    if x1 <= x0 {
        return 0.0;
    }
    let r0 = level - slope * x0;
    let r1 = level - slope * x1;
    if r0 >= 0.0 && r1 >= 0.0 || r0 <= 0.0 && r1 <= 0.0 {
        0.5 * (r0.abs() + r1.abs()) * (x1 - x0)
    } else {
        (r0 * r0 + r1 * r1) / (2.0 * slope)
    }
}

/// Compensated summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `A`, `B`, `P`, `R` at `x`.
pub fn count(form: &QuadraticForm, x: f64) -> Result<CountResult> {
    enumerate(form, x)?.count(x)
}

/// `A(x)` by counting each row directly, without building a value list.
pub fn count_all_direct(form: &QuadraticForm, x: f64) -> Result<u64> {
    check_threshold(x)?;
    check_budget(form, x, DEFAULT_POINT_BUDGET)?;
    let n_max = form.max_row(x);
    let mut total = 0u64;
    for n in -n_max..=n_max {
        if let Some((lo, hi)) = form.row_bounds(x, n) {
            total += (lo..=hi).filter(|&m| form.eval(m, n) <= x).count() as u64;
        }
    }
    Ok(total)
}

/// Möbius function on `0..=n` by a linear sieve (`mu[0]` is unused).
pub fn mobius_sieve(n: usize) -> Vec<i8> {
    let mut mu = vec![0i8; n + 1];
    if n == 0 {
        return mu;
    }
    mu[1] = 1;
    let mut is_composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !is_composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            is_composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu
}

/// `B(x) = Σ_k μ(k)·(A(x/k²) - 1)` over `k² λ₁ <= x`.
///
/// Independent of the gcd filter in [`enumerate`]: each `A(x/k²)` comes
/// from [`count_all_direct`].
pub fn count_primitive_moebius(form: &QuadraticForm, x: f64) -> Result<u64> {
    check_threshold(x)?;
    let lambda1 = form.lambda1();
    if x < lambda1 {
        return Ok(0);
    }
    let mut k_max = (x / lambda1).sqrt().floor() as usize;
    while ((k_max + 1) as f64).powi(2) * lambda1 <= x {
        k_max += 1;
    }
    while k_max > 1 && (k_max as f64).powi(2) * lambda1 > x {
        k_max -= 1;
    }
    let mu = mobius_sieve(k_max);
    let mut total: i64 = 0;
    for (k, &m) in mu.iter().enumerate().skip(1) {
        if m == 0 {
            continue;
        }
        let kk = (k as f64) * (k as f64);
        let inner = count_all_direct(form, x / kk)? as i64 - 1;
        total += m as i64 * inner;
    }
    debug_assert!(total >= 0);
    Ok(total as u64)
}

/// `∫₁^Y |R(x)| dx`, integrated exactly over the piecewise linear `R`.
pub fn mean_abs_r(form: &QuadraticForm, y: f64) -> Result<f64> {
    mean_abs_r_with(form, y, &EnumerationOptions::default())
}

pub fn mean_abs_r_with(form: &QuadraticForm, y: f64, opts: &EnumerationOptions) -> Result<f64> {
    if !(y >= 1.0) {
        return Err(Error::Domain(format!("upper limit must be >= 1, got {y}")));
    }
    let list = enumerate_with(form, y, opts)?;
    Ok(list.abs_r_integrals(&[y])?[0])
}

/// Counts at every threshold in `xs` from one enumeration up to the largest.
pub fn sweep(
    form: &QuadraticForm,
    xs: &[f64],
    opts: &EnumerationOptions,
) -> Result<Vec<CountResult>> {
    let cap = xs.iter().copied().fold(0.0, f64::max);
    let list = enumerate_with(form, cap, opts)?;
    xs.iter().map(|&x| list.count(x)).collect()
}

/// Writes `x,A,B,P,R` rows.
pub fn write_count_csv<W: Write>(mut w: W, rows: &[CountResult]) -> io::Result<()> {
    writeln!(w, "x,A,B,P,R")?;
    for r in rows {
        writeln!(w, "{},{},{},{},{}", r.x, r.all, r.primitive, r.p, r.r)?;
    }
    Ok(())
}

/// Writes `Y,M` rows where `M = Y^{-5/4} ∫₁^Y |R|`.
pub fn write_mean_csv<W: Write>(mut w: W, rows: &[(f64, f64)]) -> io::Result<()> {
    writeln!(w, "Y,M")?;
    for (y, m) in rows {
        writeln!(w, "{y},{m}")?;
    }
    Ok(())
}
