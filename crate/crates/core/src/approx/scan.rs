use rayon::prelude::*;

use super::{enumerate_q, unit_offsets, Approximant, Workspace};
use crate::embed::interval::Interval;
use crate::embed::EmbeddingSet;
use crate::vectors::TargetVector;

/// Parameters of a quality scan.
#[derive(Debug, Clone, Default)]
pub struct ScanOptions {
    /// House bound `T` on `q`.
    pub bound: f64,
    pub thresholds: Vec<f64>,
    /// A certified lower bound `C'` valid when `max_i |z_i - p_i/q_i| <= 1`.
    pub lower_bound: Option<Interval>,
}

/// The best pair found for one `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub approximant: Approximant,
    pub house: Interval,
    pub quality: Interval,
    /// `max_i |z_i - p_i/q_i| <= 1` holds certainly.
    pub near: bool,
}

/// A minimum over a set of pairs: `quality` encloses the minimum, `witness`
/// attains the smallest midpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct Extremum {
    pub quality: Interval,
    pub witness: Approximant,
    pub witness_quality: Interval,
}

/// Pairs with quality below a threshold: `certain` are certified below it,
/// `possible` also counts enclosures straddling it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdCount {
    pub threshold: f64,
    pub certain: usize,
    pub possible: usize,
}

#[derive(Debug, Clone)]
pub struct QualityReport {
    pub bound: f64,
    pub order: String,
    pub prec: u32,
    /// Number of `q` examined and of pairs evaluated.
    pub q_count: usize,
    pub pair_count: usize,
    pub min: Option<Extremum>,
    /// Minimum over `T/10 < house(q) <= T`.
    pub tail: Option<Extremum>,
    /// Minima over pairs within unit distance of the target and beyond it.
    pub near_min: Option<Extremum>,
    pub far_min: Option<Extremum>,
    pub below: Vec<ThresholdCount>,
    pub lower_bound: Option<Interval>,
    /// Near pairs certified below the lower bound; must stay empty.
    pub violations: Vec<Approximant>,
    /// Near pairs whose enclosure straddles the lower bound.
    pub unresolved: usize,
    pub rows: Vec<ScanRow>,
}

struct Pair {
    approximant: Approximant,
    quality: Interval,
    near: bool,
}

struct QResult {
    row: ScanRow,
    near_best: Option<Pair>,
    far_best: Option<Pair>,
    counts: Vec<(usize, usize)>,
    pairs: usize,
    violations: Vec<Approximant>,
    unresolved: usize,
}

fn better(a: &Pair, b: &Pair) -> bool {
    (a.quality.midpoint(), &a.approximant) < (b.quality.midpoint(), &b.approximant)
}

fn keep(slot: &mut Option<Pair>, cand: Pair) {
    if slot.as_ref().is_none_or(|cur| better(&cand, cur)) {
        *slot = Some(cand);
    }
}

fn evaluate_q(ws: &Workspace, q: &[i64], opts: &ScanOptions) -> QResult {
    let qv = ws.point(q);
    let qf = ws.point_f(q);
    let house = qv.max_abs();
    let qabs = qv.abs_values();
    let qz = qv.mul(&ws.z);
    let centre = ws.rounded_p(&qf);
    let thresholds: Vec<Interval> = opts.thresholds.iter().map(|&t| Interval::from_f64(t)).collect();
    let mut counts = vec![(0, 0); thresholds.len()];
    let (mut near_best, mut far_best, mut best): (Option<Pair>, Option<Pair>, Option<Pair>) = (None, None, None);
    let mut violations = Vec::new();
    let mut unresolved = 0;
    let offsets = unit_offsets(ws.dim());
    for off in &offsets {
        let p: Vec<i64> = centre.iter().zip(off).map(|(a, b)| a + b).collect();
        let diff = qz.sub(&ws.point(&p)).abs_values();
        let dist = diff.iter().skip(1).fold(diff[0].clone(), |m, x| m.max(x));
        let quality =
            if dist.contains_zero() && ws.is_exact_hit(q, &p) { Interval::from_i64(0) } else { &house * &dist };
        let near = diff.iter().zip(&qabs).all(|(d, a)| d.certainly_le(a));
        for (k, t) in thresholds.iter().enumerate() {
            if quality.certainly_le(t) {
                counts[k].0 += 1;
            }
            if !t.certainly_lt(&quality) {
                counts[k].1 += 1;
            }
        }
        if near {
            if let Some(c) = &opts.lower_bound {
                let floor = Interval::point(c.lo().clone());
                if quality.certainly_lt(&floor) {
                    violations.push(Approximant { q: q.to_vec(), p: p.clone() });
                } else if !floor.certainly_le(&quality) {
                    unresolved += 1;
                }
            }
        }
        let pair = Pair { approximant: Approximant { q: q.to_vec(), p }, quality, near };
        if near {
            keep(&mut near_best, Pair { approximant: pair.approximant.clone(), quality: pair.quality.clone(), near });
        } else {
            keep(&mut far_best, Pair { approximant: pair.approximant.clone(), quality: pair.quality.clone(), near });
        }
        keep(&mut best, pair);
    }
    let best = best.expect("nonempty offset box");
    QResult {
        row: ScanRow { approximant: best.approximant, house, quality: best.quality, near: best.near },
        near_best,
        far_best,
        counts,
        pairs: offsets.len(),
        violations,
        unresolved,
    }
}

fn merge(acc: Option<Extremum>, p: &Pair) -> Option<Extremum> {
    Some(match acc {
        None => {
            Extremum { quality: p.quality.clone(), witness: p.approximant.clone(), witness_quality: p.quality.clone() }
        }
        Some(cur) => {
            let wins = (p.quality.midpoint(), &p.approximant) < (cur.witness_quality.midpoint(), &cur.witness);
            Extremum {
                quality: cur.quality.min(&p.quality),
                witness: if wins { p.approximant.clone() } else { cur.witness },
                witness_quality: if wins { p.quality.clone() } else { cur.witness_quality },
            }
        }
    })
}

/// Evaluate every `q` with `house(q) <= T` against `p` in the offset box
/// around the rounded coordinates of `q z`. Deterministic: shards are
/// evaluated in parallel and merged in coordinate order.
pub fn scan(z: &TargetVector, e: &EmbeddingSet, opts: &ScanOptions) -> QualityReport {
    let ws = Workspace::new(z, e);
    let qs = enumerate_q(e, opts.bound);
    let results: Vec<QResult> = qs.par_iter().map(|q| evaluate_q(&ws, q, opts)).collect();
    let tail_floor = Interval::from_f64(opts.bound / 10.0);
    let mut report = QualityReport {
        bound: opts.bound,
        order: e.field().order_name(),
        prec: e.prec(),
        q_count: results.len(),
        pair_count: 0,
        min: None,
        tail: None,
        near_min: None,
        far_min: None,
        below: opts.thresholds.iter().map(|&threshold| ThresholdCount { threshold, certain: 0, possible: 0 }).collect(),
        lower_bound: opts.lower_bound.clone(),
        violations: Vec::new(),
        unresolved: 0,
        rows: Vec::with_capacity(results.len()),
    };
    for r in results {
        report.pair_count += r.pairs;
        for (b, (c, p)) in report.below.iter_mut().zip(&r.counts) {
            b.certain += c;
            b.possible += p;
        }
        report.violations.extend(r.violations);
        report.unresolved += r.unresolved;
        let best = Pair { approximant: r.row.approximant.clone(), quality: r.row.quality.clone(), near: r.row.near };
        report.min = merge(report.min.take(), &best);
        if tail_floor.certainly_lt(&r.row.house) {
            report.tail = merge(report.tail.take(), &best);
        }
        if let Some(p) = &r.near_best {
            report.near_min = merge(report.near_min.take(), p);
        }
        if let Some(p) = &r.far_best {
            report.far_min = merge(report.far_min.take(), p);
        }
        report.rows.push(r.row);
    }
    report
}

/// For each bound in `grid`, the number of evaluated pairs with `house(q)`
/// within the bound and quality certainly at most `c`. Nondecreasing in the bound.
pub fn dirichlet_count(z: &TargetVector, e: &EmbeddingSet, c: f64, grid: &[f64]) -> Vec<(f64, usize)> {
    let top = grid.iter().cloned().fold(0.0, f64::max);
    let ws = Workspace::new(z, e);
    let opts = ScanOptions { bound: top, thresholds: vec![c], lower_bound: None };
    let qs = enumerate_q(e, top);
    let per_q: Vec<(Interval, usize)> = qs
        .par_iter()
        .map(|q| {
            let r = evaluate_q(&ws, q, &opts);
            (r.row.house, r.counts[0].0)
        })
        .collect();
    grid.iter()
        .map(|&t| {
            let ti = Interval::from_f64(t);
            (t, per_q.iter().filter(|(h, _)| !ti.certainly_lt(h)).map(|(_, n)| n).sum())
        })
        .collect()
}

impl QualityReport {
    /// Whether the certified bound holds on every near pair examined.
    pub fn respects_lower_bound(&self) -> bool {
        self.lower_bound.is_some() && self.violations.is_empty()
    }

    /// Rows sorted by quality, best first; ties by coordinates.
    pub fn best_rows(&self, n: usize) -> Vec<&ScanRow> {
        let mut v: Vec<&ScanRow> = self.rows.iter().collect();
        v.sort_by(|a, b| (a.quality.midpoint(), &a.approximant).cmp(&(b.quality.midpoint(), &b.approximant)));
        v.truncate(n);
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::is_normalized;
    use crate::forms::QuadForm;
    use crate::vectors::quad_zeros;
    use crate::{isolate_roots, FieldElem, NumberField, RatPoly};

    #[test]
    fn golden_scan() {
        let f = NumberField::new(RatPoly::from_ints(&[0, 1])).unwrap();
        let e = isolate_roots(&f, 128).unwrap();
        let z = quad_zeros(&QuadForm::from_ints(&f, &[1], &[-1], &[-1]), &e, &[1]).unwrap();
        let r = scan(&z, &e, &ScanOptions { bound: 100.0, thresholds: vec![0.45, 0.5], lower_bound: None });
        let min = r.min.unwrap();
        assert_eq!(min.witness, Approximant { q: vec![1], p: vec![2] });
        let tail = r.tail.unwrap();
        assert_eq!(tail.witness, Approximant { q: vec![21], p: vec![34] });
        assert!(r.below[0].certain < r.below[1].certain);
    }

    #[test]
    fn rational_hits_zero() {
        let f = NumberField::new(RatPoly::from_ints(&[0, 1])).unwrap();
        let e = isolate_roots(&f, 64).unwrap();
        let z = TargetVector::field_point(
            &FieldElem::from_rational(&f, num_rational::BigRational::new(22.into(), 7.into())),
            &e,
        );
        let r = scan(&z, &e, &ScanOptions { bound: 10.0, ..Default::default() });
        let min = r.min.unwrap();
        assert!(min.quality.is_exact_zero());
        assert_eq!(min.witness, Approximant { q: vec![7], p: vec![22] });
        assert!(is_normalized(&min.witness.q));
    }
}
