//! Projective dual, geometric puncturing and the disjoint-line search.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg;
use crate::mcode::{self, Analysis, PointMultiset};
use crate::pg::{self, Flat, Hyperplane, ProjPoint};

/// One hyperplane of the input and the multiplicity its dual point got.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualEntry {
    pub hyperplane: Hyperplane,
    pub multiplicity: u64,
    pub dual_multiplicity: u64,
}

/// Result of [`projective_dual`].
#[derive(Debug, Clone)]
pub struct Dual {
    pub multiset: PointMultiset,
    pub analysis: Analysis,
    /// The divisibility `t = q^{k-2} / m` of the dual code.
    pub t: u64,
    pub entries: Vec<DualEntry>,
}

/// Projective dual of an `m`-divisible code.
///
/// A hyperplane of multiplicity `n - d - j m` becomes a `j`-point of the
/// dual space. The result is a `t`-divisible `[n*, k, d*]_q` code with
/// `t = q^{k-2} / m`, `n* = n t q - (d / m) theta_{k-1}` and
/// `d* = ((n - d) q - n) t`, and the dual has exactly `lambda_j` hyperplanes
/// of multiplicity `n* - d* - j t`. All of this is recomputed from the dual
/// multiset and compared; a disagreement is reported as `ParamMismatch`.
pub fn projective_dual(m: &PointMultiset, divisor: u64) -> Result<Dual> {
    let a = mcode::analyze(m)?;
    projective_dual_with(m, &a, divisor)
}

/// [`projective_dual`] reusing an existing analysis of `m`.
pub fn projective_dual_with(m: &PointMultiset, a: &Analysis, divisor: u64) -> Result<Dual> {
    let field = m.field();
    let (q, k) = (field.q() as u64, m.k());
    let p = &a.params;
    let top = p.n - p.d;

    check_divisor(field, k, divisor)?;
    for &mh in a.table.multiplicities() {
        if !(top - mh).is_multiple_of(divisor) {
            return Err(Error::DivisibilityViolated {
                multiplicity: mh,
                m: divisor,
            });
        }
    }
    if p.lambda[0] == 0 {
        return Err(Error::NoZeroPoint);
    }
    let light = a.table.iter().filter(|&(_, mh)| mh < top).map(|(h, _)| h.into_vec());
    if linalg::rank(field, light) != k {
        return Err(Error::IntersectionNonempty);
    }

    let mut dual = PointMultiset::new(field.clone(), k);
    let mut entries = Vec::with_capacity(a.table.len());
    for (h, mh) in a.table.iter() {
        let j = (top - mh) / divisor;
        dual.add(pg::dual_point(&h), j)?;
        entries.push(DualEntry {
            hyperplane: h,
            multiplicity: mh,
            dual_multiplicity: j,
        });
    }

    let t = q.pow(k as u32 - 2) / divisor;
    let theta = pg::theta(k as i64 - 1, q) as i128;
    let n_star = p.n as i128 * t as i128 * q as i128 - (p.d / divisor) as i128 * theta;
    let d_star = ((top as i128) * q as i128 - p.n as i128) * t as i128;

    let da = mcode::analyze(&dual)?;
    let dp = &da.params;
    if (dp.n as i128, dp.d as i128) != (n_star, d_star) {
        return Err(Error::ParamMismatch(format!(
            "dual is [{},{},{}], expected n* = {n_star}, d* = {d_star}",
            dp.n, dp.k, dp.d
        )));
    }
    if !da.is_divisible(t) {
        return Err(Error::ParamMismatch(format!(
            "dual is not {t}-divisible (gcd {})",
            dp.divisor
        )));
    }
    let spectrum = da.spectrum();
    let dual_top = dp.n - dp.d;
    for (j, &lambda) in p.lambda.iter().enumerate() {
        let level = dual_top as i128 - j as i128 * t as i128;
        let got = if level >= 0 { spectrum.get(level as u64) } else { 0 };
        if got != lambda {
            return Err(Error::ParamMismatch(format!(
                "dual spectrum a*_{level} = {got}, expected lambda_{j} = {lambda}"
            )));
        }
    }
    Ok(Dual {
        multiset: dual,
        analysis: da,
        t,
        entries,
    })
}

fn check_divisor(field: &Field, k: usize, m: u64) -> Result<()> {
    let p = field.p() as u64;
    let mut r = 0;
    let mut x = m;
    while x > 1 && x.is_multiple_of(p) {
        x /= p;
        r += 1;
    }
    let max_r = field.h() as u64 * (k as u64).saturating_sub(2);
    if x != 1 || r == 0 || r > max_r {
        return Err(Error::InvalidDivisor {
            m,
            reason: format!("must be p^r with p = {p} and 1 <= r <= {max_r}"),
        });
    }
    Ok(())
}

/// A punctured code with its recomputed parameters.
#[derive(Debug, Clone)]
pub struct Punctured {
    pub multiset: PointMultiset,
    pub analysis: Analysis,
}

/// Removes one copy of every point of `flat` from `m`.
///
/// Requires every point of the `t`-flat in the support and `d > q^t`; the
/// result is an `[n - theta_t, k, d']_q` code with `d' >= d - q^t`.
pub fn puncture_flat(m: &PointMultiset, flat: &Flat) -> Result<Punctured> {
    let a = mcode::analyze(m)?;
    puncture_flat_with(m, &a, flat)
}

pub fn puncture_flat_with(m: &PointMultiset, a: &Analysis, flat: &Flat) -> Result<Punctured> {
    let field = m.field();
    let pts = flat.points(field);
    if pts.iter().any(|p| m.multiplicity(p) == 0) {
        return Err(Error::FlatNotInSupport);
    }
    let loss = (field.q() as u64).pow(flat.dim() as u32);
    let d = a.params.d;
    if d <= loss {
        return Err(Error::DistanceTooSmall { d, bound: loss });
    }
    let mut out = m.clone();
    for p in &pts {
        out.remove_one(p)?;
    }
    let pa = finish(&out, m.k())?;
    let (n2, d2) = (pa.params.n, pa.params.d);
    if n2 != a.params.n - pts.len() as u64 || d2 < d - loss {
        return Err(Error::ParamMismatch(format!(
            "puncturing a {}-flat gave [{n2},{},{d2}] from [{},{},{d}]",
            flat.dim(),
            m.k(),
            a.params.n,
            m.k()
        )));
    }
    Ok(Punctured {
        multiset: out,
        analysis: pa,
    })
}

/// Removes one copy of `point`. The distance drops by at most one.
pub fn puncture_point(m: &PointMultiset, point: &ProjPoint) -> Result<Punctured> {
    let a = mcode::analyze(m)?;
    puncture_point_with(m, &a, point)
}

pub fn puncture_point_with(m: &PointMultiset, a: &Analysis, point: &ProjPoint) -> Result<Punctured> {
    if m.multiplicity(point) == 0 {
        return Err(Error::PointNotInSupport);
    }
    let d = a.params.d;
    if d <= 1 {
        return Err(Error::DistanceTooSmall { d, bound: 1 });
    }
    let mut out = m.clone();
    out.remove_one(point)?;
    let pa = finish(&out, m.k())?;
    if pa.params.n != a.params.n - 1 || pa.params.d + 1 < d || pa.params.d > d {
        return Err(Error::ParamMismatch(format!(
            "point puncturing gave {} from [{},{},{d}]",
            pa.params,
            a.params.n,
            m.k()
        )));
    }
    Ok(Punctured {
        multiset: out,
        analysis: pa,
    })
}

fn finish(m: &PointMultiset, k: usize) -> Result<Analysis> {
    let rank = m.rank();
    if rank != k {
        return Err(Error::RankLost { rank, k });
    }
    mcode::analyze(m)
}

/// The point removed by one step of point puncturing: the first
/// multiplicity-1 point (then any support point) whose removal keeps the
/// support spanning.
pub fn select_puncture_point(m: &PointMultiset) -> Result<ProjPoint> {
    let ones = m.iter().filter(|&(_, mult)| mult == 1);
    let rest = m.iter().filter(|&(_, mult)| mult > 1);
    for (p, mult) in ones.chain(rest) {
        if mult > 1 || keeps_rank(m, p) {
            return Ok(p.clone());
        }
    }
    Err(Error::PointNotInSupport)
}

fn keeps_rank(m: &PointMultiset, removed: &ProjPoint) -> bool {
    let vs = m
        .iter()
        .filter(|&(p, _)| p != removed)
        .map(|(p, _)| p.coords().to_vec());
    linalg::rank(m.field(), vs) == m.k()
}

/// Upper bound on search nodes before [`find_disjoint_lines`] gives up.
pub const LINE_SEARCH_BUDGET: u64 = 2_000_000;

/// Finds `count` pairwise disjoint lines whose points all lie in the support
/// of `m`, optionally inside `within`.
///
/// Candidate points are taken in enumeration order. The search either puts
/// the first free point on a line through it (trying partners in order) or
/// skips it, and backtracks; a branch is cut as soon as the free points
/// cannot fill the remaining lines.
pub fn find_disjoint_lines(m: &PointMultiset, count: usize, within: Option<&Flat>) -> Result<Vec<Flat>> {
    if count == 0 {
        return Err(Error::InvalidParameters("line count must be positive".into()));
    }
    let field = m.field();
    let region: Vec<ProjPoint> = match within {
        Some(f) => {
            let mut pts = f.points(field);
            pts.sort();
            pts
        }
        None => pg::enumerate_points(field, m.k() - 1),
    };
    let candidates: Vec<ProjPoint> = region.into_iter().filter(|p| m.multiplicity(p) > 0).collect();
    let mut search = LineSearch {
        field,
        index: candidates.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect(),
        free: vec![true; candidates.len()],
        free_count: candidates.len(),
        points: candidates,
        line_len: field.q() as usize + 1,
        count,
        found: Vec::new(),
        best: 0,
        nodes: 0,
    };
    if search.run(0)? {
        Ok(search.found.into_iter().map(|(l, _)| l).collect())
    } else {
        Err(Error::NotEnoughLines {
            requested: count,
            found: search.best,
        })
    }
}

struct LineSearch<'a> {
    field: &'a Field,
    points: Vec<ProjPoint>,
    index: HashMap<ProjPoint, usize>,
    free: Vec<bool>,
    free_count: usize,
    line_len: usize,
    count: usize,
    found: Vec<(Flat, Vec<usize>)>,
    best: usize,
    nodes: u64,
}

impl LineSearch<'_> {
    fn run(&mut self, from: usize) -> Result<bool> {
        self.best = self.best.max(self.found.len());
        if self.found.len() == self.count {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > LINE_SEARCH_BUDGET {
            return Err(Error::SearchBudgetExceeded(LINE_SEARCH_BUDGET));
        }
        if self.free_count < (self.count - self.found.len()) * self.line_len {
            return Ok(false);
        }
        let Some(p) = (from..self.points.len()).find(|&i| self.free[i]) else {
            return Ok(false);
        };

        let mut tried = HashSet::new();
        for r in p + 1..self.points.len() {
            if !self.free[r] {
                continue;
            }
            let line = pg::span(self.field, &[self.points[p].clone(), self.points[r].clone()])?;
            if !tried.insert(line.clone()) {
                continue;
            }
            let Some(idx) = self.line_indices(&line) else {
                continue;
            };
            for &i in &idx {
                self.free[i] = false;
            }
            self.free_count -= idx.len();
            self.found.push((line, idx));
            if self.run(p + 1)? {
                return Ok(true);
            }
            let (_, idx) = self.found.pop().unwrap();
            for &i in &idx {
                self.free[i] = true;
            }
            self.free_count += idx.len();
        }

        self.free[p] = false;
        self.free_count -= 1;
        let ok = self.run(p + 1)?;
        self.free[p] = true;
        self.free_count += 1;
        Ok(ok)
    }

    /// Candidate indices of all points of `line`, if every one is free.
    fn line_indices(&self, line: &Flat) -> Option<Vec<usize>> {
        line.points(self.field)
            .iter()
            .map(|pt| self.index.get(pt).copied().filter(|&i| self.free[i]))
            .collect()
    }
}
