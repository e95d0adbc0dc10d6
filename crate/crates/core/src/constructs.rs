//! The arc-and-lines constructions in PG(k-1, q).
//!
//! Inside the hyperplane `H = [0, ..., 0, 1]` sits the normal rational curve
//! `K = {P_0, ..., P_q}`. The line `l_0` through `P_0 = (1, 0, ..., 0)` and
//! `Q_q = (0, ..., 0, 1)` meets `H` only in `P_0`; its other points are
//! `Q_i = (1, 0, ..., 0, alpha^i)`. Joining `P_i` to `Q_i` gives lines
//! `l_1, ..., l_q` whose parts off `l_0` are pairwise disjoint. The codes
//! here are unions of these pieces with small multiplicities, plus the
//! extra point `Q = (0, 1, 0, ..., 0, 1)` for the extended codes.
//!
//! Every builder recomputes the parameters of what it built and compares
//! them with the expected closed forms; the closed forms are never used in
//! place of a computation.

use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::mcode::{self, Analysis, PointMultiset};
use crate::pg::{self, Flat, Hyperplane, ProjPoint};

/// `C(n, r)`, zero when `r < 0` or `r > n`.
pub fn binomial(n: i64, r: i64) -> u64 {
    if r < 0 || n < 0 || r > n {
        return 0;
    }
    let r = r.min(n - r) as u64;
    let n = n as u64;
    (0..r).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Base1,
    C1,
    Base2,
    C2,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Base1 => "base1",
            Family::C1 => "c1",
            Family::Base2 => "base2",
            Family::C2 => "c2",
        }
    }

    /// Expected `(n, d)` of the family at `(k, q)`.
    pub fn expected_params(self, k: usize, q: u32) -> (u64, u64) {
        let (k, q) = (k as i64, q as i64);
        let (n, d) = match self {
            Family::Base1 => (q * q + q - 1, q * q - (k - 3) * q),
            Family::C1 => (q * q + 2 * q - 1, q * q - (k - 4) * q),
            Family::Base2 => (q * q + 2 * q - 2, q * q - (k - 3) * q),
            Family::C2 => (q * q + 3 * q - 2, q * q - (k - 4) * q),
        };
        (n as u64, d as u64)
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "base1" => Ok(Family::Base1),
            "c1" => Ok(Family::C1),
            "base2" => Ok(Family::Base2),
            "c2" => Ok(Family::C2),
            other => Err(Error::InvalidParameters(format!("unknown family {other:?}"))),
        }
    }
}

/// `P_0, ..., P_q` in PG(k-1, q): `P_0 = (1, 0, ..., 0)`,
/// `P_i = (1, a^i, a^{2i}, ..., a^{(k-2)i}, 0)` and `P_q = (0, ..., 0, 1, 0)`.
pub fn normal_rational_curve(field: &Field, k: usize) -> Result<Vec<ProjPoint>> {
    let q = field.q();
    if k < 4 {
        return Err(Error::InvalidParameters(format!("k = {k} < 4")));
    }
    if (q as usize) < k - 2 {
        return Err(Error::ArcConditionViolated(format!("q = {q} < k - 2 = {}", k - 2)));
    }
    let mut pts = Vec::with_capacity(q as usize + 1);
    let mut p0 = vec![0; k];
    p0[0] = 1;
    pts.push(ProjPoint::from_canonical(p0));
    for i in 1..q as i64 {
        let mut c: Vec<u32> = (0..k as i64 - 1).map(|e| field.alpha_power(e * i)).collect();
        c.push(0);
        pts.push(ProjPoint::from_canonical(c));
    }
    let mut pq = vec![0; k];
    pq[k - 2] = 1;
    pts.push(ProjPoint::from_canonical(pq));
    Ok(pts)
}

/// Whether every `dim(ambient) + 1` of `points` span `ambient`. Sets too
/// small to contain such a subset pass vacuously.
pub fn arc_check(field: &Field, points: &[ProjPoint], ambient: &Flat) -> bool {
    let r = ambient.dim();
    if !points.iter().all(|p| ambient.contains(field, p)) {
        return false;
    }
    points.iter().combinations(r + 1).all(|subset| {
        let vs = subset.iter().map(|p| p.coords().to_vec());
        crate::linalg::rank(field, vs) == r + 1
    })
}

/// The curve, the line `l_0`, the lines `l_1..l_q` and the point `Q`.
#[derive(Debug, Clone)]
pub struct LineConfig {
    field: Arc<Field>,
    k: usize,
    /// `P_0, ..., P_q`.
    pub arc: Vec<ProjPoint>,
    /// `Q_1, ..., Q_q` (index 0 holds `Q_1`).
    pub q_points: Vec<ProjPoint>,
    pub l0: Flat,
    /// `l_1, ..., l_q` (index 0 holds `l_1`).
    pub lines: Vec<Flat>,
    /// `Q = (0, 1, 0, ..., 0, 1)`.
    pub extra: ProjPoint,
}

impl LineConfig {
    pub fn new(field: Arc<Field>, k: usize) -> Result<Self> {
        let q = field.q();
        let arc = normal_rational_curve(&field, k)?;
        let q_points: Vec<ProjPoint> = (1..=q)
            .map(|i| {
                let mut c = vec![0; k];
                if i < q {
                    c[0] = 1;
                    c[k - 1] = field.alpha_power(i as i64);
                } else {
                    c[k - 1] = 1;
                }
                ProjPoint::from_canonical(c)
            })
            .collect();
        let l0 = pg::span(&field, &[arc[0].clone(), q_points[q as usize - 1].clone()])?;
        let lines = (1..=q as usize)
            .map(|i| pg::span(&field, &[arc[i].clone(), q_points[i - 1].clone()]))
            .collect::<Result<Vec<_>>>()?;
        let mut extra = vec![0; k];
        extra[1] = 1;
        extra[k - 1] = 1;
        let cfg = LineConfig {
            field,
            k,
            arc,
            q_points,
            l0,
            lines,
            extra: ProjPoint::from_canonical(extra),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `H = [0, ..., 0, 1]`, the hyperplane holding the curve.
    pub fn curve_hyperplane(&self) -> Hyperplane {
        let mut c = vec![0; self.k];
        c[self.k - 1] = 1;
        Hyperplane::from_canonical(c)
    }

    /// Points of `l_i` off `l_0`, for `1 <= i <= q`.
    pub fn line_off_l0(&self, i: usize) -> Vec<ProjPoint> {
        self.lines[i - 1]
            .points(&self.field)
            .into_iter()
            .filter(|p| !self.l0.contains(&self.field, p))
            .collect()
    }

    fn validate(&self) -> Result<()> {
        let f = &self.field;
        let q = f.q() as usize;
        let h = self.curve_hyperplane();
        let h_flat = Flat::of_hyperplane(f, &h);
        let on_h = |p: &ProjPoint| f.dot(p.coords(), h.coeffs()) == 0;

        if !self.arc.iter().all(on_h) {
            return Err(Error::ConfigDegenerate("curve leaves H".into()));
        }
        let l0_in_h: Vec<ProjPoint> = self.l0.points(f).into_iter().filter(on_h).collect();
        if l0_in_h != [self.arc[0].clone()] {
            return Err(Error::ConfigDegenerate("l0 must meet H exactly in P0".into()));
        }
        if self.arc.iter().unique().count() != q + 1 || !arc_check(f, &self.arc, &h_flat) {
            return Err(Error::ArcConditionViolated(format!(
                "curve is not a {}-arc in PG({}, {q})",
                q + 1,
                self.k - 2
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for i in 1..=q {
            let part = self.line_off_l0(i);
            if part.len() != q {
                return Err(Error::ConfigDegenerate(format!("l{i} \\ l0 has {} points", part.len())));
            }
            for p in part {
                if !seen.insert(p) {
                    return Err(Error::ConfigDegenerate(format!("l{i} meets an earlier line off l0")));
                }
            }
        }
        Ok(())
    }
}

/// A built code with the configuration it came from.
#[derive(Debug, Clone)]
pub struct Construction {
    pub family: Family,
    pub config: LineConfig,
    pub multiset: PointMultiset,
    pub analysis: Analysis,
}

/// Serializable record of where a construction's points came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionRecord {
    pub family: Family,
    pub q: u32,
    pub k: usize,
    pub arc: Vec<ProjPoint>,
    pub q_points: Vec<ProjPoint>,
    pub l0: Flat,
    pub lines: Vec<Flat>,
    pub extra_point: Option<ProjPoint>,
}

impl Construction {
    pub fn record(&self) -> ConstructionRecord {
        let with_q = matches!(self.family, Family::C1 | Family::C2);
        ConstructionRecord {
            family: self.family,
            q: self.config.field.q(),
            k: self.config.k,
            arc: self.config.arc.clone(),
            q_points: self.config.q_points.clone(),
            l0: self.config.l0.clone(),
            lines: self.config.lines.clone(),
            extra_point: with_q.then(|| self.config.extra.clone()),
        }
    }
}

/// Construction options.
#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    /// Lets the extended families run at `k = 5`, and `c2` at `q < 5`, where
    /// only the runtime checks back them up.
    pub allow_experimental: bool,
}

fn check_params(family: Family, k: usize, q: u32, a: &Analysis) -> Result<()> {
    let (n, d) = family.expected_params(k, q);
    let p = &a.params;
    if (p.n, p.k, p.d) != (n, k, d) {
        return Err(Error::ParamMismatch(format!(
            "{} at (k, q) = ({k}, {q}) gave {p}, expected [{n},{k},{d}]_{q}",
            family.name()
        )));
    }
    if !a.is_divisible(q as u64) {
        return Err(Error::ParamMismatch(format!(
            "{} is not {q}-divisible (weight gcd {})",
            family.name(),
            p.divisor
        )));
    }
    Ok(())
}

fn base_multiset(family: Family, cfg: &LineConfig) -> Result<PointMultiset> {
    let q = cfg.field.q() as usize;
    let mut m = PointMultiset::new(cfg.field.clone(), cfg.k);
    let (line_count, q1, q_mult) = match family {
        Family::Base1 | Family::C1 => (q, vec![cfg.arc[0].clone()], vec![]),
        Family::Base2 | Family::C2 => (
            q - 1,
            vec![cfg.arc[0].clone(), cfg.q_points[q - 1].clone()],
            vec![cfg.arc[q].clone()],
        ),
    };
    for i in 1..=line_count {
        for p in cfg.line_off_l0(i) {
            m.add(p, 1)?;
        }
    }
    for p in q1 {
        m.add(p, q as u64 - 1)?;
    }
    for p in q_mult {
        m.add(p, q as u64)?;
    }
    Ok(m)
}

fn base_code(family: Family, field: Arc<Field>, k: usize) -> Result<Construction> {
    if k < 4 {
        return Err(Error::InvalidParameters(format!("k = {k} < 4")));
    }
    let cfg = LineConfig::new(field, k)?;
    let multiset = base_multiset(family, &cfg)?;
    let analysis = mcode::analyze(&multiset)?;
    check_params(family, k, cfg.field.q(), &analysis)?;
    Ok(Construction {
        family,
        config: cfg,
        multiset,
        analysis,
    })
}

/// `(U_{i=1..q} l_i) \ l_0` as 1-points with `P_0` as a `(q-1)`-point:
/// a q-divisible `[q^2+q-1, k, q^2-(k-3)q]_q` code.
pub fn base_code_1(field: Arc<Field>, k: usize) -> Result<Construction> {
    base_code(Family::Base1, field, k)
}

/// `(U_{i=1..q-1} l_i) \ l_0` as 1-points, `P_0` and `Q_q` as `(q-1)`-points
/// and `P_q` as a `q`-point: a q-divisible `[q^2+2q-2, k, q^2-(k-3)q]_q` code.
pub fn base_code_2(field: Arc<Field>, k: usize) -> Result<Construction> {
    base_code(Family::Base2, field, k)
}

fn extended(family: Family, field: Arc<Field>, k: usize, opts: Options) -> Result<Construction> {
    let q = field.q() as usize;
    let min_k = if opts.allow_experimental { 5 } else { 6 };
    if k < min_k {
        return Err(Error::OutOfScope(format!(
            "{} needs k >= 6 (k = 5 only with allow_experimental), got k = {k}",
            family.name()
        )));
    }
    if family == Family::C2 && q < 5 && !opts.allow_experimental {
        return Err(Error::InvalidParameters(format!(
            "c2 needs q >= 5 (q < 5 only with allow_experimental), got q = {q}"
        )));
    }
    let (base_family, bad) = match family {
        Family::C1 => (Family::Base1, (k - 2) * q - 1),
        _ => (Family::Base2, (k - 1) * q - 2),
    };
    let base = base_code(base_family, field, k)?;
    let cfg = base.config;
    let extra = cfg.extra.clone();

    // The heaviest hyperplanes of the base code must all miss Q, otherwise
    // adding Q as a q-point would push n - d up.
    let max = base.analysis.table.max();
    if max != bad as u64 {
        return Err(Error::ParamMismatch(format!(
            "base code has n - d = {max}, expected {bad}"
        )));
    }
    for (h, mh) in base.analysis.table.iter() {
        if mh == max && cfg.field.dot(h.coeffs(), extra.coords()) == 0 {
            return Err(Error::ClaimFailed(format!(
                "hyperplane {h} of multiplicity {mh} contains Q"
            )));
        }
    }

    let mut multiset = base.multiset;
    if multiset.multiplicity(&extra) != 0 {
        return Err(Error::ConfigDegenerate("Q already lies in the base code".into()));
    }
    multiset.add(extra, q as u64)?;
    let analysis = mcode::analyze(&multiset)?;
    check_params(family, k, q as u32, &analysis)?;

    let (k_, q_) = (k as i64, q as i64);
    let expected = match family {
        Family::C1 => binomial(q_, k_ - 4) + binomial(q_, k_ - 3),
        _ => binomial(q_ - 1, k_ - 3) + 2 * binomial(q_ - 1, k_ - 4) + binomial(q_ - 1, k_ - 5),
    };
    let computed = analysis.spectrum().get(bad as u64);
    if computed != expected {
        return Err(Error::SpectrumMismatch {
            multiplicity: bad as u64,
            computed,
            expected,
        });
    }
    Ok(Construction {
        family,
        config: cfg,
        multiset,
        analysis,
    })
}

/// Base code 1 plus `Q` as a `q`-point: a q-divisible
/// `[q^2+2q-1, k, q^2-(k-4)q]_q` code with
/// `a_{(k-2)q-1} = C(q, k-4) + C(q, k-3)`.
pub fn code_c1(field: Arc<Field>, k: usize, opts: Options) -> Result<Construction> {
    extended(Family::C1, field, k, opts)
}

/// Base code 2 plus `Q` as a `q`-point: a q-divisible
/// `[q^2+3q-2, k, q^2-(k-4)q]_q` code with
/// `a_{(k-1)q-2} = C(q-1, k-3) + 2 C(q-1, k-4) + C(q-1, k-5)`.
pub fn code_c2(field: Arc<Field>, k: usize, opts: Options) -> Result<Construction> {
    extended(Family::C2, field, k, opts)
}

pub fn construct(family: Family, field: Arc<Field>, k: usize, opts: Options) -> Result<Construction> {
    match family {
        Family::Base1 => base_code_1(field, k),
        Family::Base2 => base_code_2(field, k),
        Family::C1 => code_c1(field, k, opts),
        Family::C2 => code_c2(field, k, opts),
    }
}
