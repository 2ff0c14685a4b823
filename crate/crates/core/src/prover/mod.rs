//! Branch-and-bound verification of disjunctions of strict inequalities
//! over boxes.
//!
//! A cell is discharged when some disjunct has a rigorous interval (or
//! Taylor) lower bound at or above zero; otherwise it is bisected along
//! its widest dimension. Soundness is unconditional: only certified lower
//! bounds discharge cells, and every discharged cell is logged so the run
//! can be re-validated independently. False disjunctions surface as a
//! `Failed` witness sub-box on which every disjunct is provably negative;
//! marginal ones run until the cell budget or the width floor is hit and
//! return a resumable frontier.

mod expr;

pub use expr::{
    eval_interval, eval_point, eval_taylor, eval_taylor_bound, parse_expr_str, ExprError, FnExpr,
    FromConst, Prim, TaylorBound,
};

use crate::geom;
use crate::ival::{Interval, IntervalBox, IvalError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitStrategy {
    /// Bisect the widest dimension, ties broken by lowest index.
    BisectWidest,
}

/// Subdivide a box according to the strategy. Pieces cover the box exactly
/// and every piece is strictly narrower than the parent in the split
/// dimension.
pub fn subdivide(b: &IntervalBox, strategy: SplitStrategy) -> Result<Vec<IntervalBox>, IvalError> {
    if b.width() <= 0.0 {
        return Err(IvalError::ZeroWidthBox);
    }
    match strategy {
        SplitStrategy::BisectWidest => {
            let (l, r) = b.bisect(b.widest_dim());
            Ok(vec![l, r])
        }
    }
}

/// Monotonicity annotation for a variable: the inequality only needs to be
/// checked at the adverse endpoint of that dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotone {
    /// All disjuncts nondecreasing in this variable: pin to the lower end.
    Increasing,
    /// All disjuncts nonincreasing: pin to the upper end.
    Decreasing,
}

#[derive(Debug, Clone)]
pub struct VerifyTask {
    pub disjuncts: Vec<FnExpr>,
    pub domain: IntervalBox,
    pub budget: usize,
    pub min_width: f64,
    /// Declared monotone variables (no automatic detection is attempted).
    pub monotone: Vec<(usize, Monotone)>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TaskError {
    #[error("task needs at least one disjunct")]
    NoDisjuncts,
    #[error("budget must be positive")]
    ZeroBudget,
    #[error("min_width must be positive")]
    BadMinWidth,
    #[error("disjunct references variable {0} outside the {1}-dimensional domain")]
    VarOutOfRange(usize, usize),
    #[error("line {0}: {1}")]
    Line(usize, String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

impl VerifyTask {
    pub fn new(
        disjuncts: Vec<FnExpr>,
        domain: IntervalBox,
        budget: usize,
        min_width: f64,
    ) -> Result<Self, TaskError> {
        if disjuncts.is_empty() {
            return Err(TaskError::NoDisjuncts);
        }
        if budget == 0 {
            return Err(TaskError::ZeroBudget);
        }
        if !(min_width > 0.0) {
            return Err(TaskError::BadMinWidth);
        }
        for d in &disjuncts {
            if let Some(v) = d.max_var() {
                if v >= domain.len() {
                    return Err(TaskError::VarOutOfRange(v, domain.len()));
                }
            }
        }
        Ok(VerifyTask {
            disjuncts,
            domain,
            budget,
            min_width,
            monotone: Vec::new(),
        })
    }

    /// Parse the line-oriented task format:
    /// ```text
    /// vars <m>
    /// dom <i> <lo> <hi>          (one per dimension)
    /// monotone <i> inc|dec       (optional)
    /// disjunct <prefix expression>
    /// ```
    /// `#` starts a comment. Budget and width floor come from the caller.
    pub fn parse(text: &str, budget: usize, min_width: f64) -> Result<Self, TaskError> {
        let mut m: Option<usize> = None;
        let mut doms: Vec<Option<Interval>> = Vec::new();
        let mut disjuncts = Vec::new();
        let mut monotone = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| TaskError::Line(ln + 1, msg);
            let mut words = line.split_whitespace();
            match words.next().unwrap() {
                "vars" => {
                    let n: usize = words
                        .next()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| err("vars needs a count".into()))?;
                    m = Some(n);
                    doms = vec![None; n];
                }
                "dom" => {
                    let i: usize = words
                        .next()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| err("dom needs an index".into()))?;
                    let lo = words
                        .next()
                        .and_then(|w| crate::ival::parse_dec_directed(w, false))
                        .ok_or_else(|| err("dom needs a lower bound".into()))?;
                    let hi = words
                        .next()
                        .and_then(|w| crate::ival::parse_dec_directed(w, true))
                        .ok_or_else(|| err("dom needs an upper bound".into()))?;
                    if i >= doms.len() {
                        return Err(err(format!("dom index {i} out of range")));
                    }
                    doms[i] = Some(
                        Interval::new(lo, hi).map_err(|e| err(format!("bad domain: {e}")))?,
                    );
                }
                "monotone" => {
                    let i: usize = words
                        .next()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| err("monotone needs an index".into()))?;
                    let dir = match words.next() {
                        Some("inc") => Monotone::Increasing,
                        Some("dec") => Monotone::Decreasing,
                        _ => return Err(err("monotone needs inc or dec".into())),
                    };
                    monotone.push((i, dir));
                }
                "disjunct" => {
                    let rest: Vec<&str> = words.collect();
                    let mut it = rest.iter();
                    let e = expr::parse_expr(&mut it)?;
                    if it.next().is_some() {
                        return Err(ExprError::Trailing.into());
                    }
                    disjuncts.push(e);
                }
                other => return Err(err(format!("unknown directive `{other}`"))),
            }
        }
        let m = m.ok_or_else(|| TaskError::Line(0, "missing vars line".into()))?;
        let mut dims = Vec::with_capacity(m);
        for (i, d) in doms.into_iter().enumerate() {
            dims.push(d.ok_or_else(|| TaskError::Line(0, format!("missing dom {i}")))?);
        }
        let domain = IntervalBox::new(dims).map_err(|e| TaskError::Line(0, e.to_string()))?;
        let mut task = VerifyTask::new(disjuncts, domain, budget, min_width)?;
        task.monotone = monotone;
        Ok(task)
    }

    /// Domain with monotone dimensions pinned to their adverse endpoint.
    fn effective_domain(&self) -> IntervalBox {
        let mut dims: Vec<Interval> = self.domain.dims().to_vec();
        for &(i, dir) in &self.monotone {
            if i < dims.len() {
                dims[i] = match dir {
                    Monotone::Increasing => Interval::point(dims[i].lo()),
                    Monotone::Decreasing => Interval::point(dims[i].hi()),
                };
            }
        }
        IntervalBox::new(dims).expect("domain is nonempty")
    }
}

/// Certificate for one discharged cell.
#[derive(Debug, Clone)]
pub struct CellCert {
    pub cell: IntervalBox,
    pub disjunct: usize,
    pub lower_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    /// Every point of the domain satisfies some disjunct.
    Verified,
    /// Witness sub-box on which every disjunct is provably negative.
    Failed(IntervalBox),
    /// Budget or width floor hit; the frontier resumes the search.
    BudgetExhausted,
}

#[derive(Debug)]
pub struct VerifyReport {
    pub verdict: Verdict,
    pub cells_used: usize,
    pub certificates: Vec<CellCert>,
    pub frontier: Vec<IntervalBox>,
    /// Cells on which some disjunct hit a domain violation (reported, never
    /// silently dropped).
    pub domain_errors: usize,
    pub taylor_fallbacks: usize,
}

impl VerifyReport {
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Verified => 0,
            Verdict::Failed(_) => 1,
            Verdict::BudgetExhausted => 2,
        }
    }
}

/// Replay a certificate log: re-validate every discharged cell with fresh
/// interval evaluations, independent of the search that produced it.
pub fn replay(task: &VerifyTask, certs: &[CellCert]) -> Result<(), String> {
    for (k, c) in certs.iter().enumerate() {
        if c.disjunct >= task.disjuncts.len() {
            return Err(format!("cert {k}: disjunct index out of range"));
        }
        for (i, d) in c.cell.dims().iter().enumerate() {
            let dom = task.domain.dim(i);
            if d.lo() < dom.lo() - 1e-12 || d.hi() > dom.hi() + 1e-12 {
                return Err(format!("cert {k}: cell leaves the domain in dim {i}"));
            }
        }
        let enc = cell_enclosure(&task.disjuncts[c.disjunct], &c.cell);
        match enc {
            Some(iv) if iv.lo() >= 0.0 => {}
            other => {
                return Err(format!(
                    "cert {k}: lower bound does not re-validate ({other:?})"
                ))
            }
        }
    }
    Ok(())
}

/// Best available enclosure on a cell: interval evaluation intersected
/// with the Taylor bound when the expression is C^2 there.
fn cell_enclosure(f: &FnExpr, cell: &IntervalBox) -> Option<Interval> {
    let base = eval_interval(f, cell).ok();
    let taylor = eval_taylor(f, cell).ok();
    match (base, taylor) {
        (Some(a), Some(b)) => a.intersect(&b).or(Some(a)),
        (Some(a), None) => Some(a),
        (None, Some(b)) => Some(b),
        (None, None) => None,
    }
}

/// Run the branch-and-bound verification. Deterministic: identical tasks
/// produce identical verdicts, certificates and cell counts.
pub fn verify(task: &VerifyTask) -> VerifyReport {
    let order = disjunct_order(task);
    let mut stack = vec![task.effective_domain()];
    let mut report = VerifyReport {
        verdict: Verdict::Verified,
        cells_used: 0,
        certificates: Vec::new(),
        frontier: Vec::new(),
        domain_errors: 0,
        taylor_fallbacks: 0,
    };
    while let Some(cell) = stack.pop() {
        if report.cells_used >= task.budget {
            report.frontier.push(cell);
            report.frontier.extend(stack);
            report.verdict = Verdict::BudgetExhausted;
            return report;
        }
        report.cells_used += 1;
        match process_cell(task, &order, &cell, &mut report) {
            CellOutcome::Discharged => {}
            CellOutcome::AllNegative => {
                report.verdict = Verdict::Failed(cell);
                return report;
            }
            CellOutcome::Split => {
                if cell.width() <= task.min_width {
                    report.frontier.push(cell);
                } else {
                    let (l, r) = cell.bisect(cell.widest_dim());
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
    }
    if !report.frontier.is_empty() {
        report.verdict = Verdict::BudgetExhausted;
    }
    report
}

/// Work-splitting wrapper: the root box is pre-subdivided and the pieces
/// are verified on `workers` threads, each with a proportional budget.
/// Results merge deterministically (piece order is fixed).
pub fn verify_parallel(task: &VerifyTask, workers: usize) -> VerifyReport {
    let workers = workers.max(1);
    if workers == 1 {
        return verify(task);
    }
    let mut pieces = vec![task.effective_domain()];
    while pieces.len() < workers * 4 {
        if pieces.iter().all(|p| p.width() <= task.min_width) {
            break;
        }
        let p = pieces.remove(0);
        let (l, r) = p.bisect(p.widest_dim());
        pieces.push(l);
        pieces.push(r);
    }
    let budget_each = (task.budget / pieces.len()).max(1);
    let reports: Vec<VerifyReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = pieces
            .iter()
            .map(|p| {
                let sub = VerifyTask {
                    disjuncts: task.disjuncts.clone(),
                    domain: p.clone(),
                    budget: budget_each,
                    min_width: task.min_width,
                    monotone: Vec::new(),
                };
                scope.spawn(move || verify(&sub))
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut merged = VerifyReport {
        verdict: Verdict::Verified,
        cells_used: 0,
        certificates: Vec::new(),
        frontier: Vec::new(),
        domain_errors: 0,
        taylor_fallbacks: 0,
    };
    for r in reports {
        merged.cells_used += r.cells_used;
        merged.domain_errors += r.domain_errors;
        merged.taylor_fallbacks += r.taylor_fallbacks;
        merged.certificates.extend(r.certificates);
        merged.frontier.extend(r.frontier);
        match (&merged.verdict, r.verdict) {
            (Verdict::Failed(_), _) => {}
            (_, Verdict::Failed(w)) => merged.verdict = Verdict::Failed(w),
            (Verdict::Verified, v) => merged.verdict = v,
            _ => {}
        }
    }
    merged
}

enum CellOutcome {
    Discharged,
    AllNegative,
    Split,
}

fn disjunct_order(task: &VerifyTask) -> Vec<usize> {
    // cheapest-first evaluation order
    let mut idx: Vec<usize> = (0..task.disjuncts.len()).collect();
    idx.sort_by_key(|&i| task.disjuncts[i].size());
    idx
}

fn process_cell(
    task: &VerifyTask,
    order: &[usize],
    cell: &IntervalBox,
    report: &mut VerifyReport,
) -> CellOutcome {
    let mut all_negative = true;
    for &j in order {
        let f = &task.disjuncts[j];
        let base = match eval_interval(f, cell) {
            Ok(iv) => Some(iv),
            Err(geom::Error::Ival(IvalError::DivisionByIntervalContainingZero))
            | Err(_) => None,
        };
        let mut enc = base;
        if enc.map(|iv| iv.lo() < 0.0).unwrap_or(true) {
            // try the tighter Taylor form before splitting
            match eval_taylor(f, cell) {
                Ok(t) => {
                    enc = match enc {
                        Some(b) => b.intersect(&t).or(Some(t)),
                        None => Some(t),
                    };
                }
                Err(_) => report.taylor_fallbacks += 1,
            }
        }
        match enc {
            None => {
                report.domain_errors += 1;
                all_negative = false;
            }
            Some(iv) => {
                if iv.lo() >= 0.0 {
                    report.certificates.push(CellCert {
                        cell: cell.clone(),
                        disjunct: j,
                        lower_bound: iv.lo(),
                    });
                    return CellOutcome::Discharged;
                }
                if iv.hi() >= 0.0 {
                    all_negative = false;
                }
            }
        }
    }
    if all_negative {
        CellOutcome::AllNegative
    } else {
        CellOutcome::Split
    }
}
