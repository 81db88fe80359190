use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;

use crate::cache::Cache;
use crate::checks::{plan_cells, Cell, Outcome};
use crate::plan::VerificationPlan;
use crate::report::{Record, Report, Status, Timings};
use crate::HarnessError;

/// Runs a plan without a disk cache.
pub fn run(plan: &VerificationPlan) -> Result<Report, HarnessError> {
    run_with_cache(plan, None)
}

/// Runs a plan. Cells are evaluated on `plan.jobs` workers; records keep plan order.
pub fn run_with_cache(plan: &VerificationPlan, cache: Option<&Cache>) -> Result<Report, HarnessError> {
    plan.validate()?;
    let space = plan.space()?;
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(plan.jobs)
        .build()
        .map_err(|e| HarnessError::Config(format!("thread pool: {e}")))?;
    let cells = plan_cells(plan);

    if let Some(cache) = cache {
        let components: BTreeSet<_> = cells
            .iter()
            .filter(|c| c.dims(space).iter().all(|&d| d <= plan.max_dim))
            .flat_map(|c| c.components(space))
            .collect();
        // single writer: entries are written from this thread only
        for (kind, sub) in components {
            cache.differential(space, kind, sub)?;
        }
    }

    let evaluated: Vec<(Result<Outcome, String>, f64)> = pool.install(|| {
        cells
            .par_iter()
            .map(|cell| {
                let t = Instant::now();
                let out = cell.evaluate(space, plan.max_dim).map_err(|e| e.to_string());
                (out, t.elapsed().as_secs_f64())
            })
            .collect()
    });

    let mut records = Vec::with_capacity(cells.len());
    let mut seconds = Vec::with_capacity(cells.len());
    for (cell, (out, secs)) in cells.iter().zip(evaluated) {
        records.push(record(cell, space, out));
        seconds.push(secs);
    }
    let timings = Timings {
        total_seconds: start.elapsed().as_secs_f64(),
        records: seconds,
        cache_corrupted: cache.map_or(0, Cache::corrupted),
    };
    let report = Report::new(plan.clone(), records, timings);
    if let Some(cache) = cache {
        cache.put(&crate::cache::report_key(&report.plan_digest), &report.stable_json())?;
    }
    Ok(report)
}

pub(crate) fn record(cell: &Cell, space: dkoszul_core::superspace::SuperSpace, out: Result<Outcome, String>) -> Record {
    let claim = cell.claim();
    let base = |status, dims, data, witness, reason| Record {
        check: cell.check().name().into(),
        claim: claim.id.into(),
        anchor: claim.anchor.into(),
        params: cell.params(),
        status,
        dims,
        data,
        witness,
        reason,
    };
    match out {
        Ok(Outcome::Done { pass, dims, data, witness }) => {
            let status = if pass { Status::Pass } else { Status::Fail };
            base(status, dims, data, witness, None)
        }
        Ok(Outcome::Skipped { dims, reason }) => base(Status::Skipped, dims, serde_json::Value::Null, None, Some(reason)),
        Err(e) => base(
            Status::Fail,
            cell.dims(space),
            serde_json::Value::Null,
            Some(serde_json::json!({ "error": e })),
            Some("evaluation error".into()),
        ),
    }
}
