//! Parallel witness hunting: split the top of the branch tree into
//! prefixes, race them across workers with a shared cancellation flag,
//! then rerun the winning branch sequentially so the emitted certificate
//! carries that branch's least witness. Verdicts are independent of the
//! number of workers; exhaustion certificates are never emitted from a
//! parallel pass.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, Mutex};
use std::thread;

use broomlab_core::search::{
    branch_prefixes, search, search_with_cancel, SearchCertificate, SearchConfig, SearchError,
    SearchOutcome,
};

/// Expands the branch tree breadth-first until at least `want` prefixes
/// exist (or the tree bottoms out).
fn split_prefixes(config: &SearchConfig, want: usize) -> Result<Vec<Vec<(usize, u32)>>, SearchError> {
    let mut frontier = branch_prefixes(config, &[])?;
    while frontier.len() < want {
        // Expand the shortest prefix; stop when nothing expands.
        let Some(pos) = (0..frontier.len()).min_by_key(|&i| frontier[i].len()) else {
            break;
        };
        let prefix = frontier.remove(pos);
        let children = branch_prefixes(config, &prefix)?;
        if children.is_empty() {
            // Dead or leaf-level prefix; keep it as a unit of work.
            frontier.push(prefix);
            break;
        }
        frontier.extend(children);
        if frontier.iter().all(|p| p.len() >= config.host.edge_count()) {
            break;
        }
    }
    Ok(frontier)
}

/// Races the prefixes across `workers` threads. Returns the first
/// witness-bearing prefix observed (scheduling-dependent), or `None` if
/// every branch exhausted.
pub fn parallel_witness_hunt(
    config: &SearchConfig,
    workers: usize,
) -> Result<Option<Vec<(usize, u32)>>, SearchError> {
    let prefixes = split_prefixes(config, workers * 4)?;
    if prefixes.is_empty() {
        return Ok(None);
    }
    let queue = Arc::new(Mutex::new(prefixes));
    let found: Arc<Mutex<Option<Vec<(usize, u32)>>>> = Arc::new(Mutex::new(None));
    let cancel = Arc::new(AtomicBool::new(false));
    let mut handles = Vec::new();
    for _ in 0..workers.max(1) {
        let queue = Arc::clone(&queue);
        let found = Arc::clone(&found);
        let cancel = Arc::clone(&cancel);
        let config = config.clone();
        handles.push(thread::spawn(move || -> Result<(), SearchError> {
            loop {
                if cancel.load(Ordering::Relaxed) {
                    return Ok(());
                }
                let prefix = {
                    let mut q = queue.lock().expect("queue lock");
                    q.pop()
                };
                let Some(prefix) = prefix else { return Ok(()) };
                let sub = SearchConfig {
                    prefix: prefix.clone(),
                    ..config.clone()
                };
                match search_with_cancel(&sub, &cancel) {
                    Ok(cert) => {
                        if matches!(cert.outcome, SearchOutcome::Witness(_)) {
                            let mut slot = found.lock().expect("found lock");
                            if slot.is_none() {
                                *slot = Some(prefix);
                            }
                            cancel.store(true, Ordering::Relaxed);
                            return Ok(());
                        }
                    }
                    Err(SearchError::Cancelled) => return Ok(()),
                    Err(e) => return Err(e),
                }
            }
        }));
    }
    for handle in handles {
        handle
            .join()
            .map_err(|_| SearchError::Internal("worker panicked".into()))??;
    }
    let slot = found.lock().expect("found lock");
    Ok(slot.clone())
}

/// Full flow for the CLI: parallel hunt; on a hit, rerun the winning
/// branch sequentially for a deterministic certificate; on a miss, rerun
/// sequentially from the root so the exhaustion certificate comes from a
/// single-worker pass.
pub fn hunt_then_certify(
    config: &SearchConfig,
    workers: usize,
) -> Result<SearchCertificate, SearchError> {
    match parallel_witness_hunt(config, workers)? {
        Some(prefix) => {
            let sub = SearchConfig {
                prefix,
                ..config.clone()
            };
            search(&sub)
        }
        None => {
            eprintln!("note: parallel pass found no witness; certifying sequentially");
            search(config)
        }
    }
}
