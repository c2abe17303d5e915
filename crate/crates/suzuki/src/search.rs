//! Parallel, resumable enumeration of decomposition matrices.
//!
//! The search tree is cut after `depth` rows into independent tasks. Workers
//! pull task indices from a shared counter; the union of the per-task
//! canonical sets does not depend on scheduling.
//!
//! Checkpoint format, one record per line:
//!
//! ```text
//! problem <D as a;b;c rows>|<principal>
//! depth <d> tasks <count>
//! done <task index> <solution>...
//! ```
//!
//! where each solution is a `B` matrix in `a,b;c,d` form.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::OpenOptions;
use std::io::Write;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use suzuki_core::suzuki::{BMatrix, BProblem};

use crate::error::InputError;
use crate::formats::{matrix_from_line, matrix_to_line};

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub workers: usize,
    pub depth: usize,
    pub checkpoint: Option<PathBuf>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { workers: 1, depth: 2, checkpoint: None }
    }
}

fn problem_key(d: &[Vec<i64>], principal: &[i64]) -> String {
    format!("{}|{}", matrix_to_line(d), matrix_to_line(&[principal.to_vec()]))
}

struct Checkpoint {
    done: BTreeMap<usize, BTreeSet<BMatrix>>,
}

fn read_checkpoint(path: &PathBuf, key: &str, depth: usize, tasks: usize) -> Result<Option<Checkpoint>, InputError> {
    if !path.exists() {
        return Ok(None);
    }
    let text =
        std::fs::read_to_string(path).map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
    let bad = |m: &str| InputError::Other(format!("{}: {m}", path.display()));
    let mut it = text.lines();
    if it.next() != Some(&format!("problem {key}")) {
        return Err(bad("checkpoint belongs to a different problem"));
    }
    if it.next() != Some(&format!("depth {depth} tasks {tasks}")) {
        return Err(bad("checkpoint was written with a different task split"));
    }
    let mut done = BTreeMap::new();
    for line in it {
        let mut w = line.split_whitespace();
        // a torn final line from an interrupted run is skipped; its task reruns
        let (Some("done"), Some(idx)) = (w.next(), w.next()) else { continue };
        let Ok(idx) = idx.parse::<usize>() else { continue };
        let sols: Option<BTreeSet<BMatrix>> = w.map(|s| matrix_from_line(s).map(|rows| BMatrix { rows })).collect();
        if let Some(s) = sols {
            done.insert(idx, s);
        }
    }
    Ok(Some(Checkpoint { done }))
}

/// All canonical solutions, in canonical order.
pub fn enumerate_parallel(d: &[Vec<i64>], principal: &[i64], opts: &SearchOptions) -> Result<Vec<BMatrix>, InputError> {
    let problem = BProblem::new(d, principal)?;
    let tasks = problem.tasks(opts.depth);
    let key = problem_key(d, principal);
    let mut results: BTreeMap<usize, BTreeSet<BMatrix>> = BTreeMap::new();
    let mut log = None;
    if let Some(path) = &opts.checkpoint {
        match read_checkpoint(path, &key, opts.depth, tasks.len())? {
            Some(cp) => results = cp.done,
            None => {
                let header = format!("problem {key}\ndepth {} tasks {}\n", opts.depth, tasks.len());
                std::fs::write(path, header)
                    .map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
            }
        }
        let f = OpenOptions::new()
            .append(true)
            .open(path)
            .map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
        log = Some(Mutex::new(f));
    }
    let pending: Vec<usize> = (0..tasks.len()).filter(|i| !results.contains_key(i)).collect();
    let next = AtomicUsize::new(0);
    let found = Mutex::new(Vec::new());
    let workers = opts.workers.max(1).min(pending.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(&idx) = pending.get(k) else { break };
                let sols = problem.solve_task(&tasks[idx]);
                if let Some(log) = &log {
                    let mut line = format!("done {idx}");
                    for b in &sols {
                        line.push(' ');
                        line.push_str(&matrix_to_line(&b.rows));
                    }
                    line.push('\n');
                    // a failed write only costs a rerun of this task on resume
                    let _ = log.lock().expect("checkpoint lock").write_all(line.as_bytes());
                }
                found.lock().expect("result lock").push((idx, sols));
            });
        }
    });
    results.extend(found.into_inner().expect("result lock"));
    let all: BTreeSet<BMatrix> = results.into_values().flatten().collect();
    Ok(all.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k_like() -> (Vec<Vec<i64>>, Vec<i64>) {
        (vec![vec![5, 1, 1, -1], vec![1, 3, 1, -1], vec![1, 1, 3, -1], vec![-1, -1, -1, 2]], vec![1, 0, 0, 0])
    }

    #[test]
    fn worker_count_does_not_matter() {
        let (d, p) = k_like();
        let serial = suzuki_core::suzuki::enumerate_b(&d, &p).unwrap();
        for workers in [1, 3, 8] {
            for depth in [0, 1, 2, 4] {
                let opts = SearchOptions { workers, depth, checkpoint: None };
                assert_eq!(enumerate_parallel(&d, &p, &opts).unwrap(), serial);
            }
        }
    }

    #[test]
    fn checkpoint_resume() {
        let (d, p) = k_like();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cp.txt");
        let opts = SearchOptions { workers: 2, depth: 2, checkpoint: Some(path.clone()) };
        let first = enumerate_parallel(&d, &p, &opts).unwrap();
        // drop the last record and append a torn line, as after a crash
        let text = std::fs::read_to_string(&path).unwrap();
        let mut kept: Vec<&str> = text.lines().collect();
        kept.pop();
        std::fs::write(&path, format!("{}\ndone 0 1,", kept.join("\n"))).unwrap();
        assert_eq!(enumerate_parallel(&d, &p, &opts).unwrap(), first);
        let other = SearchOptions { depth: 1, ..opts };
        assert!(enumerate_parallel(&d, &p, &other).is_err());
    }
}
