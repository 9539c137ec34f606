//! Minimal latency harness: times a closure repeatedly and summarizes.

use std::time::Instant;

use serde::Serialize;

/// Mean session time of the reference interpreted implementation, in ms.
pub const REFERENCE_SESSION_MS: f64 = 93.75;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub operation: String,
    pub iterations: usize,
    pub mean_us: f64,
    pub p50_us: f64,
    pub p99_us: f64,
    pub min_us: f64,
    pub max_us: f64,
    pub note: String,
}

impl BenchReport {
    /// Summarizes per-iteration samples given in microseconds.
    pub fn from_samples(operation: &str, samples: &[f64], note: &str) -> Self {
        assert!(!samples.is_empty(), "at least one iteration");
        let mut sorted = samples.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mean = sorted.iter().sum::<f64>() / sorted.len() as f64;
        Self {
            operation: operation.to_string(),
            iterations: sorted.len(),
            // keep mean inside [min, max] despite rounding
            mean_us: mean.clamp(sorted[0], sorted[sorted.len() - 1]),
            p50_us: percentile(&sorted, 50.0),
            p99_us: percentile(&sorted, 99.0),
            min_us: sorted[0],
            max_us: sorted[sorted.len() - 1],
            note: note.to_string(),
        }
    }

    pub fn mean_ms(&self) -> f64 {
        self.mean_us / 1000.0
    }

    /// Reference mean divided by the measured mean.
    pub fn speedup_vs_reference(&self) -> f64 {
        REFERENCE_SESSION_MS / self.mean_ms()
    }

    pub const CSV_HEADER: &'static str = "operation,iterations,mean_us,p50_us,p99_us,min_us,max_us,note";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{:.3},{:.3},{:.3},{:.3},{:.3},{}",
            self.operation,
            self.iterations,
            self.mean_us,
            self.p50_us,
            self.p99_us,
            self.min_us,
            self.max_us,
            self.note.replace(',', ";")
        )
    }
}

impl std::fmt::Display for BenchReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: {} iterations, mean {:.3} us, p50 {:.3} us, p99 {:.3} us, min {:.3} us, max {:.3} us",
            self.operation, self.iterations, self.mean_us, self.p50_us, self.p99_us, self.min_us, self.max_us
        )?;
        if !self.note.is_empty() {
            write!(f, " ({})", self.note)?;
        }
        Ok(())
    }
}

/// Nearest-rank percentile of sorted samples.
fn percentile(sorted: &[f64], pct: f64) -> f64 {
    let rank = ((pct / 100.0) * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

/// Runs `op` `iterations` times, timing each call.
pub fn measure<F: FnMut()>(operation: &str, iterations: usize, note: &str, mut op: F) -> BenchReport {
    let samples: Vec<f64> = (0..iterations.max(1))
        .map(|_| {
            let start = Instant::now();
            op();
            start.elapsed().as_secs_f64() * 1e6
        })
        .collect();
    BenchReport::from_samples(operation, &samples, note)
}
