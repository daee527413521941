/// `n` log-spaced values from `from` to `to`, both endpoints included exactly.
///
/// `n == 1` yields `[from]`; `n == 0` yields an empty grid.
pub fn log_space(from: f64, to: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![from],
        _ => {
            let (lo, hi) = (from.ln(), to.ln());
            let mut grid: Vec<f64> = (0..n)
                .map(|i| (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp())
                .collect();
            grid[0] = from;
            grid[n - 1] = to;
            grid
        }
    }
}
