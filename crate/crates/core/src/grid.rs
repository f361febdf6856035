//! Evaluation of independent grid points, in parallel when the `parallel`
//! feature is enabled. Output order always matches input order.

/// Maps `f` over `points` with the default strategy for this build.
pub fn map_points<T, R, F>(points: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_points_parallel(points, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_points_sequential(points, f)
    }
}

pub fn map_points_sequential<T, R, F>(points: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    points.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_points_parallel<T, R, F>(points: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    points.par_iter().map(f).collect()
}

/// `count` points from `min` to `max` inclusive, evenly spaced or log-spaced.
pub fn spaced(min: f64, max: f64, count: usize, log: bool) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![min],
        _ => {
            let last = (count - 1) as f64;
            (0..count)
                .map(|i| {
                    if i == count - 1 {
                        return max;
                    }
                    let s = i as f64 / last;
                    if log {
                        (min.ln() + s * (max.ln() - min.ln())).exp()
                    } else {
                        min + s * (max - min)
                    }
                })
                .collect()
        }
    }
}
