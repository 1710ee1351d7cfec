//! Embedded Dormand–Prince 5(4) integrator with continuous output.
//!
//! Both second-order problems in this crate (the auxiliary length-scale
//! equation and the classical equation of motion) are nonstiff planar
//! systems, so the state is fixed to two components. Accepted steps store
//! the quartic interpolation polynomial, which lets a solution be sampled
//! anywhere inside the integration span after the fact.

use crate::error::{Error, Result};

pub type State = [f64; 2];

// Dormand-Prince 5(4) tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// Difference between the 5th- and embedded 4th-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

// Weights of the quartic continuous extension.
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

const SAFETY: f64 = 0.9;
const MIN_SCALE: f64 = 0.2;
const MAX_SCALE: f64 = 5.0;
const MAX_STEPS: usize = 2_000_000;

/// One accepted step with its interpolation coefficients.
#[derive(Debug, Clone)]
struct StepRecord {
    t: f64,
    h: f64,
    cont: [State; 5],
}

/// Continuously evaluable solution of an initial value problem.
#[derive(Debug, Clone)]
pub struct DenseSolution {
    t_start: f64,
    t_end: f64,
    steps: Vec<StepRecord>,
}

impl DenseSolution {
    pub fn span(&self) -> (f64, f64) {
        (self.t_start, self.t_end)
    }

    /// Interpolated state at any t inside the span.
    pub fn eval(&self, t: f64) -> Result<State> {
        if !t.is_finite() || t < self.t_start || t > self.t_end {
            return Err(Error::OutOfDomain {
                t,
                start: self.t_start,
                end: self.t_end,
            });
        }
        // Last step whose start lies at or before t.
        let idx = self
            .steps
            .partition_point(|s| s.t <= t)
            .saturating_sub(1);
        let step = &self.steps[idx];
        let theta = ((t - step.t) / step.h).clamp(0.0, 1.0);
        let om = 1.0 - theta;
        let c = &step.cont;
        let mut out = [0.0; 2];
        for i in 0..2 {
            out[i] = c[0][i] + theta * (c[1][i] + om * (c[2][i] + theta * (c[3][i] + om * c[4][i])));
        }
        Ok(out)
    }
}

/// Integrates dy/dt = f(t, y) from t_start to t_end (t_end > t_start).
///
/// `accept` vetoes states outside the problem domain (for example a length
/// scale touching zero); a veto aborts with `BlowUp` at the last good time.
pub fn integrate<F>(
    f: F,
    t_start: f64,
    t_end: f64,
    y0: State,
    rtol: f64,
    atol: f64,
    accept: Option<&dyn Fn(&State) -> bool>,
) -> Result<DenseSolution>
where
    F: Fn(f64, &State) -> State,
{
    if !(t_start.is_finite() && t_end.is_finite() && t_end > t_start) {
        return Err(Error::InvalidParameter {
            name: "t_end",
            message: format!("integration span [{t_start}, {t_end}] is empty"),
        });
    }
    let span = t_end - t_start;
    let h_min = 1e-14 * span.max(t_start.abs());

    let mut t = t_start;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let mut h = initial_step(&f, t, &y, &k1, rtol, atol).min(span);
    let mut steps = Vec::new();

    for _ in 0..MAX_STEPS {
        if t >= t_end {
            return Ok(DenseSolution {
                t_start,
                t_end,
                steps,
            });
        }
        h = h.min(t_end - t);
        if h < h_min {
            return Err(Error::StepFailure { t, h });
        }

        let k2 = f(t + C2 * h, &comb(&y, h, &[(A21, &k1)]));
        let k3 = f(t + C3 * h, &comb(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(t + C4 * h, &comb(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = f(
            t + C5 * h,
            &comb(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = f(
            t + h,
            &comb(
                &y,
                h,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            ),
        );
        let y_new = comb(
            &y,
            h,
            &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
        );
        let k7 = f(t + h, &y_new);

        let mut err = 0.0f64;
        for i in 0..2 {
            let e = h
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = atol + rtol * y[i].abs().max(y_new[i].abs());
            err += (e / sc).powi(2);
        }
        err = (err / 2.0).sqrt();

        if !err.is_finite() {
            // A stage left the domain; retry with a much smaller step.
            h *= 0.1;
            continue;
        }

        if err <= 1.0 {
            let dy = sub(&y_new, &y);
            let mut cont4 = [0.0; 2];
            for i in 0..2 {
                cont4[i] = h
                    * (D1 * k1[i]
                        + D3 * k3[i]
                        + D4 * k4[i]
                        + D5 * k5[i]
                        + D6 * k6[i]
                        + D7 * k7[i]);
            }
            let cont = [
                y,
                dy,
                sub(&scale(h, &k1), &dy),
                sub(&dy, &[h * k7[0] + (h * k1[0] - dy[0]), h * k7[1] + (h * k1[1] - dy[1])]),
                cont4,
            ];
            steps.push(StepRecord { t, h, cont });

            if let Some(check) = accept {
                if !check(&y_new) {
                    return Err(Error::BlowUp { last_t: t });
                }
            }
            t += h;
            y = y_new;
            k1 = k7; // first-same-as-last
            h *= (SAFETY * err.powf(-0.2)).clamp(MIN_SCALE, MAX_SCALE);
        } else {
            h *= (SAFETY * err.powf(-0.2)).clamp(MIN_SCALE, 1.0);
        }
    }
    Err(Error::StepFailure { t, h })
}

/// Crude but scale-aware first step guess.
fn initial_step<F>(f: &F, t: f64, y: &State, k1: &State, rtol: f64, atol: f64) -> f64
where
    F: Fn(f64, &State) -> State,
{
    let d0 = norm(y, y, rtol, atol);
    let d1 = norm(k1, y, rtol, atol);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    let y1 = comb(y, h0, &[(1.0, k1)]);
    let k2 = f(t + h0, &y1);
    let d2 = norm(&sub(&k2, k1), y, rtol, atol) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0).min(h1)
}

fn norm(v: &State, scale_ref: &State, rtol: f64, atol: f64) -> f64 {
    let mut s = 0.0;
    for i in 0..2 {
        let sc = atol + rtol * scale_ref[i].abs();
        s += (v[i] / sc).powi(2);
    }
    (s / 2.0).sqrt()
}

fn comb(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for &(a, k) in terms {
        out[0] += h * a * k[0];
        out[1] += h * a * k[1];
    }
    out
}

fn sub(a: &State, b: &State) -> State {
    [a[0] - b[0], a[1] - b[1]]
}

fn scale(s: f64, a: &State) -> State {
    [s * a[0], s * a[1]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_over_many_periods() {
        let omega = 3.0f64;
        let sol = integrate(
            |_t, y| [y[1], -omega * omega * y[0]],
            0.0,
            20.0,
            [1.0, 0.0],
            1e-10,
            1e-12,
            None,
        )
        .unwrap();
        for &t in &[0.5, 3.25, 10.0, 19.9] {
            let [q, v] = sol.eval(t).unwrap();
            assert!((q - (omega * t).cos()).abs() < 1e-7, "q at {t}");
            assert!((v + omega * (omega * t).sin()).abs() < 1e-6, "v at {t}");
        }
    }

    #[test]
    fn dense_output_error_tracks_the_tolerance() {
        // A broken interpolant would plateau near the raw step error
        // regardless of rtol; the correct one follows it down.
        for (rtol, bound) in [(1e-6, 5e-5), (1e-9, 5e-8), (1e-12, 5e-11)] {
            let sol = integrate(
                |t: f64, _y| [t.cos(), -t.sin()],
                0.0,
                20.0,
                [0.0, 1.0],
                rtol,
                rtol * 1e-3,
                None,
            )
            .unwrap();
            let mut worst = 0.0f64;
            for i in 0..2000 {
                let t = 20.0 * (i as f64 + 0.5) / 2000.0;
                let [a, b] = sol.eval(t).unwrap();
                worst = worst.max((a - t.sin()).abs()).max((b - t.cos()).abs());
            }
            assert!(worst < bound, "rtol {rtol:.0e}: dense error {worst:.3e}");
        }
    }

    #[test]
    fn dense_output_is_continuous_across_step_joints() {
        let sol = integrate(
            |t, y| [y[1], -y[0] / (t * t)],
            1.0,
            50.0,
            [1.0, 0.0],
            1e-9,
            1e-12,
            None,
        )
        .unwrap();
        for step in &sol.steps[1..] {
            let before = sol.eval(step.t - 1e-12).unwrap();
            let after = sol.eval(step.t + 1e-12).unwrap();
            assert!((before[0] - after[0]).abs() < 1e-9);
        }
    }

    #[test]
    fn exponential_decay_matches_closed_form() {
        let sol = integrate(
            |_t, y| [-y[0], -2.0 * y[1]],
            0.0,
            5.0,
            [1.0, 1.0],
            1e-10,
            1e-13,
            None,
        )
        .unwrap();
        let [a, b] = sol.eval(3.7).unwrap();
        assert!((a - (-3.7f64).exp()).abs() < 1e-10);
        assert!((b - (-7.4f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn out_of_span_evaluation_errors() {
        let sol = integrate(|_t, y| [y[1], -y[0]], 0.0, 1.0, [1.0, 0.0], 1e-8, 1e-10, None).unwrap();
        assert!(matches!(sol.eval(1.5), Err(Error::OutOfDomain { .. })));
        assert!(matches!(sol.eval(-0.1), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn domain_guard_reports_blow_up() {
        // y' = -1: crosses zero at t = 1 and the guard rejects it.
        let res = integrate(
            |_t, _y| [-1.0, 0.0],
            0.0,
            5.0,
            [1.0, 0.0],
            1e-9,
            1e-12,
            Some(&|y: &State| y[0] > 0.0),
        );
        match res {
            Err(Error::BlowUp { last_t }) => assert!(last_t < 1.0),
            other => panic!("expected blow-up, got {other:?}"),
        }
    }

    #[test]
    fn empty_span_is_rejected() {
        assert!(integrate(|_t, y| *y, 1.0, 1.0, [1.0, 0.0], 1e-9, 1e-12, None).is_err());
    }
}
