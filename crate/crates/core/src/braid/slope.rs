//! The positive braid traced by the chambers of `Re(e^{−idθ/m} x)` as `θ`
//! runs once around the circle.

use std::f64::consts::PI;

use crate::rootsys::{chamber_of, RootSystem, SlopeData, WeylElement};

use super::garside::lift;
use super::{BraidError, BraidWord};

/// Minimal separation (radians) between crossing angles of different walls.
const ANGLE_TOLERANCE: f64 = 1e-7;

/// A set of walls crossed at the same angle.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossingEvent {
    pub theta: f64,
    /// Indices into `positive_roots()`.
    pub roots: Vec<usize>,
}

/// Positive roots grouped by the argument of `α(x)` modulo `π`, decided
/// exactly: `α(x)` and `β(x)` are real multiples of each other iff
/// `α(x)·conj(β(x))` is real.
fn root_classes(sd: &SlopeData) -> Vec<Vec<usize>> {
    let f = sd.field();
    let vals: Vec<_> = sd.root_system().positive_roots().iter().map(|a| sd.root_value(a)).collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'roots: for (i, v) in vals.iter().enumerate() {
        for class in classes.iter_mut() {
            let rep = &vals[class[0]];
            if f.is_real(&crate::arith::Field::mul(f, v, &f.conj(rep))) {
                class.push(i);
                continue 'roots;
            }
        }
        classes.push(vec![i]);
    }
    classes
}

/// Angles `θ` with `Re α(e^{−idθ/m} x) = 0`: `θ ≡ (m/d)(arg α(x) − π/2) mod (m/d)π`.
fn class_base_and_step(sd: &SlopeData, root: &[i64]) -> (f64, f64) {
    let (re, im) = sd.field().to_complex(&sd.root_value(root));
    let ratio = sd.m() as f64 / sd.d() as f64;
    (ratio * (im.atan2(re) - PI / 2.0), ratio * PI)
}

fn angles_in(base: f64, step: f64, lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    let j0 = ((lo - base) / step).ceil() as i64;
    (j0..).map(move |j| base + j as f64 * step).take_while(move |&t| t < hi)
}

/// Distance from `theta` to the nearest point of `base + step·ℤ`.
fn distance_to_lattice(theta: f64, base: f64, step: f64) -> f64 {
    let r = (theta - base).rem_euclid(step);
    r.min(step - r)
}

/// Sorted wall-crossing events on `[θ0, θ0 + 2π)`.
pub fn crossing_events(sd: &SlopeData, theta0: f64) -> Result<Vec<CrossingEvent>, BraidError> {
    let rs = sd.root_system();
    let mut events = Vec::new();
    for class in root_classes(sd) {
        let (base, step) = class_base_and_step(sd, &rs.positive_roots()[class[0]]);
        for end in [theta0, theta0 + 2.0 * PI] {
            if distance_to_lattice(end, base, step) < ANGLE_TOLERANCE {
                return Err(BraidError::NonGeneric(format!(
                    "theta0 = {theta0} is a crossing angle"
                )));
            }
        }
        for theta in angles_in(base, step, theta0, theta0 + 2.0 * PI) {
            events.push(CrossingEvent { theta, roots: class.clone() });
        }
    }
    events.sort_by(|a, b| a.theta.total_cmp(&b.theta));
    for pair in events.windows(2) {
        if pair[1].theta - pair[0].theta < ANGLE_TOLERANCE {
            return Err(BraidError::NonGeneric(format!(
                "walls of distinct root classes cross within {ANGLE_TOLERANCE} of θ = {}",
                pair[0].theta
            )));
        }
    }
    Ok(events)
}

/// Midpoint of the widest gap between crossing angles near `[0, 2π)`.
pub fn default_theta0(sd: &SlopeData) -> f64 {
    let rs = sd.root_system();
    let mut angles: Vec<f64> = Vec::new();
    for class in root_classes(sd) {
        let (base, step) = class_base_and_step(sd, &rs.positive_roots()[class[0]]);
        angles.extend(angles_in(base, step, -2.0 * PI, 4.0 * PI));
    }
    angles.sort_by(f64::total_cmp);
    let mut best = (f64::NEG_INFINITY, 1.0);
    for pair in angles.windows(2) {
        let mid = 0.5 * (pair[0] + pair[1]);
        if (0.0..2.0 * PI).contains(&mid) && pair[1] - pair[0] > best.0 {
            best = (pair[1] - pair[0], mid);
        }
    }
    best.1
}

/// `Re(e^{−idθ/m} x)` in coweight coordinates.
fn real_point(sd: &SlopeData, theta: f64) -> Vec<f64> {
    let phase = sd.d() as f64 * theta / sd.m() as f64;
    let (c, s) = (phase.cos(), phase.sin());
    sd.eigvec()
        .iter()
        .map(|xj| {
            let (re, im) = sd.field().to_complex(xj);
            re * c + im * s
        })
        .collect()
}

/// The chamber sequence `u_0, …, u_N` along the path, one chamber per gap
/// between consecutive crossing events.
fn chambers(sd: &SlopeData, theta0: f64, events: &[CrossingEvent]) -> Result<Vec<WeylElement>, BraidError> {
    let mut cuts = vec![theta0];
    cuts.extend(events.iter().map(|e| e.theta));
    cuts.push(theta0 + 2.0 * PI);
    cuts.windows(2)
        .map(|w| Ok(chamber_of(sd.root_system(), &real_point(sd, 0.5 * (w[0] + w[1])))?))
        .collect()
}

/// The positive braid of the slope: for every crossing event the lift of the
/// relative position of the chambers on either side.
///
/// Walls of roots whose values on `x` are real multiples of each other are
/// crossed simultaneously and contribute one block of that many letters.
pub fn slope_braid(sd: &SlopeData, theta0: f64) -> Result<BraidWord, BraidError> {
    let rs: &RootSystem = sd.root_system();
    let events = crossing_events(sd, theta0)?;
    let us = chambers(sd, theta0, &events)?;
    let mut word = BraidWord::empty(rs);
    for (k, ev) in events.iter().enumerate() {
        let block = us[k].inverse().mul(&us[k + 1]);
        if rs.length(&block) != ev.roots.len() {
            return Err(BraidError::Internal(format!(
                "crossing {} walls at θ = {} changed the chamber by an element of length {}",
                ev.roots.len(),
                ev.theta,
                rs.length(&block)
            )));
        }
        word = word.concat(&lift(rs, &block));
    }
    let expected = sd.d() as usize * rs.num_roots() / sd.m() as usize;
    if word.len() != expected || (sd.d() as usize * rs.num_roots()) % sd.m() as usize != 0 {
        return Err(BraidError::Internal(format!(
            "braid has {} letters, expected ν|Φ| = {expected}",
            word.len()
        )));
    }
    let last = us.last().expect("at least one chamber");
    let twisted = sd.w().inverse().pow(sd.d()).mul(&us[0]);
    if *last != twisted {
        return Err(BraidError::Internal("final chamber is not w^{-d} times the first".into()));
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::normal_form;

    fn sd(t: &str, d: u64, m: u64, seed: u64) -> SlopeData {
        SlopeData::new(&RootSystem::new(t.parse().unwrap()).unwrap(), d, m, seed).unwrap()
    }

    fn braid(sd: &SlopeData) -> BraidWord {
        slope_braid(sd, default_theta0(sd)).unwrap()
    }

    #[test]
    fn sl2_is_a_power_of_sigma() {
        for d in [1, 3, 5, 7] {
            let b = braid(&sd("A1", d, 2, 0));
            assert_eq!(b.letters(), vec![1; d as usize].as_slice());
        }
    }

    #[test]
    fn integer_slope_one_is_full_twist() {
        for t in ["A2", "B2", "G2", "A3"] {
            let s = sd(t, 1, 1, 0);
            let rs = s.root_system();
            let nf = normal_form(rs, &braid(&s));
            assert_eq!((nf.delta_power, nf.factors.len()), (2, 0), "{t}");
        }
    }

    #[test]
    fn a2_coxeter_slope() {
        let s = sd("A2", 1, 3, 0);
        let b = braid(&s);
        assert_eq!(b.len(), 2);
        assert_eq!(s.root_system().order(&b.image(s.root_system())), 3);
    }

    #[test]
    fn theta0_on_a_wall_is_rejected() {
        let s = sd("A1", 1, 2, 0);
        let events = crossing_events(&s, default_theta0(&s)).unwrap();
        assert!(matches!(
            slope_braid(&s, events[0].theta),
            Err(BraidError::NonGeneric(_))
        ));
    }
}
