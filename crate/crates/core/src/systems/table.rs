use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::forms::energy_closed_form;
use super::{AngularCase, QuantumNumbers, SpectrumEntry, SystemError, SystemParams, UnitSystem};

/// A grid point whose energy could not be computed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailedEntry {
    #[serde(flatten)]
    pub qn: QuantumNumbers,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SpectrumTable {
    /// Ascending in energy; ties broken by `(n, ñ, m)`.
    pub entries: Vec<SpectrumEntry>,
    pub failures: Vec<FailedEntry>,
}

/// Closed-form energies over `0..=n_max × 0..=ntilde_max × m_list`.
///
/// Entries are evaluated in parallel but the output order does not depend
/// on scheduling.
pub fn spectrum_table(
    params: &SystemParams,
    n_max: i64,
    ntilde_max: i64,
    m_list: &[i32],
    units: &UnitSystem,
    case: AngularCase,
) -> Result<SpectrumTable, SystemError> {
    if n_max < 0 || ntilde_max < 0 {
        return Err(SystemError::Precondition(format!(
            "grid bounds must be non-negative, got n_max = {n_max}, ntilde_max = {ntilde_max}"
        )));
    }
    if m_list.is_empty() {
        return Err(SystemError::Precondition("empty m list".into()));
    }
    params.validate()?;
    units.validate()?;

    let grid: Vec<QuantumNumbers> = (0..=n_max as u32)
        .flat_map(|n| {
            (0..=ntilde_max as u32).flat_map(move |nt| {
                m_list
                    .iter()
                    .map(move |&m| QuantumNumbers::new(n, nt, m).with_case(case))
            })
        })
        .collect();

    let results: Vec<Result<SpectrumEntry, FailedEntry>> = grid
        .par_iter()
        .map(|&qn| {
            energy_closed_form(params, qn, units).map_err(|e| FailedEntry {
                qn,
                error: e.to_string(),
            })
        })
        .collect();

    let mut table = SpectrumTable::default();
    for r in results {
        match r {
            Ok(e) => table.entries.push(e),
            Err(f) => table.failures.push(f),
        }
    }
    let key = |q: &QuantumNumbers| (q.n, q.ntilde, q.m);
    table.entries.sort_by(|a, b| {
        a.energy
            .total_cmp(&b.energy)
            .then(key(&a.qn).cmp(&key(&b.qn)))
    });
    table.failures.sort_by_key(|f| key(&f.qn));
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const AU: UnitSystem = UnitSystem::ATOMIC;

    #[test]
    fn hydrogen_grid() {
        let p = SystemParams::CoulombRing {
            z: 1.0,
            b: 0.0,
            c: 0.0,
        };
        let t = spectrum_table(&p, 1, 1, &[0], &AU, AngularCase::Ii).unwrap();
        let e: Vec<f64> = t.entries.iter().map(|e| e.energy).collect();
        let expect = [-0.5, -0.125, -0.125, -1.0 / 18.0];
        assert_eq!(e.len(), 4);
        for (a, b) in e.iter().zip(expect) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
        // degenerate pair ordered (n, ñ) lexicographically
        assert_eq!((t.entries[1].qn.n, t.entries[1].qn.ntilde), (0, 1));
        assert_eq!((t.entries[2].qn.n, t.entries[2].qn.ntilde), (1, 0));
        assert!(t.failures.is_empty());
    }

    #[test]
    fn oscillator_grid() {
        let p = SystemParams::RingOscillator { a: 1.0, b: 0.0 };
        let t = spectrum_table(&p, 1, 0, &[0], &AU, AngularCase::Ii).unwrap();
        let r2 = 2f64.sqrt();
        assert_abs_diff_eq!(t.entries[0].energy, 3.0 / r2, epsilon = 1e-14);
        assert_abs_diff_eq!(t.entries[1].energy, 7.0 / r2, epsilon = 1e-14);
    }

    #[test]
    fn negative_bounds_rejected() {
        let p = SystemParams::CoulombRing {
            z: 1.0,
            b: 0.0,
            c: 0.0,
        };
        assert!(matches!(
            spectrum_table(&p, -1, -1, &[0], &AU, AngularCase::Ii),
            Err(SystemError::Precondition(_))
        ));
    }

    #[test]
    fn failures_are_flagged_not_fatal() {
        // (m² + B)² < C² only for m = 0
        let p = SystemParams::CoulombRing {
            z: 1.0,
            b: 0.5,
            c: 2.0,
        };
        let t = spectrum_table(&p, 0, 0, &[0, 2], &AU, AngularCase::Ii).unwrap();
        assert_eq!(t.entries.len(), 1);
        assert_eq!(t.entries[0].qn.m, 2);
        assert_eq!(t.failures.len(), 1);
        assert_eq!(t.failures[0].qn.m, 0);
    }
}
