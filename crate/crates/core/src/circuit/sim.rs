use super::{lit_value, Circuit};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("expected {expected} free initial values, got {got}")]
    InitSize { expected: usize, got: usize },
    #[error("cycle {cycle}: expected {expected} input values, got {got}")]
    StimulusSize { cycle: usize, expected: usize, got: usize },
}

/// Result of a concrete simulation run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimTrace {
    /// Latch values at the start of each completed cycle.
    pub states: Vec<Vec<bool>>,
    /// Value of the bad literal in each completed cycle.
    pub bad: Vec<bool>,
    /// First cycle whose inputs violated a constraint; the run stops before it.
    pub constraint_violation: Option<usize>,
}

impl SimTrace {
    /// True when every cycle met the constraints and the last cycle is bad.
    pub fn ends_bad(&self) -> bool {
        self.constraint_violation.is_none() && self.bad.last() == Some(&true)
    }
}

/// Cycle-accurate simulation.
///
/// `init` supplies values for the latches whose reset is undefined, in latch order.
pub fn simulate(c: &Circuit, init: &[bool], stimulus: &[Vec<bool>]) -> Result<SimTrace, SimError> {
    let free = c.latches.iter().filter(|l| l.init.is_none()).count();
    if init.len() != free {
        return Err(SimError::InitSize { expected: free, got: init.len() });
    }
    for (cycle, v) in stimulus.iter().enumerate() {
        if v.len() != c.inputs.len() {
            return Err(SimError::StimulusSize { cycle, expected: c.inputs.len(), got: v.len() });
        }
    }
    let mut free_values = init.iter();
    let mut state: Vec<bool> = c
        .latches
        .iter()
        .map(|l| l.init.unwrap_or_else(|| *free_values.next().unwrap()))
        .collect();
    let mut trace = SimTrace { states: Vec::new(), bad: Vec::new(), constraint_violation: None };
    for (cycle, inputs) in stimulus.iter().enumerate() {
        let values = c.eval(&state, inputs);
        if !c.constraints.iter().all(|&l| lit_value(&values, l)) {
            trace.constraint_violation = Some(cycle);
            break;
        }
        trace.states.push(state.clone());
        trace.bad.push(lit_value(&values, c.bad));
        state = c.latches.iter().map(|l| lit_value(&values, l.next)).collect();
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::AigBuilder;

    #[test]
    fn toggle_latch() {
        let mut b = AigBuilder::new();
        let q = b.latch("q", Some(false));
        b.set_next(q, !q);
        let c = b.finish().unwrap();
        let t = simulate(&c, &[], &vec![vec![]; 3]).unwrap();
        assert_eq!(t.states, vec![vec![false], vec![true], vec![false]]);
    }

    #[test]
    fn constraint_truncates() {
        let mut b = AigBuilder::new();
        let x = b.input("x");
        let q = b.latch("q", None);
        b.set_next(q, x);
        b.constraint(!x);
        b.bad(q);
        let c = b.finish().unwrap();
        let t = simulate(&c, &[true], &[vec![false], vec![true], vec![false]]).unwrap();
        assert_eq!(t.bad, vec![true]);
        assert_eq!(t.constraint_violation, Some(1));
        assert!(!t.ends_bad());
    }

    #[test]
    fn dimension_errors() {
        let mut b = AigBuilder::new();
        let x = b.input("x");
        let q = b.latch("q", None);
        b.set_next(q, x);
        let c = b.finish().unwrap();
        assert_eq!(simulate(&c, &[], &[]), Err(SimError::InitSize { expected: 1, got: 0 }));
        assert_eq!(
            simulate(&c, &[false], &[vec![]]),
            Err(SimError::StimulusSize { cycle: 0, expected: 1, got: 0 })
        );
    }
}
