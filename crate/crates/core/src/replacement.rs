//! Replacing per-bit inequality patterns in a cube by inequivalence predicates.
//!
//! An inequivalence group is a pair of literals `x_a[i] & !x_b[i]` (either
//! orientation) over the two copies of one register bit. A lattice node is a
//! set of replaced groups; replacing drops the two literals and adds the
//! positive predicate literal of the register pair.

use std::collections::BTreeSet;

use crate::circuit::SymmetryMap;
use crate::ic3::{Cube, LatchLit};

/// Largest group count for which the exhaustive lattice walk is attempted.
pub const MAX_EXHAUSTIVE_GROUPS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum PredMode {
    #[default]
    None,
    AllOrNothing,
    Maximal,
    Maximum,
}

impl PredMode {
    pub const ALL: [PredMode; 4] = [PredMode::None, PredMode::AllOrNothing, PredMode::Maximal, PredMode::Maximum];

    pub fn name(self) -> &'static str {
        match self {
            PredMode::None => "none",
            PredMode::AllOrNothing => "aon",
            PredMode::Maximal => "maximal",
            PredMode::Maximum => "maximum",
        }
    }
}

impl std::str::FromStr for PredMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        PredMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown predicate mode `{s}` (expected none, aon, maximal or maximum)"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InequivalenceGroup {
    /// Index into the map's group pairs.
    pub group: usize,
    pub bit: usize,
    pub positive: LatchLit,
    pub negative: LatchLit,
    /// Predicate latch of the register pair.
    pub neq: usize,
}

/// All inequality patterns of `c`. Register pairs without a predicate, or whose
/// predicate already occurs negatively in `c`, contribute nothing.
pub fn find_groups(c: &Cube, m: &SymmetryMap) -> Vec<InequivalenceGroup> {
    let mut out = Vec::new();
    for (gid, g) in m.group_pairs().iter().enumerate() {
        let Some(neq) = m.neq_latch(gid) else { continue };
        if c.value_of(neq) == Some(false) {
            continue;
        }
        for (bit, (&l, &r)) in g.left.iter().zip(&g.right).enumerate() {
            if let (Some(a), Some(b)) = (c.value_of(l), c.value_of(r)) {
                if a != b {
                    let (p, n) = if a { (l, r) } else { (r, l) };
                    out.push(InequivalenceGroup {
                        group: gid,
                        bit,
                        positive: LatchLit::new(p, true),
                        negative: LatchLit::new(n, false),
                        neq,
                    });
                }
            }
        }
    }
    out
}

/// Whether `c` holds a per-bit inequality over any paired register, with or
/// without a predicate bound to it.
pub fn has_inequality_pattern(c: &Cube, m: &SymmetryMap) -> bool {
    m.group_pairs().iter().any(|g| {
        g.left.iter().zip(&g.right).any(|(&l, &r)| match (c.value_of(l), c.value_of(r)) {
            (Some(a), Some(b)) => a != b,
            _ => false,
        })
    })
}

/// The lattice node of `c` with the groups at `selected` replaced.
pub fn replace_groups(c: &Cube, groups: &[InequivalenceGroup], selected: &[usize]) -> Cube {
    let mut drop = BTreeSet::new();
    let mut add = BTreeSet::new();
    for &i in selected {
        drop.insert(groups[i].positive);
        drop.insert(groups[i].negative);
        add.insert(LatchLit::new(groups[i].neq, true));
    }
    let lits = c.lits().iter().copied().filter(|l| !drop.contains(l)).chain(add).collect();
    Cube::new(lits).expect("groups with a negated predicate are never selected")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replacement {
    /// Cubes to block; never empty.
    pub cubes: Vec<Cube>,
    /// Lattice node of each cube, as sorted group indices.
    pub nodes: Vec<Vec<usize>>,
    pub groups: Vec<InequivalenceGroup>,
    /// Calls made to the unreachability test.
    pub tests: usize,
}

fn mask_to_set(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).collect()
}

/// Runs one replacement heuristic on `c`, which must already be known
/// unreachable. `unreachable` is the reachability test at the current frame.
pub fn predicate_replace<E>(
    c: &Cube,
    m: &SymmetryMap,
    mode: PredMode,
    mut unreachable: impl FnMut(&Cube) -> Result<bool, E>,
) -> Result<Replacement, E> {
    let groups = find_groups(c, m);
    let mut out = Replacement { cubes: vec![c.clone()], nodes: vec![Vec::new()], groups, tests: 0 };
    let count = out.groups.len();
    if count == 0 || mode == PredMode::None {
        return Ok(out);
    }
    let mut test = |sel: &[usize], tests: &mut usize| -> Result<Option<Cube>, E> {
        let cube = replace_groups(c, &out.groups, sel);
        *tests += 1;
        Ok(unreachable(&cube)?.then_some(cube))
    };
    let mut tests = 0;
    match mode {
        PredMode::None => unreachable!(),
        PredMode::AllOrNothing => {
            let all: Vec<usize> = (0..count).collect();
            if let Some(top) = test(&all, &mut tests)? {
                out.cubes = vec![top];
                out.nodes = vec![all];
            }
        }
        PredMode::Maximum if count <= MAX_EXHAUSTIVE_GROUPS => {
            let mut found: Vec<u32> = Vec::new();
            let mut level: BTreeSet<u32> = BTreeSet::from([(1u32 << count) - 1]);
            let mut cubes = Vec::new();
            while !level.is_empty() {
                let mut reachable = Vec::new();
                for &node in level.iter().rev() {
                    if node == 0 {
                        found.push(0);
                        cubes.push(c.clone());
                    } else if let Some(cube) = test(&mask_to_set(node), &mut tests)? {
                        found.push(node);
                        cubes.push(cube);
                    } else {
                        reachable.push(node);
                    }
                }
                let mut next = BTreeSet::new();
                for node in reachable {
                    for b in mask_to_set(node) {
                        let child = node & !(1 << b);
                        if !found.iter().any(|&u| child & u == child) {
                            next.insert(child);
                        }
                    }
                }
                level = next;
            }
            out.nodes = found.into_iter().map(mask_to_set).collect();
            out.cubes = cubes;
        }
        PredMode::Maximal | PredMode::Maximum => {
            let order = maximal_order(&out.groups, m);
            let mut selected: Vec<usize> = Vec::new();
            let mut best = c.clone();
            for g in order {
                let mut trial = selected.clone();
                trial.push(g);
                trial.sort_unstable();
                if let Some(cube) = test(&trial, &mut tests)? {
                    selected = trial;
                    best = cube;
                }
            }
            out.cubes = vec![best];
            out.nodes = vec![selected];
        }
    }
    out.tests = tests;
    Ok(out)
}

/// Wider registers first, then by register name, then by bit.
fn maximal_order(groups: &[InequivalenceGroup], m: &SymmetryMap) -> Vec<usize> {
    let mut order: Vec<usize> = (0..groups.len()).collect();
    order.sort_by(|&a, &b| {
        let (ga, gb) = (&m.group_pairs()[groups[a].group], &m.group_pairs()[groups[b].group]);
        gb.width().cmp(&ga.width()).then(ga.name.cmp(&gb.name)).then(groups[a].bit.cmp(&groups[b].bit))
    });
    order
}
