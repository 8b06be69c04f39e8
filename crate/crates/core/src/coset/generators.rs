use serde::{Deserialize, Serialize};

use super::blocks::heisenberg_annihilated;
use crate::superalgebra::{AlgebraElement, ChevalleyData, LatticeVec};
use crate::vacuum::{State, VacuumSpace};
use crate::{q, q_frac, Error, Result, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    Omega,
    OmegaBar,
    W3,
    W3Bar,
}

impl GeneratorKind {
    pub fn weight(self) -> u32 {
        match self {
            GeneratorKind::Omega | GeneratorKind::OmegaBar => 2,
            GeneratorKind::W3 | GeneratorKind::W3Bar => 3,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            GeneratorKind::Omega => "omega",
            GeneratorKind::OmegaBar => "omega_bar",
            GeneratorKind::W3 => "W3",
            GeneratorKind::W3Bar => "W3_bar",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub root: LatticeVec,
    pub kind: GeneratorKind,
    pub state: State,
}

/// Generators of the commutant attached to the positive even roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub generators: Vec<Generator>,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn states(&self) -> Vec<State> {
        self.generators.iter().map(|g| g.state.clone()).collect()
    }

    /// Generators attached to a single root.
    pub fn for_root(&self, root: &LatticeVec) -> Vec<&Generator> {
        self.generators.iter().filter(|g| &g.root == root).collect()
    }

    pub fn get(&self, kind: GeneratorKind, root: &LatticeVec) -> Option<&Generator> {
        self.generators.iter().find(|g| g.kind == kind && &g.root == root)
    }
}

/// Expression builder: sums of coefficient × mode words applied to `𝟙`.
struct Terms<'a> {
    space: &'a VacuumSpace,
    acc: State,
}

impl<'a> Terms<'a> {
    fn new(space: &'a VacuumSpace) -> Self {
        Terms { space, acc: State::zero() }
    }

    fn add(&mut self, c: Q, word: &[(&AlgebraElement, i32)]) -> Result<&mut Self> {
        let w: Vec<(AlgebraElement, i32)> = word.iter().map(|(a, n)| ((*a).clone(), *n)).collect();
        self.acc.add_scaled(&self.space.straighten_elements(&w)?, &c);
        Ok(self)
    }
}

fn long_omega(space: &VacuumSpace, h: &AlgebraElement, e: &AlgebraElement, f: &AlgebraElement) -> Result<State> {
    let k = space.level();
    let mut t = Terms::new(space);
    t.add(q(-1), &[(h, -1), (h, -1)])?.add(q(2 * k), &[(e, -1), (f, -1)])?.add(q(-k), &[(h, -2)])?;
    Ok(t.acc.scaled(&q_frac(1, 2 * k * (k + 2))))
}

/// Weight-three vector
/// `top·k²h(−3) + 3·scale·k·h(−2)h(−1) + cube·h(−1)³ − pair·k·h(−1)a(−1)b(−1)
/// + mixed·k²(a(−2)b(−1) − a(−1)b(−2))`.
#[allow(clippy::too_many_arguments)]
fn cubic(
    space: &VacuumSpace,
    h: &AlgebraElement,
    a: &AlgebraElement,
    b: &AlgebraElement,
    top: i64,
    scale: i64,
    cube: i64,
    pair: i64,
    mixed: i64,
) -> Result<State> {
    let k = space.level();
    let s = scale;
    let mut t = Terms::new(space);
    t.add(q(top * k * k), &[(h, -3)])?
        .add(q(3 * s * k), &[(h, -2), (h, -1)])?
        .add(q(cube), &[(h, -1), (h, -1), (h, -1)])?
        .add(q(-pair * k), &[(h, -1), (a, -1), (b, -1)])?
        .add(q(mixed * k * k), &[(a, -2), (b, -1)])?
        .add(q(-mixed * k * k), &[(a, -1), (b, -2)])?;
    Ok(t.acc)
}

fn root_generators(space: &VacuumSpace, c: &ChevalleyData) -> Result<Vec<Generator>> {
    let alg = space.algebra();
    let k = space.level();
    let h = &c.h;
    let e = alg.basis_element(c.e_pos);
    let f = alg.basis_element(c.e_neg);
    let mut out = Vec::new();
    let mut push = |kind: GeneratorKind, state: State| {
        out.push(Generator { name: format!("{}{}", kind.tag(), c.root), root: c.root.clone(), kind, state });
    };
    if c.is_long() {
        push(GeneratorKind::Omega, long_omega(space, h, &e, &f)?);
        if let Some((xp, xm)) = c.odd {
            let xp = alg.basis_element(xp);
            let xm = alg.basis_element(xm);
            let mut t = Terms::new(space);
            t.add(q(-1), &[(h, -1), (h, -1)])?.add(q(4 * k), &[(&xp, -1), (&xm, -1)])?.add(q(-2 * k), &[(h, -2)])?;
            push(GeneratorKind::OmegaBar, t.acc.clone());
            push(GeneratorKind::W3, cubic(space, h, &e, &f, 1, 1, 2, 6, 3)?);
            // h(3) only sees the h(−3) term and the mixed odd terms; the
            // balance forces 2k² on h(−3) (a single k² leaves −6k³·𝟙)
            push(GeneratorKind::W3Bar, cubic(space, h, &xp, &xm, 2, 1, 1, 6, 6)?);
        } else {
            push(GeneratorKind::W3, cubic(space, h, &e, &f, 1, 1, 2, 6, 3)?);
        }
    } else {
        let mut t = Terms::new(space);
        t.add(q(-2 * k), &[(h, -2)])?.add(q(-1), &[(h, -1), (h, -1)])?.add(q(4 * k), &[(&e, -1), (&f, -1)])?;
        push(GeneratorKind::Omega, t.acc.scaled(&q_frac(1, 8 * k * (k + 1))));
        push(GeneratorKind::W3, cubic(space, h, &e, &f, 4, 2, 2, 12, 12)?);
    }
    Ok(out)
}

/// Builds every displayed generator of the commutant and checks that each
/// is killed by all nonnegative Heisenberg modes.
pub fn parafermion_generators(space: &VacuumSpace) -> Result<GeneratorSet> {
    if space.cutoff() < 3 {
        return Err(Error::CutoffExceeded { requested: 3, cutoff: space.cutoff() });
    }
    let alg = space.algebra();
    let mut generators = Vec::new();
    for c in alg.chevalley() {
        generators.extend(root_generators(space, c)?);
    }
    let expected = alg.dim() - alg.rank();
    if generators.len() != expected {
        return Err(Error::InternalConsistency(format!(
            "{} generators built, expected dim g − dim h = {expected}",
            generators.len()
        )));
    }
    for g in &generators {
        if g.state.weight() != Some(g.kind.weight()) || g.state.is_truncated() {
            return Err(Error::InternalConsistency(format!(
                "{} is not homogeneous of weight {}",
                g.name,
                g.kind.weight()
            )));
        }
        if let Some((h, m)) = heisenberg_annihilated(space, &g.state, g.kind.weight()) {
            return Err(Error::InternalConsistency(format!("{} is not annihilated by {}({m})", g.name, alg.label(h))));
        }
    }
    Ok(GeneratorSet { generators })
}

/// Seeds of the generation statement for `V(k,0)(0)`: `h_i(−1)𝟙`,
/// `e_{−α}(−2)e_α(−1)𝟙` for even positive α and
/// `x_{−α/2}(−2)x_{α/2}(−1)𝟙` for long α with an odd half.
pub fn charge_zero_seeds(space: &VacuumSpace) -> Vec<(String, State)> {
    let alg = space.algebra();
    let mut out = Vec::new();
    for &h in alg.cartan() {
        out.push((format!("{}(-1)", alg.label(h)), space.generator(h, 1)));
    }
    for c in alg.chevalley() {
        out.push((format!("e{}(-2)e{}(-1)", c.root.neg(), c.root), space.straighten(&[(c.e_neg, -2), (c.e_pos, -1)])));
        if let Some((xp, xm)) = c.odd {
            out.push((format!("x-{}(-2)x+{}(-1)", c.root, c.root), space.straighten(&[(xm, -2), (xp, -1)])));
        }
    }
    out
}
