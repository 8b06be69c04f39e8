//! Dense supermatrices over ℚ acting on a ℤ₂-graded coordinate space.

use num_traits::{One, Zero};

use super::Parity;
use crate::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperMatrix {
    pub(crate) entries: Vec<Vec<Q>>,
}

impl SuperMatrix {
    pub fn zeros(d: usize) -> Self {
        SuperMatrix { entries: vec![vec![Q::zero(); d]; d] }
    }

    pub fn unit(d: usize, a: usize, b: usize) -> Self {
        let mut m = Self::zeros(d);
        m.entries[a][b] = Q::one();
        m
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, a: usize, b: usize) -> &Q {
        &self.entries[a][b]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|x| x.is_zero())
    }

    pub fn scaled(&self, s: &Q) -> Self {
        SuperMatrix { entries: self.entries.iter().map(|r| r.iter().map(|x| x * s).collect()).collect() }
    }

    pub fn add_scaled(&mut self, s: &Q, other: &SuperMatrix) {
        for (r, o) in self.entries.iter_mut().zip(&other.entries) {
            for (x, y) in r.iter_mut().zip(o) {
                *x += s * y;
            }
        }
    }

    pub fn mul(&self, other: &SuperMatrix) -> SuperMatrix {
        let d = self.size();
        let mut out = Self::zeros(d);
        for i in 0..d {
            for (l, x) in self.entries[i].iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let y = &other.entries[l][j];
                    if !y.is_zero() {
                        out.entries[i][j] += x * y;
                    }
                }
            }
        }
        out
    }

    /// `XY − (−1)^{|X||Y|} YX`.
    pub fn super_bracket(&self, px: Parity, other: &SuperMatrix, py: Parity) -> SuperMatrix {
        let mut out = self.mul(other);
        let s = if px.is_odd() && py.is_odd() { Q::one() } else { -Q::one() };
        out.add_scaled(&s, &other.mul(self));
        out
    }

    pub fn supertrace(&self, coord_parity: &[Parity]) -> Q {
        let mut s = Q::zero();
        for (i, p) in coord_parity.iter().enumerate() {
            match p {
                Parity::Even => s += &self.entries[i][i],
                Parity::Odd => s -= &self.entries[i][i],
            }
        }
        s
    }

    /// `P·Xᵀ·P⁻¹` for a diagonal sign matrix `P`.
    pub fn conjugate_transpose_by_signs(&self, signs: &[i32]) -> SuperMatrix {
        let d = self.size();
        let mut out = Self::zeros(d);
        for a in 0..d {
            for b in 0..d {
                let x = &self.entries[b][a];
                if !x.is_zero() {
                    out.entries[a][b] = if signs[a] * signs[b] < 0 { -x } else { x.clone() };
                }
            }
        }
        out
    }

    pub fn parity(&self, coord_parity: &[Parity]) -> Option<Parity> {
        let mut found: Option<Parity> = None;
        for (a, row) in self.entries.iter().enumerate() {
            for (b, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let p = coord_parity[a] + coord_parity[b];
                match found {
                    None => found = Some(p),
                    Some(q) if q != p => return None,
                    _ => {}
                }
            }
        }
        found
    }
}

/// Coordinate data for a defining representation `C^{p|q}` equipped with an
/// even supersymmetric bilinear form.
#[derive(Clone, Debug)]
pub(crate) struct Realization {
    pub parity: Vec<Parity>,
    /// ε-coordinates of each coordinate vector's Cartan weight.
    pub weight: Vec<Vec<i32>>,
    pub form: Vec<Vec<Q>>,
    /// Diagonal of the sign matrix defining the anti-involution.
    pub eta_signs: Vec<i32>,
    pub rank: usize,
}

impl Realization {
    /// `C^{1|2n}` with coordinates `(v₀ | e₁..eₙ, f₁..fₙ)`, form
    /// `B(v₀,v₀) = 1`, `B(eᵢ,fᵢ) = −B(fᵢ,eᵢ) = 1`.
    pub fn osp(n: usize) -> Self {
        let d = 1 + 2 * n;
        let mut parity = vec![Parity::Even];
        parity.extend(std::iter::repeat_n(Parity::Odd, 2 * n));
        let mut weight = vec![vec![0; n]];
        for sign in [1, -1] {
            for i in 0..n {
                let mut w = vec![0; n];
                w[i] = sign;
                weight.push(w);
            }
        }
        let mut form = vec![vec![Q::zero(); d]; d];
        form[0][0] = Q::one();
        for i in 0..n {
            form[1 + i][1 + n + i] = Q::one();
            form[1 + n + i][1 + i] = -Q::one();
        }
        let mut eta_signs = vec![1; 1 + n];
        eta_signs.extend(std::iter::repeat_n(-1, n));
        Realization { parity, weight, form, eta_signs, rank: n }
    }

    /// `sp(2) ≅ sl2` inside `gl(0|2)`.
    pub fn sl2() -> Self {
        let r = Self::osp(1);
        Realization {
            parity: r.parity[1..].to_vec(),
            weight: r.weight[1..].to_vec(),
            form: r.form[1..].iter().map(|row| row[1..].to_vec()).collect(),
            eta_signs: r.eta_signs[1..].to_vec(),
            rank: 1,
        }
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    /// `H_i = E_{eᵢeᵢ} − E_{fᵢfᵢ}`; dual to the ε-basis.
    pub fn cartan(&self) -> Vec<SuperMatrix> {
        let d = self.dim();
        (0..self.rank)
            .map(|i| {
                let mut m = SuperMatrix::zeros(d);
                for (c, w) in self.weight.iter().enumerate() {
                    if w[i] != 0 && w.iter().filter(|&&x| x != 0).count() == 1 {
                        m.entries[c][c] = Q::from_integer(w[i].into());
                    }
                }
                m
            })
            .collect()
    }

    /// Linear constraints `B(Xu,v) + (−1)^{|X||u|} B(u,Xv) = 0` on a
    /// combination `X = Σ c_j E_{a_j b_j}` of matrix units.
    pub fn preservation_constraints(&self, units: &[(usize, usize)], parity: Parity) -> Vec<Vec<Q>> {
        let d = self.dim();
        let mut eqs = Vec::new();
        for u in 0..d {
            for v in 0..d {
                let sign = if parity.is_odd() && self.parity[u].is_odd() { -Q::one() } else { Q::one() };
                let row: Vec<Q> = units
                    .iter()
                    .map(|&(a, b)| {
                        let mut x = Q::zero();
                        if b == u {
                            x += &self.form[a][v];
                        }
                        if b == v {
                            x += &sign * &self.form[u][a];
                        }
                        x
                    })
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    eqs.push(row);
                }
            }
        }
        eqs
    }

    pub fn preserves_form(&self, m: &SuperMatrix, parity: Parity) -> bool {
        let d = self.dim();
        let units: Vec<(usize, usize)> = (0..d).flat_map(|a| (0..d).map(move |b| (a, b))).collect();
        let coeffs: Vec<Q> = units.iter().map(|&(a, b)| m.entries[a][b].clone()).collect();
        self.preservation_constraints(&units, parity)
            .iter()
            .all(|eq| eq.iter().zip(&coeffs).fold(Q::zero(), |acc, (e, c)| acc + e * c).is_zero())
    }
}
