//! Integer polynomials in the four ε-coordinates and the BGG divided
//! difference operators `∂_i f = (f − s_i f) / α_i`.

use std::collections::HashMap;

use crate::error::{Error, Result};

pub type Monomial = [u8; 4];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: HashMap<Monomial, i128>,
}

fn add_term(terms: &mut HashMap<Monomial, i128>, m: Monomial, c: i128) -> Result<()> {
    let entry = terms.entry(m).or_insert(0);
    *entry = entry.checked_add(c).ok_or(Error::Overflow)?;
    if *entry == 0 {
        terms.remove(&m);
    }
    Ok(())
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i128) -> Self {
        let mut p = Self::zero();
        if c != 0 {
            p.terms.insert([0; 4], c);
        }
        p
    }

    /// The linear form `Σ c_k x_k`.
    pub fn linear(c: [i128; 4]) -> Self {
        let mut p = Self::zero();
        for (k, &ck) in c.iter().enumerate() {
            if ck != 0 {
                let mut m = [0; 4];
                m[k] = 1;
                p.terms.insert(m, ck);
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> i128 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// The value of a degree-zero polynomial.
    pub fn constant_term(&self) -> i128 {
        self.coefficient(&[0; 4])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &i128)> {
        self.terms.iter()
    }

    pub fn is_homogeneous_of(&self, degree: usize) -> bool {
        self.terms
            .keys()
            .all(|m| m.iter().map(|&e| e as usize).sum::<usize>() == degree)
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        let mut terms = self.terms.clone();
        for (m, &c) in &other.terms {
            add_term(&mut terms, *m, c)?;
        }
        Ok(Poly { terms })
    }

    pub fn scale(&self, k: i128) -> Result<Poly> {
        let mut terms = HashMap::with_capacity(self.terms.len());
        if k != 0 {
            for (m, &c) in &self.terms {
                terms.insert(*m, c.checked_mul(k).ok_or(Error::Overflow)?);
            }
        }
        Ok(Poly { terms })
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        let mut terms = HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let m = [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]];
                add_term(&mut terms, m, ca.checked_mul(cb).ok_or(Error::Overflow)?)?;
            }
        }
        Ok(Poly { terms })
    }

    /// Exact division of every coefficient by `d`.
    pub fn div_exact(&self, d: i128) -> Result<Poly> {
        let mut terms = HashMap::with_capacity(self.terms.len());
        for (m, &c) in &self.terms {
            if c % d != 0 {
                return Err(Error::NonIntegral(format!("{c}/{d}")));
            }
            terms.insert(*m, c / d);
        }
        Ok(Poly { terms })
    }

    /// `f ∘ s_i`, the substitution `x ↦ s_i x`.
    pub fn reflect(&self, i: u8) -> Poly {
        let mut terms = HashMap::with_capacity(self.terms.len());
        for (m, &c) in &self.terms {
            let mut n = *m;
            let mut c = c;
            match i {
                1 => n.swap(0, 1),
                2 => n.swap(1, 2),
                3 => n.swap(2, 3),
                _ => {
                    n.swap(2, 3);
                    if (m[2] + m[3]) % 2 == 1 {
                        c = -c;
                    }
                }
            }
            terms.insert(n, c);
        }
        Poly { terms }
    }

    /// `∂_i f = (f − s_i f) / α_i`, evaluated monomial by monomial through
    /// the geometric-series identity for `(a^p b^q − a^q b^p) / (a − b)`.
    pub fn divided_difference(&self, i: u8) -> Result<Poly> {
        let (a, b) = match i {
            1 => (0, 1),
            2 => (1, 2),
            _ => (2, 3),
        };
        let plus = i == 4;
        let mut terms = HashMap::new();
        for (m, &c) in &self.terms {
            let (p, q) = (m[a] as i32, m[b] as i32);
            if p == q {
                continue;
            }
            let (lo, hi, base_sign) = if p > q { (q, p, 1) } else { (p, q, -1) };
            for k in 0..hi - lo {
                let ea = lo + k;
                let eb = hi - 1 - k;
                let mut sign = base_sign;
                // for x3 + x4, substitute y = −x4 in the x3 − y identity
                if plus && (q + eb) % 2 == 1 {
                    sign = -sign;
                }
                let mut n = *m;
                n[a] = ea as u8;
                n[b] = eb as u8;
                add_term(&mut terms, n, if sign > 0 { c } else { -c })?;
            }
        }
        Ok(Poly { terms })
    }

    /// `∂_w = ∂_{i_1} ⋯ ∂_{i_k}` for the word `i_1 ⋯ i_k`, last letter first.
    pub fn divided_difference_word(&self, word: &[u8]) -> Result<Poly> {
        word.iter()
            .rev()
            .try_fold(self.clone(), |f, &i| f.divided_difference(i))
    }
}
