//! The structured attack: Eve writes ν′_i = Σ u_{i,j}ω_j + γ′(Σ u_{i,j}ω_j)^q,
//! γ′ = Σ g_jω_j and β′_i = Σ b_{i,j}ω_j, and requires
//! ν′_sν′_t = Σ_i M^{(i)}_{s,t}β′_i for s ≥ t, compared coordinatewise in ω.
//!
//! Text format: a header `# q=.. k=.. vars=.. eqs=..`, a line
//! `# variables: name name ...`, then one equation per line written as
//! `c*x*y^2 + c*z + ... = 0` with decimal coefficients in [1, q).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::crypto::{PrivateKey, PublicKey};
use crate::error::{Error, Result};
use crate::ff::{Field, PrimeField, TowerContext};

type Big = Vec<Vec<u64>>;

/// A term c·Π x_v with the variable indices sorted (repeated for powers).
pub type Term = (u64, Vec<usize>);

/// A system of polynomial equations over F_q, each of the form Σ terms = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySystem {
    pub q: u64,
    pub k: usize,
    pub variables: Vec<String>,
    pub equations: Vec<Vec<Term>>,
}

impl PolySystem {
    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn num_equations(&self) -> usize {
        self.equations.len()
    }

    pub fn max_degree(&self) -> usize {
        self.equations
            .iter()
            .flatten()
            .map(|(_, m)| m.len())
            .max()
            .unwrap_or(0)
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// Evaluates every equation at `values` (one F_q value per variable).
    pub fn residuals(&self, values: &[u64]) -> Result<Vec<u64>> {
        if values.len() != self.variables.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} values",
                self.variables.len()
            )));
        }
        let fq = PrimeField::new(self.q)?;
        Ok(self
            .equations
            .iter()
            .map(|eq| {
                eq.iter().fold(0, |acc, (c, mono)| {
                    let v = mono.iter().fold(*c, |p, &x| fq.mul(&p, &values[x]));
                    fq.add(&acc, &v)
                })
            })
            .collect())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# q={} k={} vars={} eqs={}",
            self.q,
            self.k,
            self.num_variables(),
            self.num_equations()
        );
        let _ = writeln!(out, "# variables: {}", self.variables.join(" "));
        for eq in &self.equations {
            if eq.is_empty() {
                out.push_str("0 = 0\n");
                continue;
            }
            let terms: Vec<String> = eq
                .iter()
                .map(|(c, mono)| self.format_term(*c, mono))
                .collect();
            let _ = writeln!(out, "{} = 0", terms.join(" + "));
        }
        out
    }

    fn format_term(&self, c: u64, mono: &[usize]) -> String {
        let mut s = c.to_string();
        let mut i = 0;
        while i < mono.len() {
            let mut j = i;
            while j < mono.len() && mono[j] == mono[i] {
                j += 1;
            }
            s.push('*');
            s.push_str(&self.variables[mono[i]]);
            if j - i > 1 {
                let _ = write!(s, "^{}", j - i);
            }
            i = j;
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Format(format!("polynomial system: {msg}"));
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| bad("empty input"))?;
        let fields: BTreeMap<&str, &str> = header
            .trim_start_matches('#')
            .split_whitespace()
            .filter_map(|kv| kv.split_once('='))
            .collect();
        let get = |key: &str| -> Result<u64> {
            fields
                .get(key)
                .ok_or_else(|| bad(&format!("header lacks {key}")))?
                .parse()
                .map_err(|_| bad("bad header value"))
        };
        let (q, k, vars, eqs) = (
            get("q")?,
            get("k")? as usize,
            get("vars")? as usize,
            get("eqs")? as usize,
        );
        PrimeField::new(q)?;
        let var_line = lines.next().ok_or_else(|| bad("missing variables line"))?;
        let variables: Vec<String> = var_line
            .strip_prefix("# variables:")
            .ok_or_else(|| bad("missing variables line"))?
            .split_whitespace()
            .map(str::to_string)
            .collect();
        if variables.len() != vars {
            return Err(bad("variable count does not match header"));
        }
        let lookup: BTreeMap<&str, usize> = variables
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut equations = Vec::with_capacity(eqs);
        for line in lines {
            let lhs = line
                .trim()
                .strip_suffix("= 0")
                .ok_or_else(|| bad("equation must end with '= 0'"))?
                .trim();
            let mut terms = Vec::new();
            for term in lhs.split(" + ") {
                let mut factors = term.trim().split('*');
                let c: u64 = factors
                    .next()
                    .unwrap_or("")
                    .parse()
                    .map_err(|_| bad("bad coefficient"))?;
                let mut mono = Vec::new();
                for f in factors {
                    let (name, exp) = match f.split_once('^') {
                        Some((n, e)) => (n, e.parse::<usize>().map_err(|_| bad("bad exponent"))?),
                        None => (f, 1),
                    };
                    let idx = *lookup
                        .get(name)
                        .ok_or_else(|| bad(&format!("unknown variable {name}")))?;
                    mono.extend(std::iter::repeat_n(idx, exp));
                }
                mono.sort_unstable();
                let c = c % q;
                if c != 0 {
                    terms.push((c, mono));
                }
            }
            equations.push(terms);
        }
        if equations.len() != eqs {
            return Err(bad("equation count does not match header"));
        }
        Ok(Self {
            q,
            k,
            variables,
            equations,
        })
    }
}

/// The degree-4 system and its quadratic reduction.
#[derive(Debug, Clone)]
pub struct StructuredSystem {
    pub quartic: PolySystem,
    pub quadratic: PolySystem,
}

/// Variable layout of the degree-4 system: u_{i,j} (k²), g_j (n), b_{i,j} (n²).
struct Layout {
    k: usize,
    n: usize,
}

impl Layout {
    fn u(&self, i: usize, j: usize) -> usize {
        i * self.k + j
    }

    fn g(&self, j: usize) -> usize {
        self.k * self.k + j
    }

    fn b(&self, i: usize, j: usize) -> usize {
        self.k * self.k + self.n + i * self.n + j
    }

    fn total(&self) -> usize {
        self.k * self.k + self.n + self.n * self.n
    }

    fn names(&self) -> Vec<String> {
        let mut v = Vec::with_capacity(self.total());
        for i in 1..=self.k {
            for j in 1..=self.k {
                v.push(format!("u_{i}_{j}"));
            }
        }
        v.extend((1..=self.n).map(|j| format!("g_{j}")));
        for i in 1..=self.n {
            for j in 1..=self.n {
                v.push(format!("b_{i}_{j}"));
            }
        }
        v
    }
}

/// Polynomial with coefficients in F_{q^n}.
type ExtPoly = BTreeMap<Vec<usize>, Big>;

fn poly_mul(ctx: &TowerContext, a: &ExtPoly, b: &ExtPoly) -> ExtPoly {
    let big = ctx.big();
    let mut out: ExtPoly = BTreeMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut m = ma.clone();
            m.extend_from_slice(mb);
            m.sort_unstable();
            let prod = big.mul(ca, cb);
            let slot = out.entry(m).or_insert_with(|| big.zero());
            *slot = big.add(slot, &prod);
        }
    }
    out.retain(|_, c| !big.is_zero(c));
    out
}

fn poly_add(ctx: &TowerContext, a: &mut ExtPoly, b: &ExtPoly, negate: bool) {
    let big = ctx.big();
    for (m, c) in b {
        let c = if negate { big.neg(c) } else { c.clone() };
        let slot = a.entry(m.clone()).or_insert_with(|| big.zero());
        *slot = big.add(slot, &c);
    }
    a.retain(|_, c| !big.is_zero(c));
}

/// Builds the system of Eve's equations with ω the flattening basis of `ctx`
/// (so ω_1, …, ω_k span the subfield F_{q^k}).
pub fn structured_attack_emit(public: &PublicKey, ctx: &TowerContext) -> Result<StructuredSystem> {
    let (k, n) = (public.k(), public.n());
    if ctx.k() != k || ctx.n() != n || ctx.q() != public.q() {
        return Err(Error::InvalidInput(
            "representation does not match the public key".into(),
        ));
    }
    let big = ctx.big();
    let layout = Layout { k, n };
    let omega: Vec<Big> = (0..n)
        .map(|i| {
            let mut e = vec![0u64; n];
            e[i] = 1;
            ctx.unflatten(&e)
        })
        .collect();
    let omega_q: Vec<Big> = omega[..k].iter().map(|w| ctx.frobenius_big(w, 1)).collect();
    let g_poly: ExtPoly = (0..n)
        .map(|j| (vec![layout.g(j)], omega[j].clone()))
        .collect();
    let nu_prime: Vec<ExtPoly> = (0..k)
        .map(|i| {
            let x: ExtPoly = (0..k)
                .map(|j| (vec![layout.u(i, j)], omega[j].clone()))
                .collect();
            let y: ExtPoly = (0..k)
                .map(|j| (vec![layout.u(i, j)], omega_q[j].clone()))
                .collect();
            let mut p = x;
            poly_add(ctx, &mut p, &poly_mul(ctx, &g_poly, &y), false);
            p
        })
        .collect();

    let mut equations = Vec::with_capacity(n * k * (k + 1) / 2);
    for s in 0..k {
        for t in 0..=s {
            let mut eq = poly_mul(ctx, &nu_prime[s], &nu_prime[t]);
            let mut rhs: ExtPoly = BTreeMap::new();
            for (i, m) in public.matrices().iter().enumerate() {
                let c = m[(s, t)];
                if c == 0 {
                    continue;
                }
                for (j, w) in omega.iter().enumerate() {
                    rhs.insert(
                        vec![layout.b(i, j)],
                        big.mul(&ctx.embed(&ctx.small().from_prime(c)), w),
                    );
                }
            }
            poly_add(ctx, &mut eq, &rhs, true);
            for l in 0..n {
                let terms: Vec<Term> = eq
                    .iter()
                    .filter_map(|(m, c)| {
                        let x = ctx.flatten(c)[l];
                        (x != 0).then(|| (x, m.clone()))
                    })
                    .collect();
                equations.push(terms);
            }
        }
    }
    let quartic = PolySystem {
        q: public.q(),
        k,
        variables: layout.names(),
        equations,
    };
    let quadratic = quadratic_reduction(&quartic, &layout);
    Ok(StructuredSystem { quartic, quadratic })
}

/// Quadratic layout: uu_{s,t,ℓ,r} (k⁴), gg_{i,j} (n²), b_{i,j} (n²), g_j (n).
fn quadratic_reduction(sys: &PolySystem, layout: &Layout) -> PolySystem {
    let (k, n) = (layout.k, layout.n);
    let kk = k * k;
    let uu = |x: usize, y: usize| x * kk + y;
    let gg = |a: usize, b: usize| kk * kk + a * n + b;
    let bq = |i: usize, j: usize| kk * kk + n * n + i * n + j;
    let gq = |j: usize| kk * kk + 2 * n * n + j;
    let mut names = Vec::with_capacity(kk * kk + 2 * n * n + n);
    for x in 0..kk {
        for y in 0..kk {
            names.push(format!(
                "uu_{}_{}_{}_{}",
                x / k + 1,
                x % k + 1,
                y / k + 1,
                y % k + 1
            ));
        }
    }
    for a in 1..=n {
        for b in 1..=n {
            names.push(format!("gg_{a}_{b}"));
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            names.push(format!("b_{i}_{j}"));
        }
    }
    names.extend((1..=n).map(|j| format!("g_{j}")));

    let classify = |mono: &[usize]| -> Vec<usize> {
        let us: Vec<usize> = mono.iter().copied().filter(|&v| v < kk).collect();
        let gs: Vec<usize> = mono
            .iter()
            .copied()
            .filter(|&v| v >= kk && v < kk + n)
            .map(|v| v - kk)
            .collect();
        let bs: Vec<usize> = mono
            .iter()
            .copied()
            .filter(|&v| v >= kk + n)
            .map(|v| v - kk - n)
            .collect();
        let mut out = Vec::new();
        if us.len() == 2 {
            out.push(uu(us[0], us[1]));
        }
        match gs.len() {
            1 => out.push(gq(gs[0])),
            2 => out.push(gg(gs[0], gs[1])),
            _ => {}
        }
        out.extend(bs.iter().map(|&b| bq(b / n, b % n)));
        out.sort_unstable();
        out
    };
    let equations = sys
        .equations
        .iter()
        .map(|eq| {
            let mut merged: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
            for (c, m) in eq {
                let slot = merged.entry(classify(m)).or_insert(0);
                *slot = (*slot + c) % sys.q;
            }
            merged
                .into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(m, c)| (c, m))
                .collect()
        })
        .collect();
    PolySystem {
        q: sys.q,
        k,
        variables: names,
        equations,
    }
}

/// The planted assignment of the degree-4 system: u_{i,j} = A_{j,i}, g = coordinates of γ,
/// b_{i,j} = E_{j,i}.
pub fn structured_ground_truth(private: &PrivateKey) -> Vec<u64> {
    let (k, n) = (private.k(), private.n());
    let layout = Layout { k, n };
    let mut values = vec![0u64; layout.total()];
    for i in 0..k {
        for j in 0..k {
            values[layout.u(i, j)] = private.a()[(j, i)];
        }
    }
    let gamma = private.ctx().flatten(&private.ctx().gamma());
    for j in 0..n {
        values[layout.g(j)] = gamma[j];
    }
    for i in 0..n {
        for j in 0..n {
            values[layout.b(i, j)] = private.e()[(j, i)];
        }
    }
    values
}

/// The quadratic system's assignment induced by a degree-4 assignment.
pub fn quadratic_assignment(q: u64, k: usize, quartic: &[u64]) -> Vec<u64> {
    let n = 2 * k;
    let kk = k * k;
    let fq = PrimeField::new(q).expect("validated modulus");
    let (u, rest) = quartic.split_at(kk);
    let (g, b) = rest.split_at(n);
    let mut out = Vec::with_capacity(kk * kk + 2 * n * n + n);
    for x in 0..kk {
        for y in 0..kk {
            out.push(fq.mul(&u[x], &u[y]));
        }
    }
    for a in 0..n {
        for c in 0..n {
            out.push(fq.mul(&g[a], &g[c]));
        }
    }
    out.extend_from_slice(b);
    out.extend_from_slice(g);
    out
}

/// Substitutes the private key's ground truth into both forms of the system;
/// true iff every residual is zero.
pub fn structured_attack_verify(private: &PrivateKey, system: &StructuredSystem) -> Result<bool> {
    let truth = structured_ground_truth(private);
    let quad = quadratic_assignment(private.q(), private.k(), &truth);
    let zero = |r: Vec<u64>| r.iter().all(|&x| x == 0);
    Ok(zero(system.quartic.residuals(&truth)?) && zero(system.quadratic.residuals(&quad)?))
}
