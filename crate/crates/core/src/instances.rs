//! Deterministic CNF generators for tests and benchmarks: uniform random
//! 3-CNF, pigeonhole principles, planted mixing-network preimage problems,
//! planted parity systems, and adder equivalence miters.
//!
//! Every generator is a pure function of its arguments; the same seed always
//! yields the byte-identical formula.

use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::formula::{Clause, Formula, Literal};

fn formula_from(num_vars: u32, clauses: &[Vec<i32>]) -> Formula {
    let mut f = Formula::new(num_vars as usize);
    for ints in clauses {
        f.add_clause(Clause::new(ints.iter().map(|&i| Literal::from_dimacs(i)).collect()));
    }
    f
}

/// In-place Fisher-Yates with the shared generator, so shuffles are part of
/// the instance's deterministic derivation.
fn shuffle<T, R: Rng + ?Sized>(items: &mut [T], rng: &mut R) {
    for i in (1..items.len()).rev() {
        let j = rng.random_range(0..=i);
        items.swap(i, j);
    }
}

/// Renames variables by a random permutation and shuffles the clause order.
/// The instance stays logically identical but presents a different initial
/// branching order, which is what distinguishes seeded copies of a fixed
/// combinatorial structure.
fn permute_and_shuffle<R: Rng + ?Sized>(num_vars: u32, clauses: &mut Vec<Vec<i32>>, rng: &mut R) {
    let mut names: Vec<i32> = (1..=num_vars as i32).collect();
    shuffle(&mut names, rng);
    for clause in clauses.iter_mut() {
        for lit in clause.iter_mut() {
            *lit = lit.signum() * names[(lit.unsigned_abs() - 1) as usize];
        }
    }
    shuffle(clauses, rng);
}

/// Uniform random 3-CNF: each clause picks three distinct variables and
/// independent signs. Clauses may repeat across draws; no clause is a
/// tautology (its variables are distinct).
pub fn random_3cnf(num_vars: u32, num_clauses: usize, seed: u64) -> Formula {
    assert!(num_vars >= 3, "a 3-CNF clause needs three distinct variables");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut clauses = Vec::with_capacity(num_clauses);
    for _ in 0..num_clauses {
        let mut vars: Vec<u32> = Vec::with_capacity(3);
        while vars.len() < 3 {
            let v = rng.random_range(1..=num_vars);
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        let clause: Vec<i32> =
            vars.iter().map(|&v| if rng.random::<bool>() { v as i32 } else { -(v as i32) }).collect();
        clauses.push(clause);
    }
    formula_from(num_vars, &clauses)
}

/// [`random_3cnf`] with the clause count derived from a clauses-per-variable
/// ratio (rounded to the nearest integer).
pub fn random_3cnf_with_ratio(num_vars: u32, clause_ratio: f64, seed: u64) -> Formula {
    let num_clauses = libm::round(clause_ratio * f64::from(num_vars)) as usize;
    random_3cnf(num_vars, num_clauses, seed)
}

/// The pigeonhole principle: `pigeons` objects into `holes` slots, no slot
/// shared. Unsatisfiable iff `pigeons > holes`, and famously hard to refute
/// by resolution as the size grows.
pub fn pigeonhole(pigeons: u32, holes: u32) -> Formula {
    assert!(pigeons >= 1 && holes >= 1);
    let var = |p: u32, h: u32| ((p - 1) * holes + h) as i32;
    let mut clauses = Vec::new();
    for p in 1..=pigeons {
        clauses.push((1..=holes).map(|h| var(p, h)).collect::<Vec<i32>>());
    }
    for h in 1..=holes {
        for p1 in 1..=pigeons {
            for p2 in (p1 + 1)..=pigeons {
                clauses.push(alloc::vec![-var(p1, h), -var(p2, h)]);
            }
        }
    }
    formula_from(pigeons * holes, &clauses)
}

/// [`pigeonhole`] behind a random variable renaming and clause shuffle, for
/// seed-diversified copies of the same refutation problem.
pub fn pigeonhole_permuted(pigeons: u32, holes: u32, seed: u64) -> Formula {
    let canonical = pigeonhole(pigeons, holes);
    let mut clauses: Vec<Vec<i32>> =
        canonical.clauses().iter().map(|c| c.lits().iter().map(|l| l.to_dimacs()).collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let num_vars = canonical.num_vars() as u32;
    permute_and_shuffle(num_vars, &mut clauses, &mut rng);
    formula_from(num_vars, &clauses)
}

struct GateBuilder {
    next_var: u32,
    clauses: Vec<Vec<i32>>,
}

impl GateBuilder {
    fn new(inputs: u32) -> GateBuilder {
        GateBuilder { next_var: inputs, clauses: Vec::new() }
    }

    fn fresh(&mut self) -> i32 {
        self.next_var += 1;
        self.next_var as i32
    }

    fn and(&mut self, a: i32, b: i32) -> i32 {
        let v = self.fresh();
        self.clauses.push(alloc::vec![-v, a]);
        self.clauses.push(alloc::vec![-v, b]);
        self.clauses.push(alloc::vec![v, -a, -b]);
        v
    }

    fn or(&mut self, a: i32, b: i32) -> i32 {
        let v = self.fresh();
        self.clauses.push(alloc::vec![v, -a]);
        self.clauses.push(alloc::vec![v, -b]);
        self.clauses.push(alloc::vec![-v, a, b]);
        v
    }

    fn xor(&mut self, a: i32, b: i32) -> i32 {
        let v = self.fresh();
        self.clauses.push(alloc::vec![-v, a, b]);
        self.clauses.push(alloc::vec![-v, -a, -b]);
        self.clauses.push(alloc::vec![v, -a, b]);
        self.clauses.push(alloc::vec![v, a, -b]);
        v
    }

    /// Three-input majority, the carry function of a full adder.
    fn majority(&mut self, a: i32, b: i32, c: i32) -> i32 {
        let v = self.fresh();
        self.clauses.push(alloc::vec![-v, a, b]);
        self.clauses.push(alloc::vec![-v, a, c]);
        self.clauses.push(alloc::vec![-v, b, c]);
        self.clauses.push(alloc::vec![v, -a, -b]);
        self.clauses.push(alloc::vec![v, -a, -c]);
        self.clauses.push(alloc::vec![v, -b, -c]);
        v
    }

    fn unit(&mut self, lit: i32) {
        self.clauses.push(alloc::vec![lit]);
    }
}

/// Preimage problem for a toy mixing network, in the spirit of finding a hash
/// input: `input_bits` unknowns pass through `rounds` layers where each bit
/// becomes `bit XOR (neighbor AND far-neighbor) XOR round-constant`, and the
/// final layer is pinned to the image of a secret random input. Always
/// satisfiable (the secret input is a witness), with little of the structure
/// branching heuristics usually exploit.
pub fn toy_hash_preimage(input_bits: u32, rounds: u32, seed: u64) -> Formula {
    assert!(input_bits >= 1);
    let b = input_bits as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut builder = GateBuilder::new(input_bits);

    let mut state: Vec<i32> = (1..=input_bits as i32).collect();
    let mut values: Vec<bool> = (0..b).map(|_| rng.random()).collect();

    for _ in 0..rounds {
        let mut next_state = Vec::with_capacity(b);
        let mut next_values = Vec::with_capacity(b);
        for i in 0..b {
            let near = (i + 1) % b;
            let far = (i + 5) % b;
            let constant: bool = rng.random();

            let and_var = builder.and(state[near], state[far]);
            let and_val = values[near] && values[far];

            // t = state[i] XOR and XOR constant; the constant folds into the
            // polarity of t in the XOR gate's clauses.
            let t = builder.fresh();
            let t_lit = if constant { -t } else { t };
            builder.clauses.push(alloc::vec![-t_lit, state[i], and_var]);
            builder.clauses.push(alloc::vec![-t_lit, -state[i], -and_var]);
            builder.clauses.push(alloc::vec![t_lit, -state[i], and_var]);
            builder.clauses.push(alloc::vec![t_lit, state[i], -and_var]);

            next_state.push(t);
            next_values.push(values[i] ^ and_val ^ constant);
        }
        state = next_state;
        values = next_values;
    }

    for (lit, value) in state.iter().zip(&values) {
        builder.unit(if *value { *lit } else { -*lit });
    }
    formula_from(builder.next_var, &builder.clauses)
}

/// A planted linear system over GF(2), dressed as CNF: `equations` random
/// three-variable parities whose right-hand sides come from a hidden random
/// assignment. Satisfiable by construction, but clause learning sees only the
/// 4-clause encodings of each parity, a classically reset-friendly shape.
pub fn parity_obfuscated(num_vars: u32, equations: usize, seed: u64) -> Formula {
    assert!(num_vars >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let secret: Vec<bool> = (0..num_vars).map(|_| rng.random()).collect();
    let mut clauses = Vec::with_capacity(equations * 4);
    for _ in 0..equations {
        let mut vars: Vec<u32> = Vec::with_capacity(3);
        while vars.len() < 3 {
            let v = rng.random_range(1..=num_vars);
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        let (a, b, c) = (vars[0] as i32, vars[1] as i32, vars[2] as i32);
        let parity = secret[vars[0] as usize - 1]
            ^ secret[vars[1] as usize - 1]
            ^ secret[vars[2] as usize - 1];
        // a XOR b XOR c = parity, as the four clauses ruling out the
        // assignments of the wrong parity.
        let sign = if parity { 1 } else { -1 };
        clauses.push(alloc::vec![sign * a, b, c]);
        clauses.push(alloc::vec![sign * a, -b, -c]);
        clauses.push(alloc::vec![-sign * a, b, -c]);
        clauses.push(alloc::vec![-sign * a, -b, c]);
    }
    formula_from(num_vars, &clauses)
}

/// Equivalence miter of two `width`-bit adders built from different gate
/// decompositions (half-adder chains versus direct majority carries). The
/// miter asserts that some sum or carry bit differs, so the formula is
/// unsatisfiable. The seed renames variables and shuffles clauses only; the
/// underlying circuit pair is fixed by `width`.
pub fn adder_miter(width: u32, seed: u64) -> Formula {
    assert!(width >= 1);
    let w = width as i32;
    let a = |i: i32| i + 1; // inputs 1..=w
    let b = |i: i32| w + i + 1; // inputs w+1..=2w
    let mut builder = GateBuilder::new(2 * width);

    // Ripple carry from half-adder pieces: s = (a^b)^c, carry = ab | (a^b)c.
    let mut sums_a = Vec::new();
    let mut carry_a = {
        let x = builder.xor(a(0), b(0));
        sums_a.push(x);
        builder.and(a(0), b(0))
    };
    for i in 1..w {
        let x = builder.xor(a(i), b(i));
        sums_a.push(builder.xor(x, carry_a));
        let g = builder.and(a(i), b(i));
        let p = builder.and(x, carry_a);
        carry_a = builder.or(g, p);
    }

    // Same function with carries as direct majority gates.
    let mut sums_b = Vec::new();
    let mut carry_b = {
        let y = builder.xor(a(0), b(0));
        sums_b.push(y);
        builder.and(a(0), b(0))
    };
    for i in 1..w {
        let y = builder.xor(a(i), b(i));
        sums_b.push(builder.xor(y, carry_b));
        carry_b = builder.majority(a(i), b(i), carry_b);
    }

    // Some output must differ; equivalence makes this unsatisfiable.
    let mut diffs: Vec<i32> = sums_a
        .iter()
        .zip(&sums_b)
        .map(|(&sa, &sb)| builder.xor(sa, sb))
        .collect();
    diffs.push(builder.xor(carry_a, carry_b));
    builder.clauses.push(diffs);

    let num_vars = builder.next_var;
    let mut clauses = builder.clauses;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    permute_and_shuffle(num_vars, &mut clauses, &mut rng);
    formula_from(num_vars, &clauses)
}
