//! Kernel-fixability gadgets: a NOR circuit for a DNF formula whose output
//! feeds a directed triangle.
//!
//! Each variable is an input block whose kernels encode its value: vertices
//! at even positions of the block carry the value, odd positions its
//! negation. A clause gate reads the negations of its literals, so it is the
//! conjunction of the literals; the output chain computes the formula.

use num_rational::Ratio;

use crate::batch::first_unfixed;
use crate::error::{Error, Result, MAX_EXHAUSTIVE_VERTICES};
use crate::kernelfix::{find_kernel, word_fix_fraction};
use crate::network::{apply_word, is_fixed_point, update_vertex, Config, NetworkKind, Word};
use crate::set::VertexSet;

use super::{expect_count, Builder, Correspondence, Dnf, Literal, ReductionInstance, Source, Target};

/// Largest variable count the verifier sweeps.
const MAX_VERIFY_VARIABLES: usize = 20;

/// Circuit structure of a kernel-fixability gadget.
#[derive(Debug, Clone)]
pub struct CircuitLayout {
    /// The formula the circuit evaluates (with any padding variables).
    pub formula: Dnf,
    /// Input block of every variable of `formula`.
    pub blocks: Vec<Vec<usize>>,
    /// Word settling each block into one of its kernels.
    pub block_words: Vec<Vec<usize>>,
    /// Gates in topological order, ending with the negated and plain output.
    pub gates: Vec<usize>,
    pub clause_outputs: Vec<usize>,
    pub not_output: usize,
    pub output: usize,
    pub triangle: [usize; 3],
    /// Target fraction bound for the refined gadget.
    pub epsilon: Option<Ratio<u64>>,
}

impl CircuitLayout {
    /// Block words, then gates, then the triangle.
    pub fn proof_word(&self) -> Word {
        let mut w: Vec<usize> = self.block_words.concat();
        w.extend(&self.gates);
        w.extend(self.triangle);
        Word(w)
    }

    /// Block vertices set to the kernel encoding `z`; everything else zero.
    fn encode(&self, n: usize, z: u64) -> Config {
        let mut x = Config::zeros(n);
        for (var, block) in self.blocks.iter().enumerate() {
            let value = z >> var & 1 == 1;
            for (i, &v) in block.iter().enumerate() {
                x.set(v, value == (i % 2 == 0));
            }
        }
        x
    }
}

fn triangle(b: &mut Builder) -> [usize; 3] {
    let t = [b.vertex("a"), b.vertex("b"), b.vertex("c")];
    b.arc(t[0], t[1]);
    b.arc(t[1], t[2]);
    b.arc(t[2], t[0]);
    t
}

fn finish(source: Dnf, b: Builder, layout: CircuitLayout) -> Result<ReductionInstance> {
    let graph = b.graph()?;
    let word = layout.proof_word();
    Ok(ReductionInstance {
        source: Source::Dnf(source),
        target: Target {
            graph,
            set: None,
            word: Some(word),
        },
        roles: b.roles,
        layout: Some(layout),
    })
}

fn literal_name(var: usize, positive: bool) -> String {
    if positive {
        format!("x{}", var + 1)
    } else {
        format!("¬x{}", var + 1)
    }
}

/// Literal pairs `α ¬α` joined by an edge, one gate per clause reading the
/// negations of its literals, a gate `¬φ` reading every clause, `φ` reading
/// `¬φ`, and `φ -> a` on the triangle `a -> b -> c -> a`.
pub fn tautology_to_fixable(phi: &Dnf) -> Result<ReductionInstance> {
    let vars = phi.variables;
    let mut b = Builder::default();
    let blocks: Vec<Vec<usize>> = (0..vars)
        .map(|i| vec![b.vertex(literal_name(i, true)), b.vertex(literal_name(i, false))])
        .collect();
    let clause_outputs: Vec<usize> = (0..phi.clauses.len())
        .map(|j| b.vertex(format!("clause{}", j + 1)))
        .collect();
    let not_output = b.vertex("¬φ");
    let output = b.vertex("φ");
    let tri = triangle(&mut b);
    for block in &blocks {
        b.edge(block[0], block[1]);
    }
    for (j, clause) in phi.clauses.iter().enumerate() {
        for l in clause {
            let from = blocks[l.var][usize::from(l.positive)];
            b.arc(from, clause_outputs[j]);
        }
        b.arc(clause_outputs[j], not_output);
    }
    b.arc(not_output, output);
    b.arc(output, tri[0]);
    let literals: usize = phi.clauses.iter().map(Vec::len).sum();
    let graph = b.graph()?;
    expect_count("vertices", graph.n(), 2 * vars + phi.clauses.len() + 5)?;
    expect_count("arcs", graph.arc_count(), 2 * vars + literals + phi.clauses.len() + 5)?;
    let mut gates = clause_outputs.clone();
    gates.extend([not_output, output]);
    let layout = CircuitLayout {
        formula: phi.clone(),
        block_words: blocks.clone(),
        blocks,
        gates,
        clause_outputs,
        not_output,
        output,
        triangle: tri,
        epsilon: None,
    };
    finish(phi.clone(), b, layout)
}

/// Smallest `k` with `2^-k ≤ ε`.
pub fn epsilon_variables(epsilon: Ratio<u64>) -> Result<usize> {
    if *epsilon.numer() == 0 {
        return Err(Error::Domain("epsilon must be positive".into()));
    }
    let mut k = 0;
    while Ratio::new(1, 1u64 << k) > epsilon {
        k += 1;
    }
    Ok(k)
}

/// Fan-in-two NOR gate over `inputs`, built from a balanced tree.
fn nor_gate(b: &mut Builder, gates: &mut Vec<usize>, inputs: &[usize], role: String) -> usize {
    let ins: Vec<usize> = if inputs.len() <= 2 {
        inputs.to_vec()
    } else {
        let h = inputs.len().div_ceil(2);
        vec![or_node(b, gates, &inputs[..h]), or_node(b, gates, &inputs[h..])]
    };
    let v = b.vertex(role);
    for u in ins {
        b.arc(u, v);
    }
    gates.push(v);
    v
}

/// Disjunction of `inputs` as a NOR followed by a one-input NOR.
fn or_node(b: &mut Builder, gates: &mut Vec<usize>, inputs: &[usize]) -> usize {
    if inputs.len() == 1 {
        return inputs[0];
    }
    let g = nor_gate(b, gates, inputs, "gate".into());
    let v = b.vertex("gate");
    b.arc(g, v);
    gates.push(v);
    v
}

/// Requires clauses of width at most 3 and each literal at most twice. Pads
/// `φ` with `⌈-log2 ε⌉` single-literal clauses on fresh variables, turns each
/// variable into a directed 4-cycle `u -> ¬u -> u' -> ¬u' -> u`, and builds
/// the circuit from fan-in-two NOR gates. The two occurrences of a literal
/// read different copies of its negation, keeping degrees at most two.
pub fn tautology3_to_fixable_refined(phi: &Dnf, epsilon: Ratio<u64>) -> Result<ReductionInstance> {
    phi.check_refinable()?;
    let extra = epsilon_variables(epsilon)?;
    let vars = phi.variables + extra;
    let mut clauses = phi.clauses.clone();
    clauses.extend((phi.variables..vars).map(|v| vec![Literal::pos(v)]));
    let psi = Dnf::new(vars, clauses)?;
    let mut b = Builder::default();
    let blocks: Vec<Vec<usize>> = (0..vars)
        .map(|i| {
            let name = if i < phi.variables {
                format!("x{}", i + 1)
            } else {
                format!("w{}", i - phi.variables + 1)
            };
            vec![
                b.vertex(name.clone()),
                b.vertex(format!("¬{name}")),
                b.vertex(format!("{name}'")),
                b.vertex(format!("¬{name}'")),
            ]
        })
        .collect();
    for block in &blocks {
        for i in 0..4 {
            b.arc(block[i], block[(i + 1) % 4]);
        }
    }
    let mut used = vec![[0usize; 2]; vars];
    let mut gates = Vec::new();
    let mut clause_outputs = Vec::new();
    for (j, clause) in psi.clauses.iter().enumerate() {
        let inputs: Vec<usize> = clause
            .iter()
            .map(|l| {
                // The negation of a positive literal sits at odd positions.
                let parity = usize::from(l.positive);
                let k = &mut used[l.var][parity];
                let v = blocks[l.var][parity + 2 * *k];
                *k += 1;
                v
            })
            .collect();
        clause_outputs.push(nor_gate(&mut b, &mut gates, &inputs, format!("clause{}", j + 1)));
    }
    let not_output = nor_gate(&mut b, &mut gates, &clause_outputs, "¬ψ".into());
    let output = nor_gate(&mut b, &mut gates, &[not_output], "ψ".into());
    let tri = triangle(&mut b);
    b.arc(output, tri[0]);
    let block_words = blocks.iter().map(|bl| vec![bl[1], bl[2], bl[3]]).collect();
    let layout = CircuitLayout {
        formula: psi,
        blocks,
        block_words,
        gates,
        clause_outputs,
        not_output,
        output,
        triangle: tri,
        epsilon: Some(epsilon),
    };
    let graph = b.graph()?;
    expect_count("vertices", graph.n(), 4 * vars + layout.gates.len() + 3)?;
    finish(phi.clone(), b, layout)
}

/// Outcome of checking a circuit gadget against its formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitReport {
    pub tautology: bool,
    /// The proof's word fixes every configuration.
    pub word_fixes: bool,
    /// Some falsifying assignment yields a configuration that no update
    /// outside the triangle changes, with the output at zero.
    pub witness: bool,
    /// `first_unfixed` over all configurations agrees, when within range.
    pub exhaustive: Option<bool>,
    pub max_in_degree: usize,
    pub max_out_degree: usize,
    pub oriented: bool,
    /// Fraction of configurations fixed by the proof's word (exact, when
    /// within range) and the lower bound implied by the circuit sweep.
    pub fraction: Option<Ratio<u64>>,
    pub fraction_lower_bound: Ratio<u64>,
}

impl CircuitReport {
    pub fn correspondence(&self) -> Correspondence {
        Correspondence {
            source: self.tautology,
            target: self.word_fixes,
        }
    }
}

/// Checks the circuit: structure (gates read only inputs and earlier gates,
/// blocks are closed and settle into kernels), gate values for every
/// assignment, the proof's word on every assignment and triangle state, and
/// the non-fixability witness for every falsifying assignment.
pub fn verify_circuit(inst: &ReductionInstance) -> Result<CircuitReport> {
    let layout = inst
        .layout
        .as_ref()
        .ok_or_else(|| Error::Internal("instance has no circuit layout".into()))?;
    let g = &inst.target.graph;
    let n = g.n();
    let phi = &layout.formula;
    if phi.variables > MAX_VERIFY_VARIABLES {
        return Err(Error::TooLarge {
            n: phi.variables,
            limit: MAX_VERIFY_VARIABLES,
        });
    }
    let broken = |what: &str| Err(Error::Internal(format!("circuit structure: {what}")));

    // Structure.
    let mut known = VertexSet::empty(n);
    for block in &layout.blocks {
        let set = VertexSet::from_vertices(n, block.iter().copied());
        if !g.in_neighbours_of_set(&set).is_subset(&set) {
            return broken("an input block reads outside itself");
        }
        known.union_with(&set);
    }
    for &v in &layout.gates {
        if !g.in_neighbours(v).is_subset(&known) {
            return broken("a gate reads a later vertex");
        }
        known.insert(v);
    }
    let [a, b, c] = layout.triangle;
    let expect_in = |v: usize, ins: &[usize]| g.in_neighbours(v) == &VertexSet::from_vertices(n, ins.iter().copied());
    if !(expect_in(a, &[layout.output, c]) && expect_in(b, &[a]) && expect_in(c, &[b])) {
        return broken("the triangle is not attached as required");
    }
    if layout.gates.last() != Some(&layout.output) {
        return broken("the output is not the last gate");
    }

    // Every block settles into a kernel encoding under its word.
    for (block, word) in layout.blocks.iter().zip(&layout.block_words) {
        let set = VertexSet::from_vertices(n, block.iter().copied());
        let (h, map) = g.induced(&set);
        let local: Vec<usize> = word
            .iter()
            .map(|v| map.iter().position(|m| m == v).expect("block word stays in block"))
            .collect();
        for mask in 0u64..1 << h.n() {
            let y = apply_word(&h, NetworkKind::Kernel, &Config::from_mask(h.n(), mask), &Word(local.clone()))?;
            let value = y.get(map.iter().position(|&m| m == block[0]).expect("first vertex"));
            let encodes = block.iter().enumerate().all(|(i, v)| {
                let p = map.iter().position(|m| m == v).expect("block vertex");
                y.get(p) == (value == (i % 2 == 0))
            });
            if !encodes {
                return broken("a block word does not settle into a kernel encoding");
            }
        }
    }

    let word = layout.proof_word();
    let gate_word = Word(layout.gates.clone());
    let tri_word = Word(layout.triangle.to_vec());
    let mut word_fixes = true;
    let mut witness = false;
    let mut satisfied = 0u64;
    let no_kernel_on_triangle = {
        let (h, _) = g.induced(&VertexSet::from_vertices(n, layout.triangle));
        find_kernel(&h)?.is_none()
    };
    for z in 0u64..1 << phi.variables {
        let truth = phi.eval(z);
        satisfied += u64::from(truth);
        let x = layout.encode(n, z);
        let settled = apply_word(g, NetworkKind::Kernel, &x, &gate_word)?;
        for (j, &out) in layout.clause_outputs.iter().enumerate() {
            if settled.get(out) != phi.eval_clause(j, z) {
                return Err(Error::Internal(format!("clause {} gate disagrees at z = {z:b}", j + 1)));
            }
        }
        if settled.get(layout.not_output) == truth || settled.get(layout.output) != truth {
            return Err(Error::Internal(format!("output gates disagree at z = {z:b}")));
        }
        let mut holds = true;
        for tri in 0u64..8 {
            let mut start = x.clone();
            let mut rest = settled.clone();
            for (i, &v) in layout.triangle.iter().enumerate() {
                start.set(v, tri >> i & 1 == 1);
                rest.set(v, tri >> i & 1 == 1);
            }
            let y = apply_word(g, NetworkKind::Kernel, &start, &word)?;
            if !is_fixed_point(g, NetworkKind::Kernel, &y) {
                word_fixes = false;
            }
            if !truth {
                // Updates outside the triangle leave the witness unchanged.
                let still = (0..n)
                    .filter(|v| !layout.triangle.contains(v))
                    .all(|v| update_vertex(g, NetworkKind::Kernel, &rest, v).is_ok_and(|r| r == rest));
                let y = apply_word(g, NetworkKind::Kernel, &rest, &tri_word)?;
                holds &= still && !rest.get(layout.output) && !is_fixed_point(g, NetworkKind::Kernel, &y);
            }
        }
        if !truth {
            if !(holds && no_kernel_on_triangle) {
                return Err(Error::Internal(format!("witness invariant fails at z = {z:b}")));
            }
            witness = true;
        }
    }
    if word_fixes == witness {
        return Err(Error::Internal("circuit sweep is inconclusive".into()));
    }
    let exhaustive = if n <= MAX_EXHAUSTIVE_VERTICES {
        Some(first_unfixed(g, NetworkKind::Kernel, &word)?.is_none())
    } else {
        None
    };
    if exhaustive.is_some_and(|e| e != word_fixes) {
        return Err(Error::Internal("exhaustive sweep disagrees with the circuit sweep".into()));
    }
    let fraction = if n <= MAX_EXHAUSTIVE_VERTICES {
        Some(word_fix_fraction(g, NetworkKind::Kernel, &word)?)
    } else {
        None
    };
    let oriented = g.arcs().all(|(u, v)| !g.has_arc(v, u));
    Ok(CircuitReport {
        tautology: phi.is_tautology(),
        word_fixes,
        witness,
        exhaustive,
        max_in_degree: (0..n).map(|v| g.in_degree(v)).max().unwrap_or(0),
        max_out_degree: (0..n).map(|v| g.out_degree(v)).max().unwrap_or(0),
        oriented,
        fraction,
        fraction_lower_bound: Ratio::new(satisfied, 1u64 << phi.variables),
    })
}
