//! Built-in group corpora used by the campaigns.

use crate::spec::{Constructor, GroupSpec, Operand};

#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub spec: GroupSpec,
}

fn entry(name: &str, c: Constructor) -> Entry {
    Entry {
        name: name.to_string(),
        spec: c.into(),
    }
}

fn op(c: Constructor) -> Box<Operand> {
    Box::new(Operand::Bare(c))
}

pub fn sym(n: usize) -> Constructor {
    Constructor::Sym { n }
}

pub fn alt(n: usize) -> Constructor {
    Constructor::Alt { n }
}

pub fn cyclic(n: usize) -> Constructor {
    Constructor::Cyclic { n }
}

pub fn dihedral(n: usize) -> Constructor {
    Constructor::Dihedral { n }
}

pub fn wreath(inner: Constructor, top: Constructor) -> Constructor {
    Constructor::Wreath {
        inner: op(inner),
        top: op(top),
    }
}

pub fn diagonal_wreath(m: usize, classes: usize, top: Constructor) -> Constructor {
    Constructor::DiagonalWreath { m, classes, top: op(top) }
}

pub fn projective_line(p: u64, special: bool) -> Constructor {
    Constructor::ProjectiveLine { p, special }
}

pub fn affine(matrix: Constructor) -> Constructor {
    Constructor::Affine { matrix: op(matrix) }
}

pub fn gl(p: u32, dim: usize) -> Constructor {
    Constructor::GeneralLinear { p, dim }
}

pub fn scalar(p: u32, dim: usize, a: u32) -> Constructor {
    Constructor::Scalar { p, dim, a }
}

pub fn monomial(p: u32, top: Constructor, t: usize) -> Constructor {
    Constructor::Monomial { p, t, top: op(top) }
}

pub fn permutation_module(p: u32, group: Constructor) -> Constructor {
    Constructor::PermutationModule { p, group: op(group) }
}

pub fn on_pairs(group: Constructor) -> Constructor {
    Constructor::OnPairs { group: op(group) }
}

pub fn row_action(group: Constructor, rows: usize) -> Constructor {
    Constructor::RowAction { group: op(group), rows }
}

/// Collineations of the Fano plane acting on its 7 points.
pub fn fano() -> GroupSpec {
    GroupSpec::Perm {
        degree: 7,
        generators: vec![vec![1, 2, 3, 4, 5, 6, 0], vec![1, 0, 5, 3, 4, 2, 6]],
    }
}

/// Transitive groups of degree at most 10.
pub fn transitive() -> Vec<Entry> {
    let mut v = vec![
        entry("Sym(2)", sym(2)),
        entry("Sym(3)", sym(3)),
        entry("C3", cyclic(3)),
        entry("Sym(4)", sym(4)),
        entry("Alt(4)", alt(4)),
        entry("C4", cyclic(4)),
        entry("D4", dihedral(4)),
        entry("V4", Constructor::KleinFour),
        entry("Sym(5)", sym(5)),
        entry("Alt(5)", alt(5)),
        entry("C5", cyclic(5)),
        entry("D5", dihedral(5)),
        entry("AGL(1,5)", affine(scalar(5, 1, 2))),
        entry("Sym(6)", sym(6)),
        entry("Alt(6)", alt(6)),
        entry("C6", cyclic(6)),
        entry("D6", dihedral(6)),
        entry("Sym(2) wr Sym(3)", wreath(sym(2), sym(3))),
        entry("Sym(3) wr Sym(2)", wreath(sym(3), sym(2))),
        entry("PGL(2,5)", projective_line(5, false)),
        entry("PSL(2,5)", projective_line(5, true)),
        entry("Sym(3) diag Sym(2)", diagonal_wreath(3, 1, sym(2))),
        entry("Sym(2) diag C3", diagonal_wreath(2, 1, cyclic(3))),
        entry("Sym(4) on pairs", on_pairs(sym(4))),
        entry("Sym(7)", sym(7)),
        entry("Alt(7)", alt(7)),
        entry("C7", cyclic(7)),
        entry("D7", dihedral(7)),
        entry("AGL(1,7)", affine(scalar(7, 1, 3))),
        entry("F21", affine(scalar(7, 1, 2))),
    ];
    v.push(Entry {
        name: "PSL(3,2)".into(),
        spec: fano(),
    });
    v.extend([
        entry("C8", cyclic(8)),
        entry("D8", dihedral(8)),
        entry("Sym(2) wr Sym(4)", wreath(sym(2), sym(4))),
        entry("Sym(4) wr Sym(2)", wreath(sym(4), sym(2))),
        entry("Sym(2) wr D4", wreath(sym(2), dihedral(4))),
        entry("PGL(2,7)", projective_line(7, false)),
        entry("PSL(2,7)", projective_line(7, true)),
        entry("AGL(3,2)", affine(gl(2, 3))),
        entry("Sym(4) diag Sym(2)", diagonal_wreath(4, 1, sym(2))),
        entry("Sym(2) diag2 Sym(2) wr Sym(2)", diagonal_wreath(2, 2, wreath(sym(2), sym(2)))),
        entry("Sym(8)", sym(8)),
        entry("Alt(8)", alt(8)),
        entry("C9", cyclic(9)),
        entry("D9", dihedral(9)),
        entry("Sym(3) wr Sym(3)", wreath(sym(3), sym(3))),
        entry("C3 wr C3", wreath(cyclic(3), cyclic(3))),
        entry("AGL(2,3)", affine(gl(3, 2))),
        entry("Sym(3) diag C3", diagonal_wreath(3, 1, cyclic(3))),
        entry("Sym(9)", sym(9)),
        entry("Alt(9)", alt(9)),
        entry("C10", cyclic(10)),
        entry("D10", dihedral(10)),
        entry("Sym(5) on pairs", on_pairs(sym(5))),
        entry("Alt(5) on pairs", on_pairs(alt(5))),
        entry("Sym(5) diag Sym(2)", diagonal_wreath(5, 1, sym(2))),
        entry("Sym(2) wr Sym(5)", wreath(sym(2), sym(5))),
        entry("Sym(5) wr Sym(2)", wreath(sym(5), sym(2))),
        entry("Sym(10)", sym(10)),
        entry("Alt(10)", alt(10)),
    ]);
    v
}

/// Primitive groups of degree at most 10 not containing the alternating group.
pub fn primitive_non_alternating() -> Vec<Entry> {
    let mut v = vec![
        entry("C5", cyclic(5)),
        entry("D5", dihedral(5)),
        entry("AGL(1,5)", affine(scalar(5, 1, 2))),
        entry("PGL(2,5)", projective_line(5, false)),
        entry("PSL(2,5)", projective_line(5, true)),
        entry("C7", cyclic(7)),
        entry("D7", dihedral(7)),
        entry("F21", affine(scalar(7, 1, 2))),
        entry("AGL(1,7)", affine(scalar(7, 1, 3))),
        entry("PGL(2,7)", projective_line(7, false)),
        entry("PSL(2,7)", projective_line(7, true)),
        entry("AGL(3,2)", affine(gl(2, 3))),
        entry("AGL(2,3)", affine(gl(3, 2))),
        entry("Sym(5) on pairs", on_pairs(sym(5))),
        entry("Alt(5) on pairs", on_pairs(alt(5))),
    ];
    v.push(Entry {
        name: "PSL(3,2)".into(),
        spec: fano(),
    });
    v
}

/// Intransitive groups whose column stabilizers fix their columns pointwise,
/// with the columns as blocks.
pub fn trivial_bottom_instances() -> Vec<(Entry, usize, usize)> {
    vec![
        (entry("Sym(3) on 2 rows", row_action(sym(3), 2)), 3, 2),
        (entry("Sym(4) on 2 rows", row_action(sym(4), 2)), 4, 2),
        (entry("Sym(5) on 2 rows", row_action(sym(5), 2)), 5, 2),
        (entry("D5 on 2 rows", row_action(dihedral(5), 2)), 5, 2),
        (entry("Sym(4) on 3 rows", row_action(sym(4), 3)), 4, 3),
        (entry("C4 on 3 rows", row_action(cyclic(4), 3)), 4, 3),
    ]
}

/// Transitive groups with blocks of size at least 5 on which the block
/// stabilizer induces at least the alternating group, and a nontrivial
/// kernel on blocks.
pub fn large_bottom_instances() -> Vec<Entry> {
    vec![
        entry("Sym(5) wr Sym(2)", wreath(sym(5), sym(2))),
        entry("Sym(5) diag Sym(2)", diagonal_wreath(5, 1, sym(2))),
        entry("Alt(5) wr C2", wreath(alt(5), cyclic(2))),
        entry("Sym(5) wr C3", wreath(sym(5), cyclic(3))),
        entry("Sym(5) diag C3", diagonal_wreath(5, 1, cyclic(3))),
        entry("Sym(7) wr Sym(2)", wreath(sym(7), sym(2))),
        entry("Sym(7) diag Sym(3)", diagonal_wreath(7, 1, sym(3))),
    ]
}

/// Small matrix groups for the repeated-module equality.
pub fn repeat_groups() -> Vec<Entry> {
    vec![
        entry("GL(2,2)", gl(2, 2)),
        entry("GL(3,2)", gl(2, 3)),
        entry("GL(2,3)", gl(3, 2)),
        entry("GF(3)^x wr Sym(2)", monomial(3, sym(2), 2)),
        entry("Sym(4) permutation module over GF(2)", permutation_module(2, sym(4))),
    ]
}

/// Linear parts of the affine groups checked against `b(V ⋊ H) = b_V(H) + 1`.
pub fn affine_linear_parts() -> Vec<Entry> {
    vec![
        entry("GL(2,2)", gl(2, 2)),
        entry("GL(3,2)", gl(2, 3)),
        entry("GL(2,3)", gl(3, 2)),
        entry("<2> in GF(5)^x", scalar(5, 1, 2)),
        entry("<3> in GF(7)^x", scalar(7, 1, 3)),
        entry("<2> in GF(7)^x", scalar(7, 1, 2)),
        entry("GF(3)^x wr Sym(2)", monomial(3, sym(2), 2)),
        entry("Sym(3) permutation module over GF(2)", permutation_module(2, sym(3))),
        entry("Sym(4) permutation module over GF(2)", permutation_module(2, sym(4))),
        entry("<2> in GF(11)^x", scalar(11, 1, 2)),
    ]
}
