"""Shared enumeration oracles: definitional set computations over small
finite fields, kept independent of the canonical-subspace code paths they
check."""

import numpy as np

from diagramchase.fields import PrimeField


F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)


def vectors(field, dim):
    return list(field.iter_vectors(dim))


def as_set(vecs):
    return {tuple(int(x) for x in v) for v in vecs}


def subspace_set(sub):
    """All elements of a subspace by enumerating coefficient combinations."""
    out = set()
    for coeffs in sub.field.iter_vectors(sub.dim):
        v = sub.field.reduce(coeffs @ sub.basis) if sub.dim else sub.field.vector(
            [0] * sub.ambient_dim)
        out.add(tuple(int(x) for x in v))
    return out


def brute_kernel_set(m):
    return {tuple(int(x) for x in v) for v in m.field.iter_vectors(m.cols)
            if not any(m.apply(v))}


def brute_image_set(m):
    return {tuple(int(x) for x in m.apply(v)) for v in m.field.iter_vectors(m.cols)}


def relation_set(rel):
    """All (left, right) pairs of a relation, via subspace enumeration."""
    out = set()
    for v in subspace_set(rel.space):
        out.add((v[: rel.left_dim], v[rel.left_dim:]))
    return out


def brute_compose_set(r, s, field):
    """Definitional composition by scanning all (b, a, c) triples."""
    out = set()
    for b in field.iter_vectors(r.left_dim):
        for c in field.iter_vectors(s.right_dim):
            if any(r.member(b, a) and s.member(a, c)
                   for a in field.iter_vectors(r.right_dim)):
                out.add((tuple(int(x) for x in b), tuple(int(x) for x in c)))
    return out
