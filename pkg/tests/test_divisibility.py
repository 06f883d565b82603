import random
from fractions import Fraction

import pytest

from jetdiff.counting import dof
from jetdiff.divisibility import (
    AssemblyError,
    SectionCertificate,
    assemble_divisibility_system,
    build_section,
    kernel_basis,
    kernel_to_json,
    solution_dimension,
    unknown_labels,
    vector_to_field,
)
from jetdiff.jetbuilder import (
    XY,
    CoefficientField,
    JetSpec,
    expand_lambda,
    unit_field,
)
from jetdiff.linalg import rank
from jetdiff.polyring import ExactPoly, monomial_quotient
from jetdiff.sampling import random_surface_pair


def surface(seed=20, d=3, e=3):
    return random_surface_pair(random.Random(seed), d, e)


class TestAssembly:
    def test_c_zero_has_no_rows(self):
        surf = surface()
        spec = JetSpec(m=1, c=0, a=1)
        system = assemble_divisibility_system(surf, spec)
        assert system.shape == (0, 12)
        assert len(kernel_basis(system)) == dof(1, 1) == 12

    def test_desk_scale_counts(self):
        surf = surface(seed=5, d=5, e=5)
        spec = JetSpec(m=1, c=5, a=1)
        system = assemble_divisibility_system(surf, spec)
        assert len(system.columns) == 12
        assert system.unpruned_row_bound == (1 + 1) * 5 * (1 + 5 + 5 + 1)
        assert len(system.rows) <= system.unpruned_row_bound

    def test_column_faithfulness(self):
        # oracle: direct expansion of each unit unknown
        surf = surface(seed=9)
        spec = JetSpec(m=1, c=2, a=1)
        system = assemble_divisibility_system(surf, spec)
        rng = random.Random(4)
        labels = list(system.columns)
        for _ in range(20):
            ci = rng.randrange(len(labels))
            j, k, p, q, h, i = labels[ci]
            expansion = expand_lambda(unit_field(spec.m, (j, k, p, q), h, i), surf, spec)
            expected = {}
            for (alpha, beta), poly in expansion.entries.items():
                for (mh, mi), coeff in poly.terms.items():
                    if mi < spec.c:
                        expected[(alpha, beta, mh, mi)] = coeff
            actual = {}
            for ri, row in enumerate(system.row_entries):
                if ci in row:
                    actual[system.rows[ri]] = row[ci]
            assert actual == expected

    def test_row_order_is_canonical(self):
        surf = surface(seed=11)
        system = assemble_divisibility_system(surf, JetSpec(m=1, c=2, a=1))
        keys = [(r[0], r[1], r[2] + r[3], -r[2]) for r in system.rows]
        assert keys == sorted(keys)


class TestKernel:
    def test_kernel_vectors_annihilate_and_divide(self):
        surf = surface(seed=13)
        spec = JetSpec(m=1, c=1, a=2)
        system = assemble_divisibility_system(surf, spec)
        basis = kernel_basis(system)
        assert len(basis) == len(system.columns) - rank(list(system.row_entries),
                                                        len(system.columns))
        assert basis, "expected a nontrivial kernel at this configuration"
        for vector in basis:
            assert all(v == 0 for v in system.matvec(vector))
            # independent re-check through the expansion route
            field = vector_to_field(spec, vector)
            expansion = expand_lambda(field, surf, spec)
            for poly in expansion.entries.values():
                _, exact = monomial_quotient(poly, "y", spec.c)
                assert exact

    def test_rank_stable_under_shuffle(self):
        surf = surface(seed=17)
        spec = JetSpec(m=1, c=2, a=1)
        system = assemble_divisibility_system(surf, spec)
        rows = [dict(r) for r in system.row_entries]
        ncols = len(system.columns)
        base = rank(rows, ncols)
        rng = random.Random(3)
        shuffled = rows[:]
        rng.shuffle(shuffled)
        assert rank(shuffled, ncols) == base
        perm = list(range(ncols))
        rng.shuffle(perm)
        permuted = [{perm[j]: v for j, v in row.items()} for row in rows]
        assert rank(permuted, ncols) == base

    def test_dimension_monotone_in_c(self):
        surf = surface(seed=23)
        previous = None
        for c in range(0, 5):
            dim = solution_dimension(surf, JetSpec(m=1, c=c, a=1))
            if previous is not None:
                assert dim <= previous
            previous = dim

    def test_dimension_rank_bound(self):
        surf = surface(seed=29)
        spec = JetSpec(m=1, c=2, a=1)
        system = assemble_divisibility_system(surf, spec)
        dim = solution_dimension(surf, spec)
        assert dim >= len(system.columns) - len(system.rows)


class TestSectionCertificate:
    def test_zero_vector_trivial_certificate(self):
        surf = surface(seed=37, d=5, e=5)
        spec = JetSpec(m=1, c=5, a=1)  # margin 0: infinity checks apply
        vector = [Fraction(0)] * len(unknown_labels(spec))
        cert = build_section(surf, spec, vector)
        assert cert.jet.is_zero() and cert.jet_reduced.is_zero()
        assert all(cert.checks.values())

    def test_c_zero_reduced_equals_jet(self):
        surf = surface(seed=41)
        spec = JetSpec(m=1, c=0, a=1)
        system = assemble_divisibility_system(surf, spec)
        vector = kernel_basis(system)[0]
        cert = build_section(surf, spec, vector)
        assert cert.jet_reduced == cert.jet

    def test_nontrivial_kernel_certificates(self):
        surf = surface(seed=43)
        spec = JetSpec(m=1, c=1, a=2)
        system = assemble_divisibility_system(surf, spec)
        basis = kernel_basis(system)
        assert basis
        for vector in basis[:3]:
            cert = build_section(surf, spec, vector)
            assert cert.checks["y_divisible"]
            assert cert.checks["surface_restriction_exact"]
            _, exact = monomial_quotient(cert.jet, "y", spec.c)
            assert exact
            assert cert.jet_reduced * ExactPoly.variable(cert.jet.vars, "y") ** spec.c == cert.jet

    def test_non_kernel_vector_raises(self):
        surf = surface(seed=47, d=5, e=5)
        spec = JetSpec(m=1, c=5, a=1)
        vector = [Fraction(0)] * len(unknown_labels(spec))
        vector[0] = Fraction(1)  # a generic non-solution
        with pytest.raises(AssemblyError):
            build_section(surf, spec, vector)

    def test_certificate_constructor_refuses_undivisible(self):
        surf = surface(seed=53)
        with pytest.raises(AssemblyError):
            SectionCertificate(field=CoefficientField(1), jet=ExactPoly.zero(XY),
                               jet_reduced=ExactPoly.zero(XY),
                               checks={"y_divisible": False})


class TestExports:
    def test_triplet_round_trip(self):
        surf = surface(seed=59)
        system = assemble_divisibility_system(surf, JetSpec(m=1, c=1, a=0))
        text = system.to_triplet_text()
        lines = text.strip().splitlines()
        nrows, ncols = map(int, lines[0].split())
        assert (nrows, ncols) == system.shape
        rebuilt = [dict() for _ in range(nrows)]
        for line in lines[1:]:
            r, c, value = line.split()
            num, den = value.split("/")
            rebuilt[int(r)][int(c)] = Fraction(int(num), int(den))
        assert rebuilt == [dict(r) for r in system.row_entries]

    def test_kernel_json_labels(self):
        surf = surface(seed=61)
        spec = JetSpec(m=1, c=0, a=0)
        system = assemble_divisibility_system(surf, spec)
        basis = kernel_basis(system)
        out = kernel_to_json(system, basis)
        assert len(out) == len(basis)
        for entry in out:
            for key, value in entry.items():
                parts = [int(v) for v in key.split(",")]
                assert len(parts) == 6 and sum(parts[:4]) == spec.m
                Fraction(value)  # parses

    def test_vector_to_field_round_trip(self):
        spec = JetSpec(m=2, c=1, a=1)
        labels = unknown_labels(spec)
        rng = random.Random(2)
        vector = [Fraction(rng.randint(-3, 3)) for _ in labels]
        field = vector_to_field(spec, vector)
        for (j, k, p, q, h, i), value in zip(labels, vector):
            assert field.entries[(j, k, p, q)].coefficient((h, i)) == value
