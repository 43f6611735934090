"""Unit tests for complexes, homotopy classes, cones and splittings."""

import pytest

from quiver_tilt.complexes import (
    ChainMap,
    Complex,
    cone,
    direct_sum_complexes,
    has_finite_projective_replacement,
    homology,
    homology_data,
    homotopy_hom,
    is_null_homotopic,
    is_perfect,
    is_quasi_iso,
    long_exact_sequence_ranks,
    projective_replacement,
    random_complex,
    shift,
    splits_into_homology,
    triangle_is_exact,
    truncate,
    verify_cone_triangle,
)
from quiver_tilt.exceptions import ChainMapError, ComplexError
from quiver_tilt.modrep import (
    ModuleMap,
    canonical_map,
    hom_dimension,
    projective,
    projective_resolution,
    simple,
)


@pytest.fixture
def resolution_s3(a3):
    """P2 -> P3 in degrees -1, 0: the projective resolution of S3."""
    return Complex.from_terms(
        a3, -1, [projective(a3, 2), projective(a3, 3)], [canonical_map(a3, 2, 3)]
    )


@pytest.fixture
def contractible(a3):
    """P3 --id--> P3 in degrees 0, 1."""
    p3 = projective(a3, 3)
    return Complex.from_terms(a3, 0, [p3, p3], [ModuleMap.identity(p3)])


class TestComplex:
    """Tests for Complex construction and shifts."""

    def test_d_squared_must_vanish(self, a3):
        """Test that d o d != 0 is rejected."""
        p3 = projective(a3, 3)
        ident = ModuleMap.identity(p3)
        with pytest.raises(ComplexError):
            Complex.from_terms(a3, 0, [p3, p3, p3], [ident, ident])

    def test_shift(self, resolution_s3):
        """Test c[1] moves terms down one degree and negates d."""
        shifted = shift(resolution_s3, 1)
        assert shifted.lo == -2
        assert shifted.term(-1) == resolution_s3.term(0)
        assert shifted.differential(-2) == resolution_s3.differential(-1).scale(-1)
        assert shift(shifted, -1).differential(-1) == resolution_s3.differential(-1)

    def test_degree_bounds(self, resolution_s3, a3):
        """Test support and degree bounds, including the zero complex."""
        assert resolution_s3.degree_bounds() == (-1, 0)
        assert Complex.zero(a3).degree_bounds() == (0, -1)
        assert Complex.zero(a3).is_zero()

    def test_is_perfect(self, resolution_s3, a3):
        """Test that complexes of projectives are perfect."""
        assert is_perfect(resolution_s3)
        assert not is_perfect(Complex.from_module(simple(a3, 3)))


class TestHomology:
    """Tests for homology and quasi-isomorphisms."""

    def test_homology_of_resolution(self, resolution_s3):
        """Test H^0 = S3 and H^-1 = 0."""
        assert homology(resolution_s3, 0).dims == (0, 0, 1)
        assert homology(resolution_s3, -1).is_zero()

    def test_contractible_is_acyclic(self, contractible):
        """Test that the identity two-term complex has no homology."""
        assert contractible.is_acyclic()

    def test_augmentation_is_quasi_iso(self, a3):
        """Test that a resolution maps quasi-isomorphically onto its module."""
        s3 = simple(a3, 3)
        res = projective_resolution(s3)
        target = Complex.from_module(s3)
        f = ChainMap.build(res.to_complex(), target, {0: res.augmentation})
        assert is_quasi_iso(f)

    def test_chain_map_must_commute(self, resolution_s3, a3):
        """Test that a non-commuting family is rejected."""
        p3 = projective(a3, 3)
        with pytest.raises(ChainMapError):
            ChainMap.build(resolution_s3, Complex.from_module(p3), {0: ModuleMap.identity(p3)})


class TestHomotopyHom:
    """Tests for Hom in the homotopy category."""

    def test_stalk_complexes(self, a3):
        """Test Hom_K(P_i, P_j) = Hom(P_i, P_j) for complexes in degree 0."""
        for i in a3.vertices:
            for j in a3.vertices:
                pi, pj = projective(a3, i), projective(a3, j)
                ci, cj = Complex.from_module(pi), Complex.from_module(pj)
                assert homotopy_hom(ci, cj, 0).dimension == hom_dimension(pi, pj)
                assert homotopy_hom(ci, cj, 1).dimension == 0

    def test_contractible_has_no_maps(self, contractible):
        """Test End_K of a contractible complex vanishes."""
        assert homotopy_hom(contractible, contractible, 0).dimension == 0
        assert is_null_homotopic(ChainMap.identity(contractible))

    def test_identity_of_resolution_is_not_null(self, resolution_s3):
        """Test that End_K of the resolution of S3 is one-dimensional."""
        assert homotopy_hom(resolution_s3, resolution_s3, 0).dimension == 1
        assert not is_null_homotopic(ChainMap.identity(resolution_s3))

    def test_hom_into_shift(self, a3, resolution_s3):
        """Test chain maps from stalk projectives into the resolution of S3."""
        p2 = Complex.from_module(projective(a3, 2), -1)
        assert homotopy_hom(p2, resolution_s3, 0).dimension == 0
        assert homotopy_hom(Complex.from_module(projective(a3, 3)), resolution_s3, 0).dimension == 1


class TestCones:
    """Tests for cones, triangles and truncations."""

    def test_cone_of_identity_is_acyclic(self, a3):
        """Test that cone(id) has no homology."""
        c = Complex.from_module(projective(a3, 3))
        assert cone(ChainMap.identity(c)).complex.is_acyclic()

    def test_cone_of_canonical_map(self, a3):
        """Test that cone(P2 -> P3) has homology S3 in degree 0 only."""
        f = ChainMap.build(
            Complex.from_module(projective(a3, 2)),
            Complex.from_module(projective(a3, 3)),
            {0: canonical_map(a3, 2, 3)},
        )
        c = cone(f).complex
        assert homology(c, 0).dims == (0, 0, 1)
        assert homology(c, -1).is_zero()
        assert verify_cone_triangle(f)
        assert triangle_is_exact(f)

    def test_long_exact_sequence_rows(self, a3):
        """Test that the rows carry the homology dimensions of C, D and the cone."""
        f = ChainMap.build(
            Complex.from_module(projective(a3, 2)),
            Complex.from_module(projective(a3, 3)),
            {0: canonical_map(a3, 2, 3)},
        )
        row = next(r for r in long_exact_sequence_ranks(f) if r.degree == 0)
        assert (row.source_dim, row.target_dim, row.cone_dim) == (2, 3, 1)
        assert row.rank_f == 2

    def test_truncation(self, resolution_s3):
        """Test the smart truncations around degree -1."""
        t = truncate(resolution_s3, -1)
        assert t.lower.is_zero()
        assert homology(t.upper, 0).dims == (0, 0, 1)


class TestSplitting:
    """Tests for splitting into shifted homology."""

    @pytest.mark.parametrize("seed", range(4))
    @pytest.mark.parametrize("kind", ["projective", "modules"])
    def test_hereditary_complexes_split(self, a3, seed, kind):
        """Test that bounded complexes over kA3 split into their homology."""
        c = random_complex(a3, -1, 1, seed=seed, kind=kind)
        result = splits_into_homology(c)
        assert result.splits
        assert result.verify()

    @pytest.mark.parametrize("seed", range(20))
    @pytest.mark.parametrize("kind", ["projective", "modules"])
    def test_complexes_over_s_split(self, s_alg, seed, kind):
        """Test that bounded complexes over hereditary S split into their homology."""
        c = random_complex(s_alg, -1, 1, seed=seed, kind=kind)
        result = splits_into_homology(c)
        assert result.splits
        assert result.obstruction_degree is None
        assert result.verify()

    def test_ext2_obstructs_splitting_over_r(self, r_alg):
        """Test that P8 -> P9 over R is not the sum of its homology."""
        c = Complex.from_terms(
            r_alg, -1, [projective(r_alg, 8), projective(r_alg, 9)], [canonical_map(r_alg, 8, 9)]
        )
        assert homology(c, -1).dims == (1,) + (0,) * 9
        assert homology(c, 0).dims == (0,) * 8 + (1, 0)
        result = splits_into_homology(c)
        assert not result.splits
        assert result.obstruction_degree == -1


class TestProjectiveReplacement:
    """Tests for replacing bounded complexes by complexes of projectives."""

    def test_perfect_complex_is_its_own_replacement(self, resolution_s3):
        """Test that a complex of projectives comes back unchanged."""
        assert projective_replacement(resolution_s3).complex is resolution_s3

    def test_simple_over_r(self, r_alg):
        """Test that S9 is replaced by P1 -> P8 -> P9 in degrees -2..0."""
        stalk = Complex.from_module(simple(r_alg, 9))
        rep = projective_replacement(stalk)
        assert rep.complex.degree_bounds() == (-2, 0)
        assert is_perfect(rep.complex)
        assert is_quasi_iso(rep.map)
        assert has_finite_projective_replacement(stalk)

    def test_bound_too_small(self, r_alg):
        """Test that a replacement cut off by max_len is reported."""
        stalk = Complex.from_module(simple(r_alg, 9))
        assert not has_finite_projective_replacement(stalk, max_len=0)


class TestHomologyData:
    """Tests for cycles, boundaries and direct sums."""

    def test_cycles_of_resolution(self, resolution_s3):
        """Test Z^0 = P3 and H^0 = S3."""
        data = homology_data(resolution_s3, 0)
        assert data.cycles.dims == (1, 1, 1)
        assert data.module.dims == (0, 0, 1)
        assert data.projection.is_morphism()

    def test_direct_sum_of_complexes(self, resolution_s3, contractible):
        """Test that a contractible summand adds no homology."""
        total = direct_sum_complexes([resolution_s3, contractible]).complex
        assert total.degree_bounds() == (-1, 1)
        assert homology(total, 0).dims == (0, 0, 1)
        assert homology(total, 1).is_zero()
