"""
Tests for the genome codec: assignment map, encode/decode, canonical forms,
genome-space counting, enumeration and random sampling.
"""

from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from dcjperm.exceptions import NotInvolution, OddDegree, RangeError, SizeMismatch, SpecError, TooLarge
from dcjperm.models.genome import ChromosomeShape, Extremity, ExtremityEnd
from dcjperm.services.genome_io import format_genome_text, parse_genome_text
from dcjperm.services.genome_service import (
    Genome,
    adjacencies,
    canonicalize,
    check_same_size,
    count_genomes,
    count_genomes_by_adjacencies,
    decode,
    double_factorial,
    encode,
    enumerate_genomes,
    make_spec,
    phi,
    phi_inverse,
    random_genome,
    telomeres,
    validate,
)
from dcjperm.services.perm_service import format_cycles, from_cycles, identity, is_involution

GENOME_COUNTS = [2, 10, 76, 764, 9496, 140152, 2390480, 46206736, 997313824]


class TestAssignmentMap:
    """Extremity labels: tail of gene i is 2i-1, head is 2i"""

    @pytest.mark.parametrize(
        "gene,end,label",
        [(1, ExtremityEnd.TAIL, 1), (1, ExtremityEnd.HEAD, 2), (4, ExtremityEnd.TAIL, 7), (4, ExtremityEnd.HEAD, 8)],
    )
    def test_phi(self, gene, end, label):
        extremity = Extremity(gene=gene, end=end)
        assert phi(extremity) == label
        assert phi_inverse(label) == extremity

    def test_phi_inverse_range(self):
        with pytest.raises(RangeError):
            phi_inverse(0)
        with pytest.raises(RangeError):
            phi_inverse(9, n=4)
        assert phi_inverse(8, n=4) == Extremity(gene=4, end=ExtremityEnd.HEAD)


class TestValidation:
    """Genomic permutations are involutions of even degree"""

    def test_odd_degree(self):
        with pytest.raises(OddDegree):
            validate(identity(3))

    def test_not_involution(self):
        with pytest.raises(NotInvolution):
            validate(from_cycles(4, [(1, 2, 3)]))

    def test_degree_is_checked_before_involution(self):
        with pytest.raises(OddDegree):
            validate(from_cycles(3, [(1, 2, 3)]))

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            check_same_size(validate(identity(4)), validate(identity(6)))


class TestCodec:
    """Encoding chromosomes as permutations and decoding them back"""

    @pytest.fixture
    def figure_spec(self, figure_genome_text):
        return parse_genome_text(figure_genome_text)

    def test_figure_genome_encoding(self, figure_spec):
        genome = encode(figure_spec)
        assert genome.n == 6
        assert format_cycles(genome.perm) == "(2,5)(3,6)(4,7)(9,12)(10,11)"
        assert telomeres(genome) == (1, 8)
        assert adjacencies(genome) == [(2, 5), (3, 6), (4, 7), (9, 12), (10, 11)]

    def test_figure_genome_decodes_to_itself(self, figure_spec, figure_genome_text):
        assert decode(encode(figure_spec)) == figure_spec
        assert format_genome_text(decode(encode(figure_spec))) == figure_genome_text

    def test_single_linear_gene(self):
        genome = encode(make_spec(1, [(ChromosomeShape.LINEAR, [1])]))
        assert genome.perm == identity(2)

    def test_single_circular_gene(self):
        genome = encode(make_spec(1, [(ChromosomeShape.CIRCULAR, [1])]))
        assert format_cycles(genome.perm) == "(1,2)"
        assert decode(genome).chromosomes[0].shape is ChromosomeShape.CIRCULAR

    @pytest.mark.parametrize(
        "text,canonical",
        [
            ("L -2 -1\n", "L 1 2\n"),
            ("C 6 5\nL 1 2 3 4\n", "L 1 2 3 4\nC 5 6\n"),
            ("C -1\n", "C 1\n"),
            ("L 3\nL -2 1\n", "L -1 2\nL 3\n"),
            ("C 2 -3 1\n", "C 1 2 -3\n"),
        ],
    )
    def test_canonical_form(self, text, canonical):
        assert format_genome_text(canonicalize(parse_genome_text(text))) == canonical

    def test_make_spec_rejects_gaps(self):
        with pytest.raises(SpecError):
            make_spec(3, [(ChromosomeShape.LINEAR, [1, 3])])

    def test_make_spec_rejects_zero(self):
        with pytest.raises(SpecError):
            make_spec(2, [(ChromosomeShape.LINEAR, [0, 1, 2])])

    @given(st.integers(min_value=1, max_value=30), st.integers(min_value=0, max_value=10**6))
    @settings(max_examples=200)
    def test_decode_then_encode_is_identity(self, n, seed):
        genome = random_genome(n, seed)
        spec = decode(genome)
        assert encode(spec) == genome
        assert canonicalize(spec) == spec

    def test_decode_is_canonical_over_small_space(self):
        for genome in enumerate_genomes(3):
            spec = decode(genome)
            assert encode(spec) == genome
            assert parse_genome_text(format_genome_text(spec)) == spec


class TestCounting:
    """Sizes of the genome space"""

    @pytest.mark.parametrize("k,value", [(-1, 1), (0, 1), (1, 1), (5, 15), (7, 105)])
    def test_double_factorial(self, k, value):
        assert double_factorial(k) == value

    @pytest.mark.parametrize("n,count", list(enumerate(GENOME_COUNTS, start=1)))
    def test_genome_counts(self, n, count):
        assert count_genomes(n) == count

    def test_counts_by_adjacencies(self):
        assert [count_genomes_by_adjacencies(3, t) for t in range(4)] == [1, 15, 45, 15]
        assert count_genomes_by_adjacencies(3, 4) == 0

    def test_negative_regions(self):
        with pytest.raises(RangeError):
            count_genomes(-1)


class TestEnumeration:
    """Listing the whole genome space"""

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_every_genome_once(self, n):
        genomes = list(enumerate_genomes(n))
        assert len(genomes) == count_genomes(n)
        assert len(set(genomes)) == len(genomes)
        assert all(is_involution(genome.perm) and genome.n == n for genome in genomes)

    def test_order_starts_from_identity(self):
        genomes = list(enumerate_genomes(2))
        assert genomes[0].perm == identity(4)
        assert format_cycles(genomes[1].perm) == "(1,2)"

    def test_guard(self):
        with pytest.raises(TooLarge):
            next(enumerate_genomes(7))

    def test_guard_override(self):
        assert len(list(enumerate_genomes(3, max_n=2, allow_large=True))) == 76
        with pytest.raises(TooLarge):
            next(enumerate_genomes(3, max_n=2))

    def test_guard_from_environment(self, monkeypatch):
        monkeypatch.setenv("DCJPERM_ENUM_MAX_N", "2")
        with pytest.raises(TooLarge):
            next(enumerate_genomes(3))


class TestRandomGenome:
    """Seeded uniform sampling"""

    def test_deterministic(self):
        assert random_genome(10, 42) == random_genome(10, 42)

    def test_is_genome(self):
        genome = random_genome(12, 3)
        assert isinstance(genome, Genome)
        assert genome.n == 12
        assert is_involution(genome.perm)

    def test_uniform_on_two_regions(self):
        trials = 100_000
        samples = Counter(random_genome(2, seed) for seed in range(trials))
        assert set(samples) == set(enumerate_genomes(2))
        for count in samples.values():
            assert count / trials == pytest.approx(1 / 10, abs=0.01)
        expected = trials / 10
        chi_square = sum((count - expected) ** 2 / expected for count in samples.values())
        # 9 degrees of freedom; 30 is far in the tail
        assert chi_square < 30

    def test_needs_a_region(self):
        with pytest.raises(RangeError):
            random_genome(0, 1)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
