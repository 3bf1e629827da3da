from itertools import combinations

import pytest

from sfkit import harness
from sfkit.errors import InvalidParams, Unsatisfiable
from sfkit.family import build_family
from sfkit.familyfile import loads as family_loads
from sfkit.harness import (
    VERDICT_FAILED,
    VERDICT_OK,
    FamilyDistribution,
    audit_statement1,
    audit_statement2,
    counterexample_hunt,
    generate_family,
    threshold_experiment,
)
from sfkit.oracle import brute_force_find_sunflower
from sfkit.rng import SplitMix64


class TestGenerators:
    def test_uniform_exhausts_k5(self):
        f = generate_family(FamilyDistribution("uniform-j-subsets", 5, 2, 10, 3))
        assert len(f) == 10  # all edges of K5 exist, so all were taken

    def test_determinism(self):
        d = FamilyDistribution("uniform-j-subsets", 9, 3, 25, 777)
        assert generate_family(d) == generate_family(d)

    def test_different_seeds_differ(self):
        a = generate_family(FamilyDistribution("uniform-j-subsets", 9, 3, 25, 1))
        b = generate_family(FamilyDistribution("uniform-j-subsets", 9, 3, 25, 2))
        assert a != b

    def test_unsatisfiable(self):
        with pytest.raises(Unsatisfiable):
            generate_family(FamilyDistribution("uniform-j-subsets", 5, 2, 11, 0))

    def test_disjoint_blocks_is_two_triangle_witness(self):
        f = generate_family(FamilyDistribution("disjoint-blocks", 6, 2, 6, 0))
        expected = build_family(6, 2, [[1, 2], [1, 3], [2, 3], [4, 5], [4, 6], [5, 6]])
        assert f == expected
        assert brute_force_find_sunflower(f, 3) is None

    def test_construction_sunflower_free(self):
        for s in (2, 3, 4):
            d = FamilyDistribution("sunflower-free-construction", 20, s, 6, 0)
            f = generate_family(d)
            assert brute_force_find_sunflower(f, 3) is None
            assert all(len(m) == s for m in f.members)
        # full-size instance at s = 4: 2 copies x 9 product sets
        d = FamilyDistribution("sunflower-free-construction", 20, 4, 18, 0)
        f = generate_family(d)
        assert len(f) == 18
        assert brute_force_find_sunflower(f, 3) is None

    def test_star_union_hubs(self):
        f = generate_family(FamilyDistribution("star-union", 8, 3, 14, 5))
        assert len(f) == 14
        assert all(m & 0b11 for m in f.masks)

    def test_bad_kind(self):
        with pytest.raises(InvalidParams):
            FamilyDistribution("bogus", 5, 2, 5, 0)


class TestThresholdExperiment:
    def test_rates_above_phi0_are_one(self):
        d = FamilyDistribution("uniform-j-subsets", 7, 2, 20, 11)
        table = threshold_experiment(3, 2, d, 30)
        assert table.phi0 == 8
        sizes = [r.family_size for r in table.rows]
        assert sizes == list(range(2, 21))
        for row in table.rows:
            assert row.above_phi0 == (row.family_size > 8)
            if row.above_phi0:
                assert row.rate == 1.0

    def test_k2_always_found(self):
        d = FamilyDistribution("uniform-j-subsets", 5, 2, 6, 13)
        table = threshold_experiment(2, 2, d, 25)
        for row in table.rows:
            assert row.rate == 1.0
        # the brute-force view of the same fact: two distinct sets always
        # form a core-bearing 2-sunflower
        rng = SplitMix64(3)
        pool = [t for t in combinations(range(1, 6), 2)]
        for _ in range(50):
            a, b = pool[rng.randrange(10)], pool[rng.randrange(10)]
            if a == b:
                continue
            f = build_family(5, 2, [list(a), list(b)])
            assert brute_force_find_sunflower(f, 2) is not None

    def test_set_size_mismatch(self):
        d = FamilyDistribution("uniform-j-subsets", 7, 3, 10, 1)
        with pytest.raises(InvalidParams):
            threshold_experiment(3, 2, d, 5)


def random_instances(count, seed, ground_hi=10, size_hi=28, s=3):
    seeder = SplitMix64(seed)
    for i in range(count):
        kind = ("uniform-j-subsets", "star-union")[i % 2]
        ground = 7 + seeder.randrange(ground_hi - 6)
        size = 8 + seeder.randrange(size_hi - 7)
        d = FamilyDistribution(kind, ground, s, size, seeder.next_u64())
        avail = harness._available(d)
        if size > avail:
            d = FamilyDistribution(kind, ground, s, avail, d.seed)
        yield generate_family(d)


class TestAudits:
    def test_statement1_consistent_and_identities(self):
        for i, fam in enumerate(random_instances(120, 17)):
            rep = audit_statement1(fam, 3, f"s1-{i}")
            assert rep.verdict == VERDICT_OK
            assert all(rep.identity_flags.values())

    def test_statement2_consistent_and_identities(self):
        for i, fam in enumerate(random_instances(120, 29)):
            rep = audit_statement2(fam, 3, 0.05, f"s2-{i}")
            assert rep.verdict == VERDICT_OK
            assert all(rep.identity_flags.values())
            assert not rep.hypothesis_flags["scale_ge_c1"]

    def test_statement2_vacuous_because_c1(self):
        fam = generate_family(FamilyDistribution("uniform-j-subsets", 8, 3, 20, 5))
        rep = audit_statement2(fam, 4, 0.05)
        assert rep.cardinalities["c1_log10"] > 30
        assert rep.conclusion_flags == {}

    def test_counting_identity_always(self):
        for i, fam in enumerate(random_instances(40, 41)):
            rep = audit_statement1(fam, 4, f"c-{i}")
            assert rep.identity_flags["incidence_counting"]

    def test_report_record_shape(self):
        fam = generate_family(FamilyDistribution("uniform-j-subsets", 7, 2, 12, 9))
        rep = audit_statement1(fam, 3, "shape")
        rec = rep.record()
        assert rec["verdict"] in (VERDICT_OK, VERDICT_FAILED)
        assert set(rec) == {
            "instance", "statement", "cardinalities", "hypotheses", "conclusions",
            "identities", "verdict",
        }


class TestHunt:
    def test_no_counterexamples(self):
        rep = counterexample_hunt(3, 2, 0.05, 200, 7)
        assert rep.counterexamples == ()
        assert rep.checked == 200 * len(rep.thresholds)
        assert rep.thresholds[0] == ("phi0", 9)

    def test_zero_trials(self):
        rep = counterexample_hunt(3, 2, 0.05, 0, 7)
        assert rep.checked == 0 and rep.rows == () and rep.counterexamples == ()

    def test_reproducible(self):
        a = counterexample_hunt(3, 2, 0.05, 25, 99)
        b = counterexample_hunt(3, 2, 0.05, 25, 99)
        assert a == b

    def test_reproducer_roundtrip_contract(self):
        # any family serialized the way a counterexample would be must
        # reload identically and re-verify
        fam = generate_family(FamilyDistribution("uniform-j-subsets", 7, 2, 9, 123))
        from sfkit.familyfile import dumps

        text = dumps(fam)
        again = family_loads(text)
        assert again == fam
        assert (brute_force_find_sunflower(again, 3) is None) == (
            brute_force_find_sunflower(fam, 3) is None
        )
