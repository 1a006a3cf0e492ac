import pytest

from aperylike import catalog
from aperylike.congruence import (
    PATTERNS,
    lucas_check,
    lucas_scan,
    lucas_scan_many,
    primes_below,
    residue_table,
    scan_c_counts,
    structured_congruence_check,
    supercongruence_check,
)
from aperylike.rings import reduce_mod


def test_primes_below():
    assert primes_below(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_below(2) == []


def test_single_digit_is_trivially_consistent():
    rep = lucas_scan("level11", 101, 100)  # all n < p: one digit
    assert rep.ok and rep.passes == 100


def test_level11_p5_n7_worked_example():
    t = catalog.sequence("level11").terms(7)
    assert t[7] % 5 == 2 and (t[1] * t[2]) % 5 == 2
    rep = lucas_scan("level11", 5, 50)
    assert rep.ok


def test_apery_lucas_small_primes():
    for p in (2, 3, 5, 7, 11, 13):
        assert lucas_scan("apery", p, 400).ok, p


def test_quad_lucas_residue_classes():
    # conjectured: 14C satisfies Lucas iff p = 2 or p = 1, 7 mod 8
    assert lucas_scan("14C", 7, 250).ok
    assert lucas_scan("14C", 17, 250).ok
    bad5 = lucas_scan("14C", 5, 250)
    assert not bad5.ok
    # 15C: p = 2 or p = 1 mod 4
    assert lucas_scan("15C", 13, 250).ok
    assert not lucas_scan("15C", 3, 250).ok
    assert not lucas_scan("15C", 7, 250).ok


def test_conjugate_sequences_violate_identically():
    a = lucas_scan("14C", 5, 150)
    b = lucas_scan("14Cbar", 5, 150)
    assert a.violations == b.violations


def test_range_exceeding_table_errors():
    table = residue_table("level11", 5, 1, 50)
    with pytest.raises(IndexError):
        lucas_check(table, (1, 60))
    with pytest.raises(ValueError):
        lucas_check(residue_table("level11", 5, 2, 10), (1, 10))


def test_residues_two_ways():
    # reduce exact integer terms, or run over Q and clear denominators
    # modulo p: identical residues (guards against rational leakage)
    seq = catalog.sequence("level11")
    from aperylike.recurrence import generate_terms
    ints = generate_terms(seq.spec, 500, seq.ring)
    rats = generate_terms(seq.spec, 500, catalog.RING_Q)
    for p in (7, 13):
        for n in range(501):
            r1 = reduce_mod(ints[n], p)
            num = rats[n].numerator * pow(rats[n].denominator, -1, p)
            assert r1 == (num % p, 0)


def test_supercongruence_examples():
    t = catalog.sequence("level11").terms(2)
    assert (t[2] - t[1]) % 4 == 0        # 24 = 0 mod 4
    assert (t[2] - t[1]) % 64 == 24      # but not mod 2^6
    rep = supercongruence_check("level11", 2, 2, 40)
    assert rep.ok
    rep = supercongruence_check("level11", 2, 6, 40, PATTERNS["level11-2adic"])
    assert rep.ok and 1 in rep.pattern_hits and not rep.pattern_passes

    a = catalog.sequence("apery").terms(5)
    assert (a[5] - a[1]) % 125 == 0      # 819000 divisible by 5^3
    rep = supercongruence_check("apery", 5, 3, 30)
    assert rep.ok


def test_digit_shift_implication():
    # Lucas mod p up to p^2 - 1 forces T(pn) = T(n) mod p for n < p
    p = 5
    table = residue_table("level11", p, 1, p * p - 1 + p)
    assert lucas_check(table, (1, p * p - 1)).ok
    rep = supercongruence_check("level11", p, 1, p - 1)
    assert rep.ok


def test_pattern_membership():
    pat = PATTERNS["level11-2adic"]
    members = [n for n in range(1, 130) if pat(n)]
    assert members == [1, 2, 3, 5, 7, 9, 13, 17, 25, 33, 49, 65, 97, 129]
    pat14 = PATTERNS["level14C-2adic"]
    assert [n for n in range(1, 60) if pat14(n)] == [1, 2, 3, 4, 7, 13, 25, 49]
    pat15 = PATTERNS["level15C-2adic"]
    assert [n for n in range(1, 40) if pat15(n)] == [1, 2, 3, 5, 9, 17, 33]
    b5 = PATTERNS["base5-zero-one"]
    assert [n for n in range(1, 40) if b5(n)] == [1, 2, 6, 7, 26, 27, 31, 32]


def test_scan_c_counts_small():
    counts = scan_c_counts("level11", [2, 3, 5], 100)
    assert counts == {2: 100, 3: 33, 5: 20}


def test_structured_congruences():
    # T11(3n) = T11(n) + 3n mod 9
    rep = structured_congruence_check("level11", 3, 9, 3, {0: 0, 1: 3, 2: 6}, 400)
    assert rep.ok
    # level 24 mod 9 residue map
    rep = structured_congruence_check(
        "level24", 3, 9, 6, {1: 6, 2: 6, 4: 3, 5: 3}, 400)
    assert rep.ok
    # a zero map is exactly the plain supercongruence check
    rep0 = structured_congruence_check("level11", 2, 4, 1, {}, 60)
    plain = supercongruence_check("level11", 2, 2, 60)
    assert rep0.ok == plain.ok and rep0.passes == plain.passes


def test_level11_mod25_iff_5_divides_n():
    rep = structured_congruence_check("level11", 5, 25, 5, {0: 0}, 300)
    holds = {n for n in range(1, 301) if n not in rep.violations}
    assert holds == {n for n in range(1, 301) if n % 5 == 0}


def test_lucas_scan_many_matches_single():
    reports = lucas_scan_many("level24", [3, 5, 7], 200)
    singles = [lucas_scan("level24", p, 200) for p in (3, 5, 7)]
    for r, s in zip(reports, singles):
        assert (r.p, r.ok, r.passes) == (s.p, s.ok, s.passes)


def test_report_json_shape():
    rep = supercongruence_check("level11", 2, 2, 10)
    doc = rep.to_json()
    assert set(doc) >= {"seq", "p", "e", "n_max", "passes", "violations",
                        "pattern_hits", "ok"}
