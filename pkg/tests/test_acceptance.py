"""Exit criteria.  Each test records a ``criterion`` property; the terminal
summary (see conftest) prints one PASS/FAIL line per criterion."""

import itertools
import random
import time

import pytest

from sekit.certificates import CertificateFile, parse_certificate, verify_certificate, write_certificate
from sekit.corpus import (
    CLASSIC,
    planted_chain,
    planted_conjugate,
    planted_esse,
    planted_se_pair,
    random_matrix,
    se_corpus,
)
from sekit.equivalences import (
    SeWitness,
    chain_to_se,
    compose_se,
    increase_lag,
    sme_to_esse,
    verify_esse,
    verify_se,
)
from sekit.invariants import AbelianGroup, bowen_franks, compare_dilations, dilation_invariants, k_theory, nonzero_char_poly
from sekit.matrix import CorrMatrix, bipartite_inflation, inflation_power, permutation_matrix, power, tensor
from sekit.search import search_esse, search_se, search_sme

C = CorrMatrix


def esse_instances():
    rng = random.Random(101)
    return [planted_esse(rng, max_dim=4, max_entry=3) for _ in range(500)]


def conjugate_instances():
    rng = random.Random(202)
    return [planted_conjugate(rng, max_dim=4, max_entry=3) for _ in range(100)]


def chain_instances():
    rng = random.Random(2020)
    return [planted_chain(rng, rng.randint(2, 3)) for _ in range(100)]


def se_pair_instances():
    rng = random.Random(303)
    out = []
    for _ in range(100):
        m, n = rng.randint(1, 2), rng.randint(1, 2)
        out.append((m, n, *planted_se_pair(rng, m, n)))
    return out


@pytest.fixture(scope="module")
def corpus():
    """Every accepted pair and SE witness the criteria below produce."""
    pairs, se = [], []
    for e, f, w in esse_instances():
        pairs.append((e, f))
        se.append((e, f, SeWitness(w.r, w.s, 1)))
    for e, f, w in conjugate_instances():
        pairs.append((e, f))
        link = sme_to_esse(e, f, w)
        se.append((e, f, SeWitness(link.r, link.s, 1)))
    for chain in chain_instances():
        pairs.append((chain.left, chain.right))
        se.append((chain.left, chain.right, chain_to_se(chain)))
    for _, _, first, second in se_pair_instances():
        out = compose_se(first.left, first.right, second.right, first.witness, second.witness)
        pairs.append((first.left, second.right))
        se += [(first.left, first.right, first.witness), (second.left, second.right, second.witness),
               (first.left, second.right, out)]
    for inst in se_corpus(seed=404, size=60):
        pairs.append((inst.left, inst.right))
        se.append((inst.left, inst.right, inst.witness))
    return {"pairs": pairs, "se": se}


def test_ac01_planted_esse_soundness(record_property):
    record_property("criterion", "AC1 planted ESSE soundness: 500 instances, < 5 s")
    start = time.perf_counter()
    instances = esse_instances()
    failures = sum(1 for e, f, w in instances if not verify_esse(e, f, w))
    elapsed = time.perf_counter() - start
    assert len(instances) == 500
    assert failures == 0
    assert elapsed < 5.0, f"took {elapsed:.2f} s"


def test_ac02_conversion_pipeline(record_property):
    record_property("criterion", "AC2 SME->ESSE on 100 conjugate pairs; chain->SE on 100 chains")
    for e, f, w in conjugate_instances():
        assert verify_esse(e, f, sme_to_esse(e, f, w))
    for chain in chain_instances():
        w = chain_to_se(chain)
        assert w.lag == len(chain) and len(chain) in (2, 3)
        assert verify_se(chain.left, chain.right, w)


def test_ac03_se_composition(record_property):
    record_property("criterion", "AC3 compose_se on 100 planted pairs, lag == m*n + m")
    for m, n, first, second in se_pair_instances():
        assert (first.witness.lag, second.witness.lag) == (m, n)
        out = compose_se(first.left, first.right, second.right, first.witness, second.witness)
        assert out.lag == m * n + m
        assert verify_se(first.left, second.right, out)


def test_ac04_lag_increase(record_property, corpus):
    record_property("criterion", "AC4 increase_lag(k), k = 0..3, on every accepted SE witness")
    for e, f, w in corpus["se"]:
        assert verify_se(e, f, w)
        for k in range(4):
            out = increase_lag(e, f, w, k)
            assert out.lag == w.lag + k
            assert verify_se(e, f, out)


def test_ac05_inflation_power_law(record_property):
    record_property("criterion", "AC5 inflation_power == direct power, n <= 6, 100 inflations")
    rng = random.Random(505)
    for _ in range(100):
        a, b = rng.randint(1, 3), rng.randint(1, 3)
        x = bipartite_inflation(random_matrix(rng, a, b, 3), random_matrix(rng, b, a, 3))
        direct = x.materialize()
        for n in range(1, 7):
            assert inflation_power(x, n) == power(direct, n)
            direct_n = direct
            for _ in range(n - 1):
                direct_n = tensor(direct_n, direct)
            assert inflation_power(x, n) == direct_n


def test_ac06_invariant_soundness(record_property, corpus):
    record_property("criterion", "AC6 compare_dilations consistent on corpus; RS/SR spectrum on 500 pairs")
    assert len(corpus["pairs"]) >= 800
    for e, f in corpus["pairs"]:
        result = compare_dilations(e, f)
        assert result, result.describe()
    rng = random.Random(6060)
    for _ in range(500):
        a, b = rng.randint(1, 5), rng.randint(1, 5)
        r, s = random_matrix(rng, a, b, 9), random_matrix(rng, b, a, 9)
        assert nonzero_char_poly(tensor(r, s)) == nonzero_char_poly(tensor(s, r))


def test_ac07_classic_search(record_property):
    record_property("criterion", "AC7 search_esse(full 2-shift, [2]) < 1 s, certificate round-trips")
    e, f = CLASSIC["full_2_shift"], CLASSIC["two"]
    start = time.perf_counter()
    w = search_esse(e, f, max_inner_dim=2, max_entry=2)
    elapsed = time.perf_counter() - start
    assert w is not None
    assert elapsed < 1.0, f"took {elapsed:.3f} s"
    cert = CertificateFile("esse", e, f, w)
    loaded = parse_certificate(write_certificate(cert))
    assert loaded == cert
    assert verify_certificate(loaded)


def test_ac08_cuntz_k_theory(record_property):
    record_property("criterion", "AC8 K0(O_n) = Z/(n-1) for n = 2..5; golden mean BF trivial, det -1")
    for n in range(2, 6):
        k0, k1 = k_theory(C([[n]]))
        assert k0 == AbelianGroup(tuple(t for t in [n - 1] if t > 1), 0)
        assert k1 == 0
    golden = CLASSIC["golden_mean"]
    assert bowen_franks(golden).is_trivial
    assert dilation_invariants(golden).det_i_minus_a == -1


def test_ac09_permutations_se_iff_sme(record_property):
    record_property("criterion", "AC9 permutations of size <= 4: SE found iff SME found, < 60 s")
    perms = [permutation_matrix(p) for n in range(1, 5) for p in itertools.permutations(range(n))]
    start = time.perf_counter()
    disagreements = []
    for p, q in itertools.product(perms, repeat=2):
        se = search_se(p, q, max_lag=4, max_entry=1) is not None
        sme = search_sme(p, q) is not None
        if se != sme:
            disagreements.append((p, q, se, sme))
    elapsed = time.perf_counter() - start
    assert not disagreements
    assert elapsed < 60.0, f"took {elapsed:.1f} s"


def test_ac10_negative_control(record_property):
    record_property("criterion", "AC10 [2] vs [3]: obstructed, no ESSE or SE within default bounds")
    two, three = CLASSIC["two"], CLASSIC["three"]
    result = compare_dilations(two, three)
    assert not result and result.invariant in ("bowen_franks", "k0")
    assert search_esse(two, three) is None
    assert search_se(two, three) is None
