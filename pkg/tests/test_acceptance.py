"""Exit criteria. Every comparison is exact; runtimes are wall-clock bounds."""

import io
import json
import random
import subprocess
import sys
import time
from itertools import product as iproduct

import numpy as np
import pytest

from charpair.cli import run_cli
from charpair.constructors import bott_pair, example_m2, product_pair, simplex_pair, vertex_cut
from charpair.explorer import SequentialSampler, primitive_representatives
from charpair.lattice import identity, matmul, matvec
from charpair.pair import CharPair
from charpair.polytope import Polytope, cut_vertex, f_vector, interval, product, simplex
from charpair.symmetry import pair_automorphisms, poset_automorphisms
from oracles import brute_pair_automorphisms_bounded, brute_pair_automorphisms_unit, naive_automorphisms
from zoo import CP1xCP1, CP2, CUBE, HIRZEBRUCH, PENTAGON, SQUARE, m2_n5, small_pairs


def cli(capsys, monkeypatch, *argv, stdin=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = run_cli(list(argv))
    return code, capsys.readouterr().out


def unit(n, i):
    return tuple(int(j == i) for j in range(n))


def blowup_rows(n, k):
    """Expected (type name, sorted lambda values) for each row of the facet table."""
    e = [unit(n, i) for i in range(n)]
    return [
        (f"Δ^{n - 1}", [(1,) * n]),
        (f"I×I×Δ^{n - 3}", [(0, 0) + (1,) * (n - 2)]),
        (f"I×Δ^{n - 2}", sorted([e[0], (0, 1) + tuple(k)])),
        (f"I×Δ^{n - 2} with vertex cut off", sorted([e[0], e[1]])),
        (f"I×I×Δ^{n - 3} with vertex cut off", sorted(e[2:])),
    ]


def _normalize_sign(v):
    lead = next(x for x in v if x)
    return tuple(v) if lead > 0 else tuple(-x for x in v)


@pytest.mark.criterion(1, "facet types and lambda values of the blow-up, n = 5 and n = 7")
@pytest.mark.parametrize("n, k, limit", [(5, [2, 3, 4], 5.0), (7, [2, 3, 4, 5, 6], 60.0)])
def test_facet_type_table(capsys, monkeypatch, n, k, limit):
    start = time.perf_counter()
    code, doc = cli(capsys, monkeypatch, "construct", "m2", "--n", str(n), "--k", ",".join(map(str, k)))
    assert code == 0
    code, out = cli(capsys, monkeypatch, "classify-facets", "--refs", "table1", "--json", stdin=doc)
    elapsed = time.perf_counter() - start
    assert code == 0
    report = json.loads(out)
    counts = {e["type"]: e["count"] for e in report["histogram"]}
    expected_rows = blowup_rows(n, k)
    assert counts == {name: len(lams) for name, lams in expected_rows}
    assert [counts[name] for name, _ in expected_rows] == [1, 1, 2, 2, n - 2]
    for name, lams in expected_rows:
        got = sorted(_normalize_sign(f["lambda"]) for f in report["facets"] if f["type"] == name)
        assert got == sorted(_normalize_sign(v) for v in lams), name
    assert elapsed < limit


def _kernel_by_sign_analysis(cp):
    """Diagonal sign matrices fixing every facet subgroup (forced since each e_i is a facet vector)."""
    n = cp.dim
    out = set()
    for signs in iproduct((1, -1), repeat=n):
        g = tuple(tuple(signs[r] if r == c else 0 for c in range(n)) for r in range(n))
        if all(matvec(g, v) in (v, tuple(-x for x in v)) for v in cp.lambdas):
            out.add(g)
    return out


@pytest.mark.criterion(2, "blown-up pairs satisfy the triviality condition")
@pytest.mark.parametrize("n, k", [(5, [2, 3, 4]), (7, [2, 3, 4, 5, 6])])
def test_example_condition(capsys, monkeypatch, tmp_path, n, k):
    path = tmp_path / f"m2_n{n}.json"
    assert cli(capsys, monkeypatch, "construct", "m2", "--n", str(n), "--k", ",".join(map(str, k)),
               "-o", str(path))[0] == 0
    code, out = cli(capsys, monkeypatch, "check-condition", str(path), "--json")
    assert code == 0
    report = json.loads(out)
    assert report["condition_trivial"] is True
    assert report["order"] == 2 and report["kernel_order"] == 2 and report["image_order"] == 1
    minus = tuple(tuple(-x for x in row) for row in identity(n))
    assert {tuple(map(tuple, e["g"])) for e in report["kernel"]} == {identity(n), minus}
    cp = example_m2(n, k)
    assert _kernel_by_sign_analysis(cp) == {identity(n), minus}
    if n == 5:
        # full brute force over all 9! facet permutations
        brute = brute_pair_automorphisms_unit(cp.polytope.vertices, cp.facet_count, list(cp.lambdas))
        assert brute == {(tuple(e["facet_perm"]), tuple(map(tuple, e["g"]))) for e in report["pair_auts"]}


@pytest.mark.criterion(3, "negative controls: CP^2, CP^1 x CP^1, Hirzebruch square")
def test_negative_controls():
    r = pair_automorphisms(CP2)
    assert not r.condition_trivial
    assert (len(r.image), len(r.kernel), r.order) == (6, 2, 12)

    r = pair_automorphisms(CP1xCP1)
    assert not r.condition_trivial
    # the axis swap exchanges the e_1 facets {0, 2} with the e_2 facets {1, 3}
    swaps = [x for x in r.pair_auts if x.f.facet_perm == (1, 0, 3, 2)]
    assert swaps
    assert all(x.g in {((0, 1), (1, 0)), ((0, -1), (1, 0)), ((0, 1), (-1, 0)), ((0, -1), (-1, 0))}
               for x in swaps)

    r = pair_automorphisms(HIRZEBRUCH)
    assert not r.condition_trivial
    reflection = (0, 3, 2, 1)
    assert {x.g for x in r.pair_auts if x.f.facet_perm == reflection} == \
        {identity(2), ((-1, 0), (0, -1))}

    # frozen values agree with an enumeration of all g with entries in [-2, 2]
    for cp, frozen in [(CP2, 12), (CP1xCP1, 32), (HIRZEBRUCH, 8)]:
        brute = brute_pair_automorphisms_bounded(cp.polytope.vertices, cp.facet_count, list(cp.lambdas), 2)
        assert len(brute) == frozen
        assert brute == {(x.f.facet_perm, x.g) for x in pair_automorphisms(cp).pair_auts}


def _random_zoo():
    I = interval()
    hexagon = cut_vertex(PENTAGON, 0)
    heptagon = cut_vertex(hexagon, 0)
    octagon = cut_vertex(heptagon, 0)
    prism = product(I, simplex(2))
    return [
        simplex(1), simplex(2), simplex(3), simplex(4), SQUARE, PENTAGON, hexagon, heptagon, octagon,
        CUBE, prism, product(I, PENTAGON), product(simplex(2), simplex(2)), product(I, simplex(3)),
        product(product(I, I), simplex(2)), cut_vertex(simplex(3), 0), cut_vertex(CUBE, 0),
        cut_vertex(prism, 0), cut_vertex(cut_vertex(simplex(3), 0), 0), product(I, CUBE),
        product(SQUARE, SQUARE),
    ]


def _full_closure(elems):
    s = set(elems)
    return all(a * b in s for a in elems for b in elems)


@pytest.mark.criterion(4, "group properties on 200 random pairs")
def test_group_properties_random_pairs():
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    zoo = _random_zoo()
    assert all(p.dim <= 4 and p.facet_count <= 8 for p in zoo)
    samplers = [SequentialSampler(p, primitive_representatives(p.dim, 3)) for p in zoo]
    auts = [poset_automorphisms(p) for p in zoo]
    checked = 0
    for t in range(200):
        idx = t % len(zoo)
        p = zoo[idx]
        for _ in range(500):
            lams, complete = samplers[idx].draw(rng)
            if complete:
                break
        assert complete, f"no non-singular sample over polytope {idx}"
        cp = CharPair(p, tuple(lams))
        assert all(abs(x) <= 3 for v in cp.lambdas for x in v)
        r = pair_automorphisms(cp, poset_auts=auts[idx])  # runs AutReport.verify
        n = cp.dim
        assert 0 < r.order < float("inf")
        if r.order <= 400:
            assert _full_closure(r.pair_auts)
        eye = identity(n)
        assert all(x.f.is_identity() and matmul(x.g, x.g) == eye for x in r.kernel)
        assert (2**n) % len(r.kernel) == 0
        assert r.order == len(r.kernel) * len(r.image)
        checked += 1
    assert checked == 200
    assert time.perf_counter() - start < 120


CRITERION5 = {
    "square": SQUARE,
    "simplex2": simplex(2),
    "simplex3": simplex(3),
    "simplex4": simplex(4),
    "cube": CUBE,
    "pentagon": PENTAGON,
    "prism": product(interval(), simplex(2)),
    "pentagon_prism": product(interval(), PENTAGON),
    "m2_n5": m2_n5().polytope,
}


@pytest.mark.criterion(5, "backtracking automorphisms equal the naive permutation filter")
@pytest.mark.parametrize("name", sorted(CRITERION5))
def test_oracle_equivalence(name):
    p = CRITERION5[name]
    assert p.facet_count <= 9
    got = [a.facet_perm for a in poset_automorphisms(p)]
    assert len(got) == len(set(got))
    assert set(got) == set(naive_automorphisms(p.vertices, p.facet_count))


def _euler(p):
    return sum((-1) ** i * x for i, x in enumerate(f_vector(p))) == 1 - (-1) ** p.dim


def _revalidate(cp):
    p = Polytope(cp.dim, cp.facet_count, tuple(cp.polytope.vertices))
    return CharPair(p, tuple(cp.lambdas))


@pytest.mark.criterion(6, "500 random constructor chains stay valid")
def test_constructor_chains():
    rng = random.Random(6)
    max_dim, max_facets = 5, 12

    def small_factor():
        if rng.random() < 0.5:
            return simplex_pair(rng.randint(1, 2))
        return bott_pair([rng.randint(-3, 3) for _ in range(rng.randint(1, 2))])

    cuts = 0
    for _ in range(500):
        cp = simplex_pair(rng.randint(1, 3)) if rng.random() < 0.5 else \
            bott_pair([rng.randint(-3, 3) for _ in range(rng.randint(1, 2))])
        chain = [cp]
        for _ in range(rng.randint(1, 3)):
            op = rng.choice(["product", "cut"])
            other = small_factor()
            if op == "product" and cp.dim + other.dim <= max_dim and \
                    cp.facet_count + other.facet_count <= max_facets:
                cp = product_pair(cp, other) if rng.random() < 0.5 else product_pair(other, cp)
            elif cp.dim >= 2 and cp.facet_count < max_facets:
                v = rng.randrange(len(cp.polytope.vertices))
                new = vertex_cut(cp, v)
                assert new.facet_count - cp.facet_count == 1
                assert len(new.polytope.vertices) - len(cp.polytope.vertices) == cp.dim - 1
                cp = new
                cuts += 1
            chain.append(cp)
        for c in chain:
            assert _revalidate(c) == c
            assert _euler(c.polytope)
    assert cuts > 100


@pytest.mark.criterion(7, "pair automorphisms independent of the reference vertex")
@pytest.mark.parametrize("name", sorted(small_pairs()))
def test_reference_vertex_independence(name):
    cp = small_pairs()[name]
    auts = poset_automorphisms(cp.polytope)
    sets = {
        frozenset((x.f.facet_perm, x.g) for x in
                  pair_automorphisms(cp, reference_vertex=v, poset_auts=auts, verify=False).pair_auts)
        for v in range(len(cp.polytope.vertices))
    }
    assert len(sets) == 1


@pytest.mark.criterion(8, "search --seed 42 is byte-identical across runs")
def test_search_determinism():
    cmd = [sys.executable, "-m", "charpair", "search", "m2_n5.json", "--mode", "random",
           "--bound", "4", "--samples", "200", "--seed", "42", "--json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second
    assert json.loads(first)["tested"] == 200
