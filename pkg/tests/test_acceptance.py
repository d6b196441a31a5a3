"""Acceptance criteria, one test each, with their time limits.

Run ``pytest tests/test_acceptance.py`` for the summary lines, or
``python3 tests/test_acceptance.py`` to run the checks without pytest.
"""
import os
import random
import sys
import time

sys.path.insert(0, os.path.dirname(__file__))

from crossflip.balance import is_proper
from crossflip.constructions import build_bundle_double, rp2_6, s2_twisted_s1_12, walkup_equality_gap
from crossflip.core import barycentric_subdivision, cross_polytope_boundary, is_pseudomanifold, standard_sphere
from crossflip.fixtures import get
from crossflip.flips import _catalog, flip, flip_catalog, full_scan, trivial_template
from crossflip.isomorphism import is_isomorphic
from crossflip.search import SearchState, is_irreducible, reduce, removable_candidates
from crossflip.topology import (all_vertex_links_isomorphic, betti_f2, classify_surface,
                                verify_shelling)

from conftest import random_walk
from reference import (BUNDLE_DOUBLE, CROSS_3, FIXTURE_F_VECTORS, RP2_9, TABLE_1, TWISTED_12)

RESULTS: dict[int, str] = {}


def record(n, ok, elapsed, limit, detail=""):
    within = elapsed < limit
    passed = ok and within
    line = (f"criterion {n:2d}: {'PASS' if passed else 'FAIL'}  {elapsed:7.2f}s / {limit:g}s"
            + (f"  {detail}" if detail else ""))
    RESULTS[n] = line
    print(line)
    assert ok, line
    assert within, line


def test_criterion_01_catalog_sizes():
    _catalog.cache_clear()
    t = time.perf_counter()
    sizes = {d: len(flip_catalog(d)) for d in (2, 3)}
    elapsed = time.perf_counter() - t
    record(1, sizes == {2: 6, 3: 14}, elapsed, 1.0, f"sizes={sizes}")


def test_criterion_02_table_pairs():
    flip_catalog(3)
    t = time.perf_counter()
    pairs = {frozenset((x.template_id, x.reverse_id)) for x in flip_catalog(3)}
    triv = trivial_template(3)
    pairs.add(frozenset((triv.template_id, triv.reverse_id)))
    found = {}
    for x in flip_catalog(3) + [triv]:
        found[x.template_id] = x.phi.f_vector
    ok = len(pairs) == 8
    for j, fj, k, fk in TABLE_1:
        tid = "[" + ",".join(map(str, j)) + "]"
        kid = "[" + ",".join(map(str, k)) + "]"
        ok &= found.get(tid) == fj and found.get(kid) == fk
        ok &= frozenset((tid, kid)) in pairs
    elapsed = time.perf_counter() - t
    record(2, ok, elapsed, 1.0, f"pairs={len(pairs)}")


def test_criterion_03_fixtures():
    t = time.perf_counter()
    rp3 = get("rp3_16").load()
    from crossflip.balance import find_coloring
    col = find_coloring(rp3)
    ok_rp3 = (rp3.f_vector == FIXTURE_F_VECTORS["rp3_16"]
              and tuple(sorted(col.class_sizes)) == (4, 4, 4, 4)
              and all_vertex_links_isomorphic(rp3)
              and betti_f2(rp3).betti == (1, 1, 1, 1))
    cx2, order = get("double_trefoil_22").load_with_order()
    ok_2t = cx2.f_vector == FIXTURE_F_VECTORS["double_trefoil_22"] and verify_shelling(cx2, order)
    cx3 = get("triple_trefoil_28").load()
    ok_3t = (cx3.f_vector == FIXTURE_F_VECTORS["triple_trefoil_28"]
             and betti_f2(cx3).betti == (1, 0, 0, 1))
    elapsed = time.perf_counter() - t
    record(3, ok_rp3 and ok_2t and ok_3t, elapsed, 10.0, f"rp3={ok_rp3} 2T={ok_2t} 3T={ok_3t}")


def test_criterion_04_irreducible_subdivision():
    t = time.perf_counter()
    irred = is_irreducible(barycentric_subdivision(standard_sphere(3)))
    cands = removable_candidates(barycentric_subdivision(standard_sphere(2)))
    elapsed = time.perf_counter() - t
    record(4, irred and len(cands) == 6, elapsed, 5.0,
           f"irreducible={irred} candidates={len(cands)}")


def test_criterion_05_two_sphere_reduction():
    t = time.perf_counter()
    start = barycentric_subdivision(standard_sphere(2))
    target = cross_polytope_boundary(2)
    hits = 0
    for seed in range(10):
        best = reduce(start, budget=500, seed=seed, target_f0=6).best
        hits += best.f_vector == CROSS_3 and is_isomorphic(best, target) is not None
    elapsed = time.perf_counter() - t
    record(5, hits >= 9, elapsed, 30.0, f"hits={hits}/10")


def test_criterion_06_projective_plane():
    t = time.perf_counter()
    start = barycentric_subdivision(rp2_6())
    hits, good = 0, True
    for seed in range(10):
        state = reduce(start, budget=5000, seed=seed, target_f0=9)
        if state.best.f_vector != RP2_9:
            continue
        hits += 1
        s = classify_surface(state.best)
        good &= (not s.orientable and s.euler == 1
                 and min(state.best_coloring.class_sizes) >= 3)
    elapsed = time.perf_counter() - t
    record(6, hits >= 1 and good, elapsed, 600.0, f"hits={hits}/10 classified={good}")


def _flip_invariants(d, total, seeds, max_f0):
    done = bad = 0
    per_seed = total // len(seeds)
    for seed in seeds:
        for state, emb in random_walk(d, per_seed, seed, max_f0=max_f0):
            before = state.complex
            res = flip(before, state.coloring, emb)
            ok = is_proper(res.complex, res.coloring) and is_pseudomanifold(res.complex)
            ok &= betti_f2(res.complex).betti == betti_f2(before).betti
            back = flip(res.complex, res.coloring, res.inverse_embedding())
            ok &= is_isomorphic(back.complex, before) is not None
            bad += not ok
            done += 1
    return done, bad


def test_criterion_07_random_flip_invariants():
    t = time.perf_counter()
    n2, bad2 = _flip_invariants(2, 5000, range(10), 14)
    n3, bad3 = _flip_invariants(3, 5000, range(10), 12)
    elapsed = time.perf_counter() - t
    record(7, n2 + n3 == 10_000 and bad2 + bad3 == 0, elapsed, 300.0,
           f"flips={n2 + n3} violations={bad2 + bad3}")


def test_criterion_08_refresh_matches_rescan():
    t = time.perf_counter()
    mismatches = steps = 0
    for state, _ in random_walk(3, 200, 11, max_f0=16):
        fresh = full_scan(state.complex, state.coloring, state.templates)
        same = set(fresh) == set(state.cache) and all(
            fresh[k].vertex_map == state.cache[k].vertex_map for k in fresh)
        mismatches += not same
        steps += 1
    elapsed = time.perf_counter() - t
    record(8, steps == 200 and mismatches == 0, elapsed, 120.0,
           f"steps={steps} mismatches={mismatches}")


def test_criterion_09_bundle_doubles():
    t = time.perf_counter()
    ok = True
    details = []
    for kind in ("twisted", "orientable"):
        cx, col, _ = build_bundle_double(kind)
        beta1 = betti_f2(cx).reduced[1]
        gap = walkup_equality_gap(cx, beta1)
        ok &= cx.f_vector == BUNDLE_DOUBLE and beta1 == 2 and gap == 0 and is_proper(cx, col)
        details.append(f"{kind}:b1={beta1},gap={gap}")
    twelve = s2_twisted_s1_12()[0]
    ok &= twelve.f_vector == TWISTED_12
    elapsed = time.perf_counter() - t
    record(9, ok, elapsed, 10.0, " ".join(details))


def test_criterion_10_protected_knot():
    t = time.perf_counter()
    fx = get("double_trefoil_22")
    cx = fx.load()
    knot = fx.knot_edges()
    lost = []

    def watch(state):
        lost.extend(e for e in knot if not state.complex.contains_face(e))

    state = reduce(cx, budget=100, seed=0, constraints=knot, callback=watch)
    elapsed = time.perf_counter() - t
    record(10, state.steps == 100 and not lost, elapsed, 60.0,
           f"flips={state.steps} lost_edges={len(lost)} f0={state.complex.num_vertices}")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
