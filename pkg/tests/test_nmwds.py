"""Non-manifold layer: splitmap, sigma translation, global queries."""

import itertools

import pytest

from nmdecomp.complexes import resolve_tokens, simplex
from nmdecomp.decompose import decompose
from nmdecomp.errors import IsSplitting, NotIncident, UnknownVertex
from nmdecomp.nonmanifold import build_nm_layer, travel_star, v_nra_vertices
from nmdecomp.oracle import oracle_snm
from nmdecomp.winged import Ewds


@pytest.fixture(scope="module")
def nm_mixed(mixed):
    return build_nm_layer(Ewds.build(decompose(mixed)))


@pytest.fixture(scope="module")
def nm_cones(cones):
    return build_nm_layer(Ewds.build(decompose(cones)))


def test_v_nra_auto_mixed(nm_mixed):
    assert nm_mixed.v_nra == [5, 6, 8]


def test_v_nra_all(mixed):
    ew = Ewds.build(decompose(mixed))
    nm = build_nm_layer(ew, vnra="all")
    assert nm.v_nra == list(range(1, 13))
    # conservative harvesting must not change the splitmap domain
    assert set(nm.splitmap) == {(6, 8)}


def test_splitmap_mixed(nm_mixed):
    assert set(nm_mixed.splitmap) == {(6, 8)}
    entry = nm_mixed.splitmap[(6, 8)]
    assert entry == {(6, 8): {5}, (14, 15): {9}}


def test_splitmap_cones(nm_cones, cones):
    dom = sorted(
        tuple(cones.label_of(v) for v in key) for key in nm_cones.splitmap
    )
    assert dom == [("x", "y"), ("x", "y", "z"), ("x", "z"), ("y", "z")]
    xyz = resolve_tokens(cones, ["x", "y", "z"])
    entry = nm_cones.splitmap[xyz]
    # one copy (nothing splits), three patches: one rep per cavity tet
    assert list(entry) == [xyz]
    reps = entry[xyz]
    ew = nm_cones.ewds
    assert sorted(ew.top_old[t] for t in reps) == [34, 35, 36]


def test_travel_star_is_one_patch(nm_cones, cones):
    ew = nm_cones.ewds
    xyz = resolve_tokens(cones, ["x", "y", "z"])
    t34 = ew.top_new[34]
    visited = travel_star(ew, xyz, t34)
    # the diamond mark fences each cavity tet into its own patch
    assert visited == [t34]
    with pytest.raises(NotIncident):
        travel_star(ew, (1, 2), t34)


def test_travel_star_flags_shared(nm_mixed):
    # tops 7,8 share the order-2 triangle {9,12,11}, so the patch of the
    # edge {9,11} spans all three tets
    flags = {}
    a = travel_star(nm_mixed.ewds, (9, 11), 8, flags)
    assert set(a) == {7, 8, 9}
    # flags are per (top, pattern) bits: the first walk marked top 9 too,
    # so reseeding there revisits nothing
    b = travel_star(nm_mixed.ewds, (9, 11), 9, flags)
    assert b == []


def test_sigma_n_inverse(nm_mixed):
    assert nm_mixed.sigma_n_inverse((9, 12)) == (9, 12)
    assert nm_mixed.sigma_n_inverse((6, 9)) == (9, 14)
    with pytest.raises(IsSplitting):
        nm_mixed.sigma_n_inverse((6, 8))
    with pytest.raises(IsSplitting):
        nm_mixed.sigma_n_inverse((5,))
    with pytest.raises(NotIncident):
        nm_mixed.sigma_n_inverse((1, 2))


def test_snh_given_cones(nm_cones, cones):
    # tops are addressed in packed ids; the cavity tets sit at the tail
    ew = nm_cones.ewds
    xyz = resolve_tokens(cones, ["x", "y", "z"])
    got = nm_cones.snh_given(xyz, ew.top_new[34])
    assert sorted(ew.top_old[t] for t in got) == [34, 35, 36]
    with pytest.raises(NotIncident):
        nm_cones.snh_given(xyz, ew.top_new[1])


def test_snh_given_mixed(nm_mixed):
    # key simplex: reaches both tops of its patch set
    assert nm_mixed.snh_given((6, 8), 5) == [5]
    assert nm_mixed.snh_given((9, 11), 8) == [7, 8, 9]


def test_s0m_global(nm_mixed, mixed):
    for v in mixed.vertices:
        for m in range(1, 4):
            got = nm_mixed.s0m_global(v, m)
            assert got == oracle_snm(mixed, (v,), 0, m)
    with pytest.raises(UnknownVertex):
        nm_mixed.s0m_global(99, 1)


def test_snm_global_mixed_all_faces(nm_mixed, mixed):
    _check_all_faces(nm_mixed, mixed)


def test_snm_global_cones_all_faces(nm_cones, cones):
    _check_all_faces(nm_cones, cones)


def _check_all_faces(nm, src):
    d = src.dim
    for gamma in src.all_faces():
        n = len(gamma) - 1
        for m in range(n + 1, d + 1):
            assert nm.snm_global(gamma, n, m) == oracle_snm(src, gamma, n, m), (
                gamma,
                n,
                m,
            )


def test_snm_global_nonfaces(nm_mixed):
    assert nm_mixed.snm_global((1, 2), 1, 2) == set()
    assert nm_mixed.snm_global((3, 9), 1, 2) == set()
    assert nm_mixed.snm_global((99,), 0, 1) == set()


def test_snm_guards(nm_mixed):
    with pytest.raises(ValueError):
        nm_mixed.snm_global((6, 8), 1, 1)
    with pytest.raises(ValueError):
        nm_mixed.snm_global((6, 8), 2, 3)


def test_snm_given_vs_global(nm_mixed, mixed):
    # with a resolvable copy the per-copy variant agrees with global
    for gamma in mixed.all_faces():
        n = len(gamma) - 1
        if n == 0:
            continue
        for m in range(n + 1, mixed.dim + 1):
            assert nm_mixed.snm_given(gamma, n, m) == nm_mixed.snm_global(
                gamma, n, m
            )


def test_no_trie_fallback(mixed):
    nm = build_nm_layer(Ewds.build(decompose(mixed)), with_trie=False)
    assert nm.trie is None
    for gamma in ((9, 11), (6, 9), (4,)):
        n = len(gamma) - 1
        got = nm.snm_global(gamma, n, n + 1)
        assert got == oracle_snm(mixed, gamma, n, n + 1)


def test_stats_mixed(nm_mixed):
    st = nm_mixed.stats()
    assert st["NS"] == 3 and st["NC"] == 6
    assert st["NSP"] == 5
    assert st["phi"] == 50
    assert st["H_hat"] == pytest.approx(1263.0837161, rel=1e-9)


def test_stats_identity_complex(fan):
    nm = build_nm_layer(Ewds.build(decompose(fan)))
    st = nm.stats()
    assert st["NS"] == 0 and st["NC"] == 0
    assert st["NSP"] == 0 and st["phi"] == 0
    assert st["H_hat"] == 0.0


def test_nsp_tops(nm_mixed):
    assert nm_mixed.nsp_tops() == {4, 5, 6, 8, 9}


def test_v_nra_mode_guard(mixed):
    ew = Ewds.build(decompose(mixed))
    with pytest.raises(ValueError):
        build_nm_layer(ew, vnra="sometimes")


def test_copy_positions_translate(nm_mixed):
    # to_source undoes the vertex repack composed with sigma
    assert nm_mixed.to_source(simplex((14, 15))) == (6, 8)
    assert nm_mixed.to_source(simplex((9, 12))) == (9, 12)
