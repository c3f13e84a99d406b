"""Constructive pipeline: loop making, surgery, pulling, flattening."""

from __future__ import annotations

import json
import math

import pytest

from pantsorbit import (
    BadGenusError,
    BoundCertificate,
    BoundViolation,
    GenusTooSmallError,
    NoLoopError,
    ShiftPath,
    WrongLoopCountError,
    canonical_form,
    flatten_bound,
    flatten_to_oloops,
    from_edge_list,
    girth,
    is_isomorphic,
    loop_count,
    loop_surgery,
    make_loop,
    make_oloops,
    path_to_oloops,
    pull_all_loops,
    pull_bound,
    theorem1_bound,
)


def test_theorem1_values():
    assert theorem1_bound(2) == 2.0
    assert math.isclose(theorem1_bound(5), 4 * math.log2(24) + 14, abs_tol=1e-9)
    assert math.isclose(theorem1_bound(5), 32.33985, abs_tol=1e-4)
    assert math.isclose(theorem1_bound(6), 4 * math.log2(120) + 20, abs_tol=1e-9)
    assert math.isclose(theorem1_bound(6), 47.62757, abs_tol=1e-4)
    with pytest.raises(BadGenusError):
        theorem1_bound(1)


def test_make_loop(dumbbell, theta, k4):
    end, path = make_loop(dumbbell)
    assert len(path) == 0 and end is dumbbell
    end, path = make_loop(theta)
    assert len(path) == 1 and loop_count(end) > 0
    end, path = make_loop(k4)
    assert len(path) == 2 and loop_count(end) > 0
    assert len(path) <= 1 + 2 * math.log2(k4.genus - 1)


def test_make_loop_length_is_girth_minus_one(atlas_for):
    for genus in (3, 4, 5):
        for rep in atlas_for(genus).representatives:
            if loop_count(rep) == 0:
                _, path = make_loop(rep)
                assert len(path) == girth(rep)[0] - 1


def test_surgery_oloops3(dumbbell):
    smaller, record = loop_surgery(make_oloops(3))
    smaller.validate()
    assert smaller.genus == 2
    assert is_isomorphic(smaller, dumbbell)
    assert record.joined_edge_id in smaller.edge_id_list()


def test_surgery_counts(atlas_for):
    for rep in atlas_for(4).representatives:
        if loop_count(rep) == 0:
            continue
        smaller, record = loop_surgery(rep)
        smaller.validate()
        assert smaller.vertex_count == rep.vertex_count - 2
        assert smaller.edge_count == rep.edge_count - 3
        kept = set(smaller.edge_id_list()) - {record.joined_edge_id}
        assert kept < set(rep.edge_id_list())


def test_surgery_parallel_join_makes_loop(dumbbell):
    g = from_edge_list(4, [(0, 0), (0, 1), (1, 2), (1, 2), (2, 3), (3, 3)])
    smaller, record = loop_surgery(g, loop_edge=0)
    assert smaller.is_loop(record.joined_edge_id)
    assert is_isomorphic(smaller, dumbbell)


def test_surgery_errors(dumbbell, k4):
    with pytest.raises(GenusTooSmallError):
        loop_surgery(dumbbell)
    with pytest.raises(NoLoopError):
        loop_surgery(k4)
    g = from_edge_list(4, [(0, 0), (0, 1), (1, 2), (1, 2), (2, 3), (3, 3)])
    with pytest.raises(NoLoopError):
        loop_surgery(g, loop_edge=1)  # not a loop


def test_pull_dumbbell_empty(dumbbell):
    cert = pull_all_loops(dumbbell)
    assert len(cert) == 0
    assert cert.stage_lengths == {}


def test_pull_theta(theta):
    cert = pull_all_loops(theta)
    assert len(cert) == 1
    assert cert.claimed_bound == 1.0
    end = cert.validate()
    assert loop_count(end) == 2


def test_pull_certificates_small(atlas_for):
    for genus in (3, 4):
        bound = pull_bound(genus)
        for rep in atlas_for(genus).representatives:
            cert = pull_all_loops(rep)
            end = cert.validate()
            assert loop_count(end) == genus
            assert len(cert) <= bound
            assert sum(cert.stage_lengths.values()) == len(cert)


def test_flatten_small_is_empty(atlas_for):
    for genus in (2, 3, 4, 5):
        hub = make_oloops(genus)
        for rep in atlas_for(genus).representatives:
            if loop_count(rep) == genus:
                assert is_isomorphic(rep, hub)
                assert len(flatten_to_oloops(rep)) == 0


def test_flatten_star_core_genus6():
    star = from_edge_list(
        10,
        [(0, 1), (0, 2), (0, 3),
         (1, 4), (4, 4), (1, 5), (5, 5),
         (2, 6), (6, 6), (2, 7), (7, 7),
         (3, 8), (8, 8), (3, 9), (9, 9)],
    )
    cert = flatten_to_oloops(star)
    assert len(cert) == 1
    assert is_isomorphic(cert.validate(), make_oloops(6))


def test_flatten_wrong_loop_count(theta):
    with pytest.raises(WrongLoopCountError):
        flatten_to_oloops(theta)


def test_path_to_oloops_theta(theta):
    cert = path_to_oloops(theta)
    assert len(cert) == 1
    assert is_isomorphic(cert.validate(), make_oloops(2))


def test_path_to_oloops_fixed_point():
    for genus in (2, 3, 5):
        cert = path_to_oloops(make_oloops(genus))
        assert len(cert) == 0


def test_path_to_oloops_sweep(atlas_for):
    genus = 4
    allowance = pull_bound(genus) + flatten_bound(genus)
    for rep in atlas_for(genus).representatives:
        cert = path_to_oloops(rep)
        end = cert.validate()
        assert is_isomorphic(end, make_oloops(genus))
        assert len(cert) <= allowance


def test_oracle_dominance_genus4(atlas_for):
    from pantsorbit import bfs_distance

    atlas = atlas_for(4)
    hub = canonical_form(make_oloops(4))
    for i, rep in enumerate(atlas.representatives):
        cert = path_to_oloops(rep)
        assert bfs_distance(atlas, atlas.forms[i], hub) <= len(cert)


def test_certificate_validation_catches_bad_bound(theta):
    cert = pull_all_loops(theta)
    doctored = BoundCertificate(cert.path, 0.5, cert.stage_lengths)
    with pytest.raises(BoundViolation):
        doctored.validate()
    lying_stages = BoundCertificate(cert.path, cert.claimed_bound, {"genus2": 7})
    with pytest.raises(BoundViolation):
        lying_stages.validate()


def test_certificate_json(theta):
    cert = pull_all_loops(theta)
    obj = json.loads(cert.to_json())
    assert set(obj) == {"stage_lengths", "bound", "path"}
    assert obj["bound"] == 1.0
    replay = ShiftPath.from_json(json.dumps(obj["path"]))
    assert loop_count(replay.end()) == 2
