"""Mesh construction, topology invariants, and export formats."""

import csv
import math

import numpy as np
import pytest

from steklov.exceptions import DomainError
from steklov.mesh import MeshFormat, build_mesh, export_mesh
from steklov.surfaces import annulus_b4, catenoid_b3, evaluate, mobius_b4


def test_annulus_mesh_topology():
    mesh = build_mesh(catenoid_b3(1), 64, 128)
    assert mesh.euler_characteristic == 0
    assert mesh.boundary_loops() == 2
    assert len(mesh.vertices) == 65 * 128
    assert len(mesh.faces) == 2 * 64 * 128


def test_mobius_mesh_topology():
    mesh = build_mesh(mobius_b4(2, 1), 64, 128)
    assert mesh.euler_characteristic == 0
    assert mesh.boundary_loops() == 1
    # half-sized core row plus full rows
    assert len(mesh.vertices) == 64 + 64 * 128


def test_mobius_core_weld_is_consistent():
    fam = mobius_b4(2, 1)
    mesh = build_mesh(fam, 8, 16)
    # each core vertex represents both (0, th) and (0, th+pi); the immersion
    # must agree on the two representatives
    for j in range(8):
        t, th = mesh.params[j]
        u1 = evaluate(fam, t, th)[0]
        u2 = evaluate(fam, -t, th + math.pi)[0]
        assert np.max(np.abs(u1 - u2)) < 1e-14


def test_vertices_lie_in_closed_unit_ball():
    for fam in (catenoid_b3(2), annulus_b4(3, 2), mobius_b4(4, 3)):
        mesh = build_mesh(fam, 24, 48)
        norms = np.linalg.norm(mesh.vertices, axis=1)
        assert np.max(norms) <= 1.0 + 1e-12
        # boundary rows touch the sphere
        assert np.max(norms) >= 1.0 - 1e-12


def test_grid_validation():
    with pytest.raises(DomainError):
        build_mesh(catenoid_b3(1), 2, 64)
    with pytest.raises(DomainError):
        build_mesh(mobius_b4(2, 1), 16, 15)  # odd theta count cannot weld


def test_csv_round_trip(tmp_path):
    fam = mobius_b4(2, 1)
    path = tmp_path / "band.csv"
    mesh = export_mesh(fam, 12, 24, MeshFormat.CSV, str(path))
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["t", "theta", "x1", "x2", "x3", "x4"]
    values = np.array([[float(x) for x in row] for row in rows[1:]])
    assert np.array_equal(values[:, 2:], mesh.vertices)  # exact round trip
    assert np.array_equal(values[:, :2], mesh.params)


def test_obj_export(tmp_path):
    path = tmp_path / "cat.obj"
    mesh = export_mesh(catenoid_b3(1), 8, 16, MeshFormat.OBJ, str(path))
    lines = path.read_text().splitlines()
    v_lines = [l for l in lines if l.startswith("v ")]
    f_lines = [l for l in lines if l.startswith("f ")]
    assert len(v_lines) == len(mesh.vertices)
    assert len(f_lines) == len(mesh.faces)
    # 1-based indices within range
    idx = [int(tok) for l in f_lines for tok in l.split()[1:]]
    assert min(idx) == 1 and max(idx) == len(mesh.vertices)


def test_ply_export(tmp_path):
    path = tmp_path / "band.ply"
    mesh = export_mesh(mobius_b4(2, 1), 8, 16, MeshFormat.PLY, str(path))
    text = path.read_text().splitlines()
    assert text[0] == "ply"
    assert f"element vertex {len(mesh.vertices)}" in text
    assert f"element face {len(mesh.faces)}" in text


def test_projection_choice(tmp_path):
    fam = mobius_b4(2, 1)
    path = tmp_path / "proj.obj"
    export_mesh(fam, 8, 16, MeshFormat.OBJ, str(path), projection=(0, 1, 3))
    first = path.read_text().splitlines()[0].split()[1:]
    mesh = build_mesh(fam, 8, 16)
    assert [float(x) for x in first] == list(mesh.vertices[0, [0, 1, 3]])
    with pytest.raises(DomainError):
        export_mesh(fam, 8, 16, MeshFormat.OBJ, str(path), projection=(0, 1, 4))
    with pytest.raises(DomainError):
        export_mesh(fam, 8, 16, MeshFormat.OBJ, str(path), projection=(0, 1, 1))


def test_boundary_loops_vertex_counts():
    # annulus boundary loops have n_theta vertices each; Mobius has one loop
    # of 2*n_theta edges worth of boundary (single circle of length 2 pi f)
    from collections import Counter

    mesh = build_mesh(mobius_b4(2, 1), 16, 32)
    count = Counter()
    for a, b, c in mesh.faces:
        for e in ((a, b), (b, c), (c, a)):
            count[(min(e), max(e))] += 1
    boundary_edges = [e for e, n in count.items() if n == 1]
    assert len(boundary_edges) == 32
