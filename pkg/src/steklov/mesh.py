"""Triangulated parameter-grid meshes of the immersion families.

Annulus-type families mesh the full cylinder [-T*, T*] x S^1 with the theta
seam welded.  Mobius families mesh the fundamental domain [0, T*] x S^1 and
weld the core circle t = 0 through the half-turn identification, which
leaves a single boundary loop at t = T*.  Four-dimensional families are
written to OBJ/PLY through an orthogonal projection onto three chosen
coordinates; CSV always carries the full coordinates.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exceptions import DomainError
from .surfaces import ImmersionFamily, evaluate


class MeshFormat(Enum):
    OBJ = "obj"
    PLY = "ply"
    CSV = "csv"


@dataclass(frozen=True)
class SurfaceMesh:
    vertices: np.ndarray  # (V, ambient_dim)
    faces: np.ndarray  # (F, 3), 0-based
    params: np.ndarray  # (V, 2) representative (t, theta) per vertex

    @property
    def euler_characteristic(self) -> int:
        edges = set()
        for a, b, c in self.faces:
            for e in ((a, b), (b, c), (c, a)):
                edges.add((min(e), max(e)))
        return len(self.vertices) - len(edges) + len(self.faces)

    def boundary_loops(self) -> int:
        """Count closed loops of edges that belong to exactly one face."""
        from collections import Counter, defaultdict

        count: Counter = Counter()
        for a, b, c in self.faces:
            for e in ((a, b), (b, c), (c, a)):
                count[(min(e), max(e))] += 1
        boundary = [e for e, n in count.items() if n == 1]
        adj = defaultdict(list)
        for a, b in boundary:
            adj[a].append(b)
            adj[b].append(a)
        seen = set()
        loops = 0
        for start in adj:
            if start in seen:
                continue
            loops += 1
            stack = [start]
            while stack:
                v = stack.pop()
                if v in seen:
                    continue
                seen.add(v)
                stack.extend(adj[v])
        return loops


def build_mesh(fam: ImmersionFamily, n_t: int, n_theta: int) -> SurfaceMesh:
    if n_t < 3 or n_theta < 3:
        raise DomainError("grid must be at least 3x3")
    if fam.is_quotient and n_theta % 2 != 0:
        raise DomainError("the half-turn weld requires an even theta count")
    T = fam.T_star

    if fam.is_quotient:
        half = n_theta // 2
        t_vals = np.linspace(0.0, T, n_t + 1)
        th_vals = np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False)

        def vid(i: int, j: int) -> int:
            j %= n_theta
            if i == 0:
                return j % half
            return half + (i - 1) * n_theta + j

        params = [(0.0, th_vals[j]) for j in range(half)]
        params += [
            (t_vals[i], th_vals[j])
            for i in range(1, n_t + 1)
            for j in range(n_theta)
        ]
    else:
        t_vals = np.linspace(-T, T, n_t + 1)
        th_vals = np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False)

        def vid(i: int, j: int) -> int:
            return i * n_theta + (j % n_theta)

        params = [
            (t_vals[i], th_vals[j]) for i in range(n_t + 1) for j in range(n_theta)
        ]

    params = np.array(params)
    vertices = evaluate(fam, params[:, 0], params[:, 1])[0]

    faces = []
    for i in range(n_t):
        for j in range(n_theta):
            v00 = vid(i, j)
            v01 = vid(i, j + 1)
            v10 = vid(i + 1, j)
            v11 = vid(i + 1, j + 1)
            faces.append((v00, v01, v11))
            faces.append((v00, v11, v10))
    return SurfaceMesh(vertices=vertices, faces=np.array(faces), params=params)


def export_mesh(
    fam: ImmersionFamily,
    n_t: int,
    n_theta: int,
    fmt: MeshFormat,
    path: str,
    projection: tuple[int, int, int] = (0, 1, 2),
) -> SurfaceMesh:
    mesh = build_mesh(fam, n_t, n_theta)
    if fmt is MeshFormat.CSV:
        _write_csv(mesh, path, fam.ambient_dim)
    else:
        pts = mesh.vertices
        if fam.ambient_dim == 4:
            if len(set(projection)) != 3 or not all(0 <= p < 4 for p in projection):
                raise DomainError(f"invalid projection axes {projection}")
            pts = pts[:, list(projection)]
        if fmt is MeshFormat.OBJ:
            _write_obj(pts, mesh.faces, path)
        else:
            _write_ply(pts, mesh.faces, path)
    return mesh


def _fmt(v) -> str:
    return format(float(v), ".17g")


def _write_csv(mesh: SurfaceMesh, path: str, dim: int) -> None:
    header = ["t", "theta"] + [f"x{i + 1}" for i in range(dim)]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for (t, th), x in zip(mesh.params, mesh.vertices):
            writer.writerow([_fmt(t), _fmt(th)] + [_fmt(v) for v in x])


def _write_obj(pts: np.ndarray, faces: np.ndarray, path: str) -> None:
    with open(path, "w") as fh:
        for x, y, z in pts:
            fh.write(f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}\n")
        for a, b, c in faces:
            fh.write(f"f {a + 1} {b + 1} {c + 1}\n")


def _write_ply(pts: np.ndarray, faces: np.ndarray, path: str) -> None:
    with open(path, "w") as fh:
        fh.write("ply\nformat ascii 1.0\n")
        fh.write(f"element vertex {len(pts)}\n")
        fh.write("property double x\nproperty double y\nproperty double z\n")
        fh.write(f"element face {len(faces)}\n")
        fh.write("property list uchar int vertex_indices\nend_header\n")
        for x, y, z in pts:
            fh.write(f"{_fmt(x)} {_fmt(y)} {_fmt(z)}\n")
        for a, b, c in faces:
            fh.write(f"3 {a} {b} {c}\n")
