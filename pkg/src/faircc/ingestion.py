"""Reading and writing graphs, embeddings and clusterings; synthetic generators.

File formats (UTF-8):

* colors file: ``id<TAB>color_label`` per line; vertex index = line order
* edges file: ``id<TAB>id`` per positive pair
* embeddings: CSV with header ``id,color,x0,...,x{d-1}``
* graph file: header ``n<TAB>C``, then ``n`` color-id lines, then ``u<TAB>v`` pair lines
* clustering file: ``vertex<TAB>cluster`` per line
"""

import csv
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from pathlib import Path

import numpy as np

from .exceptions import (
    DimensionMismatch,
    DuplicateEdge,
    DuplicateId,
    IndivisibleSizes,
    ParseError,
    SelfLoop,
    UnknownVertexId,
    VertexSetMismatch,
)
from .graph import Clustering, SignedGraph, build_graph


def _encode_labels(labels):
    """Map raw color labels to ids ``0..C-1`` (numeric order if all labels are ints)."""
    uniq = sorted(set(labels))
    try:
        uniq = sorted(uniq, key=int)
    except ValueError:
        pass
    index = {lab: i for i, lab in enumerate(uniq)}
    return np.array([index[lab] for lab in labels], dtype=np.int64), uniq


def _lines(path):
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\r\n")
            if line.strip():
                yield lineno, line


def load_colors(path):
    ids, labels, index = [], [], {}
    for lineno, line in _lines(path):
        fields = line.split("\t")
        if len(fields) != 2:
            raise ParseError(f"expected 'id<TAB>color', got {line!r}", lineno)
        vid, label = fields[0].strip(), fields[1].strip()
        if vid in index:
            raise DuplicateId(f"vertex id {vid!r} repeated", lineno)
        index[vid] = len(ids)
        ids.append(vid)
        labels.append(label)
    colors, color_labels = _encode_labels(labels)
    return ids, colors, color_labels


def load_edge_graph(colors_path, edges_path, return_ids=False):
    ids, colors, _ = load_colors(colors_path)
    index = {vid: i for i, vid in enumerate(ids)}
    pairs, seen = [], set()
    for lineno, line in _lines(edges_path):
        fields = line.split("\t")
        if len(fields) != 2:
            raise ParseError(f"expected 'id<TAB>id', got {line!r}", lineno)
        try:
            u, v = (index[f.strip()] for f in fields)
        except KeyError as exc:
            raise UnknownVertexId(f"unknown vertex id {exc.args[0]!r}", lineno) from None
        if u == v:
            raise SelfLoop(f"line {lineno}: self pair on {ids[u]!r}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(f"line {lineno}: pair ({ids[u]!r}, {ids[v]!r}) repeated")
        seen.add(key)
        pairs.append(key)
    g = build_graph(len(ids), pairs, colors)
    return (g, ids) if return_ids else g


def save_edge_graph(g, colors_path, edges_path, ids=None):
    ids = [str(i) for i in range(g.n)] if ids is None else list(ids)
    with open(colors_path, "w", encoding="utf-8") as fh:
        for vid, c in zip(ids, g.colors):
            fh.write(f"{vid}\t{c}\n")
    with open(edges_path, "w", encoding="utf-8") as fh:
        for u, v in g.positive:
            fh.write(f"{ids[u]}\t{ids[v]}\n")


def save_graph(g, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{g.n}\t{g.n_colors}\n")
        fh.writelines(f"{c}\n" for c in g.colors)
        fh.writelines(f"{u}\t{v}\n" for u, v in g.positive)


def load_graph(path):
    lines = _lines(path)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("empty graph file", 1) from None
    try:
        n, n_colors = (int(x) for x in header.split("\t"))
    except ValueError:
        raise ParseError(f"bad header {header!r}, expected 'n<TAB>C'", lineno) from None
    colors, pairs = [], []
    for lineno, line in lines:
        fields = line.split("\t")
        try:
            if len(colors) < n:
                if len(fields) != 1:
                    raise ValueError
                colors.append(int(fields[0]))
            else:
                if len(fields) != 2:
                    raise ValueError
                pairs.append((int(fields[0]), int(fields[1])))
        except ValueError:
            raise ParseError(f"malformed line {line!r}", lineno) from None
    if len(colors) != n:
        raise ParseError(f"expected {n} color lines, found {len(colors)}")
    g = build_graph(n, pairs, colors)
    if g.n_colors != n_colors:
        raise ParseError(f"header says C={n_colors} but colors use {g.n_colors}")
    return g


def save_clustering(c, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.writelines(f"{v}\t{k}\n" for v, k in enumerate(c.labels))


def load_clustering(path, n):
    labels = np.full(n, -1, dtype=np.int64)
    for lineno, line in _lines(path):
        fields = line.split("\t")
        try:
            v, k = int(fields[0]), int(fields[1])
            if len(fields) != 2:
                raise ValueError
        except (ValueError, IndexError):
            raise ParseError(f"expected 'vertex<TAB>cluster', got {line!r}", lineno) from None
        if not (0 <= v < n):
            raise UnknownVertexId(f"vertex {v} outside [0, {n})", lineno)
        if labels[v] != -1:
            raise DuplicateId(f"vertex {v} assigned twice", lineno)
        labels[v] = k
    missing = np.flatnonzero(labels == -1)
    if len(missing):
        raise VertexSetMismatch(f"{len(missing)} vertices unassigned (first: {missing[0]})")
    return Clustering(labels)


@dataclass(frozen=True)
class EmbeddingTable:
    ids: tuple
    colors: np.ndarray
    vectors: np.ndarray
    color_labels: tuple = ()

    def __post_init__(self):
        if self.vectors.ndim != 2 or len(self.vectors) != len(self.ids):
            raise DimensionMismatch("vectors must be an (n, d) array matching ids")
        if len(set(self.ids)) != len(self.ids):
            raise DuplicateId("embedding ids must be unique")
        if len(self.colors) != len(self.ids):
            raise DimensionMismatch("one color per row required")

    @property
    def n(self):
        return len(self.ids)

    @property
    def dim(self):
        return self.vectors.shape[1]


def load_embeddings(path):
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty embeddings file", 1) from None
        if len(header) < 3 or [h.strip() for h in header[:2]] != ["id", "color"]:
            raise ParseError("header must be 'id,color,x0,...'", 1)
        dim = len(header) - 2
        ids, labels, rows, seen = [], [], [], set()
        for lineno, row in enumerate(reader, start=2):
            if not row or not any(cell.strip() for cell in row):
                continue
            if len(row) != dim + 2:
                raise DimensionMismatch(f"line {lineno}: expected {dim} coordinates, got {len(row) - 2}")
            vid = row[0].strip()
            if vid in seen:
                raise DuplicateId(f"id {vid!r} repeated", lineno)
            seen.add(vid)
            try:
                rows.append([float(x) for x in row[2:]])
            except ValueError:
                raise ParseError("non-numeric coordinate", lineno) from None
            ids.append(vid)
            labels.append(row[1].strip())
    colors, color_labels = _encode_labels(labels)
    vectors = np.array(rows, dtype=np.float64).reshape(len(ids), dim)
    return EmbeddingTable(tuple(ids), colors, vectors, tuple(color_labels))


def save_embeddings(table, path):
    labels = table.color_labels or tuple(str(i) for i in range(int(table.colors.max()) + 1))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["id", "color"] + [f"x{i}" for i in range(table.dim)])
        for vid, c, vec in zip(table.ids, table.colors, table.vectors):
            w.writerow([vid, labels[c]] + [repr(float(x)) for x in vec])


def _exact_theta(theta):
    th = Fraction(str(theta)) if isinstance(theta, float) else Fraction(theta)
    if not (0 <= th <= 1):
        raise ValueError(f"theta must lie in [0, 1], got {theta}")
    return th


def n_positive_for(theta, n_edges):
    return floor(_exact_theta(theta) * n_edges)


def threshold_graph(table, theta):
    """Label the top ``floor(theta * |E|)`` pairs by dot product positive.

    Pairs are ranked by dot product (descending) and then by ``(u, v)``
    ascending, so equal dot products resolve deterministically.
    """
    n = table.n
    if n < 2:
        raise ValueError("need at least two rows")
    V = np.asarray(table.vectors, dtype=np.float64)
    dots = V @ V.T
    iu, ju = np.triu_indices(n, 1)
    k = n_positive_for(theta, len(iu))
    order = np.lexsort((ju, iu, -dots[iu, ju]))[:k]
    pairs = np.column_stack([iu[order], ju[order]])
    return build_graph(n, pairs, table.colors, _trusted=True)


def synth_embeddings(n, n_colors=2, dim=10, rng=None, color_shift=0.0):
    """Gaussian vectors; ``color_shift`` pulls each color toward its own mean."""
    rng = np.random.default_rng(rng)
    colors = np.arange(n) % n_colors
    means = rng.normal(size=(n_colors, dim)) * color_shift
    vectors = rng.normal(size=(n, dim)) + means[colors]
    ids = tuple(f"v{i}" for i in range(n))
    return EmbeddingTable(ids, colors, vectors, tuple(str(c) for c in range(n_colors)))


def synth_planted(n, n_colors, k_clusters, p_in, p_out, rng=None):
    """Planted color-balanced clusters; returns ``(graph, ground_truth)``.

    Cluster ``i`` holds vertices ``[i*s, (i+1)*s)`` with ``s = n / k_clusters``,
    colored round-robin. Pairs inside a cluster are positive with probability
    ``p_in``, other pairs with probability ``p_out``.
    """
    if k_clusters < 1 or n % k_clusters:
        raise IndivisibleSizes(f"n = {n} is not divisible by k_clusters = {k_clusters}")
    size = n // k_clusters
    if size % n_colors:
        raise IndivisibleSizes(f"cluster size {size} cannot hold {n_colors} colors equally")
    rng = np.random.default_rng(rng)
    truth = np.repeat(np.arange(k_clusters), size)
    colors = np.tile(np.arange(n_colors), n // n_colors)
    same = truth[:, None] == truth[None, :]
    draw = rng.random((n, n))
    A = np.where(same, draw < p_in, draw < p_out)
    A = np.triu(A, 1)
    A = A | A.T
    return SignedGraph.from_adjacency(A, colors), Clustering(truth)


def graph_name(path):
    return Path(path).stem
