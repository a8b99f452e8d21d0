"""Dataset CSV I/O, min-max normalisation, bundled fixtures and seeded generators.

Generated datasets are reproducible across platforms and languages.  The RNG
is xorshift64* seeded through splitmix64:

    seed:     state = splitmix64(seed mod 2**64), replaced by 1 if zero
    splitmix64(x): x += 0x9E3779B97F4A7C15
                   z = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9
                   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
                   return z ^ (z >> 31)
    next():   x ^= x >> 12; x ^= x << 25; x ^= x >> 27
              return x * 0x2545F4914F6CDD1D            (all mod 2**64)
    uniform() = (next() >> 11) * 2**-53                 in [0, 1)
    normal()  = Box-Muller on u1 = 1 - uniform(), u2 = uniform();
                cos branch first, the sin branch is cached for the next call
    below(n)  = floor(uniform() * n)

Every coordinate is rounded to 12 significant digits, so the CSV written for
a dataset reads back to exactly the same values.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .errors import EmptyFile, InvalidSpec, ParseError, RaggedRows
from .gb_core import Dataset

NOISE_LABEL = -1
FAMILIES = ("blobs", "moons", "rings", "spirals", "uniform-noise-overlay")
LABEL_COLUMN_NAMES = ("label", "class", "target")

_MASK = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    z = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class XorShiftRNG:
    def __init__(self, seed: int):
        self.state = _splitmix64(seed & _MASK) or 1
        self._spare: Optional[float] = None

    def next(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & _MASK

    def uniform(self) -> float:
        return (self.next() >> 11) * (1.0 / (1 << 53))

    def normal(self) -> float:
        if self._spare is not None:
            z, self._spare = self._spare, None
            return z
        u1 = 1.0 - self.uniform()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        self._spare = r * math.sin(2.0 * math.pi * u2)
        return r * math.cos(2.0 * math.pi * u2)

    def below(self, n: int) -> int:
        return int(self.uniform() * n)


def _round12(a: np.ndarray) -> np.ndarray:
    return np.array([float(format(v, ".12g")) for v in a.ravel()]).reshape(a.shape)


@dataclass
class GeneratorSpec:
    family: str
    n_points: int
    noise_fraction: float = 0.0
    noise_sigma: float = 0.05
    seed: int = 0
    n_clusters: int = 2  # blobs
    centers: Optional[list] = None  # blobs; default: on the unit circle
    sigmas: Optional[list] = None  # blobs; per-center std, overrides noise_sigma
    radii: list = field(default_factory=lambda: [1.0, 2.0])  # rings
    arms: int = 2  # spirals
    turns: float = 1.0  # spirals

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise InvalidSpec(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.n_points < 1:
            raise InvalidSpec("n_points must be >= 1")
        if not 0.0 <= self.noise_fraction < 1.0:
            raise InvalidSpec("noise_fraction must be in [0, 1)")
        if self.noise_sigma < 0:
            raise InvalidSpec("noise_sigma must be >= 0")
        if self.family == "blobs":
            if self.centers is not None:
                if len(self.centers) < 1 or len({len(c) for c in self.centers}) != 1:
                    raise InvalidSpec("centers must be a non-empty list of equal-length vectors")
            elif self.n_clusters < 1:
                raise InvalidSpec("n_clusters must be >= 1")
            n_centers = len(self.centers) if self.centers is not None else self.n_clusters
            if self.sigmas is not None and (len(self.sigmas) != n_centers or min(self.sigmas) < 0):
                raise InvalidSpec("sigmas must give one non-negative std per center")
        if self.family == "rings" and (not self.radii or min(self.radii) <= 0):
            raise InvalidSpec("rings need positive radii")
        if self.family == "spirals" and (self.arms < 1 or self.turns <= 0):
            raise InvalidSpec("spirals need arms >= 1 and turns > 0")

    @property
    def n_noise(self) -> int:
        return int(round(self.n_points * self.noise_fraction))

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "GeneratorSpec":
        return cls(**json.loads(text))


def _split_counts(total: int, parts: int) -> list[int]:
    base, extra = divmod(total, parts)
    return [base + (1 if i < extra else 0) for i in range(parts)]


def _shape_points(spec: GeneratorSpec, n: int, rng: XorShiftRNG):
    pts, labels = [], []
    sigma = spec.noise_sigma

    def jitter(x, y):
        return x + sigma * rng.normal(), y + sigma * rng.normal()

    if spec.family == "blobs":
        if spec.centers is not None:
            centers = [list(map(float, c)) for c in spec.centers]
        else:
            c = spec.n_clusters
            centers = [[math.cos(2 * math.pi * i / c), math.sin(2 * math.pi * i / c)] for i in range(c)]
        sigmas = spec.sigmas if spec.sigmas is not None else [sigma] * len(centers)
        for lab, (center, cnt) in enumerate(zip(centers, _split_counts(n, len(centers)))):
            for _ in range(cnt):
                pts.append([v + sigmas[lab] * rng.normal() for v in center])
                labels.append(lab)
    elif spec.family == "moons":
        for lab, cnt in enumerate(_split_counts(n, 2)):
            for i in range(cnt):
                t = math.pi * i / max(cnt - 1, 1)
                if lab == 0:
                    pts.append(jitter(math.cos(t), math.sin(t)))
                else:
                    pts.append(jitter(1.0 - math.cos(t), 0.5 - math.sin(t)))
                labels.append(lab)
    elif spec.family == "rings":
        for lab, (r, cnt) in enumerate(zip(spec.radii, _split_counts(n, len(spec.radii)))):
            for _ in range(cnt):
                a = 2 * math.pi * rng.uniform()
                pts.append(jitter(r * math.cos(a), r * math.sin(a)))
                labels.append(lab)
    elif spec.family == "spirals":
        for lab, cnt in enumerate(_split_counts(n, spec.arms)):
            offset = 2 * math.pi * lab / spec.arms
            for i in range(cnt):
                t = 0.25 + 0.75 * i / max(cnt - 1, 1)
                a = 2 * math.pi * spec.turns * t + offset
                pts.append(jitter(t * math.cos(a), t * math.sin(a)))
                labels.append(lab)
    else:  # uniform-noise-overlay: a single structureless class on the unit square
        for _ in range(n):
            pts.append([rng.uniform(), rng.uniform()])
            labels.append(0)
    return np.array(pts, dtype=np.float64).reshape(n, -1), np.array(labels, dtype=np.int64)


def generate(spec: GeneratorSpec) -> Dataset:
    spec.validate()
    rng = XorShiftRNG(spec.seed)
    n_noise = spec.n_noise
    n_clean = spec.n_points - n_noise
    if n_clean < 1:
        raise InvalidSpec("noise_fraction leaves no structured points")
    pts, labels = _shape_points(spec, n_clean, rng)
    if n_noise:
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        noise = np.array(
            [[lo[j] + (hi[j] - lo[j]) * rng.uniform() for j in range(pts.shape[1])] for _ in range(n_noise)]
        )
        pts = np.vstack([pts, noise])
        labels = np.concatenate([labels, np.full(n_noise, NOISE_LABEL, dtype=np.int64)])
    # Fisher-Yates so noise rows are interleaved
    order = list(range(spec.n_points))
    for i in range(spec.n_points - 1, 0, -1):
        j = rng.below(i + 1)
        order[i], order[j] = order[j], order[i]
    return Dataset(_round12(pts[order]), labels[order], name=f"{spec.family}-{spec.seed}")


def normalize_minmax(dataset: Dataset) -> Dataset:
    """Map each dimension onto [0, 1]; constant dimensions become 0."""
    return dataset.with_points(minmax_points(dataset.points))


def minmax_points(points: np.ndarray) -> np.ndarray:
    lo = points.min(axis=0)
    span = points.max(axis=0) - lo
    safe = np.where(span > 0, span, 1.0)
    return np.where(span > 0, (points - lo) / safe, 0.0)


def _fmt(v: float) -> str:
    return format(float(v), ".12g")


def dataset_to_csv(dataset: Dataset) -> str:
    buf = io.StringIO()
    header = [f"x{j}" for j in range(dataset.dim)]
    if dataset.labels is not None:
        header.append("label")
    buf.write(",".join(header) + "\n")
    for i in range(dataset.n):
        row = [_fmt(v) for v in dataset.points[i]]
        if dataset.labels is not None:
            row.append(str(int(dataset.labels[i])))
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


def write_csv(dataset: Dataset, path: Union[str, Path]) -> None:
    Path(path).write_bytes(dataset_to_csv(dataset).encode("utf-8"))


def _resolve_label_column(header: Optional[list[str]], label_column, width: int) -> Optional[int]:
    if label_column is None:
        return None
    if label_column == "auto":
        if header is None:
            return None
        lowered = [h.strip().lower() for h in header]
        for name in LABEL_COLUMN_NAMES:
            if name in lowered:
                return lowered.index(name)
        return None
    if isinstance(label_column, int) or (isinstance(label_column, str) and label_column.lstrip("-").isdigit()):
        idx = int(label_column)
        if idx < 0:
            idx += width
        if not 0 <= idx < width:
            raise ParseError(f"label column {label_column} out of range for {width} columns")
        return idx
    if header is None or label_column not in header:
        raise ParseError(f"no column named {label_column!r}")
    return header.index(label_column)


def _encode_labels(raw: Sequence[str]) -> np.ndarray:
    try:
        return np.array([int(v) for v in raw], dtype=np.int64)
    except ValueError:
        ids: dict[str, int] = {}
        return np.array([ids.setdefault(v, len(ids)) for v in raw], dtype=np.int64)


def parse_csv(text: str, has_header: bool = True, label_column=None, name: str = "") -> Dataset:
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    header = None
    if has_header and rows:
        header, rows = [h.strip() for h in rows[0]], rows[1:]
    if not rows:
        raise EmptyFile("no data rows")
    width = len(header) if header is not None else len(rows[0])
    first_row = 2 if has_header else 1
    for i, r in enumerate(rows):
        if len(r) != width:
            raise RaggedRows(f"expected {width} cells, found {len(r)}", row=first_row + i)
    lab = _resolve_label_column(header, label_column, width)
    feature_cols = [j for j in range(width) if j != lab]
    if not feature_cols:
        raise ParseError("no feature columns")
    pts = np.empty((len(rows), len(feature_cols)))
    for i, r in enumerate(rows):
        for k, j in enumerate(feature_cols):
            try:
                pts[i, k] = float(r[j])
            except ValueError:
                raise ParseError(f"non-numeric cell {r[j]!r}", row=first_row + i, column=j + 1) from None
    labels = _encode_labels([r[lab].strip() for r in rows]) if lab is not None else None
    return Dataset(pts, labels, name=name)


def load_csv(path: Union[str, Path], has_header: bool = True, label_column=None) -> Dataset:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if not text.strip():
        raise EmptyFile(f"{path} is empty")
    return parse_csv(text, has_header, label_column, name=path.stem)


def fixture_path(name: str) -> Path:
    """Filesystem path of a bundled fixture (``iris.csv``, ``wine.csv``, ...)."""
    return Path(str(resources.files("gbmst") / "data" / name))


def load_fixture(name: str) -> Dataset:
    if not name.endswith(".csv"):
        name += ".csv"
    return load_csv(fixture_path(name), has_header=True, label_column="auto")
