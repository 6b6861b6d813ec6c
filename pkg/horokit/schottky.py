"""Schottky groups from paired boundary-orthogonal circles.

Generator i maps the exterior of its plus disk into its minus disk. Letters
are signed indices: +i stands for gamma_i, -i for gamma_i^-1, ordered
1, -1, 2, -2, ... everywhere (enumeration, reduction scans, CSV rows).
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, List, Optional, Tuple, Union

from .config import MAX_REDUCE_STEPS, TOL, SchottkySpecModel, parse_spec_file
from .errors import MaxStepsExceeded, PingPongUnverified
from .hyperbolic_core import ORIGIN, BoundaryPoint, Geodesic, Point
from .isometry import (
    IDENTITY,
    Classification,
    Mobius,
    apply,
    classify,
    compose,
    fixed_points,
    image_geodesic,
    inverse,
    pair_circles,
    pairing_isometry,
)

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]


# ------------------------------
# Types
# ------------------------------
@dataclass(frozen=True)
class PairedCircle:
    center: float
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")

    @property
    def geodesic(self) -> Geodesic:
        return Geodesic(
            BoundaryPoint.real(self.center - self.radius),
            BoundaryPoint.real(self.center + self.radius),
        )

    def contains(self, p: Point, tol: float = TOL) -> bool:
        """Open-disk membership, shrunk by the tolerance."""
        return math.hypot(p.x - self.center, p.y) < self.radius * (1 - tol)

    def contains_boundary(self, x: float, tol: float = TOL) -> bool:
        return abs(x - self.center) <= self.radius * (1 + tol)


@dataclass(frozen=True)
class SchottkyPair:
    plus: PairedCircle
    minus: PairedCircle
    gamma: Mobius


@dataclass(frozen=True)
class SchottkySpec:
    pairs: Tuple[SchottkyPair, ...]

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("a Schottky spec needs at least one pair")

    @property
    def rank(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class OrbitPoint:
    point: Point
    word: Word


@dataclass(frozen=True)
class Violation:
    pair: int
    condition: str
    detail: str
    other: Optional[int] = None
    witness: Optional[Tuple[float, float]] = None


@dataclass(frozen=True)
class PingPongCertificate:
    violations: Tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations


# ------------------------------
# Loading
# ------------------------------
def spec_from_model(model: SchottkySpecModel, tol: float = TOL) -> SchottkySpec:
    pairs = []
    for pair in model.pairs:
        plus = PairedCircle(pair.plus.center, pair.plus.radius)
        minus = PairedCircle(pair.minus.center, pair.minus.radius)
        if pair.matrix is not None:
            gamma = Mobius.from_entries(*pair.matrix)
        elif pair.derive.p is None:
            gamma = pair_circles(plus.geodesic, minus.geodesic, tol)
        else:
            gamma = pairing_isometry(
                BoundaryPoint.of(pair.derive.p),
                BoundaryPoint.of(pair.derive.q),
                plus.geodesic,
                minus.geodesic,
                tol,
            )
        pairs.append(SchottkyPair(plus, minus, gamma))
    return SchottkySpec(tuple(pairs))


def load_spec(path: Union[str, Path], tol: float = TOL) -> SchottkySpec:
    return spec_from_model(parse_spec_file(path), tol)


# ------------------------------
# Letters and words
# ------------------------------
def letters(spec: SchottkySpec) -> List[int]:
    return [sign * i for i in range(1, spec.rank + 1) for sign in (1, -1)]


def generator(spec: SchottkySpec, letter: int) -> Mobius:
    gamma = spec.pairs[abs(letter) - 1].gamma
    return gamma if letter > 0 else inverse(gamma)


def generators(spec: SchottkySpec) -> List[Tuple[int, Mobius]]:
    return [(letter, generator(spec, letter)) for letter in letters(spec)]


def target_disk(spec: SchottkySpec, letter: int) -> PairedCircle:
    """Disk that the letter maps everything outside its source disk into."""
    pair = spec.pairs[abs(letter) - 1]
    return pair.minus if letter > 0 else pair.plus


def evaluate(spec: SchottkySpec, word: Word) -> Mobius:
    m = IDENTITY
    for letter in word:
        m = compose(m, generator(spec, letter))
    return m


def reduced_words(spec: SchottkySpec, max_len: int) -> Iterator[Tuple[Word, Mobius]]:
    """Breadth-first over reduced words, with their matrices."""
    gens = generators(spec)
    level: List[Tuple[Word, Mobius]] = [((), IDENTITY)]
    yield level[0]
    for _ in range(max_len):
        nxt = []
        for word, m in level:
            for letter, g in gens:
                if word and word[-1] == -letter:
                    continue
                nxt.append((word + (letter,), compose(m, g)))
        yield from nxt
        level = nxt


def word_count(rank: int, max_len: int) -> int:
    """Reduced words of length <= max_len in the free group of the given rank."""
    if max_len == 0:
        return 1
    return 1 + sum(2 * rank * (2 * rank - 1) ** (n - 1) for n in range(1, max_len + 1))


# ------------------------------
# Ping-pong
# ------------------------------
def _overlaps(spec: SchottkySpec, tol: float) -> List[Violation]:
    shadows = []
    for i, pair in enumerate(spec.pairs):
        for side, disk in (("plus", pair.plus), ("minus", pair.minus)):
            shadows.append((disk.center - disk.radius, disk.center + disk.radius, i, side))
    shadows.sort()
    found = []
    reach, holder = -math.inf, None
    for left, right, i, side in shadows:
        if holder is not None and left < reach - tol * max(1.0, abs(reach)):
            j, other_side = holder
            found.append(
                Violation(
                    pair=i,
                    other=j,
                    condition="disjoint",
                    detail=f"{side} disk of pair {i} overlaps {other_side} disk of pair {j}",
                    witness=((left + min(reach, right)) / 2, 0.0),
                )
            )
        if right > reach:
            reach, holder = right, (i, side)
    return found


def verify_ping_pong(spec: SchottkySpec, tol: float = TOL) -> PingPongCertificate:
    violations = _overlaps(spec, tol)
    for i, pair in enumerate(spec.pairs):
        image = image_geodesic(pair.gamma, pair.plus.geodesic)
        if not image.same_as(pair.minus.geodesic, tol):
            violations.append(
                Violation(pair=i, condition="circle", detail=f"plus circle maps to {image}")
            )
        # a point outside the plus disk must land in the closed minus disk
        witness = Point(pair.plus.center, 2 * pair.plus.radius)
        landed = apply(pair.gamma, witness)
        if math.hypot(landed.x - pair.minus.center, landed.y) > pair.minus.radius * (1 + tol):
            violations.append(
                Violation(
                    pair=i,
                    condition="exterior",
                    detail="exterior of the plus disk is not mapped into the minus disk",
                    witness=(witness.x, witness.y),
                )
            )
    if violations:
        logger.info("ping-pong failed with %d violation(s)", len(violations))
    return PingPongCertificate(tuple(violations))


def require_ping_pong(spec: SchottkySpec, tol: float = TOL) -> None:
    cert = verify_ping_pong(spec, tol)
    if not cert.ok:
        first = cert.violations[0]
        raise PingPongUnverified(f"pair {first.pair}: {first.detail}")


# ------------------------------
# Orbits and reduction
# ------------------------------
def enumerate_orbit(spec: SchottkySpec, max_len: int, tol: float = TOL) -> List[OrbitPoint]:
    require_ping_pong(spec, tol)
    orbit = [OrbitPoint(apply(m, ORIGIN), word) for word, m in reduced_words(spec, max_len)]
    logger.debug("enumerated %d orbit points up to length %d", len(orbit), max_len)
    return orbit


def reduce_point(
    spec: SchottkySpec, p: Point, max_steps: int = MAX_REDUCE_STEPS, tol: float = TOL
) -> Tuple[Point, Word]:
    """Pull p out of every open disk; returns (q, w) with evaluate(w).q = p."""
    require_ping_pong(spec, tol)
    word: List[int] = []
    for _ in range(max_steps):
        for letter in letters(spec):
            if target_disk(spec, letter).contains(p, tol):
                word.append(letter)
                p = apply(generator(spec, -letter), p)
                break
        else:
            return p, tuple(word)
    raise MaxStepsExceeded(max_steps)


def sample_limit_set(spec: SchottkySpec, max_len: int, tol: float = TOL) -> List[BoundaryPoint]:
    """Attracting fixed points of nonempty reduced words (parabolic ones included)."""
    require_ping_pong(spec, tol)
    points = []
    for word, m in reduced_words(spec, max_len):
        if not word:
            continue
        kind = classify(m, tol)
        if kind is Classification.HYPERBOLIC:
            points.append(fixed_points(m, tol)[1])
        elif kind is Classification.PARABOLIC:
            # tangent disks produce accidental parabolics
            points.append(fixed_points(m, tol)[0])
    return points


def one_sided_accumulation(spec: SchottkySpec, max_len: int, tol: float = TOL) -> Tuple[float, float]:
    """(sup_x, inf_x) of the finite limit-set sample."""
    xs = [p.x for p in sample_limit_set(spec, max_len, tol) if not p.is_infinity]
    if not xs:
        return -math.inf, math.inf
    return max(xs), min(xs)


def boundary_gaps(spec: SchottkySpec, xi: float, max_len: int, tol: float = TOL) -> Tuple[float, float]:
    """Distance from xi to the nearest sample on its left and on its right."""
    xs = [p.x for p in sample_limit_set(spec, max_len, tol) if not p.is_infinity]
    left = min((xi - x for x in xs if x <= xi), default=math.inf)
    right = min((x - xi for x in xs if x >= xi), default=math.inf)
    return left, right


def disk_contains_boundary(spec: SchottkySpec, xi: BoundaryPoint, tol: float = TOL) -> bool:
    if xi.is_infinity:
        return False
    return any(
        disk.contains_boundary(xi.x, tol) for pair in spec.pairs for disk in (pair.plus, pair.minus)
    )
