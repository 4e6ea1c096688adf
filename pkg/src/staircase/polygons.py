"""Brute-force enumeration and symmetry classification of staircase polygons.

A staircase polygon is the region between two up/right lattice walks that
share exactly their endpoints.  Both walks take one step per unit of x+y, so
two walks collide exactly when they occupy the same lockstep position; the
generator below walks pairs of paths depth-first, pruning on that condition.
This is deliberately independent of the sequence decomposition behind the
functional equations, so the resulting count table serves as ground truth
for the series solvers.

Polygons are stored as column tuples: entry i is the half-open cell interval
(bottom, top) of abscissa i.  Point symmetries of the square lattice act on
the enclosed cell set; a polygon belongs to a symmetry class when every
generator of the class's group fixes it up to translation.
"""

from __future__ import annotations

from dataclasses import dataclass

ELEMENTS = ("e", "r", "r2", "r3", "h", "v", "d1", "d2")

# 2x2 integer matrices (a, b, c, d): (x, y) -> (a*x + b*y, c*x + d*y).
# r is the quarter turn, h/v reflect across the horizontal/vertical axis,
# d1/d2 across the positive/negative diagonal.
_MATS = {
    "e": (1, 0, 0, 1),
    "r": (0, -1, 1, 0),
    "r2": (-1, 0, 0, -1),
    "r3": (0, 1, -1, 0),
    "h": (1, 0, 0, -1),
    "v": (-1, 0, 0, 1),
    "d1": (0, 1, 1, 0),
    "d2": (0, -1, -1, 0),
}

_BY_MAT = {mat: name for name, mat in _MATS.items()}


def _matmul(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (a1 * a2 + b1 * c2, a1 * b2 + b1 * d2,
            c1 * a2 + d1 * c2, c1 * b2 + d1 * d2)


COMPOSE = {(g, h): _BY_MAT[_matmul(_MATS[g], _MATS[h])]
           for g in ELEMENTS for h in ELEMENTS}


def compose(g: str, h: str) -> str:
    """g after h."""
    return COMPOSE[(g, h)]


def inverse(g: str) -> str:
    for h in ELEMENTS:
        if COMPOSE[(g, h)] == "e":
            return h
    raise KeyError(g)


SUBGROUPS = {
    "e": ("e",),
    "r2": ("e", "r2"),
    "r": ("e", "r", "r2", "r3"),
    "d1": ("e", "d1"),
    "d2": ("e", "d2"),
    "d1d2": ("e", "r2", "d1", "d2"),
    "h": ("e", "h"),
    "v": ("e", "v"),
    "hv": ("e", "r2", "h", "v"),
    "d4": ELEMENTS,
}

_STABILIZERS = {frozenset(members) for members in SUBGROUPS.values()}

CLASSES = ("full", "r2", "d1", "d2", "d1d2", "rect", "square")

# Generators whose fixing defines membership in each symmetry class.
CLASS_GENERATORS = {
    "full": (),
    "r2": ("r2",),
    "d1": ("d1",),
    "d2": ("d2",),
    "d1d2": ("d1", "d2"),
    "rect": ("h",),
    "square": ("r",),
}


# ---------------------------------------------------------------------------
# polygons
# ---------------------------------------------------------------------------

def _parse_steps(steps):
    out = []
    for s in steps:
        if s in (1, "R", "r"):
            out.append(1)
        elif s in (0, "U", "u"):
            out.append(0)
        else:
            raise ValueError(f"walk steps must be R/U (or 1/0), got {s!r}")
    return out


@dataclass(frozen=True)
class Polygon:
    """A staircase polygon in canonical position (bounding box at the origin)."""

    columns: tuple

    @classmethod
    def from_columns(cls, columns) -> "Polygon":
        cols = [(int(b), int(t)) for b, t in columns]
        if not cols:
            raise ValueError("a polygon needs at least one column")
        for i, (b, t) in enumerate(cols):
            if t <= b:
                raise ValueError(f"column {i} is empty")
            if i:
                pb, pt = cols[i - 1]
                if b < pb or t < pt:
                    raise ValueError("column bounds must be nondecreasing")
                if b >= pt:
                    raise ValueError(f"columns {i - 1} and {i} do not touch")
        base = cols[0][0]
        return cls(tuple((b - base, t - base) for b, t in cols))

    @classmethod
    def from_walks(cls, lower, upper) -> "Polygon":
        lo = _parse_steps(lower)
        up = _parse_steps(upper)
        if len(lo) != len(up):
            raise ValueError("the two walks must have the same length")
        if len(lo) < 2:
            raise ValueError("walks of a polygon have at least two steps")
        if sum(lo) != sum(up):
            raise ValueError("the walks must end at the same vertex")
        # Both walks advance one unit of x+y per step, so they share a vertex
        # exactly when their lockstep positions coincide.
        dx = 0
        for i, (ls, us) in enumerate(zip(lo, up)):
            dx += ls - us
            if dx == 0 and i < len(lo) - 1:
                raise ValueError("walks share an interior vertex")
            if dx < 0:
                raise ValueError("lower walk crossed above the upper walk")
        if dx != 0:
            raise ValueError("the walks must end at the same vertex")
        return cls(_columns_from_walks(lo, up))

    @property
    def width(self) -> int:
        return len(self.columns)

    @property
    def height(self) -> int:
        return self.columns[-1][1]

    @property
    def half_perimeter(self) -> int:
        return self.width + self.height

    @property
    def area(self) -> int:
        return sum(t - b for b, t in self.columns)

    def cells(self) -> frozenset:
        return frozenset((i, y) for i, (b, t) in enumerate(self.columns)
                         for y in range(b, t))

    def walks(self) -> tuple:
        """The two boundary walks (lower, upper) as R/U strings; the lower
        walk traces the bottom-right boundary, the upper the top-left."""
        bottoms = [b for b, _ in self.columns] + [self.height]
        tops = [t for _, t in self.columns]
        lower = "".join("R" + "U" * (bottoms[i + 1] - bottoms[i])
                        for i in range(self.width))
        upper = "U" * tops[0] + "".join(
            "R" + "U" * (tops[i + 1] - tops[i]) for i in range(self.width - 1)) + "R"
        return lower, upper

    def __repr__(self):
        return f"Polygon({list(self.columns)!r})"


def _columns_from_walks(lo, up):
    b = []
    y = 0
    for s in lo:
        if s:
            b.append(y)
        else:
            y += 1
    t = []
    y = 0
    for s in up:
        if s:
            t.append(y)
        else:
            y += 1
    return tuple(zip(b, t))


# ---------------------------------------------------------------------------
# symmetry actions
# ---------------------------------------------------------------------------

def _transpose(cols):
    width = len(cols)
    height = cols[-1][1]
    out = []
    s = 0
    e = 0
    for y in range(height):
        while cols[s][1] <= y:
            s += 1
        while e + 1 < width and cols[e + 1][0] <= y:
            e += 1
        out.append((s, e + 1))
    return tuple(out)


def transform_columns(g: str, cols) -> tuple:
    """Column tuple of the g-image of a staircase polygon, back in canonical
    position.  The result need not be a staircase polygon again (a quarter
    turn of a bend is not), but it is always a valid column tuple."""
    cols = tuple(cols)
    if g == "e":
        return cols
    height = cols[-1][1]
    if g == "v":
        return cols[::-1]
    if g == "h":
        return tuple((height - t, height - b) for b, t in cols)
    if g == "r2":
        return tuple((height - t, height - b) for b, t in cols[::-1])
    tp = _transpose(cols)
    if g == "d1":
        return tp
    tp_height = tp[-1][1]
    if g == "r":
        return tp[::-1]
    if g == "r3":
        return tuple((tp_height - t, tp_height - b) for b, t in tp)
    if g == "d2":
        return tuple((tp_height - t, tp_height - b) for b, t in tp[::-1])
    raise KeyError(g)


def transform_cells(g: str, cells) -> frozenset:
    """Reference action on raw cell sets (unit square [i,i+1] x [j,j+1])."""
    a, b, c, d = _MATS[g]
    out = set()
    for i, j in cells:
        out.add((a * i + b * j + ((a + b - 1) // 2),
                 c * i + d * j + ((c + d - 1) // 2)))
    min_x = min(x for x, _ in out)
    min_y = min(y for _, y in out)
    return frozenset((x - min_x, y - min_y) for x, y in out)


def is_fixed(g: str, polygon: Polygon) -> bool:
    """Whether the g-image of the polygon, translated back to canonical
    position, has the same edge set (equivalently, cell set)."""
    return transform_columns(g, polygon.columns) == polygon.columns


def symmetry_signature(polygon: Polygon) -> frozenset:
    """The stabilizer of the polygon inside the point group of the lattice;
    always one of its ten subgroups."""
    stab = frozenset(g for g in ELEMENTS if is_fixed(g, polygon))
    if stab not in _STABILIZERS:
        raise RuntimeError(f"stabilizer {sorted(stab)} is not a subgroup")
    return stab


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _check_bound(max_half_perimeter: int):
    if not 2 <= max_half_perimeter <= 16:
        raise ValueError("max half-perimeter must be between 2 and 16")


def enumerate_polygons(max_half_perimeter: int):
    """Yield every staircase polygon of half-perimeter <= the bound, each
    exactly once, as a validated Polygon."""
    _check_bound(max_half_perimeter)
    lo = [1]
    up = [0]

    def descend(dx):
        if dx == 0:
            yield Polygon.from_walks(tuple(lo), tuple(up))
            return
        depth = len(lo)
        if depth == max_half_perimeter or dx > max_half_perimeter - depth:
            return
        for ls, us in ((1, 1), (1, 0), (0, 1), (0, 0)):
            lo.append(ls)
            up.append(us)
            yield from descend(dx + ls - us)
            lo.pop()
            up.pop()

    yield from descend(1)


@dataclass
class CountTable:
    """Exact polygon counts per (symmetry class, half-perimeter, area)."""

    counts: dict
    max_half_perimeter: int

    def count(self, class_id: str, m: int, n: int) -> int:
        return self.counts.get((class_id, m, n), 0)

    def class_slice(self, class_id: str, m: int) -> dict:
        return {key[2]: v for key, v in self.counts.items()
                if key[0] == class_id and key[1] == m}

    def total(self, class_id: str, m: int) -> int:
        return sum(self.class_slice(class_id, m).values())

    def rows(self):
        return [(c, m, n, self.counts[(c, m, n)])
                for c, m, n in sorted(self.counts)]


def enumerate_counts(max_half_perimeter: int) -> CountTable:
    """Count every staircase polygon with half-perimeter up to the bound,
    classified by which symmetry-class generators fix it."""
    _check_bound(max_half_perimeter)
    counts: dict = {}
    lo = [1]
    up = [0]

    def tally():
        b = []
        y = 0
        for s in lo:
            if s:
                b.append(y)
            else:
                y += 1
        t = []
        y = 0
        for s in up:
            if s:
                t.append(y)
            else:
                y += 1
        width = len(b)
        height = t[-1]
        m = width + height
        n = 0
        for i in range(width):
            n += t[i] - b[i]

        key = ("full", m, n)
        counts[key] = counts.get(key, 0) + 1

        fixed_r2 = True
        for i in range((width + 1) // 2):
            j = width - 1 - i
            if b[i] != height - t[j] or t[i] != height - b[j]:
                fixed_r2 = False
                break
        if fixed_r2:
            key = ("r2", m, n)
            counts[key] = counts.get(key, 0) + 1

        fixed_h = True
        for i in range(width):
            if b[i] + t[i] != height:
                fixed_h = False
                break
        if fixed_h:
            key = ("rect", m, n)
            counts[key] = counts.get(key, 0) + 1

        if width != height:
            return
        # diagonal symmetries and the quarter turn need a square bounding box
        tb = []
        tt = []
        s = 0
        e = 0
        for y in range(height):
            while t[s] <= y:
                s += 1
            while e + 1 < width and b[e + 1] <= y:
                e += 1
            tb.append(s)
            tt.append(e + 1)

        fixed_d1 = tb == b and tt == t
        fixed_d2 = True
        for i in range(width):
            j = width - 1 - i
            if b[i] != height - tt[j] or t[i] != height - tb[j]:
                fixed_d2 = False
                break
        fixed_r = True
        for i in range(width):
            j = width - 1 - i
            if b[i] != tb[j] or t[i] != tt[j]:
                fixed_r = False
                break

        if fixed_d1:
            key = ("d1", m, n)
            counts[key] = counts.get(key, 0) + 1
        if fixed_d2:
            key = ("d2", m, n)
            counts[key] = counts.get(key, 0) + 1
        if fixed_d1 and fixed_d2:
            key = ("d1d2", m, n)
            counts[key] = counts.get(key, 0) + 1
        if fixed_r:
            key = ("square", m, n)
            counts[key] = counts.get(key, 0) + 1

    def descend(dx):
        if dx == 0:
            tally()
            return
        depth = len(lo)
        if depth == max_half_perimeter or dx > max_half_perimeter - depth:
            return
        for ls, us in ((1, 1), (1, 0), (0, 1), (0, 0)):
            lo.append(ls)
            up.append(us)
            descend(dx + ls - us)
            lo.pop()
            up.pop()

    descend(1)
    return CountTable(counts, max_half_perimeter)


def count_table_rows(table: CountTable):
    """CSV rows (class, m, n, count), sorted lexicographically."""
    return table.rows()
