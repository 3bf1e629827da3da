"""Family text format.

First line:   ``ground <n> maxcard <s>``
Other lines:  one member set each, space-separated ascending element ids;
              the literal token ``-`` is the empty set.
Encoding is ASCII with ``\\n`` line endings.  A repeated set is a load
error, as is any element outside the declared ground set.
"""

from __future__ import annotations

from .errors import FamilyFormatError
from .family import GroundSet, SetFamily, elements_of, mask_of


def dumps(family: SetFamily) -> str:
    lines = [f"ground {family.ground.size} maxcard {family.max_card}"]
    for m in family.masks:
        lines.append(" ".join(map(str, elements_of(m))) if m else "-")
    return "\n".join(lines) + "\n"


def loads(text: str) -> SetFamily:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise FamilyFormatError("empty input", 1)
    head = lines[0].split()
    if len(head) != 4 or head[0] != "ground" or head[2] != "maxcard":
        raise FamilyFormatError("expected 'ground <n> maxcard <s>'", 1)
    try:
        n, s = int(head[1]), int(head[3])
    except ValueError:
        raise FamilyFormatError("ground size and maxcard must be integers", 1) from None
    if s < 1:
        raise FamilyFormatError("maxcard must be positive", 1)
    ground = GroundSet(n)
    seen: set[int] = set()
    masks = []
    for line_no, line in enumerate(lines[1:], start=2):
        if line == "-":
            elems: tuple[int, ...] = ()
        else:
            try:
                elems = tuple(int(tok) for tok in line.split())
            except ValueError:
                raise FamilyFormatError(f"bad element token in {line!r}", line_no) from None
            if not elems:
                raise FamilyFormatError("blank member line (use '-' for the empty set)", line_no)
            if any(a >= b for a, b in zip(elems, elems[1:])):
                raise FamilyFormatError("element ids must be strictly ascending", line_no)
            if elems[0] < 1 or elems[-1] > n:
                raise FamilyFormatError(f"element outside ground set of size {n}", line_no)
        if len(elems) > s:
            raise FamilyFormatError(f"member has {len(elems)} elements, maxcard is {s}", line_no)
        m = mask_of(elems)
        if m in seen:
            raise FamilyFormatError("duplicate member set", line_no)
        seen.add(m)
        masks.append(m)
    return SetFamily(ground, s, masks)


def dump(family: SetFamily, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(dumps(family))


def load(path) -> SetFamily:
    with open(path, "r", encoding="ascii") as fh:
        return loads(fh.read())
