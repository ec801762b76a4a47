"""Published reference values for v(n) and its residue classifications.

SEQ_TABLE holds the first 72 values of the binary composition count
(A023359) together with their low six bits as printed strings; these are
the golden rows the exact and residue engines are tested against.

CLASS_ROWS_* hold the published residue classifications: every class is a
family n = (sum of a few powers of 2) - constant with lower bounds on the
exponents, and a fixed residue.  "Other" integers, those in no listed
class, have residue 0; test code builds such samples by exclusion, so only
the listed classes appear here.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

__all__ = [
    "SEQ_TABLE",
    "SEQ_VALUES",
    "SEQ_MOD64_BITS",
    "ClassRow",
    "CLASS_ROWS_MOD4",
    "CLASS_ROWS_MOD8",
    "CLASS_ROWS_MOD16",
    "ZERO_CLASS_ROWS_MOD4",
]

# (n, v(n), low six bits of v(n)) for n = 1..72
SEQ_TABLE: tuple[tuple[int, int, str], ...] = (
    (1, 1, "000001"),
    (2, 2, "000010"),
    (3, 3, "000011"),
    (4, 6, "000110"),
    (5, 10, "001010"),
    (6, 18, "010010"),
    (7, 31, "011111"),
    (8, 56, "111000"),
    (9, 98, "100010"),
    (10, 174, "101110"),
    (11, 306, "110010"),
    (12, 542, "011110"),
    (13, 956, "111100"),
    (14, 1690, "011010"),
    (15, 2983, "100111"),
    (16, 5272, "011000"),
    (17, 9310, "011110"),
    (18, 16448, "000000"),
    (19, 29050, "111010"),
    (20, 51318, "110110"),
    (21, 90644, "010100"),
    (22, 160118, "110110"),
    (23, 282826, "001010"),
    (24, 499590, "000110"),
    (25, 882468, "100100"),
    (26, 1558798, "001110"),
    (27, 2753448, "101000"),
    (28, 4863696, "010000"),
    (29, 8591212, "101100"),
    (30, 15175514, "011010"),
    (31, 26805983, "011111"),
    (32, 47350056, "101000"),
    (33, 83639030, "110110"),
    (34, 147739848, "001000"),
    (35, 260967362, "000010"),
    (36, 460972286, "111110"),
    (37, 814260544, "000000"),
    (38, 1438308328, "101000"),
    (39, 2540625074, "110010"),
    (40, 4487755390, "111110"),
    (41, 7927162604, "101100"),
    (42, 14002525142, "010110"),
    (43, 24734033936, "010000"),
    (44, 43690150992, "010000"),
    (45, 77174200244, "110100"),
    (46, 136320361910, "110110"),
    (47, 240796030130, "110010"),
    (48, 425341653750, "110110"),
    (49, 751322695068, "011100"),
    (50, 1327134992166, "100110"),
    (51, 2344248747712, "000000"),
    (52, 4140876568224, "100000"),
    (53, 7314436562436, "000100"),
    (54, 12920206953182, "011110"),
    (55, 22822229201360, "010000"),
    (56, 40313142631496, "001000"),
    (57, 71209059135432, "001000"),
    (58, 125783547796216, "111000"),
    (59, 222183821668104, "001000"),
    (60, 392465083678728, "001000"),
    (61, 693249583836156, "111100"),
    (62, 1224554757801706, "101010"),
    (63, 2163051215343439, "001111"),
    (64, 3820809588459176, "101000"),
    (65, 6749070853108302, "001110"),
    (66, 11921546029897416, "001000"),
    (67, 21058196429732338, "110010"),
    (68, 37197158469308174, "001110"),
    (69, 65704990586807960, "011000"),
    (70, 116061171489076784, "110000"),
    (71, 205010234490786986, "101010"),
    (72, 362129691668018062, "001110"),)

SEQ_VALUES: dict[int, int] = {n: v for n, v, _ in SEQ_TABLE}
SEQ_MOD64_BITS: dict[int, str] = {n: bits for n, _, bits in SEQ_TABLE}


class ClassRow(NamedTuple):
    """One published residue class.

    build maps the free exponents (largest first) to n.  mins gives the
    smallest allowed value per exponent; exponents are strictly decreasing
    with at least min_gaps[i] between neighbours (min_gaps is one shorter
    than mins, all-1 when omitted from the published constraint).
    """

    label: str
    residue: int
    mins: tuple[int, ...]
    build: Callable[..., int]
    min_gaps: tuple[int, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.mins)

    def gaps(self) -> tuple[int, ...]:
        return self.min_gaps if self.min_gaps else (1,) * (self.arity - 1)


# residues of v(n) mod 4, n >= 2; integers in no row have residue 0
CLASS_ROWS_MOD4: tuple[ClassRow, ...] = (
    ClassRow("2^k+2^l+2^m-2", 2, (3, 2, 1), lambda k, l, m: (1 << k) + (1 << l) + (1 << m) - 2),
    ClassRow("2^k-2", 2, (2,), lambda k: (1 << k) - 2),
    ClassRow("3*2^k-2", 2, (1,), lambda k: 3 * (1 << k) - 2),
    ClassRow("2^k-1", 3, (2,), lambda k: (1 << k) - 1),
    ClassRow("2^k+2^l-1", 2, (2, 1), lambda k, l: (1 << k) + (1 << l) - 1),
)

# residues of v(n) mod 8, n >= 7
CLASS_ROWS_MOD8: tuple[ClassRow, ...] = (
    ClassRow("2^k+2^l+2^m-2", 6, (3, 2, 1), lambda k, l, m: (1 << k) + (1 << l) + (1 << m) - 2),
    ClassRow("2^k-2", 2, (2,), lambda k: (1 << k) - 2),
    ClassRow("3*2^k-2", 6, (1,), lambda k: 3 * (1 << k) - 2),
    ClassRow("2^k-1", 7, (3,), lambda k: (1 << k) - 1),
    ClassRow("2^k+1", 6, (4,), lambda k: (1 << k) + 1),
    ClassRow("2^k+2^l-1", 2, (3, 2), lambda k, l: (1 << k) + (1 << l) - 1),
    ClassRow("2^k-3", 4, (4,), lambda k: (1 << k) - 3),
    ClassRow("3*2^k-3", 4, (3,), lambda k: 3 * (1 << k) - 3),
    ClassRow("2^k+2^l+2^m-3", 4, (4, 3, 2), lambda k, l, m: (1 << k) + (1 << l) + (1 << m) - 3),
)

# the two standalone residue classes mod 16 (all larger-class members excluded)
CLASS_ROWS_MOD16: tuple[ClassRow, ...] = (
    ClassRow("7*2^k-2", 14, (1,), lambda k: 7 * (1 << k) - 2),
    ClassRow("5*2^k-2", 8, (3,), lambda k: 5 * (1 << k) - 2),
)

# families explicitly noted to fall under "other even" mod 4 (residue 0)
ZERO_CLASS_ROWS_MOD4: tuple[ClassRow, ...] = (
    ClassRow("2^k", 0, (3,), lambda k: 1 << k),
    ClassRow("2^k+2^l-2, k>l+1", 0, (4, 2), lambda k, l: (1 << k) + (1 << l) - 2, (2,)),
)
