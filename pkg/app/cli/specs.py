"""
Spec grammar
Parses group specs (A:2:3:adjoint, SL:2:3, U:3:5, D:2:5, B2:5, prod:<spec>^n)
and automorphism specs (inner:g1*g2^-1, diagram:(1 3), product:<a;b>:sigma=...)
into the validated request models
"""
import re
from typing import List

from app.core.exceptions import ValidationError
from app.schemas.models import ClassicalKind, GroupSpec, PhiSpec
from app.services.lie_processing.rootsystem import VALID_TYPES

CLASSICAL_TOKENS = {
    "GL": ClassicalKind.GL,
    "SL": ClassicalKind.SL,
    "PSL": ClassicalKind.PSL,
    "D": ClassicalKind.DIAGONAL,
    "U": ClassicalKind.UNITRIANGULAR,
}
CHEVALLEY_FORMS = ("adjoint", "sc")
PHI_KINDS = (
    "identity", "inner", "diagram", "diag-inverse", "diag-cycle-twist",
    "conj", "unipotent-conj", "product", "compose",
)

_WORD_LETTER = re.compile(r"^g(\d+)(?:\^(-?\d+))?$")


def _int(token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ValidationError(f"{what} must be an integer, got {token!r}") from None


def parse_ints(text: str, what: str) -> List[int]:
    if not text.strip():
        raise ValidationError(f"{what} is empty")
    return [_int(v.strip(), what) for v in text.split(",")]


def parse_word(text: str) -> List[List[int]]:
    """'g1*g2^-1' -> [[1, 1], [2, -1]]; '1' or '' is the empty word."""
    text = text.replace(" ", "")
    if text in ("", "1", "e"):
        return []
    word = []
    for letter in text.split("*"):
        match = _WORD_LETTER.match(letter)
        if not match:
            raise ValidationError(f"bad generator word letter {letter!r}")
        word.append([int(match.group(1)), int(match.group(2) or 1)])
    return word


def parse_cycles(text: str) -> str:
    text = text.strip()
    if text and not re.fullmatch(r"(\(\s*[\d ,]*\))+", text):
        raise ValidationError(f"bad cycle notation {text!r}")
    return text or "()"


def parse_group_spec(text: str) -> GroupSpec:
    text = text.strip()
    if text.startswith("prod:"):
        return _parse_product(text)
    parts = text.split(":")
    head = parts[0].upper()
    if head == "B2":
        if len(parts) != 2:
            raise ValidationError(f"expected B2:<p>, got {text!r}")
        return GroupSpec(family="classical", text=text, kind=ClassicalKind.BOREL2, n=2,
                         p=_int(parts[1], "p"))
    if head in CLASSICAL_TOKENS and len(parts) == 3:
        return GroupSpec(family="classical", text=text, kind=CLASSICAL_TOKENS[head],
                         n=_int(parts[1], "n"), p=_int(parts[2], "p"))
    if head in VALID_TYPES and len(parts) in (3, 4):
        form = parts[3].lower() if len(parts) == 4 else "adjoint"
        if form not in CHEVALLEY_FORMS:
            raise ValidationError(f"form must be one of {CHEVALLEY_FORMS}, got {form!r}")
        return GroupSpec(family="chevalley", text=text, type_label=head,
                         rank=_int(parts[1], "rank"), p=_int(parts[2], "p"), form=form)
    raise ValidationError(f"unrecognised group spec {text!r}")


def _parse_product(text: str) -> GroupSpec:
    body = text[len("prod:"):]
    power = None
    if "^" in body:
        body, exponent = body.rsplit("^", 1)
        power = _int(exponent, "product exponent")
        if power < 1:
            raise ValidationError("product exponent must be at least 1")
        factors = [parse_group_spec(body)] * power
    else:
        factors = [parse_group_spec(f) for f in body.split("*")]
    if not factors or any(f.family == "product" for f in factors):
        raise ValidationError(f"bad product spec {text!r}")
    return GroupSpec(family="product", text=text, factors=factors, power=power)


def _split_parts(body: str, separator: str) -> List[str]:
    """Split on separator, keeping pieces that do not start a new phi spec."""
    pieces: List[str] = []
    for token in body.split(separator):
        head = token.strip().split(":", 1)[0]
        if pieces and head not in PHI_KINDS:
            pieces[-1] += separator + token
        else:
            pieces.append(token.strip())
    return pieces


def _keyed(value: str, key: str, text: str) -> str:
    if not value.startswith(key + "="):
        raise ValidationError(f"expected {key}=... in {text!r}")
    return value[len(key) + 1:]


def parse_phi_spec(text: str) -> PhiSpec:
    text = text.strip()
    kind, _, rest = text.partition(":")
    if kind not in PHI_KINDS:
        raise ValidationError(f"unknown automorphism kind {kind!r}")
    if kind in ("identity", "diag-inverse"):
        if rest:
            raise ValidationError(f"{kind} takes no arguments")
        return PhiSpec(kind=kind, text=text)
    if kind == "inner":
        return PhiSpec(kind=kind, text=text, word=parse_word(rest))
    if kind == "diagram":
        return PhiSpec(kind=kind, text=text, cycles=parse_cycles(rest))
    if kind == "diag-cycle-twist":
        return PhiSpec(kind=kind, text=text, r=_int(_keyed(rest, "r", text), "r"))
    if kind in ("conj", "unipotent-conj"):
        return PhiSpec(kind="conj", text=text, d=parse_ints(_keyed(rest, "d", text), "d"))
    if kind == "product":
        body, sigma = rest, "()"
        if ":sigma=" in rest:
            body, sigma = rest.rsplit(":sigma=", 1)
        parts = [parse_phi_spec(p) for p in _split_parts(body, ";")]
        return PhiSpec(kind=kind, text=text, parts=parts, cycles=parse_cycles(sigma))
    parts = [parse_phi_spec(p) for p in _split_parts(rest, ",")]
    if not parts:
        raise ValidationError("compose needs at least one automorphism")
    return PhiSpec(kind=kind, text=text, parts=parts)


def parse_rows(text: str) -> List[List[int]]:
    """'1,2,3;0,1,4;0,0,1' -> matrix rows."""
    rows = [parse_ints(row, "matrix row") for row in text.split(";")]
    if len({len(r) for r in rows}) != 1:
        raise ValidationError("matrix rows differ in length")
    return rows
