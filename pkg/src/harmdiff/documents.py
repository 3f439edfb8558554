"""JSON certificate documents and CSV/JSON tables.

Integers are always written as decimal strings so values past 2^53 survive
downstream JSON tooling.  Decoding is strict: unknown or missing fields are
errors that name the offending path.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass
from typing import Any, Iterable

from . import __version__
from .certificates import (
    Case,
    Classification,
    GersonidesAxiom,
    OrderChain,
    PrimeSplit,
    ResidueRectangle,
    SuccessorSmoothness,
    step_from_dict,
    step_to_dict,
)
from .config import Config
from .representations import Form
from .verify import verify

STATUSES = ("ndh", "representable-proven", "representable-bounded", "unknown")
OPEN = "open"
_PARAMS = {
    "residue-rectangle": ("modulus",),
    "prime-split": ("modulus", "catalanTargets"),
    "order-chain": ("anchor", "steps"),
    "successor-smoothness": None,  # exactly one of witness / exponents
    "gersonides-axiom": (),
    OPEN: ("searchBound",),
}
_DOC_FIELDS = ("n", "status", "cases", "toolVersion", "configHash")
_CASE_FIELDS = ("divisor", "form", "kind", "parameters", "solutions")
_DECIMAL = re.compile(r"0|[1-9][0-9]*\Z")


class DocumentError(ValueError):
    pass


@dataclass(frozen=True)
class CaseRecord:
    divisor: int
    form: str
    kind: str
    parameters: dict
    solutions: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class CertificateDocument:
    n: int
    status: str
    cases: tuple[CaseRecord, ...]
    tool_version: str
    config_hash: str


# ---------------------------------------------------------------- build

def _params(cert) -> dict:
    if isinstance(cert, ResidueRectangle):
        return {"modulus": str(cert.modulus)}
    if isinstance(cert, PrimeSplit):
        return {"modulus": str(cert.modulus), "catalanTargets": [str(v) for v in cert.catalan_targets]}
    if isinstance(cert, OrderChain):
        return {"anchor": [str(v) for v in cert.anchor], "steps": [step_to_dict(s) for s in cert.steps]}
    if isinstance(cert, SuccessorSmoothness):
        if cert.exponents is not None:
            return {"exponents": [str(v) for v in cert.exponents]}
        return {"witness": str(cert.witness)}
    if isinstance(cert, GersonidesAxiom):
        return {}
    raise TypeError(f"unsupported certificate {cert!r}")


def _record(case: Case, bound: int) -> CaseRecord:
    if case.certificate is None:
        return CaseRecord(case.divisor.value, case.form.value, OPEN, {"searchBound": str(bound)}, case.solutions)
    cert = case.certificate
    return CaseRecord(case.divisor.value, case.form.value, cert.kind, _params(cert), tuple(cert.solutions))


def document_from(c: Classification, cfg: Config) -> CertificateDocument:
    cases = tuple(_record(case, cfg.exponent_bound) for case in c.cases)
    return CertificateDocument(c.n, c.status, cases, __version__, cfg.config_hash)


def certificate_from_record(rec: CaseRecord, t: int):
    """Rebuild the certificate object a record describes (None for open cases)."""
    p, form, sols = rec.parameters, Form(rec.form), rec.solutions
    if rec.kind == "residue-rectangle":
        return ResidueRectangle(form, t, int(p["modulus"]), sols)
    if rec.kind == "prime-split":
        return PrimeSplit(form, t, int(p["modulus"]), tuple(int(v) for v in p["catalanTargets"]), sols)
    if rec.kind == "order-chain":
        steps = tuple(step_from_dict(s) for s in p["steps"])
        return OrderChain(form, t, (int(p["anchor"][0]), int(p["anchor"][1])), steps, sols)
    if rec.kind == "successor-smoothness":
        if form is not Form.C:
            raise DocumentError("successor-smoothness closes form C only")
        if "exponents" in p:
            a, b = (int(v) for v in p["exponents"])
            return SuccessorSmoothness(t, exponents=(a, b), solutions=sols)
        return SuccessorSmoothness(t, witness=int(p["witness"]), solutions=sols)
    if rec.kind == "gersonides-axiom":
        return GersonidesAxiom(form, t, sols)
    return None


# ---------------------------------------------------------------- encode

def encode(doc: CertificateDocument) -> str:
    payload = {
        "n": str(doc.n),
        "status": doc.status,
        "cases": [
            {
                "divisor": str(r.divisor),
                "form": r.form,
                "kind": r.kind,
                "parameters": r.parameters,
                "solutions": [[str(x), str(y)] for x, y in r.solutions],
            }
            for r in doc.cases
        ],
        "toolVersion": doc.tool_version,
        "configHash": doc.config_hash,
    }
    return json.dumps(payload, indent=2) + "\n"


# ---------------------------------------------------------------- decode

def _fields(obj: Any, expected: Iterable[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise DocumentError(f"{where}: expected an object")
    expected = set(expected)
    extra, missing = set(obj) - expected, expected - set(obj)
    if extra:
        raise DocumentError(f"{where}: unknown field(s) {sorted(extra)}")
    if missing:
        raise DocumentError(f"{where}: missing field(s) {sorted(missing)}")


def _decimal(v: Any, where: str) -> int:
    if not isinstance(v, str) or not _DECIMAL.match(v):
        raise DocumentError(f"{where}: expected a decimal string, got {v!r}")
    return int(v)


def _decimal_list(v: Any, where: str, length: int | None = None) -> list[str]:
    if not isinstance(v, list) or (length is not None and len(v) != length):
        raise DocumentError(f"{where}: expected a list" + (f" of {length}" if length else ""))
    for i, item in enumerate(v):
        _decimal(item, f"{where}[{i}]")
    return v


def _check_params(kind: str, params: Any, where: str) -> None:
    if kind == "successor-smoothness":
        if not isinstance(params, dict) or len(params) != 1 or not set(params) <= {"witness", "exponents"}:
            raise DocumentError(f"{where}: expected exactly one of 'witness' or 'exponents'")
        if "witness" in params:
            _decimal(params["witness"], f"{where}.witness")
        else:
            _decimal_list(params["exponents"], f"{where}.exponents", 2)
        return
    _fields(params, _PARAMS[kind], where)
    for key in ("modulus", "searchBound"):
        if key in params:
            _decimal(params[key], f"{where}.{key}")
    if "catalanTargets" in params:
        _decimal_list(params["catalanTargets"], f"{where}.catalanTargets")
    if "anchor" in params:
        _decimal_list(params["anchor"], f"{where}.anchor", 2)
    if "steps" in params:
        if not isinstance(params["steps"], list):
            raise DocumentError(f"{where}.steps: expected a list")
        for i, step in enumerate(params["steps"]):
            if not isinstance(step, dict):
                raise DocumentError(f"{where}.steps[{i}]: expected an object")
            for key, value in step.items():
                if key not in ("kind", "unknown"):
                    _decimal(value, f"{where}.steps[{i}].{key}")
            try:
                step_from_dict(step)
            except ValueError as exc:
                raise DocumentError(f"{where}.steps[{i}]: {exc}") from exc


def decode(text: str) -> CertificateDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    _fields(raw, _DOC_FIELDS, "document")
    n = _decimal(raw["n"], "n")
    if raw["status"] not in STATUSES:
        raise DocumentError(f"status: expected one of {STATUSES}, got {raw['status']!r}")
    for key in ("toolVersion", "configHash"):
        if not isinstance(raw[key], str):
            raise DocumentError(f"{key}: expected a string")
    if not isinstance(raw["cases"], list):
        raise DocumentError("cases: expected a list")
    records = []
    for i, case in enumerate(raw["cases"]):
        where = f"cases[{i}]"
        _fields(case, _CASE_FIELDS, where)
        divisor = _decimal(case["divisor"], f"{where}.divisor")
        if case["form"] not in ("A", "B", "C"):
            raise DocumentError(f"{where}.form: expected A, B or C, got {case['form']!r}")
        if case["kind"] not in _PARAMS:
            raise DocumentError(f"{where}.kind: unknown kind {case['kind']!r}")
        _check_params(case["kind"], case["parameters"], f"{where}.parameters")
        if not isinstance(case["solutions"], list):
            raise DocumentError(f"{where}.solutions: expected a list")
        sols = tuple(
            tuple(int(v) for v in _decimal_list(s, f"{where}.solutions[{j}]", 2))
            for j, s in enumerate(case["solutions"])
        )
        records.append(CaseRecord(divisor, case["form"], case["kind"], case["parameters"], sols))
    return CertificateDocument(n, raw["status"], tuple(records), raw["toolVersion"], raw["configHash"])


# ---------------------------------------------------------------- verify

def _harmonic_divisors(n: int) -> list[int]:
    out, p2 = [], 1
    while n % p2 == 0:
        p3 = 1
        while n % (p2 * p3) == 0:
            out.append(p2 * p3)
            p3 *= 3
        p2 *= 2
    return sorted(out)


def verify_document(doc: CertificateDocument) -> list[str]:
    """Problems found in a document; empty means it checks out."""
    problems = []
    if doc.n < 1:
        return ["n must be positive"]
    expected = [(d, f) for d in _harmonic_divisors(doc.n) for f in ("A", "B", "C")]
    got = [(r.divisor, r.form) for r in doc.cases]
    if got != expected:
        return [f"cases {got} do not cover (divisor, form) pairs {expected} in order"]
    any_open = any(r.kind == OPEN for r in doc.cases)
    any_solution = any(r.solutions for r in doc.cases)
    for i, r in enumerate(doc.cases):
        t = doc.n // r.divisor
        form = Form(r.form)
        for x, y in r.solutions:
            if x < form.min_exponents[0] or y < form.min_exponents[1] or form.evaluate(x, y) != t:
                problems.append(f"cases[{i}]: ({x}, {y}) does not solve form {r.form} = {t}")
        if r.kind == OPEN:
            continue
        try:
            cert = certificate_from_record(r, t)
        except (ValueError, KeyError) as exc:
            problems.append(f"cases[{i}]: {exc}")
            continue
        if not verify(cert):
            problems.append(f"cases[{i}]: {r.kind} certificate for form {r.form}, t={t} rejected")
    wanted = {
        "ndh": (False, False),
        "representable-proven": (False, True),
        "representable-bounded": (True, True),
        "unknown": (True, False),
    }[doc.status]
    if (any_open, any_solution) != wanted:
        problems.append(f"status {doc.status!r} inconsistent with open={any_open}, solutions={any_solution}")
    return problems


# ---------------------------------------------------------------- tables

SCAN_COLUMNS = ("n", "status", "kinds", "repCount", "reps")


def scan_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SCAN_COLUMNS)
    for r in rows:
        writer.writerow([r.n, r.status, ";".join(r.kinds), r.rep_count, ";".join(r.reps)])
    return buf.getvalue()


def scan_json(rows) -> str:
    payload = [
        {"n": str(r.n), "status": r.status, "kinds": list(r.kinds), "repCount": str(r.rep_count), "reps": list(r.reps)}
        for r in rows
    ]
    return json.dumps(payload, indent=2) + "\n"


def census_json(entries) -> str:
    """[(n, Classification)] as a JSON table."""
    payload = [
        {
            "n": str(n),
            "status": c.status,
            "kinds": c.certificate_kinds,
            "reps": [str(r) for r in c.representations],
        }
        for n, c in entries
    ]
    return json.dumps(payload, indent=2) + "\n"


def abc_csv(triples) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("a", "b", "c", "radical", "quality", "exceptional"))
    for t in triples:
        writer.writerow([t.a, t.b, t.c, t.radical, t.quality, int(t.exceptional)])
    return buf.getvalue()


def sums_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("p", "q", "sum", "smooth", "coprime"))
    for r in rows:
        writer.writerow([r.p, r.q, r.total, int(r.smooth), int(r.coprime)])
    return buf.getvalue()
