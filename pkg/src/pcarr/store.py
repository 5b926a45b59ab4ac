"""Line-oriented text formats and the append-only certificate cache.

``.arrs``    one canonical code per line, optional ``key=value`` annotations
``.certs``   ``<code> ; x1 y1 r1 ; x2 y2 r2 ; ...``
records     TSV with columns code, status, reason
flip graph  TSV with one ``code<TAB>code`` edge per line

Lines starting with ``#`` and blank lines are ignored everywhere.
"""

from __future__ import annotations

import os
import sys
import threading
from pathlib import Path
from typing import Iterable, Iterator, TextIO

from .classifier import ClassificationRecord, Status
from .geometry import Circle, CircleArrangement
from .maps import CanonicalCode
from .realizer import Certificate, NotVerified


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _lines(src: Iterable[str]) -> Iterator[tuple[int, str]]:
    for i, raw in enumerate(src, 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield i, line


def _open(path) -> Iterable[str]:
    with open(path, encoding="utf-8") as fh:
        return fh.read().splitlines()


# ------------------------------------------------------------ arrangements

def read_arrs(src: Iterable[str]) -> list[tuple[CanonicalCode, dict[str, str]]]:
    out = []
    for i, line in _lines(src):
        tok = line.split()
        try:
            code = CanonicalCode(tok[0])
        except ValueError as exc:
            raise ParseError(i, str(exc)) from None
        ann = {}
        for t in tok[1:]:
            if "=" not in t:
                raise ParseError(i, f"annotation {t!r} is not key=value")
            k, v = t.split("=", 1)
            ann[k] = v
        out.append((code, ann))
    return out


def load_arrs(path) -> list[tuple[CanonicalCode, dict[str, str]]]:
    return read_arrs(_open(path))


def format_arrs(items: Iterable, header: str | None = None) -> str:
    rows = []
    for it in items:
        code, ann = (it, {}) if isinstance(it, CanonicalCode) else it
        rows.append((code, ann))
    rows.sort(key=lambda r: r[0])
    out = [f"# {header}"] if header else []
    for code, ann in rows:
        out.append(" ".join([code.text] + [f"{k}={v}" for k, v in sorted(ann.items())]))
    return "\n".join(out) + ("\n" if out else "")


def save_arrs(path, items: Iterable, header: str | None = None) -> None:
    Path(path).write_text(format_arrs(items, header), encoding="utf-8")


# ------------------------------------------------------------ certificates

def format_cert(cert: Certificate) -> str:
    parts = [cert.code.text] + [f"{c.a} {c.b} {c.r}" for c in cert.scene.circles]
    return " ; ".join(parts)


def parse_cert_line(line: str, lineno: int = 0) -> tuple[CanonicalCode, CircleArrangement]:
    """Split a certificate line without verifying it."""
    parts = [p.strip() for p in line.split(";")]
    try:
        code = CanonicalCode(parts[0])
        circles = []
        for p in parts[1:]:
            a, b, r = (int(x) for x in p.split())
            circles.append(Circle(a, b, r))
    except (ValueError, TypeError) as exc:
        raise ParseError(lineno, str(exc)) from None
    if len(circles) != code.n:
        raise ParseError(lineno, f"{len(circles)} circles for a code with n={code.n}")
    return code, CircleArrangement(circles)


def read_certs(src: Iterable[str]) -> list[Certificate]:
    """Parse and exactly verify every certificate; mismatches raise."""
    out = []
    for i, line in _lines(src):
        code, scene = parse_cert_line(line, i)
        try:
            out.append(Certificate(code, scene))
        except NotVerified as exc:
            raise ParseError(i, f"certificate does not verify: {exc}") from None
    return out


def verify_lines(src: Iterable[str]) -> list[tuple[int, str]]:
    """Problems found while re-verifying a certificate file."""
    bad = []
    for i, line in _lines(src):
        try:
            code, scene = parse_cert_line(line, i)
            Certificate(code, scene)
        except (ParseError, NotVerified) as exc:
            bad.append((i, str(exc)))
    return bad


class CertificateCache:
    """Append-only certificate file with one writer; verified on load."""

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else None
        self.certs: dict[bytes, Certificate] = {}
        self._lock = threading.Lock()
        if self.path is not None and self.path.exists():
            for cert in read_certs(_open(self.path)):
                self.certs.setdefault(cert.key, cert)

    def __contains__(self, code) -> bool:
        return (code if isinstance(code, bytes) else code.key) in self.certs

    def __len__(self) -> int:
        return len(self.certs)

    def get(self, code) -> Certificate | None:
        return self.certs.get(code if isinstance(code, bytes) else code.key)

    def add(self, cert: Certificate) -> bool:
        """Record a certificate; only the first one per code is kept."""
        with self._lock:
            if cert.key in self.certs:
                return False
            self.certs[cert.key] = cert
            if self.path is not None:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                with open(self.path, "a", encoding="utf-8") as fh:
                    fh.write(format_cert(cert) + "\n")
            return True

    def mapping(self) -> dict[bytes, Certificate]:
        return dict(self.certs)


def save_certs(path, certs: Iterable[Certificate]) -> None:
    rows = sorted(certs, key=lambda c: c.code)
    Path(path).write_text("".join(format_cert(c) + "\n" for c in rows), encoding="utf-8")


# ------------------------------------------------------------ records

def format_records(records: Iterable[ClassificationRecord]) -> str:
    out = ["# code\tstatus\treason"]
    for r in sorted(records):
        out.append(f"{r.code.text}\t{r.status.value}\t{r.reason}")
    return "\n".join(out) + "\n"


def read_records(src: Iterable[str]) -> list[ClassificationRecord]:
    out = []
    for i, line in _lines(src):
        parts = line.split("\t")
        if len(parts) != 3:
            raise ParseError(i, "expected three tab-separated columns")
        try:
            out.append(ClassificationRecord(CanonicalCode(parts[0]), Status(parts[1]), parts[2]))
        except ValueError as exc:
            raise ParseError(i, str(exc)) from None
    return out


# ------------------------------------------------------------ flip graph edges

def format_edges(edges: Iterable[tuple[CanonicalCode, CanonicalCode]]) -> str:
    rows = sorted(tuple(sorted(e)) for e in edges)
    return "".join(f"{a.text}\t{b.text}\n" for a, b in rows)


def read_edges(src: Iterable[str]) -> list[tuple[CanonicalCode, CanonicalCode]]:
    out = []
    for i, line in _lines(src):
        parts = line.split("\t")
        if len(parts) != 2:
            raise ParseError(i, "expected two tab-separated codes")
        try:
            out.append((CanonicalCode(parts[0]), CanonicalCode(parts[1])))
        except ValueError as exc:
            raise ParseError(i, str(exc)) from None
    return out


def write_text(path, text: str, stream: TextIO | None = None) -> None:
    if path in (None, "-"):
        (stream or sys.stdout).write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def shipped_certificates() -> list[Certificate]:
    """Certificates distributed with the package, verified on load."""
    from importlib import resources
    out: list[Certificate] = []
    for entry in sorted(resources.files("pcarr.data").iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".certs"):
            out.extend(read_certs(entry.read_text(encoding="utf-8").splitlines()))
    return out
