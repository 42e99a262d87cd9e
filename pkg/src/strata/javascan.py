"""Lexical extraction of class-level dependency graphs from Java sources.

Only package declarations and import statements are inspected; there is
no type resolution and same-package implicit references are not seen.
Users needing an exact graph can supply one through the graph file
formats instead.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .graph import CLASS, DependencyGraph

_COMMENT_OR_STRING = re.compile(
    r"""
    //[^\n]*            # line comment
    | /\*.*?\*/         # block comment
    | "(?:\\.|[^"\\])*" # string literal
    | '(?:\\.|[^'\\])*' # char literal
    """,
    re.DOTALL | re.VERBOSE,
)
_PACKAGE = re.compile(r"^\s*package\s+([\w.]+)\s*;", re.MULTILINE)
_IMPORT = re.compile(r"^\s*import\s+(static\s+)?([\w.]+(?:\.\*)?)\s*;", re.MULTILINE)
_TYPE_DECL = re.compile(
    r"^\s*((?:public|final|abstract|sealed|strictfp|static\s)[\w\s]*?)?"
    r"\b(class|interface|enum|record)\s+(\w+)",
    re.MULTILINE,
)


@dataclass(frozen=True)
class SourceUnit:
    path: Path
    package: str  # empty for the default package
    type_name: str
    imports: tuple[str, ...]

    @property
    def qualified_name(self) -> str:
        return f"{self.package}.{self.type_name}" if self.package else self.type_name


@dataclass
class ScanLog:
    skipped: list[str] = field(default_factory=list)
    extra_types: list[str] = field(default_factory=list)

    def messages(self) -> list[str]:
        out = [f"skipped unreadable file: {p}" for p in self.skipped]
        out += [f"ignored additional top-level type: {t}" for t in self.extra_types]
        return out


def strip_noise(source: str) -> str:
    """Blank out comments and string literals, preserving line structure."""

    def blank(match: re.Match) -> str:
        return "".join(c if c == "\n" else " " for c in match.group(0))

    return _COMMENT_OR_STRING.sub(blank, source)


def parse_source(path: Path, text: str, log: ScanLog) -> SourceUnit | None:
    code = strip_noise(text)
    pkg_match = _PACKAGE.search(code)
    package = pkg_match.group(1) if pkg_match else ""

    decls = _TYPE_DECL.findall(code)
    if not decls:
        return None
    public = [d for d in decls if d[0] and "public" in d[0]]
    primary = (public or decls)[0][2]
    for d in decls:
        if d[2] != primary:
            log.extra_types.append(f"{path}: {d[2]}")

    imports = []
    for static, name in _IMPORT.findall(code):
        if static:
            # drop the trailing member segment, keep the owning type
            name = name.rsplit(".", 1)[0]
        imports.append(name)
    return SourceUnit(path, package, primary, tuple(imports))


def scan_sources(root: str | Path, log: ScanLog | None = None) -> DependencyGraph:
    """Build a class-level graph from the ``.java`` files under ``root``.

    A single-type import produces an edge when it resolves to a scanned
    unit; a wildcard import produces edges to every scanned unit of that
    package. Imports of unscanned (external) types are dropped.
    """
    root = Path(root)
    if not root.is_dir():
        raise FileNotFoundError(f"not a directory: {root}")
    log = log if log is not None else ScanLog()

    units: list[SourceUnit] = []
    for path in sorted(root.rglob("*.java")):
        try:
            text = path.read_text(encoding="utf-8", errors="replace")
        except OSError:
            log.skipped.append(str(path))
            continue
        unit = parse_source(path, text, log)
        if unit is not None:
            units.append(unit)
    if not units:
        raise ValueError(f"no Java source units found under {root}")

    by_name = {u.qualified_name: u for u in units}
    by_package: dict[str, list[str]] = {}
    for u in units:
        by_package.setdefault(u.package, []).append(u.qualified_name)

    edges = set()
    for u in units:
        src = u.qualified_name
        for imp in u.imports:
            if imp.endswith(".*"):
                targets = by_package.get(imp[:-2], [])
            else:
                targets = [imp] if imp in by_name else []
            for tgt in targets:
                if tgt != src:
                    edges.add((src, tgt))
    return DependencyGraph.build(by_name, edges, level=CLASS)
