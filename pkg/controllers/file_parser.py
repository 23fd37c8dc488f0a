"""
File Parser Controller
Reads the line-oriented graph, hom, unit-family, certificate and homotopy formats
"""
import re
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from config.settings import ALLOWED_FILE_TYPES, MAX_FILE_SIZE_KB
from models.algebra import AlgebraElement, LeavittPathAlgebra
from models.bfmod import IsoCertificate
from models.errors import ExpressionSyntaxError, FileFormatError, GraphValidationError, UnknownGenerator
from models.expression import parse_expression
from models.graph import Graph
from models.homotopy import HomotopyCertificate, certificates_from_images
from models.homs import GradedHom
from utils.data_helpers import DataFormatter, NameValidator

GRAPH_HEADER = re.compile(r"graph\s+(\S+)$")
VERTICES_LINE = re.compile(r"vertices\s*:(.*)$")
EDGE_LINE = re.compile(r"edge\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)(?:\s+weight\s+(-?\d+))?$")
MAPPING_LINE = re.compile(r"(\S+)\s*->\s*(.+)$")
SECTION_LINE = re.compile(r"(lag|forward-lag|M|M'|start|end|images)\s*:\s*(.*)$")


def _content_lines(text: str) -> Iterator[Tuple[int, str]]:
    """Numbered lines with '#' comments and surrounding blanks removed"""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if line:
            yield number, line


class FileParser:
    """Parses the text formats accepted by the CLI and the explorer"""

    @staticmethod
    def parse_graph(text: str, source: str = "<input>") -> Graph:
        """graph NAME / vertices: v1 v2 ... / edge NAME: SRC -> DST [weight K]"""
        name: Optional[str] = None
        vertices: List[str] = []
        edges: List[Tuple] = []
        for number, line in _content_lines(text):
            if name is None:
                header = GRAPH_HEADER.match(line)
                if not header:
                    raise FileFormatError("expected 'graph <name>' as the first line", number, source)
                name = header.group(1)
                continue
            declared = VERTICES_LINE.match(line)
            if declared:
                for v in declared.group(1).split():
                    if not NameValidator.is_valid_name(v):
                        raise FileFormatError(f"'{v}' is not a valid vertex name", number, source)
                    vertices.append(v)
                continue
            edge = EDGE_LINE.match(line)
            if edge:
                edge_name, src, dst, weight = edge.groups()
                if not NameValidator.is_valid_name(edge_name):
                    raise FileFormatError(f"'{edge_name}' is not a valid edge name", number, source)
                for v in (src, dst):
                    if v not in vertices:
                        raise FileFormatError(f"edge '{edge_name}' uses undeclared vertex '{v}'", number, source)
                edges.append((edge_name, src, dst, int(weight) if weight else 1))
                continue
            raise FileFormatError(f"cannot read '{line}'", number, source)
        if name is None:
            raise FileFormatError("empty graph file", None, source)
        try:
            return Graph.build(name, vertices, edges)
        except GraphValidationError as e:
            raise FileFormatError(e.message, None, source) from e

    @staticmethod
    def load_graph(path: Path) -> Graph:
        return FileParser.parse_graph(FileParser.read(path), str(path))

    @staticmethod
    def read(path: Path) -> str:
        try:
            with open(path, 'r', encoding='utf-8') as f:
                return f.read()
        except OSError as e:
            raise FileFormatError(f"cannot read file: {e.strerror}", None, str(path)) from e

    @staticmethod
    def _expression(src: str, algebra: LeavittPathAlgebra, number: int, source: str) -> AlgebraElement:
        try:
            return parse_expression(src, algebra)
        except (ExpressionSyntaxError, UnknownGenerator) as e:
            raise FileFormatError(e.message, number, source) from e

    @staticmethod
    def _mappings(lines: List[Tuple[int, str]], source: str) -> List[Tuple[int, str, str]]:
        found = []
        seen = set()
        for number, line in lines:
            mapping = MAPPING_LINE.match(line)
            if not mapping:
                raise FileFormatError(f"expected '<generator> -> <expression>', got '{line}'", number, source)
            key, expr = mapping.group(1), mapping.group(2).strip()
            if key in seen:
                raise FileFormatError(f"'{key}' is mapped twice", number, source)
            seen.add(key)
            found.append((number, key, expr))
        return found

    @staticmethod
    def _images(lines: List[Tuple[int, str]], source_algebra: LeavittPathAlgebra, target: LeavittPathAlgebra,
                source: str) -> Dict[str, AlgebraElement]:
        """Generator images; 'e* -> auto' stars the image of e"""
        known = set(source_algebra.generator_names())
        images: Dict[str, AlgebraElement] = {}
        automatic: List[Tuple[int, str]] = []
        for number, key, expr in FileParser._mappings(lines, source):
            if key not in known:
                raise FileFormatError(f"'{key}' is not a generator of L({source_algebra.graph.name})", number, source)
            if expr == "auto":
                if not key.endswith('*'):
                    raise FileFormatError("'auto' is only allowed for ghost edges", number, source)
                automatic.append((number, key))
                continue
            images[key] = FileParser._expression(expr, target, number, source)
        for number, key in automatic:
            if key[:-1] not in images:
                raise FileFormatError(f"'{key} -> auto' needs an image for '{key[:-1]}'", number, source)
            images[key] = images[key[:-1]].star()
        missing = [g for g in source_algebra.generator_names() if g not in images]
        if missing:
            raise FileFormatError(f"no image for: {', '.join(missing)}", None, source)
        return images

    @staticmethod
    def parse_hom(text: str, source_algebra: LeavittPathAlgebra, target: LeavittPathAlgebra,
                  source: str = "<input>", name: str = "h") -> GradedHom:
        images = FileParser._images(list(_content_lines(text)), source_algebra, target, source)
        return GradedHom(source_algebra, target, images, name)

    @staticmethod
    def parse_units(text: str, hom: GradedHom,
                    source: str = "<input>") -> Tuple[Dict[str, AlgebraElement], Dict[str, AlgebraElement]]:
        """Lines 'e -> EXPR' for z_e and optional 'e^-1 -> EXPR' for its inverse"""
        edges = {e.name for e in hom.source.graph.edges}
        units: Dict[str, AlgebraElement] = {}
        inverses: Dict[str, AlgebraElement] = {}
        for number, key, expr in FileParser._mappings(list(_content_lines(text)), source):
            inverse = key.endswith("^-1")
            edge = key[:-3] if inverse else key
            if edge not in edges:
                raise FileFormatError(f"'{edge}' is not an edge of {hom.source.graph.name}", number, source)
            value = FileParser._expression(expr, hom.target, number, source)
            (inverses if inverse else units)[edge] = value
        return units, inverses

    @staticmethod
    def _sections(text: str, source: str, allowed: Tuple[str, ...], default: Optional[str]) -> Dict[str, List]:
        sections: Dict[str, List] = {}
        current = default
        for number, line in _content_lines(text):
            header = SECTION_LINE.match(line)
            if header and header.group(1) in allowed:
                current = header.group(1)
                if current in sections:
                    raise FileFormatError(f"section '{current}:' appears twice", number, source)
                sections[current] = []
                if header.group(2):
                    sections[current].append((number, header.group(2)))
                continue
            if current is None:
                raise FileFormatError(f"expected a section header, got '{line}'", number, source)
            sections.setdefault(current, []).append((number, line))
        return sections

    @staticmethod
    def _int_rows(lines: List[Tuple[int, str]], label: str, source: str) -> np.ndarray:
        rows = []
        for number, line in lines:
            try:
                rows.append([int(x) for x in line.split()])
            except ValueError:
                raise FileFormatError(f"non-integer entry in {label}: '{line}'", number, source)
            if rows and len(rows[-1]) != len(rows[0]):
                raise FileFormatError(f"ragged rows in {label}", number, source)
        if not rows:
            raise FileFormatError(f"{label} has no rows", None, source)
        return np.array(rows, dtype=object)

    @staticmethod
    def _lag(sections: Dict[str, List], key: str, source: str) -> int:
        lines = sections[key]
        if len(lines) != 1 or not re.fullmatch(r"\d+", lines[0][1]):
            line = lines[0][0] if lines else None
            raise FileFormatError(f"'{key}:' must be a single nonnegative integer", line, source)
        return int(lines[0][1])

    @staticmethod
    def parse_certificate(text: str, source: str = "<input>") -> IsoCertificate:
        """lag: L / optional forward-lag: K / M: rows / M': rows"""
        sections = FileParser._sections(text, source, ("lag", "forward-lag", "M", "M'"), None)
        for required in ("lag", "M", "M'"):
            if required not in sections:
                raise FileFormatError(f"missing '{required}:' section", None, source)
        forward_lag = FileParser._lag(sections, "forward-lag", source) if "forward-lag" in sections else 0
        m = FileParser._int_rows(sections["M"], "M", source)
        m_prime = FileParser._int_rows(sections["M'"], "M'", source)
        return IsoCertificate(m, m_prime, FileParser._lag(sections, "lag", source), forward_lag)

    @staticmethod
    def format_certificate(cert: IsoCertificate) -> str:
        lines = [f"lag: {cert.lag}"]
        if cert.forward_lag:
            lines.append(f"forward-lag: {cert.forward_lag}")
        lines += ["M:"] + DataFormatter.format_matrix_rows(cert.m)
        lines += ["M':"] + DataFormatter.format_matrix_rows(cert.m_prime)
        return "\n".join(lines) + "\n"

    @staticmethod
    def parse_homotopy(text: str, source_algebra: LeavittPathAlgebra, target: LeavittPathAlgebra,
                       source: str = "<input>", name: str = "H") -> HomotopyCertificate:
        """Polynomial images (t reserved) with optional 'start:' and 'end:' endpoint sections"""
        poly = target.polynomial_extension
        sections = FileParser._sections(text, source, ("images", "start", "end"), "images")
        if not sections.get("images"):
            raise FileFormatError("no homotopy images", None, source)
        images = FileParser._images(sections["images"], source_algebra, poly, source)
        start = FileParser._images(sections["start"], source_algebra, target, source) if "start" in sections else None
        end = FileParser._images(sections["end"], source_algebra, target, source) if "end" in sections else None
        return certificates_from_images(source_algebra, poly, images, start, end, name)

    @staticmethod
    def validate_upload(uploaded_file) -> Tuple[bool, str]:
        """Validate a file uploaded to the explorer"""
        if uploaded_file is None:
            return False, "No file uploaded"

        if uploaded_file.name.rsplit('.', 1)[-1] not in ALLOWED_FILE_TYPES:
            return False, f"File must be one of: {', '.join(ALLOWED_FILE_TYPES)}"

        if uploaded_file.size > MAX_FILE_SIZE_KB * 1024:
            return False, f"File exceeds the {MAX_FILE_SIZE_KB} KB limit"

        return True, "Valid file"
