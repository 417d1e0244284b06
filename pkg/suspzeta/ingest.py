import json
from importlib import resources
from pathlib import Path
from typing import Any

from loguru import logger
from pydantic import ValidationError

from .exceptions import ParseError
from .models import BundleDocument, ResolutionData, ZetaBundle
from .symbolic import parse_rational_function
from .zeta import check_z_at_zero

FIXTURE_PACKAGE = "suspzeta.fixtures"


def _load_json(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{source}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


def _describe(exc: ValidationError) -> str:
    messages = []
    for error in exc.errors():
        path = ".".join(str(part) for part in error["loc"]) or "<root>"
        messages.append(f"{path}: {error['msg']}")
    return "; ".join(messages)


def parse_resolution(text: str, source: str = "resolution") -> ResolutionData:
    data = _load_json(text, source)
    try:
        res = ResolutionData.model_validate(data)
    except ValidationError as exc:
        raise ParseError(f"{source}: {_describe(exc)}") from exc
    if not check_z_at_zero(res):
        logger.warning(f"{source}: resolution data fails the Z(0) = 1 check")
    return res


def parse_bundle(text: str, source: str = "bundle") -> ZetaBundle:
    data = _load_json(text, source)
    try:
        document = BundleDocument.model_validate(data)
    except ValidationError as exc:
        raise ParseError(f"{source}: {_describe(exc)}") from exc
    entries = {}
    for index, entry in enumerate(document.entries):
        if entry.twist in entries:
            raise ParseError(f"{source}: entries.{index}: duplicate twist {entry.twist}")
        num = parse_rational_function(entry.num, document.variable)
        den = parse_rational_function(entry.den, document.variable)
        if den.is_zero:
            raise ParseError(f"{source}: entries.{index}.den: zero denominator")
        entries[entry.twist] = num / den
    logger.debug(f"{source}: bundle with twists {sorted(entries)}")
    return ZetaBundle(entries=entries, default_zero=document.default_zero)


def parse_document(text: str, source: str) -> ResolutionData | ZetaBundle:
    """Resolution data when the document has strata, a bundle otherwise."""
    data = _load_json(text, source)
    if isinstance(data, dict) and "strata" in data:
        return parse_resolution(text, source)
    return parse_bundle(text, source)


def fixture_names() -> list[str]:
    folder = resources.files(FIXTURE_PACKAGE)
    return sorted(
        item.name.removesuffix(".json")
        for item in folder.iterdir()
        if item.name.endswith(".json")
    )


def read_fixture(name: str) -> str:
    filename = name if name.endswith(".json") else f"{name}.json"
    item = resources.files(FIXTURE_PACKAGE).joinpath(filename)
    if not item.is_file():
        raise ParseError(f"unknown fixture {name!r}")
    return item.read_text(encoding="utf-8")


def read_source(path: Path | None, fixture: str | None) -> tuple[str, str]:
    """Text and display name of a JSON input given by path or fixture name."""
    if fixture is not None:
        return read_fixture(fixture), fixture
    if path is None:
        raise ParseError("no input given")
    if not path.exists() and path.name.removesuffix(".json") in fixture_names():
        logger.debug(f"{path} not found, using the shipped fixture")
        return read_fixture(path.name), path.name
    try:
        return path.read_text(encoding="utf-8"), str(path)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def load_resolution_fixture(name: str) -> ResolutionData:
    return parse_resolution(read_fixture(name), name)


def load_bundle_fixture(name: str) -> ZetaBundle:
    return parse_bundle(read_fixture(name), name)
