"""
Scenario configs: JSON documents naming the field, the truncation degree, the
varieties and the checks to run.

    {
        "name": "headline",
        "field": "Q",
        "generators": 2,
        "degree": 3,
        "variety_X": ["y*v1*v2"],
        "variety_Theta": ["[v1,v2]"],
        "checks": ["theorem", "corollary1"]
    }
"""
import json
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from .algebra_core import FieldSpec
from .embedding import EmbeddingScenario, estimate_basis_size
from .exceptions import BasisSizeExceededError, ConfigError, ParseError
from .expression_parser import parse_lie_identity
from .free_lie import LieVarietySpec
from .varieties import RepIdentity, VarietySpec, validate_multihomogeneous

CHECKS = ("theorem", "lemma3", "proposition", "corollary1", "wreath_def1", "dims")
REQUIRED_KEYS = ("name", "field", "generators", "degree", "variety_X", "checks")
OPTIONAL_KEYS = ("variety_Theta", "ideal_generators", "proposition_Y", "max_basis_size")
DEFAULT_MAX_BASIS_SIZE = 20000


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    field: FieldSpec
    generators: int
    degree: int
    variety_X: VarietySpec
    variety_Theta: Optional[LieVarietySpec]
    ideal_generators: Optional[Tuple[str, ...]]
    checks: Tuple[str, ...]
    proposition_Y: Optional[Tuple[str, ...]] = None
    max_basis_size: int = DEFAULT_MAX_BASIS_SIZE

    def basis_size_estimate(self) -> int:
        return estimate_basis_size(self.generators, self.degree)

    def check_basis_size(self) -> None:
        estimate = self.basis_size_estimate()
        if estimate > self.max_basis_size:
            raise BasisSizeExceededError(estimate, self.max_basis_size)

    def scenario(self) -> EmbeddingScenario:
        """The scenario behind the config, built after the basis-size guard."""
        self.check_basis_size()
        try:
            return EmbeddingScenario.build(
                self.field, self.generators, self.degree, self.variety_X,
                theta=self.variety_Theta, ideal_generators=self.ideal_generators, name=self.name)
        except ParseError as e:
            raise ConfigError(e.message, e.line, e.column, "ideal_generators") from e


def _position(text: str, key: str) -> Tuple[Optional[int], Optional[int]]:
    """Line and column of the first occurrence of "key" in the document."""
    offset = text.find(f'"{key}"')
    if offset < 0:
        return None, None
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


class _Validator:
    def __init__(self, text: str, document: Dict[str, Any]):
        self.text = text
        self.document = document

    def error(self, key: str, message: str) -> ConfigError:
        line, column = _position(self.text, key)
        return ConfigError(message, line, column, key)

    def integer(self, key: str, minimum: int) -> int:
        value = self.document[key]
        if isinstance(value, bool) or not isinstance(value, int):
            raise self.error(key, f"expected an integer, got {type(value).__name__}")
        if value < minimum:
            raise self.error(key, f"must be at least {minimum}, got {value}")
        return value

    def string(self, key: str) -> str:
        value = self.document[key]
        if not isinstance(value, str):
            raise self.error(key, f"expected a string, got {type(value).__name__}")
        return value

    def strings(self, key: str) -> List[str]:
        value = self.document[key]
        if not isinstance(value, list) or not all(isinstance(item, str) for item in value):
            raise self.error(key, "expected a list of strings")
        return value

    def expressions(self, key: str, parse) -> list:
        """Parses every string under key; errors keep the column within the string."""
        results = []
        for index, text in enumerate(self.strings(key)):
            try:
                results.append(parse(text))
            except ParseError as e:
                raise ConfigError(e.message, e.line, e.column, f"{key}[{index}]") from e
        return results


def parse_config(text: str, field_override: Optional[str] = None,
                 degree_override: Optional[int] = None) -> ScenarioConfig:
    """Decodes and validates a scenario config; overrides replace the document's values."""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(e.msg, e.lineno, e.colno) from e
    if not isinstance(document, dict):
        raise ConfigError("a scenario config must be a JSON object", 1, 1)

    validator = _Validator(text, document)
    for key in document:
        if key not in REQUIRED_KEYS + OPTIONAL_KEYS:
            raise validator.error(key, "unknown key")
    for key in REQUIRED_KEYS:
        if key not in document:
            raise ConfigError("missing required key", key=key)

    if field_override is not None:
        document["field"] = field_override
    if degree_override is not None:
        document["degree"] = degree_override

    try:
        field_spec = FieldSpec.parse(validator.string("field"))
    except ValueError as e:
        raise validator.error("field", str(e)) from e
    generators = validator.integer("generators", 1)
    degree = validator.integer("degree", 1)

    checks = validator.strings("checks")
    for check in checks:
        if check not in CHECKS:
            raise validator.error("checks", f"unknown check '{check}' (allowed: {', '.join(CHECKS)})")

    identities = validator.expressions("variety_X", lambda t: RepIdentity.parse(t, field_spec))
    variety_X = validate_multihomogeneous(VarietySpec(tuple(identities)))

    if ("variety_Theta" in document) == ("ideal_generators" in document):
        raise ConfigError("give exactly one of variety_Theta or ideal_generators", key="variety_Theta")
    variety_Theta = None
    ideal_generators = None
    if "variety_Theta" in document:
        theta = validator.expressions("variety_Theta", lambda t: parse_lie_identity(t, field_spec))
        variety_Theta = LieVarietySpec(tuple(theta))
        if variety_Theta.has_linear_identity():
            raise validator.error("variety_Theta", "degree-1 identities are not allowed; use ideal_generators")
    else:
        ideal_generators = tuple(validator.strings("ideal_generators"))

    proposition_Y = None
    if "proposition_Y" in document:
        proposition_Y = tuple(validator.strings("proposition_Y"))
    elif "proposition" in checks:
        raise ConfigError("the proposition check needs proposition_Y", key="proposition_Y")

    max_basis_size = DEFAULT_MAX_BASIS_SIZE
    if "max_basis_size" in document:
        max_basis_size = validator.integer("max_basis_size", 1)

    config = ScenarioConfig(
        name=validator.string("name"),
        field=field_spec,
        generators=generators,
        degree=degree,
        variety_X=variety_X,
        variety_Theta=variety_Theta,
        ideal_generators=ideal_generators,
        checks=tuple(checks),
        proposition_Y=proposition_Y,
        max_basis_size=max_basis_size,
    )
    logging.debug(f"Loaded config '{config.name}' over {config.field} up to degree {config.degree}")
    return config


def load_config(path: str, field_override: Optional[str] = None,
                degree_override: Optional[int] = None) -> ScenarioConfig:
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    return parse_config(text, field_override, degree_override)

