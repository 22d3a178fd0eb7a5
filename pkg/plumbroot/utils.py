"""
All the utility code goes here
"""
import logging
import os
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Optional, Union

import yaml

from plumbroot.exceptions import MalformedInput

CONFIG_PATH = os.path.join(os.path.dirname(__file__), "config.yaml")

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def _load_config(path: str) -> Dict[Any, Any]:
    with open(path, encoding="utf-8") as config:
        conf_dict = yaml.safe_load(config)
    return conf_dict


def read_config(path: str = CONFIG_PATH) -> Dict[Any, Any]:
    # copy so callers can't mutate the cached defaults
    return {key: (dict(value) if isinstance(value, dict) else value) for key, value in _load_config(path).items()}


def config_value(section: str, key: str, default: Any = None) -> Any:
    return read_config().get(section, {}).get(key, default)


def configure_logging(level: Optional[Union[int, str]] = None) -> logging.Logger:
    """
    Attach a stderr handler to the package logger. Called once by the CLI;
    library modules only ever create loggers.
    """
    conf = read_config().get("logging", {})
    logger = logging.getLogger("plumbroot")
    if level is None:
        level = conf.get("level", "WARNING")
    logger.setLevel(level)

    if not any(getattr(handler, "_plumbroot", False) for handler in logger.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(conf.get("format", "%(name)s %(levelname)s: %(message)s")))
        handler._plumbroot = True  # type: ignore[attr-defined]
        logger.addHandler(handler)

    return logger


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """
    Parse "p/q", "n" or an int into a Fraction. Floats are rejected.
    """
    if isinstance(text, bool):
        raise MalformedInput(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise MalformedInput(f"not a rational: {text!r}")

    cleaned = text.strip()
    if "." in cleaned or "e" in cleaned.lower():
        raise MalformedInput(f"decimal values are not exact, use p/q: {text!r}")
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError) as e:
        raise MalformedInput(f"not a rational: {text!r} - {e}") from e


def format_rational(value: Rational) -> str:
    return str(Fraction(value))


def parse_int_vector(text: str) -> List[int]:
    """
    Parse a CSV like "-5,5,8,9,1" (brackets tolerated).
    """
    cleaned = text.strip().strip("[]()")
    if not cleaned:
        raise MalformedInput("empty integer vector")
    try:
        return [int(part) for part in cleaned.split(",")]
    except ValueError as e:
        raise MalformedInput(f"not an integer vector: {text!r}") from e
