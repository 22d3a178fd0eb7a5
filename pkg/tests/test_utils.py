import logging
from fractions import Fraction

import pytest

from plumbroot.exceptions import MalformedInput, NotATree
from plumbroot.utils import config_value, configure_logging, format_rational, parse_int_vector, parse_rational, read_config


def test_parse_rational():
    assert parse_rational("13/2") == Fraction(13, 2)
    assert parse_rational(" -3 ") == -3
    assert parse_rational(4) == 4
    for bad in ("1.5", "1e3", "x", "1/0", True, 1.5):
        with pytest.raises(MalformedInput):
            parse_rational(bad)


def test_format_rational():
    assert format_rational(Fraction(-570, 769)) == "-570/769"
    assert format_rational(3) == "3"


def test_parse_int_vector():
    assert parse_int_vector("-5,5,8,9,1") == [-5, 5, 8, 9, 1]
    assert parse_int_vector("[1, 2]") == [1, 2]
    for bad in ("", "1,a"):
        with pytest.raises(MalformedInput):
            parse_int_vector(bad)


def test_config():
    assert config_value("verify", "class_limit") == 40
    assert config_value("missing", "key", "fallback") == "fallback"
    conf = read_config()
    conf["verify"]["class_limit"] = 0
    assert config_value("verify", "class_limit") == 40


def test_configure_logging_adds_one_handler():
    logger = configure_logging("INFO")
    configure_logging("DEBUG")
    assert logger.level == logging.DEBUG
    assert sum(1 for handler in logger.handlers if getattr(handler, "_plumbroot", False)) == 1
    configure_logging("WARNING")


def test_errors_serialize():
    error = NotATree("cycle", edge=(0, 1), weight=Fraction(1, 2))
    assert error.to_dict() == {"error": "NotATree", "message": "cycle", "edge": [0, 1], "weight": "1/2"}
