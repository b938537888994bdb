import sys
import time
from typing import Any, Union

import numpy as np
from loguru import logger
from sympy import QQ, QQ_I

import config

def get_current_timestamp():
    """Returns current unix timestamp in seconds (int)."""
    return int(time.time())

def setup_logger():
    """Configures loguru logger."""
    logger.remove()
    logger.add(
        sys.stderr,
        format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <level>{message}</level>",
        level=config.settings.LOG_LEVEL
    )
    return logger

def make_rng(seed: int = None) -> np.random.Generator:
    """Seeded generator; every randomized check goes through here."""
    return np.random.default_rng(config.settings.DEFAULT_SEED if seed is None else seed)

def parse_rational(text: Union[str, int]) -> Any:
    """'3', '-3/4' or an int -> QQ element."""
    if isinstance(text, int):
        return QQ(text)
    s = str(text).strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return QQ(int(num), int(den))
    return QQ(int(s))

def format_rational(q: Any) -> str:
    q = QQ.convert(q)
    if q.denominator == 1:
        return str(int(q.numerator))
    return f"{int(q.numerator)}/{int(q.denominator)}"

def parse_gaussian(value: Any) -> Any:
    """{'re': 'p/q', 'im': 'r/s'} or a plain rational -> QQ_I element."""
    if isinstance(value, dict):
        return QQ_I(parse_rational(value.get("re", 0)), parse_rational(value.get("im", 0)))
    return QQ_I(parse_rational(value), 0)

def format_gaussian(z: Any) -> dict:
    return {"re": format_rational(z.x), "im": format_rational(z.y)}

def parse_int_list(text: str) -> list:
    return [int(tok) for tok in text.replace(",", " ").split()]
