"""Tool configuration, loadable from a key=value file."""

from dataclasses import dataclass, replace

from .errors import ParseError


@dataclass(frozen=True)
class Config:
    notdelta_nesting_cap: int = 2
    trace_alphabet_cap: int = 1000000
    oracle_lasso_bound: int = 4
    concurrency: bool = False


_BOOLS = {"on": True, "true": True, "1": True,
          "off": False, "false": False, "0": False}


def parse_config(text):
    cfg = Config()
    updates = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError("expected key=value", line=lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if not hasattr(cfg, key):
            raise ParseError("unknown option %r" % key, line=lineno)
        current = getattr(cfg, key)
        if isinstance(current, bool):
            if value.lower() not in _BOOLS:
                raise ParseError("expected on/off for %r" % key, line=lineno)
            updates[key] = _BOOLS[value.lower()]
        else:
            try:
                updates[key] = int(value)
            except ValueError:
                raise ParseError("expected an integer for %r" % key,
                                 line=lineno) from None
    return replace(cfg, **updates)


def load_config(path):
    with open(path, encoding="utf-8") as handle:
        return parse_config(handle.read())
