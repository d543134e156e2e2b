"""Theory configuration files (INI syntax).

    [classes]
    amplitude = B3
    space = B1^1
    time = B5

    [axioms]
    double = call x . cex y . y = x+x

    [options]
    trusted_true = no
    blind_bound = 4096
    budget = 500
    extended = yes
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, field

from ..bounds.classes import Boundclass, parse_boundclass
from ..bounds.regularity import RegularityReport, check_regularity
from ..syntax.formulas import Formula, is_sentence
from ..syntax.parser import parse_formula, render


class ConfigError(ValueError):
    pass


@dataclass
class TheoryParams:
    amplitude: Boundclass
    space: Boundclass
    time: Boundclass
    supplementary: dict = field(default_factory=dict)
    trusted_true: bool = False
    blind_bound: int = 4096
    budget: int = 500
    extended: bool = True
    _audit: RegularityReport | None = field(default=None, repr=False)

    @property
    def triple(self) -> tuple:
        return (self.amplitude, self.space, self.time)

    def audit(self, **kw) -> RegularityReport:
        """The regularity audit of the triple, computed once."""
        if self._audit is None:
            self._audit = check_regularity(self.triple, budget=self.budget,
                                           supplementary=tuple(self.supplementary.values()), **kw)
        return self._audit

    def render(self) -> str:
        lines = ["[classes]"]
        lines += [f"{k} = {c.name or c.render()}" for k, c in zip(("amplitude", "space", "time"), self.triple)]
        lines.append("\n[axioms]")
        lines += [f"{k} = {render(f)}" for k, f in self.supplementary.items()]
        lines.append("\n[options]")
        lines += [f"trusted_true = {'yes' if self.trusted_true else 'no'}",
                  f"blind_bound = {self.blind_bound}", f"budget = {self.budget}",
                  f"extended = {'yes' if self.extended else 'no'}"]
        return "\n".join(lines) + "\n"


def default_theory() -> TheoryParams:
    """Linear amplitude, logarithmic space, polynomial time."""
    return TheoryParams(parse_boundclass("B3"), parse_boundclass("B1^1"), parse_boundclass("B5"))


def parse_theory(text: str) -> TheoryParams:
    cp = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";", "%"))
    cp.optionxform = str   # keep axiom names as written
    try:
        cp.read_string(text)
    except configparser.Error as e:
        raise ConfigError(str(e)) from None
    if not cp.has_section("classes"):
        raise ConfigError("missing [classes] section")
    classes = {}
    for role in ("amplitude", "space", "time"):
        if not cp.has_option("classes", role):
            raise ConfigError(f"[classes] needs {role}")
        try:
            classes[role] = parse_boundclass(cp.get("classes", role))
        except ValueError as e:
            raise ConfigError(f"{role}: {e}") from None
    supplementary: dict = {}
    if cp.has_section("axioms"):
        for name, text_ in cp.items("axioms"):
            try:
                f: Formula = parse_formula(text_)
            except ValueError as e:
                raise ConfigError(f"axiom {name}: {e}") from None
            if not is_sentence(f):
                raise ConfigError(f"axiom {name} is not a sentence")
            supplementary[name] = f
    opts = cp["options"] if cp.has_section("options") else {}
    try:
        return TheoryParams(
            classes["amplitude"], classes["space"], classes["time"], supplementary,
            trusted_true=_flag(opts.get("trusted_true", "no")),
            blind_bound=int(opts.get("blind_bound", 4096)),
            budget=int(opts.get("budget", 500)),
            extended=_flag(opts.get("extended", "yes")),
        )
    except ValueError as e:
        raise ConfigError(f"[options]: {e}") from None


def _flag(text: str) -> bool:
    t = str(text).strip().lower()
    if t in ("yes", "true", "on", "1"):
        return True
    if t in ("no", "false", "off", "0"):
        return False
    raise ValueError(f"expected yes/no, got {text!r}")


def load_theory(path) -> TheoryParams:
    with open(path, encoding="utf-8") as fh:
        return parse_theory(fh.read())
