"""Plain-text reports ending in a ``key=value`` trailer."""
from __future__ import annotations

from dataclasses import dataclass, field


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, (tuple, list)):
        return ",".join(_fmt(x) for x in v)
    return str(v)


@dataclass
class Report:
    title: str
    lines: list[str] = field(default_factory=list)
    values: dict = field(default_factory=dict)

    def add(self, key: str, value, text: str | None = None) -> None:
        self.values[key] = value
        self.lines.append(f"{text or key}: {_fmt(value)}")

    def note(self, text: str) -> None:
        self.lines.append(text)

    def __getitem__(self, key):
        return self.values[key]

    def render(self) -> str:
        body = [self.title, *("  " + ln for ln in self.lines), "---"]
        body += [f"{k}={_fmt(v)}" for k, v in self.values.items()]
        return "\n".join(body) + "\n"


def parse_trailer(text: str) -> dict[str, str]:
    """The ``key=value`` lines after the last ``---`` separator."""
    _, _, tail = text.rpartition("\n---\n")
    out = {}
    for ln in tail.splitlines():
        k, sep, v = ln.partition("=")
        if sep:
            out[k.strip()] = v.strip()
    return out
