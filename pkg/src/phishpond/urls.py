"""Structural URL parsing for the heuristic rules.

The parser is purely lexical and never touches the network. It accepts the
kinds of strings players actually see: scheme-less hosts ("www.smile.co.uk/"),
dotted-quad hosts, and permissive leftovers (userinfo, ports, queries,
fragments) which are folded into ``path`` and ignored by every rule.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_SCHEME_RE = re.compile(r"^([A-Za-z][A-Za-z0-9+.\-]*)://")
_HOST_CHARS_RE = re.compile(r"^[a-z0-9.\-]+$")
_ASCII_WS = " \t\r\n\f\v"


class UrlError(ValueError):
    """Base class for URL parsing failures."""


class EmptyInput(UrlError):
    """Raised when the input is blank after trimming whitespace."""


class MalformedHost(UrlError):
    """Raised when the host part cannot be interpreted as a hostname."""


class IpHostHasNoDomain(UrlError):
    """Raised when a registrable domain is requested for an IP-literal host."""


@dataclass(frozen=True)
class ParsedUrl:
    """Structural decomposition of a URL string.

    ``raw`` preserves the input byte-for-byte; all derived fields are
    normalized (scheme/host lowercased, at most one trailing host dot
    stripped). ``path`` keeps its original case and carries everything after
    the host, including any port, query, or fragment.
    """

    raw: str
    scheme: str | None
    host: str
    host_labels: tuple[str, ...]
    path: str
    is_ip_host: bool
    uses_https: bool

    @property
    def canonical(self) -> str:
        """Reconstructed "scheme://host+path" form (scheme omitted if absent)."""
        prefix = f"{self.scheme}://" if self.scheme else ""
        return f"{prefix}{self.host}{self.path}"


@dataclass(frozen=True)
class SuffixTable:
    """Set of public suffixes used to locate registrable domains."""

    suffixes: frozenset[str]

    def __post_init__(self):
        if not self.suffixes:
            raise ValueError("suffix table must not be empty")
        for s in self.suffixes:
            if not s or s != s.lower() or s.startswith(".") or s.endswith("."):
                raise ValueError(f"bad suffix entry: {s!r}")
            if any(not label for label in s.split(".")):
                raise ValueError(f"bad suffix entry: {s!r}")

    def with_extra(self, extra: set[str] | frozenset[str]) -> "SuffixTable":
        return SuffixTable(self.suffixes | frozenset(extra))


# Enough for the built-in deck; external decks can extend it.
BUILTIN_SUFFIXES = SuffixTable(frozenset({"com", "co.uk", "uk", "org", "net", "edu"}))


def _is_dotted_quad(labels: tuple[str, ...]) -> bool:
    if len(labels) != 4:
        return False
    return all(label.isdigit() and int(label) <= 255 for label in labels)


def parse_url(raw: str) -> ParsedUrl:
    """Parse ``raw`` into a :class:`ParsedUrl`.

    Raises :class:`EmptyInput` for blank input and :class:`MalformedHost`
    when the host is empty, contains characters outside ``[a-z0-9.-]`` after
    lowercasing, has an empty label between dots, or carries a scheme other
    than http/https.
    """
    s = raw.strip(_ASCII_WS)
    if not s:
        raise EmptyInput("URL is empty")

    scheme: str | None = None
    m = _SCHEME_RE.match(s)
    if m:
        scheme = m.group(1).lower()
        if scheme not in ("http", "https"):
            raise MalformedHost(f"unsupported scheme {scheme!r}")
        s = s[m.end():]

    # Authority ends at the first path/query/fragment delimiter.
    cut = len(s)
    for ch in "/?#":
        idx = s.find(ch)
        if idx != -1:
            cut = min(cut, idx)
    authority, path = s[:cut], s[cut:]

    # Userinfo is dropped; a port moves to the front of the path so the
    # canonical form round-trips.
    _, at, rest = authority.rpartition("@")
    if at:
        authority = rest
    host_part, colon, port = authority.partition(":")
    if colon:
        path = f":{port}{path}"

    host = host_part.lower()
    if host.endswith("."):
        host = host[:-1]
    if not host:
        raise MalformedHost(f"no host in {raw!r}")
    if not _HOST_CHARS_RE.match(host):
        bad = sorted(set(host) - set("abcdefghijklmnopqrstuvwxyz0123456789.-"))
        raise MalformedHost(f"invalid host characters {bad!r} in {host!r}")
    labels = tuple(host.split("."))
    if any(not label for label in labels):
        raise MalformedHost(f"empty label in host {host!r}")

    return ParsedUrl(
        raw=raw,
        scheme=scheme,
        host=host,
        host_labels=labels,
        path=path,
        is_ip_host=_is_dotted_quad(labels),
        uses_https=scheme == "https",
    )


def matched_suffix(host_labels: tuple[str, ...], table: SuffixTable) -> str | None:
    """Longest public suffix that the host ends with (label-aligned), if any."""
    best: str | None = None
    best_len = 0
    for s in table.suffixes:
        s_labels = s.split(".")
        k = len(s_labels)
        if k <= len(host_labels) and list(host_labels[-k:]) == s_labels:
            if k > best_len:
                best, best_len = s, k
    return best


def registrable_domain(p: ParsedUrl, table: SuffixTable) -> str | None:
    """Host suffix one label above the longest matching public suffix.

    Returns ``None`` when the host is itself a bare suffix or no suffix
    matches. Raises :class:`IpHostHasNoDomain` for IP-literal hosts.
    """
    if p.is_ip_host:
        raise IpHostHasNoDomain(f"{p.host} is an IP literal")
    suffix = matched_suffix(p.host_labels, table)
    if suffix is None:
        return None
    k = len(suffix.split("."))
    if len(p.host_labels) < k + 1:
        return None
    return ".".join(p.host_labels[-(k + 1):])
