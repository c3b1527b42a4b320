"""Rule-based URL classification and the training tips it teaches.

Seven rules are checked in a fixed order; the first match wins and decides
both the verdict and the one tip shown to the player. Suspicion rules
(1-5) outrank the legitimacy defaults (6-7), so e.g. an https URL on a
hyphenated brand domain is still flagged.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .urls import ParsedUrl, SuffixTable, matched_suffix, registrable_domain


class RuleId(enum.Enum):
    IP_HOST = "ip_host"
    EMBEDDED_BRAND = "embedded_brand"
    MISSPELLED_BRAND = "misspelled_brand"
    HYPHEN_BRAND = "hyphen_brand"
    SECURITY_KEYWORD = "security_keyword"
    HTTPS_WELL_FORMED = "https_well_formed"
    WELL_FORMED_KNOWN = "well_formed_known"


class Label(enum.Enum):
    LEGIT = "legit"
    PHISHING = "phishing"


PHISHING_RULES = frozenset({
    RuleId.IP_HOST,
    RuleId.EMBEDDED_BRAND,
    RuleId.MISSPELLED_BRAND,
    RuleId.HYPHEN_BRAND,
    RuleId.SECURITY_KEYWORD,
})

_TIPS = {
    RuleId.IP_HOST: "Don't trust URLs with all numbers in the front",
    RuleId.MISSPELLED_BRAND: "Don't trust URLs with misspelled known websites",
    RuleId.EMBEDDED_BRAND: (
        "Don't trust URLs with large host names that contained a part of a "
        "well-known web addresses"
    ),
    RuleId.HYPHEN_BRAND: "Company name followed by a hyphen usually means, it's a scam website",
    RuleId.SECURITY_KEYWORD: "Companies don't use security related keywords in their domains",
    RuleId.HTTPS_WELL_FORMED: "URL with 'https://?' usually a legitimate website",
    RuleId.WELL_FORMED_KNOWN: "URLs with well-known domain and correctly spelled are legitimate",
}

# Words that appear in scam domains but never in the brands' own registrable
# domains. Stored as data; a deck file may override the set.
DEFAULT_SECURITY_KEYWORDS = frozenset({
    "security", "secure", "verify", "verification", "login", "signin", "account",
})

# Misspellings are accepted at edit distance 1..2; distance 0 is the brand
# itself and larger distances are just different names.
MISSPELLING_MIN = 1
MISSPELLING_MAX = 2


class UnknownDomain(ValueError):
    """No rule fired: the host is neither suspicious nor a registered brand."""

    def __init__(self, host: str):
        super().__init__(f"no rule applies to host {host!r}")
        self.host = host


@dataclass(frozen=True)
class BrandEntry:
    name: str
    domains: tuple[str, ...]


@dataclass(frozen=True)
class BrandRegistry:
    """Well-known brand names and their canonical registrable domains."""

    entries: tuple[BrandEntry, ...]

    def __post_init__(self):
        seen = set()
        for e in self.entries:
            if not e.name or not e.name.isalnum() or e.name != e.name.lower():
                raise ValueError(f"brand name must be lowercase alphanumeric: {e.name!r}")
            if e.name in seen:
                raise ValueError(f"duplicate brand name: {e.name!r}")
            seen.add(e.name)
            for d in e.domains:
                if not d or d != d.lower() or any(not l for l in d.split(".")):
                    raise ValueError(f"bad canonical domain {d!r} for brand {e.name!r}")

    @property
    def names(self) -> frozenset[str]:
        return frozenset(e.name for e in self.entries)

    @property
    def canonical_domains(self) -> frozenset[str]:
        return frozenset(d for e in self.entries for d in e.domains)


@dataclass(frozen=True)
class Verdict:
    label: Label
    fired_rule: RuleId
    tip: str


def tip_for(rule: RuleId) -> str:
    """Training tip text for ``rule``. Total over the enumeration."""
    return _TIPS[rule]


def label_for(rule: RuleId) -> Label:
    return Label.PHISHING if rule in PHISHING_RULES else Label.LEGIT


def _verdict(rule: RuleId) -> Verdict:
    return Verdict(label=label_for(rule), fired_rule=rule, tip=tip_for(rule))


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance: unit-cost insertions, deletions, substitutions."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(
                prev[j] + 1,          # delete from a
                cur[j - 1] + 1,       # insert into a
                prev[j - 1] + (ca != cb),
            ))
        prev = cur
    return prev[-1]


def _label_runs(host_labels: tuple[str, ...], target: str) -> list[tuple[int, int]]:
    """Start/end index pairs where ``target``'s labels occur contiguously."""
    t = target.split(".")
    k = len(t)
    n = len(host_labels)
    return [(i, i + k) for i in range(n - k + 1) if list(host_labels[i:i + k]) == t]


def _embedded_well_known(p: ParsedUrl, registry: BrandRegistry, table: SuffixTable,
                         rdomain: str | None) -> bool:
    """True when the host embeds a well-known address it does not own.

    Two shapes count: a canonical brand domain occurring as a dotted,
    label-aligned substring that is not the host's own registrable domain;
    or a multi-label public suffix (like "co.uk") occurring strictly before
    the host's tail, which makes an attacker domain read like a familiar one
    ("www.arguments.co.uk.myshop.com").
    """
    n = len(p.host_labels)
    for domain in registry.canonical_domains:
        if domain != rdomain and _label_runs(p.host_labels, domain):
            return True
    for suffix in table.suffixes:
        if "." not in suffix:
            continue
        if any(end < n for _, end in _label_runs(p.host_labels, suffix)):
            return True
    return False


def _within_misspelling_range(a: str, b: str) -> bool:
    return MISSPELLING_MIN <= edit_distance(a, b) <= MISSPELLING_MAX


def classify(p: ParsedUrl, registry: BrandRegistry, table: SuffixTable,
             keywords: frozenset[str] = DEFAULT_SECURITY_KEYWORDS) -> Verdict:
    """Apply the rules in precedence order; exactly one fires.

    Raises :class:`UnknownDomain` when the host triggers no suspicion rule
    and is not a registered brand; the caller decides policy for such hosts.
    """
    if p.is_ip_host:
        return _verdict(RuleId.IP_HOST)

    rdomain = registrable_domain(p, table)

    if _embedded_well_known(p, registry, table, rdomain):
        return _verdict(RuleId.EMBEDDED_BRAND)

    if rdomain is not None:
        left = rdomain.split(".")[0]
        if any(_within_misspelling_range(left, name) for name in registry.names) or \
                any(_within_misspelling_range(rdomain, d) for d in registry.canonical_domains):
            return _verdict(RuleId.MISSPELLED_BRAND)

        segments = left.split("-")
        if "-" in left and any(seg in registry.names for seg in segments):
            return _verdict(RuleId.HYPHEN_BRAND)

        if any(seg in keywords for seg in segments):
            return _verdict(RuleId.SECURITY_KEYWORD)

        if rdomain in registry.canonical_domains:
            if p.uses_https:
                return _verdict(RuleId.HTTPS_WELL_FORMED)
            return _verdict(RuleId.WELL_FORMED_KNOWN)

    raise UnknownDomain(p.host)
