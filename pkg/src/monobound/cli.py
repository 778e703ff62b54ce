"""Command-line front end: JSON in, JSON (or table) out, cached prime scans.

Exit codes: 0 success, 2 validation error (mathematically inconsistent
input), 3 unstable scan certificate, 4 malformed input (bad JSON or
schema).  Cached and uncached runs produce identical output except for
an added "cached" field.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import tempfile
from fractions import Fraction
from typing import Optional, Tuple

from . import __version__
from .chern_invariants import FamilySpec, invariants_of
from .compat_bounds import DEFAULT_SCAN_DEPTH, ScanCertificate, c_d_stable
from .errors import UnstableCertificateError, ValidationError
from .group_orders import c_ell_d
from .numtheory import FACTORED_ONE, FactoredInt, phi_inverse_set
from .variety_bounds import VarietyInvariants, d_vector, descend
from .wd_matrix import RationalMatrix, wd_pair

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_UNSTABLE = 3
EXIT_MALFORMED = 4

CACHE_ENV_VAR = "MONOBOUND_CACHE"


class MalformedInputError(Exception):
    """Unparseable or schema-violating input payload (exit code 4)."""


# ---------------------------------------------------------------- serialization

def factored_to_json(f: FactoredInt, expand_value: bool = True,
                     digit_limit: int = 1000) -> dict:
    out = {"factors": {str(p): e for p, e in f.factors}}
    if expand_value and f.digit_count() <= digit_limit:
        out["value"] = str(f.value())
    return out


def factored_from_json(obj: dict) -> FactoredInt:
    return FactoredInt.from_dict({int(p): int(e)
                                  for p, e in obj["factors"].items()})


def cert_to_json(cert: ScanCertificate) -> dict:
    return {
        "d": cert.d,
        "excluded_p": cert.excluded_p,
        "primes_scanned": cert.primes_scanned,
        "candidate_primes": list(cert.candidate_primes_q),
        "witnesses": {str(q): ell for q, ell in cert.witnesses},
        "stable": cert.stable,
    }


def cert_from_json(obj: dict) -> ScanCertificate:
    return ScanCertificate(
        d=obj["d"],
        excluded_p=obj["excluded_p"],
        primes_scanned=obj["primes_scanned"],
        candidate_primes_q=tuple(obj["candidate_primes"]),
        witnesses=tuple(sorted((int(q), ell)
                               for q, ell in obj["witnesses"].items())),
        stable=obj["stable"],
    )


def invariants_to_json(inv: VarietyInvariants) -> dict:
    return {"n": inv.n, "b": list(inv.b), "c": list(inv.c)}


def invariants_from_json(obj: dict) -> VarietyInvariants:
    try:
        return VarietyInvariants(n=int(obj["n"]),
                                 b=tuple(int(x) for x in obj["b"]),
                                 c=tuple(int(x) for x in obj["c"]))
    except (KeyError, TypeError) as exc:
        raise MalformedInputError(f"bad invariants object: {exc}") from exc


def family_from_json(obj: dict) -> FamilySpec:
    try:
        return FamilySpec(kind=obj["kind"], n=int(obj["n"]),
                          degrees=tuple(int(x) for x in obj.get("degrees", ())))
    except (KeyError, TypeError) as exc:
        raise MalformedInputError(f"bad family object: {exc}") from exc


def matrix_from_json(obj) -> RationalMatrix:
    try:
        return RationalMatrix.from_rows(
            [[Fraction(str(x)) for x in row] for row in obj])
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise MalformedInputError(f"bad matrix payload: {exc}") from exc


def matrix_to_json(M: RationalMatrix):
    return [[str(x) for x in row] for row in M.rows]


# ---------------------------------------------------------------------- cache

def _checksum(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class ScanCache:
    """Single-file JSON cache of prime-scan results.

    Entries are keyed by a content hash of (tool version, d, p,
    scan_depth) and carry their own checksum; a corrupt file or entry is
    treated as a cold cache, never as an error.  Writes go through an
    atomic rename.
    """

    def __init__(self, path: Optional[str]):
        self.path = path
        self._entries = {}
        if path and os.path.exists(path):
            try:
                with open(path, "r", encoding="utf-8") as fh:
                    data = json.load(fh)
                entries = data.get("entries", {})
                self._entries = {
                    k: v for k, v in entries.items()
                    if isinstance(v, dict)
                    and v.get("checksum") == _checksum(v.get("payload", {}))
                }
            except (OSError, ValueError):
                self._entries = {}

    @staticmethod
    def key(d: int, p: Optional[int], scan_depth: int) -> str:
        raw = f"{__version__}:cd:{d}:{p}:{scan_depth}"
        return hashlib.sha256(raw.encode()).hexdigest()

    def get(self, key: str) -> Optional[dict]:
        entry = self._entries.get(key)
        return entry["payload"] if entry else None

    def put(self, key: str, payload: dict) -> None:
        self._entries[key] = {"checksum": _checksum(payload), "payload": payload}
        if not self.path:
            return
        directory = os.path.dirname(os.path.abspath(self.path))
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump({"version": __version__, "entries": self._entries}, fh)
            os.replace(tmp, self.path)
        except OSError:
            if os.path.exists(tmp):
                os.unlink(tmp)


def cached_c_d(cache: ScanCache, d: int, p: Optional[int],
               scan_depth: int) -> Tuple[FactoredInt, ScanCertificate, bool]:
    """Certified gcd with cache lookaside; returns (value, cert, was_hit)."""
    key = ScanCache.key(d, p, scan_depth)
    payload = cache.get(key)
    if payload is not None:
        return (factored_from_json(payload["value"]),
                cert_from_json(payload["certificate"]), True)
    value, cert = c_d_stable(d, p, scan_depth)
    cache.put(key, {"value": factored_to_json(value),
                    "certificate": cert_to_json(cert)})
    return value, cert, False


# ------------------------------------------------------------------- commands

def _read_input(path: str) -> dict:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        obj = json.loads(text)
    except OSError as exc:
        raise MalformedInputError(f"cannot read input: {exc}") from exc
    except ValueError as exc:
        raise MalformedInputError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise MalformedInputError("top-level JSON input must be an object")
    return obj


def _invariants_from_input(obj: dict) -> VarietyInvariants:
    if "family" in obj:
        return invariants_of(family_from_json(obj["family"]))
    if "invariants" in obj:
        return invariants_from_json(obj["invariants"])
    raise MalformedInputError('input needs a "family" or "invariants" key')


def cmd_cld(args, cfg) -> dict:
    return {"ell": args.ell, "d": args.d,
            "order": factored_to_json(c_ell_d(args.ell, args.d),
                                      cfg.expand_value, cfg.digit_limit)}


def cmd_cd(args, cfg) -> dict:
    value, cert, hit = cached_c_d(cfg.cache, args.d, args.p, cfg.scan_depth)
    out = {"d": args.d, "p": args.p, "scan_depth": cfg.scan_depth,
           "value": factored_to_json(value, cfg.expand_value, cfg.digit_limit),
           "certificate": cert_to_json(cert)}
    if hit:
        out["cached"] = True
    return out


def cmd_variety_bound(args, cfg) -> dict:
    inv = _invariants_from_input(_read_input(args.input))
    h = args.h if args.h is not None else inv.n
    if not 1 <= h <= inv.n:
        raise ValidationError(f"h must lie in 1..{inv.n}, got {h}")
    dv = d_vector(inv)
    factors, certs, hits = [], [], []
    product = FACTORED_ONE
    for d_j in dv.entries[:h]:
        value, cert, hit = cached_c_d(cfg.cache, d_j, args.p, cfg.scan_depth)
        factors.append(value)
        certs.append(cert)
        hits.append(hit)
        product = product * value
    out = {
        "invariants": invariants_to_json(inv),
        "p": args.p,
        "h": h,
        "d_vector": list(dv.entries),
        "factors": [factored_to_json(f, cfg.expand_value, cfg.digit_limit)
                    for f in factors],
        "product": factored_to_json(product, cfg.expand_value, cfg.digit_limit),
        "certificates": [cert_to_json(c) for c in certs],
    }
    if hits and all(hits):
        out["cached"] = True
    return out


def cmd_invariants(args, cfg) -> dict:
    obj = _read_input(args.input)
    if "family" not in obj:
        raise MalformedInputError('input needs a "family" key')
    inv = invariants_of(family_from_json(obj["family"]))
    return {"invariants": invariants_to_json(inv)}


def cmd_descend(args, cfg) -> dict:
    inv = _invariants_from_input(_read_input(args.input))
    chain = []
    for _ in range(args.steps):
        inv = descend(inv)
        chain.append(invariants_to_json(inv))
    return {"steps": chain}


def cmd_wd(args, cfg) -> dict:
    obj = _read_input(args.input)
    if "matrix" not in obj:
        raise MalformedInputError('input needs a "matrix" key')
    try:
        tau = Fraction(args.tau)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInputError(f"bad tau: {exc}") from exc
    pair = wd_pair(matrix_from_json(obj["matrix"]), tau)
    return {"r": matrix_to_json(pair.r), "n": matrix_to_json(pair.n),
            "tau": str(pair.tau)}


def cmd_refined(args, cfg) -> dict:
    if args.d < 1:
        raise ValidationError(f"refined bound needs d >= 1, got {args.d}")
    # route the scan through the cache; the wild part is read off the
    # cached gcd rather than rescanned
    value, cert, hit = cached_c_d(cfg.cache, args.d, args.p, cfg.scan_depth)
    tame = phi_inverse_set(args.d)
    out = {
        "d": args.d, "p": args.p,
        "tame_set": list(tame),
        "tame_max": max(tame),
        "tame_lcm": math.lcm(*tame),
        "wild_part": factored_to_json(value.p_part(args.p), cfg.expand_value,
                                      cfg.digit_limit),
        "certificate": cert_to_json(cert),
    }
    if hit:
        out["cached"] = True
    return out


# --------------------------------------------------------------------- driver

class JobConfig:
    def __init__(self, args):
        self.scan_depth = args.scan_depth
        if self.scan_depth < 2:
            raise ValidationError(
                f"scan depth must be >= 2, got {self.scan_depth}")
        self.format = args.format
        self.expand_value = not args.no_value_expansion
        self.digit_limit = args.value_digit_limit
        path = args.cache or os.environ.get(CACHE_ENV_VAR)
        self.cache = ScanCache(path)


def _render_table(obj: dict, indent: str = "") -> str:
    lines = []
    for key, value in obj.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_render_table(value, indent + "  "))
        elif isinstance(value, list):
            lines.append(f"{indent}{key}: {json.dumps(value)}")
        else:
            lines.append(f"{indent}{key}: {value}")
    return "\n".join(lines)


def _add_common(parser) -> None:
    parser.add_argument("--scan-depth", type=int, default=DEFAULT_SCAN_DEPTH,
                        help="number of primes per gcd scan (default 100)")
    parser.add_argument("--cache", default=None,
                        help=f"cache file path (or set ${CACHE_ENV_VAR})")
    parser.add_argument("--format", choices=("json", "table"), default="json")
    parser.add_argument("--no-value-expansion", action="store_true",
                        help="never expand factored values to plain integers")
    parser.add_argument("--value-digit-limit", type=int, default=1000,
                        help="omit expanded values above this many digits")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monobound",
        description="Exact bounds on the index of unipotent local monodromy.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cld", help="order of GL_d over F_ell (Z/4Z for ell=2)")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_cld)

    p = sub.add_parser("cd", help="certified gcd of orders over primes != p")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_cd)

    p = sub.add_parser("variety-bound",
                       help="index bound from variety invariants or a family")
    p.add_argument("--input", default="-", help="JSON file or - for stdin")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--h", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_variety_bound)

    p = sub.add_parser("invariants", help="Betti/Chern invariants of a family")
    p.add_argument("--input", default="-")
    _add_common(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("descend", help="iterated hyperplane-section invariants")
    p.add_argument("--input", default="-")
    p.add_argument("--steps", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=cmd_descend)

    p = sub.add_parser("wd-decompose",
                       help="finite-order / nilpotent split of a rational matrix")
    p.add_argument("--input", default="-")
    p.add_argument("--tau", default="1")
    _add_common(p)
    p.set_defaults(func=cmd_wd)

    p = sub.add_parser("refined", help="tame/wild refinement for dimension d")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_refined)

    return parser


def _emit(obj: dict, fmt: str) -> None:
    if fmt == "table":
        print(_render_table(obj))
    else:
        print(json.dumps(obj, indent=2, sort_keys=True))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", "json")
    try:
        cfg = JobConfig(args)
        result = args.func(args, cfg)
    except MalformedInputError as exc:
        _emit({"error": {"type": "MalformedInput", "message": str(exc)}}, fmt)
        return EXIT_MALFORMED
    except UnstableCertificateError as exc:
        _emit({"error": {"type": "UnstableCertificate", "message": str(exc),
                         "certificate": cert_to_json(exc.certificate)}}, fmt)
        return EXIT_UNSTABLE
    except (ValidationError, ValueError) as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}}, fmt)
        return EXIT_VALIDATION
    _emit(result, cfg.format)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
