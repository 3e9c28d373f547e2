"""Command-line front end.

Exit status: 0 when every check passes, 1 on a verification failure, 2 on a
usage, configuration or I/O error.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from dataclasses import asdict, dataclass, fields, replace
from fractions import Fraction
from pathlib import Path

from sympy import primerange

from . import asd, charpoly, galois, modforms, modgroup, surface
from .cache import CacheIntegrityError, CountCache, resolve_cache_path
from .report import ReportDocument

log = logging.getLogger("asdforms")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
VERBS = ("series", "traces", "charpoly", "asd", "serre", "group", "geometry", "all")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    truncation: int = 400
    pmax: int = 31
    nmax: int | None = None
    family: str = "g1515"
    format: str = "table"
    cache: str | None = None
    audit: bool = False

    def validate(self) -> "RunConfig":
        if self.truncation < 1:
            raise ConfigError(f"truncation must be >= 1, got {self.truncation}")
        if self.pmax < 5:
            raise ConfigError(f"pmax must be >= 5, got {self.pmax}")
        if self.nmax is not None and self.nmax < 1:
            raise ConfigError(f"nmax must be >= 1, got {self.nmax}")
        if self.family not in surface.FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}")
        if self.format not in ("table", "records"):
            raise ConfigError(f"unknown format {self.format!r}")
        if self.truncation < 2 * self.pmax:
            log.warning("truncation %d is below 2*pmax; few n will be tested", self.truncation)
        return self

    def echo(self) -> dict:
        return {k: v for k, v in asdict(self).items() if k not in ("format", "cache", "audit")}


_CASTS = {"truncation": int, "pmax": int, "nmax": int, "family": str, "format": str, "cache": str, "audit": None}


def load_config_file(path: str) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key == "trunc":
            key = "truncation"
        if key not in _CASTS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            if key == "audit":
                values[key] = value.lower() in ("1", "true", "yes", "on")
            else:
                values[key] = _CASTS[key](value)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return values


# ---------------------------------------------------------------------------
# verbs


def _primes(cfg: RunConfig, low: int = 5) -> list[int]:
    return [p for p in primerange(low, cfg.pmax + 1) if p not in (2, 3)]


def _exponent(n: int, ramification: int) -> str:
    e = Fraction(n, ramification)
    return str(e)


def cmd_series(cfg: RunConfig, doc: ReportDocument, cache=None) -> None:
    T = cfg.truncation
    forms = modforms.cusp_forms_gamma(T)
    series = {
        "E1": modforms.eisenstein_E1(T),
        "E2": modforms.eisenstein_E2(T),
        "f1": forms.f1,
        "f2": forms.f2,
        "f+": forms.f_plus,
        "f-": forms.f_minus,
        "h2": modforms.cusp_form_gamma2(T),
        "t": modforms.hauptmodul(T),
    }
    sec = doc.section("series", ["series", "n", "exponent", "coefficient"])
    for name, s in series.items():
        for n, c in s.items():
            sec.add(series=name, n=n, exponent=_exponent(n, s.ramification), coefficient=c)
    checks = doc.section("series checks", ["check", "pass"])

    def check(name: str, ok: bool) -> None:
        checks.add(check=name, **{"pass": ok})
        if not ok:
            doc.fail(f"series: {name}")

    check("E1, E2 integral", all(c.is_gaussian_integer() and c.is_real() for s in ("E1", "E2") for _, c in series[s].items()))
    check("f1, f2 real with 3-power denominators", all(_power_denominators(s, 3) for s in (forms.f1, forms.f2)))
    check("h2 real with 2-power denominators", _power_denominators(series["h2"], 2))
    check("t real", all(c.is_real() for _, c in series["t"].items()))
    check("f- is the conjugate of f+", forms.f_minus.matches(forms.f_plus.conjugate()))


def _power_denominators(s, prime: int) -> bool:
    for _, c in s.items():
        if c.im:
            return False
        d = c.re.denominator
        while d % prime == 0:
            d //= prime
        if d != 1:
            return False
    return True


def cmd_traces(cfg: RunConfig, doc: ReportDocument, cache=None) -> None:
    family = surface.get_family(cfg.family)
    sec = doc.section(f"traces {family.family_id}", ["p", "Tr_p", "Tr_p2", "bounds"])
    for p in _primes(cfg):
        tr = surface.frobenius_trace(family, p, cache)
        tr2 = surface.frobenius_trace(family, p * p, cache)
        bad = [(q, fc) for q in (p, p * p) for fc in surface.bound_violations(family, q, cache)]
        sec.add(p=p, Tr_p=tr, Tr_p2=tr2, bounds=not bad)
        for q, fc in bad:
            doc.fail(f"traces: count {fc.count} at t={fc.t} over F_{q} is out of bounds")
        if (tr * tr - tr2) % 2:
            doc.fail(f"traces: Tr_p^2 - Tr_p2 odd at p = {p}")


def _forms(cfg: RunConfig):
    forms = modforms.cusp_forms_gamma(cfg.truncation)
    return forms.f_plus, forms.f_minus


def cmd_charpoly(cfg: RunConfig, doc: ReportDocument, cache=None) -> None:
    forms = _forms(cfg)
    sec = doc.section(
        "charpoly", ["p", "C1", "C2", "H_p", "H'_p candidates", "b_p(g+)", "H'_p", "sign"]
    )
    for p in _primes(cfg):
        try:
            data = charpoly.build_frobenius_data(p, surface.G1515, cache)
            candidates = charpoly.factor_over_qi(data)
            if len(candidates) == 1:
                beta, how = candidates[0], "unique"
            else:
                beta = asd.resolve_sign(forms[0], forms[1], p, candidates, cfg.nmax)
                how = "congruence"
        except (charpoly.FactorizationError, charpoly.IntegrityError, asd.SignAmbiguityError) as exc:
            doc.fail(f"charpoly p={p}: {exc}")
            continue
        data = charpoly.with_beta(data, beta)
        sec.add(
            p=p,
            C1=data.c1,
            C2=data.c2,
            H_p=charpoly.format_polynomial(data.hp),
            **{
                "H'_p candidates": [str(b).replace("i", "A") for b in candidates],
                "b_p(g+)": beta,
                "H'_p": charpoly.format_polynomial(data.hp_prime),
                "sign": how,
            },
        )


def _newform_value(g, label: str, p: int, forms, cache, nmax):
    """b_p as printed when available, otherwise from point counts."""
    if p in g.prime_values:
        return g.prime_values[p], "printed"
    b = charpoly.newform_from_counting(label, p, forms=forms, cache=cache, n_probe=nmax)
    g.prime_values[p] = b
    g.coeffs.clear()
    return b, "counted"


def cmd_asd(cfg: RunConfig, doc: ReportDocument, cache=None) -> None:
    T = cfg.truncation
    f_plus, f_minus = _forms(cfg)
    h2 = modforms.cusp_form_gamma2(T)
    pairs = [
        ("f+", f_plus, charpoly.newform_from_paper("g+"), 3, 5),
        ("f-", f_minus, charpoly.newform_from_paper("g-"), 3, 5),
        ("h2", h2, charpoly.newform_from_paper("g2"), 2, 3),
    ]
    sec = doc.section("asd", ["form", "newform", "p", "b_p", "source", "n", "place", "required", "achieved", "pass"])
    summary = doc.section("asd summary", ["form", "newform", "p", "records", "pass"])
    for label, f, g, m, low in pairs:
        for p in primerange(low, cfg.pmax + 1):
            if (m * g.level) % p == 0:
                continue
            try:
                b, source = _newform_value(g, g.label, p, (f_plus, f_minus), cache, cfg.nmax)
            except (charpoly.SignPendingError, asd.SignAmbiguityError, charpoly.IntegrityError) as exc:
                doc.fail(f"asd {label} p={p}: {exc}")
                continue
            nmax = None if cfg.nmax is None else min(cfg.nmax, f.truncation // p)
            report = asd.asd_congruence(f, g, p, nmax, m=m, form_label=label)
            for r in report.records:
                sec.add(form=label, newform=g.label, p=p, b_p=b, source=source, n=r.n, place=r.place,
                        required=r.required, achieved=r.achieved, **{"pass": r.passed})
            summary.add(form=label, newform=g.label, p=p, records=len(report.records), **{"pass": report.passed})
            if not report.passed:
                doc.fail(f"asd: ({label}, {g.label}) fails at p = {p}")
    scholl = doc.section("scholl", ["form", "p", "n", "place", "required", "achieved", "pass"])
    f1 = modforms.cusp_forms_gamma(T).f1
    for p in (7, 13):
        if p * p > T:
            continue
        report = asd.scholl_congruence(f1, charpoly.build_frobenius_data(p, surface.G1515, cache), 1, "f1")
        for r in report.records:
            scholl.add(form="f1", p=p, n=r.n, place=r.place, required=r.required, achieved=r.achieved,
                       **{"pass": r.passed})
        if not report.passed:
            doc.fail(f"scholl: f1 fails at p = {p}")


def cmd_serre(cfg: RunConfig, doc: ReportDocument, cache=None) -> None:
    inert = doc.section("quadratic inertness", ["d", "p", "inert"])
    for d, p, ok in galois.inertness_septuple():
        inert.add(d=d, p=p, inert=ok)
        if not ok:
            doc.fail(f"serre: {p} is not inert in Q(sqrt {d})")
    quart = doc.section("quartic fields", ["polynomial", "poly disc", "field disc", "order-4 primes"])
    for row in galois.deviation_probe():
        quart.add(**{"polynomial": row.label, "poly disc": row.polynomial_discriminant,
                     "field disc": row.field_discriminant, "order-4 primes": list(row.order4_primes)})
    forms = _forms(cfg)
    table = []
    modl = doc.section("mod (1+i)", ["p", "H'_p mod (1+i)", "order", "K6 cycle type", "consistent"])
    for p in _primes(cfg):
        data = charpoly.build_frobenius_data(p, surface.G1515, cache)
        cands = charpoly.factor_over_qi(data)
        beta = cands[0] if len(cands) == 1 else asd.resolve_sign(forms[0], forms[1], p, cands, cfg.nmax)
        data = charpoly.with_beta(data, beta)
        table.append(data)
        cp = galois.mod_lambda_charpoly(data)
        ct = galois.cycle_type(galois.K6_CUBIC, p)
        consistent = (ct.order == 3) == (cp == (1, 1, 1))
        modl.add(p=p, **{"H'_p mod (1+i)": _f2_poly(cp), "order": galois.order_from_charpoly_f2(cp),
                         "K6 cycle type": list(ct.parts), "consistent": consistent})
        if not consistent:
            doc.fail(f"serre: mod (1+i) image and K6 Frobenius disagree at p = {p}")
    s3 = doc.section("S3 probe", ["d", "odd-trace primes inert in Q(sqrt d)"])
    for d, ps in galois.s3_probe(table).items():
        s3.add(d=d, **{"odd-trace primes inert in Q(sqrt d)": list(ps)})
        if not ps:
            doc.fail(f"serre: no probe prime for d = {d}")


def _f2_poly(cp) -> str:
    return "T^2 + T + 1" if cp[1] else "T^2 + 1"


def cmd_group(cfg: RunConfig, doc: ReportDocument, cache=None) -> None:
    sec = doc.section("group checks", ["check", "pass"])

    def check(name: str, ok: bool) -> None:
        sec.add(check=name, **{"pass": ok})
        if not ok:
            doc.fail(f"group: {name}")

    check("A^2 = -I", modgroup.A @ modgroup.A == -modgroup.IDENTITY)
    check("Gamma^1(5) relation", modgroup.verify_relation(modgroup.GAMMA1_RELATION))
    check("Gamma relation", modgroup.verify_relation(modgroup.gamma_relation()))
    check("Gamma_2 relation", modgroup.verify_relation(modgroup.gamma2_relation()))
    check("Gamma^0(5) cosets", modgroup.verify_cosets(modgroup.gamma0_5_reps(), modgroup.in_gamma0_5,
                                                      modgroup.index_in_sl2z(modgroup.in_gamma0_5)))
    check("+-Gamma^1(5) cosets", modgroup.verify_cosets(modgroup.pm_gamma1_5_reps(), modgroup.in_pm_gamma1_5,
                                                        modgroup.index_in_sl2z(modgroup.in_pm_gamma1_5)))
    check("Gamma cosets in Gamma^1(5)", modgroup.verify_gamma_cosets())
    cusps = doc.section("cusps of Gamma", ["cusp", "width", "generator", "matrix"])
    for cusp, w, name, m in modgroup.gamma_cusp_table():
        cusps.add(cusp=cusp, width=w, generator=name, matrix=str(m))
    check("width sum = Euler number", modgroup.width_sum() == surface.euler_number(surface.G1515))


def cmd_geometry(cfg: RunConfig, doc: ReportDocument, cache=None) -> None:
    family = surface.get_family(cfg.family)
    from sympy import factor

    sec = doc.section(f"geometry {family.family_id}", ["quantity", "value"])
    delta = surface.discriminant_poly(family)
    num, den = surface.j_invariant(family)
    sec.add(quantity="discriminant", value=str(factor(delta.as_expr())))
    sec.add(quantity="j numerator", value=str(factor(num.as_expr())))
    sec.add(quantity="j denominator", value=str(factor(den.as_expr())))
    fibers = surface.kodaira_multiplicities(family)
    sec.add(quantity="singular fibres", value=[f"{f.place}:{f.kodaira_type}" for f in fibers])
    sec.add(quantity="euler number", value=sum(f.multiplicity for f in fibers))
    order = surface.torsion_order_check(family)
    sec.add(quantity="order of (0,0)", value=order)
    if order != 5:
        doc.fail(f"geometry: (0,0) has order {order}")
    c4, c6 = family.c4, family.c6
    ok = c4**3 - c6**2 == 1728 * delta
    sec.add(quantity="c4^3 - c6^2 = 1728 Delta", value=ok)
    if not ok:
        doc.fail("geometry: Weierstrass identity")
    if family.infinity_via_involution:
        for name, ok in surface.involution_report().items():
            sec.add(quantity=f"involution: {name}", value=ok)
            if not ok:
                doc.fail(f"geometry: involution check {name}")


COMMANDS = {
    "series": cmd_series,
    "traces": cmd_traces,
    "charpoly": cmd_charpoly,
    "asd": cmd_asd,
    "serre": cmd_serre,
    "group": cmd_group,
    "geometry": cmd_geometry,
}


def audit_cache(cache: CountCache, doc: ReportDocument, fraction: float = 0.01, seed: int = 0) -> None:
    """Recompute a fixed random sample of cached counts."""
    entries = cache.entries()
    if not entries:
        return
    k = max(1, round(len(entries) * fraction))
    sample = random.Random(seed).sample(entries, k)
    sec = doc.section("cache audit", ["family", "q", "t", "cached", "recomputed", "pass"])
    for (family_id, q, t), cached in sorted(sample):
        family = surface.get_family(family_id)
        p, r = surface.split_prime_power(q)
        field = surface.FiniteField(p, r)
        t_value = surface.INFINITY if t == surface.INFINITY else field(*map(int, t.split(",")))
        fresh = surface.count_fiber(family, q, t_value).count
        sec.add(family=family_id, q=q, t=t, cached=cached, recomputed=fresh, **{"pass": fresh == cached})
        if fresh != cached:
            doc.fail(f"cache audit: {family_id} q={q} t={t} cached {cached}, recomputed {fresh}")


def run(verb: str, cfg: RunConfig, cache: CountCache | None = None) -> ReportDocument:
    doc = ReportDocument(config={"verb": verb, **cfg.echo()})
    verbs = list(COMMANDS) if verb == "all" else [verb]
    for v in verbs:
        COMMANDS[v](cfg, doc, cache)
    if cache is not None and cfg.audit:
        audit_cache(cache, doc)
    return doc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="asdforms", description=__doc__.splitlines()[0])
    parser.add_argument("verb", choices=VERBS)
    parser.add_argument("--family", choices=sorted(surface.FAMILIES))
    parser.add_argument("--pmax", type=int)
    parser.add_argument("--trunc", type=int, dest="truncation")
    parser.add_argument("--nmax", type=int)
    parser.add_argument("--format", choices=("table", "records"))
    parser.add_argument("--cache")
    parser.add_argument("--config")
    parser.add_argument("--audit", action="store_true", default=None)
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    values = load_config_file(args.config) if args.config else {}
    for f in fields(RunConfig):
        flag = getattr(args, f.name, None)
        if flag is not None:
            values[f.name] = flag
    values["cache"] = resolve_cache_path(args.cache, values.get("cache"))
    return replace(RunConfig(), **values).validate()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = make_config(args)
    except ConfigError as exc:
        print(f"asdforms: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        cache = CountCache(cfg.cache) if cfg.cache else None
    except OSError as exc:
        print(f"asdforms: cannot open cache: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CacheIntegrityError as exc:
        print(f"asdforms: cache integrity error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    status = None
    try:
        doc = run(args.verb, cfg, cache)
    except (CacheIntegrityError, charpoly.IntegrityError) as exc:
        print(f"asdforms: integrity error: {exc}", file=sys.stderr)
        status = EXIT_FAIL
    if cache is not None:
        try:
            cache.flush()
        except OSError as exc:
            print(f"asdforms: cannot write cache: {exc}", file=sys.stderr)
            return EXIT_USAGE
    if status is not None:
        return status
    sys.stdout.write(doc.render(cfg.format))
    return EXIT_OK if doc.passed else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
