"""Property-suite orchestration and the machine-readable verification report.

Every property is a generator of ``(case, ok)`` pairs.  Random properties get
their own generator ``default_rng([rng_seed, crc32(name)])``, so adding or
removing a property never changes another property's cases.
"""

import json
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from . import branching, cartan, germs, invariants, lfactors, orbital, qring, volumes
from ._finite_field import ENUM_LIMIT, count_subspaces_enum, count_subspaces_pivots
from .errors import ConfigError, DomainError
from .qring import LaurentPolyQ, RationalFunctionQ, mu_gl, one, qbinom, qpow

__all__ = ["SUITES", "VerifyConfig", "VerifyReport", "run_verify", "PROPERTIES", "ALLOWED_PRIMES"]

SUITES = ("qring", "cartan", "volumes", "germs", "orbital", "lfactors", "invariants", "branching")
ALLOWED_PRIMES = (2, 3, 5, 7)
MAX_N = 4
MAX_X = 10
MAX_SEEDS = 100


@dataclass(frozen=True)
class VerifyConfig:
    suites: tuple = SUITES
    n_max: int = 3
    x_max: int = 6
    seeds: int = 10
    rng_seed: int = 0
    primes: tuple = (2, 3, 5)
    jobs: int = 1

    def validate(self):
        if isinstance(self.suites, str):
            raise ConfigError("suites must be a collection of names")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suite(s) {unknown}; choose from {list(SUITES)}")
        if not self.suites:
            raise ConfigError("no suites selected")
        if not 1 <= self.n_max <= MAX_N:
            raise ConfigError(f"n_max must lie in [1, {MAX_N}]")
        if not 1 <= self.x_max <= MAX_X:
            raise ConfigError(f"x_max must lie in [1, {MAX_X}]")
        if not 1 <= self.seeds <= MAX_SEEDS:
            raise ConfigError(f"seeds must lie in [1, {MAX_SEEDS}]")
        if not self.primes or any(p not in ALLOWED_PRIMES for p in self.primes):
            raise ConfigError(f"primes must be a nonempty subset of {list(ALLOWED_PRIMES)}")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        return self


@dataclass
class VerifyReport:
    config: dict
    suites: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(s["failed"] == 0 for s in self.suites.values())

    @property
    def exit_status(self):
        return 0 if self.ok else 1

    def to_dict(self):
        return {"config": self.config, "suites": self.suites, "status": "success" if self.ok else "failure"}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _jsonable(obj):
    if isinstance(obj, (Fraction, RationalFunctionQ, LaurentPolyQ)):
        return obj.to_text() if hasattr(obj, "to_text") else str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    if hasattr(obj, "tolist"):
        return _jsonable(obj.tolist())
    if hasattr(obj, "to_json"):
        return _jsonable(obj.to_json())
    return str(obj)


PROPERTIES = {}


def prop(suite, name):
    def deco(fn):
        PROPERTIES[name] = (suite, fn)
        return fn

    return deco


def _rng(cfg, name):
    return np.random.default_rng([cfg.rng_seed, zlib.crc32(name.encode())])


def _frac(rng, lo=-6, hi=6, den=4):
    return Fraction(int(rng.integers(lo, hi + 1)), int(rng.integers(1, den + 1)))


def _nonzero_frac(rng):
    while True:
        f = _frac(rng)
        if f:
            return f


def random_laurent(rng, lo=-3, hi=3, terms=4):
    return LaurentPolyQ({int(rng.integers(lo, hi + 1)): _frac(rng) for _ in range(terms)})


def random_rational_function(rng):
    den = random_laurent(rng, 0, 3, 3)
    while den.is_zero():
        den = random_laurent(rng, 0, 3, 3)
    return RationalFunctionQ(random_laurent(rng), den)


# qring -------------------------------------------------------------------


@prop("qring", "qbinom_symmetry_and_classical_limit")
def _p_qbinom_sym(cfg):
    from math import comb

    for n in range(9):
        for b in range(n + 1):
            yield (n, b), qbinom(n, b) == qbinom(n, n - b) and qbinom(n, b).evaluate(1) == comb(n, b)


@prop("qring", "qbinom_counts_subspaces")
def _p_qbinom_count(cfg):
    for p in (p for p in cfg.primes if p <= 5):
        for n in range(9):
            for b in range(n + 1):
                v = qbinom(n, b).evaluate(p)
                ok = v == count_subspaces_pivots(n, b, p)
                if p ** (n * b) <= ENUM_LIMIT:
                    ok = ok and v == count_subspaces_enum(n, b, p)
                yield (n, b, p), ok


@prop("qring", "ring_axioms")
def _p_ring(cfg):
    rng = _rng(cfg, "ring_axioms")
    for _ in range(10 * cfg.seeds):
        a, b, c = (random_laurent(rng) for _ in range(3))
        ok = (a * b) * c == a * (b * c) and a * (b + c) == a * b + a * c and a + b == b + a and a * b == b * a
        yield (a, b, c), ok
    for _ in range(5 * cfg.seeds):
        a, b, c = (random_rational_function(rng) for _ in range(3))
        ok = (a * b) * c == a * (b * c) and a * (b + c) == a * b + a * c and (a - a).is_zero()
        if not a.is_zero():
            ok = ok and a * a.inverse() == one
        yield (a, b, c), ok


@prop("qring", "newton_identity")
def _p_newton(cfg):
    for n in range(9):
        yield n, qring.verify_newton_identity(n)


# cartan ------------------------------------------------------------------


@prop("cartan", "cell_volume_matches_lattice_count")
def _p_oracle(cfg):
    for p in cfg.primes:
        for n in range(1, min(cfg.n_max, cartan.ORACLE_MAX_N) + 1):
            for lam in cartan.partitions_in_box(n, 0, cartan.ORACLE_MAX_SPREAD):
                try:
                    count = cartan.count_cosets_oracle(lam, p)
                except DomainError:
                    yield (lam, p), None
                    continue
                yield (lam, p), cartan.cell_volume(lam).evaluate(p) == count


def _small_partitions(cfg):
    for n in range(1, cfg.n_max + 1):
        yield from cartan.partitions_in_box(n, -2, 2)


@prop("cartan", "central_shift_invariance")
def _p_shift(cfg):
    for lam in _small_partitions(cfg):
        for c in (-3, -1, 2):
            yield (lam, c), cartan.cell_volume(lam.shifted(c)) == cartan.cell_volume(lam)


@prop("cartan", "cell_volume_is_polynomial")
def _p_poly(cfg):
    for lam in _small_partitions(cfg):
        yield lam, cartan.cell_volume(lam).is_polynomial()


@prop("cartan", "first_segment_decomposition")
def _p_segment(cfg):
    for lam in _small_partitions(cfg):
        n = len(lam)
        beta = cartan.type_of(lam)[0]
        if beta == n:
            continue
        flat = cartan.SignedPartition(lam[beta:])
        rhs = mu_gl(beta) * mu_gl(n - beta) / mu_gl(n) * cartan.cell_volume(flat)
        rhs = rhs.shift(-beta * (n - beta) * lam[0] + beta * flat.size)
        yield lam, cartan.cell_volume(lam) == rhs


# volumes -----------------------------------------------------------------


def _vol_grid(cfg):
    return product(range(cfg.n_max + 1), range(-3, 4), range(cfg.x_max + 1))


@prop("volumes", "triple_agreement")
def _p_triple(cfg):
    for n, a, x in _vol_grid(cfg):
        d = volumes.vol_direct(n, a, x)
        yield (n, a, x), d == volumes.vol_recur(n, a, x) == volumes.vol_recur2(n, a, x)


@prop("volumes", "functional_equation")
def _p_fe(cfg):
    for n, a, x in _vol_grid(cfg):
        yield (n, a, x), volumes.check_functional_equation(n, a, x)


@prop("volumes", "germ_constant_term")
def _p_const(cfg):
    for n in range(1, cfg.n_max + 1):
        for a in range(1, 4):
            yield (n, a), germs.germ_of_vol(n, a).coefficient(0, 0) == volumes.const_term_A(n, a)


@prop("volumes", "germ_linear_coefficient")
def _p_lin(cfg):
    for n in range(1, cfg.n_max + 1):
        yield n, germs.germ_of_vol(n, 0).coefficient(0, 1) == volumes.linear_coeff_B(n)


@prop("volumes", "qbinom_product_identity")
def _p_qbin_id(cfg):
    for n in range(1, 6):
        for a in range(1, 7):
            yield (n, a), volumes.check_qbinom_product_identity(n, a)


# germs -------------------------------------------------------------------


@prop("germs", "fit_uniqueness")
def _p_unique(cfg):
    for n in range(1, min(cfg.n_max, 3) + 1):
        for a in range(-2, 3):
            g = germs.germ_of_vol(n, a)
            exps = germs.vol_germ_exponents(n, a)
            sampler = lambda x, n=n, a=a: volumes.vol_recur2(n, a, x)  # noqa: E731
            wide = germs.fit_germ(sampler, (0, n + 1), x0=1, exponents=range(min(exps) - 1, max(exps) + 2))
            yield (n, a), wide.terms == g.terms


@prop("germs", "exponent_support_and_constant")
def _p_support(cfg):
    for n in range(1, cfg.n_max + 1):
        for a in range(1, 4):
            g = germs.germ_of_vol(n, a)
            ok = all(k[0] >= 1 or k == (0, 0) for k in g.terms)
            yield (n, a), ok and g.coefficient(0, 0) == volumes.const_term_A(n, a)


@prop("germs", "linear_coefficient")
def _p_glin(cfg):
    for n in range(1, cfg.n_max + 1):
        yield n, germs.germ_of_vol(n, 0).coefficient(0, 1) == volumes.linear_coeff_B(n)


@prop("germs", "round_trip")
def _p_round(cfg):
    for n in range(cfg.n_max + 1):
        for a in range(-3, 4):
            g = germs.germ_of_vol(n, a)
            for x in range(1, cfg.x_max + 1):
                yield (n, a, x), germs.eval_germ(g, x) == volumes.vol_direct(n, a, x)


@prop("germs", "functional_equation_transport")
def _p_transport(cfg):
    for n in range(1, min(cfg.n_max, 3) + 1):
        for a in range(-2, 3):
            yield (n, a), germs.germ_of_vol(n, a).shifted(-n * a).terms == germs.germ_of_vol(n, -a).terms


# orbital -----------------------------------------------------------------


def _orbital_shapes(cfg):
    return [(n, N) for n in range(1, min(cfg.n_max, orbital.ORBITAL_GERM_MAX_N) + 1) for N in range(3)]


@prop("orbital", "germ_matches_direct")
def _p_orb(cfg):
    rng = _rng(cfg, "germ_matches_direct")
    for n, N in _orbital_shapes(cfg):
        for _ in range(cfg.seeds):
            phi = orbital.random_profile(n, N, rng)
            g = orbital.orbital_germ(phi)
            lo = orbital.germ_threshold(N)
            ok = all(germs.eval_germ(g, x) == orbital.orbital_direct(phi, x) for x in range(lo, 2 * N + cfg.x_max + 1))
            yield phi, ok


@prop("orbital", "linear_term")
def _p_orb_lin(cfg):
    rng = _rng(cfg, "linear_term")
    for n, N in _orbital_shapes(cfg):
        for _ in range(cfg.seeds):
            phi = orbital.random_profile(n, N, rng)
            yield phi, orbital.check_linear_term(phi)


@prop("orbital", "linearity")
def _p_orb_linear(cfg):
    rng = _rng(cfg, "linearity")
    for n, N in _orbital_shapes(cfg):
        for _ in range(cfg.seeds):
            f, g = orbital.random_profile(n, N, rng), orbital.random_profile(n, N, rng)
            a, b = _frac(rng), _frac(rng)
            h = f.combine(g, a, b)
            x = int(rng.integers(0, cfg.x_max + 1))
            ok = orbital.orbital_direct(h, x) == orbital.orbital_direct(f, x) * a + orbital.orbital_direct(g, x) * b
            cf, cg, ch = orbital.orbital_coeffs(f), orbital.orbital_coeffs(g), orbital.orbital_coeffs(h)
            for t in set(cf) | set(cg) | set(ch):
                lhs = ch.get(t, qring.zero)
                rhs = cf.get(t, qring.zero) * a + cg.get(t, qring.zero) * b
                ok = ok and lhs == rhs
            yield {"f": f, "g": g, "a": a, "b": b, "x": x}, ok


@prop("orbital", "nonvanishing_at_phi0")
def _p_orb_nonzero(cfg):
    rng = _rng(cfg, "nonvanishing_at_phi0")
    for n, N in _orbital_shapes(cfg):
        for _ in range(cfg.seeds):
            phi = orbital.random_profile(n, N, rng, phi0=_nonzero_frac(rng))
            g = orbital.orbital_germ(phi)
            x = orbital.germ_threshold(N) + cfg.x_max
            yield phi, not g.coefficient(0, 1).is_zero() and not orbital.orbital_direct(phi, x).is_zero()


# lfactors ----------------------------------------------------------------


def _satake(rng, m, q_val=3):
    return lfactors.SatakeData(tuple(_nonzero_frac(rng) for _ in range(m)), q_val)


def _square_q(rng):
    den = int(rng.integers(1, 3)) if rng.random() < 0.3 else 1
    return Fraction(int(rng.integers(den + 1, 6)) ** 2, den ** 2)


@prop("lfactors", "tate_identity")
def _p_tate(cfg):
    rng = _rng(cfg, "tate_identity")
    for _ in range(2 * cfg.seeds):
        k = int(rng.integers(1, 4))
        t = lfactors.UnramifiedTorusData(
            tuple((int(rng.integers(1, 4)), int(rng.choice([1, -1]))) for _ in range(k))
        )
        direct, closed = lfactors.tate_series(t, 8)
        yield t.factors, direct == closed


@prop("lfactors", "sign_twist_symmetry")
def _p_twist(cfg):
    rng = _rng(cfg, "sign_twist_symmetry")
    for _ in range(cfg.seeds):
        s = _satake(rng, int(rng.integers(1, 4)))
        neg = lfactors.SatakeData(tuple(-a for a in s.params), s.q_val)
        yield s.params, lfactors.std_lfactor(neg, 1, 6) == lfactors.std_lfactor(s, -1, 6)


@prop("lfactors", "ext_square_shift")
def _p_shift_ext(cfg):
    rng = _rng(cfg, "ext_square_shift")
    for _ in range(2 * cfg.seeds):
        s = _satake(rng, int(rng.integers(2, 5)), int(rng.choice([2, 3, 5, 7])))
        for a in range(-2, 3):
            yield (s.params, s.q_val, a), lfactors.check_ext_sq_shift(s, a, 6)


@prop("lfactors", "bump_friedberg_rank_one")
def _p_bf(cfg):
    rng = _rng(cfg, "bump_friedberg_rank_one")
    for _ in range(cfg.seeds):
        s = _satake(rng, 2, _square_q(rng))
        e1, e0 = (int(rng.choice([1, -1])) for _ in range(2))
        D = int(rng.integers(4, 7))
        yield (s.params, s.q_val, e1, e0, D), lfactors.bf_unramified_check(s, e1, e0, D)


@prop("lfactors", "distinct_pairs_square_ordered")
def _p_conv(cfg):
    rng = _rng(cfg, "distinct_pairs_square_ordered")
    for _ in range(cfg.seeds):
        s = _satake(rng, int(rng.integers(2, 5)))
        e = int(rng.choice([1, -1]))
        ordered = lfactors.ext_sq_lfactor(s, e, 6, "pairs-ordered")
        yield (s.params, e), lfactors.ext_sq_lfactor(s, e, 6, "pairs-distinct") == ordered * ordered


# invariants --------------------------------------------------------------


def _invariant_cases(cfg, name):
    rng = _rng(cfg, name)
    for n in range(1, min(cfg.n_max, 2) + 1):
        for p in cfg.primes:
            for _ in range(cfg.seeds):
                gamma, w = invariants.random_regular_pair(n, rng)
                h1 = invariants.random_block_pair(n, rng, unit=rng.random() < 0.5, p=p)
                h2 = invariants.random_block_pair(n, rng, unit=rng.random() < 0.5, p=p)
                signs = ",".join(rng.choice(["1", "q"], size=3))
                yield n, p, gamma, w, h1, h2, signs


def _inv_case(n, p, gamma, w, h1, h2, signs):
    return {"n": n, "p": p, "gamma": gamma, "w": w, "h1": h1, "h2": h2, "signs": signs}


@prop("invariants", "car_lin_orbit_invariance")
def _p_carlin(cfg):
    for case in _invariant_cases(cfg, "car_lin_orbit_invariance"):
        n, p, gamma, w, h1, h2, _ = case
        g2, _w2 = invariants.act_pair(gamma, w, h1, h2)
        yield _inv_case(*case), invariants.car_lin(invariants.project_sym(g2, p)) == invariants.car_lin(
            invariants.project_sym(gamma, p)
        )


@prop("invariants", "transfer_factor_cocycle")
def _p_cocycle(cfg):
    for case in _invariant_cases(cfg, "transfer_factor_cocycle"):
        n, p, gamma, w, h1, h2, signs = case
        yield _inv_case(*case), invariants.check_equivariance(gamma, w, h1, h2, signs, p)


@prop("invariants", "transfer_factor_is_sign")
def _p_sign(cfg):
    for case in _invariant_cases(cfg, "transfer_factor_is_sign"):
        n, p, gamma, w, _, _, signs = case
        yield _inv_case(*case), invariants.transfer_factor(gamma, w, signs, p) in (1, -1)


@prop("invariants", "projection_equivariance")
def _p_proj(cfg):
    from sympy import Matrix

    for case in _invariant_cases(cfg, "projection_equivariance"):
        n, p, gamma, _, h1, _, _ = case
        g, h = h1
        lhs = invariants.project_sym(Matrix.diag(g, h) * gamma, p)
        rhs = invariants.project_sym(gamma, p).act(g, h)
        yield _inv_case(*case), (lhs.A, lhs.B, lhs.C, lhs.D) == (rhs.A, rhs.B, rhs.C, rhs.D)


# branching ---------------------------------------------------------------


def _branch_weights(cfg):
    for n in range(1, min(cfg.n_max, 3) + 1):
        yield from branching.dominant_weights(2 * n, -3, 3)


@prop("branching", "multiplicity_one_and_self_associate")
def _p_branch(cfg):
    for lam in _branch_weights(cfg):
        m = branching.branching_multiplicity(lam)
        yield lam, m in (0, 1) and m == int(branching.self_associate(lam))


@prop("branching", "oracle_shift_consistency")
def _p_branch_shift(cfg):
    for lam in _branch_weights(cfg):
        m = max(0, -lam[-1])
        if m + 1 + max(lam) > branching.BRANCH_MAX_ENTRY * 2:
            continue
        yield lam, branching.multiplicity_lr_oracle(lam) == branching.multiplicity_lr_oracle(lam, m + 1)


@prop("branching", "nonnegative_weights")
def _p_branch_nonneg(cfg):
    for lam in _branch_weights(cfg):
        if lam[-1] >= 0:
            yield lam, branching.branching_multiplicity(lam) == int(not any(lam))


def _random_partition(rng, size, max_len=4):
    parts = []
    while size and len(parts) < max_len:
        v = int(rng.integers(1, size + 1))
        parts.append(v)
        size -= v
    if size:
        parts[-1] += size
    return branching.PartitionNN(sorted(parts, reverse=True))


@prop("branching", "lr_symmetry")
def _p_lr_sym(cfg):
    rng = _rng(cfg, "lr_symmetry")
    for _ in range(10 * cfg.seeds):
        a, b = int(rng.integers(0, 6)), int(rng.integers(0, 6))
        mu, nu, lam = _random_partition(rng, a), _random_partition(rng, b), _random_partition(rng, a + b)
        yield (lam, mu, nu), branching.lr_coeff(lam, mu, nu) == branching.lr_coeff(lam, nu, mu)


# orchestration -----------------------------------------------------------


def _run_property(name, cfg):
    _, fn = PROPERTIES[name]
    passed = failed = skipped = 0
    first = None
    gen = fn(cfg)
    while True:
        try:
            case, ok = next(gen)
        except StopIteration:
            break
        except Exception as exc:  # a crash inside a property counts as a failure
            failed += 1
            if first is None:
                first = {"property": name, "input": None, "error": f"{type(exc).__name__}: {exc}"}
            break
        if ok is None:
            skipped += 1
        elif ok:
            passed += 1
        else:
            failed += 1
            if first is None:
                first = {"property": name, "input": _jsonable(case)}
    return {"passed": passed, "failed": failed, "skipped": skipped, "counterexample": first}


def run_verify(cfg=None):
    """Run every property of the selected suites; deterministic given ``rng_seed``."""
    cfg = (cfg or VerifyConfig()).validate()
    names = [n for n, (s, _) in PROPERTIES.items() if s in cfg.suites]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = dict(zip(names, pool.map(_run_property, names, [cfg] * len(names))))
    else:
        results = {n: _run_property(n, cfg) for n in names}
    suites = {}
    for suite in SUITES:
        if suite not in cfg.suites:
            continue
        entry = {"passed": 0, "failed": 0, "skipped": 0, "counterexamples": [], "properties": {}}
        for n in names:
            if PROPERTIES[n][0] != suite:
                continue
            r = results[n]
            entry["properties"][n] = {k: r[k] for k in ("passed", "failed", "skipped")}
            for k in ("passed", "failed", "skipped"):
                entry[k] += r[k]
            if r["counterexample"] is not None:
                entry["counterexamples"].append(r["counterexample"])
        suites[suite] = entry
    cdict = asdict(cfg)
    cdict["suites"] = [s for s in SUITES if s in cfg.suites]
    cdict["primes"] = list(cfg.primes)
    cdict.pop("jobs")
    return VerifyReport(cdict, suites)
