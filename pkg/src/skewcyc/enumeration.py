"""Complete enumeration of skew morphisms of Z_n.

Strategy, for each n (recursively over smaller orders):

1. Automorphisms are the maps a -> s*a for units s.

2. Proper coset-preserving morphisms have quotient alpha_s on Z_m with
   m = ord(f), s != 1.  Writing r = mult_order(s, m), such an f has
   kernel of order n/r (so r | n) and its generator orbit lies inside
   the coset 1 + K (so m <= n/r).  The search runs over the remaining
   degrees of freedom: the kernel action u (an automorphism of K) and
   v = f(1).  The orbit of 1 then obeys the affine recurrence
   o_{e+1} = u*(o_e - 1) + v, and f itself is recovered as the partial
   sums f(k) = sum_{i<k} o_{s^i mod m}; every candidate is accepted
   only after full verification plus order, orbit and quotient checks.

3. Morphisms that are not coset-preserving have a proper quotient rho
   on Z_m for some 2 <= m < n with m | n*phi(n) and gcd(m, n) > 1.
   `lift` reconstructs all of them from rho: the generator orbit
   interleaves p = m/|ker rho| threads advanced by a coset-preserving
   stepper psi of order m/p (the p-th power of the candidate), with
   thread seeds constrained to prescribed kernel cosets; the partial
   sums run over the exponent list L_i = rho^i(1).  Only orbit
   positions in {L_i} are needed, which prunes most free seeds.

Candidate filtering before full verification exploits the period-r
structure of the partial sums: with T the sum over one period, the
candidate is a bijection iff gcd(T, n) equals the kernel index, and
the whole orbit of 1 can be walked with O(1) evaluations.

Everything is cross-checked against `brute_force` (filtering all
permutations) for small n in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from math import gcd

try:  # batching the lift seed search is optional; results are identical
    import numpy as _np
except ImportError:  # pragma: no cover
    _np = None

from .cyclic_arith import euler_phi, mult_order, units
from .quotient import quotient_of
from .skew_core import (
    SkewMorphism,
    SkewMorphismError,
    _require,
    automorphism_of,
    equivalence_classes,
    power,
    power_table,
    verify,
)

BRUTE_FORCE_MAX_N = 10


class DuplicateFoundError(AssertionError):
    """Two search branches produced the same morphism: an implementation bug."""


@dataclass(frozen=True)
class OrbitTemplate:
    """A candidate generator orbit: p interleaved threads under a stepper psi.

    Position e of the orbit carries psi^(e//p) applied to the seed of
    thread e % p.  Thread 0 is seeded by the generator 1; the seeds of
    the other *needed* threads are the free choices x_i (1-based slot
    i = thread + 1 as in the orbit layout), each constrained to the
    kernel coset prescribed by the power function of the quotient.
    """

    m: int
    p: int
    psi: SkewMorphism
    x: tuple[tuple[int, int], ...]  # (slot i in [2, p], seed residue)
    needed_positions: frozenset[int]

    def __post_init__(self) -> None:
        _require(self.psi.coset_preserving, "stepper must be coset-preserving")
        _require(self.psi.order * self.p == self.m, "stepper order must be m/p")
        _require(
            all(2 <= i <= self.p for i, _ in self.x),
            "free seeds sit in slots 2..p",
        )
        _require(
            all(0 <= e < self.m for e in self.needed_positions),
            "needed positions are orbit exponents",
        )

    def orbit_value(self, e: int) -> int:
        """Value at orbit position e (test/debug path; the search caches rows)."""
        thread, q = e % self.p, e // self.p
        seed = 1 if thread == 0 else dict(self.x)[thread + 1]
        return power(self.psi, q)[seed]


@dataclass(frozen=True)
class CensusRecord:
    """All skew morphisms of Z_n, sorted, with equivalence-class ids."""

    n: int
    morphisms: tuple[SkewMorphism, ...]
    class_ids: tuple[int, ...]  # aligned with morphisms; -1 for automorphisms

    def __post_init__(self) -> None:
        imgs = [phi.images for phi in self.morphisms]
        _require(imgs == sorted(imgs), "census must be sorted by image sequence")
        _require(len(set(imgs)) == len(imgs), "census must not contain duplicates")
        _require(len(self.class_ids) == len(self.morphisms), "class ids misaligned")
        for phi, cid in zip(self.morphisms, self.class_ids):
            _require((cid == -1) == phi.automorphism, "class ids mark proper only")

    @property
    def total(self) -> int:
        return len(self.morphisms)

    @property
    def automorphism_count(self) -> int:
        return sum(1 for phi in self.morphisms if phi.automorphism)

    @property
    def proper_count(self) -> int:
        return self.total - self.automorphism_count

    @property
    def class_count(self) -> int:
        return len({cid for cid in self.class_ids if cid != -1})

    def proper(self) -> list[SkewMorphism]:
        return [phi for phi in self.morphisms if phi.proper]


def automorphisms(n: int) -> list[SkewMorphism]:
    """All automorphisms of Z_n, sorted by image sequence."""
    if n < 1:
        raise ValueError(f"expected n >= 1, got {n}")
    if n == 1:
        return [verify(1, (0,))]
    return sorted((automorphism_of(n, s) for s in units(n)), key=lambda p: p.images)


def _candidate_orders(n: int) -> list[int]:
    """Possible orders of proper skew morphisms of Z_n."""
    nphi = n * euler_phi(n)
    return [m for m in range(2, n) if nphi % m == 0 and gcd(m, n) > 1]


def _cp_base_search(n: int, m: int, s: int) -> list[SkewMorphism]:
    """All coset-preserving morphisms of Z_n with order m and quotient alpha_s."""
    r = mult_order(s, m)
    if r < 2 or n % r != 0 or m * r > n:
        return []
    exps = [pow(s, i, m) for i in range(r)]  # one period of partial-sum exponents
    kq = n // r  # kernel order
    seen: set[tuple[int, ...]] = set()
    out: list[SkewMorphism] = []
    for u in units(kq):
        for w in range(kq):
            v = (1 + w * r) % n
            # orbit of 1 under x -> u*(x-1) + v must have period exactly m
            orb = [1]
            x = 1
            period = 0
            for step in range(1, m + 1):
                x = (u * (x - 1) + v) % n
                if x == 1:
                    period = step
                    break
                if step < m:
                    orb.append(x)
            if period != m:
                continue
            sk = _realize_candidate(n, m, r, [orb[e] for e in exps], orb)
            if sk is None or sk.images in seen:
                continue
            if quotient_of(sk).images_bar != tuple(s * k % m for k in range(m)):
                continue
            seen.add(sk.images)
            out.append(sk)
    return out


def _realize_candidate(
    n: int, m: int, r: int, period_terms: list[int], orb: list[int]
) -> SkewMorphism | None:
    """Build f from one period of orbit-value terms and check it realises orb.

    period_terms[i] is the orbit value consumed at step i; the full sum
    sequence repeats with period r, so f(j + k*r) = f(j) + k*T with T
    the one-period total.  Bijectivity is exactly gcd(T, n) = r here
    (the coset pattern of the prefix sums is a bijection by
    construction), and the orbit of 1 must replay `orb` and first
    return to 1 at step m.  Survivors get the full verification.
    """
    prefix = [0]
    acc = 0
    for t in period_terms:
        acc += t
        prefix.append(acc)
    total = acc % n
    if gcd(total, n) != r:
        return None
    prefix = [q % n for q in prefix[:r]]

    x = 1
    for step in range(1, m + 1):
        x = (prefix[x % r] + (x // r) * total) % n
        if step < m:
            if x != orb[step]:
                return None
        elif x != 1:
            return None

    images = tuple((prefix[k % r] + (k // r) * total) % n for k in range(n))
    try:
        sk = verify(n, images)
    except SkewMorphismError:
        return None
    if sk.order != m:
        return None
    return sk


def enumerate_coset_preserving(n: int, *, executor=None) -> list[SkewMorphism]:
    """All coset-preserving skew morphisms of Z_n (automorphisms included).

    The (order, quotient) search tasks are independent; with an
    executor they fan out to worker processes and are merged back in
    task order, so the result does not depend on scheduling.
    """
    if n < 2:
        raise ValueError(f"expected n >= 2, got {n}")
    found: dict[tuple[int, ...], SkewMorphism] = {}
    for phi in automorphisms(n):
        found[phi.images] = phi
    tasks = cp_search_tasks(n)
    if executor is None:
        batches = (_cp_base_search(n, m, s) for m, s in tasks)
    else:
        batches = executor.map(_cp_task, [(n, m, s) for m, s in tasks])
    for (m, s), batch in zip(tasks, batches):
        for sk in batch:
            if sk.images in found:
                raise DuplicateFoundError(
                    f"coset-preserving search repeated {sk.canonical_str()} at (m={m}, s={s})"
                )
            found[sk.images] = sk
    result = sorted(found.values(), key=lambda p: p.images)
    _require(all(sk.coset_preserving for sk in result), "base search must yield cp maps")
    return result


def _cp_task(args: tuple[int, int, int]) -> list[SkewMorphism]:
    return _cp_base_search(*args)


def _lift_task(args: tuple[SkewMorphism, int, list[SkewMorphism]]) -> list[SkewMorphism]:
    rho, n, psis = args
    return _lift_with_psis(rho, n, psis)


def cp_search_tasks(n: int) -> list[tuple[int, int]]:
    """The (order, quotient-automorphism) pairs the base search must cover."""
    tasks = []
    for m in _candidate_orders(n):
        for s in units(m):
            if s == 1:
                continue
            r = mult_order(s, m)
            if n % r == 0 and m * r <= n:
                tasks.append((m, s))
    return tasks


def psi_candidates(rho: SkewMorphism, n: int, cp_list: list[SkewMorphism]) -> list[SkewMorphism]:
    """Steppers usable when lifting rho to Z_n.

    The true stepper is the p-th power of the lifted morphism, which is
    coset-preserving of order m/p and fixes every coset of the kernel
    of the lift (its own kernel contains that kernel); requiring the
    coset-fixing property for all residues is therefore sound and cuts
    the search considerably.
    """
    m, big_r = rho.n, rho.order
    p = m // rho.kernel_order
    ordpsi = m // p
    out = []
    for psi in cp_list:
        if psi.order != ordpsi:
            continue
        if all(psi.images[x] % big_r == x % big_r for x in range(n)):
            out.append(psi)
    return out


def lift(rho: SkewMorphism, n: int, cp_list: list[SkewMorphism]) -> list[SkewMorphism]:
    """All non-coset-preserving f of Z_n whose quotient (generator 1) is rho."""
    if not rho.proper:
        raise ValueError("lift requires a proper quotient")
    return _lift_with_psis(rho, n, psi_candidates(rho, n, cp_list))


def _lift_with_psis(
    rho: SkewMorphism, n: int, psis: list[SkewMorphism]
) -> list[SkewMorphism]:
    m, big_r = rho.n, rho.order
    if n % big_r != 0:
        return []
    kord = n // big_r  # kernel order of any lift
    p = m // rho.kernel_order  # periodicity of any lift
    if m > p * kord or not psis:
        return []

    # generator orbit of rho: partial-sum exponents of the lift
    orbit_l = [1]
    for _ in range(big_r - 1):
        orbit_l.append(rho.images[orbit_l[-1]])
    _require(len(set(orbit_l)) == big_r, "quotient orbit must have ord(rho) elements")

    # coset pattern of the lift's prefix sums is forced by rho alone;
    # it must be a bijection of Z_R wrapping to 0
    acc = 0
    sig = []
    for e in orbit_l:
        sig.append(acc % big_r)
        acc += rho.pi[e]
    if acc % big_r != 0 or sorted(sig) != list(range(big_r)):
        return []

    needed = frozenset(orbit_l)
    threads = sorted({e % p for e in orbit_l})
    free = [j for j in threads if j != 0]
    # seed of thread j sits in the kernel coset given by pi_rho at j
    pools = [[(rho.pi[j] + t * big_r) % n for t in range(kord)] for j in free]

    results: dict[tuple[int, ...], SkewMorphism] = {}
    for psi in psis:
        qmax = max(e // p for e in orbit_l)
        rows = power_table(psi.images, qmax + 1)
        if _np is not None and kord ** len(free) >= _BATCH_MIN:
            combos = _batched_seed_survivors(
                n, m, big_r, p, psi, free, pools, rows, orbit_l
            )
        else:
            combos = product(*pools)
        for combo in combos:
            seeds = dict(zip(free, combo))
            seeds[0] = 1
            value_at = {e: rows[e // p][seeds[e % p]] for e in needed}
            sk = _realize_lift(n, m, big_r, p, psi, seeds, value_at, orbit_l)
            if sk is None:
                continue
            if quotient_of(sk).images_bar != rho.images:
                continue
            if power(sk, p) != psi.images:
                continue
            _require(not sk.coset_preserving, "lift produced a coset-preserving map")
            template = OrbitTemplate(
                m=m,
                p=p,
                psi=psi,
                x=tuple(sorted((j + 1, seeds[j]) for j in free)),
                needed_positions=needed,
            )
            _require(
                all(template.orbit_value(e) == value_at[e] for e in needed),
                "orbit template disagrees with realized orbit",
            )
            if sk.images in results:
                raise DuplicateFoundError(
                    f"lift of {rho.canonical_str()} repeated {sk.canonical_str()}"
                )
            results[sk.images] = sk
    return sorted(results.values(), key=lambda q: q.images)


_BATCH_MIN = 64  # below this many seed combinations the plain loop is faster


def _batched_seed_survivors(
    n: int,
    m: int,
    big_r: int,
    p: int,
    psi: SkewMorphism,
    free: list[int],
    pools: list[list[int]],
    rows: list[tuple[int, ...]],
    orbit_l: list[int],
):
    """Vectorised pre-filter over all seed combinations for one stepper.

    Applies exactly the checks of `_realize_lift` (one-period total with
    the right gcd, orbit walk with first return at m, seed replay, psi
    thread relation) to every combination at once and yields the few
    survivors; each survivor is then rebuilt and fully verified by the
    scalar path, so this stage can only discard, never admit.
    """
    nfree = len(free)
    kord = len(pools[0])
    total_combos = kord**nfree
    rows_np = _np.asarray(rows, dtype=_np.int64)
    pools_np = _np.asarray(pools, dtype=_np.int64)
    psi_np = _np.asarray(psi.images, dtype=_np.int64)
    pos_of = {j: idx for idx, j in enumerate(free)}
    step_q = [e // p for e in orbit_l]
    step_thread = [e % p for e in orbit_l]
    valid_total = _np.fromiter(
        (gcd(t, n) == big_r for t in range(n)), dtype=bool, count=n
    )
    chunk = max(256, min(1 << 16, (1 << 22) // (big_r + 1)))

    for start in range(0, total_combos, chunk):
        count = min(chunk, total_combos - start)
        tmp = _np.arange(start, start + count, dtype=_np.int64)
        digits = _np.empty((count, nfree), dtype=_np.int64)
        for pos in range(nfree - 1, -1, -1):
            digits[:, pos] = tmp % kord
            tmp //= kord
        seeds_val = pools_np[_np.arange(nfree)[None, :], digits]

        terms = _np.empty((count, big_r), dtype=_np.int64)
        for i in range(big_r):
            j = step_thread[i]
            if j == 0:
                terms[:, i] = rows_np[step_q[i]][1]
            else:
                terms[:, i] = rows_np[step_q[i]][seeds_val[:, pos_of[j]]]
        prefix = _np.zeros((count, big_r + 1), dtype=_np.int64)
        _np.cumsum(terms, axis=1, out=prefix[:, 1:])
        prefix %= n

        sel = _np.nonzero(valid_total[prefix[:, big_r]])[0]
        if not len(sel):
            continue
        pre = prefix[sel, :big_r]
        tot = prefix[sel, big_r]
        sv = seeds_val[sel]
        nsel = len(sel)
        rowsel = _np.arange(nsel)
        alive = _np.ones(nsel, dtype=bool)
        o = _np.ones(nsel, dtype=_np.int64)
        hist: list = [None] * p
        hist[0] = o
        completed = False
        for t in range(1, m + 1):
            o = (pre[rowsel, o % big_r] + (o // big_r) * tot) % n
            if t == m:
                alive &= o == 1
                completed = True
                break
            alive &= o != 1
            if t < p:
                if t in pos_of:
                    alive &= o == sv[:, pos_of[t]]
            else:
                alive &= o == psi_np[hist[t % p]]
            hist[t % p] = o
            if not alive.any():
                break
        if not completed:
            continue
        for row in _np.nonzero(alive)[0]:
            yield tuple(int(v) for v in sv[row])


def _realize_lift(
    n: int,
    m: int,
    big_r: int,
    p: int,
    psi: SkewMorphism,
    seeds: dict[int, int],
    value_at: dict[int, int],
    orbit_l: list[int],
) -> SkewMorphism | None:
    """Prefix sums, bijectivity, and the orbit walk for one seed choice."""
    prefix = [0]
    acc = 0
    for e in orbit_l:
        acc += value_at[e]
        prefix.append(acc)
    total = acc % n
    if gcd(total, n) != big_r:
        return None
    prefix = [q % n for q in prefix[:big_r]]

    # orbit of 1 must return first at m, replay the seeds, and follow psi
    orb = [1]
    x = 1
    for step in range(1, m + 1):
        x = (prefix[x % big_r] + (x // big_r) * total) % n
        if step == m:
            if x != 1:
                return None
        elif x == 1:
            return None
        else:
            orb.append(x)
    for j, seed in seeds.items():
        if orb[j] != seed:
            return None
    pimg = psi.images
    for t in range(m - p):
        if orb[t + p] != pimg[orb[t]]:
            return None

    images = tuple((prefix[k % big_r] + (k // big_r) * total) % n for k in range(n))
    try:
        sk = verify(n, images)
    except SkewMorphismError:
        return None
    if sk.order != m:
        return None
    return sk


def lift_sources(n: int, store) -> list[tuple[int, SkewMorphism]]:
    """(order, rho) pairs whose lifts can contribute to the census of Z_n."""
    out = []
    for m in _candidate_orders(n):
        record = census(m, store)
        for rho in record.proper():
            if n % rho.order == 0:
                out.append((m, rho))
    return out


def census(n: int, store, *, executor=None) -> CensusRecord:
    """All skew morphisms of Z_n, computing and persisting smaller orders on demand.

    With an executor, the independent base-search and lift tasks run on
    worker processes; merging happens in task order and the final record
    is sorted, so output is identical to the serial path.
    """
    if n < 2:
        raise ValueError(f"expected n >= 2, got {n}")
    if store.has(n):
        return store.load(n)

    cp = enumerate_coset_preserving(n, executor=executor)
    collected: dict[tuple[int, ...], SkewMorphism] = {sk.images: sk for sk in cp}
    _require(
        sum(1 for sk in cp if sk.automorphism) == len(automorphisms(n)),
        "coset-preserving list must contain exactly the automorphisms",
    )
    tasks = [
        (rho, n, psi_candidates(rho, n, cp)) for _m, rho in lift_sources(n, store)
    ]
    if executor is None:
        batches = map(_lift_task, tasks)
    else:
        batches = executor.map(_lift_task, tasks)
    for batch in batches:
        for sk in batch:
            if sk.images in collected:
                raise DuplicateFoundError(
                    f"census of Z_{n} saw {sk.canonical_str()} twice"
                )
            collected[sk.images] = sk

    record = _finalize_census(n, list(collected.values()))
    store.save(record)
    return record


def census_range(store, max_n: int, *, jobs: int = 1, progress=None) -> None:
    """Compute and persist censuses for every order 2..max_n in sequence."""
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as executor:
            _census_sweep(store, max_n, executor, progress)
    else:
        _census_sweep(store, max_n, None, progress)


def _census_sweep(store, max_n: int, executor, progress) -> None:
    import time

    for n in range(2, max_n + 1):
        start = time.perf_counter()
        fresh = not store.has(n)
        record = census(n, store, executor=executor)
        if progress is not None:
            progress(record, fresh, time.perf_counter() - start)


def _finalize_census(n: int, morphisms: list[SkewMorphism]) -> CensusRecord:
    morphisms = sorted(morphisms, key=lambda p: p.images)
    classes = equivalence_classes([phi for phi in morphisms if phi.proper])
    id_of: dict[tuple[int, ...], int] = {}
    for cid, cls in enumerate(classes):
        for member in cls.members:
            id_of[member.images] = cid
    class_ids = tuple(id_of.get(phi.images, -1) for phi in morphisms)
    return CensusRecord(n=n, morphisms=tuple(morphisms), class_ids=class_ids)


def brute_force(n: int) -> list[SkewMorphism]:
    """Filter all permutations of Z_n fixing 0 through verify (oracle; n <= 10)."""
    if n < 1:
        raise ValueError(f"expected n >= 1, got {n}")
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force is capped at n = {BRUTE_FORCE_MAX_N}")
    if n == 1:
        return [verify(1, (0,))]
    out = []
    for perm in permutations(range(1, n)):
        try:
            out.append(verify(n, (0,) + perm))
        except SkewMorphismError:
            continue
    return sorted(out, key=lambda p: p.images)
