# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled trial-loop kernel.

Bit-for-bit twin of the pure-Python path (rng.SplitMix64 + policies): same
SplitMix64 update, same masked-rejection pair sampling, same round-major /
attempt-minor Bernoulli draw order, same opportunistic cache semantics. The
cache is keyed by pair index t = hi*(hi-1)/2 + lo, which is exactly the
unranking used by policies.sample_pair, so cache traffic matches the
reference implementation request for request.

Any semantic change in policies.py or rng.py must be mirrored here; the
test suite enforces equality of whole outcome sequences.
"""

from libc.stdint cimport uint64_t


cdef uint64_t _GOLDEN = 0x9E3779B97F4A7C15u
cdef double _INV53 = 1.0 / 9007199254740992.0  # 2**-53


cdef inline uint64_t _next_u64(uint64_t* state) noexcept nogil:
    cdef uint64_t z
    state[0] = state[0] + _GOLDEN
    z = state[0]
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9u
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBu
    return z ^ (z >> 31)


cdef inline uint64_t _next_below(uint64_t* state, uint64_t m) noexcept nogil:
    # unbiased masked rejection, m >= 1; mask = 2^bitlen(m-1) - 1
    cdef uint64_t v = m - 1
    cdef uint64_t x
    v |= v >> 1
    v |= v >> 2
    v |= v >> 4
    v |= v >> 8
    v |= v >> 16
    v |= v >> 32
    while True:
        x = _next_u64(state) & v
        if x < m:
            return x


def simulate_point(double p_eff, long k, long round_budget, long capacity,
                   long trials, long n_nodes, state, bint with_cache):
    """Run the full trial loop for one sweep point.

    Returns four parallel lists (served, attempts, rounds, cache_hit) of
    length ``trials`` plus the (hits, deposits) cache counters.
    """
    cdef uint64_t rng_state = state
    cdef uint64_t n_pairs = <uint64_t> n_nodes * (n_nodes - 1) // 2
    cdef dict spares = {}
    cdef list served = []
    cdef list attempts = []
    cdef list rounds_used = []
    cdef list cache_hit = []
    cdef long t, r, a, successes, stored
    cdef long hits = 0, deposits = 0
    cdef uint64_t pair_idx
    cdef bint hit, done

    for t in range(trials):
        pair_idx = _next_below(&rng_state, n_pairs)

        hit = False
        if with_cache and capacity > 0:
            stored = spares.get(pair_idx, 0)
            if stored > 0:
                if stored == 1:
                    del spares[pair_idx]
                else:
                    spares[pair_idx] = stored - 1
                hits += 1
                hit = True
        if hit:
            served.append(True)
            attempts.append(0)
            rounds_used.append(0)
            cache_hit.append(True)
            continue

        done = False
        for r in range(1, round_budget + 1):
            successes = 0
            for a in range(k):
                if (_next_u64(&rng_state) >> 11) * _INV53 < p_eff:
                    successes += 1
            if successes > 0:
                if with_cache and capacity > 0 and successes >= 2:
                    stored = spares.get(pair_idx, 0)
                    if stored < capacity:
                        spares[pair_idx] = stored + 1
                        deposits += 1
                served.append(True)
                attempts.append(r * k)
                rounds_used.append(r)
                cache_hit.append(False)
                done = True
                break
        if not done:
            served.append(False)
            attempts.append(round_budget * k)
            rounds_used.append(round_budget)
            cache_hit.append(False)

    return served, attempts, rounds_used, cache_hit, hits, deposits
