#pragma once

// Test-side oracles: straight-line evaluations of the definitions, kept
// independent of the library's counting identities and incremental updates.

#include <cstdint>
#include <optional>
#include <vector>

#include "pgcaps/cap.hpp"
#include "pgcaps/nibble.hpp"
#include "pgcaps/pg.hpp"

namespace oracles {

using namespace pgcaps;

// Coverage from scratch: x is covered iff it is a cap point or some cap
// pair is collinear with it.
inline Bitset coverage_by_definition(const ProjectiveSpace& sp,
                                     const std::vector<PointId>& cap) {
    Bitset out(sp.num_points());
    for (PointId v : cap) out.set(v);
    for (PointId x = 0; x < sp.num_points(); ++x) {
        if (out.test(x)) continue;
        bool hit = false;
        for (std::size_t i = 0; i < cap.size() && !hit; ++i)
            for (std::size_t j = i + 1; j < cap.size() && !hit; ++j)
                if (sp.collinear(x, cap[i], cap[j])) hit = true;
        if (hit) out.set(x);
    }
    return out;
}

// |A_i(v)| by the set comprehension: pool points x != v such that some cap
// point u is collinear with x and v.
inline std::uint64_t cap_collinear_by_definition(const NibbleState& st, PointId v) {
    std::uint64_t count = 0;
    const auto& sp = st.space();
    for (auto x = st.pool().find_first(); x != Bitset::npos;
         x = st.pool().find_next(x)) {
        if (x == v) continue;
        for (PointId u : st.cap().points()) {
            if (u == x || u == v) continue;
            if (sp.collinear(static_cast<PointId>(x), u, v)) {
                ++count;
                break;
            }
        }
    }
    return count;
}

// |T_i(v)| by the set comprehension: unordered pool pairs collinear with v.
inline std::uint64_t pool_pairs_by_definition(const NibbleState& st, PointId v) {
    std::vector<PointId> pool;
    for (auto x = st.pool().find_first(); x != Bitset::npos;
         x = st.pool().find_next(x))
        if (x != v) pool.push_back(static_cast<PointId>(x));
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = i + 1; j < pool.size(); ++j)
            if (st.space().collinear(v, pool[i], pool[j])) ++count;
    return count;
}

// Minimum complete cap by plain subset enumeration, independent of the
// library's depth-first oracle.
inline std::optional<std::uint32_t> min_complete_cap_by_enumeration(
    const ProjectiveSpace& sp) {
    const auto n = static_cast<std::uint32_t>(sp.num_points());
    for (std::uint32_t s = 1; s <= n; ++s) {
        std::vector<PointId> idx(s);
        for (std::uint32_t i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            if (is_cap(sp, idx) && coverage_by_definition(sp, idx).all()) return s;
            std::int32_t i = static_cast<std::int32_t>(s) - 1;
            while (i >= 0 && idx[std::size_t(i)] == n - s + std::uint32_t(i)) --i;
            if (i < 0) break;
            ++idx[std::size_t(i)];
            for (std::uint32_t j = std::uint32_t(i) + 1; j < s; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }
    return std::nullopt;
}

// Legal random mid-run states: a random cap, then random subsets of the
// points the cap leaves untouched.  Satisfies every structural invariant of
// the construction (pool within remaining set, remaining set clear of
// bisecants).
inline NibbleState random_frozen_state(const ProjectiveSpace& sp,
                                       NibbleParams params, std::uint64_t seed,
                                       std::uint32_t cap_size, double keep_remaining,
                                       double keep_pool) {
    Rng rng(splitmix64(seed ^ 0xF0F0F0F0ull));
    Cap cap(sp);
    CoverageMap cov(sp);
    for (std::uint32_t tries = 0; cap.size() < cap_size && tries < 10000; ++tries) {
        const auto v = static_cast<PointId>(rng.below(sp.num_points()));
        if (!cov.covered(v)) cap.add(v, cov);
    }
    Bitset remaining = ~cov.bits();
    for (auto v = remaining.find_first(); v != Bitset::npos; v = remaining.find_next(v))
        if (rng.uniform() > keep_remaining) remaining.reset(v);
    Bitset pool = remaining;
    for (auto v = pool.find_first(); v != Bitset::npos; v = pool.find_next(v))
        if (rng.uniform() > keep_pool) pool.reset(v);
    return NibbleState::from_parts(sp, params, 1, cap.points(), remaining, pool);
}

}  // namespace oracles
