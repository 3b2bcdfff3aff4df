#include "pgcaps/cap.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pgcaps {

void Cap::add(PointId v, CoverageMap& cov, bool checked) {
    if (v >= space_->num_points()) throw std::out_of_range("point id out of range");
    if (member_.test(v)) throw std::invalid_argument("point already in cap");
    if (checked && cov.covered(v))
        throw CapViolation("point lies on a bisecant of the cap", v);
    for (PointId a : points_) {
        space_->line_into(v, a, line_buf_);
        for (PointId x : line_buf_) cov.mark(x);
    }
    cov.mark(v);
    points_.push_back(v);
    member_.set(v);
}

std::optional<Triple> find_collinear_triple(const ProjectiveSpace& sp,
                                            std::span<const PointId> pts) {
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (pts[i] == pts[j]) throw std::invalid_argument("duplicate point in cap candidate");
            for (std::size_t k = j + 1; k < n; ++k)
                if (sp.collinear(pts[i], pts[j], pts[k]))
                    return Triple{pts[i], pts[j], pts[k]};
        }
    return std::nullopt;
}

bool is_cap(const ProjectiveSpace& sp, std::span<const PointId> pts) {
    return !find_collinear_triple(sp, pts).has_value();
}

Completeness is_complete(const Cap&, const CoverageMap& cov) {
    const std::size_t w = cov.first_uncovered();
    if (w == CoverageMap::npos) return {true, 0};
    return {false, static_cast<PointId>(w)};
}

void greedy_complete(Cap& cap, CoverageMap& cov, PickRule rule, Rng* rng) {
    if (rule == PickRule::seeded && rng == nullptr)
        throw std::invalid_argument("seeded completion needs a generator");
    const std::uint64_t total = cap.space().num_points();
    while (true) {
        std::uint64_t uncovered = total - cov.covered_count();
        if (uncovered == 0) return;
        PointId pick = 0;
        if (rule == PickRule::lowest) {
            pick = static_cast<PointId>(cov.first_uncovered());
        } else {
            std::uint64_t target = rng->below(uncovered);
            for (PointId v = 0;; ++v) {
                if (!cov.covered(v)) {
                    if (target == 0) {
                        pick = v;
                        break;
                    }
                    --target;
                }
            }
        }
        cap.add(pick, cov);
    }
}

SizeBound size_lower_bound(const ProjectiveSpace& sp) {
    const double q = sp.q();
    const double real_bound =
        std::sqrt(2.0) * std::pow(q, (sp.dim() - 1) / 2.0);
    const std::uint64_t total = sp.num_points();
    std::uint64_t n = 1;
    while (n + n * (n - 1) / 2 * (sp.q() - 1) < total) ++n;
    return {real_bound, n};
}

namespace {

// Mask-based search state for spaces with at most 64 points: coverage and
// membership fit one word and line coverage is a precomputed OR.
struct MaskSearch {
    std::uint64_t full;
    std::vector<std::uint64_t> line_mask;  // [a * n + b] = points of line(a,b)
    std::uint32_t n;

    bool dfs(std::uint32_t next, std::vector<PointId>& cap, std::uint64_t covered,
             std::uint32_t target) const {
        if (cap.size() == target) return covered == full;
        if (next + (target - cap.size()) > n) return false;  // not enough points left
        for (std::uint32_t v = next; v < n; ++v) {
            if (covered >> v & 1) continue;
            std::uint64_t cov2 = covered | (1ull << v);
            for (PointId a : cap) cov2 |= line_mask[std::size_t(a) * n + v];
            cap.push_back(v);
            if (dfs(v + 1, cap, cov2, target)) return true;
            cap.pop_back();
        }
        return false;
    }
};

}  // namespace

OracleResult exhaustive_min_complete_cap(const ProjectiveSpace& sp,
                                         std::uint32_t max_points) {
    if (max_points > 64) max_points = 64;
    if (sp.num_points() > max_points)
        throw std::length_error("space too large for the exhaustive oracle (" +
                                std::to_string(sp.num_points()) + " > " +
                                std::to_string(max_points) + " points)");
    const auto n = static_cast<std::uint32_t>(sp.num_points());
    MaskSearch s;
    s.n = n;
    s.full = n == 64 ? ~0ull : (1ull << n) - 1;
    s.line_mask.assign(std::size_t(n) * n, 0);
    for (PointId a = 0; a < n; ++a)
        for (PointId b = a + 1; b < n; ++b) {
            std::uint64_t m = 0;
            for (PointId x : sp.line(a, b)) m |= 1ull << x;
            s.line_mask[std::size_t(a) * n + b] = m;
            s.line_mask[std::size_t(b) * n + a] = m;
        }
    for (std::uint32_t target = 1; target <= n; ++target) {
        std::vector<PointId> cap;
        cap.reserve(target);
        if (s.dfs(0, cap, 0, target)) return {target, cap};
    }
    throw std::logic_error("no complete cap found");  // unreachable: greedy completion shows one exists
}

}  // namespace pgcaps
