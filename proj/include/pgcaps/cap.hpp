#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pgcaps/pg.hpp"
#include "pgcaps/rng.hpp"

namespace pgcaps {

struct Triple {
    PointId a, b, c;
};

/// Bitmap of points covered by a cap: a point is covered iff it lies on a
/// bisecant of the cap or is a cap point itself.  With that convention a
/// cap is complete iff the bitmap is all ones, and a non-member point is a
/// legal extension iff its bit is clear.
class CoverageMap {
public:
    explicit CoverageMap(const ProjectiveSpace& sp) : bits_(sp.num_points()) {}

    bool covered(PointId v) const { return bits_.test(v); }
    void mark(PointId v) { bits_.set(v); }
    std::uint64_t covered_count() const { return bits_.count(); }
    bool all_covered() const { return bits_.all(); }

    /// Lowest uncovered point, or npos when complete.
    std::size_t first_uncovered() const {
        Bitset tmp = ~bits_;
        return tmp.find_first();
    }

    const Bitset& bits() const { return bits_; }

    static constexpr std::size_t npos = Bitset::npos;

private:
    Bitset bits_;
};

/// Thrown when an addition would put three cap points on a line.
class CapViolation : public std::runtime_error {
public:
    CapViolation(const std::string& what, PointId v)
        : std::runtime_error(what), point(v) {}
    PointId point;
};

/// A set of points no three of which are collinear, with insertion order
/// preserved for reproducibility.  Mutations keep the paired CoverageMap
/// incrementally in sync with a from-scratch recomputation.
class Cap {
public:
    explicit Cap(const ProjectiveSpace& sp)
        : space_(&sp), member_(sp.num_points()) {}

    const ProjectiveSpace& space() const { return *space_; }
    std::size_t size() const { return points_.size(); }
    const std::vector<PointId>& points() const { return points_; }
    bool contains(PointId v) const { return member_.test(v); }
    const Bitset& member_bits() const { return member_; }

    /// Appends v and marks every point of every line (v, a), a already in
    /// the cap, plus v itself, as covered.  In checked mode (default) a
    /// covered v is rejected: a point on an existing bisecant would create
    /// a collinear triple, so "uncovered" is exactly the legality condition.
    void add(PointId v, CoverageMap& cov, bool checked = true);

private:
    const ProjectiveSpace* space_;
    std::vector<PointId> points_;
    Bitset member_;
    mutable std::vector<PointId> line_buf_;
};

/// First collinear triple among the given distinct points, if any.
std::optional<Triple> find_collinear_triple(const ProjectiveSpace& sp,
                                            std::span<const PointId> pts);

bool is_cap(const ProjectiveSpace& sp, std::span<const PointId> pts);

struct Completeness {
    bool complete;
    PointId witness;  // an uncovered point when !complete
};

Completeness is_complete(const Cap& cap, const CoverageMap& cov);

enum class PickRule {
    lowest,  ///< deterministic: lowest-index uncovered point
    seeded,  ///< uniform among uncovered points, from the given generator
};

/// Adds uncovered points until the coverage map is all ones.  Terminates:
/// every addition covers at least the added point.
void greedy_complete(Cap& cap, CoverageMap& cov, PickRule rule, Rng* rng = nullptr);

struct SizeBound {
    double real_bound;           ///< sqrt(2) * q^{(N-1)/2}
    std::uint64_t integer_bound; ///< least n with n + n(n-1)(q-1)/2 >= num_points
};

/// Lower bounds on the size of any complete cap: each of the n(n-1)/2
/// secants covers at most q-1 non-cap points, so a complete cap needs
/// n + n(n-1)(q-1)/2 >= num_points.
SizeBound size_lower_bound(const ProjectiveSpace& sp);

struct OracleResult {
    std::uint32_t min_size;
    std::vector<PointId> witness;
};

/// Exact minimum size of a complete cap, by depth-first search over caps in
/// lexicographic order with size-bounded iterative deepening.  Tractable
/// only for tiny spaces; throws std::length_error above max_points.
OracleResult exhaustive_min_complete_cap(const ProjectiveSpace& sp,
                                         std::uint32_t max_points = 45);

}  // namespace pgcaps
