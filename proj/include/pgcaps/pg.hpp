#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <span>
#include <vector>

#include "pgcaps/gf.hpp"

namespace pgcaps {

/// Canonical index of a point of PG(N,q), in [0, num_points).
///
/// Every point has a unique homogeneous coordinate vector of length N+1
/// whose first nonzero coordinate is 1 (leftmost normalization); point
/// indices rank these canonical vectors in lexicographic order, comparing
/// coordinates left to right by element index.
using PointId = std::uint32_t;

using Bitset = boost::dynamic_bitset<std::uint64_t>;

/// PG(N,q): canonical point indexing, collinearity and line enumeration.
/// Immutable after construction; all operations are pure.
class ProjectiveSpace {
public:
    ProjectiveSpace(int dim, Field field);

    int dim() const { return dim_; }
    const Field& field() const { return field_; }
    std::uint32_t q() const { return field_.q(); }

    std::uint64_t num_points() const { return num_points_; }
    std::uint64_t lines_per_point() const { return lines_per_point_; }
    std::uint32_t points_per_line() const { return field_.q() + 1; }

    /// (q^{N+1} - 1)/(q - 1), exact; throws on uint64 overflow.
    static std::uint64_t count_points(int dim, std::uint64_t q);

    /// Canonical coordinates of a point, out.size() == dim+1.
    void coords_of(PointId v, std::span<Fel> out) const;
    std::vector<Fel> coords_of(PointId v) const;

    /// Point for any nonzero coordinate vector; scalar multiples map to the
    /// same id.  Throws on the zero vector or wrong length.
    PointId point_of(std::span<const Fel> coords) const;

    /// True iff the first nonzero coordinate is 1.
    bool is_canonical(std::span<const Fel> coords) const;

    /// True iff the three distinct points span a rank-<=2 coordinate matrix,
    /// computed exactly over F_q.  Throws "degenerate triple" on duplicates.
    bool collinear(PointId a, PointId b, PointId c) const;

    /// The q+1 points of the line through distinct a and b, ascending by
    /// index; independent of argument order.
    std::vector<PointId> line(PointId a, PointId b) const;
    void line_into(PointId a, PointId b, std::vector<PointId>& out) const;

    /// Canonical key of the line (x, y) within the pencil of x: two points
    /// y, z yield the same key iff they lie on one line through x.  The key
    /// is the point id of y reduced modulo x and renormalized.
    PointId pencil_key(PointId x, PointId y) const;

    /// Calls fn(line) once for each of the lines_per_point() lines through v.
    template <class Fn>
    void for_each_line_through(PointId v, Fn&& fn) const {
        Bitset seen(num_points_);
        seen.set(v);
        std::vector<PointId> buf;
        for (PointId b = 0; b < num_points_; ++b) {
            if (seen.test(b)) continue;
            line_into(v, b, buf);
            for (PointId x : buf) seen.set(x);
            fn(std::span<const PointId>(buf));
        }
    }

    std::vector<std::vector<PointId>> lines_through(PointId v) const;

private:
    int dim_;
    Field field_;
    std::uint64_t num_points_ = 0;
    std::uint64_t lines_per_point_ = 0;

    void check_point(PointId v) const;
};

}  // namespace pgcaps
