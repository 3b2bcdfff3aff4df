#include "pgcaps/pg.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pgcaps {

std::uint64_t ProjectiveSpace::count_points(int dim, std::uint64_t q) {
    if (dim < 2) throw std::invalid_argument("projective dimension must be >= 2");
    if (q < 2) throw std::invalid_argument("field order must be >= 2");
    unsigned __int128 total = 0, power = 1;
    for (int j = 0; j <= dim; ++j) {
        total += power;
        power *= q;
        if (total > std::numeric_limits<std::uint64_t>::max() ||
            (j < dim && power > std::numeric_limits<std::uint64_t>::max()))
            throw std::overflow_error("point count overflows 64 bits");
    }
    return static_cast<std::uint64_t>(total);
}

ProjectiveSpace::ProjectiveSpace(int dim, Field field)
    : dim_(dim), field_(std::move(field)) {
    num_points_ = count_points(dim, field_.q());
    if (num_points_ > std::numeric_limits<PointId>::max())
        throw std::overflow_error("point count exceeds the 32-bit point id range");
    // (q^N - 1)/(q - 1) = 1 + q + ... + q^{N-1}
    std::uint64_t s = 0, pw = 1;
    for (int j = 0; j < dim; ++j) {
        s += pw;
        pw *= field_.q();
    }
    lines_per_point_ = s;
}

void ProjectiveSpace::check_point(PointId v) const {
    if (v >= num_points_) throw std::out_of_range("point id out of range");
}

void ProjectiveSpace::coords_of(PointId v, std::span<Fel> out) const {
    check_point(v);
    const int n = dim_;
    if (out.size() != std::size_t(n) + 1) throw std::invalid_argument("coordinate span has wrong length");
    const std::uint64_t q = field_.q();
    // canonical vectors with first nonzero at position j occupy the index
    // block [base(j), base(j) + q^{n-j}) where base(j) = (q^{n-j}-1)/(q-1)
    std::uint64_t r = v;
    std::uint64_t base = 0, size = 1;  // j = n
    int j = n;
    while (r >= base + size) {
        base += size;
        size *= q;
        --j;
    }
    std::fill(out.begin(), out.end(), 0);
    out[std::size_t(j)] = 1;
    std::uint64_t tail = r - base;
    for (int i = n; i > j; --i) {
        out[std::size_t(i)] = static_cast<Fel>(tail % q);
        tail /= q;
    }
}

std::vector<Fel> ProjectiveSpace::coords_of(PointId v) const {
    std::vector<Fel> out(std::size_t(dim_) + 1);
    coords_of(v, out);
    return out;
}

bool ProjectiveSpace::is_canonical(std::span<const Fel> coords) const {
    if (coords.size() != std::size_t(dim_) + 1) return false;
    for (Fel c : coords) {
        if (c != 0) return c == 1;
        }
    return false;
}

PointId ProjectiveSpace::point_of(std::span<const Fel> coords) const {
    const int n = dim_;
    if (coords.size() != std::size_t(n) + 1) throw std::invalid_argument("coordinate vector has wrong length");
    int j = -1;
    for (int i = 0; i <= n; ++i) {
        if (coords[std::size_t(i)] != 0) {
            j = i;
            break;
        }
    }
    if (j < 0) throw std::invalid_argument("the zero vector is not a projective point");
    const std::uint64_t q = field_.q();
    const Fel scale = field_.inv(coords[std::size_t(j)]);
    // rank = (q^{n-j} - 1)/(q - 1) + tail digits in base q, v_{j+1} most significant
    std::uint64_t base = 0, pw = 1;
    for (int i = 0; i < n - j; ++i) {
        base += pw;
        pw *= q;
    }
    std::uint64_t tail = 0;
    for (int i = j + 1; i <= n; ++i)
        tail = tail * q + field_.mul(scale, coords[std::size_t(i)]);
    return static_cast<PointId>(base + tail);
}

bool ProjectiveSpace::collinear(PointId a, PointId b, PointId c) const {
    check_point(a);
    check_point(b);
    check_point(c);
    if (a == b || a == c || b == c)
        throw std::invalid_argument("degenerate triple: collinearity needs three distinct points");
    const int cols = dim_ + 1;
    std::vector<Fel> m(3 * std::size_t(cols));
    coords_of(a, std::span<Fel>(m.data(), std::size_t(cols)));
    coords_of(b, std::span<Fel>(m.data() + cols, std::size_t(cols)));
    coords_of(c, std::span<Fel>(m.data() + 2 * cols, std::size_t(cols)));
    // exact Gaussian elimination; collinear iff rank <= 2
    int rank = 0;
    for (int col = 0; col < cols && rank < 3; ++col) {
        int pivot = -1;
        for (int row = rank; row < 3; ++row) {
            if (m[std::size_t(row) * cols + col] != 0) {
                pivot = row;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int i = 0; i < cols; ++i)
                std::swap(m[std::size_t(pivot) * cols + i], m[std::size_t(rank) * cols + i]);
        const Fel piv_inv = field_.inv(m[std::size_t(rank) * cols + col]);
        for (int row = rank + 1; row < 3; ++row) {
            const Fel f = field_.mul(m[std::size_t(row) * cols + col], piv_inv);
            if (f == 0) continue;
            for (int i = col; i < cols; ++i) {
                const Fel sub = field_.mul(f, m[std::size_t(rank) * cols + i]);
                m[std::size_t(row) * cols + i] =
                    field_.sub(m[std::size_t(row) * cols + i], sub);
            }
        }
        ++rank;
    }
    return rank <= 2;
}

void ProjectiveSpace::line_into(PointId a, PointId b, std::vector<PointId>& out) const {
    check_point(a);
    check_point(b);
    if (a == b) throw std::invalid_argument("a line needs two distinct points");
    const int cols = dim_ + 1;
    std::vector<Fel> ca(static_cast<std::size_t>(cols)), cb(static_cast<std::size_t>(cols)), combo(static_cast<std::size_t>(cols));
    coords_of(a, ca);
    coords_of(b, cb);
    out.clear();
    out.reserve(field_.q() + 1);
    out.push_back(b);
    for (Fel lambda = 0; lambda < field_.q(); ++lambda) {
        for (int i = 0; i < cols; ++i)
            combo[std::size_t(i)] =
                field_.add(ca[std::size_t(i)], field_.mul(lambda, cb[std::size_t(i)]));
        out.push_back(point_of(combo));
    }
    std::sort(out.begin(), out.end());
}

std::vector<PointId> ProjectiveSpace::line(PointId a, PointId b) const {
    std::vector<PointId> out;
    line_into(a, b, out);
    return out;
}

PointId ProjectiveSpace::pencil_key(PointId x, PointId y) const {
    check_point(x);
    check_point(y);
    if (x == y) throw std::invalid_argument("pencil key needs a point distinct from the base");
    const int cols = dim_ + 1;
    std::vector<Fel> cx(static_cast<std::size_t>(cols)), cy(static_cast<std::size_t>(cols));
    coords_of(x, cx);
    coords_of(y, cy);
    int jx = 0;
    while (cx[std::size_t(jx)] == 0) ++jx;  // cx[jx] == 1 by canonical form
    const Fel f = cy[std::size_t(jx)];
    if (f != 0)
        for (int i = 0; i < cols; ++i)
            cy[std::size_t(i)] =
                field_.sub(cy[std::size_t(i)], field_.mul(f, cx[std::size_t(i)]));
    return point_of(cy);
}

std::vector<std::vector<PointId>> ProjectiveSpace::lines_through(PointId v) const {
    check_point(v);
    std::vector<std::vector<PointId>> out;
    out.reserve(lines_per_point_);
    for_each_line_through(v, [&](std::span<const PointId> line) {
        out.emplace_back(line.begin(), line.end());
    });
    return out;
}

}  // namespace pgcaps
