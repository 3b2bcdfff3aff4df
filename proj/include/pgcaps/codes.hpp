#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pgcaps/cap.hpp"
#include "pgcaps/gf.hpp"

namespace pgcaps {

/// Parity-check matrix of a q-ary linear code, stored column-major as field
/// element indices.  A matrix built from a cap has the canonical homogeneous
/// coordinates of the cap points as columns, in insertion order; such a
/// matrix has no zero column, no two proportional columns, and no three
/// linearly dependent columns.
class ParityCheckMatrix {
public:
    ParityCheckMatrix(Field field, std::uint32_t rows, std::uint32_t cols,
                      std::vector<Fel> column_major);

    static ParityCheckMatrix from_cap(const Cap& cap);

    const Field& field() const { return field_; }
    std::uint32_t rows() const { return m_; }  ///< codimension m
    std::uint32_t cols() const { return n_; }  ///< code length n

    Fel at(std::uint32_t r, std::uint32_t c) const { return a_[std::size_t(c) * m_ + r]; }
    std::span<const Fel> column(std::uint32_t c) const {
        return {a_.data() + std::size_t(c) * m_, m_};
    }

    /// True iff no column is zero and no two columns are proportional,
    /// i.e. the columns are distinct projective points.
    bool distinct_nonzero_columns() const;

    std::uint32_t rank() const;

private:
    Field field_;
    std::uint32_t m_, n_;
    std::vector<Fel> a_;
};

/// Smallest w <= limit such that some w columns are linearly dependent
/// (equivalently the minimum distance when it is <= limit), by exhaustive
/// subset scan; nullopt when every subset of size <= limit is independent.
std::optional<std::uint32_t> min_distance(const ParityCheckMatrix& h,
                                          std::uint32_t limit = 4);

/// Minimum distance by full codeword enumeration over the null space of H.
/// Independent of the subset scan; nullopt for the zero code (k = 0).
/// Throws std::length_error when q^k exceeds max_codewords.
std::optional<std::uint32_t> min_distance_exhaustive(
    const ParityCheckMatrix& h, std::uint64_t max_codewords = 1ull << 24);

/// Covering radius by breadth-first search over all q^m syndromes: mark
/// weight 0, then everything reachable by adding one scaled column, and so
/// on; R is the last layer.  nullopt when the columns do not span F_q^m
/// (some syndrome is unreachable).  Throws std::length_error when q^m
/// exceeds max_syndromes.
std::optional<std::uint32_t> covering_radius(const ParityCheckMatrix& h,
                                             std::uint64_t max_syndromes = 1ull << 24);

/// Covering density (1/q^{n-k}) * sum_{i=0..R} (q-1)^i C(n,i), evaluated
/// exactly; exact_one reports num == den, which characterizes perfect codes.
double covering_density(std::uint64_t n, std::int64_t k, std::uint32_t q,
                        std::uint32_t radius, bool* exact_one = nullptr);

struct CodeReport {
    std::uint64_t n = 0;
    std::int64_t k = 0;  ///< n - m; <= 0 exports are flagged, not rejected
    std::optional<std::uint32_t> d;
    std::optional<std::uint32_t> t;  ///< floor((d-1)/2)
    std::optional<std::uint32_t> R;
    bool quasi_perfect = false;  ///< R == t + 1
    std::optional<double> mu;
    bool mu_exactly_one = false;
    std::uint32_t d_search_limit = 0;  ///< d is "> limit" when absent
    bool rank_deficient = false;
    bool proper_columns = true;  ///< distinct nonzero projective columns
};

CodeReport analyze_code(const ParityCheckMatrix& h, std::uint32_t d_limit = 4);

/// PGCODE text format:
///   line 1:     PGCODE 1 <q> <m> <n>
///   lines 2..m+1: n space-separated field element indices (one matrix row)
void write_pgcode(std::ostream& os, const ParityCheckMatrix& h);
void write_pgcode_file(const std::string& path, const ParityCheckMatrix& h);
ParityCheckMatrix read_pgcode(std::istream& is);
ParityCheckMatrix read_pgcode_file(const std::string& path);

}  // namespace pgcaps
