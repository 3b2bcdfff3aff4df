#include "pgcaps/codes.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pgcaps {

namespace {

// rank of an m x w matrix given as w column spans, exact over the field
std::uint32_t rank_of_columns(const Field& f, std::uint32_t m,
                              std::span<const std::span<const Fel>> cols) {
    const std::uint32_t w = static_cast<std::uint32_t>(cols.size());
    std::vector<Fel> a(std::size_t(m) * w);
    for (std::uint32_t c = 0; c < w; ++c)
        for (std::uint32_t r = 0; r < m; ++r) a[std::size_t(r) * w + c] = cols[c][r];
    std::uint32_t rank = 0;
    for (std::uint32_t col = 0; col < w && rank < m; ++col) {
        std::uint32_t pivot = m;
        for (std::uint32_t row = rank; row < m; ++row)
            if (a[std::size_t(row) * w + col] != 0) {
                pivot = row;
                break;
            }
        if (pivot == m) continue;
        if (pivot != rank)
            for (std::uint32_t i = 0; i < w; ++i)
                std::swap(a[std::size_t(pivot) * w + i], a[std::size_t(rank) * w + i]);
        const Fel inv = f.inv(a[std::size_t(rank) * w + col]);
        for (std::uint32_t row = rank + 1; row < m; ++row) {
            const Fel factor = f.mul(a[std::size_t(row) * w + col], inv);
            if (factor == 0) continue;
            for (std::uint32_t i = col; i < w; ++i)
                a[std::size_t(row) * w + i] = f.sub(
                    a[std::size_t(row) * w + i], f.mul(factor, a[std::size_t(rank) * w + i]));
        }
        ++rank;
    }
    return rank;
}

}  // namespace

ParityCheckMatrix::ParityCheckMatrix(Field field, std::uint32_t rows,
                                     std::uint32_t cols, std::vector<Fel> column_major)
    : field_(std::move(field)), m_(rows), n_(cols), a_(std::move(column_major)) {
    if (m_ == 0 || n_ == 0) throw std::invalid_argument("matrix must be non-empty");
    if (a_.size() != std::size_t(m_) * n_)
        throw std::invalid_argument("entry count does not match the dimensions");
    for (Fel e : a_)
        if (e >= field_.q()) throw std::out_of_range("matrix entry out of field range");
}

ParityCheckMatrix ParityCheckMatrix::from_cap(const Cap& cap) {
    if (cap.size() == 0) throw std::invalid_argument("cannot export an empty cap");
    const ProjectiveSpace& sp = cap.space();
    const auto m = static_cast<std::uint32_t>(sp.dim() + 1);
    const auto n = static_cast<std::uint32_t>(cap.size());
    std::vector<Fel> a(std::size_t(m) * n);
    for (std::uint32_t c = 0; c < n; ++c)
        sp.coords_of(cap.points()[c], std::span<Fel>(a.data() + std::size_t(c) * m, m));
    return {sp.field(), m, n, std::move(a)};
}

bool ParityCheckMatrix::distinct_nonzero_columns() const {
    for (std::uint32_t c = 0; c < n_; ++c) {
        std::span<const Fel> col = column(c);
        if (std::all_of(col.begin(), col.end(), [](Fel e) { return e == 0; }))
            return false;
    }
    for (std::uint32_t c1 = 0; c1 < n_; ++c1)
        for (std::uint32_t c2 = c1 + 1; c2 < n_; ++c2) {
            const std::array<std::span<const Fel>, 2> pair{column(c1), column(c2)};
            if (rank_of_columns(field_, m_, std::span<const std::span<const Fel>>(
                                                pair.data(), 2)) < 2)
                return false;
        }
    return true;
}

std::uint32_t ParityCheckMatrix::rank() const {
    std::vector<std::span<const Fel>> cols;
    cols.reserve(n_);
    for (std::uint32_t c = 0; c < n_; ++c) cols.push_back(column(c));
    return rank_of_columns(field_, m_, cols);
}

std::optional<std::uint32_t> min_distance(const ParityCheckMatrix& h,
                                          std::uint32_t limit) {
    const std::uint32_t n = h.cols();
    for (std::uint32_t w = 1; w <= std::min(limit, n); ++w) {
        // enumerate all w-subsets of columns in lexicographic order
        std::vector<std::uint32_t> idx(w);
        for (std::uint32_t i = 0; i < w; ++i) idx[i] = i;
        std::vector<std::span<const Fel>> cols(w);
        while (true) {
            for (std::uint32_t i = 0; i < w; ++i) cols[i] = h.column(idx[i]);
            if (rank_of_columns(h.field(), h.rows(), cols) < w) return w;
            // next combination
            std::int32_t i = static_cast<std::int32_t>(w) - 1;
            while (i >= 0 && idx[std::size_t(i)] == n - w + std::uint32_t(i)) --i;
            if (i < 0) break;
            ++idx[std::size_t(i)];
            for (std::uint32_t j = std::uint32_t(i) + 1; j < w; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }
    return std::nullopt;
}

std::optional<std::uint32_t> min_distance_exhaustive(const ParityCheckMatrix& h,
                                                     std::uint64_t max_codewords) {
    const Field& f = h.field();
    const std::uint32_t m = h.rows(), n = h.cols(), q = f.q();
    // null space basis of H by Gauss-Jordan on a row-major copy
    std::vector<Fel> a(std::size_t(m) * n);
    for (std::uint32_t c = 0; c < n; ++c)
        for (std::uint32_t r = 0; r < m; ++r) a[std::size_t(r) * n + c] = h.at(r, c);
    std::vector<std::uint32_t> pivot_col;
    std::uint32_t rank = 0;
    for (std::uint32_t col = 0; col < n && rank < m; ++col) {
        std::uint32_t pivot = m;
        for (std::uint32_t row = rank; row < m; ++row)
            if (a[std::size_t(row) * n + col] != 0) {
                pivot = row;
                break;
            }
        if (pivot == m) continue;
        for (std::uint32_t i = 0; i < n; ++i)
            std::swap(a[std::size_t(pivot) * n + i], a[std::size_t(rank) * n + i]);
        const Fel inv = f.inv(a[std::size_t(rank) * n + col]);
        for (std::uint32_t i = 0; i < n; ++i)
            a[std::size_t(rank) * n + i] = f.mul(a[std::size_t(rank) * n + i], inv);
        for (std::uint32_t row = 0; row < m; ++row) {
            if (row == rank) continue;
            const Fel factor = a[std::size_t(row) * n + col];
            if (factor == 0) continue;
            for (std::uint32_t i = 0; i < n; ++i)
                a[std::size_t(row) * n + i] = f.sub(
                    a[std::size_t(row) * n + i], f.mul(factor, a[std::size_t(rank) * n + i]));
        }
        pivot_col.push_back(col);
        ++rank;
    }
    const std::uint32_t k = n - rank;
    if (k == 0) return std::nullopt;
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        total *= q;
        if (total > max_codewords)
            throw std::length_error("codeword enumeration beyond the configured limit");
    }
    // basis vectors: one per free column
    std::vector<std::uint32_t> free_cols;
    for (std::uint32_t c = 0; c < n; ++c)
        if (std::find(pivot_col.begin(), pivot_col.end(), c) == pivot_col.end())
            free_cols.push_back(c);
    std::vector<std::vector<Fel>> basis;
    for (std::uint32_t fc : free_cols) {
        std::vector<Fel> v(n, 0);
        v[fc] = 1;
        for (std::uint32_t r = 0; r < rank; ++r)
            v[pivot_col[r]] = f.neg(a[std::size_t(r) * n + fc]);
        basis.push_back(std::move(v));
    }
    std::uint32_t best = n + 1;
    std::vector<Fel> word(n);
    for (std::uint64_t msg = 1; msg < total; ++msg) {
        std::fill(word.begin(), word.end(), 0);
        std::uint64_t t = msg;
        for (std::uint32_t i = 0; i < k; ++i) {
            const Fel coeff = static_cast<Fel>(t % q);
            t /= q;
            if (coeff == 0) continue;
            for (std::uint32_t j = 0; j < n; ++j)
                word[j] = f.add(word[j], f.mul(coeff, basis[i][j]));
        }
        const auto weight = static_cast<std::uint32_t>(
            std::count_if(word.begin(), word.end(), [](Fel e) { return e != 0; }));
        best = std::min(best, weight);
        if (best == 1) break;
    }
    return best;
}

std::optional<std::uint32_t> covering_radius(const ParityCheckMatrix& h,
                                             std::uint64_t max_syndromes) {
    const Field& f = h.field();
    const std::uint32_t m = h.rows(), n = h.cols(), q = f.q();
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        total *= q;
        if (total > max_syndromes)
            throw std::length_error("syndrome space beyond the configured limit");
    }
    std::vector<std::uint8_t> dist(total, 0xFF);
    dist[0] = 0;
    std::vector<std::uint64_t> frontier{0}, next;
    std::vector<Fel> digits(m);
    std::uint64_t marked = 1;
    std::uint32_t layer = 0;
    while (!frontier.empty() && marked < total) {
        next.clear();
        for (const std::uint64_t s : frontier) {
            std::uint64_t t = s;
            for (std::uint32_t i = 0; i < m; ++i) {
                digits[i] = static_cast<Fel>(t % q);
                t /= q;
            }
            for (std::uint32_t c = 0; c < n; ++c) {
                std::span<const Fel> col = h.column(c);
                for (Fel lambda = 1; lambda < q; ++lambda) {
                    std::uint64_t idx = 0;
                    for (std::uint32_t i = m; i-- > 0;)
                        idx = idx * q + f.add(digits[i], f.mul(lambda, col[i]));
                    if (dist[idx] == 0xFF) {
                        dist[idx] = static_cast<std::uint8_t>(layer + 1);
                        next.push_back(idx);
                        ++marked;
                    }
                }
            }
        }
        frontier.swap(next);
        if (!frontier.empty()) ++layer;
    }
    if (marked < total) return std::nullopt;  // columns do not span F_q^m
    return layer;
}

double covering_density(std::uint64_t n, std::int64_t k, std::uint32_t q,
                        std::uint32_t radius, bool* exact_one) {
    const std::int64_t m = static_cast<std::int64_t>(n) - k;
    if (m < 0) throw std::invalid_argument("dimension exceeds length");
    bool exact = true;
    unsigned __int128 num = 0;
    long double num_ld = 0.0L;
    unsigned __int128 binom = 1, qpow = 1;
    const auto kU128Max = ~static_cast<unsigned __int128>(0);
    for (std::uint32_t i = 0; i <= radius && i <= n; ++i) {
        if (i > 0) {
            binom = binom * (n - i + 1) / i;  // exact: product of i consecutive ints / i!
            if (qpow > kU128Max / (q - 1)) exact = false;
            qpow *= (q - 1);
        }
        const unsigned __int128 term = binom * qpow;
        if (exact && (binom == 0 || term / binom != qpow)) exact = false;
        if (exact && num > kU128Max - term) exact = false;
        if (exact) num += term;
        num_ld += static_cast<long double>(binom) * static_cast<long double>(qpow);
    }
    unsigned __int128 den = 1;
    long double den_ld = 1.0L;
    for (std::int64_t i = 0; i < m; ++i) {
        if (exact && den > kU128Max / q) exact = false;
        if (exact) den *= q;
        den_ld *= q;
    }
    if (exact_one) *exact_one = exact && num == den;
    if (exact) return static_cast<double>(static_cast<long double>(num) /
                                          static_cast<long double>(den));
    return static_cast<double>(num_ld / den_ld);
}

CodeReport analyze_code(const ParityCheckMatrix& h, std::uint32_t d_limit) {
    CodeReport rep;
    rep.n = h.cols();
    rep.k = static_cast<std::int64_t>(h.cols()) - h.rows();
    rep.d_search_limit = d_limit;
    rep.proper_columns = h.distinct_nonzero_columns();
    rep.rank_deficient = h.rank() < h.rows();
    rep.d = min_distance(h, d_limit);
    if (rep.d) rep.t = (*rep.d - 1) / 2;
    rep.R = covering_radius(h);
    rep.quasi_perfect = rep.d && rep.R && *rep.R == *rep.t + 1;
    if (rep.R) {
        bool exact_one = false;
        rep.mu = covering_density(rep.n, rep.k, h.field().q(), *rep.R, &exact_one);
        rep.mu_exactly_one = exact_one;
    }
    return rep;
}

void write_pgcode(std::ostream& os, const ParityCheckMatrix& h) {
    os << "PGCODE 1 " << h.field().q() << ' ' << h.rows() << ' ' << h.cols() << '\n';
    for (std::uint32_t r = 0; r < h.rows(); ++r) {
        for (std::uint32_t c = 0; c < h.cols(); ++c)
            os << (c ? " " : "") << h.at(r, c);
        os << '\n';
    }
}

void write_pgcode_file(const std::string& path, const ParityCheckMatrix& h) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_pgcode(os, h);
    if (!os) throw std::runtime_error("write to " + path + " failed");
}

ParityCheckMatrix read_pgcode(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("pgcode: empty input");
    std::istringstream head(line);
    std::string magic;
    int version = 0;
    long long q = 0, m = 0, n = 0;
    if (!(head >> magic >> version >> q >> m >> n) || magic != "PGCODE" || version != 1)
        throw std::runtime_error("pgcode: expected header 'PGCODE 1 <q> <m> <n>'");
    if (m < 1 || n < 1) throw std::runtime_error("pgcode: non-positive dimensions");
    std::uint32_t p = 0, k = 0;
    if (q < 2 || !prime_power(static_cast<std::uint64_t>(q), p, k))
        throw std::runtime_error("pgcode: field order is not a prime power");
    Field field(p, k);
    std::vector<Fel> a(std::size_t(m) * n);
    for (long long r = 0; r < m; ++r) {
        if (!std::getline(is, line)) throw std::runtime_error("pgcode: unexpected end of file");
        std::istringstream ls(line);
        for (long long c = 0; c < n; ++c) {
            long long e;
            if (!(ls >> e) || e < 0 || e >= q)
                throw std::runtime_error("pgcode: bad entry at row " + std::to_string(r + 1));
            a[std::size_t(c) * m + r] = static_cast<Fel>(e);
        }
    }
    return {std::move(field), static_cast<std::uint32_t>(m),
            static_cast<std::uint32_t>(n), std::move(a)};
}

ParityCheckMatrix read_pgcode_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    return read_pgcode(is);
}

}  // namespace pgcaps
