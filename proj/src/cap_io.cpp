#include "pgcaps/cap_io.hpp"

#include <fstream>
#include <sstream>

namespace pgcaps {

void write_cap(std::ostream& os, const Cap& cap) {
    const ProjectiveSpace& sp = cap.space();
    os << "PGCAP 1 " << sp.dim() << ' ' << sp.q() << ' ' << cap.size() << '\n';
    std::vector<Fel> coords(std::size_t(sp.dim()) + 1);
    for (PointId v : cap.points()) {
        sp.coords_of(v, coords);
        for (std::size_t i = 0; i < coords.size(); ++i)
            os << (i ? " " : "") << coords[i];
        os << '\n';
    }
}

void write_cap_file(const std::string& path, const Cap& cap) {
    std::ofstream os(path, std::ios::binary);  // binary: byte-stable newlines
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_cap(os, cap);
    if (!os) throw std::runtime_error("write to " + path + " failed");
}

LoadedCap read_cap(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw CapParseError(1, "empty input");
    std::istringstream head(line);
    std::string magic;
    int version = 0, dim = 0;
    long long q = 0, n = 0;
    if (!(head >> magic >> version >> dim >> q >> n) || magic != "PGCAP")
        throw CapParseError(1, "expected header 'PGCAP 1 <N> <q> <n>'");
    std::string extra;
    if (head >> extra) throw CapParseError(1, "trailing tokens in header");
    if (version != 1) throw CapParseError(1, "unsupported PGCAP version");
    if (dim < 2) throw CapParseError(1, "dimension must be >= 2");
    if (n < 0) throw CapParseError(1, "negative point count");
    std::uint32_t p = 0, k = 0;
    if (q < 2 || !prime_power(static_cast<std::uint64_t>(q), p, k))
        throw CapParseError(1, "field order is not a prime power");

    auto space = std::make_unique<ProjectiveSpace>(dim, Field(p, k));
    Cap cap(*space);
    CoverageMap cov(*space);
    std::vector<Fel> coords(std::size_t(dim) + 1);
    for (long long row = 0; row < n; ++row) {
        const int lineno = static_cast<int>(row) + 2;
        if (!std::getline(is, line))
            throw CapParseError(lineno, "unexpected end of file (" +
                                            std::to_string(n) + " points declared)");
        std::istringstream ls(line);
        for (int i = 0; i <= dim; ++i) {
            long long c;
            if (!(ls >> c)) throw CapParseError(lineno, "expected " + std::to_string(dim + 1) +
                                                            " coordinates");
            if (c < 0 || c >= q) throw CapParseError(lineno, "coordinate out of range");
            coords[std::size_t(i)] = static_cast<Fel>(c);
        }
        if (ls >> line) throw CapParseError(lineno, "trailing tokens after coordinates");
        if (!space->is_canonical(coords))
            throw CapParseError(lineno, "coordinates are not in canonical form "
                                        "(first nonzero must be 1)");
        const PointId v = space->point_of(coords);
        if (cap.contains(v)) throw CapParseError(lineno, "duplicate point");
        try {
            cap.add(v, cov);
        } catch (const CapViolation&) {
            throw CapParseError(lineno, "point is collinear with two earlier cap points");
        }
    }
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (ls >> tok)
            throw CapParseError(static_cast<int>(n) + 2, "trailing content after declared points");
    }
    return LoadedCap{std::move(space), std::move(cap), std::move(cov)};
}

LoadedCap read_cap_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    return read_cap(is);
}

}  // namespace pgcaps
