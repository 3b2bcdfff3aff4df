#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pgcaps {

/// Field element index in [0, q).  The base-p digits of an index are the
/// coefficients of the element's polynomial representation, lowest degree
/// first; index 0 is the zero element and index 1 the one element.
using Fel = std::uint32_t;

/// Exact arithmetic in GF(q), q = p^k, for prime p and k >= 1.
///
/// For k > 1 the field is F_p[x]/(f) where f is the lexicographically
/// smallest monic irreducible polynomial of degree k over F_p, comparing
/// coefficient lists lowest degree first.  The construction is a pure
/// function of (p, k): repeated builds yield the same modulus, so element
/// indices mean the same thing everywhere.
///
/// Immutable after construction; all operations are const and safe for
/// concurrent use.
class Field {
public:
    static constexpr std::uint64_t kDefaultMaxOrder = 1ull << 20;

    /// Small fields get dense add/mul/inv tables.
    static constexpr std::uint32_t kTableOrderLimit = 1024;

    Field(std::uint32_t p, std::uint32_t k,
          std::uint64_t max_order = kDefaultMaxOrder);

    std::uint32_t p() const { return p_; }
    std::uint32_t k() const { return k_; }
    std::uint32_t q() const { return q_; }

    /// Modulus polynomial, k+1 coefficients over F_p, lowest degree first,
    /// monic.  For k == 1 this is the placeholder x (arithmetic is mod p).
    const std::vector<Fel>& modulus() const { return modulus_; }

    Fel add(Fel a, Fel b) const {
        check(a);
        check(b);
        return tables_ ? add_tab_[std::size_t(a) * q_ + b] : add_slow(a, b);
    }

    Fel neg(Fel a) const;
    Fel sub(Fel a, Fel b) const { return add(a, neg(b)); }

    Fel mul(Fel a, Fel b) const {
        check(a);
        check(b);
        return tables_ ? mul_tab_[std::size_t(a) * q_ + b] : mul_slow(a, b);
    }

    /// Multiplicative inverse; throws std::domain_error for a == 0.
    Fel inv(Fel a) const;

    Fel pow(Fel a, std::uint64_t e) const;

private:
    std::uint32_t p_ = 0, k_ = 0, q_ = 0;
    std::vector<Fel> modulus_;
    bool tables_ = false;
    std::vector<std::uint16_t> add_tab_, mul_tab_, inv_tab_;

    void check(Fel a) const;
    Fel add_slow(Fel a, Fel b) const;
    Fel mul_slow(Fel a, Fel b) const;
    Fel inv_slow(Fel a) const;
    void build_tables();
};

bool is_prime(std::uint64_t n);

/// Factor q as p^k; returns false if q is not a prime power.
bool prime_power(std::uint64_t q, std::uint32_t& p, std::uint32_t& k);

}  // namespace pgcaps
