#include "pgcaps/gf.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pgcaps {

namespace {

// Dense polynomials over F_p, coefficients lowest degree first.
using Poly = std::vector<std::uint32_t>;

int degree(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[std::size_t(i)] != 0) return i;
    return -1;
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
    // extended Euclid on integers
    std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
    while (new_r != 0) {
        std::int64_t quot = r / new_r;
        std::int64_t tmp = t - quot * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - quot * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

// rem <- rem mod div (div monic-normalizable, nonzero)
void poly_mod(Poly& rem, const Poly& div, std::uint32_t p) {
    const int dd = degree(div);
    const std::uint32_t lead_inv = mod_inverse(div[std::size_t(dd)], p);
    int dr = degree(rem);
    while (dr >= dd) {
        const std::uint64_t c =
            std::uint64_t(rem[std::size_t(dr)]) * lead_inv % p;
        if (c != 0) {
            for (int j = 0; j <= dd; ++j) {
                std::uint64_t v = rem[std::size_t(dr - dd + j)] + p -
                                  c * div[std::size_t(j)] % p;
                rem[std::size_t(dr - dd + j)] = static_cast<std::uint32_t>(v % p);
            }
        } else {
            rem[std::size_t(dr)] = 0;
        }
        dr = degree(rem);
        // degree strictly decreases because the leading term cancels
        if (dr >= 0 && rem[std::size_t(dr)] == 0) throw std::logic_error("poly_mod");
    }
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
    const int n = degree(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    // trial division by every monic polynomial of degree 1..n/2
    for (int d = 1; 2 * d <= n; ++d) {
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (std::uint64_t m = 0; m < count; ++m) {
            Poly g(std::size_t(d) + 1, 0);
            std::uint64_t t = m;
            for (int i = 0; i < d; ++i) {
                g[std::size_t(i)] = static_cast<std::uint32_t>(t % p);
                t /= p;
            }
            g[std::size_t(d)] = 1;
            Poly rem = f;
            poly_mod(rem, g, p);
            if (degree(rem) < 0) return false;
        }
    }
    return true;
}

// Lexicographically smallest monic irreducible of degree k over F_p,
// comparing coefficient lists lowest degree first (c0 is the most
// significant position of the enumeration).
Poly smallest_irreducible(std::uint32_t p, std::uint32_t k) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t m = 0; m < count; ++m) {
        Poly f(std::size_t(k) + 1, 0);
        std::uint64_t t = m;
        for (std::uint32_t j = k; j-- > 0;) {  // c_{k-1} is the fastest digit
            f[std::size_t(j)] = static_cast<std::uint32_t>(t % p);
            t /= p;
        }
        f[std::size_t(k)] = 1;
        if (is_irreducible(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool prime_power(std::uint64_t q, std::uint32_t& p, std::uint32_t& k) {
    if (q < 2) return false;
    std::uint64_t base = q;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            base = d;
            break;
        }
    }
    std::uint64_t v = q;
    std::uint32_t e = 0;
    while (v % base == 0) {
        v /= base;
        ++e;
    }
    if (v != 1) return false;
    p = static_cast<std::uint32_t>(base);
    k = e;
    return true;
}

Field::Field(std::uint32_t p, std::uint32_t k, std::uint64_t max_order) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > max_order)
            throw std::invalid_argument("field order " + std::to_string(p) + "^" +
                                        std::to_string(k) + " exceeds the configured maximum");
    }
    p_ = p;
    k_ = k;
    q_ = static_cast<std::uint32_t>(q);
    if (k == 1) {
        modulus_ = {0, 1};  // placeholder x, arithmetic is plain mod p
    } else {
        Poly f = smallest_irreducible(p, k);
        modulus_.assign(f.begin(), f.end());
    }
    if (q_ <= kTableOrderLimit) build_tables();
}

void Field::check(Fel a) const {
    if (a >= q_) throw std::out_of_range("field element index out of range");
}

Fel Field::add_slow(Fel a, Fel b) const {
    if (k_ == 1) return (a + b) % p_;
    Fel out = 0, scale = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        const Fel da = a % p_, db = b % p_;
        out += (da + db) % p_ * scale;
        a /= p_;
        b /= p_;
        scale *= p_;
    }
    return out;
}

Fel Field::neg(Fel a) const {
    check(a);
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    Fel out = 0, scale = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        const Fel d = a % p_;
        out += (d == 0 ? 0 : p_ - d) * scale;
        a /= p_;
        scale *= p_;
    }
    return out;
}

Fel Field::mul_slow(Fel a, Fel b) const {
    if (k_ == 1) return static_cast<Fel>(std::uint64_t(a) * b % p_);
    std::uint32_t da[32], db[32];
    for (std::uint32_t i = 0; i < k_; ++i) {
        da[i] = a % p_;
        a /= p_;
        db[i] = b % p_;
        b /= p_;
    }
    std::uint64_t prod[63] = {0};
    for (std::uint32_t i = 0; i < k_; ++i) {
        if (da[i] == 0) continue;
        for (std::uint32_t j = 0; j < k_; ++j)
            prod[i + j] = (prod[i + j] + std::uint64_t(da[i]) * db[j]) % p_;
    }
    // reduce by the monic modulus
    for (std::uint32_t i = 2 * k_ - 2; i >= k_; --i) {
        const std::uint64_t c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (std::uint32_t j = 0; j < k_; ++j) {
            std::uint64_t v = prod[i - k_ + j] + std::uint64_t(p_) * p_ -
                              c * modulus_[j] % p_;
            prod[i - k_ + j] = v % p_;
        }
    }
    Fel out = 0, scale = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        out += static_cast<Fel>(prod[i]) * scale;
        scale *= p_;
    }
    return out;
}

Fel Field::inv_slow(Fel a) const {
    if (k_ == 1) return mod_inverse(a, p_);
    return pow(a, std::uint64_t(q_) - 2);
}

Fel Field::inv(Fel a) const {
    check(a);
    if (a == 0) throw std::domain_error("zero has no multiplicative inverse");
    return tables_ ? inv_tab_[a] : inv_slow(a);
}

Fel Field::pow(Fel a, std::uint64_t e) const {
    check(a);
    Fel base = a, out = 1;
    while (e > 0) {
        if (e & 1) out = mul(out, base);
        base = mul(base, base);
        e >>= 1;
    }
    return out;
}

void Field::build_tables() {
    const std::size_t q = q_;
    add_tab_.resize(q * q);
    mul_tab_.resize(q * q);
    inv_tab_.assign(q, 0);
    for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t b = 0; b <= a; ++b) {
            const auto s = static_cast<std::uint16_t>(add_slow(Fel(a), Fel(b)));
            const auto m = static_cast<std::uint16_t>(mul_slow(Fel(a), Fel(b)));
            add_tab_[a * q + b] = add_tab_[b * q + a] = s;
            mul_tab_[a * q + b] = mul_tab_[b * q + a] = m;
        }
    }
    tables_ = true;  // inv_slow below may use mul via pow; tables are ready
    for (std::size_t a = 1; a < q; ++a)
        inv_tab_[a] = static_cast<std::uint16_t>(inv_slow(Fel(a)));
}

}  // namespace pgcaps
