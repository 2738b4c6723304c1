#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <string>

#include <gmpxx.h>

#include "jordet/errors.hpp"

namespace jordet {

enum class RingKind { Rationals, PrimeField, ResidueRing };
enum class Capability { Field, ReplayOnly };

/// Validated runtime descriptor of a coefficient ring. The whole toolkit
/// requires 6 invertible, so moduli sharing a factor with 6 are rejected.
struct RingSpec {
    RingKind kind = RingKind::Rationals;
    std::uint64_t modulus = 0; // 0 for the rationals
    Capability capability = Capability::Field;

    std::string name() const {
        switch (kind) {
            case RingKind::Rationals: return "q";
            case RingKind::PrimeField: return "fp:" + std::to_string(modulus);
            case RingKind::ResidueRing: return "zm:" + std::to_string(modulus);
        }
        return "?";
    }
    bool is_field() const { return capability == Capability::Field; }
    bool is_finite() const { return kind == RingKind::PrimeField; }
};

namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// modular inverse via extended gcd; returns 0 when gcd(a, m) > 1
inline std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
    while (new_r != 0) {
        std::int64_t qt = r / new_r;
        std::int64_t tmp = t - qt * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - qt * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) return 0;
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

} // namespace detail

/// Moduli are capped so that products of two canonical representatives fit
/// in a uint64_t without overflow.
inline constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 31) - 1;

inline RingSpec ring_create(RingKind kind, std::uint64_t modulus = 0) {
    RingSpec spec;
    spec.kind = kind;
    switch (kind) {
        case RingKind::Rationals:
            if (modulus != 0) throw RingRejected("rationals take no modulus");
            spec.capability = Capability::Field;
            return spec;
        case RingKind::PrimeField:
            if (modulus < 2) throw RingRejected("modulus must be >= 2");
            if (modulus > kMaxModulus) throw RingRejected("modulus too large (max 2^31-1)");
            if (!detail::is_prime_u64(modulus))
                throw RingRejected("fp modulus " + std::to_string(modulus) + " is not prime");
            if (modulus == 2 || modulus == 3)
                throw RingRejected("ring rejected: 6 not invertible mod " + std::to_string(modulus));
            spec.modulus = modulus;
            spec.capability = Capability::Field;
            return spec;
        case RingKind::ResidueRing:
            if (modulus < 2) throw RingRejected("modulus must be >= 2");
            if (modulus > kMaxModulus) throw RingRejected("modulus too large (max 2^31-1)");
            if (std::gcd(modulus, std::uint64_t{6}) != 1)
                throw RingRejected("ring rejected: 6 not invertible mod " + std::to_string(modulus));
            spec.modulus = modulus;
            spec.capability = Capability::ReplayOnly;
            return spec;
    }
    throw RingRejected("unknown ring kind");
}

/// Parses the CLI ring grammar: "q" | "fp:P" | "zm:M".
inline RingSpec parse_ring(const std::string& text) {
    if (text == "q" || text == "Q") return ring_create(RingKind::Rationals);
    auto parse_modulus = [&](std::size_t off) {
        std::uint64_t m = 0;
        if (off >= text.size()) throw RingRejected("missing modulus in '" + text + "'");
        for (std::size_t i = off; i < text.size(); ++i) {
            if (text[i] < '0' || text[i] > '9') throw RingRejected("bad modulus in '" + text + "'");
            m = m * 10 + static_cast<std::uint64_t>(text[i] - '0');
            if (m > kMaxModulus) throw RingRejected("modulus too large (max 2^31-1)");
        }
        return m;
    };
    if (text.rfind("fp:", 0) == 0) return ring_create(RingKind::PrimeField, parse_modulus(3));
    if (text.rfind("zm:", 0) == 0) return ring_create(RingKind::ResidueRing, parse_modulus(3));
    throw RingRejected("unknown ring '" + text + "' (expected q, fp:P or zm:M)");
}

/// Exact rational coefficients. Elements are GMP rationals, which keep
/// themselves in lowest terms with positive denominator.
struct QRing {
    using Elem = mpq_class;
    static constexpr bool is_field = true;
    static constexpr bool is_finite = false;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_int(long v) const { return Elem(v); }
    Elem from_ratio(long num, long den) const {
        if (den == 0) throw NotInvertible("zero denominator");
        Elem q(num, den);
        q.canonicalize();
        return q;
    }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw NotInvertible("division by zero");
        return Elem(1) / a;
    }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    std::string str(const Elem& a) const { return a.get_str(); }

    /// Sampling convention: independent integer entries in [-3, 3].
    template <class Rng>
    Elem random_element(Rng& rng) const {
        return from_int(static_cast<long>(rng() % 7) - 3);
    }

    RingSpec spec() const { return ring_create(RingKind::Rationals); }
};

/// Prime field F_p with canonical representatives in [0, p). The modulus is
/// carried by the ring object, not the elements, so elements stay POD.
struct FpRing {
    using Elem = std::uint64_t;
    static constexpr bool is_field = true;
    static constexpr bool is_finite = true;

    std::uint64_t p;

    explicit FpRing(std::uint64_t modulus) : p(modulus) {}

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p; }
    Elem from_int(long v) const {
        long long r = static_cast<long long>(v) % static_cast<long long>(p);
        if (r < 0) r += static_cast<long long>(p);
        return static_cast<Elem>(r);
    }
    Elem from_ratio(long num, long den) const {
        Elem d = from_int(den);
        if (d == 0) throw NotInvertible("denominator not invertible mod " + std::to_string(p));
        return mul(from_int(num), inv(d));
    }
    Elem add(Elem a, Elem b) const {
        Elem s = a + b;
        return s >= p ? s - p : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
    Elem mul(Elem a, Elem b) const { return (a * b) % p; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
    Elem inv(Elem a) const {
        Elem r = detail::mod_inverse(a, p);
        if (r == 0) throw NotInvertible("division by zero mod " + std::to_string(p));
        return r;
    }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
    std::string str(Elem a) const { return std::to_string(a); }

    std::uint64_t field_size() const { return p; }

    template <class Rng>
    Elem random_element(Rng& rng) const {
        return static_cast<Elem>(rng() % p);
    }

    RingSpec spec() const { return ring_create(RingKind::PrimeField, p); }
};

/// Residue ring Z/m with gcd(m, 6) = 1. Replay-only: exact arithmetic is
/// available, elimination and rank computations are not.
struct ZmRing {
    using Elem = std::uint64_t;
    static constexpr bool is_field = false;
    static constexpr bool is_finite = true;

    std::uint64_t m;

    explicit ZmRing(std::uint64_t modulus) : m(modulus) {}

    Elem zero() const { return 0; }
    Elem one() const { return 1 % m; }
    Elem from_int(long v) const {
        long long r = static_cast<long long>(v) % static_cast<long long>(m);
        if (r < 0) r += static_cast<long long>(m);
        return static_cast<Elem>(r);
    }
    Elem from_ratio(long num, long den) const {
        Elem d = from_int(den);
        Elem di = detail::mod_inverse(d, m);
        if (di == 0) throw NotInvertible("denominator not invertible mod " + std::to_string(m));
        return mul(from_int(num), di);
    }
    Elem add(Elem a, Elem b) const {
        Elem s = a + b;
        return s >= m ? s - m : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + m - b; }
    Elem mul(Elem a, Elem b) const { return (a * b) % m; }
    Elem neg(Elem a) const { return a == 0 ? 0 : m - a; }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
    std::string str(Elem a) const { return std::to_string(a); }

    template <class Rng>
    Elem random_element(Rng& rng) const {
        return static_cast<Elem>(rng() % m);
    }

    RingSpec spec() const { return ring_create(RingKind::ResidueRing, m); }
};

} // namespace jordet
