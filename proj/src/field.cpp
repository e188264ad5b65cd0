#include "nmc/field.hpp"

#include "nmc/error.hpp"

#include <array>
#include <sstream>

namespace nmc {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t q : bases) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // The first twelve primes as witnesses are exact below 3.3e24.
    for (std::uint64_t a : bases) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(p) {
    if (!is_prime(p)) throw ParameterError("modulus " + std::to_string(p) + " is not prime");
}

FieldElement::FieldElement(PrimeModulus modulus, std::uint64_t value)
    : modulus_(modulus), value_(value % modulus.value()) {}

namespace {

std::uint64_t common_modulus(const FieldElement& a, const FieldElement& b) {
    if (a.p() != b.p()) {
        throw UsageError("field elements over different moduli (" + std::to_string(a.p()) + " vs " +
                         std::to_string(b.p()) + ")");
    }
    return a.p();
}

std::uint64_t add_raw(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    // a, b < p < 2^64: detect wraparound instead of widening.
    std::uint64_t s = a + b;
    if (s < a || s >= p) s -= p;
    return s;
}

std::uint64_t sub_raw(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a >= b ? a - b : a + (p - b); }

}  // namespace

FieldElement fe_add(const FieldElement& a, const FieldElement& b) {
    const auto p = common_modulus(a, b);
    return FieldElement(FieldElement::Raw{}, a.modulus_, add_raw(a.value_, b.value_, p));
}

FieldElement fe_sub(const FieldElement& a, const FieldElement& b) {
    const auto p = common_modulus(a, b);
    return FieldElement(FieldElement::Raw{}, a.modulus_, sub_raw(a.value_, b.value_, p));
}

FieldElement fe_mul(const FieldElement& a, const FieldElement& b) {
    const auto p = common_modulus(a, b);
    return FieldElement(FieldElement::Raw{}, a.modulus_, mul_mod(a.value_, b.value_, p));
}

FieldElement fe_neg(const FieldElement& a) {
    return FieldElement(FieldElement::Raw{}, a.modulus_, sub_raw(0, a.value_, a.p()));
}

FieldElement fe_inv(const FieldElement& a) {
    if (a.value_ == 0) throw InversionOfZero();
    // Fermat: a^(p-2) = a^-1 for prime p.
    return FieldElement(FieldElement::Raw{}, a.modulus_, pow_mod(a.value_, a.p() - 2, a.p()));
}

FieldVector::FieldVector(PrimeModulus modulus, std::vector<std::uint64_t> coords)
    : modulus_(modulus), coords_(std::move(coords)) {
    for (auto& c : coords_) c %= modulus_.value();
}

FieldVector FieldVector::zero(PrimeModulus modulus, std::size_t length) {
    return FieldVector(Raw{}, modulus, std::vector<std::uint64_t>(length, 0));
}

std::string FieldVector::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) os << ',';
        os << coords_[i];
    }
    return os.str();
}

namespace {

std::uint64_t check_shape(const FieldVector& u, const FieldVector& v) {
    if (u.p() != v.p()) throw UsageError("field vectors over different moduli");
    if (u.size() != v.size()) {
        throw UsageError("field vector length mismatch (" + std::to_string(u.size()) + " vs " +
                         std::to_string(v.size()) + ")");
    }
    return u.p();
}

}  // namespace

FieldVector vec_add(const FieldVector& u, const FieldVector& v) {
    const auto p = check_shape(u, v);
    std::vector<std::uint64_t> out(u.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = add_raw(u.coords_[i], v.coords_[i], p);
    return FieldVector(FieldVector::Raw{}, u.modulus_, std::move(out));
}

FieldVector vec_sub(const FieldVector& u, const FieldVector& v) {
    const auto p = check_shape(u, v);
    std::vector<std::uint64_t> out(u.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = sub_raw(u.coords_[i], v.coords_[i], p);
    return FieldVector(FieldVector::Raw{}, u.modulus_, std::move(out));
}

FieldVector vec_neg(const FieldVector& u) {
    std::vector<std::uint64_t> out(u.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = sub_raw(0, u.coords_[i], u.p());
    return FieldVector(FieldVector::Raw{}, u.modulus_, std::move(out));
}

}  // namespace nmc
