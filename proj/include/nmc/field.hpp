#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace nmc {

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// A prime p < 2^64, checked at construction.
class PrimeModulus {
public:
    explicit PrimeModulus(std::uint64_t p);

    std::uint64_t value() const noexcept { return p_; }

    friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

private:
    std::uint64_t p_;
};

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Element of F_p in canonical form 0 <= value < p.
class FieldElement {
public:
    FieldElement(PrimeModulus modulus, std::uint64_t value);

    std::uint64_t value() const noexcept { return value_; }
    PrimeModulus modulus() const noexcept { return modulus_; }
    std::uint64_t p() const noexcept { return modulus_.value(); }
    bool is_zero() const noexcept { return value_ == 0; }

    friend bool operator==(const FieldElement&, const FieldElement&) = default;

private:
    friend class FieldVector;
    friend FieldElement fe_add(const FieldElement&, const FieldElement&);
    friend FieldElement fe_sub(const FieldElement&, const FieldElement&);
    friend FieldElement fe_mul(const FieldElement&, const FieldElement&);
    friend FieldElement fe_neg(const FieldElement&);
    friend FieldElement fe_inv(const FieldElement&);

    struct Raw {};
    FieldElement(Raw, PrimeModulus m, std::uint64_t v) : modulus_(m), value_(v) {}

    PrimeModulus modulus_;
    std::uint64_t value_;
};

FieldElement fe_add(const FieldElement& a, const FieldElement& b);
FieldElement fe_sub(const FieldElement& a, const FieldElement& b);
FieldElement fe_mul(const FieldElement& a, const FieldElement& b);
FieldElement fe_neg(const FieldElement& a);
/// Throws InversionOfZero for a == 0.
FieldElement fe_inv(const FieldElement& a);

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return fe_add(a, b); }
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) { return fe_sub(a, b); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return fe_mul(a, b); }

/// Point of F_p^{t+1}; coordinates stored canonically, one shared modulus.
class FieldVector {
public:
    FieldVector(PrimeModulus modulus, std::vector<std::uint64_t> coords);
    FieldVector(PrimeModulus modulus, std::initializer_list<std::uint64_t> coords)
        : FieldVector(modulus, std::vector<std::uint64_t>(coords)) {}

    static FieldVector zero(PrimeModulus modulus, std::size_t length);

    std::size_t size() const noexcept { return coords_.size(); }
    std::uint64_t p() const noexcept { return modulus_.value(); }
    PrimeModulus modulus() const noexcept { return modulus_; }
    FieldElement operator[](std::size_t i) const { return FieldElement(FieldElement::Raw{}, modulus_, coords_[i]); }
    std::span<const std::uint64_t> coords() const noexcept { return coords_; }

    std::string to_string() const;  // "c0,c1,...,ct"

    friend bool operator==(const FieldVector&, const FieldVector&) = default;

private:
    friend FieldVector vec_add(const FieldVector&, const FieldVector&);
    friend FieldVector vec_sub(const FieldVector&, const FieldVector&);
    friend FieldVector vec_neg(const FieldVector&);

    struct Raw {};
    FieldVector(Raw, PrimeModulus m, std::vector<std::uint64_t> c) : modulus_(m), coords_(std::move(c)) {}

    PrimeModulus modulus_;
    std::vector<std::uint64_t> coords_;
};

FieldVector vec_add(const FieldVector& u, const FieldVector& v);
FieldVector vec_sub(const FieldVector& u, const FieldVector& v);
FieldVector vec_neg(const FieldVector& u);

}  // namespace nmc
