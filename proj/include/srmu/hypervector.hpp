#pragma once

// Complex phasor hypervector algebra (FHRR flavor): generation, binding,
// unbinding, bundling, scaling, similarity, norm.
//
// Binding is elementwise complex multiplication; unbinding multiplies by the
// conjugate of the key (exact inverse when the key is a phasor). Bundling is
// componentwise addition. Similarity is the modulus of the Hermitian inner
// product over the product of L2 norms, so it is invariant to scale and to a
// global phase.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "srmu/rng.hpp"

namespace srmu {

using Complex = std::complex<double>;

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown by cosine_sim on zero-norm input; callers implementing the
// zero-norm guard catch this and substitute s = 0.
struct ZeroNormError : std::domain_error {
    using std::domain_error::domain_error;
};

class Hypervector {
public:
    Hypervector() = default;

    explicit Hypervector(std::size_t dim) : components_(dim) {
        if (dim == 0) throw std::invalid_argument("Hypervector: dim must be >= 1");
    }

    explicit Hypervector(std::vector<Complex> components)
        : components_(std::move(components)) {
        if (components_.empty())
            throw std::invalid_argument("Hypervector: dim must be >= 1");
    }

    std::size_t dim() const { return components_.size(); }

    Complex& operator[](std::size_t i) { return components_[i]; }
    const Complex& operator[](std::size_t i) const { return components_[i]; }

    const std::vector<Complex>& components() const { return components_; }
    std::vector<Complex>& components() { return components_; }

    bool operator==(const Hypervector& other) const = default;

private:
    std::vector<Complex> components_;
};

inline void require_same_dim(const Hypervector& a, const Hypervector& b,
                             const char* op) {
    if (a.dim() != b.dim())
        throw DimensionMismatch(std::string(op) + ": dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()) + ")");
}

// Random phasor vector: each component e^{i*theta}, theta ~ Uniform[0, 2pi).
inline Hypervector random_phasor(std::size_t dim, Rng& rng) {
    if (dim == 0) throw std::invalid_argument("random_phasor: dim must be >= 1");
    Hypervector out(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const double theta = rng.uniform01() * 2.0 * M_PI;
        out[j] = Complex(std::cos(theta), std::sin(theta));
    }
    return out;
}

inline Hypervector zero_vector(std::size_t dim) { return Hypervector(dim); }

inline Hypervector bind(const Hypervector& a, const Hypervector& b) {
    require_same_dim(a, b, "bind");
    Hypervector out(a.dim());
    for (std::size_t j = 0; j < a.dim(); ++j) out[j] = a[j] * b[j];
    return out;
}

// Unbind by conjugate multiplication; exact inverse only for phasor keys.
inline Hypervector unbind(const Hypervector& m, const Hypervector& k) {
    require_same_dim(m, k, "unbind");
    Hypervector out(m.dim());
    for (std::size_t j = 0; j < m.dim(); ++j) out[j] = m[j] * std::conj(k[j]);
    return out;
}

inline Hypervector bundle(const Hypervector& a, const Hypervector& b) {
    require_same_dim(a, b, "bundle");
    Hypervector out(a.dim());
    for (std::size_t j = 0; j < a.dim(); ++j) out[j] = a[j] + b[j];
    return out;
}

inline void bundle_into(Hypervector& acc, const Hypervector& x) {
    require_same_dim(acc, x, "bundle");
    for (std::size_t j = 0; j < acc.dim(); ++j) acc[j] += x[j];
}

inline Hypervector scale(const Hypervector& a, double c) {
    Hypervector out(a.dim());
    for (std::size_t j = 0; j < a.dim(); ++j) out[j] = a[j] * c;
    return out;
}

inline double l2_norm(const Hypervector& a) {
    double sum = 0.0;
    for (std::size_t j = 0; j < a.dim(); ++j) sum += std::norm(a[j]);
    return std::sqrt(sum);
}

// |<a, b>| / (||a|| * ||b||), Hermitian inner product. In [0, 1] by
// Cauchy-Schwarz. Throws ZeroNormError when either input has zero norm.
inline double cosine_sim(const Hypervector& a, const Hypervector& b) {
    require_same_dim(a, b, "cosine_sim");
    Complex inner(0.0, 0.0);
    double na = 0.0, nb = 0.0;
    for (std::size_t j = 0; j < a.dim(); ++j) {
        inner += a[j] * std::conj(b[j]);
        na += std::norm(a[j]);
        nb += std::norm(b[j]);
    }
    if (na <= 0.0 || nb <= 0.0)
        throw ZeroNormError("cosine_sim: zero-norm input");
    return std::abs(inner) / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace srmu
