#pragma once

// Unitary DFT on (Z/NZ)^d as d successive length-N transforms.
// Power-of-two lengths use an iterative radix-2 kernel; everything else goes
// through Bluestein's chirp-z reduction to a padded radix-2 transform.

#include "apair/group.hpp"

#include <numbers>

namespace apair {
namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// In-place radix-2 transform, unnormalized. inverse flips the twiddle sign.
inline void fft_pow2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n <= 1) return;
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / double(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                cplx u = a[i + j];
                cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

/// Bluestein chirp-z: length-n unnormalized transform for arbitrary n.
inline void fft_bluestein(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n <= 1) return;
    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;

    // chirp w[k] = exp(-i pi k^2 / n); k^2 reduced mod 2n keeps angles small
    const double sgn = inverse ? 1.0 : -1.0;
    std::vector<cplx> w(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t k2 = (k * k) % (2 * n);
        double ang = sgn * std::numbers::pi * double(k2) / double(n);
        w[k] = cplx(std::cos(ang), std::sin(ang));
    }

    std::vector<cplx> x(m), y(m);
    for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * w[k];
    y[0] = std::conj(w[0]);
    for (std::size_t k = 1; k < n; ++k) y[k] = y[m - k] = std::conj(w[k]);

    fft_pow2(x, false);
    fft_pow2(y, false);
    for (std::size_t i = 0; i < m; ++i) x[i] *= y[i];
    fft_pow2(x, true);
    const double scale = 1.0 / double(m);
    for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * w[k] * scale;
}

inline void fft_any(std::vector<cplx>& a, bool inverse) {
    if (is_pow2(a.size()))
        fft_pow2(a, inverse);
    else
        fft_bluestein(a, inverse);
}

/// Apply the length-N transform along every axis of the row-major array.
inline void transform_axes(std::vector<cplx>& data, const GroupSpec& spec, bool inverse) {
    const std::size_t n = std::size_t(spec.modulus());
    const std::size_t total = data.size();
    if (n == 1) return;
    std::vector<cplx> line(n);
    // axis a has stride N^(d-1-a); iterate over all lines of that axis
    std::size_t stride = total / n; // axis 0 first
    for (std::int64_t axis = 0; axis < spec.dimension(); ++axis) {
        const std::size_t block = stride * n;
        for (std::size_t base = 0; base < total; base += block) {
            for (std::size_t off = 0; off < stride; ++off) {
                for (std::size_t k = 0; k < n; ++k) line[k] = data[base + off + k * stride];
                fft_any(line, inverse);
                for (std::size_t k = 0; k < n; ++k) data[base + off + k * stride] = line[k];
            }
        }
        stride /= n;
    }
}

} // namespace detail

/// f̂(m) = N^{-d/2} Σ_n f(n) e^{-2πi<m,n>/N}
inline Signal dft(const Signal& f) {
    std::vector<cplx> v(f.values());
    detail::transform_axes(v, f.spec(), false);
    const double c = f.spec().normalization();
    for (cplx& x : v) x *= c;
    return Signal(f.spec(), std::move(v));
}

/// f(n) = N^{-d/2} Σ_m F(m) e^{+2πi<m,n>/N}
inline Signal idft(const Signal& F) {
    std::vector<cplx> v(F.values());
    detail::transform_axes(v, F.spec(), true);
    const double c = F.spec().normalization();
    for (cplx& x : v) x *= c;
    return Signal(F.spec(), std::move(v));
}

/// Deterministic random signal for a fixed seed.
inline Signal random_signal(const GroupSpec& spec, std::uint64_t seed, const RandomLaw& law) {
    std::mt19937_64 rng(seed);
    const std::size_t n = std::size_t(spec.cardinality());
    switch (law.kind) {
    case RandomLaw::Kind::complex_gaussian:
        return Signal(spec, detail::gaussian_vector(n, rng));
    case RandomLaw::Kind::unit_sphere: {
        for (int attempt = 0; attempt < 64; ++attempt) {
            Signal s(spec, detail::gaussian_vector(n, rng));
            double norm = l2_norm(s);
            if (norm > 1e-12) return cplx(1.0 / norm) * s;
        }
        throw std::runtime_error("random_signal: unit-sphere normalization failed");
    }
    case RandomLaw::Kind::sparse: {
        if (!law.support) throw std::invalid_argument("random_signal: sparse law needs a support");
        if (law.support->spec() != spec)
            throw std::invalid_argument("random_signal: support group mismatch");
        if (law.k > spec.cardinality())
            throw std::invalid_argument("random_signal: k exceeds cardinality");
        if (law.support->size() != law.k)
            throw std::invalid_argument("random_signal: support size != k");
        Signal spectrum = Signal::zero(spec);
        std::normal_distribution<double> g(0.0, 1.0);
        for (std::int64_t i : law.support->members()) {
            cplx v;
            do {
                v = cplx(g(rng), g(rng));
            } while (std::abs(v) < 1e-9);
            spectrum.at(i) = v;
        }
        return idft(spectrum);
    }
    }
    throw std::invalid_argument("random_signal: unknown law");
}

} // namespace apair
