#pragma once

// Group arithmetic, signals and index sets on (Z/NZ)^d, together with the
// unitary discrete Fourier transform normalization c = N^{-d/2}.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace apair {

using cplx = std::complex<double>;

/// Extended real exponent in [1, inf], with infinity kept as a distinct
/// state rather than a sentinel double.
class Exponent {
public:
    Exponent() = default;

    static Exponent finite(double v) {
        if (!(v >= 1.0) || std::isinf(v))
            throw std::invalid_argument("Exponent: need 1 <= p < inf, got " + std::to_string(v));
        Exponent e;
        e.value_ = v;
        return e;
    }

    static Exponent infinity() {
        Exponent e;
        e.inf_ = true;
        return e;
    }

    bool is_infinite() const { return inf_; }

    double value() const {
        if (inf_) throw std::logic_error("Exponent: value() on infinite exponent");
        return value_;
    }

    /// 1/p, with 1/inf = 0.
    double inv() const { return inf_ ? 0.0 : 1.0 / value_; }

    /// Conjugate exponent: 1/p + 1/p' = 1, with 1' = inf and inf' = 1.
    Exponent conjugate() const {
        if (inf_) return finite(1.0);
        if (value_ == 1.0) return infinity();
        return finite(value_ / (value_ - 1.0));
    }

    bool operator==(const Exponent& o) const {
        return inf_ == o.inf_ && (inf_ || value_ == o.value_);
    }
    bool operator!=(const Exponent& o) const { return !(*this == o); }

    std::string str() const { return inf_ ? "inf" : std::to_string(value_); }

private:
    double value_ = 2.0;
    bool inf_ = false;
};

struct ExponentPair {
    Exponent p;
    Exponent q;
};

/// The group (Z/NZ)^d with its cardinality N^d and Fourier normalization
/// c = N^{-d/2}.
class GroupSpec {
public:
    GroupSpec(std::int64_t modulus, std::int64_t dimension)
        : modulus_(modulus), dimension_(dimension) {
        if (modulus < 1) throw std::invalid_argument("GroupSpec: modulus must be positive");
        if (dimension < 1) throw std::invalid_argument("GroupSpec: dimension must be positive");
        cardinality_ = 1;
        for (std::int64_t i = 0; i < dimension; ++i) {
            if (cardinality_ > std::numeric_limits<std::int64_t>::max() / modulus)
                throw std::overflow_error("GroupSpec: N^d overflows int64");
            cardinality_ *= modulus;
        }
    }

    std::int64_t modulus() const { return modulus_; }
    std::int64_t dimension() const { return dimension_; }
    std::int64_t cardinality() const { return cardinality_; }

    /// c = N^{-d/2} = cardinality^{-1/2}.
    double normalization() const { return 1.0 / std::sqrt(double(cardinality_)); }

    bool operator==(const GroupSpec& o) const {
        return modulus_ == o.modulus_ && dimension_ == o.dimension_;
    }
    bool operator!=(const GroupSpec& o) const { return !(*this == o); }

    std::string str() const {
        return std::to_string(modulus_) + "x" + std::to_string(dimension_);
    }

private:
    std::int64_t modulus_;
    std::int64_t dimension_;
    std::int64_t cardinality_;
};

/// Row-major encoding: flat = ((c0*N + c1)*N + c2)... last coordinate fastest.
inline std::int64_t encode_index(std::span<const std::int64_t> coords, const GroupSpec& spec) {
    if (std::ssize(coords) != spec.dimension())
        throw std::invalid_argument("encode_index: coordinate count != dimension");
    const std::int64_t n = spec.modulus();
    std::int64_t flat = 0;
    for (std::int64_t c : coords) {
        std::int64_t r = c % n;
        if (r < 0) r += n;
        flat = flat * n + r;
    }
    return flat;
}

inline std::vector<std::int64_t> decode_index(std::int64_t flat, const GroupSpec& spec) {
    if (flat < 0 || flat >= spec.cardinality())
        throw std::invalid_argument("decode_index: flat index out of range");
    const std::int64_t n = spec.modulus();
    std::vector<std::int64_t> coords(std::size_t(spec.dimension()));
    for (std::int64_t a = spec.dimension() - 1; a >= 0; --a) {
        coords[std::size_t(a)] = flat % n;
        flat /= n;
    }
    return coords;
}

/// Componentwise sum mod N of two flat indices.
inline std::int64_t group_add(std::int64_t a, std::int64_t b, const GroupSpec& spec) {
    const std::int64_t n = spec.modulus();
    std::int64_t place = 1;
    std::int64_t result = 0;
    // digits in base N, last coordinate is the least significant digit
    for (std::int64_t i = 0; i < spec.dimension(); ++i) {
        std::int64_t da = a % n, db = b % n;
        a /= n;
        b /= n;
        result += ((da + db) % n) * place;
        place *= n;
    }
    return result;
}

/// <m, n> mod N with the row-major digit convention.
inline std::int64_t dot_mod(std::int64_t m, std::int64_t x, const GroupSpec& spec) {
    const std::int64_t n = spec.modulus();
    std::int64_t acc = 0;
    for (std::int64_t i = 0; i < spec.dimension(); ++i) {
        acc = (acc + (m % n) * (x % n)) % n;
        m /= n;
        x /= n;
    }
    return acc;
}

/// Complex-valued function on the group, stored in flat-index order.
class Signal {
public:
    Signal(GroupSpec spec, std::vector<cplx> values)
        : spec_(spec), values_(std::move(values)) {
        if (std::ssize(values_) != spec_.cardinality())
            throw std::invalid_argument("Signal: values length != cardinality");
    }

    static Signal zero(const GroupSpec& spec) {
        return Signal(spec, std::vector<cplx>(std::size_t(spec.cardinality())));
    }

    static Signal delta(const GroupSpec& spec, std::int64_t at) {
        Signal s = zero(spec);
        s.at(at) = 1.0;
        return s;
    }

    const GroupSpec& spec() const { return spec_; }
    const std::vector<cplx>& values() const { return values_; }
    std::vector<cplx>& values() { return values_; }

    cplx& at(std::int64_t i) { return values_.at(std::size_t(i)); }
    const cplx& at(std::int64_t i) const { return values_.at(std::size_t(i)); }

    std::int64_t size() const { return spec_.cardinality(); }

    bool all_finite() const {
        for (const cplx& v : values_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

private:
    GroupSpec spec_;
    std::vector<cplx> values_;
};

inline Signal operator+(const Signal& a, const Signal& b) {
    if (a.spec() != b.spec()) throw std::invalid_argument("Signal +: group mismatch");
    std::vector<cplx> v(a.values());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.values()[i];
    return Signal(a.spec(), std::move(v));
}

inline Signal operator-(const Signal& a, const Signal& b) {
    if (a.spec() != b.spec()) throw std::invalid_argument("Signal -: group mismatch");
    std::vector<cplx> v(a.values());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= b.values()[i];
    return Signal(a.spec(), std::move(v));
}

inline Signal operator*(cplx s, const Signal& a) {
    std::vector<cplx> v(a.values());
    for (cplx& x : v) x *= s;
    return Signal(a.spec(), std::move(v));
}

/// Sorted, deduplicated subset of flat indices in [0, N^d).
class IndexSet {
public:
    IndexSet(GroupSpec spec, std::vector<std::int64_t> members)
        : spec_(spec), members_(std::move(members)) {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
        if (!members_.empty() &&
            (members_.front() < 0 || members_.back() >= spec_.cardinality()))
            throw std::invalid_argument("IndexSet: member out of range");
    }

    static IndexSet empty(const GroupSpec& spec) { return IndexSet(spec, {}); }

    static IndexSet full(const GroupSpec& spec) {
        std::vector<std::int64_t> all(std::size_t(spec.cardinality()));
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = std::int64_t(i);
        return IndexSet(spec, std::move(all));
    }

    const GroupSpec& spec() const { return spec_; }
    const std::vector<std::int64_t>& members() const { return members_; }
    std::int64_t size() const { return std::ssize(members_); }
    bool is_empty() const { return members_.empty(); }

    bool contains(std::int64_t i) const {
        return std::binary_search(members_.begin(), members_.end(), i);
    }

    IndexSet complement() const {
        std::vector<std::int64_t> out;
        out.reserve(std::size_t(spec_.cardinality() - size()));
        std::size_t j = 0;
        for (std::int64_t i = 0; i < spec_.cardinality(); ++i) {
            if (j < members_.size() && members_[j] == i) {
                ++j;
            } else {
                out.push_back(i);
            }
        }
        return IndexSet(spec_, std::move(out));
    }

    bool operator==(const IndexSet& o) const {
        return spec_ == o.spec_ && members_ == o.members_;
    }

private:
    GroupSpec spec_;
    std::vector<std::int64_t> members_;
};

/// L^p norm over the whole group or a subset, counting measure, p in [1, inf].
inline double lp_norm(const Signal& f, const Exponent& p,
                      const IndexSet* subset = nullptr) {
    if (subset && subset->spec() != f.spec())
        throw std::invalid_argument("lp_norm: subset group mismatch");
    auto each = [&](auto&& fn) {
        if (subset) {
            for (std::int64_t i : subset->members()) fn(std::abs(f.at(i)));
        } else {
            for (const cplx& v : f.values()) fn(std::abs(v));
        }
    };
    if (p.is_infinite()) {
        double m = 0.0;
        each([&](double a) { m = std::max(m, a); });
        return m;
    }
    const double pv = p.value();
    if (pv == 2.0) {
        double s = 0.0;
        each([&](double a) { s += a * a; });
        return std::sqrt(s);
    }
    if (pv == 1.0) {
        double s = 0.0;
        each([&](double a) { s += a; });
        return s;
    }
    double s = 0.0;
    each([&](double a) { s += std::pow(a, pv); });
    return std::pow(s, 1.0 / pv);
}

inline double l2_norm(const Signal& f, const IndexSet* subset = nullptr) {
    return lp_norm(f, Exponent::finite(2.0), subset);
}

/// Random signal laws for test-vector generation.
struct RandomLaw {
    enum class Kind { complex_gaussian, unit_sphere, sparse };
    Kind kind = Kind::complex_gaussian;
    std::int64_t k = 0;                   // sparsity (sparse law)
    std::optional<IndexSet> support;      // frequency support (sparse law)

    static RandomLaw complex_gaussian() { return {}; }
    static RandomLaw unit_sphere() { return {Kind::unit_sphere, 0, std::nullopt}; }
    static RandomLaw sparse(std::int64_t k, IndexSet support) {
        return {Kind::sparse, k, std::move(support)};
    }
};

namespace detail {

inline std::vector<cplx> gaussian_vector(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> v(n);
    for (cplx& x : v) {
        double re = g(rng);
        double im = g(rng);
        x = cplx(re, im);
    }
    return v;
}

} // namespace detail

// random_signal is defined in fft.hpp (the sparse law needs the inverse DFT).

} // namespace apair
