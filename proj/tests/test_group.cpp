#include "apair/fft.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace apair;

TEST_CASE("group spec basics") {
    GroupSpec z16(16, 1);
    CHECK(z16.cardinality() == 16);
    CHECK(z16.str() == "16x1");
    GroupSpec z4sq(4, 2);
    CHECK(z4sq.cardinality() == 16);
    CHECK(std::abs(z4sq.normalization() * std::sqrt(16.0) - 1.0) < 1e-15);
    CHECK_THROWS_AS(GroupSpec(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(GroupSpec(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(GroupSpec(1000000, 7), std::overflow_error);
}

TEST_CASE("index encoding is row-major") {
    GroupSpec z4sq(4, 2);
    std::vector<std::int64_t> zero{0, 0}, mid{1, 2}, neg{-3, 6};
    CHECK(encode_index(zero, z4sq) == 0);
    CHECK(encode_index(mid, z4sq) == 6);
    CHECK(encode_index(neg, z4sq) == 6); // reduced mod 4
    CHECK(decode_index(15, z4sq) == std::vector<std::int64_t>{3, 3});
    for (std::int64_t i = 0; i < 16; ++i)
        CHECK(encode_index(decode_index(i, z4sq), z4sq) == i);
    std::vector<std::int64_t> bad{1};
    CHECK_THROWS_AS(encode_index(bad, z4sq), std::invalid_argument);
    CHECK_THROWS_AS(decode_index(16, z4sq), std::invalid_argument);
}

TEST_CASE("group addition and dot product") {
    GroupSpec z4sq(4, 2);
    std::vector<std::int64_t> a{3, 2}, b{2, 3};
    std::vector<std::int64_t> sum{1, 1};
    CHECK(group_add(encode_index(a, z4sq), encode_index(b, z4sq), z4sq) ==
          encode_index(sum, z4sq));
    // <(1,2),(3,1)> = 3 + 2 = 5 = 1 mod 4
    std::vector<std::int64_t> m{1, 2}, x{3, 1};
    CHECK(dot_mod(encode_index(m, z4sq), encode_index(x, z4sq), z4sq) == 1);
}

TEST_CASE("exponent conventions") {
    CHECK(Exponent::finite(1.0).conjugate().is_infinite());
    CHECK(Exponent::infinity().conjugate().value() == 1.0);
    CHECK(Exponent::finite(2.0).conjugate().value() == 2.0);
    CHECK(std::abs(Exponent::finite(4.0 / 3.0).conjugate().value() - 4.0) < 1e-14);
    CHECK(Exponent::infinity().inv() == 0.0);
    CHECK_THROWS_AS(Exponent::finite(0.5), std::invalid_argument);
}

TEST_CASE("index set invariants") {
    GroupSpec z8(8, 1);
    IndexSet s(z8, {5, 1, 5, 3});
    CHECK(s.members() == std::vector<std::int64_t>{1, 3, 5});
    CHECK(s.contains(3));
    CHECK(!s.contains(0));
    CHECK(s.complement().complement() == s);
    CHECK(IndexSet::full(z8).complement().is_empty());
    CHECK_THROWS_AS(IndexSet(z8, {8}), std::invalid_argument);
}

TEST_CASE("dft closed forms") {
    GroupSpec z8(8, 1);
    Signal d0 = Signal::delta(z8, 0);
    Signal d0hat = dft(d0);
    const double c = 1.0 / std::sqrt(8.0);
    for (std::int64_t i = 0; i < 8; ++i)
        CHECK(std::abs(d0hat.at(i) - cplx(c)) < 1e-14);

    Signal ones(z8, std::vector<cplx>(8, cplx(1.0)));
    Signal ones_hat = dft(ones);
    CHECK(std::abs(ones_hat.at(0) - cplx(std::sqrt(8.0))) < 1e-13);
    for (std::int64_t i = 1; i < 8; ++i)
        CHECK(std::abs(ones_hat.at(i)) < 1e-13);
}

TEST_CASE("fft matches the quadratic oracle") {
    for (auto [n, d] : std::vector<std::pair<std::int64_t, std::int64_t>>{
             {8, 1}, {16, 1}, {4, 2}, {3, 2}, {5, 1}, {12, 1}, {6, 2}, {3, 3}, {7, 1}}) {
        GroupSpec spec(n, d);
        Signal f = random_signal(spec, 17, RandomLaw::complex_gaussian());
        Signal fast = dft(f);
        Signal slow = oracle::direct_dft(f);
        for (std::int64_t i = 0; i < spec.cardinality(); ++i)
            CHECK(std::abs(fast.at(i) - slow.at(i)) < 1e-10);
        Signal fast_inv = idft(f);
        Signal slow_inv = oracle::direct_dft(f, true);
        for (std::int64_t i = 0; i < spec.cardinality(); ++i)
            CHECK(std::abs(fast_inv.at(i) - slow_inv.at(i)) < 1e-10);
    }
}

TEST_CASE("unitarity and round trip") {
    for (auto [n, d] : std::vector<std::pair<std::int64_t, std::int64_t>>{
             {8, 1}, {16, 1}, {4, 2}, {3, 3}, {12, 1}}) {
        GroupSpec spec(n, d);
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            Signal f = random_signal(spec, seed, RandomLaw::complex_gaussian());
            double nf = l2_norm(f);
            Signal fhat = dft(f);
            CHECK(std::abs(l2_norm(fhat) - nf) <= 1e-12 * nf);
            Signal back = idft(fhat);
            CHECK(l2_norm(back - f) <= 1e-12 * nf);
        }
    }
}

TEST_CASE("lp norms") {
    GroupSpec z2(2, 1);
    Signal f(z2, {cplx(3.0), cplx(0.0, 4.0)});
    CHECK(std::abs(lp_norm(f, Exponent::finite(2.0)) - 5.0) < 1e-14);

    GroupSpec z4(4, 1);
    Signal ones(z4, std::vector<cplx>(4, cplx(1.0)));
    CHECK(std::abs(lp_norm(ones, Exponent::finite(4.0 / 3.0)) - std::pow(4.0, 0.75)) < 1e-13);

    GroupSpec z3(3, 1);
    Signal g(z3, {cplx(1.0), cplx(-2.0), cplx(0.0)});
    IndexSet sub(z3, {0, 2});
    CHECK(lp_norm(g, Exponent::infinity(), &sub) == 1.0);
    IndexSet none = IndexSet::empty(z3);
    CHECK(lp_norm(g, Exponent::finite(2.0), &none) == 0.0);
}

TEST_CASE("holder monotonicity on counting measure") {
    GroupSpec z16(16, 1);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Signal f = random_signal(z16, seed, RandomLaw::complex_gaussian());
        double n1 = lp_norm(f, Exponent::finite(1.0));
        double n43 = lp_norm(f, Exponent::finite(4.0 / 3.0));
        double n2 = lp_norm(f, Exponent::finite(2.0));
        double n4 = lp_norm(f, Exponent::finite(4.0));
        double ninf = lp_norm(f, Exponent::infinity());
        CHECK(n1 >= n43);
        CHECK(n43 >= n2);
        CHECK(n2 >= n4);
        CHECK(n4 >= ninf);
    }
}

TEST_CASE("random signal laws") {
    GroupSpec z8(8, 1);
    Signal a = random_signal(z8, 1, RandomLaw::complex_gaussian());
    Signal b = random_signal(z8, 1, RandomLaw::complex_gaussian());
    CHECK(a.values() == b.values()); // bitwise determinism

    Signal u = random_signal(z8, 5, RandomLaw::unit_sphere());
    CHECK(std::abs(l2_norm(u) - 1.0) <= 1e-12);

    IndexSet supp(z8, {0});
    Signal sp = random_signal(z8, 9, RandomLaw::sparse(1, supp));
    Signal sp_hat = dft(sp);
    std::int64_t nnz = 0;
    for (std::int64_t i = 0; i < 8; ++i)
        if (std::abs(sp_hat.at(i)) > 1e-12) ++nnz;
    CHECK(nnz == 1);
    // single character has constant modulus
    double m0 = std::abs(sp.at(0));
    for (std::int64_t i = 1; i < 8; ++i) CHECK(std::abs(std::abs(sp.at(i)) - m0) < 1e-12);

    CHECK_THROWS_AS(random_signal(z8, 0, RandomLaw::sparse(2, supp)), std::invalid_argument);
}
