#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "irpolar/channel.hpp"
#include "irpolar/rng.hpp"

using namespace irpolar;

namespace {

DiscreteChannel random_table_channel(Rng& rng, int k) {
    std::vector<double> p0(k), p1(k);
    for (auto* row : {&p0, &p1}) {
        double s = 0.0;
        for (auto& p : *row) {
            p = rng.uniform01() + 1e-6;
            s += p;
        }
        for (auto& p : *row) p /= s;
        // renormalize exactly enough for the 1e-12 row-sum invariant
        double s2 = 0.0;
        for (double p : *row) s2 += p;
        (*row)[0] += 1.0 - s2;
    }
    return DiscreteChannel(std::move(p0), std::move(p1));
}

std::string write_temp(const std::string& name, const std::string& content) {
    const auto path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream out(path, std::ios::trunc);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("channel invariants are enforced at construction") {
    CHECK_THROWS_AS(DiscreteChannel({0.5, 0.4}, {0.5, 0.5}), ConfigError);       // row sum
    CHECK_THROWS_AS(DiscreteChannel({1.5, -0.5}, {0.5, 0.5}), ConfigError);      // negative
    CHECK_THROWS_AS(DiscreteChannel({"a", "a"}, {0.5, 0.5}, {0.5, 0.5}), ConfigError);
    CHECK_THROWS_AS(ErasureChannel(1.5), ConfigError);
    CHECK_NOTHROW(DiscreteChannel({0.5, 0.5}, {0.25, 0.75}));
}

TEST_CASE("bhattacharyya examples") {
    CHECK(bhattacharyya(make_bec(0.0)) == doctest::Approx(0.0).epsilon(1e-12));
    for (double e : {0.1, 0.37, 0.9})
        CHECK(bhattacharyya(make_bec(e)) == doctest::Approx(e).epsilon(1e-12));
    // BSC(p): Z = 2 sqrt(p(1-p))
    CHECK(bhattacharyya(make_bsc(0.1)) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("capacity examples") {
    for (double e : {0.0, 0.25, 1.0})
        CHECK(capacity(make_bec(e)) == doctest::Approx(1.0 - e).epsilon(1e-12));
    // BSC(0.11): 1 - h2(0.11)
    const double p = 0.11;
    const double h2 = -p * std::log2(p) - (1 - p) * std::log2(1 - p);
    CHECK(capacity(make_bsc(p)) == doctest::Approx(1.0 - h2).epsilon(1e-12));
    CHECK(capacity(make_bsc(p)) == doctest::Approx(0.5002).epsilon(1e-3));
}

TEST_CASE("eq. 15 bounds hold for random channels") {
    Rng rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        DiscreteChannel ch = [&]() {
            switch (trial % 3) {
                case 0: return make_bec(rng.uniform01());
                case 1: return make_bsc(rng.uniform01());
                default: return random_table_channel(rng, 2 + static_cast<int>(rng.below(4)));
            }
        }();
        const auto s = stats(ch);
        CHECK(s.bhatta >= -1e-12);
        CHECK(s.bhatta <= 1.0 + 1e-12);
        CHECK(std::log2(2.0 / (1.0 + s.bhatta)) <= s.capacity + 1e-9);
        CHECK(s.capacity <= std::sqrt(std::max(0.0, 1.0 - s.bhatta * s.bhatta)) + 1e-9);
    }
}

TEST_CASE("capacity and bhattacharyya invariant under output permutation") {
    Rng rng(7);
    DiscreteChannel ch = random_table_channel(rng, 5);
    std::vector<double> p0 = ch.row0(), p1 = ch.row1();
    // rotate
    std::rotate(p0.begin(), p0.begin() + 2, p0.end());
    std::rotate(p1.begin(), p1.begin() + 2, p1.end());
    DiscreteChannel rot(p0, p1);
    CHECK(capacity(rot) == doctest::Approx(capacity(ch)).epsilon(1e-12));
    CHECK(bhattacharyya(rot) == doctest::Approx(bhattacharyya(ch)).epsilon(1e-12));
}

TEST_CASE("degenerate BECs") {
    CHECK(degenerate_bec(DegenerateBec::eps0).eps == 0.0);
    CHECK(degenerate_bec(DegenerateBec::eps1).eps == 1.0);
    CHECK(capacity(degenerate_bec(DegenerateBec::eps1).expand()) == doctest::Approx(0.0));
}

TEST_CASE("cascade with degenerate BECs") {
    const auto w = make_bsc(0.2);
    SUBCASE("eps0 passes through unchanged") {
        const auto c = cascade(w, degenerate_bec(DegenerateBec::eps0));
        REQUIRE(c.alphabet_size() == w.alphabet_size());
        for (std::size_t i = 0; i < c.alphabet_size(); ++i) {
            CHECK(c.row0()[i] == w.row0()[i]);
            CHECK(c.row1()[i] == w.row1()[i]);
        }
    }
    SUBCASE("eps1 erases everything") {
        const auto c = cascade(w, degenerate_bec(DegenerateBec::eps1));
        REQUIRE(c.alphabet_size() == 1);
        CHECK(c.label(0) == "?");
        CHECK(c.row0()[0] == 1.0);
        CHECK(capacity(c) == doctest::Approx(0.0));
    }
}

TEST_CASE("erasure cascade composes erasure probabilities") {
    const auto a = make_bec(0.2);
    const auto c = cascade(a, ErasureChannel(0.5));
    const auto eps = bec_erasure_probability(c);
    REQUIRE(eps.has_value());
    CHECK(*eps == doctest::Approx(0.6).epsilon(1e-12));  // 1 - 0.8*0.5
    CHECK(capacity(c) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("cascade is associative on erasure chains") {
    const auto a = make_bec(0.15);
    const ErasureChannel e1(0.4), e2(0.25);
    const auto left = cascade(cascade(a, e1), e2);
    const auto right = cascade(a, cascade(e1, e2));
    REQUIRE(left.alphabet_size() == right.alphabet_size());
    for (std::size_t i = 0; i < left.alphabet_size(); ++i) {
        CHECK(left.row0()[i] == doctest::Approx(right.row0()[i]).epsilon(1e-12));
        CHECK(left.row1()[i] == doctest::Approx(right.row1()[i]).epsilon(1e-12));
    }
}

TEST_CASE("data processing: cascade cannot raise capacity") {
    Rng rng(55);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = make_bsc(rng.uniform01() * 0.5);
        const auto b = ErasureChannel(rng.uniform01());
        const auto c = cascade(a, b);
        CHECK(capacity(c) <= std::min(capacity(a), 1.0 - b.eps) + 1e-9);
    }
}

TEST_CASE("general cascade requires binary-labeled outputs") {
    const auto bec = make_bec(0.3);  // has "?" output
    CHECK_THROWS_AS(cascade(bec, make_bsc(0.1)), ConfigError);
    const auto c = cascade(make_bsc(0.1), make_bsc(0.2));
    // BSC(0.1) . BSC(0.2) = BSC(0.1*0.8 + 0.9*0.2)
    CHECK(c.row0()[1] == doctest::Approx(0.26).epsilon(1e-12));
}

TEST_CASE("bec detection") {
    CHECK(bec_erasure_probability(make_bec(0.42)).value() == doctest::Approx(0.42));
    CHECK(!bec_erasure_probability(make_bsc(0.1)).has_value());
    CHECK(bec_erasure_probability(DiscreteChannel({"?"}, {1.0}, {1.0})).value() ==
          doctest::Approx(1.0));
}

TEST_CASE("canonicalized merges equivalent outputs and preserves stats") {
    // two erasure columns and a zero column
    DiscreteChannel ch({0.3, 0.0, 0.2, 0.5, 0.0}, {0.0, 0.0, 0.2, 0.5, 0.3});
    const auto c = canonicalized(ch);
    CHECK(c.alphabet_size() == 3);  // revealing 0, merged erasures, revealing 1
    CHECK(capacity(c) == doctest::Approx(capacity(ch)).epsilon(1e-12));
    CHECK(bhattacharyya(c) == doctest::Approx(bhattacharyya(ch)).epsilon(1e-12));
}

TEST_CASE("channel profile files") {
    SUBCASE("bec and bsc kinds") {
        const auto p = write_temp("ch_bec.chan", "kind bec\neps 0.25\n");
        CHECK(bec_erasure_probability(load_channel_file(p)).value() == doctest::Approx(0.25));
        const auto q = write_temp("ch_bsc.chan", "# comment\nkind bsc\np 0.1\n");
        CHECK(bhattacharyya(load_channel_file(q)) == doctest::Approx(0.6));
    }
    SUBCASE("explicit table") {
        const auto p = write_temp("ch_table.chan",
                                  "kind table\noutputs a b c\nrow0 0.7 0.2 0.1\nrow1 0.1 0.2 0.7\n");
        const auto ch = load_channel_file(p);
        CHECK(ch.alphabet_size() == 3);
        CHECK(ch.label(2) == "c");
    }
    SUBCASE("row sum failure carries the line number") {
        const auto p = write_temp("ch_bad.chan",
                                  "kind table\noutputs a b\nrow0 0.7 0.2\nrow1 0.5 0.5\n");
        try {
            load_channel_file(p);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(":3:") != std::string::npos);
        }
    }
    SUBCASE("inline specs") {
        CHECK(capacity(parse_channel_spec("noiseless")) == doctest::Approx(1.0));
        CHECK(bec_erasure_probability(parse_channel_spec("bec:0.5")).value() ==
              doctest::Approx(0.5));
        CHECK_THROWS_AS(parse_channel_spec("laplace:0.1"), ConfigError);
    }
}
