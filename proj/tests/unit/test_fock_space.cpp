#include <doctest.h>

#include <stdexcept>

#include "bogolab/fock_space.hpp"

using namespace bogolab;

TEST_CASE("single-mode enumeration") {
    const FockSpace space({{{0, 0, 0}, ModeTag::Condensate, 3}}, 10);
    CHECK(space.dim() == 4);
    for (std::size_t j = 0; j < 4; ++j) {
        const auto idx = space.index_of(space.occupation(j));
        REQUIRE(idx.has_value());
        CHECK(*idx == j);  // index composed with basis is the identity
    }
}

TEST_CASE("total cap trims the enumeration") {
    const FockSpace space({{{0, 0, 1}, ModeTag::Shell, 4}, {{0, 0, -1}, ModeTag::Shell, 4}}, 3);
    // occupations (n1, n2) with n1 + n2 <= 3: 10 states
    CHECK(space.dim() == 10);
    Occupation over = {2, 2};
    CHECK_FALSE(space.index_of(over).has_value());
}

TEST_CASE("each occupation appears exactly once") {
    const ToyLayout toy = default_toy_layout();
    const FockSpace space(toy.modes, toy.total_cap);
    CHECK(space.dim() > 1000);
    CHECK(space.dim() < 20000);  // the toy-scale design bound
    for (std::size_t j = 0; j < space.dim(); ++j) {
        int total = 0;
        for (int m = 0; m < space.n_modes(); ++m) {
            const int n = space.occupation(j)[std::size_t(m)];
            CHECK(n <= space.mode(m).cap);
            total += n;
        }
        CHECK(total <= space.total_cap());
        CHECK(*space.index_of(space.occupation(j)) == j);
    }
}

TEST_CASE("duplicate labels are rejected") {
    CHECK_THROWS_AS(FockSpace({{{0, 0, 1}, ModeTag::Shell, 2}, {{0, 0, 1}, ModeTag::High, 2}},
                              4),
                    std::invalid_argument);
}

TEST_CASE("mode lookup and tag queries") {
    const ToyLayout toy = default_toy_layout();
    const FockSpace space(toy.modes, toy.total_cap);
    CHECK(space.find_mode({3, 0, 1}).has_value());
    CHECK_FALSE(space.find_mode({9, 9, 9}).has_value());
    CHECK(space.modes_with_tag(ModeTag::Shell).size() == 2);
    CHECK(space.modes_with_tag(ModeTag::High).size() == 4);
    CHECK(space.condensate().has_value());
}

TEST_CASE("connection range of the default layout") {
    const ToyLayout toy = default_toy_layout();
    const FockSpace space(toy.modes, toy.total_cap);
    const int k = *space.find_mode({0, 0, 1});
    const auto range = space.connection_range(k);
    // r = (3,0,0) and r = (-3,0,-1): r, r+k, -r all high
    REQUIRE(range.size() == 2);
    const int mk = *space.find_mode({0, 0, -1});
    CHECK(space.connection_range(mk).size() == 2);
    CHECK_THROWS_AS(space.connection_range(*space.find_mode({3, 0, 0})),
                    std::invalid_argument);
}

TEST_CASE("random layouts are reproducible and well formed") {
    for (std::uint64_t seed : {1ull, 7ull, 99ull}) {
        const ToyLayout a = random_layout(seed);
        const ToyLayout b = random_layout(seed);
        REQUIRE(a.modes.size() == b.modes.size());
        for (std::size_t i = 0; i < a.modes.size(); ++i) {
            CHECK(a.modes[i].label == b.modes[i].label);
            CHECK(a.modes[i].cap == b.modes[i].cap);
        }
        const FockSpace space(a.modes, a.total_cap);
        // every layout supports at least one connection for each shell mode
        for (int k : space.modes_with_tag(ModeTag::Shell))
            CHECK(space.connection_range(k).size() >= 1);
    }
}

TEST_CASE("synthetic phi profile") {
    const auto phi = synthetic_phi(0.35);
    CHECK(phi({3, 0, 0}) == doctest::Approx(-0.35 / 9.0));
    CHECK(phi({0, 0, 0}) == 0.0);
}
