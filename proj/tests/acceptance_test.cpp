#include <catch2/catch_amalgamated.hpp>

#include <cstdio>

#include "cfk/acceptance.hpp"

TEST_CASE("acceptance criteria") {
    auto results = cfk::run_acceptance();
    REQUIRE(results.size() == 9);
    for (const auto& r : results) {
        std::printf("%s criterion %d: %s (%.2fs)%s%s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds, r.detail.empty() ? "" : " — ",
                    r.detail.c_str());
        INFO("criterion " << r.id << " " << r.name << ": " << r.detail);
        CHECK(r.pass);
    }
}
